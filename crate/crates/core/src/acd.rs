//! Algebraic Chase decoding: 2^η test vectors built from the two most likely
//! decisions of the η least reliable symbols, each list-decoded through
//! module minimization, with an optional re-encoding transform.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::interp::{
    build_gs_basis, gs_basis_from, interpolate, messages_from, select_by, union_candidates, BasisKind,
    BivarPoly, DecodeOutcome, InterpolationRecord, ModuleBasis, OpCounts, Point,
};
use crate::polymatrix::WeightMap;
use crate::rscode::RsCode;
use crate::unipoly::{lagrange_interpolate, UniPoly};

/// Probabilities below this are clamped before taking ratios or logs.
pub const PROB_FLOOR: f64 = 1e-12;

const COLUMN_TOL: f64 = 1e-9;

/// Largest supported η; 2^η interpolations are run.
pub const MAX_ETA: usize = 20;

/// q×n symbol posteriors, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityMatrix {
    q: usize,
    columns: Vec<Vec<f64>>,
}

impl ReliabilityMatrix {
    /// Validates entries in [0, 1] and column sums within 1e-9 of 1.
    pub fn new(q: usize, columns: Vec<Vec<f64>>) -> Result<Self> {
        for (j, col) in columns.iter().enumerate() {
            if col.len() != q {
                return Err(Error::LengthMismatch { expected: q, actual: col.len() });
            }
            if col.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::InvalidReliability(format!("column {j} has an entry outside [0, 1]")));
            }
            let s: f64 = col.iter().sum();
            if (s - 1.0).abs() > COLUMN_TOL {
                return Err(Error::InvalidReliability(format!("column {j} sums to {s}")));
            }
        }
        Ok(ReliabilityMatrix { q, columns })
    }

    /// Rescales each nonnegative column to sum to 1.
    pub fn normalized(q: usize, mut columns: Vec<Vec<f64>>) -> Result<Self> {
        for (j, col) in columns.iter_mut().enumerate() {
            if col.len() != q {
                return Err(Error::LengthMismatch { expected: q, actual: col.len() });
            }
            if col.iter().any(|&p| !(p >= 0.0 && p.is_finite())) {
                return Err(Error::InvalidReliability(format!("column {j} has a negative or non-finite entry")));
            }
            let s: f64 = col.iter().sum();
            if s <= 0.0 {
                return Err(Error::DegenerateColumn(j));
            }
            col.iter_mut().for_each(|p| *p /= s);
        }
        Ok(ReliabilityMatrix { q, columns })
    }

    /// Point masses on a hard word.
    pub fn one_hot(q: usize, word: &[Elem]) -> Self {
        let columns = word
            .iter()
            .map(|s| {
                let mut c = vec![0.0; q];
                c[s.index()] = 1.0;
                c
            })
            .collect();
        ReliabilityMatrix { q, columns }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// π_{ij}: probability that symbol j is σ_i.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.columns[j][i]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    /// (best, second best) symbol indices of column j, ties to the smaller
    /// index.
    pub fn top_two(&self, j: usize) -> (usize, usize) {
        let col = &self.columns[j];
        let mut best = 0;
        for i in 1..col.len() {
            if col[i] > col[best] {
                best = i;
            }
        }
        let mut second = if best == 0 { 1 } else { 0 };
        for i in 0..col.len() {
            if i != best && col[i] > col[second] {
                second = i;
            }
        }
        (best, second)
    }

    pub fn hard_decision(&self) -> Vec<Elem> {
        (0..self.n()).map(|j| Elem::new(self.top_two(j).0 as u16)).collect()
    }

    /// Σ_j ln π_{c_j j} with probabilities floored.
    pub fn log_likelihood(&self, word: &[Elem]) -> f64 {
        word.iter()
            .enumerate()
            .map(|(j, s)| self.columns[j][s.index()].max(PROB_FLOOR).ln())
            .sum()
    }

    /// Text form: q lines of n decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.q {
            let row: Vec<String> = self.columns.iter().map(|c| format!("{:e}", c[i])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// γ_j = π(second)/π(best) for every column, and the positions sorted by
/// ascending γ (most reliable first), ties by index.
pub fn reliability_order(pi: &ReliabilityMatrix) -> Result<(Vec<f64>, Vec<usize>)> {
    let mut gamma = Vec::with_capacity(pi.n());
    for j in 0..pi.n() {
        let (b, s) = pi.top_two(j);
        let pb = pi.get(b, j);
        if pb <= 0.0 {
            return Err(Error::DegenerateColumn(j));
        }
        gamma.push(pi.get(s, j).max(PROB_FLOOR) / pb.max(PROB_FLOOR));
    }
    let mut order: Vec<usize> = (0..pi.n()).collect();
    order.sort_by(|&a, &b| gamma[a].total_cmp(&gamma[b]));
    Ok((gamma, order))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestVector {
    pub symbols: Vec<Elem>,
    /// Bit i set: position `unreliable[i]` took its second decision.
    pub flip_mask: u32,
}

/// Hard and second decisions with the reliability ordering.
#[derive(Debug, Clone)]
pub struct ChaseSetup {
    pub first: Vec<Elem>,
    pub second: Vec<Elem>,
    pub order: Vec<usize>,
    /// The η least reliable positions j_{n-η}..j_{n-1}.
    pub unreliable: Vec<usize>,
}

impl ChaseSetup {
    pub fn new(pi: &ReliabilityMatrix, eta: usize) -> Result<Self> {
        let n = pi.n();
        if eta >= n || eta > MAX_ETA {
            return Err(Error::InvalidParameters(format!("eta={eta} out of range for n={n}")));
        }
        let (_, order) = reliability_order(pi)?;
        let (first, second): (Vec<Elem>, Vec<Elem>) = (0..n)
            .map(|j| {
                let (b, s) = pi.top_two(j);
                (Elem::new(b as u16), Elem::new(s as u16))
            })
            .unzip();
        let unreliable = order[n - eta..].to_vec();
        Ok(ChaseSetup { first, second, order, unreliable })
    }

    pub fn count(&self) -> usize {
        1usize << self.unreliable.len()
    }

    pub fn vector(&self, mask: u32) -> TestVector {
        let mut symbols = self.first.clone();
        for (i, &j) in self.unreliable.iter().enumerate() {
            if mask >> i & 1 == 1 {
                symbols[j] = self.second[j];
            }
        }
        TestVector { symbols, flip_mask: mask }
    }
}

/// All 2^η test vectors; vector 0 is the hard decision.
pub fn build_test_vectors(pi: &ReliabilityMatrix, eta: usize) -> Result<Vec<TestVector>> {
    let s = ChaseSetup::new(pi, eta)?;
    Ok((0..s.count() as u32).map(|u| s.vector(u)).collect())
}

fn check_params(code: &RsCode, pi: &ReliabilityMatrix, m: usize, l: usize) -> Result<()> {
    if pi.n() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), actual: pi.n() });
    }
    if pi.q() != code.q() {
        return Err(Error::LengthMismatch { expected: code.q(), actual: pi.q() });
    }
    if m == 0 || m > l {
        return Err(Error::InvalidParameters(format!("need 1 <= m <= l, got m={m}, l={l}")));
    }
    Ok(())
}

fn gs_points(code: &RsCode, word: &[Elem], m: usize) -> Vec<Point> {
    code.locators().iter().zip(word).map(|(&x, &y)| Point { x, y, mult: m }).collect()
}

fn decode_vector(code: &RsCode, tv: &TestVector, m: usize, l: usize, field: &Field) -> Result<(InterpolationRecord, OpCounts)> {
    let mut ops = OpCounts::default();
    let start = field.mul_count();
    let basis = build_gs_basis(code, &tv.symbols, m, l, field)?;
    ops.formulation = field.mul_count() - start;
    let it = interpolate(&basis, WeightMap::Ascending(code.k() - 1), field)?;
    ops.reduction = field.mul_count() - start - ops.formulation;
    let before = field.mul_count();
    let messages = messages_from(&it.q, &UniPoly::zero(), code, field);
    ops.root_finding = field.mul_count() - before;
    let record = InterpolationRecord {
        points: gs_points(code, &tv.symbols, m),
        weighted_degree: it.q.weighted_degree(1, code.k() as i64 - 1).unwrap_or(i64::MIN),
        q: it.q,
        offset: UniPoly::zero(),
        messages,
        test_vector: Some(tv.symbols.clone()),
        row_ops: it.row_ops,
    };
    Ok((record, ops))
}

fn finish(code: &RsCode, pi: &ReliabilityMatrix, jobs: Vec<(InterpolationRecord, OpCounts)>, mut ops: OpCounts) -> DecodeOutcome {
    let mut records = Vec::with_capacity(jobs.len());
    for (r, o) in jobs {
        ops.add(&o);
        records.push(r);
    }
    let candidates = union_candidates(&records);
    let field = code.field();
    let selected = select_by(&candidates, |msg| {
        let cw = code.encode(msg, &field).expect("message length k");
        pi.log_likelihood(&cw.symbols)
    });
    ops.selection += field.mul_count();
    DecodeOutcome { candidates, selected, records, ops }
}

/// ACD-MM: every test vector goes through GS interpolation with
/// multiplicity m and list size l.
pub fn acd_mm_decode(code: &RsCode, pi: &ReliabilityMatrix, eta: usize, m: usize, l: usize) -> Result<DecodeOutcome> {
    check_params(code, pi, m, l)?;
    let setup = ChaseSetup::new(pi, eta)?;
    let jobs = (0..setup.count() as u32)
        .map(|u| decode_vector(code, &setup.vector(u), m, l, &code.field()))
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(code, pi, jobs, OpCounts::default()))
}

/// Same as [`acd_mm_decode`] with test vectors decoded concurrently.
pub fn acd_mm_decode_par(code: &RsCode, pi: &ReliabilityMatrix, eta: usize, m: usize, l: usize) -> Result<DecodeOutcome> {
    check_params(code, pi, m, l)?;
    let setup = ChaseSetup::new(pi, eta)?;
    let jobs = (0..setup.count() as u32)
        .into_par_iter()
        .map(|u| decode_vector(code, &setup.vector(u), m, l, &code.field()))
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(code, pi, jobs, OpCounts::default()))
}

/// Data shared by all re-encoded test vectors.
#[derive(Debug, Clone)]
pub struct ReencodingContext {
    pub setup: ChaseSetup,
    /// The k most reliable positions.
    pub theta: Vec<usize>,
    /// The remaining n - k positions, ascending.
    pub theta_bar: Vec<usize>,
    /// Interpolant of the hard decisions on Θ.
    pub h: UniPoly,
    /// Π_{j∈Θ} (x - α_j).
    pub v: UniPoly,
    /// Π_{j∉Θ} (x - α_j).
    pub g_tilde: UniPoly,
    /// G̃(x)/((x - α_j)ϖ_j) for j in `theta_bar`.
    pub quotients: Vec<UniPoly>,
    /// H(α_j) for every j.
    pub h_eval: Vec<Elem>,
    /// Multiplications spent building the context.
    pub mults: u64,
}

impl ReencodingContext {
    /// z = u - H(α) for a test vector u; zero on Θ.
    pub fn transform(&self, tv: &TestVector) -> Vec<Elem> {
        tv.symbols.iter().zip(&self.h_eval).map(|(&u, &h)| u - h).collect()
    }

    /// R̃(x) = Σ_{j∉Θ} (z_j/ϖ_j) Π_{j'∉Θ, j'≠j} (x - α_{j'}), so that
    /// V(α_j)R̃(α_j) = z_j off Θ.
    pub fn r_tilde(&self, z: &[Elem], field: &Field) -> UniPoly {
        let mut r = UniPoly::zero();
        for (&j, quot) in self.theta_bar.iter().zip(&self.quotients) {
            r.add_scaled_shifted(quot, z[j], 0, field);
        }
        r
    }
}

pub fn reencode_context(pi: &ReliabilityMatrix, eta: usize, code: &RsCode, field: &Field) -> Result<ReencodingContext> {
    let (n, k) = (code.n(), code.k());
    if eta > n - k {
        return Err(Error::InvalidParameters(format!("eta={eta} exceeds n-k={}", n - k)));
    }
    let start = field.mul_count();
    let setup = ChaseSetup::new(pi, eta)?;
    let theta = setup.order[..k].to_vec();
    let mut theta_bar = setup.order[k..].to_vec();
    theta_bar.sort_unstable();
    let pts: Vec<(Elem, Elem)> = theta.iter().map(|&j| (code.locator(j), setup.first[j])).collect();
    let h = lagrange_interpolate(&pts, field)?;
    let locs = |ix: &[usize]| ix.iter().map(|&j| code.locator(j)).collect::<Vec<_>>();
    let v = UniPoly::from_roots(&locs(&theta), field);
    let g_tilde = UniPoly::from_roots(&locs(&theta_bar), field);
    let quotients = theta_bar
        .iter()
        .map(|&j| {
            let (q, _) = g_tilde.div_linear(code.locator(j), field);
            Ok(q.scale(field.inv(code.varpi()[j])?, field))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut h_eval = vec![Elem::ZERO; n];
    for &j in &theta {
        h_eval[j] = setup.first[j];
    }
    for &j in &theta_bar {
        h_eval[j] = h.eval(code.locator(j), field);
    }
    let mults = field.mul_count() - start;
    Ok(ReencodingContext { setup, theta, theta_bar, h, v, g_tilde, quotients, h_eval, mults })
}

/// Generators of the transformed module for a transformed word z:
/// G̃^{m-t}(y - R̃)^t for t ≤ m and (yV)^{t-m}(y - R̃)^m beyond.
pub fn build_acd_re_basis(ctx: &ReencodingContext, r_tilde: &UniPoly, m: usize, l: usize, field: &Field) -> ModuleBasis {
    let mut basis = gs_basis_from(&ctx.g_tilde, r_tilde, m, l, field, BasisKind::AcdRe);
    let mut v_pow = UniPoly::one();
    for t in m + 1..=l {
        v_pow = v_pow.mul(&ctx.v, field);
        basis.polys[t] = basis.polys[t].mul_x(&v_pow, field);
    }
    basis
}

/// Q^{(τ)} = V^{m-τ} Q̃^{(τ)} for τ ≤ m, Q̃^{(τ)}/V^{τ-m} beyond.
pub fn restore_acd(q_tilde: &BivarPoly, v: &UniPoly, m: usize, field: &Field) -> Result<BivarPoly> {
    let mut out = Vec::with_capacity(q_tilde.y_coeffs().len());
    for (tau, c) in q_tilde.y_coeffs().iter().enumerate() {
        if tau <= m {
            out.push(c.mul(&v.pow(m - tau, field), field));
        } else {
            out.push(c.div_exact(&v.pow(tau - m, field), field)?);
        }
    }
    Ok(BivarPoly::new(out))
}

fn decode_vector_re(
    code: &RsCode,
    ctx: &ReencodingContext,
    tv: &TestVector,
    m: usize,
    l: usize,
    field: &Field,
) -> Result<(InterpolationRecord, OpCounts)> {
    let mut ops = OpCounts::default();
    let start = field.mul_count();
    let z = ctx.transform(tv);
    let r_tilde = ctx.r_tilde(&z, field);
    let basis = build_acd_re_basis(ctx, &r_tilde, m, l, field);
    ops.formulation = field.mul_count() - start;
    let it = interpolate(&basis, WeightMap::Descending(1), field)?;
    ops.reduction = field.mul_count() - start - ops.formulation;
    let before = field.mul_count();
    let q = restore_acd(&it.q, &ctx.v, m, field)?;
    ops.reencoding = field.mul_count() - before;
    let before = field.mul_count();
    let messages = messages_from(&q, &ctx.h, code, field);
    ops.root_finding = field.mul_count() - before;
    let record = InterpolationRecord {
        points: gs_points(code, &z, m),
        weighted_degree: q.weighted_degree(1, code.k() as i64 - 1).unwrap_or(i64::MIN),
        q,
        offset: ctx.h.clone(),
        messages,
        test_vector: Some(tv.symbols.clone()),
        row_ops: it.row_ops,
    };
    Ok((record, ops))
}

/// ACD-MM with the re-encoding transform on the k most reliable positions.
pub fn acd_mm_re_decode(code: &RsCode, pi: &ReliabilityMatrix, eta: usize, m: usize, l: usize) -> Result<DecodeOutcome> {
    check_params(code, pi, m, l)?;
    let field = code.field();
    let ctx = reencode_context(pi, eta, code, &field)?;
    let jobs = (0..ctx.setup.count() as u32)
        .map(|u| decode_vector_re(code, &ctx, &ctx.setup.vector(u), m, l, &code.field()))
        .collect::<Result<Vec<_>>>()?;
    let ops = OpCounts { reencoding: ctx.mults, ..OpCounts::default() };
    Ok(finish(code, pi, jobs, ops))
}
