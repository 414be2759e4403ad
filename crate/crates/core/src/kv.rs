//! Koetter-Vardy soft decoding: reliabilities become a multiplicity matrix,
//! whose points are arranged in balanced lists that define the module
//! generators. Plain and re-encoded variants.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::acd::ReliabilityMatrix;
use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::interp::{
    interpolate, messages_from, select_by, union_candidates, BasisKind, BivarPoly, DecodeOutcome,
    InterpolationRecord, ModuleBasis, OpCounts, Point,
};
use crate::polymatrix::WeightMap;
use crate::rscode::{Codeword, RsCode};
use crate::unipoly::{lagrange_interpolate, UniPoly};

/// q×n nonnegative multiplicities, stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    q: usize,
    columns: Vec<Vec<usize>>,
}

impl MultiplicityMatrix {
    pub fn new(q: usize, columns: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != q) {
            return Err(Error::LengthMismatch { expected: q, actual: c.len() });
        }
        Ok(MultiplicityMatrix { q, columns })
    }

    pub fn zeros(q: usize, n: usize) -> Self {
        MultiplicityMatrix { q, columns: vec![vec![0; q]; n] }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// m_{ij}: multiplicity of (α_j, σ_i).
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.columns[j][i]
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn column_sum(&self, j: usize) -> usize {
        self.columns[j].iter().sum()
    }

    /// Largest column sum.
    pub fn max_column_sum(&self) -> usize {
        (0..self.n()).map(|j| self.column_sum(j)).max().unwrap_or(0)
    }

    /// Nonzero entries as interpolation points.
    pub fn points(&self, code: &RsCode) -> Vec<Point> {
        let mut out = Vec::new();
        for j in 0..self.n() {
            for (i, &m) in self.columns[j].iter().enumerate() {
                if m > 0 {
                    out.push(Point { x: code.locator(j), y: Elem::new(i as u16), mult: m });
                }
            }
        }
        out
    }
}

#[derive(Debug, PartialEq)]
struct Pick {
    priority: f64,
    j: usize,
    i: usize,
}

impl Eq for Pick {}

impl Ord for Pick {
    fn cmp(&self, o: &Self) -> Ordering {
        self.priority
            .total_cmp(&o.priority)
            .then_with(|| Reverse(self.j).cmp(&Reverse(o.j)))
            .then_with(|| Reverse(self.i).cmp(&Reverse(o.i)))
    }
}

impl PartialOrd for Pick {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Greedy proportional assignment: repeatedly take the entry maximizing
/// π_{ij}/(m_{ij}+1), ties to the smallest (j, i), and increment it. Stops
/// when the pick lands in a column whose sum already equals l, so the
/// largest column sum is exactly l on return.
pub fn pi_to_multiplicity(pi: &ReliabilityMatrix, l: usize) -> Result<MultiplicityMatrix> {
    if l == 0 {
        return Err(Error::InvalidParameters("l must be at least 1".into()));
    }
    let (q, n) = (pi.q(), pi.n());
    let mut m = MultiplicityMatrix::zeros(q, n);
    let mut sums = vec![0usize; n];
    let mut heap: BinaryHeap<Pick> = (0..n)
        .flat_map(|j| (0..q).map(move |i| (i, j)))
        .map(|(i, j)| Pick { priority: pi.get(i, j), j, i })
        .collect();
    while let Some(p) = heap.pop() {
        if sums[p.j] >= l {
            break;
        }
        m.columns[p.j][p.i] += 1;
        sums[p.j] += 1;
        let priority = pi.get(p.i, p.j) / (m.columns[p.j][p.i] + 1) as f64;
        heap.push(Pick { priority, ..p });
    }
    Ok(m)
}

/// S_M(c) = Σ_j m_{c_j, j}.
pub fn codeword_score(m: &MultiplicityMatrix, c: &Codeword) -> usize {
    c.symbols.iter().enumerate().map(|(j, s)| m.get(s.index(), j)).sum()
}

/// Per-column point lists ordered so that the most frequent remaining point
/// comes first, with tail multiplicities 𝗆_j(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedLists {
    pub l: usize,
    /// lists[j][ε] = y_j^{(ε)}.
    pub lists: Vec<Vec<Elem>>,
    /// tail[j][t] = 𝗆_j(t) for t = 0..=l.
    pub tail: Vec<Vec<usize>>,
}

impl BalancedLists {
    pub fn n(&self) -> usize {
        self.lists.len()
    }

    /// y_j^{(ε)}, zero past the end of the list.
    pub fn value(&self, j: usize, eps: usize) -> Elem {
        self.lists[j].get(eps).copied().unwrap_or(Elem::ZERO)
    }

    pub fn m(&self, j: usize, t: usize) -> usize {
        self.tail[j][t]
    }
}

/// Largest multiplicity of any element in `list[t..]`.
pub fn tail_multiplicity(list: &[Elem], t: usize) -> usize {
    let tail = &list[t.min(list.len())..];
    tail.iter().map(|a| tail.iter().filter(|b| *b == a).count()).max().unwrap_or(0)
}

/// Balanced lists for M with list length l (l ≥ every column sum).
pub fn balance_lists(m: &MultiplicityMatrix, l: usize) -> Result<BalancedLists> {
    let mut lists = Vec::with_capacity(m.n());
    let mut tail = Vec::with_capacity(m.n());
    for j in 0..m.n() {
        if m.column_sum(j) > l {
            return Err(Error::InvalidParameters(format!("column {j} has more than l={l} points")));
        }
        let mut rem = m.column(j).to_vec();
        let mut list = Vec::with_capacity(m.column_sum(j));
        loop {
            // max_by_key keeps the last maximum; scan in reverse for the
            // smallest index.
            let (i, &c) = rem.iter().enumerate().rev().max_by_key(|(_, &c)| c).expect("q > 0");
            if c == 0 {
                break;
            }
            rem[i] -= 1;
            list.push(Elem::new(i as u16));
        }
        tail.push((0..=l).map(|t| tail_multiplicity(&list, t)).collect());
        lists.push(list);
    }
    Ok(BalancedLists { l, lists, tail })
}

/// P_t = Π_j (x - α_j)^{𝗆_j(t)} · Π_{ε<t} (y - F_ε(x)), F_ε interpolating
/// the ε-th list entries.
pub fn build_kv_basis(code: &RsCode, lists: &BalancedLists, field: &Field) -> Result<ModuleBasis> {
    kv_basis_with(code, lists, |j, e| lists.value(j, e), field)
}

fn kv_basis_with<V: Fn(usize, usize) -> Elem>(
    code: &RsCode,
    lists: &BalancedLists,
    value: V,
    field: &Field,
) -> Result<ModuleBasis> {
    if lists.n() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), actual: lists.n() });
    }
    let l = lists.l;
    let mut polys = Vec::with_capacity(l + 1);
    let mut y_part = BivarPoly::from_x(UniPoly::one());
    for t in 0..=l {
        if t > 0 {
            let word: Vec<Elem> = (0..code.n()).map(|j| value(j, t - 1)).collect();
            let f = code.interpolate_word(&word, field)?;
            y_part = y_part.mul(&BivarPoly::linear_y(UniPoly::one(), f), field);
        }
        let powers: Vec<usize> = (0..code.n()).map(|j| lists.m(j, t)).collect();
        let x_part = UniPoly::from_root_powers(code.locators(), &powers, field);
        polys.push(y_part.mul_x(&x_part, field));
    }
    Ok(ModuleBasis { polys, kind: BasisKind::Kv })
}

fn check_params(code: &RsCode, pi: &ReliabilityMatrix, l: usize) -> Result<()> {
    if pi.n() != code.n() || pi.q() != code.q() {
        return Err(Error::LengthMismatch { expected: code.n() * code.q(), actual: pi.n() * pi.q() });
    }
    if l == 0 {
        return Err(Error::InvalidParameters("l must be at least 1".into()));
    }
    Ok(())
}

fn finish(code: &RsCode, pi: &ReliabilityMatrix, record: InterpolationRecord, mut ops: OpCounts) -> DecodeOutcome {
    let records = vec![record];
    let candidates = union_candidates(&records);
    let field = code.field();
    let selected = select_by(&candidates, |msg| {
        let cw = code.encode(msg, &field).expect("message length k");
        pi.log_likelihood(&cw.symbols)
    });
    ops.selection = field.mul_count();
    DecodeOutcome { candidates, selected, records, ops }
}

/// KV-MM for a given multiplicity matrix; `pi` is only used to rank the
/// candidates.
pub fn kv_mm_decode_with(code: &RsCode, pi: &ReliabilityMatrix, m: &MultiplicityMatrix, l: usize) -> Result<DecodeOutcome> {
    check_params(code, pi, l)?;
    let field = code.field();
    let mut ops = OpCounts::default();
    let lists = balance_lists(m, l)?;
    let basis = build_kv_basis(code, &lists, &field)?;
    ops.formulation = field.mul_count();
    let it = interpolate(&basis, WeightMap::Ascending(code.k() - 1), &field)?;
    ops.reduction = field.mul_count() - ops.formulation;
    let before = field.mul_count();
    let messages = messages_from(&it.q, &UniPoly::zero(), code, &field);
    ops.root_finding = field.mul_count() - before;
    let record = InterpolationRecord {
        points: m.points(code),
        weighted_degree: it.q.weighted_degree(1, code.k() as i64 - 1).unwrap_or(i64::MIN),
        q: it.q,
        offset: UniPoly::zero(),
        messages,
        test_vector: None,
        row_ops: it.row_ops,
    };
    Ok(finish(code, pi, record, ops))
}

/// KV-MM with list size l.
pub fn kv_mm_decode(code: &RsCode, pi: &ReliabilityMatrix, l: usize) -> Result<DecodeOutcome> {
    check_params(code, pi, l)?;
    let m = pi_to_multiplicity(pi, l)?;
    kv_mm_decode_with(code, pi, &m, l)
}

/// Re-encoding data for KV-MM.
#[derive(Debug, Clone)]
pub struct KvReencodingContext {
    pub lists: BalancedLists,
    /// The k columns with the largest 𝗆_j(0).
    pub upsilon: Vec<usize>,
    pub in_upsilon: Vec<bool>,
    /// Interpolant of y_j^{(0)} on Υ.
    pub h: UniPoly,
    /// H(α_j) for every j.
    pub h_eval: Vec<Elem>,
    /// Transformed lists: w[j][ε] = y_j^{(ε)} - H(α_j) for ε < 𝗆_j, zero
    /// beyond.
    pub w: Vec<Vec<Elem>>,
    /// φ = Π_{j∈Υ} (x - α_j)^{𝗆_j(0)}.
    pub phi: UniPoly,
    /// ψ = Π_{j∈Υ} (x - α_j).
    pub psi: UniPoly,
    /// Multiplications spent building the context.
    pub mults: u64,
}

impl KvReencodingContext {
    /// Whether j ∈ Λ_ε, i.e. j ∈ Υ and w_j^{(ε)} = 0.
    pub fn in_lambda(&self, j: usize, eps: usize) -> bool {
        self.in_upsilon[j] && self.w[j][eps].is_zero()
    }

    /// Λ̄_ε = Υ \ Λ_ε.
    pub fn lambda_bar(&self, eps: usize) -> Vec<usize> {
        self.upsilon.iter().copied().filter(|&j| !self.in_lambda(j, eps)).collect()
    }

    /// Exponent of (x - α_j) in U_t for j ∈ Υ: 𝗆_j(t) - 𝗆_j(0) + θ_j(t), θ_j(t)
    /// counting ε < t with j ∈ Λ_ε.
    pub fn u_exponent(&self, j: usize, t: usize) -> Result<usize> {
        let theta = (0..t).filter(|&e| self.in_lambda(j, e)).count();
        (self.lists.m(j, t) + theta)
            .checked_sub(self.lists.m(j, 0))
            .ok_or_else(|| Error::InvalidParameters(format!("negative re-encoding exponent at column {j}, t={t}")))
    }

    /// T_ε = Σ_{j∈S_ε} (w_j^{(ε)}/ϖ_j) Π_{j'∈S_ε, j'≠j} (x - α_{j'}) with
    /// S_ε the complement of Λ_ε.
    pub fn t_poly(&self, code: &RsCode, eps: usize, field: &Field) -> Result<UniPoly> {
        let s: Vec<usize> = (0..code.n()).filter(|&j| !self.in_lambda(j, eps)).collect();
        let roots: Vec<Elem> = s.iter().map(|&j| code.locator(j)).collect();
        let full = UniPoly::from_roots(&roots, field);
        let mut t = UniPoly::zero();
        for &j in &s {
            let wj = self.w[j][eps];
            if wj.is_zero() {
                continue;
            }
            let (quot, _) = full.div_linear(code.locator(j), field);
            t.add_scaled_shifted(&quot, field.div(wj, code.varpi()[j])?, 0, field);
        }
        Ok(t)
    }
}

pub fn kv_reencode_context(code: &RsCode, lists: BalancedLists, field: &Field) -> Result<KvReencodingContext> {
    let (n, k, l) = (code.n(), code.k(), lists.l);
    let start = field.mul_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| Reverse(lists.m(j, 0)));
    let upsilon = order[..k].to_vec();
    let mut in_upsilon = vec![false; n];
    for &j in &upsilon {
        in_upsilon[j] = true;
    }
    let pts: Vec<(Elem, Elem)> = upsilon.iter().map(|&j| (code.locator(j), lists.value(j, 0))).collect();
    let h = lagrange_interpolate(&pts, field)?;
    let h_eval: Vec<Elem> = (0..n)
        .map(|j| if in_upsilon[j] { lists.value(j, 0) } else { h.eval(code.locator(j), field) })
        .collect();
    let w = (0..n)
        .map(|j| {
            (0..=l)
                .map(|e| if e < lists.lists[j].len() { lists.lists[j][e] - h_eval[j] } else { Elem::ZERO })
                .collect()
        })
        .collect();
    let ups_locs: Vec<Elem> = upsilon.iter().map(|&j| code.locator(j)).collect();
    let phi_pows: Vec<usize> = upsilon.iter().map(|&j| lists.m(j, 0)).collect();
    let phi = UniPoly::from_root_powers(&ups_locs, &phi_pows, field);
    let psi = UniPoly::from_roots(&ups_locs, field);
    let mults = field.mul_count() - start;
    Ok(KvReencodingContext { lists, upsilon, in_upsilon, h, h_eval, w, phi, psi, mults })
}

/// The plain generators for the transformed lists w (not re-encoded).
pub fn build_kv_transformed_basis(code: &RsCode, ctx: &KvReencodingContext, field: &Field) -> Result<ModuleBasis> {
    kv_basis_with(code, &ctx.lists, |j, e| ctx.w[j][e], field)
}

/// P̃_t = Π_{j∉Υ}(x - α_j)^{𝗆_j(t)} · U_t · Π_{ε<t} (y·Π_{Λ̄_ε}(x - α) - T_ε).
pub fn build_kv_re_basis(code: &RsCode, ctx: &KvReencodingContext, field: &Field) -> Result<ModuleBasis> {
    let l = ctx.lists.l;
    let mut polys = Vec::with_capacity(l + 1);
    let mut y_part = BivarPoly::from_x(UniPoly::one());
    for t in 0..=l {
        if t > 0 {
            let eps = t - 1;
            let lb: Vec<Elem> = ctx.lambda_bar(eps).iter().map(|&j| code.locator(j)).collect();
            let factor = BivarPoly::linear_y(UniPoly::from_roots(&lb, field), ctx.t_poly(code, eps, field)?);
            y_part = y_part.mul(&factor, field);
        }
        let powers = (0..code.n())
            .map(|j| if ctx.in_upsilon[j] { ctx.u_exponent(j, t) } else { Ok(ctx.lists.m(j, t)) })
            .collect::<Result<Vec<_>>>()?;
        let x_part = UniPoly::from_root_powers(code.locators(), &powers, field);
        polys.push(y_part.mul_x(&x_part, field));
    }
    Ok(ModuleBasis { polys, kind: BasisKind::KvRe })
}

/// Q^{(τ)} = φ·Q̃^{(τ)}/ψ^τ.
pub fn restore_kv(q_tilde: &BivarPoly, phi: &UniPoly, psi: &UniPoly, field: &Field) -> Result<BivarPoly> {
    let mut out = Vec::with_capacity(q_tilde.y_coeffs().len());
    let mut psi_pow = UniPoly::one();
    for c in q_tilde.y_coeffs() {
        out.push(c.mul(phi, field).div_exact(&psi_pow, field)?);
        psi_pow = psi_pow.mul(psi, field);
    }
    Ok(BivarPoly::new(out))
}

/// KV-MM for a given multiplicity matrix, with the re-encoding transform.
pub fn kv_mm_re_decode_with(code: &RsCode, pi: &ReliabilityMatrix, m: &MultiplicityMatrix, l: usize) -> Result<DecodeOutcome> {
    check_params(code, pi, l)?;
    let field = code.field();
    let mut ops = OpCounts::default();
    let lists = balance_lists(m, l)?;
    let ctx = kv_reencode_context(code, lists, &field)?;
    ops.reencoding = ctx.mults;
    let start = field.mul_count();
    let basis = build_kv_re_basis(code, &ctx, &field)?;
    ops.formulation = field.mul_count() - start;
    let it = interpolate(&basis, WeightMap::Descending(1), &field)?;
    ops.reduction = field.mul_count() - start - ops.formulation;
    let before = field.mul_count();
    let q = restore_kv(&it.q, &ctx.phi, &ctx.psi, &field)?;
    ops.reencoding += field.mul_count() - before;
    let before = field.mul_count();
    let messages = messages_from(&q, &ctx.h, code, &field);
    ops.root_finding = field.mul_count() - before;
    let points = m
        .points(code)
        .into_iter()
        .map(|p| {
            let j = code.table().log(p.x).expect("nonzero locator");
            Point { y: p.y - ctx.h_eval[j], ..p }
        })
        .collect();
    let record = InterpolationRecord {
        points,
        weighted_degree: q.weighted_degree(1, code.k() as i64 - 1).unwrap_or(i64::MIN),
        q,
        offset: ctx.h.clone(),
        messages,
        test_vector: None,
        row_ops: it.row_ops,
    };
    Ok(finish(code, pi, record, ops))
}

/// KV-MM with the re-encoding transform on the k columns of largest
/// multiplicity.
pub fn kv_mm_re_decode(code: &RsCode, pi: &ReliabilityMatrix, l: usize) -> Result<DecodeOutcome> {
    check_params(code, pi, l)?;
    let m = pi_to_multiplicity(pi, l)?;
    kv_mm_re_decode_with(code, pi, &m, l)
}
