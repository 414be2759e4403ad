//! Interpolation core: module bases, the weight/reduce/extract driver, and
//! the decoding outcome types shared by every list decoder.

mod bivar;
mod factor;
mod multiplicity;

use std::collections::BTreeSet;

pub use bivar::BivarPoly;
pub use factor::rr_factor;
pub use multiplicity::verify_multiplicity;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::polymatrix::{PolyMatrix, WeightMap};
use crate::rscode::{hamming_distance, Codeword, RsCode};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Gs,
    AcdRe,
    Kv,
    KvRe,
}

/// l + 1 generators of an interpolation module, generator t of y-degree t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasis {
    pub polys: Vec<BivarPoly>,
    pub kind: BasisKind,
}

impl ModuleBasis {
    pub fn l(&self) -> usize {
        self.polys.len() - 1
    }

    /// Row t, column τ holds P_t^{(τ)}.
    pub fn to_matrix(&self) -> PolyMatrix {
        let size = self.polys.len();
        let rows = self
            .polys
            .iter()
            .map(|p| (0..size).map(|tau| p.coeff(tau)).collect())
            .collect();
        PolyMatrix::from_rows(rows).expect("square by construction")
    }
}

/// An interpolation point with its prescribed multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point {
    pub x: Elem,
    pub y: Elem,
    pub mult: usize,
}

/// Generators of the module of polynomials with y-degree ≤ l vanishing to
/// order m at (α_j, ω_j) for every j.
pub fn build_gs_basis(code: &RsCode, word: &[Elem], m: usize, l: usize, field: &Field) -> Result<ModuleBasis> {
    if m == 0 || m > l {
        return Err(Error::InvalidParameters(format!("need 1 <= m <= l, got m={m}, l={l}")));
    }
    let r = code.interpolate_word(word, field)?;
    Ok(gs_basis_from(code.g(), &r, m, l, field, BasisKind::Gs))
}

/// P_t = G^{m-t}(y - R)^t for t ≤ m, y^{t-m}(y - R)^m beyond.
pub(crate) fn gs_basis_from(g: &UniPoly, r: &UniPoly, m: usize, l: usize, field: &Field, kind: BasisKind) -> ModuleBasis {
    let lin = BivarPoly::linear_y(UniPoly::one(), r.clone());
    let mut lin_pow = vec![BivarPoly::from_x(UniPoly::one())];
    for t in 1..=m {
        lin_pow.push(lin_pow[t - 1].mul(&lin, field));
    }
    let mut g_pow = vec![UniPoly::one()];
    for t in 1..=m {
        g_pow.push(g_pow[t - 1].mul(g, field));
    }
    let polys = (0..=l)
        .map(|t| {
            if t <= m {
                lin_pow[t].mul_x(&g_pow[m - t], field)
            } else {
                let mut coeffs = vec![UniPoly::zero(); t - m];
                coeffs.extend_from_slice(lin_pow[m].y_coeffs());
                BivarPoly::new(coeffs)
            }
        })
        .collect();
    ModuleBasis { polys, kind }
}

/// Result of one weight/reduce/extract pass.
#[derive(Debug, Clone)]
pub struct Interpolation {
    /// Extracted polynomial, in the coordinates of the basis.
    pub q: BivarPoly,
    /// Reduced weighted matrix.
    pub reduced: PolyMatrix,
    pub min_row: usize,
    /// Row degree of the minimal row of the reduced weighted matrix.
    pub min_row_degree: usize,
    /// Sum of row degrees of the weighted matrix before reduction.
    pub input_degree: usize,
    pub row_ops: usize,
}

/// Flattens the basis, applies the weights, reduces to weak Popov form and
/// extracts the minimal row.
pub fn interpolate(basis: &ModuleBasis, weights: WeightMap, field: &Field) -> Result<Interpolation> {
    let mut a = basis.to_matrix().apply_weights(weights);
    let input_degree = a.matrix_degree()?;
    a.ms_reduce(field)?;
    let min_row = a.minimal_row();
    let min_row_degree = a.row_profile(min_row)?.degree;
    let demapped = a.demap(weights)?;
    let q = BivarPoly::new(demapped.row(min_row).to_vec());
    let row_ops = a.row_ops();
    Ok(Interpolation { q, reduced: a, min_row, min_row_degree, input_degree, row_ops })
}

/// Multiplication counts by decoding stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub formulation: u64,
    pub reduction: u64,
    pub root_finding: u64,
    pub reencoding: u64,
    pub selection: u64,
}

impl OpCounts {
    /// Module formulation plus basis reduction.
    pub fn interpolation(&self) -> u64 {
        self.formulation + self.reduction
    }

    pub fn total(&self) -> u64 {
        self.formulation + self.reduction + self.root_finding + self.reencoding + self.selection
    }

    pub fn add(&mut self, o: &OpCounts) {
        self.formulation += o.formulation;
        self.reduction += o.reduction;
        self.root_finding += o.root_finding;
        self.reencoding += o.reencoding;
        self.selection += o.selection;
    }
}

/// One interpolation problem and what came out of it.
#[derive(Debug, Clone)]
pub struct InterpolationRecord {
    /// Points and multiplicities, in the coordinates of `q`.
    pub points: Vec<Point>,
    pub q: BivarPoly,
    /// Candidates in original coordinates are roots of `q` plus this.
    pub offset: UniPoly,
    /// deg_{1,k-1} q.
    pub weighted_degree: i64,
    /// Messages recovered from `q`, in original coordinates.
    pub messages: Vec<Vec<Elem>>,
    pub test_vector: Option<Vec<Elem>>,
    pub row_ops: usize,
}

impl InterpolationRecord {
    /// Σ of multiplicities of the prescribed points lying on the codeword
    /// of `message`; the sufficient decoding condition is score > weighted degree.
    pub fn score(&self, message: &[Elem], field: &Field) -> usize {
        let f = &UniPoly::from_coeffs(message.to_vec()) + &self.offset;
        self.points.iter().filter(|p| f.eval(p.x, field) == p.y).map(|p| p.mult).sum()
    }

    pub fn contains(&self, message: &[Elem]) -> bool {
        self.messages.iter().any(|m| m == message)
    }
}

#[derive(Debug, Clone)]
pub struct DecodeOutcome {
    /// Union of all candidate messages, sorted.
    pub candidates: Vec<Vec<Elem>>,
    pub selected: Option<Vec<Elem>>,
    pub records: Vec<InterpolationRecord>,
    pub ops: OpCounts,
}

/// Factor q and translate roots back by `offset`.
pub(crate) fn messages_from(q: &BivarPoly, offset: &UniPoly, code: &RsCode, field: &Field) -> Vec<Vec<Elem>> {
    rr_factor(q, code.k(), field)
        .into_iter()
        .map(|f| code.message_of(&(&f + offset)))
        .collect()
}

/// Union of record messages, sorted lexicographically.
pub(crate) fn union_candidates(records: &[InterpolationRecord]) -> Vec<Vec<Elem>> {
    records
        .iter()
        .flat_map(|r| r.messages.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Picks the candidate with the highest score; ties go to the earliest
/// (lexicographically smallest) candidate.
pub(crate) fn select_by<F: FnMut(&[Elem]) -> f64>(candidates: &[Vec<Elem>], mut score: F) -> Option<Vec<Elem>> {
    let mut best: Option<(f64, &Vec<Elem>)> = None;
    for c in candidates {
        let s = score(c);
        if best.is_none_or(|(b, _)| s > b) {
            best = Some((s, c));
        }
    }
    best.map(|(_, c)| c.clone())
}

/// Multiplicity-m Guruswami-Sudan list decoding of a hard word; the list
/// element closest in Hamming distance is selected.
pub fn gs_decode(code: &RsCode, word: &Codeword, m: usize, l: usize) -> Result<DecodeOutcome> {
    let field = code.field();
    let mut ops = OpCounts::default();
    let basis = build_gs_basis(code, &word.symbols, m, l, &field)?;
    ops.formulation = field.mul_count();
    let interp = interpolate(&basis, WeightMap::Ascending(code.k() - 1), &field)?;
    ops.reduction = field.mul_count() - ops.formulation;
    let before = field.mul_count();
    let messages = messages_from(&interp.q, &UniPoly::zero(), code, &field);
    ops.root_finding = field.mul_count() - before;
    let record = InterpolationRecord {
        points: code
            .locators()
            .iter()
            .zip(&word.symbols)
            .map(|(&x, &y)| Point { x, y, mult: m })
            .collect(),
        weighted_degree: interp.q.weighted_degree(1, code.k() as i64 - 1).unwrap_or(i64::MIN),
        q: interp.q,
        offset: UniPoly::zero(),
        messages,
        test_vector: Some(word.symbols.clone()),
        row_ops: interp.row_ops,
    };
    let records = vec![record];
    let candidates = union_candidates(&records);
    let before = field.mul_count();
    let selected = select_by(&candidates, |msg| {
        let cw = code.encode(msg, &field).expect("message length k");
        -(hamming_distance(&cw, word).expect("length n") as f64)
    });
    ops.selection = field.mul_count() - before;
    Ok(DecodeOutcome { candidates, selected, records, ops })
}
