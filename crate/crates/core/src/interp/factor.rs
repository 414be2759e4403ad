use crate::galois::{Elem, Field};
use crate::interp::BivarPoly;
use crate::unipoly::UniPoly;

/// Roth-Ruckenstein coefficient search: every f with deg f < k and
/// Q(x, f(x)) = 0, deduplicated and sorted by coefficient sequence.
pub fn rr_factor(q: &BivarPoly, k: usize, field: &Field) -> Vec<UniPoly> {
    if q.is_zero() || k == 0 {
        return Vec::new();
    }
    let mut found: Vec<Vec<Elem>> = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    search(q.clone(), k, &mut prefix, &mut found, field);
    let mut out: Vec<UniPoly> = found
        .into_iter()
        .map(UniPoly::from_coeffs)
        .filter(|f| q.eval_y(f, field).is_zero())
        .collect();
    out.sort_by_key(|f| padded(f, k));
    out.dedup();
    out
}

fn padded(f: &UniPoly, k: usize) -> Vec<Elem> {
    (0..k).map(|i| f.coeff(i)).collect()
}

/// Roots in GF(q) of the univariate polynomial Σ c_τ y^τ, by exhaustive
/// evaluation.
fn roots(coeffs: &[Elem], field: &Field) -> Vec<Elem> {
    let poly = UniPoly::from_coeffs(coeffs.to_vec());
    if poly.deg().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    field.table().elements().filter(|&g| poly.eval(g, field).is_zero()).collect()
}

fn search(qi: BivarPoly, k: usize, prefix: &mut Vec<Elem>, found: &mut Vec<Vec<Elem>>, field: &Field) {
    let Some(v) = qi.x_valuation() else {
        return;
    };
    let qi = qi.unshift_x(v);
    let at_zero: Vec<Elem> = qi.y_coeffs().iter().map(|c| c.coeff(0)).collect();
    for gamma in roots(&at_zero, field) {
        prefix.push(gamma);
        // Q_{i+1}(x, y) = Q_i(x, xy + γ).
        let shifted = qi.shift_y(&UniPoly::constant(gamma), field);
        let next = BivarPoly::new(
            shifted.y_coeffs().iter().enumerate().map(|(b, c)| c.shift(b)).collect(),
        );
        if next.coeff(0).is_zero() {
            found.push(prefix.clone());
        }
        if prefix.len() < k {
            search(next, k, prefix, found, field);
        }
        prefix.pop();
    }
}
