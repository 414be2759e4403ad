use crate::galois::{Elem, Field};
use crate::interp::BivarPoly;
use crate::unipoly::UniPoly;

/// Whether Q has a zero of multiplicity at least `m` at (a, b): every
/// coefficient of x^i y^j with i + j < m in Q(x + a, y + b) vanishes.
pub fn verify_multiplicity(q: &BivarPoly, point: (Elem, Elem), m: usize, field: &Field) -> bool {
    if m == 0 {
        return true;
    }
    let (a, b) = point;
    // Taylor expansion in y at b by repeated synthetic division by (y - b).
    let mut cur: Vec<UniPoly> = q.y_coeffs().to_vec();
    for j in 0..m {
        if cur.is_empty() {
            return true;
        }
        let len = cur.len();
        let mut quot = vec![UniPoly::zero(); len - 1];
        let mut acc = UniPoly::zero();
        for i in (0..len).rev() {
            let mut next = acc.scale(b, field);
            next += &cur[i];
            acc = next;
            if i > 0 {
                quot[i - 1] = acc.clone();
            }
        }
        // acc is the y^j coefficient of Q(x, y + b).
        if acc.taylor(a, m - j, field).iter().any(|c| !c.is_zero()) {
            return false;
        }
        cur = quot;
    }
    true
}
