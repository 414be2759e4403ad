use std::fmt;

use crate::galois::{Elem, Field};
use crate::unipoly::UniPoly;

/// Q(x, y) = Σ_τ Q^{(τ)}(x) y^τ, stored by y-power. Trailing zero
/// y-coefficients are trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    y_coeffs: Vec<UniPoly>,
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.y_coeffs).finish()
    }
}

impl BivarPoly {
    pub fn new(mut y_coeffs: Vec<UniPoly>) -> Self {
        while y_coeffs.last().is_some_and(|c| c.is_zero()) {
            y_coeffs.pop();
        }
        BivarPoly { y_coeffs }
    }

    pub fn zero() -> Self {
        BivarPoly { y_coeffs: Vec::new() }
    }

    /// A polynomial in x only.
    pub fn from_x(p: UniPoly) -> Self {
        Self::new(vec![p])
    }

    /// The polynomial y.
    pub fn y() -> Self {
        Self::new(vec![UniPoly::zero(), UniPoly::one()])
    }

    /// a(x)·y + b(x).
    pub fn linear_y(a: UniPoly, b: UniPoly) -> Self {
        Self::new(vec![b, a])
    }

    pub fn y_coeffs(&self) -> &[UniPoly] {
        &self.y_coeffs
    }

    /// Q^{(τ)}(x) (zero past the y-degree).
    pub fn coeff(&self, tau: usize) -> UniPoly {
        self.y_coeffs.get(tau).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    /// max over monomials x^a y^b of μa + νb.
    pub fn weighted_degree(&self, mu: i64, nu: i64) -> Option<i64> {
        self.leading_monomial(mu, nu).map(|(a, b)| mu * a as i64 + nu * b as i64)
    }

    /// Leading monomial (a, b) under the (μ,ν)-revlex order: largest
    /// weighted degree, ties broken towards the larger y-power.
    pub fn leading_monomial(&self, mu: i64, nu: i64) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for (b, c) in self.y_coeffs.iter().enumerate() {
            if let Some(a) = c.deg() {
                let w = mu * a as i64 + nu * b as i64;
                if best.is_none_or(|(bw, _, _)| w >= bw) {
                    best = Some((w, a, b));
                }
            }
        }
        best.map(|(_, a, b)| (a, b))
    }

    pub fn add(&self, other: &BivarPoly) -> Self {
        let len = self.y_coeffs.len().max(other.y_coeffs.len());
        Self::new((0..len).map(|t| &self.coeff(t) + &other.coeff(t)).collect())
    }

    pub fn mul_x(&self, p: &UniPoly, field: &Field) -> Self {
        Self::new(self.y_coeffs.iter().map(|c| c.mul(p, field)).collect())
    }

    pub fn mul(&self, other: &BivarPoly, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![UniPoly::zero(); self.y_coeffs.len() + other.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.y_coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &a.mul(b, field);
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize, field: &Field) -> Self {
        let mut acc = Self::from_x(UniPoly::one());
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Q(x, f(x)) by Horner's rule in y.
    pub fn eval_y(&self, f: &UniPoly, field: &Field) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.y_coeffs.iter().rev() {
            acc = &acc.mul(f, field) + c;
        }
        acc
    }

    /// Q(a, b).
    pub fn eval_point(&self, a: Elem, b: Elem, field: &Field) -> Elem {
        let mut acc = Elem::ZERO;
        for c in self.y_coeffs.iter().rev() {
            acc = field.mul(acc, b) + c.eval(a, field);
        }
        acc
    }

    /// Q(x, y·ψ(x)): coefficient τ multiplied by ψ^τ.
    pub fn scale_y(&self, psi: &UniPoly, field: &Field) -> Self {
        let mut pw = UniPoly::one();
        let mut out = Vec::with_capacity(self.y_coeffs.len());
        for c in &self.y_coeffs {
            out.push(c.mul(&pw, field));
            pw = pw.mul(psi, field);
        }
        Self::new(out)
    }

    /// Q(x, y + g(x)).
    pub fn shift_y(&self, g: &UniPoly, field: &Field) -> Self {
        // Horner in y with the linear factor (y + g).
        let lin = Self::linear_y(UniPoly::one(), g.clone());
        let mut acc = Self::zero();
        for c in self.y_coeffs.iter().rev() {
            acc = acc.mul(&lin, field).add(&Self::from_x(c.clone()));
        }
        acc
    }

    /// Largest s with x^s dividing every coefficient (`None` for zero).
    pub fn x_valuation(&self) -> Option<usize> {
        self.y_coeffs.iter().filter_map(|c| c.x_valuation()).min()
    }

    /// Division by x^s; the caller guarantees divisibility.
    pub fn unshift_x(&self, s: usize) -> Self {
        Self::new(
            self.y_coeffs
                .iter()
                .map(|c| c.unshift(s).expect("x-power divides every coefficient"))
                .collect(),
        )
    }
}
