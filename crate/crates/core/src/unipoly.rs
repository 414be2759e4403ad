//! Dense univariate polynomials over GF(2^p).
//!
//! Coefficients are stored low-to-high and kept normalized: no trailing zero
//! coefficient, the zero polynomial is the empty vector. The degree of the
//! zero polynomial is `None`, which orders below every `Some(d)` and plays
//! the role of -∞.

use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Elem>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:x}")?;
        }
        write!(f, "]")
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial x.
    pub fn x() -> Self {
        Self::monomial(Elem::ONE, 1)
    }

    /// c·x^d.
    pub fn monomial(c: Elem, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Elem::ZERO; d + 1];
        coeffs[d] = c;
        UniPoly { coeffs }
    }

    /// x - a (equivalently x + a).
    pub fn linear(a: Elem) -> Self {
        UniPoly { coeffs: vec![a, Elem::ONE] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Π (x - r) over the given roots (with repetition).
    pub fn from_roots(roots: &[Elem], field: &Field) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p.mul_linear_assign(r, field);
        }
        p
    }

    /// Π (x - roots[i])^{powers[i]}.
    pub fn from_root_powers(roots: &[Elem], powers: &[usize], field: &Field) -> Self {
        let mut p = Self::one();
        for (&r, &e) in roots.iter().zip(powers) {
            for _ in 0..e {
                p.mul_linear_assign(r, field);
            }
        }
        p
    }

    #[inline]
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// Coefficient of x^i (zero past the end).
    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    #[inline]
    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Number of stored coefficients (deg + 1).
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, a: Elem, field: &Field) -> Elem {
        let mut acc = Elem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = field.mul(acc, a) + c;
        }
        acc
    }

    pub fn scale(&self, c: Elem, field: &Field) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|&a| field.mul(a, c)).collect() }
    }

    /// Multiplication by x^s.
    pub fn shift(&self, s: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Elem::ZERO; s];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly { coeffs }
    }

    /// Exact division by x^s; `None` if a low coefficient is nonzero.
    pub fn unshift(&self, s: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < s || self.coeffs[..s].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UniPoly { coeffs: self.coeffs[s..].to_vec() })
    }

    /// Largest s with x^s dividing self (`None` for zero).
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// self += c·x^s·other.
    pub fn add_scaled_shifted(&mut self, other: &UniPoly, c: Elem, s: usize, field: &Field) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + s;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Elem::ZERO);
        }
        for (i, &a) in other.coeffs.iter().enumerate() {
            self.coeffs[i + s] += field.mul(a, c);
        }
        self.normalize();
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &UniPoly, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += field.mul(a, b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// In-place multiplication by (x - a).
    pub fn mul_linear_assign(&mut self, a: Elem, field: &Field) {
        if self.is_zero() {
            return;
        }
        self.coeffs.push(Elem::ZERO);
        for i in (0..self.coeffs.len()).rev() {
            let lower = if i > 0 { self.coeffs[i - 1] } else { Elem::ZERO };
            self.coeffs[i] = lower + field.mul(self.coeffs[i], a);
        }
    }

    pub fn pow(&self, e: usize, field: &Field) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Long division: returns (quotient, remainder) with deg r < deg g.
    pub fn divmod(&self, g: &UniPoly, field: &Field) -> Result<(UniPoly, UniPoly)> {
        let dg = g.deg().ok_or(Error::DivisionByZero)?;
        let lead_inv = field.inv(g.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = field.mul(c, lead_inv);
            quot[i - dg] = f;
            for (j, &b) in g.coeffs.iter().enumerate() {
                rem[i - dg + j] += field.mul(f, b);
            }
        }
        rem.truncate(dg);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, g: &UniPoly, field: &Field) -> Result<UniPoly> {
        let (q, r) = self.divmod(g, field)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Synthetic division by (x - a): returns (quotient, self(a)).
    pub fn div_linear(&self, a: Elem, field: &Field) -> (UniPoly, Elem) {
        if self.is_zero() {
            return (Self::zero(), Elem::ZERO);
        }
        let n = self.coeffs.len();
        let mut quot = vec![Elem::ZERO; n - 1];
        let mut acc = Elem::ZERO;
        for i in (0..n).rev() {
            acc = self.coeffs[i] + field.mul(acc, a);
            if i > 0 {
                quot[i - 1] = acc;
            }
        }
        (Self::from_coeffs(quot), acc)
    }

    /// Taylor coefficients at a: returns the first `count` coefficients of
    /// self(x + a).
    pub fn taylor(&self, a: Elem, count: usize, field: &Field) -> Vec<Elem> {
        let mut out = Vec::with_capacity(count);
        let mut cur = self.clone();
        for _ in 0..count {
            if cur.is_zero() {
                out.push(Elem::ZERO);
                continue;
            }
            let (q, r) = cur.div_linear(a, field);
            out.push(r);
            cur = q;
        }
        out
    }

    /// Formal derivative (characteristic 2: odd-power terms survive).
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { Elem::ZERO })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Keeps only the coefficients of x^0..x^{len-1}.
    pub fn truncate(&self, len: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(len).copied().collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(mut self, rhs: UniPoly) -> UniPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&UniPoly> for UniPoly {
    fn add_assign(&mut self, rhs: &UniPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Elem::ZERO);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

fn check_distinct(locators: &[Elem]) -> Result<()> {
    let mut seen = std::collections::HashSet::with_capacity(locators.len());
    for &a in locators {
        if !seen.insert(a) {
            return Err(Error::RepeatedLocator(a.value()));
        }
    }
    Ok(())
}

/// ϖ_j = Π_{j' != j} (α_j - α_{j'}) for every j.
pub fn lagrange_denominators(locators: &[Elem], field: &Field) -> Result<Vec<Elem>> {
    check_distinct(locators)?;
    Ok(locators
        .iter()
        .enumerate()
        .map(|(j, &aj)| {
            locators
                .iter()
                .enumerate()
                .filter(|&(jj, _)| jj != j)
                .fold(Elem::ONE, |acc, (_, &ajj)| field.mul(acc, aj - ajj))
        })
        .collect())
}

/// Φ_j with Φ_j(α_j) = 1 and Φ_j(α_{j'}) = 0 for j' != j.
pub fn lagrange_basis(locators: &[Elem], j: usize, field: &Field) -> Result<UniPoly> {
    check_distinct(locators)?;
    if j >= locators.len() {
        return Err(Error::LengthMismatch { expected: locators.len(), actual: j });
    }
    let aj = locators[j];
    let mut num = UniPoly::one();
    let mut den = Elem::ONE;
    for (jj, &a) in locators.iter().enumerate() {
        if jj != j {
            num.mul_linear_assign(a, field);
            den = field.mul(den, aj - a);
        }
    }
    Ok(num.scale(field.inv(den)?, field))
}

/// The unique polynomial of degree < n through the n given points.
pub fn lagrange_interpolate(points: &[(Elem, Elem)], field: &Field) -> Result<UniPoly> {
    let xs: Vec<Elem> = points.iter().map(|p| p.0).collect();
    check_distinct(&xs)?;
    if points.is_empty() {
        return Ok(UniPoly::zero());
    }
    let full = UniPoly::from_roots(&xs, field);
    let mut out = UniPoly::zero();
    for (j, &(xj, yj)) in points.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let (num, _) = full.div_linear(xj, field);
        let den = xs
            .iter()
            .enumerate()
            .filter(|&(jj, _)| jj != j)
            .fold(Elem::ONE, |acc, (_, &a)| field.mul(acc, xj - a));
        let c = field.div(yj, den)?;
        out.add_scaled_shifted(&num, c, 0, field);
    }
    Ok(out)
}
