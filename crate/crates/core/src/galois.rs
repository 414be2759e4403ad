//! Arithmetic over GF(2^p) for 2 <= p <= 12.
//!
//! Elements use the polynomial-basis bit representation, so `σ_i` is the
//! element whose integer value is `i`. Addition is XOR. Multiplication goes
//! through exp/log tables built from a fixed primitive polynomial per
//! exponent, with α = x as the generator.
//!
//! [`FieldTable`] is immutable and shared between threads. [`Field`] wraps a
//! table together with a private multiplication counter; every decoding job
//! works on its own `Field` (see [`Field::fork`]).

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default primitive polynomials, indexed by exponent.
const PRIMITIVE_POLYS: [u32; 13] = [
    0, 0, 0b111, 0b1011, 0x13, 0x25, 0x43, 0x89, 0x11d, 0x211, 0x409, 0x805, 0x1053,
];

/// An element of GF(2^p), stored as its bit representation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub const fn new(value: u16) -> Self {
        Elem(value)
    }

    #[inline]
    pub const fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// True for 0 and 1, the operands whose products are not counted.
    #[inline]
    pub const fn is_trivial(self) -> bool {
        self.0 <= 1
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::LowerHex for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Elem {
    type Output = Elem;
    #[inline]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Elem {
    type Output = Elem;
    #[inline]
    fn sub(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl Neg for Elem {
    type Output = Elem;
    #[inline]
    fn neg(self) -> Elem {
        self
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Elem {
    #[inline]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl SubAssign for Elem {
    #[inline]
    fn sub_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

/// Exp/log tables for GF(2^p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    p: u32,
    q: usize,
    primitive_poly: u32,
    /// α^i for i in 0..2(q-1), doubled so products of logs need no reduction.
    exp: Vec<u16>,
    /// log[a] for nonzero a; log[0] is unused.
    log: Vec<u16>,
}

impl FieldTable {
    /// Builds the table for GF(2^p) from the default primitive polynomial.
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=12).contains(&p) {
            return Err(Error::UnsupportedExponent(p));
        }
        Self::with_polynomial(p, PRIMITIVE_POLYS[p as usize])
    }

    /// Builds the table from an explicit primitive polynomial bitmask
    /// (including the x^p term).
    pub fn with_polynomial(p: u32, primitive_poly: u32) -> Result<Self> {
        if !(2..=12).contains(&p) {
            return Err(Error::UnsupportedExponent(p));
        }
        if primitive_poly >> p != 1 {
            return Err(Error::NotPrimitive { p, poly: primitive_poly });
        }
        let q = 1usize << p;
        let order = q - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; q];
        let mut seen = vec![false; q];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            if seen[x as usize] {
                return Err(Error::NotPrimitive { p, poly: primitive_poly });
            }
            seen[x as usize] = true;
            *slot = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << p) != 0 {
                x ^= primitive_poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive { p, poly: primitive_poly });
        }
        exp.copy_within(..order, order);
        Ok(FieldTable { p, q, primitive_poly, exp, log })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Field size 2^p.
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    /// Multiplicative group order q - 1.
    #[inline]
    pub fn order(&self) -> usize {
        self.q - 1
    }

    #[inline]
    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// The generator α (the residue class of x).
    #[inline]
    pub fn alpha(&self) -> Elem {
        Elem(2)
    }

    /// α^i, with i reduced modulo q - 1.
    #[inline]
    pub fn exp(&self, i: usize) -> Elem {
        Elem(self.exp[i % self.order()])
    }

    /// Discrete logarithm base α; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.index()] as usize)
        }
    }

    /// The first q - 1 exp-table entries.
    pub fn exp_table(&self) -> &[u16] {
        &self.exp[..self.order()]
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        a.index() < self.q
    }

    /// All field elements σ_0..σ_{q-1}.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q as u16).map(Elem)
    }

    /// Uncounted multiplication.
    #[inline]
    pub fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let la = self.log[a.index()] as usize;
        let lb = self.log[b.index()] as usize;
        Elem(self.exp[la + lb])
    }

    /// Multiplicative inverse; zero is a domain error.
    #[inline]
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let la = self.log[a.index()] as usize;
        Ok(Elem(self.exp[(self.order() - la) % self.order()]))
    }

    /// a^e for a nonnegative exponent (0^0 = 1).
    pub fn pow(&self, a: Elem, e: usize) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        match self.log(a) {
            None => Elem::ZERO,
            Some(la) => self.exp((la * (e % self.order())) % self.order()),
        }
    }
}

/// A field table plus a per-job multiplication counter.
///
/// Cloning via [`Field::fork`] shares the table and starts a fresh counter.
/// `Field` is `Send` but not `Sync`, so a counter can never be shared across
/// threads by accident.
#[derive(Debug)]
pub struct Field {
    table: Arc<FieldTable>,
    muls: Cell<u64>,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        Ok(Self::from_table(Arc::new(FieldTable::new(p)?)))
    }

    pub fn from_table(table: Arc<FieldTable>) -> Self {
        Field { table, muls: Cell::new(0) }
    }

    /// Same tables, zeroed counter.
    pub fn fork(&self) -> Self {
        Self::from_table(Arc::clone(&self.table))
    }

    #[inline]
    pub fn table(&self) -> &FieldTable {
        &self.table
    }

    pub fn shared_table(&self) -> Arc<FieldTable> {
        Arc::clone(&self.table)
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.table.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.table.p
    }

    /// Counted multiplication. Products with a 0 or 1 operand are free.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_trivial() || b.is_trivial() {
            return if a.is_zero() || b.is_zero() {
                Elem::ZERO
            } else if a == Elem::ONE {
                b
            } else {
                a
            };
        }
        self.muls.set(self.muls.get() + 1);
        self.table.mul_raw(a, b)
    }

    /// Inverse by table lookup; not counted as a multiplication.
    #[inline]
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        self.table.inv(a)
    }

    /// a / b, counted as one multiplication.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    #[inline]
    pub fn exp(&self, i: usize) -> Elem {
        self.table.exp(i)
    }

    #[inline]
    pub fn mul_count(&self) -> u64 {
        self.muls.get()
    }

    pub fn reset_count(&self) {
        self.muls.set(0);
    }

    /// Adds externally accumulated counts (e.g. from forked sub-jobs).
    pub fn add_count(&self, n: u64) {
        self.muls.set(self.muls.get() + n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_tables() {
        let t = FieldTable::new(3).unwrap();
        assert_eq!(t.q(), 8);
        assert_eq!(&t.exp_table()[..4], &[1, 2, 4, 3]);
        assert_eq!(t.exp(0), Elem::ONE);
        for i in 0..7 {
            assert_eq!(t.log(t.exp(i)), Some(i));
        }
    }

    #[test]
    fn exp_table_is_permutation() {
        for p in 2..=12 {
            let t = FieldTable::new(p).unwrap();
            let mut vals: Vec<u16> = t.exp_table().to_vec();
            vals.sort_unstable();
            let expected: Vec<u16> = (1..t.q() as u16).collect();
            assert_eq!(vals, expected, "p = {p}");
        }
    }

    #[test]
    fn unsupported_exponents() {
        assert_eq!(FieldTable::new(1), Err(Error::UnsupportedExponent(1)));
        assert_eq!(FieldTable::new(13), Err(Error::UnsupportedExponent(13)));
        // x^4 + x^3 + x^2 + x + 1 is irreducible but has order 5.
        assert!(matches!(
            FieldTable::with_polynomial(4, 0b11111),
            Err(Error::NotPrimitive { .. })
        ));
    }

    #[test]
    fn gf8_products_and_inverses() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.mul(Elem(2), Elem(4)), Elem(3));
        assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
        assert_eq!(f.inv(Elem(2)).unwrap(), f.exp(6));
        assert_eq!(f.mul(Elem(2), f.inv(Elem(2)).unwrap()), Elem::ONE);
        assert_eq!(f.inv(Elem::ZERO), Err(Error::ZeroInverse));
        for a in f.table().elements() {
            assert_eq!(f.mul(a, Elem::ZERO), Elem::ZERO);
            assert_eq!(f.mul(a, Elem::ONE), a);
        }
    }

    #[test]
    fn gf16_inverse_loop() {
        let f = Field::new(4).unwrap();
        for a in f.table().elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }

    /// Shift-and-add multiplication modulo the primitive polynomial.
    fn slow_mul(t: &FieldTable, a: u16, b: u16) -> u16 {
        let mut acc: u32 = 0;
        let mut a = a as u32;
        let mut b = b as u32;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << t.p()) != 0 {
                a ^= t.primitive_poly();
            }
        }
        acc as u16
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in 2..=6 {
            let f = Field::new(p).unwrap();
            let t = f.table();
            let elems: Vec<Elem> = t.elements().collect();
            for &a in &elems {
                for &b in &elems {
                    let ab = f.mul(a, b);
                    assert_eq!(ab.value(), slow_mul(t, a.value(), b.value()));
                    assert_eq!(ab, f.mul(b, a));
                    for &c in &elems {
                        assert_eq!(f.mul(ab, c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
                    }
                }
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
            }
        }
    }

    #[test]
    fn counting_policy() {
        let f = Field::new(4).unwrap();
        f.mul(Elem(0), Elem(7));
        f.mul(Elem(1), Elem(7));
        f.mul(Elem(7), Elem(1));
        assert_eq!(f.mul_count(), 0);
        f.mul(Elem(2), Elem(7));
        f.mul(Elem(3), Elem(3));
        assert_eq!(f.mul_count(), 2);
        let g = f.fork();
        assert_eq!(g.mul_count(), 0);
        g.div(Elem(5), Elem(6)).unwrap();
        assert_eq!(g.mul_count(), 1);
        assert_eq!(f.mul_count(), 2);
        f.reset_count();
        assert_eq!(f.mul_count(), 0);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let t = FieldTable::new(5).unwrap();
        for a in t.elements() {
            let mut acc = Elem::ONE;
            for e in 0..40 {
                assert_eq!(t.pow(a, e), acc);
                acc = t.mul_raw(acc, a);
            }
        }
    }
}
