//! Reed-Solomon evaluation codes of length n = q - 1 with locators α^j, and
//! a syndrome-based Berlekamp-Massey decoder.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::galois::{Elem, Field, FieldTable};
use crate::unipoly::{lagrange_denominators, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub symbols: Vec<Elem>,
}

impl Codeword {
    pub fn new(symbols: Vec<Elem>) -> Self {
        Codeword { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn to_hex(&self) -> String {
        hex_list(&self.symbols)
    }
}

/// Space-separated hex rendering of a symbol sequence.
pub fn hex_list(symbols: &[Elem]) -> String {
    symbols.iter().map(|s| format!("{s:x}")).collect::<Vec<_>>().join(" ")
}

#[derive(Debug)]
pub struct RsCode {
    n: usize,
    k: usize,
    table: Arc<FieldTable>,
    locators: Vec<Elem>,
    g: UniPoly,
    varpi: Vec<Elem>,
    basis: OnceLock<Vec<UniPoly>>,
}

impl RsCode {
    pub fn new(table: Arc<FieldTable>, n: usize, k: usize) -> Result<Self> {
        let q = table.q();
        if n != q - 1 || k == 0 || k >= n {
            return Err(Error::InvalidCode { n, k, q });
        }
        let field = Field::from_table(table.clone());
        let locators: Vec<Elem> = (0..n).map(|j| table.exp(j)).collect();
        let g = UniPoly::from_roots(&locators, &field);
        let varpi = lagrange_denominators(&locators, &field)?;
        Ok(RsCode { n, k, table, locators, g, varpi, basis: OnceLock::new() })
    }

    /// Code over GF(2^p) with the default primitive polynomial.
    pub fn with_exponent(p: u32, n: usize, k: usize) -> Result<Self> {
        Self::new(Arc::new(FieldTable::new(p)?), n, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.table.q()
    }

    pub fn table(&self) -> &Arc<FieldTable> {
        &self.table
    }

    /// A fresh field handle with its own zeroed multiplication counter.
    pub fn field(&self) -> Field {
        Field::from_table(self.table.clone())
    }

    pub fn locators(&self) -> &[Elem] {
        &self.locators
    }

    pub fn locator(&self, j: usize) -> Elem {
        self.locators[j]
    }

    /// G(x) = Π_j (x - α_j).
    pub fn g(&self) -> &UniPoly {
        &self.g
    }

    /// ϖ_j = Π_{j' != j} (α_j - α_{j'}).
    pub fn varpi(&self) -> &[Elem] {
        &self.varpi
    }

    /// Lagrange basis Φ_0..Φ_{n-1} on the locators, built once per code.
    pub fn lagrange_basis(&self) -> &[UniPoly] {
        self.basis.get_or_init(|| {
            let field = self.field();
            self.locators
                .iter()
                .zip(&self.varpi)
                .map(|(&a, &w)| {
                    let (num, _) = self.g.div_linear(a, &field);
                    num.scale(field.inv(w).expect("distinct locators"), &field)
                })
                .collect()
        })
    }

    /// R(x) = Σ_j ω_j Φ_j(x), the interpolant of a word on the locators.
    pub fn interpolate_word(&self, word: &[Elem], field: &Field) -> Result<UniPoly> {
        self.check_len(word.len(), self.n)?;
        let basis = self.lagrange_basis();
        let mut r = UniPoly::zero();
        for (&w, phi) in word.iter().zip(basis) {
            r.add_scaled_shifted(phi, w, 0, field);
        }
        Ok(r)
    }

    fn check_len(&self, actual: usize, expected: usize) -> Result<()> {
        if actual != expected {
            return Err(Error::LengthMismatch { expected, actual });
        }
        Ok(())
    }

    fn check_symbols(&self, symbols: &[Elem]) -> Result<()> {
        match symbols.iter().find(|s| !self.table.contains(**s)) {
            Some(s) => Err(Error::InvalidParameters(format!("symbol {s:x} outside GF({})", self.q()))),
            None => Ok(()),
        }
    }

    pub fn encode(&self, message: &[Elem], field: &Field) -> Result<Codeword> {
        self.check_len(message.len(), self.k)?;
        self.check_symbols(message)?;
        Ok(self.encode_poly(&UniPoly::from_coeffs(message.to_vec()), field))
    }

    /// Evaluates f at every locator.
    pub fn encode_poly(&self, f: &UniPoly, field: &Field) -> Codeword {
        Codeword::new(self.locators.iter().map(|&a| f.eval(a, field)).collect())
    }

    /// Message polynomial as a length-k coefficient vector.
    pub fn message_of(&self, f: &UniPoly) -> Vec<Elem> {
        (0..self.k).map(|i| f.coeff(i)).collect()
    }

    /// Inverse transform: the polynomial f with deg f < k and f(α_j) = c_j,
    /// or `None` if the word is not a codeword.
    pub fn message_of_codeword(&self, word: &Codeword, field: &Field) -> Option<UniPoly> {
        if word.len() != self.n {
            return None;
        }
        let n = self.n;
        let mut coeffs = vec![Elem::ZERO; n];
        for (s, c) in coeffs.iter_mut().enumerate() {
            // α^{-js}; n is odd so n^{-1} = 1 in characteristic 2.
            let mut acc = Elem::ZERO;
            for (j, &cj) in word.symbols.iter().enumerate() {
                acc += field.mul(cj, self.table.exp((n - (j * s) % n) % n));
            }
            *c = acc;
        }
        if coeffs[self.k..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn is_codeword(&self, word: &Codeword, field: &Field) -> bool {
        self.syndromes(word, field).iter().all(|s| s.is_zero())
    }

    /// S_i = Σ_j r_j α^{ij} for i = 1..n-k.
    pub fn syndromes(&self, word: &Codeword, field: &Field) -> Vec<Elem> {
        (1..=self.n - self.k)
            .map(|i| {
                word.symbols
                    .iter()
                    .enumerate()
                    .fold(Elem::ZERO, |acc, (j, &r)| acc + field.mul(r, self.table.exp(i * j)))
            })
            .collect()
    }

    /// Unique decoding up to ⌊(n-k)/2⌋ errors; `None` on failure.
    pub fn bm_decode(&self, received: &Codeword, field: &Field) -> Option<Vec<Elem>> {
        if received.len() != self.n {
            return None;
        }
        let n = self.n;
        let s = self.syndromes(received, field);
        if s.iter().all(|x| x.is_zero()) {
            return self.message_of_codeword(received, field).map(|f| self.message_of(&f));
        }
        // Berlekamp-Massey.
        let mut lambda = UniPoly::one();
        let mut b = UniPoly::one();
        let mut len = 0usize;
        let mut shift = 1usize;
        let mut bd = Elem::ONE;
        for r in 0..s.len() {
            let mut d = s[r];
            for i in 1..=len {
                d += field.mul(lambda.coeff(i), s[r - i]);
            }
            if d.is_zero() {
                shift += 1;
                continue;
            }
            let c = field.div(d, bd).ok()?;
            let prev = lambda.clone();
            lambda.add_scaled_shifted(&b, c, shift, field);
            if 2 * len <= r {
                len = r + 1 - len;
                b = prev;
                bd = d;
                shift = 1;
            } else {
                shift += 1;
            }
        }
        let t_max = (n - self.k) / 2;
        if lambda.deg() != Some(len) || len > t_max {
            return None;
        }
        // Chien search over locators: X_j = α^j is an error locator when
        // Λ(α^{-j}) = 0.
        let positions: Vec<usize> = (0..n)
            .filter(|&j| lambda.eval(self.table.exp((n - j) % n), field).is_zero())
            .collect();
        if positions.len() != len {
            return None;
        }
        let spoly = UniPoly::from_coeffs(s.clone());
        let omega = spoly.mul(&lambda, field).truncate(s.len());
        let dlambda = lambda.derivative();
        let mut corrected = received.clone();
        for &j in &positions {
            let xinv = self.table.exp((n - j) % n);
            let num = omega.eval(xinv, field);
            let den = dlambda.eval(xinv, field);
            let e = field.div(num, den).ok()?;
            corrected.symbols[j] += e;
        }
        self.message_of_codeword(&corrected, field).map(|f| self.message_of(&f))
    }
}

pub fn hamming_distance(a: &Codeword, b: &Codeword) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), actual: b.len() });
    }
    Ok(a.symbols.iter().zip(&b.symbols).filter(|(x, y)| x != y).count())
}
