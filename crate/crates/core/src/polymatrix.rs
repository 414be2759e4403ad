//! Square polynomial matrices over GF(q)[x] and their reduction to weak
//! Popov form.
//!
//! The degree of a row is the maximum entry degree; its leading position
//! (LP) is the largest column index attaining that degree. A matrix is in
//! weak Popov form when all row LPs are pairwise distinct.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::unipoly::UniPoly;

/// Degree, leading position and leading term of one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowProfile {
    pub degree: usize,
    pub leading_position: usize,
    pub leading_term_coeff: Elem,
    pub leading_term_deg: usize,
}

/// Diagonal column weighting applied before reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMap {
    /// Column τ is multiplied by x^{τβ}.
    Ascending(usize),
    /// Column τ is multiplied by x^{(l-τ)β}.
    Descending(usize),
}

impl WeightMap {
    /// Power of x applied to column `tau` of a matrix with `cols` columns.
    pub fn power(&self, tau: usize, cols: usize) -> usize {
        match *self {
            WeightMap::Ascending(beta) => tau * beta,
            WeightMap::Descending(beta) => (cols - 1 - tau) * beta,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<UniPoly>>,
    row_ops: usize,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex_text())
    }
}

impl PolyMatrix {
    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<UniPoly>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidParameters("empty matrix".into()));
        }
        for r in &rows {
            if r.len() != size {
                return Err(Error::LengthMismatch { expected: size, actual: r.len() });
            }
        }
        Ok(PolyMatrix { rows, row_ops: 0 })
    }

    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|t| {
                (0..size)
                    .map(|tau| if t == tau { UniPoly::one() } else { UniPoly::zero() })
                    .collect()
            })
            .collect();
        PolyMatrix { rows, row_ops: 0 }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn entry(&self, t: usize, tau: usize) -> &UniPoly {
        &self.rows[t][tau]
    }

    #[inline]
    pub fn row(&self, t: usize) -> &[UniPoly] {
        &self.rows[t]
    }

    pub fn rows(&self) -> &[Vec<UniPoly>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<UniPoly>> {
        self.rows
    }

    /// Row operations performed by [`PolyMatrix::ms_reduce`].
    pub fn row_ops(&self) -> usize {
        self.row_ops
    }

    fn profile_of(row: &[UniPoly]) -> Option<RowProfile> {
        let mut best: Option<(usize, usize)> = None;
        for (tau, e) in row.iter().enumerate() {
            if let Some(d) = e.deg() {
                if best.is_none_or(|(bd, _)| d >= bd) {
                    best = Some((d, tau));
                }
            }
        }
        best.map(|(d, tau)| RowProfile {
            degree: d,
            leading_position: tau,
            leading_term_coeff: row[tau].lead(),
            leading_term_deg: d,
        })
    }

    pub fn row_profile(&self, t: usize) -> Result<RowProfile> {
        Self::profile_of(&self.rows[t]).ok_or(Error::DegenerateBasis(t))
    }

    pub fn row_degree(&self, t: usize) -> Option<usize> {
        Self::profile_of(&self.rows[t]).map(|p| p.degree)
    }

    /// Sum of row degrees.
    pub fn matrix_degree(&self) -> Result<usize> {
        (0..self.size()).map(|t| self.row_profile(t).map(|p| p.degree)).sum()
    }

    /// Largest entry degree (`None` for the zero matrix).
    pub fn max_entry_degree(&self) -> Option<usize> {
        self.rows.iter().flatten().filter_map(|e| e.deg()).max()
    }

    pub fn is_weak_popov(&self) -> bool {
        let mut seen = vec![false; self.size()];
        for row in &self.rows {
            match Self::profile_of(row) {
                None => return false,
                Some(p) => {
                    if seen[p.leading_position] {
                        return false;
                    }
                    seen[p.leading_position] = true;
                }
            }
        }
        true
    }

    pub fn apply_weights(&self, w: WeightMap) -> Self {
        let cols = self.size();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(tau, e)| e.shift(w.power(tau, cols)))
                    .collect()
            })
            .collect();
        PolyMatrix { rows, row_ops: self.row_ops }
    }

    /// Inverse of [`PolyMatrix::apply_weights`]; every entry must be divisible
    /// by its column power.
    pub fn demap(&self, w: WeightMap) -> Result<Self> {
        let cols = self.size();
        let mut rows = Vec::with_capacity(cols);
        for row in &self.rows {
            let mut out = Vec::with_capacity(cols);
            for (tau, e) in row.iter().enumerate() {
                let power = w.power(tau, cols);
                out.push(e.unshift(power).ok_or(Error::CorruptedBasis { column: tau, power })?);
            }
            rows.push(out);
        }
        Ok(PolyMatrix { rows, row_ops: self.row_ops })
    }

    /// Mulders-Storjohann reduction to weak Popov form.
    ///
    /// Collisions are resolved in ascending LP order. Within a collision the
    /// reducer is the row of minimal (degree, index) and the target the
    /// remaining colliding row of smallest index. Multiplications go through
    /// `field` and are counted there.
    pub fn ms_reduce(&mut self, field: &Field) -> Result<()> {
        let size = self.size();
        let mut prof: Vec<RowProfile> =
            (0..size).map(|t| self.row_profile(t)).collect::<Result<_>>()?;
        loop {
            let mut by_lp: Vec<Vec<usize>> = vec![Vec::new(); size];
            for (t, p) in prof.iter().enumerate() {
                by_lp[p.leading_position].push(t);
            }
            let Some(group) = by_lp.iter().find(|g| g.len() >= 2) else {
                return Ok(());
            };
            let reducer = *group
                .iter()
                .min_by_key(|&&t| (prof[t].degree, t))
                .expect("nonempty group");
            let target = *group.iter().find(|&&t| t != reducer).expect("two rows");
            let (pr, pt) = (prof[reducer], prof[target]);
            let c = field.div(pt.leading_term_coeff, pr.leading_term_coeff)?;
            let s = pt.degree - pr.degree;
            let (src, dst) = if reducer < target {
                let (a, b) = self.rows.split_at_mut(target);
                (&a[reducer], &mut b[0])
            } else {
                let (a, b) = self.rows.split_at_mut(reducer);
                (&b[0], &mut a[target])
            };
            for (d, e) in dst.iter_mut().zip(src.iter()) {
                d.add_scaled_shifted(e, c, s, field);
            }
            self.row_ops += 1;
            prof[target] = Self::profile_of(&self.rows[target]).ok_or(Error::SingularBasis)?;
        }
    }

    /// Index of the minimal row of a weak Popov matrix: smallest degree,
    /// then smallest LP, then smallest index. The first two keys pick the
    /// row with the smallest leading term.
    pub fn minimal_row(&self) -> usize {
        (0..self.size())
            .filter_map(|t| Self::profile_of(&self.rows[t]).map(|p| ((p.degree, p.leading_position, t), t)))
            .min()
            .map(|(_, t)| t)
            .unwrap_or(0)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self, field: &Field) -> Result<UniPoly> {
        let n = self.size();
        let mut a = self.rows.clone();
        let mut prev = UniPoly::one();
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => a.swap(k, i),
                    None => return Ok(UniPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j].mul(&a[k][k], field) + &a[i][k].mul(&a[k][j], field);
                    a[i][j] = num.div_exact(&prev, field)?;
                }
                a[i][k] = UniPoly::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(a[n - 1][n - 1].clone())
    }

    /// Text dump: one row per line, entries separated by spaces, each entry
    /// a comma-separated list of hex coefficients (low to high, `0` for the
    /// zero polynomial).
    pub fn to_hex_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|e| {
                    if e.is_zero() {
                        "0".to_string()
                    } else {
                        e.coeffs().iter().map(|c| format!("{c:x}")).collect::<Vec<_>>().join(",")
                    }
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_hex_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|tok| {
                        tok.split(',')
                            .map(|h| {
                                u16::from_str_radix(h, 16)
                                    .map(Elem::new)
                                    .map_err(|e| Error::Parse(format!("{h}: {e}")))
                            })
                            .collect::<Result<Vec<_>>>()
                            .map(UniPoly::from_coeffs)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}
