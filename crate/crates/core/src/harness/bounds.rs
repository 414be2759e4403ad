use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Acd,
    Kv,
    AcdRe,
    KvRe,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "acd" => Variant::Acd,
            "kv" => Variant::Kv,
            "acd-re" => Variant::AcdRe,
            "kv-re" => Variant::KvRe,
            other => return Err(Error::Parse(format!("unknown variant {other}"))),
        })
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Acd => "acd",
            Variant::Kv => "kv",
            Variant::AcdRe => "acd-re",
            Variant::KvRe => "kv-re",
        })
    }
}

/// Closed-form upper bound on interpolation multiplications (module
/// formulation plus basis reduction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityBound {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub l: usize,
    pub eta: usize,
    pub variant: Variant,
    pub value: f64,
}

pub fn eval_bounds(n: usize, k: usize, m: usize, l: usize, eta: usize, variant: Variant) -> Result<ComplexityBound> {
    if k == 0 || k >= n || l == 0 {
        return Err(Error::InvalidParameters(format!("n={n}, k={k}, l={l}")));
    }
    if matches!(variant, Variant::Acd | Variant::AcdRe) && (m == 0 || m > l) {
        return Err(Error::InvalidParameters(format!("need 1 <= m <= l, got m={m}, l={l}")));
    }
    let (nf, r) = (n as f64, (n - k) as f64);
    let m1 = (m + 1) as f64;
    let l1 = (l + 1) as f64;
    let lf = l as f64;
    let chase = 2f64.powi(eta as i32);
    let value = match variant {
        Variant::Acd => chase * (nf * nf * (m1.powi(4) + 24.0) / 24.0 + 0.5 * nf * r * l1.powi(5)),
        Variant::Kv => nf * nf * (l1.powi(4) + 24.0 * lf) / 24.0 + 0.5 * nf * r * l1.powi(5),
        Variant::AcdRe => chase * (r * r * (m1.powi(4) + 12.0 * r) / 24.0 + 0.5 * r * r * l1.powi(5)),
        Variant::KvRe => r * r * (l1.powi(4) + 12.0 * r) / 24.0 + 0.5 * r * r * l1.powi(5),
    };
    Ok(ComplexityBound { n, k, m, l, eta, variant, value })
}
