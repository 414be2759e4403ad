use rand::Rng;
use rand_distr::StandardNormal;

use crate::acd::ReliabilityMatrix;
use crate::error::Result;
use crate::galois::Elem;
use crate::rscode::{Codeword, RsCode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    /// E_b/N_0 in dB; `f64::INFINITY` gives a noiseless channel.
    pub snr_db: f64,
}

impl ChannelConfig {
    /// Noise standard deviation for BPSK at code rate k/n.
    pub fn sigma(&self, code: &RsCode) -> f64 {
        if self.snr_db == f64::INFINITY {
            return 0.0;
        }
        let rate = code.k() as f64 / code.n() as f64;
        (1.0 / (2.0 * rate * 10f64.powf(self.snr_db / 10.0))).sqrt()
    }
}

/// log(1 + e^x) without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Symbol posteriors from received BPSK samples, p samples per symbol, bit
/// b sent as 1 - 2b, natural binary LSB first, uniform prior.
pub fn posteriors(code: &RsCode, samples: &[f64], sigma: f64) -> Result<ReliabilityMatrix> {
    let p = code.table().p() as usize;
    let q = code.q();
    let n = samples.len() / p;
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let s = &samples[j * p..(j + 1) * p];
        let col = if sigma == 0.0 {
            let sym = s.iter().enumerate().fold(0usize, |acc, (b, &r)| acc | (usize::from(r < 0.0) << b));
            let mut c = vec![0.0; q];
            c[sym] = 1.0;
            c
        } else {
            // ln P(b=0|r) = -softplus(-L), ln P(b=1|r) = -softplus(L).
            let llr: Vec<f64> = s.iter().map(|&r| 2.0 * r / (sigma * sigma)).collect();
            let logs: Vec<f64> = (0..q)
                .map(|i| {
                    llr.iter()
                        .enumerate()
                        .map(|(b, &l)| if i >> b & 1 == 1 { -softplus(l) } else { -softplus(-l) })
                        .sum()
                })
                .collect();
            let mx = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            logs.iter().map(|&v| (v - mx).exp()).collect()
        };
        columns.push(col);
    }
    ReliabilityMatrix::normalized(q, columns)
}

/// Encodes, modulates, adds white Gaussian noise and returns the sent
/// codeword with the channel posteriors.
pub fn transmit<R: Rng + ?Sized>(
    code: &RsCode,
    message: &[Elem],
    cfg: &ChannelConfig,
    rng: &mut R,
) -> Result<(Codeword, ReliabilityMatrix)> {
    let field = code.field();
    let tx = code.encode(message, &field)?;
    let p = code.table().p() as usize;
    let sigma = cfg.sigma(code);
    let mut samples = Vec::with_capacity(code.n() * p);
    for s in &tx.symbols {
        for b in 0..p {
            let bit = (s.value() >> b) & 1;
            let x = 1.0 - 2.0 * bit as f64;
            let noise: f64 = if sigma > 0.0 { rng.sample::<f64, _>(StandardNormal) * sigma } else { 0.0 };
            samples.push(x + noise);
        }
    }
    Ok((tx, posteriors(code, &samples, sigma)?))
}
