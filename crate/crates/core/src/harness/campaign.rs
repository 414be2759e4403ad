use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::acd::{acd_mm_decode, acd_mm_re_decode, ReliabilityMatrix};
use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::harness::channel::{transmit, ChannelConfig};
use crate::interp::{gs_decode, DecodeOutcome};
use crate::kv::{kv_mm_decode, kv_mm_re_decode};
use crate::rscode::{hamming_distance, Codeword, RsCode};

pub const CSV_HEADER: &str = "snr_db,frames,frame_errors,fer,symbol_errors,ser,avg_mults,decoder";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderSpec {
    Bm,
    Gs { m: usize, l: usize },
    Acd { eta: usize, m: usize, l: usize },
    AcdRe { eta: usize, m: usize, l: usize },
    Kv { l: usize },
    KvRe { l: usize },
}

/// Decoder family names accepted by [`DecoderSpec::from_parts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Bm,
    Gs,
    Acd,
    AcdRe,
    Kv,
    KvRe,
}

impl FromStr for DecoderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bm" => DecoderKind::Bm,
            "gs" => DecoderKind::Gs,
            "acd" => DecoderKind::Acd,
            "acd-re" => DecoderKind::AcdRe,
            "kv" => DecoderKind::Kv,
            "kv-re" => DecoderKind::KvRe,
            other => return Err(Error::Parse(format!("unknown decoder {other}"))),
        })
    }
}

impl DecoderSpec {
    pub fn from_parts(kind: DecoderKind, m: usize, l: usize, eta: usize) -> Self {
        match kind {
            DecoderKind::Bm => DecoderSpec::Bm,
            DecoderKind::Gs => DecoderSpec::Gs { m, l },
            DecoderKind::Acd => DecoderSpec::Acd { eta, m, l },
            DecoderKind::AcdRe => DecoderSpec::AcdRe { eta, m, l },
            DecoderKind::Kv => DecoderSpec::Kv { l },
            DecoderKind::KvRe => DecoderSpec::KvRe { l },
        }
    }

    /// Runs the decoder. Hard-decision decoders see the hard decision of Π.
    pub fn decode(&self, code: &RsCode, pi: &ReliabilityMatrix) -> Result<FrameDecode> {
        let hard = Codeword::new(pi.hard_decision());
        let outcome = match *self {
            DecoderSpec::Bm => {
                let field = code.field();
                let selected = code.bm_decode(&hard, &field);
                return Ok(FrameDecode { selected, mults: field.mul_count(), outcome: None });
            }
            DecoderSpec::Gs { m, l } => gs_decode(code, &hard, m, l)?,
            DecoderSpec::Acd { eta, m, l } => acd_mm_decode(code, pi, eta, m, l)?,
            DecoderSpec::AcdRe { eta, m, l } => acd_mm_re_decode(code, pi, eta, m, l)?,
            DecoderSpec::Kv { l } => kv_mm_decode(code, pi, l)?,
            DecoderSpec::KvRe { l } => kv_mm_re_decode(code, pi, l)?,
        };
        Ok(FrameDecode { selected: outcome.selected.clone(), mults: outcome.ops.total(), outcome: Some(outcome) })
    }
}

impl fmt::Display for DecoderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DecoderSpec::Bm => write!(f, "bm"),
            DecoderSpec::Gs { m, l } => write!(f, "gs-m{m}-l{l}"),
            DecoderSpec::Acd { eta, m, l } => write!(f, "acd-m{m}-l{l}-eta{eta}"),
            DecoderSpec::AcdRe { eta, m, l } => write!(f, "acd-re-m{m}-l{l}-eta{eta}"),
            DecoderSpec::Kv { l } => write!(f, "kv-l{l}"),
            DecoderSpec::KvRe { l } => write!(f, "kv-re-l{l}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FrameDecode {
    pub selected: Option<Vec<Elem>>,
    /// All counted multiplications for the frame.
    pub mults: u64,
    pub outcome: Option<DecodeOutcome>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub snr_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub symbol_errors: u64,
    pub total_mults: u64,
    pub n: usize,
    pub decoder: String,
}

impl TrialReport {
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.frames as f64
    }

    pub fn ser(&self) -> f64 {
        self.symbol_errors as f64 / (self.frames as f64 * self.n as f64)
    }

    pub fn avg_mults(&self) -> f64 {
        self.total_mults as f64 / self.frames as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.6e},{},{:.6e},{:.2},{}",
            self.snr_db,
            self.frames,
            self.frame_errors,
            self.fer(),
            self.symbol_errors,
            self.ser(),
            self.avg_mults(),
            self.decoder
        )
    }
}

pub fn to_csv(reports: &[TrialReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// SplitMix64 finalizer.
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-frame substream seed.
pub fn frame_seed(seed: u64, snr_index: usize, frame: u64) -> u64 {
    splitmix(seed ^ splitmix((snr_index as u64) << 40 ^ frame))
}

/// One simulated frame: random message, transmitted codeword, posteriors.
/// Depends only on (seed, snr index, frame), never on the decoder.
pub fn simulate_frame(
    code: &RsCode,
    snr_db: f64,
    seed: u64,
    snr_index: usize,
    frame: u64,
) -> Result<(Vec<Elem>, Codeword, ReliabilityMatrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(frame_seed(seed, snr_index, frame));
    let q = code.q() as u16;
    let msg: Vec<Elem> = (0..code.k()).map(|_| Elem::new(rng.random_range(0..q))).collect();
    let (tx, pi) = transmit(code, &msg, &ChannelConfig { snr_db }, &mut rng)?;
    Ok((msg, tx, pi))
}

/// SNR points start, start + step, ... up to stop (inclusive within half a
/// step).
pub fn snr_sweep(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::InvalidParameters(format!("bad SNR sweep {start}:{step}:{stop}")));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

struct FrameStat {
    error: bool,
    symbol_errors: usize,
    mults: u64,
}

fn run_frame(code: &RsCode, spec: &DecoderSpec, snr: f64, seed: u64, si: usize, frame: u64) -> Result<FrameStat> {
    let (msg, tx, pi) = simulate_frame(code, snr, seed, si, frame)?;
    let dec = spec.decode(code, &pi)?;
    let field = code.field();
    let word = match &dec.selected {
        Some(m) => code.encode(m, &field)?,
        None => Codeword::new(pi.hard_decision()),
    };
    Ok(FrameStat {
        error: dec.selected.as_deref() != Some(&msg[..]),
        symbol_errors: hamming_distance(&word, &tx)?,
        mults: dec.mults,
    })
}

/// Monte-Carlo FER/SER/complexity sweep. Frames run in parallel; results
/// depend only on the inputs.
pub fn run_campaign(code: &RsCode, spec: &DecoderSpec, snrs: &[f64], frames: u64, seed: u64) -> Result<Vec<TrialReport>> {
    if frames == 0 {
        return Err(Error::InvalidParameters("frames must be at least 1".into()));
    }
    snrs.iter()
        .enumerate()
        .map(|(si, &snr)| {
            let stats = (0..frames)
                .into_par_iter()
                .map(|fr| run_frame(code, spec, snr, seed, si, fr))
                .collect::<Result<Vec<_>>>()?;
            Ok(TrialReport {
                snr_db: snr,
                frames,
                frame_errors: stats.iter().filter(|s| s.error).count() as u64,
                symbol_errors: stats.iter().map(|s| s.symbol_errors as u64).sum(),
                total_mults: stats.iter().map(|s| s.mults).sum(),
                n: code.n(),
                decoder: spec.to_string(),
            })
        })
        .collect()
}
