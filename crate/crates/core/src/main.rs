use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mmdecode::acd::ReliabilityMatrix;
use mmdecode::harness::{eval_bounds, run_campaign, snr_sweep, to_csv, DecoderKind, DecoderSpec, Variant};
use mmdecode::rscode::hex_list;
use mmdecode::{Codeword, Elem, Error, Result, RsCode};

#[derive(Parser)]
#[command(name = "mmdecode", version, about = "Reed-Solomon soft decoding by module minimization")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct CodeArgs {
    /// Field exponent p (q = 2^p).
    #[arg(long = "field-exp")]
    field_exp: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(clap::Args)]
struct DecoderArgs {
    /// bm, gs, acd, acd-re, kv or kv-re.
    #[arg(long)]
    decoder: DecoderKind,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 0)]
    eta: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode a message (HEXLIST of k symbols).
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        message: String,
    },
    /// Decode a hard word or a reliability matrix read from a file.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        dec: DecoderArgs,
        #[arg(long)]
        input: PathBuf,
    },
    /// Monte-Carlo FER/SER/complexity sweep written as CSV.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        dec: DecoderArgs,
        #[arg(long = "snr-start", allow_hyphen_values = true)]
        snr_start: f64,
        #[arg(long = "snr-stop", allow_hyphen_values = true)]
        snr_stop: f64,
        #[arg(long = "snr-step")]
        snr_step: f64,
        #[arg(long)]
        frames: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a closed-form multiplication bound.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        eta: usize,
        #[arg(long)]
        variant: Variant,
    },
}

fn parse_hex_list(s: &str) -> Result<Vec<Elem>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim_start_matches("0x");
            u16::from_str_radix(t, 16).map(Elem::new).map_err(|e| Error::Parse(format!("{t}: {e}")))
        })
        .collect()
}

fn build_code(a: &CodeArgs) -> Result<RsCode> {
    RsCode::with_exponent(a.field_exp, a.n, a.k)
}

/// A file with n tokens is a hard word; q·n tokens form a q×n reliability
/// matrix.
fn read_input(code: &RsCode, text: &str) -> Result<ReliabilityMatrix> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let (n, q) = (code.n(), code.q());
    if tokens.len() == n {
        let word = parse_hex_list(text)?;
        if let Some(s) = word.iter().find(|s| s.index() >= q) {
            return Err(Error::Parse(format!("symbol {s:x} outside GF({q})")));
        }
        return Ok(ReliabilityMatrix::one_hot(q, &word));
    }
    if tokens.len() == n * q {
        let vals = tokens
            .iter()
            .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let cols = (0..n).map(|j| (0..q).map(|i| vals[i * n + j]).collect()).collect();
        return ReliabilityMatrix::new(q, cols);
    }
    Err(Error::Parse(format!("expected {n} hex symbols or {q}x{n} probabilities, found {} tokens", tokens.len())))
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Encode { code, message } => {
            let code = build_code(&code)?;
            let msg = parse_hex_list(&message)?;
            let cw = code.encode(&msg, &code.field())?;
            println!("{}", cw.to_hex());
        }
        Cmd::Decode { code, dec, input } => {
            let code = build_code(&code)?;
            let text = fs::read_to_string(&input).map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
            let pi = read_input(&code, &text)?;
            let spec = DecoderSpec::from_parts(dec.decoder, dec.m, dec.l, dec.eta);
            let out = spec.decode(&code, &pi)?;
            match &out.outcome {
                Some(o) => {
                    for c in &o.candidates {
                        println!("candidate {}", hex_list(c));
                    }
                }
                None => {
                    if let Some(m) = &out.selected {
                        println!("candidate {}", hex_list(m));
                    }
                }
            }
            match &out.selected {
                Some(m) => {
                    println!("selected {}", hex_list(m));
                    let cw: Codeword = code.encode(m, &code.field())?;
                    println!("codeword {}", cw.to_hex());
                }
                None => println!("selected none"),
            }
            println!("multiplications {}", out.mults);
        }
        Cmd::Simulate { code, dec, snr_start, snr_stop, snr_step, frames, seed, out } => {
            let code = build_code(&code)?;
            let spec = DecoderSpec::from_parts(dec.decoder, dec.m, dec.l, dec.eta);
            let snrs = snr_sweep(snr_start, snr_stop, snr_step)?;
            let reports = run_campaign(&code, &spec, &snrs, frames, seed)?;
            fs::write(&out, to_csv(&reports)).map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
        }
        Cmd::Bounds { n, k, m, l, eta, variant } => {
            let b = eval_bounds(n, k, m, l, eta, variant)?;
            println!("{:.0}", b.value);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
