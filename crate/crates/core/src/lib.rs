//! Algebraic soft-decision decoding of Reed-Solomon codes where the
//! interpolation step is solved by module minimization: an explicit
//! F_q[x]-module basis is written as a polynomial matrix and reduced to weak
//! Popov form, and its minimal row is the interpolation polynomial.
//!
//! Layers, bottom up:
//!
//! * [`galois`]: GF(2^p) tables with a per-job multiplication counter.
//! * [`unipoly`]: dense univariate polynomials and Lagrange machinery.
//! * [`polymatrix`]: row degrees, leading positions, weight maps and the
//!   Mulders-Storjohann reduction.
//! * [`rscode`]: encoding and a Berlekamp-Massey baseline.
//! * [`interp`]: bivariate polynomials, the Guruswami-Sudan basis, the
//!   interpolate/reduce/extract driver and Roth-Ruckenstein root finding.
//! * [`acd`]: algebraic Chase decoding, plain and re-encoded.
//! * [`kv`]: Koetter-Vardy decoding, plain and re-encoded.
//! * [`harness`]: AWGN/BPSK channel, Monte-Carlo campaigns and the
//!   closed-form complexity bounds.

pub mod acd;
pub mod error;
pub mod galois;
pub mod harness;
pub mod interp;
pub mod kv;
pub mod polymatrix;
pub mod rscode;
pub mod unipoly;

pub use error::{Error, Result};
pub use galois::{Elem, Field, FieldTable};
pub use interp::{BivarPoly, DecodeOutcome, ModuleBasis};
pub use polymatrix::PolyMatrix;
pub use rscode::{Codeword, RsCode};
pub use unipoly::UniPoly;
