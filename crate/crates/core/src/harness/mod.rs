//! Channel simulation, Monte-Carlo campaigns and closed-form complexity
//! bounds.

pub mod bounds;
pub mod campaign;
pub mod channel;

pub use bounds::{eval_bounds, ComplexityBound, Variant};
pub use campaign::{
    run_campaign, simulate_frame, snr_sweep, to_csv, DecoderKind, DecoderSpec, FrameDecode, TrialReport, CSV_HEADER,
};
pub use channel::{transmit, ChannelConfig};
