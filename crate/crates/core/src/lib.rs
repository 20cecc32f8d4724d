//! Exact input and output entropies of the `k`-deletion and `k`-insertion
//! channels.
//!
//! A word `x` sent through the `k`-deletion channel loses exactly `k`
//! uniformly chosen symbols; through the `k`-insertion channel it gains `k`
//! symbols at uniformly chosen positions with uniformly chosen values. With
//! uniform transmission the posterior over inputs given an output `y` is
//! proportional to the embedding number `ω_y(x)`, so every entropy here
//! reduces to exact integer weights over an insertion or deletion ball.
//!
//! - [`seqcore`]: words, run-length profiles, canonical extremal words,
//!   enumeration.
//! - [`embed`]: embedding numbers and weighted balls.
//! - [`entropy`]: channel probabilities, input/output entropies, closed
//!   forms for `k = 1`, duality.
//! - [`extremal`]: closed-form and exhaustive extremal entropies, the
//!   2-deletion minimum, the appendix weight.
//! - [`average`]: run counts, average entropies, lower bounds, figure table.
//! - [`verify`]: self-check suites used by the CLI.
//!
//! All logarithms are base 2.

pub mod average;
pub mod config;
pub mod embed;
pub mod entropy;
pub mod error;
pub mod extremal;
pub mod math;
pub mod seqcore;
pub mod verify;

pub use config::Config;
pub use embed::{Direction, WeightedBall};
pub use entropy::{ChannelSpec, EntropyReport, Method};
pub use error::{Error, Result};
pub use extremal::ExtremalResult;
pub use seqcore::{RunLengthProfile, Word};
