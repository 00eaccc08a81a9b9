//! Exact multiphoton interference statistics for lossless linear interferometers.
//!
//! The transition probability of `m` identical photons through a `k`-port
//! interferometer is evaluated by enumerating *routing matrices* (the
//! non-negative integer `k×k` matrices whose row sums are the input photon
//! configuration and whose column sums are the output configuration) and
//! coherently averaging their amplitudes under multivariate hypergeometric
//! weights. The same enumeration yields the distinguishable-particle
//! (incoherent) and fermionic (sign-alternating) statistics, so the three
//! cases differ only in how the per-class amplitudes are combined.
//!
//! An independent permanent-based evaluation ([`oracle`]) cross-checks every
//! probability, and closed-form factorial moments, cumulants, and Krawtchouk
//! identities ([`statistics`]) provide low-order witnesses that distinguish
//! coherent from incoherent behaviour without a full distribution scan.
//!
//! # Quick start
//!
//! ```
//! use multiphoton::combinat::Composition;
//! use multiphoton::optics::beam_splitter;
//! use multiphoton::transition::p_quantum;
//!
//! // Two photons, one per port, balanced beam splitter: the split output
//! // is completely suppressed (the Hong-Ou-Mandel dip).
//! let u = beam_splitter(0.5).unwrap();
//! let report = p_quantum(&u, &Composition::new([1, 1]), &Composition::new([1, 1])).unwrap();
//! assert!(report.probability < 1e-12);
//! ```
//!
//! Runnable demonstrations of each capability live under `examples/`;
//! the `multiphoton` binary exposes the same calculations as `dist`,
//! `moments`, `verify`, and `suppress` subcommands.

pub mod cli;
pub mod combinat;
mod jsonfmt;
pub mod optics;
pub mod oracle;
pub mod statistics;
pub mod suppress;
pub mod transition;

pub use combinat::{BigCount, Composition, RoutingMatrix};
pub use optics::InterferometerMatrix;
pub use statistics::{KrawtchoukContext, MomentReport};
pub use suppress::SuppressionRecord;
pub use transition::{OutputDistribution, StatisticsKind, TransitionReport};
