//! Spectral-gap certificates and explicit concentration bounds for
//! empirical means of Markov chains.
//!
//! A certificate records a lower bound `delta0` on the spectral gap of the
//! averaging operator, derived from a norm comparison constant `C` and a
//! seminorm contraction factor `theta`. The bounds in [`bounds`] turn a
//! certificate and an observable norm into a tail probability for the
//! empirical mean of a chain of length `n`.
//!
//! Three model families carry exact oracles: the lazy walk on the
//! hypercube ([`hypercube`]), finite kernels with a Doeblin minorization
//! ([`doeblin`]), and the Bernoulli-convolution chain acting on step
//! functions of bounded variation ([`bernoulli`]).

pub mod bernoulli;
pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod constants;
pub mod doeblin;
pub mod error;
pub mod hypercube;
pub mod output;
pub mod rng;
pub mod stats;
pub mod verify;

pub use bounds::{BoundResult, ObservableSpec, Regime, Violation};
pub use certificate::{Family, GapCertificate, HypercubeNorm, LemmaInput};
pub use error::{Error, Result};
