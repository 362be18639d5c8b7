//! Higher-order nonclassicality of hybrid coherent states.
//!
//! A hybrid coherent state (HCS) is the normalized superposition
//! `√ε|α⟩ + √(1−ε)e^{iφ}a†|α⟩` of a coherent state and a single-photon-added
//! coherent state. This crate evaluates its field moments `⟨a†ⁿaᵐ⟩` in closed
//! form ([`moments`]), computes Hong–Mandel higher-order squeezing and
//! Pathak–Garcia higher-order antibunching from any moment source
//! ([`witnesses`]), and checks both against a brute-force truncated Fock-space
//! engine ([`fock`]). [`herald`] simulates the interferometric scheme that
//! prepares the state: a single photon split over two arms, one arm coupled to
//! a coherent mode by a cross-Kerr medium, and a click at one output detector.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod combin;
pub mod error;
pub mod fock;
pub mod herald;
pub mod moments;
pub mod params;
pub mod witnesses;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use fock::{FockVector, TruncationPolicy};
pub use herald::{HeraldOutcome, HeraldingParams, KerrMode};
pub use moments::ClosedForm;
pub use params::{HcsParams, MomentKey};
pub use witnesses::{AntibunchingResult, MomentProvider, QuadratureSpec, SqueezingResult};

/// Complex amplitudes and moment values.
pub type ComplexScalar = Complex64;
