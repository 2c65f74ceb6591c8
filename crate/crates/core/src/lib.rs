//! Statevector simulation of Trotterized time evolution and phase estimation
//! for a particle in a one-dimensional finite square well.
//!
//! The crate is organised bottom-up:
//!
//! * [`statevec`]: dense register, primitive gate set, sampling and the text
//!   circuit dump.
//! * [`grid`]: symmetric position/momentum grids, trial and exact wave
//!   functions, bin integration and the square-well potential.
//! * [`qft`]: quantum Fourier transform gate lists and the boundary-corrected
//!   transform used to move between position and momentum registers.
//! * [`evolution`]: gate-level second-order Trotter step, plain and
//!   work-qubit controlled.
//! * [`phaseest`]: multi-qubit phase estimation and two-circuit iterative
//!   phase estimation.
//! * [`oracle`]: classical ground truth (transcendental eigenvalue solver,
//!   dense unitaries, reference propagators, predicted QPE histograms).
//!
//! Qubit `m` always carries bit `m` of a basis-state label (qubit 0 is the
//! least significant bit).

#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod error;
pub mod evolution;
pub mod grid;
pub mod oracle;
pub mod phaseest;
pub mod qft;
pub mod statevec;

pub use error::{Error, Result};
pub use num_complex::Complex64;
