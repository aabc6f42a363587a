//! Closed-loop control of PV inverter power outputs toward the solution of a
//! semidefinite-relaxed AC optimal power flow problem.
//!
//! The crate is organized around the agents of the control architecture:
//!
//! - [`feeder`]: single-phase-equivalent network model — admittance matrix,
//!   per-bus Hermitian injection matrices, and the linear power map.
//! - [`inverter`]: per-inverter operating regions, ancillary-service costs,
//!   closed-form setpoint updates, and first-order output-power dynamics.
//! - [`sdp`]: the network operator's matrix subproblem — a splitting solver
//!   over the spectrahedral voltage set, PSD projection, and rank-1 recovery.
//! - [`controller`]: the dual ascent law, diminishing stepsizes with restart,
//!   the asynchronous epoch map, and convergence diagnostics.
//! - [`simulator`]: deterministic closed-loop tick engine with message
//!   passing between the operator and the inverter agents.
//! - [`oracle`]: independent reference computations (central solve, grid
//!   search, scalar power flow) used by tests and acceptance runs.
//!
//! The crate is `no_std`-compatible (with `alloc`); all I/O, file formats and
//! the CLI live in the companion `gridloop` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod controller;
pub mod feeder;
pub mod inverter;
pub mod linalg;
pub mod oracle;
pub mod sdp;
pub mod simulator;
mod types;

pub use types::PqPair;
