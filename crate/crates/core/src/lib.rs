//! Simulation and verification of non-local quantum gates implemented by
//! spatially separated parties using local operations, classical
//! communication and shared ebits.
//!
//! - [`qstate`]: dense state vectors, unitaries, measurement and Schmidt
//!   decompositions.
//! - [`runtime`]: node-owned qubits, Bell-pair allocation, counted classical
//!   messages and a branch-exhaustive program executor.
//! - [`protocols`]: the non-local gate protocols, teleportation, dense coding
//!   and resource baselines.
//! - [`analysis`]: swap-symmetry checks for two-qubit gates and their
//!   generators.

pub mod analysis;
pub mod protocols;
pub mod qstate;
pub mod runtime;
