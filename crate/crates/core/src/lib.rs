//! Solvers, dynamics and hardness gadgets for transitive delegation games.
//!
//! Voters rank everyone (including themselves and abstention); a delegation
//! state lets each voter vote, abstain, or delegate transitively. Stable
//! states are exactly the kernels of the acceptability digraph, and this
//! crate provides:
//!
//! * the core model: profiles, delegation resolution, stability, measures
//!   ([`profile`]);
//! * kernels and the exhaustive enumeration oracle ([`digraph`]);
//! * polynomial solvers for single-peaked, symmetric and distance-based
//!   profiles ([`single_peaked`], [`symmetric`], [`distance`]);
//! * iterative delegation dynamics with convergence and cycle detection
//!   ([`dynamics`]);
//! * 3-SAT hardness gadget generators with desk-scale verifiers
//!   ([`gadgets`]);
//! * seedable instance generators and brute-force reference oracles
//!   ([`generate`], [`oracle`]).

// voters are 1-based throughout; plain index ranges read better than
// enumerate() offset arithmetic
#![allow(clippy::needless_range_loop)]

pub mod digraph;
pub mod distance;
pub mod dynamics;
pub mod error;
pub mod gadgets;
pub mod generate;
pub mod oracle;
pub mod profile;
pub mod samples;
pub mod single_peaked;
pub mod symmetric;

pub use digraph::{enumerate_kernels, is_kernel, AcceptabilityDigraph, KernelList, KernelVerdict};
pub use error::Error;
pub use profile::{
    is_nash_stable, kernel_to_delegation, measures, DelegationFunction, Equilibrium,
    GuruAssignment, Measures, PreferenceProfile, Stability, VoterId, ABSTAIN,
};
pub use single_peaked::{check_single_peaked, AxisProfile};
