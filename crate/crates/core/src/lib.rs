//! Threshold logic with weighted spin-minority gates.
//!
//! The physical gate sums ±1 input spins scaled by signed integer weights
//! and outputs the sign of the sum; with three unit weights of `-1` it is the
//! three-input minority gate. This crate evaluates such gates, builds and
//! verifies feed-forward netlists of them (including minority and weighted
//! ripple-carry adders), reports device counts against a baseline, and
//! decides whether an arbitrary Boolean function fits in a single gate.

pub mod constructions;
pub mod gate;
pub mod netlist;
pub mod textio;
pub mod truth_table;
pub mod tsolve;

pub use constructions::{AdderSpec, AdderStyle, ConstructionError};
pub use gate::{GateError, Spin, SpinMinorityGate, ThresholdGate};
pub use netlist::{
    CheckMethod, CostReport, Counterexample, Equivalence, EquivalenceOptions, Netlist,
    NetlistError, Reference, StructuralError, TableReference,
};
pub use textio::{parse_netlist, parse_truth_table, print_netlist, ParseError};
pub use truth_table::{TruthTable, TruthTableError, MAX_INPUTS};
pub use tsolve::{
    chow_parameters, is_unate, minimize_weights, solve_threshold, ChowVector, Classification,
    FarkasCertificate, SolveError, ThresholdRealization,
};
