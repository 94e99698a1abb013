//! # mfir
//!
//! Design of multiplierless linear-phase FIR filters with a provably minimal
//! number of adders.
//!
//! A fixed-point FIR filter can be implemented without any multipliers by
//! expanding each coefficient multiplication into shifts and additions that
//! share intermediate results (a multiplier block), followed by the structural
//! adders of the tapped delay line. This crate searches for coefficient sets
//! and shift-add realizations *jointly*, so the total number of adders is
//! globally minimal for the given frequency-domain specification, filter
//! order, and effective coefficient word length.
//!
//! Two integer linear programming formulations are provided:
//!
//! * [`ilp1`]: the multiplier block is modeled as a network of `A_M` abstract
//!   adder nodes with explicit input selection, shifts, and signs. An outer
//!   loop over `A_M` minimizes the total adder count.
//! * [`ilp2`]: adder-depth-bounded design. All values reachable within `s`
//!   cascaded additions are precomputed per stage; the model picks which
//!   values to realize at each stage. The adder depth bound is a hard
//!   constraint, which also bounds the critical path of the datapath.
//!
//! Supporting machinery: frequency grids (uniform and approximate Fekete
//! points, [`grid`]), LP-based per-coefficient bound tightening ([`bounds`]),
//! a solver-agnostic MILP layer with indicator-constraint linearization
//! ([`milp`]), exact adder-graph extraction and simulation ([`graph`]), and an
//! adaptive design loop with dense-grid a posteriori validation and gain
//! rescaling ([`design`]).
//!
//! # Example
//!
//! Design a low-pass filter of order 8 with 4-bit coefficients and write out
//! the adder graph:
//!
//! ```
//! use mfir::spec::{Band, FilterSpec, FilterType, GainMode};
//! use mfir::design::{design, DesignOptions, Method};
//!
//! let spec = FilterSpec::new(
//!     vec![
//!         Band { from_pi: 0.0, to_pi: 0.2, lower: 0.9, upper: 1.1 },
//!         Band { from_pi: 0.6, to_pi: 1.0, lower: -0.1, upper: 0.1 },
//!     ],
//!     8,
//!     FilterType::I,
//!     4,
//!     GainMode::default_variable(),
//! ).unwrap();
//! let outcome = design(&spec, Method::Ilp2 { ad_limit: None }, &DesignOptions::default()).unwrap();
//! assert!(outcome.report.max_violation == 0.0);
//! let dot = outcome.solution.graph.to_dot();
//! assert!(dot.starts_with("digraph"));
//! ```

pub mod error;
pub mod grid;
pub mod milp;
pub mod spec;

pub use error::{Error, Result};
