//! Core algorithms for A-D-E grand unified model building.
//!
//! Everything in this crate is a pure function over immutable values:
//!
//! - [`liealg`] — exact representation theory for the simply-laced simple
//!   Lie algebras: Weyl dimensions, weight systems, Dynkin indices, regular
//!   subalgebra branching, commutant breaking, and minimal-enhancement
//!   search over the Borel–de Siebenthal subsystem poset. All root and
//!   weight arithmetic is integer or rational; no floating point.
//! - [`model`] — local brane geometry as a typed graph (branes, matter
//!   curves, interaction points) with index-theorem generation counting
//!   and coupling-allowedness checks.
//! - [`flavor`] — Yukawa textures (rank-one overlap, Froggatt-Nielsen),
//!   mass spectra, CKM extraction, and the standard-parameterization
//!   phase reduction.
//! - [`rg`] — one-loop gauge-coupling running with exact rational beta
//!   coefficients and closed-form unification-scale extraction.
//! - [`scan`] — deterministic seeded Monte Carlo ensembles over order-one
//!   texture coefficients, summary statistics, and derivative-free fitting
//!   of the hierarchy parameter.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI
//! live in the companion `gutkit` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod flavor;
pub mod liealg;
pub mod model;
pub mod rg;
pub mod scan;
