//! Closed-form solvers for structured specializations: commuting coefficients,
//! `X^2 + BX + XB + C`, and the solution strata of `Z^2 + TZ = 0`.

pub mod binome;
pub mod commuting;
pub mod counterexample;
pub mod symmetric;

pub use binome::{binome_family_emit, binome_stratum_count, BinomeFamilyDescriptor, BinomeMember};
pub use commuting::{commuting_solve, max_commutator_with, random_commuting_family, random_generic_commuting, CommutingFamily};
pub use counterexample::{commuting_counterexample_check, plex2_spec, random_diagonal_pair, CounterexampleReport};
pub use symmetric::{random_symmetric, shifted_square, symmetric_quadratic_solve, symmetric_spec};
