//! Chromatic quasisymmetric functions of natural unit interval orders with
//! exact integer arithmetic: Schur and elementary expansions, inverse Kostka
//! numbers via special rim hook tabloids, brute-force oracles, and the
//! injection maps certifying elementary-basis positivity.
//!
//! The polynomial layer is generic over its coefficient scalar (any signed
//! exact integer through `num-traits`); the aliases below pin the default.

pub mod dyck;
pub mod error;
pub mod expansion;
pub mod involution;
pub mod kostka;
pub mod oracle;
pub mod partition;
pub mod poset;
pub mod ptableau;
pub mod qpoly;

/// Default coefficient scalar. Counts stay far below `i64` range at desk
/// scale (the largest intermediate is a tableau count, at most `n!`).
pub type Int = i64;

/// Polynomial in `q` over the default scalar.
pub type QPoly = qpoly::QPoly<Int>;

/// Basis expansion over the default scalar.
pub type SymExpansion = expansion::SymExpansion<Int>;

pub use dyck::{BounceData, Blocks, DyckPath};
pub use error::{Error, Result};
pub use expansion::{
    b_polys, bounce3_cell_from_b, bounce3_closed_form, bounce3_closed_form_from_b,
    bounce3_target, e_coeff_bounce3, e_expansion, e_expansion_from_b, e_positivity_witness,
    is_e_positive, reduced_expansion_thm41, schur_expansion, Basis, EPositivityWitness,
};
pub use involution::{verify_all, verify_injection, InjectionReport, MapName};
pub use kostka::{
    enumerate_all_srht, enumerate_srht, inverse_kostka, inverse_kostka_column, ssyt_count,
    validate_tabloid, verify_kostka_inverse, SpecialRimHookTabloid,
};
pub use oracle::{
    acyclic_orientation_poly, acyclic_orientation_polys, cross_validate,
    monomial_expansion_bruteforce, CrossReport,
};
pub use partition::Partition;
pub use poset::{IncompGraph, UnitIntervalPoset};
pub use ptableau::{b_poly, b_poly_3l2j, enumerate_ptableaux, for_each_ptableau, PTableau};
