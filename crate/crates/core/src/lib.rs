//! Exact arithmetic for wildly ramified Artin-Schreier extensions `L/K` of
//! local function fields `K = F_q((t))`, and a verifier comparing the depth
//! of characters of the induced torus `T(K) = L^×` with the depth of their
//! Langlands parameters, `φ_{L/K}(e · dep_T(χ))`.
//!
//! Pipeline: [`base_fields`] (parse and reduce `a`) → [`as_extension`]
//! (build `L = K(α)`, compute the ramification break from the Galois action)
//! → [`herbrand`] (build `φ_{L/K}`) → [`unit_characters`] (realize characters
//! of each depth) → [`depth_llc`] (compare depths).

pub mod as_extension;
pub mod base_fields;
pub mod depth_llc;
pub mod error;
pub mod herbrand;
pub mod rational;
pub mod unit_characters;

pub use as_extension::{
    galois_shift_valuations, l_arith, ramification_breaks, uniformizer, ASExtension, LElement, LOp, RamificationData,
    RamificationStep,
};
pub use base_fields::{
    as_reduce, fq_arith, parse_series, series_arith, wp, FieldSpec, FqElem, FqOp, LaurentSeries, Reduction, SeriesOp,
    Valuation,
};
pub use depth_llc::{
    closed_form_depth, corollary_family, parameter_depth, tame_control, verify_theorem, CorollaryRow, DepthCase,
    DepthReport, TheoremRun,
};
pub use error::{Error, Result};
pub use herbrand::{phi_from_ramification, pl_eval, pl_inverse, PLFunction};
pub use rational::Rational;
pub use unit_characters::{
    char_depth, character_of_depth, enumerate_characters, unit_group, AbelianGroupStructure, LxCharacter,
    TruncatedUnit, UnitCharacter,
};
