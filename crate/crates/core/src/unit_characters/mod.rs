//! Principal units `U^1_L / U^N_L`, their characters, and character depth.
//!
//! Depth convention: `dep(χ) = 0` if `χ` is trivial on `U^1_L`, otherwise the
//! largest `n >= 1` with `χ` nontrivial on `U^n_L`.

mod characters;
mod digits;
mod group;

pub use characters::{
    char_depth, character_of_depth, characters, depth_census, enumerate_characters, CharacterRecord, LxCharacter,
    UnitCharacter,
};
pub use digits::TruncatedUnit;
pub use group::{unit_group, AbelianGroupStructure, ENUMERATION_CAP};

/// One-line statement of the depth convention, for reports.
pub const DEPTH_CONVENTION: &str = "dep(chi) = largest n >= 1 with chi nontrivial on U^n_L (0 if trivial on U^1_L)";
