//! Characters of `U^1_L / U^N_L` with values in `Q/Z`, and their depth.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::{unit_group, AbelianGroupStructure};
use crate::as_extension::ASExtension;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A character `χ` of `U^1_L / U^N_L`, given by its values `r_i ∈ Q/Z` on the
/// basis; `r_i = numerators[i] / d_i`.
#[derive(Debug, Clone)]
pub struct UnitCharacter {
    structure: Arc<AbelianGroupStructure>,
    numerators: Vec<u64>,
}

impl PartialEq for UnitCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.structure, &other.structure) && self.numerators == other.numerators
    }
}

impl UnitCharacter {
    /// `χ(basis[i]) = numerators[i] / d_i`; numerators are reduced mod `d_i`.
    pub fn new(structure: Arc<AbelianGroupStructure>, numerators: Vec<u64>) -> Result<Self> {
        let factors = structure.invariant_factors();
        if numerators.len() != factors.len() {
            return Err(Error::InvalidArgument(format!("expected {} phases, got {}", factors.len(), numerators.len())));
        }
        let numerators = numerators.iter().zip(factors).map(|(a, d)| a % d).collect();
        Ok(UnitCharacter { structure, numerators })
    }

    pub fn trivial(structure: Arc<AbelianGroupStructure>) -> Self {
        let n = structure.invariant_factors().len();
        UnitCharacter { structure, numerators: vec![0; n] }
    }

    pub fn structure(&self) -> &Arc<AbelianGroupStructure> {
        &self.structure
    }

    /// Values on the basis, in `[0, 1)`.
    pub fn phases(&self) -> Vec<Rational> {
        self.numerators
            .iter()
            .zip(self.structure.invariant_factors())
            .map(|(&a, &d)| Rational::new(a as i64, d as i64).expect("d > 0"))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.numerators.iter().all(|&a| a == 0)
    }

    /// `χ(x)` as a numerator over the group exponent `D`: Σ a_i (D / d_i) e_i mod D.
    fn value_numerator(&self, index: usize) -> u64 {
        let factors = self.structure.invariant_factors();
        let exponent = factors.last().copied().unwrap_or(1);
        self.numerators
            .iter()
            .zip(factors)
            .zip(self.structure.exponents(index))
            .fold(0u64, |acc, ((&a, &d), &e)| (acc + a * (exponent / d) % exponent * e) % exponent)
    }

    /// `χ(x) ∈ [0, 1)` for the element with the given index.
    pub fn value(&self, index: usize) -> Rational {
        let exponent = self.structure.invariant_factors().last().copied().unwrap_or(1);
        Rational::new(self.value_numerator(index) as i64, exponent as i64).expect("exponent > 0")
    }

    /// The largest `n >= 1` such that `χ` is nontrivial on the image of
    /// `U^n_L`, or 0 when `χ` is trivial.
    pub fn depth(&self) -> u32 {
        // χ is nontrivial on U^n iff some x with v_L(x - 1) >= n has χ(x) ≠ 0.
        // Indices are lexicographic with c_1 most significant, so ascending
        // index order visits elements by non-increasing filtration level.
        (1..self.structure.order() as usize)
            .find(|&i| self.value_numerator(i) != 0)
            .map_or(0, |i| self.structure.filtration_level(i))
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            invariant_factors: self.structure.invariant_factors().to_vec(),
            phases: self.phases(),
            depth: self.depth(),
        }
    }
}

/// JSON form of a unit character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub invariant_factors: Vec<u64>,
    pub phases: Vec<Rational>,
    pub depth: u32,
}

/// A character of `L^× ≅ π_L^Z × μ_{q-1} × U^1_L`, split along a fixed choice
/// of `π_L`. Only `unit_part` affects positive depth.
#[derive(Debug, Clone, PartialEq)]
pub struct LxCharacter {
    pub unit_part: UnitCharacter,
    pub tame_part: Rational,
    pub uniformizer_part: Rational,
}

impl LxCharacter {
    /// Phases are reduced into `[0, 1)`; the tame phase must have denominator
    /// dividing `q - 1`.
    pub fn new(unit_part: UnitCharacter, tame_part: Rational, uniformizer_part: Rational) -> Result<Self> {
        let q = unit_part.structure().ext().spec().q() as i64;
        let tame_part = tame_part.fract_mod_one();
        if (q - 1) % tame_part.denom() != 0 {
            return Err(Error::InvalidArgument(format!(
                "tame phase {tame_part} must have denominator dividing q - 1 = {}",
                q - 1
            )));
        }
        Ok(LxCharacter { unit_part, tame_part, uniformizer_part: uniformizer_part.fract_mod_one() })
    }

    pub fn depth(&self) -> u32 {
        self.unit_part.depth()
    }
}

/// All characters in lexicographic order of their basis phases, last basis
/// element varying fastest.
pub fn characters(g: &Arc<AbelianGroupStructure>) -> impl Iterator<Item = UnitCharacter> + '_ {
    let factors = g.invariant_factors().to_vec();
    let total: u64 = factors.iter().product();
    (0..total).map(move |mut code| {
        let mut numerators = vec![0; factors.len()];
        for (slot, &d) in numerators.iter_mut().zip(&factors).rev() {
            *slot = code % d;
            code /= d;
        }
        UnitCharacter { structure: Arc::clone(g), numerators }
    })
}

pub fn enumerate_characters(g: &Arc<AbelianGroupStructure>) -> Vec<UnitCharacter> {
    characters(g).collect()
}

pub fn char_depth(chi: &UnitCharacter) -> u32 {
    chi.depth()
}

/// Number of characters of each exact depth.
pub fn depth_census(g: &Arc<AbelianGroupStructure>) -> BTreeMap<u32, u64> {
    let mut census = BTreeMap::new();
    for chi in characters(g) {
        *census.entry(chi.depth()).or_insert(0) += 1;
    }
    census
}

/// A character of `L^×` whose unit part has depth exactly `d`, found by
/// searching the dual of `U^1_L / U^N_L`. Tame and uniformizer parts are 0.
pub fn character_of_depth(ext: &ASExtension, d: u32, level: u32) -> Result<LxCharacter> {
    if d == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    if level <= d {
        return Err(Error::InvalidArgument(format!("truncation level N = {level} must exceed d = {d}")));
    }
    let g = Arc::new(unit_group(ext, level)?);
    let unit_part = characters(&g).find(|chi| chi.depth() == d).ok_or_else(|| Error::VerificationFailure {
        context: format!("character_of_depth(d = {d}, N = {level})"),
        reason: "no character of this depth in the enumerated dual".into(),
    })?;
    LxCharacter::new(unit_part, Rational::ZERO, Rational::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::FieldSpec;

    fn group(p: u32, m: u32, n: u32) -> Arc<AbelianGroupStructure> {
        let e = ASExtension::from_pole_order(FieldSpec::prime(p).unwrap(), m).unwrap();
        Arc::new(unit_group(&e, n).unwrap())
    }

    #[test]
    fn dual_of_order_two() {
        let g = group(2, 1, 2);
        let chars = enumerate_characters(&g);
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[0].phases(), vec![Rational::ZERO]);
        assert_eq!(chars[1].phases(), vec![Rational::new(1, 2).unwrap()]);
        assert_eq!(char_depth(&chars[0]), 0);
        assert_eq!(char_depth(&chars[1]), 1);
    }

    #[test]
    fn dual_of_cyclic_four() {
        let g = group(2, 3, 3);
        assert_eq!(g.invariant_factors(), &[4]);
        let phases: Vec<String> = enumerate_characters(&g).iter().map(|c| c.phases()[0].to_string()).collect();
        assert_eq!(phases, ["0", "1/4", "1/2", "3/4"]);
    }

    #[test]
    fn census_q2_n4() {
        let g = group(2, 1, 4);
        assert_eq!(enumerate_characters(&g).len(), 8);
        let census = depth_census(&g);
        assert_eq!(census, BTreeMap::from([(0, 1), (1, 1), (2, 2), (3, 4)]));
    }

    #[test]
    fn character_values_are_homomorphic() {
        let g = group(3, 2, 3);
        for chi in characters(&g) {
            for a in 0..g.order() as usize {
                for b in 0..g.order() as usize {
                    let lhs = chi.value(g.product_index(a, b));
                    let rhs = chi.value(a).checked_add(chi.value(b)).unwrap().fract_mod_one();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn character_of_depth_examples() {
        let e = ASExtension::from_pole_order(FieldSpec::prime(2).unwrap(), 1).unwrap();
        let chi = character_of_depth(&e, 1, 2).unwrap();
        assert_eq!(chi.unit_part.phases(), vec![Rational::new(1, 2).unwrap()]);
        assert_eq!(chi.depth(), 1);
        assert_eq!(character_of_depth(&e, 2, 4).unwrap().depth(), 2);
        assert_eq!(character_of_depth(&e, 3, 4).unwrap().depth(), 3);
        assert!(character_of_depth(&e, 0, 4).is_err());
        assert!(character_of_depth(&e, 4, 4).is_err());
    }

    #[test]
    fn record_json() {
        let g = group(2, 1, 3);
        let chi = UnitCharacter::new(Arc::clone(&g), vec![3]).unwrap();
        let json = serde_json::to_string(&chi.record()).unwrap();
        assert_eq!(json, r#"{"invariant_factors":[4],"phases":["3/4"],"depth":2}"#);
    }

    #[test]
    fn lx_character_validation() {
        let e = ASExtension::from_pole_order(FieldSpec::new(2, &[1, 1, 1]).unwrap(), 1).unwrap();
        let g = Arc::new(unit_group(&e, 2).unwrap());
        let chi = UnitCharacter::trivial(Arc::clone(&g));
        assert!(LxCharacter::new(chi.clone(), Rational::new(1, 3).unwrap(), Rational::new(5, 7).unwrap()).is_ok());
        assert!(LxCharacter::new(chi.clone(), Rational::new(1, 2).unwrap(), Rational::ZERO).is_err());
        let lx = LxCharacter::new(chi, Rational::new(4, 3).unwrap(), Rational::new(-1, 7).unwrap()).unwrap();
        assert_eq!(lx.tame_part, Rational::new(1, 3).unwrap());
        assert_eq!(lx.uniformizer_part, Rational::new(6, 7).unwrap());
        assert_eq!(lx.depth(), 0);
    }
}
