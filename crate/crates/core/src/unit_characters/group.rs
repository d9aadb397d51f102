//! Exhaustive structure of `U^1_L / U^N_L` as a finite abelian `p`-group.

use std::collections::HashMap;

use rayon::prelude::*;

use super::digits::{DigitCodec, TruncatedUnit};
use crate::as_extension::ASExtension;
use crate::base_fields::{FieldSpec, FqElem};
use crate::error::{Error, Result};

/// Largest group order `q^{N-1}` that [`unit_group`] will enumerate.
pub const ENUMERATION_CAP: u64 = 1 << 14;

/// `U^1_L / U^N_L` with a basis adapted to its invariant factors.
///
/// Elements are addressed by their lexicographic digit index (see
/// [`TruncatedUnit::index`]); index 0 is the identity.
#[derive(Debug, Clone)]
pub struct AbelianGroupStructure {
    ext: ASExtension,
    level: u32,
    order: u64,
    basis: Vec<TruncatedUnit>,
    invariant_factors: Vec<u64>,
    exponent_table: Vec<Vec<u64>>,
    levels: Vec<u32>,
    by_exponents: HashMap<Vec<u64>, usize>,
}

impl AbelianGroupStructure {
    pub fn ext(&self) -> &ASExtension {
        &self.ext
    }

    /// The truncation level `N`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Generators, with `basis[i]` of exact order `invariant_factors[i]`.
    pub fn basis(&self) -> &[TruncatedUnit] {
        &self.basis
    }

    /// `d_1 | d_2 | ...`, ascending.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Exponents of element `index` over the basis.
    pub fn exponents(&self, index: usize) -> &[u64] {
        &self.exponent_table[index]
    }

    pub fn exponents_of(&self, unit: &TruncatedUnit) -> Result<&[u64]> {
        if unit.ext() != &self.ext || unit.level() != self.level {
            return Err(Error::InvalidArgument("unit does not belong to this group".into()));
        }
        Ok(self.exponents(unit.index() as usize))
    }

    /// `v_L(x - 1)` of element `index` (`N` for the identity).
    pub fn filtration_level(&self, index: usize) -> u32 {
        self.levels[index]
    }

    pub fn element(&self, index: usize) -> TruncatedUnit {
        let spec = self.ext.spec();
        let digits = digits_of(index as u64, self.level as usize - 1, spec.q(), spec);
        TruncatedUnit::from_digits(&self.ext, self.level, digits).expect("well-formed digits")
    }

    /// Index of the element with the given basis exponents (reduced modulo the
    /// invariant factors).
    pub fn index_of_exponents(&self, exps: &[u64]) -> Option<usize> {
        if exps.len() != self.invariant_factors.len() {
            return None;
        }
        let key: Vec<u64> = exps.iter().zip(&self.invariant_factors).map(|(e, d)| e % d).collect();
        self.by_exponents.get(&key).copied()
    }

    /// Product computed from the exponent table alone.
    pub fn product_index(&self, a: usize, b: usize) -> usize {
        let sum: Vec<u64> = self.exponents(a).iter().zip(self.exponents(b)).map(|(x, y)| x + y).collect();
        self.index_of_exponents(&sum).expect("table covers the group")
    }

    /// `|{x : v_L(x - 1) >= n}|`, i.e. the order of the image of `U^n_L`.
    pub fn filtration_subgroup_order(&self, n: u32) -> u64 {
        self.levels.iter().filter(|&&l| l >= n).count() as u64
    }
}

fn digits_of(index: u64, n: usize, q: u64, spec: FieldSpec) -> Vec<FqElem> {
    let mut digits = vec![FqElem::zero(spec); n];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = FqElem::from_index(spec, rest % q);
        rest /= q;
    }
    digits
}

fn index_of(digits: &[FqElem], q: u64) -> usize {
    digits.iter().fold(0u64, |acc, c| acc * q + c.index()) as usize
}

/// Enumerates `U^1_L / U^N_L` and decomposes it.
///
/// All group products go through exact arithmetic in `L` followed by
/// re-digitization. The basis is found greedily: repeatedly take an element
/// of maximal order modulo the subgroup generated so far, correct it by an
/// element of that subgroup so its order equals its order in the quotient,
/// and extend the subgroup by its powers.
pub fn unit_group(ext: &ASExtension, level: u32) -> Result<AbelianGroupStructure> {
    if level < 2 {
        return Err(Error::InvalidArgument("truncation level N must be >= 2".into()));
    }
    let spec = ext.spec();
    let q = spec.q();
    let size = (q as u128).checked_pow(level - 1).unwrap_or(u128::MAX);
    if size > ENUMERATION_CAP as u128 {
        return Err(Error::CapExceeded { size, cap: ENUMERATION_CAP });
    }
    let order = size as u64;
    let n_digits = level as usize - 1;
    let p = spec.p() as u64;
    let codec = DigitCodec::new(ext, level)?;
    let digits = |i: usize| digits_of(i as u64, n_digits, q, spec);

    // p-th power map in index space.
    let frob: Vec<usize> =
        (0..order as usize).into_par_iter().map(|i| index_of(&codec.pow(&digits(i), p), q)).collect();

    // Element orders from the p-th power map: ord(x) = p · ord(x^p).
    let mut orders = vec![0u64; order as usize];
    orders[0] = 1;
    for start in 0..order as usize {
        let mut chain = Vec::new();
        let mut cur = start;
        while orders[cur] == 0 {
            chain.push(cur);
            cur = frob[cur];
        }
        let mut o = orders[cur];
        for &x in chain.iter().rev() {
            o *= p;
            orders[x] = o;
        }
    }

    let mut exps: Vec<Option<Vec<u64>>> = vec![None; order as usize];
    exps[0] = Some(Vec::new());
    let mut members: Vec<usize> = vec![0];
    let mut by_exponents: HashMap<Vec<u64>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut factors: Vec<u64> = Vec::new();

    while (members.len() as u64) < order {
        // Element of maximal order modulo the current subgroup H.
        let (x, k) = (0..order as usize)
            .map(|x| {
                let (mut y, mut k) = (x, 0u32);
                while exps[y].is_none() {
                    y = frob[y];
                    k += 1;
                }
                (x, k)
            })
            .max_by_key(|&(x, k)| (k, std::cmp::Reverse(x)))
            .expect("nonempty group");
        let pk = p.pow(k);
        let mut y = x;
        for _ in 0..k {
            y = frob[y];
        }
        let s = exps[y].as_ref().expect("in subgroup");
        let mut correction = Vec::with_capacity(s.len());
        for (si, di) in s.iter().zip(&factors) {
            if si % pk != 0 {
                return Err(Error::VerificationFailure {
                    context: "unit group decomposition".into(),
                    reason: format!("exponent {si} of x^{pk} not divisible by {pk}"),
                });
            }
            correction.push((di - (si / pk) % di) % di);
        }
        let z = by_exponents[&correction];
        let g = index_of(&codec.mul(&digits(x), &digits(z)), q);
        if orders[g] != pk {
            return Err(Error::VerificationFailure {
                context: "unit group decomposition".into(),
                reason: format!("corrected generator has order {} instead of {pk}", orders[g]),
            });
        }

        // H ← H × <g>.
        let g_elem = codec.assemble(&digits(g));
        let chains: Vec<Vec<usize>> = members
            .par_iter()
            .map(|&h| {
                let mut cur = digits(h);
                (1..pk)
                    .map(|_| {
                        cur = codec.mul_elem(&cur, &g_elem);
                        index_of(&cur, q)
                    })
                    .collect()
            })
            .collect();
        for e in exps.iter_mut().flatten() {
            e.push(0);
        }
        by_exponents = by_exponents
            .into_iter()
            .map(|(mut key, v)| {
                key.push(0);
                (key, v)
            })
            .collect();
        let mut added = Vec::new();
        for (&h, chain) in members.iter().zip(&chains) {
            let base = exps[h].clone().expect("member");
            for (j, &elem) in chain.iter().enumerate() {
                if exps[elem].is_some() {
                    return Err(Error::VerificationFailure {
                        context: "unit group decomposition".into(),
                        reason: "subgroup extension produced a repeated element".into(),
                    });
                }
                let mut e = base.clone();
                *e.last_mut().unwrap() = j as u64 + 1;
                by_exponents.insert(e.clone(), elem);
                exps[elem] = Some(e);
                added.push(elem);
            }
        }
        members.extend(added);
        basis_idx.push(g);
        factors.push(pk);
    }

    // Ascending invariant factors.
    basis_idx.reverse();
    factors.reverse();
    let exponent_table: Vec<Vec<u64>> = exps
        .into_iter()
        .map(|e| {
            let mut e = e.expect("table covers the group");
            e.reverse();
            e
        })
        .collect();
    let by_exponents = exponent_table.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let basis = basis_idx.iter().map(|&i| TruncatedUnit::from_digits(ext, level, digits(i))).collect::<Result<_>>()?;
    let levels = (0..order as usize)
        .map(|i| digits(i).iter().position(|c| !c.is_zero()).map_or(level, |n| n as u32 + 1))
        .collect();

    Ok(AbelianGroupStructure {
        ext: ext.clone(),
        level,
        order,
        basis,
        invariant_factors: factors,
        exponent_table,
        levels,
        by_exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(p: u32, m: u32) -> ASExtension {
        ASExtension::from_pole_order(FieldSpec::prime(p).unwrap(), m).unwrap()
    }

    #[test]
    fn small_two_groups() {
        let e = ext(2, 1);
        let g = unit_group(&e, 2).unwrap();
        assert_eq!((g.order(), g.invariant_factors()), (2, &[2u64][..]));
        // (1 + π)^2 = 1 + π^2 ≠ 1 mod U^3: cyclic of order 4.
        let g = unit_group(&e, 3).unwrap();
        assert_eq!((g.order(), g.invariant_factors()), (4, &[4u64][..]));
        let g = unit_group(&e, 4).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.invariant_factors(), &[2, 4]);
    }

    #[test]
    fn basis_orders_match_invariant_factors() {
        let e = ext(3, 2);
        let g = unit_group(&e, 4).unwrap();
        assert_eq!(g.invariant_factors().iter().product::<u64>(), g.order());
        for (b, &d) in g.basis().iter().zip(g.invariant_factors()) {
            let mut acc = TruncatedUnit::identity(&e, 4);
            for i in 1..=d {
                acc = acc.mul(b).unwrap();
                assert_eq!(acc.is_identity(), i == d);
            }
        }
        for w in g.invariant_factors().windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn exponent_table_is_consistent_with_multiplication() {
        let e = ext(2, 3);
        let g = unit_group(&e, 5).unwrap();
        for a in 0..g.order() as usize {
            let ua = g.element(a);
            assert_eq!(g.exponents_of(&ua).unwrap(), g.exponents(a));
            for b in (0..g.order() as usize).step_by(3) {
                let ub = g.element(b);
                assert_eq!(ua.mul(&ub).unwrap().index() as usize, g.product_index(a, b));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let e = ext(2, 1);
        assert!(matches!(unit_group(&e, 16), Err(Error::CapExceeded { .. })));
        assert!(unit_group(&e, 1).is_err());
    }

    #[test]
    fn filtration_subgroups() {
        let e = ext(3, 1);
        let g = unit_group(&e, 4).unwrap();
        for n in 1..=4 {
            assert_eq!(g.filtration_subgroup_order(n), 3u64.pow(4 - n));
        }
    }
}
