//! Depth of the Langlands parameter attached to a character of `T(K) = L^×`,
//! evaluated as `φ_{L/K}(e · dep_T(χ))`, together with the case analysis
//! showing it strictly exceeds `dep_T(χ)` for the wild family and equals it
//! for tame data.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::as_extension::{ramification_breaks, ASExtension, RamificationData};
use crate::base_fields::FieldSpec;
use crate::error::{Error, Result};
use crate::herbrand::{phi_from_ramification, PLFunction};
use crate::rational::Rational;
use crate::unit_characters::{character_of_depth, CharacterRecord, ENUMERATION_CAP};

/// Which closed form applies: `I` when `p·d > m`, `II` when `p·d <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DepthCase {
    I,
    II,
}

impl fmt::Display for DepthCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DepthCase::I => "I",
            DepthCase::II => "II",
        })
    }
}

/// One row of the depth comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub p: u32,
    pub q: u64,
    pub m: u32,
    pub e: u32,
    pub d: u32,
    pub parameter_depth: Rational,
    pub case: DepthCase,
    pub preserved: bool,
    pub delta: Rational,
}

impl DepthReport {
    /// Fills in `case`, `delta` and `preserved` from the raw values.
    pub fn new(p: u32, q: u64, m: u32, e: u32, d: u32, parameter_depth: Rational) -> Result<Self> {
        let case = if p as u64 * d as u64 > m as u64 { DepthCase::I } else { DepthCase::II };
        let delta = parameter_depth.checked_sub(Rational::integer(d as i64))?;
        Ok(DepthReport { p, q, m, e, d, parameter_depth, case, preserved: delta.is_zero(), delta })
    }
}

/// `φ_{L/K}(e · d)` with `φ` built from the ramification breaks computed from
/// the Galois action.
pub fn parameter_depth(ext: &ASExtension, d: u32) -> Result<Rational> {
    if d == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    let phi = phi_from_ramification(&ramification_breaks(ext)?)?;
    phi.eval(Rational::integer(ext.e() as i64 * d as i64))
}

/// `d + m(1 - 1/p)` when `p·d > m`, and `p·d` otherwise.
pub fn closed_form_depth(p: u32, m: u32, d: u32) -> Result<Rational> {
    let (p, m, d) = (p as i64, m as i64, d as i64);
    if p * d > m {
        let tail = Rational::integer(m).checked_mul(Rational::new(p - 1, p)?)?;
        Rational::integer(d).checked_add(tail)
    } else {
        Ok(Rational::integer(p * d))
    }
}

/// A brute-force witness that depth `d` is realized by an actual character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterCertificate {
    pub d: u32,
    /// Truncation level `N = d + 2` used for the enumeration.
    pub level: u32,
    pub character: CharacterRecord,
}

/// Output of [`verify_theorem`]: one report per depth, plus character
/// certificates for the depths whose unit group fits the enumeration cap.
#[derive(Debug, Clone)]
pub struct TheoremRun {
    pub ext: ASExtension,
    pub phi: PLFunction,
    pub reports: Vec<DepthReport>,
    pub certificates: Vec<CharacterCertificate>,
}

/// Largest depth `d` whose certification group `U^1/U^{d+2}` (of order
/// `q^{d+1}`) stays within [`ENUMERATION_CAP`].
pub fn max_certifiable_depth(spec: FieldSpec) -> u32 {
    let q = spec.q() as u128;
    (1u32..).take_while(|&d| q.pow(d + 1) <= ENUMERATION_CAP as u128).last().unwrap_or(0)
}

fn failure(ext: &ASExtension, d: u32, reason: String) -> Error {
    Error::VerificationFailure { context: format!("p = {}, m = {}, d = {d}", ext.p(), ext.m()), reason }
}

/// For `d = 1..=d_max`: evaluates the parameter depth through the Herbrand
/// integral and through the closed-form case split, requires both to agree
/// and to exceed `d`, and certifies each depth within the cap by an
/// explicitly constructed character.
pub fn verify_theorem(ext: &ASExtension, d_max: u32) -> Result<TheoremRun> {
    if d_max == 0 {
        return Err(Error::InvalidArgument("d_max must be >= 1".into()));
    }
    let rd = ramification_breaks(ext)?;
    let phi = phi_from_ramification(&rd)?;
    let (p, m, e) = (ext.p(), ext.m(), ext.e());
    let q = ext.spec().q();

    let mut reports = Vec::with_capacity(d_max as usize);
    for d in 1..=d_max {
        let via_integral = phi.eval(Rational::integer(e as i64 * d as i64))?;
        let via_cases = closed_form_depth(p, m, d)?;
        if via_integral != via_cases {
            return Err(failure(ext, d, format!("integral gives {via_integral}, closed form gives {via_cases}")));
        }
        if via_integral <= Rational::integer(d as i64) {
            return Err(failure(ext, d, format!("parameter depth {via_integral} does not exceed {d}")));
        }
        reports.push(DepthReport::new(p, q, m, e, d, via_integral)?);
    }

    let certify_to = d_max.min(max_certifiable_depth(ext.spec()));
    let certificates = (1..=certify_to)
        .into_par_iter()
        .map(|d| {
            let level = d + 2;
            let chi = character_of_depth(ext, d, level)?;
            let measured = chi.depth();
            if measured != d {
                return Err(failure(ext, d, format!("constructed character has depth {measured}")));
            }
            Ok(CharacterCertificate { d, level, character: chi.unit_part.record() })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TheoremRun { ext: ext.clone(), phi, reports, certificates })
}

/// One member of the characteristic-2 family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryRow {
    pub m: u32,
    /// The computed ramification break.
    pub ramification_break: i64,
    pub report: DepthReport,
}

/// Runs the full pipeline for `a = t^{-m}` over `F_2`, `m = 1, 3, ..., 2·count - 1`,
/// returning the `d = 1` rows. Requires the breaks to be pairwise distinct.
pub fn corollary_family(count: u32) -> Result<Vec<CorollaryRow>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    let spec = FieldSpec::prime(2)?;
    let rows = (0..count)
        .into_par_iter()
        .map(|i| {
            let m = 2 * i + 1;
            let ext = ASExtension::from_pole_order(spec, m)?;
            let breaks = ramification_breaks(&ext)?.breaks();
            let [ramification_break] = breaks[..] else {
                return Err(failure(&ext, 1, format!("expected a single break, found {breaks:?}")));
            };
            let run = verify_theorem(&ext, 3)?;
            if run.reports.iter().any(|r| r.preserved) {
                return Err(failure(&ext, 1, "depth preserved for a positive-depth row".into()));
            }
            Ok(CorollaryRow { m, ramification_break, report: run.reports[0].clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    let distinct: BTreeSet<i64> = rows.iter().map(|r| r.ramification_break).collect();
    if distinct.len() != rows.len() {
        return Err(Error::VerificationFailure {
            context: "corollary family".into(),
            reason: "ramification breaks are not pairwise distinct".into(),
        });
    }
    Ok(rows)
}

/// Control run on tame break data `[(0, e)]`: requires `φ(e·d) = d` for
/// `d = 1..=d_max`. `p` is recorded in the reports only; `gcd(e, p) = 1` is
/// the caller's responsibility.
pub fn tame_control(p: u32, e: u32, d_max: u32) -> Result<Vec<DepthReport>> {
    if e == 0 {
        return Err(Error::InvalidArgument("ramification index must be >= 1".into()));
    }
    let phi = phi_from_ramification(&RamificationData::tame(e as u64)?)?;
    (1..=d_max)
        .map(|d| {
            let depth = phi.eval(Rational::integer(e as i64 * d as i64))?;
            if depth != Rational::integer(d as i64) {
                return Err(Error::VerificationFailure {
                    context: format!("tame e = {e}, d = {d}"),
                    reason: format!("parameter depth {depth} differs from {d}"),
                });
            }
            DepthReport::new(p, p as u64, 0, e, d, depth)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(p: u32, m: u32) -> ASExtension {
        ASExtension::from_pole_order(FieldSpec::prime(p).unwrap(), m).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn parameter_depth_examples() {
        assert_eq!(parameter_depth(&ext(2, 1), 1).unwrap(), r(3, 2));
        assert_eq!(parameter_depth(&ext(2, 3), 1).unwrap(), 2);
        assert_eq!(parameter_depth(&ext(3, 2), 1).unwrap(), r(7, 3));
        assert!(parameter_depth(&ext(3, 2), 0).is_err());
    }

    #[test]
    fn verify_m3() {
        let run = verify_theorem(&ext(2, 3), 4).unwrap();
        let rows: Vec<(u32, Rational)> = run.reports.iter().map(|r| (r.d, r.parameter_depth)).collect();
        assert_eq!(rows, vec![(1, r(2, 1)), (2, r(7, 2)), (3, r(9, 2)), (4, r(11, 2))]);
        assert!(run.reports.iter().all(|r| !r.preserved));
        assert_eq!(run.reports[0].case, DepthCase::II);
        assert!(run.reports[1..].iter().all(|r| r.case == DepthCase::I));
        assert_eq!(run.certificates.len(), 4);
        assert!(run.certificates.iter().all(|c| c.character.depth == c.d && c.level == c.d + 2));
    }

    #[test]
    fn verify_m1() {
        let run = verify_theorem(&ext(2, 1), 2).unwrap();
        let rows: Vec<Rational> = run.reports.iter().map(|r| r.parameter_depth).collect();
        assert_eq!(rows, vec![r(3, 2), r(5, 2)]);
        assert!(run.reports.iter().all(|r| r.case == DepthCase::I));
    }

    #[test]
    fn depth_zero_is_trivially_preserved() {
        let phi = phi_from_ramification(&ramification_breaks(&ext(3, 4)).unwrap()).unwrap();
        let at_zero = phi.eval(Rational::ZERO).unwrap();
        let row = DepthReport::new(3, 3, 4, 3, 0, at_zero).unwrap();
        assert!(row.preserved);
    }

    #[test]
    fn corollary_examples() {
        let rows = corollary_family(4).unwrap();
        let got: Vec<(u32, Rational)> = rows.iter().map(|r| (r.m, r.report.parameter_depth)).collect();
        assert_eq!(got, vec![(1, r(3, 2)), (3, r(2, 1)), (5, r(2, 1)), (7, r(2, 1))]);
        assert!(rows.iter().all(|r| !r.report.preserved && r.ramification_break == r.m as i64));
        let single = corollary_family(1).unwrap();
        assert_eq!(single.len(), 1);
        assert!(!single[0].report.preserved);
        assert!(corollary_family(0).is_err());
    }

    #[test]
    fn tame_examples() {
        for d in 1..5 {
            assert_eq!(tame_control(5, 1, 4).unwrap()[d - 1].parameter_depth, d as i64);
        }
        assert_eq!(tame_control(5, 3, 2).unwrap()[1].parameter_depth, 2);
        let rows = tame_control(7, 6, 5).unwrap();
        assert_eq!(rows[4].parameter_depth, 5);
        assert!(rows.iter().all(|r| r.preserved && r.delta.is_zero()));
        assert!(tame_control(5, 0, 3).is_err());
    }

    #[test]
    fn closed_form_boundary_identity() {
        // Treating m as p·d, both closed forms coincide: d + pd(1 - 1/p) = pd.
        for p in [2i64, 3, 5, 7] {
            for d in 1..6i64 {
                let m = Rational::integer(p * d);
                let case_one = Rational::integer(d).checked_add(m.checked_mul(r(p - 1, p)).unwrap()).unwrap();
                assert_eq!(case_one, Rational::integer(p * d));
            }
        }
    }

    #[test]
    fn certification_cap() {
        assert_eq!(max_certifiable_depth(FieldSpec::prime(2).unwrap()), 13);
        assert_eq!(max_certifiable_depth(FieldSpec::prime(3).unwrap()), 7);
        assert_eq!(max_certifiable_depth(FieldSpec::prime(5).unwrap()), 5);
        assert_eq!(max_certifiable_depth(FieldSpec::new(5, &[2, 0, 1]).unwrap()), 2);
    }

    #[test]
    fn report_json_schema() {
        let report = DepthReport::new(2, 2, 3, 2, 2, r(7, 2)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"p":2,"q":2,"m":3,"e":2,"d":2,"parameter_depth":"7/2","case":"I","preserved":false,"delta":"3/2"}"#
        );
        let back: DepthReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
