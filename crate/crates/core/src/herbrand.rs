//! Exact piecewise-linear Hasse-Herbrand functions.

use serde::{Deserialize, Serialize};

use crate::as_extension::RamificationData;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A continuous, strictly increasing piecewise-linear function on `[0, ∞)`
/// with `f(0) = 0`.
///
/// `slopes[i]` applies on `[breakpoints[i], breakpoints[i + 1])`; the last
/// slope extends to infinity. Adjacent pieces always have different slopes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPlFunction")]
pub struct PLFunction {
    breakpoints: Vec<Rational>,
    slopes: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawPlFunction {
    breakpoints: Vec<Rational>,
    slopes: Vec<Rational>,
}

impl TryFrom<RawPlFunction> for PLFunction {
    type Error = Error;

    fn try_from(raw: RawPlFunction) -> Result<Self> {
        PLFunction::new(raw.breakpoints, raw.slopes)
    }
}

impl PLFunction {
    pub fn new(breakpoints: Vec<Rational>, slopes: Vec<Rational>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidPlFunction(msg.to_string()));
        if breakpoints.is_empty() || breakpoints.len() != slopes.len() {
            return bad("need one slope per breakpoint and at least one piece");
        }
        if !breakpoints[0].is_zero() {
            return bad("first breakpoint must be 0");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must be strictly increasing");
        }
        if slopes.iter().any(|s| !s.is_positive()) {
            return bad("slopes must be positive");
        }
        let mut f = PLFunction { breakpoints: Vec::new(), slopes: Vec::new() };
        for (b, s) in breakpoints.into_iter().zip(slopes) {
            if f.slopes.last() != Some(&s) {
                f.breakpoints.push(b);
                f.slopes.push(s);
            }
        }
        Ok(f)
    }

    /// The identity function.
    pub fn identity() -> Self {
        PLFunction { breakpoints: vec![Rational::ZERO], slopes: vec![Rational::ONE] }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    /// Slopes never increase.
    pub fn is_concave(&self) -> bool {
        self.slopes.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn eval(&self, u: Rational) -> Result<Rational> {
        if u.is_negative() {
            return Err(Error::NegativeArgument(u.to_string()));
        }
        let mut value = Rational::ZERO;
        for (i, (&start, &slope)) in self.breakpoints.iter().zip(&self.slopes).enumerate() {
            match self.breakpoints.get(i + 1) {
                Some(&end) if u > end => {
                    value = value.checked_add(slope.checked_mul(end.checked_sub(start)?)?)?;
                }
                _ => return value.checked_add(slope.checked_mul(u.checked_sub(start)?)?),
            }
        }
        unreachable!("the last piece is unbounded")
    }

    /// The compositional inverse: breakpoints map to their images, slopes to
    /// their reciprocals.
    pub fn inverse(&self) -> Result<PLFunction> {
        let breakpoints = self.breakpoints.iter().map(|&b| self.eval(b)).collect::<Result<Vec<_>>>()?;
        let slopes = self.slopes.iter().map(|s| s.recip()).collect::<Result<Vec<_>>>()?;
        PLFunction::new(breakpoints, slopes)
    }
}

/// `φ(u) = ∫_0^u dt / (G_0 : G_t)` with `G_t = G_{⌈t⌉}`.
///
/// Under the ceiling convention the order `|G_b|` still applies on
/// `(b - 1, b]`, so a break at integer `b` changes the slope only for
/// `u > b`.
pub fn phi_from_ramification(rd: &RamificationData) -> Result<PLFunction> {
    let g0 = rd.order_at_index(0) as i64;
    let mut breakpoints = Vec::new();
    let mut slopes = Vec::new();
    let mut cursor = Rational::ZERO;
    for step in rd.steps() {
        if step.upper.is_some_and(|b| b <= 0) {
            continue;
        }
        breakpoints.push(cursor);
        slopes.push(Rational::new(step.order as i64, g0)?);
        if let Some(b) = step.upper {
            cursor = Rational::integer(b);
        }
    }
    PLFunction::new(breakpoints, slopes)
}

/// Evaluates `f` at `u >= 0`.
pub fn pl_eval(f: &PLFunction, u: Rational) -> Result<Rational> {
    f.eval(u)
}

/// `ψ = φ^{-1}`.
pub fn pl_inverse(f: &PLFunction) -> Result<PLFunction> {
    f.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn wild(m: i64, p: u64) -> PLFunction {
        phi_from_ramification(&RamificationData::wild_single_break(m, p).unwrap()).unwrap()
    }

    #[test]
    fn wild_family_shape() {
        let phi = wild(3, 2);
        assert_eq!(phi.breakpoints(), &[r(0, 1), r(3, 1)]);
        assert_eq!(phi.slopes(), &[r(1, 1), r(1, 2)]);
        assert_eq!(phi.eval(r(5, 1)).unwrap(), 4);
        assert_eq!(phi.eval(r(3, 1)).unwrap(), 3);
        assert!(phi.is_concave());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(wild(1, 2).eval(r(2, 1)).unwrap(), r(3, 2));
        assert_eq!(wild(1, 2).eval(Rational::ZERO).unwrap(), 0);
        assert_eq!(wild(2, 3).eval(r(3, 1)).unwrap(), r(7, 3));
        assert!(matches!(wild(1, 2).eval(r(-1, 2)), Err(Error::NegativeArgument(_))));
    }

    #[test]
    fn tame_data() {
        for e in [1u64, 2, 3, 4, 6] {
            let phi = phi_from_ramification(&RamificationData::tame(e).unwrap()).unwrap();
            assert_eq!(phi.slopes(), &[r(1, e as i64)]);
            for d in 0..10 {
                assert_eq!(phi.eval(Rational::integer(e as i64 * d)).unwrap(), d);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let psi = wild(3, 2).inverse().unwrap();
        assert_eq!(psi.eval(r(4, 1)).unwrap(), 5);
        assert_eq!(psi.eval(r(3, 1)).unwrap(), 3);
        let tame4 = phi_from_ramification(&RamificationData::tame(4).unwrap()).unwrap().inverse().unwrap();
        for d in 0..5 {
            assert_eq!(tame4.eval(Rational::integer(d)).unwrap(), 4 * d);
        }
    }

    #[test]
    fn validation_and_merging() {
        assert!(PLFunction::new(vec![], vec![]).is_err());
        assert!(PLFunction::new(vec![r(1, 1)], vec![r(1, 1)]).is_err());
        assert!(PLFunction::new(vec![r(0, 1), r(0, 1)], vec![r(1, 1), r(1, 2)]).is_err());
        assert!(PLFunction::new(vec![r(0, 1)], vec![r(0, 1)]).is_err());
        let merged = PLFunction::new(vec![r(0, 1), r(2, 1)], vec![r(1, 1), r(1, 1)]).unwrap();
        assert_eq!(merged, PLFunction::identity());
    }

    #[test]
    fn multi_step_filtration() {
        use crate::as_extension::RamificationStep;
        // |G_0| = |G_1| = 4, |G_2| = |G_3| = 2, trivial beyond.
        let rd = RamificationData::new(vec![
            RamificationStep { upper: Some(1), order: 4 },
            RamificationStep { upper: Some(3), order: 2 },
            RamificationStep { upper: None, order: 1 },
        ])
        .unwrap();
        let phi = phi_from_ramification(&rd).unwrap();
        assert_eq!(phi.slopes(), &[r(1, 1), r(1, 2), r(1, 4)]);
        assert_eq!(phi.eval(r(5, 1)).unwrap(), r(5, 2)); // 1 + 2/2 + 2/4
    }

    #[test]
    fn json_schema() {
        let phi = wild(3, 2);
        let json = serde_json::to_string(&phi).unwrap();
        assert_eq!(json, r#"{"breakpoints":["0","3"],"slopes":["1","1/2"]}"#);
        let back: PLFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, phi);
        assert!(serde_json::from_str::<PLFunction>(r#"{"breakpoints":["1"],"slopes":["1"]}"#).is_err());
    }
}
