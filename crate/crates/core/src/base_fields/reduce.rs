//! Artin-Schreier reduction of a representative `a ∈ K` modulo `℘(K)`.

use super::fq::FieldSpec;
use super::series::{LaurentSeries, Valuation};
use crate::error::{Error, Result};

/// Outcome of [`as_reduce`]: `original - reduced = ℘(witness)` and
/// `v(reduced) = -m` with `m > 0`, `gcd(m, p) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: LaurentSeries,
    pub m: u32,
    pub witness: LaurentSeries,
}

/// Removes leading pole terms of order divisible by `p` by subtracting
/// `℘(c^{1/p} t^{-n/p})`.
///
/// Only the leading behaviour is normalized; lower-order terms with
/// `p`-divisible exponents may remain. Fails with
/// [`Error::ReducesToIntegral`] when the class has a representative in the
/// ring of integers.
pub fn as_reduce(a: &LaurentSeries) -> Result<Reduction> {
    if !a.is_exact() {
        return Err(Error::InexactSeries);
    }
    let spec: FieldSpec = a.spec();
    let p = spec.p() as i64;
    let mut reduced = a.clone();
    let mut witness = LaurentSeries::zero(spec);
    loop {
        let n = match reduced.valuation() {
            Valuation::Finite(v) if v < 0 => -v,
            _ => return Err(Error::ReducesToIntegral),
        };
        if n % p != 0 {
            let m = u32::try_from(n).map_err(|_| Error::InvalidArgument("pole order too large".into()))?;
            return Ok(Reduction { reduced, m, witness });
        }
        let c = reduced.leading_coefficient().expect("nonzero series");
        let step = LaurentSeries::monomial(c.pth_root(), -n / p);
        reduced = &reduced - &step.wp();
        witness = &witness + &step;
    }
}
