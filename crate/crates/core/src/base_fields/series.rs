//! Laurent series over `F_q`, i.e. elements of `K = F_q((t))`.

use std::fmt;

use super::fq::{FieldSpec, FqElem};
use crate::error::{Error, Result};

/// A discrete valuation value: an integer or `+∞`.
///
/// `Finite(_) < Infinite`, and finite values compare as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// `Σ_{i} coeffs[i] t^{val + i}`, known modulo `t^prec` (`prec = None` for
/// exact, finitely supported series).
///
/// Stored normalized: the first and last stored coefficients are nonzero,
/// and no stored exponent reaches `prec`. The zero series has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    spec: FieldSpec,
    val: i64,
    coeffs: Vec<FqElem>,
    prec: Option<i64>,
}

/// Operation selector for [`series_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Neg,
}

/// Checked dispatcher over the ring operations of `K`.
pub fn series_arith(op: SeriesOp, a: &LaurentSeries, b: Option<&LaurentSeries>) -> Result<LaurentSeries> {
    match op {
        SeriesOp::Neg => Ok(-a),
        SeriesOp::Add | SeriesOp::Mul => {
            let b = b.ok_or_else(|| Error::InvalidArgument("binary operation needs two operands".into()))?;
            if a.spec != b.spec {
                return Err(Error::FieldMismatch);
            }
            Ok(if op == SeriesOp::Add { a + b } else { a * b })
        }
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentSeries {
    pub fn zero(spec: FieldSpec) -> Self {
        LaurentSeries { spec, val: 0, coeffs: Vec::new(), prec: None }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::constant(FqElem::one(spec))
    }

    pub fn constant(c: FqElem) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · t^exp`.
    pub fn monomial(c: FqElem, exp: i64) -> Self {
        Self::from_parts(c.spec(), exp, vec![c], None)
    }

    /// `t^exp`.
    pub fn t_pow(spec: FieldSpec, exp: i64) -> Self {
        Self::monomial(FqElem::one(spec), exp)
    }

    /// Exact series from `(exponent, coefficient)` terms; repeated exponents
    /// are summed.
    pub fn from_terms(spec: FieldSpec, terms: impl IntoIterator<Item = (i64, FqElem)>) -> Self {
        let terms: Vec<(i64, FqElem)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(spec);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![FqElem::zero(spec); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = *slot + c;
        }
        Self::from_parts(spec, lo, coeffs, None)
    }

    /// Builds and normalizes a series from raw parts.
    pub(crate) fn from_parts(spec: FieldSpec, val: i64, coeffs: Vec<FqElem>, prec: Option<i64>) -> Self {
        let mut s = LaurentSeries { spec, val, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(prec) = self.prec {
            let keep = (prec - self.val).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.val = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// `v_K`: the smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.val)
        }
    }

    /// `N` such that the series is known modulo `t^N`; `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// Coefficient of `t^exp` (zero outside the stored range).
    pub fn coeff(&self, exp: i64) -> FqElem {
        let i = exp - self.val;
        if i < 0 || i >= self.coeffs.len() as i64 {
            FqElem::zero(self.spec)
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn leading_coefficient(&self) -> Option<FqElem> {
        self.coeffs.first().copied()
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.val + i as i64, *c))
    }

    /// The same series known only modulo `t^n`.
    pub fn truncate(&self, n: i64) -> Self {
        let prec = min_prec(self.prec, Some(n));
        Self::from_parts(self.spec, self.val, self.coeffs.clone(), prec)
    }

    /// Multiplication by a scalar of `F_q`.
    pub fn scale(&self, c: FqElem) -> Self {
        let coeffs = self.coeffs.iter().map(|&x| x * c).collect();
        Self::from_parts(self.spec, self.val, coeffs, self.prec)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.val += k;
        s.prec = s.prec.map(|n| n + k);
        if s.is_zero() {
            s.val = 0;
        }
        s
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentSeries::one(self.spec);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `x ↦ x^p`, computed coefficientwise as `Σ c_i^p t^{p i}`.
    pub fn frobenius(&self) -> Self {
        let p = self.spec.p() as i64;
        let terms = self.terms().map(|(e, c)| (p * e, c.frobenius()));
        let mut s = Self::from_terms(self.spec, terms);
        s.prec = self.prec.map(|n| n * p);
        s.normalize();
        s
    }

    /// The Artin-Schreier map `℘(x) = x^p - x`.
    pub fn wp(&self) -> Self {
        &self.frobenius() - self
    }

    fn add_impl(&self, rhs: &LaurentSeries, negate_rhs: bool) -> LaurentSeries {
        assert!(self.spec == rhs.spec, "mismatched field specs");
        let prec = min_prec(self.prec, rhs.prec);
        if rhs.is_zero() {
            return Self::from_parts(self.spec, self.val, self.coeffs.clone(), prec);
        }
        if self.is_zero() {
            let s = if negate_rhs { -rhs } else { rhs.clone() };
            return Self::from_parts(self.spec, s.val, s.coeffs, prec);
        }
        let lo = self.val.min(rhs.val);
        let hi = (self.val + self.coeffs.len() as i64).max(rhs.val + rhs.coeffs.len() as i64);
        let mut coeffs = vec![FqElem::zero(self.spec); (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.val - lo) as usize + i] = c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.val - lo) as usize + i];
            *slot = if negate_rhs { *slot - c } else { *slot + c };
        }
        Self::from_parts(self.spec, lo, coeffs, prec)
    }

    fn mul_impl(&self, rhs: &LaurentSeries) -> LaurentSeries {
        assert!(self.spec == rhs.spec, "mismatched field specs");
        // A known-zero factor with finite precision N behaves like O(t^N).
        let lower = |s: &LaurentSeries| if s.is_zero() { s.prec } else { Some(s.val) };
        let prec = match (lower(self), lower(rhs)) {
            (Some(va), Some(vb)) => {
                let from_a = self.prec.map(|pa| pa + vb);
                let from_b = rhs.prec.map(|pb| pb + va);
                min_prec(from_a, from_b)
            }
            // An exact zero factor makes the product exactly zero.
            _ => None,
        };
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries { spec: self.spec, val: 0, coeffs: Vec::new(), prec };
        }
        let mut coeffs = vec![FqElem::zero(self.spec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        Self::from_parts(self.spec, self.val + rhs.val, coeffs, prec)
    }
}

impl std::ops::Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, false)
    }
}

impl std::ops::Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, true)
    }
}

impl std::ops::Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_impl(rhs)
    }
}

impl std::ops::Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            spec: self.spec,
            val: self.val,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl fmt::Display for LaurentSeries {
    /// Terms in increasing exponent order, in the grammar accepted by
    /// [`parse_series`](super::parse_series). Inexact series get a trailing
    /// `O(t^N)` marker, which the parser does not accept.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let coef = if c.coeffs()[1..].iter().any(|&v| v != 0) { format!("({cs})") } else { cs };
            match (e, c.is_one()) {
                (0, _) => f.write_str(&coef)?,
                (_, true) => write!(f, "t^{e}")?,
                _ => write!(f, "{coef}*t^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if let Some(n) = self.prec {
            write!(f, " + O(t^{n})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
