//! Arithmetic in `L = K[α]/(α^p - α - a)`, its valuation, the Galois action
//! `α ↦ α + j`, and the lower ramification break computed from that action.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base_fields::{as_reduce, FieldSpec, FqElem, LaurentSeries, Reduction, Valuation};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct ExtensionData {
    spec: FieldSpec,
    original: LaurentSeries,
    reduction: Reduction,
}

/// The degree-`p` Artin-Schreier extension generated by a root `α` of
/// `T^p - T - a_red`, where `a_red` is the reduced representative of the
/// input class.
///
/// Cloning is cheap; clones compare equal and share storage.
#[derive(Clone, PartialEq, Eq)]
pub struct ASExtension(Arc<ExtensionData>);

impl ASExtension {
    /// Reduces `a` with [`as_reduce`] and builds the extension on the
    /// reduced representative.
    pub fn new(a: &LaurentSeries) -> Result<Self> {
        let reduction = as_reduce(a)?;
        Ok(ASExtension(Arc::new(ExtensionData { spec: a.spec(), original: a.clone(), reduction })))
    }

    /// The extension defined by `a = t^{-m}`.
    pub fn from_pole_order(spec: FieldSpec, m: u32) -> Result<Self> {
        Self::new(&LaurentSeries::t_pow(spec, -(m as i64)))
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p()
    }

    /// The representative the extension was built from, before reduction.
    pub fn original(&self) -> &LaurentSeries {
        &self.0.original
    }

    pub fn reduction(&self) -> &Reduction {
        &self.0.reduction
    }

    /// `a_red`, with `α^p = α + a_red`.
    pub fn a_red(&self) -> &LaurentSeries {
        &self.0.reduction.reduced
    }

    /// The pole order `m = -v_K(a_red)`.
    pub fn m(&self) -> u32 {
        self.0.reduction.m
    }

    /// Ramification index; always `p`.
    pub fn e(&self) -> u32 {
        self.p()
    }

    /// Residue degree; always 1.
    pub fn f_residue(&self) -> u32 {
        1
    }

    fn same(&self, other: &ASExtension) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for ASExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ASExtension({:?}, a_red = {}, m = {})", self.spec(), self.a_red(), self.m())
    }
}

/// An element `Σ_{i<p} c_i α^i` of `L`.
#[derive(Clone, PartialEq, Eq)]
pub struct LElement {
    ext: ASExtension,
    coeffs: Vec<LaurentSeries>,
}

/// Operation selector for [`l_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LOp {
    Add,
    Mul,
}

/// Checked dispatcher for ring operations in `L`.
pub fn l_arith(op: LOp, x: &LElement, y: &LElement) -> Result<LElement> {
    if !x.ext.same(&y.ext) {
        return Err(Error::ExtensionMismatch);
    }
    Ok(match op {
        LOp::Add => x + y,
        LOp::Mul => x * y,
    })
}

/// The leading monomial `coeff · t^exp · α^index` of a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeadingTerm {
    pub index: usize,
    pub exp: i64,
    pub coeff: FqElem,
}

impl LElement {
    pub fn zero(ext: &ASExtension) -> Self {
        let z = LaurentSeries::zero(ext.spec());
        LElement { ext: ext.clone(), coeffs: vec![z; ext.p() as usize] }
    }

    pub fn one(ext: &ASExtension) -> Self {
        Self::from_base(ext, LaurentSeries::one(ext.spec()))
    }

    /// The embedding `K → L`.
    pub fn from_base(ext: &ASExtension, c: LaurentSeries) -> Self {
        let mut x = Self::zero(ext);
        x.coeffs[0] = c;
        x
    }

    pub fn alpha(ext: &ASExtension) -> Self {
        let mut x = Self::zero(ext);
        x.coeffs[1] = LaurentSeries::one(ext.spec());
        x
    }

    /// `c · α^i` for `i < p`.
    pub fn basis_multiple(ext: &ASExtension, i: usize, c: LaurentSeries) -> Self {
        assert!(i < ext.p() as usize, "basis index out of range");
        let mut x = Self::zero(ext);
        x.coeffs[i] = c;
        x
    }

    /// Builds `Σ c_i α^i`; requires exactly `p` coefficients over the
    /// extension's field.
    pub fn from_coeffs(ext: &ASExtension, coeffs: Vec<LaurentSeries>) -> Result<Self> {
        if coeffs.len() != ext.p() as usize {
            return Err(Error::InvalidArgument(format!("expected {} coefficients, got {}", ext.p(), coeffs.len())));
        }
        if coeffs.iter().any(|c| c.spec() != ext.spec()) {
            return Err(Error::FieldMismatch);
        }
        Ok(LElement { ext: ext.clone(), coeffs })
    }

    pub fn ext(&self) -> &ASExtension {
        &self.ext
    }

    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentSeries::is_zero)
    }

    pub fn scale(&self, c: FqElem) -> Self {
        LElement { ext: self.ext.clone(), coeffs: self.coeffs.iter().map(|s| s.scale(c)).collect() }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = LElement::one(&self.ext);
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

    /// `v_L(x) = min_i (p · v_K(c_i) - m · i)`. The minimum is attained at a
    /// unique index because the candidates are distinct modulo `p`.
    pub fn valuation(&self) -> Valuation {
        self.leading_term().map_or(Valuation::Infinite, |lt| Valuation::Finite(self.term_valuation(lt.index, lt.exp)))
    }

    fn term_valuation(&self, index: usize, exp: i64) -> i64 {
        self.ext.p() as i64 * exp - self.ext.m() as i64 * index as i64
    }

    /// The monomial of `x` realizing `v_L(x)`, or `None` for zero.
    pub fn leading_term(&self) -> Option<LeadingTerm> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c.valuation() {
                Valuation::Finite(v) => Some((self.term_valuation(i, v), i, v, c.leading_coefficient()?)),
                Valuation::Infinite => None,
            })
            .min_by_key(|t| t.0)
            .map(|(_, index, exp, coeff)| LeadingTerm { index, exp, coeff })
    }

    /// The automorphism `σ_j: α ↦ α + j`, identity on `K`.
    pub fn galois_apply(&self, j: u32) -> Self {
        let p = self.ext.p() as usize;
        let spec = self.ext.spec();
        let j = FqElem::from_int(spec, j as i64);
        // (α + j)^i = Σ_l C(i, l) j^{i-l} α^l, with binomials mod p.
        let mut binom = vec![vec![FqElem::zero(spec); p]; p];
        for i in 0..p {
            binom[i][0] = FqElem::one(spec);
            for l in 1..=i {
                binom[i][l] = binom[i - 1][l - 1] + if l < i { binom[i - 1][l] } else { FqElem::zero(spec) };
            }
        }
        let mut out = vec![LaurentSeries::zero(spec); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for l in 0..=i {
                let factor = binom[i][l] * j.pow((i - l) as u64);
                if !factor.is_zero() {
                    out[l] = &out[l] + &c.scale(factor);
                }
            }
        }
        LElement { ext: self.ext.clone(), coeffs: out }
    }

    fn mul_impl(&self, rhs: &LElement) -> LElement {
        assert!(self.ext.same(&rhs.ext), "mismatched extensions");
        let p = self.ext.p() as usize;
        let spec = self.ext.spec();
        let mut prod = vec![LaurentSeries::zero(spec); 2 * p - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + &(a * b);
            }
        }
        // α^k = α^{k-p+1} + a · α^{k-p} for k >= p.
        let a_red = self.ext.a_red();
        for k in (p..2 * p - 1).rev() {
            let c = std::mem::replace(&mut prod[k], LaurentSeries::zero(spec));
            if c.is_zero() {
                continue;
            }
            prod[k - p + 1] = &prod[k - p + 1] + &c;
            prod[k - p] = &prod[k - p] + &(&c * a_red);
        }
        prod.truncate(p);
        LElement { ext: self.ext.clone(), coeffs: prod }
    }

    /// Drops every term `c·t^e·α^i` with `p·e − m·i >= n`. The components
    /// have distinct valuations mod p, so this is reduction modulo `𝔭_L^n`.
    pub(crate) fn reduce_mod_prime_power(&self, n: i64) -> LElement {
        let (p, m) = (self.ext.p() as i64, self.ext.m() as i64);
        let spec = self.ext.spec();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| LaurentSeries::from_terms(spec, c.terms().filter(|(e, _)| p * e - m * (i as i64) < n)))
            .collect();
        LElement { ext: self.ext.clone(), coeffs }
    }

    fn zip_with(&self, rhs: &LElement, f: impl Fn(&LaurentSeries, &LaurentSeries) -> LaurentSeries) -> LElement {
        assert!(self.ext.same(&rhs.ext), "mismatched extensions");
        LElement { ext: self.ext.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect() }
    }
}

impl std::ops::Add for &LElement {
    type Output = LElement;

    fn add(self, rhs: &LElement) -> LElement {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &LElement {
    type Output = LElement;

    fn sub(self, rhs: &LElement) -> LElement {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl std::ops::Mul for &LElement {
    type Output = LElement;

    fn mul(self, rhs: &LElement) -> LElement {
        self.mul_impl(rhs)
    }
}

impl std::ops::Neg for &LElement {
    type Output = LElement;

    fn neg(self) -> LElement {
        LElement { ext: self.ext.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for LElement {
    /// `(c0) + (c1)*A + ... + (c{p-1})*A^{p-1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, " + ({c})*A")?,
                _ => write!(f, " + ({c})*A^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The exponents `(w, u)` with `p·w - m·u = 1` and `1 <= u <= p - 1`.
pub fn uniformizer_exponents(p: u32, m: u32) -> (i64, u32) {
    let (p64, m64) = (p as i64, m as i64);
    // u ≡ -m^{-1} (mod p)
    let u = (1..p).find(|&u| (m64 * u as i64 + 1).rem_euclid(p64) == 0).expect("gcd(m, p) = 1");
    let w = (1 + m64 * u as i64) / p64;
    (w, u)
}

/// `π_L = t^w · α^u`, an element of valuation 1.
pub fn uniformizer(ext: &ASExtension) -> LElement {
    let (w, u) = uniformizer_exponents(ext.p(), ext.m());
    LElement::basis_multiple(ext, u as usize, LaurentSeries::t_pow(ext.spec(), w))
}

/// One step of a lower-numbering ramification filtration: the group order on
/// the interval ending at `upper` (`None` for `+∞`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationStep {
    pub upper: Option<i64>,
    pub order: u64,
}

/// Step function `u ↦ |G_u|` of a lower ramification filtration.
///
/// Step `i` covers the integers `i` with `upper_{i-1} < i <= upper_i`; for
/// real `u`, `|G_u| = |G_{⌈u⌉}|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationData {
    steps: Vec<RamificationStep>,
}

impl RamificationData {
    pub fn new(steps: Vec<RamificationStep>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidRamificationData(msg.to_string()));
        let Some(last) = steps.last() else {
            return bad("no steps");
        };
        if last.upper.is_some() || last.order != 1 {
            return bad("last step must be (+inf, 1)");
        }
        for w in steps.windows(2) {
            let (a, b) = (w[0], w[1]);
            let Some(ua) = a.upper else {
                return bad("only the last step may extend to +inf");
            };
            if b.upper.is_some_and(|ub| ub <= ua) {
                return bad("breaks must be strictly increasing");
            }
            if b.order >= a.order || a.order % b.order != 0 {
                return bad("orders must strictly decrease, each dividing the previous");
            }
        }
        if steps[0].upper.is_some_and(|u| u < -1) {
            return bad("breaks must be >= -1");
        }
        Ok(RamificationData { steps })
    }

    /// `|G_u| = p` for `u <= m`, trivial beyond.
    pub fn wild_single_break(m: i64, p: u64) -> Result<Self> {
        Self::new(vec![RamificationStep { upper: Some(m), order: p }, RamificationStep { upper: None, order: 1 }])
    }

    /// Tamely ramified of index `e`: `G_0` cyclic of order `e`, `G_1` trivial.
    pub fn tame(e: u64) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidRamificationData("ramification index must be >= 1".into()));
        }
        if e == 1 {
            return Self::new(vec![RamificationStep { upper: None, order: 1 }]);
        }
        Self::new(vec![RamificationStep { upper: Some(0), order: e }, RamificationStep { upper: None, order: 1 }])
    }

    pub fn steps(&self) -> &[RamificationStep] {
        &self.steps
    }

    /// `|G_i|` for an integer index `i >= -1`.
    pub fn order_at_index(&self, i: i64) -> u64 {
        self.steps.iter().find(|s| s.upper.map_or(true, |b| i <= b)).map_or(1, |s| s.order)
    }

    /// The finite break points, i.e. the `upper` ends of all but the last step.
    pub fn breaks(&self) -> Vec<i64> {
        self.steps.iter().filter_map(|s| s.upper).collect()
    }
}

/// `i(σ_j) = v_L(σ_j(π_L) - π_L)` for one nontrivial automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftValuation {
    pub j: u32,
    pub valuation: Valuation,
}

/// `i(σ_j)` for `j = 1, ..., p - 1`.
pub fn galois_shift_valuations(ext: &ASExtension) -> Vec<ShiftValuation> {
    let pi = uniformizer(ext);
    (1..ext.p()).map(|j| ShiftValuation { j, valuation: (&pi.galois_apply(j) - &pi).valuation() }).collect()
}

/// Computes the ramification filtration from the Galois action and checks
/// that every nontrivial `σ_j` has `i(σ_j) = m + 1`.
pub fn ramification_breaks(ext: &ASExtension) -> Result<RamificationData> {
    let expected = ext.m() as i64 + 1;
    for sv in galois_shift_valuations(ext) {
        if sv.valuation != Valuation::Finite(expected) {
            return Err(Error::BreakMismatch { j: sv.j, found: sv.valuation.to_string(), expected });
        }
    }
    RamificationData::wild_single_break(ext.m() as i64, ext.p() as u64)
}
