//! Canonical digit expansions `1 + Σ_{n<N} c_n π_L^n` of principal units
//! modulo `U^N_L`.

use std::fmt;

use crate::as_extension::{uniformizer, ASExtension, LElement, LeadingTerm};
use crate::base_fields::{FqElem, Valuation};
use crate::error::{Error, Result};

/// The class of a principal unit modulo `U^N_L`, written
/// `1 + Σ_{n=1}^{N-1} c_n π_L^n` with digits `c_n ∈ F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedUnit {
    ext: ASExtension,
    level: u32,
    digits: Vec<FqElem>,
}

impl TruncatedUnit {
    pub fn identity(ext: &ASExtension, level: u32) -> Self {
        TruncatedUnit { ext: ext.clone(), level, digits: vec![FqElem::zero(ext.spec()); level as usize - 1] }
    }

    /// Builds a unit from its digits `(c_1, ..., c_{N-1})`.
    pub fn from_digits(ext: &ASExtension, level: u32, digits: Vec<FqElem>) -> Result<Self> {
        if level < 2 || digits.len() != level as usize - 1 {
            return Err(Error::InvalidArgument(format!(
                "a unit modulo U^{level} needs {} digits",
                level.saturating_sub(1)
            )));
        }
        if digits.iter().any(|c| c.spec() != ext.spec()) {
            return Err(Error::FieldMismatch);
        }
        Ok(TruncatedUnit { ext: ext.clone(), level, digits })
    }

    /// Digitizes a principal unit `x ∈ U^1_L` modulo `U^level_L`.
    pub fn from_element(x: &LElement, level: u32) -> Result<Self> {
        let codec = DigitCodec::new(x.ext(), level)?;
        let digits = codec.digitize(x)?;
        Ok(TruncatedUnit { ext: x.ext().clone(), level, digits })
    }

    pub fn ext(&self) -> &ASExtension {
        &self.ext
    }

    /// The truncation level `N`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn digits(&self) -> &[FqElem] {
        &self.digits
    }

    pub fn is_identity(&self) -> bool {
        self.digits.iter().all(FqElem::is_zero)
    }

    /// `v_L(x - 1)`, capped at `N` for the identity class.
    pub fn filtration_level(&self) -> u32 {
        self.digits.iter().position(|c| !c.is_zero()).map_or(self.level, |i| i as u32 + 1)
    }

    /// Lexicographic position among all `q^{N-1}` digit tuples, `c_1` most
    /// significant.
    pub fn index(&self) -> u64 {
        let q = self.ext.spec().q();
        self.digits.iter().fold(0, |acc, c| acc * q + c.index())
    }

    /// The exact element `1 + Σ c_n π_L^n`.
    pub fn to_element(&self) -> LElement {
        DigitCodec::new(&self.ext, self.level).expect("level validated at construction").assemble(&self.digits)
    }

    /// Product in `U^1/U^N`, through exact multiplication in `L`.
    pub fn mul(&self, other: &TruncatedUnit) -> Result<TruncatedUnit> {
        if self.level != other.level {
            return Err(Error::InvalidArgument("truncation levels differ".into()));
        }
        if self.ext != other.ext {
            return Err(Error::ExtensionMismatch);
        }
        let codec = DigitCodec::new(&self.ext, self.level)?;
        let digits = codec.mul(&self.digits, &other.digits);
        Ok(TruncatedUnit { ext: self.ext.clone(), level: self.level, digits })
    }
}

impl fmt::Debug for TruncatedUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (n, c) in self.digits.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " + ({c})*pi^{}", n + 1)?;
            }
        }
        write!(f, " mod U^{}", self.level)
    }
}

/// Converts between digit tuples and exact elements of `L` for a fixed
/// extension and level; precomputes `π_L^n` for `n < N`.
pub(crate) struct DigitCodec {
    ext: ASExtension,
    level: u32,
    pi_powers: Vec<LElement>,
    pi_leads: Vec<LeadingTerm>,
    pi_lead_inv: Vec<FqElem>,
}

impl DigitCodec {
    pub(crate) fn new(ext: &ASExtension, level: u32) -> Result<Self> {
        if level < 2 {
            return Err(Error::InvalidArgument("truncation level must be >= 2".into()));
        }
        let pi = uniformizer(ext);
        let mut pi_powers = vec![LElement::one(ext)];
        for n in 1..level as usize {
            let next = (&pi_powers[n - 1] * &pi).reduce_mod_prime_power(level as i64);
            pi_powers.push(next);
        }
        let pi_leads: Vec<LeadingTerm> = pi_powers.iter().map(|x| x.leading_term().expect("π^n ≠ 0")).collect();
        let pi_lead_inv = pi_leads.iter().map(|lt| lt.coeff.inv().expect("leading coefficient is nonzero")).collect();
        Ok(DigitCodec { ext: ext.clone(), level, pi_powers, pi_leads, pi_lead_inv })
    }

    pub(crate) fn assemble(&self, digits: &[FqElem]) -> LElement {
        let mut x = LElement::one(&self.ext);
        for (n, c) in digits.iter().enumerate() {
            if !c.is_zero() {
                x = &x + &self.pi_powers[n + 1].scale(*c);
            }
        }
        x
    }

    /// Peels digits off `x - 1`: with `n = v_L(y)`, the residue of `y π_L^{-n}`
    /// is the ratio of the leading coefficients of `y` and `π_L^n` (both
    /// leading monomials sit at the same power of `α`), then
    /// `y ← y - c π_L^n`.
    pub(crate) fn digitize(&self, x: &LElement) -> Result<Vec<FqElem>> {
        let spec = self.ext.spec();
        let mut digits = vec![FqElem::zero(spec); self.level as usize - 1];
        let mut y = x - &LElement::one(&self.ext);
        loop {
            let n = match y.valuation() {
                Valuation::Infinite => break,
                Valuation::Finite(n) if n < 1 => return Err(Error::NotPrincipalUnit),
                Valuation::Finite(n) if n >= self.level as i64 => break,
                Valuation::Finite(n) => n as usize,
            };
            let lead = y.leading_term().expect("nonzero");
            debug_assert_eq!(lead.index, self.pi_leads[n].index);
            let c = lead.coeff * self.pi_lead_inv[n];
            digits[n - 1] = c;
            y = &y - &self.pi_powers[n].scale(c);
        }
        Ok(digits)
    }

    /// Product modulo `𝔭_L^N`, which leaves the digits unchanged.
    fn mul_reduced(&self, a: &LElement, b: &LElement) -> LElement {
        (a * b).reduce_mod_prime_power(self.level as i64)
    }

    pub(crate) fn mul(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let prod = self.mul_reduced(&self.assemble(a), &self.assemble(b));
        self.digitize(&prod).expect("products of principal units are principal units")
    }

    pub(crate) fn mul_elem(&self, a: &[FqElem], b: &LElement) -> Vec<FqElem> {
        let prod = self.mul_reduced(&self.assemble(a), b);
        self.digitize(&prod).expect("products of principal units are principal units")
    }

    pub(crate) fn pow(&self, a: &[FqElem], mut exp: u64) -> Vec<FqElem> {
        let mut base = self.assemble(a);
        let mut acc = LElement::one(&self.ext);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_reduced(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_reduced(&base, &base);
            }
        }
        self.digitize(&acc).expect("powers of principal units are principal units")
    }
}
