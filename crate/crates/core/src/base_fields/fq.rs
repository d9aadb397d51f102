//! Finite fields `F_q = F_p[x]/(f)` in polynomial-basis representation.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree `k`.
pub const MAX_DEGREE: usize = 4;
/// Largest supported field size `q = p^k`.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Description of `F_q`: the prime `p` and a monic irreducible modulus of
/// degree `k` over `F_p`.
///
/// The modulus is stored low degree first and normalized to be monic. For
/// prime fields the default modulus is the identity polynomial `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    modulus: [u32; MAX_DEGREE + 1],
}

impl FieldSpec {
    /// The prime field `F_p`, with modulus `x`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, &[0, 1])
    }

    /// `F_p[x]/(modulus)` with `modulus` given low degree first.
    ///
    /// The degree of `modulus` is the extension degree `k`. The leading
    /// coefficient is normalized away; irreducibility is checked by searching
    /// for monic factors of degree at most `k/2`.
    pub fn new(p: u32, modulus: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidFieldSpec(format!("{p} is not prime")));
        }
        let mut coeffs: Vec<u32> = modulus.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let k = coeffs.len().saturating_sub(1);
        if k == 0 {
            return Err(Error::InvalidFieldSpec("modulus must have positive degree".into()));
        }
        if k > MAX_DEGREE {
            return Err(Error::InvalidFieldSpec(format!(
                "extension degree {k} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        let q = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidFieldSpec(format!("q = {p}^{k} exceeds 2^16")));
        }
        let lead_inv = inv_mod(coeffs[k], p);
        for c in coeffs.iter_mut() {
            *c = mul_mod(*c, lead_inv, p);
        }
        let mut stored = [0u32; MAX_DEGREE + 1];
        stored[..=k].copy_from_slice(&coeffs);
        let spec = FieldSpec { p, k: k as u32, modulus: stored };
        if !spec.modulus_is_irreducible() {
            return Err(Error::InvalidFieldSpec(format!("modulus {} is reducible over F_{p}", spec.modulus_string())));
        }
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// Monic modulus coefficients, low degree first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus[..=self.k as usize]
    }

    /// The modulus written as a polynomial in `x`, highest degree first.
    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (deg, &c) in self.modulus().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{deg}"),
            };
            parts.push(match (c, deg) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    fn modulus_is_irreducible(&self) -> bool {
        let k = self.k as usize;
        let p = self.p;
        // Every monic divisor candidate of degree d, 1 <= d <= k/2.
        for d in 1..=k / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut divisor = vec![0u32; d + 1];
                let mut c = code;
                for slot in divisor.iter_mut().take(d) {
                    *slot = (c % p as u64) as u32;
                    c /= p as u64;
                }
                divisor[d] = 1;
                if poly_rem_is_zero(self.modulus(), &divisor, p) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}[x]/({})", self.p, self.modulus_string())
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p as u64 - 2, p)
}

fn poly_rem_is_zero(num: &[u32], monic_divisor: &[u32], p: u32) -> bool {
    let mut r: Vec<u32> = num.to_vec();
    let d = monic_divisor.len() - 1;
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in monic_divisor.iter().enumerate() {
                let sub = mul_mod(lead, c, p);
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

/// An element of `F_q`, stored as the coefficient vector of a polynomial in
/// `x` of degree `< k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FqElem {
    spec: FieldSpec,
    coeffs: [u32; MAX_DEGREE],
}

/// Operation selector for [`fq_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Mul,
    Inv,
    PthRoot,
}

/// Checked dispatcher over the field operations.
///
/// Binary operations require `b` and matching specs; `Inv` fails on zero.
pub fn fq_arith(op: FqOp, a: FqElem, b: Option<FqElem>) -> Result<FqElem> {
    match op {
        FqOp::Add | FqOp::Mul => {
            let b = b.ok_or_else(|| Error::InvalidArgument("binary operation needs two operands".into()))?;
            if a.spec != b.spec {
                return Err(Error::FieldMismatch);
            }
            Ok(if op == FqOp::Add { a + b } else { a * b })
        }
        FqOp::Inv => a.inv(),
        FqOp::PthRoot => Ok(a.pth_root()),
    }
}

impl FqElem {
    pub fn zero(spec: FieldSpec) -> Self {
        FqElem { spec, coeffs: [0; MAX_DEGREE] }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::from_int(spec, 1)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(spec: FieldSpec, n: i64) -> Self {
        let mut coeffs = [0; MAX_DEGREE];
        coeffs[0] = n.rem_euclid(spec.p as i64) as u32;
        FqElem { spec, coeffs }
    }

    /// The class of the polynomial `Σ c_i x^i`, reduced modulo `p` and the
    /// modulus. Any length is accepted.
    pub fn from_poly(spec: FieldSpec, poly: &[i64]) -> Self {
        let p = spec.p;
        let k = spec.k as usize;
        let mut r: Vec<u32> = poly.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
        reduce_poly(&mut r, spec.modulus(), p);
        let mut coeffs = [0; MAX_DEGREE];
        for (i, c) in r.into_iter().enumerate().take(k) {
            coeffs[i] = c;
        }
        FqElem { spec, coeffs }
    }

    /// The class of `x` (equal to `-modulus[0]` in a prime field).
    pub fn generator(spec: FieldSpec) -> Self {
        Self::from_poly(spec, &[0, 1])
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Coefficients in the basis `1, x, ..., x^{k-1}`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.spec.k as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Integer code in `[0, q)`: the base-`p` number with digits `coeffs`.
    pub fn index(&self) -> u64 {
        let p = self.spec.p as u64;
        self.coeffs().iter().rev().fold(0, |acc, &c| acc * p + c as u64)
    }

    /// Inverse of [`FqElem::index`]; `idx` is taken modulo `q`.
    pub fn from_index(spec: FieldSpec, idx: u64) -> Self {
        let p = spec.p as u64;
        let mut idx = idx % spec.q();
        let mut coeffs = [0; MAX_DEGREE];
        for c in coeffs.iter_mut().take(spec.k as usize) {
            *c = (idx % p) as u32;
            idx /= p;
        }
        FqElem { spec, coeffs }
    }

    /// All `q` elements in index order.
    pub fn all(spec: FieldSpec) -> impl Iterator<Item = FqElem> {
        (0..spec.q()).map(move |i| FqElem::from_index(spec, i))
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = FqElem::one(self.spec);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.spec.q() - 2))
    }

    /// `a^p`.
    pub fn frobenius(self) -> Self {
        self.pow(self.spec.p as u64)
    }

    /// The unique `b` with `b^p = a`, namely `a^{p^{k-1}}`.
    pub fn pth_root(self) -> Self {
        self.pow((self.spec.p as u64).pow(self.spec.k - 1))
    }

    #[inline]
    fn check_spec(&self, other: &FqElem) {
        assert!(self.spec == other.spec, "mismatched field specs: {:?} vs {:?}", self.spec, other.spec);
    }
}

fn reduce_poly(r: &mut Vec<u32>, modulus: &[u32], p: u32) {
    let k = modulus.len() - 1;
    while r.len() > k {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - k;
        // x^{shift+k} = -(modulus[0..k]) x^shift
        for (i, &c) in modulus[..k].iter().enumerate() {
            let sub = mul_mod(lead, c, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
    }
}

impl std::ops::Add for FqElem {
    type Output = FqElem;

    #[inline]
    fn add(mut self, rhs: FqElem) -> FqElem {
        self.check_spec(&rhs);
        let p = self.spec.p;
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
        self
    }
}

impl std::ops::Sub for FqElem {
    type Output = FqElem;

    #[inline]
    fn sub(self, rhs: FqElem) -> FqElem {
        self + (-rhs)
    }
}

impl std::ops::Neg for FqElem {
    type Output = FqElem;

    #[inline]
    fn neg(mut self) -> FqElem {
        let p = self.spec.p;
        for a in self.coeffs.iter_mut() {
            if *a != 0 {
                *a = p - *a;
            }
        }
        self
    }
}

impl std::ops::Mul for FqElem {
    type Output = FqElem;

    fn mul(self, rhs: FqElem) -> FqElem {
        self.check_spec(&rhs);
        let spec = self.spec;
        let p = spec.p as u64;
        if spec.k == 1 {
            let mut coeffs = [0; MAX_DEGREE];
            coeffs[0] = ((self.coeffs[0] as u64 * rhs.coeffs[0] as u64) % p) as u32;
            return FqElem { spec, coeffs };
        }
        let k = spec.k as usize;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + self.coeffs[i] as u64 * rhs.coeffs[j] as u64) % p;
            }
        }
        let mut r: Vec<u32> = prod[..2 * k - 1].iter().map(|&c| c as u32).collect();
        reduce_poly(&mut r, spec.modulus(), spec.p);
        let mut coeffs = [0; MAX_DEGREE];
        coeffs[..k].copy_from_slice(&r[..k]);
        FqElem { spec, coeffs }
    }
}

impl fmt::Display for FqElem {
    /// Integers for prime-field values; otherwise a polynomial in `x` in
    /// increasing degree, e.g. `1+x+2*x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        if c[1..].iter().all(|&v| v == 0) {
            return write!(f, "{}", c[0]);
        }
        let mut first = true;
        for (deg, &v) in c.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (deg, v) {
                (0, _) => write!(f, "{v}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{v}*x")?,
                (_, 1) => write!(f, "x^{deg}")?,
                _ => write!(f, "{v}*x^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldSpec {
        FieldSpec::new(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn characteristic_two() {
        let f2 = FieldSpec::prime(2).unwrap();
        let one = FqElem::one(f2);
        assert!((one + one).is_zero());
    }

    #[test]
    fn f4_product_of_x_and_x_plus_one() {
        // x(x+1) = x^2 + x = (x + 1) + x = 1 modulo x^2 + x + 1.
        let spec = f4();
        let x = FqElem::generator(spec);
        let x1 = x + FqElem::one(spec);
        assert!((x * x1).is_one());
    }

    #[test]
    fn f4_pth_root_of_x() {
        let spec = f4();
        let x = FqElem::generator(spec);
        let r = x.pth_root();
        assert_eq!(r, FqElem::from_poly(spec, &[1, 1]));
        assert_eq!(r * r, x);
    }

    #[test]
    fn rejects_reducible_and_composite() {
        assert!(FieldSpec::new(2, &[1, 0, 1]).is_err()); // (x+1)^2
        assert!(FieldSpec::new(2, &[1, 0, 1, 0, 1]).is_err()); // (x^2+x+1)^2
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::new(3, &[1]).is_err());
        assert!(FieldSpec::new(2, &[1, 1, 0, 0, 0, 1]).is_err()); // degree 5
        assert!(FieldSpec::new(257, &[3, 0, 1]).is_err()); // q > 2^16
    }

    #[test]
    fn accepts_degree_four_irreducible() {
        let spec = FieldSpec::new(2, &[1, 1, 0, 0, 1]).unwrap();
        assert_eq!(spec.q(), 16);
    }

    #[test]
    fn normalizes_leading_coefficient() {
        let spec = FieldSpec::new(3, &[2, 0, 2]).unwrap(); // 2(x^2 + 1)
        assert_eq!(spec.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn inverse_and_division_by_zero() {
        let spec = FieldSpec::new(3, &[1, 0, 1]).unwrap();
        for a in FqElem::all(spec).skip(1) {
            assert!((a * a.inv().unwrap()).is_one());
        }
        assert_eq!(FqElem::zero(spec).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn dispatcher_reports_mismatch() {
        let a = FqElem::one(FieldSpec::prime(2).unwrap());
        let b = FqElem::one(FieldSpec::prime(3).unwrap());
        assert_eq!(fq_arith(FqOp::Add, a, Some(b)), Err(Error::FieldMismatch));
        assert_eq!(fq_arith(FqOp::Inv, FqElem::zero(a.spec()), None), Err(Error::DivisionByZero));
        assert!(fq_arith(FqOp::Mul, a, Some(a)).unwrap().is_one());
    }

    #[test]
    fn pth_root_inverts_frobenius_exhaustively() {
        let specs = [
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(251).unwrap(),
            f4(),
            FieldSpec::new(2, &[1, 1, 0, 1]).unwrap(),
            FieldSpec::new(2, &[1, 1, 0, 0, 1]).unwrap(),
            FieldSpec::new(3, &[1, 0, 1]).unwrap(),
            FieldSpec::new(5, &[2, 0, 1]).unwrap(),
            FieldSpec::new(3, &[2, 0, 0, 2, 1]).unwrap(),
        ];
        for spec in specs {
            assert!(spec.q() <= 256);
            for a in FqElem::all(spec) {
                assert_eq!(a.pth_root().frobenius(), a, "{spec:?} {a}");
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let spec = FieldSpec::new(5, &[2, 0, 1]).unwrap();
        for i in 0..spec.q() {
            assert_eq!(FqElem::from_index(spec, i).index(), i);
        }
    }

    #[test]
    fn display() {
        let spec = f4();
        assert_eq!(FqElem::from_poly(spec, &[1, 1]).to_string(), "1+x");
        assert_eq!(FqElem::generator(spec).to_string(), "x");
        assert_eq!(FqElem::one(spec).to_string(), "1");
        let f9 = FieldSpec::new(3, &[1, 0, 1]).unwrap();
        assert_eq!(FqElem::from_poly(f9, &[0, 2]).to_string(), "2*x");
    }
}
