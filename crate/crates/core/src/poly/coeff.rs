use alloc::{format, string::String};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};

/// Exact complex rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::real(BigRational::new(n.into(), d.into()))
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(GaussRat { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators/denominators before dividing
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        if self.im.is_zero() {
            return GaussRat { re: &self.re * &o.re, im: &self.re * &o.im };
        }
        if o.im.is_zero() {
            return GaussRat { re: &self.re * &o.re, im: &self.im * &o.re };
        }
        GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

pub(crate) fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Real values print as `a` or `a/b`; others as `(a+bi)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}i)", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Largest `s` with `s^2 | n`, returned as `(s, n / s^2)`.
///
/// Trial division runs up to `10^6`; a leftover cofactor that is a perfect
/// square is absorbed too.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut d: u64 = 2;
    while d <= 1_000_000 {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        for _ in 0..count / 2 {
            outside *= &bd;
        }
        if count % 2 == 1 {
            inside *= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        (outside * s, inside)
    } else {
        (outside, inside * rest)
    }
}

/// A Gaussian rational times the square root of a squarefree positive integer.
///
/// `value·√radicand`; zero is stored with radicand 1. `√(p/q)` is normalized
/// to `(1/q)·√(p·q)` and square factors move into `value`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub value: GaussRat,
    pub radicand: BigInt,
}

impl Coefficient {
    pub fn rational(value: GaussRat) -> Self {
        Coefficient { value, radicand: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::rational(GaussRat::one())
    }

    pub fn zero() -> Self {
        Self::rational(GaussRat::zero())
    }

    /// `value·√r` for a nonnegative rational `r`, normalized.
    pub fn with_sqrt(value: GaussRat, r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            bail!(UnsupportedCoefficient, "square root of negative rational {}", fmt_rat(r));
        }
        if r.is_zero() || value.is_zero() {
            return Ok(Self::zero());
        }
        let num = r.numer() * r.denom();
        let (outside, inside) = square_part(&num);
        let scale = BigRational::new(outside, r.denom().clone());
        let value = &value * &GaussRat::real(scale);
        Ok(Coefficient { value, radicand: inside })
    }

    pub fn sqrt(r: &BigRational) -> Result<Self> {
        Self::with_sqrt(GaussRat::one(), r)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn neg(&self) -> Self {
        Coefficient { value: -&self.value, radicand: self.radicand.clone() }
    }

    /// Sum of two coefficients; unlike radicals cannot be combined.
    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand != other.radicand {
            bail!(UnsupportedCoefficient, "cannot add terms with radicands {} and {}", self.radicand, other.radicand);
        }
        let value = &self.value + &other.value;
        if value.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Coefficient { value, radicand: self.radicand.clone() })
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.radicand.gcd(&other.radicand);
        // √a·√b with a = g·a', b = g·b' squarefree: g·√(a'·b')
        let radicand = (&self.radicand / &g) * (&other.radicand / &g);
        let value = &(&self.value * &other.value) * &GaussRat::real(BigRational::from_integer(g));
        Coefficient { value, radicand }
    }

    pub fn square(&self) -> GaussRat {
        let c = self.mul(self);
        debug_assert!(c.is_rational());
        c.value
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let s = libm::sqrt(self.radicand.to_f64().unwrap_or(f64::INFINITY));
        let (re, im) = self.value.to_f64();
        (re * s, im * s)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.value)
        } else if self.value.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.value, self.radicand)
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = GaussRat::new(q(1, 2), q(3, 1));
        let b = GaussRat::new(q(-2, 1), q(1, 3));
        let p = &a * &b;
        assert_eq!(p, GaussRat::new(q(-1, 1) - q(1, 1), q(1, 6) - q(6, 1)));
        assert_eq!(&(&a * &a.inv().unwrap()), &GaussRat::one());
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }

    #[test]
    fn radicand_normalization() {
        let c = Coefficient::sqrt(&q(20, 89)).unwrap();
        assert_eq!(c.radicand, BigInt::from(445));
        assert_eq!(c.value, GaussRat::from_frac(2, 89));
        assert_eq!(c.square(), GaussRat::from_frac(20, 89));
        let r = Coefficient::sqrt(&q(12, 1)).unwrap();
        assert_eq!((r.value.clone(), r.radicand.clone()), (GaussRat::from_int(2), BigInt::from(3)));
        let s = r.mul(&r);
        assert!(s.is_rational());
        assert_eq!(s.value, GaussRat::from_int(12));
        assert_eq!(Coefficient::sqrt(&q(49, 4)).unwrap(), Coefficient::rational(GaussRat::from_frac(7, 2)));
    }

    #[test]
    fn large_radicand_with_small_primes() {
        // 89^-89 · 20^20 · 45^45 · 24^24 only involves 2, 3, 5 and 89
        let mut num = BigInt::one();
        for (b, e) in [(20u32, 20u32), (45, 45), (24, 24)] {
            num *= BigInt::from(b).pow(e);
        }
        let den = BigInt::from(89u32).pow(89);
        let c = Coefficient::sqrt(&BigRational::new(num.clone(), den.clone())).unwrap();
        assert_eq!(c.square(), GaussRat::real(BigRational::new(num, den)));
        assert!(c.radicand <= BigInt::from(2 * 3 * 5 * 89));
    }

    #[test]
    fn unlike_radicals_do_not_add() {
        let a = Coefficient::sqrt(&q(2, 1)).unwrap();
        let b = Coefficient::sqrt(&q(3, 1)).unwrap();
        assert!(a.checked_add(&b).is_err());
        assert_eq!(a.checked_add(&a.neg()).unwrap(), Coefficient::zero());
    }
}
