//! Gaussian rationals, the coefficient field of every polynomial in the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// An element `(re + im*i) / den` of Q(i).
///
/// Stored with a shared positive denominator and `gcd(re, im, den) = 1`, so
/// equality is structural and Gaussian integers skip all gcd work.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigInt::zero(), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: BigInt::zero(), im: BigInt::one(), den: BigInt::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar { re: BigInt::from(v), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar { re: v, im: BigInt::zero(), den: BigInt::one() }
    }

    /// `num / den` as a real scalar. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_parts(BigInt::from(num), BigInt::zero(), BigInt::from(den))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Scalar::from_parts(r.numer().clone(), BigInt::zero(), r.denom().clone())
    }

    /// `re + im*i` from two rationals.
    pub fn new(re: &BigRational, im: &BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let a = re.numer() * (&den / re.denom());
        let b = im.numer() * (&den / im.denom());
        Scalar::from_parts(a, b, den)
    }

    /// Gaussian integer `re + im*i`.
    pub fn gaussian(re: BigInt, im: BigInt) -> Self {
        Scalar { re, im, den: BigInt::one() }
    }

    pub(crate) fn from_parts(mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if re.is_zero() && im.is_zero() {
            return Scalar::zero();
        }
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        if !den.is_one() {
            let g = re.gcd(&im).gcd(&den);
            if !g.is_one() {
                re /= &g;
                im /= &g;
                den /= &g;
            }
        }
        Scalar { re, im, den }
    }

    pub fn re(&self) -> BigRational {
        BigRational::new(self.re.clone(), self.den.clone())
    }

    pub fn im(&self) -> BigRational {
        BigRational::new(self.im.clone(), self.den.clone())
    }

    /// Numerators and common denominator, `(re, im, den)`.
    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.re, &self.im, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.den.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for Gaussian integers.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -&self.im, den: self.den.clone() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar::from_parts(self.den.clone(), BigInt::zero(), self.re.clone()));
        }
        // den / (re + im i) = den (re - im i) / (re^2 + im^2)
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar::from_parts(&self.den * &self.re, -(&self.den * &self.im), norm))
    }

    /// Division that assumes both operands are Gaussian integers and the
    /// quotient is one too (fraction-free elimination steps).
    pub(crate) fn div_exact_integral(&self, d: &Scalar) -> Scalar {
        debug_assert!(self.is_integral() && d.is_integral());
        if d.im.is_zero() {
            let re = &self.re / &d.re;
            let im = &self.im / &d.re;
            debug_assert!(&re * &d.re == self.re && &im * &d.re == self.im);
            return Scalar { re, im, den: BigInt::one() };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let re = (&self.re * &d.re + &self.im * &d.im) / &norm;
        let im = (&self.im * &d.re - &self.re * &d.im) / &norm;
        Scalar { re, im, den: BigInt::one() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Number of bits of the largest of the three stored integers.
    pub fn height_bits(&self) -> u64 {
        self.re.bits().max(self.im.bits()).max(self.den.bits())
    }

    pub(crate) fn mul_bigint(&self, k: &BigInt) -> Scalar {
        if self.den.is_one() {
            return Scalar { re: &self.re * k, im: &self.im * k, den: BigInt::one() };
        }
        Scalar::from_parts(&self.re * k, &self.im * k, self.den.clone())
    }

    /// Parse `p/q`, `a+bi`, `bi`, `-i`, ... (whitespace ignored).
    pub fn parse(text: &str) -> Result<Scalar, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("malformed number `{text}`"));
        if s.is_empty() {
            return Err(bad());
        }
        // Split at a sign that is not the leading one.
        let bytes = s.as_bytes();
        let mut cut = None;
        for (k, &ch) in bytes.iter().enumerate().skip(1) {
            if ch == b'+' || ch == b'-' {
                cut = Some(k);
            }
        }
        let (first, second) = match cut {
            Some(k) => (&s[..k], Some(&s[k..])),
            None => (s.as_str(), None),
        };
        let parse_part = |part: &str| -> Result<(BigRational, bool), Error> {
            let (body, imag) = match part.strip_suffix('i') {
                Some(b) => (b.strip_suffix('*').unwrap_or(b), true),
                None => (part, false),
            };
            let (neg, body) = match body.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, body.strip_prefix('+').unwrap_or(body)),
            };
            let value = if body.is_empty() {
                if !imag {
                    return Err(bad());
                }
                BigRational::one()
            } else if let Some((n, d)) = body.split_once('/') {
                let n = BigInt::from_str(n).map_err(|_| bad())?;
                let d = BigInt::from_str(d).map_err(|_| bad())?;
                if d.is_zero() || n.is_negative() || d.is_negative() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            } else {
                let n = BigInt::from_str(body).map_err(|_| bad())?;
                if n.is_negative() {
                    return Err(bad());
                }
                BigRational::from_integer(n)
            };
            Ok((if neg { -value } else { value }, imag))
        };
        let (v1, i1) = parse_part(first)?;
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        if i1 {
            im += v1;
        } else {
            re += v1;
        }
        if let Some(sec) = second {
            let (v2, i2) = parse_part(sec)?;
            if i2 == i1 {
                return Err(bad());
            }
            if i2 {
                im += v2;
            } else {
                re += v2;
            }
        }
        Ok(Scalar::new(&re, &im))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re();
        let im = self.im();
        if im.is_zero() {
            return write!(f, "{}", fmt_rational(&re));
        }
        let im_abs = im.abs();
        let im_txt = if im_abs.is_one() { String::new() } else { fmt_rational(&im_abs) };
        if re.is_zero() {
            let sign = if im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{im_txt}i")
        } else {
            let sign = if im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{im_txt}i", fmt_rational(&re))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Scalar::parse(&text).map_err(serde::de::Error::custom)
    }
}

fn add_impl(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
    let (bre, bim) = if negate_b { (-&b.re, -&b.im) } else { (b.re.clone(), b.im.clone()) };
    if a.den == b.den {
        if a.den.is_one() {
            let re = &a.re + bre;
            let im = &a.im + bim;
            return Scalar { re, im, den: BigInt::one() };
        }
        return Scalar::from_parts(&a.re + bre, &a.im + bim, a.den.clone());
    }
    let re = &a.re * &b.den + bre * &a.den;
    let im = &a.im * &b.den + bim * &a.den;
    Scalar::from_parts(re, im, &a.den * &b.den)
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    let (re, im) = if a.im.is_zero() && b.im.is_zero() {
        (&a.re * &b.re, BigInt::zero())
    } else if a.im.is_zero() {
        (&a.re * &b.re, &a.re * &b.im)
    } else if b.im.is_zero() {
        (&a.re * &b.re, &a.im * &b.re)
    } else {
        (&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
    };
    if a.den.is_one() && b.den.is_one() {
        return Scalar { re, im, den: BigInt::one() };
    }
    Scalar::from_parts(re, im, &a.den * &b.den)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        mul_impl(self, rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        mul_impl(self, &rhs.inv().expect("division by zero scalar"))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im, den: self.den }
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im, den: self.den.clone() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.den.is_one() && rhs.den.is_one() {
            self.re += &rhs.re;
            self.im += &rhs.im;
        } else {
            *self = add_impl(self, rhs, false);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.den.is_one() && rhs.den.is_one() {
            self.re -= &rhs.re;
            self.im -= &rhs.im;
        } else {
            *self = add_impl(self, rhs, true);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_impl(self, rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn canonical_form() {
        let a = Scalar::from_parts(BigInt::from(4), BigInt::from(-6), BigInt::from(-8));
        assert_eq!(a.re(), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(a.im(), BigRational::new(BigInt::from(3), BigInt::from(4)));
        assert_eq!(a.denom(), &BigInt::from(4));
        assert_eq!(q(2, 4), q(1, 2));
    }

    #[test]
    fn field_operations() {
        let a = Scalar::parse("1/2+3i").unwrap();
        let b = Scalar::parse("-2/3-i").unwrap();
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn parse_and_display() {
        for t in ["0", "-7", "3/4", "i", "-i", "2/3i", "1+i", "-1/2-5/7i", "4-i"] {
            let s = Scalar::parse(t).unwrap();
            assert_eq!(s.to_string(), t);
            assert_eq!(Scalar::parse(&s.to_string()).unwrap(), s);
        }
        assert_eq!(Scalar::parse("2*i").unwrap(), Scalar::gaussian(0.into(), 2.into()));
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("i+i").is_err());
        assert!(Scalar::parse("").is_err());
    }

    #[test]
    fn exact_integral_division() {
        let a = Scalar::gaussian(BigInt::from(5), BigInt::from(5));
        let b = Scalar::gaussian(BigInt::from(1), BigInt::from(2));
        let c = &a * &b;
        assert_eq!(c.div_exact_integral(&b), a);
        assert_eq!(Scalar::from_int(12).div_exact_integral(&Scalar::from_int(-4)), Scalar::from_int(-3));
    }
}
