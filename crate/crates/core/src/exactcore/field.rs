//! The field abstraction shared by the polynomial and solver code, and the
//! word-sized prime fields used as a fast reduction target.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::scalar::Scalar;

/// Arithmetic needed by polynomial and elimination routines.
///
/// Method names avoid clashing with `std::ops` on concrete types.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn recip(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, o: &Self) -> Self {
        self.times(&o.recip().expect("division by zero"))
    }

    fn add_to(&mut self, o: &Self) {
        *self = self.plus(o);
    }

    /// Determinant of a square matrix given row by row.
    fn det(mut m: Vec<Vec<Self>>) -> Self {
        let n = m.len();
        let mut det = Self::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Self::zero();
            };
            if p != c {
                m.swap(p, c);
                det = det.negate();
            }
            let inv = m[c][c].recip().unwrap();
            det = det.times(&m[c][c]);
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].times(&inv);
                for k in c..n {
                    let t = f.times(&m[c][k]);
                    m[r][k] = m[r][k].minus(&t);
                }
            }
        }
        det
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(v: i64) -> Self {
        Scalar::from_int(v)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        self.inv()
    }
    fn add_to(&mut self, o: &Self) {
        *self += o;
    }
    fn det(m: Vec<Vec<Self>>) -> Self {
        super::matrix::ExactMatrix::from_rows(m).det().expect("square matrix")
    }
}

const fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

const fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// A square root of -1 modulo a prime `p = 1 mod 4`.
const fn sqrt_minus_one(p: u64) -> u64 {
    let mut z = 2u64;
    loop {
        // z is a non-residue iff z^((p-1)/2) = -1.
        if pow_mod(z, (p - 1) / 2, p) == p - 1 {
            return pow_mod(z, (p - 1) / 4, p);
        }
        z += 1;
    }
}

/// Largest primes below 2^62 that are 1 mod 4, so Q(i) reduces into them.
pub const PRIME_A: u64 = 4611686018427387817;
pub const PRIME_B: u64 = 4611686018427387761;

/// The prime field Z/P, with P < 2^62 and P = 1 mod 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    /// The image of the imaginary unit.
    pub const I: u64 = sqrt_minus_one(P);

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn modulus() -> u64 {
        P
    }

    pub fn pow(self, e: u64) -> Self {
        Fp(pow_mod(self.0, e, P))
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v % BigInt::from(P);
        let r = if r < BigInt::zero() { r + BigInt::from(P) } else { r };
        Fp(r.to_u64().unwrap())
    }

    /// Reduction of a Gaussian rational; `None` when P divides the denominator.
    pub fn from_scalar(s: &Scalar) -> Option<Self> {
        let (re, im, den) = s.parts();
        let d = Self::from_bigint(den);
        if d.0 == 0 {
            return None;
        }
        let v = Self::from_bigint(re).plus(&Self::from_bigint(im).times(&Fp(Self::I)));
        Some(v.times(&d.recip().unwrap()))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(P as i64);
        Fp(r as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn plus(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn minus(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn times(&self, o: &Self) -> Self {
        Fp(mul_mod(self.0, o.0, P))
    }
    fn negate(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn recip(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Fp(pow_mod(self.0, P - 2, P)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Fp<PRIME_A>;

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = F::new(F::I);
        assert_eq!(i.times(&i), F::from_i64(-1));
        let j = Fp::<PRIME_B>::new(Fp::<PRIME_B>::I);
        assert_eq!(j.times(&j), Fp::<PRIME_B>::from_i64(-1));
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let a = Scalar::parse("3/7-2i").unwrap();
        let b = Scalar::parse("-5/11+1/3i").unwrap();
        let fa = F::from_scalar(&a).unwrap();
        let fb = F::from_scalar(&b).unwrap();
        assert_eq!(F::from_scalar(&(&a * &b)).unwrap(), fa.times(&fb));
        assert_eq!(F::from_scalar(&(&a + &b)).unwrap(), fa.plus(&fb));
        assert_eq!(F::from_scalar(&a.inv().unwrap()).unwrap(), fa.recip().unwrap());
    }

    #[test]
    fn determinant_over_both_fields() {
        let rows = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1), Scalar::from_int(0)],
            vec![Scalar::from_int(1), Scalar::from_int(3), Scalar::from_int(1)],
            vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(4)],
        ];
        assert_eq!(Scalar::det(rows.clone()), Scalar::from_int(18));
        let modp: Vec<Vec<F>> =
            rows.iter().map(|r| r.iter().map(|s| F::from_scalar(s).unwrap()).collect()).collect();
        assert_eq!(F::det(modp), F::from_i64(18));
    }
}
