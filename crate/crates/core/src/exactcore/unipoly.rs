//! Dense univariate polynomials.

use std::fmt;

use super::field::Field;
use super::scalar::Scalar;
use crate::Error;

/// Dense univariate polynomial, coefficients from the constant term up,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F: Field = Scalar> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| F::from_i64(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        UniPoly::new(vec![c])
    }

    /// The polynomial `s`.
    pub fn x() -> Self {
        UniPoly { coeffs: vec![F::zero(), F::one()] }
    }

    pub fn monomial(c: F, d: usize) -> Self {
        let mut v = vec![F::zero(); d + 1];
        v[d] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.times(k)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.negate()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j].add_to(&a.times(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.times(&F::from_i64(i as i64))).collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = self.lc().recip().unwrap();
        self.scale(&inv)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), Error> {
        let dd = d.degree().ok_or(Error::ZeroOperand)?;
        let inv = d.lc().recip().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].times(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].minus(&c.times(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, Error> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            // Normalizing keeps rational coefficient growth in check.
            b = r.monic();
        }
        a.monic()
    }

    /// Monic gcd of a list; errors when every input is zero.
    pub fn gcd_many(fs: &[Self]) -> Result<Self, Error> {
        let mut nonzero: Vec<&Self> = fs.iter().filter(|f| !f.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::AllZero);
        }
        nonzero.sort_by_key(|f| f.degree());
        let mut g = nonzero[0].monic();
        for f in &nonzero[1..] {
            if g.degree() == Some(0) {
                break;
            }
            g = UniPoly::gcd(&g, f);
        }
        Ok(g)
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let g = UniPoly::gcd(self, &self.derivative());
        Ok(self.div_rem(&g)?.0.monic())
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_root_count(&self) -> Result<usize, Error> {
        Ok(self.squarefree_part()?.degree().unwrap())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<UniPoly<G>> {
        let c: Option<Vec<G>> = self.coeffs.iter().map(f).collect();
        Some(UniPoly::new(c?))
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*s")?,
                _ => write!(f, "({c})*s^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        let s = p(&[0, 1]);
        let g = UniPoly::gcd_many(&[s.clone(), s.mul(&s), UniPoly::one()]).unwrap();
        assert_eq!(g, UniPoly::one());
        // (s-1)^2 (s+2) and (s-1)(s+3)
        let a = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(UniPoly::gcd_many(&[a, b]).unwrap(), p(&[-1, 1]));
        assert_eq!(UniPoly::<Scalar>::gcd_many(&[UniPoly::zero()]), Err(Error::AllZero));
    }

    #[test]
    fn squarefree_examples() {
        let a = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        assert_eq!(a.squarefree_part().unwrap(), p(&[-1, 1]).mul(&p(&[2, 1])));
        assert_eq!(p(&[0, 0, 1]).squarefree_part().unwrap(), p(&[0, 1]));
        // 2a^6 + 3a^4 + 2a^3 + 3a^2 + 2 is already squarefree.
        let e = p(&[2, 0, 3, 2, 3, 0, 2]);
        assert_eq!(UniPoly::gcd(&e, &e.derivative()), UniPoly::one());
        assert_eq!(e.squarefree_part().unwrap(), e.monic());
        assert!(UniPoly::<Scalar>::zero().squarefree_part().is_err());
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -2, 0, 5, 1]);
        let d = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }
}
