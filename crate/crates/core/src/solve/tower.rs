//! Arithmetic in towers of simple extensions
//! `R_L = F[x_1..x_L] / (T_1(x_1), T_2(x_1, x_2), ..., T_L(x_1..x_L))`
//! with each `T_l` monic and squarefree in `x_l` over `R_{l-1}`.
//!
//! `R_L` is a product of fields, one per solution point. When an inversion
//! meets a zero divisor, the computation stops with a [`Split`] describing a
//! factorization `T_l = g * h`; the caller restarts on both halves (dynamic
//! evaluation). Every answer computed on a finished branch is therefore
//! uniform over all the points the branch represents.

use crate::exactcore::{Field, MultiPoly};

/// Element of `R_L`: a scalar at level 0, otherwise a reduced polynomial in
/// `x_L` with level `L-1` coefficients (trailing zeros trimmed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum El<F: Field> {
    C(F),
    P(Vec<El<F>>),
}

/// Polynomial over `R_L`, lowest degree first, trimmed.
pub type UPoly<F> = Vec<El<F>>;

/// A zero divisor was met at `level`: `T_level = g * h`, both monic of
/// positive degree.
#[derive(Clone, Debug)]
pub struct Split<F: Field> {
    pub level: usize,
    pub g: UPoly<F>,
    pub h: UPoly<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower<F: Field> {
    // mods[l - 1] is T_l, monic, coefficients at level l - 1.
    mods: Vec<UPoly<F>>,
}

impl<F: Field> Default for Tower<F> {
    fn default() -> Self {
        Tower { mods: Vec::new() }
    }
}

impl<F: Field> Tower<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn depth(&self) -> usize {
        self.mods.len()
    }

    pub fn degree(&self, l: usize) -> usize {
        self.mods[l - 1].len() - 1
    }

    /// Number of points represented: the product of the degrees.
    pub fn size(&self) -> usize {
        (1..=self.depth()).map(|l| self.degree(l)).product()
    }

    pub fn modulus(&self, l: usize) -> &UPoly<F> {
        &self.mods[l - 1]
    }

    /// Extend by a monic squarefree polynomial over the top level.
    pub fn extend(&self, t: UPoly<F>) -> Tower<F> {
        debug_assert!(t.last().is_some_and(|c| self.is_one(self.depth(), c)));
        let mut mods = self.mods.clone();
        mods.push(t);
        Tower { mods }
    }

    /// The first-level modulus as a univariate polynomial.
    pub fn base_poly(&self) -> Option<crate::exactcore::UniPoly<F>> {
        let t = self.mods.first()?;
        Some(crate::exactcore::UniPoly::new(
            t.iter()
                .map(|c| match c {
                    El::C(x) => x.clone(),
                    El::P(_) => unreachable!(),
                })
                .collect(),
        ))
    }

    pub fn zero(l: usize) -> El<F> {
        if l == 0 {
            El::C(F::zero())
        } else {
            El::P(Vec::new())
        }
    }

    pub fn constant(l: usize, c: F) -> El<F> {
        if l == 0 {
            El::C(c)
        } else if c.is_zero() {
            El::P(Vec::new())
        } else {
            El::P(vec![Self::constant(l - 1, c)])
        }
    }

    pub fn one(l: usize) -> El<F> {
        Self::constant(l, F::one())
    }

    pub fn is_zero(e: &El<F>) -> bool {
        match e {
            El::C(c) => c.is_zero(),
            El::P(v) => v.is_empty(),
        }
    }

    fn is_one(&self, l: usize, e: &El<F>) -> bool {
        *e == Self::one(l)
    }

    /// The scalar value of an element lying in the base field, if it does.
    pub fn as_constant(e: &El<F>) -> Option<F> {
        match e {
            El::C(c) => Some(c.clone()),
            El::P(v) if v.is_empty() => Some(F::zero()),
            El::P(v) if v.len() == 1 => Self::as_constant(&v[0]),
            El::P(_) => None,
        }
    }

    /// The generator `x_l` as an element of `R_l`.
    pub fn generator(&self, l: usize) -> El<F> {
        self.reduce(l, vec![Self::zero(l - 1), Self::one(l - 1)])
    }

    pub fn add(&self, l: usize, a: &El<F>, b: &El<F>) -> El<F> {
        match (a, b) {
            (El::C(x), El::C(y)) => El::C(x.plus(y)),
            (El::P(x), El::P(y)) => El::P(self.up_add(l - 1, x, y)),
            _ => unreachable!("level mismatch"),
        }
    }

    pub fn sub(&self, l: usize, a: &El<F>, b: &El<F>) -> El<F> {
        match (a, b) {
            (El::C(x), El::C(y)) => El::C(x.minus(y)),
            (El::P(x), El::P(y)) => El::P(self.up_sub(l - 1, x, y)),
            _ => unreachable!("level mismatch"),
        }
    }

    pub fn neg(&self, l: usize, a: &El<F>) -> El<F> {
        match a {
            El::C(x) => El::C(x.negate()),
            El::P(x) => El::P(x.iter().map(|c| self.neg(l - 1, c)).collect()),
        }
    }

    pub fn mul(&self, l: usize, a: &El<F>, b: &El<F>) -> El<F> {
        match (a, b) {
            (El::C(x), El::C(y)) => El::C(x.times(y)),
            (El::P(x), El::P(y)) => {
                if x.is_empty() || y.is_empty() {
                    return El::P(Vec::new());
                }
                if x.len() == 1 {
                    return El::P(self.up_scale(l - 1, y, &x[0]));
                }
                if y.len() == 1 {
                    return El::P(self.up_scale(l - 1, x, &y[0]));
                }
                self.reduce(l, self.up_mul(l - 1, x, y))
            }
            _ => unreachable!("level mismatch"),
        }
    }

    /// Reduce an arbitrary-length polynomial in `x_l` modulo `T_l`.
    pub fn reduce(&self, l: usize, mut c: UPoly<F>) -> El<F> {
        let t = &self.mods[l - 1];
        let d = t.len() - 1;
        if c.len() > d {
            for i in (d..c.len()).rev() {
                let top = std::mem::replace(&mut c[i], Self::zero(l - 1));
                if Self::is_zero(&top) {
                    continue;
                }
                for j in 0..d {
                    let prod = self.mul(l - 1, &top, &t[j]);
                    c[i - d + j] = self.sub(l - 1, &c[i - d + j], &prod);
                }
            }
            c.truncate(d);
        }
        El::P(Self::trim(c))
    }

    fn trim(mut c: UPoly<F>) -> UPoly<F> {
        while c.last().is_some_and(Self::is_zero) {
            c.pop();
        }
        c
    }

    /// Inverse of a nonzero element, or the splitting it exposes.
    pub fn inv(&self, l: usize, a: &El<F>) -> Result<El<F>, Split<F>> {
        match a {
            El::C(x) => Ok(El::C(x.recip().expect("inverting zero"))),
            El::P(v) => {
                assert!(!v.is_empty(), "inverting zero");
                if v.len() == 1 {
                    return Ok(El::P(vec![self.inv(l - 1, &v[0])?]));
                }
                // Extended Euclid in R_{l-1}[x_l] on (T_l, a), tracking the
                // cofactor of a.
                let mut r0 = self.mods[l - 1].clone();
                let mut r1 = v.clone();
                let mut t0: UPoly<F> = Vec::new();
                let mut t1: UPoly<F> = vec![Self::one(l - 1)];
                loop {
                    if r1.len() == 1 {
                        let c = self.inv(l - 1, &r1[0])?;
                        return Ok(self.reduce(l, self.up_scale(l - 1, &t1, &c)));
                    }
                    let (q, r) = self.up_divrem(l - 1, &r0, &r1)?;
                    if r.is_empty() {
                        let g = self.up_monic(l - 1, &r1)?;
                        let h = self.up_div_monic(l - 1, &self.mods[l - 1], &g);
                        return Err(Split { level: l, g, h });
                    }
                    let t2 = self.up_sub(l - 1, &t0, &self.up_mul(l - 1, &q, &t1));
                    r0 = std::mem::replace(&mut r1, r);
                    t0 = std::mem::replace(&mut t1, t2);
                }
            }
        }
    }

    /// The two towers obtained by replacing `T_level` with `g` and with `h`;
    /// higher moduli are re-reduced.
    pub fn split(&self, s: &Split<F>) -> (Tower<F>, Tower<F>) {
        let mk = |factor: &UPoly<F>| {
            let mut t = Tower { mods: self.mods[..s.level - 1].to_vec() };
            t.mods.push(factor.clone());
            for k in s.level..self.depth() {
                let m: UPoly<F> = self.mods[k].iter().map(|c| t.reduce_full(k, c)).collect();
                t.mods.push(m);
            }
            t
        };
        (mk(&s.g), mk(&s.h))
    }

    /// Canonical representative of an element given with respect to any
    /// tower sharing this tower's variables.
    pub fn reduce_full(&self, l: usize, e: &El<F>) -> El<F> {
        match e {
            El::C(c) => El::C(c.clone()),
            El::P(v) => {
                let inner: UPoly<F> = v.iter().map(|c| self.reduce_full(l - 1, c)).collect();
                self.reduce(l, inner)
            }
        }
    }

    // ---- polynomials over R_l ----

    pub fn up_add(&self, l: usize, a: &[El<F>], b: &[El<F>]) -> UPoly<F> {
        let n = a.len().max(b.len());
        let z = Self::zero(l);
        Self::trim((0..n).map(|i| self.add(l, a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn up_sub(&self, l: usize, a: &[El<F>], b: &[El<F>]) -> UPoly<F> {
        let n = a.len().max(b.len());
        let z = Self::zero(l);
        Self::trim((0..n).map(|i| self.sub(l, a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn up_scale(&self, l: usize, a: &[El<F>], c: &El<F>) -> UPoly<F> {
        Self::trim(a.iter().map(|x| self.mul(l, x, c)).collect())
    }

    pub fn up_mul(&self, l: usize, a: &[El<F>], b: &[El<F>]) -> UPoly<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Self::zero(l); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if Self::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if Self::is_zero(y) {
                    continue;
                }
                let p = self.mul(l, x, y);
                out[i + j] = self.add(l, &out[i + j], &p);
            }
        }
        Self::trim(out)
    }

    pub fn up_derivative(&self, l: usize, a: &[El<F>]) -> UPoly<F> {
        Self::trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.mul(l, c, &Self::constant(l, F::from_i64(i as i64))))
                .collect(),
        )
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn up_divrem(&self, l: usize, a: &[El<F>], b: &[El<F>]) -> Result<(UPoly<F>, UPoly<F>), Split<F>> {
        let db = b.len() - 1;
        let inv = self.inv(l, &b[db])?;
        let mut r = a.to_vec();
        if r.len() <= db {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![Self::zero(l); r.len() - db];
        for k in (0..q.len()).rev() {
            if Self::is_zero(&r[k + db]) {
                continue;
            }
            let c = self.mul(l, &r[k + db], &inv);
            for (j, bc) in b.iter().enumerate() {
                let p = self.mul(l, &c, bc);
                r[k + j] = self.sub(l, &r[k + j], &p);
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Self::trim(q), Self::trim(r)))
    }

    pub fn up_monic(&self, l: usize, a: &[El<F>]) -> Result<UPoly<F>, Split<F>> {
        let inv = self.inv(l, a.last().expect("monic of zero"))?;
        let mut out = self.up_scale(l, a, &inv);
        // Exact 1 on top, whatever the representative of lc * lc^-1.
        *out.last_mut().unwrap() = Self::one(l);
        Ok(out)
    }

    /// Quotient by a monic divisor (no inversions needed).
    pub fn up_div_monic(&self, l: usize, a: &[El<F>], g: &[El<F>]) -> UPoly<F> {
        let dg = g.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= dg {
            return Vec::new();
        }
        let mut q = vec![Self::zero(l); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = r[k + dg].clone();
            if Self::is_zero(&c) {
                continue;
            }
            for (j, gc) in g.iter().enumerate() {
                let p = self.mul(l, &c, gc);
                r[k + j] = self.sub(l, &r[k + j], &p);
            }
            q[k] = c;
        }
        Self::trim(q)
    }

    /// Monic gcd over `R_l`; zero if both inputs are zero.
    pub fn up_gcd(&self, l: usize, a: &[El<F>], b: &[El<F>]) -> Result<UPoly<F>, Split<F>> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let (_, r) = self.up_divrem(l, &a, &b)?;
            a = b;
            b = if r.is_empty() { r } else { self.up_monic(l, &r)? };
        }
        if a.is_empty() {
            return Ok(a);
        }
        self.up_monic(l, &a)
    }

    /// Monic gcd of a list (zero when all are zero).
    pub fn up_gcd_many(&self, l: usize, ps: &[UPoly<F>]) -> Result<UPoly<F>, Split<F>> {
        let mut sorted: Vec<&UPoly<F>> = ps.iter().filter(|p| !p.is_empty()).collect();
        sorted.sort_by_key(|p| p.len());
        let mut g: UPoly<F> = Vec::new();
        for p in sorted {
            g = self.up_gcd(l, &g, p)?;
            if g.len() == 1 {
                break;
            }
        }
        Ok(g)
    }

    /// `a / gcd(a, a')` for a monic `a` of positive degree.
    pub fn up_squarefree(&self, l: usize, a: &[El<F>]) -> Result<UPoly<F>, Split<F>> {
        let d = self.up_derivative(l, a);
        let g = self.up_gcd(l, a, &d)?;
        if g.len() <= 1 {
            return Ok(a.to_vec());
        }
        Ok(self.up_div_monic(l, a, &g))
    }

    // ---- conversion from polynomials ----

    /// Image in `R_l` of a polynomial in the variables `vars[0..l]`, with
    /// `vars[k]` mapped to `x_{k+1}`. Other variables must not occur.
    pub fn from_multi(&self, l: usize, p: &MultiPoly<F>, vars: &[usize]) -> El<F> {
        if l == 0 {
            debug_assert!(p.is_constant());
            return El::C(p.constant_term());
        }
        let v = vars[l - 1];
        let coeffs: UPoly<F> = p.coefficients_in(v).iter().map(|c| self.from_multi(l - 1, c, vars)).collect();
        self.reduce(l, coeffs)
    }

    /// Polynomial in `x_var` over `R_l` (the other variables being `vars`).
    pub fn upoly_from_multi(&self, l: usize, p: &MultiPoly<F>, vars: &[usize], var: usize) -> UPoly<F> {
        Self::trim(p.coefficients_in(var).iter().map(|c| self.from_multi(l, c, vars)).collect())
    }
}

/// A computation that may expose a zero divisor, or fail outright.
#[derive(Debug)]
pub enum Fail<F: Field> {
    Split(Split<F>),
    Err(crate::Error),
}

impl<F: Field> From<Split<F>> for Fail<F> {
    fn from(s: Split<F>) -> Self {
        Fail::Split(s)
    }
}

impl<F: Field> From<crate::Error> for Fail<F> {
    fn from(e: crate::Error) -> Self {
        Fail::Err(e)
    }
}

/// Run `f` on `t`, restarting on both halves whenever it reports a split.
/// Results come back in a fixed order (depth-first, `g` before `h`).
pub fn run_branches<F: Field, T>(
    t: Tower<F>,
    f: &mut impl FnMut(&Tower<F>) -> Result<T, Fail<F>>,
) -> Result<Vec<(Tower<F>, T)>, crate::Error> {
    let mut stack = vec![t];
    let mut out = Vec::new();
    while let Some(t) = stack.pop() {
        match f(&t) {
            Ok(v) => out.push((t, v)),
            Err(Fail::Split(s)) => {
                let (a, b) = t.split(&s);
                stack.push(b);
                stack.push(a);
            }
            Err(Fail::Err(e)) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Scalar;

    fn c(v: i64) -> El<Scalar> {
        El::C(Scalar::from_int(v))
    }

    #[test]
    fn inverse_in_a_field_extension() {
        // Q[x]/(x^2 + 1): (1 + x)^-1 = (1 - x)/2.
        let t = Tower::new().extend(vec![c(1), c(0), c(1)]);
        let a = El::P(vec![c(1), c(1)]);
        let inv = t.inv(1, &a).unwrap();
        assert_eq!(t.mul(1, &a, &inv), Tower::one(1));
    }

    #[test]
    fn zero_divisor_splits() {
        // Q[x]/(x^2 - 1): x - 1 is a zero divisor.
        let t = Tower::new().extend(vec![c(-1), c(0), c(1)]);
        let a = El::P(vec![c(-1), c(1)]);
        let res = run_branches(t, &mut |t: &Tower<Scalar>| {
            let a = t.reduce_full(1, &a);
            if Tower::is_zero(&a) {
                return Ok(None);
            }
            Ok(Some(t.inv(1, &a)?))
        })
        .unwrap();
        assert_eq!(res.len(), 2);
        assert!(res.iter().all(|(t, _)| t.size() == 1));
        assert_eq!(res.iter().filter(|(_, v)| v.is_none()).count(), 1);
        let (t, inv) = res.iter().find(|(_, v)| v.is_some()).unwrap();
        let a = t.reduce_full(1, &a);
        assert_eq!(t.mul(1, &a, inv.as_ref().unwrap()), Tower::one(1));
    }

    #[test]
    fn gcd_over_quadratic_extension() {
        // Over Q(x), x^2 = 2: gcd(z^2 - 2, z^2 - x z) = z - x.
        let t = Tower::new().extend(vec![c(-2), c(0), c(1)]);
        let x = t.generator(1);
        let a = vec![Tower::constant(1, Scalar::from_int(-2)), Tower::zero(1), Tower::one(1)];
        let b = vec![Tower::zero(1), t.neg(1, &x), Tower::one(1)];
        let g = t.up_gcd(1, &a, &b).unwrap();
        assert_eq!(g, vec![t.neg(1, &x), Tower::one(1)]);
        let t2 = t.extend(g);
        assert_eq!(t2.size(), 2);
    }
}
