//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::matrix::ExactMatrix;
use super::scalar::Scalar;
use super::unipoly::UniPoly;
use crate::Error;

/// Upper bound on the number of variables of a [`MultiPoly`].
pub const MAX_VARS: usize = 8;

/// Exponent vector; the derived order is lexicographic with variable 0 most
/// significant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Mono([u16; MAX_VARS]);

impl Mono {
    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = [0u16; MAX_VARS];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        Mono(m)
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0[v] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Mono(m)
    }

    pub fn with_exp(&self, v: usize, e: u32) -> Mono {
        let mut m = self.0;
        m[v] = u16::try_from(e).expect("exponent overflow");
        Mono(m)
    }

    /// True when `self` divides `o`.
    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }
}

/// Sparse polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<F: Field = Scalar> {
    nvars: usize,
    terms: BTreeMap<Mono, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::default(), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, F::one())
    }

    /// The variable with index `v`.
    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars);
        MultiPoly::monomial(nvars, Mono::default().with_exp(v, 1), F::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: F) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        MultiPoly::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| (Mono::default().with_exp(i, 1), c.clone())))
    }

    pub fn add_term(&mut self, m: Mono, c: &F) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.0[self.nvars..].iter().all(|&e| e == 0));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_to(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Mono::default())
    }

    /// The lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` is the sentinel for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Drop every term of degree `>= d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() < d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c.times(k))).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    fn add_impl(&self, o: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            if negate {
                out.add_term(*m, &c.negate());
            } else {
                out.add_term(*m, c);
            }
        }
        out
    }

    fn mul_impl(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m1.mul(m2), &c1.times(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(self.nvars);
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

    fn powers(x: &F, max: u32) -> Vec<F> {
        let mut p = Vec::with_capacity(max as usize + 1);
        p.push(F::one());
        for k in 1..=max as usize {
            let next = p[k - 1].times(x);
            p.push(next);
        }
        p
    }

    pub fn eval(&self, pt: &[F]) -> F {
        assert_eq!(pt.len(), self.nvars, "point dimension mismatch");
        let pows: Vec<Vec<F>> =
            (0..self.nvars).map(|v| Self::powers(&pt[v], self.degree_in(v).unwrap_or(0))).collect();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, pw) in pows.iter().enumerate() {
                let e = m.exp(v) as usize;
                if e > 0 {
                    t = t.times(&pw[e]);
                }
            }
            acc.add_to(&t);
        }
        acc
    }

    /// Substitute `x_v = value`, keeping the variable count.
    pub fn partial_eval(&self, v: usize, value: &F) -> Self {
        let pw = Self::powers(value, self.degree_in(v).unwrap_or(0));
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let c = if e == 0 { c.clone() } else { c.times(&pw[e]) };
            out.add_term(m.with_exp(v, 0), &c);
        }
        out
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), &c.times(&F::from_i64(e as i64)));
            }
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|v| self.derivative(v)).collect()
    }

    /// Substitute `x_v = subs[v]` for every variable; the result lives in the
    /// substitutes' ring (`target_nvars` variables).
    pub fn compose(&self, subs: &[MultiPoly<F>], target_nvars: usize) -> MultiPoly<F> {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        assert!(subs.iter().all(|s| s.nvars == target_nvars));
        let terms: Vec<(Mono, F)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut cache: Vec<Vec<MultiPoly<F>>> = vec![Vec::new(); self.nvars];
        Self::compose_rec(&terms, 0, subs, target_nvars, &mut cache)
    }

    fn cached_pow<'a>(cache: &'a mut [Vec<MultiPoly<F>>], subs: &[MultiPoly<F>], v: usize, e: usize) -> &'a MultiPoly<F> {
        let n = subs[v].nvars;
        if cache[v].is_empty() {
            cache[v].push(MultiPoly::one(n));
        }
        while cache[v].len() <= e {
            let next = cache[v].last().unwrap() * &subs[v];
            cache[v].push(next);
        }
        &cache[v][e]
    }

    // Horner scheme in variable `v`, recursing on the higher-index variables.
    fn compose_rec(
        terms: &[(Mono, F)],
        v: usize,
        subs: &[MultiPoly<F>],
        target: usize,
        cache: &mut [Vec<MultiPoly<F>>],
    ) -> MultiPoly<F> {
        if v == subs.len() {
            let mut c = F::zero();
            for (_, t) in terms {
                c.add_to(t);
            }
            return MultiPoly::constant(target, c);
        }
        let mut groups: BTreeMap<u32, Vec<(Mono, F)>> = BTreeMap::new();
        for (m, c) in terms {
            groups.entry(m.exp(v)).or_default().push((*m, c.clone()));
        }
        if groups.len() == 1 && groups.contains_key(&0) {
            return Self::compose_rec(terms, v + 1, subs, target, cache);
        }
        let mut acc: Option<MultiPoly<F>> = None;
        let mut prev_e = 0u32;
        for (&e, group) in groups.iter().rev() {
            let inner = Self::compose_rec(group, v + 1, subs, target, cache);
            acc = Some(match acc {
                None => inner,
                Some(a) => {
                    let shifted = &a * Self::cached_pow(cache, subs, v, (prev_e - e) as usize);
                    &shifted + &inner
                }
            });
            prev_e = e;
        }
        let acc = acc.unwrap();
        if prev_e == 0 {
            acc
        } else {
            &acc * Self::cached_pow(cache, subs, v, prev_e as usize)
        }
    }

    /// Coefficients with respect to `x_v`, index = power of `x_v`; each
    /// coefficient keeps the same variable count and does not involve `x_v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<MultiPoly<F>> {
        let Some(d) = self.degree_in(v) else {
            return Vec::new();
        };
        let mut out = vec![MultiPoly::zero(self.nvars); d as usize + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(nvars: usize, v: usize, coeffs: &[MultiPoly<F>]) -> Self {
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, t) in &c.terms {
                debug_assert_eq!(m.exp(v), 0);
                out.add_term(m.with_exp(v, e as u32), t);
            }
        }
        out
    }

    /// View as a univariate polynomial in `x_v`; `None` if other variables occur.
    pub fn to_unipoly(&self, v: usize) -> Option<UniPoly<F>> {
        let d = self.degree_in(v).unwrap_or(0) as usize;
        let mut c = vec![F::zero(); d + 1];
        for (m, t) in &self.terms {
            if m.degree() != m.exp(v) {
                return None;
            }
            c[m.exp(v) as usize] = t.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn from_unipoly(nvars: usize, v: usize, u: &UniPoly<F>) -> Self {
        MultiPoly::from_terms(
            nvars,
            u.coeffs().iter().enumerate().map(|(e, c)| (Mono::default().with_exp(v, e as u32), c.clone())),
        )
    }

    /// Move variable `i` to position `map[i]` in a ring with `nvars` variables.
    /// A target `>= nvars` drops a variable that must not occur.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = [0u32; MAX_VARS];
            for (i, &j) in map.iter().enumerate() {
                if j >= nvars {
                    assert_eq!(m.exp(i), 0, "dropped variable occurs");
                    continue;
                }
                e[j] += m.exp(i);
            }
            out.add_term(Mono::from_exps(&e[..nvars]), c);
        }
        out
    }

    /// Exact division by `x_v`; `None` if some term lacks `x_v`.
    pub fn divide_by_var(&self, v: usize) -> Option<Self> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                return None;
            }
            out.terms.insert(m.with_exp(v, e - 1), c.clone());
        }
        Some(out)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lm, lc) = d.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        let inv = lc.recip().unwrap();
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let mut e = [0u32; MAX_VARS];
            for (v, slot) in e.iter_mut().enumerate().take(self.nvars) {
                *slot = m.exp(v) - lm.exp(v);
            }
            let qm = Mono::from_exps(&e[..self.nvars]);
            let qc = c.times(&inv);
            q.add_term(qm, &qc);
            rem = &rem - &d.mul_mono(&qm).scale(&qc);
        }
        Some(q)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<MultiPoly<G>> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Some(out)
    }

    /// Make the lexicographically leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip().unwrap()),
        }
    }
}

impl MultiPoly<Scalar> {
    /// `f(A x)`: each variable `x_i` becomes `sum_j A[i][j] x_j`.
    pub fn linear_change(&self, a: &ExactMatrix) -> Result<Self, Error> {
        let n = self.nvars;
        if a.rows() != n || a.cols() != n {
            return Err(Error::Invalid(format!("expected a {n}x{n} matrix")));
        }
        if a.rank() < n {
            return Err(Error::SingularMatrix);
        }
        let subs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::linear(&a.row(i))).collect();
        Ok(self.compose(&subs, n))
    }

    /// Scale to Gaussian-integer coefficients with gcd 1 and a leading
    /// coefficient with positive real part (or positive imaginary part when
    /// the real part is zero). Zero stays zero.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let scaled = self.scale(&Scalar::from_bigint(l));
        let mut g = num_bigint::BigInt::zero();
        for c in scaled.terms.values() {
            let (re, im, _) = c.parts();
            g = g.gcd(re).gcd(im);
        }
        let mut out = scaled.scale(&Scalar::from_parts(num_bigint::BigInt::one(), num_bigint::BigInt::zero(), g));
        let (_, lc) = out.leading_term().unwrap();
        let (re, im, _) = lc.parts();
        if re.is_negative() || (re.is_zero() && im.is_negative()) {
            out = -&out;
        }
        out
    }
}

impl<'a, F: Field> Add<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, o: &'a MultiPoly<F>) -> MultiPoly<F> {
        self.add_impl(o, false)
    }
}

impl<'a, F: Field> Sub<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, o: &'a MultiPoly<F>) -> MultiPoly<F> {
        self.add_impl(o, true)
    }
}

impl<'a, F: Field> Mul<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, o: &'a MultiPoly<F>) -> MultiPoly<F> {
        self.mul_impl(o)
    }
}

impl<'a, F: Field> Neg for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c.negate())).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<MultiPoly<F>> for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, o: MultiPoly<F>) -> MultiPoly<F> {
                (&self).$m(&o)
            }
        }
        impl<'a, F: Field> $tr<&'a MultiPoly<F>> for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, o: &'a MultiPoly<F>) -> MultiPoly<F> {
                (&self).$m(o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Default variable names: `x0, x1, ...`.
pub fn default_var_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

impl<F: Field> MultiPoly<F> {
    /// Expanded text form using the given variable names, highest terms first.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&v| m.exp(v) > 0)
                .map(|v| if m.exp(v) == 1 { names[v].clone() } else { format!("{}^{}", names[v], m.exp(v)) })
                .collect();
            let ctext = c.to_string();
            let (neg, body) = coefficient_text(&ctext);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (body.as_str(), mono.is_empty()) {
                (b, true) => out.push_str(b),
                ("1", false) => out.push_str(&mono.join("*")),
                (b, false) => {
                    out.push_str(b);
                    out.push('*');
                    out.push_str(&mono.join("*"));
                }
            }
        }
        out
    }
}

// Split a printed coefficient into a sign and a body that parses as a factor.
fn coefficient_text(t: &str) -> (bool, String) {
    let (neg, rest) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    if rest.contains('+') || rest.contains('-') {
        // Genuinely complex: keep the sign inside parentheses.
        return (false, format!("({})", imag_as_product(t)));
    }
    (neg, imag_as_product(rest))
}

fn imag_as_product(t: &str) -> String {
    // "3/2i" -> "3/2*i", "i" stays "i".
    let mut out = String::new();
    let chars: Vec<char> = t.chars().collect();
    for (k, ch) in chars.iter().enumerate() {
        if *ch == 'i' && k > 0 && chars[k - 1].is_ascii_digit() {
            out.push('*');
        }
        out.push(*ch);
    }
    out
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&default_var_names(self.nvars)))
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, v: usize) -> MultiPoly {
        MultiPoly::var(n, v)
    }

    fn c(n: usize, k: i64) -> MultiPoly {
        MultiPoly::constant(n, Scalar::from_int(k))
    }

    #[test]
    fn degree_sentinel_and_homogeneity() {
        let z: MultiPoly = MultiPoly::zero(3);
        assert_eq!(z.total_degree(), None);
        let f = &(&x(3, 0) * &x(3, 1)) + &x(3, 2).pow(2);
        assert_eq!(f.total_degree(), Some(2));
        assert!(f.is_homogeneous());
        assert!(!(&f + &x(3, 0)).is_homogeneous());
    }

    #[test]
    fn compose_matches_evaluation() {
        let f = &(&x(2, 0).pow(3) * &x(2, 1)) - &(&c(2, 5) * &x(2, 1).pow(2));
        let s0 = &x(2, 0) + &x(2, 1);
        let s1 = &x(2, 0) - &c(2, 2);
        let g = f.compose(&[s0.clone(), s1.clone()], 2);
        let pt = [Scalar::from_int(3), Scalar::parse("1/2+i").unwrap()];
        assert_eq!(g.eval(&pt), f.eval(&[s0.eval(&pt), s1.eval(&pt)]));
    }

    #[test]
    fn coordinate_swap() {
        let f = x(2, 0).pow(3);
        let swap = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(f.linear_change(&swap).unwrap(), x(2, 1).pow(3));
        assert_eq!(f.linear_change(&ExactMatrix::identity(2)).unwrap(), f);
        let singular = ExactMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(f.linear_change(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &(&x(2, 0) * &x(2, 1)) - &c(2, 3);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!((&p + &c(2, 1)).div_exact(&a).is_none());
    }

    #[test]
    fn coefficient_round_trip() {
        let f = &(&x(3, 0).pow(2) * &x(3, 2)) + &(&x(3, 1) * &x(3, 2).pow(3));
        let cs = f.coefficients_in(2);
        assert_eq!(cs.len(), 4);
        assert_eq!(MultiPoly::from_coefficients_in(3, 2, &cs), f);
    }
}
