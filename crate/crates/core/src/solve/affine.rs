//! Counting isolated solutions of affine polynomial systems.
//!
//! The last variable is eliminated by resultants against random combinations
//! of the other equations, the projected system is solved recursively, and
//! every projected solution is lifted by a gcd over the tower describing it.
//! Spurious projected points lift to nothing, so the final count is exact.

use crate::exactcore::{resultant, Field, Fp, MultiPoly, Scalar, PRIME_A, PRIME_B};
use crate::solve::rng::Lcg;
use crate::solve::tower::{run_branches, Fail, Tower};
use crate::Error;

/// Number of reseeded shears tried after the unsheared attempt.
pub const RESEED_BUDGET: usize = 8;

enum SolveFail {
    // The projection degenerated; a different generic choice may succeed.
    Degenerate(String),
    Fatal(Error),
}

impl From<Error> for SolveFail {
    fn from(e: Error) -> Self {
        SolveFail::Fatal(e)
    }
}

/// Solutions as a list of triangular towers, one level per variable.
#[derive(Clone, Debug)]
pub struct AffineSolution<F: Field> {
    pub towers: Vec<Tower<F>>,
    /// Number of reseeded shears that were needed (0: none).
    pub reseeds: usize,
}

impl<F: Field> AffineSolution<F> {
    pub fn count(&self) -> usize {
        self.towers.iter().map(|t| t.size()).sum()
    }
}

/// Which arithmetic carries out the elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    /// Over Q(i) itself.
    Exact,
    /// Over a 62-bit prime field containing a square root of -1. Counts agree
    /// with the exact ones unless the prime divides one of finitely many
    /// nonzero integers attached to the system.
    Modular,
}

/// Number of isolated solutions over the algebraic closure of Q(i).
pub fn count_affine_solutions(eqs: &[MultiPoly], seed: u64) -> Result<usize, Error> {
    count_affine_solutions_with(eqs, None, seed, Arith::Exact)
}

/// As [`count_affine_solutions`], only counting solutions where `nonzero`
/// does not vanish.
pub fn count_affine_solutions_with(
    eqs: &[MultiPoly],
    nonzero: Option<&MultiPoly>,
    seed: u64,
    arith: Arith,
) -> Result<usize, Error> {
    match arith {
        Arith::Exact => Ok(solve_affine(eqs, nonzero, seed)?.count()),
        Arith::Modular => {
            if let Some((e, nz)) = reduce_system::<PRIME_A>(eqs, nonzero) {
                return Ok(solve_affine(&e, nz.as_ref(), seed)?.count());
            }
            let (e, nz) = reduce_system::<PRIME_B>(eqs, nonzero)
                .ok_or_else(|| Error::Invalid("coefficients not reducible modulo the working primes".into()))?;
            Ok(solve_affine(&e, nz.as_ref(), seed)?.count())
        }
    }
}

#[allow(clippy::type_complexity)]
fn reduce_system<const P: u64>(
    eqs: &[MultiPoly],
    nonzero: Option<&MultiPoly>,
) -> Option<(Vec<MultiPoly<Fp<P>>>, Option<MultiPoly<Fp<P>>>)> {
    let e: Option<Vec<_>> = eqs.iter().map(|f| f.map(Fp::<P>::from_scalar)).collect();
    let nz = match nonzero {
        Some(n) => Some(n.map(Fp::<P>::from_scalar)?),
        None => None,
    };
    Some((e?, nz))
}

/// Solve, retrying with seeded upper-unitriangular shears when a projection
/// degenerates.
pub fn solve_affine<F: Field>(
    eqs: &[MultiPoly<F>],
    nonzero: Option<&MultiPoly<F>>,
    seed: u64,
) -> Result<AffineSolution<F>, Error> {
    let mut rng = Lcg::new(seed);
    let n = eqs.first().map_or(0, |e| e.nvars());
    let mut first_failure = None;
    for attempt in 0..=RESEED_BUDGET {
        let (sys, nz) = if attempt == 0 {
            (eqs.to_vec(), nonzero.cloned())
        } else {
            let subs = shear(n, &mut rng);
            (eqs.iter().map(|e| e.compose(&subs, n)).collect(), nonzero.map(|z| z.compose(&subs, n)))
        };
        let mut local = rng.fork();
        match solve_rec(&sys, n, nz.as_ref(), &mut local, true) {
            Ok(towers) => return Ok(AffineSolution { towers, reseeds: attempt }),
            Err(SolveFail::Fatal(e)) => return Err(e),
            Err(SolveFail::Degenerate(msg)) => {
                first_failure.get_or_insert(msg);
            }
        }
    }
    Err(Error::PositiveDimensional(first_failure.unwrap()))
}

// x_i -> x_i + sum_{j > i} a_ij x_j
fn shear<F: Field>(n: usize, rng: &mut Lcg) -> Vec<MultiPoly<F>> {
    (0..n)
        .map(|i| {
            let mut p = MultiPoly::var(n, i);
            for j in i + 1..n {
                let a = F::from_i64(rng.nonzero_in(5));
                p = &p + &MultiPoly::var(n, j).scale(&a);
            }
            p
        })
        .collect()
}

fn var_name(v: usize) -> String {
    format!("variable {v}")
}

// Solve `eqs` in the variables 0..k (no other variable occurs). `top` marks
// the caller's own system, where a positive-dimensional outcome is genuine;
// for projections it only means the projection degenerated.
fn solve_rec<F: Field>(
    eqs: &[MultiPoly<F>],
    k: usize,
    nonzero: Option<&MultiPoly<F>>,
    rng: &mut Lcg,
    top: bool,
) -> Result<Vec<Tower<F>>, SolveFail> {
    let mut eqs: Vec<MultiPoly<F>> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    if eqs.iter().any(|e| e.is_constant()) {
        return Ok(Vec::new());
    }
    if k == 0 {
        return Ok(vec![Tower::new()]);
    }
    let v = k - 1;
    eqs.dedup();
    let (with, without): (Vec<_>, Vec<_>) = eqs.into_iter().partition(|e| e.involves(v));
    let positive = |msg: String| if top { SolveFail::Fatal(Error::PositiveDimensional(msg)) } else { SolveFail::Degenerate(msg) };

    let mut proj = without.clone();
    let mut exact_projection = true;
    if with.len() >= 2 && k >= 2 {
        exact_projection = false;
        let mut sorted = with.clone();
        sorted.sort_by_key(|e| (e.degree_in(v), e.num_terms()));
        let p0 = &sorted[0];
        let rest = &sorted[1..];
        let combos = if rest.len() == 1 { 1 } else { 2 };
        for _ in 0..combos {
            let q = if rest.len() == 1 {
                rest[0].clone()
            } else {
                let mut q = MultiPoly::zero(p0.nvars());
                for r in rest {
                    q = &q + &r.scale(&F::from_i64(rng.int_in(1, 9)));
                }
                q
            };
            let mut r = resultant(p0, &q, v)?;
            if r.is_zero() {
                return Err(SolveFail::Degenerate(format!("eliminant of {} vanishes identically", var_name(v))));
            }
            if let Some(z) = nonzero.filter(|z| !z.involves(v) && !z.is_constant()) {
                while let Some(q) = r.div_exact(z) {
                    r = q;
                }
            }
            proj.push(r);
        }
    }
    let base = match solve_rec(&proj, k - 1, nonzero, rng, top && exact_projection) {
        Ok(b) => b,
        Err(SolveFail::Fatal(Error::PositiveDimensional(m))) if !top || !exact_projection => {
            return Err(SolveFail::Degenerate(m))
        }
        Err(e) => return Err(e),
    };
    let vars: Vec<usize> = (0..k - 1).collect();
    let mut out = Vec::new();
    for t in base {
        if with.is_empty() {
            return Err(positive(format!("{} is unconstrained", var_name(v))));
        }
        let lifted = run_branches(t, &mut |t: &Tower<F>| {
            let ups: Vec<_> = with.iter().map(|e| t.upoly_from_multi(k - 1, e, &vars, v)).collect();
            let g = t.up_gcd_many(k - 1, &ups)?;
            if g.is_empty() {
                return Err(Fail::Err(Error::PositiveDimensional(format!(
                    "every equation vanishes along {} over a solution",
                    var_name(v)
                ))));
            }
            if g.len() == 1 {
                return Ok(None);
            }
            Ok(Some(t.up_squarefree(k - 1, &g)?))
        });
        let lifted = match lifted {
            Ok(l) => l,
            Err(Error::PositiveDimensional(m)) => return Err(positive(m)),
            Err(e) => return Err(SolveFail::Fatal(e)),
        };
        for (t, sqf) in lifted {
            if let Some(s) = sqf {
                out.push(t.extend(s));
            }
        }
    }
    if let Some(z) = nonzero.filter(|z| (k..z.nvars()).all(|w| !z.involves(w))) {
        out = saturate(out, z, k)?;
    }
    Ok(out)
}

// Keep only the points of each tower where `z` does not vanish.
fn saturate<F: Field>(towers: Vec<Tower<F>>, z: &MultiPoly<F>, depth: usize) -> Result<Vec<Tower<F>>, SolveFail> {
    let vars: Vec<usize> = (0..depth).collect();
    let mut out = Vec::new();
    for t in towers {
        let kept = run_branches(t, &mut |t: &Tower<F>| {
            let e = t.from_multi(depth, z, &vars);
            if Tower::is_zero(&e) {
                return Ok(false);
            }
            t.inv(depth, &e)?;
            Ok(true)
        })?;
        out.extend(kept.into_iter().filter(|(_, keep)| *keep).map(|(t, _)| t));
    }
    Ok(out)
}

/// Convenience: reduce a Q(i) system modulo the first working prime.
pub fn to_modular(p: &MultiPoly) -> Option<MultiPoly<Fp<PRIME_A>>> {
    p.map(Fp::<PRIME_A>::from_scalar)
}

/// Count with both arithmetics; used by tests and the verification suite as
/// an independent cross-check.
pub fn count_both(eqs: &[MultiPoly], nonzero: Option<&MultiPoly>, seed: u64) -> Result<(usize, usize), Error> {
    Ok((
        count_affine_solutions_with(eqs, nonzero, seed, Arith::Exact)?,
        count_affine_solutions_with(eqs, nonzero, seed, Arith::Modular)?,
    ))
}

#[allow(dead_code)]
fn _assert_scalar_field(_: &Scalar) {}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn k(n: usize, c: i64) -> MultiPoly {
        MultiPoly::constant(n, Scalar::from_int(c))
    }

    #[test]
    fn trivial_systems() {
        let sys = [&v(2, 0) - &k(2, 1), &v(2, 1) - &k(2, 2)];
        assert_eq!(count_affine_solutions(&sys, 0).unwrap(), 1);
        let sys = [&v(2, 0).pow(2) - &k(2, 1), &v(2, 1).pow(2) - &k(2, 1)];
        assert_eq!(count_affine_solutions(&sys, 0).unwrap(), 4);
        assert_eq!(count_both(&sys, None, 3).unwrap(), (4, 4));
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 = 1, x = y: two points; tangent line x = 1: one point.
        let circle = &(&v(2, 0).pow(2) + &v(2, 1).pow(2)) - &k(2, 1);
        assert_eq!(count_affine_solutions(&[circle.clone(), &v(2, 0) - &v(2, 1)], 0).unwrap(), 2);
        assert_eq!(count_affine_solutions(&[circle, &v(2, 0) - &k(2, 1)], 0).unwrap(), 1);
    }

    #[test]
    fn positive_dimensional_detected() {
        let f = &v(2, 0) * &v(2, 1);
        let g = &v(2, 0) * &(&v(2, 1) - &k(2, 1));
        // Common component x = 0.
        assert!(matches!(count_affine_solutions(&[f, g], 0), Err(Error::PositiveDimensional(_))));
        assert!(matches!(count_affine_solutions(&[&v(2, 0) - &k(2, 1)], 0), Err(Error::PositiveDimensional(_))));
    }

    #[test]
    fn overdetermined_and_inconsistent() {
        let sys = [&v(2, 0) - &k(2, 1), &v(2, 1) - &k(2, 2), &v(2, 0) + &v(2, 1)];
        assert_eq!(count_affine_solutions(&sys, 0).unwrap(), 0);
        let sys = [&v(2, 0) - &k(2, 1), &v(2, 1) - &k(2, 2), &(&v(2, 0) + &v(2, 1)) - &k(2, 3)];
        assert_eq!(count_affine_solutions(&sys, 0).unwrap(), 1);
    }

    #[test]
    fn three_variables_with_saturation() {
        // x y z = 1 with x = y = z: three cube roots of unity.
        let sys = [
            &(&(&v(3, 0) * &v(3, 1)) * &v(3, 2)) - &k(3, 1),
            &v(3, 0) - &v(3, 1),
            &v(3, 1) - &v(3, 2),
        ];
        assert_eq!(count_affine_solutions(&sys, 1).unwrap(), 3);
        // x^2 = x, y^2 = y, z = x + y, excluding x = 0: points (1,0,1), (1,1,2).
        let sys = [
            &v(3, 0).pow(2) - &v(3, 0),
            &v(3, 1).pow(2) - &v(3, 1),
            &v(3, 2) - &(&v(3, 0) + &v(3, 1)),
        ];
        assert_eq!(count_affine_solutions_with(&sys, Some(&v(3, 0)), 0, Arith::Exact).unwrap(), 2);
        assert_eq!(count_affine_solutions(&sys, 0).unwrap(), 4);
    }

    #[test]
    fn shared_projection_lifts_correctly() {
        // Points (0, 1), (0, -1), (1, 0): two share the same x.
        let x = v(2, 0);
        let y = v(2, 1);
        let f = &(&x.pow(2) + &y.pow(2)) - &k(2, 1);
        let g = &(&x * &y) - &MultiPoly::zero(2);
        let h = &x * &(&x - &k(2, 1));
        assert_eq!(count_affine_solutions(&[f.clone(), g, h], 0).unwrap(), 4 - 1);
        // x^2 + y^2 = 1 and x(x-1) = 0: (0, +-1), (1, 0).
        assert_eq!(count_affine_solutions(&[f, &x * &(&x - &k(2, 1))], 0).unwrap(), 3);
    }
}
