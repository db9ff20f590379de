//! Sylvester resultants of multivariate polynomials.
//!
//! The determinant is evaluated at integer points of the remaining variables
//! and the result is recovered by Newton interpolation, one variable at a time.

use super::field::Field;
use super::multipoly::MultiPoly;
use crate::Error;

/// Sylvester matrix of two coefficient lists (lowest degree first) whose
/// formal degrees are `f.len() - 1` and `g.len() - 1`.
pub fn sylvester<F: Field>(f: &[F], g: &[F]) -> Vec<Vec<F>> {
    let df = f.len() - 1;
    let dg = g.len() - 1;
    let n = df + dg;
    let mut m = vec![vec![F::zero(); n]; n];
    for i in 0..dg {
        for (k, c) in f.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..df {
        for (k, c) in g.iter().rev().enumerate() {
            m[dg + i][i + k] = c.clone();
        }
    }
    m
}

/// Resultant of two univariate coefficient lists with formal degrees.
pub fn resultant_coeffs<F: Field>(f: &[F], g: &[F]) -> F {
    if f.len() <= 1 && g.len() <= 1 {
        return F::one();
    }
    if f.len() == 1 {
        return pow(&f[0], g.len() - 1);
    }
    if g.len() == 1 {
        return pow(&g[0], f.len() - 1);
    }
    F::det(sylvester(f, g))
}

fn pow<F: Field>(x: &F, e: usize) -> F {
    let mut acc = F::one();
    for _ in 0..e {
        acc = acc.times(x);
    }
    acc
}

/// `Res_var(f, g)`: the Sylvester determinant with respect to `x_var`, as a
/// polynomial in the other variables (same variable count, `x_var` absent).
pub fn resultant<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, var: usize) -> Result<MultiPoly<F>, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroOperand);
    }
    assert_eq!(f.nvars(), g.nvars(), "variable count mismatch");
    let n = f.nvars();
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    if fc.len() == 1 && gc.len() == 1 {
        return Ok(MultiPoly::one(n));
    }
    if fc.len() == 1 {
        return Ok(fc[0].pow(gc.len() as u32 - 1));
    }
    if gc.len() == 1 {
        return Ok(gc[0].pow(fc.len() as u32 - 1));
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != var && (f.involves(v) || g.involves(v))).collect();
    Ok(res_rec(&fc, &gc, &others, n))
}

fn res_rec<F: Field>(fc: &[MultiPoly<F>], gc: &[MultiPoly<F>], vars: &[usize], n: usize) -> MultiPoly<F> {
    let Some((&w, rest)) = vars.split_last() else {
        let a: Vec<F> = fc.iter().map(|c| c.constant_term()).collect();
        let b: Vec<F> = gc.iter().map(|c| c.constant_term()).collect();
        return MultiPoly::constant(n, resultant_coeffs(&a, &b));
    };
    let df = (fc.len() - 1) as u32;
    let dg = (gc.len() - 1) as u32;
    let mf = fc.iter().filter_map(|c| c.degree_in(w)).max().unwrap_or(0);
    let mg = gc.iter().filter_map(|c| c.degree_in(w)).max().unwrap_or(0);
    let bound = dg * mf + df * mg;
    if bound == 0 {
        return res_rec(fc, gc, rest, n);
    }
    let xs: Vec<F> = (0..=bound as i64).map(F::from_i64).collect();
    let values: Vec<MultiPoly<F>> = xs
        .iter()
        .map(|x| {
            let fe: Vec<MultiPoly<F>> = fc.iter().map(|c| c.partial_eval(w, x)).collect();
            let ge: Vec<MultiPoly<F>> = gc.iter().map(|c| c.partial_eval(w, x)).collect();
            res_rec(&fe, &ge, rest, n)
        })
        .collect();
    newton_interpolate(&xs, values, w, n)
}

/// Polynomial in `x_w` taking the given (polynomial) values at `xs`.
pub fn newton_interpolate<F: Field>(xs: &[F], mut c: Vec<MultiPoly<F>>, w: usize, n: usize) -> MultiPoly<F> {
    let m = xs.len();
    for level in 1..m {
        for i in (level..m).rev() {
            let denom = xs[i].minus(&xs[i - level]).recip().unwrap();
            let diff = &c[i] - &c[i - 1];
            c[i] = diff.scale(&denom);
        }
    }
    let wvar = MultiPoly::var(n, w);
    let mut acc = c[m - 1].clone();
    for i in (0..m - 1).rev() {
        let shift = &wvar - &MultiPoly::constant(n, xs[i].clone());
        acc = &(&acc * &shift) + &c[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::{Fp, PRIME_A};
    use crate::exactcore::Scalar;

    fn v(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn k(n: usize, c: i64) -> MultiPoly {
        MultiPoly::constant(n, Scalar::from_int(c))
    }

    #[test]
    fn linear_resultant() {
        let f = &v(1, 0) - &k(1, 1);
        let g = &v(1, 0) - &k(1, 2);
        assert_eq!(resultant(&f, &g, 0).unwrap(), k(1, -1));
    }

    #[test]
    fn common_factor_resultant_vanishes() {
        let f = &v(1, 0).pow(2) + &k(1, 1);
        assert!(resultant(&f, &f, 0).unwrap().is_zero());
        assert_eq!(resultant(&f, &MultiPoly::zero(1), 0), Err(Error::ZeroOperand));
    }

    #[test]
    fn quadric_cubic_resultant() {
        // Res_z(z^2 + A, z^3 + B) = prod over z = +-sqrt(-A) of (z^3 + B) = B^2 + A^3.
        let a = &v(3, 0).pow(2) + &v(3, 1).pow(2);
        let b = &v(3, 0).pow(3) + &v(3, 1).pow(3);
        let f = &v(3, 2).pow(2) + &a;
        let g = &v(3, 2).pow(3) + &b;
        let r = resultant(&f, &g, 2).unwrap();
        assert_eq!(r, &b.pow(2) + &a.pow(3));
    }

    #[test]
    fn modular_resultant_matches() {
        type F = Fp<PRIME_A>;
        let f = &(&v(2, 0).pow(2) * &v(2, 1)) + &(&v(2, 1).pow(3) - &k(2, 7));
        let g = &(&v(2, 0) * &v(2, 1).pow(2)) - &v(2, 0).pow(3);
        let exact = resultant(&f, &g, 1).unwrap();
        let red = |p: &MultiPoly| p.map(F::from_scalar).unwrap();
        assert_eq!(resultant(&red(&f), &red(&g), 1).unwrap(), red(&exact));
    }
}
