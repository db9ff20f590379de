//! Roots of univariate polynomials that lie in Q(i).
//!
//! Roots are found modulo a prime `p = 1 mod 4` under both embeddings
//! `i -> +iota` and `i -> -iota`, lifted p-adically, paired into candidate
//! `a + b i`, reconstructed as rationals and verified exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modular::{self, poly, primes_one_mod_four, reduce_bigint, sqrt_minus_one};
use super::scalar::Scalar;
use super::unipoly::UniPoly;

/// All distinct roots of `f` in Q(i), sorted by their printed form.
/// The zero polynomial has no listed roots.
pub fn gaussian_rational_roots(f: &UniPoly) -> Vec<Scalar> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut g = f.squarefree_part().unwrap();
    let mut roots = Vec::new();
    if g.coeff(0).is_zero() {
        roots.push(Scalar::zero());
        g = g.div_rem(&UniPoly::x()).unwrap().0;
    }
    match g.degree() {
        Some(0) | None => {}
        Some(1) => roots.push(&(-g.coeff(0)) / &g.coeff(1)),
        Some(_) => roots.extend(padic_roots(&g)),
    }
    roots.sort_by_key(|r| r.to_string());
    roots
}

fn integral_coefficients(g: &UniPoly) -> Vec<(BigInt, BigInt)> {
    let mut l = BigInt::one();
    for c in g.coeffs() {
        l = l.lcm(c.denom());
    }
    g.coeffs()
        .iter()
        .map(|c| {
            let s = c.mul_bigint(&l);
            let (re, im, _) = s.parts();
            (re.clone(), im.clone())
        })
        .collect()
}

// Image of the Gaussian-integer polynomial under i -> iota modulo m.
fn embed(coeffs: &[(BigInt, BigInt)], iota: &BigInt, m: &BigInt) -> Vec<BigInt> {
    coeffs.iter().map(|(re, im)| (re + im * iota).mod_floor(m)).collect()
}

fn embed_mod_p(coeffs: &[(BigInt, BigInt)], iota: u64, p: u64) -> Vec<u64> {
    poly::trim(
        coeffs
            .iter()
            .map(|(re, im)| (reduce_bigint(re, p) + modular::mul_mod(reduce_bigint(im, p), iota, p)) % p)
            .collect(),
    )
}

fn eval_big(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for a in c.iter().rev() {
        acc = (acc * x + a).mod_floor(m);
    }
    acc
}

fn deriv_big(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect()
}

fn padic_roots(g: &UniPoly) -> Vec<Scalar> {
    let coeffs = integral_coefficients(g);
    let n = coeffs.len() - 1;
    let norm_bits = |c: &(BigInt, BigInt)| (&c.0 * &c.0 + &c.1 * &c.1).bits() / 2 + 1;
    // Numerators are bounded by |g_0||g_n| and denominators by |g_n|^2, and
    // reconstruction needs both below sqrt(m/2).
    let (b0, bn) = (norm_bits(&coeffs[0]), norm_bits(&coeffs[n]));
    let target_bits = 2 * (b0 + bn).max(2 * bn) + 8;

    let mut lcg = 0x853c49e6748fea9bu64;
    let mut next = move || {
        lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        lcg >> 11
    };
    for p in primes_one_mod_four(1 << 31) {
        let iota = sqrt_minus_one(p);
        let f1 = embed_mod_p(&coeffs, iota, p);
        let f2 = embed_mod_p(&coeffs, p - iota, p);
        if f1.len() != n + 1 || f2.len() != n + 1 {
            continue;
        }
        if poly::gcd(&f1, &poly::derivative(&f1, p), p).len() != 1
            || poly::gcd(&f2, &poly::derivative(&f2, p), p).len() != 1
        {
            continue;
        }
        let r1 = poly::roots(&f1, p, &mut next);
        let r2 = poly::roots(&f2, p, &mut next);
        if r1.is_empty() || r2.is_empty() {
            return Vec::new();
        }
        // Lift iota and the roots of both embeddings by Newton iteration.
        let mut m = BigInt::from(p);
        let mut io = BigInt::from(iota);
        let mut l1: Vec<BigInt> = r1.iter().map(|&r| BigInt::from(r)).collect();
        let mut l2: Vec<BigInt> = r2.iter().map(|&r| BigInt::from(r)).collect();
        while m.bits() < target_bits {
            m = &m * &m;
            let num = (&io * &io + BigInt::one()).mod_floor(&m);
            let den = (BigInt::from(2) * &io).mod_floor(&m);
            io = (&io - num * den.modinv(&m).unwrap()).mod_floor(&m);
            let neg_io = (-&io).mod_floor(&m);
            for (lifted, iota_k) in [(&mut l1, &io), (&mut l2, &neg_io)] {
                let c = embed(&coeffs, iota_k, &m);
                let dc = deriv_big(&c);
                for r in lifted.iter_mut() {
                    let fx = eval_big(&c, r, &m);
                    let dfx = eval_big(&dc, r, &m);
                    let inv = dfx.modinv(&m).unwrap();
                    *r = (&*r - fx * inv).mod_floor(&m);
                }
            }
        }
        let inv2 = BigInt::from(2).modinv(&m).unwrap();
        let inv2i = (BigInt::from(2) * &io).modinv(&m).unwrap();
        let mut out = Vec::new();
        for a1 in &l1 {
            for a2 in &l2 {
                let a = ((a1 + a2) * &inv2).mod_floor(&m);
                let b = ((a1 - a2) * &inv2i).mod_floor(&m);
                let (Some(ra), Some(rb)) =
                    (modular::rational_reconstruct(&a, &m), modular::rational_reconstruct(&b, &m))
                else {
                    continue;
                };
                let cand = Scalar::new(&ra, &rb);
                if g.eval(&cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
        return out;
    }
    unreachable!("no usable prime below 2^31")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(rs: &[Scalar], extra: &UniPoly) -> UniPoly {
        let mut f = extra.clone();
        for r in rs {
            f = f.mul(&UniPoly::new(vec![-r, Scalar::one()]));
        }
        f
    }

    #[test]
    fn finds_gaussian_roots() {
        let rs = vec![
            Scalar::parse("3/7+2i").unwrap(),
            Scalar::parse("-5").unwrap(),
            Scalar::parse("1/2-1/3i").unwrap(),
            Scalar::zero(),
        ];
        // Times an irreducible cubic contributing no Q(i) roots.
        let f = from_roots(&rs, &UniPoly::from_ints(&[2, 0, 0, 1]));
        let mut expected = rs.clone();
        expected.sort_by_key(|r| r.to_string());
        assert_eq!(gaussian_rational_roots(&f), expected);
    }

    #[test]
    fn imaginary_unit_roots() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(gaussian_rational_roots(&f), vec![-Scalar::i(), Scalar::i()]);
        assert!(gaussian_rational_roots(&UniPoly::from_ints(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn repeated_roots_listed_once() {
        let f = UniPoly::from_ints(&[-1, 1]).pow(3).mul(&UniPoly::from_ints(&[4, 1]));
        assert_eq!(gaussian_rational_roots(&f), vec![Scalar::from_int(-4), Scalar::one()]);
    }
}
