//! Word-size modular arithmetic with a runtime modulus, and the integer
//! reconstruction tools (CRT, rational reconstruction) that go with it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::Scalar;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
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

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes `p = 1 mod 4` below `start`, in decreasing order.
pub fn primes_one_mod_four(start: u64) -> impl Iterator<Item = u64> {
    let mut p = start - (start % 4) + 1;
    if p >= start {
        p -= 4;
    }
    std::iter::from_fn(move || {
        while p > 5 {
            let c = p;
            p -= 4;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    })
}

/// A square root of -1 modulo a prime `p = 1 mod 4`.
pub fn sqrt_minus_one(p: u64) -> u64 {
    let mut z = 2;
    loop {
        if pow_mod(z, (p - 1) / 2, p) == p - 1 {
            return pow_mod(z, (p - 1) / 4, p);
        }
        z += 1;
    }
}

pub fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Image of a Gaussian rational under `i -> iota`; `None` if `p` divides
/// the denominator.
pub fn reduce_scalar(s: &Scalar, p: u64, iota: u64) -> Option<u64> {
    let (re, im, den) = s.parts();
    let d = inv_mod(reduce_bigint(den, p), p)?;
    let v = (reduce_bigint(re, p) as u128 + mul_mod(reduce_bigint(im, p), iota, p) as u128) % p as u128;
    Some(mul_mod(v as u64, d, p))
}

/// Combine `x = a mod m` with `x = b mod p`, returning the residue mod `m*p`
/// in `[0, m*p)`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let am = reduce_bigint(a, p);
    let mm = reduce_bigint(m, p);
    let t = mul_mod((b + p - am) % p, inv_mod(mm, p).unwrap(), p);
    a + m * BigInt::from(t)
}

/// Wang's rational reconstruction: `n/d = a mod m` with `|n|, d < sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Null-space basis of a matrix over Z/p, one vector per free column, with
/// that column's entry equal to 1. Also returns the free columns.
pub fn kernel_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p).unwrap();
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p - mul_mod(f, *y, p)) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[k][f]) % p;
            }
            v
        })
        .collect();
    (basis, free)
}

/// Dense polynomials over Z/p (lowest degree first, trimmed).
pub mod poly {
    use super::{inv_mod, mul_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p).unwrap();
        let mut r = a.to_vec();
        while r.len() > db {
            let top = r.len() - 1;
            let c = mul_mod(r[top], inv, p);
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    let idx = top - db + j;
                    r[idx] = (r[idx] + p - mul_mod(c, y, p)) % p;
                }
            }
            r.pop();
            r = trim(r);
            if r.len() <= db {
                break;
            }
        }
        trim(r)
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = inv_mod(l, p).unwrap();
                a.iter().map(|&x| mul_mod(x, inv, p)).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect())
    }

    /// `base^e mod m`.
    pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    /// All roots in Z/p of a squarefree polynomial, by equal-degree splitting.
    pub fn roots(f: &[u64], p: u64, mut next: impl FnMut() -> u64) -> Vec<u64> {
        let f = monic(f, p);
        if f.len() <= 1 {
            return Vec::new();
        }
        // Product of the distinct linear factors: gcd(f, x^p - x).
        let xp = pow_rem(&[0, 1], p, &f, p);
        let h = gcd(&f, &sub(&xp, &[0, 1], p), p);
        let mut out = Vec::new();
        let mut stack = vec![h];
        while let Some(g) = stack.pop() {
            match g.len() {
                0 | 1 => {}
                2 => out.push((p - g[0]) % p),
                _ => loop {
                    let d = next() % p;
                    let w = pow_rem(&[d, 1], (p - 1) / 2, &g, p);
                    let s = gcd(&g, &sub(&w, &[1], p), p);
                    if s.len() > 1 && s.len() < g.len() {
                        let (q, _) = div_rem(&g, &s, p);
                        stack.push(s);
                        stack.push(q);
                        break;
                    }
                },
            }
        }
        out.sort_unstable();
        debug_assert!(out.iter().all(|&r| eval(&f, r, p) == 0));
        out
    }

    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p).unwrap();
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + db], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, y, p)) % p;
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots_of_minus_one() {
        let ps: Vec<u64> = primes_one_mod_four(1 << 31).take(3).collect();
        for &p in &ps {
            assert!(is_prime(p) && p % 4 == 1);
            let i = sqrt_minus_one(p);
            assert_eq!(mul_mod(i, i, p), p - 1);
        }
        assert!(is_prime(4611686018427387817));
        assert!(!is_prime(4611686018427387819));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let target = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let a = (target.numer() * BigInt::from(113).modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(target));
    }

    #[test]
    fn crt_combines() {
        let x = crt(&BigInt::from(3), &BigInt::from(7), 4, 11);
        assert_eq!(x.mod_floor(&BigInt::from(7)), BigInt::from(3));
        assert_eq!(x.mod_floor(&BigInt::from(11)), BigInt::from(4));
    }

    #[test]
    fn modular_roots() {
        let p = 1_000_000_009 % 4 == 1;
        assert!(p);
        let q = 1_000_000_009u64;
        // (x-3)(x-10)(x+5)
        let f = poly::mul(&poly::mul(&[q - 3, 1], &[q - 10, 1], q), &[5, 1], q);
        let mut s = 1u64;
        let r = poly::roots(&f, q, || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            s >> 11
        });
        assert_eq!(r, vec![3, 10, q - 5]);
    }
}
