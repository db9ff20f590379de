//! Dense matrices over Q(i) with fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Field;
use super::scalar::Scalar;
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Row echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut m = ExactMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += &(a * o.get(k, j));
                    }
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    // Scale every row to Gaussian-integer entries; returns the product of the
    // scale factors.
    fn integral_rows(&self) -> (Vec<Vec<Scalar>>, BigInt) {
        let mut total = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut l = BigInt::one();
                for x in &row {
                    l = l.lcm(x.denom());
                }
                if l.is_one() {
                    row
                } else {
                    total *= &l;
                    row.iter().map(|x| x.mul_bigint(&l)).collect()
                }
            })
            .collect();
        (rows, total)
    }

    // Bareiss elimination; the pivot of each column is the first nonzero
    // entry at or below the current row.
    fn echelon(&self) -> (Echelon, BigInt) {
        let (mut a, scale) = self.integral_rows();
        let mut prev = Scalar::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let prow = &top[r];
            for row in bottom.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..self.cols {
                    let t = &(&prow[c] * &row[j]) - &(&factor * &prow[j]);
                    row[j] = t.div_exact_integral(&prev);
                }
                row[c] = Scalar::zero();
            }
            // Entries left of the pivot column in earlier columns were
            // already eliminated; keep the stored row consistent.
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (Echelon { rows: a, pivots, swaps }, scale)
    }

    pub fn rank(&self) -> usize {
        self.echelon().0.pivots.len()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Scalar, Error> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let (e, scale) = self.echelon();
        if e.pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let mut d = e.rows[self.rows - 1][self.cols - 1].clone();
        if e.swaps % 2 == 1 {
            d = -d;
        }
        Ok(&d / &Scalar::from_bigint(scale))
    }

    /// Basis of the null space, each vector scaled to coprime Gaussian
    /// integers. Every vector is checked to annihilate the matrix.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (e, _) = self.echelon();
        let rank = e.pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Scalar::zero(); self.cols];
            x[f] = Scalar::one();
            for k in (0..rank).rev() {
                let pc = e.pivots[k];
                let mut acc = Scalar::zero();
                for l in pc + 1..self.cols {
                    if !x[l].is_zero() && !e.rows[k][l].is_zero() {
                        acc += &(&e.rows[k][l] * &x[l]);
                    }
                }
                x[pc] = &(-acc) / &e.rows[k][pc];
            }
            basis.push(primitive_vector(&x));
        }
        assert_eq!(rank + basis.len(), self.cols, "rank-nullity violated");
        debug_assert!(basis.iter().all(|v| self.mul_vec(v).iter().all(|y| y.is_zero())));
        basis
    }

    pub fn inverse(&self) -> Result<ExactMatrix, Error> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::Invalid("inverse of a non-square matrix".into()));
        }
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (e, _) = aug.echelon();
        if e.pivots.iter().take_while(|&&p| p < n).count() < n {
            return Err(Error::SingularMatrix);
        }
        // Back substitution on the echelon rows.
        let mut rows = e.rows;
        for k in (0..n).rev() {
            let inv = rows[k][k].inv().unwrap();
            for j in 0..2 * n {
                rows[k][j] = &rows[k][j] * &inv;
            }
            for i in 0..k {
                let f = rows[i][k].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let t = &f * &rows[k][j];
                    rows[i][j] -= &t;
                }
            }
        }
        Ok(ExactMatrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }
}

/// Scale a nonzero vector to coprime Gaussian-integer entries whose first
/// nonzero entry has positive real part (or is a positive multiple of i).
pub fn primitive_vector(v: &[Scalar]) -> Vec<Scalar> {
    use num_traits::Signed;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let w: Vec<Scalar> = v.iter().map(|x| x.mul_bigint(&l)).collect();
    let mut g = BigInt::zero();
    for x in &w {
        let (re, im, _) = x.parts();
        g = g.gcd(re).gcd(im);
    }
    if g.is_zero() {
        return w;
    }
    let mut sign = BigInt::one();
    if let Some(first) = w.iter().find(|x| !x.is_zero()) {
        let (re, im, _) = first.parts();
        if re.is_negative() || (re.is_zero() && im.is_negative()) {
            sign = -sign;
        }
    }
    let d = Scalar::from_parts(sign, BigInt::zero(), g);
    w.iter().map(|x| x * &d).collect()
}

/// Null-space basis over an arbitrary field via reduced row echelon form.
pub fn field_kernel<F: Field>(mut rows: Vec<Vec<F>>, cols: usize) -> Vec<Vec<F>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].recip().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.times(&inv);
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                if !y.is_zero() {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); cols];
            x[f] = F::one();
            for (k, &pc) in pivots.iter().enumerate() {
                x[pc] = rows[k][f].negate();
            }
            x
        })
        .collect()
}

/// Rank over an arbitrary field.
pub fn field_rank<F: Field>(rows: Vec<Vec<F>>, cols: usize) -> usize {
    cols - field_kernel(rows, cols).len()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::{Fp, PRIME_A};

    #[test]
    fn kernel_shapes() {
        assert!(ExactMatrix::identity(3).kernel().is_empty());
        assert_eq!(ExactMatrix::zeros(2, 3).kernel().len(), 3);
    }

    #[test]
    fn conic_through_five_points() {
        let pts = [(0, 1, 1), (1, 0, 1), (2, 3, 1), (-1, 4, 2), (5, -2, 3)];
        let rows: Vec<Vec<Scalar>> = pts
            .iter()
            .map(|&(a, b, c)| {
                [a * a, a * b, a * c, b * b, b * c, c * c].iter().map(|&v| Scalar::from_int(v)).collect()
            })
            .collect();
        let m = ExactMatrix::from_rows(rows.clone());
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for row in &rows {
            let mut acc = Scalar::zero();
            for (x, y) in row.iter().zip(&k[0]) {
                acc += &(x * y);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let m = ExactMatrix::from_ints(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        assert_eq!(m.det().unwrap(), Scalar::from_int(-4));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(3));
        let half = ExactMatrix::from_rows(vec![
            vec![Scalar::from_ratio(1, 2), Scalar::i()],
            vec![Scalar::from_int(3), Scalar::from_ratio(-1, 3)],
        ]);
        let expected = &(&Scalar::from_ratio(1, 2) * &Scalar::from_ratio(-1, 3)) - &(&Scalar::i() * &Scalar::from_int(3));
        assert_eq!(half.det().unwrap(), expected);
        assert_eq!(ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn modular_kernel_agrees() {
        let m = ExactMatrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let k = m.kernel();
        type F = Fp<PRIME_A>;
        let rows: Vec<Vec<F>> =
            m.to_rows().iter().map(|r| r.iter().map(|x| F::from_scalar(x).unwrap()).collect()).collect();
        assert_eq!(field_kernel(rows, 4).len(), k.len());
    }
}
