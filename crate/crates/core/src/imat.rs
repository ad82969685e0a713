//! Small dense integer matrices used for exchange matrices, skew forms, and
//! Euler forms.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    rows: usize,
    cols: usize,
    a: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch);
        }
        Ok(IMat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, other: &IMat) -> Result<IMat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += v * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> IMat {
        IMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, other: &IMat) -> Result<IMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(IMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Bilinear pairing `x^T A y`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        if x.len() != self.rows || y.len() != self.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut acc = 0i64;
        for i in 0..self.rows {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.cols {
                acc += x[i] * self[(i, j)] * y[j];
            }
        }
        Ok(acc)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)] != -self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)]).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.to_rows())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<IMat> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        IMat::from_rows(rows)
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.a[i * self.cols + j]
    }
}

/// Solves `A x = b` exactly over the rationals by Gauss–Jordan elimination.
/// Returns one particular solution (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve_rational(a: &IMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let (r, c) = (a.rows, a.cols);
    assert_eq!(b.len(), r);
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..c)
                .map(|j| BigRational::from_integer(BigInt::from(a[(i, j)])))
                .collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..c {
        let Some(p) = (row..r).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= lead.clone();
        }
        for i in 0..r {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=c {
                    let t = f.clone() * m[row][j].clone();
                    m[i][j] -= t;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == r {
            break;
        }
    }
    // Inconsistency: zero row with nonzero rhs.
    for i in row..r {
        if !m[i][c].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); c];
    for (pr, pc) in pivots {
        x[pc] = m[pr][c].clone();
    }
    Some(x)
}

/// Least common multiple of denominators; scales a rational vector to the
/// smallest positive integer multiple that is integral.
pub fn clear_denominators(xs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for x in xs {
        let d = x.denom().abs();
        let g = num_integer::Integer::gcd(&lcm, &d);
        lcm = lcm / g * d;
    }
    let ints = xs
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    (ints, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_pair() {
        let a = IMat::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let b = a.mul(&a).unwrap();
        assert_eq!(b.to_rows(), vec![vec![-1, 0], vec![0, -1]]);
        assert_eq!(a.pair(&[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(a.pair(&[0, 1], &[1, 0]).unwrap(), -1);
        assert!(a.is_skew_symmetric());
    }

    #[test]
    fn rational_solve() {
        let a = IMat::from_rows(vec![vec![2, 0], vec![0, 3]]).unwrap();
        let b = vec![
            BigRational::from_integer(BigInt::from(1)),
            BigRational::from_integer(BigInt::from(1)),
        ];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(x[1], BigRational::new(BigInt::from(1), BigInt::from(3)));

        let sing = IMat::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        let bad = vec![
            BigRational::from_integer(BigInt::from(0)),
            BigRational::from_integer(BigInt::from(1)),
        ];
        assert!(solve_rational(&sing, &bad).is_none());
    }
}
