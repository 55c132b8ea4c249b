//! Dense matrices over the Gaussian rationals.
//!
//! Vectors are column vectors; a matrix acts on the left.  Everything is
//! exact, so ranks, determinants and nilpotency are decided without
//! tolerance parameters.

use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Parses a row-major grid of integer entries; handy in tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| GaussianRational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    /// True when every entry has vanishing imaginary part.
    pub fn is_rational(&self) -> bool {
        self.data.iter().all(GaussianRational::is_rational)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(GaussianRational::conjugate).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = Self::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let cur = out.get(r, c) + &(a * rhs.get(k, c));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for (entry, coord) in self.row(r).iter().zip(v) {
                    if !coord.is_zero() {
                        acc += entry * coord;
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> GaussianRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return GaussianRational::zero();
            };
            if pivot != col {
                for c in 0..n {
                    let a = m.get(pivot, c).clone();
                    let b = m.get(col, c).clone();
                    m.set(pivot, c, b);
                    m.set(col, c, a);
                }
                det = -det;
            }
            let p = m.get(col, col).clone();
            det *= p.clone();
            let inv = p.inverse().expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = m.get(r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Determinant of the top-left `k` by `k` block.
    pub fn leading_principal_minor(&self, k: usize) -> GaussianRational {
        assert!(k <= self.rows && k <= self.cols);
        let mut sub = Self::zero(k, k);
        for r in 0..k {
            for c in 0..k {
                sub.set(r, c, self.get(r, c).clone());
            }
        }
        sub.determinant()
    }

    /// `exp(z * self)` for nilpotent `self`: the series terminates exactly.
    pub fn exp_scaled_nilpotent(&self, z: &GaussianRational) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut out = Self::identity(n);
        let mut term = Self::identity(n);
        let mut factorial = Rational::from_integer(1.into());
        for k in 1..=n {
            term = term.mul(self).scale(z);
            if term.is_zero() {
                break;
            }
            factorial *= Rational::from_integer(k.into());
            let coeff = GaussianRational::from_rational(
                Rational::from_integer(1.into()) / factorial.clone(),
            );
            out = out.add(&term.scale(&coeff));
        }
        out
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_powers() {
        let j = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(!j.pow(2).is_zero());
        assert!(j.pow(3).is_zero());
        assert_eq!(j.determinant(), GaussianRational::zero());

        let m = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant(), GaussianRational::from_int(1));
    }

    #[test]
    fn exp_of_nilpotent_is_polynomial() {
        // N e2 = e1 as columns: N[0][1] = 1.
        let n = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let z = GaussianRational::i();
        let e = n.exp_scaled_nilpotent(&z);
        assert_eq!(e.get(0, 0), &GaussianRational::one());
        assert_eq!(e.get(0, 1), &GaussianRational::i());
        assert_eq!(e.get(1, 1), &GaussianRational::one());
    }

    #[test]
    fn minors() {
        let m = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]);
        assert_eq!(m.leading_principal_minor(1), GaussianRational::from_int(1));
        assert_eq!(m.leading_principal_minor(2), GaussianRational::from_int(2));
        assert_eq!(m.leading_principal_minor(3), GaussianRational::from_int(-6));
    }
}
