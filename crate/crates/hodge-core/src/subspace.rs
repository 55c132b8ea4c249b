//! Subspaces of `Q(i)^d` in canonical reduced row-echelon form.
//!
//! A subspace stores a basis as the rows of a fully reduced matrix: pivots
//! are 1, pivot columns are otherwise zero, and rows are ordered by pivot
//! column.  Canonical form makes equality structural and keeps every
//! operation deterministic.

use crate::matrix::Matrix;
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<GaussianRational>>,
}

/// Reduces `rows` to canonical RREF, dropping zero rows.
fn rref(rows: &mut Vec<Vec<GaussianRational>>, width: usize) {
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].inverse().expect("nonzero pivot");
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (cell, pv) in row.iter_mut().zip(&pivot) {
                    let delta = &factor * pv;
                    *cell = &*cell - &delta;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![GaussianRational::zero(); ambient];
                v[i] = GaussianRational::one();
                v
            }),
        )
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<GaussianRational>>,
    {
        let mut rows: Vec<Vec<GaussianRational>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .collect();
        rref(&mut rows, ambient);
        Self {
            ambient,
            basis: rows,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<GaussianRational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        Self::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Intersection via the relation `x = sum a_i u_i = sum b_j w_j`: the
    /// kernel of `[U^T | -W^T]` parameterizes the common vectors.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        let k = self.dim();
        let m = other.dim();
        let mut stacked = Matrix::zero(self.ambient, k + m);
        for (j, v) in self.basis.iter().enumerate() {
            for (r, entry) in v.iter().enumerate() {
                stacked.set(r, j, entry.clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (r, entry) in v.iter().enumerate() {
                stacked.set(r, k + j, -entry.clone());
            }
        }
        let coeffs = Self::kernel(&stacked);
        let vectors = coeffs.basis.iter().map(|cv| {
            let mut x = vec![GaussianRational::zero(); self.ambient];
            for (j, v) in self.basis.iter().enumerate() {
                if cv[j].is_zero() {
                    continue;
                }
                for (r, entry) in v.iter().enumerate() {
                    x[r] += &cv[j] * entry;
                }
            }
            x
        });
        let vectors: Vec<_> = vectors.collect();
        Self::span(self.ambient, vectors)
    }

    /// Null space `{ v : m v = 0 }` of a matrix acting on column vectors.
    pub fn kernel(m: &Matrix) -> Self {
        let width = m.cols();
        let mut rows: Vec<Vec<GaussianRational>> =
            (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        rref(&mut rows, width);
        let mut pivots = Vec::new();
        for row in &rows {
            let col = row.iter().position(|v| !v.is_zero()).expect("no zero rows");
            pivots.push(col);
        }
        let mut basis = Vec::new();
        for free in 0..width {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); width];
            v[free] = GaussianRational::one();
            for (row, &piv) in rows.iter().zip(&pivots) {
                v[piv] = -row[free].clone();
            }
            basis.push(v);
        }
        Self::span(width, basis)
    }

    /// Column span of a matrix, i.e. its image as an operator.
    pub fn column_space(m: &Matrix) -> Self {
        let t = m.transpose();
        Self::span(m.rows(), (0..t.rows()).map(|r| t.row(r).to_vec()))
    }

    /// Image of this subspace under a linear map.
    pub fn apply(&self, m: &Matrix) -> Self {
        assert_eq!(m.cols(), self.ambient);
        Self::span(m.rows(), self.basis.iter().map(|v| m.apply(v)))
    }

    /// `{ v : m v in target }`, computed as the kernel of `R m` where `R`
    /// is a linear map whose kernel is exactly `target`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Self {
        assert_eq!(m.rows(), target.ambient);
        let r = target.residue_map();
        Self::kernel(&r.mul(m))
    }

    /// Entry-wise conjugate of the subspace.
    pub fn conjugate(&self) -> Self {
        Self::span(
            self.ambient,
            self.basis
                .iter()
                .map(|v| v.iter().map(GaussianRational::conjugate).collect()),
        )
    }

    /// `{ v : q(b, v) = 0 for every basis vector b }` with `q(u, v) = u^T Q v`.
    pub fn perp_under(&self, q: &Matrix) -> Self {
        assert_eq!(q.rows(), self.ambient);
        assert_eq!(q.cols(), self.ambient);
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        let mut rows = Vec::with_capacity(self.dim());
        for b in &self.basis {
            rows.push((0..self.ambient).map(|c| {
                let mut acc = GaussianRational::zero();
                for (r, entry) in b.iter().enumerate() {
                    if !entry.is_zero() {
                        acc += entry * q.get(r, c);
                    }
                }
                acc
            }));
        }
        let rows: Vec<Vec<GaussianRational>> = rows.into_iter().map(Iterator::collect).collect();
        Self::kernel(&Matrix::from_rows(rows))
    }

    /// Reduces a vector against the basis; the result is zero iff the
    /// vector lies in the subspace.
    fn residue(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut r = v.to_vec();
        for row in &self.basis {
            let piv = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
            if r[piv].is_zero() {
                continue;
            }
            let factor = r[piv].clone();
            for c in 0..self.ambient {
                let delta = &factor * &row[c];
                r[c] = &r[c] - &delta;
            }
        }
        r
    }

    /// Matrix of the residue map; its kernel is exactly this subspace.
    fn residue_map(&self) -> Matrix {
        let d = self.ambient;
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut e = vec![GaussianRational::zero(); d];
            e[j] = GaussianRational::one();
            cols.push(self.residue(&e));
        }
        let mut m = Matrix::zero(d, d);
        for (j, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, j, v.clone());
            }
        }
        m
    }

    pub fn contains_vector(&self, v: &[GaussianRational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.residue(v).iter().all(GaussianRational::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.basis.iter().all(|v| other.contains_vector(v))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)?;
        for row in &self.basis {
            let s: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, " [{}]", s.join(", "))?;
        }
        Ok(())
    }
}
