//! Filtrations of an exact vector space, and the weight filtration attached
//! to a nilpotent endomorphism.
//!
//! A nilpotent `N` determines a unique increasing filtration `W(N)` with
//! `N(W_l)` inside `W_{l-2}` and `N^l` an isomorphism from the level-`l`
//! graded piece onto the level-`(-l)` one.  The primary construction here
//! reads it off kernels and images of the powers of `N`; an independent
//! inductive construction is kept alongside as a cross-check.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::subspace::Subspace;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("matrix of size {0}x{1} is not square")]
    NotSquare(usize, usize),
    #[error("endomorphism is not nilpotent")]
    NotNilpotent,
    #[error("filtration pieces are not nested at index {0}")]
    NotNested(i64),
    #[error("increasing filtration does not top out at the ambient space")]
    TopNotFull,
    #[error("filtration indices must be contiguous")]
    SparseIndices,
}

/// An increasing filtration `W_l` of `Q(i)^d`.  Indices below the stored
/// range read as the zero subspace, indices above as the full space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncreasingFiltration {
    ambient: usize,
    pieces: BTreeMap<i64, Subspace>,
}

impl IncreasingFiltration {
    pub fn new(
        ambient: usize,
        pieces: BTreeMap<i64, Subspace>,
    ) -> Result<Self, FiltrationError> {
        let keys: Vec<i64> = pieces.keys().copied().collect();
        if let (Some(&lo), Some(&hi)) = (keys.first(), keys.last()) {
            if keys.len() as i64 != hi - lo + 1 {
                return Err(FiltrationError::SparseIndices);
            }
        }
        let mut prev: Option<(&i64, &Subspace)> = None;
        for (l, s) in &pieces {
            if let Some((_, p)) = prev {
                if !p.is_subspace_of(s) {
                    return Err(FiltrationError::NotNested(*l));
                }
            }
            prev = Some((l, s));
        }
        match pieces.values().next_back() {
            Some(top) if !top.is_full() => return Err(FiltrationError::TopNotFull),
            None | Some(_) => {}
        }
        Ok(Self { ambient, pieces })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn min_index(&self) -> Option<i64> {
        self.pieces.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.pieces.keys().next_back().copied()
    }

    pub fn at(&self, l: i64) -> Subspace {
        match (self.min_index(), self.max_index()) {
            (Some(lo), Some(hi)) => {
                if l < lo {
                    Subspace::zero(self.ambient)
                } else if l > hi {
                    self.pieces[&hi].clone()
                } else {
                    self.pieces[&l].clone()
                }
            }
            _ => Subspace::zero(self.ambient),
        }
    }

    /// Reindexes so that position `l` holds the old piece at `l - k`; the
    /// usual way to move a filtration centered at zero up to weight `k`.
    pub fn shifted_by(&self, k: i64) -> Self {
        Self {
            ambient: self.ambient,
            pieces: self
                .pieces
                .iter()
                .map(|(&l, s)| (l + k, s.clone()))
                .collect(),
        }
    }

    /// Dimension of the graded piece `W_l / W_{l-1}`.
    pub fn graded_dim(&self, l: i64) -> usize {
        self.at(l).dim() - self.at(l - 1).dim()
    }
}

/// A decreasing filtration `F^p` of `Q(i)^d`.  Indices at or below zero
/// read as the full space, indices above the stored range as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeFiltration {
    ambient: usize,
    pieces: BTreeMap<i64, Subspace>,
}

impl HodgeFiltration {
    /// `pieces` holds `F^p` for `p = 1..=p_max`; `F^0` is implied ambient.
    pub fn new(ambient: usize, pieces: BTreeMap<i64, Subspace>) -> Result<Self, FiltrationError> {
        let keys: Vec<i64> = pieces.keys().copied().collect();
        if let (Some(&lo), Some(&hi)) = (keys.first(), keys.last()) {
            if lo != 1 || keys.len() as i64 != hi - lo + 1 {
                return Err(FiltrationError::SparseIndices);
            }
        }
        let mut prev: Option<&Subspace> = None;
        for (p, s) in &pieces {
            if let Some(bigger) = prev {
                if !s.is_subspace_of(bigger) {
                    return Err(FiltrationError::NotNested(*p));
                }
            }
            prev = Some(s);
        }
        Ok(Self { ambient, pieces })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn max_index(&self) -> i64 {
        self.pieces.keys().next_back().copied().unwrap_or(0)
    }

    pub fn at(&self, p: i64) -> Subspace {
        if p <= 0 {
            Subspace::full(self.ambient)
        } else {
            match self.pieces.get(&p) {
                Some(s) => s.clone(),
                None => Subspace::zero(self.ambient),
            }
        }
    }

    /// Dimensions `dim F^p` for the stored range, including `F^0`.
    pub fn profile(&self) -> Vec<(i64, usize)> {
        let mut out = vec![(0, self.ambient)];
        for (&p, s) in &self.pieces {
            out.push((p, s.dim()));
        }
        out
    }

    /// Pushes every piece through an invertible map, e.g. `exp(zN)`.
    pub fn transformed(&self, m: &Matrix) -> Result<Self, FiltrationError> {
        let pieces = self
            .pieces
            .iter()
            .map(|(&p, s)| (p, s.apply(m)))
            .collect();
        Self::new(self.ambient, pieces)
    }
}

fn nilpotency_index(n: &Matrix) -> Result<usize, FiltrationError> {
    if !n.is_square() {
        return Err(FiltrationError::NotSquare(n.rows(), n.cols()));
    }
    let d = n.rows();
    let mut power = Matrix::identity(d);
    for k in 0..=d {
        if power.is_zero() {
            return Ok(k.saturating_sub(1));
        }
        power = power.mul(n);
    }
    Err(FiltrationError::NotNilpotent)
}

/// The weight filtration of a nilpotent endomorphism, centered at zero.
///
/// Built from rank data of the powers of `N`:
/// `W_l = sum over j >= max(0, -l) of ker(N^{j+l+1}) meet im(N^j)`,
/// which on every Jordan string selects exactly the vectors of weight
/// at most `l`.
pub fn weight_filtration(n: &Matrix) -> Result<IncreasingFiltration, FiltrationError> {
    let d = n.rows();
    let k = nilpotency_index(n)? as i64;
    let mut powers = vec![Matrix::identity(d)];
    for _ in 0..=(k as usize + 1) {
        powers.push(powers.last().unwrap().mul(n));
    }
    let kernels: Vec<Subspace> = powers.iter().map(Subspace::kernel).collect();
    let images: Vec<Subspace> = powers.iter().map(Subspace::column_space).collect();
    let mut pieces = BTreeMap::new();
    for l in -k..=k {
        let mut acc = Subspace::zero(d);
        for j in 0.max(-l)..=k {
            let ker_idx = ((j + l + 1).max(0) as usize).min(kernels.len() - 1);
            let term = kernels[ker_idx].intersect(&images[j as usize]);
            acc = acc.sum(&term);
        }
        pieces.insert(l, acc);
    }
    IncreasingFiltration::new(d, pieces)
}

/// Independent inductive construction of the same filtration, used as a
/// cross-check against [`weight_filtration`].  Starting from
/// `W_k = V`, `W_{k-1} = ker N^k`, `W_{-k} = im N^k`, it descends with
/// `W_l = { v in W_{l+1} : N^{l+1} v in W_{-l-2} }` and
/// `W_{-l-1} = N^{l+1}(W_{l+1})`.
///
/// Both exponents matter: applying `N^{l+1}` to `W_l` instead of `W_{l+1}`
/// drops the odd-weight strings (a direct sum of Jordan blocks of sizes 3
/// and 2 already shows the difference at `l = 0`), and the membership test
/// needs `N^{l+1}`, not `N^l`, to keep a size-3 block consistent with its
/// sl2 weight grading.
pub fn weight_filtration_inductive(n: &Matrix) -> Result<IncreasingFiltration, FiltrationError> {
    let d = n.rows();
    let k = nilpotency_index(n)? as i64;
    let mut pieces: BTreeMap<i64, Subspace> = BTreeMap::new();
    pieces.insert(k, Subspace::full(d));
    if k > 0 {
        let nk = n.pow(k as usize);
        pieces.insert(k - 1, Subspace::kernel(&nk));
        pieces.insert(-k, Subspace::column_space(&nk));
        for l in (0..=k - 2).rev() {
            let power = n.pow(l as usize + 1);
            let upper = pieces[&(l + 1)].clone();
            let lower = pieces[&(-l - 2)].clone();
            pieces.insert(-l - 1, upper.apply(&power));
            pieces.insert(l, upper.intersect(&Subspace::preimage(&power, &lower)));
        }
    }
    IncreasingFiltration::new(d, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan_block(size: usize) -> Matrix {
        let mut m = Matrix::zero(size, size);
        for i in 0..size - 1 {
            m.set(i, i + 1, crate::scalar::GaussianRational::one());
        }
        m
    }

    #[test]
    fn zero_endomorphism() {
        let n = Matrix::zero(3, 3);
        let w = weight_filtration(&n).unwrap();
        assert!(w.at(-1).is_zero());
        assert!(w.at(0).is_full());
    }

    #[test]
    fn size_two_block() {
        let n = jordan_block(2);
        let w = weight_filtration(&n).unwrap();
        assert!(w.at(-2).is_zero());
        assert_eq!(w.at(-1), Subspace::column_space(&n));
        assert_eq!(w.at(0), Subspace::kernel(&n));
        assert!(w.at(1).is_full());
    }

    #[test]
    fn size_three_block() {
        let n = jordan_block(3);
        let w = weight_filtration(&n).unwrap();
        let n2 = n.pow(2);
        assert!(w.at(-3).is_zero());
        assert_eq!(w.at(-2), Subspace::column_space(&n2));
        assert_eq!(w.at(-1), Subspace::column_space(&n2));
        assert_eq!(w.at(0), Subspace::kernel(&n2));
        assert_eq!(w.at(1), Subspace::kernel(&n2));
        assert!(w.at(2).is_full());
    }

    #[test]
    fn constructions_agree_on_mixed_jordan_type() {
        // Blocks of sizes 3, 2, 1 glued on the diagonal.
        let mut n = Matrix::zero(6, 6);
        n.set(0, 1, crate::scalar::GaussianRational::one());
        n.set(1, 2, crate::scalar::GaussianRational::one());
        n.set(3, 4, crate::scalar::GaussianRational::one());
        let a = weight_filtration(&n).unwrap();
        let b = weight_filtration_inductive(&n).unwrap();
        for l in -3..=3 {
            assert_eq!(a.at(l), b.at(l), "disagreement at level {l}");
        }
    }

    #[test]
    fn defining_properties() {
        let n = jordan_block(4);
        let w = weight_filtration(&n).unwrap();
        for l in -4..=4 {
            assert!(w.at(l).is_subspace_of(&w.at(l + 1)));
            assert!(w.at(l).apply(&n).is_subspace_of(&w.at(l - 2)));
        }
        for l in 0..=3 {
            assert_eq!(w.graded_dim(l), w.graded_dim(-l));
        }
    }

    #[test]
    fn shift_convention() {
        let n = jordan_block(2);
        let w = weight_filtration(&n).unwrap().shifted_by(1);
        // Nontrivial pieces now sit at nonnegative indices.
        assert!(w.at(-1).is_zero());
        assert_eq!(w.at(0), Subspace::column_space(&n));
        assert_eq!(w.at(1), Subspace::kernel(&n));
        assert!(w.at(2).is_full());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let m = Matrix::identity(2);
        assert_eq!(weight_filtration(&m), Err(FiltrationError::NotNilpotent));
    }

    #[test]
    fn hodge_filtration_accessors() {
        let f1 = Subspace::span(2, [vec![
            crate::scalar::GaussianRational::zero(),
            crate::scalar::GaussianRational::one(),
        ]]);
        let f = HodgeFiltration::new(2, [(1, f1.clone())].into_iter().collect()).unwrap();
        assert!(f.at(0).is_full());
        assert_eq!(f.at(1), f1);
        assert!(f.at(2).is_zero());
        assert_eq!(f.profile(), vec![(0, 2), (1, 1)]);
    }

    #[test]
    fn nesting_is_validated() {
        let a = Subspace::span(2, [vec![
            crate::scalar::GaussianRational::one(),
            crate::scalar::GaussianRational::zero(),
        ]]);
        let b = Subspace::span(2, [vec![
            crate::scalar::GaussianRational::zero(),
            crate::scalar::GaussianRational::one(),
        ]]);
        let bad = HodgeFiltration::new(2, [(1, a), (2, b)].into_iter().collect());
        assert!(matches!(bad, Err(FiltrationError::NotNested(2))));
    }
}
