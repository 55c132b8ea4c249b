//! The canonical bigrading of a mixed Hodge structure.
//!
//! Given an increasing filtration `W` and a decreasing filtration `F` that
//! together form a mixed Hodge structure, there is a unique splitting
//! `I^{p,q}` recovering both filtrations.  It is computed here by the
//! closed formula
//!
//! ```text
//! I^{p,q} = F^p /\ W_{p+q} /\ ( conj(F^q) /\ W_{p+q} + conj(U^{q-1}_{p+q-2}) )
//! U^a_b   = sum over j >= 0 of F^{a-j} /\ W_{b-j}
//! ```
//!
//! and the defining properties are then verified exactly: the pieces must
//! sum directly to the ambient space, must rebuild `F` and `W`, and must be
//! conjugation-congruent modulo the lower-order pieces.  Failure of any of
//! these signals that `(W, F)` was not a mixed Hodge structure.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diamond::Diamond;
use crate::filtration::{HodgeFiltration, IncreasingFiltration};
use crate::subspace::Subspace;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SplittingError {
    #[error("pieces are not a direct sum: defect at (p, q) = ({0}, {1})")]
    NotDirectSum(i64, i64),
    #[error("pieces fail to rebuild the Hodge filtration at p = {0}")]
    HodgeRecovery(i64),
    #[error("pieces fail to rebuild the weight filtration at l = {0}")]
    WeightRecovery(i64),
    #[error("conjugation congruence fails at (p, q) = ({0}, {1})")]
    ConjugationCongruence(i64, i64),
}

/// The bigrading `(p, q) -> I^{p,q}`, zero pieces omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneSplitting {
    ambient: usize,
    pieces: BTreeMap<(i64, i64), Subspace>,
    r_split: bool,
}

impl DeligneSplitting {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &BTreeMap<(i64, i64), Subspace> {
        &self.pieces
    }

    pub fn piece(&self, p: i64, q: i64) -> Subspace {
        self.pieces
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    /// Exact equality `conj(I^{p,q}) = I^{q,p}` for every piece.
    pub fn is_r_split(&self) -> bool {
        self.r_split
    }

    /// The dimensions of the pieces as a lattice function.
    pub fn diamond(&self, weight: i64) -> Diamond {
        let entries = self
            .pieces
            .iter()
            .map(|(&cell, s)| (cell, s.dim() as u64))
            .collect();
        Diamond::new(weight, entries)
    }
}

fn compat_sum(w: &IncreasingFiltration, f: &HodgeFiltration, a: i64, b: i64) -> Subspace {
    // U^a_b: the sum telescopes; terms vanish once W runs out below.
    let d = f.ambient();
    let mut acc = Subspace::zero(d);
    let floor = w.min_index().unwrap_or(0);
    let mut j = 0;
    while b - j >= floor {
        acc = acc.sum(&f.at(a - j).intersect(&w.at(b - j)));
        if acc.dim() == d {
            break;
        }
        j += 1;
    }
    acc
}

/// Computes the splitting and verifies the defining properties.
pub fn deligne_splitting(
    w: &IncreasingFiltration,
    f: &HodgeFiltration,
) -> Result<DeligneSplitting, SplittingError> {
    assert_eq!(w.ambient(), f.ambient(), "ambient dimension mismatch");
    let d = w.ambient();
    let w_lo = w.min_index().unwrap_or(0);
    let w_hi = w.max_index().unwrap_or(0);
    let p_hi = f.max_index().max(0);

    let mut pieces: BTreeMap<(i64, i64), Subspace> = BTreeMap::new();
    for p in 0..=p_hi {
        for q in (w_lo - p)..=(w_hi - p) {
            let fw = f.at(p).intersect(&w.at(p + q));
            if fw.is_zero() {
                continue;
            }
            let direct = f.at(q).conjugate().intersect(&w.at(p + q));
            let correction = compat_sum(w, f, q - 1, p + q - 2).conjugate();
            let piece = fw.intersect(&direct.sum(&correction));
            if !piece.is_zero() {
                pieces.insert((p, q), piece);
            }
        }
    }

    // Direct sum: adding pieces one at a time must grow the dimension by
    // the full piece dimension every time, and the total must fill V.
    let mut running = Subspace::zero(d);
    for (&(p, q), s) in &pieces {
        let grown = running.sum(s);
        if grown.dim() != running.dim() + s.dim() {
            return Err(SplittingError::NotDirectSum(p, q));
        }
        running = grown;
    }
    if running.dim() != d {
        return Err(SplittingError::NotDirectSum(i64::MIN, i64::MIN));
    }

    // Recovery of F: F^p must be the span of the pieces with first index >= p.
    for p in 0..=p_hi + 1 {
        let mut span = Subspace::zero(d);
        for (&(r, _), s) in &pieces {
            if r >= p {
                span = span.sum(s);
            }
        }
        if span != f.at(p) {
            return Err(SplittingError::HodgeRecovery(p));
        }
    }

    // Recovery of W: W_l must be the span of the pieces with p + q <= l.
    for l in w_lo - 1..=w_hi {
        let mut span = Subspace::zero(d);
        for (&(p, q), s) in &pieces {
            if p + q <= l {
                span = span.sum(s);
            }
        }
        if span != w.at(l) {
            return Err(SplittingError::WeightRecovery(l));
        }
    }

    // Conjugation congruence modulo the lower-order block.
    let mut r_split = true;
    for (&(p, q), s) in &pieces {
        let mirror = pieces
            .get(&(q, p))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(d));
        let conj = s.conjugate();
        if conj != mirror {
            r_split = false;
            let mut modulus = mirror.clone();
            for (&(r, t), lower) in &pieces {
                if r < q && t < p {
                    modulus = modulus.sum(lower);
                }
            }
            if !conj.is_subspace_of(&modulus) {
                return Err(SplittingError::ConjugationCongruence(p, q));
            }
        }
    }

    Ok(DeligneSplitting {
        ambient: d,
        pieces,
        r_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::weight_filtration;
    use crate::matrix::Matrix;
    use crate::scalar::GaussianRational;

    fn e(d: usize, i: usize) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); d];
        v[i] = GaussianRational::one();
        v
    }

    #[test]
    fn pure_case_reduces_to_intersections() {
        // Weight 1, a polarizable line pair: F^1 = span(e1 + i e2).
        let mut v = e(2, 0);
        v[1] = GaussianRational::i();
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [v.clone()]))].into_iter().collect())
            .unwrap();
        let w = IncreasingFiltration::new(2, [(1, Subspace::full(2))].into_iter().collect())
            .unwrap();
        let s = deligne_splitting(&w, &f).unwrap();
        assert_eq!(s.piece(1, 0), Subspace::span(2, [v]));
        assert_eq!(s.piece(1, 0).conjugate(), s.piece(0, 1));
        assert!(s.is_r_split());
    }

    #[test]
    fn two_dimensional_string() {
        // N e2 = e1; W(N)[-1] jumps at 0 and 2; F^1 = span(e2).
        let n = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let w = weight_filtration(&n).unwrap().shifted_by(1);
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [e(2, 1)]))].into_iter().collect())
            .unwrap();
        let s = deligne_splitting(&w, &f).unwrap();
        assert_eq!(s.piece(1, 1), Subspace::span(2, [e(2, 1)]));
        assert_eq!(s.piece(0, 0), Subspace::span(2, [e(2, 0)]));
        assert!(s.is_r_split());
        assert_eq!(
            s.diamond(1),
            Diamond::from_entries(1, &[((0, 0), 1), ((1, 1), 1)])
        );
    }

    #[test]
    fn three_dimensional_string() {
        // Single string of length three in weight two: e3 -> e2 -> e1, so
        // the top generator e3 spans F^2 and the string fills F^1.
        let n = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let w = weight_filtration(&n).unwrap().shifted_by(2);
        let f = HodgeFiltration::new(
            3,
            [
                (1, Subspace::span(3, [e(3, 2), e(3, 1)])),
                (2, Subspace::span(3, [e(3, 2)])),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let s = deligne_splitting(&w, &f).unwrap();
        for k in 0..3 {
            let kk = k as i64;
            assert_eq!(s.piece(2 - kk, 2 - kk).dim(), 1, "piece at offset {k}");
        }
        assert!(s.is_r_split());
    }

    #[test]
    fn non_mhs_is_rejected() {
        // Weight filtration of a string, but F concentrated on the bottom
        // vector: the graded pieces cannot carry a Hodge structure.
        let n = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let w = weight_filtration(&n).unwrap().shifted_by(1);
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [e(2, 0)]))].into_iter().collect())
            .unwrap();
        assert!(deligne_splitting(&w, &f).is_err());
    }
}
