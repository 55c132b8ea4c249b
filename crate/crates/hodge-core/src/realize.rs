//! Constructing an explicit real-split witness for any valid diamond.
//!
//! The construction is string-by-string.  Every primitive top of the
//! diamond contributes one block: a top at `(p, p)` gives one rational
//! string of length `level + 1`, and a top at `(p, q)` with `p > q` gives a
//! conjugate pair of strings carried by a rational block of twice that
//! size.  The pairing is supported on the anti-diagonal of each block with
//! signs chosen so that every primitive Hermitian form comes out as a
//! (scaled) identity Gram matrix; blocks never pair with each other.

use thiserror::Error;

use crate::diamond::{
    is_valid_diamond, primitive_decomposition, ConditionFailure, Diamond, DiamondError,
    HodgeNumbers,
};
use crate::enumerate::enumerate_diamonds;
use crate::filtration::HodgeFiltration;
use crate::matrix::Matrix;
use crate::par;
use crate::scalar::GaussianRational;
use crate::subspace::Subspace;
use crate::witness::{check_pmhs, diamond_of, CheckReport, PMHSWitness, PairingForm};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("diamond is not valid for the domain: {0:?}")]
    InvalidDiamond(Vec<ConditionFailure>),
    #[error(transparent)]
    Diamond(#[from] DiamondError),
}

enum Block {
    /// One rational string from a diagonal top at `(p, p)`.
    Real { offset: usize, p: i64, level: i64 },
    /// A conjugate pair of strings from tops at `(p, q)` and `(q, p)`.
    Pair {
        offset: usize,
        p: i64,
        q: i64,
        level: i64,
    },
}

impl Block {
    fn size(&self) -> usize {
        match self {
            Block::Real { level, .. } => *level as usize + 1,
            Block::Pair { level, .. } => 2 * (*level as usize + 1),
        }
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Builds a witness whose diamond is `f`; all axiom checks pass and the
/// canonical splitting is exactly real.
pub fn realize_diamond(h: &HodgeNumbers, f: &Diamond) -> Result<PMHSWitness, RealizeError> {
    let validity = is_valid_diamond(h, f)?;
    if !validity.is_valid() {
        return Err(RealizeError::InvalidDiamond(validity.failures));
    }
    let n = h.weight();
    let prim = primitive_decomposition(f)?;

    let mut blocks = Vec::new();
    let mut offset = 0usize;
    for (&(p, q), &mult) in prim.tops() {
        if p < q {
            continue; // handled by the mirrored top
        }
        let level = p + q - n;
        for _ in 0..mult {
            let block = if p == q {
                Block::Real { offset, p, level }
            } else {
                Block::Pair { offset, p, q, level }
            };
            offset += block.size();
            blocks.push(block);
        }
    }
    let d = offset;
    debug_assert_eq!(d as u64, f.mass());

    let mut n_mat = Matrix::zero(d, d);
    let mut q_mat = Matrix::zero(d, d);
    // Per filtration index, the complex vectors spanning F^r within blocks.
    let mut f_vectors: Vec<Vec<Vec<GaussianRational>>> = vec![Vec::new(); (n + 1) as usize];

    let basis_vec = |idx: usize| {
        let mut v = vec![GaussianRational::zero(); d];
        v[idx] = GaussianRational::one();
        v
    };

    for block in &blocks {
        match *block {
            Block::Real { offset, p, level } => {
                let len = level as usize + 1;
                for a in 0..len - 1 {
                    n_mat.set(offset + a + 1, offset + a, GaussianRational::one());
                }
                for a in 0..len {
                    let b = level as usize - a;
                    q_mat.set(offset + a, offset + b, GaussianRational::from_int(sign(a as i64)));
                }
                for a in 0..len {
                    for r in 1..=(p - a as i64) {
                        f_vectors[r as usize].push(basis_vec(offset + a));
                    }
                }
            }
            Block::Pair { offset, p, q, level } => {
                let len = level as usize + 1;
                let x = |a: usize| offset + a;
                let y = |a: usize| offset + len + a;
                for a in 0..len - 1 {
                    n_mat.set(x(a + 1), x(a), GaussianRational::one());
                    n_mat.set(y(a + 1), y(a), GaussianRational::one());
                }
                if (p + q).rem_euclid(2) == 0 {
                    let sigma = sign((p - q) / 2);
                    for a in 0..len {
                        let b = level as usize - a;
                        let value = GaussianRational::from_int(sign(a as i64) * sigma);
                        q_mat.set(x(a), x(b), value.clone());
                        q_mat.set(y(a), y(b), value);
                    }
                } else {
                    let gamma = sign((p - q - 1) / 2);
                    for a in 0..len {
                        let b = level as usize - a;
                        let value = GaussianRational::from_int(sign(a as i64) * gamma);
                        q_mat.set(x(a), y(b), value.clone());
                        q_mat.set(y(a), x(b), -value);
                    }
                }
                for a in 0..len {
                    // v_a = x_a + i y_a lands in bidegree (p - a, q - a),
                    // its conjugate u_a in (q - a, p - a).
                    let mut v = basis_vec(x(a));
                    v[y(a)] = GaussianRational::i();
                    for r in 1..=(p - a as i64) {
                        f_vectors[r as usize].push(v.clone());
                    }
                    let mut u = basis_vec(x(a));
                    u[y(a)] = -GaussianRational::i();
                    for r in 1..=(q - a as i64) {
                        f_vectors[r as usize].push(u.clone());
                    }
                }
            }
        }
    }

    let pieces = (1..=n)
        .map(|r| (r, Subspace::span(d, f_vectors[r as usize].iter().cloned())))
        .collect();
    let hodge = HodgeFiltration::new(d, pieces).expect("string filtrations nest by construction");
    let pairing = PairingForm::new(n, q_mat).expect("block pairing is exact and nondegenerate");
    let witness =
        PMHSWitness::new(n, pairing, n_mat, hodge).expect("string blocks satisfy the invariants");
    Ok(witness)
}

/// Outcome of realizing and re-checking one diamond of a domain.
#[derive(Clone, Debug)]
pub struct RealizedCheck {
    pub diamond: Diamond,
    pub report: CheckReport,
    /// The diamond recovered from the witness splitting, when it exists.
    pub recovered: Option<Diamond>,
}

impl RealizedCheck {
    /// All axioms pass and the splitting reproduces the input diamond.
    pub fn round_trips(&self) -> bool {
        self.report.passed() && self.recovered.as_ref() == Some(&self.diamond)
    }
}

/// Realizes and verifies every diamond of a domain.  Witness checks are
/// independent, so with the `parallel` feature they run on the rayon pool.
pub fn verify_domain(h: &HodgeNumbers) -> Result<Vec<RealizedCheck>, DiamondError> {
    let diamonds = enumerate_diamonds(h)?;
    Ok(par::map_indexed(&diamonds, |_, f| {
        let witness = realize_diamond(h, f).expect("enumerated diamonds are valid");
        let report = check_pmhs(&witness);
        let recovered = diamond_of(&witness).ok();
        RealizedCheck {
            diamond: f.clone(),
            report,
            recovered,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::in_period_domain;

    fn h(row: &[u64]) -> HodgeNumbers {
        HodgeNumbers::from_row(row)
    }

    #[test]
    fn weight_one_square_has_rank_one_witness() {
        let domain = h(&[2, 2]);
        let f = Diamond::from_entries(1, &[((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
        let w = realize_diamond(&domain, &f).unwrap();
        assert_eq!(w.dimension(), 4);
        let rank = w.dimension() - Subspace::kernel(w.nilpotent()).dim();
        assert_eq!(rank, 1);
        assert!(check_pmhs(&w).passed());
        assert_eq!(diamond_of(&w).unwrap(), f);
    }

    #[test]
    fn pure_diamond_realizes_inside_the_domain() {
        let domain = h(&[1, 2, 1]);
        let f = Diamond::from_entries(2, &[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)]);
        let w = realize_diamond(&domain, &f).unwrap();
        assert!(w.nilpotent().is_zero());
        assert!(in_period_domain(w.hodge(), w.pairing(), &domain).unwrap());
    }

    #[test]
    fn long_string_witness() {
        let domain = h(&[1, 1, 1]);
        let f = Diamond::from_entries(2, &[((0, 0), 1), ((1, 1), 1), ((2, 2), 1)]);
        let w = realize_diamond(&domain, &f).unwrap();
        assert_eq!(w.dimension(), 3);
        assert!(!w.nilpotent().pow(2).is_zero());
        assert!(w.nilpotent().pow(3).is_zero());
        let report = check_pmhs(&w);
        assert!(report.passed(), "{report}");
        assert_eq!(report.r_split, Some(true));
    }

    #[test]
    fn invalid_diamond_is_rejected() {
        let domain = h(&[1, 1]);
        let f = Diamond::from_entries(1, &[((1, 1), 1)]);
        assert!(matches!(
            realize_diamond(&domain, &f),
            Err(RealizeError::InvalidDiamond(_))
        ));
    }

    #[test]
    fn verify_domain_round_trips() {
        for row in [&[2u64, 2][..], &[1, 2, 1][..], &[1, 1, 1][..]] {
            for check in verify_domain(&h(row)).unwrap() {
                assert!(check.round_trips(), "diamond {}", check.diamond);
            }
        }
    }

    #[test]
    fn witness_primitive_dimensions_match_combinatorics() {
        // The kernel of N^{level+1} inside each splitting piece on the line
        // p + q = n + level has exactly the top multiplicity of the diamond.
        for row in [&[2u64, 2][..], &[1, 2, 1][..], &[2, 4, 2][..], &[1, 2, 2, 1][..]] {
            let domain = h(row);
            let n = domain.weight();
            for f in crate::enumerate::enumerate_diamonds(&domain).unwrap() {
                let prim = primitive_decomposition(&f).unwrap();
                let w = realize_diamond(&domain, &f).unwrap();
                let s = w.splitting().unwrap();
                let wfil = w.weight_filtration();
                for level in 0..=n {
                    let power = w.nilpotent().pow(level as usize + 1);
                    let wall = wfil.at(n - level - 3);
                    for p in 0..=n + level {
                        let q = n + level - p;
                        let piece = s.piece(p, q);
                        let primitive =
                            piece.intersect(&Subspace::preimage(&power, &wall));
                        assert_eq!(
                            primitive.dim() as u64,
                            prim.get(p, q),
                            "domain {row:?}, diamond {f}, cell ({p}, {q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_samples_inside_for_positive_imaginary() {
        // Sampled membership consistent with the asymptotic picture: every
        // realized witness flows into its period domain already at t = 1.
        use crate::scalar::ratio;
        use crate::witness::orbit_probe;
        for row in [&[2u64, 2][..], &[1, 2, 1][..], &[1, 1, 1, 1][..]] {
            let domain = h(row);
            for f in crate::enumerate::enumerate_diamonds(&domain).unwrap() {
                let w = realize_diamond(&domain, &f).unwrap();
                let samples: Vec<GaussianRational> = (1..=2)
                    .map(|t| GaussianRational::new(ratio(0, 1), ratio(t, 1)))
                    .collect();
                let report = orbit_probe(&w, &samples);
                assert!(report.horizontal);
                assert!(
                    report.samples.iter().all(|s| s.in_domain),
                    "domain {row:?}, diamond {f}"
                );
            }
        }
    }
}
