//! Explicit polarized mixed Hodge structures over exact scalars, and the
//! machinery that verifies them.
//!
//! A witness packages the rational pairing `Q`, a rational nilpotent `N`
//! infinitesimally preserving `Q`, and a Hodge filtration `F`.  The weight
//! filtration is always derived from `N`, so the axioms checked by
//! [`check_pmhs`] are: the nilpotency order, isotropy and horizontality of
//! `F`, existence of the canonical splitting, and on every primitive graded
//! piece a polarized Hodge structure whose Hermitian forms are positive
//! definite — decided exactly through leading principal minors.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::diamond::{Diamond, HodgeNumbers};
use crate::filtration::{
    weight_filtration, FiltrationError, HodgeFiltration, IncreasingFiltration,
};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;
use crate::splitting::{deligne_splitting, DeligneSplitting, SplittingError};
use crate::subspace::Subspace;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("pairing matrix is not square")]
    PairingNotSquare,
    #[error("pairing matrix has non-rational entries")]
    PairingNotRational,
    #[error("pairing matrix is singular")]
    PairingSingular,
    #[error("pairing symmetry does not match the weight parity")]
    PairingSymmetry,
    #[error("nilpotent matrix has non-rational entries")]
    NilpotentNotRational,
    #[error("endomorphism does not vanish at the power required by the weight")]
    NilpotencyOrder,
    #[error("endomorphism does not infinitesimally preserve the pairing")]
    NotInfinitesimallyIsotropic,
    #[error("dimension mismatch between witness components")]
    DimensionMismatch,
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DomainError {
    #[error("filtration profile mismatch at p = {p}: expected {expected}, found {actual}")]
    ProfileMismatch { p: i64, expected: usize, actual: usize },
}

/// A nondegenerate rational bilinear form with `Q(u, v) = (-1)^n Q(v, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingForm {
    weight: i64,
    matrix: Matrix,
}

impl PairingForm {
    pub fn new(weight: i64, matrix: Matrix) -> Result<Self, WitnessError> {
        if !matrix.is_square() {
            return Err(WitnessError::PairingNotSquare);
        }
        if !matrix.is_rational() {
            return Err(WitnessError::PairingNotRational);
        }
        let sign = if weight % 2 == 0 {
            GaussianRational::one()
        } else {
            -GaussianRational::one()
        };
        if matrix.transpose() != matrix.scale(&sign) {
            return Err(WitnessError::PairingSymmetry);
        }
        if matrix.determinant().is_zero() {
            return Err(WitnessError::PairingSingular);
        }
        Ok(Self { weight, matrix })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    /// `Q(u, v) = u^T Q v`, extended bilinearly over `Q(i)`.
    pub fn value(&self, u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
        let qv = self.matrix.apply(v);
        let mut acc = GaussianRational::zero();
        for (a, b) in u.iter().zip(&qv) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    /// True when `Q(a, b) = 0` for all basis choices.
    pub fn vanishes_on(&self, a: &Subspace, b: &Subspace) -> bool {
        a.basis()
            .iter()
            .all(|u| b.basis().iter().all(|v| self.value(u, v).is_zero()))
    }
}

/// Explicit exact data `(V, Q, N, F)` purporting to realize a polarized
/// mixed Hodge structure of the given weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMHSWitness {
    weight: i64,
    pairing: PairingForm,
    nilpotent: Matrix,
    hodge: HodgeFiltration,
}

impl PMHSWitness {
    pub fn new(
        weight: i64,
        pairing: PairingForm,
        nilpotent: Matrix,
        hodge: HodgeFiltration,
    ) -> Result<Self, WitnessError> {
        let d = pairing.dimension();
        if nilpotent.rows() != d || nilpotent.cols() != d || hodge.ambient() != d {
            return Err(WitnessError::DimensionMismatch);
        }
        if !nilpotent.is_rational() {
            return Err(WitnessError::NilpotentNotRational);
        }
        if !nilpotent.pow(weight as usize + 1).is_zero() {
            return Err(WitnessError::NilpotencyOrder);
        }
        // N in the isotropy algebra: Q(Nu, v) + Q(u, Nv) = 0.
        let spoil = nilpotent
            .transpose()
            .mul(pairing.matrix())
            .add(&pairing.matrix().mul(&nilpotent));
        if !spoil.is_zero() {
            return Err(WitnessError::NotInfinitesimallyIsotropic);
        }
        Ok(Self {
            weight,
            pairing,
            nilpotent,
            hodge,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn dimension(&self) -> usize {
        self.pairing.dimension()
    }

    pub fn pairing(&self) -> &PairingForm {
        &self.pairing
    }

    pub fn nilpotent(&self) -> &Matrix {
        &self.nilpotent
    }

    pub fn hodge(&self) -> &HodgeFiltration {
        &self.hodge
    }

    /// The weight filtration of `N` shifted up to the witness weight.
    pub fn weight_filtration(&self) -> IncreasingFiltration {
        weight_filtration(&self.nilpotent)
            .expect("constructor enforced nilpotency")
            .shifted_by(self.weight)
    }

    /// The canonical splitting of `(W(N) shifted, F)`.
    pub fn splitting(&self) -> Result<DeligneSplitting, SplittingError> {
        deligne_splitting(&self.weight_filtration(), &self.hodge)
    }

    /// Hodge numbers read off the filtration profile.
    pub fn profile_hodge_numbers(&self) -> HodgeNumbers {
        let counts = (0..=self.weight)
            .map(|p| {
                let jump = self.hodge.at(p).dim() - self.hodge.at(p + 1).dim();
                (p, jump as u64)
            })
            .collect();
        HodgeNumbers::new(self.weight, counts)
    }
}

/// The diamond of a witness: dimensions of the splitting pieces.
pub fn diamond_of(w: &PMHSWitness) -> Result<Diamond, SplittingError> {
    Ok(w.splitting()?.diamond(w.weight()))
}

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Per-axiom verdicts from [`check_pmhs`], plus whether the splitting came
/// out exactly real (informational; not an axiom).
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
    pub r_split: Option<bool>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.items.push(CheckItem { name, passed, detail });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let mark = if item.passed { "ok" } else { "FAIL" };
            if item.detail.is_empty() {
                writeln!(f, "{mark:4} {}", item.name)?;
            } else {
                writeln!(f, "{mark:4} {}: {}", item.name, item.detail)?;
            }
        }
        if let Some(r) = self.r_split {
            writeln!(f, "info r-split splitting: {r}")?;
        }
        Ok(())
    }
}

/// Gram matrix of a sesquilinear form on the basis of a subspace.
fn gram<FORM>(basis: &[Vec<GaussianRational>], form: FORM) -> Matrix
where
    FORM: Fn(&[GaussianRational], &[GaussianRational]) -> GaussianRational,
{
    let k = basis.len();
    let mut g = Matrix::zero(k, k);
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            g.set(i, j, form(u, v));
        }
    }
    g
}

/// Exact positive-definiteness of a Hermitian matrix: all leading
/// principal minors must be positive rationals.
fn positive_definite_hermitian(g: &Matrix) -> Result<bool, String> {
    if g != &g.conjugate().transpose() {
        return Err("form is not Hermitian".to_string());
    }
    for k in 1..=g.rows() {
        let minor = g.leading_principal_minor(k);
        if !minor.im.is_zero() {
            return Err(format!("minor {k} is not real: {minor}"));
        }
        if !minor.re.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verifies the polarized mixed Hodge structure axioms on a witness.
pub fn check_pmhs(w: &PMHSWitness) -> CheckReport {
    let n = w.weight();
    let d = w.dimension();
    let mut report = CheckReport {
        items: Vec::new(),
        r_split: None,
    };

    let nilpotent_ok = w.nilpotent().pow(n as usize + 1).is_zero();
    report.push(
        "nilpotency order",
        nilpotent_ok,
        format!("N^{} = 0", n + 1),
    );

    let wfil = w.weight_filtration();
    report.push(
        "weight filtration",
        true,
        "derived from N and shifted to the witness weight".to_string(),
    );

    // F is isotropic: Q(F^p, F^q) = 0 whenever p + q = n + 1.
    let mut isotropic = true;
    let mut isotropy_detail = String::new();
    for p in 0..=n + 1 {
        let q = n + 1 - p;
        if !w.pairing().vanishes_on(&w.hodge().at(p), &w.hodge().at(q)) {
            isotropic = false;
            isotropy_detail = format!("Q(F^{p}, F^{q}) != 0");
            break;
        }
    }
    report.push("hodge filtration isotropy", isotropic, isotropy_detail);

    let mut horizontal = true;
    let mut horizontal_detail = String::new();
    for p in 0..=n {
        let image = w.hodge().at(p).apply(w.nilpotent());
        if !image.is_subspace_of(&w.hodge().at(p - 1)) {
            horizontal = false;
            horizontal_detail = format!("N(F^{p}) not within F^{}", p - 1);
            break;
        }
    }
    report.push("horizontality", horizontal, horizontal_detail);

    let splitting = match w.splitting() {
        Ok(s) => {
            report.push(
                "canonical splitting",
                true,
                "direct sum recovering both filtrations".to_string(),
            );
            report.r_split = Some(s.is_r_split());
            s
        }
        Err(e) => {
            report.push("canonical splitting", false, e.to_string());
            return report;
        }
    };

    // Primitive graded pieces: for each level l >= 0 the kernel of N^{l+1}
    // on the weight n+l graded piece must split into (p, q) pieces matching
    // conjugation, be orthogonal across non-dual bidegrees, and carry a
    // positive definite Hermitian form built from Q(., N^l .).
    let mut decomposition_ok = true;
    let mut conjugation_ok = true;
    let mut orthogonality_ok = true;
    let mut positivity_ok = true;
    let mut details: [String; 4] = Default::default();

    for level in 0..=n {
        let gr_dim = wfil.graded_dim(n + level);
        if gr_dim == 0 {
            continue;
        }
        let expected_prim = gr_dim - wfil.graded_dim(n + level + 2);
        let power = w.nilpotent().pow(level as usize + 1);
        let wall = wfil.at(n - level - 3);
        let mut pieces: Vec<((i64, i64), Subspace)> = Vec::new();
        let mut total = 0usize;
        for p in 0..=n + level {
            let q = n + level - p;
            let ip = splitting.piece(p, q);
            if ip.is_zero() {
                continue;
            }
            let prim = ip.intersect(&Subspace::preimage(&power, &wall));
            total += prim.dim();
            if !prim.is_zero() {
                pieces.push(((p, q), prim));
            }
        }
        if total != expected_prim {
            decomposition_ok = false;
            details[0] = format!(
                "level {level}: primitive pieces have dimension {total}, expected {expected_prim}"
            );
        }

        let below = wfil.at(n + level - 1);
        for ((p, q), prim) in &pieces {
            let mirror = pieces
                .iter()
                .find(|((pp, qq), _)| (pp, qq) == (q, p))
                .map(|(_, s)| s.clone())
                .unwrap_or_else(|| Subspace::zero(d));
            if !prim.conjugate().is_subspace_of(&mirror.sum(&below)) {
                conjugation_ok = false;
                details[1] = format!("level {level}: conjugate of piece ({p}, {q}) mismatch");
            }
        }

        for ((p, q), left) in &pieces {
            for ((r, s), right) in &pieces {
                if (r, s) == (q, p) {
                    continue;
                }
                let shifted = right.apply(&w.nilpotent().pow(level as usize));
                if !w.pairing().vanishes_on(left, &shifted) {
                    orthogonality_ok = false;
                    details[2] = format!(
                        "level {level}: pieces ({p}, {q}) and ({r}, {s}) pair nontrivially"
                    );
                }
            }
        }

        let nl = w.nilpotent().pow(level as usize);
        for ((p, q), prim) in &pieces {
            let factor = GaussianRational::i_pow(p - q);
            let form = |u: &[GaussianRational], v: &[GaussianRational]| {
                let conj_v: Vec<GaussianRational> =
                    v.iter().map(GaussianRational::conjugate).collect();
                let moved = nl.apply(&conj_v);
                &factor * &w.pairing().value(u, &moved)
            };
            let g = gram(prim.basis(), form);
            match positive_definite_hermitian(&g) {
                Ok(true) => {}
                Ok(false) => {
                    positivity_ok = false;
                    details[3] =
                        format!("level {level}: form on piece ({p}, {q}) is not positive");
                }
                Err(msg) => {
                    positivity_ok = false;
                    details[3] = format!("level {level}: piece ({p}, {q}): {msg}");
                }
            }
        }
    }

    report.push(
        "primitive decomposition",
        decomposition_ok,
        details[0].clone(),
    );
    report.push("primitive conjugation", conjugation_ok, details[1].clone());
    report.push(
        "primitive orthogonality",
        orthogonality_ok,
        details[2].clone(),
    );
    report.push("primitive positivity", positivity_ok, details[3].clone());
    report
}

/// Membership of a filtration in the period domain of `(h, Q)`: the two
/// bilinear relations plus the opposed-filtration condition, all exact.
pub fn in_period_domain(
    f: &HodgeFiltration,
    q: &PairingForm,
    h: &HodgeNumbers,
) -> Result<bool, DomainError> {
    let n = h.weight();
    for p in 0..=n {
        let expected: u64 = (p..=n).map(|r| h.count(r)).sum();
        let actual = f.at(p).dim();
        if actual as u64 != expected {
            return Err(DomainError::ProfileMismatch {
                p,
                expected: expected as usize,
                actual,
            });
        }
    }
    let d = f.ambient();
    // Opposedness: V = F^k + conj(F^{n+1-k}) as a direct sum, every k.
    for k in 0..=n + 1 {
        let a = f.at(k);
        let b = f.at(n + 1 - k).conjugate();
        if a.dim() + b.dim() != d || a.sum(&b).dim() != d {
            return Ok(false);
        }
    }
    // First bilinear relation in filtration form.
    for p in 0..=n + 1 {
        if !q.vanishes_on(&f.at(p), &f.at(n + 1 - p)) {
            return Ok(false);
        }
    }
    // Second bilinear relation on each piece, exactly.
    for p in 0..=n {
        let piece = f.at(p).intersect(&f.at(n - p).conjugate());
        if piece.dim() as u64 != h.count(p) {
            return Ok(false);
        }
        if piece.is_zero() {
            continue;
        }
        let factor = GaussianRational::i_pow(p - (n - p));
        let form = |u: &[GaussianRational], v: &[GaussianRational]| {
            let conj_v: Vec<GaussianRational> = v.iter().map(GaussianRational::conjugate).collect();
            &factor * &q.value(u, &conj_v)
        };
        let g = gram(piece.basis(), form);
        match positive_definite_hermitian(&g) {
            Ok(true) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// One orbit sample: the point `exp(zN) . F` and its membership verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSample {
    pub z: GaussianRational,
    pub in_domain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    /// Whether `N(F^p)` lies in `F^{p-1}` for every `p`.
    pub horizontal: bool,
    pub samples: Vec<ProbeSample>,
}

/// Evaluates `exp(zN) . F` at rational complex samples and tests period
/// domain membership exactly; the exponential is polynomial because `N`
/// is nilpotent.
pub fn orbit_probe(w: &PMHSWitness, samples: &[GaussianRational]) -> ProbeReport {
    let h = w.profile_hodge_numbers();
    let mut horizontal = true;
    for p in 0..=w.weight() {
        if !w
            .hodge()
            .at(p)
            .apply(w.nilpotent())
            .is_subspace_of(&w.hodge().at(p - 1))
        {
            horizontal = false;
        }
    }
    let samples = samples
        .iter()
        .map(|z| {
            let flow = w.nilpotent().exp_scaled_nilpotent(z);
            let moved = w
                .hodge()
                .transformed(&flow)
                .expect("exponential of a nilpotent is invertible");
            let in_domain = in_period_domain(&moved, w.pairing(), &h)
                .expect("profile is preserved by an invertible map");
            ProbeSample {
                z: z.clone(),
                in_domain,
            }
        })
        .collect();
    ProbeReport {
        horizontal,
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn e(d: usize, i: usize) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); d];
        v[i] = GaussianRational::one();
        v
    }

    /// The two-dimensional weight-one witness with one string:
    /// Q(e1, e2) = -1 (so Q(e2, e1) = 1), N e2 = e1, F^1 = span(e2).
    fn nodal_witness() -> PMHSWitness {
        let q = PairingForm::new(1, Matrix::from_int_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let n = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [e(2, 1)]))].into_iter().collect())
            .unwrap();
        PMHSWitness::new(1, q, n, f).unwrap()
    }

    #[test]
    fn nodal_witness_passes_all_axioms() {
        let w = nodal_witness();
        let report = check_pmhs(&w);
        assert!(report.passed(), "{report}");
        assert_eq!(report.r_split, Some(true));
        assert_eq!(
            diamond_of(&w).unwrap(),
            Diamond::from_entries(1, &[((0, 0), 1), ((1, 1), 1)])
        );
    }

    #[test]
    fn flipped_pairing_fails_positivity_only() {
        let q = PairingForm::new(1, Matrix::from_int_rows(&[&[0, 1], &[-1, 0]])).unwrap();
        let n = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [e(2, 1)]))].into_iter().collect())
            .unwrap();
        let w = PMHSWitness::new(1, q, n, f).unwrap();
        let report = check_pmhs(&w);
        assert!(!report.passed());
        for item in &report.items {
            let should_fail = item.name == "primitive positivity";
            assert_eq!(item.passed, !should_fail, "check `{}`", item.name);
        }
    }

    #[test]
    fn zero_nilpotent_with_polarized_flag_passes() {
        // Pure weight-one structure: F^1 = span(e2 + i e1), N = 0.
        let q = PairingForm::new(1, Matrix::from_int_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let n = Matrix::zero(2, 2);
        let mut v = e(2, 1);
        v[0] = GaussianRational::i();
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [v]))].into_iter().collect())
            .unwrap();
        let w = PMHSWitness::new(1, q, n, f).unwrap();
        let report = check_pmhs(&w);
        assert!(report.passed(), "{report}");
        let d = diamond_of(&w).unwrap();
        assert!(d.is_pure());
    }

    #[test]
    fn constructor_rejects_degenerate_inputs() {
        assert_eq!(
            PairingForm::new(1, Matrix::zero(2, 2)).unwrap_err(),
            WitnessError::PairingSingular
        );
        assert_eq!(
            PairingForm::new(0, Matrix::from_int_rows(&[&[0, 1], &[-1, 0]])).unwrap_err(),
            WitnessError::PairingSymmetry
        );
        let q = PairingForm::new(1, Matrix::from_int_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let not_nilpotent = Matrix::identity(2);
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [e(2, 1)]))].into_iter().collect())
            .unwrap();
        assert_eq!(
            PMHSWitness::new(1, q, not_nilpotent, f.clone()).unwrap_err(),
            WitnessError::NilpotencyOrder
        );
        // A shift nilpotent does not preserve the identity pairing.
        let sym = PairingForm::new(2, Matrix::identity(2)).unwrap();
        let shift = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let w = PMHSWitness::new(2, sym, shift, f);
        assert_eq!(w.unwrap_err(), WitnessError::NotInfinitesimallyIsotropic);
    }

    #[test]
    fn membership_of_weight_one_lines() {
        let h = HodgeNumbers::from_row(&[1, 1]);
        let q = PairingForm::new(1, Matrix::from_int_rows(&[&[0, -1], &[1, 0]])).unwrap();
        // span(e2 + i e1): positive side.
        let mut v = e(2, 1);
        v[0] = GaussianRational::i();
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [v]))].into_iter().collect())
            .unwrap();
        assert!(in_period_domain(&f, &q, &h).unwrap());
        // A real line degenerates the Hermitian form.
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [e(2, 0)]))].into_iter().collect())
            .unwrap();
        assert!(!in_period_domain(&f, &q, &h).unwrap());
        // span(e2 - i e1): positivity reversed.
        let mut v = e(2, 1);
        v[0] = -GaussianRational::i();
        let f = HodgeFiltration::new(2, [(1, Subspace::span(2, [v]))].into_iter().collect())
            .unwrap();
        assert!(!in_period_domain(&f, &q, &h).unwrap());
    }

    #[test]
    fn membership_profile_mismatch() {
        let h = HodgeNumbers::from_row(&[1, 1]);
        let q = PairingForm::new(1, Matrix::from_int_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let f = HodgeFiltration::new(2, [(1, Subspace::full(2))].into_iter().collect()).unwrap();
        assert!(matches!(
            in_period_domain(&f, &q, &h),
            Err(DomainError::ProfileMismatch { p: 1, .. })
        ));
    }

    #[test]
    fn orbit_probe_of_nodal_witness() {
        let w = nodal_witness();
        let member = |re: (i64, i64), im: (i64, i64)| {
            GaussianRational::new(ratio(re.0, re.1), ratio(im.0, im.1))
        };
        let zs = vec![
            member((0, 1), (1, 1)),  // i
            member((0, 1), (2, 1)),  // 2i
            member((1, 1), (1, 1)),  // 1 + i
            member((0, 1), (0, 1)),  // 0
            member((0, 1), (-1, 1)), // -i
            member((1, 1), (0, 1)),  // 1
        ];
        let report = orbit_probe(&w, &zs);
        assert!(report.horizontal);
        let verdicts: Vec<bool> = report.samples.iter().map(|s| s.in_domain).collect();
        assert_eq!(verdicts, vec![true, true, true, false, false, false]);
    }
}
