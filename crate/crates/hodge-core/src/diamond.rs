//! Hodge diamonds: integer-valued lattice functions that classify the
//! real-split polarized mixed Hodge structures on a period domain.
//!
//! A diamond is a finitely supported function on the `(p, q)` lattice.  For
//! fixed Hodge numbers a nonnegative function is a diamond of the domain iff
//! it satisfies four conditions: columns sum to the Hodge numbers, symmetry
//! about the diagonal `p = q`, symmetry about the anti-diagonal `p + q = n`,
//! and monotone decay along off-diagonals moving away from `p + q = n`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Hodge numbers of a weight-`n` polarized Hodge structure, stored as the
/// map `p -> h^{p, n-p}`.  Together with a polarization parity these data
/// determine the period domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HodgeNumbers {
    weight: i64,
    counts: BTreeMap<i64, u64>,
}

/// One invariant violation found by [`validate_hodge_numbers`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HodgeNumbersViolation {
    /// Weight must be a nonnegative integer.
    NegativeWeight,
    /// Effectivity: support must lie in `0 <= p <= n`.
    SupportOutOfRange { p: i64 },
    /// Conjugation symmetry `h^{p,q} = h^{q,p}` fails at `p`.
    AsymmetricCounts { p: i64 },
    /// Total dimension must be at least one.
    ZeroDimension,
}

impl fmt::Display for HodgeNumbersViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegativeWeight => write!(f, "weight is negative"),
            Self::SupportOutOfRange { p } => write!(f, "count at p={p} lies outside [0, n]"),
            Self::AsymmetricCounts { p } => {
                write!(f, "conjugation symmetry fails between p={p} and its mirror")
            }
            Self::ZeroDimension => write!(f, "total dimension is zero"),
        }
    }
}

impl HodgeNumbers {
    /// Builds the canonical sparse form; zero counts are dropped.
    pub fn new(weight: i64, counts: BTreeMap<i64, u64>) -> Self {
        let counts = counts.into_iter().filter(|&(_, v)| v > 0).collect();
        Self { weight, counts }
    }

    /// Builds from the row `[h^{n,0}, ..., h^{0,n}]`, weight = length - 1.
    pub fn from_row(row: &[u64]) -> Self {
        let n = row.len() as i64 - 1;
        let counts = row
            .iter()
            .enumerate()
            .map(|(i, &v)| (n - i as i64, v))
            .collect();
        Self::new(n, counts)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// `h^{p, n-p}`; zero off the support.
    pub fn count(&self, p: i64) -> u64 {
        self.counts.get(&p).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }

    /// `dim V`, the sum of all Hodge numbers.
    pub fn dimension(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The row `[h^{n,0}, ..., h^{0,n}]`.
    pub fn row(&self) -> Vec<u64> {
        (0..=self.weight).map(|i| self.count(self.weight - i)).collect()
    }
}

/// Checks the type invariants; an empty list means the data are valid.
pub fn validate_hodge_numbers(h: &HodgeNumbers) -> Vec<HodgeNumbersViolation> {
    let mut out = Vec::new();
    if h.weight < 0 {
        out.push(HodgeNumbersViolation::NegativeWeight);
    }
    for &p in h.counts.keys() {
        if p < 0 || p > h.weight {
            out.push(HodgeNumbersViolation::SupportOutOfRange { p });
        }
    }
    for (&p, &v) in &h.counts {
        if h.count(h.weight - p) != v {
            out.push(HodgeNumbersViolation::AsymmetricCounts { p });
        }
    }
    if h.dimension() == 0 {
        out.push(HodgeNumbersViolation::ZeroDimension);
    }
    out
}

/// A Hodge diamond: finitely supported `(p, q) -> multiplicity` with all
/// stored multiplicities strictly positive.  Structural equality and the
/// derived order give the canonical enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diamond {
    weight: i64,
    entries: BTreeMap<(i64, i64), u64>,
}

impl Diamond {
    pub fn new(weight: i64, entries: BTreeMap<(i64, i64), u64>) -> Self {
        let entries = entries.into_iter().filter(|&(_, v)| v > 0).collect();
        Self { weight, entries }
    }

    pub fn from_entries(weight: i64, entries: &[((i64, i64), u64)]) -> Self {
        Self::new(weight, entries.iter().copied().collect())
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn get(&self, p: i64, q: i64) -> u64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total mass; equals `dim V` for a valid diamond.
    pub fn mass(&self) -> u64 {
        self.entries.values().sum()
    }

    /// The translate `g(p, q) = f(p + a, q + a)`; support moves down the
    /// main diagonal, possibly out of the effective window.
    pub fn shifted(&self, a: i64) -> Self {
        assert!(a >= 0, "shift amount must be nonnegative");
        Self {
            weight: self.weight,
            entries: self
                .entries
                .iter()
                .map(|(&(p, q), &v)| ((p - a, q - a), v))
                .collect(),
        }
    }

    /// Pointwise sum of two lattice functions of the same weight.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.weight, other.weight);
        let mut entries = self.entries.clone();
        for (&k, &v) in &other.entries {
            *entries.entry(k).or_insert(0) += v;
        }
        Self::new(self.weight, entries)
    }

    /// True when the diamond is supported on the pure line `p + q = n`.
    pub fn is_pure(&self) -> bool {
        self.entries.keys().all(|&(p, q)| p + q == self.weight)
    }
}

impl fmt::Debug for Diamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diamond(n={}; {})", self.weight, self)
    }
}

impl fmt::Display for Diamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(&(p, q), v)| format!("({p},{q}):{v}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The four defining conditions, named by what they assert.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondCondition {
    /// Columns sum to the Hodge numbers.
    ColumnSums,
    /// Symmetry about the diagonal `p = q`.
    DiagonalSymmetry,
    /// Symmetry about the anti-diagonal `p + q = n`.
    AntiDiagonalSymmetry,
    /// Non-increase along off-diagonals for `p + q >= n`.
    OffDiagonalMonotone,
}

impl fmt::Display for DiamondCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ColumnSums => write!(f, "column sums"),
            Self::DiagonalSymmetry => write!(f, "diagonal symmetry"),
            Self::AntiDiagonalSymmetry => write!(f, "anti-diagonal symmetry"),
            Self::OffDiagonalMonotone => write!(f, "off-diagonal monotonicity"),
        }
    }
}

/// A failed condition together with a witnessing cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionFailure {
    pub condition: DiamondCondition,
    pub cell: (i64, i64),
}

/// Outcome of a diamond validity check, with per-condition diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondValidity {
    pub failures: Vec<ConditionFailure>,
}

impl DiamondValidity {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiamondError {
    #[error("weight mismatch: diamond has weight {diamond}, Hodge numbers have weight {domain}")]
    WeightMismatch { diamond: i64, domain: i64 },
    #[error("invalid Hodge numbers: {0:?}")]
    InvalidHodgeNumbers(Vec<HodgeNumbersViolation>),
    #[error("negative top multiplicity at cell {cell:?}: off-diagonal monotonicity fails")]
    NegativeTop { cell: (i64, i64) },
    #[error("two distinct top families reconstructed the same diamond")]
    PrimitiveCollision,
}

/// Decides whether `f` is a Hodge diamond for the domain `h`, reporting the
/// first witnessing cell of every violated condition.
pub fn is_valid_diamond(h: &HodgeNumbers, f: &Diamond) -> Result<DiamondValidity, DiamondError> {
    if h.weight() != f.weight() {
        return Err(DiamondError::WeightMismatch {
            diamond: f.weight(),
            domain: h.weight(),
        });
    }
    let n = h.weight();
    let mut failures = Vec::new();

    // Column sums: every column, including those outside [0, n] that the
    // support touches, must match the Hodge numbers (zero off the window).
    let mut columns: BTreeMap<i64, u64> = BTreeMap::new();
    for (&(_, q), &v) in f.entries() {
        *columns.entry(q).or_insert(0) += v;
    }
    let q_lo = columns.keys().next().copied().unwrap_or(0).min(0);
    let q_hi = columns.keys().next_back().copied().unwrap_or(n).max(n);
    'columns: for q in q_lo..=q_hi {
        let total = columns.get(&q).copied().unwrap_or(0);
        if total != h.count(n - q) {
            let p = f
                .entries()
                .keys()
                .find(|&&(_, qq)| qq == q)
                .map(|&(p, _)| p)
                .unwrap_or(0);
            failures.push(ConditionFailure {
                condition: DiamondCondition::ColumnSums,
                cell: (p, q),
            });
            break 'columns;
        }
    }

    for (&(p, q), &v) in f.entries() {
        if f.get(q, p) != v {
            failures.push(ConditionFailure {
                condition: DiamondCondition::DiagonalSymmetry,
                cell: (p, q),
            });
            break;
        }
    }

    for (&(p, q), &v) in f.entries() {
        if f.get(n - q, n - p) != v {
            failures.push(ConditionFailure {
                condition: DiamondCondition::AntiDiagonalSymmetry,
                cell: (p, q),
            });
            break;
        }
    }

    // Monotone decay: check every cell on or above the pure line that either
    // carries mass or sits diagonally below a cell carrying mass.
    let mut monotone_cells: Vec<(i64, i64)> = Vec::new();
    for &(p, q) in f.entries().keys() {
        if p + q >= n {
            monotone_cells.push((p, q));
        }
        if p + q - 2 >= n {
            monotone_cells.push((p - 1, q - 1));
        }
    }
    monotone_cells.sort_unstable();
    monotone_cells.dedup();
    for (p, q) in monotone_cells {
        if f.get(p, q) < f.get(p + 1, q + 1) {
            failures.push(ConditionFailure {
                condition: DiamondCondition::OffDiagonalMonotone,
                cell: (p, q),
            });
            break;
        }
    }

    Ok(DiamondValidity { failures })
}

/// Multiplicities of the primitive tops: `j^{p,q}` counts the strings whose
/// top sits at `(p, q)` on the line `p + q = n + l`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimitiveDiamond {
    weight: i64,
    tops: BTreeMap<(i64, i64), u64>,
}

impl PrimitiveDiamond {
    pub fn new(weight: i64, tops: BTreeMap<(i64, i64), u64>) -> Self {
        let tops = tops.into_iter().filter(|&(_, v)| v > 0).collect();
        Self { weight, tops }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn tops(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.tops
    }

    pub fn get(&self, p: i64, q: i64) -> u64 {
        self.tops.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Levels `l >= 0` whose line `p + q = n + l` carries a top.
    pub fn levels(&self) -> Vec<i64> {
        let mut ls: Vec<i64> = self
            .tops
            .keys()
            .map(|&(p, q)| p + q - self.weight)
            .collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }
}

/// Deconvolves a diamond into its primitive tops:
/// `j^{p,q} = f(p,q) - f(p+1,q+1)` on and above the pure line.  A negative
/// difference means the monotonicity condition fails and is reported.
pub fn primitive_decomposition(f: &Diamond) -> Result<PrimitiveDiamond, DiamondError> {
    let n = f.weight();
    let mut cells: Vec<(i64, i64)> = Vec::new();
    for &(p, q) in f.entries().keys() {
        if p + q >= n {
            cells.push((p, q));
        }
        if p + q - 2 >= n {
            cells.push((p - 1, q - 1));
        }
    }
    cells.sort_unstable();
    cells.dedup();
    let mut tops = BTreeMap::new();
    for (p, q) in cells {
        let here = f.get(p, q);
        let deeper = f.get(p + 1, q + 1);
        if here < deeper {
            return Err(DiamondError::NegativeTop { cell: (p, q) });
        }
        if here > deeper {
            tops.insert((p, q), here - deeper);
        }
    }
    Ok(PrimitiveDiamond::new(n, tops))
}

/// Rebuilds the diamond from its tops: each top at `(p, q)` on level `l`
/// spreads down the diagonal through `(p - a, q - a)` for `0 <= a <= l`.
pub fn reconstruct(prim: &PrimitiveDiamond) -> Diamond {
    let n = prim.weight();
    let mut entries: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for (&(p, q), &j) in prim.tops() {
        let level = p + q - n;
        for a in 0..=level {
            *entries.entry((p - a, q - a)).or_insert(0) += j;
        }
    }
    Diamond::new(n, entries)
}

/// The Hodge numbers of the period domain attached to one level of a
/// primitive decomposition: weight `n + l` structures whose Hodge numbers
/// are the tops on that line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubdomainSpec {
    pub level: i64,
    pub weight: i64,
    pub line_numbers: BTreeMap<i64, u64>,
}

impl SubdomainSpec {
    pub fn hodge_numbers(&self) -> HodgeNumbers {
        HodgeNumbers::new(self.weight, self.line_numbers.clone())
    }
}

/// One spec per level with a nonzero top line.
pub fn subdomain_specs(prim: &PrimitiveDiamond) -> Vec<SubdomainSpec> {
    let n = prim.weight();
    let mut by_level: BTreeMap<i64, BTreeMap<i64, u64>> = BTreeMap::new();
    for (&(p, q), &j) in prim.tops() {
        let level = p + q - n;
        *by_level.entry(level).or_default().entry(p).or_insert(0) += j;
    }
    by_level
        .into_iter()
        .map(|(level, line_numbers)| SubdomainSpec {
            level,
            weight: n + level,
            line_numbers,
        })
        .collect()
}
