//! The polarized degeneracy relation between Hodge diamonds.
//!
//! `f1 <= f2` holds when `f2` splits as a sum of shifted diamonds, one per
//! level of the primitive decomposition of `f1`, each valid for the period
//! domain that the level's primitive tops define.  The relation is used
//! reflexively: choosing the pure diamond on every level reproduces `f1`
//! itself, so `f <= f` always holds.
//!
//! The decision procedure is a finite search: candidate diamonds per level
//! come from [`enumerate_diamonds`] on the level's subdomain, and a
//! depth-first scan matches their shifted footprints against the target
//! with entrywise and mass pruning.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::diamond::{
    is_valid_diamond, primitive_decomposition, subdomain_specs, ConditionFailure, Diamond,
    DiamondError, HodgeNumbers,
};
use crate::enumerate::enumerate_diamonds;
use crate::par;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error("left diamond is not valid for the domain: {0:?}")]
    InvalidLeft(Vec<ConditionFailure>),
    #[error("right diamond is not valid for the domain: {0:?}")]
    InvalidRight(Vec<ConditionFailure>),
    #[error(transparent)]
    Diamond(#[from] DiamondError),
    #[error("domain has {count} diamonds, above the pairwise-check cap {cap}")]
    CapExceeded { count: usize, cap: usize },
}

/// Decision plus, when the relation holds, one witnessing assignment of a
/// diamond to each level of the left-hand primitive decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub holds: bool,
    pub witness: Option<Vec<(i64, Diamond)>>,
}

struct LevelSet {
    level: i64,
    /// Candidate diamond together with its precomputed footprint
    /// `sum of shifts by 0..=level`.
    choices: Vec<(Diamond, Diamond)>,
}

fn footprint(candidate: &Diamond, level: i64) -> Diamond {
    let mut acc = candidate.clone();
    for a in 1..=level {
        acc = acc.plus(&candidate.shifted(a));
    }
    acc
}

fn level_sets(f1: &Diamond) -> Result<Vec<LevelSet>, DiamondError> {
    let prim = primitive_decomposition(f1)?;
    subdomain_specs(&prim)
        .into_iter()
        .map(|spec| {
            let candidates = enumerate_diamonds(&spec.hodge_numbers())?;
            let choices = candidates
                .into_iter()
                .map(|c| {
                    let fp = footprint(&c, spec.level);
                    (c, fp)
                })
                .collect();
            Ok(LevelSet {
                level: spec.level,
                choices,
            })
        })
        .collect()
}

fn subtract(residual: &mut BTreeMap<(i64, i64), u64>, fp: &Diamond) -> bool {
    for (&cell, &v) in fp.entries() {
        match residual.get(&cell).copied() {
            Some(have) if have >= v => {}
            _ => return false,
        }
    }
    for (&cell, &v) in fp.entries() {
        let have = residual.get_mut(&cell).expect("checked above");
        *have -= v;
        if *have == 0 {
            residual.remove(&cell);
        }
    }
    true
}

fn restore(residual: &mut BTreeMap<(i64, i64), u64>, fp: &Diamond) {
    for (&cell, &v) in fp.entries() {
        *residual.entry(cell).or_insert(0) += v;
    }
}

fn assign_levels(
    sets: &[LevelSet],
    idx: usize,
    residual: &mut BTreeMap<(i64, i64), u64>,
    residual_mass: u64,
    suffix_mass: &[u64],
    picked: &mut Vec<(i64, Diamond)>,
) -> bool {
    // Every remaining level contributes a fixed mass, so the residual mass
    // is pinned; a mismatch cannot be repaired further down.
    if residual_mass != suffix_mass[idx] {
        return false;
    }
    if idx == sets.len() {
        return residual.is_empty();
    }
    let set = &sets[idx];
    for (candidate, fp) in &set.choices {
        if !subtract(residual, fp) {
            continue;
        }
        picked.push((set.level, candidate.clone()));
        let next_mass = residual_mass - fp.mass();
        if assign_levels(sets, idx + 1, residual, next_mass, suffix_mass, picked) {
            return true;
        }
        picked.pop();
        restore(residual, fp);
    }
    false
}

fn decide(sets: &[LevelSet], target: &Diamond) -> Option<Vec<(i64, Diamond)>> {
    let mut suffix_mass = vec![0u64; sets.len() + 1];
    for (i, set) in sets.iter().enumerate().rev() {
        // All candidates of one level share their mass: the column sums of
        // the subdomain force it.
        let level_mass = set
            .choices
            .first()
            .map(|(_, fp)| fp.mass())
            .unwrap_or(0);
        suffix_mass[i] = suffix_mass[i + 1] + level_mass;
    }
    let mut residual: BTreeMap<(i64, i64), u64> = target.entries().clone();
    let mut picked = Vec::with_capacity(sets.len());
    let ok = assign_levels(
        sets,
        0,
        &mut residual,
        target.mass(),
        &suffix_mass,
        &mut picked,
    );
    ok.then_some(picked)
}

/// Decides `f1 <= f2` over the domain `h` and returns a witness when the
/// relation holds.  Witnesses are not unique; the first one found in the
/// canonical candidate order is returned.
pub fn polarized_leq(
    f1: &Diamond,
    f2: &Diamond,
    h: &HodgeNumbers,
) -> Result<RelationResult, RelationError> {
    let left = is_valid_diamond(h, f1)?;
    if !left.is_valid() {
        return Err(RelationError::InvalidLeft(left.failures));
    }
    let right = is_valid_diamond(h, f2)?;
    if !right.is_valid() {
        return Err(RelationError::InvalidRight(right.failures));
    }
    let sets = level_sets(f1)?;
    let witness = decide(&sets, f2);
    Ok(RelationResult {
        holds: witness.is_some(),
        witness,
    })
}

/// The full relation graph of a domain: nodes are the diamonds in canonical
/// order, edges are the strict related pairs (reflexive closure implied).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDigraph {
    pub hodge_numbers: HodgeNumbers,
    pub nodes: Vec<Diamond>,
    pub edges: BTreeSet<(usize, usize)>,
}

/// Triples `(i, j, k)` with `i <= j` and `j <= k` but not `i <= k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitivityReport {
    pub violations: Vec<(usize, usize, usize)>,
}

impl TransitivityReport {
    pub fn is_transitive(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Builds the digraph by deciding every ordered pair.  Pair checks are
/// independent pure computations; with the `parallel` feature they run on
/// the rayon pool, one row (fixed left-hand node) per task, and the rows
/// are merged in index order so the result is deterministic either way.
pub fn relation_digraph(h: &HodgeNumbers, cap: usize) -> Result<RelationDigraph, RelationError> {
    let nodes = enumerate_diamonds(h)?;
    if nodes.len() > cap {
        return Err(RelationError::CapExceeded {
            count: nodes.len(),
            cap,
        });
    }
    let rows: Vec<Result<Vec<usize>, DiamondError>> = par::map_indexed(&nodes, |i, f1| {
        let sets = level_sets(f1)?;
        Ok(nodes
            .iter()
            .enumerate()
            .filter(|&(j, f2)| j != i && decide(&sets, f2).is_some())
            .map(|(j, _)| j)
            .collect())
    });
    let mut edges = BTreeSet::new();
    for (i, row) in rows.into_iter().enumerate() {
        for j in row? {
            edges.insert((i, j));
        }
    }
    Ok(RelationDigraph {
        hodge_numbers: h.clone(),
        nodes,
        edges,
    })
}

impl RelationDigraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// Edges with no intermediate node; the Hasse-style display of the
    /// relation.  When the relation fails transitivity this reduction is a
    /// display heuristic only, which callers should surface.
    pub fn cover_edges(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(i, j)| {
                !(0..self.nodes.len())
                    .any(|k| k != i && k != j && self.has_edge(i, k) && self.has_edge(k, j))
            })
            .collect()
    }

    /// Scans all composable pairs for transitivity failures.
    pub fn transitivity_report(&self) -> TransitivityReport {
        let n = self.nodes.len();
        let mut violations = Vec::new();
        for &(i, j) in &self.edges {
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if self.has_edge(j, k) && !self.has_edge(i, k) {
                    violations.push((i, j, k));
                }
            }
        }
        violations.sort_unstable();
        TransitivityReport { violations }
    }
}
