//! Enumeration of all Hodge diamonds of a period domain.
//!
//! Diamonds are generated through their primitive tops.  A symmetric family
//! of nonnegative top multiplicities on the lines `p + q = n + l` always
//! reconstructs to a function satisfying the two symmetry conditions and
//! monotone decay, so only the column-sum condition constrains the search.
//! The search runs over tops `(p, q)` with `q <= p`, grouped by descending
//! `p`; once the group for `p` is exhausted no later variable can feed
//! column `p`, which gives early pruning points.

use std::collections::BTreeMap;

use crate::diamond::{
    reconstruct, validate_hodge_numbers, Diamond, DiamondError, HodgeNumbers, PrimitiveDiamond,
};

struct TopVar {
    p: i64,
    q: i64,
    /// Columns this top (and its mirror) feeds, with multiplicities.
    cols: Vec<(usize, u64)>,
}

fn top_vars(n: i64) -> Vec<TopVar> {
    let mut vars = Vec::new();
    for p in (0..=n).rev() {
        for q in (0..=p).rev() {
            if p + q < n {
                continue;
            }
            let level = p + q - n;
            let mut cols: BTreeMap<usize, u64> = BTreeMap::new();
            for c in (q - level)..=q {
                *cols.entry(c as usize).or_insert(0) += 1;
            }
            if p != q {
                for c in (p - level)..=p {
                    *cols.entry(c as usize).or_insert(0) += 1;
                }
            }
            vars.push(TopVar {
                p,
                q,
                cols: cols.into_iter().collect(),
            });
        }
    }
    vars
}

fn search(
    vars: &[TopVar],
    last_touch: &[usize],
    idx: usize,
    budget: &mut [u64],
    assignment: &mut Vec<u64>,
    out: &mut Vec<PrimitiveDiamond>,
    weight: i64,
) {
    if idx == vars.len() {
        if budget.iter().all(|&b| b == 0) {
            let mut tops = BTreeMap::new();
            for (var, &v) in vars.iter().zip(assignment.iter()) {
                if v > 0 {
                    tops.insert((var.p, var.q), v);
                    tops.insert((var.q, var.p), v);
                }
            }
            out.push(PrimitiveDiamond::new(weight, tops));
        }
        return;
    }
    let var = &vars[idx];
    let max = var
        .cols
        .iter()
        .map(|&(c, times)| budget[c] / times)
        .min()
        .unwrap_or(0);
    for value in 0..=max {
        let mut next: Vec<u64> = budget.to_vec();
        for &(c, times) in &var.cols {
            next[c] -= value * times;
        }
        // Columns no later variable can feed must be exactly met now.
        if (0..next.len()).any(|c| last_touch[c] == idx && next[c] != 0) {
            continue;
        }
        assignment.push(value);
        search(vars, last_touch, idx + 1, &mut next, assignment, out, weight);
        assignment.pop();
    }
}

/// Lists every Hodge diamond of the domain in canonical order (the derived
/// lexicographic order on the sorted entry lists).
pub fn enumerate_diamonds(h: &HodgeNumbers) -> Result<Vec<Diamond>, DiamondError> {
    let violations = validate_hodge_numbers(h);
    if !violations.is_empty() {
        return Err(DiamondError::InvalidHodgeNumbers(violations));
    }
    let n = h.weight();
    let vars = top_vars(n);
    let mut budget: Vec<u64> = (0..=n).map(|q| h.count(n - q)).collect();
    let mut last_touch = vec![0usize; (n + 1) as usize];
    for (i, var) in vars.iter().enumerate() {
        for &(c, _) in &var.cols {
            last_touch[c] = last_touch[c].max(i);
        }
    }
    let mut families = Vec::new();
    search(
        &vars,
        &last_touch,
        0,
        &mut budget,
        &mut Vec::with_capacity(vars.len()),
        &mut families,
        n,
    );
    let mut diamonds: Vec<Diamond> = families.iter().map(reconstruct).collect();
    diamonds.sort();
    // Distinct top families cannot reconstruct to the same diamond (the
    // decomposition inverts the reconstruction exactly); a collision here
    // would be a genuine bug, so it is reported rather than deduplicated.
    if diamonds.windows(2).any(|w| w[0] == w[1]) {
        return Err(DiamondError::PrimitiveCollision);
    }
    debug_assert!(diamonds.iter().all(|d| d.mass() == h.dimension()));
    Ok(diamonds)
}
