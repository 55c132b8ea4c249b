//! Diagram rendering: node labels, DOT digraphs and the JSON digraph
//! document.  Output is deterministic; identical inputs produce identical
//! bytes.

use serde::{Deserialize, Serialize};

use hodge_core::{Diamond, HodgeNumbers, RelationDigraph};

use crate::docs::{to_json, DiamondEntry};

fn fnv1a64(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Short label for a diamond.  The two classical families are labeled by
/// their indices: weight-one domains with equal Hodge numbers use the
/// corner multiplicity `r`, weight-two symmetric domains use the pair
/// `(r, s)` read off the bottom row.  Anything else gets a stable hash.
pub fn diamond_label(h: &HodgeNumbers, d: &Diamond) -> String {
    let n = h.weight();
    let support_within = |max: i64| h.counts().keys().all(|&p| (0..=max).contains(&p));
    if n == 1 && support_within(1) && h.count(0) == h.count(1) {
        return format!("\u{25C7}_{}", d.get(0, 0));
    }
    if n == 2 && support_within(2) && h.count(0) == h.count(2) {
        return format!("\u{25C7}_{{{},{}}}", d.get(0, 0), d.get(0, 1));
    }
    let mut bytes = Vec::new();
    bytes.extend_from_slice(&n.to_le_bytes());
    for (&(p, q), &m) in d.entries() {
        bytes.extend_from_slice(&p.to_le_bytes());
        bytes.extend_from_slice(&q.to_le_bytes());
        bytes.extend_from_slice(&m.to_le_bytes());
    }
    format!("\u{25C7}#{:08x}", fnv1a64(bytes) as u32)
}

fn entry_summary(d: &Diamond) -> String {
    d.to_string()
}

/// DOT rendering with one node per diamond and one edge per related pair
/// (or cover pair).  Arrows point from less to more degenerate.
pub fn dot_digraph(g: &RelationDigraph, covers_only: bool) -> String {
    let transitive = g.transitivity_report().is_transitive();
    let edges = if covers_only {
        g.cover_edges()
    } else {
        g.edges.clone()
    };
    let mut out = String::from("digraph hodge {\n  rankdir=LR;\n");
    if covers_only && !transitive {
        out.push_str("  // relation is not transitive; cover edges are a display heuristic\n");
    }
    for (i, d) in g.nodes.iter().enumerate() {
        let label = diamond_label(&g.hodge_numbers, d);
        out.push_str(&format!(
            "  n{i} [label=\"{label}\\n{}\"];\n",
            entry_summary(d)
        ));
    }
    for (i, j) in edges {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphNode {
    pub id: usize,
    pub label: String,
    pub entries: Vec<DiamondEntry>,
}

/// JSON form of the digraph with explicit node and edge lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphDocument {
    pub weight: i64,
    pub hodge_numbers: Vec<u64>,
    pub covers_only: bool,
    pub transitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub nodes: Vec<DigraphNode>,
    pub edges: Vec<(usize, usize)>,
}

pub fn digraph_document(g: &RelationDigraph, covers_only: bool) -> DigraphDocument {
    let transitive = g.transitivity_report().is_transitive();
    let edges = if covers_only {
        g.cover_edges()
    } else {
        g.edges.clone()
    };
    let note = (covers_only && !transitive)
        .then(|| "relation is not transitive; cover edges are a display heuristic".to_string());
    DigraphDocument {
        weight: g.hodge_numbers.weight(),
        hodge_numbers: g.hodge_numbers.row(),
        covers_only,
        transitive,
        note,
        nodes: g
            .nodes
            .iter()
            .enumerate()
            .map(|(id, d)| DigraphNode {
                id,
                label: diamond_label(&g.hodge_numbers, d),
                entries: d
                    .entries()
                    .iter()
                    .map(|(&(p, q), &m)| DiamondEntry { p, q, m })
                    .collect(),
            })
            .collect(),
        edges: edges.into_iter().collect(),
    }
}

pub fn digraph_json(g: &RelationDigraph, covers_only: bool) -> String {
    to_json(&digraph_document(g, covers_only))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hodge_core::relation_digraph;

    #[test]
    fn family_labels() {
        let h = HodgeNumbers::from_row(&[2, 2]);
        let d = Diamond::from_entries(1, &[((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
        assert_eq!(diamond_label(&h, &d), "\u{25C7}_1");
        let h2 = HodgeNumbers::from_row(&[2, 4, 2]);
        let d2 = Diamond::from_entries(2, &[((0, 0), 2), ((1, 1), 4), ((2, 2), 2)]);
        assert_eq!(diamond_label(&h2, &d2), "\u{25C7}_{2,0}");
    }

    #[test]
    fn hashed_label_is_stable() {
        let h = HodgeNumbers::from_row(&[1, 2, 2, 1]);
        let d = Diamond::from_entries(3, &[((0, 0), 1), ((1, 1), 2), ((2, 2), 2), ((3, 3), 1)]);
        let a = diamond_label(&h, &d);
        let b = diamond_label(&h, &d);
        assert_eq!(a, b);
        assert!(a.starts_with("\u{25C7}#"));
    }

    #[test]
    fn dot_shape() {
        let h = HodgeNumbers::from_row(&[1, 1]);
        let g = relation_digraph(&h, 16).unwrap();
        let dot = dot_digraph(&g, false);
        assert!(dot.starts_with("digraph hodge {\n  rankdir=LR;\n"));
        assert!(dot.ends_with("}\n"));
    }
}
