//! The built-in scenario suite: classical small domains rendered to
//! checked-in golden files.  `hodge examples` regenerates every scenario
//! and diffs it byte-for-byte against the embedded golden.

use hodge_core::{enumerate_diamonds, relation_digraph, HodgeNumbers};

use crate::docs::{to_json, DiamondDocument};
use crate::render::{digraph_json, dot_digraph};

pub struct Scenario {
    pub name: &'static str,
    pub file: &'static str,
    pub golden: &'static str,
    pub generate: fn() -> String,
}

fn domain(row: &[u64]) -> HodgeNumbers {
    HodgeNumbers::from_row(row)
}

pub fn render_enumeration(h: &HodgeNumbers) -> String {
    let docs: Vec<DiamondDocument> = enumerate_diamonds(h)
        .expect("scenario domains are valid")
        .iter()
        .map(|d| DiamondDocument::from_core(h, d))
        .collect();
    to_json(&docs)
}

fn enumeration(row: &'static [u64]) -> impl Fn() -> String {
    move || render_enumeration(&domain(row))
}

fn relations(row: &'static [u64]) -> impl Fn() -> String {
    move || digraph_json(&relation_digraph(&domain(row), 64).unwrap(), false)
}

fn covers_dot(row: &'static [u64]) -> impl Fn() -> String {
    move || dot_digraph(&relation_digraph(&domain(row), 64).unwrap(), true)
}

macro_rules! scenario {
    ($name:literal, $file:literal, $gen:expr) => {
        Scenario {
            name: $name,
            file: $file,
            golden: include_str!(concat!("../goldens/", $file)),
            generate: || ($gen)(),
        }
    };
}

/// Every scenario, in display order.
pub fn scenarios() -> Vec<Scenario> {
    vec![
        scenario!(
            "diamonds-w1-h2-2",
            "w1-h2-2.diamonds.json",
            enumeration(&[2, 2])
        ),
        scenario!(
            "diamonds-w2-h1-2-1",
            "w2-h1-2-1.diamonds.json",
            enumeration(&[1, 2, 1])
        ),
        scenario!(
            "diamonds-w2-h2-4-2",
            "w2-h2-4-2.diamonds.json",
            enumeration(&[2, 4, 2])
        ),
        scenario!(
            "relations-w1-h2-2",
            "w1-h2-2.relations.json",
            relations(&[2, 2])
        ),
        scenario!(
            "relations-w2-h2-4-2",
            "w2-h2-4-2.relations.json",
            relations(&[2, 4, 2])
        ),
        scenario!(
            "covers-w2-h2-4-2",
            "w2-h2-4-2.covers.dot",
            covers_dot(&[2, 4, 2])
        ),
        scenario!(
            "covers-w2-h3-6-3",
            "w2-h3-6-3.covers.dot",
            covers_dot(&[3, 6, 3])
        ),
        scenario!(
            "relations-w3-h1-2-2-1",
            "w3-h1-2-2-1.relations.json",
            relations(&[1, 2, 2, 1])
        ),
    ]
}
