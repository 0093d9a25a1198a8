//! A fixed corpus of small posets used by the verification suites: chains,
//! disjoint-chain (Segre) posets, the bridged double chain, and a spread of
//! other shapes with nontrivial class groups.

use crate::poset::Poset;
use crate::segre::{segre_poset, SegreSpec};

pub struct CorpusEntry {
    pub name: &'static str,
    pub poset: Poset,
}

fn poset(labels: &[&str], covers: &[(&str, &str)]) -> Poset {
    Poset::new(
        labels.iter().map(|s| s.to_string()).collect(),
        covers
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    )
    .expect("corpus posets are valid")
}

fn segre(lengths: &[usize]) -> Poset {
    segre_poset(&SegreSpec::from_chain_lengths(lengths).expect("valid spec"))
}

/// The bridged double chain: two three-element chains with one cross cover.
pub fn bridged_double_chain() -> Poset {
    poset(
        &["p1", "p2", "p3", "p4", "p5", "p6"],
        &[
            ("p1", "p2"),
            ("p2", "p3"),
            ("p4", "p5"),
            ("p5", "p6"),
            ("p5", "p3"),
        ],
    )
}

/// Twenty posets with at most seven elements.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry { name: "chain1", poset: poset(&["a"], &[]) },
        CorpusEntry { name: "chain2", poset: poset(&["a", "b"], &[("a", "b")]) },
        CorpusEntry {
            name: "chain3",
            poset: poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]),
        },
        CorpusEntry { name: "segre_1_1", poset: segre(&[1, 1]) },
        CorpusEntry { name: "segre_1_2", poset: segre(&[1, 2]) },
        CorpusEntry { name: "segre_2_2", poset: segre(&[2, 2]) },
        CorpusEntry { name: "segre_1_3", poset: segre(&[1, 3]) },
        CorpusEntry { name: "segre_2_3", poset: segre(&[2, 3]) },
        CorpusEntry { name: "segre_3_3", poset: segre(&[3, 3]) },
        CorpusEntry { name: "segre_1_1_1", poset: segre(&[1, 1, 1]) },
        CorpusEntry { name: "segre_1_1_2", poset: segre(&[1, 1, 2]) },
        CorpusEntry { name: "segre_1_2_2", poset: segre(&[1, 2, 2]) },
        CorpusEntry { name: "segre_2_2_2", poset: segre(&[2, 2, 2]) },
        CorpusEntry { name: "bridged_double_chain", poset: bridged_double_chain() },
        CorpusEntry {
            name: "n_poset",
            poset: poset(
                &["a", "b", "c", "d"],
                &[("a", "c"), ("b", "c"), ("b", "d")],
            ),
        },
        CorpusEntry {
            name: "bowtie",
            poset: poset(
                &["a", "b", "c", "d", "e"],
                &[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e")],
            ),
        },
        CorpusEntry {
            name: "diamond_grid",
            poset: poset(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
            ),
        },
        CorpusEntry {
            name: "y_poset",
            poset: poset(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("b", "c"), ("b", "d")],
            ),
        },
        CorpusEntry {
            name: "fence5",
            poset: poset(
                &["a", "b", "c", "d", "e"],
                &[("a", "b"), ("c", "b"), ("c", "d"), ("e", "d")],
            ),
        },
        CorpusEntry {
            name: "claw",
            poset: poset(
                &["a", "b", "c", "m"],
                &[("a", "m"), ("b", "m"), ("c", "m")],
            ),
        },
    ]
}
