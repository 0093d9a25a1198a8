//! The divisor class group of a Hibi ring and the spanning-tree coordinates
//! on it.
//!
//! A divisor is an integer vector indexed by Hasse edges.  Fixing a spanning
//! tree, the tree-edge forms assemble into a unimodular matrix, so every
//! divisor has a unique integer preimage over the tree edges; subtracting it
//! leaves the cotree coordinates, which parameterize the class group.

use crate::hasse::SpanningTree;
use crate::matrix::RationalMatrix;
use crate::poset::{AugmentedPoset, Vertex};
use crate::rational::rat;
use std::collections::VecDeque;

/// Integer divisor vector, one coefficient per Hasse edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorVector(pub Vec<i64>);

/// A divisor class in cotree coordinates.  Coordinates depend on the
/// spanning tree that produced them, so a class only makes sense next to its
/// tree; serialized output always carries the two together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Self { coords: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

/// Free rank of the divisor class group: edges minus dimension.
pub fn class_group_rank(ap: &AugmentedPoset) -> usize {
    ap.n() - ap.d()
}

/// Values on the vertices of the augmented poset that solve the tree system
/// `sigma_e(y) = a_e` for all tree edges `e`, with the top vertex pinned at
/// zero.  Walking the tree makes the system triangular, so the solution is
/// integral and unique.
fn tree_vertex_values(ap: &AugmentedPoset, tree: &SpanningTree, a: &[i64]) -> Vec<i64> {
    let vcount = ap.vertex_count();
    let top = ap.vid(Vertex::Top);
    let mut value = vec![0i64; vcount];
    let mut known = vec![false; vcount];
    known[top] = true;
    let mut queue = VecDeque::from([top]);
    while let Some(v) = queue.pop_front() {
        for &(eid, w) in ap.neighbors(v) {
            if tree.contains(eid) && !known[w] {
                let e = ap.edge(eid);
                let lower = ap.vid(e.lower);
                // sigma_e = value(lower) - value(upper), top pinned at 0.
                value[w] = if lower == w {
                    value[v] + a[eid]
                } else {
                    value[v] - a[eid]
                };
                known[w] = true;
                queue.push_back(w);
            }
        }
    }
    debug_assert!(known.iter().all(|&k| k));
    value
}

/// Projects a divisor vector to its class in cotree coordinates.
pub fn project_divisor(
    ap: &AugmentedPoset,
    tree: &SpanningTree,
    a: &DivisorVector,
) -> DivisorClass {
    assert_eq!(a.0.len(), ap.n(), "divisor vector length must equal edge count");
    let values = tree_vertex_values(ap, tree, &a.0);
    let sigma_of = |eid: usize| -> i64 {
        let e = ap.edge(eid);
        let lower = values[ap.vid(e.lower)];
        let upper = match e.upper {
            Vertex::Top => 0,
            v => values[ap.vid(v)],
        };
        lower - upper
    };
    let coords = tree
        .cotree_edges()
        .iter()
        .map(|&eid| a.0[eid] - sigma_of(eid))
        .collect();
    DivisorClass::new(coords)
}

/// The tree-coordinate transform: the square matrix whose rows are the
/// tree-edge forms, in tree order.  Always unimodular.
pub fn tree_transform(ap: &AugmentedPoset, tree: &SpanningTree) -> RationalMatrix {
    let rows: Vec<Vec<_>> = tree
        .tree_edges()
        .iter()
        .map(|&eid| ap.sigma_form(eid).into_iter().map(rat).collect())
        .collect();
    RationalMatrix::from_rows(rows).expect("tree rows are rectangular")
}

/// Applies the full edge-form map to an integer point: `y -> (sigma_e(y))_e`.
pub fn sigma_image(ap: &AugmentedPoset, y: &[i64]) -> DivisorVector {
    DivisorVector((0..ap.n()).map(|e| ap.sigma_apply(e, y)).collect())
}
