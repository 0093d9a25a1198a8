//! Spanning trees, fundamental cycles, and chordless-circuit enumeration for
//! the Hasse diagram of an augmented poset.

use crate::poset::{AugmentedPoset, Vertex};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HasseError {
    #[error("edge set is not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("edge e{} is a tree edge, not a cotree edge", .0 + 1)]
    NotACotreeEdge(usize),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
}

/// A spanning tree of the Hasse diagram, with the complementary cotree edges
/// kept in ascending index order.  Cotree order is the coordinate order of
/// the divisor class group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    tree_edges: Vec<usize>,
    cotree_edges: Vec<usize>,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn cotree_edges(&self) -> &[usize] {
        &self.cotree_edges
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.in_tree.get(edge).copied().unwrap_or(false)
    }

    /// Position of a cotree edge in cotree order.
    pub fn cotree_position(&self, edge: usize) -> Option<usize> {
        self.cotree_edges.binary_search(&edge).ok()
    }
}

/// Picks a spanning tree: breadth-first from the bottom vertex preferring the
/// lowest edge index, or validates an explicitly supplied edge set.
pub fn choose_spanning_tree(
    ap: &AugmentedPoset,
    seed: Option<&[usize]>,
) -> Result<SpanningTree, HasseError> {
    match seed {
        Some(edges) => validate_tree(ap, edges),
        None => {
            let mut in_tree = vec![false; ap.n()];
            let mut visited = vec![false; ap.vertex_count()];
            let root = ap.vid(Vertex::Bottom);
            visited[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                // Neighbor exploration follows ascending edge index.
                let mut nbrs: Vec<(usize, usize)> = ap.neighbors(v).to_vec();
                nbrs.sort();
                for (eid, w) in nbrs {
                    if !visited[w] {
                        visited[w] = true;
                        in_tree[eid] = true;
                        queue.push_back(w);
                    }
                }
            }
            debug_assert!(visited.iter().all(|&v| v));
            Ok(collect_tree(ap, in_tree))
        }
    }
}

/// Builds a random spanning tree from a shuffled edge order (randomized
/// Kruskal).  Used by the tree-independence checks.
pub fn random_spanning_tree<R: rand::Rng>(ap: &AugmentedPoset, rng: &mut R) -> SpanningTree {
    use rand::seq::SliceRandom;
    let mut order: Vec<usize> = (0..ap.n()).collect();
    order.shuffle(rng);
    let mut dsu = Dsu::new(ap.vertex_count());
    let mut in_tree = vec![false; ap.n()];
    for eid in order {
        let e = ap.edge(eid);
        let (a, b) = (ap.vid(e.lower), ap.vid(e.upper));
        if dsu.union(a, b) {
            in_tree[eid] = true;
        }
    }
    collect_tree(ap, in_tree)
}

fn collect_tree(ap: &AugmentedPoset, in_tree: Vec<bool>) -> SpanningTree {
    let tree_edges: Vec<usize> = (0..ap.n()).filter(|&e| in_tree[e]).collect();
    let cotree_edges: Vec<usize> = (0..ap.n()).filter(|&e| !in_tree[e]).collect();
    SpanningTree { tree_edges, cotree_edges, in_tree }
}

fn validate_tree(ap: &AugmentedPoset, edges: &[usize]) -> Result<SpanningTree, HasseError> {
    for &e in edges {
        if e >= ap.n() {
            return Err(HasseError::EdgeOutOfRange(e));
        }
    }
    let mut in_tree = vec![false; ap.n()];
    for &e in edges {
        if in_tree[e] {
            return Err(HasseError::NotASpanningTree(format!(
                "edge e{} listed twice",
                e + 1
            )));
        }
        in_tree[e] = true;
    }
    if edges.len() != ap.d() {
        return Err(HasseError::NotASpanningTree(format!(
            "{} edges supplied, {} needed",
            edges.len(),
            ap.d()
        )));
    }
    let mut dsu = Dsu::new(ap.vertex_count());
    for &e in edges {
        let edge = ap.edge(e);
        if !dsu.union(ap.vid(edge.lower), ap.vid(edge.upper)) {
            return Err(HasseError::NotASpanningTree("edge set contains a cycle".into()));
        }
    }
    Ok(collect_tree(ap, in_tree))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra] = rb;
            true
        }
    }
}

/// A cycle of the Hasse diagram, recorded as the vertex sequence together
/// with the edges between consecutive vertices (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i+1 mod m]`.
    pub edges: Vec<usize>,
    pub is_circuit: bool,
}

/// Orientation/tree split of a cycle's edges.
///
/// `x_plus` holds the edges traversed upward (covered element first),
/// `x_minus` the ones traversed downward; `y`/`z` restrict those to tree and
/// cotree edges respectively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePartition {
    pub x_plus: Vec<usize>,
    pub x_minus: Vec<usize>,
    pub y_plus: Vec<usize>,
    pub y_minus: Vec<usize>,
    pub z_plus: Vec<usize>,
    pub z_minus: Vec<usize>,
}

/// The unique cycle formed by a cotree edge and the tree path between its
/// endpoints.  The traversal starts at the covering endpoint of the cotree
/// edge, so that edge is always traversed upward (it lands in `z_plus`).
pub fn fundamental_cycle(
    ap: &AugmentedPoset,
    tree: &SpanningTree,
    cotree_edge: usize,
) -> Result<Cycle, HasseError> {
    if cotree_edge >= ap.n() {
        return Err(HasseError::EdgeOutOfRange(cotree_edge));
    }
    if tree.contains(cotree_edge) {
        return Err(HasseError::NotACotreeEdge(cotree_edge));
    }
    let e = ap.edge(cotree_edge);
    let start = ap.vid(e.upper);
    let goal = ap.vid(e.lower);
    // BFS through tree edges only.
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; ap.vertex_count()];
    let mut visited = vec![false; ap.vertex_count()];
    visited[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if v == goal {
            break;
        }
        for &(eid, w) in ap.neighbors(v) {
            if tree.contains(eid) && !visited[w] {
                visited[w] = true;
                prev[w] = Some((v, eid));
                queue.push_back(w);
            }
        }
    }
    let mut path_vertices = vec![goal];
    let mut path_edges = Vec::new();
    let mut v = goal;
    while v != start {
        let (p, eid) = prev[v].expect("tree connects all vertices");
        path_edges.push(eid);
        path_vertices.push(p);
        v = p;
    }
    path_vertices.reverse();
    path_edges.reverse();
    // Vertex order: upper endpoint, tree path down to lower endpoint; the
    // closing edge is the cotree edge itself.
    path_edges.push(cotree_edge);
    let vertices: Vec<Vertex> = path_vertices.iter().map(|&v| ap.vertex_of(v)).collect();
    let is_circuit = chordless(ap, &path_vertices);
    Ok(Cycle { vertices, edges: path_edges, is_circuit })
}

fn chordless(ap: &AugmentedPoset, vids: &[usize]) -> bool {
    let m = vids.len();
    for i in 0..m {
        for j in i + 1..m {
            let adjacent_in_cycle = j == i + 1 || (i == 0 && j == m - 1);
            if !adjacent_in_cycle && ap.edge_between(vids[i], vids[j]).is_some() {
                return false;
            }
        }
    }
    true
}

/// All chordless cycles of the Hasse diagram, each reported once in canonical
/// orientation: the sequence starts at the smallest vertex and proceeds
/// toward its smaller cycle neighbor.
pub fn enumerate_circuits(ap: &AugmentedPoset) -> Vec<Cycle> {
    let vcount = ap.vertex_count();
    let mut found: Vec<Vec<usize>> = Vec::new();
    // Simple-cycle DFS: each cycle is discovered from its smallest vertex,
    // visiting only larger vertices, once per direction; keep the canonical
    // direction (second vertex smaller than last).
    for root in 0..vcount {
        let mut path = vec![root];
        let mut on_path = vec![false; vcount];
        on_path[root] = true;
        dfs_cycles(ap, root, root, &mut path, &mut on_path, &mut found);
    }
    let mut circuits: Vec<Cycle> = found
        .into_iter()
        .filter(|vids| chordless(ap, vids))
        .map(|vids| {
            let edges: Vec<usize> = (0..vids.len())
                .map(|i| {
                    ap.edge_between(vids[i], vids[(i + 1) % vids.len()])
                        .expect("consecutive cycle vertices are adjacent")
                })
                .collect();
            let vertices = vids.iter().map(|&v| ap.vertex_of(v)).collect();
            Cycle { vertices, edges, is_circuit: true }
        })
        .collect();
    circuits.sort_by(|a, b| {
        (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices))
    });
    circuits
}

fn dfs_cycles(
    ap: &AugmentedPoset,
    root: usize,
    v: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    let mut nbrs: Vec<usize> = ap.neighbors(v).iter().map(|&(_, w)| w).collect();
    nbrs.sort();
    nbrs.dedup();
    for w in nbrs {
        if w == root && path.len() >= 3 {
            // Canonical direction only.
            if path[1] < path[path.len() - 1] {
                found.push(path.clone());
            }
        } else if w > root && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            dfs_cycles(ap, root, w, path, on_path, found);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Splits a cycle's edges by traversal orientation and tree membership.
pub fn cycle_partition(ap: &AugmentedPoset, cycle: &Cycle, tree: &SpanningTree) -> CyclePartition {
    let m = cycle.vertices.len();
    let mut part = CyclePartition {
        x_plus: Vec::new(),
        x_minus: Vec::new(),
        y_plus: Vec::new(),
        y_minus: Vec::new(),
        z_plus: Vec::new(),
        z_minus: Vec::new(),
    };
    for i in 0..m {
        let eid = cycle.edges[i];
        let from = cycle.vertices[i];
        let upward = ap.edge(eid).lower == from;
        if upward {
            part.x_plus.push(eid);
            if tree.contains(eid) {
                part.y_plus.push(eid);
            } else {
                part.z_plus.push(eid);
            }
        } else {
            part.x_minus.push(eid);
            if tree.contains(eid) {
                part.y_minus.push(eid);
            } else {
                part.z_minus.push(eid);
            }
        }
    }
    for v in [
        &mut part.x_plus,
        &mut part.x_minus,
        &mut part.y_plus,
        &mut part.y_minus,
        &mut part.z_plus,
        &mut part.z_minus,
    ] {
        v.sort_unstable();
    }
    part
}

/// Reverses a cycle's traversal direction (swapping the orientation blocks).
pub fn reverse_cycle(cycle: &Cycle) -> Cycle {
    let mut vertices = cycle.vertices.clone();
    vertices[1..].reverse();
    let mut edges = cycle.edges.clone();
    edges.reverse();
    Cycle { vertices, edges, is_circuit: cycle.is_circuit }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{augment, two_chains_with_bridge, Poset};

    fn bridge_ap() -> AugmentedPoset {
        augment(two_chains_with_bridge())
    }

    /// Fixture tree: every edge except the bottom edge (bottom, p1) at
    /// index 0 and the bridge edge (p5, p3) at index 6.
    fn bridge_tree(ap: &AugmentedPoset) -> SpanningTree {
        choose_spanning_tree(ap, Some(&[1, 2, 3, 4, 5, 7, 8])).unwrap()
    }

    #[test]
    fn explicit_tree_accepted() {
        let ap = bridge_ap();
        let tree = bridge_tree(&ap);
        assert_eq!(tree.tree_edges(), &[1, 2, 3, 4, 5, 7, 8]);
        assert_eq!(tree.cotree_edges(), &[0, 6]);
    }

    #[test]
    fn tree_of_tree_diagram_is_everything() {
        let ap = augment(
            Poset::new(
                vec!["a".into(), "b".into()],
                vec![("a".into(), "b".into())],
            )
            .unwrap(),
        );
        let tree = choose_spanning_tree(&ap, None).unwrap();
        assert_eq!(tree.tree_edges(), &[0, 1, 2]);
        assert!(tree.cotree_edges().is_empty());
    }

    #[test]
    fn seed_with_cycle_rejected() {
        let ap = bridge_ap();
        // The bridge edge plus the upper square edges form the cycle
        // p3, top, p6, p5.
        let err = choose_spanning_tree(&ap, Some(&[0, 1, 2, 4, 6, 7, 8])).unwrap_err();
        assert!(matches!(err, HasseError::NotASpanningTree(_)));
    }

    #[test]
    fn seed_with_wrong_count_rejected() {
        let ap = bridge_ap();
        assert!(matches!(
            choose_spanning_tree(&ap, Some(&[1, 2, 3])),
            Err(HasseError::NotASpanningTree(_))
        ));
    }

    #[test]
    fn fundamental_cycle_of_bridge_cotree() {
        let ap = bridge_ap();
        let tree = bridge_tree(&ap);
        // The bridge joins p5 and p3; its tree cycle runs through the top.
        let c = fundamental_cycle(&ap, &tree, 6).unwrap();
        let names: Vec<String> = c.vertices.iter().map(|&v| ap.vertex_name(v)).collect();
        assert_eq!(names, vec!["p3", "1^", "p6", "p5"]);
        assert!(c.is_circuit);
        let part = cycle_partition(&ap, &c, &tree);
        assert_eq!(part.z_plus, vec![6]);
        assert!(part.z_minus.is_empty());

        // The bottom edge of p1 closes the full rim, which has the bridge
        // edge as a chord.
        let c1 = fundamental_cycle(&ap, &tree, 0).unwrap();
        assert_eq!(c1.edges.len(), 8);
        assert!(!c1.is_circuit);
        let part1 = cycle_partition(&ap, &c1, &tree);
        assert_eq!(part1.z_plus, vec![0]);
        assert_eq!(part1.y_plus, vec![2, 3, 4]);
        assert_eq!(part1.y_minus, vec![1, 5, 7, 8]);
    }

    #[test]
    fn fundamental_cycle_rejects_tree_edge() {
        let ap = bridge_ap();
        let tree = bridge_tree(&ap);
        assert_eq!(
            fundamental_cycle(&ap, &tree, 1).unwrap_err(),
            HasseError::NotACotreeEdge(1)
        );
    }

    #[test]
    fn bridge_circuits() {
        let ap = bridge_ap();
        let circuits = enumerate_circuits(&ap);
        assert_eq!(circuits.len(), 2);
        let lens: Vec<usize> = circuits.iter().map(|c| c.vertices.len()).collect();
        assert_eq!(lens, vec![4, 6]);
        // The 8-edge rim has the bridge as a chord, so it is not a circuit.
        for c in &circuits {
            assert!(c.is_circuit);
        }
    }

    #[test]
    fn partition_of_hexagon_cycle() {
        let ap = bridge_ap();
        let tree = bridge_tree(&ap);
        // The six-vertex circuit (bottom, p1, p2, p3, p5, p4): three edges
        // up the left chain, bridge and right chain down.
        let circuits = enumerate_circuits(&ap);
        let c6 = &circuits[1];
        let names: Vec<String> = c6.vertices.iter().map(|&v| ap.vertex_name(v)).collect();
        assert_eq!(names, vec!["0^", "p1", "p2", "p3", "p5", "p4"]);
        let part = cycle_partition(&ap, c6, &tree);
        assert_eq!(part.x_plus, vec![0, 2, 3]);
        assert_eq!(part.y_plus, vec![2, 3]);
        assert_eq!(part.z_plus, vec![0]);
        assert_eq!(part.x_minus, vec![1, 5, 6]);
        assert_eq!(part.y_minus, vec![1, 5]);
        assert_eq!(part.z_minus, vec![6]);
    }

    #[test]
    fn reversal_swaps_blocks() {
        let ap = bridge_ap();
        let tree = bridge_tree(&ap);
        for c in enumerate_circuits(&ap) {
            let part = cycle_partition(&ap, &c, &tree);
            let rpart = cycle_partition(&ap, &reverse_cycle(&c), &tree);
            assert_eq!(part.x_plus, rpart.x_minus);
            assert_eq!(part.x_minus, rpart.x_plus);
            assert_eq!(part.z_plus, rpart.z_minus);
        }
    }

    #[test]
    fn tree_diagram_has_no_circuits() {
        // Only chains give tree-shaped diagrams once the bounds are added.
        let ap = augment(
            Poset::new(
                vec!["a".into(), "b".into(), "c".into()],
                vec![("a".into(), "b".into()), ("b".into(), "c".into())],
            )
            .unwrap(),
        );
        assert!(enumerate_circuits(&ap).is_empty());
    }

    /// Independent oracle: a vertex subset induces a circuit exactly when the
    /// induced subgraph is connected, 2-regular, and has no extra edges.
    fn circuits_by_subsets(ap: &AugmentedPoset) -> usize {
        let vcount = ap.vertex_count();
        let mut count = 0;
        for mask in 0u32..(1 << vcount) {
            let verts: Vec<usize> = (0..vcount).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.len() < 3 {
                continue;
            }
            let mut degree_ok = true;
            let mut edge_total = 0;
            for &v in &verts {
                let deg = ap
                    .neighbors(v)
                    .iter()
                    .filter(|&&(_, w)| mask >> w & 1 == 1)
                    .count();
                edge_total += deg;
                if deg != 2 {
                    degree_ok = false;
                    break;
                }
            }
            if !degree_ok || edge_total != 2 * verts.len() {
                continue;
            }
            // Connectivity of the induced subgraph.
            let mut seen = vec![false; vcount];
            let mut stack = vec![verts[0]];
            seen[verts[0]] = true;
            let mut reached = 0;
            while let Some(v) = stack.pop() {
                reached += 1;
                for &(_, w) in ap.neighbors(v) {
                    if mask >> w & 1 == 1 && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if reached == verts.len() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn circuit_enumeration_matches_subset_oracle() {
        for poset in [
            two_chains_with_bridge(),
            Poset::new(vec!["a".into(), "b".into(), "c".into()], vec![]).unwrap(),
            Poset::new(
                vec!["a".into(), "b".into(), "c".into(), "d".into()],
                vec![
                    ("a".into(), "b".into()),
                    ("a".into(), "c".into()),
                    ("b".into(), "d".into()),
                    ("c".into(), "d".into()),
                ],
            )
            .unwrap(),
        ] {
            let ap = augment(poset);
            assert_eq!(enumerate_circuits(&ap).len(), circuits_by_subsets(&ap));
        }
    }

    #[test]
    fn cycle_sigma_sums_balance() {
        // Around any cycle the upward forms sum to the downward forms.
        let ap = bridge_ap();
        let tree = bridge_tree(&ap);
        for c in enumerate_circuits(&ap) {
            let part = cycle_partition(&ap, &c, &tree);
            let mut plus = vec![0i64; ap.d()];
            let mut minus = vec![0i64; ap.d()];
            for &e in &part.x_plus {
                for (k, v) in ap.sigma_form(e).into_iter().enumerate() {
                    plus[k] += v;
                }
            }
            for &e in &part.x_minus {
                for (k, v) in ap.sigma_form(e).into_iter().enumerate() {
                    minus[k] += v;
                }
            }
            assert_eq!(plus, minus);
        }
    }
}
