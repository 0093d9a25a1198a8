//! Finite posets, their bounded augmentation, and the linear forms indexed by
//! Hasse-diagram edges.
//!
//! A poset `P = {p_1, .., p_{d-1}}` is stored by its cover relation.  The
//! augmentation adjoins a global minimum and maximum, and the edges of the
//! Hasse diagram of the augmented poset are indexed deterministically
//! (lexicographic by endpoint labels, global minimum first).  Every edge
//! `e = (p_i, p_j)` with `p_i` covered by `p_j` carries the linear form
//! `sigma_e(x) = x_i - x_j` on `R^d`, where the global maximum contributes no
//! coordinate (its value is pinned to zero), so the forms telescope around
//! any cycle of the diagram.

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("malformed poset document: {0}")]
    Malformed(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("cover references unknown label {0:?}")]
    UnknownLabel(String),
    #[error("cover relates {0:?} to itself")]
    SelfCover(String),
    #[error("cycle in covers")]
    CycleInCovers,
    #[error("cover ({0:?}, {1:?}) appears more than once")]
    DuplicateCover(String, String),
    #[error("cover ({0:?}, {1:?}) is implied by transitivity")]
    RedundantCover(String, String),
}

/// Finite poset presented by its cover relation.
///
/// Element labels are sorted, and indices into the sorted list are used
/// everywhere downstream, so identical inputs always produce identical
/// edge orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds a poset from labels and covers `(a, b)` meaning `a` is covered
    /// by `b`.  Rejects duplicates, cycles, and transitively implied covers.
    pub fn new(elements: Vec<String>, covers: Vec<(String, String)>) -> Result<Self, PosetError> {
        let mut labels = elements;
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateLabel(w[0].clone()));
            }
        }
        let index = |l: &str| -> Result<usize, PosetError> {
            labels
                .binary_search_by(|x| x.as_str().cmp(l))
                .map_err(|_| PosetError::UnknownLabel(l.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in &covers {
            if a == b {
                return Err(PosetError::SelfCover(a.clone()));
            }
            pairs.push((index(a)?, index(b)?));
        }
        pairs.sort();
        for w in pairs.windows(2) {
            if w[0] == w[1] {
                let (a, b) = w[0];
                return Err(PosetError::DuplicateCover(labels[a].clone(), labels[b].clone()));
            }
        }

        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in &pairs {
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn's algorithm detects cycles.
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if seen != n {
            return Err(PosetError::CycleInCovers);
        }
        // A cover implied through a longer path is a modeling error.
        for &(a, b) in &pairs {
            if reachable_avoiding(&succ, a, b) {
                return Err(PosetError::RedundantCover(labels[a].clone(), labels[b].clone()));
            }
        }
        Ok(Self { labels, covers: pairs })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|x| x.as_str().cmp(label)).ok()
    }

    /// Cover pairs `(a, b)` with `a` covered by `b`, as element indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }
}

/// Is `to` reachable from `from` by a path of length at least two?
fn reachable_avoiding(succ: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut stack: Vec<usize> = succ[from].iter().copied().filter(|&w| w != to).collect();
    let mut visited = vec![false; succ.len()];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        if visited[v] {
            continue;
        }
        visited[v] = true;
        stack.extend(succ[v].iter().copied());
    }
    false
}

/// Parses the JSON poset document
/// `{"elements": ["a", ...], "covers": [["a","b"], ...]}`.
pub fn parse_poset(text: &str) -> Result<Poset, PosetError> {
    let file: PosetFile =
        serde_json::from_str(text).map_err(|e| PosetError::Malformed(e.to_string()))?;
    Poset::new(file.elements, file.covers)
}

/// Vertex of the augmented poset: the adjoined minimum, an element of `P`,
/// or the adjoined maximum.  The derived order (`Bottom`, then elements in
/// label order, then `Top`) fixes all edge and cycle orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Bottom,
    Element(usize),
    Top,
}

/// An edge of the Hasse diagram of the augmented poset, oriented from the
/// covered element to the covering one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub lower: Vertex,
    pub upper: Vertex,
}

/// The poset with its adjoined bounds and indexed Hasse edges.
#[derive(Debug, Clone)]
pub struct AugmentedPoset {
    poset: Poset,
    edges: Vec<Edge>,
    /// Per vertex id: (edge index, other endpoint vertex id).
    adj: Vec<Vec<(usize, usize)>>,
}

/// Adjoins the global minimum and maximum and indexes all Hasse edges.
pub fn augment(poset: Poset) -> AugmentedPoset {
    AugmentedPoset::new(poset)
}

impl AugmentedPoset {
    pub fn new(poset: Poset) -> Self {
        let n_elems = poset.len();
        let mut edges = Vec::new();
        if n_elems == 0 {
            edges.push(Edge { lower: Vertex::Bottom, upper: Vertex::Top });
        } else {
            let mut has_lower = vec![false; n_elems];
            let mut has_upper = vec![false; n_elems];
            for &(a, b) in poset.covers() {
                has_upper[a] = true;
                has_lower[b] = true;
            }
            for i in 0..n_elems {
                if !has_lower[i] {
                    edges.push(Edge { lower: Vertex::Bottom, upper: Vertex::Element(i) });
                }
            }
            for &(a, b) in poset.covers() {
                edges.push(Edge { lower: Vertex::Element(a), upper: Vertex::Element(b) });
            }
            for i in 0..n_elems {
                if !has_upper[i] {
                    edges.push(Edge { lower: Vertex::Element(i), upper: Vertex::Top });
                }
            }
            edges.sort_by_key(|e| (e.lower, e.upper));
        }

        let vcount = n_elems + 2;
        let mut adj = vec![Vec::new(); vcount];
        for (idx, e) in edges.iter().enumerate() {
            let a = vid_of(e.lower, n_elems);
            let b = vid_of(e.upper, n_elems);
            adj[a].push((idx, b));
            adj[b].push((idx, a));
        }
        Self { poset, edges, adj }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Number of Hasse edges of the augmented poset.
    pub fn n(&self) -> usize {
        self.edges.len()
    }

    /// Krull dimension of the Hibi ring: `|P| + 1`.
    pub fn d(&self) -> usize {
        self.poset.len() + 1
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    pub fn vertex_count(&self) -> usize {
        self.poset.len() + 2
    }

    /// Dense vertex id: bottom, elements in label order, top.
    pub fn vid(&self, v: Vertex) -> usize {
        vid_of(v, self.poset.len())
    }

    pub fn vertex_of(&self, vid: usize) -> Vertex {
        let n = self.poset.len();
        if vid == 0 {
            Vertex::Bottom
        } else if vid == n + 1 {
            Vertex::Top
        } else {
            Vertex::Element(vid - 1)
        }
    }

    /// Incident (edge index, neighbor vertex id) pairs.
    pub fn neighbors(&self, vid: usize) -> &[(usize, usize)] {
        &self.adj[vid]
    }

    /// Edge index with the given endpoints, in either order.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adj[a].iter().find(|&&(_, w)| w == b).map(|&(e, _)| e)
    }

    /// Coordinate index of a vertex, if it carries one.  The adjoined
    /// maximum has none; the adjoined minimum is coordinate 0.
    pub fn coordinate(&self, v: Vertex) -> Option<usize> {
        match v {
            Vertex::Bottom => Some(0),
            Vertex::Element(i) => Some(i + 1),
            Vertex::Top => None,
        }
    }

    /// The linear form of one edge as an integer vector on `R^d`.
    pub fn sigma_form(&self, edge: usize) -> Vec<i64> {
        let mut form = vec![0i64; self.d()];
        let e = &self.edges[edge];
        if let Some(i) = self.coordinate(e.lower) {
            form[i] += 1;
        }
        if let Some(j) = self.coordinate(e.upper) {
            form[j] -= 1;
        }
        form
    }

    /// All edge forms, in edge order.
    pub fn sigma_forms(&self) -> Vec<Vec<i64>> {
        (0..self.n()).map(|e| self.sigma_form(e)).collect()
    }

    /// Evaluates the form of one edge at an integer point.
    pub fn sigma_apply(&self, edge: usize, x: &[i64]) -> i64 {
        self.sigma_form(edge)
            .iter()
            .zip(x)
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Human-readable vertex name.
    pub fn vertex_name(&self, v: Vertex) -> String {
        match v {
            Vertex::Bottom => "0^".to_string(),
            Vertex::Top => "1^".to_string(),
            Vertex::Element(i) => self.poset.label(i).to_string(),
        }
    }

    /// One-based edge name `e1..en`, matching the CLI `--tree` syntax.
    pub fn edge_name(&self, idx: usize) -> String {
        format!("e{}", idx + 1)
    }
}

fn vid_of(v: Vertex, n_elems: usize) -> usize {
    match v {
        Vertex::Bottom => 0,
        Vertex::Element(i) => i + 1,
        Vertex::Top => n_elems + 1,
    }
}

/// All maximal chains of the augmented poset have equal length exactly when
/// the longest and shortest bottom-to-top paths agree.
pub fn is_pure(poset: &Poset) -> bool {
    let ap = AugmentedPoset::new(poset.clone());
    let vcount = ap.vertex_count();
    // Longest/shortest path DP over the DAG, processing in topological order.
    // Vertex ids are not topologically sorted in general, so iterate to a
    // fixed point over the (tiny) diagram instead.
    let mut shortest = vec![usize::MAX; vcount];
    let mut longest = vec![0usize; vcount];
    shortest[0] = 0;
    let mut order: Vec<usize> = vec![0];
    let mut indeg = vec![0usize; vcount];
    for e in ap.edges() {
        indeg[ap.vid(e.upper)] += 1;
    }
    let mut queue: Vec<usize> = (0..vcount).filter(|&v| indeg[v] == 0).collect();
    order.clear();
    while let Some(v) = queue.pop() {
        order.push(v);
        for &(eid, w) in ap.neighbors(v) {
            if ap.vid(ap.edge(eid).lower) == v {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
    }
    for &v in &order {
        for &(eid, w) in ap.neighbors(v) {
            if ap.vid(ap.edge(eid).lower) == v && shortest[v] != usize::MAX {
                shortest[w] = shortest[w].min(shortest[v] + 1);
                longest[w] = longest[w].max(longest[v] + 1);
            }
        }
    }
    let top = vcount - 1;
    shortest[top] == longest[top]
}

/// Shared test fixture: two three-element
/// chains with one cross cover.
#[cfg(test)]
pub(crate) fn two_chains_with_bridge() -> Poset {
    Poset::new(
        (1..=6).map(|i| format!("p{i}")).collect(),
        vec![
            ("p1".into(), "p2".into()),
            ("p2".into(), "p3".into()),
            ("p4".into(), "p5".into()),
            ("p5".into(), "p6".into()),
            ("p5".into(), "p3".into()),
        ],
    )
    .unwrap()
}
