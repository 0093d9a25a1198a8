//! Conic divisorial ideal classes: the circuit-inequality polytope, its
//! lattice points, the half-open cell attached to each class, and the direct
//! LP oracle that certifies conicity from the definition.

use crate::classgroup::{DivisorClass, DivisorVector};
use crate::hasse::{cycle_partition, enumerate_circuits, fundamental_cycle, SpanningTree};
use crate::lp::{strict_feasibility, Feasibility, LinearConstraint, Sense};
use crate::poset::AugmentedPoset;
use crate::rational::rat;
use itertools::Itertools;

/// One two-sided circuit inequality `lower <= <coeffs, z> <= upper` on the
/// cotree coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitBound {
    pub coeffs: Vec<i64>,
    pub lower: i64,
    pub upper: i64,
}

impl CircuitBound {
    pub fn admits(&self, z: &[i64]) -> bool {
        let v: i64 = self.coeffs.iter().zip(z).map(|(c, x)| c * x).sum();
        self.lower <= v && v <= self.upper
    }
}

/// The polytope of conic classes in cotree coordinates: one inequality pair
/// per chordless circuit of the Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicSystem {
    pub ambient_dim: usize,
    pub bounds: Vec<CircuitBound>,
}

impl ConicSystem {
    pub fn contains(&self, z: &[i64]) -> bool {
        self.bounds.iter().all(|b| b.admits(z))
    }

    /// The system as explicit constraint pairs over the rationals.
    pub fn constraint_pairs(&self) -> Vec<(LinearConstraint, LinearConstraint)> {
        self.bounds
            .iter()
            .map(|b| {
                let coeffs: Vec<_> = b.coeffs.iter().map(|&c| rat(c)).collect();
                (
                    LinearConstraint::new(coeffs.clone(), Sense::Ge, rat(b.lower)),
                    LinearConstraint::new(coeffs, Sense::Le, rat(b.upper)),
                )
            })
            .collect()
    }
}

/// Builds the circuit-inequality system for a fixed spanning tree.
pub fn conic_polytope(ap: &AugmentedPoset, tree: &SpanningTree) -> ConicSystem {
    let rank = tree.cotree_edges().len();
    let bounds = enumerate_circuits(ap)
        .iter()
        .map(|c| {
            let part = cycle_partition(ap, c, tree);
            let mut coeffs = vec![0i64; rank];
            for &e in &part.z_plus {
                coeffs[tree.cotree_position(e).expect("cotree edge")] += 1;
            }
            for &e in &part.z_minus {
                coeffs[tree.cotree_position(e).expect("cotree edge")] -= 1;
            }
            CircuitBound {
                coeffs,
                lower: -(part.x_minus.len() as i64) + 1,
                upper: part.x_plus.len() as i64 - 1,
            }
        })
        .collect();
    ConicSystem { ambient_dim: rank, bounds }
}

/// Per-coordinate enumeration bounds from the fundamental cycle of each
/// cotree edge.
pub fn cotree_box(ap: &AugmentedPoset, tree: &SpanningTree) -> Vec<(i64, i64)> {
    tree.cotree_edges()
        .iter()
        .map(|&e| {
            let c = fundamental_cycle(ap, tree, e).expect("cotree edge");
            let part = cycle_partition(ap, &c, tree);
            debug_assert_eq!(part.z_plus, vec![e]);
            (
                -(part.x_minus.len() as i64) + 1,
                part.x_plus.len() as i64 - 1,
            )
        })
        .collect()
}

/// All integer points of the conic polytope: the fundamental-cycle box is
/// swept and filtered through every circuit inequality.
pub fn enumerate_conic(ap: &AugmentedPoset, tree: &SpanningTree) -> Vec<DivisorClass> {
    let system = conic_polytope(ap, tree);
    let ranges = cotree_box(ap, tree);
    box_points(&ranges)
        .filter(|z| system.contains(z))
        .map(DivisorClass::new)
        .sorted()
        .collect()
}

/// Iterator over the integer points of a product of ranges.  The empty
/// product yields exactly one empty point.
pub fn box_points(ranges: &[(i64, i64)]) -> impl Iterator<Item = Vec<i64>> + '_ {
    ranges
        .iter()
        .map(|&(lo, hi)| lo..=hi)
        .multi_cartesian_product()
}

/// The half-open full-dimensional cell of a class, in tree coordinates
/// `y_k = sigma_{tree edge k}(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub ambient_dim: usize,
    /// Mixed strict/weak constraints cutting out the half-open cell.
    pub constraints: Vec<LinearConstraint>,
}

impl Cell {
    /// Weakened constraints describing the closure.
    pub fn closure(&self) -> Vec<LinearConstraint> {
        self.constraints.iter().map(LinearConstraint::closure).collect()
    }

    /// Fully strict constraints describing the interior.
    pub fn interior(&self) -> Vec<LinearConstraint> {
        self.constraints
            .iter()
            .map(|c| {
                let sense = match c.sense {
                    Sense::Le => Sense::Lt,
                    Sense::Ge => Sense::Gt,
                    s => s,
                };
                LinearConstraint::new(c.coeffs.clone(), sense, c.bound.clone())
            })
            .collect()
    }

    pub fn is_nonempty(&self) -> bool {
        matches!(
            strict_feasibility(&self.constraints, self.ambient_dim),
            Ok(Feasibility::Feasible { .. })
        )
    }
}

/// Builds the cell of a class: the semi-open unit box on the tree
/// coordinates, sliced by one half-open slab per cotree edge.
pub fn cell_of(class: &DivisorClass, ap: &AugmentedPoset, tree: &SpanningTree) -> Cell {
    let d = ap.d();
    assert_eq!(class.rank(), tree.cotree_edges().len(), "class rank must match tree");
    let tree_position = |edge: usize| -> usize {
        tree.tree_edges()
            .binary_search(&edge)
            .expect("edge is a tree edge")
    };
    let mut constraints = Vec::with_capacity(2 * ap.n());
    for k in 0..d {
        let mut unit = vec![0i64; d];
        unit[k] = 1;
        constraints.push(LinearConstraint::from_ints(&unit, Sense::Gt, -1));
        constraints.push(LinearConstraint::from_ints(&unit, Sense::Le, 0));
    }
    for (j, &e) in tree.cotree_edges().iter().enumerate() {
        let c = fundamental_cycle(ap, tree, e).expect("cotree edge");
        let part = cycle_partition(ap, &c, tree);
        debug_assert_eq!(part.z_plus, vec![e]);
        let mut coeffs = vec![0i64; d];
        for &f in &part.y_minus {
            coeffs[tree_position(f)] += 1;
        }
        for &f in &part.y_plus {
            coeffs[tree_position(f)] -= 1;
        }
        let m = class.coords[j];
        constraints.push(LinearConstraint::from_ints(&coeffs, Sense::Gt, m - 1));
        constraints.push(LinearConstraint::from_ints(&coeffs, Sense::Le, m));
    }
    Cell { ambient_dim: d, constraints }
}

/// Lifts a class to a divisor representative: zero on tree edges, class
/// coordinates on cotree edges.
pub fn lift_class(ap: &AugmentedPoset, tree: &SpanningTree, class: &DivisorClass) -> DivisorVector {
    let mut a = vec![0i64; ap.n()];
    for (j, &e) in tree.cotree_edges().iter().enumerate() {
        a[e] = class.coords[j];
    }
    DivisorVector(a)
}

/// Conicity straight from the definition: is there a real point whose edge
/// forms round up to the divisor?  Decided by the exact margin LP; no
/// spanning tree, circuits, or lattice enumeration involved.
pub fn conic_oracle(ap: &AugmentedPoset, a: &DivisorVector) -> bool {
    assert_eq!(a.0.len(), ap.n(), "divisor vector length must equal edge count");
    let d = ap.d();
    let mut constraints = Vec::with_capacity(2 * ap.n());
    for e in 0..ap.n() {
        let form: Vec<_> = ap.sigma_form(e);
        constraints.push(LinearConstraint::from_ints(&form, Sense::Le, a.0[e]));
        constraints.push(LinearConstraint::from_ints(&form, Sense::Gt, a.0[e] - 1));
    }
    match strict_feasibility(&constraints, d) {
        Ok(f) => f.is_feasible(),
        Err(e) => unreachable!("oracle constraints are well-formed: {e}"),
    }
}

/// Classes in an explicit box whose lifted representative passes the oracle.
/// Candidates are independent, so the sweep fans out over a thread pool and
/// the sorted collection keeps the output order deterministic.
pub fn oracle_sweep(
    ap: &AugmentedPoset,
    tree: &SpanningTree,
    ranges: &[(i64, i64)],
) -> Vec<DivisorClass> {
    use rayon::prelude::*;
    let candidates: Vec<Vec<i64>> = box_points(ranges).collect();
    let mut hits: Vec<DivisorClass> = candidates
        .into_par_iter()
        .map(DivisorClass::new)
        .filter(|class| conic_oracle(ap, &lift_class(ap, tree, class)))
        .collect();
    hits.sort();
    hits
}
