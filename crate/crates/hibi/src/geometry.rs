//! Exact polytope geometry: vertex enumeration from half-space
//! descriptions, Euclidean volume by anchored boundary triangulation,
//! Eulerian numbers, and the volume (generalized F-signature) table of the
//! conic cells.

use crate::classgroup::DivisorClass;
use crate::conic::{cell_of, enumerate_conic};
use crate::hasse::SpanningTree;
use crate::lp::{self, LinearConstraint, LpOutcome, Sense};
use crate::matrix::{determinant, RationalMatrix};
use crate::poset::AugmentedPoset;
use crate::rational::{rat, Rational};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("half-space description is unbounded in coordinate {0}")]
    Unbounded(usize),
    #[error("vertex enumeration requires weak constraints, found a strict one")]
    StrictConstraint,
    #[error("constraint has {len} coefficients, expected {dim}")]
    DimensionMismatch { len: usize, dim: usize },
    #[error("Eulerian index p={p} out of range 1..={d}")]
    EulerianRange { d: usize, p: usize },
    #[error("cell of class {0:?} is degenerate")]
    DegenerateCell(Vec<i64>),
}

/// A polytope by its extreme points, together with the supporting facets
/// recorded during enumeration (used by the volume triangulation).
#[derive(Debug, Clone)]
pub struct VPolytope {
    pub dim: usize,
    /// Extreme points, sorted lexicographically.
    pub vertices: Vec<Vec<Rational>>,
    pub(crate) facets: Vec<Facet>,
}

#[derive(Debug, Clone)]
pub(crate) struct Facet {
    pub(crate) vertex_ids: Vec<usize>,
}

impl VPolytope {
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_vertex_sets(&self) -> Vec<&[usize]> {
        self.facets.iter().map(|f| f.vertex_ids.as_slice()).collect()
    }

    pub fn is_full_dimensional(&self) -> bool {
        let refs: Vec<&[Rational]> = self.vertices.iter().map(Vec::as_slice).collect();
        affine_rank(&refs) == self.dim
    }

    /// Image under an invertible linear map given by its matrix rows.
    pub fn linear_image(&self, map: &RationalMatrix) -> VPolytope {
        let mut vertices: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| {
                (0..map.rows())
                    .map(|i| {
                        map.row(i)
                            .iter()
                            .zip(v)
                            .map(|(a, x)| a * x)
                            .fold(Rational::zero(), |s, t| s + t)
                    })
                    .collect()
            })
            .collect();
        let perm = sort_permutation(&mut vertices);
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                vertex_ids: {
                    let mut ids: Vec<usize> = f.vertex_ids.iter().map(|&i| perm[i]).collect();
                    ids.sort_unstable();
                    ids
                },
            })
            .collect();
        VPolytope { dim: self.dim, vertices, facets }
    }
}

/// Sorts vertices in place and returns the map old index -> new index.
fn sort_permutation(vertices: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
    let mut perm = vec![0usize; vertices.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let mut sorted = vec![Vec::new(); vertices.len()];
    for (old, v) in std::mem::take(vertices).into_iter().enumerate() {
        sorted[perm[old]] = v;
    }
    *vertices = sorted;
    perm
}

/// Normalized weak row `<a, x> <= b`, scaled to primitive integers for
/// exact deduplication.
fn normalize_rows(
    constraints: &[LinearConstraint],
    dim: usize,
) -> Result<Vec<(Vec<Rational>, Rational)>, GeometryError> {
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    let mut push = |coeffs: Vec<Rational>, bound: Rational| {
        let mut lcm = BigInt::one();
        for v in coeffs.iter().chain(std::iter::once(&bound)) {
            lcm = num::integer::lcm(lcm, v.denom().clone());
        }
        let mut ints: Vec<BigInt> = coeffs
            .iter()
            .chain(std::iter::once(&bound))
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num::integer::gcd(g, v.clone());
        }
        if !g.is_zero() && g != BigInt::one() {
            for v in ints.iter_mut() {
                *v = &*v / &g;
            }
        }
        if seen.insert(ints.clone()) {
            rows.push((coeffs, bound));
        }
    };
    for c in constraints {
        if c.coeffs.len() != dim {
            return Err(GeometryError::DimensionMismatch { len: c.coeffs.len(), dim });
        }
        match c.sense {
            Sense::Le => push(c.coeffs.clone(), c.bound.clone()),
            Sense::Ge => push(c.coeffs.iter().map(|v| -v).collect(), -&c.bound),
            Sense::Eq => {
                push(c.coeffs.clone(), c.bound.clone());
                push(c.coeffs.iter().map(|v| -v).collect(), -&c.bound);
            }
            Sense::Lt | Sense::Gt => return Err(GeometryError::StrictConstraint),
        }
    }
    Ok(rows)
}

/// Enumerates all vertices of a bounded half-space intersection by solving
/// every independent `dim`-subset of tight rows exactly and keeping the
/// feasible solutions.  Extremality comes for free: a feasible point with
/// `dim` independent tight constraints is a vertex.
pub fn vertex_enumeration(
    constraints: &[LinearConstraint],
    dim: usize,
) -> Result<VPolytope, GeometryError> {
    assert!(dim >= 1, "ambient dimension must be positive");
    let rows = normalize_rows(constraints, dim)?;

    // Defensive boundedness probe along every coordinate direction.
    for k in 0..dim {
        for sign in [1i64, -1] {
            let mut obj = vec![Rational::zero(); dim];
            obj[k] = rat(sign);
            match lp::maximize(&obj, &rows, dim) {
                LpOutcome::Unbounded => return Err(GeometryError::Unbounded(k)),
                LpOutcome::Infeasible => {
                    return Ok(VPolytope { dim, vertices: Vec::new(), facets: Vec::new() })
                }
                LpOutcome::Optimal { .. } => {}
            }
        }
    }

    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut selected = Vec::new();
    let elim = EliminationState::new(dim);
    subset_search(&rows, 0, &elim, &mut selected, &mut found, dim);

    let mut vertices: Vec<Vec<Rational>> = found.into_iter().collect();
    vertices.sort();
    let facets = collect_facets(&rows, &vertices, dim);
    Ok(VPolytope { dim, vertices, facets })
}

/// Fully reduced (Gauss-Jordan) elimination state for the subset search.
#[derive(Clone)]
struct EliminationState {
    dim: usize,
    /// (pivot column, row coefficients, rhs); rows have 1 at their pivot and
    /// 0 at every other pivot column.
    rows: Vec<(usize, Vec<Rational>, Rational)>,
}

impl EliminationState {
    fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    /// Reduces a row against the state; returns the extended state unless the
    /// row is linearly dependent on the current ones.
    fn extend(&self, coeffs: &[Rational], rhs: &Rational) -> Option<EliminationState> {
        let mut a = coeffs.to_vec();
        let mut b = rhs.clone();
        for (p, row, r) in &self.rows {
            if !a[*p].is_zero() {
                let f = a[*p].clone();
                for j in 0..self.dim {
                    let t = &f * &row[j];
                    a[j] -= t;
                }
                b -= &f * r;
            }
        }
        let pivot = (0..self.dim).find(|&j| !a[j].is_zero())?;
        let inv = a[pivot].clone();
        for v in a.iter_mut() {
            *v = &*v / &inv;
        }
        b = &b / &inv;
        let mut next = self.clone();
        for (_, row, r) in next.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for j in 0..self.dim {
                    let t = &f * &a[j];
                    row[j] -= t;
                }
                *r -= &f * &b;
            }
        }
        next.rows.push((pivot, a, b));
        Some(next)
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.dim];
        for (p, _, r) in &self.rows {
            x[*p] = r.clone();
        }
        x
    }
}

fn subset_search(
    rows: &[(Vec<Rational>, Rational)],
    start: usize,
    elim: &EliminationState,
    selected: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<Rational>>,
    dim: usize,
) {
    if selected.len() == dim {
        let x = elim.solution();
        let feasible = rows.iter().all(|(a, b)| {
            let lhs = a
                .iter()
                .zip(&x)
                .map(|(c, v)| c * v)
                .fold(Rational::zero(), |s, t| s + t);
            lhs <= *b
        });
        if feasible {
            found.insert(x);
        }
        return;
    }
    let needed = dim - selected.len();
    for i in start..rows.len() {
        if rows.len() - i < needed {
            break;
        }
        if let Some(next) = elim.extend(&rows[i].0, &rows[i].1) {
            selected.push(i);
            subset_search(rows, i + 1, &next, selected, found, dim);
            selected.pop();
        }
    }
}

fn collect_facets(
    rows: &[(Vec<Rational>, Rational)],
    vertices: &[Vec<Rational>],
    dim: usize,
) -> Vec<Facet> {
    let mut facets = Vec::new();
    let mut seen = BTreeSet::new();
    for (a, b) in rows {
        let tight: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                a.iter()
                    .zip(v.iter())
                    .map(|(c, x)| c * x)
                    .fold(Rational::zero(), |s, t| s + t)
                    == *b
            })
            .map(|(i, _)| i)
            .collect();
        if tight.len() < dim {
            continue;
        }
        let pts: Vec<&[Rational]> = tight.iter().map(|&i| vertices[i].as_slice()).collect();
        if affine_rank(&pts) == dim - 1 && seen.insert(tight.clone()) {
            facets.push(Facet { vertex_ids: tight });
        }
    }
    facets
}

/// Affine rank: the linear rank of the difference set.
pub(crate) fn affine_rank(points: &[&[Rational]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dim = points[0].len();
    let base = points[0];
    let mut reduced: Vec<Vec<Rational>> = Vec::new();
    for p in &points[1..] {
        let mut v: Vec<Rational> = p.iter().zip(base).map(|(a, b)| a - b).collect();
        for row in &reduced {
            let lead = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !v[lead].is_zero() {
                let f = v[lead].clone();
                for j in 0..dim {
                    let t = &f * &row[j];
                    v[j] -= t;
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[lead].clone();
            for x in v.iter_mut() {
                *x = &*x / &inv;
            }
            reduced.push(v);
            if reduced.len() == dim {
                break;
            }
        }
    }
    reduced.len()
}

/// Exact Euclidean volume with a degeneracy flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeVolume {
    pub value: Rational,
    pub degenerate: bool,
}

/// Exact volume: cone from the least vertex over a deterministic recursive
/// triangulation of every facet that avoids it, summing `|det|/d!` per
/// simplex.  Lower-dimensional input yields volume zero with the flag set.
pub fn volume(p: &VPolytope) -> PolytopeVolume {
    let d = p.dim;
    if p.vertices.len() < d + 1 || !p.is_full_dimensional() {
        return PolytopeVolume { value: Rational::zero(), degenerate: true };
    }
    let anchor = 0usize; // vertices are sorted, so 0 is the lex-least vertex
    let mut memo: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
    let mut total = Rational::zero();
    let dfact = Rational::from_integer(factorial(d));
    for f in &p.facets {
        if f.vertex_ids.contains(&anchor) {
            continue;
        }
        for simplex in triangulate_face(p, &f.vertex_ids, d - 1, &mut memo) {
            let rows: Vec<Vec<Rational>> = simplex
                .iter()
                .map(|&i| {
                    p.vertices[i]
                        .iter()
                        .zip(&p.vertices[anchor])
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            let m = RationalMatrix::from_rows(rows).expect("square simplex matrix");
            let det = determinant(&m).expect("square");
            total += det.abs() / &dfact;
        }
    }
    PolytopeVolume { value: total, degenerate: false }
}

/// Triangulates a k-face by coning its least vertex over the triangulations
/// of its subfaces that avoid it.  Faces are identified by their sorted
/// vertex-id lists; subfaces are cut out by the other facets.
fn triangulate_face(
    p: &VPolytope,
    face: &[usize],
    k: usize,
    memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if k == 0 {
        debug_assert_eq!(face.len(), 1);
        return vec![face.to_vec()];
    }
    if k == 1 {
        debug_assert_eq!(face.len(), 2);
        return vec![face.to_vec()];
    }
    if let Some(t) = memo.get(face) {
        return t.clone();
    }
    let anchor = face[0];
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in &p.facets {
        let inter: Vec<usize> = intersect_sorted(face, &f.vertex_ids);
        if inter.len() >= k && inter.len() < face.len() {
            let pts: Vec<&[Rational]> = inter.iter().map(|&i| p.vertices[i].as_slice()).collect();
            if affine_rank(&pts) == k - 1 {
                subfaces.insert(inter);
            }
        }
    }
    let mut simplices = Vec::new();
    for sub in subfaces {
        if sub.contains(&anchor) {
            continue;
        }
        for mut simplex in triangulate_face(p, &sub, k - 1, memo) {
            simplex.insert(0, anchor);
            simplices.push(simplex);
        }
    }
    memo.insert(face.to_vec(), simplices.clone());
    simplices
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Eulerian number `A(d, p)`: permutations of `d` with `p - 1` descents,
/// by the alternating binomial sum.
pub fn eulerian(d: usize, p: usize) -> Result<BigInt, GeometryError> {
    if p < 1 || p > d {
        return Err(GeometryError::EulerianRange { d, p });
    }
    let mut total = BigInt::zero();
    for i in 0..=p {
        let term = binomial(d + 1, i) * BigInt::from(p - i).pow(d as u32);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Volumes of the conic cells: the generalized F-signature of each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTable {
    /// Class -> exact cell volume, in class order.
    pub entries: Vec<(DivisorClass, Rational)>,
}

impl SignatureTable {
    pub fn get(&self, class: &DivisorClass) -> Option<&Rational> {
        self.entries
            .binary_search_by(|(c, _)| c.cmp(class))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn total(&self) -> Rational {
        self.entries
            .iter()
            .map(|(_, v)| v.clone())
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Computes the volume of every conic cell closure.  Per-class volumes are
/// independent, so they run on a thread pool; the sorted map keeps the
/// result deterministic.  A degenerate cell signals an upstream bug and is
/// reported as an error.
pub fn signature_table(
    ap: &AugmentedPoset,
    tree: &SpanningTree,
) -> Result<SignatureTable, GeometryError> {
    use rayon::prelude::*;
    let classes = enumerate_conic(ap, tree);
    let computed: Vec<(DivisorClass, Rational)> = classes
        .into_par_iter()
        .map(|class| {
            let cell = cell_of(&class, ap, tree);
            let poly = vertex_enumeration(&cell.closure(), cell.ambient_dim)?;
            let vol = volume(&poly);
            if vol.degenerate || vol.value.is_zero() {
                return Err(GeometryError::DegenerateCell(class.coords.clone()));
            }
            Ok((class, vol.value))
        })
        .collect::<Result<_, _>>()?;
    let entries: BTreeMap<DivisorClass, Rational> = computed.into_iter().collect();
    Ok(SignatureTable { entries: entries.into_iter().collect() })
}

/// H-description of the join of two unit cubes `[-1,0]^e * [-1,0]^e2`,
/// in coordinates (join parameter, second factor, first factor).
pub fn cube_join_hrep(e: usize, e2: usize) -> Vec<LinearConstraint> {
    let dim = e + e2 + 1;
    let unit = |k: usize| {
        let mut v = vec![0i64; dim];
        v[k] = 1;
        v
    };
    let mut cons = vec![
        LinearConstraint::from_ints(&unit(0), Sense::Ge, 0),
        LinearConstraint::from_ints(&unit(0), Sense::Le, 1),
    ];
    for j in 0..e2 {
        // -s <= y_j <= 0
        let mut with_s = unit(1 + j);
        cons.push(LinearConstraint::from_ints(&with_s, Sense::Le, 0));
        with_s[0] = 1;
        cons.push(LinearConstraint::from_ints(&with_s, Sense::Ge, 0));
    }
    for i in 0..e {
        // s - 1 <= z_i <= 0
        let mut with_s = unit(1 + e2 + i);
        cons.push(LinearConstraint::from_ints(&with_s, Sense::Le, 0));
        with_s[0] = -1;
        cons.push(LinearConstraint::from_ints(&with_s, Sense::Ge, -1));
    }
    cons
}

/// Verifies the join-volume identity
/// `vol(D_e * D_e2) * (e + e2 + 1)! = vol(D_e) * vol(D_e2) * e! * e2!`
/// on unit cubes by direct construction and exact volume.
pub fn join_volume_check(e: usize, e2: usize) -> bool {
    let dim = e + e2 + 1;
    let poly = match vertex_enumeration(&cube_join_hrep(e, e2), dim) {
        Ok(p) => p,
        Err(_) => return false,
    };
    if poly.vertices.len() != (1usize << e) + (1usize << e2) {
        return false;
    }
    let vol = volume(&poly);
    if vol.degenerate {
        return false;
    }
    let expected = Rational::new(
        factorial(e) * factorial(e2),
        factorial(dim),
    );
    vol.value == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hasse::choose_spanning_tree;
    use crate::poset::{augment, Poset};
    use crate::rational::ratio;

    fn cube_hrep(d: usize, lo: i64, hi: i64) -> Vec<LinearConstraint> {
        let mut cons = Vec::new();
        for k in 0..d {
            let mut unit = vec![0i64; d];
            unit[k] = 1;
            cons.push(LinearConstraint::from_ints(&unit, Sense::Ge, lo));
            cons.push(LinearConstraint::from_ints(&unit, Sense::Le, hi));
        }
        cons
    }

    #[test]
    fn cube_vertices_and_volume() {
        for d in 1..=4 {
            let p = vertex_enumeration(&cube_hrep(d, 0, 1), d).unwrap();
            assert_eq!(p.vertices.len(), 1 << d);
            assert_eq!(p.facet_count(), 2 * d);
            let v = volume(&p);
            assert!(!v.degenerate);
            assert_eq!(v.value, rat(1));
        }
    }

    #[test]
    fn standard_simplex() {
        let d = 3;
        let mut cons = Vec::new();
        for k in 0..d {
            let mut unit = vec![0i64; d];
            unit[k] = 1;
            cons.push(LinearConstraint::from_ints(&unit, Sense::Ge, 0));
        }
        cons.push(LinearConstraint::from_ints(&[1, 1, 1], Sense::Le, 1));
        let p = vertex_enumeration(&cons, d).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(volume(&p).value, ratio(1, 6));
    }

    #[test]
    fn hypersimplex_volume() {
        // 0 <= y <= 1, 1 <= sum <= 2 in R^3 has volume 2/3.
        let d = 3;
        let mut cons = cube_hrep(d, 0, 1);
        cons.push(LinearConstraint::from_ints(&[1, 1, 1], Sense::Ge, 1));
        cons.push(LinearConstraint::from_ints(&[1, 1, 1], Sense::Le, 2));
        let p = vertex_enumeration(&cons, d).unwrap();
        assert_eq!(p.vertices.len(), 6);
        assert_eq!(volume(&p).value, ratio(2, 3));
    }

    #[test]
    fn unbounded_reported() {
        let cons = vec![LinearConstraint::from_ints(&[1], Sense::Ge, 0)];
        assert!(matches!(
            vertex_enumeration(&cons, 1),
            Err(GeometryError::Unbounded(_))
        ));
    }

    #[test]
    fn strict_input_rejected() {
        let cons = vec![LinearConstraint::from_ints(&[1], Sense::Gt, 0)];
        assert!(matches!(
            vertex_enumeration(&cons, 1),
            Err(GeometryError::StrictConstraint)
        ));
    }

    #[test]
    fn empty_polytope() {
        let cons = vec![
            LinearConstraint::from_ints(&[1], Sense::Le, 0),
            LinearConstraint::from_ints(&[1], Sense::Ge, 1),
        ];
        let p = vertex_enumeration(&cons, 1).unwrap();
        assert!(p.vertices.is_empty());
        assert!(volume(&p).degenerate);
    }

    #[test]
    fn flat_polytope_is_degenerate() {
        let mut cons = cube_hrep(2, 0, 1);
        cons.push(LinearConstraint::from_ints(&[0, 1], Sense::Eq, 0));
        let p = vertex_enumeration(&cons, 2).unwrap();
        assert_eq!(p.vertices.len(), 2);
        let v = volume(&p);
        assert!(v.degenerate);
        assert_eq!(v.value, rat(0));
    }

    #[test]
    fn volume_invariant_under_unimodular_maps() {
        let mut cons = cube_hrep(3, 0, 1);
        cons.push(LinearConstraint::from_ints(&[1, 1, 1], Sense::Le, 2));
        let p = vertex_enumeration(&cons, 3).unwrap();
        let base = volume(&p).value;
        // Shear: unimodular, volume preserving.
        let shear = RationalMatrix::from_int_rows(&[
            vec![1, 1, 0],
            vec![0, 1, 0],
            vec![0, 2, 1],
        ]);
        let image = p.linear_image(&shear);
        assert_eq!(volume(&image).value, base);
    }

    #[test]
    fn eulerian_table() {
        for d in 1..=6 {
            assert_eq!(eulerian(d, 1).unwrap(), BigInt::one());
        }
        assert_eq!(eulerian(3, 2).unwrap(), BigInt::from(4));
        assert_eq!(eulerian(4, 2).unwrap(), BigInt::from(11));
        assert!(eulerian(3, 0).is_err());
        assert!(eulerian(3, 4).is_err());
    }

    /// Brute-force descent counting over all permutations.
    fn eulerian_brute(d: usize, p: usize) -> BigInt {
        fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == 1 {
                out.push(items.clone());
                return;
            }
            for i in 0..k {
                permutations(items, k - 1, out);
                if k % 2 == 0 {
                    items.swap(i, k - 1);
                } else {
                    items.swap(0, k - 1);
                }
            }
        }
        let mut items: Vec<usize> = (0..d).collect();
        let mut all = Vec::new();
        permutations(&mut items, d, &mut all);
        let want = p - 1;
        let count = all
            .iter()
            .filter(|perm| {
                perm.windows(2).filter(|w| w[0] > w[1]).count() == want
            })
            .count();
        BigInt::from(count)
    }

    #[test]
    fn eulerian_matches_descent_counting() {
        for d in 1..=6 {
            let mut row_sum = BigInt::zero();
            for p in 1..=d {
                let a = eulerian(d, p).unwrap();
                assert_eq!(a, eulerian_brute(d, p), "A({d},{p})");
                // Reversal bijection symmetry.
                assert_eq!(a, eulerian(d, d + 1 - p).unwrap());
                row_sum += a;
            }
            assert_eq!(row_sum, factorial(d));
        }
    }

    #[test]
    fn quadric_signature_table() {
        // Two singleton chains: classes -1, 0, 1 with volumes 1/6, 2/3, 1/6.
        let ap = augment(Poset::new(vec!["a".into(), "b".into()], vec![]).unwrap());
        let tree = choose_spanning_tree(&ap, Some(&[1, 2, 3])).unwrap();
        let table = signature_table(&ap, &tree).unwrap();
        assert_eq!(table.entries.len(), 3);
        assert_eq!(table.get(&DivisorClass::new(vec![0])), Some(&ratio(2, 3)));
        assert_eq!(table.get(&DivisorClass::new(vec![1])), Some(&ratio(1, 6)));
        assert_eq!(table.get(&DivisorClass::new(vec![-1])), Some(&ratio(1, 6)));
        assert_eq!(table.total(), rat(1));
    }

    #[test]
    fn join_identity_small() {
        assert!(join_volume_check(1, 1));
        assert!(join_volume_check(0, 2));
        assert!(join_volume_check(2, 3));
    }

    #[test]
    fn join_vertices_explicit() {
        // Segment joined with segment: 1/6, four vertices.
        let p = vertex_enumeration(&cube_join_hrep(1, 1), 3).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(volume(&p).value, ratio(1, 6));
    }
}
