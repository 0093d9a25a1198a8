//! Segre products of polynomial rings as Hibi rings: disjoint-chain posets,
//! weight systems, the NCCR character set, its symmetric envelope, and the
//! rank-one maximal Cohen-Macaulay criterion.

use crate::conic::box_points;
use crate::hasse::{choose_spanning_tree, SpanningTree};
use crate::poset::{AugmentedPoset, Poset, Vertex};
use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SegreError {
    #[error("a Segre product needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("factor {0} has an empty chain; factors must have dimension at least 2")]
    EmptyChain(usize),
    #[error("factor dimensions differ; the ring is not Gorenstein, so NCCR data is undefined")]
    NonGorenstein,
    #[error("character has {len} coordinates, expected {expected}")]
    BadCharacter { len: usize, expected: usize },
}

/// A Segre product of polynomial rings, stored by the chain length of each
/// factor's poset column (a factor of dimension `r` contributes a chain of
/// `r - 1` elements).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreSpec {
    chain_lengths: Vec<usize>,
}

impl SegreSpec {
    /// `t` factors, all polynomial rings of dimension `r >= 2`.
    pub fn uniform(t: usize, r: usize) -> Result<Self, SegreError> {
        if t < 2 {
            return Err(SegreError::TooFewFactors(t));
        }
        if r < 2 {
            return Err(SegreError::EmptyChain(1));
        }
        Ok(Self { chain_lengths: vec![r - 1; t] })
    }

    /// Factors given by chain lengths (each at least 1), as in the
    /// disjoint-chain diagram.
    pub fn from_chain_lengths(lengths: &[usize]) -> Result<Self, SegreError> {
        if lengths.len() < 2 {
            return Err(SegreError::TooFewFactors(lengths.len()));
        }
        if let Some(i) = lengths.iter().position(|&l| l == 0) {
            return Err(SegreError::EmptyChain(i + 1));
        }
        Ok(Self { chain_lengths: lengths.to_vec() })
    }

    pub fn t(&self) -> usize {
        self.chain_lengths.len()
    }

    pub fn chain_lengths(&self) -> &[usize] {
        &self.chain_lengths
    }

    /// All factors share one dimension exactly when the ring is Gorenstein.
    pub fn is_gorenstein(&self) -> bool {
        self.chain_lengths.iter().all_equal()
    }

    /// Common factor dimension `r`, when it exists.
    pub fn factor_dimension(&self) -> Option<usize> {
        self.is_gorenstein().then(|| self.chain_lengths[0] + 1)
    }

    fn gorenstein_r(&self) -> Result<usize, SegreError> {
        self.factor_dimension().ok_or(SegreError::NonGorenstein)
    }

    fn check_character(&self, chi: &Character) -> Result<(), SegreError> {
        if chi.0.len() != self.t() - 1 {
            return Err(SegreError::BadCharacter { len: chi.0.len(), expected: self.t() - 1 });
        }
        Ok(())
    }
}

/// The disjoint union of chains whose Hibi ring is the Segre product.
pub fn segre_poset(spec: &SegreSpec) -> Poset {
    let mut labels = Vec::new();
    let mut covers = Vec::new();
    for (i, &len) in spec.chain_lengths.iter().enumerate() {
        for j in 1..=len {
            labels.push(element_label(i, j));
            if j > 1 {
                covers.push((element_label(i, j - 1), element_label(i, j)));
            }
        }
    }
    Poset::new(labels, covers).expect("chain posets are always valid")
}

fn element_label(chain: usize, pos: usize) -> String {
    format!("x{:02}_{:02}", chain + 1, pos)
}

/// The fixture spanning tree: every edge except the bottom edges of chains
/// `1..t-1`, so the class coordinates are the bottom-edge divisors of those
/// chains.
pub fn segre_tree(spec: &SegreSpec, ap: &AugmentedPoset) -> SpanningTree {
    let t = spec.t();
    // Bottom edges are indexed first, in chain order.
    let cotree: Vec<usize> = (0..t - 1).collect();
    let tree: Vec<usize> = (0..ap.n()).filter(|e| !cotree.contains(e)).collect();
    debug_assert!(cotree
        .iter()
        .all(|&e| ap.edge(e).lower == Vertex::Bottom));
    choose_spanning_tree(ap, Some(&tree)).expect("fixture edge set is a spanning tree")
}

/// A character of the class torus, in the coordinates of the bottom-edge
/// divisor classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn negated(&self) -> Character {
        Character(self.0.iter().map(|&c| -c).collect())
    }

    pub fn add(&self, other: &Character) -> Character {
        Character(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Character) -> Character {
        Character(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Character {
        Character(self.0.iter().map(|&c| k * c).collect())
    }
}

/// The weights of the torus action: the distinct prime-divisor characters,
/// each occurring with multiplicity equal to the factor dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    distinct: Vec<Character>,
    multiplicity: usize,
}

impl WeightSystem {
    pub fn of(spec: &SegreSpec) -> Result<Self, SegreError> {
        let r = spec.gorenstein_r()?;
        let t = spec.t();
        let mut distinct = Vec::with_capacity(t);
        for i in 0..t - 1 {
            let mut v = vec![0i64; t - 1];
            v[i] = 1;
            distinct.push(Character(v));
        }
        distinct.push(Character(vec![-1; t - 1]));
        Ok(Self { distinct, multiplicity: r })
    }

    /// The `t` distinct weights, last one the negated sum of the others.
    pub fn distinct(&self) -> &[Character] {
        &self.distinct
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn total_count(&self) -> usize {
        self.distinct.len() * self.multiplicity
    }
}

/// Lattice points of the closed-form conic region of a Segre product
/// (coordinate bounds plus pairwise difference bounds), independent of the
/// circuit machinery.
pub fn segre_conic_closed_form(spec: &SegreSpec) -> Vec<Character> {
    let t = spec.t();
    let r = &spec.chain_lengths;
    let r_t = r[t - 1] as i64;
    let ranges: Vec<(i64, i64)> = (0..t - 1).map(|i| (-r_t, r[i] as i64)).collect();
    box_points(&ranges)
        .filter(|c| {
            (0..t - 1).tuple_combinations().all(|(i, j)| {
                let diff = c[i] - c[j];
                -(r[j] as i64) <= diff && diff <= r[i] as i64
            })
        })
        .map(Character)
        .sorted()
        .collect()
}

/// The NCCR character set: conic classes with all coordinates in
/// `0..=r-1`.  Only defined in the Gorenstein case.
pub fn nccr_set(spec: &SegreSpec) -> Result<Vec<Character>, SegreError> {
    let r = spec.gorenstein_r()? as i64;
    Ok(segre_conic_closed_form(spec)
        .into_iter()
        .filter(|c| c.0.iter().all(|&x| 0 <= x && x <= r - 1))
        .collect())
}

/// Membership in the symmetric envelope: every coordinate within
/// `-(r-1)..=r-1`.
pub fn in_l_tilde(chi: &Character, spec: &SegreSpec) -> Result<bool, SegreError> {
    let r = spec.gorenstein_r()? as i64;
    spec.check_character(chi)?;
    Ok(chi.0.iter().all(|&x| -(r - 1) <= x && x <= r - 1))
}

/// All characters of the symmetric envelope.
pub fn l_tilde(spec: &SegreSpec) -> Result<Vec<Character>, SegreError> {
    let r = spec.gorenstein_r()? as i64;
    let ranges = vec![(-(r - 1), r - 1); spec.t() - 1];
    Ok(box_points(&ranges).map(Character).sorted().collect())
}

/// Rank-one maximal Cohen-Macaulay test: extend by a zero last coordinate,
/// sort, and check that consecutive gaps stay below the factor dimension.
/// This is the sorted reformulation of the permutation criterion.
pub fn is_rank_one_mcm(chi: &Character, spec: &SegreSpec) -> Result<bool, SegreError> {
    let r = spec.gorenstein_r()? as i64;
    spec.check_character(chi)?;
    let mut c = chi.0.clone();
    c.push(0);
    c.sort_unstable();
    Ok(c.windows(2).all(|w| w[1] - w[0] <= r - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::{class_group_rank, project_divisor, DivisorVector};
    use crate::conic::enumerate_conic;
    use crate::poset::{augment, is_pure};

    #[test]
    fn uniform_spec_shapes() {
        let s = SegreSpec::uniform(3, 2).unwrap();
        assert_eq!(s.chain_lengths(), &[1, 1, 1]);
        assert_eq!(s.factor_dimension(), Some(2));
        let p = segre_poset(&s);
        assert_eq!(p.len(), 3);
        assert!(p.covers().is_empty());
        assert!(SegreSpec::uniform(1, 2).is_err());
        assert!(SegreSpec::uniform(2, 1).is_err());
    }

    #[test]
    fn chain_length_spec() {
        let s = SegreSpec::from_chain_lengths(&[1, 2]).unwrap();
        assert!(!s.is_gorenstein());
        assert_eq!(s.factor_dimension(), None);
        assert!(nccr_set(&s).is_err());
        assert!(SegreSpec::from_chain_lengths(&[2, 0]).is_err());
    }

    #[test]
    fn purity_matches_gorenstein() {
        for spec in [
            SegreSpec::uniform(3, 3).unwrap(),
            SegreSpec::uniform(2, 4).unwrap(),
            SegreSpec::from_chain_lengths(&[1, 2]).unwrap(),
            SegreSpec::from_chain_lengths(&[2, 2, 1]).unwrap(),
        ] {
            assert_eq!(is_pure(&segre_poset(&spec)), spec.is_gorenstein());
        }
    }

    #[test]
    fn poset_counts() {
        // t chains, each of length len: n = sum(len_i + 1), d = |P| + 1.
        let spec = SegreSpec::from_chain_lengths(&[2, 2, 2]).unwrap();
        let ap = augment(segre_poset(&spec));
        assert_eq!(ap.n(), 9);
        assert_eq!(ap.d(), 7);
        assert_eq!(class_group_rank(&ap), 2);
        let t4 = SegreSpec::uniform(4, 2).unwrap();
        let ap4 = augment(segre_poset(&t4));
        assert_eq!(class_group_rank(&ap4), 3);
    }

    #[test]
    fn fixture_tree_matches_closed_form() {
        for spec in [
            SegreSpec::uniform(2, 2).unwrap(),
            SegreSpec::uniform(3, 2).unwrap(),
            SegreSpec::uniform(3, 3).unwrap(),
            SegreSpec::from_chain_lengths(&[1, 2]).unwrap(),
            SegreSpec::from_chain_lengths(&[1, 2, 2]).unwrap(),
        ] {
            let ap = augment(segre_poset(&spec));
            let tree = segre_tree(&spec, &ap);
            let enumerated: Vec<Vec<i64>> = enumerate_conic(&ap, &tree)
                .into_iter()
                .map(|c| c.coords)
                .collect();
            let closed: Vec<Vec<i64>> = segre_conic_closed_form(&spec)
                .into_iter()
                .map(|c| c.0)
                .collect();
            assert_eq!(enumerated, closed, "spec {:?}", spec.chain_lengths());
        }
    }

    #[test]
    fn conic_counts() {
        // Singleton chains: 2^t - 1 conic classes.
        for t in 2..=5 {
            let spec = SegreSpec::uniform(t, 2).unwrap();
            assert_eq!(segre_conic_closed_form(&spec).len(), (1 << t) - 1);
        }
        // Three factors of dimension 3: 19 classes.
        let spec = SegreSpec::uniform(3, 3).unwrap();
        assert_eq!(segre_conic_closed_form(&spec).len(), 19);
    }

    #[test]
    fn nccr_set_small() {
        let spec = SegreSpec::uniform(3, 2).unwrap();
        let l: Vec<Vec<i64>> = nccr_set(&spec).unwrap().into_iter().map(|c| c.0).collect();
        assert_eq!(l, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn nccr_set_cardinality() {
        for r in 2..=4usize {
            for t in 2..=4usize {
                let spec = SegreSpec::uniform(t, r).unwrap();
                let l = nccr_set(&spec).unwrap();
                assert_eq!(l.len(), r.pow(t as u32 - 1));
                assert!(l.contains(&Character::zero(t - 1)));
            }
        }
    }

    #[test]
    fn envelope_membership() {
        let spec = SegreSpec::uniform(3, 2).unwrap();
        assert!(in_l_tilde(&Character(vec![0, 0]), &spec).unwrap());
        assert!(!in_l_tilde(&Character(vec![1, 2]), &spec).unwrap());
        // All pairwise differences of the NCCR set land in the envelope.
        let l = nccr_set(&spec).unwrap();
        for a in &l {
            for b in &l {
                assert!(in_l_tilde(&a.sub(b), &spec).unwrap());
            }
        }
    }

    #[test]
    fn mcm_criterion() {
        let spec = SegreSpec::uniform(3, 2).unwrap();
        // (1,2) extends to (0,1,2): gaps 1,1.
        assert!(is_rank_one_mcm(&Character(vec![1, 2]), &spec).unwrap());
        // (2,0) extends to (0,0,2): gap 2 > 1.
        assert!(!is_rank_one_mcm(&Character(vec![2, 0]), &spec).unwrap());
        // Everything in the envelope is rank-one MCM.
        for chi in l_tilde(&spec).unwrap() {
            assert!(is_rank_one_mcm(&chi, &spec).unwrap());
        }
    }

    #[test]
    fn weight_system_relations() {
        let spec = SegreSpec::uniform(3, 2).unwrap();
        let w = WeightSystem::of(&spec).unwrap();
        assert_eq!(w.distinct().len(), 3);
        assert_eq!(w.multiplicity(), 2);
        assert_eq!(w.total_count(), 6);
        let sum = w
            .distinct()
            .iter()
            .fold(Character::zero(2), |acc, b| acc.add(b));
        assert!(sum.is_zero());
        assert_eq!(w.distinct()[2], Character(vec![-1, -1]));
    }

    #[test]
    fn edge_classes_realize_weights_with_multiplicity() {
        // Projecting each edge indicator hits each distinct weight exactly
        // `r` times.
        for (t, r) in [(2, 2), (3, 2), (3, 3)] {
            let spec = SegreSpec::uniform(t, r).unwrap();
            let ap = augment(segre_poset(&spec));
            let tree = segre_tree(&spec, &ap);
            let weights = WeightSystem::of(&spec).unwrap();
            let mut counts = vec![0usize; t];
            for e in 0..ap.n() {
                let mut a = vec![0i64; ap.n()];
                a[e] = 1;
                let class = project_divisor(&ap, &tree, &DivisorVector(a));
                let chi = Character(class.coords);
                let pos = weights
                    .distinct()
                    .iter()
                    .position(|b| *b == chi)
                    .unwrap_or_else(|| panic!("edge {e} gives non-weight class {chi:?}"));
                counts[pos] += 1;
            }
            assert!(counts.iter().all(|&c| c == r), "counts {counts:?}");
        }
    }
}
