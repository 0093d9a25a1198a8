//! Mutation of NCCR character sets and the exchange graph of generators.
//!
//! A mutation at a character removes it and inserts the character shifted by
//! every weight a separating one-parameter subgroup pairs positively with,
//! counted with multiplicity.  Admissibility asks for a subgroup that
//! separates the character from the rest of the set and keeps all partial
//! shifts inside it.  Since admissibility depends on the subgroup only
//! through its positive-weight pattern, the search runs over the finitely
//! many sign patterns of the distinct weights, each decided by one exact LP.

use crate::lp::{strict_feasibility, Feasibility, LinearConstraint, Sense};
use crate::rational::{rat, Rational};
use crate::segre::{Character, SegreError, SegreSpec, WeightSystem};
use num::Zero;
use std::collections::BTreeMap;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MutationError {
    #[error(transparent)]
    Segre(#[from] SegreError),
    #[error("character {0:?} is not in the set")]
    CharacterNotInSet(Vec<i64>),
    #[error("subgroup is not admissible: {0}")]
    NotAdmissible(String),
    #[error("distinct admissible sign patterns at {chi:?}: {patterns:?}")]
    AmbiguousMutation { chi: Vec<i64>, patterns: Vec<Vec<usize>> },
    #[error("mutation would duplicate the summand {0:?}")]
    DuplicateSummand(Vec<i64>),
    #[error("character set is empty")]
    EmptySet,
}

/// A one-parameter subgroup, i.e. a rational linear functional on characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneParamSubgroup(pub Vec<Rational>);

impl OneParamSubgroup {
    pub fn pair(&self, chi: &Character) -> Rational {
        self.0
            .iter()
            .zip(&chi.0)
            .map(|(l, &c)| l * rat(c))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn negated(&self) -> OneParamSubgroup {
        OneParamSubgroup(self.0.iter().map(|v| -v).collect())
    }
}

/// A finite set of characters whose covariants sum to an NCCR-giving module.
/// Stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NccrSet {
    chars: Vec<Character>,
}

impl NccrSet {
    pub fn new(mut chars: Vec<Character>) -> Result<Self, MutationError> {
        chars.sort();
        chars.dedup();
        if chars.is_empty() {
            return Err(MutationError::EmptySet);
        }
        Ok(Self { chars })
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn contains(&self, chi: &Character) -> bool {
        self.chars.binary_search(chi).is_ok()
    }

    pub fn contains_origin(&self) -> bool {
        self.chars.iter().any(Character::is_zero)
    }

    fn without(&self, chi: &Character) -> Vec<Character> {
        self.chars.iter().filter(|c| *c != chi).cloned().collect()
    }

    pub fn negated(&self) -> NccrSet {
        NccrSet::new(self.chars.iter().map(Character::negated).collect())
            .expect("negation preserves cardinality")
    }

    pub fn translated(&self, shift: &Character) -> NccrSet {
        NccrSet::new(self.chars.iter().map(|c| c.add(shift)).collect())
            .expect("translation preserves cardinality")
    }
}

/// Normal form of a set under translation: a set containing the origin is
/// already canonical; otherwise the set is shifted by its least member,
/// which puts the origin inside.
pub fn canonicalize(s: &NccrSet) -> NccrSet {
    if s.contains_origin() {
        s.clone()
    } else {
        let least = s.chars[0].negated();
        s.translated(&least)
    }
}

/// A certified admissible mutation datum at some `(set, character)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleMutation {
    /// Witness subgroup produced by the LP.
    pub lambda: OneParamSubgroup,
    /// Indices into the distinct weights that pair positively.
    pub positive_weights: Vec<usize>,
    /// Total multiplicity of positively paired weights.
    pub d_lambda: usize,
    /// The replacement character.
    pub nu: Character,
}

fn weight_shift(weights: &WeightSystem, pattern: &[usize]) -> Character {
    let rank = weights.distinct()[0].0.len();
    pattern
        .iter()
        .fold(Character::zero(rank), |acc, &b| acc.add(&weights.distinct()[b]))
}

/// Separation LP for one sign pattern: positive pairing on the pattern
/// weights, nonpositive elsewhere, and strictly smaller value at `chi` than
/// anywhere else in the set.
fn pattern_lambda(
    rest: &[Character],
    chi: &Character,
    weights: &WeightSystem,
    pattern: &[usize],
) -> Option<OneParamSubgroup> {
    let rank = chi.0.len();
    let mut cons = Vec::new();
    for (i, beta) in weights.distinct().iter().enumerate() {
        let coeffs: Vec<Rational> = beta.0.iter().map(|&c| rat(c)).collect();
        if pattern.contains(&i) {
            cons.push(LinearConstraint::new(coeffs, Sense::Gt, rat(0)));
        } else {
            cons.push(LinearConstraint::new(coeffs, Sense::Le, rat(0)));
        }
    }
    for mu in rest {
        let diff = mu.sub(chi);
        let coeffs: Vec<Rational> = diff.0.iter().map(|&c| rat(c)).collect();
        cons.push(LinearConstraint::new(coeffs, Sense::Gt, rat(0)));
    }
    match strict_feasibility(&cons, rank).expect("well-formed separation LP") {
        Feasibility::Feasible { witness, .. } => Some(OneParamSubgroup(witness)),
        Feasibility::Infeasible => None,
    }
}

/// Checks the partial-shift condition: every sum of `1..d_lambda - 1`
/// positively paired weight copies added to `chi` must stay in the rest of
/// the set.
fn partial_shifts_inside(
    rest: &[Character],
    chi: &Character,
    weights: &WeightSystem,
    pattern: &[usize],
) -> bool {
    let r = weights.multiplicity();
    // Multiplicities per pattern weight: the full product minus the empty
    // and the complete choice.
    let mut counters = vec![0usize; pattern.len()];
    loop {
        // Advance the odometer.
        let mut k = 0;
        loop {
            if k == counters.len() {
                return true;
            }
            counters[k] += 1;
            if counters[k] <= r {
                break;
            }
            counters[k] = 0;
            k += 1;
        }
        if counters.iter().all(|&c| c == r) {
            continue; // the complete sum is the mutation target itself
        }
        let mut mu = chi.clone();
        for (slot, &b) in pattern.iter().enumerate() {
            mu = mu.add(&weights.distinct()[b].scaled(counters[slot] as i64));
        }
        if !rest.contains(&mu) {
            return false;
        }
    }
}

fn admissible_for_pattern(
    rest: &[Character],
    chi: &Character,
    weights: &WeightSystem,
    pattern: &[usize],
) -> Option<AdmissibleMutation> {
    let lambda = pattern_lambda(rest, chi, weights, pattern)?;
    if !partial_shifts_inside(rest, chi, weights, pattern) {
        return None;
    }
    let r = weights.multiplicity();
    let nu = chi.add(&weight_shift(weights, pattern).scaled(r as i64));
    Some(AdmissibleMutation {
        lambda,
        positive_weights: pattern.to_vec(),
        d_lambda: r * pattern.len(),
        nu,
    })
}

fn patterns(t: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << t)).map(move |mask| (0..t).filter(|b| mask >> b & 1 == 1).collect())
}

/// Searches the sign patterns in deterministic order and returns the first
/// admissible mutation at `(l, chi)`, if any.
pub fn find_admissible_lambda(
    l: &NccrSet,
    chi: &Character,
    spec: &SegreSpec,
) -> Result<Option<AdmissibleMutation>, MutationError> {
    if !l.contains(chi) {
        return Err(MutationError::CharacterNotInSet(chi.0.clone()));
    }
    let weights = WeightSystem::of(spec)?;
    let rest = l.without(chi);
    for pattern in patterns(spec.t()) {
        if let Some(adm) = admissible_for_pattern(&rest, chi, &weights, &pattern) {
            return Ok(Some(adm));
        }
    }
    Ok(None)
}

/// All admissible sign patterns at `(l, chi)`.  Any two admissible
/// subgroups must share one pattern, so more than one entry here is a
/// certified violation that callers turn into a hard error.
pub fn all_admissible_patterns(
    l: &NccrSet,
    chi: &Character,
    spec: &SegreSpec,
) -> Result<Vec<AdmissibleMutation>, MutationError> {
    if !l.contains(chi) {
        return Err(MutationError::CharacterNotInSet(chi.0.clone()));
    }
    let weights = WeightSystem::of(spec)?;
    let rest = l.without(chi);
    Ok(patterns(spec.t())
        .filter_map(|pattern| admissible_for_pattern(&rest, chi, &weights, &pattern))
        .collect())
}

fn apply_mutation(
    l: &NccrSet,
    chi: &Character,
    adm: &AdmissibleMutation,
) -> Result<NccrSet, MutationError> {
    let mut chars = l.without(chi);
    if chars.contains(&adm.nu) {
        return Err(MutationError::DuplicateSummand(adm.nu.0.clone()));
    }
    chars.push(adm.nu.clone());
    NccrSet::new(chars)
}

/// Validates the supplied subgroup against the given pair and applies the
/// mutation it certifies, without normalizing the result.
fn right_mutation_core(
    l: &NccrSet,
    chi: &Character,
    lambda: &OneParamSubgroup,
    spec: &SegreSpec,
) -> Result<NccrSet, MutationError> {
    if !l.contains(chi) {
        return Err(MutationError::CharacterNotInSet(chi.0.clone()));
    }
    let weights = WeightSystem::of(spec)?;
    let rest = l.without(chi);
    // Separation.
    let at_chi = lambda.pair(chi);
    for mu in &rest {
        if lambda.pair(mu) <= at_chi {
            return Err(MutationError::NotAdmissible(format!(
                "subgroup does not separate {:?} from {:?}",
                chi.0, mu.0
            )));
        }
    }
    let pattern: Vec<usize> = weights
        .distinct()
        .iter()
        .enumerate()
        .filter(|(_, beta)| lambda.pair(beta) > Rational::zero())
        .map(|(i, _)| i)
        .collect();
    if pattern.is_empty() {
        return Err(MutationError::NotAdmissible(
            "subgroup pairs positively with no weight".into(),
        ));
    }
    if !partial_shifts_inside(&rest, chi, &weights, &pattern) {
        return Err(MutationError::NotAdmissible(
            "a partial shift leaves the set".into(),
        ));
    }
    let r = weights.multiplicity();
    let nu = chi.add(&weight_shift(&weights, &pattern).scaled(r as i64));
    apply_mutation(
        l,
        chi,
        &AdmissibleMutation {
            lambda: lambda.clone(),
            positive_weights: pattern.clone(),
            d_lambda: r * pattern.len(),
            nu,
        },
    )
}

/// Right mutation at `chi` with respect to an admissible `lambda`; the
/// result is canonicalized.
pub fn right_mutation(
    l: &NccrSet,
    chi: &Character,
    lambda: &OneParamSubgroup,
    spec: &SegreSpec,
) -> Result<NccrSet, MutationError> {
    Ok(canonicalize(&right_mutation_core(l, chi, lambda, spec)?))
}

/// Left mutation: negate, right-mutate with the negated subgroup, negate
/// back.  Requires the negated data to be admissible.
pub fn left_mutation(
    l: &NccrSet,
    chi: &Character,
    lambda: &OneParamSubgroup,
    spec: &SegreSpec,
) -> Result<NccrSet, MutationError> {
    let mutated = right_mutation_core(&l.negated(), &chi.negated(), &lambda.negated(), spec)?;
    Ok(canonicalize(&mutated.negated()))
}

/// One vertex-to-vertex step of the exchange graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    /// Endpoint indices into the vertex list, with `a < b`.
    pub a: usize,
    pub b: usize,
    /// Mutated character on the discovery side.
    pub chi: Character,
    /// Positive-weight sign pattern of the discovered mutation.
    pub pattern: Vec<usize>,
}

/// The exchange graph over generators (origin-containing sets).
#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    pub vertices: Vec<NccrSet>,
    pub edges: Vec<GraphEdge>,
    pub truncated: bool,
}

impl ExchangeGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            reached += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        reached == self.vertices.len()
    }
}

/// Breadth-first closure of a generator under all admissible right and left
/// mutations at nonzero characters.  Mutating the origin character leaves
/// the generator family, so those steps are not taken; every produced set
/// therefore keeps the origin.  Stops at `cap` vertices with the truncation
/// flag set.
pub fn exchange_graph(
    l0: &NccrSet,
    spec: &SegreSpec,
    cap: usize,
) -> Result<ExchangeGraph, MutationError> {
    let start = canonicalize(l0);
    let mut ids: BTreeMap<Vec<Character>, usize> = BTreeMap::new();
    let mut vertices: Vec<NccrSet> = Vec::new();
    let mut edges: BTreeMap<(usize, usize), (Character, Vec<usize>)> = BTreeMap::new();
    let mut truncated = false;
    ids.insert(start.chars().to_vec(), 0);
    vertices.push(start.clone());
    let mut queue = VecDeque::from([0usize]);

    while let Some(v) = queue.pop_front() {
        let set = vertices[v].clone();
        for chi in set.chars().to_vec() {
            if chi.is_zero() {
                continue;
            }
            // Right mutations, then left mutations through negation.
            for negate in [false, true] {
                let (search_set, search_chi) = if negate {
                    (set.negated(), chi.negated())
                } else {
                    (set.clone(), chi.clone())
                };
                let mut pats = all_admissible_patterns(&search_set, &search_chi, spec)?;
                if pats.len() > 1 {
                    let patterns = pats.iter().map(|p| p.positive_weights.clone()).collect();
                    return Err(MutationError::AmbiguousMutation { chi: chi.0.clone(), patterns });
                }
                let Some(adm) = pats.pop() else {
                    continue;
                };
                let mutated = apply_mutation(&search_set, &search_chi, &adm)?;
                let result = if negate {
                    canonicalize(&mutated.negated())
                } else {
                    canonicalize(&mutated)
                };
                debug_assert!(result.contains_origin());
                let next_id = match ids.get(result.chars()) {
                    Some(&id) => id,
                    None => {
                        if vertices.len() >= cap {
                            truncated = true;
                            continue;
                        }
                        let id = vertices.len();
                        ids.insert(result.chars().to_vec(), id);
                        vertices.push(result.clone());
                        queue.push_back(id);
                        id
                    }
                };
                if next_id != v {
                    let key = (v.min(next_id), v.max(next_id));
                    edges
                        .entry(key)
                        .or_insert_with(|| (chi.clone(), adm.positive_weights.clone()));
                }
            }
        }
    }

    // Renumber vertices in canonical sort order for stable output.
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
    let mut rename = vec![0usize; vertices.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    let mut sorted_vertices = vec![None; vertices.len()];
    for (old, set) in vertices.into_iter().enumerate() {
        sorted_vertices[rename[old]] = Some(set);
    }
    let vertices: Vec<NccrSet> = sorted_vertices.into_iter().map(Option::unwrap).collect();
    let mut edge_list: Vec<GraphEdge> = edges
        .into_iter()
        .map(|((a, b), (chi, pattern))| {
            let (na, nb) = (rename[a].min(rename[b]), rename[a].max(rename[b]));
            GraphEdge { a: na, b: nb, chi, pattern }
        })
        .collect();
    edge_list.sort_by_key(|e| (e.a, e.b));
    Ok(ExchangeGraph { vertices, edges: edge_list, truncated })
}
