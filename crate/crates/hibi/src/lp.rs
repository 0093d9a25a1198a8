//! Exact linear programming over the rationals.
//!
//! The only public entry point is [`strict_feasibility`], which decides
//! whether a system of mixed strict/weak linear constraints has a solution.
//! Strict inequalities are softened with a margin variable `t`
//! (`<c,x> < b` becomes `<c,x> <= b - t`), `t` is maximized by a two-phase
//! dense simplex with Bland's rule, and the system is strictly feasible
//! exactly when the optimal margin is positive.  Arithmetic is exact, so
//! there are no tolerances anywhere.

use crate::rational::{rat, Rational};
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint {index} has {len} coefficients, expected {dim}")]
    DimensionMismatch { index: usize, len: usize, dim: usize },
    #[error("margin objective reported unbounded despite the cap")]
    UnexpectedUnbounded,
}

/// Comparison sense of one linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

/// One linear constraint `<coeffs, x> (sense) bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub bound: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, sense: Sense, bound: Rational) -> Self {
        Self { coeffs, sense, bound }
    }

    pub fn le(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Sense::Le, bound)
    }

    pub fn lt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Sense::Lt, bound)
    }

    pub fn ge(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Sense::Ge, bound)
    }

    pub fn gt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Sense::Gt, bound)
    }

    pub fn eq(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Sense::Eq, bound)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(coeffs: &[i64], sense: Sense, bound: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), sense, rat(bound))
    }

    /// The same constraint with a strict sense relaxed to its closure.
    pub fn closure(&self) -> Self {
        let sense = match self.sense {
            Sense::Lt => Sense::Le,
            Sense::Gt => Sense::Ge,
            s => s,
        };
        Self::new(self.coeffs.clone(), sense, self.bound.clone())
    }

    /// Exact satisfaction check.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(x)
            .map(|(c, v)| c * v)
            .fold(Rational::zero(), |a, b| a + b);
        match self.sense {
            Sense::Le => lhs <= self.bound,
            Sense::Lt => lhs < self.bound,
            Sense::Ge => lhs >= self.bound,
            Sense::Gt => lhs > self.bound,
            Sense::Eq => lhs == self.bound,
        }
    }
}

/// Result of a strict-feasibility query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every constraint, with the slack achieved on the
    /// strict ones (capped at 1).
    Feasible { witness: Vec<Rational>, margin: Rational },
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Decides whether the mixed strict/weak system has a solution, and if so
/// returns an exact interior witness.
pub fn strict_feasibility(
    constraints: &[LinearConstraint],
    dim: usize,
) -> Result<Feasibility, LpError> {
    for (index, c) in constraints.iter().enumerate() {
        if c.coeffs.len() != dim {
            return Err(LpError::DimensionMismatch {
                index,
                len: c.coeffs.len(),
                dim,
            });
        }
    }

    // Variables x_0..x_{dim-1} plus the margin t at index `dim`.
    let nvars = dim + 1;
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(constraints.len() + 1);
    let mut push = |coeffs: Vec<Rational>, with_margin: bool, bound: Rational| {
        let mut r = coeffs;
        r.push(if with_margin { Rational::one() } else { Rational::zero() });
        rows.push((r, bound));
    };
    for c in constraints {
        let neg = || c.coeffs.iter().map(|v| -v).collect::<Vec<_>>();
        match c.sense {
            Sense::Le => push(c.coeffs.clone(), false, c.bound.clone()),
            Sense::Lt => push(c.coeffs.clone(), true, c.bound.clone()),
            Sense::Ge => push(neg(), false, -&c.bound),
            Sense::Gt => push(neg(), true, -&c.bound),
            Sense::Eq => {
                push(c.coeffs.clone(), false, c.bound.clone());
                push(neg(), false, -&c.bound);
            }
        }
    }
    // Cap the margin so the objective stays bounded even when no strict
    // constraint mentions t.
    let mut cap = vec![Rational::zero(); dim];
    cap.push(Rational::one());
    rows.push((cap, Rational::one()));

    let mut objective = vec![Rational::zero(); nvars];
    objective[dim] = Rational::one();

    match maximize(&objective, &rows, nvars) {
        LpOutcome::Infeasible => Ok(Feasibility::Infeasible),
        LpOutcome::Unbounded => Err(LpError::UnexpectedUnbounded),
        LpOutcome::Optimal { value, point } => {
            if value > Rational::zero() {
                let witness = point[..dim].to_vec();
                debug_assert!(constraints.iter().all(|c| c.satisfied_by(&witness)));
                Ok(Feasibility::Feasible { witness, margin: value })
            } else {
                Ok(Feasibility::Infeasible)
            }
        }
    }
}

/// Outcome of an LP max over free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

/// Maximizes `<objective, x>` subject to `rows`:  `<a_i, x> <= b_i` with
/// `x` free.  Free variables are split into nonnegative pairs and the
/// standard two-phase simplex with Bland's rule runs on the result.
pub(crate) fn maximize(
    objective: &[Rational],
    rows: &[(Vec<Rational>, Rational)],
    nvars: usize,
) -> LpOutcome {
    let m = rows.len();
    let n_struct = 2 * nvars;
    let n_slack = m;
    let art_start = n_struct + n_slack;
    let mut n_art = 0usize;

    // Tableau rows: [structural | slack | artificial | rhs].
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art_rows = Vec::new();
    for (i, (a, b)) in rows.iter().enumerate() {
        let negate = b.is_negative();
        let mut r = Vec::with_capacity(art_start + 1);
        for j in 0..nvars {
            let v = &a[j];
            if negate {
                r.push(-v);
                r.push(v.clone());
            } else {
                r.push(v.clone());
                r.push(-v);
            }
        }
        for k in 0..n_slack {
            let mut s = if k == i { Rational::one() } else { Rational::zero() };
            if negate && k == i {
                s = -s;
            }
            r.push(s);
        }
        r.push(if negate { -b } else { b.clone() });
        if negate {
            art_rows.push(i);
            n_art += 1;
        }
        tab.push(r);
        basis.push(if negate { 0 } else { n_struct + i }); // artificial index patched below
    }
    // Insert artificial columns.
    let ncols = art_start + n_art;
    for (k, &i) in art_rows.iter().enumerate() {
        basis[i] = art_start + k;
    }
    for (i, row) in tab.iter_mut().enumerate() {
        let rhs = row.pop().expect("rhs present");
        for k in 0..n_art {
            row.push(if art_rows[k] == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        row.push(rhs);
    }

    // Phase 1: drive the artificial variables to zero.
    if n_art > 0 {
        let mut obj = vec![Rational::zero(); ncols + 1];
        for k in 0..n_art {
            obj[art_start + k] = -Rational::one();
        }
        // Reduce against the starting basis (artificials have cost -1).
        for &i in &art_rows {
            for j in 0..=ncols {
                let t = tab[i][j].clone();
                obj[j] += t;
            }
        }
        if !simplex(&mut tab, &mut basis, &mut obj, ncols, ncols) {
            // Phase-1 objective is bounded by construction.
            unreachable!("phase-1 simplex cannot be unbounded");
        }
        // The stored entry is the negated objective value, so a positive
        // entry means the artificials could not be driven to zero.
        if obj[ncols].is_positive() {
            return LpOutcome::Infeasible;
        }
        // Pivot remaining artificials out of the basis, dropping redundant rows.
        let mut i = 0;
        while i < tab.len() {
            if basis[i] >= art_start {
                if let Some(j) = (0..art_start).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, &mut obj, i, j, ncols);
                } else {
                    tab.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        // Physically drop the artificial columns.
        for row in tab.iter_mut() {
            let rhs = row.pop().expect("rhs present");
            row.truncate(art_start);
            row.push(rhs);
        }
    }

    let ncols = art_start;
    // Phase 2 objective: maximize the split structural combination.
    let mut cost = vec![Rational::zero(); ncols];
    for j in 0..nvars {
        cost[2 * j] = objective[j].clone();
        cost[2 * j + 1] = -&objective[j];
    }
    let mut obj = vec![Rational::zero(); ncols + 1];
    obj[..ncols].clone_from_slice(&cost);
    for (i, &bj) in basis.iter().enumerate() {
        if cost[bj].is_zero() {
            continue;
        }
        let f = cost[bj].clone();
        for j in 0..=ncols {
            let t = &f * &tab[i][j];
            obj[j] -= t;
        }
    }
    if !simplex(&mut tab, &mut basis, &mut obj, ncols, ncols) {
        return LpOutcome::Unbounded;
    }

    let mut y = vec![Rational::zero(); ncols];
    for (i, &bj) in basis.iter().enumerate() {
        y[bj] = tab[i][ncols].clone();
    }
    let point: Vec<Rational> = (0..nvars).map(|j| &y[2 * j] - &y[2 * j + 1]).collect();
    let value = objective
        .iter()
        .zip(&point)
        .map(|(c, v)| c * v)
        .fold(Rational::zero(), |a, b| a + b);
    LpOutcome::Optimal { value, point }
}

/// Runs simplex iterations until optimality (true) or unboundedness (false).
/// `enter_limit` restricts which columns may enter the basis.
fn simplex(
    tab: &mut [Vec<Rational>],
    basis: &mut [usize],
    obj: &mut [Rational],
    ncols: usize,
    enter_limit: usize,
) -> bool {
    loop {
        // Bland: entering column is the lowest index with positive reduced cost.
        let Some(e) = (0..enter_limit).find(|&j| obj[j].is_positive()) else {
            return true;
        };
        // Ratio test; Bland tie-break on the smallest basis index.
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..tab.len() {
            if tab[i][e].is_positive() {
                let ratio = &tab[i][ncols] / &tab[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            return false;
        };
        pivot(tab, basis, obj, l, e, ncols);
    }
}

fn pivot(
    tab: &mut [Vec<Rational>],
    basis: &mut [usize],
    obj: &mut [Rational],
    row: usize,
    col: usize,
    ncols: usize,
) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v = &*v / &p;
    }
    for i in 0..tab.len() {
        if i != row && !tab[i][col].is_zero() {
            let f = tab[i][col].clone();
            for j in 0..=ncols {
                let t = &f * &tab[row][j];
                tab[i][j] -= t;
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for j in 0..=ncols {
            let t = &f * &tab[row][j];
            obj[j] -= t;
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn feas(cons: &[LinearConstraint], dim: usize) -> Feasibility {
        strict_feasibility(cons, dim).unwrap()
    }

    #[test]
    fn open_interval() {
        // -1 < x <= 0
        let cons = vec![
            LinearConstraint::from_ints(&[1], Sense::Gt, -1),
            LinearConstraint::from_ints(&[1], Sense::Le, 0),
        ];
        match feas(&cons, 1) {
            Feasibility::Feasible { witness, margin } => {
                assert!(margin > rat(0));
                assert!(cons.iter().all(|c| c.satisfied_by(&witness)));
            }
            Feasibility::Infeasible => panic!("interval is nonempty"),
        }
    }

    #[test]
    fn empty_half_open() {
        // x <= 0 and x > 0
        let cons = vec![
            LinearConstraint::from_ints(&[1], Sense::Le, 0),
            LinearConstraint::from_ints(&[1], Sense::Gt, 0),
        ];
        assert_eq!(feas(&cons, 1), Feasibility::Infeasible);
    }

    #[test]
    fn weak_only_system() {
        let cons = vec![LinearConstraint::from_ints(&[1, 0], Sense::Eq, 3)];
        match feas(&cons, 2) {
            Feasibility::Feasible { witness, .. } => assert_eq!(witness[0], rat(3)),
            _ => panic!("feasible"),
        }
    }

    #[test]
    fn infeasible_weak_system() {
        let cons = vec![
            LinearConstraint::from_ints(&[1], Sense::Le, -1),
            LinearConstraint::from_ints(&[1], Sense::Ge, 1),
        ];
        assert_eq!(feas(&cons, 1), Feasibility::Infeasible);
    }

    #[test]
    fn strict_between_fractions() {
        // 1/3 < x < 2/5 has rational points.
        let cons = vec![
            LinearConstraint::new(vec![rat(1)], Sense::Gt, ratio(1, 3)),
            LinearConstraint::new(vec![rat(1)], Sense::Lt, ratio(2, 5)),
        ];
        match feas(&cons, 1) {
            Feasibility::Feasible { witness, .. } => {
                assert!(witness[0] > ratio(1, 3) && witness[0] < ratio(2, 5));
            }
            _ => panic!("feasible"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let cons = vec![LinearConstraint::from_ints(&[1, 2], Sense::Le, 0)];
        assert!(matches!(
            strict_feasibility(&cons, 1),
            Err(LpError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_equalities() {
        // x = 0, y = 0, x + y < 1: margin must still be found.
        let cons = vec![
            LinearConstraint::from_ints(&[1, 0], Sense::Eq, 0),
            LinearConstraint::from_ints(&[0, 1], Sense::Eq, 0),
            LinearConstraint::from_ints(&[1, 1], Sense::Lt, 1),
        ];
        match feas(&cons, 2) {
            Feasibility::Feasible { witness, margin } => {
                assert_eq!(witness, vec![rat(0), rat(0)]);
                assert_eq!(margin, rat(1));
            }
            _ => panic!("feasible"),
        }
    }

    fn random_system() -> impl Strategy<Value = (Vec<LinearConstraint>, usize)> {
        let constraint = (
            proptest::collection::vec(-3i64..4, 2),
            -4i64..5,
            prop_oneof![
                Just(Sense::Le),
                Just(Sense::Lt),
                Just(Sense::Ge),
                Just(Sense::Gt),
                Just(Sense::Eq)
            ],
        )
            .prop_map(|(c, b, s)| LinearConstraint::from_ints(&c, s, b));
        proptest::collection::vec(constraint, 1..6).prop_map(|cs| (cs, 2))
    }

    proptest! {
        // Dropping a constraint never turns a feasible system infeasible,
        // and witnesses always satisfy the system they came from.
        #[test]
        fn monotone_and_exact((cons, dim) in random_system(), drop_idx in 0usize..6) {
            let full = feas(&cons, dim);
            if let Feasibility::Feasible { ref witness, .. } = full {
                prop_assert!(cons.iter().all(|c| c.satisfied_by(witness)));
            }
            if cons.len() > 1 {
                let mut fewer = cons.clone();
                fewer.remove(drop_idx % fewer.len());
                if full.is_feasible() {
                    prop_assert!(feas(&fewer, dim).is_feasible());
                }
            }
        }
    }
}
