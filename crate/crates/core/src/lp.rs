//! Exact feasibility of homogeneous systems of linear equalities and (strict) inequalities.
//!
//! Every system handled here is a cone, so `a.x > 0` can be replaced by `a.x >= 1`.
//! The resulting system is decided by a phase-one simplex over the rationals with
//! Bland's rule, which cannot cycle.

use crate::rational::{dot, RationalVector, Q};
use num_traits::{One, Signed, Zero};

/// `eq: a.x = 0`, `weak: a.x >= 0`, `strict: a.x > 0`.
#[derive(Debug, Clone, Default)]
pub struct ConeSystem {
    pub dim: usize,
    pub eq: Vec<RationalVector>,
    pub weak: Vec<RationalVector>,
    pub strict: Vec<RationalVector>,
}

impl ConeSystem {
    pub fn new(dim: usize) -> Self {
        ConeSystem {
            dim,
            ..Default::default()
        }
    }

    pub fn eq(mut self, a: RationalVector) -> Self {
        self.eq.push(a);
        self
    }

    pub fn weak(mut self, a: RationalVector) -> Self {
        self.weak.push(a);
        self
    }

    pub fn strict(mut self, a: RationalVector) -> Self {
        self.strict.push(a);
        self
    }

    /// Whether `x` satisfies every constraint.
    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        self.eq.iter().all(|a| dot(a, x).is_zero())
            && self.weak.iter().all(|a| !dot(a, x).is_negative())
            && self.strict.iter().all(|a| dot(a, x).is_positive())
    }

    /// A point satisfying the system, if one exists.
    pub fn solve(&self) -> Option<RationalVector> {
        let x = phase_one(self)?;
        assert!(
            self.satisfied_by(&x),
            "simplex witness violates its own system"
        );
        Some(x)
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }
}

/// Convenience wrapper matching the three-list form.
pub fn lp_feasible(
    dim: usize,
    eq: &[RationalVector],
    weak: &[RationalVector],
    strict: &[RationalVector],
) -> Option<RationalVector> {
    ConeSystem {
        dim,
        eq: eq.to_vec(),
        weak: weak.to_vec(),
        strict: strict.to_vec(),
    }
    .solve()
}

fn phase_one(sys: &ConeSystem) -> Option<RationalVector> {
    let n = sys.dim;
    let rows: Vec<(&RationalVector, Option<bool>)> = sys
        .eq
        .iter()
        .map(|a| (a, None))
        .chain(sys.weak.iter().map(|a| (a, Some(false))))
        .chain(sys.strict.iter().map(|a| (a, Some(true))))
        .collect();
    let m = rows.len();
    if m == 0 {
        return Some(vec![Q::zero(); n]);
    }
    let slack_count = sys.weak.len() + sys.strict.len();
    // columns: u (n), v (n), slacks, artificials, rhs
    let art0 = 2 * n + slack_count;
    let cols = art0 + m;
    let mut t: Vec<Vec<Q>> = vec![vec![Q::zero(); cols + 1]; m];
    let mut slack = 2 * n;
    for (r, (a, kind)) in rows.iter().enumerate() {
        for j in 0..n {
            t[r][j] = a[j].clone();
            t[r][n + j] = -a[j].clone();
        }
        if let Some(strict) = kind {
            t[r][slack] = -Q::one();
            slack += 1;
            if *strict {
                t[r][cols] = Q::one();
            }
        }
        t[r][art0 + r] = Q::one();
    }
    let mut basis: Vec<usize> = (0..m).map(|r| art0 + r).collect();
    // reduced costs for minimizing the sum of artificials
    let mut cost: Vec<Q> = vec![Q::zero(); cols + 1];
    for row in &t {
        for j in 0..=cols {
            if j < art0 || j == cols {
                cost[j] -= &row[j];
            }
        }
    }
    while let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pr, _) = leave.expect("phase one objective is bounded below");
        pivot(&mut t, &mut cost, pr, enter, cols);
        basis[pr] = enter;
    }
    if !cost[cols].is_zero() {
        return None;
    }
    let mut y = vec![Q::zero(); 2 * n];
    for (r, &b) in basis.iter().enumerate() {
        if b < 2 * n {
            y[b] = t[r][cols].clone();
        }
    }
    Some((0..n).map(|j| &y[j] - &y[n + j]).collect())
}

fn pivot(t: &mut [Vec<Q>], cost: &mut [Q], pr: usize, pc: usize, cols: usize) {
    let p = t[pr][pc].clone();
    for x in t[pr].iter_mut() {
        *x /= &p;
    }
    let prow = t[pr].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for j in 0..=cols {
            if !prow[j].is_zero() {
                row[j] -= &f * &prow[j];
            }
        }
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for j in 0..=cols {
            if !prow[j].is_zero() {
                cost[j] -= &f * &prow[j];
            }
        }
    }
}
