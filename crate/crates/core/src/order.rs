//! Lateral and vertical orderings, admissibility and relative closedness.

use crate::context::RootContext;
use crate::roots::RootId;
use crate::wide::gamma_chain;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("no lateral order exists; the hom/ext constraints form a cycle through {0:?}")]
    NoLateralOrder(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LateralViolation {
    /// `hom(later, earlier) != 0` although `later` comes after `earlier`.
    Hom { earlier: RootId, later: RootId },
    /// `ext(earlier, later) != 0` although `earlier` comes first.
    Ext { earlier: RootId, later: RootId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LateralReport {
    pub ok: bool,
    pub violation: Option<LateralViolation>,
}

pub fn check_lateral(ctx: &RootContext, order: &[RootId]) -> LateralReport {
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if ctx.homs.hom(b, a) != 0 {
                return LateralReport {
                    ok: false,
                    violation: Some(LateralViolation::Hom {
                        earlier: a,
                        later: b,
                    }),
                };
            }
            if ctx.homs.ext(a, b) != 0 {
                return LateralReport {
                    ok: false,
                    violation: Some(LateralViolation::Ext {
                        earlier: a,
                        later: b,
                    }),
                };
            }
        }
    }
    LateralReport {
        ok: true,
        violation: None,
    }
}

/// Topological sort of the hom/ext constraints, ties broken by canonical root order.
pub fn find_lateral(ctx: &RootContext, set: &[RootId]) -> Result<Vec<RootId>, OrderError> {
    let m = set.len();
    let before =
        |x: RootId, y: RootId| x != y && (ctx.homs.hom(x, y) != 0 || ctx.homs.ext(y, x) != 0);
    let mut indeg = vec![0usize; m];
    for i in 0..m {
        for j in 0..m {
            if before(set[i], set[j]) {
                indeg[j] += 1;
            }
        }
    }
    let mut ready: BTreeSet<(RootId, usize)> = (0..m)
        .filter(|&i| indeg[i] == 0)
        .map(|i| (set[i], i))
        .collect();
    let mut out = Vec::with_capacity(m);
    while let Some(&(root, i)) = ready.iter().next() {
        ready.remove(&(root, i));
        out.push(root);
        for j in 0..m {
            if before(set[i], set[j]) {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert((set[j], j));
                }
            }
        }
    }
    if out.len() < m {
        let stuck: Vec<String> = (0..m)
            .filter(|&i| indeg[i] > 0)
            .map(|i| ctx.label(set[i]))
            .collect();
        return Err(OrderError::NoLateralOrder(stuck));
    }
    // an ordered set never has hom and ext both nonzero in the same direction
    debug_assert!(out.iter().all(|&a| out
        .iter()
        .all(|&b| ctx.homs.hom(a, b) == 0 || ctx.homs.ext(a, b) == 0)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalFailure {
    pub root: RootId,
    pub missing_subroots: Vec<RootId>,
    pub missing_quotients: Vec<RootId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalReport {
    pub ok: bool,
    pub failures: Vec<VerticalFailure>,
}

/// Checks that subroots and quotient roots of each element come earlier; `weak` asks for one of the two.
pub fn check_vertical(ctx: &RootContext, seq: &[RootId], weak: bool) -> VerticalReport {
    let mut failures = Vec::new();
    for (k, &b) in seq.iter().enumerate() {
        let earlier = &seq[..k];
        let missing_subroots: Vec<RootId> = ctx
            .homs
            .proper_subroots(b)
            .into_iter()
            .filter(|s| !earlier.contains(s))
            .collect();
        let missing_quotients: Vec<RootId> = ctx
            .homs
            .proper_quotients(b)
            .into_iter()
            .filter(|s| !earlier.contains(s))
            .collect();
        let fine = if weak {
            missing_subroots.is_empty() || missing_quotients.is_empty()
        } else {
            missing_subroots.is_empty() && missing_quotients.is_empty()
        };
        if !fine {
            failures.push(VerticalFailure {
                root: b,
                missing_subroots,
                missing_quotients,
            });
        }
    }
    VerticalReport {
        ok: failures.is_empty(),
        failures,
    }
}

pub fn is_admissible(ctx: &RootContext, seq: &[RootId]) -> bool {
    find_lateral(ctx, seq).is_ok() && check_vertical(ctx, seq, false).ok
}

pub fn is_weakly_admissible(ctx: &RootContext, seq: &[RootId]) -> bool {
    find_lateral(ctx, seq).is_ok() && check_vertical(ctx, seq, true).ok
}

/// Every extension in `s` of a hom-orthogonal, ext-ordered pair from `r` lies in `r`.
pub fn is_relatively_closed(ctx: &RootContext, r: &[RootId], s: &[RootId]) -> bool {
    for &a in r {
        for &b in r {
            if !ctx.homs.hom_orthogonal(a, b) || ctx.homs.ext(a, b) != 0 {
                continue;
            }
            let chain = gamma_chain(ctx, a, b, s).expect("pair checked");
            if chain.iter().any(|g| !r.contains(g)) {
                return false;
            }
        }
    }
    true
}

/// Orders a set by length, which always gives a vertical order.
pub fn sort_vertical(ctx: &RootContext, set: &[RootId]) -> Vec<RootId> {
    let mut out = set.to_vec();
    out.sort_by_key(|&r| (ctx.roots.length(r), r));
    out
}
