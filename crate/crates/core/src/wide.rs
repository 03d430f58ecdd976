//! Wide subcategories generated by hom-orthogonal exceptional sequences, gamma chains,
//! and the minimal roots at a point of the stability space.

use crate::context::RootContext;
use crate::lp::ConeSystem;
use crate::rational::{dot, neg, q, solve_combination, RationalVector};
use crate::roots::RootId;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WideError {
    #[error("roots {0} and {1} are not hom-orthogonal")]
    NotOrthogonal(String, String),
    #[error("ext({0},{1}) is nonzero, so the pair is out of order")]
    ExtOrder(String, String),
    #[error("generating roots are linearly dependent")]
    Dependent,
    #[error("({0},{1}) is not a hom-orthogonal pair with ext({0},{1}) = 0")]
    NotOrthogonalPair(String, String),
}

/// `A(alpha_1, ..., alpha_k)`: modules filtered by the generating exceptional modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideSubcat {
    gens: Vec<RootId>,
}

impl WideSubcat {
    pub fn new(ctx: &RootContext, gens: &[RootId]) -> Result<Self, WideError> {
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                if !ctx.homs.hom_orthogonal(a, b) {
                    return Err(WideError::NotOrthogonal(ctx.label(a), ctx.label(b)));
                }
                if ctx.homs.ext(a, b) != 0 {
                    return Err(WideError::ExtOrder(ctx.label(a), ctx.label(b)));
                }
            }
        }
        let rows: Vec<RationalVector> = gens.iter().map(|&g| ctx.dim(g).to_rational()).collect();
        if crate::rational::rank(&rows) < gens.len() {
            return Err(WideError::Dependent);
        }
        Ok(WideSubcat {
            gens: gens.to_vec(),
        })
    }

    pub fn generators(&self) -> &[RootId] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Coefficients of `beta` in the generators when they are nonnegative integers.
    pub fn coefficients(&self, ctx: &RootContext, beta: RootId) -> Option<Vec<i64>> {
        nat_combination(ctx, &self.gens, beta)
    }

    pub fn contains(&self, ctx: &RootContext, beta: RootId) -> bool {
        self.coefficients(ctx, beta).is_some()
    }

    /// All roots of the ambient table lying in this subcategory, in canonical order.
    pub fn roots(&self, ctx: &RootContext) -> Vec<RootId> {
        ctx.roots.ids().filter(|&b| self.contains(ctx, b)).collect()
    }
}

pub fn wide_membership(ctx: &RootContext, beta: RootId, w: &WideSubcat) -> bool {
    w.contains(ctx, beta)
}

/// Writes `beta` as a combination of `gens` with natural-number coefficients, if possible.
pub fn nat_combination(ctx: &RootContext, gens: &[RootId], beta: RootId) -> Option<Vec<i64>> {
    let cols: Vec<RationalVector> = gens.iter().map(|&g| ctx.dim(g).to_rational()).collect();
    let c = solve_combination(&cols, &ctx.dim(beta).to_rational())?;
    c.iter()
        .map(|x| {
            if x.is_integer() && !x.is_negative() {
                Some(x.to_integer().try_into().ok()?)
            } else {
                None
            }
        })
        .collect()
}

/// Roots of `r` that are `a beta_i + b beta_j` with `a, b >= 0`, ordered by increasing `a/b`.
/// Starts with `beta_j` and ends with `beta_i`.
pub fn gamma_chain(
    ctx: &RootContext,
    bi: RootId,
    bj: RootId,
    r: &[RootId],
) -> Result<Vec<RootId>, WideError> {
    if !ctx.homs.hom_orthogonal(bi, bj) || ctx.homs.ext(bi, bj) != 0 {
        return Err(WideError::NotOrthogonalPair(ctx.label(bi), ctx.label(bj)));
    }
    let mut inner: Vec<(RootId, i64, i64)> = r
        .iter()
        .filter(|&&g| g != bi && g != bj)
        .filter_map(|&g| nat_combination(ctx, &[bi, bj], g).map(|c| (g, c[0], c[1])))
        .collect();
    inner.sort_by(|x, y| ratio_cmp((x.1, x.2), (y.1, y.2)));
    let mut chain = vec![bj];
    chain.extend(inner.into_iter().map(|(g, _, _)| g));
    chain.push(bi);
    Ok(chain)
}

fn ratio_cmp(x: (i64, i64), y: (i64, i64)) -> Ordering {
    (x.0 * y.1).cmp(&(y.0 * x.1))
}

/// Result of [`minimal_roots_at`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRoots {
    /// Roots whose wall contains the point in its relative interior.
    pub minimal: Vec<RootId>,
    /// Roots whose wall contains the point but not in its interior.
    pub others: Vec<RootId>,
    /// Every wall through the point belongs to a natural combination of the minimal roots.
    pub combinations_ok: bool,
}

/// Whether `x` lies in `D(beta)`; `strict` asks for the relative interior.
pub fn in_wall(ctx: &RootContext, x: &[crate::rational::Q], beta: RootId, strict: bool) -> bool {
    if !ctx.pairing(x, beta).is_zero() {
        return false;
    }
    ctx.homs.proper_subroots(beta).into_iter().all(|s| {
        let v = ctx.pairing(x, s);
        if strict {
            v.is_negative()
        } else {
            !v.is_positive()
        }
    })
}

pub fn minimal_roots_at(
    ctx: &RootContext,
    x0: &[crate::rational::Q],
    s: &[RootId],
) -> MinimalRoots {
    let mut minimal = Vec::new();
    let mut others = Vec::new();
    for &b in s {
        if in_wall(ctx, x0, b, true) {
            minimal.push(b);
        } else if in_wall(ctx, x0, b, false) {
            others.push(b);
        }
    }
    let combinations_ok = others
        .iter()
        .all(|&b| nat_combination(ctx, &minimal, b).is_some());
    MinimalRoots {
        minimal,
        others,
        combinations_ok,
    }
}

/// An interior point of `D(beta)`, if the wall is nonempty in codimension one.
pub fn wall_interior_point(ctx: &RootContext, beta: RootId) -> Option<RationalVector> {
    let mut sys = ConeSystem::new(ctx.n()).eq(ctx.normal(beta).clone());
    for s in ctx.homs.proper_subroots(beta) {
        sys = sys.strict(neg(ctx.normal(s)));
    }
    sys.solve()
}

/// Sanity check used by tests: the pairing vanishes on the wall point.
pub fn pairing_is_zero(ctx: &RootContext, x: &[crate::rational::Q], beta: RootId) -> bool {
    dot(ctx.normal(beta), x) == q(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::DEFAULT_SEED;
    use crate::quiver::ValuedQuiver;
    use crate::rational::qvec;

    fn ctx() -> RootContext {
        let q = ValuedQuiver::simply_laced(3, &[(1, 0), (2, 1)]).unwrap();
        RootContext::build(&q, DEFAULT_SEED).unwrap()
    }

    #[test]
    fn membership_in_a12() {
        let c = ctx();
        let (a1, a2, a3, a4) = (
            c.id(&[1, 0, 0]).unwrap(),
            c.id(&[0, 1, 0]).unwrap(),
            c.id(&[0, 0, 1]).unwrap(),
            c.id(&[1, 1, 0]).unwrap(),
        );
        let w = WideSubcat::new(&c, &[a1, a2]).unwrap();
        assert!(wide_membership(&c, a4, &w));
        assert!(wide_membership(&c, a1, &w));
        assert!(!wide_membership(&c, a3, &w));
        assert_eq!(w.roots(&c), vec![a1, a2, a4]);
        assert!(matches!(
            WideSubcat::new(&c, &[a2, a1]),
            Err(WideError::ExtOrder(..))
        ));
    }

    #[test]
    fn gamma_chains_of_the_example() {
        let c = ctx();
        let id = |v: &[i64]| c.id(v).unwrap();
        let s = vec![
            id(&[1, 0, 0]),
            id(&[0, 1, 0]),
            id(&[1, 1, 0]),
            id(&[0, 0, 1]),
        ];
        assert_eq!(
            gamma_chain(&c, s[0], s[1], &s).unwrap(),
            vec![s[1], s[2], s[0]]
        );
        assert_eq!(gamma_chain(&c, s[1], s[3], &s).unwrap(), vec![s[3], s[1]]);
        assert_eq!(gamma_chain(&c, s[2], s[3], &s).unwrap(), vec![s[3], s[2]]);
        assert!(gamma_chain(&c, s[1], s[0], &s).is_err());
    }

    #[test]
    fn minimal_roots_on_two_walls() {
        let c = ctx();
        let id = |v: &[i64]| c.id(v).unwrap();
        let all: Vec<RootId> = c.roots.ids().collect();
        // generic point of D(a1) and D(a2): x1 = x2 = 0
        let m = minimal_roots_at(&c, &qvec(&[0, 0, 1]), &all);
        assert_eq!(m.minimal, vec![id(&[1, 0, 0]), id(&[0, 1, 0])]);
        assert_eq!(m.others, vec![id(&[1, 1, 0])]);
        assert!(m.combinations_ok);
        let m = minimal_roots_at(&c, &qvec(&[1, 1, 1]), &all);
        assert!(m.minimal.is_empty() && m.others.is_empty());
        let m = minimal_roots_at(&c, &qvec(&[0, 1, 1]), &all);
        assert_eq!(m.minimal, vec![id(&[1, 0, 0])]);
    }

    #[test]
    fn wall_points_lie_on_their_walls() {
        let c = ctx();
        for b in c.roots.ids() {
            let x = wall_interior_point(&c, b).unwrap();
            assert!(pairing_is_zero(&c, &x, b));
            assert!(in_wall(&c, &x, b, true));
        }
    }
}
