//! Verification routines built on the green digraph.

use super::{enumerate_mgs, Arrangement, GeometryError, GreenPath, Sign, SignVector, Wall};
use crate::context::RootContext;
use crate::group::{coxeter_element, rewrite_closure, Limits, PositiveWord, Presentation};
use crate::lp::ConeSystem;
use crate::order::find_lateral;
use crate::rational::{dot, fmt_q, neg, q, RationalVector, Q};
use crate::roots::RootId;
use num_traits::Signed;
use std::collections::BTreeSet;

pub const THEOREM_A_SCOPE: &str =
    "bijection checked between maximal green sequences and the positive expressions reachable from c_S by relation rewrites";

#[derive(Debug, Clone)]
pub struct TheoremAReport {
    pub compartments: usize,
    pub mgs: usize,
    pub closure: usize,
    pub distinct: bool,
    pub mgs_in_closure: bool,
    pub closure_realized: bool,
    pub counterexample: Option<PositiveWord>,
}

impl TheoremAReport {
    pub fn ok(&self) -> bool {
        self.distinct && self.mgs_in_closure && self.closure_realized
    }
}

pub fn verify_theorem_a(
    ctx: &RootContext,
    s: &[RootId],
    limits: Limits,
    max_paths: usize,
) -> Result<TheoremAReport, GeometryError> {
    let (g, paths) = enumerate_mgs(ctx, s, max_paths)?;
    let words: Vec<PositiveWord> = paths.into_iter().map(|p| p.word).collect();
    let geo: BTreeSet<PositiveWord> = words.iter().cloned().collect();
    let c = coxeter_element(ctx, s)?;
    let closure = rewrite_closure(&c, &Presentation::new(ctx, s), limits)?;
    let outside = geo.difference(&closure).next().cloned();
    let missing = closure.difference(&geo).next().cloned();
    Ok(TheoremAReport {
        compartments: g.compartments.len(),
        mgs: words.len(),
        closure: closure.len(),
        distinct: geo.len() == words.len(),
        mgs_in_closure: outside.is_none(),
        closure_realized: missing.is_none(),
        counterexample: outside.or(missing),
    })
}

#[derive(Debug, Clone)]
pub struct CoxeterPathReport {
    /// Coefficient of each vertex in the offset `sum c_i e_i`.
    pub coefficients: Vec<i64>,
    /// Walls met, in order, with their crossing times.
    pub crossings: Vec<(RootId, Q)>,
    pub word: PositiveWord,
    pub coxeter: PositiveWord,
    /// Compartments visited along the path.
    pub compartments: Vec<SignVector>,
    pub times_ok: bool,
    pub word_ok: bool,
    pub green_ok: bool,
}

impl CoxeterPathReport {
    pub fn ok(&self) -> bool {
        self.times_ok && self.word_ok && self.green_ok
    }
}

/// Follows `t (1,...,1) - sum j alpha_j` with simples of `S` in lateral order.
/// Vertices outside the support of `S` get coefficients after the last simple.
pub fn coxeter_path(ctx: &RootContext, s: &[RootId]) -> Result<CoxeterPathReport, GeometryError> {
    let n = ctx.n();
    let simples: Vec<RootId> = s.iter().copied().filter(|&r| ctx.is_simple(r)).collect();
    let lateral = find_lateral(ctx, &simples).map_err(crate::group::GroupError::from)?;
    let vertex_of = |r: RootId| {
        ctx.dim(r)
            .0
            .iter()
            .position(|&x| x != 0)
            .expect("roots are nonzero")
    };
    let mut coefficients = vec![0i64; n];
    for (j, &r) in lateral.iter().enumerate() {
        coefficients[vertex_of(r)] = j as i64 + 1;
    }
    let mut next = lateral.len() as i64;
    for c in coefficients.iter_mut().filter(|c| **c == 0) {
        next += 1;
        *c = next;
    }
    let offset: RationalVector = coefficients.iter().map(|&c| q(c)).collect();
    let ones = vec![q(1); n];
    let point = |t: &Q| -> RationalVector { offset.iter().map(|c| t - c).collect() };

    let mut crossings = Vec::new();
    for &b in s {
        let nb = ctx.normal(b);
        let t = dot(nb, &offset) / dot(nb, &ones);
        let x = point(&t);
        if Wall::of_root(ctx, b).contains(&x, false) {
            if !ctx.is_simple(b) {
                return Err(GeometryError::NonSimpleCrossing(ctx.label(b)));
            }
            crossings.push((b, t));
        }
    }
    crossings.sort_by(|a, b| a.1.cmp(&b.1));
    let word = PositiveWord(crossings.iter().map(|c| c.0).collect());
    let coxeter = coxeter_element(ctx, s)?;
    let times_ok = crossings
        .iter()
        .enumerate()
        .all(|(i, (_, t))| *t == q(i as i64 + 1));

    let arr = Arrangement::new(ctx, s);
    let last = q(*coefficients.iter().max().expect("n >= 1") + 1);
    let mut samples = vec![q(0)];
    for w in crossings.windows(2) {
        samples.push((&w[0].1 + &w[1].1) / q(2));
    }
    samples.push(last);
    let compartments = samples
        .iter()
        .map(|t| arr.compartment_of_point(&point(t)))
        .collect::<Result<Vec<_>, _>>()?;
    let green_ok = compartments.len() == crossings.len() + 1
        && compartments
            .windows(2)
            .zip(&crossings)
            .all(|(w, (b, _))| arr.green_step(&w[0], &w[1]).map(|k| s[k]) == Some(*b));
    Ok(CoxeterPathReport {
        coefficients,
        crossings,
        word_ok: word == coxeter,
        word,
        coxeter,
        compartments,
        times_ok,
        green_ok,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionFlags {
    pub in_w: bool,
    pub in_v: bool,
    pub in_v0: bool,
}

/// Membership in `W(beta)`, `V(beta)` and the open region `V0`.
pub fn region_membership(ctx: &RootContext, x: &[Q], beta: RootId) -> RegionFlags {
    let subs: Vec<Q> = ctx
        .homs
        .proper_subroots(beta)
        .into_iter()
        .map(|a| ctx.pairing(x, a))
        .collect();
    let quots: Vec<Q> = ctx
        .homs
        .proper_quotients(beta)
        .into_iter()
        .map(|g| ctx.pairing(x, g))
        .collect();
    RegionFlags {
        in_w: subs.iter().any(|v| v.is_positive()),
        in_v: quots.iter().all(|v| !v.is_negative()),
        in_v0: subs.iter().all(|v| v.is_negative()) && quots.iter().all(|v| v.is_positive()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgsClass {
    Class1,
    Class2,
}

/// Whether the open compartment `U_eps` of `arr` meets `D(beta)`.
pub fn compartment_meets_wall(arr: &Arrangement, eps: &SignVector, wall: &Wall) -> bool {
    wall.constrain(arr.region(&eps.0), false).is_feasible()
}

pub fn classify_mgs_class(
    ctx: &RootContext,
    s0: &[RootId],
    path: &GreenPath,
    beta_m: RootId,
) -> Result<MgsClass, GeometryError> {
    if ctx.is_simple(beta_m) {
        return Err(GeometryError::SimpleLast(ctx.label(beta_m)));
    }
    let arr = Arrangement::new(ctx, s0);
    let g = arr.green_digraph()?;
    let wall = Wall::of_root(ctx, beta_m);
    let meets = path
        .nodes
        .iter()
        .any(|&i| compartment_meets_wall(&arr, &g.compartments[i].signs, &wall));
    Ok(if meets {
        MgsClass::Class2
    } else {
        MgsClass::Class1
    })
}

/// Whether the open set `region` lies inside `V0(beta)`.
fn region_inside_v0(ctx: &RootContext, region: &ConeSystem, beta: RootId) -> bool {
    let escapes_sub = ctx
        .homs
        .proper_subroots(beta)
        .into_iter()
        .any(|a| region.clone().weak(ctx.normal(a).clone()).is_feasible());
    let escapes_quot = ctx
        .homs
        .proper_quotients(beta)
        .into_iter()
        .any(|g| region.clone().weak(neg(ctx.normal(g))).is_feasible());
    !(escapes_sub || escapes_quot)
}

#[derive(Debug, Clone)]
pub struct LemmaDReport {
    /// Set when the last root is simple and the check does not apply.
    pub skipped: Option<String>,
    pub sequences: usize,
    pub class2: usize,
    pub violations: Vec<String>,
}

impl LemmaDReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks consecutiveness, the hom-orthogonality pattern and facet persistence
/// over every maximal green sequence of `S` minus its last root.
pub fn lemma_d_check(
    ctx: &RootContext,
    s: &[RootId],
    max_paths: usize,
) -> Result<LemmaDReport, GeometryError> {
    let (&beta_m, s0) = s.split_last().ok_or(GeometryError::Empty)?;
    if ctx.is_simple(beta_m) {
        return Ok(LemmaDReport {
            skipped: Some(format!(
                "last root {} is simple, so x(beta_m) is central",
                ctx.label(beta_m)
            )),
            sequences: 0,
            class2: 0,
            violations: Vec::new(),
        });
    }
    let (g0, paths) = enumerate_mgs(ctx, s0, max_paths)?;
    let arr0 = Arrangement::new(ctx, s0);
    let full = Arrangement::new(ctx, s).green_digraph()?;
    let wall = Wall::of_root(ctx, beta_m);
    let meets: Vec<bool> = g0
        .compartments
        .iter()
        .map(|c| compartment_meets_wall(&arr0, &c.signs, &wall))
        .collect();
    let mut violations = Vec::new();

    for (i, c) in g0.compartments.iter().enumerate() {
        if meets[i] != region_inside_v0(ctx, &arr0.region(&c.signs.0), beta_m) {
            violations.push(format!(
                "compartment {} meets D(beta_m) = {} but lies in V0 = {}",
                c.signs, meets[i], !meets[i]
            ));
        }
    }

    let mut class2 = 0;
    for path in &paths {
        let hits: Vec<usize> = (0..path.nodes.len())
            .filter(|&i| meets[path.nodes[i]])
            .collect();
        let (Some(&p), Some(&q)) = (hits.first(), hits.last()) else {
            continue;
        };
        class2 += 1;
        let name = path.word.format_dims(ctx);
        if hits.len() != q - p + 1 {
            violations.push(format!(
                "{name}: compartments meeting D(beta_m) are not consecutive"
            ));
            continue;
        }
        // crossing i (1-based) leads from node i-1 to node i
        let label = |i: usize| s0[path.walls[i - 1]];
        for i in p + 1..=q {
            if !ctx.homs.hom_orthogonal(beta_m, label(i)) {
                violations.push(format!(
                    "{name}: crossing {i} inside the run is not hom-orthogonal to beta_m"
                ));
            }
        }
        if p >= 1 && ctx.homs.hom_orthogonal(beta_m, label(p)) {
            violations.push(format!(
                "{name}: entry crossing {p} is hom-orthogonal to beta_m"
            ));
        }
        if q < path.walls.len() && ctx.homs.hom_orthogonal(beta_m, label(q + 1)) {
            violations.push(format!(
                "{name}: exit crossing {} is hom-orthogonal to beta_m",
                q + 1
            ));
        }
        for i in p + 1..=q {
            for d in [Sign::Neg, Sign::Pos] {
                let ext = |node: usize| {
                    let mut v = g0.compartments[node].signs.0.clone();
                    v.push(d);
                    full.index_of(&SignVector(v))
                };
                let ok = match (ext(path.nodes[i - 1]), ext(path.nodes[i])) {
                    (Some(a), Some(b)) => full.has_edge(a, b, path.walls[i - 1]),
                    _ => false,
                };
                if !ok {
                    violations.push(format!(
                        "{name}: wall of crossing {i} does not separate the {} halves",
                        d.symbol()
                    ));
                }
            }
        }
    }
    Ok(LemmaDReport {
        skipped: None,
        sequences: paths.len(),
        class2,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityViolation {
    pub root: RootId,
    pub witness: RationalVector,
}

/// Points of one description of `D(beta)` that violate the other description.
pub fn wall_duality_violation(ctx: &RootContext, beta: RootId) -> Option<DualityViolation> {
    let w = Wall::of_root(ctx, beta);
    let sub_desc = || w.constrain(ConeSystem::new(ctx.n()), false);
    let quot_desc = || {
        let mut sys = ConeSystem::new(ctx.n()).eq(w.normal.clone());
        for g in &w.quotients {
            sys = sys.weak(g.clone());
        }
        sys
    };
    for g in &w.quotients {
        if let Some(x) = sub_desc().strict(neg(g)).solve() {
            return Some(DualityViolation {
                root: beta,
                witness: x,
            });
        }
    }
    for a in &w.subroots {
        if let Some(x) = quot_desc().strict(a.clone()).solve() {
            return Some(DualityViolation {
                root: beta,
                witness: x,
            });
        }
    }
    None
}

/// Where `D(beta_k)` meets `U_prefix`, no proper subroot inequality of `beta_k` is active:
/// `H(beta_k)` and `D(beta_k)` agree inside the prefix region.
pub fn boundary_statement_violations(arr: &Arrangement) -> Vec<(SignVector, usize)> {
    let mut out = Vec::new();
    for c in arr.compartments() {
        for k in 0..arr.len() {
            if c.signs.0[k] == Sign::Zero {
                continue;
            }
            let w = &arr.walls[k];
            let base = arr.region(&c.signs.0[..k]).eq(w.normal.clone());
            if w.subroots
                .iter()
                .any(|s| base.clone().weak(s.clone()).strict(s.clone()).is_feasible())
            {
                out.push((c.signs.clone(), k));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Crossing times formatted for reports.
pub fn format_crossings(ctx: &RootContext, r: &CoxeterPathReport) -> String {
    r.crossings
        .iter()
        .map(|(b, t)| format!("{}@{}", ctx.label(*b), fmt_q(t)))
        .collect::<Vec<_>>()
        .join(" ")
}
