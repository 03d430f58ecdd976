//! Atoms: the picture of the wide subcategory generated by a triple, drawn in the
//! coordinates of that triple, with labels outside the ambient set deleted.

use super::{assemble, Curve, PictureDatum, PictureError};
use crate::context::RootContext;
use crate::geometry::{Arrangement, Wall};
use crate::rational::{neg, q, solve_combination, RationalVector, Q};
use crate::roots::RootId;
use crate::wide::{nat_combination, WideSubcat};
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtomError {
    #[error("({0}) is not a hom-orthogonal exceptional triple: {1}")]
    NotExceptionalTriple(String, String),
    #[error("root {0} of the triple is not in the ambient set")]
    NotInSet(String),
    #[error(transparent)]
    Picture(#[from] PictureError),
}

#[derive(Debug, Clone)]
pub struct Atom {
    pub triple: [RootId; 3],
    /// Roots of the wide subcategory, in canonical order.
    pub wide: Vec<RootId>,
    /// Coefficients of each wide root in the triple.
    pub coefficients: Vec<Vec<i64>>,
    pub picture: PictureDatum,
    /// Walls whose labels are not in the ambient set.
    pub ghosts: Vec<usize>,
}

/// Builds `A_S(a1, a2, a3)` in the coordinates of `R a*`.
pub fn build_atom(ctx: &RootContext, triple: [RootId; 3], s: &[RootId]) -> Result<Atom, AtomError> {
    let name = || {
        triple
            .iter()
            .map(|&r| ctx.label(r))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let w = WideSubcat::new(ctx, &triple)
        .map_err(|e| AtomError::NotExceptionalTriple(name(), e.to_string()))?;
    if let Some(&r) = triple.iter().find(|r| !s.contains(r)) {
        return Err(AtomError::NotInSet(ctx.label(r)));
    }
    let wide = w.roots(ctx);
    let coefficients: Vec<Vec<i64>> = wide
        .iter()
        .map(|&b| nat_combination(ctx, &triple, b).expect("wide roots are combinations"))
        .collect();
    let ends: Vec<i64> = triple.iter().map(|&a| ctx.homs.hom(a, a)).collect();
    let normal =
        |c: &[i64]| -> RationalVector { c.iter().zip(&ends).map(|(x, e)| q(x * e)).collect() };
    let walls: Vec<Wall> = wide
        .iter()
        .zip(&coefficients)
        .map(|(&b, c)| {
            let within = |rs: Vec<RootId>| -> Vec<RationalVector> {
                rs.into_iter()
                    .filter_map(|r| wide.iter().position(|&x| x == r))
                    .map(|i| normal(&coefficients[i]))
                    .collect()
            };
            Wall {
                root: b,
                normal: normal(c),
                subroots: within(ctx.homs.proper_subroots(b)),
                quotients: within(ctx.homs.proper_quotients(b)),
            }
        })
        .collect();
    let arr = Arrangement { dim: 3, walls };
    let labels = wide.iter().map(|&b| ctx.label(b)).collect();
    let mut order: Vec<RootId> = triple.to_vec();
    order.extend(
        s.iter()
            .copied()
            .filter(|r| wide.contains(r) && !triple.contains(r)),
    );
    let mut picture = assemble(
        ctx,
        arr,
        labels,
        &order,
        projective_point(ctx, &triple, &ends),
    )?;
    let mut ghosts = Vec::new();
    for (k, pw) in picture.walls.iter_mut().enumerate() {
        if !s.contains(&pw.root) {
            pw.present = false;
            ghosts.push(k);
        }
    }
    Ok(Atom {
        triple,
        wide,
        coefficients,
        picture,
        ghosts,
    })
}

/// `-sum dim P'_i` where `<P'_i, a_j> = delta_ij e_i` inside the wide subcategory.
fn projective_point(ctx: &RootContext, triple: &[RootId; 3], ends: &[i64]) -> RationalVector {
    let euler = |a: RootId, b: RootId| {
        ctx.quiver
            .euler_pairing(ctx.dim(a), ctx.dim(b))
            .expect("dims have length n")
    };
    // column k holds <a_k, a_j> over j
    let cols: Vec<RationalVector> = triple
        .iter()
        .map(|&ak| triple.iter().map(|&aj| q(euler(ak, aj))).collect())
        .collect();
    let mut total = vec![q(0); 3];
    for i in 0..3 {
        let target: Vec<Q> = (0..3)
            .map(|j| if i == j { q(ends[i]) } else { q(0) })
            .collect();
        let c =
            solve_combination(&cols, &target).expect("Euler form is nondegenerate on the triple");
        for k in 0..3 {
            total[k] += &c[k];
        }
    }
    neg(&total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomShapeReport {
    pub ok: bool,
    /// Vertices strictly outside the circle of the third root.
    pub exterior: Vec<usize>,
    /// Vertices strictly inside the circle of the first root.
    pub interior: Vec<usize>,
    pub circles: bool,
    pub reason: Option<String>,
}

/// One vertex outside the third circle reading `r(a1,a2)`, one inside the first reading
/// `r(a2,a3)^{-1}`, and the three generating walls are full circles.
pub fn verify_atom_shape(atom: &Atom) -> AtomShapeReport {
    let p = &atom.picture;
    let t = atom.triple;
    let wall_of = |r: RootId| p.walls.iter().find(|w| w.root == r);
    let circles = t
        .iter()
        .all(|&r| matches!(wall_of(r).map(|w| &w.curve), Some(Curve::Circle { .. })));
    // the projection point is on the negative side of every wall, so "outside" means negative
    let exterior: Vec<usize> = (0..p.vertices.len())
        .filter(|&i| p.vertices[i].ray[2].is_negative())
        .collect();
    let interior: Vec<usize> = (0..p.vertices.len())
        .filter(|&i| p.vertices[i].ray[0].is_positive())
        .collect();
    let relation_is = |i: usize, a: RootId, b: RootId, inverse: bool| {
        p.vertices[i]
            .relation
            .as_ref()
            .is_some_and(|r| r.left == a && r.right == b && r.inverse == inverse)
    };
    let mut reason = None;
    if !circles {
        reason = Some("a generating wall is not a full circle".to_string());
    } else if exterior.len() != 1 {
        reason = Some(format!(
            "{} vertices outside the third circle",
            exterior.len()
        ));
    } else if !relation_is(exterior[0], t[0], t[1], false) {
        reason = Some("exterior vertex does not read r(a1,a2)".to_string());
    } else if interior.len() != 1 {
        reason = Some(format!(
            "{} vertices inside the first circle",
            interior.len()
        ));
    } else if !relation_is(interior[0], t[1], t[2], true) {
        reason = Some("interior vertex does not read r(a2,a3)^-1".to_string());
    }
    AtomShapeReport {
        ok: reason.is_none(),
        exterior,
        interior,
        circles,
        reason,
    }
}

/// Ordered triples of `s` that generate a rank-three wide subcategory in the given order.
pub fn valid_triples(ctx: &RootContext, s: &[RootId]) -> Vec<[RootId; 3]> {
    let mut out = Vec::new();
    for &a in s {
        for &b in s {
            for &c in s {
                if a != b && b != c && a != c && WideSubcat::new(ctx, &[a, b, c]).is_ok() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}
