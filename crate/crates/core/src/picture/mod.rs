//! Rank-three semi-invariant pictures: walls as arcs on the sphere, vertices with their
//! relations, and regions labelled by positive words.

mod atom;
mod svg;

pub use atom::{build_atom, valid_triples, verify_atom_shape, Atom, AtomError, AtomShapeReport};
pub use svg::{render_svg, Style, StyleError};

use crate::context::RootContext;
use crate::geometry::{Arrangement, GeometryError, GreenDigraph, SignVector, Wall};
use crate::group::PositiveWord;
use crate::lp::ConeSystem;
use crate::rational::{add, cross, dot, neg, primitive_ray, q, RationalVector, Q};
use crate::roots::RootId;
use crate::wide::gamma_chain;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PictureError {
    #[error("pictures need rank three, found {0}")]
    RankNotThree(usize),
    #[error("projection point is not strictly negative on the wall of {0}")]
    BadProjection(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `D(beta)` on the unit sphere: a great circle or an arc through `mid`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Curve {
    Circle {
        point: RationalVector,
    },
    Arc {
        from: RationalVector,
        mid: RationalVector,
        to: RationalVector,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PictureWall {
    pub root: RootId,
    pub label: String,
    pub normal: RationalVector,
    pub curve: Curve,
    /// False for walls deleted from an atom.
    pub present: bool,
}

/// A signed letter of a word in the free group on the wall labels.
pub type Letter = (RootId, bool);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRelation {
    pub left: RootId,
    pub right: RootId,
    /// The reading is `r(left,right)^{-1}` rather than `r(left,right)`.
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub ray: RationalVector,
    /// Walls passing through the vertex.
    pub crossing: Vec<usize>,
    /// Walls ending at the vertex.
    pub ending: Vec<usize>,
    /// Letters met clockwise (seen from outside) starting on the negative side of both crossing walls.
    pub reading: Vec<Letter>,
    /// Set when two walls cross and the reading is their relator or its inverse.
    pub relation: Option<VertexRelation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub signs: SignVector,
    pub witness: RationalVector,
    pub label: PositiveWord,
}

#[derive(Debug, Clone)]
pub struct PictureDatum {
    pub walls: Vec<PictureWall>,
    pub vertices: Vec<Vertex>,
    pub regions: Vec<Region>,
    /// Point the stereographic projection is taken from.
    pub projection: RationalVector,
    /// Face count of the wall graph from Euler's formula.
    pub faces: usize,
    pub arrangement: Arrangement,
    pub digraph: Option<GreenDigraph>,
}

/// `-sum dim P_i` for the whole quiver.
pub fn projective_point(ctx: &RootContext) -> RationalVector {
    let mut p = vec![q(0); ctx.n()];
    for i in 0..ctx.n() {
        p = add(&p, &ctx.quiver.projective(i).to_rational());
    }
    neg(&p)
}

/// The picture `L(S)` for a rank-three quiver.
pub fn build_picture(ctx: &RootContext, s: &[RootId]) -> Result<PictureDatum, PictureError> {
    if ctx.n() != 3 {
        return Err(PictureError::RankNotThree(ctx.n()));
    }
    let labels = s.iter().map(|&b| ctx.label(b)).collect();
    assemble(
        ctx,
        Arrangement::new(ctx, s),
        labels,
        s,
        projective_point(ctx),
    )
}

pub(crate) fn assemble(
    ctx: &RootContext,
    arr: Arrangement,
    labels: Vec<String>,
    order: &[RootId],
    projection: RationalVector,
) -> Result<PictureDatum, PictureError> {
    if arr.dim != 3 {
        return Err(PictureError::RankNotThree(arr.dim));
    }
    for (w, l) in arr.walls.iter().zip(&labels) {
        if !dot(&w.normal, &projection).is_negative() {
            return Err(PictureError::BadProjection(l.clone()));
        }
    }
    let walls: Vec<PictureWall> = arr
        .walls
        .iter()
        .zip(labels)
        .filter_map(|(w, label)| {
            wall_curve(w).map(|curve| PictureWall {
                root: w.root,
                label,
                normal: w.normal.clone(),
                curve,
                present: true,
            })
        })
        .collect();
    let rays = vertex_rays(&arr, &walls);
    let roots: Vec<RootId> = walls.iter().map(|w| w.root).collect();
    let vertices: Vec<Vertex> = rays
        .into_iter()
        .map(|v| analyse_vertex(ctx, &arr, &walls, &roots, order, v))
        .collect();
    let faces = euler_faces(&arr, &walls, &vertices);
    let (regions, digraph) = if arr.is_empty() {
        (Vec::new(), None)
    } else {
        let g = arr.green_digraph()?;
        (label_regions(&g, &arr.roots()), Some(g))
    };
    Ok(PictureDatum {
        walls,
        vertices,
        regions,
        projection,
        faces,
        arrangement: arr,
        digraph,
    })
}

fn arr_wall<'a>(arr: &'a Arrangement, w: &PictureWall) -> &'a Wall {
    arr.walls
        .iter()
        .find(|x| x.root == w.root)
        .expect("picture walls come from the arrangement")
}

fn wall_curve(w: &Wall) -> Option<Curve> {
    let mut mid = w.contains_interior_point()?;
    if mid.iter().all(|x| x.is_zero()) {
        // no subroot constraints: any nonzero vector of the plane will do
        mid = (0..3)
            .map(|k| {
                cross(
                    &w.normal,
                    &(0..3).map(|i| q(i64::from(i == k))).collect::<Vec<_>>(),
                )
            })
            .find(|c| c.iter().any(|x| !x.is_zero()))?;
    }
    let mut ends: Vec<RationalVector> = Vec::new();
    for s in &w.subroots {
        let c = cross(&w.normal, s);
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        for r in [c.clone(), neg(&c)] {
            let r = primitive_ray(&r);
            if w.contains(&r, false) && !ends.contains(&r) {
                ends.push(r);
            }
        }
    }
    ends.sort();
    match ends.len() {
        0 => Some(Curve::Circle {
            point: primitive_ray(&mid),
        }),
        2 => Some(Curve::Arc {
            from: ends[0].clone(),
            mid: primitive_ray(&mid),
            to: ends[1].clone(),
        }),
        _ => None,
    }
}

impl Wall {
    /// A point in the relative interior of the wall.
    pub fn contains_interior_point(&self) -> Option<RationalVector> {
        let mut sys = ConeSystem::new(self.normal.len()).eq(self.normal.clone());
        for s in &self.subroots {
            sys = sys.strict(neg(s));
        }
        sys.solve()
    }
}

fn vertex_rays(arr: &Arrangement, walls: &[PictureWall]) -> Vec<RationalVector> {
    let mut out: Vec<RationalVector> = Vec::new();
    let mut push = |r: RationalVector| {
        if !out.contains(&r) {
            out.push(r);
        }
    };
    for (i, a) in walls.iter().enumerate() {
        if let Curve::Arc { from, to, .. } = &a.curve {
            push(from.clone());
            push(to.clone());
        }
        for b in &walls[i + 1..] {
            let c = cross(&a.normal, &b.normal);
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            for r in [c.clone(), neg(&c)] {
                let r = primitive_ray(&r);
                if arr_wall(arr, a).contains(&r, false) && arr_wall(arr, b).contains(&r, false) {
                    push(r);
                }
            }
        }
    }
    out.sort();
    out
}

/// Tangent directions of the edges leaving `v`, with their wall index.
fn edges_at(
    arr: &Arrangement,
    walls: &[PictureWall],
    v: &[Q],
) -> (Vec<(RationalVector, usize)>, Vec<usize>, Vec<usize>) {
    let mut edges = Vec::new();
    let (mut crossing, mut ending) = (Vec::new(), Vec::new());
    for (k, w) in walls.iter().enumerate() {
        let wall = arr_wall(arr, w);
        if !wall.contains(v, false) {
            continue;
        }
        let t = cross(&w.normal, v);
        let active: Vec<&RationalVector> = wall
            .subroots
            .iter()
            .filter(|s| dot(s, v).is_zero())
            .collect();
        let ok = |d: &RationalVector| active.iter().all(|s| !dot(s, d).is_positive());
        let dirs: Vec<RationalVector> =
            [t.clone(), neg(&t)].into_iter().filter(|d| ok(d)).collect();
        if dirs.len() == 2 {
            crossing.push(k);
        } else {
            ending.push(k);
        }
        edges.extend(dirs.into_iter().map(|d| (d, k)));
    }
    (edges, crossing, ending)
}

/// Sorts tangent directions clockwise about the outward normal `v`.
fn sort_clockwise(v: &[Q], edges: &mut [(RationalVector, usize)]) {
    let Some(e1) = edges.first().map(|e| e.0.clone()) else {
        return;
    };
    let e2 = cross(v, &e1);
    // counterclockwise angle class: half 0 is [0, pi), half 1 is [pi, 2 pi)
    let half = |d: &RationalVector| {
        let (x, y) = (dot(d, &e1), dot(d, &e2));
        usize::from(!(y.is_positive() || (y.is_zero() && x.is_positive())))
    };
    edges.sort_by(|a, b| {
        half(&a.0).cmp(&half(&b.0)).then_with(|| {
            let c = dot(&cross(&a.0, &b.0), v);
            if c.is_positive() {
                std::cmp::Ordering::Less
            } else if c.is_negative() {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        })
    });
    edges.reverse();
}

fn analyse_vertex(
    ctx: &RootContext,
    arr: &Arrangement,
    walls: &[PictureWall],
    roots: &[RootId],
    order: &[RootId],
    v: RationalVector,
) -> Vertex {
    let (mut edges, crossing, ending) = edges_at(arr, walls, &v);
    sort_clockwise(&v, &mut edges);
    let mut vertex = Vertex {
        ray: v.clone(),
        crossing: crossing.clone(),
        ending,
        reading: Vec::new(),
        relation: None,
    };
    if crossing.len() != 2 {
        return vertex;
    }
    let (na, nb) = (&walls[crossing[0]].normal, &walls[crossing[1]].normal);
    let m = edges.len();
    let start = (0..m).find(|&i| {
        let s = add(&edges[i].0, &edges[(i + 1) % m].0);
        dot(na, &s).is_negative() && dot(nb, &s).is_negative()
    });
    let Some(start) = start else {
        return vertex;
    };
    // moving clockwise across direction d goes along -(v x d)
    vertex.reading = (1..=m)
        .map(|j| {
            let (d, k) = &edges[(start + j) % m];
            let step = neg(&cross(&v, d));
            (walls[*k].root, dot(&walls[*k].normal, &step).is_positive())
        })
        .collect();
    let (x, y) = (walls[crossing[0]].root, walls[crossing[1]].root);
    let (a, b) = pair_direction(ctx, order, x, y);
    if let Ok(chain) = gamma_chain(ctx, a, b, roots) {
        let gammas = &chain[1..chain.len() - 1];
        let mut r = vec![(a, true), (b, true), (a, false)];
        r.extend(gammas.iter().rev().map(|&g| (g, false)));
        r.push((b, false));
        let inv: Vec<Letter> = r.iter().rev().map(|&(l, s)| (l, !s)).collect();
        if vertex.reading == r {
            vertex.relation = Some(VertexRelation {
                left: a,
                right: b,
                inverse: false,
            });
        } else if vertex.reading == inv {
            vertex.relation = Some(VertexRelation {
                left: a,
                right: b,
                inverse: true,
            });
        }
    }
    vertex
}

/// `(a, b)` with `ext(a, b) = 0`; ties go to the earlier root of `order`.
pub fn pair_direction(
    ctx: &RootContext,
    order: &[RootId],
    x: RootId,
    y: RootId,
) -> (RootId, RootId) {
    let (exy, eyx) = (ctx.homs.ext(x, y), ctx.homs.ext(y, x));
    if exy == 0 && eyx != 0 {
        return (x, y);
    }
    if eyx == 0 && exy != 0 {
        return (y, x);
    }
    let pos = |r: RootId| order.iter().position(|&o| o == r).unwrap_or(usize::MAX);
    if pos(x) <= pos(y) {
        (x, y)
    } else {
        (y, x)
    }
}

/// Faces of the wall graph on the sphere: `V - E + F = 1 + C`.
fn euler_faces(arr: &Arrangement, walls: &[PictureWall], vertices: &[Vertex]) -> usize {
    let mut v = vertices.len();
    let mut e = 0;
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut lone_circles = 0;
    for w in walls {
        let on: Vec<usize> = (0..vertices.len())
            .filter(|&i| arr_wall(arr, w).contains(&vertices[i].ray, false))
            .collect();
        match (&w.curve, on.len()) {
            (Curve::Circle { .. }, 0) => {
                v += 1;
                e += 1;
                lone_circles += 1;
            }
            (Curve::Circle { .. }, k) => e += k,
            (Curve::Arc { .. }, k) => e += k.saturating_sub(1),
        }
        for pair in on.windows(2) {
            let (a, b) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
            parent[a] = b;
        }
    }
    let components = (0..vertices.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
        + lone_circles;
    (1 + components + e).saturating_sub(v)
}

/// Labels each compartment by the word of a shortest green path from the source.
fn label_regions(g: &GreenDigraph, roots: &[RootId]) -> Vec<Region> {
    let mut label: BTreeMap<usize, PositiveWord> = BTreeMap::new();
    label.insert(g.source, PositiveWord::default());
    let mut queue = VecDeque::from([g.source]);
    while let Some(i) = queue.pop_front() {
        for e in g.children(i) {
            if !label.contains_key(&e.to) {
                let w = label[&i].concat(&PositiveWord(vec![roots[e.wall]]));
                label.insert(e.to, w);
                queue.push_back(e.to);
            }
        }
    }
    g.compartments
        .iter()
        .enumerate()
        .map(|(i, c)| Region {
            signs: c.signs.clone(),
            witness: c.witness.clone(),
            label: label.get(&i).cloned().unwrap_or_default(),
        })
        .collect()
}
