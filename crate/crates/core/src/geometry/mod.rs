//! Stability walls, compartments, green adjacency and maximal green sequences.

mod checks;

pub use checks::*;

use crate::context::RootContext;
use crate::group::PositiveWord;
use crate::lp::ConeSystem;
use crate::rational::{dot, neg, scale, RationalVector, Q};
use crate::roots::RootId;
use num_traits::{Signed, Zero};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_MAX_PATHS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point lies on the hyperplane of wall {0} at an index that is not forced to zero")]
    OnWall(usize),
    #[error("more than {0} maximal green sequences")]
    PathExplosion(usize),
    #[error("the Coxeter path meets the wall of the non-simple root {0}")]
    NonSimpleCrossing(String),
    #[error("the last root {0} is simple")]
    SimpleLast(String),
    #[error("empty root sequence")]
    Empty,
    #[error("no compartment contains the point {0}")]
    MissingCompartment(String),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    fn factor(self) -> Option<Q> {
        match self {
            Sign::Neg => Some(Q::from_integer((-1).into())),
            Sign::Zero => None,
            Sign::Pos => Some(Q::from_integer(1.into())),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '-' => Some(Sign::Neg),
                '0' => Some(Sign::Zero),
                '+' => Some(Sign::Pos),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(SignVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// `D(root) = {n.x = 0, s.x <= 0 for s in subroots}`, equivalently `q.x >= 0` for `q` in quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub root: RootId,
    pub normal: RationalVector,
    pub subroots: Vec<RationalVector>,
    pub quotients: Vec<RationalVector>,
}

impl Wall {
    pub fn of_root(ctx: &RootContext, beta: RootId) -> Self {
        Wall {
            root: beta,
            normal: ctx.normal(beta).clone(),
            subroots: ctx
                .homs
                .proper_subroots(beta)
                .into_iter()
                .map(|a| ctx.normal(a).clone())
                .collect(),
            quotients: ctx
                .homs
                .proper_quotients(beta)
                .into_iter()
                .map(|g| ctx.normal(g).clone())
                .collect(),
        }
    }

    /// Adds the wall (closed, or its relative interior) to a system.
    fn constrain(&self, mut sys: ConeSystem, interior: bool) -> ConeSystem {
        sys = sys.eq(self.normal.clone());
        for s in &self.subroots {
            sys = if interior {
                sys.strict(neg(s))
            } else {
                sys.weak(neg(s))
            };
        }
        sys
    }

    pub fn contains(&self, x: &[Q], interior: bool) -> bool {
        self.constrain(ConeSystem::new(x.len()), interior)
            .satisfied_by(x)
    }
}

/// A sequence of walls in a common real vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub dim: usize,
    pub walls: Vec<Wall>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compartment {
    pub signs: SignVector,
    pub witness: RationalVector,
    /// Indices of walls that bound the compartment in codimension one.
    pub walls: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GreenEdge {
    pub from: usize,
    pub to: usize,
    /// Index of the crossed wall.
    pub wall: usize,
}

#[derive(Debug, Clone)]
pub struct GreenDigraph {
    pub compartments: Vec<Compartment>,
    pub edges: Vec<GreenEdge>,
    pub source: usize,
    pub sink: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenPath {
    /// Compartment indices from source to sink.
    pub nodes: Vec<usize>,
    /// Wall index crossed at each step.
    pub walls: Vec<usize>,
    pub word: PositiveWord,
}

impl Arrangement {
    pub fn new(ctx: &RootContext, s: &[RootId]) -> Self {
        Arrangement {
            dim: ctx.n(),
            walls: s.iter().map(|&b| Wall::of_root(ctx, b)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn roots(&self) -> Vec<RootId> {
        self.walls.iter().map(|w| w.root).collect()
    }

    /// The open set `U_eps`; zero entries impose nothing.
    pub fn region(&self, eps: &[Sign]) -> ConeSystem {
        let mut sys = ConeSystem::new(self.dim);
        for (w, s) in self.walls.iter().zip(eps) {
            if let Some(f) = s.factor() {
                sys = sys.strict(scale(&w.normal, &f));
            }
        }
        sys
    }

    /// Whether `D(beta_k)` meets `U_prefix`.
    pub fn wall_meets(&self, k: usize, prefix: &[Sign]) -> bool {
        self.walls[k]
            .constrain(self.region(prefix), false)
            .is_feasible()
    }

    /// A point in the relative interior of `D(beta_k)` inside the closure-free region `extra`.
    fn facet_point(&self, k: usize, extra: ConeSystem) -> Option<RationalVector> {
        self.walls[k].constrain(extra, true).solve()
    }

    /// All admissible sign vectors, depth first with `-` tried before `+`.
    pub fn compartments(&self) -> Vec<Compartment> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        self.expand(&mut prefix, &mut out);
        out
    }

    fn expand(&self, prefix: &mut Vec<Sign>, out: &mut Vec<Compartment>) {
        if prefix.len() == self.len() {
            let witness = self
                .region(prefix)
                .solve()
                .expect("admissible compartments are nonempty");
            let walls = self.incident_walls(prefix);
            out.push(Compartment {
                signs: SignVector(prefix.clone()),
                witness,
                walls,
            });
            return;
        }
        let k = prefix.len();
        let choices: &[Sign] = if self.wall_meets(k, prefix) {
            &[Sign::Neg, Sign::Pos]
        } else {
            &[Sign::Zero]
        };
        for &c in choices {
            prefix.push(c);
            if self.region(prefix).is_feasible() {
                self.expand(prefix, out);
            }
            prefix.pop();
        }
    }

    fn incident_walls(&self, eps: &[Sign]) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| eps[k] != Sign::Zero)
            .filter(|&k| {
                let mut others = eps.to_vec();
                others[k] = Sign::Zero;
                self.facet_point(k, self.region(&others)).is_some()
            })
            .collect()
    }

    /// Sign vector of the compartment containing `v`.
    pub fn compartment_of_point(&self, v: &[Q]) -> Result<SignVector, GeometryError> {
        let mut eps = Vec::with_capacity(self.len());
        for (k, w) in self.walls.iter().enumerate() {
            if !self.wall_meets(k, &eps) {
                eps.push(Sign::Zero);
                continue;
            }
            let p = dot(&w.normal, v);
            if p.is_zero() {
                return Err(GeometryError::OnWall(k + 1));
            }
            eps.push(if p.is_positive() {
                Sign::Pos
            } else {
                Sign::Neg
            });
        }
        Ok(SignVector(eps))
    }

    /// Whether `a -> b` is a green step across wall `k`: same prefix before `k`, `-` to `+` at `k`,
    /// and a common facet in the relative interior of `D(beta_k)`.
    pub fn green_step(&self, a: &SignVector, b: &SignVector) -> Option<usize> {
        let k = (0..self.len()).find(|&j| a.0[j] != b.0[j])?;
        if a.0[k] != Sign::Neg || b.0[k] != Sign::Pos {
            return None;
        }
        let mut sys = ConeSystem::new(self.dim);
        for j in (0..self.len()).filter(|&j| j != k) {
            for s in [a.0[j], b.0[j]] {
                if let Some(f) = s.factor() {
                    sys = sys.strict(scale(&self.walls[j].normal, &f));
                }
            }
        }
        self.facet_point(k, sys).map(|_| k)
    }

    pub fn green_digraph(&self) -> Result<GreenDigraph, GeometryError> {
        if self.is_empty() {
            return Err(GeometryError::Empty);
        }
        let compartments = self.compartments();
        let mut edges = Vec::new();
        for (i, a) in compartments.iter().enumerate() {
            for (j, b) in compartments.iter().enumerate() {
                if let Some(k) = self.green_step(&a.signs, &b.signs) {
                    edges.push(GreenEdge {
                        from: i,
                        to: j,
                        wall: k,
                    });
                }
            }
        }
        let find = |v: RationalVector| -> Result<usize, GeometryError> {
            let eps = self.compartment_of_point(&v)?;
            compartments
                .iter()
                .position(|c| c.signs == eps)
                .ok_or_else(|| GeometryError::MissingCompartment(crate::rational::fmt_qvec(&v)))
        };
        let ones = vec![Q::from_integer(1.into()); self.dim];
        let source = find(neg(&ones))?;
        let sink = find(ones)?;
        Ok(GreenDigraph {
            compartments,
            edges,
            source,
            sink,
        })
    }
}

impl GreenDigraph {
    pub fn index_of(&self, eps: &SignVector) -> Option<usize> {
        self.compartments.iter().position(|c| &c.signs == eps)
    }

    /// Outgoing edges sorted by wall index, then by target.
    pub fn children(&self, i: usize) -> Vec<GreenEdge> {
        let mut out: Vec<GreenEdge> = self.edges.iter().copied().filter(|e| e.from == i).collect();
        out.sort_by_key(|e| (e.wall, e.to));
        out
    }

    pub fn has_edge(&self, from: usize, to: usize, wall: usize) -> bool {
        self.edges
            .iter()
            .any(|e| e.from == from && e.to == to && e.wall == wall)
    }

    /// Kahn's algorithm; true when no directed cycle exists.
    pub fn is_acyclic(&self) -> bool {
        let n = self.compartments.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = queue.pop_front() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.from == i) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    queue.push_back(e.to);
                }
            }
        }
        seen == n
    }

    /// Every edge goes up lexicographically with `- < 0 < +`.
    pub fn edges_increase(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.compartments[e.from].signs < self.compartments[e.to].signs)
    }

    /// Compartments not on any source-to-sink path.
    pub fn uncovered(&self) -> Vec<usize> {
        let forward = self.reach(self.source, false);
        let backward = self.reach(self.sink, true);
        (0..self.compartments.len())
            .filter(|&i| !(forward[i] && backward[i]))
            .collect()
    }

    fn reach(&self, start: usize, reverse: bool) -> Vec<bool> {
        let mut seen = vec![false; self.compartments.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for e in &self.edges {
                let (a, b) = if reverse {
                    (e.to, e.from)
                } else {
                    (e.from, e.to)
                };
                if a == i && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// All source-to-sink paths in lexicographic order of their wall sequences.
    pub fn maximal_paths(
        &self,
        roots: &[RootId],
        cap: usize,
    ) -> Result<Vec<GreenPath>, GeometryError> {
        let children: Vec<Vec<GreenEdge>> = (0..self.compartments.len())
            .map(|i| self.children(i))
            .collect();
        let mut out = Vec::new();
        let mut nodes = vec![self.source];
        let mut walls = Vec::new();
        self.paths_from(&children, roots, cap, &mut nodes, &mut walls, &mut out)?;
        Ok(out)
    }

    fn paths_from(
        &self,
        children: &[Vec<GreenEdge>],
        roots: &[RootId],
        cap: usize,
        nodes: &mut Vec<usize>,
        walls: &mut Vec<usize>,
        out: &mut Vec<GreenPath>,
    ) -> Result<(), GeometryError> {
        let at = *nodes.last().expect("paths start at the source");
        if at == self.sink {
            if out.len() >= cap {
                return Err(GeometryError::PathExplosion(cap));
            }
            let word = PositiveWord(walls.iter().map(|&k| roots[k]).collect());
            out.push(GreenPath {
                nodes: nodes.clone(),
                walls: walls.clone(),
                word,
            });
            return Ok(());
        }
        for e in &children[at] {
            nodes.push(e.to);
            walls.push(e.wall);
            self.paths_from(children, roots, cap, nodes, walls, out)?;
            nodes.pop();
            walls.pop();
        }
        Ok(())
    }
}

pub fn admissible_sign_vectors(ctx: &RootContext, s: &[RootId]) -> Vec<Compartment> {
    Arrangement::new(ctx, s).compartments()
}

pub fn compartment_of_point(
    ctx: &RootContext,
    v: &[Q],
    s: &[RootId],
) -> Result<SignVector, GeometryError> {
    Arrangement::new(ctx, s).compartment_of_point(v)
}

pub fn green_digraph(ctx: &RootContext, s: &[RootId]) -> Result<GreenDigraph, GeometryError> {
    Arrangement::new(ctx, s).green_digraph()
}

/// Maximal `S`-green sequences with their wall-label words.
pub fn enumerate_mgs(
    ctx: &RootContext,
    s: &[RootId],
    cap: usize,
) -> Result<(GreenDigraph, Vec<GreenPath>), GeometryError> {
    let g = green_digraph(ctx, s)?;
    let paths = g.maximal_paths(s, cap)?;
    Ok((g, paths))
}

#[cfg(test)]
mod tests;
