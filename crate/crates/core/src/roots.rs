//! Positive roots of finite-type valued quivers and root sequences.

use crate::quiver::{DimVector, ValuedQuiver};
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

pub const DEFAULT_ROOT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("reflection closure exceeded {cap} roots; quiver is not of finite type")]
    NotFiniteType { cap: usize },
    #[error("{0} is not a root of this quiver")]
    UnknownRoot(DimVector),
    #[error("{0} appears twice in the sequence")]
    Duplicate(DimVector),
    #[error("vector {0} has the wrong length")]
    WrongLength(DimVector),
    #[error("{0} is not a positive vector")]
    NotPositive(DimVector),
}

/// Index of a root inside its [`RootTable`]; equals its position in canonical order.
pub type RootId = usize;

#[derive(Debug, Clone)]
pub struct RootTable {
    roots: Vec<DimVector>,
    lengths: Vec<i64>,
    index: HashMap<DimVector, RootId>,
}

/// `s_i(d)_i = -d_i + sum_j d_ij d_j`, other coordinates unchanged.
pub fn simple_reflection(q: &ValuedQuiver, i: usize, d: &DimVector) -> DimVector {
    let mut out = d.clone();
    let mut v = -d.0[i];
    for (j, dij) in q.edge_values(i) {
        v += dij as i64 * d.0[j];
    }
    out.0[i] = v;
    out
}

/// Length used for the canonical order: `sum_i b_i f_i`.
pub fn root_length(q: &ValuedQuiver, d: &DimVector) -> i64 {
    d.0.iter().zip(q.f()).map(|(&b, &f)| b * f as i64).sum()
}

impl RootTable {
    /// All positive roots, found by closing the simple roots under simple reflections.
    pub fn positive_roots(q: &ValuedQuiver, cap: usize) -> Result<Self, RootError> {
        let n = q.n();
        let mut seen: HashSet<DimVector> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let e = DimVector::unit(n, i);
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(d) = queue.pop_front() {
            for i in 0..n {
                let r = simple_reflection(q, i, &d);
                if r.is_positive() && !seen.contains(&r) {
                    if seen.len() >= cap {
                        return Err(RootError::NotFiniteType { cap });
                    }
                    seen.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        Ok(Self::from_vectors(q, seen.into_iter().collect()))
    }

    /// A table over user-supplied roots (for instance real Schur roots of a wild quiver).
    pub fn explicit(q: &ValuedQuiver, vectors: Vec<DimVector>) -> Result<Self, RootError> {
        let mut seen = HashSet::new();
        for v in &vectors {
            if v.len() != q.n() {
                return Err(RootError::WrongLength(v.clone()));
            }
            if !v.is_positive() {
                return Err(RootError::NotPositive(v.clone()));
            }
            if !seen.insert(v.clone()) {
                return Err(RootError::Duplicate(v.clone()));
            }
        }
        Ok(Self::from_vectors(q, vectors))
    }

    fn from_vectors(q: &ValuedQuiver, mut roots: Vec<DimVector>) -> Self {
        // by length, then lexicographically with earlier vertices first
        roots.sort_by(|a, b| {
            root_length(q, a)
                .cmp(&root_length(q, b))
                .then_with(|| b.cmp(a))
        });
        let lengths = roots.iter().map(|d| root_length(q, d)).collect();
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        RootTable {
            roots,
            lengths,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn dim(&self, id: RootId) -> &DimVector {
        &self.roots[id]
    }

    pub fn length(&self, id: RootId) -> i64 {
        self.lengths[id]
    }

    pub fn id_of(&self, d: &DimVector) -> Option<RootId> {
        self.index.get(d).copied()
    }

    pub fn ids(&self) -> std::ops::Range<RootId> {
        0..self.roots.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RootId, &DimVector)> {
        self.roots.iter().enumerate()
    }

    pub fn is_simple(&self, id: RootId) -> bool {
        let d = &self.roots[id];
        d.0.iter().sum::<i64>() == 1
    }

    pub fn parse_root_sequence(&self, spec: &[DimVector]) -> Result<Vec<RootId>, RootError> {
        let mut out = Vec::with_capacity(spec.len());
        let mut seen = HashSet::new();
        for d in spec {
            let id = self
                .id_of(d)
                .ok_or_else(|| RootError::UnknownRoot(d.clone()))?;
            if !seen.insert(id) {
                return Err(RootError::Duplicate(d.clone()));
            }
            out.push(id);
        }
        Ok(out)
    }
}
