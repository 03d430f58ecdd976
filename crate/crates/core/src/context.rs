//! A quiver together with its root table and hom table: the frozen data every later stage reads.

use crate::quiver::{DimVector, ValuedQuiver};
use crate::rational::{dot, RationalVector, Q};
use crate::repr::{HomTable, ReprError};
use crate::roots::{RootError, RootId, RootTable, DEFAULT_ROOT_CAP};
use thiserror::Error;

pub const DEFAULT_SEED: u64 = 0x005e_ed0f_9c7a;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Repr(#[from] ReprError),
}

#[derive(Debug, Clone)]
pub struct RootContext {
    pub quiver: ValuedQuiver,
    pub roots: RootTable,
    pub homs: HomTable,
    normals: Vec<RationalVector>,
}

impl RootContext {
    /// Enumerates all positive roots and builds their hom table.
    pub fn build(quiver: &ValuedQuiver, seed: u64) -> Result<Self, ContextError> {
        let roots = RootTable::positive_roots(quiver, DEFAULT_ROOT_CAP)?;
        Self::with_roots(quiver, roots, seed)
    }

    /// Uses a supplied root table, each of whose roots must admit an exceptional witness.
    pub fn with_roots(
        quiver: &ValuedQuiver,
        roots: RootTable,
        seed: u64,
    ) -> Result<Self, ContextError> {
        let homs = HomTable::build(quiver, &roots, seed)?;
        let normals = roots
            .iter()
            .map(|(_, d)| quiver.pairing_normal(d))
            .collect();
        Ok(RootContext {
            quiver: quiver.clone(),
            roots,
            homs,
            normals,
        })
    }

    pub fn dim(&self, id: RootId) -> &DimVector {
        self.roots.dim(id)
    }

    /// Normal vector `n` with `<x, beta> = n . x`.
    pub fn normal(&self, id: RootId) -> &RationalVector {
        &self.normals[id]
    }

    pub fn pairing(&self, x: &[Q], id: RootId) -> Q {
        dot(&self.normals[id], x)
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn is_simple(&self, id: RootId) -> bool {
        self.roots.is_simple(id)
    }

    pub fn id(&self, v: &[i64]) -> Option<RootId> {
        self.roots.id_of(&DimVector(v.to_vec()))
    }

    pub fn label(&self, id: RootId) -> String {
        self.roots.dim(id).to_string()
    }
}
