//! Picture groups of admissible root sets, stability walls and maximal green sequences
//! for valued acyclic quivers of finite representation type.

// dense linear algebra reads best with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod context;
pub mod geometry;
pub mod group;
pub mod lp;
pub mod order;
pub mod picture;
pub mod quiver;
pub mod rational;
pub mod repr;
pub mod roots;
pub mod wide;
