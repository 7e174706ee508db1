//! Exact computation of the integral cohomology of the minimal nilpotent
//! orbit of a simple complex Lie algebra.
//!
//! The pipeline is purely combinatorial:
//!
//! 1. [`rootsys`] builds the root system from a Cartan datum and exposes
//!    heights, dual heights and levels of long roots.
//! 2. [`orbitposet`] buckets the long roots by level and records the
//!    multiplicity-labelled covers between consecutive levels, giving the
//!    differential matrices `D_i`.
//! 3. [`zlinalg`] computes Smith normal forms, kernels and cokernels over ℤ.
//! 4. [`gysin`] assembles the graded cohomology from the `D_i`.
//!
//! [`weyl`] and [`typea`] are independent routes used to cross-check the
//! main pipeline: the first recomputes the covers on the Weyl-group side
//! through minimal coset representatives, the second recomputes type `A`
//! cohomology from a resolution by a vector bundle over projective space.

pub mod error;
pub mod golden;
pub mod gysin;
pub mod orbitposet;
pub mod rootsys;
pub mod typea;
pub mod weyl;
pub mod zlinalg;

pub use error::{Error, Result};
pub use gysin::{CharacterWeight, GradedCohomology};
pub use orbitposet::{CoverEdge, DiffMatrix, LevelDiagram};
pub use rootsys::{CartanDatum, Family, RankLimits, Root, RootSystem};
pub use weyl::{CosetFamily, WeylElement};
pub use zlinalg::{FGAbelianGroup, IntMatrix, SmithForm};
