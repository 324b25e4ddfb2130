//! Word metrics on free groups and free products of cyclic groups, together
//! with the operator-valued block matrices `M_{i,j}(f)` used to bound the norm
//! of `(λ ⊗ 1)(f)` for `f` supported on a single sphere.
//!
//! The crate is organised in four layers:
//!
//! - [`group`]: normal forms, word length, sphere and ball enumeration,
//!   geodesic splits, decomposition multiplicities and four-point
//!   hyperbolicity estimates.
//! - [`spectral`]: sparse complex matrices, operator and Hilbert–Schmidt
//!   norms.
//! - [`haagerup`]: sphere-supported operator-valued functions, the block
//!   operators built from them, every right-hand-side bound, the proof-trace
//!   checker and the matrix-unit counterexample.
//! - [`verify`]: seeded verification campaigns and their JSON-lines reports,
//!   which back the `hypnorm` binary.
//!
//! ```
//! use hypnorm::group::GroupModel;
//!
//! let g: GroupModel = "free:2".parse().unwrap();
//! assert_eq!(g.enumerate_sphere(3).unwrap().len(), 36);
//! ```

pub mod error;
pub mod group;
pub mod haagerup;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupModel, HyperbolicityEstimate, SphereIndex};
pub use haagerup::{BlockKind, BlockOperator, SphereFunction, TruncatedOperator};
pub use spectral::{ComplexMatrix, NormMethod, NormOptions, NormResult};

/// Crate version, stamped into every verification report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
