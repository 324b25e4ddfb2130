//! Normal forms and the word metric.

mod element;
mod hyperbolic;
mod model;
mod sphere;
mod split;

pub use element::{GroupElement, Letter, Syllable};
pub use hyperbolic::{four_point_excess, HyperbolicityEstimate};
pub use model::{GroupKind, GroupModel, DEFAULT_ENUMERATION_CAP};
pub use sphere::{BallIndex, SphereIndex};
