//! Quadratic fields: elements, ideals, splitting and class groups.

pub mod classgroup;
pub mod ideal;
pub mod minkowski;
pub mod principal;
pub mod ring;
pub mod split;

pub use classgroup::{class_group, ClassGroupReport};
pub use ideal::{IdealJson, QuadIdeal};
pub use minkowski::{minkowski_bound, MinkowskiBound};
pub use principal::is_principal;
pub use ring::{OmegaKind, QuadInt, QuadIntJson, QuadraticField};
pub use split::{factor_ideal, split_prime, SplitKind, SplittingReport};
