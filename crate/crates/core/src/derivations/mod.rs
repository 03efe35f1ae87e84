//! Derivation modules of affine algebras, their brackets, fibers and
//! transport along ring maps.

mod base_change;
mod derivation;
mod family;
mod ringmap;
mod solver;
mod vanishing;

pub use base_change::{base_change_check, base_change_with, evaluate_poly, fiber_ring, BaseChangeReport};
pub use derivation::{bracket, CoordinateIndex, Derivation};
pub use family::{product_type_check, DeformationFamily, Presentation, ProductTypeVerdict};
pub use ringmap::{pushforward, RingMap};
pub use solver::{derivation_basis, rank_one_freeness, DerivationBasis, FreenessReport};
pub use vanishing::{check_curve_point, jacobian_rank, vanishing_subalgebra, VanishingSubalgebra};
