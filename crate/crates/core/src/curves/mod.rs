//! The curve zoo: Weierstrass families, singular cubics, punctured lines,
//! normalization maps and meromorphic vector fields on punctured spheres.
mod meromorphic;
mod normalize;
mod weierstrass;
mod zoo;

pub use meromorphic::{meromorphic_h2, meromorphic_window, MeromorphicH2, DEFAULT_TRUNCATIONS};
pub use normalize::{
    check_parametrization, cusp_gap, nodal_candidate, nodal_parametrization, normalize_cuspidal, normalize_nodal,
    CuspGap, CuspNormalization, NodalNormalization,
};
pub use weierstrass::{discriminant, parse_unipoly, WeierstrassFamily};
pub use zoo::{
    cusp_monomial_ring, cusp_ring, cusp_ring_with, genus, laurent_ring, line_ring, localize, nodal_ring,
    punctured_p1_ring, smoothness_check, MarkedAffineRing,
};
