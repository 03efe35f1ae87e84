//! Lie algebras by structure constants and their Chevalley–Eilenberg cohomology.
mod bridge;
mod cohomology;
mod graded;
mod homology;
mod table;

pub use bridge::{from_derivations, from_fields, DerivedAlgebra, Grading};
pub use cohomology::{
    ce_h1_trivial, ce_h2, cohomology_base_change_check, is_coboundary, verify_cocycle, witt_closed_window,
    witt_h2_stabilized, Coefficients, Cochain2, CochainComplex, CohomologyBaseChange, CohomologyReport,
    FiberCohomology, StabilizedH2,
};
pub use graded::{is_lie_isomorphism, jacobi_check, witt_range, witt_window, GradedLieAlgebra, JacobiReport};
pub use homology::{stabilized_h2, windowed_h2, FilteredLieAlgebra, StabilizedHomology, WindowedH2};
pub use table::{Combination, StructureConstants};
