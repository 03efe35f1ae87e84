use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different rings: {0}")]
    RingMismatch(String),

    #[error("resource budget of {limit} reduction steps exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("coefficient has a pole at t = {at}")]
    Pole { at: String },

    #[error("derivation is not tangent to the ideal: generator {generator} maps to {image}")]
    NotTangent { generator: usize, image: String },

    #[error("supplied inverse does not invert the ring map on variable {variable}")]
    InverseCheckFailed { variable: String },

    #[error("ring map is not well defined: generator {generator} maps to {image}")]
    IllDefinedMap { generator: usize, image: String },

    #[error("point {point} does not lie on the variety")]
    PointNotOnVariety { point: String },

    #[error("variety is singular at {point}")]
    SingularPoint { point: String },

    #[error("weight complex is not window-closed at {what}")]
    WindowClosure { what: String },

    #[error("bracket table is not antisymmetric at ({i}, {j})")]
    Antisymmetry { i: usize, j: usize },

    #[error("Jacobi identity fails on ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("grading is not additive for bracket ({i}, {j})")]
    Grading { i: usize, j: usize },

    #[error("algebra carries no weight grading")]
    Ungraded,

    #[error("branch points do not sum to zero: e1 + e2 + e3 = {sum}")]
    BranchSum { sum: String },

    #[error("puncture points must be pairwise distinct ({point} repeated)")]
    CoincidentPoints { point: String },

    #[error("inverting {function} collapses the ring")]
    DegenerateLocalization { function: String },

    #[error("parametrization rejected: substituted equation reduces to {residue}")]
    ParametrizationRejected { residue: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
