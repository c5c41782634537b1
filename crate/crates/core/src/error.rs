use thiserror::Error;

use crate::rim::BaseViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Ξ is not an involution: ‖Ξ² − 𝟙‖ = {0:e}")]
    DegenerateXi(f64),

    #[error("the vector current vanishes (J = 0)")]
    NullCurrent,

    #[error("spinor norm is below the classification threshold")]
    AmbiguousScale,

    #[error("bilinears built with the mass-dimension-one dual cannot be Lounesto-classified")]
    NonDiracDual,

    #[error("both decomposition coefficients vanish")]
    ZeroDecomposition,

    #[error("invalid RIM base: {0:?}")]
    InvalidBase(Vec<BaseViolation>),

    #[error("integrability requires Re(a) = Re(b), got {re_a} and {re_b}")]
    IntegrabilityViolation { re_a: f64, re_b: f64 },

    #[error("Im(b) must be non-zero")]
    DegenerateB,

    #[error("Re(a) must be non-zero")]
    DegenerateRealPart,

    #[error("coefficient `{0}` vanishes")]
    ZeroCoefficient(&'static str),

    #[error("operator has a vanishing block coefficient")]
    NonInvertible,

    #[error("spinor does not lie in the plane of the base (block residual {0:e})")]
    NotInPlane(f64),

    #[error("base block {0} vanishes")]
    DegenerateBasis(u8),

    #[error("homotopy parameter t = {0} makes the induced basis singular")]
    DegenerateParameter(f64),

    #[error("coordinates are expressed in different bases")]
    BasisMismatch,

    #[error("invalid momentum: {0}")]
    InvalidMomentum(String),

    #[error("non-finite spinor component")]
    NonFinite,
}
