//! Amalgam-space norms and Fourier-type transforms of piecewise-linear
//! functions on the half-line.
//!
//! Functions are compactly supported piecewise-linear models, so integrals of
//! `|g|` over blocks, Fourier integrals and Cauchy principal values are
//! evaluated in closed form piece by piece. Quadrature is reserved for outer
//! integrals of absolute values of transforms.

pub mod amalgam;
pub mod asymptotics;
pub mod error;
pub mod model;
pub mod quad;
pub mod series;
pub mod sum;
pub mod transforms;

pub use amalgam::{
    function_amalgam_norm, sequence_amalgam_norm, wiener_amalgam_norm, CoefficientSequence, NormReport,
};
pub use error::{Error, Result};
pub use model::{FunctionModel, Piecewise, PiecewiseConstant, Segment};
pub use series::{Generator, SequenceSpec, SeriesKind};
pub use transforms::TransformKind;
