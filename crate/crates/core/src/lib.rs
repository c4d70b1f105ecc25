//! Collocation differentiation matrices, discrete rotation generators and
//! angular-momentum operators on (θ, φ) grids.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below fix the scalar to `f64`.

pub mod cli;
pub mod diffmat;
pub mod eigensolve;
pub mod error;
pub mod harmonics;
pub mod json;
pub mod lsquared;
pub mod matrix;
pub mod nodes;
pub mod rotations;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use diffmat::{DiagonalSimilarity, Exactness, OperatorMatrix};
pub use eigensolve::EigenDecomposition;
pub use error::{Error, Result};
pub use lsquared::{Cluster, L2Variant, LSquaredOperator, LabeledSpectrum, ThetaBlock};
pub use matrix::Matrix;
pub use nodes::{NodeKind, NodeSet};
pub use rotations::{LzEigensystem, Parity, RotationGenerator};
pub use scalar::{Real, Scalar};
pub use tensor::{KronOperator, TensorGrid};

pub type Complex = num_complex::Complex<f64>;
pub type RealMatrix = Matrix<f64>;
pub type ComplexMatrix = Matrix<Complex>;
pub type Nodes = NodeSet<f64>;
pub type Grid = TensorGrid<f64>;
pub type RealOperator = OperatorMatrix<f64>;
pub type ComplexOperator = OperatorMatrix<Complex>;
pub type RealKronOperator = KronOperator<f64>;
pub type Similarity = DiagonalSimilarity<f64>;
pub type Rotation = RotationGenerator<f64>;
pub type LzSystem = LzEigensystem<f64>;
pub type LSquared = LSquaredOperator<f64>;
pub type Spectrum = LabeledSpectrum<f64>;
pub type Block = ThetaBlock<f64>;
pub type HarmonicSample = harmonics::HarmonicSample<f64>;
