//! Discrete rotations about the z axis.
//!
//! `Δ` cyclically shifts N equally spaced angular states; its hermitian
//! generator `A` (with `Δ = e^{iA}`) equals `i(2π/N) D_φ` on the equidistant
//! nodes, so `L_z = −i D_φ` and `Δ = exp(−iεL_z)` with `ε = 2π/N`.
//! Odd N gives a representation of the cyclic group of order N, even N a
//! two-valued (spin) one of order 2N.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::diffmat::{trig_diff_matrix, OperatorMatrix};
use crate::eigensolve::matrix_exponential;
use crate::error::{Error, Result};
use crate::matrix::{vec_norm, Matrix};
use crate::nodes::{equidistant_nodes, NodeSet};
use crate::scalar::{imag_unit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationGenerator<T: Real> {
    pub delta: OperatorMatrix<Complex<T>>,
    pub a_matrix: OperatorMatrix<Complex<T>>,
    pub lz: OperatorMatrix<Complex<T>>,
    pub n: usize,
    pub parity: Parity,
    pub epsilon: T,
}

/// `Δ` for arbitrary phases: `Δ_{1,N} = e^{iγ_1}`, `Δ_{j,j−1} = e^{iγ_j}`.
pub fn delta_with_phases<T: Real>(phases: &[T]) -> Matrix<Complex<T>> {
    let n = phases.len();
    let mut d = Matrix::zeros(n, n);
    for (j, &g) in phases.iter().enumerate() {
        let col = if j == 0 { n - 1 } else { j - 1 };
        d[(j, col)] = Complex::from_polar(T::one(), g);
    }
    d
}

/// The canonical `Δ`: basic circulant permutation, with the corner entry
/// negated for even N.
pub fn canonical_delta<T: Real>(n: usize) -> Matrix<Complex<T>> {
    let mut d = Matrix::zeros(n, n);
    for j in 1..n {
        d[(j, j - 1)] = Complex::one();
    }
    if n > 0 {
        d[(0, n - 1)] = if n % 2 == 1 {
            Complex::one()
        } else {
            -Complex::<T>::one()
        };
    }
    d
}

/// `A_jk = i(−1)^{j+k}(π/N)/sin(π(j−k)/N)`, zero diagonal.
pub fn generator_closed_form<T: Real>(n: usize) -> Matrix<Complex<T>> {
    let pi_n = T::PI() / T::from_usize(n);
    Matrix::from_fn(n, n, |j, k| {
        if j == k {
            return Complex::zero();
        }
        let sign = if (j + k) % 2 == 0 { T::one() } else { -T::one() };
        let diff = T::from_usize(j) - T::from_usize(k);
        Complex::new(T::zero(), sign * pi_n / (pi_n * diff).sin())
    })
}

/// The ladder `I_N`: −n..n for N = 2n+1, ±1/2..±(2n−1)/2 for N = 2n, ascending.
pub fn ladder<T: Real>(n: usize) -> Vec<T> {
    let half = T::lit(0.5);
    let top = T::from_usize(n - 1) * half;
    (0..n).map(|k| T::from_usize(k) - top).collect()
}

pub fn build_rotation_generator<T: Real>(n: usize) -> Result<RotationGenerator<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "rotation generator needs at least 2 states".into(),
        ));
    }
    let nodes = equidistant_nodes::<T>(n)?;
    let d_phi = trig_diff_matrix(&nodes)?;
    let exactness = d_phi.exactness();
    let i = imag_unit::<T>();
    let lz = d_phi.map_entries(|v| -i * v);
    let delta = OperatorMatrix::new(canonical_delta(n), nodes.clone(), exactness, None)?;
    let a_matrix = OperatorMatrix::new(generator_closed_form(n), nodes, exactness, None)?;
    Ok(RotationGenerator {
        delta,
        a_matrix,
        lz,
        n,
        parity: Parity::of(n),
        epsilon: (T::PI() + T::PI()) / T::from_usize(n),
    })
}

/// Analytic eigenpairs of `L_z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LzEigensystem<T: Real> {
    /// The ladder `I_N`, ascending.
    pub eigenvalues: Vec<T>,
    /// Column `k` is `e^{i m_k φ_j}/√N`, with `φ_j = −π + jε`.
    pub eigenvectors: Matrix<Complex<T>>,
    pub phi_nodes: NodeSet<T>,
}

impl<T: Real> LzEigensystem<T> {
    /// `‖L_z v_k − m_k v_k‖` for every pair.
    pub fn residuals(&self, lz: &Matrix<Complex<T>>) -> Vec<T> {
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &m)| {
                let v = self.eigenvectors.column(k);
                let lv = lz.mul_vec(&v);
                let r: Vec<Complex<T>> = lv.iter().zip(&v).map(|(&a, &b)| a - b * m).collect();
                vec_norm(&r)
            })
            .collect()
    }
}

pub fn lz_eigensystem<T: Real>(n: usize) -> Result<LzEigensystem<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "L_z eigensystem needs at least 2 states".into(),
        ));
    }
    let phi_nodes = equidistant_nodes::<T>(n)?;
    let eigenvalues = ladder::<T>(n);
    let norm = T::from_usize(n).sqrt().recip();
    let phi = phi_nodes.points();
    let eigenvectors = Matrix::from_fn(n, n, |j, k| Complex::from_polar(norm, eigenvalues[k] * phi[j]));
    Ok(LzEigensystem {
        eigenvalues,
        eigenvectors,
        phi_nodes,
    })
}

/// `‖exp(−iεL_z) − Δ‖_max`.
pub fn verify_exponential_relation<T: Real>(gen: &RotationGenerator<T>) -> Result<T> {
    let arg = Complex::new(T::zero(), -gen.epsilon);
    let exp = matrix_exponential(&gen.lz.entries().scale(arg))?;
    Ok(exp.max_abs_diff(gen.delta.entries()))
}
