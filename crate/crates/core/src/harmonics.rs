//! Associated Legendre functions and spherical harmonics sampled on a
//! (θ, φ) grid. Used as an independent oracle for L² eigenvectors; every
//! comparison goes through [`subspace_residual`], so normalization and
//! phase conventions never matter.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{inner, vec_norm, Matrix};
use crate::scalar::Real;
use crate::tensor::TensorGrid;

/// `P^m_n(x)` with the Condon–Shortley phase, by upward recurrence in `n`
/// starting from `P^m_m`.
pub fn assoc_legendre<T: Real>(n: usize, m: usize, x: T) -> Result<T> {
    if m > n {
        return Err(Error::InvalidArgument(format!("order {m} exceeds degree {n}")));
    }
    if !(x.abs() <= T::one()) {
        return Err(Error::InvalidArgument(format!("argument {x} outside [-1, 1]")));
    }
    let s = ((T::one() - x) * (T::one() + x)).sqrt();
    let mut pmm = T::one();
    for k in 0..m {
        pmm = -pmm * T::from_usize(2 * k + 1) * s;
    }
    if n == m {
        return Ok(pmm);
    }
    let mut prev = pmm;
    let mut cur = x * T::from_usize(2 * m + 1) * pmm;
    for l in m + 2..=n {
        let next = (T::from_usize(2 * l - 1) * x * cur - T::from_usize(l + m - 1) * prev)
            / T::from_usize(l - m);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicSample<T> {
    pub n: usize,
    pub m: i64,
    /// Raveled with θ fastest.
    pub values: Vec<Complex<T>>,
    /// Set when every θ-node sits on a zero of `P^{|m|}_n(cos θ)`.
    pub degenerate: bool,
}

/// Samples `P^{|m|}_n(cos θ_j) e^{imφ_k}` on a two-axis grid (θ first, φ second).
pub fn harmonic_on_grid<T: Real>(n: usize, m: i64, grid: &TensorGrid<T>) -> Result<HarmonicSample<T>> {
    if m.unsigned_abs() as usize > n {
        return Err(Error::InvalidArgument(format!("|m| = {} exceeds n = {n}", m.abs())));
    }
    let axes = grid.axes();
    if axes.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: axes.len(),
        });
    }
    let theta = axes[0].points();
    if let Some(t) = theta.iter().find(|&&t| !(t > T::zero() && t < T::PI())) {
        return Err(Error::InvalidArgument(format!("θ node {t} outside (0, π)")));
    }
    let legendre = theta
        .iter()
        .map(|&t| assoc_legendre(n, m.unsigned_abs() as usize, t.cos()))
        .collect::<Result<Vec<T>>>()?;
    let mf = T::lit(m as f64);
    let mut values = Vec::with_capacity(grid.total());
    for &phi in axes[1].points() {
        let phase = Complex::from_polar(T::one(), mf * phi);
        values.extend(legendre.iter().map(|&p| phase * p));
    }
    let tiny = T::epsilon() * T::lit(1e4) * T::from_usize(values.len()).sqrt();
    let degenerate = vec_norm(&values) <= tiny;
    Ok(HarmonicSample {
        n,
        m,
        values,
        degenerate,
    })
}

/// Orthonormal basis of the column span (modified Gram–Schmidt, applied twice).
/// Columns that are numerically dependent on earlier ones are dropped.
pub fn orthonormal_basis<T: Real>(columns: &Matrix<Complex<T>>) -> Vec<Vec<Complex<T>>> {
    let mut basis: Vec<Vec<Complex<T>>> = Vec::new();
    for j in 0..columns.ncols() {
        let mut v = columns.column(j);
        let before = vec_norm(&v);
        if before == T::zero() {
            continue;
        }
        project_out(&basis, &mut v);
        project_out(&basis, &mut v);
        let after = vec_norm(&v);
        if after <= before * T::epsilon() * T::lit(1e3) {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= after);
        basis.push(v);
    }
    basis
}

fn project_out<T: Real>(basis: &[Vec<Complex<T>>], v: &mut [Complex<T>]) {
    for q in basis {
        let c = inner(q, v);
        for (x, qi) in v.iter_mut().zip(q) {
            *x -= *qi * c;
        }
    }
}

/// Largest relative norm of a sample's component outside the span of
/// `eigvectors` (columns). 0 means every sample lies in the eigenspace.
pub fn subspace_residual<T: Real>(eigvectors: &Matrix<Complex<T>>, samples: &[HarmonicSample<T>]) -> Result<T> {
    let basis = orthonormal_basis(eigvectors);
    let mut worst = T::zero();
    for s in samples {
        if s.values.len() != eigvectors.nrows() {
            return Err(Error::DimensionMismatch {
                expected: eigvectors.nrows(),
                found: s.values.len(),
            });
        }
        let norm = vec_norm(&s.values);
        if s.degenerate || norm == T::zero() {
            return Err(Error::DegenerateSample(format!(
                "harmonic (n={}, m={}) vanishes on the grid; choose different θ-nodes",
                s.n, s.m
            )));
        }
        let mut v = s.values.clone();
        project_out(&basis, &mut v);
        project_out(&basis, &mut v);
        worst = worst.max(vec_norm(&v) / norm);
    }
    Ok(worst)
}
