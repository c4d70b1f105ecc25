//! Collocation matrices for the square of the angular momentum on a (θ, φ)
//! grid, their per-azimuth block split, and labelled spectra.
//!
//! The stored matrix is `L²` itself (the negated Laplacian), so its exact
//! eigenvalues are `n(n+1) ≥ 0`. Samples are raveled with θ fastest.
//!
//! Since `D_φ` is diagonalized by `e^{imφ}` for every `m` in the ladder of
//! the φ grid, `L²` splits into one N×N block per `m`:
//!
//! ```text
//! B_m = −(Θ-part) + m² sin⁻²Θ,     eigenvector e^{imφ} ⊗ u.
//! ```

use num_complex::Complex;
use rayon::prelude::*;

use crate::diffmat::{parity_diff_matrix, trig_core_matrix, trig_diff_matrix, trig_similarity, DiagonalSimilarity};
use crate::eigensolve::{hessenberg_qr, inverse_iteration, jacobi_symmetric};
use crate::error::{Error, Result};
use crate::harmonics::{harmonic_on_grid, subspace_residual};
use crate::matrix::Matrix;
use crate::nodes::{equidistant_nodes, theta_residual, NodeSet};
use crate::rotations::ladder;
use crate::scalar::Real;
use crate::tensor::{diag_coeff, lift_matrix, KronOperator, TensorGrid};

/// θ-nodes whose node-condition residual stays below this admit the
/// symmetric form of every block.
pub const SYMMETRIZATION_TOLERANCE: f64 = 1e-10;
/// Default relative tolerance for matching a cluster to `n(n+1)`.
pub const DEFAULT_LABEL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum L2Variant {
    /// Half-angle trigonometric `D_θ` with a `cot Θ` first-order term.
    Standard,
    /// Full-angle parity matrix with the rank-one correction.
    Parity,
}

impl L2Variant {
    /// External name, as accepted by the CLI.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Standard => "eq30",
            Self::Parity => "eq35",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "eq30" | "standard" => Some(Self::Standard),
            "eq35" | "parity" => Some(Self::Parity),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LSquaredOperator<T: Real> {
    pub matrix: KronOperator<T>,
    pub variant: L2Variant,
    pub theta_nodes: NodeSet<T>,
    pub phi_nodes: NodeSet<T>,
    /// Number of lowest eigenvalues reproduced exactly.
    pub exact_count: usize,
    pub m_phi: usize,
    /// Largest `n` whose `n(n+1)` may be labelled.
    pub n_max: usize,
    /// Non-fatal remarks about the inputs.
    pub warnings: Vec<String>,
    theta_part: Matrix<T>,
    inv_sin2: Vec<T>,
    symmetric: Option<(Matrix<T>, DiagonalSimilarity<T>)>,
}

impl<T: Real> LSquaredOperator<T> {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn grid(&self) -> &TensorGrid<T> {
        self.matrix.grid()
    }

    /// Whether the blocks admit the symmetric positive semidefinite form.
    pub fn symmetrizable(&self) -> bool {
        self.symmetric.is_some()
    }

    /// Azimuthal numbers of the blocks, ascending.
    pub fn azimuthal_numbers(&self) -> Vec<i64> {
        ladder::<f64>(self.m_phi).iter().map(|&m| m as i64).collect()
    }

    pub fn block(&self, m: i64) -> ThetaBlock<T> {
        let m2 = T::lit((m * m) as f64);
        let n = self.theta_part.nrows();
        let plain = Matrix::from_fn(n, n, |i, j| {
            let c = if i == j { m2 * self.inv_sin2[i] } else { T::zero() };
            c - self.theta_part[(i, j)]
        });
        let (symmetrized, similarity) = match &self.symmetric {
            Some((gram, sim)) => (
                Some(Matrix::from_fn(n, n, |i, j| {
                    gram[(i, j)] + if i == j { m2 * self.inv_sin2[i] } else { T::zero() }
                })),
                Some(sim.clone()),
            ),
            None => (None, None),
        };
        ThetaBlock {
            m,
            plain,
            symmetrized,
            similarity,
        }
    }

    pub fn blocks(&self) -> Vec<ThetaBlock<T>> {
        self.azimuthal_numbers().into_iter().map(|m| self.block(m)).collect()
    }
}

/// One azimuthal block of `L²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaBlock<T: Real> {
    pub m: i64,
    pub plain: Matrix<T>,
    /// `D̃ᵗD̃ + m² sin⁻²Θ`, similar to `plain` through `similarity`.
    pub symmetrized: Option<Matrix<T>>,
    pub similarity: Option<DiagonalSimilarity<T>>,
}

fn check_inputs<T: Real>(theta: &NodeSet<T>, m_phi: usize) -> Result<()> {
    let n = theta.count();
    if n.is_multiple_of(2) || m_phi.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "N = {n} and M = {m_phi} must both be odd: even sizes select the spin representations, which L² excludes"
        )));
    }
    for (j, &t) in theta.points().iter().enumerate() {
        if !(t > T::zero() && t < T::PI()) || t.sin().abs() < T::lit(1e-10) {
            return Err(Error::NonFinite {
                index: j,
                what: format!("cot θ and sin⁻²θ are singular at θ = {t}"),
            });
        }
    }
    Ok(())
}

fn m_warning(n: usize, m_phi: usize) -> Vec<String> {
    if m_phi < n {
        vec![format!(
            "M = {m_phi} < N = {n}: exactness is guaranteed only provided M ≥ N"
        )]
    } else {
        Vec::new()
    }
}

fn capped_count(n_max: usize, m_phi: usize) -> usize {
    let half = (m_phi - 1) / 2;
    (0..=n_max).map(|n| 2 * n.min(half) + 1).sum()
}

fn assemble<T: Real>(
    theta: NodeSet<T>,
    m_phi: usize,
    variant: L2Variant,
    theta_part: Matrix<T>,
    theta_label: &str,
    symmetric: Option<(Matrix<T>, DiagonalSimilarity<T>)>,
    n_max: usize,
    warnings: Vec<String>,
) -> Result<LSquaredOperator<T>> {
    let phi = equidistant_nodes::<T>(m_phi)?;
    let grid = TensorGrid::new(vec![theta.clone(), phi.clone()])?;
    let d_phi = trig_diff_matrix(&phi)?;
    let inv_sin2: Vec<T> = theta.points().iter().map(|t| t.sin().powi(-2)).collect();

    let part = lift_matrix(&theta_part, 0, &grid, theta_label)?;
    let azimuthal = lift_matrix(&d_phi.entries().pow(2), 1, &grid, "trigonometric(2nd power)")?;
    let coeff = diag_coeff(|p| p[0].sin().powi(-2), &grid)?;
    let neg = part.sum(&azimuthal.compose(&coeff)?)?;
    let l2 = KronOperator::new(neg.entries().scale(-T::one()), grid, neg.factors().to_vec())?;

    Ok(LSquaredOperator {
        matrix: l2,
        variant,
        exact_count: capped_count(n_max, m_phi),
        m_phi,
        n_max,
        warnings,
        theta_nodes: theta,
        phi_nodes: phi,
        theta_part,
        inv_sin2,
        symmetric,
    })
}

/// `L²` from the trigonometric `D_θ`:
/// `−L² = 1_M ⊗ [D_θ² + cot Θ D_θ] + D_φ² ⊗ sin⁻²Θ`.
///
/// Exact on the lowest `((N+1)/2)²` eigenvalues when `M ≥ N`.
pub fn assemble_l2<T: Real>(theta: &NodeSet<T>, m_phi: usize) -> Result<LSquaredOperator<T>> {
    check_inputs(theta, m_phi)?;
    let n = theta.count();
    let x = theta.points();
    let d = trig_diff_matrix(theta)?;
    let dt = d.entries();
    let cot: Vec<T> = x.iter().map(|t| t.tan().recip()).collect();
    let part = Matrix::from_fn(n, n, |i, j| cot[i] * dt[(i, j)]).add(&dt.pow(2));

    let symmetric = match theta_residual(theta) {
        Ok(r) if r.max_abs <= T::lit(SYMMETRIZATION_TOLERANCE) => {
            let core = trig_core_matrix(x);
            Some((core.transpose().matmul(&core), trig_similarity(x)))
        }
        _ => None,
    };
    assemble(
        theta.clone(),
        m_phi,
        L2Variant::Standard,
        part,
        "trigonometric(2nd power) + cot·trigonometric",
        symmetric,
        (n - 1) / 2,
        m_warning(n, m_phi),
    )
}

/// `L²` from the parity matrix `𝒟`:
/// `−L² = 1_M ⊗ [𝒟² + cot Θ 𝒟 − N S O S⁻¹] + D_φ² ⊗ sin⁻²Θ`,
/// with `O` the all-ones matrix and `S` the parity similarity.
pub fn assemble_l2_parity<T: Real>(theta: &NodeSet<T>, m_phi: usize) -> Result<LSquaredOperator<T>> {
    check_inputs(theta, m_phi)?;
    let n = theta.count();
    let d = parity_diff_matrix(theta)?;
    let dp = d.entries();
    let sim = d.similarity().expect("parity matrix carries its similarity");
    let cot: Vec<T> = theta.points().iter().map(|t| t.tan().recip()).collect();
    let nn = T::from_usize(n);
    let part = Matrix::from_fn(n, n, |i, j| cot[i] * dp[(i, j)] - nn * sim.ratio(i, j)).add(&dp.pow(2));
    let mut warnings = Vec::new();
    if m_phi < 2 * n + 1 {
        warnings.push(format!(
            "M = {m_phi} < 2N+1 = {}: the exact count is reduced",
            2 * n + 1
        ));
    }
    assemble(
        theta.clone(),
        m_phi,
        L2Variant::Parity,
        part,
        "parity(2nd power) + cot·parity - N·rank-one",
        None,
        n,
        warnings,
    )
}

/// The block for azimuthal number `m` of the standard assembly.
pub fn theta_block<T: Real>(theta: &NodeSet<T>, m: i64) -> Result<ThetaBlock<T>> {
    let m_phi = 2 * m.unsigned_abs() as usize + 1;
    Ok(assemble_l2(theta, m_phi)?.block(m))
}

/// Eigenpair of one block, lifted to the full grid.
#[derive(Clone, Debug)]
struct BlockPair<T: Real> {
    value: Complex<T>,
    m: i64,
    vector: Vec<Complex<T>>,
}

fn solve_block<T: Real>(op: &LSquaredOperator<T>, m: i64) -> Result<(Vec<BlockPair<T>>, usize)> {
    let block = op.block(m);
    let n = block.plain.nrows();
    let mut local: Vec<(Complex<T>, Vec<Complex<T>>)> = Vec::with_capacity(n);
    let iterations;
    match (&block.symmetrized, &block.similarity) {
        (Some(sym), Some(sim)) => {
            let eig = jacobi_symmetric(sym)?;
            iterations = eig.iterations;
            let vectors = eig.vectors.expect("symmetric solve returns vectors");
            let q = sim.normalized_values();
            for (k, &value) in eig.values.iter().enumerate() {
                let u = (0..n).map(|i| Complex::new(q[i] * vectors[(i, k)], T::zero())).collect();
                local.push((value, u));
            }
        }
        _ => {
            let a = block.plain.to_complex();
            let eig = hessenberg_qr(&a)?;
            iterations = eig.iterations;
            for &value in &eig.values {
                local.push((value, inverse_iteration(&a, value)?));
            }
        }
    }
    let phi = op.phi_nodes.points();
    let mf = T::lit(m as f64);
    let pairs = local
        .into_iter()
        .map(|(value, u)| {
            let mut vector = Vec::with_capacity(n * phi.len());
            for &p in phi {
                let e = Complex::from_polar(T::one(), mf * p);
                vector.extend(u.iter().map(|&x| e * x));
            }
            BlockPair { value, m, vector }
        })
        .collect();
    Ok((pairs, iterations))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cluster<T> {
    pub value: T,
    pub multiplicity: usize,
    pub n_label: Option<usize>,
    /// 0-based position of the first member in the sorted spectrum.
    pub start: usize,
}

#[derive(Clone, Debug)]
pub struct LabeledSpectrum<T: Real> {
    /// Real parts, ascending.
    pub eigenvalues: Vec<T>,
    /// Azimuthal number of the block each eigenvalue came from.
    pub azimuthal: Vec<i64>,
    pub clusters: Vec<Cluster<T>>,
    /// Columns span each cluster's eigenspace.
    pub eigenvectors: Vec<Matrix<Complex<T>>>,
    /// Subspace residual against the harmonic oracle, for labelled clusters.
    pub match_report: Vec<Option<T>>,
    pub max_imag: T,
    pub exact_count: usize,
    pub iterations: usize,
}

impl<T: Real> LabeledSpectrum<T> {
    /// Cluster index of each eigenvalue.
    pub fn cluster_of(&self) -> Vec<usize> {
        self.clusters
            .iter()
            .enumerate()
            .flat_map(|(c, cl)| std::iter::repeat_n(c, cl.multiplicity))
            .collect()
    }
}

/// Solves every block (in parallel, merged in block order), clusters the
/// merged spectrum and labels clusters matching `n(n+1)` within `tolerance`
/// (relative to `max(1, n(n+1))`).
pub fn labeled_spectrum<T: Real>(op: &LSquaredOperator<T>, tolerance: T) -> Result<LabeledSpectrum<T>> {
    let solved: Vec<(Vec<BlockPair<T>>, usize)> = op
        .azimuthal_numbers()
        .into_par_iter()
        .map(|m| solve_block(op, m))
        .collect::<Result<_>>()?;
    let iterations = solved.iter().map(|s| s.1).sum();
    let mut pairs: Vec<BlockPair<T>> = solved.into_iter().flat_map(|s| s.0).collect();
    pairs.sort_by(|a, b| a.value.re.partial_cmp(&b.value.re).unwrap_or(std::cmp::Ordering::Equal));

    let max_imag = pairs.iter().fold(T::zero(), |a, p| a.max(p.value.im.abs()));
    let eigenvalues: Vec<T> = pairs.iter().map(|p| p.value.re).collect();
    let norm = eigenvalues.iter().fold(T::zero(), |a, v| a.max(v.abs()));
    let gap = T::lit(1e-6).max(T::lit(1e-8) * norm);

    let mut clusters: Vec<Cluster<T>> = Vec::new();
    let mut eigenvectors = Vec::new();
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && eigenvalues[end] - eigenvalues[end - 1] <= gap {
            end += 1;
        }
        let members = &eigenvalues[start..end];
        let value = members.iter().fold(T::zero(), |a, &v| a + v) / T::from_usize(members.len());
        let n_label = if start < op.exact_count {
            (0..=op.n_max).find(|&n| {
                let target = T::from_usize(n * (n + 1));
                (value - target).abs() <= tolerance * target.max(T::one())
            })
        } else {
            None
        };
        clusters.push(Cluster {
            value,
            multiplicity: end - start,
            n_label,
            start,
        });
        let dim = op.dim();
        eigenvectors.push(Matrix::from_fn(dim, end - start, |i, k| pairs[start + k].vector[i]));
        start = end;
    }

    let half = (op.m_phi - 1) / 2;
    let match_report = clusters
        .iter()
        .zip(&eigenvectors)
        .map(|(cl, vecs)| {
            let n = cl.n_label?;
            let limit = n.min(half) as i64;
            let samples: Vec<_> = (-limit..=limit)
                .filter_map(|m| harmonic_on_grid(n, m, op.grid()).ok())
                .filter(|s| !s.degenerate)
                .collect();
            if samples.is_empty() {
                return None;
            }
            subspace_residual(vecs, &samples).ok()
        })
        .collect();

    Ok(LabeledSpectrum {
        azimuthal: pairs.iter().map(|p| p.m).collect(),
        eigenvalues,
        clusters,
        eigenvectors,
        match_report,
        max_imag,
        exact_count: op.exact_count,
        iterations,
    })
}

/// Spectrum of the assembled NM×NM matrix by dense Hessenberg–QR, ignoring
/// the block structure.
pub fn full_spectrum<T: Real>(op: &LSquaredOperator<T>) -> Result<Vec<Complex<T>>> {
    Ok(hessenberg_qr(&op.matrix.entries().to_complex())?.values)
}

/// Smallest eigenvalue of each symmetrized block; `None` when the θ-nodes
/// do not admit the symmetric form.
pub fn symmetrized_min_eigenvalues<T: Real>(op: &LSquaredOperator<T>) -> Result<Option<Vec<T>>> {
    if !op.symmetrizable() {
        return Ok(None);
    }
    op.blocks()
        .iter()
        .map(|b| {
            let sym = b.symmetrized.as_ref().expect("symmetrizable operator");
            Ok(jacobi_symmetric(sym)?.real_values()[0])
        })
        .collect::<Result<Vec<T>>>()
        .map(Some)
}
