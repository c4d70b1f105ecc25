//! One-dimensional differentiation matrices.
//!
//! Every matrix here has the form `D = Q D̃ Q⁻¹` with `Q` diagonal:
//!
//! | builder               | `Q_jj`                          | `D̃_jk`, j ≠ k            | `D̃_jj`                        |
//! |-----------------------|---------------------------------|--------------------------|-------------------------------|
//! | [`poly_diff_matrix`]   | `Π'_l (x_j − x_l)`              | `1/(x_j − x_k)`          | `Σ'_l 1/(x_j − x_l)`          |
//! | [`trig_diff_matrix`]   | `½ Π'_l sin((x_j − x_l)/2)`     | `½ csc((x_j − x_k)/2)`   | `Σ'_l ½ cot((x_j − x_l)/2)`   |
//! | [`parity_diff_matrix`] | `Π'_l sin(x_j − x_l)`           | `cot(x_j − x_k)`         | `Σ'_l cot(x_j − x_l)`         |
//!
//! `Q` is kept as log-magnitude and sign so that large node counts never
//! form the underflowing products; only pairwise ratios are exponentiated.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nodes::{NodeSet, COLLISION_TOLERANCE};
use crate::scalar::{Real, Scalar};

/// Function subspace on which a differentiation matrix is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    /// Polynomials of degree ≤ `degree`.
    Polynomial { degree: usize },
    /// Trigonometric polynomials of degree ≤ `degree`.
    Trigonometric { degree: usize },
    /// `e^{±ix/2} f(x)` with `f` trigonometric of degree ≤ `degree`.
    HalfInteger { degree: usize },
    /// `sin(x/2) f(x)`, `f` trigonometric of degree ≤ `degree`.
    SineHalf { degree: usize },
    /// `cos(x/2) f(x)`, `f` trigonometric of degree ≤ `degree`.
    CosineHalf { degree: usize },
    /// Trigonometric polynomials of definite parity and degree ≤ `degree`.
    Parity { degree: usize },
}

impl Exactness {
    pub fn class_name(&self) -> &'static str {
        match self {
            Exactness::Polynomial { .. } => "polynomial",
            Exactness::Trigonometric { .. } => "trigonometric",
            Exactness::HalfInteger { .. } => "half-integer",
            Exactness::SineHalf { .. } => "sine-half",
            Exactness::CosineHalf { .. } => "cosine-half",
            Exactness::Parity { .. } => "parity",
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            Exactness::Polynomial { degree }
            | Exactness::Trigonometric { degree }
            | Exactness::HalfInteger { degree }
            | Exactness::SineHalf { degree }
            | Exactness::CosineHalf { degree }
            | Exactness::Parity { degree } => degree,
        }
    }
}

/// Diagonal similarity `Q`, stored as `sign_j · exp(log_magnitude_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSimilarity<T> {
    log_magnitude: Vec<T>,
    sign: Vec<T>,
}

impl<T: Real> DiagonalSimilarity<T> {
    fn from_factors(n: usize, factor: impl Fn(usize, usize) -> T, scale: T) -> Self {
        let mut log_magnitude = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        for j in 0..n {
            let mut lm = scale.abs().ln();
            let mut s = scale.signum();
            for l in (0..n).filter(|&l| l != j) {
                let f = factor(j, l);
                lm += f.abs().ln();
                s *= f.signum();
            }
            log_magnitude.push(lm);
            sign.push(s);
        }
        Self { log_magnitude, sign }
    }

    pub fn len(&self) -> usize {
        self.sign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sign.is_empty()
    }

    pub fn log_magnitude(&self) -> &[T] {
        &self.log_magnitude
    }

    pub fn signs(&self) -> &[T] {
        &self.sign
    }

    /// `Q_ii / Q_jj`.
    pub fn ratio(&self, i: usize, j: usize) -> T {
        self.sign[i] * self.sign[j] * (self.log_magnitude[i] - self.log_magnitude[j]).exp()
    }

    /// Diagonal values; may under- or overflow for large node counts.
    pub fn values(&self) -> Vec<T> {
        self.log_magnitude
            .iter()
            .zip(&self.sign)
            .map(|(&lm, &s)| s * lm.exp())
            .collect()
    }

    /// Diagonal values scaled so the largest magnitude is one.
    pub fn normalized_values(&self) -> Vec<T> {
        let top = self
            .log_magnitude
            .iter()
            .fold(T::neg_infinity(), |m, &x| m.max(x));
        self.log_magnitude
            .iter()
            .zip(&self.sign)
            .map(|(&lm, &s)| s * (lm - top).exp())
            .collect()
    }

    /// `Q M Q⁻¹`.
    pub fn conjugate<S: Scalar<Real = T>>(&self, m: &Matrix<S>) -> Matrix<S> {
        Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * S::from_real(self.ratio(i, j)))
    }

    /// `Q⁻¹ M Q`.
    pub fn deconjugate<S: Scalar<Real = T>>(&self, m: &Matrix<S>) -> Matrix<S> {
        Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * S::from_real(self.ratio(j, i)))
    }
}

/// Dense square operator carrying its nodes and exactness class.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<S: Scalar> {
    entries: Matrix<S>,
    nodes: NodeSet<S::Real>,
    exactness: Exactness,
    similarity: Option<DiagonalSimilarity<S::Real>>,
}

impl<S: Scalar> OperatorMatrix<S> {
    pub fn new(
        entries: Matrix<S>,
        nodes: NodeSet<S::Real>,
        exactness: Exactness,
        similarity: Option<DiagonalSimilarity<S::Real>>,
    ) -> Result<Self> {
        if !entries.is_square() || entries.nrows() != nodes.count() {
            return Err(Error::DimensionMismatch {
                expected: nodes.count(),
                found: entries.nrows(),
            });
        }
        if let Some(sim) = &similarity {
            if sim.len() != nodes.count() {
                return Err(Error::DimensionMismatch {
                    expected: nodes.count(),
                    found: sim.len(),
                });
            }
        }
        Ok(Self {
            entries,
            nodes,
            exactness,
            similarity,
        })
    }

    pub fn entries(&self) -> &Matrix<S> {
        &self.entries
    }

    pub fn nodes(&self) -> &NodeSet<S::Real> {
        &self.nodes
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn similarity(&self) -> Option<&DiagonalSimilarity<S::Real>> {
        self.similarity.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn apply(&self, samples: &[S]) -> Vec<S> {
        self.entries.mul_vec(samples)
    }

    /// Reinterprets the entries, e.g. `L_z = −i D_φ`.
    pub fn map_entries<U: Scalar<Real = S::Real>>(&self, f: impl Fn(S) -> U) -> OperatorMatrix<U> {
        OperatorMatrix {
            entries: self.entries.map(f),
            nodes: self.nodes.clone(),
            exactness: self.exactness,
            similarity: self.similarity.clone(),
        }
    }

    pub fn into_entries(self) -> Matrix<S> {
        self.entries
    }
}

fn check_pairwise<T: Real>(x: &[T], what: &str, dist: impl Fn(T, T) -> T) -> Result<()> {
    let tol = T::lit(COLLISION_TOLERANCE);
    for i in 0..x.len() {
        for j in 0..i {
            if dist(x[i], x[j]).abs() < tol {
                return Err(Error::DegenerateNodes(format!(
                    "{what}: nodes {} and {} collide",
                    x[j], x[i]
                )));
            }
        }
    }
    Ok(())
}

fn similarity_form<T: Real>(core: &Matrix<T>, sim: &DiagonalSimilarity<T>) -> Matrix<T> {
    sim.conjugate(core)
}

/// `D̃` for polynomial interpolation.
pub fn poly_core_matrix<T: Real>(x: &[T]) -> Matrix<T> {
    let n = x.len();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            (0..n)
                .filter(|&l| l != i)
                .map(|l| T::one() / (x[i] - x[l]))
                .fold(T::zero(), |a, b| a + b)
        } else {
            T::one() / (x[i] - x[j])
        }
    })
}

/// `D̃` for trigonometric interpolation (half-angle cot/csc).
pub fn trig_core_matrix<T: Real>(x: &[T]) -> Matrix<T> {
    let n = x.len();
    let half = T::lit(0.5);
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            (0..n)
                .filter(|&l| l != i)
                .map(|l| half / ((x[i] - x[l]) * half).tan())
                .fold(T::zero(), |a, b| a + b)
        } else {
            half / ((x[i] - x[j]) * half).sin()
        }
    })
}

/// `D̃` of the parity matrix (full-angle cot).
pub fn parity_core_matrix<T: Real>(x: &[T]) -> Matrix<T> {
    let n = x.len();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            (0..n)
                .filter(|&l| l != i)
                .map(|l| T::one() / (x[i] - x[l]).tan())
                .fold(T::zero(), |a, b| a + b)
        } else {
            T::one() / (x[i] - x[j]).tan()
        }
    })
}

/// `T_jj = t'(x_j) = ½ Π'_l sin((x_j − x_l)/2)`.
pub fn trig_similarity<T: Real>(x: &[T]) -> DiagonalSimilarity<T> {
    let half = T::lit(0.5);
    DiagonalSimilarity::from_factors(x.len(), |j, l| ((x[j] - x[l]) * half).sin(), half)
}

/// `S_jj = Π'_l sin(x_j − x_l)`.
pub fn parity_similarity<T: Real>(x: &[T]) -> DiagonalSimilarity<T> {
    DiagonalSimilarity::from_factors(x.len(), |j, l| (x[j] - x[l]).sin(), T::one())
}

/// Differentiation matrix exact on polynomials of degree ≤ N−1.
pub fn poly_diff_matrix<T: Real>(nodes: &NodeSet<T>) -> Result<OperatorMatrix<T>> {
    let x = nodes.points();
    check_pairwise(x, "polynomial", |a, b| a - b)?;
    let sim = DiagonalSimilarity::from_factors(x.len(), |j, l| x[j] - x[l], T::one());
    let d = similarity_form(&poly_core_matrix(x), &sim);
    OperatorMatrix::new(
        d,
        nodes.clone(),
        Exactness::Polynomial {
            degree: x.len() - 1,
        },
        Some(sim),
    )
}

/// Differentiation matrix from trigonometric interpolation on (−π, π].
///
/// Odd N = 2n+1 is exact on trigonometric polynomials of degree ≤ n. Even
/// N = 2n is exact on `e^{±ix/2} τ_{n−1}` when 0 and π are both nodes, on
/// `sin(x/2) τ_{n−1}` with only 0, and on `cos(x/2) τ_{n−1}` with only π.
pub fn trig_diff_matrix<T: Real>(nodes: &NodeSet<T>) -> Result<OperatorMatrix<T>> {
    let x = nodes.points();
    let pi = T::PI();
    let slack = T::lit(4.0) * T::epsilon() * pi;
    if let Some(p) = x.iter().find(|&&p| p <= -pi || p > pi + slack) {
        return Err(Error::InvalidArgument(format!(
            "trigonometric node {p} outside (-pi, pi]"
        )));
    }
    check_pairwise(x, "trigonometric", |a, b| ((a - b) * T::lit(0.5)).sin())?;
    let n = x.len();
    let exactness = if n % 2 == 1 {
        Exactness::Trigonometric { degree: n / 2 }
    } else {
        let degree = n / 2 - 1;
        match (nodes.contains(T::zero()), nodes.contains(pi)) {
            (true, true) => Exactness::HalfInteger { degree },
            (true, false) => Exactness::SineHalf { degree },
            (false, true) => Exactness::CosineHalf { degree },
            (false, false) => {
                return Err(Error::InvalidArgument(
                    "even node count requires 0 or pi among the nodes".into(),
                ))
            }
        }
    };
    let sim = trig_similarity(x);
    let d = similarity_form(&trig_core_matrix(x), &sim);
    OperatorMatrix::new(d, nodes.clone(), exactness, Some(sim))
}

/// Parity differentiation matrix on nodes in (0, π).
pub fn parity_diff_matrix<T: Real>(nodes: &NodeSet<T>) -> Result<OperatorMatrix<T>> {
    let x = nodes.points();
    let pi = T::PI();
    if let Some(p) = x.iter().find(|&&p| p <= T::zero() || p >= pi) {
        return Err(Error::InvalidArgument(format!(
            "parity node {p} outside (0, pi)"
        )));
    }
    check_pairwise(x, "parity", |a, b| (a - b).sin())?;
    let sim = parity_similarity(x);
    let d = similarity_form(&parity_core_matrix(x), &sim);
    OperatorMatrix::new(d, nodes.clone(), Exactness::Parity { degree: x.len() }, Some(sim))
}

/// k-th power of a differentiation matrix; the exactness class is kept since
/// every class above is closed under differentiation.
pub fn matrix_power<S: Scalar>(op: &OperatorMatrix<S>, k: usize) -> OperatorMatrix<S> {
    OperatorMatrix {
        entries: op.entries.pow(k),
        nodes: op.nodes.clone(),
        exactness: op.exactness,
        similarity: op.similarity.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::{equidistant_nodes, NodeKind};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn poly_two_nodes() {
        let nodes = NodeSet::general(vec![-1.0, 1.0]).unwrap();
        let d = poly_diff_matrix(&nodes).unwrap();
        let want = Matrix::from_rows(&[vec![-0.5, 0.5], vec![-0.5, 0.5]]);
        assert!(d.entries().max_abs_diff(&want) < 1e-15);
        assert_eq!(d.exactness(), Exactness::Polynomial { degree: 1 });
        assert!(max_err(&d.apply(&[-1.0, 1.0]), &[1.0, 1.0]) < 1e-15);
    }

    #[test]
    fn single_node_matrices_are_zero() {
        let nodes = NodeSet::general(vec![0.3]).unwrap();
        assert_eq!(poly_diff_matrix(&nodes).unwrap().entries()[(0, 0)], 0.0);
        assert_eq!(trig_diff_matrix(&nodes).unwrap().entries()[(0, 0)], 0.0);
        assert_eq!(parity_diff_matrix(&nodes).unwrap().entries()[(0, 0)], 0.0);
    }

    #[test]
    fn poly_constants_map_to_zero() {
        let nodes = NodeSet::general(vec![-0.9, -0.2, 0.1, 0.5, 0.95]).unwrap();
        let d = poly_diff_matrix(&nodes).unwrap();
        assert!(d.apply(&[1.0f64; 5]).iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn trig_n3_entries() {
        let d = trig_diff_matrix(&equidistant_nodes::<f64>(3).unwrap()).unwrap();
        let e = d.entries();
        for j in 0..3 {
            assert!(e[(j, j)].abs() < 1e-15);
            for k in 0..3 {
                if j != k {
                    let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
                    let want = sign / (2.0 * (PI * (j as f64 - k as f64) / 3.0).sin());
                    assert!((e[(j, k)] - want).abs() < 1e-14);
                    assert!((e[(j, k)] + e[(k, j)]).abs() < 1e-14);
                }
            }
        }
        assert!((e[(0, 1)] - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(d.exactness(), Exactness::Trigonometric { degree: 1 });
    }

    #[test]
    fn trig_n5_sin_to_cos_and_second_derivative() {
        let nodes = equidistant_nodes::<f64>(5).unwrap();
        let x = nodes.points();
        let d = trig_diff_matrix(&nodes).unwrap();
        let sin: Vec<f64> = x.iter().map(|t| t.sin()).collect();
        let cos: Vec<f64> = x.iter().map(|t| t.cos()).collect();
        assert!(max_err(&d.apply(&sin), &cos) < 1e-12);
        assert!(d.apply(&[1.0f64; 5]).iter().all(|v| v.abs() < 1e-12));
        let d2 = matrix_power(&d, 2);
        let minus_cos: Vec<f64> = cos.iter().map(|c| -c).collect();
        assert!(max_err(&d2.apply(&cos), &minus_cos) < 1e-12);
        assert_eq!(d2.exactness(), d.exactness());
    }

    #[test]
    fn poly_second_power_on_square() {
        let nodes = NodeSet::general(vec![-1.0, 0.0, 1.0]).unwrap();
        let d2 = matrix_power(&poly_diff_matrix(&nodes).unwrap(), 2);
        assert!(max_err(&d2.apply(&[1.0, 0.0, 1.0]), &[2.0, 2.0, 2.0]) < 1e-13);
        assert_eq!(matrix_power(&d2, 0).entries(), &Matrix::identity(3));
    }

    #[test]
    fn parity_two_nodes_core() {
        let x = [PI / 4.0, PI / 2.0];
        let core = parity_core_matrix(&x);
        assert!((core[(0, 0)] + 1.0).abs() < 1e-15);
        assert!((core[(1, 1)] - 1.0).abs() < 1e-15);
        assert!((core[(0, 1)] + 1.0).abs() < 1e-15);
        assert!((core[(1, 0)] - 1.0).abs() < 1e-15);
        let nodes = NodeSet::new(x.to_vec(), NodeKind::Open).unwrap();
        let d = parity_diff_matrix(&nodes).unwrap();
        let s = d.similarity().unwrap().values();
        // S = diag(sin(−π/4), sin(π/4))
        assert!((s[0] + 0.5f64.sqrt()).abs() < 1e-15);
        assert!((d.entries()[(0, 1)] - core[(0, 1)] * s[0] / s[1]).abs() < 1e-15);
    }

    #[test]
    fn parity_exact_on_its_interpolation_space() {
        // span{Π_l sin(θ−θ_l) cot(θ−θ_k)}: every harmonic of parity (−1)^N up to
        // N−2, so for N = 5 the modes cos θ, sin θ, cos 3θ, sin 3θ.
        let nodes = NodeSet::new(vec![0.2f64, 0.7, 1.3, 2.0, 2.9], NodeKind::Open).unwrap();
        let d = parity_diff_matrix(&nodes).unwrap();
        let x = nodes.points();
        for q in [1.0f64, 3.0] {
            let c: Vec<f64> = x.iter().map(|t| (q * t).cos()).collect();
            let dc: Vec<f64> = x.iter().map(|t| -q * (q * t).sin()).collect();
            let s: Vec<f64> = x.iter().map(|t| (q * t).sin()).collect();
            let ds: Vec<f64> = x.iter().map(|t| q * (q * t).cos()).collect();
            assert!(max_err(&d.apply(&c), &dc) < 1e-11);
            assert!(max_err(&d.apply(&s), &ds) < 1e-11);
        }
    }

    #[test]
    fn parity_rejects_nodes_a_half_turn_apart() {
        let nodes = NodeSet::general(vec![-1.0, 1.0]).unwrap();
        assert!(parity_diff_matrix(&nodes).is_err());
        let nodes = NodeSet::general(vec![0.5, 0.5 + PI]).unwrap();
        assert!(parity_diff_matrix(&nodes).is_err());
    }

    #[test]
    fn even_count_exactness_tags() {
        let both = equidistant_nodes::<f64>(4).unwrap();
        assert_eq!(
            trig_diff_matrix(&both).unwrap().exactness(),
            Exactness::HalfInteger { degree: 1 }
        );
        let zero = NodeSet::general(vec![-2.0, 0.0, 1.0, 2.5]).unwrap();
        assert_eq!(
            trig_diff_matrix(&zero).unwrap().exactness(),
            Exactness::SineHalf { degree: 1 }
        );
        let pi = NodeSet::general(vec![-2.0, 0.5, 1.0, PI]).unwrap();
        assert_eq!(
            trig_diff_matrix(&pi).unwrap().exactness(),
            Exactness::CosineHalf { degree: 1 }
        );
        let neither = NodeSet::general(vec![-2.0, 0.5, 1.0, 2.0]).unwrap();
        assert!(matches!(trig_diff_matrix(&neither), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sine_half_class_is_exact_with_zero_node() {
        let nodes = NodeSet::general(vec![-2.0f64, -0.7, 0.0, 1.0, 1.9, 2.8]).unwrap();
        let d = trig_diff_matrix(&nodes).unwrap();
        let x = nodes.points();
        // g = sin(x/2) (1 + cos x + sin 2x)
        let f = |t: f64| 1.0 + t.cos() + (2.0 * t).sin();
        let fp = |t: f64| -t.sin() + 2.0 * (2.0 * t).cos();
        let g: Vec<f64> = x.iter().map(|&t| (t / 2.0).sin() * f(t)).collect();
        let gp: Vec<f64> = x
            .iter()
            .map(|&t| 0.5 * (t / 2.0).cos() * f(t) + (t / 2.0).sin() * fp(t))
            .collect();
        assert!(max_err(&d.apply(&g), &gp) < 1e-11);
    }

    #[test]
    fn half_integer_exactness_even_equidistant() {
        for n in 2..=6 {
            let nodes = equidistant_nodes::<f64>(2 * n).unwrap();
            let d = trig_diff_matrix(&nodes)
                .unwrap()
                .map_entries(|v| Complex64::new(v, 0.0));
            for q in -(n as i32 - 1)..=(n as i32 - 1) {
                for base in [0.5, -0.5] {
                    let m = base + q as f64;
                    let f: Vec<Complex64> = nodes
                        .points()
                        .iter()
                        .map(|&t| Complex64::new(0.0, m * t).exp())
                        .collect();
                    let got = d.apply(&f);
                    for (g, v) in got.iter().zip(&f) {
                        assert!((g - Complex64::new(0.0, m) * v).norm() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn similarity_matches_direct_product_for_small_sets() {
        let x = [-2.0f64, -0.4, 0.3, 1.1, 2.7];
        let sim = trig_similarity(&x);
        for (j, v) in sim.values().iter().enumerate() {
            let direct: f64 = 0.5
                * (0..5)
                    .filter(|&l| l != j)
                    .map(|l| ((x[j] - x[l]) / 2.0).sin())
                    .product::<f64>();
            assert!((v - direct).abs() < 1e-14);
        }
        let top = sim.normalized_values();
        assert!(top.iter().all(|v| v.abs() <= 1.0));
    }

    #[test]
    fn large_counts_stay_finite() {
        let nodes = equidistant_nodes::<f64>(301).unwrap();
        let d = trig_diff_matrix(&nodes).unwrap();
        assert!(d.entries().as_slice().iter().all(|v| v.is_finite()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn poly_exact_on_monomials(raw in proptest::collection::vec(-1.0f64..1.0, 1..=10)) {
            let mut pts = raw;
            pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assume!(pts.windows(2).all(|w| w[1] - w[0] >= 0.05));
            let nodes = NodeSet::general(pts.clone()).unwrap();
            let d = poly_diff_matrix(&nodes).unwrap();
            let n = pts.len();
            for p in 0..n {
                let f: Vec<f64> = pts.iter().map(|x| x.powi(p as i32)).collect();
                let fp: Vec<f64> = pts
                    .iter()
                    .map(|x| if p == 0 { 0.0 } else { p as f64 * x.powi(p as i32 - 1) })
                    .collect();
                let scale = 1.0 + f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                prop_assert!(max_err(&d.apply(&f), &fp) <= 1e-8 * scale);
            }
            let rows: Vec<f64> = d.apply(&vec![1.0; n]);
            prop_assert!(rows.iter().all(|v| v.abs() < 1e-8));
        }
    }
}
