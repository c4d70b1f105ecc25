//! Tensor-product grids and Kronecker-lifted operators.
//!
//! Samples on a grid with axes of sizes `N_1, …, N_q` are raveled with the
//! first axis running fastest:
//!
//! ```text
//! r = j_1 + (j_2 − 1) N_1 + (j_3 − 1) N_1 N_2 + …      (all indices 1-based)
//! ```
//!
//! so an operator acting on axis k lifts to `1_q ⊗ … ⊗ D_k ⊗ … ⊗ 1_1`.

use crate::diffmat::OperatorMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nodes::NodeSet;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TensorGrid<T> {
    axes: Vec<NodeSet<T>>,
}

impl<T: Real> TensorGrid<T> {
    pub fn new(axes: Vec<NodeSet<T>>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidArgument("grid needs at least one axis".into()));
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> &[NodeSet<T>] {
        &self.axes
    }

    pub fn dims(&self) -> Vec<usize> {
        self.axes.iter().map(NodeSet::count).collect()
    }

    pub fn total(&self) -> usize {
        self.axes.iter().map(NodeSet::count).product()
    }

    /// 1-based multi-index to 1-based flat index.
    pub fn ravel(&self, multi_index: &[usize]) -> Result<usize> {
        if multi_index.len() != self.axes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.axes.len(),
                found: multi_index.len(),
            });
        }
        let mut r = 1;
        let mut stride = 1;
        for (axis, (&j, nodes)) in multi_index.iter().zip(&self.axes).enumerate() {
            if j == 0 || j > nodes.count() {
                return Err(Error::InvalidArgument(format!(
                    "index {j} out of range 1..={} on axis {axis}",
                    nodes.count()
                )));
            }
            r += (j - 1) * stride;
            stride *= nodes.count();
        }
        Ok(r)
    }

    /// Inverse of [`ravel`](Self::ravel).
    pub fn unravel(&self, r: usize) -> Result<Vec<usize>> {
        if r == 0 || r > self.total() {
            return Err(Error::InvalidArgument(format!(
                "flat index {r} out of range 1..={}",
                self.total()
            )));
        }
        let mut rest = r - 1;
        Ok(self
            .axes
            .iter()
            .map(|nodes| {
                let j = rest % nodes.count();
                rest /= nodes.count();
                j + 1
            })
            .collect())
    }

    /// Coordinates of the grid point with 0-based flat index `r0`, in axis order.
    pub fn point(&self, r0: usize) -> Vec<T> {
        let mut rest = r0;
        self.axes
            .iter()
            .map(|nodes| {
                let j = rest % nodes.count();
                rest /= nodes.count();
                nodes.points()[j]
            })
            .collect()
    }

    /// Samples `f` at every grid point in raveled order.
    pub fn sample<S: Scalar>(&self, f: impl Fn(&[T]) -> S) -> Vec<S> {
        (0..self.total()).map(|r| f(&self.point(r))).collect()
    }
}

/// Provenance of one Kronecker factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// 0-based axis; `None` for coefficient (diagonal) operators.
    pub axis: Option<usize>,
    pub label: String,
}

/// Dense operator on the raveled samples of a [`TensorGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct KronOperator<S: Scalar> {
    entries: Matrix<S>,
    grid: TensorGrid<S::Real>,
    factors: Vec<Factor>,
}

impl<S: Scalar> KronOperator<S> {
    pub fn new(entries: Matrix<S>, grid: TensorGrid<S::Real>, factors: Vec<Factor>) -> Result<Self> {
        let total = grid.total();
        if !entries.is_square() || entries.nrows() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: entries.nrows(),
            });
        }
        Ok(Self {
            entries,
            grid,
            factors,
        })
    }

    pub fn entries(&self) -> &Matrix<S> {
        &self.entries
    }

    pub fn grid(&self) -> &TensorGrid<S::Real> {
        &self.grid
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn apply(&self, samples: &[S]) -> Vec<S> {
        self.entries.mul_vec(samples)
    }

    /// Composition `self · other` on the same grid.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Self {
            entries: self.entries.matmul(&other.entries),
            grid: self.grid.clone(),
            factors,
        })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Self {
            entries: self.entries.add(&other.entries),
            grid: self.grid.clone(),
            factors,
        })
    }

    pub fn pow(&self, k: usize) -> Self {
        let factors = (0..k).flat_map(|_| self.factors.iter().cloned()).collect();
        Self {
            entries: self.entries.pow(k),
            grid: self.grid.clone(),
            factors,
        }
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid.dims() != other.grid.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// Kronecker product of two square matrices.
pub fn kron_product<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    for m in [a, b] {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
    }
    Ok(a.kron(b))
}

/// `1_{after} ⊗ m ⊗ 1_{before}`, where `before` is the product of the
/// faster axes' sizes.
pub fn lift_matrix<S: Scalar>(
    m: &Matrix<S>,
    axis: usize,
    grid: &TensorGrid<S::Real>,
    label: impl Into<String>,
) -> Result<KronOperator<S>> {
    let dims = grid.dims();
    if axis >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "axis {axis} out of range for a {}-axis grid",
            dims.len()
        )));
    }
    if !m.is_square() || m.nrows() != dims[axis] {
        return Err(Error::DimensionMismatch {
            expected: dims[axis],
            found: m.nrows(),
        });
    }
    let before: usize = dims[..axis].iter().product();
    let after: usize = dims[axis + 1..].iter().product();
    let entries = Matrix::<S>::identity(after).kron(&m.kron(&Matrix::identity(before)));
    KronOperator::new(
        entries,
        grid.clone(),
        vec![Factor {
            axis: Some(axis),
            label: label.into(),
        }],
    )
}

/// Lifts a 1-D operator onto `axis` (0-based; axis 0 runs fastest).
pub fn lift<S: Scalar>(
    op: &OperatorMatrix<S>,
    axis: usize,
    grid: &TensorGrid<S::Real>,
) -> Result<KronOperator<S>> {
    let e = op.exactness();
    lift_matrix(
        op.entries(),
        axis,
        grid,
        format!("{}({})", e.class_name(), e.degree()),
    )
}

/// Diagonal coefficient operator with entries `f` at the raveled grid points.
pub fn diag_coeff<T: Real>(f: impl Fn(&[T]) -> T, grid: &TensorGrid<T>) -> Result<KronOperator<T>> {
    let mut diag = Vec::with_capacity(grid.total());
    for r in 0..grid.total() {
        let p = grid.point(r);
        let v = f(&p);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                index: r + 1,
                what: format!("coefficient at {p:?}"),
            });
        }
        diag.push(v);
    }
    KronOperator::new(
        Matrix::from_diagonal(&diag),
        grid.clone(),
        vec![Factor {
            axis: None,
            label: "coefficient".into(),
        }],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffmat::poly_diff_matrix;
    use crate::nodes::NodeKind;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn axis(points: &[f64]) -> NodeSet<f64> {
        NodeSet::general(points.to_vec()).unwrap()
    }

    fn grid_of(dims: &[usize]) -> TensorGrid<f64> {
        TensorGrid::new(
            dims.iter()
                .map(|&n| axis(&(0..n).map(|i| i as f64).collect::<Vec<_>>()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ravel_examples() {
        let g = grid_of(&[3, 3]);
        assert_eq!(g.ravel(&[1, 1]).unwrap(), 1);
        assert_eq!(g.ravel(&[2, 3]).unwrap(), 8);
        let g = grid_of(&[2, 3, 4]);
        assert_eq!(g.ravel(&[2, 1, 2]).unwrap(), 8);
        assert_eq!(g.total(), 24);
        assert!(g.ravel(&[3, 1, 1]).is_err());
        assert!(g.ravel(&[0, 1, 1]).is_err());
        assert!(g.ravel(&[1, 1]).is_err());
        assert!(g.unravel(25).is_err());
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(TensorGrid::<f64>::new(vec![]).is_err());
    }

    proptest! {
        #[test]
        fn ravel_unravel_bijection(dims in proptest::collection::vec(1usize..5, 1..4)) {
            let g = grid_of(&dims);
            let mut seen = vec![false; g.total()];
            for r in 1..=g.total() {
                let mi = g.unravel(r).unwrap();
                prop_assert_eq!(g.ravel(&mi).unwrap(), r);
                prop_assert!(!seen[r - 1]);
                seen[r - 1] = true;
            }
        }
    }

    fn random(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
        Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn identity_kron_is_block_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random(&mut rng, 3);
        let k = kron_product(&Matrix::identity(2), &b).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let want = if i / 3 == j / 3 { b[(i % 3, j % 3)] } else { 0.0 };
                assert_eq!(k[(i, j)], want);
            }
        }
        assert!(kron_product(&Matrix::<f64>::zeros(2, 3), &b).is_err());
    }

    #[test]
    fn mixed_product_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let (a, c) = (random(&mut rng, 2), random(&mut rng, 2));
            let (b, d) = (random(&mut rng, 3), random(&mut rng, 3));
            let lhs = a.kron(&b).matmul(&c.kron(&d));
            let rhs = a.matmul(&c).kron(&b.matmul(&d));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn lifted_operators_commute() {
        let x = axis(&[-1.0, -0.3, 0.4, 1.0]);
        let y = axis(&[0.0, 0.5, 2.0]);
        let g = TensorGrid::new(vec![x.clone(), y.clone()]).unwrap();
        let dx = lift(&poly_diff_matrix(&x).unwrap(), 0, &g).unwrap();
        let dy = lift(&poly_diff_matrix(&y).unwrap(), 1, &g).unwrap();
        let xy = dx.compose(&dy).unwrap();
        let yx = dy.compose(&dx).unwrap();
        assert!(xy.entries().max_abs_diff(yx.entries()) < 1e-12);
        let direct = poly_diff_matrix(&y)
            .unwrap()
            .entries()
            .kron(poly_diff_matrix(&x).unwrap().entries());
        assert!(xy.entries().max_abs_diff(&direct) < 1e-12);
        assert_eq!(xy.factors().len(), 2);
    }

    #[test]
    fn lift_on_single_axis_is_identity_map() {
        let x = axis(&[0.0, 1.0, 3.0]);
        let g = TensorGrid::new(vec![x.clone()]).unwrap();
        let d = poly_diff_matrix(&x).unwrap();
        assert_eq!(lift(&d, 0, &g).unwrap().entries(), d.entries());
        assert!(lift(&d, 1, &g).is_err());
        let g2 = grid_of(&[2, 2]);
        assert!(matches!(lift(&d, 0, &g2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn mixed_partials_of_monomials_are_exact() {
        let x = axis(&[-0.8, -0.1, 0.6]);
        let y = axis(&[-1.0, -0.2, 0.3, 0.9]);
        let g = TensorGrid::new(vec![x.clone(), y.clone()]).unwrap();
        let dx = lift(&poly_diff_matrix(&x).unwrap(), 0, &g).unwrap();
        let dy = lift(&poly_diff_matrix(&y).unwrap(), 1, &g).unwrap();
        let falling = |p: i32, k: i32| (0..k).map(|i| (p - i) as f64).product::<f64>();
        for a in 0..3 {
            for b in 0..4 {
                let f = g.sample(|c| c[0].powi(a) * c[1].powi(b));
                for (n, m) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 3)] {
                    let op = dx.pow(n).compose(&dy.pow(m)).unwrap();
                    let got = op.apply(&f);
                    let want = g.sample(|c| {
                        if n as i32 > a || m as i32 > b {
                            0.0
                        } else {
                            falling(a, n as i32)
                                * falling(b, m as i32)
                                * c[0].powi(a - n as i32)
                                * c[1].powi(b - m as i32)
                        }
                    });
                    let scale = 1.0 + f.iter().fold(0.0f64, |s, v| s.max(v.abs()));
                    for (u, v) in got.iter().zip(&want) {
                        assert!((u - v).abs() < 1e-10 * scale, "a={a} b={b} n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_coefficients() {
        let g = grid_of(&[2, 3]);
        let one = diag_coeff(|_| 1.0, &g).unwrap();
        assert_eq!(one.entries(), &Matrix::identity(6));
        let x = diag_coeff(|c| c[0] + 1.0, &g).unwrap();
        let y = diag_coeff(|c| c[1] - 0.5, &g).unwrap();
        let xy = diag_coeff(|c| (c[0] + 1.0) * (c[1] - 0.5), &g).unwrap();
        assert_eq!(x.compose(&y).unwrap().entries(), xy.entries());
    }

    #[test]
    fn inverse_sine_squared_on_two_by_two() {
        let th = NodeSet::new(vec![0.4, 1.9], NodeKind::Open).unwrap();
        let ph = axis(&[-1.0, 2.0]);
        let g = TensorGrid::new(vec![th, ph]).unwrap();
        let c = diag_coeff(|p| 1.0 / p[0].sin().powi(2), &g).unwrap();
        let want = [0.4f64, 1.9, 0.4, 1.9].map(|t| 1.0 / t.sin().powi(2));
        for (i, w) in want.iter().enumerate() {
            assert!((c.entries()[(i, i)] - w).abs() < 1e-15);
        }
    }

    #[test]
    fn nonfinite_coefficient_is_named() {
        let g = grid_of(&[2, 2]);
        let err = diag_coeff(|p| 1.0 / p[0], &g).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 1, .. }));
    }
}
