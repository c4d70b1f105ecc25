//! Collocation node sets.
//!
//! Three families are produced here: equidistant periodic nodes on (−π, π],
//! arbitrary user nodes, and the θ-nodes on (0, π) at the critical point of
//!
//! ```text
//! F(z) = ½ Σ_k log sin z_k + Σ_{i>j} log sin((z_i − z_j)/2)
//! ```
//!
//! whose gradient vanishes exactly when
//! `Σ'_l cot((θ_j − θ_l)/2) + cot θ_j = 0` for every j.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;

/// Two nodes closer than this are treated as coincident.
pub const COLLISION_TOLERANCE: f64 = 1e-10;
/// Default bound on the max residual of the θ-node condition.
pub const DEFAULT_THETA_TOLERANCE: f64 = 1e-12;
/// Newton iteration cap of the θ-node solver.
pub const THETA_MAX_ITERATIONS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// Points in (−π, π], used for periodic functions.
    Periodic,
    /// Points strictly inside (0, π).
    Open,
    General,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Periodic => "periodic",
            NodeKind::Open => "open",
            NodeKind::General => "general",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "periodic" => Some(NodeKind::Periodic),
            "open" => Some(NodeKind::Open),
            "general" => Some(NodeKind::General),
            _ => None,
        }
    }
}

/// Ordered, pairwise distinct collocation points.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet<T> {
    points: Vec<T>,
    kind: NodeKind,
}

impl<T: Real> NodeSet<T> {
    /// Validates and wraps `points`.
    ///
    /// Points must be strictly increasing, at least [`COLLISION_TOLERANCE`]
    /// apart (modulo 2π for periodic sets) and inside the range of `kind`.
    pub fn new(points: Vec<T>, kind: NodeKind) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("node set must not be empty".into()));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite {
                index: i,
                what: "node coordinate".into(),
            });
        }
        let tol = T::lit(COLLISION_TOLERANCE);
        let mut sorted = points.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        for w in sorted.windows(2) {
            if w[1] - w[0] < tol {
                return Err(Error::DegenerateNodes(format!(
                    "nodes {} and {} coincide",
                    w[0], w[1]
                )));
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(format!(
                "nodes must be strictly increasing (index {})",
                i + 1
            )));
        }
        let pi = T::PI();
        let slack = T::lit(4.0) * T::epsilon() * pi;
        match kind {
            NodeKind::Periodic => {
                if let Some(i) = points.iter().position(|&p| p <= -pi || p > pi + slack) {
                    return Err(Error::InvalidArgument(format!(
                        "periodic node {} outside (-pi, pi]",
                        points[i]
                    )));
                }
                let wrap = points[0] + pi + pi - points[points.len() - 1];
                if points.len() > 1 && wrap < tol {
                    return Err(Error::DegenerateNodes(
                        "first and last periodic nodes coincide modulo 2pi".into(),
                    ));
                }
            }
            NodeKind::Open => {
                if let Some(i) = points.iter().position(|&p| p <= T::zero() || p >= pi) {
                    return Err(Error::InvalidArgument(format!(
                        "open node {} outside (0, pi)",
                        points[i]
                    )));
                }
            }
            NodeKind::General => {}
        }
        Ok(Self { points, kind })
    }

    pub fn general(points: Vec<T>) -> Result<Self> {
        Self::new(points, NodeKind::General)
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.points.len()
    }

    /// True if some node equals `x` within the collision tolerance.
    pub fn contains(&self, x: T) -> bool {
        let tol = T::lit(COLLISION_TOLERANCE);
        self.points.iter().any(|&p| (p - x).abs() < tol)
    }

    pub fn into_points(self) -> Vec<T> {
        self.points
    }
}

/// Periodic nodes `x_j = −π + 2πj/n`, j = 1..n.
pub fn equidistant_nodes<T: Real>(n: usize) -> Result<NodeSet<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("node count must be positive".into()));
    }
    let pi = T::PI();
    let two_pi_over_n = (pi + pi) / T::from_usize(n);
    let points = (1..=n)
        .map(|j| -pi + two_pi_over_n * T::from_usize(j))
        .collect();
    NodeSet::new(points, NodeKind::Periodic)
}

/// Open nodes `θ_j = jπ/(n+1)`, j = 1..n; also the solver's starting point.
pub fn equidistant_open_nodes<T: Real>(n: usize) -> Result<NodeSet<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("node count must be positive".into()));
    }
    let step = T::PI() / T::from_usize(n + 1);
    let points = (1..=n).map(|j| step * T::from_usize(j)).collect();
    NodeSet::new(points, NodeKind::Open)
}

/// Per-node residual of a node condition.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeConditionResidual<T> {
    pub residuals: Vec<T>,
    pub max_abs: T,
}

impl<T: Real> NodeConditionResidual<T> {
    fn from_residuals(residuals: Vec<T>) -> Self {
        let max_abs = residuals.iter().fold(T::zero(), |m, r| m.max(r.abs()));
        Self { residuals, max_abs }
    }
}

fn evaluate_log_derivative<T: Real>(nodes: &NodeSet<T>, log_derivative: impl Fn(T) -> T) -> Result<Vec<T>> {
    nodes
        .points()
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let v = log_derivative(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite {
                    index: j,
                    what: format!("log-derivative at {x}"),
                })
            }
        })
        .collect()
}

/// `Σ'_l cot((x_j − x_l)/2) + log_derivative(x_j)` for every node.
///
/// With `log_derivative = cot` this is the θ-node condition.
pub fn node_condition_residual<T: Real>(
    nodes: &NodeSet<T>,
    log_derivative: impl Fn(T) -> T,
) -> Result<NodeConditionResidual<T>> {
    let gamma = evaluate_log_derivative(nodes, log_derivative)?;
    let x = nodes.points();
    let half = T::lit(0.5);
    let residuals = (0..x.len())
        .map(|j| {
            let s: T = (0..x.len())
                .filter(|&l| l != j)
                .map(|l| T::one() / ((x[j] - x[l]) * half).tan())
                .fold(T::zero(), |a, b| a + b);
            s + gamma[j]
        })
        .collect();
    Ok(NodeConditionResidual::from_residuals(residuals))
}

/// Polynomial variant: `Σ'_l 1/(x_j − x_l) + log_derivative(x_j)`.
pub fn poly_node_condition_residual<T: Real>(
    nodes: &NodeSet<T>,
    log_derivative: impl Fn(T) -> T,
) -> Result<NodeConditionResidual<T>> {
    let gamma = evaluate_log_derivative(nodes, log_derivative)?;
    let x = nodes.points();
    let residuals = (0..x.len())
        .map(|j| {
            let s: T = (0..x.len())
                .filter(|&l| l != j)
                .map(|l| T::one() / (x[j] - x[l]))
                .fold(T::zero(), |a, b| a + b);
            s + gamma[j]
        })
        .collect();
    Ok(NodeConditionResidual::from_residuals(residuals))
}

/// θ-node residual: `node_condition_residual(nodes, cot)`.
pub fn theta_residual<T: Real>(nodes: &NodeSet<T>) -> Result<NodeConditionResidual<T>> {
    node_condition_residual(nodes, |t: T| T::one() / t.tan())
}

/// The log-objective `F(z)` maximised by [`solve_theta_nodes`]; `-inf`
/// outside the ordered region `0 < z_1 < … < z_N < π`.
pub fn theta_log_objective<T: Real>(z: &[T]) -> T {
    let pi = T::PI();
    let half = T::lit(0.5);
    let mut f = T::zero();
    for (i, &zi) in z.iter().enumerate() {
        if zi <= T::zero() || zi >= pi {
            return T::neg_infinity();
        }
        f += half * zi.sin().ln();
        for &zj in &z[..i] {
            let d = (zi - zj) * half;
            if d <= T::zero() {
                return T::neg_infinity();
            }
            f += d.sin().ln();
        }
    }
    f
}

fn theta_gradient<T: Real>(z: &[T]) -> Vec<T> {
    let half = T::lit(0.5);
    (0..z.len())
        .map(|j| {
            let mut g = half / z[j].tan();
            for l in 0..z.len() {
                if l != j {
                    g += half / ((z[j] - z[l]) * half).tan();
                }
            }
            g
        })
        .collect()
}

/// Hessian of [`theta_log_objective`]; negative definite on the ordered region.
pub fn theta_log_objective_hessian<T: Real>(z: &[T]) -> Matrix<T> {
    let n = z.len();
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let mut h = Matrix::zeros(n, n);
    for j in 0..n {
        let s = z[j].sin();
        h[(j, j)] = -half / (s * s);
        for l in 0..n {
            if l == j {
                continue;
            }
            let sd = ((z[j] - z[l]) * half).sin();
            let c = quarter / (sd * sd);
            h[(j, j)] -= c;
            h[(j, l)] = c;
        }
    }
    h
}

fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

/// Solves for the N θ-nodes in (0, π) satisfying the θ-node condition to
/// within `tolerance`, by damped Newton ascent on [`theta_log_objective`]
/// started from `jπ/(N+1)`. The result is symmetric about π/2.
pub fn solve_theta_nodes<T: Real>(n: usize, tolerance: T) -> Result<NodeSet<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("node count must be positive".into()));
    }
    if tolerance.is_nan() || tolerance <= T::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let two = T::lit(2.0);
    let mut z = equidistant_open_nodes::<T>(n)?.into_points();
    let mut f = theta_log_objective(&z);
    let mut best = T::infinity();

    for iter in 0..THETA_MAX_ITERATIONS {
        let g = theta_gradient(&z);
        // the residual is twice the gradient
        let res = two * max_abs(&g);
        best = best.min(res);
        if res < tolerance {
            break;
        }
        let neg_h = theta_log_objective_hessian(&z).scale(-T::one());
        let step = neg_h.lu()?.solve(&g);

        let mut alpha = T::one();
        let mut accepted = false;
        for _ in 0..60 {
            let trial: Vec<T> = z.iter().zip(&step).map(|(&a, &d)| a + alpha * d).collect();
            let ft = theta_log_objective(&trial);
            if ft.is_finite() {
                let rt = two * max_abs(&theta_gradient(&trial));
                if ft >= f || rt < res {
                    z = trial;
                    f = ft;
                    accepted = true;
                    break;
                }
            }
            alpha *= T::lit(0.5);
        }
        if !accepted {
            return Err(Error::ConvergenceFailure {
                context: format!("theta-node line search stalled (n = {n})"),
                iterations: iter + 1,
                residual: best.as_f64(),
            });
        }
    }

    symmetrize(&mut z);
    let nodes = NodeSet::new(z, NodeKind::Open)?;
    let res = theta_residual(&nodes)?.max_abs;
    if res < tolerance {
        Ok(nodes)
    } else {
        Err(Error::ConvergenceFailure {
            context: format!("theta-node solve (n = {n})"),
            iterations: THETA_MAX_ITERATIONS,
            residual: best.min(res).as_f64(),
        })
    }
}

/// Enforces `z_j + z_{N+1−j} = π`.
fn symmetrize<T: Real>(z: &mut [T]) {
    let n = z.len();
    let pi = T::PI();
    let half = T::lit(0.5);
    for j in 0..n / 2 {
        let k = n - 1 - j;
        let a = (z[j] + pi - z[k]) * half;
        z[j] = a;
        z[k] = pi - a;
    }
    if n % 2 == 1 {
        z[n / 2] = pi * half;
    }
}
