//! Dense eigenvalue kernels and the matrix exponential.
//!
//! - [`jacobi_symmetric`]: cyclic-by-row Jacobi with a threshold strategy,
//!   deterministic sweep order.
//! - [`hessenberg_qr`]: Householder reduction to Hessenberg form followed by
//!   single-shift complex QR with Wilkinson shifts and an exceptional shift
//!   every 10 stalled iterations.
//! - [`matrix_exponential`]: scaling and squaring with a diagonal [6/6] Padé
//!   approximant.
//! - [`inverse_iteration`]: eigenvector for a known eigenvalue.

use num_complex::Complex;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{vec_norm, Matrix};
use crate::scalar::{Real, Scalar};

/// Sweep cap of the Jacobi solver.
pub const JACOBI_MAX_SWEEPS: usize = 30;
/// Iteration cap per eigenvalue of the QR solver.
pub const QR_MAX_ITERATIONS: usize = 100;
const EXCEPTIONAL_SHIFT_PERIOD: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition<S: Scalar> {
    /// Sorted by real part, then imaginary part.
    pub values: Vec<Complex<S::Real>>,
    /// Column eigenvectors matching `values`, when computed.
    pub vectors: Option<Matrix<S>>,
    /// Jacobi sweeps or total QR iterations.
    pub iterations: usize,
    /// `max_j ‖A v_j − λ_j v_j‖ / ‖A‖_F` when vectors are present, else 0.
    pub residual: S::Real,
}

impl<S: Scalar> EigenDecomposition<S> {
    pub fn real_values(&self) -> Vec<S::Real> {
        self.values.iter().map(|z| z.re).collect()
    }
}

fn require_square<S: Scalar>(a: &Matrix<S>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        })
    }
}

/// Full spectrum and orthonormal eigenvectors of a real symmetric matrix.
pub fn jacobi_symmetric<T: Real>(a: &Matrix<T>) -> Result<EigenDecomposition<T>> {
    require_square(a)?;
    let n = a.nrows();
    let scale = a.max_abs().max(T::one());
    let asym = a.max_abs_diff(&a.transpose());
    if asym > T::lit(1e-12) * scale {
        return Err(Error::InvalidArgument(format!(
            "matrix is not symmetric (max asymmetry {asym:e})"
        )));
    }
    let norm_f = a.frobenius_norm();
    let target = T::lit(1e-12) * norm_f;
    let mut m = a.clone();
    let mut v = Matrix::<T>::identity(n);
    let mut sweeps = 0;

    loop {
        let off = off_diagonal_norm(&m);
        if off <= target || off == T::zero() {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::ConvergenceFailure {
                context: "jacobi_symmetric".into(),
                iterations: sweeps,
                residual: (off / norm_f).as_f64(),
            });
        }
        sweeps += 1;
        // early sweeps skip small elements
        let threshold = if sweeps < 4 {
            T::lit(0.2) * off / T::from_usize(n * n)
        } else {
            T::zero()
        };
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let g = T::lit(100.0) * apq.abs();
                if sweeps > 4
                    && m[(p, p)].abs() + g == m[(p, p)].abs()
                    && m[(q, q)].abs() + g == m[(q, q)].abs()
                {
                    m[(p, q)] = T::zero();
                    m[(q, p)] = T::zero();
                    continue;
                }
                if apq.abs() <= threshold || apq == T::zero() {
                    continue;
                }
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(T, usize)> = (0..n).map(|i| (m[(i, i)], i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite eigenvalue"));
    let values: Vec<Complex<T>> = pairs.iter().map(|&(l, _)| Complex::new(l, T::zero())).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, pairs[j].1)]);
    let residual = eigen_residual(a, &values, &vectors);
    Ok(EigenDecomposition {
        values,
        vectors: Some(vectors),
        iterations: sweeps,
        residual,
    })
}

fn off_diagonal_norm<T: Real>(m: &Matrix<T>) -> T {
    let n = m.nrows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn rotate<T: Real>(m: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let n = m.nrows();
    let apq = m[(p, q)];
    let theta = (m[(q, q)] - m[(p, p)]) / (T::lit(2.0) * apq);
    let t = {
        let r = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -r
        } else {
            r
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        let np = c * akp - s * akq;
        let nq = s * akp + c * akq;
        m[(k, p)] = np;
        m[(p, k)] = np;
        m[(k, q)] = nq;
        m[(q, k)] = nq;
    }
    m[(p, p)] -= t * apq;
    m[(q, q)] += t * apq;
    m[(p, q)] = T::zero();
    m[(q, p)] = T::zero();
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

fn eigen_residual<S: Scalar>(a: &Matrix<S>, values: &[Complex<S::Real>], vectors: &Matrix<S>) -> S::Real {
    let norm = a.frobenius_norm();
    if norm == S::Real::zero() {
        return S::Real::zero();
    }
    let mut worst = S::Real::zero();
    for (j, lambda) in values.iter().enumerate() {
        let vj = vectors.column(j);
        let av = a.mul_vec(&vj);
        let lam = S::from_real(lambda.re);
        let r: Vec<S> = av.iter().zip(&vj).map(|(&x, &y)| x - lam * y).collect();
        worst = worst.max(vec_norm(&r) / norm);
    }
    worst
}

/// All eigenvalues of a square matrix (values only).
pub fn hessenberg_qr<T: Real>(a: &Matrix<Complex<T>>) -> Result<EigenDecomposition<Complex<T>>> {
    require_square(a)?;
    let n = a.nrows();
    let mut h = a.clone();
    reduce_to_hessenberg(&mut h);

    let eps = T::epsilon();
    let mut values = vec![Complex::<T>::zero(); n];
    let mut total = 0;
    let mut hi = n;
    let mut stalled = 0;
    while hi > 0 {
        let top = hi - 1;
        // locate the start of the unreduced block ending at `top`
        let mut l = top;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut tol = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if tol == T::zero() {
                tol = h.max_abs();
            }
            if sub <= eps * tol {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == top {
            values[top] = h[(top, top)];
            hi -= 1;
            stalled = 0;
            continue;
        }
        stalled += 1;
        total += 1;
        if stalled > QR_MAX_ITERATIONS {
            return Err(Error::ConvergenceFailure {
                context: format!("hessenberg_qr at deflation index {top}"),
                iterations: total,
                residual: h[(top, top - 1)].norm().as_f64(),
            });
        }
        let shift = if stalled % EXCEPTIONAL_SHIFT_PERIOD == 0 {
            let ad = h[(top, top - 1)].norm()
                + if top >= 2 { h[(top - 1, top - 2)].norm() } else { T::zero() };
            h[(top, top)] + Complex::new(T::lit(0.75) * ad, T::lit(0.4375) * ad)
        } else {
            wilkinson_shift(h[(top - 1, top - 1)], h[(top - 1, top)], h[(top, top - 1)], h[(top, top)])
        };
        qr_step(&mut h, l, top, shift);
    }

    values.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .expect("finite eigenvalue")
            .then(x.im.partial_cmp(&y.im).expect("finite eigenvalue"))
    });
    Ok(EigenDecomposition {
        values,
        vectors: None,
        iterations: total,
        residual: T::zero(),
    })
}

/// Eigenvalues of a real matrix via the complex QR path.
pub fn real_eigenvalues<T: Real>(a: &Matrix<T>) -> Result<Vec<Complex<T>>> {
    Ok(hessenberg_qr(&a.to_complex())?.values)
}

fn reduce_to_hessenberg<T: Real>(h: &mut Matrix<Complex<T>>) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == T::zero() {
            continue;
        }
        let phase = if x[0].norm() == T::zero() {
            Complex::one()
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == T::zero() {
            continue;
        }
        for e in v.iter_mut() {
            *e /= vnorm;
        }
        // H ← (I − 2vvᴴ) H
        for j in 0..n {
            let mut dot = Complex::zero();
            for (idx, i) in (k + 1..n).enumerate() {
                dot += v[idx].conj() * h[(i, j)];
            }
            let two_dot = dot * T::lit(2.0);
            for (idx, i) in (k + 1..n).enumerate() {
                let vi = v[idx];
                h[(i, j)] -= vi * two_dot;
            }
        }
        // H ← H (I − 2vvᴴ)
        for i in 0..n {
            let mut dot = Complex::zero();
            for (idx, j) in (k + 1..n).enumerate() {
                dot += h[(i, j)] * v[idx];
            }
            let two_dot = dot * T::lit(2.0);
            for (idx, j) in (k + 1..n).enumerate() {
                let vj = v[idx].conj();
                h[(i, j)] -= two_dot * vj;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex::zero();
        }
    }
}

fn wilkinson_shift<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Complex<T> {
    let half = T::lit(0.5);
    let mean = (a + d) * half;
    let diff = (a - d) * half;
    let disc = (diff * diff + b * c).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// `(c, s)` with `[c s; −s̄ c]·[a; b] = [r; 0]`, `c` real.
fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let na = a.norm();
    let nb = b.norm();
    if nb == T::zero() {
        return (T::one(), Complex::zero());
    }
    if na == T::zero() {
        return (T::zero(), b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

fn qr_step<T: Real>(h: &mut Matrix<Complex<T>>, lo: usize, hi: usize, shift: Complex<T>) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        for i in lo..=(k + 1).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Unit eigenvector of `a` for the (approximate) eigenvalue `lambda`.
pub fn inverse_iteration<T: Real>(a: &Matrix<Complex<T>>, lambda: Complex<T>) -> Result<Vec<Complex<T>>> {
    require_square(a)?;
    let n = a.nrows();
    let scale = a.max_abs().max(T::one());
    let mut delta = T::lit(1e-10) * scale;
    for _ in 0..8 {
        let mu = lambda + Complex::new(delta, T::zero());
        let shifted = Matrix::from_fn(n, n, |i, j| if i == j { a[(i, j)] - mu } else { a[(i, j)] });
        if let Ok(lu) = shifted.lu() {
            // deterministic, generic start vector
            let mut x: Vec<Complex<T>> = (0..n)
                .map(|i| Complex::new(T::one() + T::lit(0.1) * T::from_usize(i % 7), T::lit(0.01) * T::from_usize(i % 3)))
                .collect();
            for _ in 0..4 {
                let y = lu.solve(&x);
                let norm = vec_norm(&y);
                if !norm.is_finite() || norm == T::zero() {
                    break;
                }
                x = y.into_iter().map(|v| v / norm).collect();
            }
            if x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
                return Ok(x);
            }
        }
        delta *= T::lit(10.0);
    }
    Err(Error::Singular)
}

/// `exp(a)` by scaling and squaring with a [6/6] Padé approximant.
pub fn matrix_exponential<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    require_square(a)?;
    let n = a.nrows();
    let norm = a.norm_one();
    let half = S::Real::lit(0.5);
    let mut squarings = 0i32;
    if norm > half {
        squarings = (norm / half).log2().ceil().to_i32().unwrap_or(0).max(0);
    }
    let scaled = a.scale(S::from_real(S::Real::lit(2.0).powi(-squarings)));

    const Q: usize = 6;
    // c_k = (2q − k)! q! / ((2q)! k! (q − k)!)
    let mut coeffs = [S::Real::one(); Q + 1];
    for k in 1..=Q {
        let prev = coeffs[k - 1];
        coeffs[k] = prev * S::Real::from_usize(Q - k + 1)
            / (S::Real::from_usize(2 * Q - k + 1) * S::Real::from_usize(k));
    }
    let mut num = Matrix::<S>::identity(n);
    let mut den = Matrix::<S>::identity(n);
    let mut power = Matrix::<S>::identity(n);
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        power = power.matmul(&scaled);
        let term = power.scale(S::from_real(c));
        num = num.add(&term);
        den = if k % 2 == 0 { den.add(&term) } else { den.sub(&term) };
    }
    let mut result = den.lu()?.solve_matrix(&num);
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
        Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
        let m = random_matrix(rng, n);
        m.add(&m.transpose()).scale(0.5)
    }

    /// Orthogonal matrix from Gram–Schmidt on a random matrix.
    fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
        let m = random_matrix(rng, n);
        let mut cols: Vec<Vec<f64>> = Vec::new();
        for j in 0..n {
            let mut c = m.column(j);
            for q in &cols {
                let d: f64 = c.iter().zip(q).map(|(a, b)| a * b).sum();
                for (x, y) in c.iter_mut().zip(q) {
                    *x -= d * y;
                }
            }
            let nrm = vec_norm(&c);
            cols.push(c.into_iter().map(|x| x / nrm).collect());
        }
        Matrix::from_fn(n, n, |i, j| cols[j][i])
    }

    #[test]
    fn jacobi_diagonal_input() {
        let a = Matrix::from_diagonal(&[3.0, -1.0, 2.0]);
        let e = jacobi_symmetric(&a).unwrap();
        assert_eq!(e.real_values(), vec![-1.0, 2.0, 3.0]);
        let v = e.vectors.unwrap();
        assert_eq!(v.column(0), vec![0.0, 1.0, 0.0]);
        assert_eq!(e.iterations, 0);
    }

    #[test]
    fn jacobi_swap_matrix() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let e = jacobi_symmetric(&a).unwrap();
        let v: Vec<f64> = e.real_values();
        assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_rejects_asymmetric() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]);
        assert!(matches!(jacobi_symmetric(&a), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn jacobi_reconstructs_random_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_symmetric(&mut rng, 6);
        let e = jacobi_symmetric(&a).unwrap();
        let v = e.vectors.clone().unwrap();
        assert!(v.transpose().matmul(&v).max_abs_diff(&Matrix::identity(6)) < 1e-10);
        let lam = Matrix::from_diagonal(&e.real_values());
        let back = v.matmul(&lam).matmul(&v.transpose());
        assert!(back.max_abs_diff(&a) < 1e-10);
        assert!(e.residual < 1e-9);
    }

    #[test]
    fn jacobi_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_symmetric(&mut rng, 9);
        assert_eq!(jacobi_symmetric(&a).unwrap(), jacobi_symmetric(&a).unwrap());
    }

    #[test]
    fn jacobi_invariant_under_orthogonal_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3, 5, 8] {
            let a = random_symmetric(&mut rng, n);
            let q = random_orthogonal(&mut rng, n);
            let b = q.transpose().matmul(&a).matmul(&q);
            let b = b.add(&b.transpose()).scale(0.5);
            let ea = jacobi_symmetric(&a).unwrap().real_values();
            let eb = jacobi_symmetric(&b).unwrap().real_values();
            for (x, y) in ea.iter().zip(&eb) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn qr_upper_triangular() {
        let a = Matrix::from_rows(&[
            vec![1.0, 5.0, -2.0],
            vec![0.0, 3.0, 7.0],
            vec![0.0, 0.0, -4.0],
        ]);
        let v = real_eigenvalues(&a).unwrap();
        let want = [-4.0, 1.0, 3.0];
        for (z, w) in v.iter().zip(want) {
            assert!((z - Complex64::new(w, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn qr_companion_of_lambda_squared_minus_one() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let v = real_eigenvalues(&a).unwrap();
        assert!((v[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        assert!((v[1] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn qr_rotation_has_complex_pair() {
        let a = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let v = real_eigenvalues(&a).unwrap();
        assert!((v[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((v[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn qr_trace_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 5);
            let v = real_eigenvalues(&a).unwrap();
            let sum: Complex64 = v.iter().sum();
            let prod: Complex64 = v.iter().product();
            assert!((sum - Complex64::new(a.trace(), 0.0)).norm() < 1e-8);
            assert!((prod - Complex64::new(a.determinant(), 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn qr_spectrum_invariant_under_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = random_matrix(&mut rng, 6);
        // well-conditioned: identity plus a small perturbation
        let p = Matrix::<f64>::identity(6).add(&random_matrix(&mut rng, 6).scale(0.2));
        let b = p.matmul(&a).matmul(&p.lu().unwrap().solve_matrix(&Matrix::identity(6)));
        let va = real_eigenvalues(&a).unwrap();
        let vb = real_eigenvalues(&b).unwrap();
        for z in &va {
            let best = vb.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-7, "{z} unmatched");
        }
    }

    #[test]
    fn qr_matches_jacobi_on_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = random_symmetric(&mut rng, 12);
        let j = jacobi_symmetric(&a).unwrap().real_values();
        let q = real_eigenvalues(&a).unwrap();
        for (x, z) in j.iter().zip(&q) {
            assert!((z.re - x).abs() < 1e-10 && z.im.abs() < 1e-10);
        }
    }

    #[test]
    fn inverse_iteration_recovers_vector() {
        let a = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).to_complex();
        let v = inverse_iteration(&a, Complex64::new(3.0, 0.0)).unwrap();
        let ratio = v[1] / v[0];
        assert!((ratio - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn expm_of_zero_and_diagonal() {
        let z = Matrix::<Complex64>::zeros(3, 3);
        assert!(matrix_exponential(&z).unwrap().max_abs_diff(&Matrix::identity(3)) == 0.0);
        let d = [0.3, -2.0, 4.5];
        let e = matrix_exponential(&Matrix::from_diagonal(&d)).unwrap();
        for (i, x) in d.iter().enumerate() {
            assert!((e[(i, i)] - x.exp()).abs() < 1e-12 * x.exp().max(1.0));
        }
    }

    #[test]
    fn expm_of_rotation_generator() {
        let t = 2.5f64;
        let a = Matrix::from_rows(&[vec![0.0, -t], vec![t, 0.0]]);
        let e = matrix_exponential(&a).unwrap();
        let want = Matrix::from_rows(&[vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]);
        assert!(e.max_abs_diff(&want) < 1e-13);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn expm_inverse_pair(seed in 0u64..10_000, n in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Matrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let p = matrix_exponential(&a).unwrap();
            let m = matrix_exponential(&a.scale(Complex64::new(-1.0, 0.0))).unwrap();
            prop_assert!(p.matmul(&m).max_abs_diff(&Matrix::identity(n)) < 1e-9);
        }
    }
}
