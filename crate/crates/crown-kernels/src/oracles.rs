//! Independent ground truth: the spherical-harmonic expansion of the resolvent
//! kernel, and a nearest-neighbour circle model with a reflection.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::CPoint;
use crate::kernels::GramReport;

/// Gegenbauer polynomial C_q^{(α)}(s) by the three-term recurrence.
pub fn gegenbauer(q: usize, alpha: f64, s: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * alpha * s);
    if q == 0 {
        return prev;
    }
    for k in 1..q {
        let kf = k as f64;
        let next = (2.0 * s * (kf + alpha) * cur - (kf + 2.0 * alpha - 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// C_q^{(α)}(s)/C_q^{(α)}(1), evaluated without forming either factor.
pub fn normalized_gegenbauer(q: usize, alpha: f64, s: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, s);
    if q == 0 {
        return prev;
    }
    for k in 1..q {
        let kf = k as f64;
        let next = (2.0 * s * (kf + alpha) * cur - kf * prev) / (kf + 2.0 * alpha);
        prev = cur;
        cur = next;
    }
    cur
}

/// dim 𝒴_q on Sⁿ: (2q+n−1)/(n−1)·binom(q+n−2, q).
pub fn harmonic_dimension(n: usize, q: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter("harmonic dimension formula needs n ≥ 2".into()));
    }
    let mut binom = 1.0;
    for k in 1..=q {
        binom *= (n - 2 + k) as f64 / k as f64;
    }
    Ok((2 * q + n - 1) as f64 / (n - 1) as f64 * binom)
}

/// Reproducing kernel of 𝒴_q for the probability measure.
pub fn zonal_projector(n: usize, q: usize, s: f64) -> Result<f64> {
    let d = harmonic_dimension(n, q)?;
    Ok(d * normalized_gegenbauer(q, (n as f64 - 1.0) / 2.0, s))
}

/// Truncated eigen-expansion of (m² − Δ)⁻¹ on Sⁿ.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSeries {
    pub n: usize,
    pub m: f64,
    pub max_degree: usize,
    /// 1/(q(q+n−1) + m²) for q = 0..=Q
    pub coefficients: Vec<f64>,
}

impl SpectralSeries {
    pub fn new(n: usize, m: f64, max_degree: usize) -> Result<Self> {
        if n < 1 || m.is_nan() || m <= 0.0 {
            return Err(Error::InvalidParameter("needs n ≥ 1 and m > 0".into()));
        }
        let coefficients = (0..=max_degree).map(|q| 1.0 / eigenvalue(n, q, m)).collect();
        Ok(Self { n, m, max_degree, coefficients })
    }

    /// Plain partial sum Σ_{q≤Q} Z_q(c)/(μ_q + m²); on the circle the Fourier pair ±q.
    pub fn partial_sum(&self, c: f64) -> Result<f64> {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for (q, coef) in self.coefficients.iter().enumerate() {
            let z = if self.n == 1 {
                if q == 0 {
                    1.0
                } else {
                    2.0 * (q as f64 * c.acos()).cos()
                }
            } else {
                zonal_projector(self.n, q, c)?
            };
            kahan_add(&mut sum, &mut comp, z * coef);
        }
        Ok(sum)
    }

    /// Σ_{q>Q} d_{q,n}/(q(q+n−1)): finite only on the circle.
    pub fn crude_tail_bound(&self) -> f64 {
        if self.n == 1 {
            2.0 / self.max_degree as f64
        } else {
            f64::INFINITY
        }
    }
}

fn eigenvalue(n: usize, q: usize, m: f64) -> f64 {
    let qf = q as f64;
    qf * (qf + n as f64 - 1.0) + m * m
}

fn kahan_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// A series value with a rigorous bound on the discarded tail.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    pub degree: usize,
}

pub const MAX_DEGREE: usize = 100_000;

/// Σ_{q≥1} Z_q(cos θ)/(q(q+n−1)), the m = 0 Green function without its constant mode.
fn massless_green(n: usize, theta: f64) -> Result<f64> {
    let (s, c) = theta.sin_cos();
    match n {
        1 => Ok(PI * PI / 3.0 - PI * theta + theta * theta / 2.0),
        2 => Ok(-1.0 - (0.5 * (1.0 - c)).ln()),
        3 => {
            let s1 = 0.5 * (PI - theta);
            let c1 = -(2.0 * (0.5 * theta).sin()).ln();
            let a = c * s1 + s * c1;
            let b = c * (s1 - s - 0.5 * (2.0 * theta).sin()) - s * (c1 - c - 0.5 * (2.0 * theta).cos());
            Ok((a + b) / (2.0 * s))
        }
        _ => Err(Error::InvalidParameter(format!("spectral oracle supports n ≤ 3, got {n}"))),
    }
}

fn remainder_tail(n: usize, m: f64, q: usize, theta: f64) -> f64 {
    let qf = q as f64;
    let m2 = m * m;
    match n {
        1 => 2.0 * m2 / (3.0 * qf.powi(3)),
        // Bernstein's bound |P_q(cos θ)| ≤ √(2/(π q sin θ))
        2 => 2.0 * m2 * (2.0 / (PI * theta.sin())).sqrt() * qf.powf(-2.5) / 2.5,
        _ => m2 / (2.0 * theta.sin() * qf * qf),
    }
}

/// Resolvent kernel at x·y = c as a spectral series, accelerated by subtracting the
/// massless kernel: Φ = 1/m² + G₀(c) − Σ_{q≥1} Z_q(c) m²/(μ_q(μ_q+m²)).
pub fn phi_series(n: usize, m: f64, c: f64, degree: usize) -> Result<SeriesValue> {
    if m.is_nan() || m <= 0.0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    if !(-1.0..1.0).contains(&c) {
        return Err(Error::Domain(format!("c = {c} must lie in [−1, 1)")));
    }
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!("degree must lie in 1..={MAX_DEGREE}")));
    }
    let theta = c.acos();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let m2 = m * m;
    let alpha = (n as f64 - 1.0) / 2.0;
    let (mut prev, mut cur) = (1.0, c);
    // binom(q+n−2, q), updated in place
    let mut binom = 1.0;
    for q in 1..=degree {
        let qf = q as f64;
        let z = match n {
            1 => 2.0 * (qf * theta).cos(),
            _ => {
                binom *= (qf + n as f64 - 2.0) / qf;
                (2.0 * qf + n as f64 - 1.0) / (n as f64 - 1.0) * binom * cur
            }
        };
        let mu = qf * (qf + n as f64 - 1.0);
        kahan_add(&mut sum, &mut comp, z * m2 / (mu * (mu + m2)));
        if n >= 2 {
            let next = (2.0 * c * (qf + alpha) * cur - qf * prev) / (qf + 2.0 * alpha);
            prev = cur;
            cur = next;
        }
    }
    let value = 1.0 / m2 + massless_green(n, theta)? - sum;
    let tail_bound = if n >= 2 && theta.sin() == 0.0 { f64::INFINITY } else { remainder_tail(n, m, degree, theta) };
    Ok(SeriesValue { value, tail_bound, degree })
}

/// Smallest power-of-two degree whose tail bound is below `tol`.
pub fn phi_series_to_tolerance(n: usize, m: f64, c: f64, tol: f64) -> Result<SeriesValue> {
    let mut degree = 64;
    loop {
        let v = phi_series(n, m, c, degree)?;
        if v.tail_bound <= tol {
            return Ok(v);
        }
        if degree == MAX_DEGREE {
            return Err(Error::NonConvergence(format!("tail bound {} at degree {MAX_DEGREE}", v.tail_bound)));
        }
        degree = (2 * degree).min(MAX_DEGREE);
    }
}

/// Nearest-neighbour discretization of the circle with its reflection t ↦ −t.
#[derive(Clone, Debug)]
pub struct CircleModel {
    pub n_points: usize,
    pub h: f64,
    pub m: f64,
    pub laplacian: DMatrix<f64>,
    pub resolvent: DMatrix<f64>,
    pub reflection: Vec<usize>,
}

pub fn build_circle_model(n_points: usize, m: f64) -> Result<CircleModel> {
    if n_points < 8 || !n_points.is_multiple_of(2) {
        return Err(Error::InvalidParameter("N must be even and at least 8".into()));
    }
    if m.is_nan() || m <= 0.0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let h = 2.0 * PI / n_points as f64;
    let laplacian = DMatrix::from_fn(n_points, n_points, |i, j| {
        let d = (i + n_points - j) % n_points;
        match d {
            0 => -2.0 / (h * h),
            1 => 1.0 / (h * h),
            _ if d == n_points - 1 => 1.0 / (h * h),
            _ => 0.0,
        }
    });
    let operator = DMatrix::from_diagonal_element(n_points, n_points, m * m) - &laplacian;
    let resolvent =
        operator.cholesky().ok_or_else(|| Error::Singular("m² − Δ_N is not positive definite".into()))?.inverse();
    let resolvent = (&resolvent + resolvent.transpose()) * 0.5;
    let reflection = (0..n_points).map(|i| (n_points - i) % n_points).collect();
    Ok(CircleModel { n_points, h, m, laplacian, resolvent, reflection })
}

impl CircleModel {
    pub fn angle(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    /// Structural invariants of the model; returns the largest violation.
    pub fn invariant_defect(&self) -> f64 {
        let n = self.n_points;
        let mut worst: f64 = 0.0;
        let scale = 1.0 / (self.h * self.h);
        for i in 0..n {
            worst = worst.max(self.laplacian.row(i).sum().abs() / scale);
            worst = worst.max(((self.reflection[self.reflection[i]] as isize) - i as isize).abs() as f64);
            for j in 0..n {
                let (ri, rj) = (self.reflection[i], self.reflection[j]);
                worst = worst.max((self.laplacian[(i, j)] - self.laplacian[(j, i)]).abs() / scale);
                worst = worst.max((self.laplacian[(ri, rj)] - self.laplacian[(i, j)]).abs() / scale);
            }
        }
        worst
    }

    fn point(&self, i: usize) -> CPoint {
        let (s, c) = self.angle(i).sin_cos();
        CPoint::from_real(&[c, s]).expect("finite")
    }

    /// Orthogonal projection onto span{δ_i : i ∈ idx} for ⟨φ,ψ⟩ = φᵀCψ.
    pub fn projection(&self, idx: &[usize]) -> Result<DMatrix<f64>> {
        let n = self.n_points;
        let b = DMatrix::from_fn(n, idx.len(), |r, c| if r == idx[c] { 1.0 } else { 0.0 });
        let gram = b.transpose() * &self.resolvent * &b;
        let chol = gram.cholesky().ok_or_else(|| Error::Singular("restricted Gram matrix".into()))?;
        let rhs = b.transpose() * &self.resolvent;
        Ok(&b * chol.solve(&rhs))
    }

    fn half_indices(&self) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        let n = self.n_points;
        if !n.is_multiple_of(4) {
            return Err(Error::InvalidParameter("N must be divisible by 4 so that 0 and π are grid points".into()));
        }
        let half = n / 2;
        let plus: Vec<usize> = (0..=half).collect();
        let mut minus: Vec<usize> = (half..n).collect();
        minus.push(0);
        Ok((plus, minus, vec![0, half]))
    }
}

/// G_ij = C(θ(i), j) on the chosen indices.
pub fn twisted_gram(model: &CircleModel, indices: &[usize]) -> Result<GramReport> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= model.n_points) {
        return Err(Error::InvalidParameter(format!("index {bad} is out of range")));
    }
    let k = indices.len();
    let matrix =
        DMatrix::from_fn(k, k, |r, c| Complex64::new(model.resolvent[(model.reflection[indices[r]], indices[c])], 0.0));
    let points = indices.iter().map(|&i| model.point(i)).collect();
    GramReport::from_matrix(points, matrix, 1e-12)
}

/// Indices with θ_i ∈ (0, π).
pub fn open_half(model: &CircleModel) -> Vec<usize> {
    (1..model.n_points / 2).collect()
}

/// ‖P₋P₊ − P₀‖ in the spectral norm.
pub fn markov_check(model: &CircleModel) -> Result<f64> {
    let (plus, minus, zero) = model.half_indices()?;
    let p_plus = model.projection(&plus)?;
    let p_minus = model.projection(&minus)?;
    let p_zero = model.projection(&zero)?;
    let diff = &p_minus * &p_plus - &p_zero;
    Ok(diff.singular_values().max())
}

/// max |⟨φ,ψ⟩ − ⟨P₀φ,P₀ψ⟩| over random unit φ ∈ E₊, ψ ∈ E₋.
pub fn interface_check<R: Rng>(model: &CircleModel, pairs: usize, rng: &mut R) -> Result<f64> {
    let (plus, minus, zero) = model.half_indices()?;
    let p_zero = model.projection(&zero)?;
    let c = &model.resolvent;
    let random_in = |idx: &[usize], rng: &mut R| {
        let mut v = DVector::zeros(model.n_points);
        for &i in idx {
            v[i] = rng.gen_range(-1.0..1.0);
        }
        let norm = (v.transpose() * c * &v)[(0, 0)].sqrt();
        v / norm
    };
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let phi = random_in(&plus, rng);
        let psi = random_in(&minus, rng);
        let direct = (phi.transpose() * c * &psi)[(0, 0)];
        let (a, b) = (&p_zero * &phi, &p_zero * &psi);
        let through = (a.transpose() * c * &b)[(0, 0)];
        worst = worst.max((direct - through).abs());
    }
    Ok(worst)
}

/// Searches for an index set straddling both halves whose twisted Gram matrix is indefinite.
pub fn two_sided_counterexample<R: Rng>(model: &CircleModel, trials: usize, rng: &mut R) -> Result<Option<GramReport>> {
    let n = model.n_points;
    for _ in 0..trials {
        let i = rng.gen_range(1..n / 2);
        let report = twisted_gram(model, &[i, model.reflection[i]])?;
        if report.min_eig < -1e-12 * report.trace {
            return Ok(Some(report));
        }
    }
    Ok(None)
}

/// One row of the discrete-to-continuum comparison.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n_points: usize,
    pub max_err: f64,
    /// log-log slope against the previous row
    pub slope: Option<f64>,
}

/// Scaled discrete Green function 2π h⁻¹ (C e₀)(θ_i).
pub fn discrete_green(model: &CircleModel) -> Vec<f64> {
    let scale = 2.0 * PI / model.h;
    model.resolvent.column(0).iter().map(|v| scale * v).collect()
}

/// γ_{1,m} cosh((π − |θ|) m).
pub fn circle_kernel(m: f64, theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    let t = t.min(2.0 * PI - t);
    PI / (m * (PI * m).sinh()) * ((PI - t) * m).cosh()
}

pub fn discrete_kernel_convergence(m: f64, sizes: &[usize]) -> Result<Vec<ConvergenceRow>> {
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("grid sizes must increase".into()));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in sizes {
        let model = build_circle_model(n, m)?;
        let green = discrete_green(&model);
        let max_err =
            green.iter().enumerate().map(|(i, g)| (g - circle_kernel(m, model.angle(i))).abs()).fold(0.0, f64::max);
        let slope = rows.last().map(|prev| -(max_err / prev.max_err).ln() / (n as f64 / prev.n_points as f64).ln());
        rows.push(ConvergenceRow { n_points: n, max_err, slope });
    }
    Ok(rows)
}

/// Least-squares log-log slope of −log(err) against log(N).
pub fn fitted_order(rows: &[ConvergenceRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| ((r.n_points as f64).ln(), r.max_err.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    -sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{mass_param, meridian_point, phi_kernel, psi_kernel};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gegenbauer_values() {
        assert_eq!(gegenbauer(0, 0.7, 0.3), 1.0);
        assert_eq!(gegenbauer(1, 1.0, 0.5), 1.0);
        assert!((gegenbauer(2, 0.5, 1.0) - 1.0).abs() < 1e-15);
        // C_2^{(α)}(s) = 2α(1+α)s² − α
        let (a, s) = (1.3, 0.4);
        assert!((gegenbauer(2, a, s) - (2.0 * a * (1.0 + a) * s * s - a)).abs() < 1e-14);
        for q in 0..30 {
            let at_one = gegenbauer(q, 1.5, 1.0);
            let ratio = gegenbauer(q, 1.5, 0.3) / at_one;
            assert!((ratio - normalized_gegenbauer(q, 1.5, 0.3)).abs() < 1e-12);
        }
    }

    #[test]
    fn zonal_projector_values() {
        for n in 2..=4 {
            assert_eq!(zonal_projector(n, 0, 0.2).unwrap(), 1.0);
            for q in 0..6 {
                let d = harmonic_dimension(n, q).unwrap();
                assert!((zonal_projector(n, q, 1.0).unwrap() - d).abs() < 1e-12 * d);
            }
        }
        assert_eq!(harmonic_dimension(2, 3).unwrap(), 7.0);
        assert_eq!(harmonic_dimension(3, 2).unwrap(), 9.0);
        assert!(zonal_projector(1, 2, 0.0).is_err());
    }

    #[test]
    fn zonal_projectors_reproduce() {
        use crate::integral_reps::sphere_rule;
        let n = 2;
        let rule = sphere_rule(n, 20).unwrap();
        let x = [0.3, -0.5, (1.0f64 - 0.34).sqrt()];
        for q in 0..4 {
            for qp in 0..4 {
                let v = rule
                    .integrate(|y| {
                        let xy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                        Complex64::new(zonal_projector(n, q, xy).unwrap() * zonal_projector(n, qp, y[0]).unwrap(), 0.0)
                    })
                    .unwrap();
                let want = if q == qp { zonal_projector(n, q, x[0]).unwrap() } else { 0.0 };
                assert!((v.re - want).abs() < 1e-8, "q={q} q'={qp}");
            }
        }
    }

    #[test]
    fn circle_series_matches_cosh() {
        let m = 1.0;
        let t = 1.0f64;
        let v = phi_series(1, m, t.cos(), 10_000).unwrap();
        let want = circle_kernel(m, t);
        assert!((v.value - want).abs() < 1e-8);
        assert!(v.tail_bound < 1e-11);
        let plain = SpectralSeries::new(1, m, 10_000).unwrap().partial_sum(t.cos()).unwrap();
        assert!((plain - want).abs() < 1e-3);
    }

    #[test]
    fn series_against_closed_form() {
        for n in [2usize, 3] {
            for m in [0.5, 1.0, 3.0] {
                let p = mass_param(n, m).unwrap();
                for c in [-0.9, -0.5, 0.0, 0.4, 0.9] {
                    let s = phi_series(n, m, c, 20_000).unwrap();
                    let mut y = vec![0.0; n + 1];
                    y[0] = c;
                    y[1] = (1.0 - c * c).sqrt();
                    let kernel = phi_kernel(&p, &CPoint::basis(n, 0), &CPoint::from_real(&y).unwrap()).unwrap();
                    assert!((s.value - kernel.re).abs() <= s.tail_bound + 1e-8, "n={n} m={m} c={c}");
                    // flip: x·r₀(y) = −c pairs with Ψ at x·y = c
                    let flip = phi_series(n, m, -c, 20_000).unwrap();
                    let psi = psi_kernel(&p, &CPoint::basis(n, 0), &CPoint::from_real(&y).unwrap()).unwrap();
                    assert!((flip.value - psi.re).abs() <= flip.tail_bound + 1e-8);
                }
            }
        }
        assert!(phi_series(4, 1.0, 0.0, 100).is_err());
    }

    #[test]
    fn small_mass_limit_of_series() {
        let m = 1e-3;
        let v = phi_series(2, m, 0.2, 1000).unwrap();
        assert!((m * m * v.value - 1.0).abs() < 1e-5);
    }

    #[test]
    fn tolerance_driven_degree() {
        let v = phi_series_to_tolerance(3, 1.0, -0.3, 1e-9).unwrap();
        assert!(v.tail_bound <= 1e-9);
        let p = mass_param(3, 1.0).unwrap();
        let t = (-0.3f64).acos();
        let k = phi_kernel(&p, &CPoint::basis(3, 0), &meridian_point(3, t)).unwrap();
        assert!((v.value - k.re).abs() < 1e-8);
    }

    #[test]
    fn circle_model_invariants() {
        let model = build_circle_model(32, 1.0).unwrap();
        assert!(model.invariant_defect() < 1e-12);
        let op = DMatrix::from_diagonal_element(32, 32, 1.0) - &model.laplacian;
        let eig = op.symmetric_eigenvalues();
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min - 1.0).abs() < 1e-10);
        let mut sorted: Vec<f64> = eig.iter().copied().collect();
        sorted.sort_by(f64::total_cmp);
        let mut want: Vec<f64> =
            (0..32).map(|k| 2.0 / (model.h * model.h) * (1.0 - (2.0 * PI * k as f64 / 32.0).cos()) + 1.0).collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in sorted.iter().zip(&want) {
            assert!((a - b).abs() < 1e-9 * b);
        }
        assert!(build_circle_model(7, 1.0).is_err());
        assert!(build_circle_model(16, 0.0).is_err());
    }

    #[test]
    fn reflection_positivity_on_the_circle() {
        for (n, m) in [(64, 1.0), (256, 0.3)] {
            let model = build_circle_model(n, m).unwrap();
            let rep = twisted_gram(&model, &open_half(&model)).unwrap();
            assert!(rep.psd, "N={n} m={m}: {}", rep.min_eig);
        }
        let model = build_circle_model(32, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let found = two_sided_counterexample(&model, 50, &mut rng).unwrap();
        assert!(found.is_some());
        assert!(twisted_gram(&model, &[40]).is_err());
    }

    #[test]
    fn markov_property() {
        for (n, m) in [(64, 1.0), (32, 2.0)] {
            let model = build_circle_model(n, m).unwrap();
            assert!(markov_check(&model).unwrap() <= 1e-10);
        }
        let model = build_circle_model(64, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        assert!(interface_check(&model, 20, &mut rng).unwrap() <= 1e-10);
        assert!(markov_check(&build_circle_model(30, 1.0).unwrap()).is_err());
    }

    #[test]
    fn discrete_green_function_converges() {
        let rows = discrete_kernel_convergence(1.0, &[64, 128, 256, 512]).unwrap();
        let last = rows.last().unwrap();
        assert!(last.max_err < 1e-3 * circle_kernel(1.0, PI));
        let order = fitted_order(&rows);
        assert!((order - 2.0).abs() <= 0.3, "order {order}");
        let model = build_circle_model(512, 1.0).unwrap();
        let green = discrete_green(&model);
        let at_pi = green[256];
        assert!((at_pi - PI / (PI).sinh()).abs() < 1e-4);
        assert!(green.iter().all(|&g| g >= at_pi - 1e-12));
    }
}
