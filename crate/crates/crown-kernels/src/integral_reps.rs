//! Quadrature on low-dimensional spheres and the integral representations built
//! on it: radial integration, the light-cone integral, Poisson transform,
//! the intertwiner A_λ and the plane-wave form of Φ^c_m.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{in_crown, sigma_v, CPoint, DEFAULT_TOL};
use crate::group_action::LorentzElement;
use crate::kernels::{gamma_const, phi_c_kernel, MassParam};
use crate::special_functions::{gauss_2f1, log_gamma};

/// Probability-normalized product rule on S^d ⊂ ℝ^{d+1}.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureRule {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub exact_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(&[f64]) -> Complex64>(&self, f: F) -> Result<Complex64> {
        let terms: Vec<Complex64> = self.nodes.iter().zip(&self.weights).map(|(u, &w)| w * f(u)).collect();
        finite_sum(&terms, "sphere quadrature")
    }
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let (lo, hi) = xs.split_at(xs.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

fn finite_sum(terms: &[Complex64], what: &str) -> Result<Complex64> {
    let s = pairwise_sum(terms);
    if s.re.is_finite() && s.im.is_finite() {
        Ok(s)
    } else {
        Err(Error::NonFinite(what.into()))
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; order];
    let mut w = vec![0.0; order];
    let nf = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if order == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = weight;
        w[order - 1 - i] = weight;
    }
    (x, w)
}

fn circle_points(count: usize) -> Vec<(f64, f64)> {
    (0..count).map(|k| (2.0 * PI * k as f64 / count as f64).sin_cos()).map(|(s, c)| (c, s)).collect()
}

/// Product rule on S^d, d ∈ {0,1,2,3}; S⁰ = {±1}.
pub fn sphere_rule(d: usize, order: usize) -> Result<QuadratureRule> {
    if order < 2 {
        return Err(Error::InvalidParameter("order must be at least 2".into()));
    }
    let exact_degree = 2 * order - 1;
    let (nodes, weights): (Vec<Vec<f64>>, Vec<f64>) = match d {
        0 => (vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]),
        1 => {
            let pts = circle_points(2 * order);
            let w = 1.0 / pts.len() as f64;
            pts.into_iter().map(|(c, s)| (vec![c, s], w)).unzip()
        }
        2 => {
            let (t, wt) = gauss_legendre(order);
            let pts = circle_points(2 * order);
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for (&z, &wz) in t.iter().zip(&wt) {
                let r = (1.0 - z * z).sqrt();
                for &(c, s) in &pts {
                    nodes.push(vec![r * c, r * s, z]);
                    weights.push(0.5 * wz / pts.len() as f64);
                }
            }
            (nodes, weights)
        }
        3 => {
            // weight (1−t²)^{1/2}: Gauss–Chebyshev of the second kind
            let inner = sphere_rule(2, order)?;
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for k in 1..=order {
                let a = k as f64 * PI / (order as f64 + 1.0);
                let (t, r) = (a.cos(), a.sin());
                let wt = 2.0 / (order as f64 + 1.0) * a.sin().powi(2);
                for (u, &wu) in inner.nodes.iter().zip(&inner.weights) {
                    nodes.push(vec![r * u[0], r * u[1], r * u[2], t]);
                    weights.push(wt * wu);
                }
            }
            (nodes, weights)
        }
        _ => return Err(Error::InvalidParameter(format!("sphere rules exist for d ≤ 3, got {d}"))),
    };
    Ok(QuadratureRule { dim: d, nodes, weights, exact_degree })
}

/// Tanh-sinh nodes on [0, b]: (x, distance to 0, distance to b, weight).
fn tanh_sinh(b: f64, level: u32) -> Vec<(f64, f64, f64, f64)> {
    let h = 0.5f64.powi(level as i32);
    let kmax = (5.0 / h) as i64;
    let mut out = Vec::with_capacity(2 * kmax as usize + 1);
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let u = 0.5 * PI * t.sinh();
        let lo = b / (1.0 + (-2.0 * u).exp());
        let hi = b / (1.0 + (2.0 * u).exp());
        if lo < 1e-100 || hi < 1e-100 {
            continue;
        }
        let w = b * h * 0.5 * PI * t.cosh() / (2.0 * u.cosh().powi(2));
        out.push((lo, lo, hi, w));
    }
    out
}

/// ∫₀^π sin^{d−1}θ dθ = √π Γ(d/2)/Γ((d+1)/2).
fn polar_normalizer(d: usize) -> f64 {
    let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).expect("positive argument").re;
    PI.sqrt() * (lg(d as f64 / 2.0) - lg((d as f64 + 1.0) / 2.0)).exp()
}

/// Default stopping tolerance for adaptive refinement.
pub const REFINE_TOL: f64 = 1e-12;
const MAX_LEVEL: u32 = 8;

/// ∫₀^π f(θ) sin^{d−1}θ dθ / Z_d with tanh-sinh refinement; f gets (θ, π−θ).
fn polar_angle_integral<F>(d: usize, f: F, tol: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    let z = polar_normalizer(d);
    let mut prev: Option<Complex64> = None;
    for level in 1..=MAX_LEVEL {
        let mut terms = Vec::new();
        for (theta, _, rest, w) in tanh_sinh(PI, level) {
            let s = if theta < rest { theta.sin() } else { rest.sin() };
            terms.push(w * s.powi(d as i32 - 1) * f(theta, rest)?);
        }
        let value = finite_sum(&terms, "polar integral")? / z;
        if let Some(p) = prev {
            if (value - p).norm() <= tol * value.norm().max(1.0) {
                return Ok(value);
            }
        }
        prev = Some(value);
    }
    Err(Error::NonConvergence("polar-angle quadrature did not settle".into()))
}

/// ∫_{Sⁿ} α(x₀) dμ(x) reduced to the polar angle.
pub fn radial_integral<F: Fn(f64) -> f64>(n: usize, alpha: F) -> Result<f64> {
    try_radial_integral(n, |t| {
        let v = alpha(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("integrand at t = {t}")))
        }
    })
}

/// As [`radial_integral`] for a fallible integrand.
pub fn try_radial_integral<F: Fn(f64) -> Result<f64>>(n: usize, alpha: F) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let v = polar_angle_integral(n, |theta, _| Ok(Complex64::new(alpha(theta.cos())?, 0.0)), REFINE_TOL)?;
    Ok(v.re)
}

/// ∫_{Sⁿ} ψ_m dμ, which should equal 1/m².
pub fn l2_normalization(p: &MassParam) -> Result<f64> {
    if p.m <= 0.0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let g = gamma_const(p)?;
    let hyp = p.hyp_params();
    let v = polar_angle_integral(
        p.n,
        |theta, _| {
            // ½(1 − cos θ) without cancellation; where it rounds to 1 the weighted
            // integrand is O(θ'²) for n ≥ 2 and is dropped
            let z = (0.5 * theta).sin().powi(2);
            if z >= 1.0 && p.n >= 2 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(g * gauss_2f1(&hyp, Complex64::new(z, 0.0))?)
        },
        REFINE_TOL,
    )?;
    Ok(v.re)
}

/// Forward light cone membership: x = (x₀, i𝐱), x₀ = |𝐱| > 0.
pub fn on_light_cone(x: &CPoint, tol: f64) -> bool {
    let c = x.coords();
    let x0 = c[0];
    let scale = x0.norm().max(1.0);
    let vec_norm = c.iter().skip(1).map(|v| v.im * v.im).sum::<f64>().sqrt();
    x0.re > 0.0
        && x0.im.abs() <= tol * scale
        && c.iter().skip(1).all(|v| v.re.abs() <= tol * scale)
        && (x0.re - vec_norm).abs() <= tol * scale
}

fn cone_parts(x: &CPoint) -> Result<(f64, Vec<f64>)> {
    if !on_light_cone(x, DEFAULT_TOL) {
        return Err(Error::Domain("point is not on the forward light cone".into()));
    }
    let x0 = x.get(0).re;
    Ok((x0, x.coords().iter().skip(1).map(|v| v.im / x0).collect()))
}

/// 2^{λ+(n−3)/2}/√π · Γ(n/2)Γ(λ)/Γ(λ+ρ), equal to 1 at λ = ρ.
pub fn lightcone_constant(n: usize, lambda: Complex64) -> Result<Complex64> {
    if lambda.re <= 0.0 {
        return Err(Error::Domain("needs Re λ > 0".into()));
    }
    let rho = (n as f64 - 1.0) / 2.0;
    if lambda == Complex64::new(rho, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let nf = n as f64;
    let log = (lambda + (nf - 3.0) / 2.0) * 2f64.ln() - 0.5 * PI.ln()
        + log_gamma(Complex64::new(nf / 2.0, 0.0))?
        + log_gamma(lambda)?
        - log_gamma(lambda + rho)?;
    Ok(log.exp())
}

fn orthonormal_complement(axis: &[f64]) -> Vec<Vec<f64>> {
    let n = axis.len();
    let mut basis: Vec<Vec<f64>> = vec![axis.to_vec()];
    for k in 0..n {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.iter().map(|x| x / norm).collect());
        }
        if basis.len() == n {
            break;
        }
    }
    basis.split_off(1)
}

/// ∫_{S^{n−1}} f(u, θ) dμ(u) in polar coordinates about `axis`, θ = ∠(u, axis).
/// Integrable singularities at θ = 0 are handled by the tanh-sinh angle rule.
pub fn polar_sphere_integral<F>(axis: &[f64], f: F, inner_order: usize, tol: f64) -> Result<Complex64>
where
    F: Fn(&[f64], f64) -> Result<Complex64>,
{
    let n = axis.len();
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidParameter(format!("polar rule needs n ∈ {{2,3,4}}, got {n}")));
    }
    let d = n - 1;
    let perp = orthonormal_complement(axis);
    let inner = sphere_rule(d - 1, inner_order)?;
    polar_angle_integral(
        d,
        |theta, rest| {
            let (s, c) = (if theta < rest { theta.sin() } else { rest.sin() }, theta.cos());
            let terms = inner
                .nodes
                .iter()
                .zip(&inner.weights)
                .map(|(w, &wt)| {
                    let mut u: Vec<f64> = axis.iter().map(|a| c * a).collect();
                    for (coef, b) in w.iter().zip(&perp) {
                        u.iter_mut().zip(b).for_each(|(x, y)| *x += s * coef * y);
                    }
                    f(&u, theta).map(|v| wt * v)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(pairwise_sum(&terms))
        },
        tol,
    )
}

// x₀(1 − cos θ) written stably
fn cone_pairing(x0: f64, theta: f64) -> f64 {
    2.0 * x0 * (0.5 * theta).sin().powi(2)
}

/// ∫_{S^{n−1}} [x, ξ_u]^{λ−ρ} dμ(u) for x on the light cone.
pub fn lightcone_integral(n: usize, lambda: Complex64, x: &CPoint) -> Result<Complex64> {
    if lambda.re <= 0.0 {
        return Err(Error::Domain("the light-cone integral needs Re λ > 0".into()));
    }
    if x.n() != n {
        return Err(Error::DimensionMismatch { expected: n + 1, got: x.n() + 1 });
    }
    let (x0, axis) = cone_parts(x)?;
    let mu = lambda - (n as f64 - 1.0) / 2.0;
    polar_sphere_integral(&axis, |_, theta| Ok((mu * cone_pairing(x0, theta).ln()).exp()), 2, REFINE_TOL)
}

/// Closed form of the light-cone integral: constant · [e₀, x]^{λ−ρ}.
pub fn lightcone_closed_form(n: usize, lambda: Complex64, x: &CPoint) -> Result<Complex64> {
    let (x0, _) = cone_parts(x)?;
    let mu = lambda - (n as f64 - 1.0) / 2.0;
    Ok(lightcone_constant(n, lambda)? * (mu * x0.ln()).exp())
}

type BoundaryFn = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

/// A function on the light cone of homogeneity −λ−ρ, given by its restriction to ξ_u.
#[derive(Clone)]
pub struct BoundaryFunction {
    pub n: usize,
    pub lambda: Complex64,
    f: BoundaryFn,
}

impl std::fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundaryFunction").field("n", &self.n).field("lambda", &self.lambda).finish()
    }
}

impl BoundaryFunction {
    pub fn new<F>(n: usize, lambda: Complex64, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        Self { n, lambda, f: Arc::new(f) }
    }

    /// 𝟏_λ(ξ) = [e₀, ξ]^{−λ−ρ}.
    pub fn one(n: usize, lambda: Complex64) -> Self {
        Self::new(n, lambda, |_| Complex64::new(1.0, 0.0))
    }

    pub fn rho(&self) -> f64 {
        (self.n as f64 - 1.0) / 2.0
    }

    pub fn on_sphere(&self, u: &[f64]) -> Complex64 {
        (self.f)(u)
    }

    /// φ(x) = x₀^{−λ−ρ} φ(ξ_{𝐱/x₀}).
    pub fn on_cone(&self, x: &CPoint) -> Result<Complex64> {
        let (x0, u) = cone_parts(x)?;
        Ok((-(self.lambda + self.rho()) * x0.ln()).exp() * (self.f)(&u))
    }

    pub fn sample(&self, rule: &QuadratureRule) -> Result<BoundaryFunctionSamples> {
        if rule.dim + 1 != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: rule.dim + 1 });
        }
        let values = rule.nodes.iter().map(|u| (self.f)(u)).collect();
        Ok(BoundaryFunctionSamples { rule: rule.clone(), values, lambda: self.lambda })
    }
}

/// (π_λ(g)φ)(ξ_u) = φ(g⁻¹ξ_u) = j(g⁻¹,u)^{−λ−ρ} φ(ξ_{g⁻¹.u}).
pub fn pi_lambda(g: &LorentzElement, phi: &BoundaryFunction) -> Result<BoundaryFunction> {
    if g.n() != phi.n {
        return Err(Error::DimensionMismatch { expected: phi.n + 1, got: g.n() + 1 });
    }
    let inv = g.inverse();
    let inner = phi.clone();
    let lambda = phi.lambda;
    Ok(BoundaryFunction::new(phi.n, lambda, move |u| {
        let (image, j) = inv.boundary_action(u).expect("unit vector of matching dimension");
        let norm = image.iter().map(|x| x * x).sum::<f64>().sqrt();
        let image: Vec<f64> = image.iter().map(|x| x / norm).collect();
        (-(lambda + inner.rho()) * j.ln()).exp() * inner.on_sphere(&image)
    }))
}

/// Node values of a boundary function on a fixed rule.
#[derive(Clone, Debug)]
pub struct BoundaryFunctionSamples {
    pub rule: QuadratureRule,
    pub values: Vec<Complex64>,
    pub lambda: Complex64,
}

impl BoundaryFunctionSamples {
    pub fn new(rule: QuadratureRule, values: Vec<Complex64>, lambda: Complex64) -> Result<Self> {
        if rule.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: rule.len(), got: values.len() });
        }
        Ok(Self { rule, values, lambda })
    }
}

/// P_λ(z, ξ) = [z, ξ]^{−λ−ρ}.
pub fn poisson_kernel(p: &MassParam, z: &CPoint, xi: &CPoint) -> Result<Complex64> {
    if !in_crown(z, DEFAULT_TOL) {
        return Err(Error::Domain("z is not in the crown".into()));
    }
    if !on_light_cone(xi, DEFAULT_TOL) || xi.n() != p.n {
        return Err(Error::Domain("ξ is not on the forward light cone".into()));
    }
    let pairing = z.dot(xi);
    Ok((-(p.lambda + p.rho) * pairing.ln()).exp())
}

fn pairing_xi_u(z: &CPoint, u: &[f64]) -> Complex64 {
    let c = z.coords();
    c[0] + Complex64::i() * c.iter().skip(1).zip(u).map(|(a, &b)| a * b).sum::<Complex64>()
}

/// (𝒫_λφ)(z) = ∫ [z, ξ_u]^{−λ−ρ} φ(ξ_u) dμ(u).
pub fn poisson_transform(p: &MassParam, phi: &BoundaryFunctionSamples, z: &CPoint) -> Result<Complex64> {
    if phi.rule.dim + 1 != p.n || z.n() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n, got: phi.rule.dim + 1 });
    }
    if !in_crown(z, DEFAULT_TOL) {
        return Err(Error::Domain("z is not in the crown".into()));
    }
    let e = -(p.lambda + p.rho);
    let terms: Vec<Complex64> = phi
        .rule
        .nodes
        .iter()
        .zip(&phi.rule.weights)
        .zip(&phi.values)
        .map(|((u, &w), &v)| w * (e * pairing_xi_u(z, u).ln()).exp() * v)
        .collect();
    finite_sum(&terms, "Poisson transform")
}

/// (A_λφ)(x) = c_λ ∫ [x, ξ_u]^{λ−ρ} φ(ξ_u) dμ(u), c_λ the inverse light-cone constant.
pub fn intertwiner_a(phi: &BoundaryFunction, x: &CPoint) -> Result<Complex64> {
    let n = phi.n;
    let lambda = phi.lambda;
    if lambda.re <= 0.0 {
        return Err(Error::Domain("the intertwiner needs Re λ > 0".into()));
    }
    if x.n() != n {
        return Err(Error::DimensionMismatch { expected: n + 1, got: x.n() + 1 });
    }
    let (x0, axis) = cone_parts(x)?;
    let mu = lambda - phi.rho();
    let inner_order = if n == 2 { 2 } else { 16 };
    let integral = polar_sphere_integral(
        &axis,
        |u, theta| Ok((mu * cone_pairing(x0, theta).ln()).exp() * phi.on_sphere(u)),
        inner_order,
        1e-10,
    )?;
    Ok(integral / lightcone_constant(n, lambda)?)
}

/// Value of the plane-wave integral with its refinement history.
#[derive(Clone, Debug, Serialize)]
pub struct PlanewaveResult {
    pub value: Complex64,
    pub nodes: usize,
    pub est_error: f64,
}

pub const DEFAULT_MAX_NODES: usize = 10_000;

/// The plane-wave integrand [σ_V w, ξ_u]^{λ−ρ}[z, ξ_u]^{−λ−ρ} on a fixed rule.
pub fn planewave_on_rule(p: &MassParam, z: &CPoint, w: &CPoint, rule: &QuadratureRule) -> Result<Complex64> {
    let sw = sigma_v(w);
    let (up, down) = (p.lambda - p.rho, -(p.lambda + p.rho));
    rule.integrate(|u| (up * pairing_xi_u(&sw, u).ln() + down * pairing_xi_u(z, u).ln()).exp())
}

/// The same quantity read as ⟨P_z, P_w⟩ in H_λ.
pub fn reproducing_pairing(p: &MassParam, z: &CPoint, w: &CPoint, rule: &QuadratureRule) -> Result<Complex64> {
    let e = -(p.lambda + p.rho);
    rule.integrate(|u| {
        let pz = (e * pairing_xi_u(z, u).ln()).exp();
        // conj of [w,ξ]^{μ} is [σ_V w, ξ]^{conj μ}; on the principal series −conj(λ)−ρ = λ−ρ
        let pw = match p.regime {
            crate::kernels::Regime::Principal => (e * pairing_xi_u(w, u).ln()).exp().conj(),
            crate::kernels::Regime::Complementary => ((p.lambda - p.rho) * pairing_xi_u(&sigma_v(w), u).ln()).exp(),
        };
        pz * pw
    })
}

/// Φ^c_m(z,w) from the plane-wave integral, refining the sphere rule until successive
/// values differ by less than `tol` or `max_nodes` is exceeded.
pub fn phi_c_via_planewaves(
    p: &MassParam,
    z: &CPoint,
    w: &CPoint,
    tol: f64,
    max_nodes: usize,
) -> Result<PlanewaveResult> {
    if !(2..=4).contains(&p.n) {
        return Err(Error::InvalidParameter("plane-wave quadrature needs n ∈ {2,3,4}".into()));
    }
    if z.n() != p.n || w.n() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n + 1, got: z.n().max(w.n()) + 1 });
    }
    if !in_crown(z, DEFAULT_TOL) || !in_crown(w, DEFAULT_TOL) {
        return Err(Error::Domain("plane-wave points must lie in the crown".into()));
    }
    let d = p.n - 1;
    let mut order = 4usize;
    let mut prev: Option<Complex64> = None;
    loop {
        let rule = sphere_rule(d, order)?;
        if rule.len() > max_nodes {
            return Err(Error::NonConvergence(format!("plane-wave quadrature exceeded {max_nodes} nodes")));
        }
        let value = planewave_on_rule(p, z, w, &rule)?;
        if let Some(pv) = prev {
            let diff = (value - pv).norm();
            if diff < tol {
                return Ok(PlanewaveResult { value, nodes: rule.len(), est_error: diff });
            }
        }
        prev = Some(value);
        order = (order * 3).div_ceil(2);
    }
}

/// φ_m(a_t e₀) = ∫ (cosh t − sinh t·u_n)^{−λ−ρ} dμ(u), reduced to one variable.
pub fn spherical_function_integral(p: &MassParam, t: f64) -> Result<Complex64> {
    if p.n < 2 {
        return Err(Error::InvalidParameter("the integral form needs n ≥ 2".into()));
    }
    let e = -(p.lambda + p.rho);
    let (ch, sh) = (t.cosh(), t.sinh());
    polar_angle_integral(p.n - 1, |theta, _| Ok((e * (ch - sh * theta.cos()).ln()).exp()), REFINE_TOL)
}

/// Checks that a kernel value computed both ways agrees: ₂F₁ form against plane waves.
pub fn planewave_residual(p: &MassParam, z: &CPoint, w: &CPoint) -> Result<f64> {
    let pw = phi_c_via_planewaves(p, z, w, 1e-10, DEFAULT_MAX_NODES)?;
    Ok((pw.value - phi_c_kernel(p, z, w)?).norm())
}
