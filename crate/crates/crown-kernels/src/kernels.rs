//! Invariant kernels on the sphere and on the crown: Ψ_m, Φ_m, Φ^c_m, the
//! spherical functions, canonical kernels C_λ, Q_ν and boundary values on
//! de Sitter space, plus Gram matrix diagnostics.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    classify_boundary, in_crown, in_v, on_complex_sphere, sigma_v, BoundaryClass, CPoint, DEFAULT_TOL,
};
use crate::special_functions::{gauss_2f1, log_gamma, HypParams};

/// Which side of m = ρ the mass lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// m < ρ, λ ∈ (0, ρ]
    Complementary,
    /// m ≥ ρ, λ ∈ iℝ≥0
    Principal,
}

/// Dimension n, mass m and the derived ρ = (n−1)/2 and λ with λ² = ρ² − m².
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MassParam {
    pub n: usize,
    pub m: f64,
    pub rho: f64,
    pub lambda: Complex64,
    pub regime: Regime,
}

pub fn mass_param(n: usize, m: f64) -> Result<MassParam> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !m.is_finite() || m < 0.0 {
        return Err(Error::InvalidParameter(format!("mass must be a finite non-negative number, got {m}")));
    }
    let rho = (n as f64 - 1.0) / 2.0;
    let (lambda, regime) = if m < rho {
        (Complex64::new(((rho - m) * (rho + m)).sqrt(), 0.0), Regime::Complementary)
    } else {
        (Complex64::new(0.0, ((m - rho) * (m + rho)).sqrt()), Regime::Principal)
    };
    Ok(MassParam { n, m, rho, lambda, regime })
}

impl MassParam {
    /// (ρ+λ, ρ−λ), with ρ−λ = m²/(ρ+λ) in the complementary regime to avoid cancellation.
    pub fn shifted_pair(&self) -> (Complex64, Complex64) {
        let plus = self.rho + self.lambda;
        let minus = match self.regime {
            Regime::Complementary => Complex64::new(self.m * self.m / plus.re, 0.0),
            Regime::Principal => self.rho - self.lambda,
        };
        (plus, minus)
    }

    pub fn hyp_params(&self) -> HypParams {
        let (a, b) = self.shifted_pair();
        HypParams::new(a, b, Complex64::new(self.n as f64 / 2.0, 0.0)).expect("c = n/2 is positive")
    }
}

/// γ_{n,m} = Γ(ρ+λ)Γ(ρ−λ)/Γ(n).
pub fn gamma_const(p: &MassParam) -> Result<f64> {
    if p.m == 0.0 {
        return Err(Error::Pole(0.0));
    }
    let (a, b) = p.shifted_pair();
    let l = log_gamma(a)? + log_gamma(b)? - log_gamma(Complex64::new(p.n as f64, 0.0))?;
    Ok(l.re.exp())
}

fn check_dims(p: &MassParam, z: &CPoint, w: &CPoint) -> Result<()> {
    for q in [z, w] {
        if q.n() != p.n {
            return Err(Error::DimensionMismatch { expected: p.n + 1, got: q.n() + 1 });
        }
    }
    Ok(())
}

fn hyp_at(p: &MassParam, x: Complex64) -> Result<Complex64> {
    gauss_2f1(&p.hyp_params(), x)
}

/// ₂F₁(ρ+λ, ρ−λ; n/2; ½(1 − [z, σ_V w])), the normalized kernel Φ^c_m. Φ^c_0 ≡ 1.
pub fn phi_c_kernel(p: &MassParam, z: &CPoint, w: &CPoint) -> Result<Complex64> {
    check_dims(p, z, w)?;
    if p.m == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    hyp_at(p, 0.5 * (1.0 - z.dot(&sigma_v(w))))
}

/// Ψ_m(z,w) = γ_{n,m} Φ^c_m(z,w).
pub fn psi_kernel(p: &MassParam, z: &CPoint, w: &CPoint) -> Result<Complex64> {
    let g = gamma_const(p)?;
    Ok(g * phi_c_kernel(p, z, w)?)
}

/// Φ_m(x,y) = γ_{n,m} ₂F₁(ρ+λ, ρ−λ; n/2; ½(1 + x·σ_R(y))), singular on the diagonal.
pub fn phi_kernel(p: &MassParam, x: &CPoint, y: &CPoint) -> Result<Complex64> {
    check_dims(p, x, y)?;
    let g = gamma_const(p)?;
    let pairing: Complex64 = x.coords().iter().zip(y.coords().iter()).map(|(a, b)| a * b.conj()).sum();
    let arg = 0.5 * (1.0 + pairing);
    if arg.im == 0.0 && arg.re >= 1.0 {
        return Err(Error::Domain("Φ_m is singular on the diagonal".into()));
    }
    Ok(g * hyp_at(p, arg)?)
}

/// φ_m(x) = Φ^c_m(x, e₀) for x ∈ Hⁿ_V.
pub fn spherical_function(p: &MassParam, x: &CPoint) -> Result<Complex64> {
    if !(in_v(x, DEFAULT_TOL) && on_complex_sphere(x, DEFAULT_TOL) && x.get(0).re > 0.0) {
        return Err(Error::Domain("point is not on the hyperboloid".into()));
    }
    phi_c_kernel(p, x, &CPoint::basis(p.n, 0))
}

/// The point (cos t, 0, …, 0, sin t) of Sⁿ.
pub fn meridian_point(n: usize, t: f64) -> CPoint {
    let mut x = vec![0.0; n + 1];
    x[0] = t.cos();
    x[n] = t.sin();
    CPoint::from_real(&x).expect("finite")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Trig {
    Cos,
    Sin,
}

// Σ coef · cos^i t · sin^{-j} t · trig(λ t), keyed by (i, j, trig)
type TrigForm = BTreeMap<(u32, u32, Trig), Complex64>;

fn apply_inverse_sin_derivative(f: &TrigForm, lambda: Complex64) -> TrigForm {
    let mut out = TrigForm::new();
    let mut add = |key, c: Complex64| *out.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
    for (&(i, j, trig), &c) in f {
        if i > 0 {
            add((i - 1, j, trig), -(i as f64) * c);
        }
        if j > 0 {
            add((i + 1, j + 2, trig), -(j as f64) * c);
        }
        match trig {
            Trig::Cos => add((i, j + 1, Trig::Sin), -lambda * c),
            Trig::Sin => add((i, j + 1, Trig::Cos), lambda * c),
        }
    }
    out
}

fn evaluate_trig_form(f: &TrigForm, lambda: Complex64, t: f64) -> Complex64 {
    let (s, c) = t.sin_cos();
    let lt = lambda * t;
    f.iter()
        .map(|(&(i, j, trig), &coef)| {
            let tr = match trig {
                Trig::Cos => lt.cos(),
                Trig::Sin => lt.sin(),
            };
            coef * c.powi(i as i32) * s.powi(-(j as i32)) * tr
        })
        .sum()
}

/// Elementary form of Ψ_m(x_t, e₀) for odd n = 2k+1:
/// γ (n−2)!! / ∏_{j<k}(j² − λ²) · ((1/sin t) d/dt)^k cos(λt).
pub fn odd_n_closed_form(p: &MassParam, t: f64) -> Result<Complex64> {
    if p.n.is_multiple_of(2) {
        return Err(Error::InvalidParameter("closed form needs odd n".into()));
    }
    if !(t > 0.0 && t < std::f64::consts::PI) {
        return Err(Error::Domain("t must lie in (0, π)".into()));
    }
    let k = (p.n - 1) / 2;
    let lambda = p.lambda;
    let mut denom = Complex64::new(1.0, 0.0);
    let mut double_factorial = 1.0;
    for j in 0..k {
        let factor = (j * j) as f64 - lambda * lambda;
        if factor.norm() < 1e-14 {
            return Err(Error::Domain(format!("denominator factor j = {j} vanishes")));
        }
        denom *= factor;
        double_factorial *= (2 * j + 1) as f64;
    }
    let mut form = TrigForm::new();
    form.insert((0, 0, Trig::Cos), Complex64::new(1.0, 0.0));
    for _ in 0..k {
        form = apply_inverse_sin_derivative(&form, lambda);
    }
    let g = gamma_const(p)?;
    Ok(g * double_factorial / denom * evaluate_trig_form(&form, lambda, t))
}

/// Central-difference residual of η″ + (n−1)cot(t)η′ − m²η for η(t) = Ψ_m(x_t, e₀).
pub fn radial_ode_residual(p: &MassParam, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::InvalidParameter("step must lie in (0, 1e-3]".into()));
    }
    if t < 10.0 * h || t > std::f64::consts::PI - 10.0 * h {
        return Err(Error::Domain("t is too close to the poles".into()));
    }
    let e0 = CPoint::basis(p.n, 0);
    let eta = |s: f64| psi_kernel(p, &meridian_point(p.n, s), &e0);
    let (lo, mid, hi) = (eta(t - h)?, eta(t)?, eta(t + h)?);
    let d2 = (hi - 2.0 * mid + lo) / (h * h);
    let d1 = (hi - lo) / (2.0 * h);
    let n = p.n as f64;
    Ok((d2 + (n - 1.0) / t.tan() * d1 - p.m * p.m * mid).norm())
}

/// β(z) = |z₀|² − Σ|z_j|².
pub fn beta(z: &CPoint) -> f64 {
    let c = z.coords();
    c[0].norm_sqr() - c.iter().skip(1).map(|x| x.norm_sqr()).sum::<f64>()
}

/// Membership in Ξ′ = {z ∈ Ξ : β(z) > 0}.
pub fn xi_prime_contains(z: &CPoint, tol: f64) -> bool {
    in_crown(z, tol) && beta(z) > tol
}

/// C_λ(z,w) = [z, σ_V w]^{−2λ} on Ξ′.
pub fn canonical_kernel(lambda: f64, z: &CPoint, w: &CPoint) -> Result<Complex64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InvalidParameter("λ must be positive".into()));
    }
    for q in [z, w] {
        if !xi_prime_contains(q, DEFAULT_TOL) {
            return Err(Error::Domain("point is outside Ξ′".into()));
        }
    }
    let base = z.dot(&sigma_v(w));
    Ok((-2.0 * lambda * base.ln()).exp())
}

/// Q_ν(z,w) = ((1 + [z, σ_V w])/2)^{−ν}.
pub fn q_nu_kernel(nu: f64, z: &CPoint, w: &CPoint) -> Result<Complex64> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::InvalidParameter("ν must be non-negative".into()));
    }
    let base = 0.5 * (1.0 + z.dot(&sigma_v(w)));
    if base.im == 0.0 && base.re <= 0.0 {
        return Err(Error::BranchCut(format!("Q_ν base {base}")));
    }
    if nu == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok((-nu * base.ln()).exp())
}

/// Boundary value of Φ^c_m at x ∈ dSⁿ against w ∈ Ξ: ₂F₁(…; (1 − [x, σ_V w])/2).
pub fn boundary_kernel_ds(p: &MassParam, x: &CPoint, w: &CPoint) -> Result<Complex64> {
    if classify_boundary(x, DEFAULT_TOL) != BoundaryClass::DeSitter {
        return Err(Error::Domain("first point is not in de Sitter space".into()));
    }
    if !in_crown(w, DEFAULT_TOL) {
        return Err(Error::Domain("second point is not in the crown".into()));
    }
    phi_c_kernel(p, x, w)
}

/// Mirrored boundary value at z ∈ Ξ, y ∈ dSⁿ: ₂F₁(…; (1 + [z, y])/2).
pub fn boundary_kernel_ds_mirror(p: &MassParam, z: &CPoint, y: &CPoint) -> Result<Complex64> {
    if classify_boundary(y, DEFAULT_TOL) != BoundaryClass::DeSitter {
        return Err(Error::Domain("second point is not in de Sitter space".into()));
    }
    if !in_crown(z, DEFAULT_TOL) {
        return Err(Error::Domain("first point is not in the crown".into()));
    }
    check_dims(p, z, y)?;
    if p.m == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    hyp_at(p, 0.5 * (1.0 + z.dot(y)))
}

/// A sampled Gram matrix with its smallest eigenvalue and PSD verdict.
#[derive(Clone, Debug)]
pub struct GramReport {
    pub points: Vec<CPoint>,
    pub matrix: DMatrix<Complex64>,
    pub min_eig: f64,
    pub trace: f64,
    pub psd: bool,
    pub tol: f64,
}

impl GramReport {
    /// Builds the report from a matrix that must be hermitian to 1e−12 (relative to its entries).
    pub fn from_matrix(points: Vec<CPoint>, matrix: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidParameter("Gram matrix must be square".into()));
        }
        let scale = matrix.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let defect = (&matrix - matrix.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if defect > 1e-12 * scale {
            return Err(Error::Domain(format!("kernel is not hermitian (defect {defect:e})")));
        }
        let herm = (&matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = herm.symmetric_eigenvalues();
        let min_eig = eig.iter().copied().fold(f64::INFINITY, f64::min);
        let trace = herm.diagonal().iter().map(|c| c.re).sum::<f64>();
        let psd = min_eig >= -tol * trace.max(1.0);
        Ok(Self { points, matrix, min_eig, trace, psd, tol })
    }
}

/// Gram matrix K(z_i, z_j) of a kernel on a point set.
pub fn gram_report<F>(points: &[CPoint], kernel: F, tol: f64) -> Result<GramReport>
where
    F: Fn(&CPoint, &CPoint) -> Result<Complex64>,
{
    let k = points.len();
    let mut matrix = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            matrix[(i, j)] = kernel(&points[i], &points[j])?;
        }
    }
    GramReport::from_matrix(points.to_vec(), matrix, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_action::{make_boost, random_word, sample_crown, sample_de_sitter, sample_hyperboloid};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mass_parameter_examples() {
        let p = mass_param(1, 0.7).unwrap();
        assert_eq!(p.lambda, c(0.0, 0.7));
        assert_eq!(p.regime, Regime::Principal);
        let p = mass_param(3, 1.0).unwrap();
        assert_eq!(p.lambda, c(0.0, 0.0));
        let p = mass_param(5, 1.0).unwrap();
        assert!((p.lambda - c(3f64.sqrt(), 0.0)).norm() < 1e-15);
        assert_eq!(p.regime, Regime::Complementary);
        assert!(mass_param(2, -0.1).is_err());
        for (n, m) in [(2, 0.2), (4, 1.0), (4, 3.0), (7, 0.01)] {
            let p = mass_param(n, m).unwrap();
            let l2 = p.lambda * p.lambda;
            assert!((l2 - c(p.rho * p.rho - m * m, 0.0)).norm() < 1e-14 * (1.0 + m * m));
            assert!(p.lambda.re >= 0.0 && p.lambda.re < p.rho);
        }
    }

    #[test]
    fn gamma_constant_examples() {
        for m in [0.1, 1.0, 10.0] {
            let g = gamma_const(&mass_param(1, m).unwrap()).unwrap();
            let want = PI / (m * (PI * m).sinh());
            assert!((g - want).abs() / want < 1e-12);
        }
        let g = gamma_const(&mass_param(3, 1.0).unwrap()).unwrap();
        assert!((g - 0.5).abs() < 1e-15);
        let m = 1e-3;
        let g = gamma_const(&mass_param(2, m).unwrap()).unwrap();
        assert!((m * m * g - 1.0).abs() < 1e-5);
        assert!(gamma_const(&mass_param(2, 0.0).unwrap()).is_err());
    }

    #[test]
    fn psi_on_the_circle() {
        let p = mass_param(1, 1.3).unwrap();
        let g = gamma_const(&p).unwrap();
        let e0 = CPoint::basis(1, 0);
        assert!((psi_kernel(&p, &e0, &e0).unwrap() - c(g, 0.0)).norm() < 1e-15);
        for t in [0.2, 1.0, 2.0, 3.0] {
            let v = psi_kernel(&p, &meridian_point(1, t), &e0).unwrap();
            assert!((v - c(g * (p.m * t).cosh(), 0.0)).norm() < 1e-11 * v.norm());
            let phi = phi_kernel(&p, &meridian_point(1, t), &e0).unwrap();
            let want = g * ((PI - t) * p.m).cosh();
            assert!((phi.re - want).abs() < 1e-11 * want && phi.im.abs() < 1e-12);
        }
    }

    #[test]
    fn flip_identity_on_real_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            let p = mass_param(n, 0.9).unwrap();
            for _ in 0..10 {
                let x = crate::group_action::sample_half_sphere(n, &mut rng);
                let y = crate::group_action::sample_half_sphere(n, &mut rng);
                let lhs = phi_kernel(&p, &x, &crate::geometry::reflect(&y, 0)).unwrap();
                let rhs = psi_kernel(&p, &x, &y).unwrap();
                assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
            }
            // antipodal points give the γ constant
            let x = meridian_point(n, 0.4);
            let v = phi_kernel(&p, &x, &-&x).unwrap();
            assert!((v.re - gamma_const(&p).unwrap()).abs() < 1e-14 * v.re);
            assert!(phi_kernel(&p, &x, &x).is_err());
        }
    }

    #[test]
    fn invariance_and_hermitian_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=4 {
            for m in [0.3, 1.7] {
                let p = mass_param(n, m).unwrap();
                for _ in 0..10 {
                    let z = sample_crown(n, 2.0, 1.4, &mut rng);
                    let w = sample_crown(n, 2.0, 1.4, &mut rng);
                    let g = random_word(n, 6, &mut rng);
                    let base = psi_kernel(&p, &z, &w).unwrap();
                    let moved = psi_kernel(&p, &g.act(&z).unwrap(), &g.act(&w).unwrap()).unwrap();
                    assert!((base - moved).norm() <= 1e-9 * (1.0 + base.norm()), "n={n} m={m}");
                    let swapped = psi_kernel(&p, &w, &z).unwrap();
                    assert!((base - swapped.conj()).norm() <= 1e-12 * base.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn spherical_function_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = mass_param(3, 2.0).unwrap();
        let e0 = CPoint::basis(3, 0);
        assert!((spherical_function(&p, &e0).unwrap() - 1.0).norm() < 1e-15);
        for _ in 0..10 {
            let x = sample_hyperboloid(3, 2.0, &mut rng);
            let v = spherical_function(&p, &x).unwrap();
            assert!(v.im.abs() < 1e-14);
            let t = x.get(0).re.acosh();
            let want = gauss_2f1(&p.hyp_params(), c(-(t / 2.0).sinh().powi(2), 0.0)).unwrap();
            assert!((v - want).norm() < 1e-13);
            let scaled = psi_kernel(&p, &x, &e0).unwrap() / gamma_const(&p).unwrap();
            assert!((v - scaled).norm() < 1e-13);
        }
        assert!(spherical_function(&p, &meridian_point(3, 0.5)).is_err());
    }

    #[test]
    fn odd_dimension_closed_forms() {
        let e0 = |n| CPoint::basis(n, 0);
        for n in [1usize, 3, 5, 7] {
            for m in [0.4, 2.0, 3.7] {
                let p = mass_param(n, m).unwrap();
                for t in [0.3, 1.0, 2.2, 3.0] {
                    let closed = match odd_n_closed_form(&p, t) {
                        Ok(v) => v,
                        Err(_) => continue,
                    };
                    let hyp = psi_kernel(&p, &meridian_point(n, t), &e0(n)).unwrap();
                    assert!((closed - hyp).norm() < 1e-7 * hyp.norm().max(1.0), "n={n} m={m} t={t}");
                }
            }
        }
        let p = mass_param(3, 1.0).unwrap();
        assert!(odd_n_closed_form(&p, 1.0).is_err());
        assert!(odd_n_closed_form(&mass_param(2, 1.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn printed_three_dimensional_variants() {
        // n = 3: the kernel is γ sin(λt)/(λ sin t); neither sin(mt) nor sinh(mt) with the
        // extra factor 1/2 reproduces it.
        let p = mass_param(3, 2.0).unwrap();
        let g = gamma_const(&p).unwrap();
        let t = 1.0;
        let hyp = psi_kernel(&p, &meridian_point(3, t), &CPoint::basis(3, 0)).unwrap().re;
        let nu = p.lambda.im;
        let derived = g * (nu * t).sinh() / (nu * t.sin());
        assert!((hyp - derived).abs() < 1e-12 * hyp);
        let m = p.m;
        let printed_sin = g / 2.0 * m / (m * m - 1.0) * (m * t).sin() / t.sin();
        let printed_sinh = g / 2.0 * m / (m * m - 1.0) * (m * t).sinh() / t.sin();
        assert!((hyp - printed_sin).abs() > 0.1 * hyp);
        assert!((hyp - printed_sinh).abs() > 0.1 * hyp);
    }

    #[test]
    fn radial_equation_residuals() {
        let p = mass_param(1, 0.5).unwrap();
        let r = radial_ode_residual(&p, 1.0, 1e-4).unwrap();
        assert!(r <= 1e-6 * (0.5f64).cosh());
        let r = radial_ode_residual(&mass_param(2, 1.0).unwrap(), PI / 2.0, 1e-4).unwrap();
        assert!(r <= 1e-5);
        let r = radial_ode_residual(&mass_param(3, 2.0).unwrap(), 0.3, 1e-4).unwrap();
        assert!(r <= 1e-5);
        assert!(radial_ode_residual(&p, 1e-4, 1e-4).is_err());
    }

    #[test]
    fn canonical_kernel_examples() {
        let n = 3;
        let e0 = CPoint::basis(n, 0);
        assert!((canonical_kernel(1.3, &e0, &e0).unwrap() - 1.0).norm() < 1e-15);
        let t = 0.8;
        let x = make_boost(n, t).act(&e0).unwrap();
        let v = canonical_kernel(0.7, &x, &e0).unwrap();
        assert!((v - c(t.cosh().powf(-1.4), 0.0)).norm() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let pts: Vec<CPoint> = (0..30).map(|_| sample_hyperboloid(n, 2.0, &mut rng)).collect();
        let rep = gram_report(&pts, |a, b| canonical_kernel(1.0, a, b), 1e-10).unwrap();
        assert!(rep.psd, "min eig {}", rep.min_eig);
        assert!(canonical_kernel(1.0, &CPoint::basis(n, n), &e0).is_err());
    }

    #[test]
    fn q_kernel_examples() {
        let n = 4;
        let e0 = CPoint::basis(n, 0);
        assert_eq!(q_nu_kernel(0.6, &e0, &e0).unwrap(), c(1.0, 0.0));
        let t = 1.4;
        let x = make_boost(n, t).act(&e0).unwrap();
        let v = q_nu_kernel(0.6, &x, &e0).unwrap();
        assert!((v.re - (t / 2.0).cosh().powf(-1.2)).abs() < 1e-14);
        assert!(q_nu_kernel(-1.0, &x, &e0).is_err());
    }

    #[test]
    fn de_sitter_boundary_values() {
        let n = 2;
        let p = mass_param(n, 1.0).unwrap();
        let en = CPoint::basis(n, n);
        let e0 = CPoint::basis(n, 0);
        let v = boundary_kernel_ds(&p, &en, &e0).unwrap();
        let want = gauss_2f1(&p.hyp_params(), c(0.5, 0.0)).unwrap();
        assert!((v - want).norm() < 1e-15);
        // approach along z_ε = (εe₀ + e_n)/√(1+ε²)
        for eps in [1e-3, 1e-5] {
            let z = &(&(&e0 * eps) + &en) * (1.0 / (1.0 + eps * eps).sqrt());
            let approx = phi_c_kernel(&p, &z, &e0).unwrap();
            assert!((approx - v).norm() < 10.0 * eps);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let x = sample_de_sitter(n, 2.0, &mut rng);
            let w = sample_crown(n, 2.0, 1.4, &mut rng);
            assert!(boundary_kernel_ds(&p, &x, &w).unwrap().norm().is_finite());
            let a = boundary_kernel_ds_mirror(&p, &w, &x).unwrap();
            let b = boundary_kernel_ds(&p, &x, &w).unwrap();
            assert!((a - b.conj()).norm() < 1e-10 * a.norm().max(1.0));
        }
        assert!(boundary_kernel_ds(&p, &e0, &e0).is_err());
    }

    #[test]
    fn gram_report_rejects_non_hermitian() {
        let pts = vec![CPoint::basis(1, 0), CPoint::basis(1, 1)];
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(GramReport::from_matrix(pts, m, 1e-10).is_err());
    }
}
