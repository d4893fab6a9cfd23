//! Points of ℂ^{n+1} with the complex bilinear form, the crown domain Ξ,
//! its boundary orbits, exponential maps and the Cayley transform.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::special_functions::{entire_c, entire_s};

/// Default fuzz for the geometric predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A vector (z₀, z₁, …, z_n) in ℂ^{n+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoint {
    coords: DVector<Complex64>,
}

impl CPoint {
    /// Builds a point from n+1 ≥ 2 finite coordinates.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidParameter("a point needs at least two coordinates".into()));
        }
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("point coordinate".into()));
        }
        Ok(Self { coords: DVector::from_vec(coords) })
    }

    pub fn from_real(x: &[f64]) -> Result<Self> {
        Self::new(x.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub(crate) fn from_vector(coords: DVector<Complex64>) -> Self {
        Self { coords }
    }

    /// The basis vector e_j of ℂ^{n+1}.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut coords = DVector::zeros(n + 1);
        coords[j] = Complex64::new(1.0, 0.0);
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: DVector::zeros(n + 1) }
    }

    /// ξ⁰ = e₀ + i e_n, the base point of the light cone.
    pub fn xi0(n: usize) -> Self {
        let mut p = Self::basis(n, 0);
        p.coords[n] = I;
        p
    }

    /// ξ_u = (1, i u) for u on the unit sphere of ℝⁿ.
    pub fn xi_u(u: &[f64]) -> Self {
        let mut coords = vec![Complex64::new(1.0, 0.0)];
        coords.extend(u.iter().map(|&x| Complex64::new(0.0, x)));
        Self { coords: DVector::from_vec(coords) }
    }

    /// Dimension n of the ambient sphere Sⁿ.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &DVector<Complex64> {
        &self.coords
    }

    pub fn get(&self, j: usize) -> Complex64 {
        self.coords[j]
    }

    pub fn to_vec(&self) -> Vec<Complex64> {
        self.coords.iter().copied().collect()
    }

    /// Σ z_j w_j. Panics on dimension mismatch; see [`bilinear`] for the checked form.
    pub fn dot(&self, other: &CPoint) -> Complex64 {
        assert_eq!(self.coords.len(), other.coords.len(), "dimension mismatch");
        self.coords.iter().zip(other.coords.iter()).map(|(a, b)| a * b).sum()
    }

    /// z·z, the Jordan determinant Δ(z).
    pub fn square(&self) -> Complex64 {
        self.dot(self)
    }

    /// Hermitian length (Σ|z_j|²)^{1/2}.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &CPoint) -> f64 {
        (self - other).norm()
    }

    fn same_dim(&self, other: &CPoint) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n() + 1, got: other.n() + 1 })
        }
    }
}

impl Add for &CPoint {
    type Output = CPoint;
    fn add(self, rhs: &CPoint) -> CPoint {
        CPoint { coords: &self.coords + &rhs.coords }
    }
}

impl Sub for &CPoint {
    type Output = CPoint;
    fn sub(self, rhs: &CPoint) -> CPoint {
        CPoint { coords: &self.coords - &rhs.coords }
    }
}

impl Neg for &CPoint {
    type Output = CPoint;
    fn neg(self) -> CPoint {
        CPoint { coords: -&self.coords }
    }
}

impl Mul<Complex64> for &CPoint {
    type Output = CPoint;
    fn mul(self, s: Complex64) -> CPoint {
        CPoint { coords: &self.coords * s }
    }
}

impl Mul<f64> for &CPoint {
    type Output = CPoint;
    fn mul(self, s: f64) -> CPoint {
        self * Complex64::new(s, 0.0)
    }
}

impl Serialize for CPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coords.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        CPoint::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect()).map_err(serde::de::Error::custom)
    }
}

/// The complex bilinear form Σ z_j w_j; on V it is the Lorentzian form [·,·].
pub fn bilinear(z: &CPoint, w: &CPoint) -> Result<Complex64> {
    z.same_dim(w)?;
    Ok(z.dot(w))
}

/// Complex conjugation, fixing ℝ^{n+1}.
pub fn sigma_r(z: &CPoint) -> CPoint {
    CPoint { coords: z.coords.map(|c| c.conj()) }
}

/// The conjugation (z₀, 𝐳) ↦ (z̄₀, −𝐳̄) fixing V = ℝe₀ ⊕ iℝⁿ.
pub fn sigma_v(z: &CPoint) -> CPoint {
    let mut coords = z.coords.map(|c| -c.conj());
    coords[0] = z.coords[0].conj();
    CPoint { coords }
}

/// Reflection r_j(z) = z − 2 z_j e_j.
pub fn reflect(z: &CPoint, j: usize) -> CPoint {
    let mut out = z.clone();
    out.coords[j] = -out.coords[j];
    out
}

/// The flip α(z₀, 𝐳) = (z₀, −𝐳).
pub fn alpha(z: &CPoint) -> CPoint {
    reflect(&-z, 0)
}

/// z = u + i v with u, v ∈ V.
#[derive(Clone, Debug, PartialEq)]
pub struct VDecomposition {
    pub u: CPoint,
    pub v: CPoint,
}

pub fn v_decompose(z: &CPoint) -> VDecomposition {
    let mut u = z.coords.map(|c| Complex64::new(0.0, c.im));
    let mut v = z.coords.map(|c| Complex64::new(0.0, -c.re));
    u[0] = Complex64::new(z.coords[0].re, 0.0);
    v[0] = Complex64::new(z.coords[0].im, 0.0);
    VDecomposition { u: CPoint { coords: u }, v: CPoint { coords: v } }
}

/// Membership in V: real 0th coordinate, purely imaginary others.
pub fn in_v(z: &CPoint, tol: f64) -> bool {
    z.coords[0].im.abs() <= tol && z.coords.iter().skip(1).all(|c| c.re.abs() <= tol)
}

/// |z·z − 1| ≤ tol.
pub fn on_complex_sphere(z: &CPoint, tol: f64) -> bool {
    (z.square() - 1.0).norm() <= tol
}

/// The tube V₊ + iV: the V-part u = (Re z₀, i Im 𝐳) is forward timelike.
pub fn in_tube(z: &CPoint, tol: f64) -> bool {
    let re0 = z.coords[0].re;
    let spatial: f64 = z.coords.iter().skip(1).map(|c| c.im * c.im).sum();
    re0 > 0.0 && re0 * re0 - spatial > tol
}

/// Membership in the crown Ξ = (V₊ + iV) ∩ Sⁿ_ℂ.
pub fn in_crown(z: &CPoint, tol: f64) -> bool {
    on_complex_sphere(z, tol) && in_tube(z, tol)
}

/// Which boundary orbit of Ξ a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryClass {
    DeSitter,
    LightRayOrbit,
    NotBoundary,
}

pub fn classify_boundary(z: &CPoint, tol: f64) -> BoundaryClass {
    if !on_complex_sphere(z, tol) {
        return BoundaryClass::NotBoundary;
    }
    let VDecomposition { u, v } = v_decompose(z);
    let boundary = u.square().norm() <= tol
        && u.coords[0].re >= -tol
        && (v.square() + 1.0).norm() <= tol
        && u.dot(&v).norm() <= tol;
    if !boundary {
        BoundaryClass::NotBoundary
    } else if u.norm() <= tol {
        BoundaryClass::DeSitter
    } else {
        BoundaryClass::LightRayOrbit
    }
}

const TANGENCY_TOL: f64 = 1e-10;

/// Exp_p(v) = C(v²) p + S(v²) v on the complex sphere.
pub fn exp_point(p: &CPoint, v: &CPoint) -> Result<CPoint> {
    p.same_dim(v)?;
    if !on_complex_sphere(p, TANGENCY_TOL) {
        return Err(Error::Domain("base point is not on the complex sphere".into()));
    }
    if p.dot(v).norm() > TANGENCY_TOL {
        return Err(Error::Domain("vector is not tangent at the base point".into()));
    }
    let s = v.square();
    Ok(&(p * entire_c(s)) + &(v * entire_s(s)))
}

/// Exp_{e_n}(v) for v ∈ ℝ₊e₀ ⊕ iℝ^{n−1} with 0 < [v,v] < π², a point of Ξ.
pub fn crown_from_de_sitter(v: &CPoint) -> Result<CPoint> {
    let n = v.n();
    let tol = 1e-12;
    let cone = v.coords[0].im.abs() <= tol
        && v.coords[0].re > 0.0
        && v.coords.iter().skip(1).take(n - 1).all(|c| c.re.abs() <= tol)
        && v.coords[n].norm() <= tol;
    let q = v.square();
    if !cone || q.im.abs() > tol || q.re <= 0.0 || q.re >= std::f64::consts::PI.powi(2) {
        return Err(Error::Domain("vector is outside the cone of admissible directions".into()));
    }
    exp_point(&CPoint::basis(n, n), v)
}

/// Ray inversion r(z) = z / (z·z).
pub fn ray_inversion(z: &CPoint) -> Result<CPoint> {
    let d = z.square();
    if d.norm() == 0.0 {
        return Err(Error::Singular("z·z = 0".into()));
    }
    Ok(z * (1.0 / d))
}

/// (t, 𝐳)(t', 𝐳') = (tt' − 𝐳·𝐳', t𝐳' + t'𝐳), unit e₀.
pub fn jordan_product(x: &CPoint, y: &CPoint) -> Result<CPoint> {
    x.same_dim(y)?;
    let (t, s) = (x.coords[0], y.coords[0]);
    let mut coords = &y.coords * t + &x.coords * s;
    let spatial: Complex64 = x.coords.iter().zip(y.coords.iter()).skip(1).map(|(a, b)| a * b).sum();
    coords[0] = t * s - spatial;
    Ok(CPoint { coords })
}

/// x⁻¹ = Δ(x)⁻¹ (x₀, −𝐱).
pub fn jordan_inverse(x: &CPoint) -> Result<CPoint> {
    let d = x.square();
    if d.norm() < 1e-300 {
        return Err(Error::Singular("Δ(x) = 0".into()));
    }
    Ok(&alpha(x) * (1.0 / d))
}

/// Cayley transform (z − e)(z + e)⁻¹.
pub fn cayley(z: &CPoint) -> Result<CPoint> {
    let e = CPoint::basis(z.n(), 0);
    let inv = jordan_inverse(&(z + &e))?;
    jordan_product(&(z - &e), &inv)
}

/// Lie-ball gauge ‖u‖² + ‖v‖² + 2(‖u‖²‖v‖² − (u·v)²)^{1/2} of w = u + iv ∈ ℂⁿ.
pub fn lie_ball_gauge(w: &[Complex64]) -> f64 {
    let uu: f64 = w.iter().map(|c| c.re * c.re).sum();
    let vv: f64 = w.iter().map(|c| c.im * c.im).sum();
    let uv: f64 = w.iter().map(|c| c.re * c.im).sum();
    uu + vv + 2.0 * (uu * vv - uv * uv).max(0.0).sqrt()
}

/// Whether (w₀, 𝐰) has w₀ = 0 and 𝐰 in the open Lie ball, both up to tol.
pub fn lie_ball_contains(w: &CPoint, tol: f64) -> bool {
    let spatial: Vec<Complex64> = w.coords.iter().skip(1).copied().collect();
    w.coords[0].norm() <= tol && lie_ball_gauge(&spatial) < 1.0 - tol
}

/// ζ(z) = (½(z + 1/z), (z − 1/z)/(2i)), a bijection ℂ^× → S¹_ℂ.
pub fn zeta_map(z: Complex64) -> Result<CPoint> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("zeta is undefined at 0".into()));
    }
    let inv = 1.0 / z;
    CPoint::new(vec![0.5 * (z + inv), (z - inv) / (2.0 * I)])
}

/// ζ⁻¹(z₀, z₁) = z₀ + i z₁.
pub fn zeta_inverse(p: &CPoint) -> Result<Complex64> {
    if p.n() != 1 {
        return Err(Error::DimensionMismatch { expected: 2, got: p.n() + 1 });
    }
    Ok(p.coords[0] + I * p.coords[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &CPoint, b: &CPoint, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    #[test]
    fn bilinear_examples() {
        let n = 3;
        let e0 = CPoint::basis(n, 0);
        assert_eq!(bilinear(&e0, &e0).unwrap(), c(1.0, 0.0));
        assert_eq!(bilinear(&CPoint::xi0(n), &CPoint::xi0(n)).unwrap(), c(0.0, 0.0));
        assert_eq!(bilinear(&e0, &CPoint::basis(n, n)).unwrap(), c(0.0, 0.0));
        assert!(bilinear(&e0, &CPoint::basis(2, 0)).is_err());
    }

    #[test]
    fn conjugations() {
        let n = 2;
        let e0 = CPoint::basis(n, 0);
        assert_eq!(sigma_v(&e0), e0);
        let ie1 = &CPoint::basis(n, 1) * I;
        assert_eq!(sigma_v(&ie1), ie1);
        let z = CPoint::new(vec![c(0.3, -1.2), c(2.0, 0.5), c(-0.7, 0.1)]).unwrap();
        let lhs = sigma_r(&sigma_v(&z));
        let rhs = -&reflect(&z, 0);
        assert!(close(&lhs, &rhs, 0.0));
        assert_eq!(sigma_v(&sigma_v(&z)), z);
    }

    #[test]
    fn v_decomposition_examples() {
        let n = 2;
        let d = v_decompose(&CPoint::basis(n, 0));
        assert_eq!(d.u, CPoint::basis(n, 0));
        assert_eq!(d.v, CPoint::zero(n));
        let ien = &CPoint::basis(n, n) * I;
        let d = v_decompose(&ien);
        assert_eq!(d.u, ien);
        assert_eq!(d.v, CPoint::zero(n));
        let z = CPoint::new(vec![c(0.3, -1.2), c(2.0, 0.5), c(-0.7, 0.1)]).unwrap();
        let d = v_decompose(&z);
        assert_eq!(&d.u + &(&d.v * I), z);
        assert!(in_v(&d.u, 0.0) && in_v(&d.v, 0.0));
    }

    #[test]
    fn crown_membership_examples() {
        let n = 3;
        assert!(in_crown(&CPoint::basis(n, 0), DEFAULT_TOL));
        for t in [-1.5f64, -0.3, 0.0, 0.9, 1.5] {
            let mut x = CPoint::basis(n, 0);
            x = &(&x * t.cos()) + &(&CPoint::basis(n, n) * t.sin());
            assert!(in_crown(&x, DEFAULT_TOL));
        }
        assert!(!in_crown(&CPoint::basis(n, n), DEFAULT_TOL));
        assert!(!in_crown(&-&CPoint::basis(n, 0), DEFAULT_TOL));
    }

    #[test]
    fn boundary_examples() {
        let n = 3;
        assert_eq!(classify_boundary(&CPoint::basis(n, n), DEFAULT_TOL), BoundaryClass::DeSitter);
        let p = &CPoint::xi0(n) + &CPoint::basis(n, n - 1);
        assert_eq!(classify_boundary(&p, DEFAULT_TOL), BoundaryClass::LightRayOrbit);
        assert_eq!(classify_boundary(&CPoint::basis(n, 0), DEFAULT_TOL), BoundaryClass::NotBoundary);
        // points off the complex sphere are never boundary points
        assert_eq!(classify_boundary(&(&CPoint::basis(n, n) * 1.1), DEFAULT_TOL), BoundaryClass::NotBoundary);
    }

    #[test]
    fn exponential_map_examples() {
        let n = 2;
        let e0 = CPoint::basis(n, 0);
        let en = CPoint::basis(n, n);
        let x = exp_point(&e0, &(&en * (PI / 2.0))).unwrap();
        assert!(close(&x, &en, 1e-15));
        assert_eq!(exp_point(&e0, &CPoint::zero(n)).unwrap(), e0);
        let t = 0.8;
        let x = exp_point(&e0, &(&en * c(0.0, t))).unwrap();
        let want = CPoint::new(vec![c(t.cosh(), 0.0), c(0.0, 0.0), c(0.0, t.sinh())]).unwrap();
        assert!(close(&x, &want, 1e-14));
        assert!(exp_point(&e0, &e0).is_err());
    }

    #[test]
    fn de_sitter_exponential() {
        let n = 3;
        let v = &CPoint::basis(n, 0) * (PI / 2.0);
        let x = crown_from_de_sitter(&v).unwrap();
        assert!(close(&x, &CPoint::basis(n, 0), 1e-15));
        let v = &CPoint::basis(n, 0) * (PI - 1e-6);
        assert!(in_crown(&crown_from_de_sitter(&v).unwrap(), 1e-13));
        assert!(crown_from_de_sitter(&CPoint::zero(n)).is_err());
        let limit = exp_point(&CPoint::basis(n, n), &CPoint::zero(n)).unwrap();
        assert!(!in_crown(&limit, 1e-8));
        // a direction with an imaginary spatial part
        let v = CPoint::new(vec![c(1.2, 0.0), c(0.0, 0.5), c(0.0, -0.3), c(0.0, 0.0)]).unwrap();
        assert!(in_crown(&crown_from_de_sitter(&v).unwrap(), DEFAULT_TOL));
        let bad = CPoint::new(vec![c(1.2, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(crown_from_de_sitter(&bad).is_err());
    }

    #[test]
    fn ray_inversion_examples() {
        let n = 2;
        let z = &CPoint::basis(n, 0) * 2.0;
        assert!(close(&ray_inversion(&z).unwrap(), &(&CPoint::basis(n, 0) * 0.5), 1e-16));
        let w = CPoint::new(vec![c(1.3, 0.2), c(0.4, -0.7), c(-0.2, 0.5)]).unwrap();
        assert!(close(&ray_inversion(&ray_inversion(&w).unwrap()).unwrap(), &w, 1e-14));
        assert!(ray_inversion(&CPoint::xi0(n)).is_err());
    }

    #[test]
    fn jordan_algebra() {
        let n = 3;
        let e = CPoint::basis(n, 0);
        assert_eq!(jordan_inverse(&e).unwrap(), e);
        assert_eq!(cayley(&e).unwrap(), CPoint::zero(n));
        let x = CPoint::new(vec![c(0.3, 1.0), c(-0.4, 0.2), c(1.1, -0.6), c(0.2, 0.9)]).unwrap();
        let p = jordan_product(&x, &jordan_inverse(&x).unwrap()).unwrap();
        assert!(close(&p, &e, 1e-13));
        assert_eq!(jordan_product(&x, &e).unwrap(), x);
    }

    #[test]
    fn cayley_of_ray_inversion() {
        let z = CPoint::new(vec![c(0.3, 1.0), c(-0.4, 0.2), c(1.1, -0.6)]).unwrap();
        let lhs = cayley(&ray_inversion(&z).unwrap()).unwrap();
        let rhs = -&alpha(&cayley(&z).unwrap());
        assert!(close(&lhs, &rhs, 1e-13));
        // the identity with α applied to z itself already fails at z = 2e₀
        let z = &CPoint::basis(2, 0) * 2.0;
        let lhs = cayley(&ray_inversion(&z).unwrap()).unwrap();
        assert!(lhs.distance(&-&alpha(&z)) > 1.0);
    }

    #[test]
    fn lie_ball_gauge_examples() {
        let real = [c(0.6, 0.0), c(0.0, 0.0)];
        assert!((lie_ball_gauge(&real) - 0.36).abs() < 1e-15);
        // isotropic directions reach the boundary at radius 1/√2
        let s = 0.5f64.sqrt();
        let iso = [c(s * s, 0.0), c(0.0, s * s)];
        assert!((lie_ball_gauge(&iso) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_examples() {
        assert!(close(&zeta_map(c(1.0, 0.0)).unwrap(), &CPoint::basis(1, 0), 1e-16));
        assert!(close(&zeta_map(c(0.0, 1.0)).unwrap(), &CPoint::basis(1, 1), 1e-16));
        assert!(zeta_map(c(0.0, 0.0)).is_err());
        let z = c(0.4, 1.3);
        assert!((zeta_inverse(&zeta_map(z).unwrap()).unwrap() - z).norm() < 1e-15);
        let w = c(-0.7, 0.2);
        let lhs = zeta_map(z).unwrap().dot(&sigma_v(&zeta_map(w).unwrap()));
        let wb = w.conj();
        let rhs = 0.5 * (z / wb + wb / z);
        assert!((lhs - rhs).norm() < 1e-14);
        // r₀ ↔ −1/z and r₁ ↔ 1/z
        let p = zeta_map(z).unwrap();
        assert!(close(&reflect(&p, 0), &zeta_map(-1.0 / z).unwrap(), 1e-14));
        assert!(close(&reflect(&p, 1), &zeta_map(1.0 / z).unwrap(), 1e-14));
        assert!(in_crown(&p, DEFAULT_TOL));
        assert!(in_crown(&zeta_map(z.conj()).unwrap(), DEFAULT_TOL));
        assert!(!in_crown(&zeta_map(-z.conj()).unwrap(), DEFAULT_TOL));
    }
}
