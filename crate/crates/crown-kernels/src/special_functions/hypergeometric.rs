//! Gauss hypergeometric function on ℂ∖[1,∞).
//!
//! Inside |z| ≤ 1/2 the defining series is summed directly; where the Pfaff
//! image z/(z−1) lies in that disc the Pfaff transformation is used. Every
//! other point is reached by continuing the solution of the hypergeometric
//! equation along a path that stays inside the cut plane, re-expanding in a
//! Taylor series at each step. The step is capped at half the distance to the
//! nearest singular point, so each local series converges geometrically.

use num_complex::Complex64;

use super::gamma::log_gamma;
use crate::error::{ensure_finite, Error, Result};

const MAX_TERMS: usize = 10_000;
const CUTOFF: f64 = 1e-17;
const SERIES_RADIUS: f64 = 0.5;
const STEP_FRACTION: f64 = 0.5;
const MAX_STEPS: usize = 20_000;

/// Parameters (a, b, c) of ₂F₁ with c off the non-positive integers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl HypParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        ensure_finite(a, "a")?;
        ensure_finite(b, "b")?;
        ensure_finite(c, "c")?;
        if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() {
            return Err(Error::InvalidParameter(format!("c = {} is a non-positive integer", c.re)));
        }
        Ok(Self { a, b, c })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    // fixed order of (a, b) so that swapping them is bit-for-bit invisible
    fn ordered(&self) -> (Complex64, Complex64, Complex64) {
        if (self.b.re, self.b.im) < (self.a.re, self.a.im) {
            (self.b, self.a, self.c)
        } else {
            (self.a, self.b, self.c)
        }
    }
}

/// Principal value of ₂F₁(a, b; c; z) for z ∉ [1, ∞), and at z = 1 when Re(c−a−b) > 0.
pub fn gauss_2f1(p: &HypParams, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(1.0, 0.0) && (p.c - p.a - p.b).re > 0.0 {
        return gauss_sum(p);
    }
    gauss_2f1_with_derivative(p, z).map(|(f, _)| f)
}

/// ₂F₁(a,b;c;1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)).
pub fn gauss_sum(p: &HypParams) -> Result<Complex64> {
    let s = p.c - p.a - p.b;
    if s.re <= 0.0 {
        return Err(Error::BranchCut("Gauss sum needs Re(c−a−b) > 0".into()));
    }
    let (ca, cb) = (p.c - p.a, p.c - p.b);
    let pole = |x: Complex64| x.im == 0.0 && x.re <= 0.0 && x.re == x.re.round();
    if pole(ca) || pole(cb) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((log_gamma(p.c)? + log_gamma(s)? - log_gamma(ca)? - log_gamma(cb)?).exp())
}

/// ₂F₁ together with its z-derivative.
pub fn gauss_2f1_with_derivative(p: &HypParams, z: Complex64) -> Result<(Complex64, Complex64)> {
    ensure_finite(z, "z")?;
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::BranchCut(format!("z = {}", z.re)));
    }
    let (a, b, c) = p.ordered();
    if z.norm() <= SERIES_RADIUS {
        return series(a, b, c, z);
    }
    let one = Complex64::new(1.0, 0.0);
    let w = z / (z - one);
    if w.norm() <= SERIES_RADIUS {
        // F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))
        let (g, dg) = series(a, c - b, c, w)?;
        let s = one - z;
        let pow = (-a * s.ln()).exp();
        let f = pow * g;
        let df = a * pow / s * g - pow * dg / (s * s);
        return Ok((f, df));
    }
    continue_along_path(a, b, c, z)
}

fn series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok((Complex64::new(1.0, 0.0), a * b / c));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        sum += term;
        dsum += (kf + 1.0) * term;
        if term.norm() == 0.0 {
            return Ok((sum, dsum / z));
        }
        let small = term.norm() <= CUTOFF * sum.norm() && (kf + 1.0) * term.norm() <= CUTOFF * dsum.norm();
        if small && ratio.norm() < 1.0 {
            return Ok((sum, dsum / z));
        }
    }
    Err(Error::NonConvergence(format!("2F1 series at z = {z} exceeded {MAX_TERMS} terms")))
}

fn waypoints(z: Complex64) -> Vec<Complex64> {
    if z.re > 1.0 {
        // go around the singular point on the side of z
        let s = z.im.signum();
        let height = z.im.abs().max(SERIES_RADIUS);
        vec![Complex64::new(0.0, SERIES_RADIUS * s), Complex64::new(z.re, height * s), z]
    } else {
        vec![z * (SERIES_RADIUS / z.norm()), z]
    }
}

fn continue_along_path(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let path = waypoints(z);
    let mut here = path[0];
    let (mut y, mut dy) = series(a, b, c, here)?;
    let mut steps = 0;
    for &target in &path[1..] {
        loop {
            let d = target - here;
            if d.norm() == 0.0 {
                break;
            }
            let radius = here.norm().min((1.0 - here).norm());
            let max_step = STEP_FRACTION * radius;
            let last = d.norm() <= max_step;
            let h = if last { d } else { d * (max_step / d.norm()) };
            (y, dy) = taylor_step(a, b, c, here, y, dy, h)?;
            here = if last { target } else { here + h };
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::NonConvergence(format!("2F1 continuation to z = {z} took too many steps")));
            }
        }
    }
    Ok((y, dy))
}

// Taylor expansion of the solution of z(1-z)y'' + (c-(a+b+1)z)y' - ab y = 0
// around z0 with data (y, y'), evaluated at z0 + h.
fn taylor_step(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z0: Complex64,
    y: Complex64,
    dy: Complex64,
    h: Complex64,
) -> Result<(Complex64, Complex64)> {
    let d = z0 * (1.0 - z0);
    let e = 1.0 - 2.0 * z0;
    let p0 = c - (a + b + 1.0) * z0;
    let h2 = h * h;
    let mut prev = y;
    let mut cur = dy * h;
    let mut sum = prev + cur;
    let mut dsum = cur;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let next =
            ((kf + a) * (kf + b) * prev * h2 - (kf + 1.0) * (e * kf + p0) * cur * h) / (d * (kf + 2.0) * (kf + 1.0));
        sum += next;
        dsum += (kf + 2.0) * next;
        let scale = sum.norm().max(y.norm());
        let dscale = dsum.norm().max((dy * h).norm());
        if next.norm() <= CUTOFF * scale && (kf + 2.0) * next.norm() <= CUTOFF * dscale {
            quiet += 1;
            if quiet >= 2 {
                return Ok((sum, dsum / h));
            }
        } else {
            quiet = 0;
        }
        prev = cur;
        cur = next;
    }
    Err(Error::NonConvergence(format!("Taylor step at z0 = {z0} did not converge")))
}

/// lim_{x→1⁻} ₂F₁(a,b;c;x) by extrapolating samples at 1−δ with the known
/// expansion exponents {s, 1, s+1, 2, …}, s = c−a−b.
///
/// Needs Re s > 0 and s away from an integer (no logarithmic terms).
pub fn limit_at_one(p: &HypParams) -> Result<Complex64> {
    let s = p.c - p.a - p.b;
    if s.re <= 0.0 {
        return Err(Error::Domain("the limit at 1 needs Re(c−a−b) > 0".into()));
    }
    if s.im == 0.0 && (s.re - s.re.round()).abs() < 0.05 {
        return Err(Error::InvalidParameter("c−a−b is too close to an integer".into()));
    }
    let mut exponents: Vec<Complex64> =
        (0..4).flat_map(|k| [s + k as f64, Complex64::new(k as f64 + 1.0, 0.0)]).collect();
    exponents.sort_by(|x, y| x.re.total_cmp(&y.re));
    let k = exponents.len() + 1;
    let deltas: Vec<f64> = (0..k).map(|i| 0.02 * 0.6f64.powi(i as i32)).collect();
    let mut rows = Vec::with_capacity(k * k);
    let mut rhs = Vec::with_capacity(k);
    for &d in &deltas {
        rows.push(Complex64::new(1.0, 0.0));
        rows.extend(exponents.iter().map(|&e| (e * d.ln()).exp()));
        rhs.push(gauss_2f1(p, Complex64::new(1.0 - d, 0.0))?);
    }
    let system = nalgebra::DMatrix::from_row_slice(k, k, &rows);
    let solution = system
        .lu()
        .solve(&nalgebra::DVector::from_vec(rhs))
        .ok_or_else(|| Error::Singular("extrapolation system".into()))?;
    Ok(solution[0])
}
