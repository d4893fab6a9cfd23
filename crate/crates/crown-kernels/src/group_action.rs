//! The orthochronous Lorentz group O(1,n)↑, realized on ℂ^{n+1} by
//! g = ι L ι⁻¹ with ι = diag(1, i, …, i), and its action on the sphere at
//! infinity Sⁿ⁻¹ through the light cone.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::CPoint;

const I: Complex64 = Complex64::new(0.0, 1.0);
const INVARIANT_TOL: f64 = 1e-10;
const ORTHOGONALITY_TOL: f64 = 1e-12;

/// An element of O(1,n)↑ kept both as the real matrix L and as g = ι L ι⁻¹.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzElement {
    l: DMatrix<f64>,
    g: DMatrix<Complex64>,
}

/// g written as [[a, i vᵀ], [i w, A]].
#[derive(Clone, Debug, PartialEq)]
pub struct BlockView {
    pub a: f64,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub a_mat: DMatrix<f64>,
}

impl BlockView {
    pub fn to_complex(&self) -> DMatrix<Complex64> {
        let n = self.v.len();
        DMatrix::from_fn(n + 1, n + 1, |r, c| match (r, c) {
            (0, 0) => Complex64::new(self.a, 0.0),
            (0, c) => I * self.v[c - 1],
            (r, 0) => I * self.w[r - 1],
            (r, c) => Complex64::new(self.a_mat[(r - 1, c - 1)], 0.0),
        })
    }
}

fn eta(n: usize) -> DMatrix<f64> {
    let mut e = -DMatrix::identity(n + 1, n + 1);
    e[(0, 0)] = 1.0;
    e
}

fn complexify(l: &DMatrix<f64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(l.nrows(), l.ncols(), |r, c| {
        let x = l[(r, c)];
        match (r, c) {
            (0, 0) => Complex64::new(x, 0.0),
            (0, _) => -I * x,
            (_, 0) => I * x,
            _ => Complex64::new(x, 0.0),
        }
    })
}

impl LorentzElement {
    /// Wraps a real matrix, checking LᵀηL = η and L₀₀ > 0.
    pub fn new(l: DMatrix<f64>) -> Result<Self> {
        if l.nrows() != l.ncols() || l.nrows() < 2 {
            return Err(Error::InvalidParameter("Lorentz matrix must be square of size ≥ 2".into()));
        }
        let el = Self::from_real_unchecked(l);
        el.check_invariants(INVARIANT_TOL)?;
        Ok(el)
    }

    fn from_real_unchecked(l: DMatrix<f64>) -> Self {
        let g = complexify(&l);
        Self { l, g }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_real_unchecked(DMatrix::identity(n + 1, n + 1))
    }

    pub fn n(&self) -> usize {
        self.l.nrows() - 1
    }

    pub fn real_matrix(&self) -> &DMatrix<f64> {
        &self.l
    }

    pub fn complex_matrix(&self) -> &DMatrix<Complex64> {
        &self.g
    }

    /// Checks the defining identities, with the tolerance scaled by ‖L‖².
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        let n = self.n();
        let eta = eta(n);
        let scale = self.l.norm().powi(2).max(1.0);
        let defect = (self.l.transpose() * &eta * &self.l - &eta).amax();
        if defect > tol * scale {
            return Err(Error::Domain(format!("LᵀηL differs from η by {defect:e}")));
        }
        if self.l[(0, 0)] <= 0.0 {
            return Err(Error::Domain("L₀₀ must be positive".into()));
        }
        let id = DMatrix::<Complex64>::identity(n + 1, n + 1);
        let defect = (self.g.transpose() * &self.g - id).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if defect > tol * scale {
            return Err(Error::Domain(format!("gᵀg differs from the identity by {defect:e}")));
        }
        Ok(())
    }

    /// The product self · other.
    pub fn compose(&self, other: &LorentzElement) -> LorentzElement {
        assert_eq!(self.n(), other.n(), "dimension mismatch");
        Self::from_real_unchecked(&self.l * &other.l)
    }

    /// L⁻¹ = η Lᵀ η.
    pub fn inverse(&self) -> LorentzElement {
        let eta = eta(self.n());
        Self::from_real_unchecked(&eta * self.l.transpose() * &eta)
    }

    pub fn block_view(&self) -> BlockView {
        let n = self.n();
        BlockView {
            a: self.l[(0, 0)],
            v: (1..=n).map(|j| -self.l[(0, j)]).collect(),
            w: (1..=n).map(|j| self.l[(j, 0)]).collect(),
            a_mat: self.l.view((1, 1), (n, n)).into_owned(),
        }
    }

    /// g·z on ℂ^{n+1}.
    pub fn act(&self, z: &CPoint) -> Result<CPoint> {
        if z.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n() + 1, got: z.n() + 1 });
        }
        Ok(CPoint::from_vector(&self.g * z.coords()))
    }

    /// The action on Sⁿ⁻¹: returns (g.u, j(g,u)) with g ξ_u = j(g,u) ξ_{g.u}.
    pub fn boundary_action(&self, u: &[f64]) -> Result<(Vec<f64>, f64)> {
        let n = self.n();
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len() });
        }
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > ORTHOGONALITY_TOL {
            return Err(Error::Domain(format!("|u| = {norm} is not 1")));
        }
        let j = self.l[(0, 0)] + (1..=n).map(|k| self.l[(0, k)] * u[k - 1]).sum::<f64>();
        let image =
            (1..=n).map(|r| (self.l[(r, 0)] + (1..=n).map(|k| self.l[(r, k)] * u[k - 1]).sum::<f64>()) / j).collect();
        Ok((image, j))
    }

    /// The cocycle j(g,u).
    pub fn cocycle(&self, u: &[f64]) -> Result<f64> {
        self.boundary_action(u).map(|(_, j)| j)
    }

    /// j_λ(g,u) = j(g,u)^{−λ−ρ} with ρ = (n−1)/2.
    pub fn jlambda(&self, u: &[f64], lambda: Complex64) -> Result<Complex64> {
        let j = self.cocycle(u)?;
        let rho = (self.n() as f64 - 1.0) / 2.0;
        Ok((-(lambda + rho) * j.ln()).exp())
    }
}

impl Serialize for LorentzElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = self.l.row_iter().map(|r| r.iter().copied().collect()).collect();
        rows.serialize(serializer)
    }
}

/// The boost a_t in the (e₀, e_n) plane.
pub fn make_boost(n: usize, t: f64) -> LorentzElement {
    let mut l = DMatrix::identity(n + 1, n + 1);
    l[(0, 0)] = t.cosh();
    l[(n, n)] = t.cosh();
    l[(0, n)] = t.sinh();
    l[(n, 0)] = t.sinh();
    LorentzElement::from_real_unchecked(l)
}

/// The horospherical element n_v, v ∈ ℝ^{n−1}; it fixes ξ⁰.
pub fn make_horospherical(v: &[f64]) -> LorentzElement {
    let n = v.len() + 1;
    let q: f64 = v.iter().map(|x| x * x).sum();
    let mut l = DMatrix::identity(n + 1, n + 1);
    l[(0, 0)] = 1.0 + 0.5 * q;
    l[(0, n)] = -0.5 * q;
    l[(n, 0)] = 0.5 * q;
    l[(n, n)] = 1.0 - 0.5 * q;
    for (j, &x) in v.iter().enumerate() {
        l[(0, j + 1)] = x;
        l[(j + 1, 0)] = x;
        l[(j + 1, n)] = -x;
        l[(n, j + 1)] = x;
    }
    LorentzElement::from_real_unchecked(l)
}

fn check_orthogonal(k: &DMatrix<f64>) -> Result<()> {
    if k.nrows() != k.ncols() {
        return Err(Error::InvalidParameter("rotation must be square".into()));
    }
    let defect = (k.transpose() * k - DMatrix::identity(k.nrows(), k.nrows())).amax();
    if defect > ORTHOGONALITY_TOL {
        return Err(Error::Domain(format!("matrix is not orthogonal (defect {defect:e})")));
    }
    Ok(())
}

/// diag(1, k) for k ∈ O(n).
pub fn make_rotation(k: &DMatrix<f64>) -> Result<LorentzElement> {
    check_orthogonal(k)?;
    let n = k.nrows();
    let mut l = DMatrix::identity(n + 1, n + 1);
    l.view_mut((1, 1), (n, n)).copy_from(k);
    Ok(LorentzElement::from_real_unchecked(l))
}

/// diag(1, A, 1) for A ∈ O(n−1); these commute with a_t and fix ξ⁰.
pub fn make_m(a: &DMatrix<f64>) -> Result<LorentzElement> {
    check_orthogonal(a)?;
    let n = a.nrows() + 1;
    let mut l = DMatrix::identity(n + 1, n + 1);
    l.view_mut((1, 1), (n - 1, n - 1)).copy_from(a);
    Ok(LorentzElement::from_real_unchecked(l))
}

/// Rotation by `angle` in the (e_i, e_j) plane, 1 ≤ i, j ≤ n.
pub fn plane_rotation(n: usize, i: usize, j: usize, angle: f64) -> Result<LorentzElement> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidParameter(format!("bad rotation plane ({i},{j}) for n = {n}")));
    }
    let mut l = DMatrix::identity(n + 1, n + 1);
    let (s, c) = angle.sin_cos();
    l[(i, i)] = c;
    l[(j, j)] = c;
    l[(i, j)] = -s;
    l[(j, i)] = s;
    Ok(LorentzElement::from_real_unchecked(l))
}

/// Haar-distributed element of O(n) from the QR factorization of a Gaussian matrix.
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn random_rotation<R: Rng>(n: usize, rng: &mut R) -> LorentzElement {
    let k = random_orthogonal(n, rng);
    let mut l = DMatrix::identity(n + 1, n + 1);
    l.view_mut((1, 1), (n, n)).copy_from(&k);
    LorentzElement::from_real_unchecked(l)
}

/// Uniform point of Sⁿ⁻¹ ⊂ ℝⁿ.
pub fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A word of the given length in rotations, boosts |t| ≤ 2 and horospherical
/// elements ‖v‖ ≤ 2.
pub fn random_word<R: Rng>(n: usize, len: usize, rng: &mut R) -> LorentzElement {
    let mut g = LorentzElement::identity(n);
    for _ in 0..len {
        let letter = match rng.gen_range(0..3) {
            0 => random_rotation(n, rng),
            1 => make_boost(n, rng.gen_range(-2.0..2.0)),
            _ => {
                let radius = rng.gen_range(0.0..2.0);
                let v: Vec<f64> = if n > 1 {
                    random_unit_vector(n - 1, rng).into_iter().map(|x| radius * x).collect()
                } else {
                    Vec::new()
                };
                make_horospherical(&v)
            }
        };
        g = g.compose(&letter);
    }
    g
}

/// k₁ a_s k₂ with |s| ≤ max_boost.
pub fn random_cartan<R: Rng>(n: usize, max_boost: f64, rng: &mut R) -> LorentzElement {
    let s = if max_boost > 0.0 { rng.gen_range(-max_boost..max_boost) } else { 0.0 };
    random_rotation(n, rng).compose(&make_boost(n, s)).compose(&random_rotation(n, rng))
}

/// A point of Ξ: g (cos t e₀ + sin t e_n) with |t| < t_max ≤ π/2 and g of boost ≤ max_boost.
pub fn sample_crown<R: Rng>(n: usize, max_boost: f64, t_max: f64, rng: &mut R) -> CPoint {
    let t = rng.gen_range(-t_max..t_max);
    let mut x = vec![0.0; n + 1];
    x[0] = t.cos();
    x[n] = t.sin();
    let base = CPoint::from_real(&x).expect("finite");
    random_cartan(n, max_boost, rng).act(&base).expect("dimensions agree")
}

/// A point of the open upper half sphere Sⁿ₊.
pub fn sample_half_sphere<R: Rng>(n: usize, rng: &mut R) -> CPoint {
    let mut x = random_unit_vector(n + 1, rng);
    x[0] = x[0].abs().max(1e-6);
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let x: Vec<f64> = x.iter().map(|v| v / norm).collect();
    CPoint::from_real(&x).expect("finite")
}

/// A point k a_t e₀ of the hyperboloid Hⁿ_V with |t| ≤ max_t.
pub fn sample_hyperboloid<R: Rng>(n: usize, max_t: f64, rng: &mut R) -> CPoint {
    let g = random_rotation(n, rng).compose(&make_boost(n, rng.gen_range(-max_t..max_t)));
    g.act(&CPoint::basis(n, 0)).expect("dimensions agree")
}

/// A point k₁ a_s k₂ e_n of de Sitter space.
pub fn sample_de_sitter<R: Rng>(n: usize, max_boost: f64, rng: &mut R) -> CPoint {
    random_cartan(n, max_boost, rng).act(&CPoint::basis(n, n)).expect("dimensions agree")
}
