use clap::{Args, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crown_kernels::geometry::{
    cayley, classify_boundary, in_crown, in_tube, on_complex_sphere, BoundaryClass, CPoint, DEFAULT_TOL,
};
use crown_kernels::group_action::{make_boost, sample_crown};
use crown_kernels::integral_reps::{phi_c_via_planewaves, DEFAULT_MAX_NODES};
use crown_kernels::kernels::{
    beta, mass_param, meridian_point, phi_c_kernel, phi_kernel, psi_kernel, spherical_function, MassParam, Regime,
};
use crown_kernels::oracles::{discrete_kernel_convergence, fitted_order, phi_series_to_tolerance};
use crown_kernels::verify::{run_suite, search_q_witness, suite_names, SuiteConfig};
use crown_kernels::Complex64;

use crate::output::Table;
use crate::parse::{self, format_point, ParseError};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    /// Ψ_m(z,w), the crown kernel
    Psi,
    /// Φ_m(x,y), the sphere resolvent kernel
    Phi,
    /// Φ^c_m(z,w), its holomorphic extension
    PhiC,
    /// φ_m(x) = Φ^c_m(x, e0) on the hyperboloid
    Spherical,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: f64,
    /// Angle on the meridian through e0 and en (hyperbolic distance for `spherical`)
    #[arg(long, conflicts_with_all = ["z", "w"])]
    pub t: Option<f64>,
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long, value_enum, default_value_t = KernelKind::Psi)]
    pub kernel: KernelKind,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: usize,
    /// Mass grid `a:step:b` or a single value
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub t: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name or `all`
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Print the suite names and exit
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct PlanewaveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: f64,
    #[arg(long, default_value = "e0")]
    pub z: String,
    #[arg(long, default_value = "e0")]
    pub w: String,
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    pub max_nodes: usize,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Spectral series for Φ_m at x·y = c, against the closed form
    Series {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: f64,
        /// Values of c, `a:step:b` or a single value in [−1, 1)
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Convergence of the discrete circle Green function
    Circle {
        /// Grid sizes, comma-separated and increasing
        #[arg(long = "N", default_value = "64,128,256,512")]
        sizes: String,
        #[arg(long)]
        m: f64,
    },
    /// Seeded search for an indefinite Gram matrix of Q_ν
    QWitness {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.25)]
        nu: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
pub struct GeometryArgs {
    #[arg(long)]
    pub n: usize,
    /// Point to classify
    #[arg(long, conflicts_with = "sample")]
    pub z: Option<String>,
    /// Number of seeded crown samples to classify instead
    #[arg(long)]
    pub sample: Option<usize>,
    /// Group word applied to each point
    #[arg(long, default_value = "")]
    pub word: String,
}

pub struct Globals {
    pub seed: u64,
    pub tol: Option<f64>,
}

impl Globals {
    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

pub struct Outcome {
    pub table: Table,
    pub failed: bool,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self { table, failed: false }
    }
}

fn param(n: usize, m: f64) -> Result<MassParam, CliError> {
    if n == 0 {
        return Err(ParseError("--n must be at least 1".into()).into());
    }
    if !(m.is_finite() && m >= 0.0) {
        return Err(ParseError("--m must be a finite number ≥ 0".into()).into());
    }
    Ok(mass_param(n, m)?)
}

fn regime_name(p: &MassParam) -> &'static str {
    match p.regime {
        Regime::Complementary => "complementary",
        Regime::Principal => "principal",
    }
}

fn kernel_value(kind: KernelKind, p: &MassParam, z: &CPoint, w: &CPoint) -> crown_kernels::Result<Complex64> {
    match kind {
        KernelKind::Psi => psi_kernel(p, z, w),
        KernelKind::Phi => phi_kernel(p, z, w),
        KernelKind::PhiC => phi_c_kernel(p, z, w),
        KernelKind::Spherical => spherical_function(p, z),
    }
}

pub fn eval(a: &EvalArgs) -> Result<Outcome, CliError> {
    let p = param(a.n, a.m)?;
    let (z, w) = match (a.t, &a.z, &a.w, a.kernel) {
        (Some(t), _, _, KernelKind::Spherical) => {
            (make_boost(a.n, t).act(&CPoint::basis(a.n, 0))?, CPoint::basis(a.n, 0))
        }
        (Some(t), _, _, _) => (meridian_point(a.n, t), CPoint::basis(a.n, 0)),
        (None, Some(z), _, KernelKind::Spherical) => (parse::point(z, a.n)?, CPoint::basis(a.n, 0)),
        (None, Some(z), Some(w), _) => (parse::point(z, a.n)?, parse::point(w, a.n)?),
        _ => return Err(ParseError("eval needs --t, or --z and --w".into()).into()),
    };
    let value = kernel_value(a.kernel, &p, &z, &w)?;
    let mut table =
        Table::new(&["n", "m", "lambda_re", "lambda_im", "regime", "kernel", "z", "w", "value_re", "value_im"]);
    let kernel = a.kernel.to_possible_value().expect("named variant").get_name().to_string();
    table.push(vec![
        a.n.into(),
        a.m.into(),
        p.lambda.re.into(),
        p.lambda.im.into(),
        regime_name(&p).into(),
        kernel.into(),
        format_point(&z).into(),
        format_point(&w).into(),
        value.re.into(),
        value.im.into(),
    ]);
    Ok(table.into())
}

pub fn sweep(a: &SweepArgs) -> Result<Outcome, CliError> {
    let masses = parse::range(&a.m)?;
    let params = masses.iter().map(|&m| param(a.n, m)).collect::<Result<Vec<_>, _>>()?;
    let x = meridian_point(a.n, a.t);
    let e0 = CPoint::basis(a.n, 0);
    // collect keeps grid order, so the output does not depend on scheduling
    let values: Vec<crown_kernels::Result<Complex64>> = params.par_iter().map(|p| psi_kernel(p, &x, &e0)).collect();
    let mut table = Table::new(&["n", "m", "lambda_re", "lambda_im", "psi_re", "psi_im"]);
    for (p, v) in params.iter().zip(values) {
        let v = v.map_err(|e| CliError::Numeric(format!("m = {}: {e}", p.m)))?;
        table.push(vec![a.n.into(), p.m.into(), p.lambda.re.into(), p.lambda.im.into(), v.re.into(), v.im.into()]);
    }
    Ok(table.into())
}

pub fn verify(a: &VerifyArgs, g: &Globals) -> Result<Outcome, CliError> {
    let names = suite_names();
    if a.list {
        let mut table = Table::new(&["suite"]);
        for name in names {
            table.push(vec![name.into()]);
        }
        return Ok(table.into());
    }
    let selected: Vec<&str> = if a.suite == "all" {
        names
    } else if names.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(ParseError(format!("unknown suite {:?}; try --list", a.suite)).into());
    };
    let cfg = SuiteConfig { seed: g.seed };
    let mut table = Table::new(&["suite", "criterion", "check", "kind", "expected", "got", "tol", "pass", "note"]);
    let mut failed = false;
    for name in selected {
        let report = run_suite(name, &cfg)?;
        eprintln!(
            "{} criterion {} ({}): {}",
            if report.passed() { "PASS" } else { "FAIL" },
            report.criterion,
            report.suite,
            report.title
        );
        failed |= !report.passed();
        for c in &report.checks {
            let kind = format!("{:?}", c.kind).to_lowercase();
            table.push(vec![
                report.suite.clone().into(),
                (report.criterion as usize).into(),
                c.name.clone().into(),
                kind.into(),
                c.expected.into(),
                c.got.into(),
                c.tol.into(),
                c.pass.into(),
                c.note.clone().into(),
            ]);
        }
    }
    Ok(Outcome { table, failed })
}

pub fn planewave(a: &PlanewaveArgs, g: &Globals) -> Result<Outcome, CliError> {
    let p = param(a.n, a.m)?;
    let tol = g.tol_or(1e-9);
    let z = parse::point(&a.z, a.n)?;
    let w = parse::point(&a.w, a.n)?;
    let pw = phi_c_via_planewaves(&p, &z, &w, tol, a.max_nodes)?;
    let closed = phi_c_kernel(&p, &z, &w)?;
    let mut table =
        Table::new(&["n", "m", "value_re", "value_im", "nodes", "est_error", "closed_re", "closed_im", "abs_diff"]);
    table.push(vec![
        a.n.into(),
        a.m.into(),
        pw.value.re.into(),
        pw.value.im.into(),
        pw.nodes.into(),
        pw.est_error.into(),
        closed.re.into(),
        closed.im.into(),
        (pw.value - closed).norm().into(),
    ]);
    Ok(table.into())
}

pub fn oracle(cmd: &OracleCommand, g: &Globals) -> Result<Outcome, CliError> {
    match cmd {
        OracleCommand::Series { n, m, c } => {
            let p = param(*n, *m)?;
            let tol = g.tol_or(1e-10);
            let mut table = Table::new(&["n", "m", "c", "series", "tail_bound", "degree", "kernel", "abs_diff"]);
            for c in parse::range(c)? {
                let s = phi_series_to_tolerance(*n, *m, c, tol)?;
                let kernel = phi_kernel(&p, &CPoint::basis(*n, 0), &meridian_point(*n, c.acos()))?.re;
                table.push(vec![
                    (*n).into(),
                    (*m).into(),
                    c.into(),
                    s.value.into(),
                    s.tail_bound.into(),
                    s.degree.into(),
                    kernel.into(),
                    (s.value - kernel).abs().into(),
                ]);
            }
            Ok(table.into())
        }
        OracleCommand::Circle { sizes, m } => {
            param(1, *m)?;
            let rows = discrete_kernel_convergence(*m, &parse::sizes(sizes)?)?;
            eprintln!("fitted order {:.4}", fitted_order(&rows));
            let mut table = Table::new(&["N", "max_err", "slope"]);
            for r in rows {
                table.push(vec![r.n_points.into(), r.max_err.into(), r.slope.into()]);
            }
            Ok(table.into())
        }
        OracleCommand::QWitness { n, nu, trials } => {
            let mut table = Table::new(&["trial", "seed", "n_points", "min_eig", "trace", "points"]);
            match search_q_witness(*n, *nu, g.seed, *trials)? {
                Some(w) => {
                    let pts = w.points.iter().map(format_point).collect::<Vec<_>>().join(";");
                    table.push(vec![
                        w.trial.into(),
                        w.seed.into(),
                        w.points.len().into(),
                        w.min_eig.into(),
                        w.trace.into(),
                        pts.into(),
                    ]);
                }
                None => eprintln!("no witness in {trials} trials"),
            }
            Ok(table.into())
        }
    }
}

fn boundary_name(b: BoundaryClass) -> &'static str {
    match b {
        BoundaryClass::DeSitter => "de_sitter",
        BoundaryClass::LightRayOrbit => "light_ray_orbit",
        BoundaryClass::NotBoundary => "none",
    }
}

pub fn geometry(a: &GeometryArgs, g: &Globals) -> Result<Outcome, CliError> {
    if a.n == 0 {
        return Err(ParseError("--n must be at least 1".into()).into());
    }
    let tol = g.tol_or(DEFAULT_TOL);
    let elem = parse::word(&a.word, a.n)?;
    let points = match (&a.z, a.sample) {
        (Some(z), _) => vec![parse::point(z, a.n)?],
        (None, Some(k)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            (0..k).map(|_| sample_crown(a.n, 1.5, 1.2, &mut rng)).collect()
        }
        (None, None) => return Err(ParseError("geometry needs --z or --sample".into()).into()),
    };
    let mut table = Table::new(&[
        "z",
        "on_complex_sphere",
        "in_tube",
        "in_crown",
        "boundary",
        "beta",
        "cayley",
        "image",
        "image_in_crown",
    ]);
    for z in points {
        let image = elem.act(&z)?;
        table.push(vec![
            format_point(&z).into(),
            on_complex_sphere(&z, tol).into(),
            in_tube(&z, tol).into(),
            in_crown(&z, tol).into(),
            boundary_name(classify_boundary(&z, tol)).into(),
            beta(&z).into(),
            cayley(&z).ok().map(|c| format_point(&c)).into(),
            format_point(&image).into(),
            in_crown(&image, tol).into(),
        ]);
    }
    Ok(table.into())
}
