use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_PI: f64 = 1.144_729_885_849_400_2;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of log Γ(z).
///
/// Lanczos approximation for Re z ≥ 1/2, reflection formula otherwise.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    ensure_finite(z, "log_gamma argument")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z.re));
    }
    if z.re < 0.5 {
        // branch bookkeeping keeps the imaginary part continuous off the negative axis
        let shift = (2.0 * PI).copysign(z.im) * (0.5 * z.re + 0.25).floor();
        let one = Complex64::new(1.0, 0.0);
        return Ok(Complex64::new(LN_PI, shift) - log_sin_pi(z) - lanczos(one - z));
    }
    Ok(lanczos(z))
}

/// Γ(z) as exp(log Γ(z)).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

fn log_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 10.0 {
        let r = z.re - 2.0 * (0.5 * z.re).round();
        let (s, c) = (PI * r).sin_cos();
        Complex64::new(s * (PI * z.im).cosh(), c * (PI * z.im).sinh()).ln()
    } else if z.im > 0.0 {
        // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz})
        let i = Complex64::i();
        let e = (2.0 * i * PI * z).exp();
        (0.5 * i).ln() - i * PI * z + (1.0 - e).ln()
    } else {
        log_sin_pi(z.conj()).conj()
    }
}
