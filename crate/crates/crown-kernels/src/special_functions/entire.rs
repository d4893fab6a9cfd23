use num_complex::Complex64;

const SERIES_RADIUS: f64 = 0.5;

/// C(z) = Σ (-1)^k z^k / (2k)!, so that C(t²) = cos t.
pub fn entire_c(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        series(z, 1)
    } else {
        z.sqrt().cos()
    }
}

/// S(z) = Σ (-1)^k z^k / (2k+1)!, so that S(t²) = sin(t)/t.
pub fn entire_s(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        series(z, 2)
    } else {
        let t = z.sqrt();
        t.sin() / t
    }
}

// Σ (-1)^k z^k / (2k + offset - 1)!  with offset 1 for C, 2 for S.
fn series(z: Complex64, offset: u32) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..40u32 {
        let a = (2 * k + offset - 2) as f64;
        let b = (2 * k + offset - 1) as f64;
        term *= -z / (a * b);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn anchor_values() {
        assert_eq!(entire_c(c(0.0, 0.0)), c(1.0, 0.0));
        assert!(entire_c(c(PI * PI / 4.0, 0.0)).norm() < 1e-15);
        assert!((entire_s(c(1.0, 0.0)) - c(1f64.sin(), 0.0)).norm() < 1e-15);
        assert_eq!(entire_s(c(0.0, 0.0)), c(1.0, 0.0));
    }

    #[test]
    fn matches_trig_on_a_grid() {
        for i in 0..40 {
            for j in 0..40 {
                let t = c(-10.0 + 0.5 * i as f64, -1.3 + 0.07 * j as f64);
                let z = t * t;
                if z.norm() > 100.0 {
                    continue;
                }
                let cos = t.cos();
                let sinc = if t.norm() > 0.0 { t.sin() / t } else { c(1.0, 0.0) };
                assert!((entire_c(z) - cos).norm() <= 1e-13 * cos.norm().max(1.0));
                assert!((entire_s(z) - sinc).norm() <= 1e-13 * sinc.norm().max(1.0));
            }
        }
    }

    #[test]
    fn series_and_closed_form_agree_at_switch() {
        for k in 0..16 {
            let z = Complex64::from_polar(SERIES_RADIUS, k as f64 * PI / 8.0);
            let t = z.sqrt();
            assert!((series(z, 1) - t.cos()).norm() < 1e-15);
            assert!((series(z, 2) - t.sin() / t).norm() < 1e-15);
        }
    }
}
