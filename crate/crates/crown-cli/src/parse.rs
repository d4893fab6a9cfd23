//! Text syntax for points, group words and parameter ranges.
//!
//! Points are comma-separated complex entries written `re:im` (or a bare real),
//! or one of the names `e0`, `en`, `e<k>`, `xi0`. Words are `;`-separated letters
//! `rot:i:j:angle`, `boost:t` and `horo:v1,v2,...`, applied right to left like a product.

use crown_kernels::geometry::CPoint;
use crown_kernels::group_action::{make_boost, make_horospherical, plane_rotation, LorentzElement};
use crown_kernels::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

fn real(s: &str) -> Result<f64, ParseError> {
    let v: f64 = s.trim().parse().map_err(|_| ParseError(format!("not a number: {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        err(format!("not a finite number: {s:?}"))
    }
}

fn complex(s: &str) -> Result<Complex64, ParseError> {
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(real(re)?, real(im)?)),
        None => Ok(Complex64::new(real(s)?, 0.0)),
    }
}

/// A point of ℂ^{n+1}.
pub fn point(s: &str, n: usize) -> Result<CPoint, ParseError> {
    let s = s.trim();
    match s {
        "xi0" => return Ok(CPoint::xi0(n)),
        "en" => return Ok(CPoint::basis(n, n)),
        _ => {}
    }
    if let Some(k) = s.strip_prefix('e').and_then(|k| k.parse::<usize>().ok()) {
        if k > n {
            return err(format!("e{k} does not exist for n = {n}"));
        }
        return Ok(CPoint::basis(n, k));
    }
    let coords = s.split(',').map(complex).collect::<Result<Vec<_>, _>>()?;
    if coords.len() != n + 1 {
        return err(format!("point {s:?} has {} entries, expected n + 1 = {}", coords.len(), n + 1));
    }
    CPoint::new(coords).map_err(|e| ParseError(e.to_string()))
}

/// Inverse of [`point`] for explicit coordinates; re-parses to identical bits.
pub fn format_point(z: &CPoint) -> String {
    z.to_vec().iter().map(|c| format!("{:?}:{:?}", c.re, c.im)).collect::<Vec<_>>().join(",")
}

fn letter(s: &str, n: usize) -> Result<LorentzElement, ParseError> {
    let (kind, rest) = s.trim().split_once(':').ok_or_else(|| ParseError(format!("bad word letter {s:?}")))?;
    match kind {
        "boost" => Ok(make_boost(n, real(rest)?)),
        "rot" => {
            let parts: Vec<&str> = rest.split(':').collect();
            let [i, j, angle] = parts[..] else {
                return err(format!("rotation needs rot:i:j:angle, got {s:?}"));
            };
            let idx = |t: &str| t.trim().parse::<usize>().map_err(|_| ParseError(format!("bad index {t:?}")));
            plane_rotation(n, idx(i)?, idx(j)?, real(angle)?).map_err(|e| ParseError(e.to_string()))
        }
        "horo" => {
            let v = rest.split(',').map(real).collect::<Result<Vec<_>, _>>()?;
            if v.len() + 1 != n {
                return err(format!("horo needs n − 1 = {} entries, got {}", n.saturating_sub(1), v.len()));
            }
            Ok(make_horospherical(&v))
        }
        other => err(format!("unknown word letter {other:?}")),
    }
}

/// A product of generators; the empty word is the identity.
pub fn word(s: &str, n: usize) -> Result<LorentzElement, ParseError> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .try_fold(LorentzElement::identity(n), |acc, t| Ok(acc.compose(&letter(t, n)?)))
}

/// `a:step:b` inclusive of b up to rounding, or a single value.
pub fn range(s: &str) -> Result<Vec<f64>, ParseError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts[..] {
        [v] => Ok(vec![real(v)?]),
        [a, step, b] => {
            let (a, step, b) = (real(a)?, real(step)?, real(b)?);
            if step.is_nan() || step <= 0.0 || b < a {
                return err(format!("range {s:?} needs step > 0 and b ≥ a"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return err("range has more than 10^6 points");
            }
            // snap a + k·step to 12 decimals so 0.1:0.1:1 yields 0.3 rather than 0.30000000000000004
            let snap = |v: f64| format!("{v:.12}").parse::<f64>().expect("formatted float");
            Ok((0..count).map(|k| snap(a + k as f64 * step)).collect())
        }
        _ => err(format!("range {s:?} must be a or a:step:b")),
    }
}

/// Comma-separated positive integers.
pub fn sizes(s: &str) -> Result<Vec<usize>, ParseError> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| ParseError(format!("bad size {t:?}")))).collect()
}
