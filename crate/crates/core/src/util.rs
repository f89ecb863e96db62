//! Small numeric and formatting utilities shared across modules.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// FNV-1a 64-bit hash, used as a deterministic configuration fingerprint.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;
    let mut h = OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(PRIME);
    }
    h
}

/// Hex rendering of [`fnv1a64`], 16 lowercase characters.
pub fn fnv1a64_hex(bytes: &[u8]) -> String {
    format!("{:016x}", fnv1a64(bytes))
}

/// Least-squares line fit `y ≈ slope·x + intercept`.
///
/// Returns `None` when fewer than two points are given or all abscissae
/// coincide.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let nf = n as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let den = nf * sxx - sx * sx;
    if den.abs() < 1e-300 {
        return None;
    }
    let slope = (nf * sxy - sx * sy) / den;
    let intercept = (sy - slope * sx) / nf;
    Some((slope, intercept))
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
///
/// Runs a fixed number of iterations (each shrinking the interval by the
/// golden ratio) and returns `(argmin, min)` evaluated at the midpoint of the
/// final bracket. 80 iterations shrink the bracket by a factor ≈ 5e−17.
pub fn golden_min(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, iters: u32) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - (b - a) * INVPHI;
    let mut d = a + (b - a) * INVPHI;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INVPHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INVPHI;
            fd = f(d);
        }
        if b - a < 1e-13 {
            break;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Minimize a convex function over the real line: coarse scan on an expanding
/// symmetric range to bracket the minimum, then golden-section refinement.
pub fn convex_line_min(mut f: impl FnMut(f64) -> f64, initial_half_range: f64) -> (f64, f64) {
    let mut half = initial_half_range.max(1.0);
    loop {
        let steps = 160usize;
        let h = 2.0 * half / steps as f64;
        let mut best_i = 0usize;
        let mut best_v = f64::INFINITY;
        for i in 0..=steps {
            let x = -half + i as f64 * h;
            let v = f(x);
            if v < best_v {
                best_v = v;
                best_i = i;
            }
        }
        // Interior minimum: refine. Edge minimum: the true minimum may lie
        // outside the scanned range, so widen and rescan.
        if best_i > 0 && best_i < steps {
            let lo = -half + (best_i as f64 - 1.0) * h;
            let hi = -half + (best_i as f64 + 1.0) * h;
            return golden_min(f, lo, hi, 90);
        }
        half *= 4.0;
        if half > 1.0e5 {
            // Asymptotic configuration (e.g. lines sharing an end at
            // infinity); the infimum is approached along the scan edge.
            return (if best_i == 0 { -half } else { half }, best_v);
        }
    }
}

/// Parse a real or complex literal: `1.5`, `-2e-3`, `i`, `-i`, `2i`,
/// `1+2i`, `-0.5-1e-2i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty numeric literal".into()));
    }
    if !t.ends_with('i') && !t.ends_with('I') {
        let re: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad real literal `{t}`")))?;
        return Ok(Complex64::new(re, 0.0));
    }
    // Trailing `i`: split off the imaginary coefficient. Find the split
    // point: the last '+' or '-' that is not part of an exponent and not the
    // leading sign.
    let body = &t[..t.len() - 1];
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx] as char;
        if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
            split = Some(idx);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("0", body),
    };
    let re: f64 = if re_str.is_empty() {
        0.0
    } else {
        re_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad complex literal `{t}`")))?
    };
    let im: f64 = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse()
            .map_err(|_| Error::Parse(format!("bad complex literal `{t}`")))?,
    };
    Ok(Complex64::new(re, im))
}

/// Shortest-roundtrip rendering of a complex number using the same literal
/// syntax accepted by [`parse_complex`].
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
