//! Zero-energy extrapolation of threshold quantities.
//!
//! Two-dimensional channels approach their threshold limits logarithmically:
//! the generic low-energy form is y(lambda) = y0 + A*atan(pi/(ln lambda + b)),
//! which tends to y0 like 1/ln(lambda). Plain endpoint evaluation at any
//! affordable lambda_min is orders of magnitude short of the identity
//! tolerances, so the limit is extracted by fitting this model (optionally a
//! greedy two-term variant) on the lowest grid decades.

use crate::{Error, Result};

/// Result of a zero-energy limit extraction.
#[derive(Debug, Clone)]
pub struct Extrapolation {
    /// Estimated limit at lambda -> 0.
    pub limit: f64,
    /// Uncertainty estimate (window-stability spread plus fit residual).
    pub uncertainty: f64,
    /// Number of model terms used (0 = endpoint fallback).
    pub terms: usize,
}

struct TermFit {
    c0: f64,
    sse: f64,
}

fn fit_one_term(xs: &[f64], ys: &[f64], b: f64) -> Option<TermFit> {
    let n = xs.len() as f64;
    let mut sp = 0.0;
    let mut spp = 0.0;
    let mut sy = 0.0;
    let mut spy = 0.0;
    let mut phis = Vec::with_capacity(xs.len());
    for (&x, &y) in xs.iter().zip(ys.iter()) {
        let d = x + b;
        if d.abs() < 0.75 || d >= 0.0 {
            // Keep the model branch fixed: denominators must stay negative
            // (lambda below the model's reference scale).
            return None;
        }
        let phi = (std::f64::consts::PI / d).atan();
        phis.push(phi);
        sp += phi;
        spp += phi * phi;
        sy += y;
        spy += phi * y;
    }
    let det = n * spp - sp * sp;
    if det.abs() < 1e-14 * n * spp.max(1e-300) {
        return None;
    }
    let a = (n * spy - sp * sy) / det;
    let c0 = (sy - a * sp) / n;
    let mut sse = 0.0;
    for ((&y, &phi), _) in ys.iter().zip(phis.iter()).zip(xs.iter()) {
        let r = y - c0 - a * phi;
        sse += r * r;
    }
    Some(TermFit { c0, sse })
}

fn best_one_term(xs: &[f64], ys: &[f64]) -> Option<(f64, TermFit)> {
    let mut best: Option<(f64, TermFit)> = None;
    let mut scan = |b: f64, best: &mut Option<(f64, TermFit)>| {
        if let Some(fit) = fit_one_term(xs, ys, b) {
            if best.as_ref().map_or(true, |(_, f)| fit.sse < f.sse) {
                *best = Some((b, fit));
            }
        }
    };
    let mut b = -40.0;
    while b <= 40.0 {
        scan(b, &mut best);
        b += 0.5;
    }
    // Two rounds of local refinement around the best coarse b.
    for step in [0.05_f64, 0.005] {
        if let Some((b0, _)) = best.as_ref().map(|(b, f)| (*b, f.sse)) {
            let mut bb = b0 - 10.0 * step;
            while bb <= b0 + 10.0 * step {
                scan(bb, &mut best);
                bb += step;
            }
        }
    }
    best
}

fn fit_two_terms(xs: &[f64], ys: &[f64], b1: f64) -> Option<(f64, f64)> {
    // Least squares on [1, phi1, phi2] with a scan over the second scale b2.
    let phi = |x: f64, b: f64| (std::f64::consts::PI / (x + b)).atan();
    let valid = |b: f64| xs.iter().all(|&x| x + b < -0.75);
    if !valid(b1) {
        return None;
    }
    let mut best: Option<(f64, f64)> = None; // (c0, sse)
    let mut b2 = -40.0;
    while b2 <= 40.0 {
        if valid(b2) && (b2 - b1).abs() > 0.5 {
            // 3x3 normal equations.
            let mut m = [[0.0f64; 3]; 3];
            let mut rhs = [0.0f64; 3];
            for (&x, &y) in xs.iter().zip(ys.iter()) {
                let row = [1.0, phi(x, b1), phi(x, b2)];
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] += row[i] * row[j];
                    }
                    rhs[i] += row[i] * y;
                }
            }
            if let Some(sol) = solve3(m, rhs) {
                let mut sse = 0.0;
                for (&x, &y) in xs.iter().zip(ys.iter()) {
                    let r = y - sol[0] - sol[1] * phi(x, b1) - sol[2] * phi(x, b2);
                    sse += r * r;
                }
                if best.map_or(true, |(_, s)| sse < s) {
                    best = Some((sol[0], sse));
                }
            }
        }
        b2 += 0.5;
    }
    best
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let mut piv = col;
        for row in col + 1..3 {
            if m[row][col].abs() > m[piv][col].abs() {
                piv = row;
            }
        }
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for j in 0..3 {
                    m[row][j] -= f * m[col][j];
                }
                b[row] -= f * b[col];
            }
        }
    }
    Some([b[0] / m[0][0], b[1] / m[1][1], b[2] / m[2][2]])
}

/// Extract the lambda -> 0 limit of samples (lambdas ascending, all > 0).
///
/// The caller passes the low-energy window (typically the lowest one or two
/// grid decades). Fails when the per-decade variation grows toward zero,
/// which signals a curve that has not entered its threshold regime.
pub fn threshold_limit(lambdas: &[f64], ys: &[f64]) -> Result<Extrapolation> {
    if lambdas.len() != ys.len() || lambdas.len() < 6 {
        return Err(Error::ExtrapolationFailed {
            message: format!("need at least 6 samples, got {}", lambdas.len()),
        });
    }
    for w in lambdas.windows(2) {
        if !(w[1] > w[0] && w[0] > 0.0) {
            return Err(Error::ExtrapolationFailed {
                message: "lambda window must be positive and ascending".into(),
            });
        }
    }
    // Per-decade variation must not grow toward lambda -> 0.
    let l0 = lambdas[0];
    let decades = (lambdas.last().unwrap() / l0).log10().ceil().max(1.0) as usize;
    let mut var = vec![(f64::INFINITY, f64::NEG_INFINITY); decades];
    for (&l, &y) in lambdas.iter().zip(ys.iter()) {
        let d = ((l / l0).log10().floor() as usize).min(decades - 1);
        var[d].0 = var[d].0.min(y);
        var[d].1 = var[d].1.max(y);
    }
    let spans: Vec<f64> = var
        .iter()
        .filter(|(lo, _)| lo.is_finite())
        .map(|(lo, hi)| hi - lo)
        .collect();
    if spans.len() >= 3 {
        let scale = ys.iter().fold(0.0_f64, |a, &y| a.max(y.abs())).max(1.0);
        if spans[0] > 2.0 * spans[1] + 1e-9 * scale && spans[1] > 1e-9 * scale {
            return Err(Error::ExtrapolationFailed {
                message: format!(
                    "per-decade variation grows toward 0 ({:.3e} vs {:.3e})",
                    spans[0], spans[1]
                ),
            });
        }
    }

    let xs: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
    let y_scale = ys.iter().fold(0.0_f64, |a, &y| a.max(y.abs())).max(1e-12);

    // Constant baseline.
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let sse_const: f64 = ys.iter().map(|y| (y - mean) * (y - mean)).sum();

    // Flat data: the endpoint is already the limit.
    if sse_const.sqrt() < 1e-10 * y_scale.max(1.0) {
        return Ok(Extrapolation { limit: ys[0], uncertainty: 1e-10 * y_scale.max(1.0), terms: 0 });
    }

    let one = best_one_term(&xs, &ys);
    let Some((b1, fit1)) = one else {
        return Ok(Extrapolation {
            limit: ys[0],
            uncertainty: (ys[0] - ys[ys.len() - 1]).abs(),
            terms: 0,
        });
    };
    if fit1.sse > 0.5 * sse_const {
        // The model explains nothing; the curve is already flat or irregular.
        return Ok(Extrapolation {
            limit: ys[0],
            uncertainty: (sse_const / ys.len() as f64).sqrt() + (ys[0] - ys[ys.len() - 1]).abs(),
            terms: 0,
        });
    }

    let mut limit = fit1.c0;
    let mut sse = fit1.sse;
    let mut terms = 1;
    let rms1 = (fit1.sse / ys.len() as f64).sqrt();
    if rms1 > 1e-8 * y_scale.max(1.0) {
        if let Some((c0_2, sse2)) = fit_two_terms(&xs, &ys, b1) {
            if sse2 < 0.25 * fit1.sse {
                limit = c0_2;
                sse = sse2;
                terms = 2;
            }
        }
    }

    // Window-stability spread: refit on the lower 70% of the window.
    let k = (xs.len() * 7) / 10;
    let mut spread = 0.0;
    if k >= 6 {
        if let Some((_, f)) = best_one_term(&xs[..k], &ys[..k]) {
            spread = (f.c0 - limit).abs();
        }
    }
    let uncertainty = spread + (sse / ys.len() as f64).sqrt();
    Ok(Extrapolation { limit, uncertainty, terms })
}
