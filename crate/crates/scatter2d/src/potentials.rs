//! Radial potential models: square well, Gaussian well, and tabulated
//! samples with monotone cubic interpolation. All models vanish identically
//! beyond a cutoff radius, so matching to free solutions at the cutoff is
//! exact.

use crate::interp::Pchip;
use crate::{Error, Result};
use std::path::Path;

/// Cutoff multiplier for the Gaussian well: |V| < 1e-27 * depth beyond 8 sigma.
pub const GAUSSIAN_CUTOFF_SIGMAS: f64 = 8.0;

#[derive(Debug, Clone)]
pub enum RadialPotential {
    /// V(r) = -depth for r <= radius, 0 beyond.
    SquareWell { depth: f64, radius: f64 },
    /// V(r) = -depth * exp(-(r/sigma)^2), truncated to 0 beyond 8 sigma.
    Gaussian { depth: f64, sigma: f64 },
    /// Sampled (r, V) pairs, monotone cubic between samples, 0 beyond the last.
    Tabulated { rs: Vec<f64>, vs: Vec<f64>, spline: Pchip },
}

impl RadialPotential {
    pub fn square_well(depth: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !depth.is_finite() {
            return Err(Error::InvalidInput(format!(
                "square well needs radius > 0 and finite depth (got radius={radius}, depth={depth})"
            )));
        }
        Ok(RadialPotential::SquareWell { depth, radius })
    }

    pub fn gaussian(depth: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !depth.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gaussian needs sigma > 0 and finite depth (got sigma={sigma}, depth={depth})"
            )));
        }
        Ok(RadialPotential::Gaussian { depth, sigma })
    }

    /// Build a tabulated potential from samples. Radii must be strictly
    /// increasing, values finite, and the last value must vanish within
    /// `tail_tolerance * max|V|`.
    pub fn tabulated(rs: Vec<f64>, vs: Vec<f64>, tail_tolerance: f64) -> Result<Self> {
        if rs.len() != vs.len() || rs.len() < 4 {
            return Err(Error::InvalidInput(format!(
                "tabulated potential needs >= 4 samples (got {})",
                rs.len()
            )));
        }
        if rs[0] < 0.0 {
            return Err(Error::InvalidInput("tabulated radii must be >= 0".into()));
        }
        for w in rs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidInput(format!(
                    "tabulated radii must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        let vmax = vs.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if !vmax.is_finite() {
            return Err(Error::InvalidInput("tabulated values must be finite".into()));
        }
        let tail = vs.last().unwrap().abs();
        if tail > tail_tolerance * vmax.max(1e-300) {
            return Err(Error::InvalidInput(format!(
                "tabulated potential must vanish at the last sample: |V(r_last)| = {tail:.3e} > {:.3e}",
                tail_tolerance * vmax
            )));
        }
        let spline = Pchip::new(rs.clone(), vs.clone());
        Ok(RadialPotential::Tabulated { rs, vs, spline })
    }

    /// Parse the two-column text format: `r value` per line, '#' comments.
    pub fn from_file(path: &Path, tail_tolerance: f64) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut rs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (r, v) = match (it.next(), it.next(), it.next()) {
                (Some(r), Some(v), None) => (r, v),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "line {}: expected two columns, got {line:?}",
                        lineno + 1
                    )))
                }
            };
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidInput(format!("line {}: bad number {s:?}", lineno + 1))
                })
            };
            rs.push(parse(r)?);
            vs.push(parse(v)?);
        }
        Self::tabulated(rs, vs, tail_tolerance)
    }

    /// Radius beyond which the potential is treated as exactly zero.
    pub fn r_cut(&self) -> f64 {
        match self {
            RadialPotential::SquareWell { radius, .. } => *radius,
            RadialPotential::Gaussian { sigma, .. } => GAUSSIAN_CUTOFF_SIGMAS * sigma,
            RadialPotential::Tabulated { rs, .. } => *rs.last().unwrap(),
        }
    }

    /// Energy scale for grid construction: the well depth (max |V|).
    pub fn depth_scale(&self) -> f64 {
        match self {
            RadialPotential::SquareWell { depth, .. } => depth.abs(),
            RadialPotential::Gaussian { depth, .. } => depth.abs(),
            RadialPotential::Tabulated { vs, .. } => vs.iter().fold(0.0_f64, |a, v| a.max(v.abs())),
        }
    }

    /// True when the potential is identically zero.
    pub fn is_zero(&self) -> bool {
        self.depth_scale() == 0.0
    }

    /// V(r); total on r >= 0 and exactly 0 beyond the cutoff.
    pub fn evaluate(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        match self {
            RadialPotential::SquareWell { depth, radius } => {
                if r <= *radius {
                    -depth
                } else {
                    0.0
                }
            }
            RadialPotential::Gaussian { depth, sigma } => {
                if r > GAUSSIAN_CUTOFF_SIGMAS * sigma {
                    0.0
                } else {
                    -depth * (-(r / sigma) * (r / sigma)).exp()
                }
            }
            RadialPotential::Tabulated { rs, spline, .. } => {
                if r >= *rs.last().unwrap() {
                    0.0
                } else if r <= rs[0] {
                    spline.eval(rs[0])
                } else {
                    spline.eval(r)
                }
            }
        }
    }

    /// Interior radii where V is non-smooth; integration restarts there.
    pub fn smooth_boundaries(&self) -> Vec<f64> {
        match self {
            RadialPotential::SquareWell { radius, .. } => vec![*radius],
            _ => Vec::new(),
        }
    }

    /// Taylor coefficients of V around r = 0 (V = sum_j c_j r^j), used to
    /// seed the power-series start of the radial integration.
    pub fn taylor_at_zero(&self) -> Vec<f64> {
        match self {
            RadialPotential::SquareWell { depth, .. } => vec![-depth],
            RadialPotential::Gaussian { depth, sigma } => {
                // -depth * exp(-(r/sigma)^2): even powers only.
                let mut c = vec![0.0; 13];
                let s2 = sigma * sigma;
                let mut coef = -depth;
                let mut fact = 1.0;
                for j in 0..=6 {
                    c[2 * j] = coef / fact;
                    coef = -coef / s2;
                    fact *= (j + 1) as f64;
                }
                c
            }
            RadialPotential::Tabulated { rs, .. } => {
                // Cubic fit through the first four samples.
                let n = 4.min(rs.len());
                let xs = &rs[..n];
                let mut m = vec![[0.0f64; 4]; 4];
                let mut b = [0.0f64; 4];
                for (i, &x) in xs.iter().enumerate() {
                    for (j, mj) in m[i].iter_mut().enumerate() {
                        *mj = x.powi(j as i32);
                    }
                    b[i] = self.evaluate(x.max(rs[0]));
                }
                // Gaussian elimination, tiny system.
                for col in 0..4 {
                    let piv = (col..4).max_by(|&a, &bb| {
                        m[a][col].abs().partial_cmp(&m[bb][col].abs()).unwrap()
                    });
                    let piv = piv.unwrap();
                    m.swap(col, piv);
                    b.swap(col, piv);
                    if m[col][col].abs() < 1e-300 {
                        continue;
                    }
                    for row in 0..4 {
                        if row != col {
                            let f = m[row][col] / m[col][col];
                            for j in 0..4 {
                                m[row][j] -= f * m[col][j];
                            }
                            b[row] -= f * b[col];
                        }
                    }
                }
                (0..4).map(|i| if m[i][i].abs() > 0.0 { b[i] / m[i][i] } else { 0.0 }).collect()
            }
        }
    }

    /// Plane integral of V over R^2: 2 pi int_0^inf V(r) r dr.
    ///
    /// Closed form for the analytic kinds; per-segment Gauss quadrature
    /// (exact for the cubic interpolant) for tabulated data. Returns the
    /// value and an error estimate.
    pub fn plane_moment(&self) -> (f64, f64) {
        match self {
            RadialPotential::SquareWell { depth, radius } => {
                (-std::f64::consts::PI * depth * radius * radius, 0.0)
            }
            RadialPotential::Gaussian { depth, sigma } => {
                (-std::f64::consts::PI * depth * sigma * sigma, 0.0)
            }
            RadialPotential::Tabulated { rs, spline, .. } => {
                use crate::quadrature::integrate_gl;
                let f = |r: f64| spline.eval(r) * r;
                let mut total = 0.0;
                let mut err = 0.0;
                for w in rs.windows(2) {
                    let fine = integrate_gl(&f, w[0], w[1], 5);
                    let coarse = integrate_gl(&f, w[0], w[1], 3);
                    total += fine;
                    err += (fine - coarse).abs();
                }
                (2.0 * std::f64::consts::PI * total, 2.0 * std::f64::consts::PI * err)
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            RadialPotential::SquareWell { .. } => "square_well",
            RadialPotential::Gaussian { .. } => "gaussian",
            RadialPotential::Tabulated { .. } => "tabulated",
        }
    }
}
