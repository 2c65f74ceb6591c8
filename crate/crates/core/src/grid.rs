//! Symmetric position and momentum grids, wave functions sampled into
//! register amplitudes, and the square-well potential on the grid.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::WellEigenpair;

/// Absolute tolerance of the per-bin adaptive Simpson quadrature.
pub const BIN_QUADRATURE_TOL: f64 = 1e-10;
const MAX_SIMPSON_DEPTH: u32 = 50;

/// `N = 2^n` points on `(-d, d)` and the matching momentum points.
///
/// Position points sit at bin centres, `x_k = -d + 2d (k + 1/2) / N`, and
/// momentum points at `p_j = (π/d) (j + 1/2 - N/2)`. Both sets are symmetric
/// about zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub n: usize,
    pub d: f64,
    pub x_points: Vec<f64>,
    pub p_points: Vec<f64>,
}

impl GridSpec {
    pub fn new(n: usize, d: f64) -> Result<Self> {
        if n == 0 || n > crate::statevec::MAX_QUBITS {
            return Err(Error::Config(format!("grid qubit count {n} out of range")));
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::Config(format!(
                "grid half-width must be positive, got {d}"
            )));
        }
        let size = 1usize << n;
        let nf = size as f64;
        let x_points = (0..size)
            .map(|k| -d + 2.0 * d * (k as f64 + 0.5) / nf)
            .collect();
        let p_points = (0..size)
            .map(|j| (2.0 * PI / (2.0 * d)) * (j as f64 + 0.5 - nf / 2.0))
            .collect();
        Ok(Self {
            n,
            d,
            x_points,
            p_points,
        })
    }

    /// `N = 2^n`.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    /// Bin width `Δx = 2d / N`.
    pub fn dx(&self) -> f64 {
        2.0 * self.d / self.size() as f64
    }

    /// Momentum half-range `q = 2πN / 4d`.
    pub fn momentum_half_range(&self) -> f64 {
        2.0 * PI * self.size() as f64 / (4.0 * self.d)
    }
}

/// Square well `V(x) = -V0` for `|x| < a`, zero outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WellSpec {
    pub v0: f64,
    pub a: f64,
}

impl WellSpec {
    /// `v0 = 0` is accepted and describes the free particle.
    pub fn new(v0: f64, a: f64) -> Result<Self> {
        if !(v0 >= 0.0) || !v0.is_finite() {
            return Err(Error::Config(format!(
                "well depth must be non-negative, got {v0}"
            )));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Config(format!(
                "well half-width must be positive, got {a}"
            )));
        }
        Ok(Self { v0, a })
    }

    pub fn potential(&self, x: f64) -> f64 {
        if x.abs() < self.a {
            -self.v0
        } else {
            0.0
        }
    }
}

/// Wave functions that can be loaded into the simulation register.
#[derive(Clone)]
pub enum WaveFunction {
    /// `e^{-10 x²}` (unnormalised).
    TrialGround,
    /// `x e^{-10 x²}` (unnormalised).
    TrialExcited,
    /// Analytic square-well eigenfunction.
    Exact(WellEigenpair),
    /// Any real function of position.
    Function(fn(f64) -> f64),
    /// Register amplitudes given directly, one per grid point.
    Table(Vec<Complex64>),
}

impl fmt::Debug for WaveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WaveFunction::TrialGround => f.write_str("TrialGround"),
            WaveFunction::TrialExcited => f.write_str("TrialExcited"),
            WaveFunction::Exact(e) => f.debug_tuple("Exact").field(e).finish(),
            WaveFunction::Function(_) => f.write_str("Function(..)"),
            WaveFunction::Table(t) => write!(f, "Table({} rows)", t.len()),
        }
    }
}

impl WaveFunction {
    /// Pointwise value for the analytic kinds; `None` for tables.
    pub fn eval(&self, x: f64) -> Option<f64> {
        match self {
            WaveFunction::TrialGround => Some((-10.0 * x * x).exp()),
            WaveFunction::TrialExcited => Some(x * (-10.0 * x * x).exp()),
            WaveFunction::Exact(pair) => Some(pair.psi(x)),
            WaveFunction::Function(f) => Some(f(x)),
            WaveFunction::Table(_) => None,
        }
    }
}

/// `∫ |ψ|²` over the bin of width `Δx` centred on `x_k`.
///
/// Analytic wave functions are not normalised here; tables report
/// `|a_k|² / Σ|a|²`.
pub fn bin_probability(psi: &WaveFunction, grid: &GridSpec, k: usize) -> Result<f64> {
    if k >= grid.size() {
        return Err(Error::Shape(format!(
            "bin {k} outside grid of {}",
            grid.size()
        )));
    }
    if let WaveFunction::Table(amps) = psi {
        check_table(amps, grid)?;
        let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !(total > 0.0) {
            return Err(Error::InvalidState(
                "wave-function table is all zero".into(),
            ));
        }
        return Ok(amps[k].norm_sqr() / total);
    }
    let half = grid.dx() / 2.0;
    let xk = grid.x_points[k];
    let density = |x: f64| {
        let v = psi.eval(x).expect("analytic wave function");
        v * v
    };
    adaptive_simpson(density, xk - half, xk + half, BIN_QUADRATURE_TOL)
}

/// Register amplitudes `sign(ψ(x_k)) √P_k`, renormalised to unit norm.
pub fn prepare_amplitudes(psi: &WaveFunction, grid: &GridSpec) -> Result<Vec<Complex64>> {
    let raw: Vec<Complex64> = match psi {
        WaveFunction::Table(amps) => {
            check_table(amps, grid)?;
            amps.clone()
        }
        _ => (0..grid.size())
            .map(|k| {
                let p = bin_probability(psi, grid, k)?;
                let value = psi.eval(grid.x_points[k]).expect("analytic wave function");
                let sign = if value < 0.0 { -1.0 } else { 1.0 };
                Ok(Complex64::new(sign * p.sqrt(), 0.0))
            })
            .collect::<Result<_>>()?,
    };
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::InvalidState(
            "wave function vanishes on the grid".into(),
        ));
    }
    Ok(raw.into_iter().map(|a| a / norm).collect())
}

/// `V_k = -V0` where `|x_k| < a`, else zero.
pub fn potential_on_grid(well: &WellSpec, grid: &GridSpec) -> Vec<f64> {
    grid.x_points.iter().map(|&x| well.potential(x)).collect()
}

fn check_table(amps: &[Complex64], grid: &GridSpec) -> Result<()> {
    if amps.len() != grid.size() {
        return Err(Error::Shape(format!(
            "wave-function table has {} rows, grid has {} points",
            amps.len(),
            grid.size()
        )));
    }
    Ok(())
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, MAX_SIMPSON_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::Numerical(
            "non-finite integrand in quadrature".into(),
        ));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Numerical(format!(
            "adaptive Simpson did not converge on [{a}, {b}]"
        )));
    }
    Ok(
        simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
            + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?,
    )
}
