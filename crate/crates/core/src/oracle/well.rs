//! Bound states of the finite square well from the transcendental matching
//! conditions (units with ħ = m = 1).

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::WellSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// One bound state of the square well.
///
/// Inside the well the eigenfunction is `inner·cos(q x)` (even) or
/// `inner·sin(q x)` (odd); outside it is `±outer·e^{-α|x|}`. The pair is
/// normalised on the whole real line with `inner > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WellEigenpair {
    pub parity: Parity,
    pub energy: f64,
    /// Inside wavenumber `q = √(2(V0 - |E|))`.
    pub q: f64,
    /// Outside decay constant `α = √(2|E|)`.
    pub alpha: f64,
    /// `A_0` (even) or `B_1` (odd).
    pub inner: f64,
    /// `C`: outside amplitude, continuous with the inside branch at `|x| = a`.
    pub outer: f64,
    pub a: f64,
}

impl WellEigenpair {
    pub fn psi(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax < self.a {
            match self.parity {
                Parity::Even => self.inner * (self.q * x).cos(),
                Parity::Odd => self.inner * (self.q * x).sin(),
            }
        } else {
            let tail = self.outer * (-self.alpha * ax).exp();
            match self.parity {
                Parity::Even => tail,
                Parity::Odd => tail * x.signum(),
            }
        }
    }

    /// Residual of the matching condition in its tangent form:
    /// `q tan(qa) - α` (even) or `-q cot(qa) - α` (odd).
    pub fn matching_residual(&self) -> f64 {
        let qa = self.q * self.a;
        match self.parity {
            Parity::Even => self.q * qa.tan() - self.alpha,
            Parity::Odd => -self.q / qa.tan() - self.alpha,
        }
    }
}

/// Pole-free forms of the matching conditions, as functions of `q`:
/// even `q sin(qa) - α cos(qa)`, odd `-q cos(qa) - α sin(qa)`.
fn matching(parity: Parity, q: f64, well: &WellSpec) -> f64 {
    let alpha = (2.0 * well.v0 - q * q).max(0.0).sqrt();
    let qa = q * well.a;
    match parity {
        Parity::Even => q * qa.sin() - alpha * qa.cos(),
        Parity::Odd => -q * qa.cos() - alpha * qa.sin(),
    }
}

/// All bound states, sorted by ascending energy.
///
/// Every root lies in its own quarter-period of `qa`: even states in
/// `(kπ, kπ + π/2)`, odd states in `(kπ + π/2, (k+1)π)`. Each bracket is
/// refined by bisection.
pub fn solve_well(well: &WellSpec) -> Result<Vec<WellEigenpair>> {
    if !(well.a > 0.0) {
        return Err(Error::Config("well half-width must be positive".into()));
    }
    if !(well.v0 >= 0.0) {
        return Err(Error::Config("well depth must be non-negative".into()));
    }
    if well.v0 == 0.0 {
        return Ok(Vec::new());
    }
    let q_max = (2.0 * well.v0).sqrt();
    let mut states = Vec::new();
    for slot in 0usize.. {
        let lo_qa = slot as f64 * FRAC_PI_2;
        if lo_qa >= q_max * well.a {
            break;
        }
        let hi_qa = (lo_qa + FRAC_PI_2).min(q_max * well.a);
        let parity = if slot % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        let (lo, hi) = (lo_qa / well.a, hi_qa / well.a);
        let (flo, fhi) = (matching(parity, lo, well), matching(parity, hi, well));
        if flo == 0.0 && lo > 0.0 {
            states.push(build_pair(parity, lo, well));
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        let q = bisect(|q| matching(parity, q, well), lo, hi, flo)?;
        let pair = build_pair(parity, q, well);
        // A root at q_max is the zero-energy threshold, not a bound state.
        if pair.alpha > 0.0 && pair.energy < 0.0 {
            states.push(pair);
        }
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(states)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-14 * hi.max(1.0) {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::Numerical("bisection did not converge".into()))
}

fn build_pair(parity: Parity, q: f64, well: &WellSpec) -> WellEigenpair {
    let a = well.a;
    let alpha = (2.0 * well.v0 - q * q).max(0.0).sqrt();
    let energy = -(well.v0 - 0.5 * q * q);
    let qa = q * a;
    let (edge, inside_norm) = match parity {
        Parity::Even => (qa.cos(), a + (2.0 * qa).sin() / (2.0 * q)),
        Parity::Odd => (qa.sin(), a - (2.0 * qa).sin() / (2.0 * q)),
    };
    // outer·e^{-αa} = inner·edge; both tails together add
    // outer²·e^{-2αa}/α = inner²·edge²/α.
    let tail_norm = if alpha > 0.0 {
        edge * edge / alpha
    } else {
        f64::INFINITY
    };
    let inner = 1.0 / (inside_norm + tail_norm).sqrt();
    let outer = inner * edge * (alpha * a).exp();
    WellEigenpair {
        parity,
        energy,
        q,
        alpha,
        inner,
        outer,
        a,
    }
}

/// Standard bound-state count `1 + floor(2a√(2V0)/π)`.
pub fn expected_bound_state_count(well: &WellSpec) -> usize {
    if well.v0 <= 0.0 {
        return 0;
    }
    1 + (2.0 * well.a * (2.0 * well.v0).sqrt() / PI).floor() as usize
}
