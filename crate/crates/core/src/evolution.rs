//! Gate-level second-order Trotter step for `H = P²/2 + V(x)`.
//!
//! One step is
//!
//! `e^{-iVΔt/2} · U_DFT · e^{-iKΔt} · U_DFT† · e^{-iVΔt/2}`
//!
//! with the kinetic factor diagonal in the momentum register. The kinetic
//! phases use the centred momentum `p̃_j = 2πN (j/N - 1/2)`, which drops the
//! `1/2N` offset of the grid momentum; [`kinetic_approximation_gap`] reports
//! how far that is from the exact grid value.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, WellSpec};
use crate::oracle::wrap_angle;
use crate::qft::{udft_gates, udft_inverse_gates};
use crate::statevec::Gate;

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionParams {
    pub grid: GridSpec,
    pub well: WellSpec,
    pub dt: f64,
    pub steps: u64,
}

impl EvolutionParams {
    /// Split total time `t` into `steps` equal Trotter steps.
    pub fn new(grid: GridSpec, well: WellSpec, t: f64, steps: u64) -> Result<Self> {
        if steps == 0 {
            return Err(Error::Config(
                "number of Trotter steps must be at least 1".into(),
            ));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Config(format!(
                "evolution time must be non-negative, got {t}"
            )));
        }
        Self::from_step(grid, well, t / steps as f64, steps)
    }

    pub fn from_step(grid: GridSpec, well: WellSpec, dt: f64, steps: u64) -> Result<Self> {
        if steps == 0 {
            return Err(Error::Config(
                "number of Trotter steps must be at least 1".into(),
            ));
        }
        if !(dt >= 0.0) || !dt.is_finite() {
            return Err(Error::Config(format!(
                "time step must be non-negative, got {dt}"
            )));
        }
        if (grid.d - 0.5).abs() > 1e-12 {
            return Err(Error::Unsupported(format!(
                "gate-level evolution requires grid half-width d = 1/2, got {}",
                grid.d
            )));
        }
        Ok(Self {
            grid,
            well,
            dt,
            steps,
        })
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn total_time(&self) -> f64 {
        self.dt * self.steps as f64
    }

    /// `α = -(2πN)² Δt / 2`.
    pub fn alpha(&self) -> f64 {
        let big_n = self.grid.size() as f64;
        -(2.0 * PI * big_n).powi(2) * self.dt / 2.0
    }

    /// Same total time with `factor` times as many steps.
    pub fn refined(&self, factor: u64) -> Result<Self> {
        Self::new(
            self.grid.clone(),
            self.well,
            self.total_time(),
            self.steps * factor,
        )
    }
}

/// Default simulation register `[0, 1, …, n-1]`.
pub fn default_register(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// `e^{-iKΔt}` on a momentum register (`momentum[m]` holds bit `m`):
/// `e^{iα(j/N - 1/2)²} = e^{iαj²/N²} e^{-iαj/N} e^{iα/4}`.
///
/// Emits `2n` single-qubit phases, `n(n-1)/2` controlled phases
/// `g_{m,l} = 2α 2^{m+l-2n}` and one register-wide constant phase.
pub fn kinetic_gates(params: &EvolutionParams, momentum: &[usize]) -> Vec<Gate> {
    let n = momentum.len() as i32;
    let alpha = params.alpha();
    let mut gates = Vec::new();
    for (m, &q) in momentum.iter().enumerate() {
        let m = m as i32;
        gates.push(Gate::u1(q, -alpha * 2f64.powi(m - n)));
        gates.push(Gate::u1(q, alpha * 2f64.powi(2 * (m - n))));
    }
    for m in 0..momentum.len() {
        for l in (m + 1)..momentum.len() {
            let g = 2.0 * alpha * 2f64.powi(m as i32 + l as i32 - 2 * n);
            gates.push(Gate::cu1(momentum[m], momentum[l], g));
        }
    }
    gates.push(Gate::ConstPhase(alpha / 4.0));
    gates
}

/// How the potential factor is realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialForm {
    /// Inside bins are exactly those whose two top bits differ: two `U1` and
    /// one `CU1` on the two most significant qubits.
    TwoQubit,
    /// One `X`-conjugated multi-controlled phase per inside bin.
    PerBin,
}

pub fn potential_form(grid: &GridSpec, well: &WellSpec) -> PotentialForm {
    let n = grid.n;
    if n < 2 {
        return PotentialForm::PerBin;
    }
    let aligned = (0..grid.size()).all(|k| {
        let top = (k >> (n - 1)) & 1;
        let next = (k >> (n - 2)) & 1;
        inside_pattern(grid, well, k) == (top != next)
    });
    if aligned {
        PotentialForm::TwoQubit
    } else {
        PotentialForm::PerBin
    }
}

fn inside_pattern(grid: &GridSpec, well: &WellSpec, k: usize) -> bool {
    grid.x_points[k].abs() < well.a
}

/// `e^{-iVτ}` on the position register with `phase = V0·τ`: every inside
/// bin picks up `e^{i phase}`.
pub fn potential_gates(params: &EvolutionParams, sim: &[usize], phase: f64) -> Vec<Gate> {
    let grid = &params.grid;
    let n = sim.len();
    match potential_form(grid, &params.well) {
        PotentialForm::TwoQubit => vec![
            Gate::u1(sim[n - 1], phase),
            Gate::u1(sim[n - 2], phase),
            Gate::cu1(sim[n - 2], sim[n - 1], -2.0 * phase),
        ],
        PotentialForm::PerBin => {
            let mut gates = Vec::new();
            for k in (0..grid.size()).filter(|&k| inside_pattern(grid, &params.well, k)) {
                let flips: Vec<Gate> = (0..n)
                    .filter(|&m| (k >> m) & 1 == 0)
                    .map(|m| Gate::X(sim[m]))
                    .collect();
                gates.extend(flips.iter().cloned());
                gates.push(Gate::phase_on(sim, phase));
                gates.extend(flips);
            }
            gates
        }
    }
}

/// One Trotter step split into its five sections.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterStep {
    pub potential_head: Vec<Gate>,
    pub to_momentum: Vec<Gate>,
    pub kinetic: Vec<Gate>,
    pub to_position: Vec<Gate>,
    pub potential_tail: Vec<Gate>,
}

impl TrotterStep {
    pub fn sections(&self) -> [(&'static str, &[Gate]); 5] {
        [
            ("potential (half step)", &self.potential_head),
            ("U_DFT^dagger", &self.to_momentum),
            ("kinetic", &self.kinetic),
            ("U_DFT", &self.to_position),
            ("potential (half step)", &self.potential_tail),
        ]
    }

    pub fn gates(&self) -> Vec<Gate> {
        self.sections()
            .iter()
            .flat_map(|(_, g)| g.iter().cloned())
            .collect()
    }

    /// Promote every diagonal gate outside the `U_DFT` sandwich by one
    /// control level on `work`; the transforms stay uncontrolled since they
    /// cancel when the control is off.
    pub fn controlled_by(&self, work: usize) -> TrotterStep {
        let promote = |gates: &[Gate]| -> Vec<Gate> {
            gates
                .iter()
                .map(|g| g.controlled_by(work).unwrap_or_else(|| g.clone()))
                .collect()
        };
        TrotterStep {
            potential_head: promote(&self.potential_head),
            to_momentum: self.to_momentum.clone(),
            kinetic: promote(&self.kinetic),
            to_position: self.to_position.clone(),
            potential_tail: promote(&self.potential_tail),
        }
    }
}

/// Trotter step acting on `sim` (position bit `m` on `sim[m]`).
pub fn trotter_step(params: &EvolutionParams, sim: &[usize]) -> Result<TrotterStep> {
    if sim.len() != params.n() {
        return Err(Error::Shape(format!(
            "simulation register has {} qubits, grid needs {}",
            sim.len(),
            params.n()
        )));
    }
    let half_phase = params.well.v0 * params.dt / 2.0;
    let momentum: Vec<usize> = sim.iter().rev().copied().collect();
    Ok(TrotterStep {
        potential_head: potential_gates(params, sim, half_phase),
        to_momentum: udft_inverse_gates(sim, params.grid.d)?,
        kinetic: kinetic_gates(params, &momentum),
        to_position: udft_gates(&momentum, params.grid.d)?,
        potential_tail: potential_gates(params, sim, half_phase),
    })
}

/// One Trotter step on the default register.
pub fn trotter_step_gates(params: &EvolutionParams) -> Result<Vec<Gate>> {
    Ok(trotter_step(params, &default_register(params.n()))?.gates())
}

/// The full `m`-step evolution `U'(t)` on `sim`.
pub fn evolution_gates(params: &EvolutionParams, sim: &[usize]) -> Result<Vec<Gate>> {
    let step = trotter_step(params, sim)?.gates();
    Ok(repeat(&step, params.steps))
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U'(t)^repetitions` with `work` as the control.
pub fn controlled_evolution_gates(
    params: &EvolutionParams,
    sim: &[usize],
    work: usize,
    repetitions: u64,
) -> Result<Vec<Gate>> {
    let step = controlled_step(params, sim, work)?.gates();
    Ok(repeat(&step, repetitions * params.steps))
}

/// A single work-controlled Trotter step.
pub fn controlled_step(
    params: &EvolutionParams,
    sim: &[usize],
    work: usize,
) -> Result<TrotterStep> {
    if sim.contains(&work) {
        return Err(Error::Shape(format!(
            "work qubit {work} overlaps the simulation register"
        )));
    }
    Ok(trotter_step(params, sim)?.controlled_by(work))
}

fn repeat(step: &[Gate], times: u64) -> Vec<Gate> {
    let mut gates = Vec::with_capacity(step.len() * times as usize);
    for _ in 0..times {
        gates.extend_from_slice(step);
    }
    gates
}

/// Kinetic phase applied to momentum index `j` by the gates: `α(j/N - 1/2)²`.
pub fn kinetic_phase(params: &EvolutionParams, j: usize) -> f64 {
    let big_n = params.grid.size() as f64;
    params.alpha() * (j as f64 / big_n - 0.5).powi(2)
}

/// Largest phase difference between the gate kinetic diagonal and the exact
/// grid-momentum propagator `e^{-i p_j² Δt / 2}`.
pub fn kinetic_approximation_gap(params: &EvolutionParams) -> f64 {
    (0..params.grid.size())
        .map(|j| {
            let exact = -params.grid.p_points[j].powi(2) * params.dt / 2.0;
            wrap_angle(kinetic_phase(params, j) - exact).abs()
        })
        .fold(0.0, f64::max)
}
