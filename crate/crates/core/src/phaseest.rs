//! Phase estimation of the simulated evolution and conversion to energies.
//!
//! An eigenvector with `U|u⟩ = e^{2πiθ}|u⟩` of `U = e^{-iHt}` has energy
//! `E = -2πθ/t`. Phases `θ ∈ [0, 1)` map to `E ∈ (-2π/t, 0]`; energies below
//! `-2π/t` alias back into that window.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{controlled_evolution_gates, EvolutionParams};
use crate::qft::qft_inverse_gates;
use crate::statevec::{sample_distribution, Gate, StateVector, MAX_QUBITS};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    /// Use the exact outcome probabilities.
    Exact,
    Finite(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseEstimate {
    pub theta: f64,
    pub energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sin_est: Option<f64>,
}

/// A unitary that phase estimation can apply under control of one work qubit.
pub trait ControlledUnitary {
    /// Number of qubits the unitary acts on.
    fn n_qubits(&self) -> usize;

    /// Evolution time that turns a phase into an energy.
    fn time(&self) -> f64;

    /// Gates for `C-U^repetitions` with `U` on `sim` and control `work`.
    fn controlled_gates(&self, sim: &[usize], work: usize, repetitions: u64) -> Result<Vec<Gate>>;
}

impl ControlledUnitary for EvolutionParams {
    fn n_qubits(&self) -> usize {
        self.n()
    }

    fn time(&self) -> f64 {
        self.total_time()
    }

    fn controlled_gates(&self, sim: &[usize], work: usize, repetitions: u64) -> Result<Vec<Gate>> {
        controlled_evolution_gates(self, sim, work, repetitions)
    }
}

/// `U1(2πθ)` on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseKick {
    pub theta: f64,
    pub t: f64,
}

impl ControlledUnitary for PhaseKick {
    fn n_qubits(&self) -> usize {
        1
    }

    fn time(&self) -> f64 {
        self.t
    }

    fn controlled_gates(&self, sim: &[usize], work: usize, repetitions: u64) -> Result<Vec<Gate>> {
        Ok(vec![Gate::cu1(
            work,
            sim[0],
            2.0 * PI * self.theta * repetitions as f64,
        )])
    }
}

/// `E = -2πθ/t`, with `θ = 0` giving `0`.
pub fn energy_from_theta(theta: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Config(format!(
            "evolution time must be positive, got {t}"
        )));
    }
    let e = -2.0 * PI * theta / t;
    Ok(if e == 0.0 { 0.0 } else { e })
}

/// `θ = -Et/2π mod 1`; the inverse of [`energy_from_theta`] up to aliasing.
pub fn theta_from_energy(energy: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Config(format!(
            "evolution time must be positive, got {t}"
        )));
    }
    Ok(normalise_turns(-energy * t / (2.0 * PI)))
}

fn normalise_turns(x: f64) -> f64 {
    let y = x.rem_euclid(1.0);
    if y >= 1.0 {
        0.0
    } else {
        y
    }
}

/// Place `initial_amps` on the simulation qubits `offset..offset+n` with all
/// lower qubits in `|0⟩`.
fn embed(initial_amps: &[Complex64], n_sim: usize, offset: usize) -> Result<StateVector> {
    if initial_amps.len() != 1 << n_sim {
        return Err(Error::Shape(format!(
            "initial state has {} amplitudes, simulation register needs {}",
            initial_amps.len(),
            1usize << n_sim
        )));
    }
    let total = n_sim + offset;
    if total > MAX_QUBITS {
        return Err(Error::Config(format!(
            "{total} qubits exceed the simulator limit of {MAX_QUBITS}"
        )));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << total];
    for (k, &a) in initial_amps.iter().enumerate() {
        amps[k << offset] = a;
    }
    StateVector::from_amplitudes(&amps)
}

/// Full phase-estimation circuit: work qubits `0..n_w`, simulation qubits
/// `n_w..n_w+n`. Work qubit `j` controls `U^{2^j}`. After the circuit,
/// result bit `m` sits on work qubit `n_w-1-m`.
pub fn qpe_circuit(unitary: &impl ControlledUnitary, n_w: usize) -> Result<Vec<Gate>> {
    if n_w == 0 {
        return Err(Error::Config(
            "phase estimation needs at least one work qubit".into(),
        ));
    }
    if n_w >= 63 {
        return Err(Error::Config(format!("{n_w} work qubits is too many")));
    }
    let work: Vec<usize> = (0..n_w).collect();
    let sim: Vec<usize> = (n_w..n_w + unitary.n_qubits()).collect();
    let mut gates: Vec<Gate> = work.iter().map(|&w| Gate::H(w)).collect();
    for (j, &w) in work.iter().enumerate() {
        gates.extend(unitary.controlled_gates(&sim, w, 1u64 << j)?);
    }
    gates.extend(qft_inverse_gates(&work));
    Ok(gates)
}

/// Multi-qubit phase estimation with `n_w` work qubits.
///
/// `distribution[x]` is the probability (or observed frequency) of result
/// `x`; `theta` is the most likely bin over `2^{n_w}`, lowest index on ties.
pub fn qpe(
    unitary: &impl ControlledUnitary,
    n_w: usize,
    initial_amps: &[Complex64],
    shots: Shots,
    seed: u64,
) -> Result<PhaseEstimate> {
    let t = unitary.time();
    if !(t > 0.0) {
        return Err(Error::Config(format!(
            "evolution time must be positive, got {t}"
        )));
    }
    if n_w == 0 || n_w + unitary.n_qubits() > MAX_QUBITS {
        return Err(Error::Config(format!(
            "{n_w} work + {} simulation qubits do not fit the simulator limit of {MAX_QUBITS}",
            unitary.n_qubits()
        )));
    }
    let mut psi = embed(initial_amps, unitary.n_qubits(), n_w)?;
    psi.apply_all(&qpe_circuit(unitary, n_w)?)?;
    let readout: Vec<usize> = (0..n_w).rev().collect();
    let probs = psi.probabilities(&readout)?;
    let distribution = match shots {
        Shots::Exact => probs,
        Shots::Finite(n) => sample_distribution(&probs, n, seed)?
            .into_iter()
            .map(|c| c as f64 / n as f64)
            .collect(),
    };
    let best = argmax(&distribution);
    let theta = best as f64 / (1u64 << n_w) as f64;
    Ok(PhaseEstimate {
        theta,
        energy: energy_from_theta(theta, t)?,
        distribution: Some(distribution),
        cos_est: None,
        sin_est: None,
    })
}

/// Index of the largest entry; the first one wins ties.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// The two single-work-qubit circuits: `H · C-U^r · H` and
/// `H · S · C-U^r · H`, work qubit 0 and simulation qubits `1..=n`.
pub fn ipe_circuits(
    unitary: &impl ControlledUnitary,
    repetitions: u64,
) -> Result<(Vec<Gate>, Vec<Gate>)> {
    let sim: Vec<usize> = (1..=unitary.n_qubits()).collect();
    let cu = unitary.controlled_gates(&sim, 0, repetitions)?;
    let mut cos = vec![Gate::H(0)];
    cos.extend(cu.iter().cloned());
    cos.push(Gate::H(0));
    let mut sin = vec![Gate::H(0), Gate::S(0)];
    sin.extend(cu);
    sin.push(Gate::H(0));
    Ok((cos, sin))
}

/// Iterative phase estimation from one cosine and one sine circuit.
///
/// With `repetitions = r` the controlled block is `U^r`, so the energy is
/// computed with the effective time `r·t`. A finite shot budget is split
/// evenly between the two circuits.
pub fn ipe(
    unitary: &impl ControlledUnitary,
    initial_amps: &[Complex64],
    repetitions: u64,
    shots: Shots,
    seed: u64,
) -> Result<PhaseEstimate> {
    if repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    let t = unitary.time() * repetitions as f64;
    if !(t > 0.0) {
        return Err(Error::Config(format!(
            "evolution time must be positive, got {t}"
        )));
    }
    let start = embed(initial_amps, unitary.n_qubits(), 1)?;
    let (cos_gates, sin_gates) = ipe_circuits(unitary, repetitions)?;
    let per_circuit = match shots {
        Shots::Exact => None,
        Shots::Finite(n) if n < 2 => {
            return Err(Error::Config(format!(
                "at least 2 shots are needed to run both circuits, got {n}"
            )))
        }
        Shots::Finite(n) => Some(n / 2),
    };
    let p0 = |gates: &[Gate], stream: u64| -> Result<f64> {
        let mut psi = start.clone();
        psi.apply_all(gates)?;
        let probs = psi.probabilities(&[0])?;
        match per_circuit {
            None => Ok(probs[0]),
            Some(n) => {
                let counts = sample_distribution(&probs, n, seed.wrapping_add(stream))?;
                Ok(counts[0] as f64 / n as f64)
            }
        }
    };
    let cos_est = 2.0 * p0(&cos_gates, 0)? - 1.0;
    let sin_est = 1.0 - 2.0 * p0(&sin_gates, 1)?;
    if cos_est.hypot(sin_est) < 1e-12 {
        return Err(Error::IndeterminatePhase);
    }
    let theta = normalise_turns(sin_est.atan2(cos_est) / (2.0 * PI));
    Ok(PhaseEstimate {
        theta,
        energy: energy_from_theta(theta, t)?,
        distribution: None,
        cos_est: Some(cos_est),
        sin_est: Some(sin_est),
    })
}

/// IPE of a phase written directly onto one simulation qubit in `|1⟩`.
/// `t` only sets the energy scale of the result.
pub fn ipe_single_qubit(theta_in: f64, t: f64, shots: Shots, seed: u64) -> Result<PhaseEstimate> {
    if !(0.0..1.0).contains(&theta_in) {
        return Err(Error::Config(format!(
            "input phase must lie in [0, 1), got {theta_in}"
        )));
    }
    let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    ipe(&PhaseKick { theta: theta_in, t }, &one, 1, shots, seed)
}

/// `bin,theta,energy,probability` rows for a QPE distribution.
pub fn distribution_csv(distribution: &[f64], t: f64) -> Result<String> {
    let size = distribution.len() as f64;
    let mut out = String::from("bin,theta,energy,probability\n");
    for (x, p) in distribution.iter().enumerate() {
        let theta = x as f64 / size;
        let energy = energy_from_theta(theta, t)?;
        writeln!(out, "{x},{theta},{energy},{p}").expect("writing to a String");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_conversion() {
        let e = energy_from_theta(11.0 / 16.0, 0.06).unwrap();
        assert!((e + 71.995).abs() < 1e-3, "{e}");
        assert_eq!(
            energy_from_theta(0.0, 0.06).unwrap().to_bits(),
            0.0f64.to_bits()
        );
        assert!(energy_from_theta(0.5, 0.0).is_err());
        assert!(energy_from_theta(0.5, -1.0).is_err());
        // -123 lies below -2π/t and aliases into the window.
        let theta = theta_from_energy(-123.0, 0.06).unwrap();
        let aliased = energy_from_theta(theta, 0.06).unwrap();
        assert!((aliased - (-123.0 + 2.0 * PI / 0.06)).abs() < 1e-9);
        assert!((aliased + 18.28).abs() < 0.01, "{aliased}");
    }

    #[test]
    fn single_qubit_round_trip() {
        for theta in [0.0, 0.125, 0.25, 0.5, 0.693, 0.9999] {
            let est = ipe_single_qubit(theta, 0.06, Shots::Exact, 0).unwrap();
            let diff = (est.theta - theta + 0.5).rem_euclid(1.0) - 0.5;
            assert!(diff.abs() < 1e-12, "{theta} -> {}", est.theta);
        }
    }

    #[test]
    fn quarter_and_half_turn_probabilities() {
        let q = ipe_single_qubit(0.25, 1.0, Shots::Exact, 0).unwrap();
        assert!(q.cos_est.unwrap().abs() < 1e-12);
        assert!((q.sin_est.unwrap() - 1.0).abs() < 1e-12);
        let h = ipe_single_qubit(0.5, 1.0, Shots::Exact, 0).unwrap();
        assert!((h.cos_est.unwrap() + 1.0).abs() < 1e-12);
        assert!(h.sin_est.unwrap().abs() < 1e-12);
        assert!((h.theta - 0.5).abs() < 1e-12);
    }

    #[test]
    fn single_qubit_validation() {
        assert!(ipe_single_qubit(1.0, 0.06, Shots::Exact, 0).is_err());
        assert!(ipe_single_qubit(-0.1, 0.06, Shots::Exact, 0).is_err());
        assert!(ipe_single_qubit(0.3, 0.06, Shots::Finite(1), 0).is_err());
    }

    #[test]
    fn argmax_prefers_lowest_index() {
        assert_eq!(argmax(&[0.1, 0.4, 0.4, 0.1]), 1);
        assert_eq!(argmax(&[0.25; 4]), 0);
    }

    #[test]
    fn csv_layout() {
        let csv = distribution_csv(&[0.5, 0.5], 0.06).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "bin,theta,energy,probability");
        assert_eq!(lines[1], "0,0,0,0.5");
        assert!(lines[2].starts_with("1,0.5,-52.35987755982"));
    }

    #[test]
    fn phase_kick_qpe_hits_exact_bin() {
        let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        for x in 0..16 {
            let kick = PhaseKick {
                theta: x as f64 / 16.0,
                t: 1.0,
            };
            let est = qpe(&kick, 4, &one, Shots::Exact, 0).unwrap();
            let dist = est.distribution.unwrap();
            assert!(dist[x] > 1.0 - 1e-12, "bin {x}: {dist:?}");
        }
    }
}
