//! Quantum Fourier transform gate lists.
//!
//! No swap gates are emitted. A transform planned on qubits
//! `[q_0, …, q_{n-1}]` reads input bit `m` from `q_m` and leaves output bit
//! `m` on `q_{n-1-m}`; [`QftPlan::output_qubits`] gives that reversed order,
//! and downstream builders address the transformed register through it.
//!
//! The boundary-corrected transform `U_DFT` maps a momentum register onto the
//! symmetric position grid,
//!
//! `U_DFT |j⟩ = N^{-1/2} Σ_k e^{-i2πj(1/2-1/2N)} e^{i2πjk/N} e^{-i2πk(1/2-1/2N)} |k⟩`,
//!
//! which equals `e^{i p_j x_k}` up to a constant phase `C` that cancels
//! between `U_DFT` and `U_DFT†` and is therefore never emitted.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::statevec::Gate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QftPlan {
    /// `qubits[m]` holds input bit `m`.
    pub qubits: Vec<usize>,
    pub direction: Direction,
    /// Apply the symmetric-grid boundary phases (`U_DFT` instead of plain QFT).
    pub corrected: bool,
}

impl QftPlan {
    pub fn new(qubits: Vec<usize>, direction: Direction, corrected: bool) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::Shape("QFT needs at least one qubit".into()));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::Shape(format!("QFT lists qubit {q} twice")));
            }
        }
        Ok(Self {
            qubits,
            direction,
            corrected,
        })
    }

    /// `output_qubits()[m]` holds output bit `m` after the transform.
    pub fn output_qubits(&self) -> Vec<usize> {
        self.qubits.iter().rev().copied().collect()
    }

    /// Expand the plan. `d` is only consulted for corrected plans.
    pub fn gates(&self, d: f64) -> Result<Vec<Gate>> {
        match (self.direction, self.corrected) {
            (Direction::Forward, false) => Ok(qft_gates(&self.qubits)),
            (Direction::Inverse, false) => Ok(qft_inverse_gates(&self.qubits)),
            (Direction::Forward, true) => udft_gates(&self.qubits, d),
            (Direction::Inverse, true) => udft_inverse_gates(&self.qubits, d),
        }
    }
}

/// Forward QFT `|j⟩ → N^{-1/2} Σ_k e^{i2πjk/N} |k⟩`: `n` Hadamards and
/// `n(n-1)/2` controlled phases.
pub fn qft_gates(qubits: &[usize]) -> Vec<Gate> {
    let n = qubits.len();
    let mut gates = Vec::with_capacity(n + n * n.saturating_sub(1) / 2);
    for i in (0..n).rev() {
        gates.push(Gate::H(qubits[i]));
        for l in (0..i).rev() {
            let phase = 2.0 * PI / (1u64 << (i - l + 1)) as f64;
            gates.push(Gate::cu1(qubits[l], qubits[i], phase));
        }
    }
    gates
}

/// Inverse QFT: the forward circuit on the reversed register, run backwards
/// with negated phases.
pub fn qft_inverse_gates(qubits: &[usize]) -> Vec<Gate> {
    let reversed: Vec<usize> = qubits.iter().rev().copied().collect();
    qft_gates(&reversed)
        .iter()
        .rev()
        .map(Gate::inverse)
        .collect()
}

/// Per-unit phase `-2π(1/2 - 1/2N)` of the boundary correction; basis state
/// `j` picks up `boundary_phase · j`.
pub fn boundary_phase(n: usize) -> f64 {
    let size = (1u64 << n) as f64;
    -2.0 * PI * (0.5 - 0.5 / size)
}

/// The constant phase `C` (in turns) that separates `U_DFT` from the exact
/// `e^{i p_j x_k}` kernel. Diagnostic only.
pub fn dropped_constant_phase(n: usize, d: f64) -> f64 {
    let size = (1u64 << n) as f64;
    (size * d / 2.0 - 0.25 - d / 2.0 + 0.25 / size) / (2.0 * d)
}

fn require_half_width(d: f64) -> Result<()> {
    if (d - 0.5).abs() > 1e-12 {
        return Err(Error::Unsupported(format!(
            "boundary-corrected transform is only built for d = 1/2 (got d = {d}); \
             other half-widths change the controlled-phase angles of the general kernel \
             e^{{i2π(j - N/2 + 1/2)(k/N - d + 1/2N)/2d}}"
        )));
    }
    Ok(())
}

fn boundary_layer(qubits: &[usize], sign: f64) -> impl Iterator<Item = Gate> + '_ {
    let unit = boundary_phase(qubits.len());
    qubits
        .iter()
        .enumerate()
        .map(move |(m, &q)| Gate::u1(q, sign * unit * (1u64 << m) as f64))
}

/// `U_DFT`: momentum register on `qubits` (bit `m` on `qubits[m]`) to
/// position register on the reversed qubits.
pub fn udft_gates(qubits: &[usize], d: f64) -> Result<Vec<Gate>> {
    require_half_width(d)?;
    let out: Vec<usize> = qubits.iter().rev().copied().collect();
    let mut gates: Vec<Gate> = boundary_layer(qubits, 1.0).collect();
    gates.extend(qft_gates(qubits));
    gates.extend(boundary_layer(&out, 1.0));
    Ok(gates)
}

/// `U_DFT†`: position register on `qubits` to momentum register on the
/// reversed qubits.
pub fn udft_inverse_gates(qubits: &[usize], d: f64) -> Result<Vec<Gate>> {
    require_half_width(d)?;
    let out: Vec<usize> = qubits.iter().rev().copied().collect();
    let mut gates: Vec<Gate> = boundary_layer(qubits, -1.0).collect();
    gates.extend(qft_inverse_gates(qubits));
    gates.extend(boundary_layer(&out, -1.0));
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::GateKind;

    #[test]
    fn single_qubit_qft_is_hadamard() {
        assert_eq!(qft_gates(&[0]), vec![Gate::H(0)]);
        assert_eq!(qft_inverse_gates(&[0]), vec![Gate::H(0)]);
    }

    #[test]
    fn gate_counts() {
        for n in 1..=7 {
            let qubits: Vec<usize> = (0..n).collect();
            for gates in [qft_gates(&qubits), qft_inverse_gates(&qubits)] {
                let h = gates.iter().filter(|g| g.kind() == GateKind::H).count();
                let cu1 = gates.iter().filter(|g| g.kind() == GateKind::CU1).count();
                assert_eq!(h, n);
                assert_eq!(cu1, n * (n - 1) / 2);
                assert_eq!(gates.len(), h + cu1);
            }
        }
    }

    #[test]
    fn boundary_phase_on_qubit_zero() {
        let gates = udft_gates(&[0, 1, 2, 3], 0.5).unwrap();
        match gates[0] {
            Gate::U1 { target: 0, phase } => assert!((phase + 2.9452).abs() < 1e-4),
            ref g => panic!("unexpected first gate {g:?}"),
        }
        assert!((boundary_phase(4) + 2.0 * PI * (0.5 - 1.0 / 32.0)).abs() < 1e-15);
    }

    #[test]
    fn general_half_width_rejected() {
        let err = udft_gates(&[0, 1], 0.75).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
        assert!(udft_inverse_gates(&[0, 1], 1.0).is_err());
    }

    #[test]
    fn plan_validation() {
        assert!(QftPlan::new(vec![], Direction::Forward, false).is_err());
        assert!(QftPlan::new(vec![1, 1], Direction::Forward, false).is_err());
        let plan = QftPlan::new(vec![4, 2, 7], Direction::Inverse, true).unwrap();
        assert_eq!(plan.output_qubits(), vec![7, 2, 4]);
    }

    #[test]
    fn dropped_constant_for_half_width() {
        // Constant term of p_j x_k / 2π at d = 1/2: N/4 - 1/2 + 1/4N.
        let n = 4;
        let want = 16.0 / 4.0 - 0.5 + 1.0 / 64.0;
        assert!((dropped_constant_phase(n, 0.5) - want).abs() < 1e-14);
    }
}
