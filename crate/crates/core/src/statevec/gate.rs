use std::fmt;

use crate::error::{Error, Result};

/// Primitive gate kinds understood by the kernel and the circuit dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    S,
    U1,
    CU1,
    CCU1,
    /// Phase on the all-ones pattern of an arbitrary qubit set. Only emitted
    /// by the non-aligned potential fallback and its controlled promotion.
    MCU1,
    ConstPhase,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::S => "S",
            GateKind::U1 => "U1",
            GateKind::CU1 => "CU1",
            GateKind::CCU1 => "CCU1",
            GateKind::MCU1 => "MCU1",
            GateKind::ConstPhase => "CONST_PHASE",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "H" => GateKind::H,
            "X" => GateKind::X,
            "S" => GateKind::S,
            "U1" => GateKind::U1,
            "CU1" => GateKind::CU1,
            "CCU1" => GateKind::CCU1,
            "MCU1" => GateKind::MCU1,
            "CONST_PHASE" => GateKind::ConstPhase,
            _ => return None,
        })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One primitive gate with its qubit indices and (where meaningful) a phase
/// angle in radians.
///
/// All phase-type gates are diagonal: `U1`, `CU1`, `CCU1` and `MCU1` multiply
/// the amplitude of every basis state whose listed qubits are all `1` by
/// `e^{i phase}`, and `ConstPhase` multiplies the whole register.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    S(usize),
    U1 {
        target: usize,
        phase: f64,
    },
    CU1 {
        control: usize,
        target: usize,
        phase: f64,
    },
    CCU1 {
        controls: [usize; 2],
        target: usize,
        phase: f64,
    },
    MCU1 {
        qubits: Vec<usize>,
        phase: f64,
    },
    ConstPhase(f64),
}

impl Gate {
    pub fn u1(target: usize, phase: f64) -> Self {
        Gate::U1 { target, phase }
    }

    pub fn cu1(control: usize, target: usize, phase: f64) -> Self {
        Gate::CU1 {
            control,
            target,
            phase,
        }
    }

    pub fn ccu1(c0: usize, c1: usize, target: usize, phase: f64) -> Self {
        Gate::CCU1 {
            controls: [c0, c1],
            target,
            phase,
        }
    }

    /// Diagonal phase on the all-ones pattern of `qubits`, choosing the
    /// narrowest gate kind that fits.
    pub fn phase_on(qubits: &[usize], phase: f64) -> Self {
        match *qubits {
            [] => Gate::ConstPhase(phase),
            [t] => Gate::u1(t, phase),
            [c, t] => Gate::cu1(c, t, phase),
            [c0, c1, t] => Gate::ccu1(c0, c1, t, phase),
            _ => Gate::MCU1 {
                qubits: qubits.to_vec(),
                phase,
            },
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::S(_) => GateKind::S,
            Gate::U1 { .. } => GateKind::U1,
            Gate::CU1 { .. } => GateKind::CU1,
            Gate::CCU1 { .. } => GateKind::CCU1,
            Gate::MCU1 { .. } => GateKind::MCU1,
            Gate::ConstPhase(_) => GateKind::ConstPhase,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::S(q) => vec![*q],
            Gate::U1 { target, .. } => vec![*target],
            Gate::CU1 {
                control, target, ..
            } => vec![*control, *target],
            Gate::CCU1 {
                controls, target, ..
            } => vec![controls[0], controls[1], *target],
            Gate::MCU1 { qubits, .. } => qubits.clone(),
            Gate::ConstPhase(_) => Vec::new(),
        }
    }

    /// Phase angle for the phase-type kinds; `0` for `H`/`X`, `π/2` for `S`.
    pub fn phase(&self) -> f64 {
        match self {
            Gate::H(_) | Gate::X(_) => 0.0,
            Gate::S(_) => std::f64::consts::FRAC_PI_2,
            Gate::U1 { phase, .. }
            | Gate::CU1 { phase, .. }
            | Gate::CCU1 { phase, .. }
            | Gate::MCU1 { phase, .. }
            | Gate::ConstPhase(phase) => *phase,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        !matches!(self, Gate::H(_) | Gate::X(_))
    }

    /// Bit mask and phase of a diagonal gate: basis states `i` with
    /// `i & mask == mask` pick up `e^{i phase}`.
    pub(crate) fn phase_mask(&self) -> Option<(usize, f64)> {
        if !self.is_diagonal() {
            return None;
        }
        let mask = self.qubits().iter().fold(0usize, |m, &q| m | (1 << q));
        Some((mask, self.phase()))
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::H(q) => Gate::H(*q),
            Gate::X(q) => Gate::X(*q),
            Gate::S(q) => Gate::u1(*q, -std::f64::consts::FRAC_PI_2),
            g => Gate::phase_on(&g.qubits(), -g.phase()),
        }
    }

    /// Promote a diagonal gate by one control level on `control`.
    ///
    /// `H` and `X` have no promotion and return `None`; callers leave them
    /// uncontrolled.
    pub fn controlled_by(&self, control: usize) -> Option<Gate> {
        if !self.is_diagonal() {
            return None;
        }
        let mut qubits = vec![control];
        qubits.extend(self.qubits());
        Some(Gate::phase_on(&qubits, self.phase()))
    }

    /// Check that every index is `< n_qubits` and indices are distinct.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for (i, &q) in qubits.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::Shape(format!(
                    "{} targets qubit {q} on a {n_qubits}-qubit register",
                    self.kind()
                )));
            }
            if qubits[..i].contains(&q) {
                return Err(Error::Shape(format!(
                    "{} lists qubit {q} more than once",
                    self.kind()
                )));
            }
        }
        if self.kind() == GateKind::MCU1 && qubits.is_empty() {
            return Err(Error::Shape("MCU1 without qubits".into()));
        }
        Ok(())
    }

    /// Same gate with every qubit index passed through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::H(q) => Gate::H(map(*q)),
            Gate::X(q) => Gate::X(map(*q)),
            Gate::S(q) => Gate::S(map(*q)),
            Gate::ConstPhase(p) => Gate::ConstPhase(*p),
            g => {
                let qubits: Vec<usize> = g.qubits().into_iter().map(map).collect();
                Gate::phase_on(&qubits, g.phase())
            }
        }
    }
}
