//! Dense statevector kernel.
//!
//! A register of `n` qubits holds `2^n` complex amplitudes. The integer label
//! of a basis state is `j = Σ_m j_m 2^m`, so qubit `m` contributes bit `m`
//! and qubit 0 is the least significant bit.

mod dump;
mod gate;

pub use dump::{dump_circuit, dump_sections, format_gate, parse_circuit};
pub use gate::{Gate, GateKind};

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest register the kernel will allocate.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn new_zero(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut state = Self::new_zero(n_qubits)?;
        if index >= state.amps.len() {
            return Err(Error::Shape(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        state.amps[0] = Complex64::new(0.0, 0.0);
        state.amps[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Build a register from raw amplitudes, normalising them.
    pub fn from_amplitudes(amps: &[Complex64]) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::Shape(format!(
                "amplitude vector of length {} is not a power of two",
                amps.len()
            )));
        }
        let n_qubits = amps.len().trailing_zeros() as usize;
        let mut state = Self::new_zero(n_qubits)?;
        state.set_amplitudes(amps)?;
        Ok(state)
    }

    /// Replace the amplitudes with `amps / ‖amps‖`.
    pub fn set_amplitudes(&mut self, amps: &[Complex64]) -> Result<()> {
        if amps.len() != self.amps.len() {
            return Err(Error::Shape(format!(
                "expected {} amplitudes, got {}",
                self.amps.len(),
                amps.len()
            )));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidState(
                "amplitude vector has zero or non-finite norm".into(),
            ));
        }
        for (dst, src) in self.amps.iter_mut().zip(amps) {
            *dst = src / norm;
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::Shape("inner product of unequal registers".into()));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match *gate {
            Gate::H(q) => self.apply_hadamard(q),
            Gate::X(q) => self.apply_x(q),
            _ => {
                let (mask, phase) = gate.phase_mask().expect("diagonal gate");
                self.apply_phase_mask(mask, Complex64::from_polar(1.0, phase));
            }
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    fn apply_hadamard(&mut self, q: usize) {
        let stride = 1usize << q;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for base in (0..self.amps.len()).step_by(stride << 1) {
            for i in base..base + stride {
                let a = self.amps[i];
                let b = self.amps[i + stride];
                self.amps[i] = (a + b) * s;
                self.amps[i + stride] = (a - b) * s;
            }
        }
    }

    fn apply_x(&mut self, q: usize) {
        let stride = 1usize << q;
        for base in (0..self.amps.len()).step_by(stride << 1) {
            for i in base..base + stride {
                self.amps.swap(i, i + stride);
            }
        }
    }

    fn apply_phase_mask(&mut self, mask: usize, factor: Complex64) {
        if mask == 0 {
            self.amps.iter_mut().for_each(|a| *a *= factor);
            return;
        }
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= factor;
            }
        }
    }

    /// Marginal outcome probabilities of `subset`. Entry `x` is the
    /// probability that qubit `subset[b]` reads bit `b` of `x` for all `b`.
    pub fn probabilities(&self, subset: &[usize]) -> Result<Vec<f64>> {
        if subset.is_empty() {
            return Err(Error::Shape("empty measurement subset".into()));
        }
        for (i, &q) in subset.iter().enumerate() {
            if q >= self.n_qubits || subset[..i].contains(&q) {
                return Err(Error::Shape(format!(
                    "invalid measurement qubit {q} for {} qubits",
                    self.n_qubits
                )));
            }
        }
        let mut probs = vec![0.0; 1 << subset.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let x = subset
                .iter()
                .enumerate()
                .fold(0usize, |x, (b, &q)| x | (((i >> q) & 1) << b));
            probs[x] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Multinomial draw of `shots` outcomes from [`Self::probabilities`].
    /// Deterministic for a given `seed`.
    pub fn sample(&self, subset: &[usize], shots: u64, seed: u64) -> Result<Vec<u64>> {
        sample_distribution(&self.probabilities(subset)?, shots, seed)
    }
}

/// Multinomial histogram of `shots` draws from `probs`.
pub fn sample_distribution(probs: &[f64], shots: u64, seed: u64) -> Result<Vec<u64>> {
    if shots == 0 {
        return Err(Error::Config("shot count must be at least 1".into()));
    }
    let dist = WeightedIndex::new(probs)
        .map_err(|e| Error::InvalidState(format!("cannot sample distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..shots {
        counts[dist.sample(&mut rng)] += 1;
    }
    Ok(counts)
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Config(format!(
            "register size {n_qubits} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}
