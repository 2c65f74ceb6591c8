//! Classical ground truth for the simulated pipeline.
//!
//! - [`solve_well`]: bound states of the square well from the matching
//!   conditions.
//! - [`assemble_unitary`]: dense matrix of a gate list.
//! - [`hamiltonian`] / [`reference_propagator`]: the grid Hamiltonian
//!   `H' = F·diag(K_j)·F† + diag(V_k)` and its exact exponential, with `F`
//!   built directly from `e^{i p_j x_k}` rather than from gates.
//! - [`predict_qpe_distribution`]: phase-estimation outcome probabilities
//!   from the eigendecomposition of the Trotter unitary.

mod linalg;
mod well;

use std::f64::consts::PI;

use serde::Serialize;

pub use linalg::{
    eigenphase_distance, expm_hermitian, hermitian_eigen, unitary_eigen, wrap_angle, CMatrix,
    HermitianEigen, UnitaryEigen,
};
pub use well::{expected_bound_state_count, solve_well, Parity, WellEigenpair};

use crate::error::{Error, Result};
use crate::evolution::{trotter_step_gates, EvolutionParams};
use crate::grid::{potential_on_grid, GridSpec, WellSpec};
use crate::statevec::{Gate, StateVector};
use crate::Complex64;

pub const MAX_ASSEMBLY_QUBITS: usize = 12;
pub const MAX_REFERENCE_QUBITS: usize = 10;
pub const MAX_PREDICTION_QUBITS: usize = 8;

/// Dense `2^n × 2^n` matrix of a gate list; column `j` is the image of `|j⟩`.
pub fn assemble_unitary(gates: &[Gate], n: usize) -> Result<CMatrix> {
    if n == 0 || n > MAX_ASSEMBLY_QUBITS {
        return Err(Error::Config(format!(
            "dense assembly supports 1..={MAX_ASSEMBLY_QUBITS} qubits, got {n}"
        )));
    }
    for g in gates {
        g.validate(n)?;
    }
    let dim = 1usize << n;
    let mut columns = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut psi = StateVector::basis(n, j)?;
        psi.apply_all(gates)?;
        columns.push(psi.amplitudes().to_vec());
    }
    CMatrix::from_columns(&columns)
}

/// Momentum values used for the kinetic diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KineticModel {
    /// `p̃_j = 2π(j - N/2)`, the value realised by the kinetic gates.
    Approximated,
    /// Grid momentum `p_j = (π/d)(j + 1/2 - N/2)`.
    Exact,
}

pub fn momenta(grid: &GridSpec, model: KineticModel) -> Vec<f64> {
    let half = grid.size() as f64 / 2.0;
    match model {
        KineticModel::Approximated => (0..grid.size())
            .map(|j| 2.0 * PI * (j as f64 - half))
            .collect(),
        KineticModel::Exact => grid.p_points.clone(),
    }
}

/// `F_{kj} = e^{i p_j x_k} / √N`.
pub fn fourier_matrix(grid: &GridSpec) -> CMatrix {
    let norm = (grid.size() as f64).sqrt();
    CMatrix::from_fn(grid.size(), |k, j| {
        Complex64::from_polar(1.0 / norm, grid.p_points[j] * grid.x_points[k])
    })
}

/// Grid Hamiltonian `F·diag(p²/2)·F† + diag(V)`.
pub fn hamiltonian(grid: &GridSpec, well: &WellSpec, model: KineticModel) -> Result<CMatrix> {
    if grid.n > MAX_REFERENCE_QUBITS {
        return Err(Error::Config(format!(
            "reference Hamiltonian supports at most {MAX_REFERENCE_QUBITS} qubits, got {}",
            grid.n
        )));
    }
    let f = fourier_matrix(grid);
    let kinetic: Vec<Complex64> = momenta(grid, model)
        .iter()
        .map(|p| Complex64::new(p * p / 2.0, 0.0))
        .collect();
    let t = f
        .matmul(&CMatrix::from_diagonal(&kinetic))
        .matmul(&f.adjoint());
    let v: Vec<Complex64> = potential_on_grid(well, grid)
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let mut h = t.add(&CMatrix::from_diagonal(&v));
    // Remove rounding asymmetry so the result is Hermitian to machine precision.
    h = h.add(&h.adjoint()).scale(Complex64::new(0.5, 0.0));
    Ok(h)
}

/// `exp(-i H' t)` for the total evolution time of `params`.
pub fn reference_propagator(params: &EvolutionParams, model: KineticModel) -> Result<CMatrix> {
    let h = hamiltonian(&params.grid, &params.well, model)?;
    expm_hermitian(&h, params.total_time())
}

/// Dense matrix of a single Trotter step on the default register.
pub fn trotter_step_unitary(params: &EvolutionParams) -> Result<CMatrix> {
    assemble_unitary(&trotter_step_gates(params)?, params.n())
}

/// Dense `U'(t)`: the step matrix raised to the number of steps.
pub fn trotter_unitary(params: &EvolutionParams) -> Result<CMatrix> {
    Ok(trotter_step_unitary(params)?.pow(params.steps))
}

/// Trotter circuit against the dense reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrotterComparison {
    pub dt: f64,
    pub steps: u64,
    /// Eigenphase distance between one step and `exp(-iH'Δt)`, in radians.
    pub step_eigenphase_error: f64,
    /// Largest elementwise deviation of one step from `exp(-iH'Δt)`.
    pub step_max_abs_error: f64,
    /// Eigenphase distance between `U'(t)` and `exp(-iH't)`.
    pub total_eigenphase_error: f64,
    /// Spectral norm of `U'(t) - exp(-iH't)`.
    pub total_operator_norm_error: f64,
    /// Max phase deviation of the gate kinetic diagonal from exact grid momenta.
    pub kinetic_approximation_gap: f64,
}

pub fn compare_trotter(params: &EvolutionParams, model: KineticModel) -> Result<TrotterComparison> {
    let h = hamiltonian(&params.grid, &params.well, model)?;
    let step = trotter_step_unitary(params)?;
    let reference_step = expm_hermitian(&h, params.dt)?;
    let total = step.pow(params.steps);
    let reference_total = expm_hermitian(&h, params.total_time())?;
    Ok(TrotterComparison {
        dt: params.dt,
        steps: params.steps,
        step_eigenphase_error: eigenphase_distance(
            &unitary_eigen(&step)?.phases,
            &unitary_eigen(&reference_step)?.phases,
        ),
        step_max_abs_error: step.max_abs_diff(&reference_step),
        total_eigenphase_error: eigenphase_distance(
            &unitary_eigen(&total)?.phases,
            &unitary_eigen(&reference_total)?.phases,
        ),
        total_operator_norm_error: total.sub(&reference_total).operator_norm()?,
        kinetic_approximation_gap: crate::evolution::kinetic_approximation_gap(params),
    })
}

/// Eigenphase `θ ∈ [0, 1)` (in turns) of `U'(t)` with the weight
/// `|⟨u|ψ₀⟩|²` of the initial state on that eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralComponent {
    pub theta: f64,
    pub weight: f64,
}

/// Decompose `initial_amps` (position basis, unnormalised) over the
/// eigenvectors of the assembled Trotter unitary.
pub fn spectral_decomposition(
    params: &EvolutionParams,
    initial_amps: &[Complex64],
) -> Result<Vec<SpectralComponent>> {
    if params.n() > MAX_PREDICTION_QUBITS {
        return Err(Error::Config(format!(
            "spectral prediction supports at most {MAX_PREDICTION_QUBITS} simulation qubits"
        )));
    }
    let dim = params.grid.size();
    if initial_amps.len() != dim {
        return Err(Error::Shape(format!(
            "initial state has {} amplitudes, grid has {dim} bins",
            initial_amps.len()
        )));
    }
    let norm: f64 = initial_amps.iter().map(|a| a.norm_sqr()).sum();
    if !(norm > 0.0) {
        return Err(Error::InvalidState("initial state has zero norm".into()));
    }
    let eig = unitary_eigen(&trotter_unitary(params)?)?;
    Ok((0..dim)
        .map(|i| {
            let v = eig.vector(i);
            let overlap: Complex64 = v.iter().zip(initial_amps).map(|(u, a)| u.conj() * a).sum();
            SpectralComponent {
                theta: (eig.phases[i] / (2.0 * PI)).rem_euclid(1.0),
                weight: overlap.norm_sqr() / norm,
            }
        })
        .collect())
}

/// Probability that an ideal `n_w`-bit phase estimation of an eigenstate
/// with phase `theta` reads bin `x`: `|2^{-n_w} Σ_k e^{2πik(θ - x/2^{n_w})}|²`.
pub fn fejer_weight(theta: f64, x: usize, n_w: usize) -> f64 {
    let size = (1usize << n_w) as f64;
    let delta = theta - x as f64 / size;
    let sum: Complex64 = (0..1usize << n_w)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 * delta))
        .sum();
    (sum / size).norm_sqr()
}

/// Exact phase-estimation outcome distribution over `2^{n_w}` bins.
pub fn predict_qpe_distribution(
    params: &EvolutionParams,
    n_w: usize,
    initial_amps: &[Complex64],
) -> Result<Vec<f64>> {
    if n_w == 0 || n_w > MAX_PREDICTION_QUBITS {
        return Err(Error::Config(format!(
            "spectral prediction supports 1..={MAX_PREDICTION_QUBITS} work qubits, got {n_w}"
        )));
    }
    let components = spectral_decomposition(params, initial_amps)?;
    Ok(distribution_from_components(&components, n_w))
}

pub fn distribution_from_components(components: &[SpectralComponent], n_w: usize) -> Vec<f64> {
    (0..1usize << n_w)
        .map(|x| {
            components
                .iter()
                .map(|c| c.weight * fejer_weight(c.theta, x, n_w))
                .sum()
        })
        .collect()
}
