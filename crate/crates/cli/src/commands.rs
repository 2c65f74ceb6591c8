use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use wellsim::evolution::{
    controlled_step, default_register, trotter_step, EvolutionParams, TrotterStep,
};
use wellsim::grid::{prepare_amplitudes, GridSpec, WaveFunction, WellSpec};
use wellsim::oracle::{
    compare_trotter, expected_bound_state_count, expm_hermitian, hamiltonian,
    predict_qpe_distribution, solve_well, trotter_step_unitary, unitary_eigen, wrap_angle,
    KineticModel,
};
use wellsim::phaseest::{distribution_csv, ipe, ipe_single_qubit, qpe};
use wellsim::statevec::{dump_circuit as dump_gates, parse_circuit, Gate, StateVector};
use wellsim::Complex64;

use crate::config::RunConfig;

fn well(cfg: &RunConfig) -> Result<WellSpec> {
    Ok(WellSpec::new(cfg.v0, cfg.a)?)
}

fn evolution(cfg: &RunConfig) -> Result<EvolutionParams> {
    let grid = GridSpec::new(cfg.n_sim, cfg.d)?;
    Ok(EvolutionParams::from_step(
        grid,
        well(cfg)?,
        cfg.dt,
        cfg.steps,
    )?)
}

fn initial_state(cfg: &RunConfig, grid: &GridSpec, well: &WellSpec) -> Result<Vec<Complex64>> {
    let psi = match cfg.state.as_str() {
        "ground" => WaveFunction::TrialGround,
        "excited" => WaveFunction::TrialExcited,
        "exact-ground" | "exact-excited" => {
            let level = usize::from(cfg.state == "exact-excited");
            let states = solve_well(well)?;
            let pair = states
                .get(level)
                .ok_or_else(|| anyhow!("the well has no bound state number {level}"))?;
            WaveFunction::Exact(*pair)
        }
        path => WaveFunction::Table(read_state_file(Path::new(path), grid)?),
    };
    Ok(prepare_amplitudes(&psi, grid)?)
}

/// Rows of `x re [im]`, one per grid point in ascending `x`. `#` starts a
/// comment.
fn read_state_file(path: &Path, grid: &GridSpec) -> Result<Vec<Complex64>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading state file {}", path.display()))?;
    let mut amps = Vec::with_capacity(grid.size());
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("{}:{}: expected numbers", path.display(), idx + 1))?;
        let (x, re, im) = match fields[..] {
            [x, re] => (x, re, 0.0),
            [x, re, im] => (x, re, im),
            _ => bail!("{}:{}: expected `x re [im]`", path.display(), idx + 1),
        };
        let k = amps.len();
        let Some(&xk) = grid.x_points.get(k) else {
            bail!(
                "{}: more rows than the {} grid points",
                path.display(),
                grid.size()
            );
        };
        if (x - xk).abs() > 1e-9 * grid.d.max(1.0) {
            bail!(
                "{}:{}: x = {x} does not match grid point x_{k} = {xk}",
                path.display(),
                idx + 1
            );
        }
        amps.push(Complex64::new(re, im));
    }
    if amps.len() != grid.size() {
        bail!(
            "{}: {} rows for {} grid points",
            path.display(),
            amps.len(),
            grid.size()
        );
    }
    Ok(amps)
}

pub fn solve_exact(cfg: &RunConfig) -> Result<Value> {
    let well = well(cfg)?;
    let states = solve_well(&well)?;
    Ok(json!({
        "config": cfg,
        "expected_count": expected_bound_state_count(&well),
        "bound_states": states,
    }))
}

pub fn simulate_qpe(cfg: &RunConfig, csv: Option<&Path>) -> Result<Value> {
    let params = evolution(cfg)?;
    let amps = initial_state(cfg, &params.grid, &params.well)?;
    let est = qpe(&params, cfg.n_work, &amps, cfg.shots.into(), cfg.seed)?;
    let distribution = est.distribution.as_deref().unwrap_or_default();
    if let Some(path) = csv {
        std::fs::write(path, distribution_csv(distribution, cfg.t)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let bins = 1u64 << cfg.n_work;
    Ok(json!({
        "config": cfg,
        "theta": est.theta,
        "energy": est.energy,
        "argmax_bin": (est.theta * bins as f64).round() as u64,
        "bin_width": 2.0 * PI / (cfg.t * bins as f64),
        "energy_window": [-2.0 * PI / cfg.t, 0.0],
        "distribution": distribution,
    }))
}

pub fn simulate_ipe(cfg: &RunConfig, theta: Option<f64>, repetitions: u64) -> Result<Value> {
    let (mode, est) = match theta {
        Some(theta) => (
            "theta-injection",
            ipe_single_qubit(theta, cfg.t, cfg.shots.into(), cfg.seed)?,
        ),
        None => {
            let params = evolution(cfg)?;
            let amps = initial_state(cfg, &params.grid, &params.well)?;
            (
                "evolution",
                ipe(&params, &amps, repetitions, cfg.shots.into(), cfg.seed)?,
            )
        }
    };
    Ok(json!({
        "config": cfg,
        "mode": mode,
        "repetitions": repetitions,
        "theta_in": theta,
        "theta": est.theta,
        "energy": est.energy,
        "cos_est": est.cos_est,
        "sin_est": est.sin_est,
    }))
}

pub struct Dump {
    pub text: String,
    pub verification: Option<Value>,
}

pub fn dump_circuit(
    cfg: &RunConfig,
    controlled: bool,
    repetitions: u64,
    verify: bool,
) -> Result<Dump> {
    let params = evolution(cfg)?;
    let n = params.n();
    let (step, n_qubits): (TrotterStep, usize) = if controlled {
        let sim: Vec<usize> = (1..=n).collect();
        (controlled_step(&params, &sim, 0)?, n + 1)
    } else {
        (trotter_step(&params, &default_register(n))?, n)
    };
    let count = params.steps * if controlled { repetitions } else { 1 };
    let mut text = format!(
        "# wellsim circuit: {count} Trotter steps on {n_qubits} qubits{}\n",
        if controlled { ", controlled by q0" } else { "" }
    );
    for s in 1..=count {
        for (label, gates) in step.sections() {
            writeln!(text, "# step {s}: {label}").expect("writing to a String");
            text.push_str(&dump_gates(gates));
        }
    }

    let verification = if verify {
        let direct: Vec<Gate> = (0..count).flat_map(|_| step.gates()).collect();
        let parsed = parse_circuit(&text)?;
        let sim_amps = initial_state(cfg, &params.grid, &params.well)?;
        let start = if controlled {
            // Work qubit in |1⟩ so the controlled evolution acts.
            let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
            for (k, &a) in sim_amps.iter().enumerate() {
                amps[(k << 1) | 1] = a;
            }
            StateVector::from_amplitudes(&amps)?
        } else {
            StateVector::from_amplitudes(&sim_amps)?
        };
        let mut a = start.clone();
        a.apply_all(&direct)?;
        let mut b = start;
        b.apply_all(&parsed)?;
        let deviation = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        let ok = parsed.len() == direct.len() && deviation < 1e-10;
        Some(json!({
            "gates": parsed.len(),
            "max_amplitude_deviation": deviation,
            "verified": ok,
        }))
    } else {
        None
    };
    Ok(Dump { text, verification })
}

#[derive(Serialize)]
struct PhasePair {
    reference: f64,
    circuit: f64,
    difference: f64,
}

pub fn compare_oracle(cfg: &RunConfig) -> Result<Value> {
    let params = evolution(cfg)?;
    let approx = compare_trotter(&params, KineticModel::Approximated)?;
    let exact = compare_trotter(&params, KineticModel::Exact)?;
    let halved = compare_trotter(&params.refined(2)?, KineticModel::Approximated)?;

    let h = hamiltonian(&params.grid, &params.well, KineticModel::Approximated)?;
    let reference = unitary_eigen(&expm_hermitian(&h, params.dt)?)?.phases;
    let circuit = unitary_eigen(&trotter_step_unitary(&params)?)?.phases;
    let mut pairs: Vec<PhasePair> = circuit
        .iter()
        .map(|&c| {
            let r = reference
                .iter()
                .copied()
                .min_by(|x, y| wrap_angle(c - x).abs().total_cmp(&wrap_angle(c - y).abs()))
                .unwrap_or(f64::NAN);
            PhasePair {
                reference: r,
                circuit: c,
                difference: wrap_angle(c - r),
            }
        })
        .collect();
    pairs.sort_by(|x, y| x.reference.total_cmp(&y.reference));

    let amps = initial_state(cfg, &params.grid, &params.well)?;
    let predicted = predict_qpe_distribution(&params, cfg.n_work, &amps)?;
    let simulated = qpe(
        &params,
        cfg.n_work,
        &amps,
        wellsim::phaseest::Shots::Exact,
        0,
    )?
    .distribution
    .unwrap_or_default();
    let gap = predicted
        .iter()
        .zip(&simulated)
        .map(|(p, s)| (p - s).abs())
        .fold(0.0, f64::max);

    Ok(json!({
        "config": cfg,
        "trotter": approx,
        "trotter_exact_momentum": exact,
        "trotter_half_step": halved,
        "halving_ratio": {
            "total_eigenphase_error": approx.total_eigenphase_error / halved.total_eigenphase_error,
            "total_operator_norm_error": approx.total_operator_norm_error / halved.total_operator_norm_error,
        },
        "step_eigenphases": pairs,
        "qpe_prediction_gap": gap,
    }))
}
