//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use wellsim::evolution::{
    controlled_evolution_gates, kinetic_gates, potential_gates, EvolutionParams,
};
use wellsim::grid::{prepare_amplitudes, GridSpec, WaveFunction, WellSpec};
use wellsim::oracle::{
    assemble_unitary, compare_trotter, fourier_matrix, predict_qpe_distribution, trotter_unitary,
    unitary_eigen, KineticModel,
};
use wellsim::phaseest::{argmax, energy_from_theta, ipe, ipe_single_qubit, qpe, Shots};
use wellsim::qft::{qft_gates, qft_inverse_gates};
use wellsim::statevec::{Gate, StateVector};
use wellsim::Complex64;

const T: f64 = 0.06;
const STEPS: u64 = 50;
const HALF_BIN: f64 = 3.28;

struct Outcome {
    pass: bool,
    detail: String,
}

struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: String) {
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn finish(self, elapsed: Duration, limit: Option<Duration>) -> Outcome {
        let mut failures = self.failures;
        if let Some(limit) = limit {
            if elapsed > limit {
                failures.push(format!("runtime {elapsed:.2?} exceeds {limit:?}"));
            }
        }
        let pass = failures.is_empty();
        let detail = if pass {
            self.notes.join("; ")
        } else {
            failures.join("; ")
        };
        Outcome {
            pass,
            detail: format!("{detail} [{elapsed:.2?}]"),
        }
    }
}

fn paper_params() -> EvolutionParams {
    EvolutionParams::new(
        GridSpec::new(4, 0.5).unwrap(),
        WellSpec::new(100.0, 0.25).unwrap(),
        T,
        STEPS,
    )
    .unwrap()
}

fn trial(psi: WaveFunction, grid: &GridSpec) -> Vec<Complex64> {
    prepare_amplitudes(&psi, grid).unwrap()
}

fn turn_distance(a: f64, b: f64) -> f64 {
    ((a - b + 0.5).rem_euclid(1.0) - 0.5).abs()
}

/// Deterministic spread of test states without a random-number dependency.
fn probe_state(seed: usize, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|k| {
            let x = (seed * 31 + k * 7) as f64;
            Complex64::new((1.3 * x + 0.7).sin(), (2.1 * x + 0.2).cos())
        })
        .collect()
}

fn exact_eigenvalues() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_wellsim"))
        .args(["solve-exact", "--v0", "100", "--a", "0.25"])
        .output()
        .expect("run wellsim");
    let elapsed = start.elapsed();
    let mut c = Checks::new();
    c.check(out.status.success(), "solve-exact exits 0".into());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let energies: Vec<f64> = report["bound_states"]
        .as_array()
        .map(|v| v.iter().filter_map(|s| s["energy"].as_f64()).collect())
        .unwrap_or_default();
    for (i, want) in [(0, -88.12), (1, -54.05)] {
        let got = energies.get(i).copied().unwrap_or(f64::NAN);
        c.check(
            (got - want).abs() <= 0.01,
            format!("E{i} = {got:.4} (want {want} ± 0.01)"),
        );
    }
    c.finish(elapsed, Some(Duration::from_secs(1)))
}

fn qpe_reproduction() -> Outcome {
    let start = Instant::now();
    let p = paper_params();
    let mut c = Checks::new();
    let ground_amps = trial(WaveFunction::TrialGround, &p.grid);
    let excited_amps = trial(WaveFunction::TrialExcited, &p.grid);
    let ground = qpe(&p, 4, &ground_amps, Shots::Exact, 0).unwrap();
    let excited = qpe(&p, 4, &excited_amps, Shots::Exact, 0).unwrap();
    let elapsed = start.elapsed();

    let (eg, ee) = (ground.energy, excited.energy);
    let targets = [-72.00, -65.44];
    let direct = (eg - targets[0]).abs() <= HALF_BIN && (ee - targets[1]).abs() <= HALF_BIN;
    let swapped = (eg - targets[1]).abs() <= HALF_BIN && (ee - targets[0]).abs() <= HALF_BIN;
    c.check(
        direct || swapped,
        format!("argmax energies ground-trial {eg:.2}, excited-trial {ee:.2} (want set {{-72.00, -65.44}} ± {HALF_BIN})"),
    );

    let dist = ground.distribution.clone().unwrap();
    let bump_bin = (0..16)
        .min_by(|&a, &b| {
            let ea = energy_from_theta(a as f64 / 16.0, T).unwrap();
            let eb = energy_from_theta(b as f64 / 16.0, T).unwrap();
            (ea + 39.27).abs().total_cmp(&(eb + 39.27).abs())
        })
        .unwrap();
    let local_max = dist[bump_bin] > dist[bump_bin - 1] && dist[bump_bin] > dist[bump_bin + 1];
    c.check(
        local_max,
        format!(
            "ground-trial bump at bin {bump_bin} (-39.27): P = {:.4} vs neighbours {:.4}, {:.4}",
            dist[bump_bin],
            dist[bump_bin - 1],
            dist[bump_bin + 1]
        ),
    );

    for (name, amps, est) in [
        ("ground", &ground_amps, &ground),
        ("excited", &excited_amps, &excited),
    ] {
        let predicted = predict_qpe_distribution(&p, 4, amps).unwrap();
        let agrees = argmax(&predicted) as f64 / 16.0 == est.theta;
        c.check(
            agrees,
            format!("{name}-trial argmax matches dense prediction"),
        );
    }
    c.finish(elapsed, Some(Duration::from_secs(60)))
}

fn ipe_reproduction() -> Outcome {
    let start = Instant::now();
    let p = paper_params();
    let mut c = Checks::new();
    for (name, psi, want) in [
        ("ground", WaveFunction::TrialGround, -72.56),
        ("excited", WaveFunction::TrialExcited, -65.85),
    ] {
        let est = ipe(&p, &trial(psi, &p.grid), 1, Shots::Exact, 0).unwrap();
        c.check(
            (est.energy - want).abs() <= 1.0,
            format!(
                "{name}-trial IPE energy {:.2} (want {want} ± 1.0)",
                est.energy
            ),
        );
    }
    c.finish(start.elapsed(), Some(Duration::from_secs(10)))
}

fn ipe_round_trip() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let range = 2.0 * PI / T;
    let (mut worst_exact, mut worst_sampled) = (0.0f64, 0.0f64);
    let samples = 200;
    for i in 1..samples {
        let energy = -range * i as f64 / samples as f64;
        let theta = -energy * T / (2.0 * PI);
        let exact = ipe_single_qubit(theta, T, Shots::Exact, 0).unwrap();
        worst_exact = worst_exact.max(turn_distance(exact.theta, theta));
        let sampled = ipe_single_qubit(theta, T, Shots::Finite(8192), i as u64).unwrap();
        worst_sampled = worst_sampled.max(turn_distance(sampled.theta, theta));
    }
    c.check(
        worst_exact < 1e-12,
        format!("exact round trip max error {worst_exact:.1e}"),
    );
    c.check(
        worst_sampled < 0.02,
        format!("8192-shot round trip max error {worst_sampled:.4}"),
    );
    let table5 = ipe_single_qubit(0.6930, T, Shots::Exact, 0).unwrap();
    c.check(
        turn_distance(table5.theta, 0.6930) < 1e-12,
        format!("theta 0.6930 recovered as {:.12}", table5.theta),
    );
    c.finish(start.elapsed(), None)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let p = paper_params();
    let mut c = Checks::new();
    let cmp = compare_trotter(&p, KineticModel::Approximated).unwrap();
    c.check(
        cmp.step_eigenphase_error < 2e-3,
        format!(
            "step eigenphase error {:.3e} rad",
            cmp.step_eigenphase_error
        ),
    );
    let halved = compare_trotter(&p.refined(2).unwrap(), KineticModel::Approximated).unwrap();
    let phase_ratio = cmp.total_eigenphase_error / halved.total_eigenphase_error;
    let norm_ratio = cmp.total_operator_norm_error / halved.total_operator_norm_error;
    c.check(
        (3.0..=5.0).contains(&phase_ratio) && (3.0..=5.0).contains(&norm_ratio),
        format!("dt-halving ratios: eigenphase {phase_ratio:.2}, operator norm {norm_ratio:.2}"),
    );

    let kinetic = assemble_unitary(&kinetic_gates(&p, &[0, 1, 2, 3]), 4).unwrap();
    let kinetic_dev = (0..16)
        .map(|j| {
            let want = Complex64::from_polar(1.0, p.alpha() * (j as f64 / 16.0 - 0.5).powi(2));
            (kinetic[(j, j)] - want).norm()
        })
        .fold(kinetic.max_off_diagonal(), f64::max);
    c.check(
        kinetic_dev < 1e-12,
        format!("kinetic diagonal deviation {kinetic_dev:.1e}"),
    );

    let phi = p.well.v0 * p.dt / 2.0;
    let potential = assemble_unitary(&potential_gates(&p, &[0, 1, 2, 3], phi), 4).unwrap();
    let potential_dev = (0..16)
        .map(|j| {
            let inside = ((j >> 3) & 1) != ((j >> 2) & 1);
            let want = Complex64::from_polar(1.0, if inside { phi } else { 0.0 });
            (potential[(j, j)] - want).norm()
        })
        .fold(potential.max_off_diagonal(), f64::max);
    c.check(
        potential_dev < 1e-15,
        format!("potential case table deviation {potential_dev:.1e}"),
    );
    c.finish(start.elapsed(), None)
}

fn invariant_suites() -> Outcome {
    let start = Instant::now();
    let p = paper_params();
    let mut c = Checks::new();
    // The largest block of the ladder: U^8, i.e. 8 × 50 = 400 controlled steps.
    let long = controlled_evolution_gates(&p, &[1, 2, 3, 4], 0, 8).unwrap();
    let mut worst_norm = 0.0f64;
    let mut worst_off = 0.0f64;
    for seed in 0..3 {
        let amps = probe_state(seed, 16);
        let mut full = vec![Complex64::new(0.0, 0.0); 32];
        for (k, a) in amps.iter().enumerate() {
            full[k << 1] = *a;
        }
        let start_state = StateVector::from_amplitudes(&full).unwrap();
        let mut off = start_state.clone();
        off.apply_all(&long).unwrap();
        worst_off = worst_off.max(
            off.amplitudes()
                .iter()
                .zip(start_state.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        );
        let mut mixed = start_state;
        mixed.apply(&Gate::H(0)).unwrap();
        mixed.apply_all(&long).unwrap();
        worst_norm = worst_norm.max((mixed.norm_sqr() - 1.0).abs());
    }
    c.check(
        worst_norm < 1e-10,
        format!("norm drift over 400 controlled steps {worst_norm:.1e}"),
    );
    c.check(
        worst_off < 1e-10,
        format!("control-off deviation {worst_off:.1e}"),
    );

    let mut worst_qft = 0.0f64;
    for n in 1..=5 {
        let qubits: Vec<usize> = (0..n).collect();
        let reversed: Vec<usize> = qubits.iter().rev().copied().collect();
        let start_state = StateVector::from_amplitudes(&probe_state(n, 1 << n)).unwrap();
        let mut psi = start_state.clone();
        psi.apply_all(&qft_gates(&qubits)).unwrap();
        psi.apply_all(&qft_inverse_gates(&reversed)).unwrap();
        let dev = psi
            .amplitudes()
            .iter()
            .zip(start_state.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        worst_qft = worst_qft.max(dev);
    }
    c.check(
        worst_qft < 1e-10,
        format!("QFT round trip deviation {worst_qft:.1e}"),
    );

    // Free particle with t = 1/16π: momentum eigenstates have phases on the
    // 4-bit grid.
    let aligned = EvolutionParams::new(
        GridSpec::new(4, 0.5).unwrap(),
        WellSpec::new(0.0, 0.25).unwrap(),
        1.0 / (16.0 * PI),
        5,
    )
    .unwrap();
    let f = fourier_matrix(&aligned.grid);
    let weakest_aligned = (0..16)
        .map(|j| {
            let d = qpe(&aligned, 4, &f.column(j), Shots::Exact, 0)
                .unwrap()
                .distribution
                .unwrap();
            d.iter().cloned().fold(0.0, f64::max)
        })
        .fold(1.0, f64::min);
    c.check(
        weakest_aligned > 0.999,
        format!("aligned eigenstate peak >= {weakest_aligned:.6}"),
    );

    let eig = unitary_eigen(&trotter_unitary(&p).unwrap()).unwrap();
    let weakest = (0..16)
        .map(|i| {
            let d = qpe(&p, 4, &eig.vector(i), Shots::Exact, 0)
                .unwrap()
                .distribution
                .unwrap();
            d.iter().cloned().fold(0.0, f64::max)
        })
        .fold(1.0, f64::min);
    c.check(
        weakest >= 4.0 / (PI * PI),
        format!(
            "unaligned eigenstate peak >= {weakest:.4} (bound {:.4})",
            4.0 / (PI * PI)
        ),
    );

    let mut worst_spectral = 0.0f64;
    let mut states = vec![
        trial(WaveFunction::TrialGround, &p.grid),
        trial(WaveFunction::TrialExcited, &p.grid),
    ];
    states.extend((0..3).map(|s| probe_state(100 + s, 16)));
    for amps in &states {
        let sim_dist = qpe(&p, 4, amps, Shots::Exact, 0)
            .unwrap()
            .distribution
            .unwrap();
        let pred = predict_qpe_distribution(&p, 4, amps).unwrap();
        for (a, b) in sim_dist.iter().zip(&pred) {
            worst_spectral = worst_spectral.max((a - b).abs());
        }
    }
    c.check(
        worst_spectral < 1e-6,
        format!("spectral consistency gap {worst_spectral:.1e}"),
    );
    c.finish(start.elapsed(), None)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("1 exact eigenvalues", exact_eigenvalues),
        ("2 QPE reproduction", qpe_reproduction),
        ("3 IPE reproduction", ipe_reproduction),
        ("4 IPE round trip", ipe_round_trip),
        ("5 oracle equivalence", oracle_equivalence),
        ("6 invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = run();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name}: {}", outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 6 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
