use std::f64::consts::PI;

use wellsim::evolution::{kinetic_gates, EvolutionParams};
use wellsim::grid::{prepare_amplitudes, GridSpec, WaveFunction, WellSpec};
use wellsim::oracle::{
    assemble_unitary, distribution_from_components, expected_bound_state_count, hamiltonian,
    hermitian_eigen, predict_qpe_distribution, reference_propagator, solve_well,
    spectral_decomposition, CMatrix, KineticModel, SpectralComponent,
};
use wellsim::phaseest::{argmax, qpe, Shots};

fn paper() -> EvolutionParams {
    EvolutionParams::new(
        GridSpec::new(4, 0.5).unwrap(),
        WellSpec::new(100.0, 0.25).unwrap(),
        0.06,
        50,
    )
    .unwrap()
}

#[test]
fn kinetic_block_assembles_to_a_diagonal() {
    let u = assemble_unitary(&kinetic_gates(&paper(), &[0, 1, 2, 3]), 4).unwrap();
    assert!(u.max_off_diagonal() < 1e-14);
    assert!(u.unitarity_error() < 1e-9);
}

#[test]
fn reference_propagator_at_zero_time_is_identity() {
    let p = EvolutionParams::new(
        GridSpec::new(4, 0.5).unwrap(),
        WellSpec::new(0.0, 0.25).unwrap(),
        0.0,
        1,
    )
    .unwrap();
    let u = reference_propagator(&p, KineticModel::Approximated).unwrap();
    assert!(u.max_abs_diff(&CMatrix::identity(16)) < 1e-12);
}

#[test]
fn grid_hamiltonian_spectrum() {
    // Lowest eigenvalues of the 16-point grid Hamiltonian with centred
    // momenta, frozen from an independent dense solver.
    let p = paper();
    let h = hamiltonian(&p.grid, &p.well, KineticModel::Approximated).unwrap();
    let values = hermitian_eigen(&h).unwrap().values;
    assert!((values[0] + 88.412_342_742_685_67).abs() < 1e-8);
    assert!((values[1] + 54.701_220_683_643_13).abs() < 1e-8);
    assert!((values[2] + 8.981_933_645_219_932).abs() < 1e-8);
}

#[test]
fn grid_levels_track_the_continuum_well() {
    let p = paper();
    let exact = solve_well(&p.well).unwrap();
    assert_eq!(exact.len(), expected_bound_state_count(&p.well));
    let h = hamiltonian(&p.grid, &p.well, KineticModel::Exact).unwrap();
    let values = hermitian_eigen(&h).unwrap().values;
    for (grid_level, level) in values.iter().zip(&exact).take(2) {
        assert!(
            (grid_level - level.energy).abs() < 1.5,
            "{grid_level} vs {}",
            level.energy
        );
    }
}

#[test]
fn single_eigenstate_predictions() {
    let on_bin = [SpectralComponent {
        theta: 5.0 / 16.0,
        weight: 1.0,
    }];
    let d = distribution_from_components(&on_bin, 4);
    assert!((d[5] - 1.0).abs() < 1e-12);
    let mid = [SpectralComponent {
        theta: 5.5 / 16.0,
        weight: 1.0,
    }];
    let d = distribution_from_components(&mid, 4);
    assert!(d[5] >= 2.0 / (PI * PI) && d[6] >= 2.0 / (PI * PI));
}

#[test]
fn predicted_argmax_matches_simulation() {
    let p = paper();
    for psi in [WaveFunction::TrialGround, WaveFunction::TrialExcited] {
        let amps = prepare_amplitudes(&psi, &p.grid).unwrap();
        let pred = predict_qpe_distribution(&p, 4, &amps).unwrap();
        let sim = qpe(&p, 4, &amps, Shots::Exact, 0).unwrap();
        assert_eq!(argmax(&pred) as f64 / 16.0, sim.theta);
        let weights: f64 = spectral_decomposition(&p, &amps)
            .unwrap()
            .iter()
            .map(|c| c.weight)
            .sum();
        assert!((weights - 1.0).abs() < 1e-10);
    }
}
