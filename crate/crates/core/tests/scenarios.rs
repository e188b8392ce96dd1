//! End-to-end scenarios on the reference parameter sets.

use num_complex::Complex64;

use thermal_transistor::channels::{decompose_numeric, jump_operators, DEFAULT_GROUPING_TOL};
use thermal_transistor::dynamics::{
    bose_occupation, evolve_density_matrix, evolve_populations, CMat8, DensityMatrix, PopulationVector,
};
use thermal_transistor::experiments::{run_sweep, Config, SweepSpec};
use thermal_transistor::model::DIM;
use thermal_transistor::observables::{amplification_factor, optimize_lambda, Trend};
use thermal_transistor::{SystemParams, Terminal, Transistor};

fn fig2() -> SystemParams {
    Config::preset("fig2").unwrap().resolved_params().unwrap()
}

#[test]
fn equal_temperature_rates_obey_detailed_balance() {
    let temp = 1.7;
    let p = SystemParams {
        temperature: [temp; 3],
        ..fig2().with_lambda([0.4, 0.9, 0.2])
    };
    let t = Transistor::new(p).unwrap();
    let (w, e) = (t.rates().matrix(), &t.eigen().eigenvalues);
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            if w[(i, j)] > 0.0 {
                let ratio = w[(i, j)] / w[(j, i)];
                assert!((ratio / ((e[j] - e[i]) / temp).exp() - 1.0).abs() < 1e-12, "({i}, {j})");
            }
        }
    }
}

#[test]
fn rates_match_numeric_decomposition_entry_by_entry() {
    let p = fig2().with_lambda([0.0; 3]);
    let t = Transistor::new(p).unwrap();
    let jumps = jump_operators(&p).unwrap();
    let mut w = [[0.0; DIM]; DIM];
    for nu in Terminal::ALL {
        for ch in decompose_numeric(nu, &jumps[nu.index()], t.eigen(), DEFAULT_GROUPING_TOL).unwrap() {
            let n = bose_occupation(ch.frequency, p.temperature(nu)).unwrap();
            for tr in &ch.transitions {
                let a2 = tr.amplitude * tr.amplitude;
                w[tr.lower][tr.upper] += p.gamma(nu) * (n + 1.0) * a2;
                w[tr.upper][tr.lower] += p.gamma(nu) * n * a2;
            }
        }
    }
    let ours = t.rates().matrix();
    for k in 0..DIM {
        for l in (0..DIM).filter(|&l| l != k) {
            assert!((ours[(k, l)] - w[k][l]).abs() <= 1e-15 + 1e-12 * w[k][l], "({k}, {l})");
        }
    }
}

#[test]
fn ground_state_relaxes_to_the_linear_solve() {
    let p = fig2();
    let target = Transistor::new(p).unwrap().steady_state(None).unwrap();
    let out = evolve_populations(&p, &PopulationVector::ground(), &[2e5]).unwrap();
    assert!(out[0].max_abs_diff(&target) < 1e-8);
}

#[test]
fn density_matrix_tracks_population_dynamics() {
    let p = SystemParams {
        omega_l: 3.0,
        g: 0.4,
        ..fig2().with_lambda([0.6, 0.4, 0.3])
    };
    let p0 = PopulationVector::new([0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1]).unwrap();
    let grid = [0.0, 10.0, 100.0, 1000.0];
    let pops = evolve_populations(&p, &p0, &grid).unwrap();
    let rhos = evolve_density_matrix(&p, &DensityMatrix::from_populations(&p0), &grid).unwrap();
    for (a, b) in pops.iter().zip(&rhos) {
        for k in 0..DIM {
            assert!((a[k] - b.matrix()[(k, k)].re).abs() < 1e-10);
        }
        assert!(b.max_coherence() < 1e-14);
    }
}

#[test]
fn coherences_decay_and_trace_is_kept() {
    let p = SystemParams {
        omega_l: 3.0,
        g: 0.4,
        temperature: [3.0, 2.0, 1.5],
        gamma: [0.01; 3],
        ..fig2().with_lambda([0.6, 0.4, 0.3])
    };
    let psi = [Complex64::new(0.5f64.sqrt(), 0.0); 2];
    let mut v = [Complex64::new(0.0, 0.0); DIM];
    v[1] = psi[0];
    v[6] = psi[1] * Complex64::new(0.0, 1.0);
    let rho0 = DensityMatrix::pure(&v).unwrap();
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 300.0).collect();
    let out = evolve_density_matrix(&p, &rho0, &grid).unwrap();
    for rho in &out {
        assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }
    assert!(out[0].max_coherence() > 0.49);
    assert!(out.last().unwrap().max_coherence() < 1e-8);
    let m: &CMat8 = out.last().unwrap().matrix();
    assert!((m - m.adjoint()).iter().all(|z| z.norm() < 1e-14));
}

#[test]
fn fig2_sweep_shape() {
    let spec = SweepSpec::from_config(&Config::preset("fig2").unwrap()).unwrap();
    let records = run_sweep(&spec, 2).unwrap();
    assert_eq!(records.len(), 100);
    for rec in &records {
        let q = rec.currents.as_ref().unwrap();
        assert!(q.get(Terminal::L) > 0.0 && q.get(Terminal::R) < 0.0);
        assert!(q.get(Terminal::M).abs() < 0.1 * q.get(Terminal::L));
        assert_eq!(rec.secular.as_ref().unwrap().flag.to_string(), "PASS");
    }
    // Q_L changes by orders of magnitude while Q_M stays small
    let ql: Vec<f64> = records
        .iter()
        .map(|r| r.currents.as_ref().unwrap().get(Terminal::L))
        .collect();
    assert!(ql.last().unwrap() / ql[0] > 10.0);
}

#[test]
fn fig4_one_dimensional_scans() {
    let base = Config::preset("fig4a").unwrap().resolved_params().unwrap();
    let up = optimize_lambda(&base, &[0], 11, Terminal::M).unwrap();
    assert_eq!(up.axis(0).unwrap().trend, Trend::Increasing);
    assert_eq!(up.best().unwrap().lambda[0], 1.0);
    let down = optimize_lambda(&base, &[2], 11, Terminal::M).unwrap();
    assert_eq!(down.axis(2).unwrap().trend, Trend::Decreasing);
    assert_eq!(down.best().unwrap().lambda[2], 0.0);
}

#[test]
fn fig9a_bias_trend() {
    let cfg = Config::preset("fig9a").unwrap();
    let records = run_sweep(&SweepSpec::from_config(&cfg).unwrap(), 1).unwrap();
    let alpha: Vec<f64> = records.iter().map(|r| r.amplification.unwrap().alpha_l).collect();
    assert!(alpha.windows(2).all(|w| w[1] > w[0]), "{alpha:?}");
}

#[test]
fn every_terminal_can_be_the_control() {
    // at T_R = 0.5 the right bath is frozen out and dQ/dT_R underflows
    let p = fig2().with_temperature(Terminal::R, 3.0);
    for control in Terminal::ALL {
        let a = amplification_factor(&p, control, None).unwrap_or_else(|e| panic!("{control}: {e}"));
        assert_eq!(a.control, control);
        assert!(a.sum_rule_residual().abs() < 1e-6);
    }
    let frozen = amplification_factor(&fig2(), Terminal::R, None);
    assert!(matches!(
        frozen,
        Err(thermal_transistor::Error::DegenerateControl { .. })
    ));
}
