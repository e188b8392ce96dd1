//! Property-based checks of the structural invariants.

use proptest::prelude::*;

use thermal_transistor::channels::{eigen_relation_residual, jump_operators, non_dissipative_part, DARK_STATE};
use thermal_transistor::dynamics::{
    apply_drive, evolve_populations, DensityMatrix, Drivable, DriveSpec, PopulationVector,
};
use thermal_transistor::format::sci;
use thermal_transistor::model::{build_hamiltonian, EigenSystem, DIM};
use thermal_transistor::observables::{amplification_factor, amplification_factor_with_step, closed_form_populations};
use thermal_transistor::{SystemParams, Terminal, Transistor};

fn params() -> impl Strategy<Value = SystemParams> {
    (
        5.0..50.0f64,
        0.5..2.0f64,
        0.05..1.0f64,
        prop::array::uniform3(0.0..=1.0f64),
        prop::array::uniform3(1.0..10.0f64),
        1e-3..1e-2f64,
    )
        .prop_map(|(omega_l, omega_m, g, lambda, temperature, gamma)| SystemParams {
            omega_l,
            omega_m,
            g,
            lambda,
            temperature,
            gamma: [gamma; 3],
        })
        .prop_filter("dark state needs rho44", |p| !p.is_fully_common())
}

fn populations() -> impl Strategy<Value = PopulationVector> {
    prop::array::uniform8(0.0..1.0f64)
        .prop_filter("non-zero", |p| p.iter().sum::<f64>() > 1e-3)
        .prop_map(|p| {
            let s: f64 = p.iter().sum();
            PopulationVector::new(p.map(|x| x / s)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rate_matrix_is_a_generator(p in params()) {
        let t = Transistor::new(p).unwrap();
        let w = t.rates().matrix();
        for l in 0..DIM {
            let col: f64 = (0..DIM).map(|k| w[(k, l)]).sum();
            prop_assert!(col.abs() <= 1e-15 * w[(l, l)].abs().max(1e-300));
            for k in (0..DIM).filter(|&k| k != l) {
                prop_assert!(w[(k, l)] >= 0.0);
            }
        }
    }

    #[test]
    fn eigensystem_diagonalizes_hamiltonian(p in params()) {
        let eig = EigenSystem::analytic(&p).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        prop_assert!(eig.residual(&h) < 1e-12 * p.omega_r());
        prop_assert!(eig.orthogonality_error() < 1e-13);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn channels_are_eigen_operators(p in params()) {
        let t = Transistor::new(p).unwrap();
        for ch in t.channels() {
            prop_assert!(ch.frequency > 0.0);
            prop_assert!(eigen_relation_residual(ch, t.eigen()) < 1e-10 * ch.frequency.max(1.0));
        }
    }

    #[test]
    fn channels_and_remainder_rebuild_jump_operators(p in params()) {
        let t = Transistor::new(p).unwrap();
        let jumps = jump_operators(&p).unwrap();
        for nu in Terminal::ALL {
            let s = t.eigen().to_eigenbasis(&jumps[nu.index()]);
            let mut sum = non_dissipative_part(&jumps[nu.index()], t.eigen(), 1e-9);
            for ch in t.channels().iter().filter(|c| c.reservoir == nu) {
                sum += ch.operator();
            }
            prop_assert!((sum - s).amax() < 1e-12);
        }
    }

    #[test]
    fn steady_currents_are_conserved(p in params()) {
        let t = Transistor::new(p).unwrap();
        let (ss, q) = t.steady_currents(None).unwrap();
        prop_assert!((ss.sum() - 1.0).abs() < 1e-14);
        prop_assert!(q.conservation_residual() < 1e-10, "{:?}", q.q);
        prop_assert!(q.warning.is_none());
    }

    #[test]
    fn current_formulas_agree(p in params()) {
        let t = Transistor::new(p).unwrap();
        let (ss, q) = t.steady_currents(None).unwrap();
        let tr = t.heat_currents_trace_form(&ss);
        let flat = t.heat_currents(&ss);
        // the trace form runs in plain f64, so its round-off follows the
        // gross energy flux rather than the net current
        let w = t.rates().matrix();
        let gross: f64 = (0..DIM).map(|k| w[(k, k)].abs() * ss[k]).sum::<f64>() * p.omega_r();
        for (a, b) in tr.iter().zip(&flat.q) {
            let err = (a - b).abs();
            prop_assert!(err <= 1e-10 * q.max_abs() + 64.0 * f64::EPSILON * gross, "{err:e} vs {:e}", q.max_abs());
        }
    }

    #[test]
    fn equal_temperatures_give_gibbs(p in params(), temp in 1.0..10.0f64) {
        let p = SystemParams { temperature: [temp; 3], ..p };
        let t = Transistor::new(p).unwrap();
        let (ss, q) = t.steady_currents(None).unwrap();
        let e = &t.eigen().eigenvalues;
        let z: f64 = e.iter().map(|x| (-(x - e[0]) / temp).exp()).sum();
        for k in 0..DIM {
            prop_assert!((ss[k] - (-(e[k] - e[0]) / temp).exp() / z).abs() < 1e-10);
        }
        prop_assert!(q.max_abs() < 1e-12);
    }

    #[test]
    fn population_dynamics_stay_physical(p in params(), p0 in populations()) {
        let grid = [0.0, 10.0, 100.0, 1000.0];
        for s in evolve_populations(&p, &p0, &grid).unwrap() {
            prop_assert!((s.sum() - 1.0).abs() < 1e-12);
            prop_assert!(s.iter().all(|&x| x >= -1e-12));
        }
    }

    #[test]
    fn dark_population_is_conserved(
        omega_l in 5.0..50.0f64,
        g in 0.05..1.0f64,
        temperature in prop::array::uniform3(1.0..10.0f64),
        p0 in populations(),
    ) {
        let p = SystemParams { omega_l, g, temperature, lambda: [1.0; 3], ..SystemParams::reference() };
        for s in evolve_populations(&p, &p0, &[50.0, 5000.0]).unwrap() {
            prop_assert!((s[DARK_STATE] - p0[DARK_STATE]).abs() < 1e-12);
        }
    }

    #[test]
    fn dark_currents_scale_with_bright_weight(
        temperature in prop::array::uniform3(1.0..10.0f64),
        rho44 in 0.0..1.0f64,
    ) {
        let p = SystemParams { temperature, lambda: [1.0; 3], ..SystemParams::reference().with_g(0.3) };
        let t = Transistor::new(p).unwrap();
        let (_, q0) = t.steady_currents(Some(0.0)).unwrap();
        let (_, q) = t.steady_currents(Some(rho44)).unwrap();
        for k in 0..3 {
            prop_assert!((q.q[k] - (1.0 - rho44) * q0.q[k]).abs() <= 1e-12 * q0.max_abs());
        }
    }

    #[test]
    fn sum_rule_and_step_convergence(p in params()) {
        if let Ok(a) = amplification_factor(&p, Terminal::M, None) {
            prop_assert!(a.sum_rule_residual().abs() < 1e-6);
            let half = amplification_factor_with_step(&p, Terminal::M, 0.5 * a.dt, None).unwrap();
            let drift = (half.alpha_l - a.alpha_l).abs().max((half.alpha_r - a.alpha_r).abs());
            prop_assert!(drift <= 10.0 * a.convergence_estimate + 1e-9 * a.alpha_l.abs().max(1.0));
        }
    }

    #[test]
    fn closed_form_scales_with_bright_weight(t_m in 0.3..2.0f64, rho44 in 0.0..0.99f64) {
        let p = SystemParams { lambda: [1.0; 3], ..SystemParams::reference().with_g(0.3) }
            .with_temperature(Terminal::M, t_m);
        let base = closed_form_populations(&p, 0.0).unwrap();
        let cf = closed_form_populations(&p, rho44).unwrap();
        prop_assert!((cf.populations[DARK_STATE] - rho44).abs() < 1e-15);
        for k in [0, 1, 2, 4, 5] {
            prop_assert!((cf.populations[k] - (1.0 - rho44) * base.populations[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn drive_moves_population_within_the_pair(
        p0 in populations(),
        omega in 0.01..2.0f64,
        duration in 0.0..50.0f64,
    ) {
        let eig = EigenSystem::analytic(&SystemParams::reference()).unwrap();
        let d = DriveSpec::new(omega, duration, &eig).unwrap();
        let after = apply_drive(&p0, &d).unwrap();
        let (c2, s2) = (d.angle().cos().powi(2), d.angle().sin().powi(2));
        prop_assert!((after[3] - (c2 * p0[3] + s2 * p0[7])).abs() < 1e-14);
        prop_assert!((after[3] + after[7] - p0[3] - p0[7]).abs() < 1e-14);
        for k in [0, 1, 2, 4, 5, 6] {
            prop_assert!((after[k] - p0[k]).abs() < 1e-15);
        }
        let rho = DensityMatrix::from_populations(&p0).driven(&d).unwrap();
        prop_assert!((rho.matrix()[(3, 3)].re - after[3]).abs() < 1e-14);
    }

    #[test]
    fn csv_numbers_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::ZERO) {
        prop_assert_eq!(sci(x).parse::<f64>().unwrap(), x);
    }
}
