//! Collective jump operators and their eigen-operator decomposition.
//!
//! Every jump operator `S_nu` splits into components `S_{nu,k}` that each
//! connect eigenstate pairs separated by a single Bohr frequency
//! `w_{nu,k} > 0`, so that `[H, S_{nu,k}] = -w_{nu,k} S_{nu,k}`.
//! Two routes are provided: the closed-form coefficients
//! ([`channels_analytic`]) and a generic grouping of the matrix elements
//! `<e_i|S_nu|e_j>` by Bohr frequency ([`decompose_numeric`]).
//!
//! For `g > 0` the mixing of `|q>` with its all-flipped partner also gives
//! `S_nu` small matrix elements that *raise* the energy. Those components
//! are not dissipation channels; [`non_dissipative_part`] returns them so
//! the decomposition can be checked for completeness.

use std::f64::consts::FRAC_1_SQRT_2;
use std::io::Write;

use crate::error::{Error, Result};
use crate::format::sci;
use crate::model::{embed, require_valid, sigma_minus, sigma_plus, EigenSystem, Mat8, DIM};
use crate::params::{SystemParams, Terminal};

/// Default tolerance for grouping matrix elements by Bohr frequency.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-9;

/// Matrix elements below this magnitude are treated as zero.
pub const AMPLITUDE_THRESHOLD: f64 = 1e-12;

/// Index of `|e_4>`, the state that becomes dark for fully common coupling.
pub const DARK_STATE: usize = 3;

/// One matrix element `amplitude |e_lower><e_upper|` of an eigen-operator
/// (0-based eigenstate indices, `e_upper > e_lower`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub lower: usize,
    pub upper: usize,
    pub amplitude: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DissipationChannel {
    pub reservoir: Terminal,
    /// Channel label `k`, starting at 1.
    pub index: usize,
    /// Bohr frequency `w_{nu,k} > 0`.
    pub frequency: f64,
    pub transitions: Vec<Transition>,
}

impl DissipationChannel {
    /// `S_{nu,k}` in the energy eigenbasis.
    pub fn operator(&self) -> Mat8 {
        let mut op = Mat8::zeros();
        for t in &self.transitions {
            op[(t.lower, t.upper)] += t.amplitude;
        }
        op
    }

    pub fn touches(&self, state: usize) -> bool {
        self.transitions
            .iter()
            .any(|t| t.amplitude != 0.0 && (t.lower == state || t.upper == state))
    }
}

/// `S_L = s-_L + l1 s-_R s+_M`, `S_M = s-_M + l2 s+_L s-_R`,
/// `S_R = s-_R + l3 s-_L s-_M`, in the computational basis, indexed by
/// [`Terminal::index`].
pub fn jump_operators(params: &SystemParams) -> Result<[Mat8; 3]> {
    params.validate()?;
    let lower = |site| embed(site, &sigma_minus());
    let raise = |site| embed(site, &sigma_plus());
    let [l1, l2, l3] = params.lambda;
    Ok([
        lower(0) + lower(2) * raise(1) * l1,
        lower(1) + raise(0) * lower(2) * l2,
        lower(2) + lower(0) * lower(1) * l3,
    ])
}

/// Split `s` (computational basis) into positive-frequency eigen-operators.
///
/// Matrix elements are grouped by `e_j - e_i` with single linkage at
/// tolerance `tol`; channels are numbered by ascending frequency. Elements
/// at zero or negative frequency are not part of any channel.
pub fn decompose_numeric(
    reservoir: Terminal,
    s: &Mat8,
    eig: &EigenSystem,
    tol: f64,
) -> Result<Vec<DissipationChannel>> {
    let gap = eig.min_bohr_gap();
    if !(tol > 0.0 && tol < gap) {
        return Err(Error::AmbiguousGrouping { tol, gap });
    }
    let t = eig.to_eigenbasis(s);
    let mut elements: Vec<(f64, Transition)> = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let w = eig.eigenvalues[j] - eig.eigenvalues[i];
            let a = t[(i, j)];
            if w > tol && a.abs() > AMPLITUDE_THRESHOLD {
                elements.push((
                    w,
                    Transition {
                        lower: i,
                        upper: j,
                        amplitude: a,
                    },
                ));
            }
        }
    }
    elements.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut groups: Vec<Vec<(f64, Transition)>> = Vec::new();
    for el in elements {
        match groups.last_mut() {
            Some(g) if el.0 - g.last().unwrap().0 <= tol => g.push(el),
            _ => groups.push(vec![el]),
        }
    }
    Ok(groups
        .into_iter()
        .enumerate()
        .map(|(k, g)| {
            let frequency = g.iter().map(|e| e.0).sum::<f64>() / g.len() as f64;
            let mut transitions: Vec<Transition> = g.into_iter().map(|e| e.1).collect();
            transitions.sort_by_key(|t| (t.lower, t.upper));
            DissipationChannel {
                reservoir,
                index: k + 1,
                frequency,
                transitions,
            }
        })
        .collect())
}

/// Matrix elements of `s` (energy eigenbasis) at Bohr frequency `<= tol`:
/// everything [`decompose_numeric`] leaves out.
pub fn non_dissipative_part(s: &Mat8, eig: &EigenSystem, tol: f64) -> Mat8 {
    let mut t = eig.to_eigenbasis(s);
    for i in 0..DIM {
        for j in 0..DIM {
            if eig.eigenvalues[j] - eig.eigenvalues[i] > tol {
                t[(i, j)] = 0.0;
            }
        }
    }
    t
}

/// The twelve eigen-operators in closed form, ordered L1..L4, M1..M4,
/// R1..R4.
pub fn channels_analytic(params: &SystemParams, eig: &EigenSystem) -> Result<Vec<DissipationChannel>> {
    require_valid(params)?;
    let beta = match eig.mixing_angles {
        Some(b) => b,
        None => EigenSystem::analytic(params)?.mixing_angles.expect("analytic angles"),
    };
    let g = params.g;
    let er = params.omega_r().hypot(g);
    let el = params.omega_l.hypot(g);
    let em = params.omega_m.hypot(g);
    let e4 = g;
    let cr = beta.r.cos();
    let (sl, cl) = beta.l.sin_cos();
    let (sm, cm) = beta.m.sin_cos();
    let [l1, l2, l3] = params.lambda;
    let h = FRAC_1_SQRT_2;

    // (frequency, [(lower, upper, amplitude); 2]) with 1-based labels
    type Row = (f64, [(usize, usize, f64); 2]);
    let table: [(Terminal, [Row; 4]); 3] = [
        (
            Terminal::L,
            [
                (er - em, [(1, 3, -cr * cm), (6, 8, cr * cm)]),
                (er + em, [(1, 6, cr * sm), (3, 8, cr * sm)]),
                (el - e4, [(2, 4, h * cl * (l1 - 1.0)), (5, 7, h * cl * (l1 + 1.0))]),
                (el + e4, [(2, 5, h * cl * (1.0 + l1)), (4, 7, h * cl * (1.0 - l1))]),
            ],
        ),
        (
            Terminal::M,
            [
                (em - e4, [(3, 4, h * cm * (1.0 - l2)), (5, 6, h * cm * (1.0 + l2))]),
                (em + e4, [(3, 5, h * cm * (-1.0 - l2)), (4, 6, h * cm * (1.0 - l2))]),
                (er - el, [(1, 2, cr * cl), (7, 8, cr * cl)]),
                (er + el, [(1, 7, cr * sl), (2, 8, -cr * sl)]),
            ],
        ),
        (
            Terminal::R,
            [
                (er - e4, [(1, 4, h * cr * (1.0 - l3)), (5, 8, h * cr * (1.0 + l3))]),
                (er + e4, [(1, 5, h * cr * (l3 + 1.0)), (4, 8, h * cr * (l3 - 1.0))]),
                (el - em, [(2, 3, cl * sm), (6, 7, cl * sm)]),
                (el + em, [(2, 6, cl * cm), (3, 7, -cl * cm)]),
            ],
        ),
    ];

    Ok(table
        .iter()
        .flat_map(|(reservoir, rows)| {
            rows.iter()
                .enumerate()
                .map(move |(k, (frequency, entries))| DissipationChannel {
                    reservoir: *reservoir,
                    index: k + 1,
                    frequency: *frequency,
                    transitions: entries
                        .iter()
                        .map(|&(i, j, a)| Transition {
                            lower: i - 1,
                            upper: j - 1,
                            amplitude: a,
                        })
                        .collect(),
                })
        })
        .collect())
}

/// `[H, S] + w S` in the energy eigenbasis, Frobenius norm.
pub fn eigen_relation_residual(channel: &DissipationChannel, eig: &EigenSystem) -> f64 {
    let h = eig.hamiltonian_diag();
    let s = channel.operator();
    (h * s - s * h + s * channel.frequency).norm()
}

/// Debug table: one row per nonzero matrix element, eigenstate labels
/// 1-based.
pub fn write_channels_csv<W: Write>(channels: &[DissipationChannel], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["reservoir", "k", "frequency", "lower", "upper", "amplitude"])?;
    for c in channels {
        for t in &c.transitions {
            w.write_record([
                c.reservoir.label().to_string(),
                c.index.to_string(),
                sci(c.frequency),
                (t.lower + 1).to_string(),
                (t.upper + 1).to_string(),
                sci(t.amplitude),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::basis_index;

    fn params(lambda: [f64; 3]) -> SystemParams {
        SystemParams::reference().with_lambda(lambda)
    }

    #[test]
    fn independent_reservoirs_give_bare_lowering_operators() {
        let s = jump_operators(&params([0.0; 3])).unwrap();
        for (site, op) in s.iter().enumerate() {
            assert_eq!(*op, embed(site, &sigma_minus()));
        }
    }

    #[test]
    fn fully_correlated_r_operator_has_two_parts() {
        let s = jump_operators(&params([0.0, 0.0, 1.0])).unwrap();
        let sr = &s[Terminal::R.index()];
        let nonzero = sr.iter().filter(|&&x| x != 0.0).count();
        // four single flips of R plus two double flips of L and M
        assert_eq!(nonzero, 6);
        assert_eq!(sr[(basis_index(0, 0, 0), basis_index(0, 0, 1))], 1.0);
        assert_eq!(sr[(basis_index(0, 0, 0), basis_index(1, 1, 0))], 1.0);
        assert_eq!(sr[(basis_index(0, 0, 1), basis_index(1, 1, 1))], 1.0);
    }

    #[test]
    fn jump_operators_lower_free_energy() {
        let p = params([0.4, 0.5, 0.6]).with_g(0.0);
        let h = crate::model::build_hamiltonian(&p).unwrap();
        for s in jump_operators(&p).unwrap() {
            for i in 0..DIM {
                for j in 0..DIM {
                    if s[(i, j)] != 0.0 {
                        assert!(h[(i, i)] < h[(j, j)]);
                    }
                }
            }
        }
    }

    #[test]
    fn numeric_decomposition_has_four_channels_at_closed_form_frequencies() {
        let p = params([0.7; 3]);
        let eig = EigenSystem::analytic(&p).unwrap();
        let s = jump_operators(&p).unwrap();
        let chans = decompose_numeric(Terminal::L, &s[0], &eig, DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(chans.len(), 4);
        let (er, em, el, g) = (31f64.hypot(0.1), 1f64.hypot(0.1), 30f64.hypot(0.1), 0.1);
        let mut expected = vec![er - em, er + em, el - g, el + g];
        expected.sort_by(f64::total_cmp);
        for (c, w) in chans.iter().zip(expected) {
            assert!((c.frequency - w).abs() < 1e-12, "{} vs {}", c.frequency, w);
            assert_eq!(c.transitions.len(), 2);
        }
    }

    #[test]
    fn diagonal_operator_has_no_channels() {
        let p = params([0.7; 3]);
        let eig = EigenSystem::analytic(&p).unwrap();
        let h = crate::model::build_hamiltonian(&p).unwrap();
        let chans = decompose_numeric(Terminal::M, &h, &eig, DEFAULT_GROUPING_TOL).unwrap();
        assert!(chans.is_empty());
    }

    #[test]
    fn coarse_tolerance_is_refused() {
        let p = params([0.7; 3]);
        let eig = EigenSystem::analytic(&p).unwrap();
        let s = jump_operators(&p).unwrap();
        let err = decompose_numeric(Terminal::L, &s[0], &eig, 1.0).unwrap_err();
        assert!(matches!(err, Error::AmbiguousGrouping { .. }));
    }

    #[test]
    fn analytic_coefficients_special_values() {
        let p = params([1.0, 0.0, 0.3]);
        let eig = EigenSystem::analytic(&p).unwrap();
        let ch = channels_analytic(&p, &eig).unwrap();
        // a^-_{L,3} and a^-_{L,4} vanish at lambda1 = 1
        assert_eq!(ch[2].transitions[0].amplitude, 0.0);
        assert_eq!(ch[3].transitions[1].amplitude, 0.0);
        // lambda2 = 0: a^+_{M,1} = a^-_{M,1} = cos(beta_M)/sqrt(2)
        let cm = eig.mixing_angles.unwrap().m.cos();
        let m1 = &ch[4];
        assert!((m1.transitions[0].amplitude - cm * FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((m1.transitions[1].amplitude - cm * FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn analytic_channels_obey_eigen_relation() {
        let p = params([0.3, 0.8, 0.5]);
        let eig = EigenSystem::analytic(&p).unwrap();
        for c in channels_analytic(&p, &eig).unwrap() {
            assert!(c.frequency > 0.0);
            assert!(eigen_relation_residual(&c, &eig) < 1e-10, "{:?}", c);
        }
    }

    #[test]
    fn decomposition_is_complete_with_remainder() {
        for g in [0.0, 0.1, 0.7] {
            let p = params([0.3, 0.6, 0.9]).with_g(g);
            let eig = EigenSystem::analytic(&p).unwrap();
            for (nu, s) in jump_operators(&p).unwrap().iter().enumerate() {
                let chans = decompose_numeric(Terminal::ALL[nu], s, &eig, DEFAULT_GROUPING_TOL);
                // g = 0 merges channels; grouping is then refused only if gaps collapse
                let Ok(chans) = chans else { continue };
                let sum: Mat8 = chans.iter().map(|c| c.operator()).sum();
                let rest = non_dissipative_part(s, &eig, DEFAULT_GROUPING_TOL);
                let back = eig.from_eigenbasis(&(sum + rest));
                assert!((back - s).amax() < 1e-14);
                if g == 0.0 {
                    assert!(rest.amax() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn dark_state_is_untouched_when_fully_common() {
        let p = params([1.0; 3]).with_g(0.3);
        let eig = EigenSystem::analytic(&p).unwrap();
        for c in channels_analytic(&p, &eig).unwrap() {
            let op = c.operator();
            assert_eq!(op.row(DARK_STATE).amax(), 0.0);
            assert_eq!(op.column(DARK_STATE).amax(), 0.0);
        }
    }

    #[test]
    fn csv_dump_lists_every_element() {
        let p = params([0.7; 3]);
        let eig = EigenSystem::analytic(&p).unwrap();
        let ch = channels_analytic(&p, &eig).unwrap();
        let mut buf = Vec::new();
        write_channels_csv(&ch, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 24);
        assert!(text.starts_with("reservoir,k,frequency,lower,upper,amplitude\n"));
        assert!(text.contains("\nL,1,2.99951737277909"));
    }
}
