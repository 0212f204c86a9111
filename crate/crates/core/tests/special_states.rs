use std::f64::consts::{E, PI};

use approx::assert_relative_eq;
use rydinfo_core::complexity::{cramer_rao, disequilibrium, fisher_shannon, lmc};
use rydinfo_core::entropy::shannon;
use rydinfo_core::moments::{p_moment, r_moment};
use rydinfo_core::report::converge;
use rydinfo_core::special::*;
use rydinfo_core::states::Space;

const TOL: f64 = 1e-12;
const EULER: f64 = 0.577_215_664_901_532_9;

fn mapped(kind: SpecialKind, n: u32) -> rydinfo_core::states::QuantumState {
    SpecialState::new(kind, n, 1.0).unwrap().state().unwrap()
}

#[test]
fn consistent_printed_forms_match_general_machinery() {
    for n in [1u32, 2, 3, 6, 11, 17] {
        let s = mapped(SpecialKind::Circular, n);
        assert_relative_eq!(circ_moment(n, 1.0, 2.0, Space::Position).unwrap(), r_moment(&s, 2.0, TOL).unwrap().value, max_relative = 1e-9);
        assert_relative_eq!(circ_moment(n, 1.0, 1.5, Space::Momentum).unwrap(), p_moment(&s, 1.5, TOL).unwrap().value, max_relative = 1e-9);
        assert_relative_eq!(circ_shannon(n, 1.0, Space::Position).unwrap(), shannon(&s, Space::Position, TOL).unwrap().value, epsilon = 1e-8);
        let (dp, dg) = circ_disequilibrium(n, 1.0).unwrap();
        assert_relative_eq!(dp, disequilibrium(&s, Space::Position, TOL).unwrap().value, max_relative = 1e-8);
        assert_relative_eq!(dg, disequilibrium(&s, Space::Momentum, TOL).unwrap().value, max_relative = 1e-8);
        let (cp, cg) = circ_complexities(n).unwrap();
        assert_relative_eq!(cp.cramer_rao.value, cramer_rao(&s, Space::Position), max_relative = 1e-13);
        assert_relative_eq!(cg.cramer_rao.value, cramer_rao(&s, Space::Momentum), max_relative = 1e-13);
        assert_relative_eq!(cp.lmc.value, lmc(&s, Space::Position, TOL).unwrap().value, max_relative = 1e-8);
        assert_relative_eq!(cp.fisher_shannon.value, fisher_shannon(&s, Space::Position, TOL).unwrap().value, max_relative = 1e-8);
    }
    for n in [2u32, 3, 5, 9, 16] {
        let s = mapped(SpecialKind::Quasicircular, n);
        assert_relative_eq!(quasi_moment(n, 1.0, -1.0, Space::Position).unwrap(), r_moment(&s, -1.0, TOL).unwrap().value, max_relative = 1e-9);
        assert_relative_eq!(quasi_moment(n, 1.0, 0.5, Space::Momentum).unwrap(), p_moment(&s, 0.5, TOL).unwrap().value, max_relative = 1e-9);
        assert_relative_eq!(quasi_shannon_position(n, 1.0, TOL).unwrap().value, shannon(&s, Space::Position, TOL).unwrap().value, epsilon = 1e-8);
        assert_relative_eq!(quasi_shannon_momentum(n, 1.0).unwrap(), shannon(&s, Space::Momentum, TOL).unwrap().value, epsilon = 1e-8);
        let (wp, wg) = quasi_disequilibrium(n, 1.0).unwrap();
        assert_relative_eq!(wp, disequilibrium(&s, Space::Position, TOL).unwrap().value, max_relative = 1e-8);
        assert_relative_eq!(wg, disequilibrium(&s, Space::Momentum, TOL).unwrap().value, max_relative = 1e-8);
        let (fs, lm) = quasi_momentum_complexities(n).unwrap();
        assert_relative_eq!(fs, fisher_shannon(&s, Space::Momentum, TOL).unwrap().value, max_relative = 1e-8);
        assert_relative_eq!(lm, lmc(&s, Space::Momentum, TOL).unwrap().value, max_relative = 1e-8);
    }
}

#[test]
fn printed_circular_momentum_forms_disagree() {
    // the momentum entropy is off by 8/(4n² − 1) and the Fisher–Shannon
    // form additionally carries a stray factor n
    for n in [1u32, 2, 5, 12] {
        let s = mapped(SpecialKind::Circular, n);
        let nf = n as f64;
        let shift = 8.0 / (4.0 * nf * nf - 1.0);
        let q = shannon(&s, Space::Momentum, TOL).unwrap().value;
        assert_relative_eq!(q - circ_shannon(n, 1.0, Space::Momentum).unwrap(), shift, epsilon = 1e-8);
        let (_, cg) = circ_complexities(n).unwrap();
        let fs = fisher_shannon(&s, Space::Momentum, TOL).unwrap().value;
        assert_relative_eq!(cg.fisher_shannon.value / fs, nf * (-2.0 * shift / 3.0).exp(), max_relative = 1e-8);
        let l = lmc(&s, Space::Momentum, TOL).unwrap().value;
        assert_relative_eq!(cg.lmc.value / l, (-shift).exp(), max_relative = 1e-8);
    }
}

#[test]
fn printed_asymptotics_converge() {
    let ns = [20, 40, 80, 160];
    for q in [
        "shannon-circular-position",
        "shannon-circular-momentum",
        "lmc-circular-position",
        "lmc-circular-momentum",
        "fisher-shannon-circular-position",
        "fisher-shannon-circular-momentum",
        "shannon-quasicircular-position",
        "shannon-quasicircular-momentum",
        "fisher-shannon-quasicircular-position",
        "lmc-quasicircular-position",
        "in-term",
    ] {
        let t = converge(q, 0, 0, 1.0, &ns, 1e-11).unwrap();
        assert!(t.monotone, "{q}: {:?}", t.rows.iter().map(|r| r.difference).collect::<Vec<_>>());
    }
    // n^{-2/3} and n^{-7/6} corrections compete below n ≈ 40
    {
        let q = "fisher-shannon-quasicircular-momentum";
        let t = converge(q, 0, 0, 1.0, &[40, 80, 160, 320], 1e-11).unwrap();
        assert!(t.monotone, "{q}: {:?}", t.rows.iter().map(|r| r.difference).collect::<Vec<_>>());
    }
}

#[test]
fn heuristic_in_term() {
    let d: Vec<f64> = [20u32, 40, 80]
        .iter()
        .map(|&n| -in_scaled_quadrature(n, TOL).unwrap().value / (2.0 * n as f64) + (n as f64).ln() - EULER + 2.0)
        .collect();
    assert!(d.windows(2).all(|w| w[1].abs() < w[0].abs()));
    assert!(d[2].abs() < 0.02);
}

#[test]
fn limits_of_the_circular_family() {
    let s = mapped(SpecialKind::Circular, 160);
    let fs_const = 2f64.powf(5.0 / 3.0) * (PI / E).cbrt();
    for space in [Space::Position, Space::Momentum] {
        let l = lmc(&s, space, 1e-11).unwrap().value;
        assert!((l / (E / 2.0) - 1.0).abs() < 0.01);
        let fs = fisher_shannon(&s, space, 1e-11).unwrap().value / 160f64.cbrt();
        assert!((fs / fs_const - 1.0).abs() < 0.05);
    }
}

#[test]
fn hypergeometric_route_is_capped() {
    for n in 2..=6u32 {
        assert_relative_eq!(in_hypergeometric(n).unwrap(), in_quadrature(n, TOL).unwrap().value, max_relative = 1e-7);
    }
    assert!(in_hypergeometric(IN_HYPERGEOMETRIC_MAX_N + 1).is_err());
}
