mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use qdwire::linalg::{eigh, gibbs_state, ComplexMatrix};
use qdwire::model::build_hamiltonian;
use qdwire::states::{ground_state, marginal, reduce_over_majorana, reduce_thermal, trace_out_majorana, Dot, Sector};
use qdwire::{DensityMatrix, ModelParams, TieRule, WaveFunction};

#[test]
fn closed_form_reduction_matches_brute_force_partial_trace() {
    let mut r = rng(31);
    for _ in 0..500 {
        let amps = random_amplitudes(&mut r);
        let w = WaveFunction::new(amps, 0.0).unwrap();
        let rho = reduce_over_majorana(&w);
        assert!(max_diff4(rho.matrix(), &brute_force_reduce(&w.amplitudes)) < 1e-13);
    }
}

#[test]
fn matrix_partial_trace_matches_brute_force() {
    let mut r = rng(32);
    for _ in 0..200 {
        let amps = random_amplitudes(&mut r);
        let rho8 = ComplexMatrix::outer(&amps);
        assert!(max_diff4(&trace_out_majorana(&rho8), &brute_force_reduce(&amps)) < 1e-14);
    }
}

#[test]
fn ground_states_are_sector_pure_eigenvectors() {
    let mut r = rng(33);
    for _ in 0..300 {
        let p = random_params(&mut r);
        let g = ground_state(&p, TieRule::Both).unwrap();
        let full = eigh(&ComplexMatrix::from_hamiltonian(&build_hamiltonian(&p))).unwrap();
        for w in &g.states {
            assert!((w.energy - full.values[0]).abs() < 1e-10);
            let (lo, hi) = match w.sector {
                Sector::Odd => (0, 4),
                Sector::Even => (4, 8),
                Sector::Mixed => panic!("ground state mixes sectors"),
            };
            for (n, a) in w.amplitudes.iter().enumerate() {
                if !(lo..hi).contains(&n) {
                    assert_eq!(a.norm(), 0.0);
                }
            }
            // H|G⟩ = E|G⟩
            let h = build_hamiltonian(&p);
            for i in 0..8 {
                let hv: Complex64 = (0..8).map(|j| w.amplitudes[j] * h.get(i, j)).sum();
                assert!((hv - w.amplitudes[i] * w.energy).norm() < 1e-10);
            }
        }
        if g.states.len() > 1 {
            assert!(g.degenerate);
        }
    }
}

#[test]
fn tie_rules_pick_the_requested_sector() {
    // decoupled dots at zero energy: both parities share the ground energy
    let p = ModelParams::new(2.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
    let even = ground_state(&p, TieRule::EvenFirst).unwrap();
    let odd = ground_state(&p, TieRule::OddFirst).unwrap();
    let both = ground_state(&p, TieRule::Both).unwrap();
    assert!(even.degenerate && odd.degenerate && both.degenerate);
    assert_eq!(even.primary().sector, Sector::Even);
    assert_eq!(odd.primary().sector, Sector::Odd);
    assert_eq!(both.states.len(), 2);
}

#[test]
fn sector_pure_reduction_has_two_plus_two_sparsity() {
    let mut r = rng(34);
    for _ in 0..200 {
        let p = random_params(&mut r);
        let w = ground_state(&p, TieRule::EvenFirst).unwrap().primary().clone();
        let rho = reduce_over_majorana(&w);
        for (i, j) in [(1, 2), (1, 3), (2, 4), (3, 4)] {
            assert_eq!(rho.rho(i, j).norm(), 0.0, "ρ{i}{j}");
            assert_eq!(rho.rho(j, i).norm(), 0.0, "ρ{j}{i}");
        }
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-13);
        assert!(rho.purity() <= 1.0 + 1e-13);
    }
}

#[test]
fn even_sector_elements_are_listed_products() {
    let amps = [0.0, 0.0, 0.0, 0.0, 0.5, -0.3, 0.7, 0.2];
    let w = WaveFunction::from_real(amps, 0.0).unwrap();
    let rho = reduce_over_majorana(&w);
    let c = |n: usize| w.c(n).re;
    assert!((rho.rho(1, 1).re - c(5) * c(5)).abs() < 1e-15);
    assert!((rho.rho(2, 2).re - c(7) * c(7)).abs() < 1e-15);
    assert!((rho.rho(3, 3).re - c(6) * c(6)).abs() < 1e-15);
    assert!((rho.rho(4, 4).re - c(8) * c(8)).abs() < 1e-15);
    assert!((rho.rho(1, 4).re - c(5) * c(8)).abs() < 1e-15);
    assert!((rho.rho(2, 3).re - c(7) * c(6)).abs() < 1e-15);
}

#[test]
fn thermal_reduction_approaches_the_ground_state() {
    let mut r = rng(35);
    let mut checked = 0;
    while checked < 50 {
        let p = random_params(&mut r);
        let full = eigh(&ComplexMatrix::from_hamiltonian(&build_hamiltonian(&p))).unwrap();
        let gap = full.values[1] - full.values[0];
        if gap < 1e-2 {
            continue;
        }
        let g = ground_state(&p, TieRule::EvenFirst).unwrap();
        let cold = reduce_thermal(&p.with_temperature(1e-3 * gap)).unwrap();
        let pure = reduce_over_majorana(g.primary());
        assert!(cold.matrix().max_abs_diff(pure.matrix()) <= 1e-6);
        checked += 1;
    }
}

#[test]
fn thermal_reduction_is_the_trace_of_the_gibbs_state() {
    let mut r = rng(36);
    for _ in 0..100 {
        let mut p = random_params(&mut r);
        p.temperature = p.temperature.max(0.05);
        let rho8 = gibbs_state(&build_hamiltonian(&p), p.temperature).unwrap();
        let mut brute = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, &(fi, a1, a2)) in PHI.iter().enumerate() {
            for (j, &(fj, b1, b2)) in PHI.iter().enumerate() {
                if fi == fj {
                    brute[psi(a1, a2)][psi(b1, b2)] += rho8[(i, j)];
                }
            }
        }
        let rho = reduce_thermal(&p).unwrap();
        assert!(max_diff4(rho.matrix(), &brute) < 1e-14);
        DensityMatrix::new(rho.into_matrix()).unwrap();
    }
}

#[test]
fn marginals_of_a_product_state() {
    // |10⟩: dot 1 filled, dot 2 empty
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let rho = DensityMatrix::pure(&[z, one, z, z]).unwrap();
    let d1 = marginal(&rho, Dot::Dot1);
    let d2 = marginal(&rho, Dot::Dot2);
    assert_eq!((d1.rho(1, 1).re, d1.rho(2, 2).re), (0.0, 1.0));
    assert_eq!((d2.rho(1, 1).re, d2.rho(2, 2).re), (1.0, 0.0));
}

#[test]
fn density_matrix_validation() {
    let mut m = ComplexMatrix::identity(4);
    assert!(DensityMatrix::new(m.clone()).is_err());
    m = m.scale(Complex64::new(0.25, 0.0));
    assert!(DensityMatrix::new(m.clone()).is_ok());
    m[(0, 1)] = Complex64::new(0.1, 0.0);
    assert!(DensityMatrix::new(m.clone()).is_err());
    let bad = ComplexMatrix::from_diag(&[1.5, -0.5]).unwrap();
    assert!(DensityMatrix::new(bad).is_err());
}

proptest! {
    #[test]
    fn reduced_ground_states_are_physical(
        eps_m in 0.05..3.0f64, e1 in -2.0..2.0f64, e2 in -2.0..2.0f64,
        l1 in -2.0..2.0f64, l2 in -2.0..2.0f64,
    ) {
        let p = ModelParams::new(eps_m, e1, e2, l1, l2, 0.0).unwrap();
        let g = ground_state(&p, TieRule::EvenFirst).unwrap();
        let rho = reduce_over_majorana(g.primary());
        prop_assert!((rho.matrix().trace().re - 1.0).abs() < 1e-13);
        prop_assert!(rho.purity() <= 1.0 + 1e-12);
        prop_assert!(DensityMatrix::new(rho.into_matrix()).is_ok());
    }
}
