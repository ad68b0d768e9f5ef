mod common;

use common::*;
use proptest::prelude::*;
use qdwire::exec::Executor;
use qdwire::optimize::figures::{fig2_search, Figure, FIG4_ENERGIES, PANEL_LAMBDAS};
use qdwire::optimize::search::golden_section_max;
use qdwire::optimize::sweep::{evaluate_point, sweep, Axis, AxisParam, SweepKind, SweepSpec};
use qdwire::optimize::{
    ground_negativity, linspace, logspace, maximize_negativity, OptimizeError, SearchConfig, SearchMode,
};
use qdwire::states::ground_state;
use qdwire::{ModelParams, TieRule, UnitConvention};
use rand::Rng;

fn panel(fig: Figure, stem: &str) -> SweepSpec {
    fig.panels().unwrap().into_iter().find(|p| p.stem == stem).unwrap().spec
}

#[test]
fn grids_are_inclusive_and_ordered() {
    assert_eq!(linspace(0.0, 2.0, 5), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    let l = logspace(1e-3, 10.0, 5);
    assert!((l[0] - 1e-3).abs() < 1e-18 && (l[4] - 10.0).abs() < 1e-12);
    assert!(l.windows(2).all(|w| (w[1] / w[0] - 10.0).abs() < 1e-9));
}

#[test]
fn golden_section_finds_a_parabola_peak() {
    let m = golden_section_max(|x| -(x - 0.3f64).powi(2), 0.0, 1.0, 1e-10);
    assert!((m.x - 0.3).abs() < 1e-8);
}

#[test]
fn decoupled_energies_put_the_optimum_on_the_lower_edge() {
    for mode in [SearchMode::Symmetric, SearchMode::Independent] {
        let cfg = SearchConfig {
            mode,
            ..SearchConfig::for_omega(1.0)
        };
        let r = maximize_negativity(0.0, 0.0, 2.0, &cfg).unwrap();
        assert!(r.boundary_hit, "{mode:?}: {r:?}");
        assert!(r.lam1 - cfg.lambda_domain.0 <= cfg.refine_tolerance);
    }
}

#[test]
fn finite_energies_give_an_interior_optimum_that_moves_out() {
    let cfg = SearchConfig {
        mode: SearchMode::Symmetric,
        ..SearchConfig::for_omega(1.0)
    };
    let mut last = 0.0;
    for eps in [0.05, 0.1, 0.25, 0.5] {
        let r = maximize_negativity(eps, eps, 2.0, &cfg).unwrap();
        assert!(!r.boundary_hit, "ε={eps}: {r:?}");
        assert!(r.lam1 > last, "ε={eps}: {} after {last}", r.lam1);
        last = r.lam1;
    }
}

#[test]
fn optimum_beats_the_coarse_grid() {
    let mut r = rng(61);
    for _ in 0..20 {
        let (e1, e2) = (r.gen_range(0.0..1.0), r.gen_range(0.0..1.0));
        let cfg = SearchConfig::for_omega(1.0);
        let res = maximize_negativity(e1, e2, 2.0, &cfg).unwrap();
        let base = ModelParams::new(2.0, e1, e2, 0.0, 0.0, 0.0).unwrap();
        for &l1 in &cfg.coarse_grid() {
            for &l2 in &cfg.coarse_grid() {
                let n = ground_negativity(&base.with_couplings(l1, l2), cfg.tie_rule).unwrap();
                assert!(n.negativity <= res.n_max + 1e-12);
            }
        }
    }
}

#[test]
fn reported_maximum_re_evaluates_exactly() {
    let mut r = rng(62);
    for mode in [SearchMode::Symmetric, SearchMode::Independent] {
        for _ in 0..20 {
            let (e1, e2) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let cfg = SearchConfig {
                mode,
                ..SearchConfig::for_omega(0.5)
            };
            let res = maximize_negativity(e1, e2, 1.0, &cfg).unwrap();
            let p = ModelParams::new(1.0, e1, e2, res.lam1, res.lam2, 0.0).unwrap();
            let again = ground_negativity(&p, cfg.tie_rule).unwrap();
            assert_eq!(again.negativity.to_bits(), res.n_max.to_bits());
            assert_eq!(again.degenerate, res.degenerate);
        }
    }
}

#[test]
fn optimizer_is_deterministic() {
    let cfg = SearchConfig::for_omega(1.0);
    let a = maximize_negativity(0.3, 0.7, 2.0, &cfg).unwrap();
    let b = maximize_negativity(0.3, 0.7, 2.0, &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn invalid_search_configs_are_rejected() {
    let bad = [
        SearchConfig {
            lambda_domain: (1.0, 0.5),
            ..Default::default()
        },
        SearchConfig {
            lambda_domain: (-1.0, 0.5),
            ..Default::default()
        },
        SearchConfig {
            coarse_points: 1,
            ..Default::default()
        },
        SearchConfig {
            refine_tolerance: 0.0,
            ..Default::default()
        },
    ];
    for cfg in bad {
        assert!(matches!(
            maximize_negativity(0.0, 0.0, 1.0, &cfg),
            Err(OptimizeError::Config(_))
        ));
    }
}

#[test]
fn fig2_grid_is_symmetric_under_dot_exchange() {
    let spec = panel(Figure::Fig2, "fig2");
    let rows = sweep(&spec, Executor::default()).unwrap();
    let n = spec.axes[1].values.len();
    assert_eq!(rows.len(), n * n);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let a = rows[i * n + j].negativity.unwrap();
            let b = rows[j * n + i].negativity.unwrap();
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-6, "largest asymmetry {worst}");
    for row in &rows {
        assert_eq!(
            row.degenerate,
            ground_state(&row.params, TieRule::EvenFirst).unwrap().degenerate
        );
        assert!(row.boundary_hit.is_some());
    }
}

#[test]
fn negativity_decays_along_the_equal_energy_ray() {
    let spec = panel(Figure::Fig5, "fig5_negativity");
    let rows = sweep(&spec, Executor::default()).unwrap();
    let n = 100;
    assert_eq!(rows.len(), PANEL_LAMBDAS.len() * n);
    for (k, curve) in rows.chunks(n).enumerate() {
        for w in curve.windows(2) {
            let (a, b) = (w[0].negativity.unwrap(), w[1].negativity.unwrap());
            assert!(
                b <= a + 1e-12,
                "λ={}: ε={} gives {b} > {a}",
                PANEL_LAMBDAS[k],
                w[1].params.eps1
            );
        }
    }
}

#[test]
fn fig4_curves_peak_further_out_for_larger_energies() {
    let spec = panel(Figure::Fig4, "fig4");
    let rows = sweep(&spec, Executor::default()).unwrap();
    let mut peaks = Vec::new();
    for curve in rows.chunks(300) {
        let values: Vec<f64> = curve.iter().map(|r| r.negativity.unwrap()).collect();
        let k = (0..values.len())
            .max_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap();
        peaks.push(curve[k].params.lam1);
    }
    assert_eq!(peaks.len(), FIG4_ENERGIES.len());
    assert!(peaks.windows(2).all(|w| w[1] > w[0]), "{peaks:?}");
}

#[test]
fn degenerate_rows_are_flagged() {
    // ε = 0 with λ = 0 is the decoupled tie between parities
    let axes = vec![
        Axis::new(AxisParam::Eps, vec![0.0, 0.5]).unwrap(),
        Axis::new(AxisParam::Lam, vec![0.0, 0.5]).unwrap(),
    ];
    let spec = SweepSpec::new(SweepKind::Custom, axes, UnitConvention::Omega);
    let rows = sweep(&spec, Executor::Sequential).unwrap();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert_eq!(
            row.degenerate,
            ground_state(&row.params, spec.tie_rule).unwrap().degenerate
        );
    }
    assert!(rows[0].degenerate);
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let mut spec = SweepSpec::new(
        SweepKind::Fig2,
        vec![
            Axis::new(AxisParam::Eps1, linspace(0.0, 2.0, 6)).unwrap(),
            Axis::new(AxisParam::Eps2, linspace(0.0, 2.0, 6)).unwrap(),
        ],
        UnitConvention::EpsM,
    );
    spec.search = fig2_search(UnitConvention::EpsM);
    assert_eq!(
        sweep(&spec, Executor::Sequential).unwrap(),
        sweep(&spec, Executor::Parallel).unwrap()
    );
    let spec = panel(Figure::Fig5, "fig5_qmi");
    assert_eq!(
        sweep(&spec, Executor::Sequential).unwrap(),
        sweep(&spec, Executor::Parallel).unwrap()
    );
}

#[test]
fn rows_follow_lexicographic_grid_order() {
    let axes = vec![
        Axis::new(AxisParam::Eps1, vec![0.1, 0.2]).unwrap(),
        Axis::new(AxisParam::Lam, vec![0.3, 0.4, 0.5]).unwrap(),
    ];
    let spec = SweepSpec::new(SweepKind::Fig2Sup, axes, UnitConvention::Omega);
    let rows = sweep(&spec, Executor::Parallel).unwrap();
    let got: Vec<(f64, f64)> = rows.iter().map(|r| (r.params.eps1, r.params.lam1)).collect();
    assert_eq!(
        got,
        vec![(0.1, 0.3), (0.1, 0.4), (0.1, 0.5), (0.2, 0.3), (0.2, 0.4), (0.2, 0.5)]
    );
}

#[test]
fn invalid_grids_are_rejected_before_evaluation() {
    assert!(Axis::new(AxisParam::Eps1, vec![]).is_err());
    assert!(Axis::new(AxisParam::Eps1, vec![0.2, 0.1]).is_err());
    assert!(Axis::new(AxisParam::Eps1, vec![0.1, f64::NAN]).is_err());
    let clash = vec![
        Axis::new(AxisParam::Eps, vec![0.1]).unwrap(),
        Axis::new(AxisParam::Eps1, vec![0.1]).unwrap(),
    ];
    assert!(sweep(
        &SweepSpec::new(SweepKind::Custom, clash, UnitConvention::Omega),
        Executor::Sequential
    )
    .is_err());
    let wrong = vec![Axis::new(AxisParam::Temperature, vec![1.0]).unwrap()];
    assert!(sweep(
        &SweepSpec::new(SweepKind::Fig4, wrong, UnitConvention::Omega),
        Executor::Sequential
    )
    .is_err());
    let cold = vec![Axis::new(AxisParam::Lam, vec![0.5]).unwrap()];
    assert!(sweep(
        &SweepSpec::new(SweepKind::Fig5Qmi, cold, UnitConvention::Omega),
        Executor::Sequential
    )
    .is_err());
}

#[test]
fn axis_strings_parse() {
    let a: Axis = "lam=0.1:1:10".parse().unwrap();
    assert_eq!((a.param, a.values.len()), (AxisParam::Lam, 10));
    let b: Axis = "eps1=0.5,1,2".parse().unwrap();
    assert_eq!(b.values, vec![0.5, 1.0, 2.0]);
    let c: Axis = "omega=0.1:10:3:log".parse().unwrap();
    assert!((c.values[1] - 1.0).abs() < 1e-12);
    for bad in ["lam", "foo=1,2", "lam=1:0:3", "lam=a,b", "lam=0:1:0"] {
        assert!(bad.parse::<Axis>().is_err(), "{bad}");
    }
}

proptest! {
    #[test]
    fn sweep_rows_match_point_evaluation(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let p = random_params(&mut r);
        let spec = SweepSpec::new(
            SweepKind::Custom,
            vec![Axis::new(AxisParam::Lam1, vec![p.lam1]).unwrap()],
            UnitConvention::Omega,
        )
        .with_base(p);
        let rows = sweep(&spec, Executor::Sequential).unwrap();
        let direct = evaluate_point(SweepKind::Custom, &p, spec.tie_rule, &spec.search).unwrap();
        prop_assert_eq!(&rows[0], &direct);
    }
}
