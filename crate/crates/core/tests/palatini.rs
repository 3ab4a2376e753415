use dgla_gr::forms::grid::{Grid4, RadiusMode, Region};
use dgla_gr::forms::internal::Internal;
use dgla_gr::forms::tetrad::{Connection, Tetrad};
use dgla_gr::forms::FormField;
use dgla_gr::palatini::{
    action_pc, einstein_residual, equivariant_action, extra_eom_term, torsion_residual, EquivariantTestForm, PcConfig,
    TestFormSpec,
};
use dgla_gr::symmetry::scenario::{FieldSet, ScenarioConfig};
use dgla_gr::symmetry::{assess, symmetry_residual, CutoffFunction, PoincareElement, Series, Thresholds, Verdict};

fn schwarzschild() -> ScenarioConfig {
    ScenarioConfig::from_json(
        r#"{"scenario": "poincare", "M": 1.0, "grid": {"L": 20.0, "N": 25},
            "cutoff": {"r": 6.0, "R": 10.0}, "radius_mode": "spatial", "Ns": [17, 25]}"#,
    )
    .unwrap()
}

fn wavy_tetrad(grid: Grid4<f64>) -> Tetrad<f64> {
    Tetrad::from_fn(grid, |x| {
        let mut m = [[0.0; 4]; 4];
        for (a, row) in m.iter_mut().enumerate() {
            row[a] = 1.0 + 0.2 * (x[(a + 1) % 4]).sin();
            row[(a + 2) % 4] = 0.1 * x[a].cos();
        }
        m
    })
    .unwrap()
}

fn wavy_connection(grid: Grid4<f64>, k: f64) -> Connection<f64> {
    Connection::from_fn(grid, |x| {
        let mut w = [[0.0; 6]; 4];
        for (mu, row) in w.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = 0.3 * (k * x[mu] + c as f64 * 0.7 + mu as f64).sin();
            }
        }
        w
    })
}

#[test]
fn action_is_affine_in_lambda() {
    let grid = Grid4::new(1.0, 9, 0.2, RadiusMode::FourD).unwrap();
    let e = wavy_tetrad(grid);
    let w = wavy_connection(grid, 1.3);
    let s = |lambda: f64| action_pc(&e, &w, &PcConfig { lambda, grid }).unwrap().value;
    let (s0, s1, s3) = (s(0.0), s(1.0), s(3.0));
    assert!(s1 != s0);
    assert!(((s3 - s0) - 3.0 * (s1 - s0)).abs() < 1e-10 * (s3.abs() + s0.abs()), "{s0} {s1} {s3}");
}

#[test]
fn torsion_of_an_arbitrary_connection_does_not_decay() {
    let ns = [9, 13, 17];
    let mut norms = Vec::new();
    let mut hs = Vec::new();
    for n in ns {
        let grid = Grid4::new(1.0, n, 0.2, RadiusMode::FourD).unwrap();
        norms.push(torsion_residual(&Tetrad::identity(grid), &wavy_connection(grid, 0.8)).unwrap().norm);
        hs.push(grid.h());
    }
    let study = assess(&ns, &hs, &[Series { label: "torsion".into(), norms }], &Thresholds::default()).unwrap();
    assert_eq!(study.verdict(), Verdict::Fail, "{:?}", study.series);
}

#[test]
fn minkowski_equivariant_action_equals_pc_action() {
    let grid = Grid4::new(2.0, 9, 0.5, RadiusMode::FourD).unwrap();
    let (e, w) = (Tetrad::identity(grid), Connection::zero(grid));
    let cutoff = CutoffFunction::new(0.5, 1.5).unwrap();
    for lambda in [0.0, 1.0] {
        let cfg = PcConfig { lambda, grid };
        let base = action_pc(&e, &w, &cfg).unwrap().value;
        for name in ["P0", "L2", "K3"] {
            let t = EquivariantTestForm::gaussian(grid, PoincareElement::named(name).unwrap(), &TestFormSpec::default()).unwrap();
            assert_eq!(equivariant_action(&e, &w, &t, &cutoff, &cfg).unwrap().value, base, "{name}");
        }
    }
}

#[test]
fn vanishing_test_form_leaves_the_action_unchanged() {
    let cfg = schwarzschild();
    let fields = FieldSet::build(&cfg, 17).unwrap();
    let pc = fields.pc_config(&cfg);
    let zero = FormField::zeros(fields.grid, 2, Internal::Scalar);
    let t = EquivariantTestForm::new(zero, PoincareElement::named("K1").unwrap()).unwrap();
    let base = action_pc(&fields.tetrad, &fields.connection, &pc).unwrap().value;
    let sg = equivariant_action(&fields.tetrad, &fields.connection, &t, &cfg.cutoff(), &pc).unwrap().value;
    assert_eq!(sg, base);
}

#[test]
fn boost_shifts_the_schwarzschild_action() {
    let cfg = schwarzschild();
    let mut diffs = Vec::new();
    for n in [17, 25] {
        let fields = FieldSet::build(&cfg, n).unwrap();
        let pc = fields.pc_config(&cfg);
        let t = EquivariantTestForm::gaussian(fields.grid, PoincareElement::named("K1").unwrap(), &cfg.test_form).unwrap();
        let base = action_pc(&fields.tetrad, &fields.connection, &pc).unwrap().value;
        let sg = equivariant_action(&fields.tetrad, &fields.connection, &t, &cfg.cutoff(), &pc).unwrap().value;
        diffs.push(sg - base);
    }
    assert!(diffs[0].abs() > 1.0, "{diffs:?}");
    assert!((diffs[1] - diffs[0]).abs() < 0.05 * diffs[0].abs(), "{diffs:?}");
}

#[test]
fn extra_term_is_bounded_by_the_symmetry_residual() {
    let cfg = schwarzschild();
    let fields = FieldSet::build(&cfg, 17).unwrap();
    let cutoff = cfg.cutoff();
    for name in ["L3", "P1", "K1", "K2"] {
        let x = PoincareElement::named(name).unwrap();
        let t = EquivariantTestForm::gaussian(fields.grid, x, &cfg.test_form).unwrap();
        let extra = extra_eom_term(&fields.tetrad, &t, &cutoff).unwrap().norm;
        let xe = symmetry_residual(&fields.tetrad, &x).max_norm(Region::U);
        let alpha = t.alpha().max_norm(Region::U);
        let bound = 24.0 * alpha * x.rotation_norm() * xe;
        assert!(extra <= bound, "{name}: {extra} > {bound}");
    }
}

#[test]
fn field_equations_converge_for_schwarzschild() {
    let cfg = schwarzschild();
    let mut torsion = Vec::new();
    let mut einstein = Vec::new();
    for n in [17, 25] {
        let fields = FieldSet::build(&cfg, n).unwrap();
        torsion.push(torsion_residual(&fields.tetrad, &fields.connection).unwrap().norm);
        einstein.push(einstein_residual(&fields.tetrad, &fields.connection, &fields.pc_config(&cfg)).unwrap().norm);
    }
    assert!(torsion[1] < 0.5 * torsion[0], "{torsion:?}");
    assert!(einstein[1] < 0.5 * einstein[0], "{einstein:?}");
}
