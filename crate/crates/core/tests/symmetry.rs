use dgla_gr::algebra::poincare_algebra;
use dgla_gr::forms::grid::{Grid4, RadiusMode, Region};
use dgla_gr::forms::tetrad::{metric_from_tetrad, Tetrad};
use dgla_gr::symmetry::scenario::{symmetry_studies, FieldSet, ScenarioConfig};
use dgla_gr::symmetry::{
    generated_vector_field, killing_residual, symmetry_residual, vector_field_bracket, CutoffFunction, PoincareElement,
    Verdict,
};
use dgla_gr::Rational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALL: [&str; 10] = ["P0", "P1", "P2", "P3", "L1", "L2", "L3", "K1", "K2", "K3"];

fn schwarzschild(r: f64) -> ScenarioConfig {
    ScenarioConfig::from_json(&format!(
        r#"{{"scenario": "poincare", "M": 1.0, "grid": {{"L": 20.0, "N": 25}},
            "cutoff": {{"r": {r}, "R": 10.0}}, "radius_mode": "spatial", "Ns": [17, 25]}}"#
    ))
    .unwrap()
}

#[test]
fn vector_field_bracket_matches_the_algebra_bracket() {
    let p = poincare_algebra::<Rational>();
    let grid = Grid4::new(2.0f64, 9, 0.0, RadiusMode::FourD).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
            (0..10).map(|_| Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())).collect()
        };
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let to_f = |v: &[Rational]| -> [f64; 10] { std::array::from_fn(|i| v[i].to_f64().unwrap()) };
        let ab = p.bracket_eval(&a, &b).unwrap();
        let (xa, xb, xab) = (
            PoincareElement::from_coefficients(&to_f(&a)),
            PoincareElement::from_coefficients(&to_f(&b)),
            PoincareElement::from_coefficients(&to_f(&ab)),
        );
        let lhs = vector_field_bracket(&generated_vector_field(grid, &xa), &generated_vector_field(grid, &xb));
        let rhs = generated_vector_field(grid, &xab).scale(-1.0);
        assert!(lhs.sub(&rhs).max_norm_interior(0) < 1e-10);
    }
}

#[test]
fn minkowski_is_symmetric_under_every_generator() {
    let grid = Grid4::new(5.0f64, 9, 1.0, RadiusMode::FourD).unwrap();
    let e = Tetrad::identity(grid);
    let g = metric_from_tetrad(&e);
    for name in ALL {
        let x = PoincareElement::named(name).unwrap();
        assert_eq!(symmetry_residual(&e, &x).max_norm(Region::Box), 0.0, "{name}");
        assert_eq!(killing_residual(&g, &x).1, 0.0, "{name}");
    }
}

#[test]
fn schwarzschild_rotations_converge_and_translations_do_not() {
    let cfg = schwarzschild(6.0);
    let labels: Vec<String> = ["L3", "P1", "P0"].map(String::from).to_vec();
    let studies = symmetry_studies(&cfg, &labels).unwrap();
    let sym = &studies.symmetry;
    let l3 = sym.get("L3").unwrap();
    assert!(l3.norms[1] < 0.3 * l3.norms[0], "{:?}", l3.norms);
    assert!(l3.verdict.is_pass(), "{l3:?}");
    let p1 = sym.get("P1").unwrap();
    assert!(p1.norms[1] > 0.8 * p1.norms[0], "{:?}", p1.norms);
    assert_eq!(p1.verdict, Verdict::Fail);
    assert_eq!(sym.get("P0").unwrap().verdict, Verdict::Exact);
    assert!(studies.killing.get("L3").unwrap().verdict.is_pass());
    assert_eq!(studies.killing.get("P1").unwrap().verdict, Verdict::Fail);
}

#[test]
fn schwarzschild_boost_is_not_killing() {
    let cfg = schwarzschild(4.0);
    let fields = FieldSet::build(&cfg, 25).unwrap();
    let g = metric_from_tetrad(&fields.tetrad);
    let k1 = PoincareElement::named("J01").unwrap();
    let norm = killing_residual(&g, &k1).1;
    assert!(norm > 1e-2, "{norm}");
}

#[test]
fn cutoff_vanishes_inside_and_is_one_outside() {
    let c = CutoffFunction::new(3.0f64, 7.0).unwrap();
    for rho in [0.0, 1.0, 2.9, 3.0] {
        assert_eq!(c.profile(rho), 0.0);
    }
    for rho in [7.0, 8.0, 50.0] {
        assert_eq!(c.profile(rho), 1.0);
    }
    let mid = c.profile(5.0);
    assert!((mid - 0.5).abs() < 1e-15);
    let grid = Grid4::new(10.0f64, 11, 3.0, RadiusMode::Spatial).unwrap();
    for (node, u) in c.sample(&grid).iter().enumerate() {
        if grid.radius(&grid.position(node)) <= 3.0 {
            assert_eq!(*u, 0.0);
        }
    }
    assert!(CutoffFunction::new(3.0f64, 3.0).is_err());
}
