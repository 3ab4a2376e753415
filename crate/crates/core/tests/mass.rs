use dgla_gr::forms::grid::{Grid4, RadiusMode};
use dgla_gr::forms::tetrad::Metric;
use dgla_gr::mass::{adm_energy, komar_mass, positivity_check, MassSettings};
use dgla_gr::spacetime::IsotropicSchwarzschild;
use dgla_gr::Error;

const RADII: [f64; 3] = [8.0, 12.0, 16.0];

fn grid(n: usize) -> Grid4<f64> {
    Grid4::new(20.0, n, 6.0, RadiusMode::Spatial).unwrap()
}

fn schwarzschild_metric(mass: f64, n: usize) -> Metric<f64> {
    IsotropicSchwarzschild::for_inner_radius(mass, 6.0).unwrap().metric(grid(n))
}

/// ADM energy enclosed by a coordinate sphere of radius ρ in isotropic Schwarzschild.
fn adm_at_radius(mass: f64, rho: f64) -> f64 {
    mass * (1.0 + mass / (2.0 * rho)).powi(3)
}

#[test]
fn minkowski_has_zero_energy() {
    let g = schwarzschild_metric(0.0, 17);
    let t0 = g.grid().t_zero_index();
    let adm = adm_energy(&g, t0, &RADII, &MassSettings::default()).unwrap();
    assert!(adm.values.iter().all(|v| v.abs() < 1e-12), "{:?}", adm.values);
    let komar = komar_mass(&g, t0, &RADII, &MassSettings::default()).unwrap();
    assert!(komar.extrapolated.abs() < 1e-12);
}

#[test]
fn adm_energy_recovers_the_mass_parameter() {
    let settings = MassSettings::default();
    for mass in [0.5, 1.0, 2.0] {
        let g = schwarzschild_metric(mass, 33);
        let t0 = g.grid().t_zero_index();
        let adm = adm_energy(&g, t0, &RADII, &settings).unwrap();
        for (rho, v) in RADII.iter().zip(&adm.values) {
            let exact = adm_at_radius(mass, *rho);
            assert!((v - exact).abs() < 5e-3 * exact, "M = {mass}, ρ = {rho}: {v} vs {exact}");
        }
        assert!((adm.extrapolated - mass).abs() < 0.01 * mass, "M = {mass}: {}", adm.extrapolated);
        let komar = komar_mass(&g, t0, &RADII, &settings).unwrap();
        let gap = (komar.extrapolated - adm.extrapolated).abs();
        assert!(gap < 0.02 * adm.extrapolated, "M = {mass}: {} vs {}", komar.extrapolated, adm.extrapolated);
        assert!(positivity_check(adm.extrapolated, [0.0; 3]).passed);
    }
}

#[test]
fn energy_is_linear_in_small_perturbations() {
    // g_ij = (1 + εf) δ_ij with f = 2/ρ at large ρ carries ADM energy ε
    let gr = grid(25);
    let t0 = gr.t_zero_index();
    let energy = |eps: f64| {
        let g = Metric::from_fn(gr, |x| {
            let rho = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + 1.0).sqrt();
            let mut m = [[0.0; 4]; 4];
            m[0][0] = -1.0;
            for (i, row) in m.iter_mut().enumerate().skip(1) {
                row[i] = 1.0 + eps * 2.0 / rho;
            }
            m
        });
        adm_energy(&g, t0, &RADII, &MassSettings::default()).unwrap().extrapolated
    };
    let (e1, e2) = (energy(1e-3), energy(2e-3));
    assert!((e2 - 2.0 * e1).abs() < 1e-9, "{e1} {e2}");
    assert!((e1 - 1e-3).abs() < 2e-5, "{e1}");
}

#[test]
fn komar_rejects_time_dependent_data() {
    let gr = grid(17);
    let g = Metric::from_fn(gr, |x| {
        let mut m = [[0.0; 4]; 4];
        m[0][0] = -1.0;
        for (i, row) in m.iter_mut().enumerate().skip(1) {
            row[i] = 1.0 + 0.01 * x[0];
        }
        m
    });
    let err = komar_mass(&g, gr.t_zero_index(), &RADII, &MassSettings::default()).unwrap_err();
    assert!(matches!(err, Error::Domain(_)), "{err}");
}

#[test]
fn non_flat_slice_is_rejected() {
    let gr = grid(17);
    let g = Metric::from_fn(gr, |_| [[-1.0, 0.0, 0.0, 0.0], [0.0, 3.0, 0.0, 0.0], [0.0, 0.0, 3.0, 0.0], [0.0, 0.0, 0.0, 3.0]]);
    let t0 = gr.t_zero_index();
    assert!(matches!(adm_energy(&g, t0, &RADII, &MassSettings::default()), Err(Error::Domain(_))));
    assert!(matches!(komar_mass(&g, t0, &RADII, &MassSettings::default()), Err(Error::Domain(_))));
}

#[test]
fn radii_outside_the_grid_are_a_configuration_error() {
    let g = schwarzschild_metric(1.0, 17);
    let t0 = g.grid().t_zero_index();
    for radii in [vec![8.0, 19.0], vec![0.0, 8.0], vec![]] {
        assert!(matches!(adm_energy(&g, t0, &radii, &MassSettings::default()), Err(Error::Config(_))), "{radii:?}");
    }
}
