//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p dgla-gr-cli --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use dgla_gr::algebra::samples::{random_action_map, so3_vector_action};
use dgla_gr::algebra::{
    adjoint_action, build_action_dgla, build_action_dgla_with, check_action_structure, check_dgla, extract_action_map,
    poincare_algebra, so3_subalgebra, Axiom, BracketSign, Dgla,
};
use dgla_gr::forms::grid::{Grid4, RadiusMode, Region};
use dgla_gr::forms::internal::Internal;
use dgla_gr::forms::ops::{ext_d, form_bracket};
use dgla_gr::forms::tetrad::{Connection, Tetrad};
use dgla_gr::forms::FormField;
use dgla_gr::mass::{adm_energy, komar_mass, positivity_check, MassSettings};
use dgla_gr::palatini::{action_pc, einstein_residual, torsion_residual, PcConfig};
use dgla_gr::spacetime::IsotropicSchwarzschild;
use dgla_gr::symmetry::scenario::{eom_study, symmetry_studies, ScenarioConfig, SymmetryStudies};
use dgla_gr::symmetry::{loglog_slope, Verdict};
use dgla_gr::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn scenario(name: &str) -> Result<ScenarioConfig, String> {
    let text = std::fs::read_to_string(examples().join(name)).map_err(|e| format!("{name}: {e}"))?;
    ScenarioConfig::from_json(&text).map_err(|e| format!("{name}: {e}"))
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn algebra_suite() -> Outcome {
    let start = Instant::now();
    let iso3 = build_action_dgla(&so3_vector_action::<Rational>()).map_err(|e| e.to_string())?.total;
    let algebras = [
        ("so(3)", Dgla::from_algebra(so3_subalgebra::<Rational>())),
        ("Poincaré", Dgla::from_algebra(poincare_algebra::<Rational>())),
        ("iso(3)", iso3),
    ];
    for (name, d) in &algebras {
        let r = check_dgla(d);
        if !r.passed() {
            return Err(format!("{name}: {r}"));
        }
        let r = check_action_structure(&adjoint_action(d));
        if !r.passed() {
            return Err(format!("adjoint of {name}: {r}"));
        }
    }
    let literal = build_action_dgla_with(&so3_vector_action::<Rational>(), BracketSign::Literal);
    let report = check_dgla(&literal.total);
    let witness = report
        .violation(Axiom::Antisymmetry)
        .map(|v| v.witness.join(", "))
        .ok_or("literal bracket variant was not rejected for antisymmetry")?;
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {}", secs(elapsed)));
    }
    Ok(format!("3 algebras and their adjoint actions clean, literal sign rejected at ({witness}), {}", secs(elapsed)))
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..20 {
        let alpha = random_action_map::<Rational, _>(&mut rng);
        let s = build_action_dgla(&alpha).map_err(|e| format!("sample {k}: {e}"))?;
        if extract_action_map(&s).map_err(|e| format!("sample {k}: {e}"))? != alpha {
            return Err(format!("sample {k} does not round trip"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {}", secs(elapsed)));
    }
    Ok(format!("20 random action maps recovered exactly, {}", secs(elapsed)))
}

fn flat_space() -> Outcome {
    let l: f64 = 20.0;
    let grid = Grid4::new(l, 33, 6.0, RadiusMode::FourD).map_err(|e| e.to_string())?;
    let (e, w) = (Tetrad::identity(grid), Connection::zero(grid));
    let err = |x: dgla_gr::Error| x.to_string();
    let cfg0 = PcConfig { lambda: 0.0, grid };
    let torsion = torsion_residual(&e, &w).map_err(err)?.norm;
    let einstein = einstein_residual(&e, &w, &cfg0).map_err(err)?.norm;
    let s0 = action_pc(&e, &w, &cfg0).map_err(err)?.value;
    if torsion != 0.0 || einstein != 0.0 || s0 != 0.0 {
        return Err(format!("Λ = 0: torsion {torsion:e}, einstein {einstein:e}, S_PC {s0:e}"));
    }
    let s1 = action_pc(&e, &w, &PcConfig { lambda: 1.0, grid }).map_err(err)?.value;
    let expected = (2.0 * l).powi(4);
    let rel = (s1 - expected).abs() / expected;
    if rel > 0.005 {
        return Err(format!("Λ = 1: S_PC = {s1}, expected {expected}"));
    }
    Ok(format!("Λ = 0 residuals and action exactly 0; Λ = 1 S_PC = {s1} vs {expected} (rel {rel:.1e})"))
}

fn schwarzschild_on_shell() -> Outcome {
    let start = Instant::now();
    let cfg = ScenarioConfig::from_json(
        r#"{"scenario": "spherical", "M": 1.0, "grid": {"L": 20.0, "N": 33},
            "cutoff": {"r": 4.0, "R": 8.0}, "radius_mode": "spatial", "Ns": [17, 25, 33]}"#,
    )
    .map_err(|e| e.to_string())?;
    let study = eom_study(&cfg).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    let mut ok = true;
    for s in &study.series {
        let slope = s.slope.unwrap_or(f64::NAN);
        ok &= slope >= 1.7 && s.verdict.is_pass();
        parts.push(format!("{} slope {slope:.2} ({})", s.label, s.verdict));
    }
    let elapsed = start.elapsed();
    ok &= elapsed <= Duration::from_secs(600);
    let detail = format!("{}, {}", parts.join(", "), secs(elapsed));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn decays(studies: &SymmetryStudies, label: &str) -> bool {
    [&studies.symmetry, &studies.extra_term].iter().all(|s| s.get(label).is_some_and(|a| a.verdict.is_pass()))
}

/// Non-decaying with the finest norm above the failure threshold (10× the passing threshold).
fn fails_loudly(studies: &SymmetryStudies, label: &str) -> bool {
    [&studies.symmetry, &studies.extra_term].iter().all(|s| s.get(label).is_some_and(|a| a.verdict == Verdict::Fail))
}

fn killing_enforcement() -> Outcome {
    const KILLING: [&str; 4] = ["P0", "L1", "L2", "L3"];
    const BROKEN: [&str; 6] = ["P1", "P2", "P3", "K1", "K2", "K3"];
    let all: Vec<String> = KILLING.iter().chain(&BROKEN).map(|s| s.to_string()).collect();
    let mut problems = Vec::new();

    let cfg = scenario("poincare_schwarzschild.json")?;
    let studies = symmetry_studies(&cfg, &all).map_err(|e| e.to_string())?;
    for label in KILLING {
        if !decays(&studies, label) {
            problems.push(format!("Schwarzschild {label} does not decay"));
        }
    }
    for label in BROKEN {
        if !fails_loudly(&studies, label) {
            let verdict = |s: &dgla_gr::symmetry::Study| s.get(label).map_or("missing", |a| a.verdict.as_str());
            problems.push(format!(
                "Schwarzschild {label} expected fail/fail, got symmetry {}, extra term {}",
                verdict(&studies.symmetry),
                verdict(&studies.extra_term)
            ));
        }
    }

    let flat = scenario("poincare_minkowski.json")?;
    let flat_studies = symmetry_studies(&flat, &all).map_err(|e| e.to_string())?;
    for label in &all {
        if !decays(&flat_studies, label) {
            problems.push(format!("Minkowski {label} does not pass"));
        }
    }
    if problems.is_empty() {
        Ok("4 Killing generators decay, 6 complementary fail above threshold, Minkowski all 10 pass".into())
    } else {
        Err(problems.join("; "))
    }
}

fn masses() -> Outcome {
    let radii = [8.0, 12.0, 16.0];
    let settings = MassSettings::default();
    let grid = Grid4::new(20.0, 33, 6.0, RadiusMode::Spatial).map_err(|e| e.to_string())?;
    let t0 = grid.t_zero_index();
    let mut parts = Vec::new();
    let mut problems = Vec::new();
    for mass in [0.0, 0.5, 1.0, 2.0] {
        let g = IsotropicSchwarzschild::for_inner_radius(mass, 6.0).map_err(|e| e.to_string())?.metric(grid);
        let adm = adm_energy(&g, t0, &radii, &settings).map_err(|e| e.to_string())?.extrapolated;
        let komar = komar_mass(&g, t0, &radii, &settings).map_err(|e| e.to_string())?.extrapolated;
        if mass == 0.0 {
            if adm.abs() > 1e-12 {
                problems.push(format!("Minkowski ADM = {adm:e}"));
            }
        } else {
            if (adm - mass).abs() > 0.01 * mass {
                problems.push(format!("M = {mass}: ADM = {adm}"));
            }
            if (komar - adm).abs() > 0.02 * adm {
                problems.push(format!("M = {mass}: Komar {komar} vs ADM {adm}"));
            }
        }
        for e in [adm, komar] {
            if !positivity_check(e, [0.0; 3]).passed {
                problems.push(format!("M = {mass}: positivity fails for E = {e}"));
            }
        }
        parts.push(format!("M={mass}: ADM {adm:.5}, Komar {komar:.5}"));
    }
    if problems.is_empty() {
        Ok(parts.join("; "))
    } else {
        Err(problems.join("; "))
    }
}

/// Sum of two seeded plane waves per component.
fn smooth(grid: Grid4<f64>, degree: usize, seed: u64) -> FormField<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stride = [6, 24, 36][degree];
    let waves: Vec<[(f64, [f64; 4], f64); 2]> = (0..stride)
        .map(|_| {
            std::array::from_fn(|_| {
                (rng.gen_range(-1.0..1.0), std::array::from_fn(|_| rng.gen_range(-1.2..1.2)), rng.gen_range(0.0..6.0))
            })
        })
        .collect();
    FormField::from_fn(grid, degree, Internal::L2, |x, out| {
        for (o, w) in out.iter_mut().zip(&waves) {
            *o = w.iter().map(|(a, k, p)| a * (k.iter().zip(&x).map(|(k, x)| k * x).sum::<f64>() + p).sin()).sum();
        }
    })
}

fn forms_leibniz() -> Outcome {
    let ns = [13, 17, 25];
    let mut parts = Vec::new();
    let mut ok = true;
    for (p, q) in [(0, 1), (1, 1), (1, 2)] {
        let mut norms = Vec::new();
        let mut hs = Vec::new();
        for n in ns {
            let grid = Grid4::new(2.0, n, 0.0, RadiusMode::FourD).map_err(|e| e.to_string())?;
            let a = smooth(grid, p, 11 + p as u64);
            let b = smooth(grid, q, 23 + q as u64);
            let residual = (|| -> dgla_gr::Result<f64> {
                let lhs = ext_d(&form_bracket(&a, &b)?)?;
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = form_bracket(&ext_d(&a)?, &b)?.add(&form_bracket(&a, &ext_d(&b)?)?.scale(sign))?;
                Ok(lhs.sub(&rhs)?.max_norm(Region::Box))
            })()
            .map_err(|e| e.to_string())?;
            norms.push(residual);
            hs.push(grid.h());
        }
        let slope = loglog_slope(&hs, &norms).unwrap_or(f64::NAN);
        ok &= slope >= 1.7;
        parts.push(format!("({p},{q}) slope {slope:.2}"));
    }
    if ok {
        Ok(parts.join(", "))
    } else {
        Err(parts.join(", "))
    }
}

/// Report body and CSV tables of one CLI run, with the manifest timestamp removed.
fn cli_run(threads: usize, dir: &Path) -> Result<(Value, Vec<(String, Vec<u8>)>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dgla-gr"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(["killing", "residuals", "--scenario", "examples/poincare_schwarzschild.json"])
        .args(["--threads", &threads.to_string(), "--out"])
        .arg(dir)
        .env_remove("DGLA_GR_OUT")
        .output()
        .map_err(|e| e.to_string())?;
    if !matches!(out.status.code(), Some(0 | 1 | 3)) {
        return Err(format!("run with {threads} threads: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let mut doc: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("killing_residuals.json")).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    if let Some(m) = doc["manifest"].as_object_mut() {
        m.remove("timestamp");
    }
    let mut tables = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|x| x == "csv") {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            tables.push((name, std::fs::read(&path).map_err(|e| e.to_string())?));
        }
    }
    tables.sort();
    Ok((doc, tables))
}

fn determinism() -> Outcome {
    let (one, two) = (tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?);
    let (doc1, csv1) = cli_run(1, one.path())?;
    let (doc2, csv2) = cli_run(2, two.path())?;
    if doc1 != doc2 {
        return Err("JSON bodies differ between --threads 1 and --threads 2".into());
    }
    if csv1 != csv2 {
        return Err("CSV tables differ between --threads 1 and --threads 2".into());
    }
    Ok(format!("JSON body and {} CSV tables byte-identical across --threads 1 and 2", csv1.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("algebra suite", algebra_suite),
        ("round trip", round_trip),
        ("flat-space field equations", flat_space),
        ("Schwarzschild on shell", schwarzschild_on_shell),
        ("Killing enforcement", killing_enforcement),
        ("masses", masses),
        ("forms Leibniz rule", forms_leibniz),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
