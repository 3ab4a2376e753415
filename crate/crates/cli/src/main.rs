//! `dgla-gr` command-line entry point.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dgla_gr::algebra::json::{action_from_json, dgla_from_json, dgla_to_json};
use dgla_gr::algebra::{build_action_dgla, build_action_dgla_with, check_action_structure, check_dgla, BracketSign};
use dgla_gr::forms::grid::RadiusMode;
use dgla_gr::mass::{adm_energy, komar_mass, positivity_check, MassResult};
use dgla_gr::palatini::{action_pc, equivariant_action, EquivariantTestForm};
use dgla_gr::symmetry::scenario::{
    action_report, eom_study, generator_norms, summarize, summary_verdict, symmetry_studies, FieldSet, KillingSubalgebra,
    ScenarioConfig,
};
use dgla_gr::symmetry::{PoincareElement, Study, Verdict};
use serde_json::json;

use report::{study_csv, Input, Manifest, Output};

#[derive(Debug, Parser)]
#[command(name = "dgla-gr", version)]
#[command(about = "Algebra checks, Palatini–Cartan residuals, Killing scenarios and mass integrals")]
struct Cli {
    /// Directory for JSON/CSV reports (written atomically).
    #[arg(long, global = true, env = "DGLA_GR_OUT")]
    out: Option<PathBuf>,

    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Resolutions of convergence studies, overriding the scenario file.
    #[arg(long = "Ns", global = true, value_delimiter = ',')]
    ns: Option<Vec<usize>>,

    /// Radius defining the excluded ball, overriding the scenario file.
    #[arg(long, global = true)]
    radius_mode: Option<RadiusMode>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact dgla checks
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Palatini–Cartan action and field equations
    #[command(subcommand)]
    Pc(PcCommand),
    /// Symmetry and Killing residuals of the scenario generators
    #[command(subcommand)]
    Killing(KillingCommand),
    /// ADM energy and Komar mass
    #[command(subcommand)]
    Mass(MassCommand),
    /// Convergence study of one residual
    Convergence {
        op: ConvergenceOp,
        /// Scenario JSON file
        #[arg(long)]
        scenario: PathBuf,
        /// Comma-separated generator names (default: the scenario subalgebra).
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
    },
}

#[derive(Debug, Subcommand)]
enum AlgebraCommand {
    /// Check the dgla axioms of a JSON algebra file
    Check { file: PathBuf },
    /// Build the action dgla of `alpha: g → Der(h)` and check it
    Action {
        g: PathBuf,
        h: PathBuf,
        alpha: PathBuf,
        #[arg(long, value_enum, default_value = "graded")]
        sign: SignArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    /// `[X, v] = α(X)(v)` with the graded-antisymmetric completion
    Graded,
    /// `[X, v] = [v, X] = α(X)(v)`, rejected unless α vanishes
    Literal,
}

#[derive(Debug, Subcommand)]
enum PcCommand {
    /// `S_PC` and the equivariant action per generator
    Action {
        /// Scenario JSON file
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Torsion and Einstein residual convergence
    Eom {
        /// Scenario JSON file
        #[arg(long)]
        scenario: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum KillingCommand {
    Residuals {
        /// Scenario JSON file
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
    },
}

#[derive(Debug, Subcommand)]
enum MassCommand {
    Adm {
        /// Scenario JSON file
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
    },
    Komar {
        /// Scenario JSON file
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConvergenceOp {
    Symmetry,
    Killing,
    ExtraTerm,
    Torsion,
    Einstein,
}

/// Failure before any verdict: bad input (exit 2) or a refused computation (exit 1).
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<dgla_gr::Error> for Failure {
    fn from(e: dgla_gr::Error) -> Self {
        use dgla_gr::Error as E;
        match e {
            E::Json(_) | E::Config(_) | E::InvalidGrid(_) | E::UnknownLabel(_) | E::InvalidRational(_) | E::InvalidBasis(_)
            | E::DimensionMismatch { .. } | E::Io(_) | E::Snapshot(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Exact | Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    }
}

fn read_input(path: &Path) -> Result<(Input, String), Failure> {
    Input::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_scenario(cli: &Cli, path: &Path) -> Result<(Input, ScenarioConfig), Failure> {
    let (input, text) = read_input(path)?;
    let mut cfg = ScenarioConfig::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Some(mode) = cli.radius_mode {
        cfg = cfg.with_radius_mode(mode);
    }
    if let Some(ns) = &cli.ns {
        cfg = cfg.with_ns(ns.clone())?;
    }
    Ok((input, cfg))
}

fn subalgebra(cfg: &ScenarioConfig, generators: &Option<Vec<String>>) -> Result<KillingSubalgebra, Failure> {
    match generators {
        None => Ok(KillingSubalgebra::of(cfg.scenario)),
        Some(list) => {
            let labels: Vec<&str> = list.iter().map(String::as_str).collect();
            Ok(KillingSubalgebra::new("custom", &labels)?)
        }
    }
}

fn algebra(cmd: &AlgebraCommand) -> Result<(Output, Verdict), Failure> {
    match cmd {
        AlgebraCommand::Check { file } => {
            let (input, text) = read_input(file)?;
            let d = dgla_from_json(&text)?;
            let r = check_dgla(&d);
            let verdict = if r.passed() { Verdict::Pass } else { Verdict::Fail };
            if !r.passed() {
                eprint!("{r}");
            }
            let report = json!({ "dim": d.dim(), "passed": r.passed(), "violations": r.violations });
            Ok((Output { stem: "algebra_check".into(), manifest: Manifest::new("algebra check", vec![input]), report, tables: vec![] }, verdict))
        }
        AlgebraCommand::Action { g, h, alpha, sign } => {
            let (ig, tg) = read_input(g)?;
            let (ih, th) = read_input(h)?;
            let (ia, ta) = read_input(alpha)?;
            let (gd, hd) = (dgla_from_json(&tg)?, dgla_from_json(&th)?);
            let map = action_from_json(&gd, &hd, &ta)?;
            let manifest = Manifest::new("algebra action", vec![ig, ih, ia]);
            let built = match sign {
                SignArg::Graded => build_action_dgla(&map),
                SignArg::Literal => {
                    let s = build_action_dgla_with(&map, BracketSign::Literal);
                    let r = check_dgla(&s.total);
                    if r.passed() {
                        Ok(s)
                    } else {
                        let v = &r.violations[0];
                        Err(dgla_gr::Error::InvalidAction { axiom: v.axiom.to_string(), witness: v.witness.clone() })
                    }
                }
            };
            let (report, verdict) = match built {
                Ok(s) => {
                    let r = check_action_structure(&s);
                    let verdict = if r.passed() { Verdict::Pass } else { Verdict::Fail };
                    (json!({ "passed": r.passed(), "violations": r.violations, "total": dgla_to_json(&s.total) }), verdict)
                }
                Err(dgla_gr::Error::InvalidAction { axiom, witness }) => {
                    eprintln!("rejected: {axiom} fails at ({})", witness.join(", "));
                    (json!({ "passed": false, "rejected": { "axiom": axiom, "witness": witness } }), Verdict::Fail)
                }
                Err(e) => return Err(e.into()),
            };
            Ok((Output { stem: "algebra_action".into(), manifest, report, tables: vec![] }, verdict))
        }
    }
}

fn pc(cli: &Cli, cmd: &PcCommand) -> Result<(Output, Verdict), Failure> {
    match cmd {
        PcCommand::Action { scenario } => {
            let (input, cfg) = load_scenario(cli, scenario)?;
            let summary = action_report(&cfg)?;
            let fields = FieldSet::build(&cfg, cfg.grid.n)?;
            let pc = fields.pc_config(&cfg);
            let base = action_pc(&fields.tetrad, &fields.connection, &pc)?.value;
            let sub = KillingSubalgebra::of(cfg.scenario);
            let norms = generator_norms(&cfg, &fields, &sub.labels)?;
            let mut equivariant = serde_json::Map::new();
            for label in &sub.labels {
                let x = PoincareElement::named(label)?;
                let t = EquivariantTestForm::gaussian(fields.grid, x, &cfg.test_form)?;
                let s = equivariant_action(&fields.tetrad, &fields.connection, &t, &cfg.cutoff(), &pc)?.value;
                equivariant.insert(label.clone(), json!({ "S_g": s, "S_g_minus_S": s - base }));
            }
            let extra = norms.iter().map(|g| g.extra_term).fold(0.0, f64::max);
            let verdict = if summary.action.is_finite() { Verdict::Pass } else { Verdict::Fail };
            let report = json!({
                "S": summary.action,
                "S_U": summary.action_on_u,
                "torsion_norm": summary.torsion_norm,
                "einstein_norm": summary.einstein_norm,
                "extra_term_norm": extra,
                "N": summary.n,
                "h": summary.h,
                "equivariant": equivariant,
            });
            let manifest = Manifest::new("pc action", vec![input]).with_scenario(&cfg);
            Ok((Output { stem: "pc_action".into(), manifest, report, tables: vec![] }, verdict))
        }
        PcCommand::Eom { scenario } => {
            let (input, cfg) = load_scenario(cli, scenario)?;
            let study = eom_study(&cfg)?;
            let sub = KillingSubalgebra::of(cfg.scenario);
            let fine = FieldSet::build(&cfg, *cfg.ns.last().expect("validated"))?;
            let extra = generator_norms(&cfg, &fine, &sub.labels)?.iter().map(|g| g.extra_term).fold(0.0, f64::max);
            let last = |label: &str| study.get(label).map(|s| *s.norms.last().expect("nonempty"));
            let verdict = study.verdict();
            let report = json!({
                "torsion_norm": last("torsion"),
                "einstein_norm": last("einstein"),
                "extra_term_norm": extra,
                "N": fine.grid.n(),
                "h": fine.grid.h(),
                "study": study,
                "verdict": verdict,
            });
            let manifest = Manifest::new("pc eom", vec![input]).with_scenario(&cfg);
            let tables = vec![(String::new(), study_csv(&study, "residual"))];
            Ok((Output { stem: "pc_eom".into(), manifest, report, tables }, verdict))
        }
    }
}

fn killing(cli: &Cli, scenario: &Path, generators: &Option<Vec<String>>) -> Result<(Output, Verdict), Failure> {
    let (input, cfg) = load_scenario(cli, scenario)?;
    let sub = subalgebra(&cfg, generators)?;
    let studies = symmetry_studies(&cfg, &sub.labels)?;
    let summary = summarize(cfg.mass, &studies);
    let verdict = summary_verdict(&summary);
    let mut warnings = Vec::new();
    if sub.is_empty() {
        warnings.push("empty generator list: symmetry checks pass vacuously");
    }
    let report = json!({
        "scenario": cfg.scenario,
        "subalgebra": sub.labels,
        "warnings": warnings,
        "studies": studies,
        "generators": summary,
        "verdict": verdict,
    });
    let tables = vec![
        (String::new(), study_csv(&studies.killing, "generator")),
        ("_symmetry".to_string(), study_csv(&studies.symmetry, "generator")),
        ("_extra_term".to_string(), study_csv(&studies.extra_term, "generator")),
    ];
    let manifest = Manifest::new("killing residuals", vec![input]).with_scenario(&cfg);
    Ok((Output { stem: "killing_residuals".into(), manifest, report, tables }, verdict))
}

fn mass(cli: &Cli, cmd: &MassCommand) -> Result<(Output, Verdict), Failure> {
    let (scenario, radii, komar) = match cmd {
        MassCommand::Adm { scenario, radii } => (scenario, radii, false),
        MassCommand::Komar { scenario, radii } => (scenario, radii, true),
    };
    let (input, mut cfg) = load_scenario(cli, scenario)?;
    if let Some(r) = radii {
        cfg.radii = r.clone();
    }
    let grid = cfg.grid(cfg.grid.n)?;
    let metric = cfg.geometry().metric(grid);
    let t0 = grid.t_zero_index();
    let s = cfg.mass_settings;
    let result: MassResult = if komar {
        komar_mass(&metric, t0, &cfg.radii, &s)?
    } else {
        adm_energy(&metric, t0, &cfg.radii, &s)?
    };
    let tolerance = if komar { s.agreement_tolerance } else { s.rel_tolerance };
    let matches = (result.extrapolated - cfg.mass).abs() <= tolerance * cfg.mass + s.abs_floor;
    let positivity = positivity_check(result.extrapolated, [0.0; 3]);
    let verdict = if matches && positivity.passed { Verdict::Pass } else { Verdict::Fail };
    let report = json!({
        "quantity": if komar { "komar" } else { "adm" },
        "N": cfg.grid.n,
        "radii": result.radii,
        "values": result.values,
        "extrapolated": result.extrapolated,
        "slope": result.slope,
        "expected": cfg.mass,
        "tolerance": tolerance,
        "positivity": positivity,
        "verdict": verdict,
    });
    let name = if komar { "mass komar" } else { "mass adm" };
    let manifest = Manifest::new(name, vec![input]).with_scenario(&cfg);
    Ok((Output { stem: name.replace(' ', "_"), manifest, report, tables: vec![] }, verdict))
}

fn convergence(cli: &Cli, op: ConvergenceOp, scenario: &Path, generators: &Option<Vec<String>>) -> Result<(Output, Verdict), Failure> {
    let (input, cfg) = load_scenario(cli, scenario)?;
    if cfg.ns.len() < 3 {
        return Err(Failure::Usage(format!("a convergence study needs at least 3 resolutions, got {:?}", cfg.ns)));
    }
    let (study, first): (Study, &str) = match op {
        ConvergenceOp::Torsion | ConvergenceOp::Einstein => {
            let full = eom_study(&cfg)?;
            let label = if matches!(op, ConvergenceOp::Torsion) { "torsion" } else { "einstein" };
            let series: Vec<_> = full.series.iter().filter(|s| s.label == label).cloned().collect();
            (Study { series, ..full }, "residual")
        }
        _ => {
            let sub = subalgebra(&cfg, generators)?;
            let studies = symmetry_studies(&cfg, &sub.labels)?;
            let study = match op {
                ConvergenceOp::Symmetry => studies.symmetry,
                ConvergenceOp::Killing => studies.killing,
                _ => studies.extra_term,
            };
            (study, "generator")
        }
    };
    let verdict = study.verdict();
    let op_name = format!("{op:?}").to_lowercase();
    let report = json!({ "op": op_name, "study": study, "verdict": verdict });
    let tables = vec![(String::new(), study_csv(&study, first))];
    let manifest = Manifest::new(&format!("convergence {op_name}"), vec![input]).with_scenario(&cfg);
    Ok((Output { stem: format!("convergence_{op_name}"), manifest, report, tables }, verdict))
}

fn run(cli: &Cli) -> Result<(Output, Verdict), Failure> {
    match &cli.command {
        Command::Algebra(cmd) => algebra(cmd),
        Command::Pc(cmd) => pc(cli, cmd),
        Command::Killing(KillingCommand::Residuals { scenario, generators }) => killing(cli, scenario, generators),
        Command::Mass(cmd) => mass(cli, cmd),
        Command::Convergence { op, scenario, generators } => convergence(cli, *op, scenario, generators),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((output, verdict)) => {
            if let Err(e) = output.emit(cli.out.as_deref()) {
                eprintln!("error: writing report: {e}");
                return ExitCode::from(2);
            }
            eprintln!("verdict: {verdict}");
            ExitCode::from(exit_code(verdict))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
