//! Scenario files and the runs built from them.

use serde::{Deserialize, Serialize};

use super::convergence::{assess, Series, Study, Thresholds, Verdict};
use super::cutoff::CutoffFunction;
use super::element::PoincareElement;
use super::residuals::{killing_residual, symmetry_residual};
use crate::algebra::poincare::{self, closure_check, poincare_algebra, NAMED_GENERATORS, SPHERICAL_GENERATORS};
use crate::error::{Error, Result};
use crate::forms::grid::{Grid4, RadiusMode, Region};
use crate::forms::tetrad::{metric_from_tetrad, Connection, Tetrad};
use crate::mass::{adm_energy, komar_mass, positivity_check, MassResult, MassSettings, Positivity};
use crate::palatini::{
    action_pc_over, einstein_residual, extra_eom_term, torsion_residual, EquivariantTestForm, PcConfig, TestFormSpec,
};
use crate::spacetime::IsotropicSchwarzschild;
use crate::Rational;

/// Default resolutions of a convergence study.
pub const DEFAULT_NS: [usize; 3] = [17, 25, 33];
/// Default sphere radii for the mass integrals.
pub const DEFAULT_RADII: [f64; 3] = [8.0, 12.0, 16.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    /// All ten Poincaré generators.
    Poincare,
    /// `{∂_t, L_1, L_2, L_3}`.
    Spherical,
}

impl ScenarioKind {
    pub fn generators(self) -> &'static [&'static str] {
        match self {
            Self::Poincare => &NAMED_GENERATORS,
            Self::Spherical => &SPHERICAL_GENERATORS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(rename = "L")]
    pub half_width: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutoffSpec {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

/// Contents of a scenario JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(rename = "M")]
    pub mass: f64,
    #[serde(rename = "Lambda", default)]
    pub lambda: f64,
    pub grid: GridSpec,
    pub cutoff: CutoffSpec,
    #[serde(default)]
    pub radius_mode: RadiusMode,
    #[serde(rename = "Ns", default = "default_ns")]
    pub ns: Vec<usize>,
    #[serde(default = "default_radii")]
    pub radii: Vec<f64>,
    #[serde(default)]
    pub thresholds: Thresholds,
    #[serde(default)]
    pub test_form: TestFormSpec,
    #[serde(default)]
    pub mass_settings: MassSettings,
}

fn default_ns() -> Vec<usize> {
    DEFAULT_NS.to_vec()
}

fn default_radii() -> Vec<f64> {
    DEFAULT_RADII.to_vec()
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (l, r, big_r) = (self.grid.half_width, self.cutoff.r, self.cutoff.big_r);
        if !(l > 0.0) {
            return Err(Error::Config(format!("box half width L = {l} must be positive")));
        }
        CutoffFunction::new(r, big_r)?;
        if big_r >= l {
            return Err(Error::Config(format!("cutoff radius R = {big_r} must be below the box half width L = {l}")));
        }
        if !(self.mass >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::Config(format!("need M ≥ 0 and finite Λ, got M = {}, Λ = {}", self.mass, self.lambda)));
        }
        if self.ns.len() < 2 {
            return Err(Error::Config("a study needs at least two resolutions".into()));
        }
        for &n in self.ns.iter().chain([self.grid.n].iter()) {
            Grid4::new(l, n, r, self.radius_mode)?;
        }
        if self.ns.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(format!("resolutions must increase, got {:?}", self.ns)));
        }
        IsotropicSchwarzschild::for_inner_radius(self.mass, r)?;
        Ok(())
    }

    pub fn grid(&self, n: usize) -> Result<Grid4<f64>> {
        Grid4::new(self.grid.half_width, n, self.cutoff.r, self.radius_mode)
    }

    pub fn cutoff(&self) -> CutoffFunction<f64> {
        CutoffFunction::new(self.cutoff.r, self.cutoff.big_r).expect("validated")
    }

    pub fn geometry(&self) -> IsotropicSchwarzschild<f64> {
        IsotropicSchwarzschild::for_inner_radius(self.mass, self.cutoff.r).expect("validated")
    }

    pub fn with_ns(mut self, ns: Vec<usize>) -> Result<Self> {
        self.ns = ns;
        self.validate()?;
        Ok(self)
    }

    pub fn with_radius_mode(mut self, mode: RadiusMode) -> Self {
        self.radius_mode = mode;
        self
    }
}

/// A named set of generators, required to close under the Poincaré bracket.
#[derive(Clone, Debug, PartialEq)]
pub struct KillingSubalgebra {
    pub name: String,
    pub labels: Vec<String>,
    pub generators: Vec<PoincareElement<f64>>,
}

impl KillingSubalgebra {
    pub fn new(name: &str, labels: &[&str]) -> Result<Self> {
        let exact: Vec<Vec<Rational>> = labels
            .iter()
            .map(|l| poincare::generator::<Rational>(l).ok_or_else(|| Error::UnknownLabel(l.to_string())))
            .collect::<Result<_>>()?;
        if !exact.is_empty() && !closure_check(&poincare_algebra::<Rational>(), &exact) {
            return Err(Error::Config(format!("generators {labels:?} do not close under the bracket")));
        }
        let generators = labels.iter().map(|l| PoincareElement::named(l)).collect::<Result<_>>()?;
        Ok(Self { name: name.to_string(), labels: labels.iter().map(|s| s.to_string()).collect(), generators })
    }

    pub fn of(kind: ScenarioKind) -> Self {
        let name = match kind {
            ScenarioKind::Poincare => "poincare",
            ScenarioKind::Spherical => "spherical",
        };
        Self::new(name, kind.generators()).expect("named subalgebras close")
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Fields of one scenario at one resolution.
pub struct FieldSet {
    pub grid: Grid4<f64>,
    pub tetrad: Tetrad<f64>,
    pub connection: Connection<f64>,
}

impl FieldSet {
    pub fn build(cfg: &ScenarioConfig, n: usize) -> Result<Self> {
        let grid = cfg.grid(n)?;
        let geometry = cfg.geometry();
        Ok(Self { grid, tetrad: geometry.tetrad(grid)?, connection: geometry.connection(grid) })
    }

    pub fn pc_config(&self, cfg: &ScenarioConfig) -> PcConfig<f64> {
        PcConfig { lambda: cfg.lambda, grid: self.grid }
    }
}

/// Residual norms of one generator on one grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorNorms {
    pub symmetry: f64,
    pub killing: f64,
    pub extra_term: f64,
}

pub fn generator_norms(cfg: &ScenarioConfig, fields: &FieldSet, labels: &[String]) -> Result<Vec<GeneratorNorms>> {
    let metric = metric_from_tetrad(&fields.tetrad);
    let cutoff = cfg.cutoff();
    labels
        .iter()
        .map(|label| {
            let x = PoincareElement::named(label)?;
            let symmetry = symmetry_residual(&fields.tetrad, &x).max_norm(Region::U);
            let killing = killing_residual(&metric, &x).1;
            let t = EquivariantTestForm::gaussian(fields.grid, x, &cfg.test_form)?;
            let extra_term = extra_eom_term(&fields.tetrad, &t, &cutoff)?.norm;
            Ok(GeneratorNorms { symmetry, killing, extra_term })
        })
        .collect()
}

/// Torsion and Einstein residual norms over U.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EomNorms {
    pub torsion: f64,
    pub einstein: f64,
}

pub fn eom_norms(cfg: &ScenarioConfig, fields: &FieldSet) -> Result<EomNorms> {
    let torsion = torsion_residual(&fields.tetrad, &fields.connection)?.norm;
    let einstein = einstein_residual(&fields.tetrad, &fields.connection, &fields.pc_config(cfg))?.norm;
    Ok(EomNorms { torsion, einstein })
}

fn hs(cfg: &ScenarioConfig) -> Result<Vec<f64>> {
    cfg.ns.iter().map(|&n| Ok(cfg.grid(n)?.h())).collect()
}

/// Per-generator studies of the symmetry residual, Killing residual and extra EOM term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryStudies {
    pub symmetry: Study,
    pub killing: Study,
    pub extra_term: Study,
}

pub fn symmetry_studies(cfg: &ScenarioConfig, labels: &[String]) -> Result<SymmetryStudies> {
    let mut per_n = Vec::with_capacity(cfg.ns.len());
    for &n in &cfg.ns {
        let fields = FieldSet::build(cfg, n)?;
        per_n.push(generator_norms(cfg, &fields, labels)?);
    }
    let series = |pick: fn(&GeneratorNorms) -> f64| -> Vec<Series> {
        labels
            .iter()
            .enumerate()
            .map(|(g, l)| Series { label: l.clone(), norms: per_n.iter().map(|v| pick(&v[g])).collect() })
            .collect()
    };
    let hs = hs(cfg)?;
    Ok(SymmetryStudies {
        symmetry: assess(&cfg.ns, &hs, &series(|g| g.symmetry), &cfg.thresholds)?,
        killing: assess(&cfg.ns, &hs, &series(|g| g.killing), &cfg.thresholds)?,
        extra_term: assess(&cfg.ns, &hs, &series(|g| g.extra_term), &cfg.thresholds)?,
    })
}

/// Convergence of the torsion and Einstein residuals.
pub fn eom_study(cfg: &ScenarioConfig) -> Result<Study> {
    let mut torsion = Vec::new();
    let mut einstein = Vec::new();
    for &n in &cfg.ns {
        let e = eom_norms(cfg, &FieldSet::build(cfg, n)?)?;
        torsion.push(e.torsion);
        einstein.push(e.einstein);
    }
    let series = [Series { label: "torsion".into(), norms: torsion }, Series { label: "einstein".into(), norms: einstein }];
    assess(&cfg.ns, &hs(cfg)?, &series, &cfg.thresholds)
}

/// ADM and Komar masses on the `t = 0` slice at the production resolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub expected: f64,
    pub adm: MassResult,
    pub komar: MassResult,
    pub positivity: Positivity,
    /// `|ADM − M| ≤ rel_tolerance · M + abs_floor`.
    pub adm_matches_parameter: bool,
    /// `|Komar − ADM| ≤ agreement · |ADM| + abs_floor`.
    pub komar_matches_adm: bool,
    pub verdict: Verdict,
}

pub fn mass_report(cfg: &ScenarioConfig) -> Result<MassReport> {
    let grid = cfg.grid(cfg.grid.n)?;
    let metric = cfg.geometry().metric(grid);
    let t0 = grid.t_zero_index();
    let adm = adm_energy(&metric, t0, &cfg.radii, &cfg.mass_settings)?;
    let komar = komar_mass(&metric, t0, &cfg.radii, &cfg.mass_settings)?;
    let s = &cfg.mass_settings;
    let positivity = positivity_check(adm.extrapolated, [0.0; 3]);
    let adm_matches_parameter = (adm.extrapolated - cfg.mass).abs() <= s.rel_tolerance * cfg.mass + s.abs_floor;
    let komar_matches_adm =
        (komar.extrapolated - adm.extrapolated).abs() <= s.agreement_tolerance * adm.extrapolated.abs() + s.abs_floor;
    let verdict = if positivity.passed && adm_matches_parameter && komar_matches_adm { Verdict::Pass } else { Verdict::Fail };
    Ok(MassReport { n: cfg.grid.n, expected: cfg.mass, adm, komar, positivity, adm_matches_parameter, komar_matches_adm, verdict })
}

/// Verdicts of one generator next to what the geometry predicts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSummary {
    pub generator: String,
    /// Whether the generator is a symmetry of the scenario geometry.
    pub expected_symmetry: bool,
    pub symmetry: Verdict,
    pub killing: Verdict,
    pub extra_term: Verdict,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: ScenarioKind,
    #[serde(rename = "M")]
    pub mass: f64,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    pub radius_mode: RadiusMode,
    pub subalgebra: Vec<String>,
    pub warnings: Vec<String>,
    pub studies: SymmetryStudies,
    pub eom: Study,
    pub masses: MassReport,
    pub generators: Vec<GeneratorSummary>,
    pub verdict: Verdict,
}

/// Whether `label` generates an isometry of the scenario geometry.
pub fn expected_symmetry(mass: f64, label: &str) -> bool {
    mass == 0.0 || SPHERICAL_GENERATORS.contains(&label)
}

/// Verdict for a generator study given the geometry's prediction.
fn agreement(expected: bool, v: Verdict) -> Verdict {
    match (expected, v) {
        (_, Verdict::Inconclusive) => Verdict::Inconclusive,
        (true, v) if v.is_pass() => Verdict::Pass,
        (false, Verdict::Fail) => Verdict::Pass,
        _ => Verdict::Fail,
    }
}

pub fn summarize(mass: f64, studies: &SymmetryStudies) -> Vec<GeneratorSummary> {
    studies
        .symmetry
        .series
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let expected_symmetry = expected_symmetry(mass, &s.label);
            let (symmetry, killing, extra_term) =
                (s.verdict, studies.killing.series[i].verdict, studies.extra_term.series[i].verdict);
            let agrees = [symmetry, killing, extra_term].iter().all(|v| agreement(expected_symmetry, *v) == Verdict::Pass);
            GeneratorSummary { generator: s.label.clone(), expected_symmetry, symmetry, killing, extra_term, agrees }
        })
        .collect()
}

/// Overall verdict of a generator table: each study must match the prediction.
pub fn summary_verdict(summaries: &[GeneratorSummary]) -> Verdict {
    summaries.iter().fold(Verdict::Exact, |acc, s| {
        [s.symmetry, s.killing, s.extra_term]
            .iter()
            .fold(acc, |a, v| a.combine(agreement(s.expected_symmetry, *v)))
    })
}

/// Full run: generator studies, EOM study and masses.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    cfg.validate()?;
    let sub = KillingSubalgebra::of(cfg.scenario);
    let mut warnings = Vec::new();
    if sub.is_empty() {
        warnings.push("empty generator list: symmetry checks pass vacuously".to_string());
    }
    if cfg.mass > 0.0 && cfg.radius_mode == RadiusMode::FourD {
        warnings.push("4d radius mode leaves the regularised core inside U; EOM residuals there are not vacuum".into());
    }
    let studies = symmetry_studies(cfg, &sub.labels)?;
    let eom = eom_study(cfg)?;
    let masses = mass_report(cfg)?;
    let generators = summarize(cfg.mass, &studies);
    let verdict = summary_verdict(&generators).combine(eom.verdict()).combine(masses.verdict);
    Ok(ScenarioReport {
        scenario: cfg.scenario,
        mass: cfg.mass,
        lambda: cfg.lambda,
        radius_mode: cfg.radius_mode,
        subalgebra: sub.labels,
        warnings,
        studies,
        eom,
        masses,
        generators,
        verdict,
    })
}

/// `S_PC` over the box and over U at the production resolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionReport {
    #[serde(rename = "S")]
    pub action: f64,
    #[serde(rename = "S_U")]
    pub action_on_u: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
    pub torsion_norm: f64,
    pub einstein_norm: f64,
}

pub fn action_report(cfg: &ScenarioConfig) -> Result<ActionReport> {
    let fields = FieldSet::build(cfg, cfg.grid.n)?;
    let pc = fields.pc_config(cfg);
    let action = action_pc_over(&fields.tetrad, &fields.connection, &pc, Region::Box)?.value;
    let action_on_u = action_pc_over(&fields.tetrad, &fields.connection, &pc, Region::U)?.value;
    let eom = eom_norms(cfg, &fields)?;
    Ok(ActionReport {
        action,
        action_on_u,
        n: cfg.grid.n,
        h: fields.grid.h(),
        torsion_norm: eom.torsion,
        einstein_norm: eom.einstein,
    })
}
