//! Command-line front end. [`run`] returns the report text and the exit
//! status so it can be driven from tests without spawning a process.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bilinear::{compute_dirac, fpk_residuals};
use crate::clifford::{Block, C64};
use crate::homotopy::{spinor_homotopy, sweep, sweep_grid};
use crate::lounesto::{classify, classify_by_coefficients, ClassifyOptions};
use crate::mdo::{
    charge_conjugate, chiral_relation_residuals, diraclike_residual, elko, mdo_bilinears, structure_defect,
    Conjugation, Helicity, Momentum,
};
use crate::plane::{
    chi_factors, coefficient_set, decompose, dirac_from_base, map_dirac_mdo, mdo_from_base, Direction, MassInputs,
    PlaneBasis,
};
use crate::rim::{require_rim_base, RimParams};
use crate::spinor::{Sign, Spinor};
use crate::suites::{run_suites, Suite, VerifyConfig};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Residual bound applied by the `mdo` and `map` commands.
pub const COMMAND_CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "spinorlab", version, about = "Spinor bilinears, classification and spinor-plane maps")]
pub struct Cli {
    /// Relative zero-test tolerance.
    #[arg(long, global = true, env = "SPINORLAB_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lounesto class of every spinor in a JSON or CSV file.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Coordinates of every spinor in the plane of a RIM base.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        base: PathBuf,
    },
    /// Change of basis between the Dirac and MDO spinors built on a base.
    Map {
        #[arg(long, value_enum)]
        direction: MapDirection,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        coeffs: PathBuf,
    },
    /// Classified straight-line path between two spinors of a base plane.
    Homotopy {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Elko spinors for a momentum and their identity residuals.
    Mdo {
        #[arg(long)]
        momentum: PathBuf,
        #[arg(long, value_enum)]
        conj: Option<ConjArg>,
        #[arg(long, value_parser = ["+", "-"], allow_hyphen_values = true)]
        helicity: Option<String>,
    },
    /// Randomised identity suites.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Trials per suite; each suite has its own default.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapDirection {
    DiracToMdo,
    MdoToDirac,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConjArg {
    #[value(name = "S")]
    S,
    #[value(name = "A")]
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Clifford,
    Fpk,
    Rim,
    Plane,
    Homotopy,
    Mdo,
    Props,
    All,
}

impl SuiteArg {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Clifford => vec![Suite::Clifford],
            SuiteArg::Fpk => vec![Suite::Fpk],
            SuiteArg::Rim => vec![Suite::Rim],
            SuiteArg::Plane => vec![Suite::Plane],
            SuiteArg::Homotopy => vec![Suite::Homotopy],
            SuiteArg::Mdo => vec![Suite::Mdo],
            SuiteArg::Props => vec![Suite::Props],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Ok = 0,
    NearDegenerate = 1,
    InvalidInput = 2,
    SuiteFailure = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    fn worst(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    /// Pretty-printed JSON report, empty when the input could not be read.
    pub report: String,
    pub diagnostics: Vec<String>,
}

/// An input error with the file it came from.
#[derive(Debug)]
pub struct InputError {
    pub path: PathBuf,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path.display(), self.message)
    }
}

fn input_error(path: &Path, message: impl fmt::Display) -> InputError {
    InputError { path: path.to_path_buf(), message: message.to_string() }
}

/// Complex number as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Cx {
    fn from(z: C64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

impl From<Cx> for C64 {
    fn from(z: Cx) -> Self {
        C64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub a: Cx,
    pub b: Cx,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffsFile {
    pub base: Spinor,
    #[serde(rename = "M")]
    pub dirac_mass: f64,
    #[serde(rename = "m")]
    pub mdo_mass: f64,
    pub theta: f64,
    pub sign: Sign,
    /// Spinor to map; defaults to the source spinor built on the base.
    pub spinor: Option<Spinor>,
}

fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| input_error(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| input_error(path, e))
}

/// Spinors from a JSON file (one object or an array) or a CSV file with
/// eight real columns `re₁, im₁, …, re₄, im₄` per row.
pub fn read_spinors(path: &Path) -> Result<Vec<Spinor>, InputError> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        return read_csv(path);
    }
    let text = read_text(path)?;
    let parsed = if text.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<Spinor>>(&text)
    } else {
        serde_json::from_str::<Spinor>(&text).map(|s| vec![s])
    };
    parsed.map_err(|e| input_error(path, e))
}

fn read_csv(path: &Path) -> Result<Vec<Spinor>, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| input_error(path, e))?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| input_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 8 {
            return Err(input_error(path, format!("line {line}: expected 8 columns, found {}", record.len())));
        }
        let mut v = [0.0; 8];
        for (i, field) in record.iter().enumerate() {
            v[i] =
                field.parse::<f64>().map_err(|e| input_error(path, format!("line {line}, column {}: {e}", i + 1)))?;
        }
        let s = Spinor::from_parts([v[0], v[2], v[4], v[6]], [v[1], v[3], v[5], v[7]]);
        if !s.is_finite() {
            return Err(input_error(path, format!("line {line}: non-finite component")));
        }
        out.push(s);
    }
    Ok(out)
}

fn to_report<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Outcome {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Outcome {
            status: Status::InvalidInput,
            report: String::new(),
            diagnostics: vec![format!("tolerance must be a positive number, got {}", cli.tol)],
        };
    }
    let result = match &cli.command {
        Command::Classify { input } => classify_cmd(input, cli.tol),
        Command::Decompose { input, base } => decompose_cmd(input, base, cli.tol),
        Command::Map { direction, params, coeffs } => map_cmd(*direction, params, coeffs, cli.tol),
        Command::Homotopy { from, to, base, steps } => homotopy_cmd(from, to, base, *steps, cli.tol),
        Command::Mdo { momentum, conj, helicity } => mdo_cmd(momentum, *conj, helicity.as_deref()),
        Command::Verify { suite, trials, seed } => Ok(verify_cmd(*suite, *trials, *seed, cli.tol)),
    };
    match result {
        Ok(o) => o,
        Err(e) => Outcome { status: Status::InvalidInput, report: String::new(), diagnostics: vec![e.to_string()] },
    }
}

#[derive(Serialize)]
struct ClassifyRecord {
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    lounesto_class: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    near_degenerate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl ClassifyRecord {
    fn failed(index: usize, error: impl fmt::Display) -> Self {
        ClassifyRecord {
            index,
            lounesto_class: None,
            regular: None,
            near_degenerate: None,
            a: None,
            b: None,
            error: Some(error.to_string()),
        }
    }
}

fn classify_cmd(input: &Path, tol: f64) -> Result<Outcome, InputError> {
    let spinors = read_spinors(input)?;
    let opt = ClassifyOptions { tol };
    let mut status = Status::Ok;
    let mut diagnostics = Vec::new();
    let records: Vec<ClassifyRecord> = spinors
        .iter()
        .enumerate()
        .map(|(index, psi)| {
            let bil = compute_dirac(psi);
            match classify(&bil, &opt) {
                Ok(c) => {
                    if c.near_degenerate {
                        status = status.worst(Status::NearDegenerate);
                    }
                    ClassifyRecord {
                        index,
                        lounesto_class: Some(c.class.number()),
                        regular: Some(c.class.is_regular()),
                        near_degenerate: Some(c.near_degenerate),
                        a: Some(bil.a.re),
                        b: Some(bil.b.re),
                        error: None,
                    }
                }
                Err(e) => {
                    status = status.worst(Status::InvalidInput);
                    diagnostics.push(format!("{}: record {index}: {e}", input.display()));
                    ClassifyRecord::failed(index, e)
                }
            }
        })
        .collect();
    Ok(Outcome { status, report: to_report(&records), diagnostics })
}

#[derive(Serialize)]
struct DecomposeRecord {
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    r1: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r2: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lounesto_class: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    near_degenerate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn load_base(path: &Path, tol: f64) -> Result<(Spinor, crate::bilinear::Bilinears), InputError> {
    let base: Spinor = read_json(path)?;
    let bil = require_rim_base(&base, tol).map_err(|e| input_error(path, e))?;
    Ok((base, bil))
}

fn decompose_cmd(input: &Path, base_path: &Path, tol: f64) -> Result<Outcome, InputError> {
    let spinors = read_spinors(input)?;
    let (base, bil) = load_base(base_path, tol)?;
    let basis = PlaneBasis::of_base(base);
    let opt = ClassifyOptions { tol };
    let mut status = Status::Ok;
    let mut diagnostics = Vec::new();
    let records: Vec<DecomposeRecord> = spinors
        .iter()
        .enumerate()
        .map(|(index, psi)| {
            let result = decompose(psi, &basis).and_then(|c| {
                let class = classify_by_coefficients(c.r1, c.r2, bil.a.re, bil.b.re, &opt)?;
                Ok((c, class))
            });
            match result {
                Ok((c, class)) => {
                    if class.near_degenerate {
                        status = status.worst(Status::NearDegenerate);
                    }
                    DecomposeRecord {
                        index,
                        r1: Some(c.r1.into()),
                        r2: Some(c.r2.into()),
                        lounesto_class: Some(class.class.number()),
                        regular: Some(class.class.is_regular()),
                        near_degenerate: Some(class.near_degenerate),
                        error: None,
                    }
                }
                Err(e) => {
                    status = status.worst(Status::InvalidInput);
                    diagnostics.push(format!("{}: record {index}: {e}", input.display()));
                    DecomposeRecord {
                        index,
                        r1: None,
                        r2: None,
                        lounesto_class: None,
                        regular: None,
                        near_degenerate: None,
                        error: Some(e.to_string()),
                    }
                }
            }
        })
        .collect();
    Ok(Outcome { status, report: to_report(&records), diagnostics })
}

#[derive(Serialize)]
struct MapReport {
    direction: &'static str,
    input: Spinor,
    mapped: Spinor,
    /// `‖back-mapped − input‖/‖input‖`.
    roundtrip_residual: f64,
    /// `‖mapped − target built on the base‖/‖target‖`, for the default input.
    #[serde(skip_serializing_if = "Option::is_none")]
    target_residual: Option<f64>,
    chi1: Cx,
    chi2: Cx,
}

fn map_cmd(direction: MapDirection, params: &Path, coeffs: &Path, tol: f64) -> Result<Outcome, InputError> {
    let pf: ParamsFile = read_json(params)?;
    let p = RimParams::validate(pf.a.into(), pf.b.into(), tol).map_err(|e| input_error(params, e))?;
    let cf: CoeffsFile = read_json(coeffs)?;
    let bil = require_rim_base(&cf.base, tol).map_err(|e| input_error(coeffs, e))?;
    let inputs = MassInputs { dirac_mass: cf.dirac_mass, mdo_mass: cf.mdo_mass, theta: cf.theta, sign: cf.sign };
    let c = coefficient_set(&p, &bil, inputs, tol).map_err(|e| input_error(coeffs, e))?;
    let chi = chi_factors(&c).map_err(|e| input_error(coeffs, e))?;
    let (forward, backward, name) = match direction {
        MapDirection::DiracToMdo => (Direction::DiracToMdo, Direction::MdoToDirac, "dirac-to-mdo"),
        MapDirection::MdoToDirac => (Direction::MdoToDirac, Direction::DiracToMdo, "mdo-to-dirac"),
    };
    let (source, target) = match direction {
        MapDirection::DiracToMdo => (dirac_from_base(&cf.base, &c), mdo_from_base(&cf.base, &c)),
        MapDirection::MdoToDirac => (mdo_from_base(&cf.base, &c), dirac_from_base(&cf.base, &c)),
    };
    let input = cf.spinor.unwrap_or(source);
    let mapped = map_dirac_mdo(&input, &chi, forward).map_err(|e| input_error(coeffs, e))?;
    let back = map_dirac_mdo(&mapped, &chi, backward).map_err(|e| input_error(coeffs, e))?;
    let roundtrip_residual = back.distance(&input) / input.norm();
    let target_residual = cf.spinor.is_none().then(|| mapped.distance(&target) / target.norm());
    let ok = roundtrip_residual < COMMAND_CHECK_TOL && target_residual.is_none_or(|r| r < COMMAND_CHECK_TOL);
    let report = MapReport {
        direction: name,
        input,
        mapped,
        roundtrip_residual,
        target_residual,
        chi1: chi.chi1.into(),
        chi2: chi.chi2.into(),
    };
    Ok(Outcome {
        status: if ok { Status::Ok } else { Status::SuiteFailure },
        report: to_report(&report),
        diagnostics: Vec::new(),
    })
}

#[derive(Serialize)]
struct CoordsOut {
    r1: Cx,
    r2: Cx,
}

#[derive(Serialize)]
struct HomotopyRecord {
    t: f64,
    coords: CoordsOut,
    lounesto_class: Option<u8>,
    regular: Option<bool>,
    near_degenerate: bool,
    degenerate: bool,
}

fn homotopy_cmd(from: &Path, to: &Path, base_path: &Path, steps: usize, tol: f64) -> Result<Outcome, InputError> {
    if steps == 0 {
        return Err(input_error(Path::new("--steps"), "must be at least 1"));
    }
    let psi: Spinor = read_json(from)?;
    let phi: Spinor = read_json(to)?;
    let (base, bil) = load_base(base_path, tol)?;
    let basis = PlaneBasis::of_base(base);
    let cp = decompose(&psi, &basis).map_err(|e| input_error(from, e))?;
    let cq = decompose(&phi, &basis).map_err(|e| input_error(to, e))?;
    let path = spinor_homotopy(&cp, &cq).map_err(|e| input_error(from, e))?;
    let opt = ClassifyOptions { tol };
    let points = sweep(&path, cp.r1, (bil.a.re, bil.b.re), &sweep_grid(steps), &opt);
    let mut status = Status::Ok;
    let records: Vec<HomotopyRecord> = points
        .iter()
        .map(|pt| {
            let near = pt.classification.is_some_and(|c| c.near_degenerate);
            if near || pt.degenerate {
                status = status.worst(Status::NearDegenerate);
            }
            HomotopyRecord {
                t: pt.t,
                coords: CoordsOut { r1: pt.coords.r1.into(), r2: pt.coords.r2.into() },
                lounesto_class: pt.classification.map(|c| c.class.number()),
                regular: pt.classification.map(|c| c.class.is_regular()),
                near_degenerate: near,
                degenerate: pt.degenerate,
            }
        })
        .collect();
    Ok(Outcome { status, report: to_report(&records), diagnostics: Vec::new() })
}

#[derive(Serialize)]
struct DiracLikeOut {
    residual: f64,
    eta: f64,
    expected_eta: f64,
}

#[derive(Serialize)]
struct MdoRecord {
    conj: Conjugation,
    helicity: Helicity,
    sign: Sign,
    spinor: Spinor,
    structure_defect: f64,
    charge_conjugation_residual: f64,
    dual_helicity_residual: f64,
    diraclike: DiracLikeOut,
    chiral_relations: [f64; 4],
    norm_identity_residual: f64,
    passed: bool,
}

#[derive(Serialize)]
struct MdoReport {
    momentum: Momentum,
    energy: f64,
    spinors: Vec<MdoRecord>,
}

fn mdo_cmd(path: &Path, conj: Option<ConjArg>, helicity: Option<&str>) -> Result<Outcome, InputError> {
    let mom: Momentum = read_json(path)?;
    mom.validate().map_err(|e| input_error(path, e))?;
    let conjs = match conj {
        Some(ConjArg::S) => vec![Conjugation::S],
        Some(ConjArg::A) => vec![Conjugation::A],
        None => vec![Conjugation::S, Conjugation::A],
    };
    let hels = match helicity {
        Some("+") => vec![Helicity::Plus],
        Some(_) => vec![Helicity::Minus],
        None => vec![Helicity::Plus, Helicity::Minus],
    };
    let op = mom.helicity_operator();
    let xi_size = crate::clifford::max_abs(&crate::mdo::xi(&mom));
    let mut records = Vec::new();
    let mut status = Status::Ok;
    for &h in &hels {
        for &c in &conjs {
            let l = elko(&mom, h, c);
            let n = l.spinor.norm();
            let (top, bottom) = (l.spinor.block(Block::First), l.spinor.block(Block::Second));
            let hv = C64::from(h.value());
            let dual_helicity_residual = ((op * bottom - bottom * hv).norm() + (op * top + top * hv).norm()) / n;
            let charge_conjugation_residual =
                charge_conjugate(&l.spinor).distance(&l.spinor.scale(C64::from(c.sign().value()))) / n;
            let dl = diraclike_residual(&l, &mom);
            let chiral_relations = chiral_relation_residuals(&l.spinor, &mom)
                .map_err(|e| input_error(path, e))?
                .map(|r| r / (xi_size * n.powi(3)));
            let bil = mdo_bilinears(&l.spinor, &mom).map_err(|e| input_error(path, e))?;
            let norm_identity_residual = fpk_residuals(&bil).norm / (xi_size * n * n).powi(2);
            let diraclike =
                DiracLikeOut { residual: dl.residual / (mom.m * n), eta: dl.eta, expected_eta: c.diraclike_sign() };
            let passed = structure_defect(&l) == 0.0
                && charge_conjugation_residual < COMMAND_CHECK_TOL
                && dual_helicity_residual < COMMAND_CHECK_TOL
                && diraclike.residual < COMMAND_CHECK_TOL
                && diraclike.eta == diraclike.expected_eta
                && chiral_relations.iter().all(|&r| r < COMMAND_CHECK_TOL)
                && norm_identity_residual < COMMAND_CHECK_TOL;
            if !passed {
                status = Status::SuiteFailure;
            }
            records.push(MdoRecord {
                conj: c,
                helicity: h,
                sign: l.sign,
                spinor: l.spinor,
                structure_defect: structure_defect(&l),
                charge_conjugation_residual,
                dual_helicity_residual,
                diraclike,
                chiral_relations,
                norm_identity_residual,
                passed,
            });
        }
    }
    let report = MdoReport { momentum: mom, energy: mom.energy(), spinors: records };
    Ok(Outcome { status, report: to_report(&report), diagnostics: Vec::new() })
}

fn verify_cmd(suite: SuiteArg, trials: Option<usize>, seed: u64, tol: f64) -> Outcome {
    let report = run_suites(&suite.suites(), &VerifyConfig { seed, trials, tol });
    let mut diagnostics = Vec::new();
    for s in &report.suites {
        for c in s.checks.iter().filter(|c| !c.passed) {
            diagnostics.push(format!("{}: {} = {:e} (bound {:e})", s.suite.name(), c.name, c.value, c.bound));
        }
    }
    Outcome {
        status: if report.passed { Status::Ok } else { Status::SuiteFailure },
        report: to_report(&report),
        diagnostics,
    }
}
