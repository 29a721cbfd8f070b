//! Command-line front end. Every command prints one JSON report and maps its outcome to an
//! exit code: 0 pass, 1 check failed, 2 precondition failed, 3 input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{check_algebra, is_morphism, AlgebraError, RelationCheck, StructureMap};
use crate::builtins::{builtin, BuiltinError, BUILTIN_NAMES};
use crate::graphprop::term_to_graph;
use crate::io::{
    algebra_from_str, algebra_to_string, plan_from_str, presentation_from_str, presentation_to_string,
    read_json, AlgebraFile, IoError, LinearMapFile, RunConventions,
};
use crate::linalg::{GradedSpace, LinearMap};
use crate::presentation::{HomPlan, Presentation, PresentationError};
use crate::twist::{self, HomTarget, TwistError};

#[derive(Parser, Debug)]
#[command(
    name = "homprop",
    version,
    about = "PROP presentations, hom-ification and twisting over exact rationals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate every relation on an algebra.
    Check(Inputs),
    /// Hom-ify a presentation.
    Homify(Inputs),
    /// Report the degree profile of each relation.
    Normality(Inputs),
    /// Twist a Hom-algebra along a morphism.
    Twist(Inputs),
    /// The n-th derived structure of a multiplicative Hom-algebra.
    Derived(Inputs),
    /// Turn an algebra and an endomorphism into a Hom-algebra.
    HomTwist(Inputs),
    /// Check a linear map between two algebras, optionally transporting it to their twists.
    Morphism(Inputs),
    /// Check an isomorphism witness between two twisted algebras.
    IsoCheck(Inputs),
    /// List builtin presentations, or describe one.
    Builtins(Inputs),
    /// Print the graph of every relation monomial.
    GraphDump(Inputs),
}

#[derive(Args, Debug, Default, Clone)]
pub struct Inputs {
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    #[arg(long)]
    pub beta: Option<PathBuf>,
    /// Second algebra for `morphism` and `iso-check`.
    #[arg(long)]
    pub algebra_target: Option<PathBuf>,
    /// Twisting map of the second algebra.
    #[arg(long)]
    pub beta_target: Option<PathBuf>,
    #[arg(long)]
    pub gamma: Option<PathBuf>,
    /// The linear map checked by `morphism`.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// `multiplicative`, `theta-min`, `theta-max` or a plan file.
    #[arg(long)]
    pub plan: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Where to write the produced presentation or algebra.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub ainf_sign_offset: Option<u8>,
    /// Convention file, e.g. `{"ainf_sign_offset": 0}`.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    PreconditionFailed,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::PreconditionFailed => 2,
            Status::InputError => 3,
        }
    }

    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(flatten)]
    pub details: BTreeMap<String, Value>,
}

impl Report {
    fn new(command: &str, status: Status) -> Self {
        Report {
            command: command.to_string(),
            status,
            witnesses: Vec::new(),
            matrices: BTreeMap::new(),
            details: BTreeMap::new(),
        }
    }

    fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
        self
    }

    pub fn to_json(&self) -> String {
        crate::io::to_pretty(self)
    }
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Precondition {
        message: String,
        witness: Option<Value>,
        matrices: BTreeMap<String, Vec<Vec<String>>>,
    },
    Check(Report),
}

impl Failure {
    fn precondition(message: impl Into<String>) -> Self {
        Failure::Precondition {
            message: message.into(),
            witness: None,
            matrices: BTreeMap::new(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<BuiltinError> for Failure {
    fn from(e: BuiltinError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<crate::graphprop::GraphError> for Failure {
    fn from(e: crate::graphprop::GraphError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TwistError> for Failure {
    fn from(e: TwistError) -> Self {
        let message = e.to_string();
        match e {
            TwistError::NormalityViolated(report) => Failure::Precondition {
                message,
                witness: Some(json!({ "normality": report })),
                matrices: BTreeMap::new(),
            },
            TwistError::BetaNotMorphism(w) => Failure::Precondition {
                message,
                witness: Some(json!({ "generator": w.generator })),
                matrices: BTreeMap::from([(format!("beta_{}", w.generator), w.difference)]),
            },
            TwistError::InputNotAlgebra(report) => Failure::Precondition {
                message,
                witness: Some(json!({ "failed_relations": failed_indices(&report.relations) })),
                matrices: failure_matrices(&report.relations),
            },
            TwistError::Precondition { difference, .. } => Failure::Precondition {
                message,
                witness: None,
                matrices: BTreeMap::from([("difference".to_string(), difference)]),
            },
            TwistError::SNotI | TwistError::NotHomified(_) | TwistError::Singular => {
                Failure::precondition(message)
            }
            TwistError::Internal(report) => {
                let mut r = Report::new("internal", Status::Fail).detail("error", &message);
                r.matrices = failure_matrices(&report.relations);
                Failure::Check(r)
            }
            TwistError::Argument(_)
            | TwistError::Algebra(_)
            | TwistError::Linalg(_)
            | TwistError::Presentation(_) => Failure::Input(message),
        }
    }
}

fn failed_indices(rels: &[RelationCheck]) -> Vec<usize> {
    rels.iter()
        .filter_map(|r| match r {
            RelationCheck::Failed { relation, .. } => Some(*relation),
            RelationCheck::Passed { .. } => None,
        })
        .collect()
}

fn failure_matrices(rels: &[RelationCheck]) -> BTreeMap<String, Vec<Vec<String>>> {
    rels.iter()
        .filter_map(|r| match r {
            RelationCheck::Failed { relation, matrix, .. } => {
                Some((format!("relation_{relation}"), matrix.clone()))
            }
            RelationCheck::Passed { .. } => None,
        })
        .collect()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Homify(_) => "homify",
        Command::Normality(_) => "normality",
        Command::Twist(_) => "twist",
        Command::Derived(_) => "derived",
        Command::HomTwist(_) => "hom-twist",
        Command::Morphism(_) => "morphism",
        Command::IsoCheck(_) => "iso-check",
        Command::Builtins(_) => "builtins",
        Command::GraphDump(_) => "graph-dump",
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::InputError.exit_code()
            } else {
                0
            };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    run_command(&cli.command)
}

pub fn run_command(command: &Command) -> Outcome {
    let name = command_name(command);
    let report = match dispatch(command) {
        Ok(r) => r,
        Err(Failure::Check(mut r)) => {
            r.command = name.to_string();
            r
        }
        Err(Failure::Input(message)) => Report::new(name, Status::InputError).detail("error", message),
        Err(Failure::Precondition {
            message,
            witness,
            matrices,
        }) => {
            let mut r = Report::new(name, Status::PreconditionFailed).detail("error", message);
            r.witnesses.extend(witness);
            r.matrices = matrices;
            r
        }
    };
    let stderr = match report.details.get("error") {
        Some(Value::String(e)) => format!("homprop {name}: {e}\n"),
        _ => String::new(),
    };
    Outcome {
        code: report.status.exit_code(),
        stdout: report.to_json(),
        stderr,
    }
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Check(a) => cmd_check(a),
        Command::Homify(a) => cmd_homify(a),
        Command::Normality(a) => cmd_normality(a),
        Command::Twist(a) => cmd_twist(a),
        Command::Derived(a) => cmd_derived(a),
        Command::HomTwist(a) => cmd_hom_twist(a),
        Command::Morphism(a) => cmd_morphism(a),
        Command::IsoCheck(a) => cmd_iso_check(a),
        Command::Builtins(a) => cmd_builtins(a),
        Command::GraphDump(a) => cmd_graph_dump(a),
    }
}

// ---------------------------------------------------------------------------
// Input resolution

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn require<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T, Failure> {
    value
        .as_ref()
        .ok_or_else(|| Failure::Input(format!("missing --{flag}")))
}

fn sign_offset(a: &Inputs) -> Result<u8, Failure> {
    let from_file = match &a.config {
        Some(p) => read_json::<RunConventions>(p)?.ainf_sign_offset,
        None => 0,
    };
    let offset = a.ainf_sign_offset.unwrap_or(from_file);
    if offset > 1 {
        return Err(Failure::Input(format!(
            "ainf_sign_offset must be 0 or 1, got {offset}"
        )));
    }
    Ok(offset)
}

/// The presentation named by `--presentation` or `--builtin`, with the builtin's own plan.
fn load_presentation(a: &Inputs) -> Result<(Presentation, Option<HomPlan>), Failure> {
    match (&a.presentation, &a.builtin) {
        (Some(_), Some(_)) => Err(Failure::Input(
            "give either --presentation or --builtin, not both".into(),
        )),
        (Some(path), None) => {
            let text = read_text(path)?;
            Ok((presentation_from_str(&text, &path.display().to_string())?, None))
        }
        (None, Some(name)) => {
            let b = builtin(name, sign_offset(a)?)?;
            Ok((b.presentation, b.plan))
        }
        (None, None) => Err(Failure::Input("missing --presentation or --builtin".into())),
    }
}

fn resolve_target(a: &Inputs, p: &Presentation, default: Option<HomPlan>) -> Result<HomTarget, Failure> {
    let labels = HomPlan::all_labels(p.unit_count());
    let target = match a.plan.as_deref() {
        Some("multiplicative") => HomTarget::Multiplicative,
        Some("theta-min") => HomTarget::Typed(HomPlan::theta_min(&labels)?),
        Some("theta-max") => HomTarget::Typed(HomPlan::theta_max(&labels)?),
        Some(path) => {
            let text = read_text(Path::new(path))?;
            HomTarget::Typed(plan_from_str(&text, path)?)
        }
        None => match default {
            Some(plan) => HomTarget::Typed(plan),
            None if labels.is_empty() => HomTarget::Multiplicative,
            None => HomTarget::Typed(HomPlan::theta_min(&labels)?),
        },
    };
    if let HomTarget::Typed(plan) = &target {
        plan.validate(p.unit_count())?;
    }
    Ok(target)
}

/// The presentation itself when already hom-ified, otherwise its hom-ification.
fn hom_presentation(a: &Inputs, force_multiplicative: bool) -> Result<Presentation, Failure> {
    let (p, default) = load_presentation(a)?;
    if p.hom().is_some() {
        return Ok(p);
    }
    let target = if force_multiplicative {
        HomTarget::Multiplicative
    } else {
        resolve_target(a, &p, default)?
    };
    Ok(twist::homify(&p, &target)?)
}

fn load_algebra(path: &Path, p: &Presentation) -> Result<StructureMap, Failure> {
    let text = read_text(path)?;
    let lambda = algebra_from_str(&text, &path.display().to_string(), Some(p.signature()))?;
    lambda.validate(p.signature())?;
    Ok(lambda)
}

fn load_map(path: &Path, source: &GradedSpace, target: &GradedSpace) -> Result<LinearMap, Failure> {
    let file: LinearMapFile = read_json(path)?;
    Ok(file.to_map(source, target)?)
}

fn write_out(a: &Inputs, contents: &str) -> Result<(), Failure> {
    if let Some(path) = &a.out {
        std::fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn algebra_value(lambda: &StructureMap) -> Value {
    serde_json::to_value(AlgebraFile::from_structure(lambda)).expect("serializable")
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_check(a: &Inputs) -> Result<Report, Failure> {
    let (p, _) = load_presentation(a)?;
    let lambda = load_algebra(require(&a.algebra, "algebra")?, &p)?;
    let report = check_algebra(&lambda, &p)?;
    let mut r = Report::new("check", Status::from_bool(report.all_passed()));
    r.witnesses = failed_indices(&report.relations)
        .into_iter()
        .map(Value::from)
        .collect();
    r.matrices = failure_matrices(&report.relations);
    Ok(r.detail("relations", &report.relations))
}

fn cmd_homify(a: &Inputs) -> Result<Report, Failure> {
    let (p, default) = load_presentation(a)?;
    let target = resolve_target(a, &p, default)?;
    let q = twist::homify(&p, &target)?;
    let text = presentation_to_string(&q);
    write_out(a, &text)?;
    let plan = match &target {
        HomTarget::Multiplicative => json!("multiplicative"),
        HomTarget::Typed(plan) => serde_json::to_value(plan).expect("serializable"),
    };
    Ok(Report::new("homify", Status::Pass)
        .detail("plan", plan)
        .detail(
            "relations_display",
            q.relations().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        )
        .detail(
            "presentation",
            serde_json::from_str::<Value>(&text).expect("valid json"),
        ))
}

fn cmd_normality(a: &Inputs) -> Result<Report, Failure> {
    let (p, _) = load_presentation(a)?;
    let report = p.normality();
    Ok(Report::new("normality", Status::from_bool(report.is_normal()))
        .detail("normal", report.is_normal())
        .detail("relations", &report.relations))
}

fn twist_report(command: &str, a: &Inputs, result: &twist::TwistResult) -> Result<Report, Failure> {
    write_out(a, &algebra_to_string(&result.twisted))?;
    Ok(
        Report::new(command, Status::from_bool(result.verified.all_passed()))
            .detail("relations", &result.verified.relations)
            .detail("normality", &result.preconditions.normality.relations)
            .detail("algebra", algebra_value(&result.twisted)),
    )
}

fn cmd_twist(a: &Inputs) -> Result<Report, Failure> {
    let q = hom_presentation(a, false)?;
    let lambda = load_algebra(require(&a.algebra, "algebra")?, &q)?;
    let beta = load_map(require(&a.beta, "beta")?, lambda.space(), lambda.space())?;
    let result = twist::twist(&lambda, &beta, &q)?;
    twist_report("twist", a, &result)
}

fn cmd_derived(a: &Inputs) -> Result<Report, Failure> {
    let q = hom_presentation(a, true)?;
    let lambda = load_algebra(require(&a.algebra, "algebra")?, &q)?;
    let n = *require(&a.n, "n")?;
    let result = twist::derived_sequence(&lambda, &q, n)?;
    twist_report("derived", a, &result).map(|r| r.detail("n", n))
}

fn cmd_hom_twist(a: &Inputs) -> Result<Report, Failure> {
    let (p, default) = load_presentation(a)?;
    let target = resolve_target(a, &p, default)?;
    let lambda = load_algebra(require(&a.algebra, "algebra")?, &p)?;
    let beta = load_map(require(&a.beta, "beta")?, lambda.space(), lambda.space())?;
    let (result, q) = twist::hom_twist(&lambda, &beta, &p, &target)?;
    twist_report("hom-twist", a, &result).map(|r| {
        r.detail(
            "presentation",
            serde_json::from_str::<Value>(&presentation_to_string(&q)).expect("valid json"),
        )
    })
}

fn cmd_morphism(a: &Inputs) -> Result<Report, Failure> {
    let (p, default) = load_presentation(a)?;
    let algebra_source = require(&a.algebra, "algebra")?;
    let algebra_target = require(&a.algebra_target, "algebra-target")?;
    match (&a.beta, &a.beta_target) {
        (None, None) => {
            let l1 = load_algebra(algebra_source, &p)?;
            let l2 = load_algebra(algebra_target, &p)?;
            let f = load_map(require(&a.map, "map")?, l1.space(), l2.space())?;
            let check = is_morphism(&f, &l1, &l2, p.signature())?;
            let mut r = Report::new("morphism", Status::from_bool(check.holds));
            if let Some(w) = check.witness {
                r.witnesses.push(json!({ "generator": w.generator }));
                r.matrices
                    .insert(format!("generator_{}", w.generator), w.difference);
            }
            Ok(r.detail("transported", false))
        }
        (Some(b1), Some(b2)) => {
            let q = if p.hom().is_some() {
                p
            } else {
                let target = resolve_target(a, &p, default)?;
                twist::homify(&p, &target)?
            };
            let l1 = load_algebra(algebra_source, &q)?;
            let l2 = load_algebra(algebra_target, &q)?;
            let f = load_map(require(&a.map, "map")?, l1.space(), l2.space())?;
            let beta1 = load_map(b1, l1.space(), l1.space())?;
            let beta2 = load_map(b2, l2.space(), l2.space())?;
            let check = twist::transport_morphism(&f, (&l1, &beta1), (&l2, &beta2), &q)?;
            Ok(Report::new("morphism", Status::from_bool(check.holds)).detail("transported", true))
        }
        _ => Err(Failure::Input(
            "give both --beta and --beta-target, or neither".into(),
        )),
    }
}

fn cmd_iso_check(a: &Inputs) -> Result<Report, Failure> {
    let (p, default) = load_presentation(a)?;
    let target = resolve_target(a, &p, default)?;
    let l1 = load_algebra(require(&a.algebra, "algebra")?, &p)?;
    let l2 = match &a.algebra_target {
        Some(path) => load_algebra(path, &p)?,
        None => l1.clone(),
    };
    let gamma = load_map(require(&a.gamma, "gamma")?, l1.space(), l2.space())?;
    let beta1 = load_map(require(&a.beta, "beta")?, l1.space(), l1.space())?;
    let beta2 = load_map(require(&a.beta_target, "beta-target")?, l2.space(), l2.space())?;
    let report = twist::iso_witness_check(&gamma, (&l1, &beta1), (&l2, &beta2), &p, &target)?;
    let mut r = Report::new("iso-check", Status::from_bool(report.witness));
    if !report.invariants_match {
        r.witnesses.push(json!({
            "invariant_mismatch": {
                "beta": report.beta_char_poly,
                "beta_target": report.beta_prime_char_poly,
            }
        }));
    }
    Ok(r.detail("iso", &report))
}

fn cmd_builtins(a: &Inputs) -> Result<Report, Failure> {
    let Some(name) = &a.builtin else {
        return Ok(Report::new("builtins", Status::Pass).detail("names", BUILTIN_NAMES));
    };
    let b = builtin(name, sign_offset(a)?)?;
    let p = &b.presentation;
    let text = presentation_to_string(p);
    write_out(a, &text)?;
    Ok(Report::new("builtins", Status::Pass)
        .detail("name", &b.name)
        .detail("unit_count", p.unit_count())
        .detail("normal", p.is_normal())
        .detail("plan", &b.plan)
        .detail(
            "relations_display",
            p.relations().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        )
        .detail(
            "presentation",
            serde_json::from_str::<Value>(&text).expect("valid json"),
        ))
}

fn cmd_graph_dump(a: &Inputs) -> Result<Report, Failure> {
    let (p, _) = load_presentation(a)?;
    let mut relations = Vec::new();
    for r in p.relations() {
        let mut monomials = Vec::new();
        for (c, m) in &r.terms {
            let g = term_to_graph(m, p.signature())?;
            monomials.push(json!({ "coef": c.to_string(), "graph": g.dump() }));
        }
        relations.push(Value::Array(monomials));
    }
    Ok(Report::new("graph-dump", Status::Pass).detail("relations", relations))
}
