//! Command-line front end: problem descriptions, dispatch and reports.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::criteria::{self, Assumptions, Outcome, Verdict};
use crate::error::{Error, Result};
use crate::exactlin::FieldDescriptor;
use crate::graded::{
    AlgebraPresentation, BasePresentation, GradedAlgebra, ModulePairSpec, ModulePresentation, SubalgebraSpec, Which,
};
use crate::hilbert::Window;
use crate::polar::{self, PolarVector};
use crate::svlength;
use crate::Options;

/// Module part of a problem: ⊕ B(−shift) modulo relation columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleInput {
    pub gens: usize,
    #[serde(default)]
    pub shifts: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealInput {
    pub i: Vec<String>,
    pub j: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulePairInput {
    pub ambient_rank: usize,
    #[serde(default)]
    pub u_columns: Vec<Vec<String>>,
    pub e_columns: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AssumptionsInput {
    #[serde(default, alias = "equidimensional_B")]
    pub equidimensional_b: bool,
}

/// Structured input document shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDescription {
    #[serde(default)]
    pub field: FieldDescriptor,
    #[serde(default)]
    pub base_vars: Vec<String>,
    #[serde(default)]
    pub poly_vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra_gens: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_gens: Option<IdealInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_pair: Option<ModulePairInput>,
    #[serde(default)]
    pub assumptions: AssumptionsInput,
    #[serde(default)]
    pub options: Options,
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(|s| s.as_str()).collect()
}

fn missing(what: &str) -> Error {
    Error::Invalid(format!("input lacks '{what}'"))
}

impl ProblemDescription {
    pub fn algebra_only(field: FieldDescriptor, base_vars: &[&str], poly_vars: &[&str], relations: &[&str]) -> Self {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        ProblemDescription {
            field,
            base_vars: own(base_vars),
            poly_vars: own(poly_vars),
            relations: own(relations),
            module: None,
            subalgebra_gens: None,
            ideal_gens: None,
            module_pair: None,
            assumptions: AssumptionsInput::default(),
            options: Options::default(),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let p: ProblemDescription = serde_json::from_str(src).map_err(|e| Error::Parse {
            context: format!("input line {}", e.line()),
            column: e.column(),
            token: String::new(),
            message: e.to_string(),
        })?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Parses every polynomial the description contains.
    pub fn validate(&self) -> Result<()> {
        self.algebra()?;
        if self.module.is_some() {
            self.module_presentation()?;
        }
        if self.subalgebra_gens.is_some() {
            self.subalgebra()?;
        }
        if self.ideal_gens.is_some() {
            self.ideals()?;
        }
        if self.module_pair.is_some() {
            self.module_pair()?;
        }
        Ok(())
    }

    pub fn base(&self) -> Result<BasePresentation> {
        BasePresentation::new(self.field, &refs(&self.base_vars))
    }

    pub fn algebra(&self) -> Result<AlgebraPresentation> {
        AlgebraPresentation::new(self.base()?, &refs(&self.poly_vars), &refs(&self.relations))
    }

    pub fn graded_algebra(&self) -> Result<GradedAlgebra> {
        Ok(self.algebra()?.into())
    }

    /// The module if given, otherwise B itself.
    pub fn module_presentation(&self) -> Result<ModulePresentation> {
        let a = self.algebra()?;
        match &self.module {
            None => Ok(ModulePresentation::free_algebra(a)),
            Some(m) => {
                let shifts = if m.shifts.is_empty() { vec![0; m.gens] } else { m.shifts.clone() };
                if shifts.len() != m.gens {
                    return Err(Error::RankMismatch { expected: m.gens, found: shifts.len() });
                }
                let cols: Vec<Vec<&str>> = m.relations.iter().map(|c| refs(c)).collect();
                ModulePresentation::new(a, &shifts, &cols)
            }
        }
    }

    pub fn subalgebra(&self) -> Result<SubalgebraSpec> {
        let gens = self.subalgebra_gens.as_ref().ok_or_else(|| missing("subalgebra_gens"))?;
        SubalgebraSpec::new(&self.algebra()?, &refs(gens))
    }

    pub fn ideals(&self) -> Result<(SubalgebraSpec, SubalgebraSpec)> {
        let g = self.ideal_gens.as_ref().ok_or_else(|| missing("ideal_gens"))?;
        let a = self.algebra()?;
        Ok((SubalgebraSpec::new(&a, &refs(&g.i))?, SubalgebraSpec::new(&a, &refs(&g.j))?))
    }

    pub fn module_pair(&self) -> Result<ModulePairSpec> {
        let p = self.module_pair.as_ref().ok_or_else(|| missing("module_pair"))?;
        let u: Vec<Vec<&str>> = p.u_columns.iter().map(|x| refs(x)).collect();
        let e: Vec<Vec<&str>> = p.e_columns.iter().map(|x| refs(x)).collect();
        ModulePairSpec::new(self.base()?, p.ambient_rank, &u, &e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Polar,
    PolarIdeal,
    Relative,
    CheckIntegral,
    CheckBirational,
    CheckReductionIdeal,
    Br,
    CheckReductionModule,
    Sv,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Polar => "polar",
            Command::PolarIdeal => "polar-ideal",
            Command::Relative => "relative",
            Command::CheckIntegral => "check-integral",
            Command::CheckBirational => "check-birational",
            Command::CheckReductionIdeal => "check-reduction-ideal",
            Command::Br => "br",
            Command::CheckReductionModule => "check-reduction-module",
            Command::Sv => "sv",
            Command::Selftest => "selftest",
        }
    }
}

/// Overrides applied on top of the document's own options.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub json: bool,
    pub seed: Option<u64>,
    pub vmax: Option<i64>,
    pub nmax: Option<i64>,
    pub margin: Option<usize>,
    pub assume_equidimensional: bool,
    pub budget: Option<u64>,
    pub no_timings: bool,
}

impl Flags {
    fn apply(&self, p: &mut ProblemDescription) {
        let o = &mut p.options;
        o.seed = self.seed.unwrap_or(o.seed);
        o.vmax = self.vmax.unwrap_or(o.vmax);
        o.nmax = self.nmax.unwrap_or(o.nmax);
        o.margin = self.margin.unwrap_or(o.margin);
        o.budget = self.budget.unwrap_or(o.budget);
        if self.assume_equidimensional {
            p.assumptions.equidimensional_b = true;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub outcome: Outcome,
    pub certificate: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

/// Machine-readable report; `input` echoes the effective problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub r: Option<usize>,
    pub vectors: BTreeMap<String, Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
    pub assumptions_used: Vec<String>,
    pub window: Option<Window>,
    pub margin_verified: Option<bool>,
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<ProblemDescription>,
}

impl Report {
    fn new(command: Command) -> Self {
        Report {
            command: command.name().into(),
            r: None,
            vectors: BTreeMap::new(),
            verdict: None,
            assumptions_used: Vec::new(),
            window: None,
            margin_verified: None,
            seeds: Vec::new(),
            timings: None,
            error: None,
            exit_code: 0,
            input: None,
        }
    }

    fn vector(&mut self, name: &str, pv: &PolarVector) {
        if self.r.is_none() {
            self.r = Some(pv.r);
            self.window = pv.window;
            self.margin_verified = Some(pv.margin_verified);
        }
        self.vectors.insert(name.into(), pv.values.clone());
    }

    fn verdict(&mut self, v: &Verdict) {
        for e in &v.evidence {
            self.vector(&e.label, &e.vector);
        }
        self.assumptions_used = v.assumptions_used.clone();
        self.verdict = Some(VerdictReport { outcome: v.outcome, certificate: v.certificate.clone(), notes: v.notes.clone() });
        if v.outcome == Outcome::Inconclusive {
            self.exit_code = 1;
        }
    }

    /// Plain-text rendering.
    pub fn human(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(e) = &self.error {
            out.push_str(&format!("error ({}): {}\n", e.kind, e.message));
        }
        if let Some(r) = self.r {
            out.push_str(&format!("r = {r}\n"));
        }
        for (k, v) in &self.vectors {
            let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{k}: ({})\n", items.join(", ")));
        }
        if let Some(v) = &self.verdict {
            out.push_str(&format!("verdict: {:?}\n", v.outcome));
            if let Some(c) = &v.certificate {
                out.push_str(&format!("certificate: {c}\n"));
            }
            for n in &v.notes {
                out.push_str(&format!("note: {n}\n"));
            }
        }
        for a in &self.assumptions_used {
            out.push_str(&format!("assumption: {a}\n"));
        }
        if let Some(w) = &self.window {
            out.push_str(&format!(
                "window: v in [{}, {}), n in [{}, {}), margin {}{}\n",
                w.v0,
                w.v_end(),
                w.n0,
                w.n_end(),
                w.margin,
                if self.margin_verified == Some(true) { " (verified)" } else { "" }
            ));
        }
        if let Some(t) = &self.timings {
            for (k, ms) in t {
                out.push_str(&format!("time {k}: {ms} ms\n"));
            }
        }
        out
    }
}

/// Exit code for an error: 1 no certified answer, 2 bad input, 3 budget.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Unstable { .. }
        | Error::NonIntegerCoefficient
        | Error::GenericityFailure { .. }
        | Error::Inconsistent(_) => 1,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::RankMismatch { .. } => "rank-mismatch",
        Error::NotContained => "not-contained",
        Error::Unstable { .. } => "unstable",
        Error::NonIntegerCoefficient => "non-integer-coefficient",
        Error::EmptySupport => "empty-support",
        Error::GenericityFailure { .. } => "genericity-failure",
        Error::InvalidDepth => "invalid-depth",
        Error::NoBaseVariables => "no-base-variables",
        Error::RankDeficient { .. } => "rank-deficient",
        Error::NotMonomial => "not-monomial",
        Error::Parse { .. } => "parse",
        Error::Invalid(_) => "invalid",
        Error::Inconsistent(_) => "inconsistent",
    }
}

fn dispatch(cmd: Command, p: &ProblemDescription, rep: &mut Report) -> Result<()> {
    let o = &p.options;
    let asm = Assumptions { equidimensional: p.assumptions.equidimensional_b };
    match cmd {
        Command::Polar => rep.vector("polar", &polar::polar_vector(&p.module_presentation()?, None, o)?),
        Command::PolarIdeal => {
            let i = match &p.ideal_gens {
                Some(_) => p.ideals()?.0,
                None => p.subalgebra()?,
            };
            let m = p.module_presentation()?;
            rep.vector("polar", &polar::polar_vector(&m, None, o)?);
            rep.vector("polar_ideal", &polar::polar_wrt_linear_ideal(&i, &m, o)?);
        }
        Command::Relative => {
            let (a, b) = (p.subalgebra()?, p.graded_algebra()?);
            rep.vector("algebra", &polar::algebra_polar(&b, None, o)?);
            rep.vector("relative", &polar::relative_polar(&a, &b, o)?);
            rep.vector("image", &polar::image_polar(&a, &b, None, o)?);
        }
        Command::CheckIntegral => rep.verdict(&criteria::check_integral(&p.subalgebra()?, &p.graded_algebra()?, asm, o)?),
        Command::CheckBirational => {
            rep.verdict(&criteria::check_birational(&p.subalgebra()?, &p.graded_algebra()?, asm, o)?)
        }
        Command::CheckReductionIdeal => {
            let (i, j) = p.ideals()?;
            rep.verdict(&criteria::check_reduction_ideal(&i, &j, &p.module_presentation()?, o)?)
        }
        Command::Br => {
            let pair = p.module_pair()?;
            rep.vector("br_E", &criteria::buchsbaum_rim(&pair, Which::E, o)?);
            if !pair.u_cols.is_empty() {
                rep.vector("br_U", &criteria::buchsbaum_rim(&pair, Which::U, o)?);
            }
        }
        Command::CheckReductionModule => rep.verdict(&criteria::check_reduction_module(&p.module_pair()?, o)?),
        Command::Sv => {
            let seeds: Vec<u64> = (0..3).map(|k| o.seed.wrapping_add(1000 * k)).collect();
            let cv = svlength::cross_validate(&p.module_presentation()?, &seeds, o)?;
            rep.vector("polar", &cv.reference);
            for run in &cv.runs {
                if let Some(v) = &run.values {
                    rep.vectors.insert(format!("sv_seed_{}", run.seed), v.clone());
                }
            }
            rep.seeds = seeds;
            if !cv.all_agree {
                rep.exit_code = 1;
            }
        }
        Command::Selftest => selftest(rep)?,
    }
    Ok(())
}

/// Built-in closed-form fixtures.
fn selftest(rep: &mut Report) -> Result<()> {
    let o = Options::default();
    let q = FieldDescriptor::Rational;
    let algebra = |b: &[&str], x: &[&str], rel: &[&str]| -> Result<ModulePresentation> {
        Ok(ModulePresentation::free_algebra(AlgebraPresentation::new(BasePresentation::new(q, b)?, x, rel)?))
    };
    let cases: Vec<(&str, ModulePresentation, Vec<u64>)> = vec![
        ("line", algebra(&["u"], &["x"], &[])?, vec![0, 1]),
        ("plane", algebra(&["u"], &["x", "y"], &[])?, vec![0, 1, 0]),
        ("artinian_line", algebra(&[], &["x"], &[])?, vec![1]),
        ("double_line", algebra(&[], &["x", "y"], &["x^2"])?, vec![2]),
    ];
    let mut failed = 0;
    for (name, m, want) in cases {
        let got = polar::polar_vector(&m, None, &o)?;
        if got.values != want {
            failed += 1;
        }
        rep.vectors.insert(name.into(), got.values);
    }
    let pair = ModulePairSpec::new(BasePresentation::new(q, &["u1", "u2"])?, 1, &[], &[vec!["u1"], vec!["u2"]])?;
    let br = criteria::buchsbaum_rim(&pair, Which::E, &o)?;
    if br.values != [0, 1, 1] {
        failed += 1;
    }
    rep.vectors.insert("br_maximal_ideal".into(), br.values);
    if failed > 0 {
        rep.exit_code = 1;
        rep.error = Some(ErrorReport { kind: "selftest".into(), message: format!("{failed} fixture(s) disagree") });
    }
    Ok(())
}

/// Runs one command on an input document; returns the exit code and the rendered report.
pub fn run(cmd: Command, input: Option<&str>, flags: &Flags) -> (i32, String) {
    let start = Instant::now();
    let mut rep = Report::new(cmd);
    let parsed = match (cmd, input) {
        (Command::Selftest, _) => Ok(None),
        (_, Some(src)) => ProblemDescription::parse(src).map(Some),
        (_, None) => Err(Error::Invalid("no input document".into())),
    };
    let outcome = parsed.and_then(|p| {
        let p = p.map(|mut p| {
            flags.apply(&mut p);
            p
        });
        if let Some(p) = &p {
            rep.seeds = vec![p.options.seed];
            rep.input = Some(p.clone());
        }
        match &p {
            Some(p) => dispatch(cmd, p, &mut rep),
            None => dispatch(cmd, &ProblemDescription::algebra_only(FieldDescriptor::Rational, &[], &[], &[]), &mut rep),
        }
    });
    if let Err(e) = outcome {
        rep.exit_code = exit_code(&e);
        rep.error = Some(ErrorReport { kind: error_kind(&e).into(), message: e.to_string() });
    }
    if !flags.no_timings {
        rep.timings = Some(BTreeMap::from([("total_ms".to_string(), start.elapsed().as_millis() as u64)]));
    }
    let text = if flags.json { serde_json::to_string_pretty(&rep).expect("serializable") + "\n" } else { rep.human() };
    (rep.exit_code, text)
}

/// Argument parser for the `polarmult` binary.
#[derive(Debug, Parser)]
#[command(name = "polarmult", version, about = "Polar multiplicities of graded modules over a regular local base")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Problem document (JSON); read from stdin when absent.
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub vmax: Option<i64>,
    #[arg(long)]
    pub nmax: Option<i64>,
    #[arg(long)]
    pub margin: Option<usize>,
    #[arg(long)]
    pub assume_equidimensional: bool,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub no_timings: bool,
}

impl Cli {
    pub fn flags(&self) -> Flags {
        Flags {
            json: self.json,
            seed: self.seed,
            vmax: self.vmax,
            nmax: self.nmax,
            margin: self.margin,
            assume_equidimensional: self.assume_equidimensional,
            budget: self.budget,
            no_timings: self.no_timings,
        }
    }
}
