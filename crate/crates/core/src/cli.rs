//! Command-line front end: job specification, pipeline orchestration and
//! the text / JSON reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::hensel::{build_system, lift, required_depth};
use crate::jet_model::{model_ideal, model_report, INFINITE_FACTOR_NOTE};
use crate::lattice_geom::{dual_cone, hilbert_basis, select_z_basis, Cone, LatticePoint, SemigroupBasis};
use crate::semigroup_decomp::component_stats;
use crate::toric_ideal::{relation_lattice, RelationLattice};
use crate::weierstrass::comparison_check;

/// An integer that serializes as a JSON number when it fits `i64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(x) => Ok(JsonInt(x.into())),
            Raw::Text(t) => t.parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

fn ints(xs: &[BigInt]) -> Vec<JsonInt> {
    xs.iter().cloned().map(JsonInt).collect()
}

/// One analysis request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub rays: Vec<Vec<JsonInt>>,
    pub valuation: Vec<JsonInt>,
    #[serde(default = "default_hensel_order")]
    pub hensel_order: u32,
    #[serde(default = "default_compare_order")]
    pub compare_order: u32,
    /// Largest relative jet depth of the reported Hensel series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
}

fn default_hensel_order() -> u32 {
    1
}

fn default_compare_order() -> u32 {
    2
}

impl JobSpec {
    pub fn validate(&self) -> Result<(), Error> {
        let Some(first) = self.rays.first() else {
            return Err(Error::InvalidInput("at least one ray is required".into()));
        };
        for r in &self.rays {
            if r.len() != first.len() {
                return Err(Error::RankMismatch {
                    expected: first.len(),
                    found: r.len(),
                });
            }
        }
        if self.valuation.len() != first.len() {
            return Err(Error::RankMismatch {
                expected: first.len(),
                found: self.valuation.len(),
            });
        }
        Ok(())
    }

    pub fn cone(&self) -> Result<Cone, Error> {
        Cone::new(
            self.rays
                .iter()
                .map(|r| LatticePoint::new(r.iter().map(|x| x.0.clone()).collect()))
                .collect(),
        )
    }

    pub fn n(&self) -> LatticePoint {
        LatticePoint::new(self.valuation.iter().map(|x| x.0.clone()).collect())
    }

    fn echo(&self) -> String {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        let n: Vec<String> = self.valuation.iter().map(|x| x.0.to_string()).collect();
        format!("rays {} valuation {}", rays.join(";"), n.join(","))
    }
}

/// Parses `"1,0;1,2"` into rays.
pub fn parse_rays(text: &str) -> Result<Vec<Vec<JsonInt>>, Error> {
    text.split(';').map(parse_vector).collect()
}

/// Parses `"1,1"`.
pub fn parse_vector(text: &str) -> Result<Vec<JsonInt>, Error> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map(JsonInt)
                .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))
        })
        .collect()
}

/// A pipeline failure, tagged with the stage and an echo of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{stage} failed for {input}: {source}")]
pub struct StageError {
    pub stage: &'static str,
    pub input: String,
    #[source]
    pub source: Error,
}

impl StageError {
    pub fn exit_code(&self) -> i32 {
        self.source.exit_code()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub basis: Vec<Vec<JsonInt>>,
    /// `"q" -> l_q`, with `q` 1-based.
    pub special: BTreeMap<String, Vec<JsonInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSection {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub simplified: Vec<String>,
    pub eliminated: Vec<(String, String)>,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsSection {
    pub components: usize,
    pub dimension: usize,
    pub primitive: bool,
    pub indecomposable: bool,
    /// `"true"`, `"false"` or `"not_applicable"`.
    pub strongly_essential: String,
    pub decompositions: Vec<Vec<Vec<JsonInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenselSection {
    pub order: u32,
    pub window: u32,
    /// `"Z[q][s]" -> ` series modulo `m^{order+1}`.
    pub series: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonSection {
    pub order: u32,
    /// `"pass"` or `"fail"`.
    pub verdict: String,
    pub truncation: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: JobSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_basis: Option<Vec<Vec<JsonInt>>>,
    /// 1-based indices of the generators forming a Z-basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zbasis_indices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hensel: Option<HenselSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonSection>,
    pub infinite_factor_note: String,
}

impl Report {
    fn new(job: &JobSpec) -> Self {
        Report {
            input: job.clone(),
            hilbert_basis: None,
            zbasis_indices: None,
            relations: None,
            model: None,
            stats: None,
            hensel: None,
            comparison: None,
            infinite_factor_note: INFINITE_FACTOR_NOTE.to_string(),
        }
    }

    /// Pretty JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Whether the comparison ran and failed.
    pub fn comparison_failed(&self) -> bool {
        self.comparison.as_ref().is_some_and(|c| c.verdict != "pass")
    }
}

/// Which stages to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Hilbert,
    Relations,
    Model,
    Decompose,
    Hensel,
    Verify,
}

struct Pipeline<'a> {
    job: &'a JobSpec,
}

impl Pipeline<'_> {
    fn wrap<T>(&self, stage: &'static str, r: Result<T, Error>) -> Result<T, StageError> {
        r.map_err(|source| StageError {
            stage,
            input: self.job.echo(),
            source,
        })
    }

    fn basis(&self) -> Result<(Cone, SemigroupBasis), StageError> {
        self.wrap("input", self.job.validate())?;
        let cone = self.wrap("input", self.job.cone())?;
        let dual = self.wrap("hilbert", dual_cone(&cone))?;
        let hb = hilbert_basis(&dual);
        let b = self.wrap("hilbert", select_z_basis(&hb, cone.rank()))?;
        Ok((cone, b))
    }

    fn relations(&self, b: &SemigroupBasis) -> Result<RelationLattice, StageError> {
        self.wrap("relations", relation_lattice(b))
    }
}

/// Runs the requested stages (and the ones they depend on) and assembles
/// the report.
pub fn run_stages(job: &JobSpec, stages: &[Stage]) -> Result<Report, StageError> {
    let p = Pipeline { job };
    let want = |s: Stage| stages.contains(&s);
    let mut report = Report::new(job);
    let (cone, b) = p.basis()?;
    let n = job.n();
    report.hilbert_basis = Some(b.generators().iter().map(|m| ints(m.coords())).collect());
    report.zbasis_indices = Some(b.zbasis_indices().iter().map(|i| i + 1).collect());
    if want(Stage::Hilbert) && stages.len() == 1 {
        return Ok(report);
    }
    let rl = p.relations(&b)?;
    if want(Stage::Relations) || want(Stage::Model) {
        report.relations = Some(RelationsReport {
            basis: rl.basis().iter().map(|l| ints(l)).collect(),
            special: rl.special().iter().map(|(q, l)| (q.to_string(), ints(l))).collect(),
        });
    }
    if want(Stage::Model) {
        let m = p.wrap("model", model_ideal(&b, &rl, &n))?;
        let s = p.wrap("model", model_report(&m))?;
        report.model = Some(ModelSection {
            variables: s.variables.iter().map(ToString::to_string).collect(),
            generators: s.generators.iter().map(ToString::to_string).collect(),
            simplified: s.simplified.generators.iter().map(ToString::to_string).collect(),
            eliminated: s
                .simplified
                .eliminated
                .iter()
                .map(|(v, e)| (v.to_string(), e.to_string()))
                .collect(),
            dimension: s.dimension,
        });
    }
    if want(Stage::Decompose) {
        let st = p.wrap("decompose", component_stats(&cone, &n))?;
        report.stats = Some(StatsSection {
            components: st.component_count,
            dimension: st.dimension,
            primitive: st.primitive,
            indecomposable: st.indecomposable,
            strongly_essential: match st.strongly_essential {
                Some(true) => "true",
                Some(false) => "false",
                None => "not_applicable",
            }
            .to_string(),
            decompositions: st
                .decompositions
                .iter()
                .map(|d| d.parts.iter().map(|x| ints(x.coords())).collect())
                .collect(),
        });
    }
    if want(Stage::Hensel) {
        let e = job.hensel_order;
        let window = job.depth.unwrap_or(1);
        let s_max = p.wrap("hensel", required_depth(&b, &rl, &n, e, window))?;
        let sys = p.wrap("hensel", build_system(&b, &rl, &n, s_max))?;
        let lr = p.wrap("hensel", lift(&sys, e))?;
        report.hensel = Some(HenselSection {
            order: e,
            window,
            series: lr
                .series
                .iter()
                .map(|((q, s), v)| (format!("Z[{q}][{s}]"), v.to_string()))
                .collect(),
        });
    }
    if want(Stage::Verify) && job.compare_order > 0 {
        let v = p.wrap("verify", comparison_check(&b, &rl, &n, job.compare_order))?;
        report.comparison = Some(ComparisonSection {
            order: v.order,
            verdict: if v.passed() { "pass" } else { "fail" }.to_string(),
            truncation: v.truncation,
            detail: v.detail,
        });
    }
    Ok(report)
}

/// Every stage.
pub fn cmd_analyze(job: &JobSpec) -> Result<Report, StageError> {
    run_stages(
        job,
        &[
            Stage::Hilbert,
            Stage::Relations,
            Stage::Model,
            Stage::Decompose,
            Stage::Hensel,
            Stage::Verify,
        ],
    )
}

fn join_ints(xs: &[JsonInt]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.0.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input: {}", self.input.echo())?;
        if let Some(hb) = &self.hilbert_basis {
            let gens: Vec<String> = hb.iter().map(|m| join_ints(m)).collect();
            writeln!(f, "hilbert basis: {}", gens.join(" "))?;
        }
        if let Some(z) = &self.zbasis_indices {
            writeln!(f, "z-basis indices: {z:?}")?;
        }
        if let Some(r) = &self.relations {
            let basis: Vec<String> = r.basis.iter().map(|l| join_ints(l)).collect();
            writeln!(f, "relation lattice basis: {}", basis.join(" "))?;
            for (q, l) in &r.special {
                writeln!(f, "  l_{q} = {}", join_ints(l))?;
            }
        }
        if let Some(m) = &self.model {
            writeln!(f, "model variables: {}", m.variables.join(" "))?;
            writeln!(f, "model generators:")?;
            for g in &m.generators {
                writeln!(f, "  {g}")?;
            }
            for (v, e) in &m.eliminated {
                writeln!(f, "eliminated: {v} = {e}")?;
            }
            writeln!(f, "simplified:")?;
            for g in &m.simplified {
                writeln!(f, "  {g}")?;
            }
            writeln!(f, "model dimension: {}", m.dimension)?;
        }
        if let Some(s) = &self.stats {
            writeln!(
                f,
                "components: {}  dimension: {}  primitive: {}  indecomposable: {}  strongly essential: {}",
                s.components, s.dimension, s.primitive, s.indecomposable, s.strongly_essential
            )?;
            for d in &s.decompositions {
                let parts: Vec<String> = d.iter().map(|x| join_ints(x)).collect();
                writeln!(f, "  {}", parts.join(" + "))?;
            }
        }
        if let Some(h) = &self.hensel {
            writeln!(f, "hensel series mod m^{} (window {}):", h.order + 1, h.window)?;
            for (k, v) in &h.series {
                writeln!(f, "  {k} = {v}")?;
            }
        }
        if let Some(c) = &self.comparison {
            writeln!(f, "comparison mod m^{}: {} (t-truncation {})", c.order, c.verdict, c.truncation)?;
            if !c.detail.is_empty() {
                writeln!(f, "  {}", c.detail)?;
            }
        }
        writeln!(f, "note: {}", self.infinite_factor_note)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "arcmodel", version, about = "Finite formal models of toric arc-space neighbourhoods")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every stage.
    Analyze(JobArgs),
    /// Hilbert basis of the dual cone and the chosen Z-basis.
    Hilbert(JobArgs),
    /// Relation lattice and distinguished relations.
    Relations(JobArgs),
    /// Model ideal, reduced presentation and dimension.
    Model(JobArgs),
    /// Hensel series of the lifted coordinates.
    Hensel(JobArgs),
    /// Decompositions of the valuation vector.
    Decompose(JobArgs),
    /// Finite-order comparison of the model with the lifted arcs.
    Verify(JobArgs),
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Cone rays, e.g. "1,0;1,2".
    #[arg(long)]
    pub rays: Option<String>,
    /// Valuation vector n, e.g. "1,1".
    #[arg(long)]
    pub valuation: Option<String>,
    /// Order e of the Hensel lift, modulo m^(e+1) [default: 1].
    #[arg(long)]
    pub hensel_order: Option<u32>,
    /// Order E of the comparison, modulo m^E [default: 2].
    #[arg(long)]
    pub compare_order: Option<u32>,
    /// Hensel window: series Z[q][d_q + s] are reported for s up to this value [default: 1].
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// JSON job file; flags given alongside override its fields.
    #[arg(long)]
    pub job: Option<PathBuf>,
}

impl JobArgs {
    pub fn to_job(&self) -> Result<JobSpec, Error> {
        let mut job = match &self.job {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?
            }
            None => JobSpec {
                rays: Vec::new(),
                valuation: Vec::new(),
                hensel_order: default_hensel_order(),
                compare_order: default_compare_order(),
                depth: None,
            },
        };
        if let Some(r) = &self.rays {
            job.rays = parse_rays(r)?;
        }
        if let Some(v) = &self.valuation {
            job.valuation = parse_vector(v)?;
        }
        if let Some(e) = self.hensel_order {
            job.hensel_order = e;
        }
        if let Some(e) = self.compare_order {
            job.compare_order = e;
        }
        if self.depth.is_some() {
            job.depth = self.depth;
        }
        Ok(job)
    }
}

/// Parses arguments, runs the command and prints the result. Returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (args, stages): (&JobArgs, &[Stage]) = match &cli.command {
        Command::Analyze(a) => (
            a,
            &[
                Stage::Hilbert,
                Stage::Relations,
                Stage::Model,
                Stage::Decompose,
                Stage::Hensel,
                Stage::Verify,
            ],
        ),
        Command::Hilbert(a) => (a, &[Stage::Hilbert]),
        Command::Relations(a) => (a, &[Stage::Relations]),
        Command::Model(a) => (a, &[Stage::Model]),
        Command::Hensel(a) => (a, &[Stage::Hensel]),
        Command::Decompose(a) => (a, &[Stage::Decompose]),
        Command::Verify(a) => (a, &[Stage::Verify]),
    };
    let job = match args.to_job() {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match run_stages(&job, stages) {
        Ok(report) => {
            match args.format {
                Format::Text => print!("{report}"),
                Format::Json => print!("{}", report.to_json()),
            }
            if report.comparison_failed() {
                3
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
