//! Command-line front end. Exit codes: 0 success, 1 domain failure
//! (invalid input structure, inadmissible parameters, unknown entry),
//! 2 malformed input, 3 work budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analysis::{
    deception_report, oracle_values, AttackReport, AttackResults, OracleModel, OrderValue,
    SecrecySystem,
};
use crate::apa::{van_rees_array, verify_apa};
use crate::balancing::{balance, EncodingMatrix};
use crate::catalog::{self, CatalogEntry};
use crate::combin::Budget;
use crate::designs::{
    classify_lambda, divisibility_check, lambda_s, massey_schobi_bound, optimality_class,
    teirlinck_params, verify_design, DesignParameters,
};
use crate::difference_families::{develop_matrix, verify_df};
use crate::io::{self, ApaFile, CdfFile, DesignFile, MatrixFile, Provenance, SourceKind};
use crate::verification::VerificationReport;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "tdauth", version, about = "Perfect-secrecy authentication systems from designs")]
struct Cli {
    /// Output file for the command's artifact.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Work budget for exhaustive enumerations.
    #[arg(long, global = true, env = Budget::ENV_VAR, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Design,
    Cdf,
    Apa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Classic,
    OracleOffline,
    OracleOnline,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a design, difference family or perpendicular array file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: InputKind,
        /// Strength to check a design at (defaults to the file's t).
        #[arg(long)]
        t: Option<usize>,
        /// Required index (defaults to the file's lambda, else inferred).
        #[arg(long)]
        lambda: Option<u64>,
    },
    /// Build a balanced encoding matrix from a design or CDF file.
    Build {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: InputKind,
        #[arg(long)]
        t: Option<usize>,
        /// Also print the matrix as a table.
        #[arg(long)]
        table: bool,
    },
    /// Evaluate spoofing or oracle attacks on an encoding matrix file.
    Attack {
        path: PathBuf,
        /// Orders as a list and/or inclusive ranges, e.g. `0,1` or `0..2`.
        #[arg(long, default_value = "0")]
        orders: String,
        #[arg(long, value_enum, default_value_t = Model::Classic)]
        model: Model,
    },
    /// Parameter arithmetic for a t-(v,k,lambda) design.
    Params(ParamsArgs),
    /// Browse the bundled catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Perpendicular arrays.
    Apa {
        #[command(subcommand)]
        action: ApaAction,
    },
}

#[derive(Debug, Args)]
struct ParamsArgs {
    #[arg(long)]
    t: u32,
    #[arg(long)]
    v: BigUint,
    #[arg(long, required_unless_present = "teirlinck")]
    k: Option<u32>,
    #[arg(long, required_unless_present = "teirlinck")]
    lambda: Option<BigUint>,
    /// Parameters t-(v,t+1,(t+1)!^(2t+1)) of Teirlinck's designs.
    #[arg(long, conflicts_with_all = ["k", "lambda"])]
    teirlinck: bool,
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
    /// Write an entry's payload file (to --out or NAME.json).
    Export { name: String },
}

#[derive(Debug, Subcommand)]
enum ApaAction {
    Verify { path: PathBuf },
    /// Generate and check the APA_1(2,3,11) array (written to --out if given).
    VanRees,
}

/// Exit status of a command that ran to completion.
struct Outcome {
    code: i32,
}

impl Outcome {
    const OK: Outcome = Outcome { code: 0 };
    const FAILED: Outcome = Outcome { code: 1 };
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Structural { .. } | Error::Io { .. } => 2,
        Error::Budget { .. } => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut ctx = Context {
        out,
        format: cli.format,
        budget: Budget(cli.budget),
        out_path: cli.out,
    };
    match ctx.dispatch(cli.command) {
        Ok(outcome) => outcome.code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Context<'a> {
    out: &'a mut dyn Write,
    format: Format,
    budget: Budget,
    out_path: Option<PathBuf>,
}

fn beside(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.json"))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    kind: &'a str,
    input_digest: String,
    report: &'a VerificationReport,
}

#[derive(Serialize)]
struct BuildSummary {
    v: usize,
    k: usize,
    b: usize,
    copies: usize,
    lambda: u64,
    class: String,
    output: String,
}

#[derive(Serialize)]
struct LambdaRow {
    s: u32,
    #[serde(with = "io::rational")]
    value: BigRational,
}

#[derive(Serialize)]
struct ParamsOutput {
    design: String,
    lambda_s: Vec<LambdaRow>,
    b: String,
    #[serde(with = "io::rational")]
    b_opt: BigRational,
    #[serde(with = "io::rational")]
    b_over_b_opt: BigRational,
    v_divides_b: bool,
    b_mod_v: String,
    class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    teirlinck_modulus: Option<String>,
}

#[derive(Serialize)]
struct EntryOutput {
    name: String,
    kind: &'static str,
    design: Option<String>,
    b: Option<String>,
    #[serde(with = "opt_rational")]
    b_opt: Option<BigRational>,
    class: Option<String>,
    v_divides_b: Option<bool>,
    claimed_order: Option<u32>,
    buildable: bool,
    note: String,
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct W<'a>(#[serde(with = "crate::io::rational")] &'a BigRational);
        match value {
            Some(r) => s.serialize_some(&W(r)),
            None => s.serialize_none(),
        }
    }
}

/// Parses `0,1`, `0..2` or a mix; ranges are inclusive.
fn parse_orders(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::domain(format!("cannot read orders {spec:?}"));
    let mut orders = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            orders.extend(a..=b);
        } else {
            orders.push(part.parse().map_err(|_| bad())?);
        }
    }
    if orders.is_empty() {
        return Err(bad());
    }
    Ok(orders)
}

fn entry_output(entry: &CatalogEntry) -> EntryOutput {
    let p = entry.params.as_ref();
    EntryOutput {
        name: entry.name.clone(),
        kind: entry.kind.as_str(),
        design: p.map(ToString::to_string),
        b: p.map(|p| p.block_count().to_string()),
        b_opt: p.and_then(|p| massey_schobi_bound(p.v().clone(), p.k().into(), p.t().into()).ok()),
        class: p.map(|p| optimality_class(p).to_string()),
        v_divides_b: p.map(|p| divisibility_check(p).holds),
        claimed_order: entry.claimed_order,
        buildable: entry.buildable(),
        note: entry.note.clone(),
    }
}

impl Context<'_> {
    fn dispatch(&mut self, command: Command) -> Result<Outcome> {
        match command {
            Command::Verify { path, kind, t, lambda } => self.verify(&path, kind, t, lambda),
            Command::Build { path, kind, t, table } => self.build(&path, kind, t, table),
            Command::Attack { path, orders, model } => self.attack(&path, &orders, model),
            Command::Params(args) => self.params(&args),
            Command::Catalog { action } => self.catalog(action),
            Command::Apa { action } => self.apa(action),
        }
    }

    fn say(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", text.as_ref());
    }

    fn emit_json<T: Serialize>(&mut self, value: &T) {
        let _ = write!(self.out, "{}", io::pretty_json(value));
    }

    fn write_artifact<T: Serialize>(&self, path: &Path, value: &T) -> Result<()> {
        io::write_atomic(path, io::pretty_json(value).as_bytes())
    }

    fn report_verification(&mut self, kind: &str, digest: String, report: &VerificationReport) {
        if self.format == Format::Json {
            self.emit_json(&VerifyOutput {
                kind,
                input_digest: digest,
                report,
            });
            return;
        }
        if report.valid {
            match report.inferred_lambda {
                Some(l) => self.say(format!("valid {kind}, lambda = {l}")),
                None => self.say(format!("valid {kind}")),
            }
        } else {
            self.say(format!("invalid {kind}: {} failure(s)", report.failure_count));
            for f in &report.failures {
                self.say(format!("  {f}"));
            }
        }
    }

    fn verify(&mut self, path: &Path, kind: InputKind, t: Option<usize>, lambda: Option<u64>) -> Result<Outcome> {
        let (label, digest, report) = match kind {
            InputKind::Design => {
                let file: DesignFile = io::load_json(path)?;
                let t = t.or(file.t).ok_or_else(|| Error::Parse {
                    path: path.to_path_buf(),
                    line: 0,
                    column: 0,
                    message: "design strength t is neither in the file nor given with --t".into(),
                })?;
                let design = file.to_design()?;
                let report = verify_design(&design, t, lambda.or(file.lambda), self.budget)?;
                ("design", io::digest(&file), report)
            }
            InputKind::Cdf => {
                let mut file: CdfFile = io::load_json(path)?;
                if let Some(l) = lambda {
                    file.lambda = l;
                }
                ("cdf", io::digest(&file), verify_df(&file.to_family()?))
            }
            InputKind::Apa => {
                let file: ApaFile = io::load_json(path)?;
                ("apa", io::digest(&file), verify_apa(&file.to_array()?))
            }
        };
        let target = self.out_path.clone().unwrap_or_else(|| beside(path, "report"));
        self.write_artifact(
            &target,
            &VerifyOutput {
                kind: label,
                input_digest: digest.clone(),
                report: &report,
            },
        )?;
        self.report_verification(label, digest, &report);
        Ok(if report.valid { Outcome::OK } else { Outcome::FAILED })
    }

    fn build(&mut self, path: &Path, kind: InputKind, t: Option<usize>, table: bool) -> Result<Outcome> {
        let (matrix, provenance, lambda, orbit): (EncodingMatrix, Provenance, u64, Option<usize>) = match kind {
            InputKind::Cdf => {
                let file: CdfFile = io::load_json(path)?;
                let df = file.to_family()?;
                let report = verify_df(&df);
                if !report.valid {
                    self.report_verification("cdf", io::digest(&file), &report);
                    return Ok(Outcome::FAILED);
                }
                let provenance = Provenance {
                    source: SourceKind::Cdf,
                    input_digest: io::digest(&file),
                };
                (develop_matrix(&df)?, provenance, df.lambda(), Some(df.v()))
            }
            InputKind::Design => {
                let file: DesignFile = io::load_json(path)?;
                let t = t.or(file.t).ok_or_else(|| Error::Parse {
                    path: path.to_path_buf(),
                    line: 0,
                    column: 0,
                    message: "design strength t is neither in the file nor given with --t".into(),
                })?;
                let design = file.to_design()?;
                let report = verify_design(&design, t, file.lambda, self.budget)?;
                let Some(lambda) = report.inferred_lambda.filter(|_| report.valid) else {
                    self.report_verification("design", io::digest(&file), &report);
                    return Ok(Outcome::FAILED);
                };
                let provenance = Provenance {
                    source: SourceKind::Design,
                    input_digest: io::digest(&file),
                };
                (balance(&design)?, provenance, lambda, None)
            }
            InputKind::Apa => {
                return Err(Error::domain("build takes a design or cdf file"));
            }
        };
        let file = MatrixFile::from_matrix(&matrix, provenance);
        let target = self.out_path.clone().unwrap_or_else(|| beside(path, "matrix"));
        self.write_artifact(&target, &file)?;
        let summary = BuildSummary {
            v: matrix.v(),
            k: matrix.k(),
            b: matrix.b(),
            copies: matrix.b() / matrix.v(),
            lambda,
            class: classify_lambda(&BigUint::from(lambda)).to_string(),
            output: target.display().to_string(),
        };
        if self.format == Format::Json {
            self.emit_json(&summary);
        } else {
            self.say(format!(
                "v = {}, k = {}, b = {}, b/v = {}, lambda = {} ({})",
                summary.v, summary.k, summary.b, summary.copies, summary.lambda, summary.class
            ));
            self.say(format!("wrote {}", summary.output));
            if table {
                let text = matrix.to_table(orbit);
                let _ = write!(self.out, "{text}");
            }
        }
        Ok(Outcome::OK)
    }

    fn attack(&mut self, path: &Path, orders: &str, model: Model) -> Result<Outcome> {
        let file: MatrixFile = io::load_json(path)?;
        let matrix = file.to_matrix()?;
        let orders = parse_orders(orders)?;
        let system = SecrecySystem::new(matrix);
        let results = match model {
            Model::Classic => AttackResults::Classic(deception_report(&system, &orders, self.budget)?),
            Model::OracleOffline => AttackResults::OracleOffline {
                orders: oracle_values(&system, OracleModel::Offline, &orders, self.budget)?,
            },
            Model::OracleOnline => AttackResults::OracleOnline {
                orders: oracle_values(&system, OracleModel::Online, &orders, self.budget)?,
            },
        };
        let report = AttackReport {
            system_digest: io::digest(&file),
            v: system.v(),
            k: system.k(),
            b: system.b(),
            results,
        };
        if let Some(target) = &self.out_path {
            self.write_artifact(target, &report)?;
        }
        if self.format == Format::Json {
            self.emit_json(&report);
            return Ok(Outcome::OK);
        }
        let (name, values, order): (&str, &[OrderValue], Option<Option<usize>>) = match &report.results {
            AttackResults::Classic(r) => ("spoofing", &r.orders, Some(r.security_order)),
            AttackResults::OracleOffline { orders } => ("oracle offline", orders, None),
            AttackResults::OracleOnline { orders } => ("oracle online", orders, None),
        };
        self.say(format!("{name} attack, v = {}, k = {}, b = {}", report.v, report.k, report.b));
        for o in values {
            self.say(format!(
                "i = {}: value {} bound {} {}",
                o.i,
                o.value,
                o.bound,
                if o.tight { "tight" } else { "not tight" }
            ));
        }
        if let Some(order) = order {
            let shown = order.map_or(-1, |t| t as i64);
            self.say(format!("security order {shown}"));
        }
        Ok(Outcome::OK)
    }

    fn params(&mut self, args: &ParamsArgs) -> Result<Outcome> {
        let (params, modulus) = if args.teirlinck {
            let tp = teirlinck_params(args.t, &args.v)?;
            (tp.params, Some(tp.modulus))
        } else {
            let k = args.k.expect("clap requires k");
            let lambda = args.lambda.clone().expect("clap requires lambda");
            (DesignParameters::new(args.t, args.v.clone(), k, lambda)?, None)
        };
        let b = params.block_count();
        let b_opt = massey_schobi_bound(params.v().clone(), params.k().into(), params.t().into())?;
        let b_ratio = BigRational::from_integer(b.clone().into()) / &b_opt;
        let div = divisibility_check(&params);
        let output = ParamsOutput {
            design: params.to_string(),
            lambda_s: (0..=params.t())
                .map(|s| LambdaRow {
                    s,
                    value: lambda_s(&params, s).expect("s <= t"),
                })
                .collect(),
            b: b.to_string(),
            b_opt,
            b_over_b_opt: b_ratio,
            v_divides_b: div.holds,
            b_mod_v: div.remainder.to_string(),
            class: optimality_class(&params).to_string(),
            teirlinck_modulus: modulus.map(|m| m.to_string()),
        };
        if let Some(target) = &self.out_path {
            self.write_artifact(target, &output)?;
        }
        if self.format == Format::Json {
            self.emit_json(&output);
            return Ok(Outcome::OK);
        }
        self.say(format!("design {}", output.design));
        if let Some(m) = &output.teirlinck_modulus {
            self.say(format!("congruence modulus (t+1)!^(2t+1) = {m}"));
        }
        for row in &output.lambda_s {
            self.say(format!("lambda_{} = {}", row.s, row.value));
        }
        self.say(format!("b = {}", output.b));
        self.say(format!("b_opt = {}", output.b_opt));
        let ratio = &output.b_over_b_opt;
        let ratio_text = match ratio.to_integer().to_u64() {
            Some(n) if ratio.is_integer() => n.to_string(),
            _ => ratio.to_string(),
        };
        self.say(format!("b / b_opt = {ratio_text}"));
        self.say(format!(
            "v | b: {} (b mod v = {})",
            if output.v_divides_b { "true" } else { "false" },
            output.b_mod_v
        ));
        self.say(format!("class: {}", output.class));
        Ok(Outcome::OK)
    }

    fn catalog(&mut self, action: CatalogAction) -> Result<Outcome> {
        match action {
            CatalogAction::List => {
                let entries: Vec<EntryOutput> = catalog::catalog().iter().map(entry_output).collect();
                if self.format == Format::Json {
                    self.emit_json(&entries);
                } else {
                    for e in &entries {
                        self.say(format!(
                            "{:<22} {:<12} {}",
                            e.name,
                            e.kind,
                            e.design.as_deref().unwrap_or("-")
                        ));
                    }
                }
            }
            CatalogAction::Show { name } => {
                let e = entry_output(&catalog::find(&name)?);
                if self.format == Format::Json {
                    self.emit_json(&e);
                } else {
                    self.say(format!("name: {}", e.name));
                    self.say(format!("kind: {}", e.kind));
                    if let Some(d) = &e.design {
                        self.say(format!("design: {d}"));
                    }
                    if let Some(b) = &e.b {
                        self.say(format!("b: {b}"));
                    }
                    if let Some(b) = &e.b_opt {
                        self.say(format!("b_opt: {b}"));
                    }
                    if let Some(c) = &e.class {
                        self.say(format!("class: {c}"));
                    }
                    if let Some(d) = e.v_divides_b {
                        self.say(format!("v | b: {d}"));
                    }
                    if let Some(o) = e.claimed_order {
                        self.say(format!("claimed security order: {o}"));
                    }
                    self.say(format!("buildable: {}", e.buildable));
                    self.say(format!("note: {}", e.note));
                }
            }
            CatalogAction::Export { name } => {
                let entry = catalog::find(&name)?;
                let payload = entry
                    .payload
                    .ok_or_else(|| Error::domain(format!("{name} is a parameter-only entry with no payload")))?;
                let target = self.out_path.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.json")));
                io::write_atomic(&target, payload.to_json().as_bytes())?;
                self.say(format!("wrote {}", target.display()));
            }
        }
        Ok(Outcome::OK)
    }

    fn apa(&mut self, action: ApaAction) -> Result<Outcome> {
        let (file, path) = match action {
            ApaAction::Verify { path } => (io::load_json::<ApaFile>(&path)?, Some(path)),
            ApaAction::VanRees => (ApaFile::from_array(&van_rees_array()), None),
        };
        let report = verify_apa(&file.to_array()?);
        match &path {
            Some(p) => {
                let target = self.out_path.clone().unwrap_or_else(|| beside(p, "report"));
                self.write_artifact(
                    &target,
                    &VerifyOutput {
                        kind: "apa",
                        input_digest: io::digest(&file),
                        report: &report,
                    },
                )?;
            }
            None => {
                if let Some(target) = &self.out_path {
                    self.write_artifact(target, &file)?;
                }
            }
        }
        if path.is_none() && self.format == Format::Text {
            for row in &file.rows {
                self.say(row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
        }
        let header = format!("APA_{}({},{},{})", file.lambda, file.t, file.k, file.v);
        self.report_verification(&header, io::digest(&file), &report);
        Ok(if report.valid { Outcome::OK } else { Outcome::FAILED })
    }
}
