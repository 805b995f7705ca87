//! Command-line surface: argument definitions and the command runners behind the `unitri`
//! binary. Runners return JSON so tests can drive them without spawning a process.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::action::{parse_entries, MatrixDoc, NilMatrix, Side, UnitriGroup};
use crate::census::{count_direct, d_polynomial, strata, CountingPolynomial, DEFAULT_CENSUS_CAP};
use crate::error::{Error, Result};
use crate::field::{parse_poly, FieldSpec};
use crate::minimal::{analyze, monomial_sources};
use crate::orbit::{classify, is_verge, orbit_bfs, template_of_orbit, verge_of, VergeData, DEFAULT_ORBIT_CAP};
use crate::verify::{run_suite, run_upsilon, summary_lines, tally, SuiteConfig, SuiteReport};

#[derive(Parser, Debug, Clone)]
#[command(name = "unitri", version, about = "Supercharacter computations for U_n(q)")]
pub struct Cli {
    /// Matrix size.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Field as `p` or `p^k`.
    #[arg(long, global = true, default_value = "2")]
    pub q: String,
    /// Defining polynomial `c_k,...,c_0`, overriding the built-in one.
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Member budget for orbits and listed sources, element budget for brute-force groups.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

/// A matrix given inline or as a JSON file.
#[derive(Args, Debug, Clone)]
pub struct MatrixInput {
    /// Inline entry list, e.g. `[[3,1,1],[4,2,1]]`.
    #[arg(long, conflicts_with = "matrix")]
    pub entries: Option<String>,
    /// JSON file `{"n":..,"q":..,"entries":[[i,j,code],..]}`.
    #[arg(long, visible_alias = "verge")]
    pub matrix: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Template, verge and main-condition data of a matrix.
    Classify(MatrixInput),
    /// Orbit of a label under one side of the action.
    Orbit {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        /// Also list every member.
        #[arg(long)]
        list: bool,
    },
    /// Minimal constituents and monomial sources of a verge.
    Minimal(MatrixInput),
    /// The counting polynomial d_n(t).
    Count {
        /// Split by constituent degree.
        #[arg(long)]
        stratify: bool,
        /// Compare d_n(q-1) against a direct count at these q.
        #[arg(long, value_delimiter = ',')]
        check_q: Vec<u32>,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum VerifyCmd {
    /// Every check the crate knows for the given n and q.
    Suite,
    /// Exhaustive identities for the Υ homomorphisms.
    Upsilon,
}

/// A command result: the JSON document, its text rendering and the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub text: Vec<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        let text = text_lines(&value);
        Outcome { value, text, exit_code: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.value).expect("json values serialize"),
            Format::Text => self.text.join("\n"),
        }
    }
}

fn text_lines(v: &Value) -> Vec<String> {
    match v {
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}: {x}")).collect(),
        other => vec![other.to_string()],
    }
}

/// Parses `args` (program name first). Help and version requests come back as `Ok(Err(text))`.
pub fn parse_args<I, T>(args: I) -> Result<std::result::Result<Cli, String>>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(Ok(cli)),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Ok(Err(e.to_string())),
            _ => Err(Error::Parse(e.to_string())),
        },
    }
}

impl Cli {
    fn field(&self) -> Result<Arc<FieldSpec>> {
        let poly = self.poly.as_deref().map(parse_poly).transpose()?;
        Ok(Arc::new(FieldSpec::parse(&self.q, poly.as_deref())?))
    }

    fn require_n(&self) -> Result<usize> {
        match self.n {
            Some(0) => Err(Error::UnsupportedDimension(0)),
            Some(n) => Ok(n),
            None => Err(Error::Parse("--n is required".into())),
        }
    }

    fn budget(&self, default: usize) -> Result<usize> {
        match self.budget {
            Some(0) => Err(Error::Parse("--budget must be at least 1".into())),
            Some(b) => Ok(b),
            None => Ok(default),
        }
    }

    fn read_matrix(&self, input: &MatrixInput) -> Result<(UnitriGroup, NilMatrix)> {
        let field = self.field()?;
        let doc = match (&input.entries, &input.matrix) {
            (Some(text), _) => MatrixDoc { n: self.require_n()?, q: None, entries: parse_entries(text)? },
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
            }
            (None, None) => return Err(Error::Parse("give the matrix with --entries or --matrix".into())),
        };
        if let Some(n) = self.n {
            if n != doc.n {
                return Err(Error::SizeMismatch { expected: n, found: doc.n });
            }
        }
        let g = UnitriGroup::new(doc.n, field)?;
        let a = g.matrix_from_doc(&doc)?;
        Ok((g, a))
    }

    /// Runs the selected command on a pool of `--workers` threads.
    pub fn run(&self) -> Result<Outcome> {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(Error::Parse("--workers must be at least 1".into()));
            }
            pool = pool.num_threads(w);
        }
        let pool = pool.build().map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
        pool.install(|| self.dispatch())
    }

    fn dispatch(&self) -> Result<Outcome> {
        match &self.command {
            Command::Classify(input) => self.cmd_classify(input),
            Command::Orbit { input, side, list } => self.cmd_orbit(input, (*side).into(), *list),
            Command::Minimal(input) => self.cmd_minimal(input),
            Command::Count { stratify, check_q } => self.cmd_count(*stratify, check_q),
            Command::Verify { which } => self.cmd_verify(*which),
        }
    }

    pub fn cmd_classify(&self, input: &MatrixInput) -> Result<Outcome> {
        let (g, a) = self.read_matrix(input)?;
        let c = classify(&a);
        let v = verge_of(&g, &a);
        let r = analyze(g.field(), &v)?;
        Ok(Outcome::ok(json!({
            "n": g.n(),
            "q": g.field().name(),
            "is_verge": c.is_verge,
            "is_template": c.is_template,
            "main": c.main,
            "suppl": c.suppl,
            "verge_of": v,
            "a": r.a,
            "b": r.b,
            "disconnected": r.disconnected,
            "minimal_dim_exponent": r.minimal_dim_exponent,
        })))
    }

    pub fn cmd_orbit(&self, input: &MatrixInput, side: Side, list: bool) -> Result<Outcome> {
        let (g, a) = self.read_matrix(input)?;
        let o = orbit_bfs(&g, &a, side, self.budget(DEFAULT_ORBIT_CAP)?)?;
        let (template, verge) = match side {
            Side::Right => {
                let t = template_of_orbit(&o)?;
                let v = verge_of(&g, &t);
                (Some(g.to_doc(&t)), Some(v))
            }
            // left orbits need not contain a verge; report the one they contain, if any
            Side::Left => (None, o.sorted_members().into_iter().find(is_verge).map(|m| verge_of(&g, &m))),
        };
        let (a_exp, b_exp) = verge.as_ref().map_or((None, None), |v| (Some(v.a()), Some(v.b())));
        let mut value = json!({
            "side": side,
            "size": o.len(),
            "template": template,
            "verge": verge,
            "a": a_exp,
            "b": b_exp,
        });
        if list {
            let members: Vec<MatrixDoc> = o.sorted_members().iter().map(|m| g.to_doc(m)).collect();
            value["members"] = json!(members);
        }
        Ok(Outcome::ok(value))
    }

    pub fn cmd_minimal(&self, input: &MatrixInput) -> Result<Outcome> {
        let (g, a) = self.read_matrix(input)?;
        let v = VergeData::from_matrix(&a)?;
        let report = analyze(g.field(), &v)?;
        let sources = if report.disconnected {
            let s = monomial_sources(g.field(), &v, self.budget(DEFAULT_ORBIT_CAP)?)?;
            let listed: Vec<Value> = s
                .sources
                .iter()
                .map(|l| {
                    let beta: Vec<[u32; 3]> = l.beta.iter().map(|&(p, b)| [p.i as u32, p.j as u32, b.code()]).collect();
                    json!({ "beta": beta })
                })
                .collect();
            json!({ "rhat": s.rhat, "index_exponent": s.index_exponent, "free": s.free, "characters": listed })
        } else {
            Value::Null
        };
        Ok(Outcome::ok(json!({ "verge": v, "report": report, "sources": sources })))
    }

    pub fn cmd_count(&self, stratify: bool, check_q: &[u32]) -> Result<Outcome> {
        let n = self.require_n()?;
        let d = d_polynomial(n, DEFAULT_CENSUS_CAP)?;
        let mut all_match = true;
        let mut evaluations = Vec::new();
        for &q in check_q {
            if !is_prime_power(q) {
                return Err(Error::Parse(format!("--check-q value {q} is not a prime power")));
            }
            let poly = d.eval(q as i128 - 1).ok_or(Error::Overflow("d_n(q-1)"))?;
            let direct = count_direct(n, q, DEFAULT_CENSUS_CAP)?;
            let matched = poly >= 0 && poly as u128 == direct;
            all_match &= matched;
            evaluations.push(json!({ "q": q, "polynomial": poly.to_string(), "direct": direct.to_string(), "match": matched }));
        }
        let mut value = json!({
            "n": n,
            "coefficients": d,
            "polynomial": d.to_string(),
            "evaluations": evaluations,
            "checks": { "nonnegative": d.is_nonnegative(), "evaluations_match": all_match },
        });
        if stratify {
            let s = strata(n, DEFAULT_CENSUS_CAP)?;
            let mut sum = CountingPolynomial::zero();
            for p in s.values() {
                sum.add_assign(p);
            }
            let by_delta: serde_json::Map<String, Value> = s.iter().map(|(k, p)| (k.to_string(), json!(p))).collect();
            value["strata"] = Value::Object(by_delta);
            value["checks"]["strata_sum"] = json!(sum == d);
            all_match &= sum == d;
        }
        let mut out = Outcome::ok(value);
        if !all_match {
            out.exit_code = 3;
        }
        Ok(out)
    }

    pub fn cmd_verify(&self, which: VerifyCmd) -> Result<Outcome> {
        let n = self.require_n()?;
        let field = self.field()?;
        let report = match which {
            VerifyCmd::Suite => {
                let mut cfg = SuiteConfig { seed: self.seed, ..SuiteConfig::default() };
                if let Some(b) = self.budget {
                    cfg.orbit_cap = self.budget(b)?;
                    cfg.group_budget = b;
                }
                run_suite(n, field, &cfg)?
            }
            VerifyCmd::Upsilon => run_upsilon(n, field)?,
        };
        Ok(suite_outcome(&report))
    }
}

fn is_prime_power(q: u32) -> bool {
    let Some(p) = (2..=q).find(|d| q % d == 0) else { return false };
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

fn suite_outcome(report: &SuiteReport) -> Outcome {
    let mut text = summary_lines(report);
    text.push(format!("{:?}", tally(report)));
    Outcome {
        value: serde_json::to_value(report).expect("reports serialize"),
        text,
        exit_code: if report.all_passed() { 0 } else { 3 },
    }
}

/// Parses, runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match parse_args(args) {
        Ok(Ok(cli)) => cli,
        Ok(Err(help)) => {
            print!("{help}");
            return 0;
        }
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    match cli.run() {
        Ok(out) => {
            println!("{}", out.render(cli.format));
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
