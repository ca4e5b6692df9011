use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use darboux::io::{self, CheckJson, ChecksJson, Document, ReportDoc, SpectralDoc};
use darboux::kernel::ConditionSet;
use darboux::pipeline::{
    build_plane, complete_pair, involution_a, involution_b, involution_s, minimal_l, one_point_law,
    rank_search, spectral_algebra, BispectralPair, DarbouxPlane,
};
use darboux::registry::{self, ExampleParams, EXAMPLE_IDS};
use darboux::verify::{check_bispectral_symbolic, check_factorizations, check_series_eigen, check_wave, rank_of};
use darboux::{Error, Scalar};

/// Orders of the wave series that must be exact and decaying.
const WAVE_DEPTH: usize = 8;

#[derive(Parser)]
#[command(name = "darboux", version, about = "Bispectral Darboux transformations of Bessel and Airy operators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the plane and its bispectral pair (L, Lambda).
    Pair {
        #[command(flatten)]
        common: Common,
        /// Also search for the least-order operator in the spectral algebra.
        #[arg(long)]
        minimal: bool,
    },
    /// Check a pair: factorizations, symbolic identities, wave series, rank.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rank_only: bool,
    },
    /// Apply the a, s or b involution to a plane.
    Involute {
        #[arg(value_enum)]
        which: Which,
        #[command(flatten)]
        common: Common,
    },
    /// Orders present in the spectral algebra, rank and minimal operator.
    Spectral {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    A,
    S,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args)]
struct Common {
    /// Conditions, plane, pair or job JSON.
    #[arg(long, conflicts_with = "example")]
    spec: Option<PathBuf>,
    /// Built-in example id, or `all` for the whole registry (verify only).
    #[arg(long)]
    example: Option<String>,
    /// Wave series truncation (default 12).
    #[arg(long = "K")]
    k: Option<usize>,
    /// Largest operator order searched in the spectral algebra (default 10).
    #[arg(long)]
    max_order: Option<usize>,
    /// Largest order the rank search may climb to.
    #[arg(long, default_value_t = 40)]
    rank_order: usize,
    /// Degree cap for the minimal operator search.
    #[arg(long, default_value_t = 8)]
    max_deg: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar_arg)]
    a: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar_arg)]
    b: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar_arg)]
    t: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar_arg)]
    lambda: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar_arg)]
    nu: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar_arg)]
    alpha0: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar_arg)]
    alpha2: Option<Scalar>,
}

fn scalar_arg(s: &str) -> Result<Scalar, String> {
    let v: Scalar = s.parse().map_err(|e: darboux::field::ParseScalarError| e.to_string())?;
    if v.is_rational() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not rational"))
    }
}

impl Common {
    fn params(&self) -> ExampleParams {
        ExampleParams {
            a: self.a.clone(),
            b: self.b.clone(),
            t: self.t.clone(),
            lambda: self.lambda.clone(),
            nu: self.nu.clone(),
            alpha0: self.alpha0.clone(),
            alpha2: self.alpha2.clone(),
        }
    }

    fn has_params(&self) -> bool {
        self.params() != ExampleParams::default()
    }
}

enum Fail {
    /// Bad input or pipeline error: exit 2.
    Error(Error),
    /// A check ran and failed: exit 3.
    Verify(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Error(e)
    }
}

fn input_err(msg: impl Into<String>) -> Fail {
    Fail::Error(Error::Input(msg.into()))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidParam(_) => "InvalidParam",
        Error::NotZNHomogeneous { .. } => "NotZNHomogeneous",
        Error::DependentKernel => "DependentKernel",
        Error::RationalizationFailure(_) => "RationalizationFailure",
        Error::NonzeroRemainder { .. } => "NonzeroRemainder",
        Error::DegenerateGamma(_) => "DegenerateGamma",
        Error::RecursionSingular { .. } => "RecursionSingular",
        Error::MarginExhausted { .. } => "MarginExhausted",
        Error::IdentityFailed { .. } => "IdentityFailed",
        Error::NotFound { .. } => "NotFound",
        Error::FamilyMismatch(_) => "FamilyMismatch",
        Error::Input(_) => "Input",
    }
}

enum Input {
    Conditions(ConditionSet),
    Plane(DarbouxPlane),
    Pair(Box<BispectralPair>, Option<ConditionSet>),
}

struct Job {
    input: Input,
    format: Format,
    k: usize,
    max_order: usize,
    rank_order: usize,
    checks: ChecksJson,
}

impl Input {
    fn plane(&self) -> Result<DarbouxPlane, Fail> {
        Ok(match self {
            Input::Conditions(cs) => build_plane(cs)?,
            Input::Plane(p) => p.clone(),
            Input::Pair(pair, cs) => DarbouxPlane {
                conditions: cs.clone(),
                ..pair.plane()
            },
        })
    }

    fn pair(&self) -> Result<(BispectralPair, DarbouxPlane), Fail> {
        let plane = self.plane()?;
        Ok(match self {
            Input::Pair(pair, _) => ((**pair).clone(), plane),
            _ => (complete_pair(&plane)?, plane),
        })
    }

    fn conditions(&self) -> Option<&ConditionSet> {
        match self {
            Input::Conditions(cs) => Some(cs),
            Input::Pair(_, cs) => cs.as_ref(),
            Input::Plane(p) => p.conditions.as_ref(),
        }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

fn load_file(path: &Path, c: &Common, depth: usize) -> Result<Job, Fail> {
    let text = read(path)?;
    let input = match io::parse_document(&text)? {
        Document::Conditions(cs) => Input::Conditions(cs),
        Document::Plane(p) => Input::Plane(p),
        Document::Pair(pair) => Input::Pair(Box::new(pair), io::pair_conditions(&text)?),
        Document::Job(job) => {
            if depth > 0 {
                return Err(input_err("a job may not point at another job"));
            }
            let sources = job.input.is_some() as u8 + job.spec.is_some() as u8 + job.example.is_some() as u8;
            if sources != 1 {
                return Err(input_err("a job needs exactly one of `input`, `spec`, `example`"));
            }
            let mut inner = if let Some(rel) = &job.input {
                let base = path.parent().unwrap_or(Path::new("."));
                load_file(&base.join(rel), c, depth + 1)?
            } else if let Some(doc) = &job.spec {
                let text = io::to_json(doc);
                let Document::Conditions(cs) = io::parse_document(&text)? else {
                    unreachable!("conditions document")
                };
                settle(Input::Conditions(cs), c)
            } else {
                let id = job.example.as_deref().unwrap_or_default();
                settle(Input::Conditions(registry::example(id, &c.params())?), c)
            };
            if c.format.is_none() {
                if let Some(f) = &job.format {
                    inner.format = Format::from_str(f, true).map_err(|_| input_err(format!("unknown format `{f}`")))?;
                }
            }
            inner.k = c.k.or(job.k).unwrap_or(12);
            inner.max_order = c.max_order.or(job.max_order).unwrap_or(10);
            inner.checks = job.checks;
            return Ok(inner);
        }
    };
    Ok(settle(input, c))
}

fn settle(input: Input, c: &Common) -> Job {
    Job {
        input,
        format: c.format.unwrap_or(Format::Json),
        k: c.k.unwrap_or(12),
        max_order: c.max_order.unwrap_or(10),
        rank_order: c.rank_order,
        checks: ChecksJson::default(),
    }
}

fn load(c: &Common) -> Result<Job, Fail> {
    match (&c.spec, &c.example) {
        (Some(path), _) => {
            if c.has_params() {
                return Err(input_err("parameter flags apply to --example only"));
            }
            load_file(path, c, 0)
        }
        (None, Some(id)) => Ok(settle(Input::Conditions(registry::example(id, &c.params())?), c)),
        (None, None) => Err(input_err("give --spec FILE or --example ID")),
    }
}

fn emit(c: &Common, body: &str) -> Result<(), Fail> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &c.out {
        Some(path) => fs::write(path, body).map_err(|e| input_err(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

fn cmd_pair(c: &Common, minimal: bool) -> Result<(), Fail> {
    let job = load(c)?;
    let (pair, plane) = job.input.pair()?;
    let spectral = spectral_algebra(&plane, job.max_order);
    let min = if minimal {
        Some(minimal_l(&plane, c.max_deg)?)
    } else {
        None
    };
    let orders: Vec<usize> = spectral.iter().map(|e| e.order).collect();
    let body = match job.format {
        Format::Json => {
            let mut doc = io::pair_doc(&pair, job.input.conditions())?;
            doc.spectral = Some(io::spectral_json(&spectral)?);
            doc.minimal = min.as_ref().map(|(u, l)| io::minimal_json(u, l)).transpose()?;
            io::to_json(&doc)
        }
        Format::Latex => io::latex_pair(&pair),
        Format::Text => {
            let mut s = io::text_pair(&pair);
            s.push_str(&format!("spectral orders: {}\n", join(&orders)));
            if let Some((u, l)) = &min {
                s.push_str(&format!("minimal u = {u}\nL_min = {l}\n"));
            }
            s
        }
    };
    emit(c, &body)
}

#[derive(Clone, Copy)]
enum Check {
    Factorization,
    Symbolic,
    Series,
    Rank,
}

struct Outcome {
    check: CheckJson,
    /// (orders up to --max-order, rank, b-image orders, b-image rank)
    ranks: Option<(Vec<usize>, usize, Vec<usize>, usize)>,
}

fn status(name: &str, r: Result<(), String>) -> CheckJson {
    CheckJson {
        name: name.into(),
        status: if r.is_ok() { "pass" } else { "fail" }.into(),
        detail: r.err(),
    }
}

fn skipped(name: &str, why: &str) -> CheckJson {
    CheckJson {
        name: name.into(),
        status: "skipped".into(),
        detail: Some(why.into()),
    }
}

fn run_check(check: Check, pair: &BispectralPair, plane: &DarbouxPlane, job: &Job) -> Outcome {
    let plain = |check| Outcome { check, ranks: None };
    match check {
        Check::Factorization => plain(status("factorization", check_factorizations(pair).map_err(|e| e.to_string()))),
        Check::Symbolic => plain(status("symbolic", check_bispectral_symbolic(pair).map_err(|e| e.to_string()))),
        Check::Series if !pair.family.is_bessel() => plain(skipped("series", "wave series are checked for Bessel planes")),
        Check::Series => {
            let r = check_wave(plane, job.k, WAVE_DEPTH)
                .and_then(|_| check_series_eigen(pair, job.k))
                .and_then(|_| check_wave(&pair.b_plane(), job.k, WAVE_DEPTH))
                .map(|_| ())
                .map_err(|e| e.to_string());
            plain(status("series", r))
        }
        Check::Rank => {
            let n = plane.n() as usize;
            let ((orders, r), (b_orders, rb)) = rayon::join(
                || {
                    let orders: Vec<usize> = spectral_algebra(plane, job.max_order).iter().map(|e| e.order).collect();
                    let r = if rank_of(&orders) == n { n } else { rank_search(plane, job.rank_order).1 };
                    (orders, r)
                },
                || {
                    let (els, rb) = rank_search(&pair.b_plane(), job.rank_order);
                    (els.iter().map(|e| e.order).collect::<Vec<_>>(), rb)
                },
            );
            let res = if r == n && rb == n {
                Ok(())
            } else {
                Err(format!("rank {r}, b-image rank {rb}, expected {n}"))
            };
            Outcome {
                check: status("rank", res),
                ranks: Some((orders, r, b_orders, rb)),
            }
        }
    }
}

fn verify_job(job: &Job, rank_only: bool, example: Option<String>) -> Result<ReportDoc, Fail> {
    let (pair, plane) = job.input.pair()?;
    let mut checks = Vec::new();
    if !rank_only {
        if job.k < WAVE_DEPTH && pair.family.is_bessel() && job.checks.series {
            return Err(Fail::Error(Error::MarginExhausted {
                k: job.k,
                required: WAVE_DEPTH,
            }));
        }
        checks.push(Check::Factorization);
        if job.checks.symbolic {
            checks.push(Check::Symbolic);
        }
        if job.checks.series {
            checks.push(Check::Series);
        }
    }
    if job.checks.rank || rank_only {
        checks.push(Check::Rank);
    }
    let outcomes: Vec<Outcome> = checks.par_iter().map(|&ch| run_check(ch, &pair, &plane, job)).collect();
    let ranks = outcomes.iter().find_map(|o| o.ranks.clone());
    let ok = outcomes.iter().all(|o| o.check.status != "fail");
    Ok(ReportDoc {
        schema: io::REPORT_SCHEMA.into(),
        example,
        family: io::family_json(&pair.family)?,
        checks: outcomes.into_iter().map(|o| o.check).collect(),
        rank: ranks.as_ref().map(|o| o.1),
        b_rank: ranks.as_ref().map(|o| o.3),
        orders: ranks.as_ref().map(|o| o.0.clone()),
        b_orders: ranks.map(|o| o.2),
        ok,
    })
}

fn report_text(r: &ReportDoc) -> String {
    let mut s = String::new();
    if let Some(id) = &r.example {
        s.push_str(&format!("example {id}\n"));
    }
    for ch in &r.checks {
        s.push_str(&format!("{} {}", ch.status.to_uppercase(), ch.name));
        if let Some(d) = &ch.detail {
            s.push_str(&format!(": {d}"));
        }
        s.push('\n');
    }
    if let (Some(o), Some(r0)) = (&r.orders, r.rank) {
        s.push_str(&format!("orders: {}\nrank {r0}\n", join(o)));
    }
    if let (Some(o), Some(r0)) = (&r.b_orders, r.b_rank) {
        s.push_str(&format!("b-image orders (rank search): {}\nb-image rank {r0}\n", join(o)));
    }
    s
}

fn cmd_verify(c: &Common, rank_only: bool) -> Result<(), Fail> {
    let mut format = c.format.unwrap_or(Format::Json);
    let reports = if c.example.as_deref() == Some("all") {
        if c.has_params() {
            return Err(input_err("parameter flags cannot be combined with --example all"));
        }
        EXAMPLE_IDS
            .par_iter()
            .map(|id| {
                let job = settle(Input::Conditions(registry::example(id, &ExampleParams::default())?), c);
                verify_job(&job, rank_only, Some(id.to_string()))
            })
            .collect::<Result<Vec<_>, Fail>>()?
    } else {
        let job = load(c)?;
        format = job.format;
        vec![verify_job(&job, rank_only, c.example.clone())?]
    };
    let body = match format {
        Format::Json if reports.len() == 1 => io::to_json(&reports[0]),
        Format::Json => io::to_json(&reports),
        _ => reports.iter().map(report_text).collect::<Vec<_>>().join("\n"),
    };
    emit(c, &body)?;
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|ch| ch.status == "fail")
                .map(move |ch| match &r.example {
                    Some(id) => format!("{id}: {}", ch.name),
                    None => ch.name.clone(),
                })
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Fail::Verify(format!("failed checks: {}", failed.join(", "))))
    }
}

fn cmd_involute(c: &Common, which: Which) -> Result<(), Fail> {
    let job = load(c)?;
    let plane = job.input.plane()?;
    let image = match which {
        Which::A => involution_a(&plane)?,
        Which::S => involution_s(&plane)?,
        Which::B => involution_b(&plane)?,
    };
    let law = match which {
        Which::B => one_point_law(&plane)?,
        _ => None,
    };
    let body = match job.format {
        Format::Json => {
            let mut doc = io::plane_doc(&image)?;
            doc.law = law.as_ref().map(io::law_json).transpose()?;
            io::to_json(&doc)
        }
        Format::Latex => format!(
            "\\begin{{aligned}}\nP &= {} \\\\\ng(z) &= {}\n\\end{{aligned}}\n",
            io::latex_op(&image.p, "x"),
            io::latex_poly(&image.g, "z")
        ),
        Format::Text => {
            let mut s = io::text_plane(&image);
            if let Some(l) = &law {
                s.push_str(&format!("a = {}\nlambda^N = {}\nmu^N = {}\n", l.a, l.lambda_n, l.mu_n));
                if let Some(r) = &l.relation {
                    let verdict = if r.holds() { "holds" } else { "FAILS" };
                    s.push_str(&format!("{}: {} = {} ({verdict})\n", r.text, r.lhs, r.rhs));
                }
                if let Some((b, ok)) = &l.dual_b {
                    let verdict = if *ok { "holds" } else { "FAILS" };
                    s.push_str(&format!("1/a + 1/b + N - 1 = 0 with b = {b} ({verdict})\n"));
                }
            }
            s
        }
    };
    emit(c, &body)?;
    match law {
        Some(l) if !l.holds() => Err(Fail::Verify("one-point parameter law does not hold".into())),
        _ => Ok(()),
    }
}

fn cmd_spectral(c: &Common) -> Result<(), Fail> {
    let job = load(c)?;
    let plane = job.input.plane()?;
    let els = spectral_algebra(&plane, job.max_order);
    let orders: Vec<usize> = els.iter().map(|e| e.order).collect();
    let min = match minimal_l(&plane, c.max_deg) {
        Ok(m) => Some(m),
        Err(Error::NotFound { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let body = match job.format {
        Format::Json => io::to_json(&SpectralDoc {
            schema: io::SPECTRAL_SCHEMA.into(),
            family: io::family_json(&plane.family)?,
            max_order: job.max_order,
            elements: io::spectral_json(&els)?,
            rank: rank_of(&orders),
            max_deg: c.max_deg,
            minimal: min.as_ref().map(|(u, l)| io::minimal_json(u, l)).transpose()?,
        }),
        Format::Latex => match &min {
            Some((u, l)) => format!(
                "\\begin{{aligned}}\nu(t) &= {} \\\\\nL_{{\\min}} &= {}\n\\end{{aligned}}\n",
                io::latex_poly(u, "t"),
                io::latex_op(l, "x")
            ),
            None => format!("% no invariant of degree <= {}\n", c.max_deg),
        },
        Format::Text => {
            let mut s = format!("orders: {}\nrank {}\n", join(&orders), rank_of(&orders));
            for e in &els {
                s.push_str(&format!("order {}: u = {}\n", e.order, e.u));
            }
            match &min {
                Some((u, l)) => s.push_str(&format!("minimal u = {u}\nL_min = {l}\n")),
                None => s.push_str(&format!("no invariant of degree <= {}\n", c.max_deg)),
            }
            s
        }
    };
    emit(c, &body)
}

fn init_threads() {
    if let Some(n) = std::env::var("DARBOUX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Pair { common, minimal } => cmd_pair(common, *minimal),
        Cmd::Verify { common, rank_only } => cmd_verify(common, *rank_only),
        Cmd::Involute { which, common } => cmd_involute(common, *which),
        Cmd::Spectral { common } => cmd_spectral(common),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Error(e)) => {
            let msg = serde_json::json!({ "error": error_kind(&e), "message": e.to_string() });
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Fail::Verify(msg)) => {
            let msg = serde_json::json!({ "error": "VerificationFailed", "message": msg });
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
