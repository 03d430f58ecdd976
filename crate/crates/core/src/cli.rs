//! Command-line driver: one job in, one line-oriented report out.
//!
//! Exit codes: 0 pass, 1 usage or input error, 2 verification failure, 3 resource overflow.

use crate::context::{ContextError, RootContext, DEFAULT_SEED};
use crate::geometry::{
    coxeter_path, enumerate_mgs, format_crossings, green_digraph, lemma_d_check, verify_theorem_a,
    GeometryError, DEFAULT_MAX_PATHS, THEOREM_A_SCOPE,
};
use crate::group::{
    lemma_c_check, GroupError, Limits, PositiveWord, Presentation, DEFAULT_MAX_WORDS,
    DEFAULT_MAX_WORD_LEN,
};
use crate::order::{check_vertical, find_lateral, sort_vertical};
use crate::picture::{
    build_atom, build_picture, render_svg, valid_triples, verify_atom_shape, AtomError,
    PictureError, Style,
};
use crate::quiver::{DimVector, ValuedQuiver};
use crate::rational::fmt_qvec;
use crate::roots::{RootError, RootId, RootTable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "picgroup",
    version,
    about = "Picture groups and maximal green sequences of valued quivers"
)]
pub struct Cli {
    #[command(flatten)]
    pub job: JobArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Quiver file; may end with a `roots` block listing the root sequence.
    #[arg(long, global = true)]
    pub quiver: Option<PathBuf>,
    /// Root sequence: a file, `all`, or inline vectors separated by `;` such as `1 0 0; 0 1 0`.
    #[arg(long, global = true)]
    pub roots: Option<String>,
    /// Write the report (or SVG for `render`) here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WORDS, value_parser = positive)]
    pub max_words: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PATHS, value_parser = positive)]
    pub max_paths: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WORD_LEN, value_parser = positive)]
    pub max_word_len: usize,
    /// Append wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the positive roots (or the given root set).
    Roots,
    /// Admissibility, a lateral order and the vertical-order report.
    Orders,
    /// Generators and relations of the picture group.
    Presentation,
    /// Sign vectors of all compartments with witness points.
    Compartments,
    /// Maximal green sequences and their words.
    Mgs {
        /// One word per line as space-separated dimension vectors.
        #[arg(long)]
        words_only: bool,
    },
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Write an SVG of a rank-three picture or atom.
    Render {
        #[arg(value_enum)]
        what: RenderKind,
        /// Comma separated `width=`, `flatness=`, `show-ghosts=` entries.
        #[arg(long)]
        style: Option<String>,
        /// Three roots for an atom, inline syntax; defaults to the first valid triple.
        #[arg(long)]
        triple: Option<String>,
    },
    Dump {
        #[arg(value_enum)]
        table: DumpKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    TheoremA,
    LemmaC,
    LemmaD,
    CoxeterPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderKind {
    Picture,
    Atom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpKind {
    HomTable,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Overflow(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Overflow(_) => EXIT_OVERFLOW,
            _ => EXIT_USAGE,
        }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NotFiniteType { .. } => CliError::Overflow(format!("NotFiniteType: {e}")),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ContextError> for CliError {
    fn from(e: ContextError) -> Self {
        match e {
            ContextError::Roots(r) => r.into(),
            ContextError::Repr(r) => CliError::Usage(r.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::ClosureOverflow(_) => CliError::Overflow(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::PathExplosion(_) => CliError::Overflow(e.to_string()),
            GeometryError::Group(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PictureError> for CliError {
    fn from(e: PictureError) -> Self {
        match e {
            PictureError::Geometry(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AtomError> for CliError {
    fn from(e: AtomError) -> Self {
        match e {
            AtomError::Picture(p) => p.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Ordered `key: value` fields, an optional body, and a verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub body: Vec<String>,
    pub verdict: Option<bool>,
}

impl Report {
    fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    fn line(&mut self, line: impl Into<String>) {
        self.body.push(line.into());
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict == Some(false) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            s.push_str(&format!("{k}: {v}\n"));
        }
        if let Some(v) = self.verdict {
            s.push_str(&format!("verdict: {}\n", if v { "pass" } else { "fail" }));
        }
        for l in &self.body {
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

/// Parsed job: the quiver and the root vectors from the job file, if any.
#[derive(Debug, Clone)]
pub struct Job {
    pub quiver: ValuedQuiver,
    pub roots: Option<Vec<DimVector>>,
}

/// Splits a job file at its `roots` line; the quiver part keeps its line numbers.
pub fn parse_job(text: &str) -> Result<Job, CliError> {
    let mut quiver_lines = Vec::new();
    let mut roots: Option<Vec<DimVector>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if let Some(rs) = roots.as_mut() {
            if !body.is_empty() {
                rs.push(
                    parse_vector(body).map_err(|e| CliError::Usage(format!("line {line}: {e}")))?,
                );
            }
        } else if body == "roots" {
            roots = Some(Vec::new());
        } else {
            quiver_lines.push((line, raw));
        }
    }
    let quiver =
        ValuedQuiver::parse_lines(quiver_lines).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Job { quiver, roots })
}

fn parse_vector(s: &str) -> Result<DimVector, String> {
    let cleaned = s.trim().trim_start_matches('(').trim_end_matches(')');
    cleaned
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.parse::<i64>()
                .map_err(|_| format!("expected an integer, found `{w}`"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(DimVector)
}

/// Inline vectors separated by `;`.
pub fn parse_inline_roots(s: &str) -> Result<Vec<DimVector>, CliError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_vector(p).map_err(CliError::Usage))
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

enum RootSpec {
    All,
    Vectors(Vec<DimVector>),
}

fn root_spec(job: &Job, arg: Option<&str>) -> Result<RootSpec, CliError> {
    match arg {
        Some("all") => Ok(RootSpec::All),
        Some(a) if Path::new(a).is_file() => {
            let text = read(Path::new(a))?;
            let mut out = Vec::new();
            for (i, raw) in text.lines().enumerate() {
                let body = raw.split('#').next().unwrap_or("").trim();
                if body.is_empty() || body == "roots" {
                    continue;
                }
                out.push(
                    parse_vector(body)
                        .map_err(|e| CliError::Usage(format!("{a}:{}: {e}", i + 1)))?,
                );
            }
            Ok(RootSpec::Vectors(out))
        }
        Some(a) => Ok(RootSpec::Vectors(parse_inline_roots(a)?)),
        None => Ok(job.roots.clone().map_or(RootSpec::All, RootSpec::Vectors)),
    }
}

/// Full root context where the quiver is of finite type, otherwise the explicit root set.
fn context(job: &Job, spec: &RootSpec, seed: u64) -> Result<RootContext, CliError> {
    match RootContext::build(&job.quiver, seed) {
        Ok(c) => Ok(c),
        Err(ContextError::Roots(RootError::NotFiniteType { .. }))
            if matches!(spec, RootSpec::Vectors(_)) =>
        {
            let RootSpec::Vectors(vs) = spec else {
                unreachable!()
            };
            let table = RootTable::explicit(&job.quiver, vs.clone())?;
            Ok(RootContext::with_roots(&job.quiver, table, seed)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn sequence(ctx: &RootContext, spec: &RootSpec) -> Result<Vec<RootId>, CliError> {
    match spec {
        RootSpec::All => Ok(sort_vertical(ctx, &ctx.roots.ids().collect::<Vec<_>>())),
        RootSpec::Vectors(vs) => Ok(ctx.roots.parse_root_sequence(vs)?),
    }
}

fn labels(ctx: &RootContext, rs: &[RootId]) -> String {
    if rs.is_empty() {
        return "none".into();
    }
    rs.iter()
        .map(|&r| ctx.label(r))
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn word_text(ctx: &RootContext, w: &PositiveWord) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.format_dims(ctx)
    }
}

/// Output of a job: the report text or an artifact, plus the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
    /// Artifact written to `--out`, if any.
    pub artifact: Option<String>,
}

/// Runs a parsed command and produces its output without touching standard streams.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let a = &cli.job;
    let path = a
        .quiver
        .as_ref()
        .ok_or_else(|| CliError::Usage("--quiver <path> is required".into()))?;
    let job = parse_job(&read(path)?)?;
    let spec = root_spec(&job, a.roots.as_deref())?;
    let ctx = context(&job, &spec, a.seed)?;
    let s = sequence(&ctx, &spec)?;
    let limits = Limits {
        max_words: a.max_words,
        max_len: a.max_word_len,
    };
    let mut r = Report::default();
    let mut artifact = None;
    r.field("quiver", format!("{:016x}", job.quiver.stable_hash()));
    r.field("vertices", ctx.n());
    match &cli.command {
        Command::Roots => {
            let listed: Vec<RootId> = if matches!(spec, RootSpec::All) {
                ctx.roots.ids().collect()
            } else {
                s.clone()
            };
            r.field("roots", listed.len());
            r.field("hom_prime", ctx.homs.prime());
            for (k, &b) in listed.iter().enumerate() {
                let kind = if ctx.is_simple(b) { " simple" } else { "" };
                r.line(format!(
                    "root {} {} length={}{kind}",
                    k + 1,
                    ctx.label(b),
                    ctx.roots.length(b)
                ));
            }
        }
        Command::Orders => {
            r.field("roots", s.len());
            let lateral = find_lateral(&ctx, &s);
            let strict = check_vertical(&ctx, &s, false);
            let weak = check_vertical(&ctx, &s, true);
            match &lateral {
                Ok(l) => r.field("lateral", labels(&ctx, l)),
                Err(e) => r.field("lateral", format!("none ({e})")),
            }
            r.field("vertical", yes(strict.ok));
            r.field("weakly_vertical", yes(weak.ok));
            let admissible = lateral.is_ok() && strict.ok;
            r.field("admissible", yes(admissible));
            r.field("weakly_admissible", yes(lateral.is_ok() && weak.ok));
            for f in &strict.failures {
                r.line(format!(
                    "vertical_failure {} missing_subroots={} missing_quotients={}",
                    ctx.label(f.root),
                    labels(&ctx, &f.missing_subroots),
                    labels(&ctx, &f.missing_quotients)
                ));
            }
            r.verdict = Some(admissible);
        }
        Command::Presentation => {
            let p = Presentation::new(&ctx, &s);
            return finish(a, p.to_text(&ctx), EXIT_PASS, started);
        }
        Command::Compartments => {
            let g = green_digraph(&ctx, &s)?;
            r.field("roots", s.len());
            r.field("compartments", g.compartments.len());
            for c in &g.compartments {
                let walls: Vec<String> = c.walls.iter().map(|w| (w + 1).to_string()).collect();
                r.line(format!(
                    "compartment {} witness={} walls={}",
                    c.signs,
                    fmt_qvec(&c.witness),
                    walls.join(",")
                ));
            }
        }
        Command::Mgs { words_only } => {
            let (g, paths) = enumerate_mgs(&ctx, &s, a.max_paths)?;
            if *words_only {
                let text: String = paths
                    .iter()
                    .map(|p| word_text(&ctx, &p.word) + "\n")
                    .collect();
                return finish(a, text, EXIT_PASS, started);
            }
            r.field("roots", s.len());
            r.field("compartments", g.compartments.len());
            r.field("edges", g.edges.len());
            r.field("mgs", paths.len());
            for p in &paths {
                let signs: Vec<String> = p
                    .nodes
                    .iter()
                    .map(|&i| g.compartments[i].signs.to_string())
                    .collect();
                r.line(format!(
                    "path {} word={}",
                    signs.join(" "),
                    word_text(&ctx, &p.word)
                ));
            }
        }
        Command::Verify { check } => verify(&ctx, &s, *check, limits, a.max_paths, &mut r)?,
        Command::Render {
            what,
            style,
            triple,
        } => {
            let style = match style {
                Some(st) => Style::parse(st).map_err(|e| CliError::Usage(e.to_string()))?,
                None => Style::default(),
            };
            let picture = match what {
                RenderKind::Picture => build_picture(&ctx, &s)?,
                RenderKind::Atom => {
                    let t = match triple {
                        Some(t) => {
                            let ids = ctx.roots.parse_root_sequence(&parse_inline_roots(t)?)?;
                            <[RootId; 3]>::try_from(ids).map_err(|_| {
                                CliError::Usage("--triple needs exactly three roots".into())
                            })?
                        }
                        None => *valid_triples(&ctx, &s).first().ok_or_else(|| {
                            CliError::Usage("the root set contains no valid triple".into())
                        })?,
                    };
                    let atom = build_atom(&ctx, t, &s)?;
                    let shape = verify_atom_shape(&atom);
                    r.field("triple", labels(&ctx, &t));
                    r.field("ghosts", atom.ghosts.len());
                    r.field("exterior_vertices", shape.exterior.len());
                    r.field("interior_vertices", shape.interior.len());
                    if let Some(why) = &shape.reason {
                        r.field("reason", why);
                    }
                    r.verdict = Some(shape.ok);
                    atom.picture
                }
            };
            r.field("walls", picture.walls.len());
            r.field("vertices_on_sphere", picture.vertices.len());
            r.field("regions", picture.regions.len());
            r.field("faces", picture.faces);
            let svg = render_svg(&picture, &style);
            match &a.out {
                Some(p) => {
                    r.field("svg", p.display());
                    artifact = Some(svg);
                }
                None => return finish(a, svg, r.exit_code(), started),
            }
        }
        Command::Dump {
            table: DumpKind::HomTable,
        } => {
            let mut text = String::from("a\tb\thom\text\tsubroot\tquotient\n");
            for x in ctx.roots.ids() {
                for y in ctx.roots.ids() {
                    text.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\n",
                        ctx.label(x),
                        ctx.label(y),
                        ctx.homs.hom(x, y),
                        ctx.homs.ext(x, y),
                        u8::from(ctx.homs.is_subroot(x, y)),
                        u8::from(ctx.homs.is_quotient_root(x, y))
                    ));
                }
            }
            return finish(a, text, EXIT_PASS, started);
        }
    }
    if a.timing {
        r.field("elapsed_ms", started.elapsed().as_millis());
    }
    let code = r.exit_code();
    match (artifact, &a.out) {
        (Some(svg), _) => Ok(Outcome {
            text: r.to_text(),
            code,
            artifact: Some(svg),
        }),
        (None, Some(_)) => Ok(Outcome {
            text: String::new(),
            code,
            artifact: Some(r.to_text()),
        }),
        (None, None) => Ok(Outcome {
            text: r.to_text(),
            code,
            artifact: None,
        }),
    }
}

fn finish(a: &JobArgs, text: String, code: i32, started: Instant) -> Result<Outcome, CliError> {
    let mut text = text;
    if a.timing {
        text.push_str(&format!(
            "# elapsed_ms: {}\n",
            started.elapsed().as_millis()
        ));
    }
    if a.out.is_some() {
        Ok(Outcome {
            text: String::new(),
            code,
            artifact: Some(text),
        })
    } else {
        Ok(Outcome {
            text,
            code,
            artifact: None,
        })
    }
}

fn verify(
    ctx: &RootContext,
    s: &[RootId],
    check: Check,
    limits: Limits,
    max_paths: usize,
    r: &mut Report,
) -> Result<(), CliError> {
    r.field("roots", s.len());
    match check {
        Check::TheoremA => {
            let t = verify_theorem_a(ctx, s, limits, max_paths)?;
            r.field("check", "theorem-a");
            r.field("scope", THEOREM_A_SCOPE);
            r.field("compartments", t.compartments);
            r.field("mgs", t.mgs);
            r.field("closure", t.closure);
            r.field("distinct", yes(t.distinct));
            r.field("mgs_in_closure", yes(t.mgs_in_closure));
            r.field("closure_realized", yes(t.closure_realized));
            if let Some(w) = &t.counterexample {
                r.field("counterexample", word_text(ctx, w));
            }
            r.verdict = Some(t.ok());
        }
        Check::LemmaC => {
            let (_, paths) = enumerate_mgs(ctx, s, max_paths)?;
            let words: Vec<PositiveWord> = paths.into_iter().map(|p| p.word).collect();
            r.field("check", "lemma-c");
            r.field("mgs", words.len());
            let mut ok = true;
            for &b in s {
                let c = lemma_c_check(&words, b);
                ok &= c.ok;
                let mut line =
                    format!("root {} groups={} ok={}", ctx.label(b), c.groups, yes(c.ok));
                if let Some((u, v)) = &c.counterexample {
                    line.push_str(&format!(
                        " counterexample={} | {}",
                        word_text(ctx, u),
                        word_text(ctx, v)
                    ));
                }
                r.line(line);
            }
            r.verdict = Some(ok);
        }
        Check::LemmaD => {
            let d = lemma_d_check(ctx, s, max_paths)?;
            r.field("check", "lemma-d");
            if let Some(why) = &d.skipped {
                r.field("skipped", why);
            }
            r.field("sequences", d.sequences);
            r.field("class2", d.class2);
            r.field("violations", d.violations.len());
            for v in &d.violations {
                r.line(format!("violation {v}"));
            }
            r.verdict = Some(d.ok());
        }
        Check::CoxeterPath => {
            let c = coxeter_path(ctx, s)?;
            r.field("check", "coxeter-path");
            r.field(
                "coefficients",
                c.coefficients
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            r.field("crossings", format_crossings(ctx, &c));
            r.field("word", word_text(ctx, &c.word));
            r.field("coxeter", word_text(ctx, &c.coxeter));
            r.field(
                "compartments",
                c.compartments
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            r.field("times_ok", yes(c.times_ok));
            r.field("word_ok", yes(c.word_ok));
            r.field("green_ok", yes(c.green_ok));
            r.verdict = Some(c.ok());
        }
    }
    Ok(())
}

/// Parses `argv`, runs the job and writes to the given streams. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if let (Some(body), Some(p)) = (&o.artifact, &cli.job.out) {
                if let Err(e) = std::fs::write(p, body) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", p.display());
                    return EXIT_USAGE;
                }
            }
            let _ = stdout.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
