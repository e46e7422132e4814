//! Command-line front end. Reports are built as a JSON tree; the human
//! format renders the same tree as indented `key: value` lines.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::{MonomialOrder, Polynomial, Ring, RingContext};
use crate::classify::{self, Verdict};
use crate::duval::{duval_extension, verify_hyperplane_section};
use crate::error::Error;
use crate::extension::{
    bielliptic_normalize, check_extension, ks_report, match_extensions, universal_hypersurface_extension,
    ExtensionData, MatchMode, MatchOutcome,
};
use crate::gaussian::gaussian_corank_plane_curve;
use crate::groebner::{GradedIdeal, GroebnerConfig};
use crate::linalg::SparseVec;
use crate::normal::NormalModule;

#[derive(Parser, Debug)]
#[command(name = "hyperext", version, about = "Extensions of projective varieties, computed exactly")]
pub struct Cli {
    /// Largest S-polynomial degree before a Groebner computation gives up.
    #[arg(long, global = true, env = "HYPEREXT_MAX_DEGREE", default_value_t = 64,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    /// Largest Groebner basis size before a computation gives up.
    #[arg(long, global = true, env = "HYPEREXT_MAX_BASIS", default_value_t = 20000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_basis: u64,
    /// Degree bound for the extension flatness check.
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree-e piece of the normal module of an ideal.
    NormalModule {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Kodaira-Spencer layers of an extension.
    Ks {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        max_order: Option<u32>,
    },
    /// Universal extension of a smooth hypersurface.
    UniversalExt {
        #[arg(long)]
        file: PathBuf,
    },
    /// Compare two extensions of the same base.
    Match {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Compare even when N(-2) is nonzero.
        #[arg(long)]
        heuristic: bool,
    },
    /// Du Val re-embedding from `X:`, `E:` and `F:` lines.
    Duval {
        #[arg(long)]
        file: PathBuf,
    },
    /// Gaussian map Φ(K, K^i) of a smooth plane curve.
    Gaussian {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        weight: u32,
    },
    /// Calabi-Yau classification tables.
    Classify {
        #[command(subcommand)]
        case: ClassifyCase,
    },
    /// Normal form of a one-step extension of a bielliptic canonical curve.
    BiellipticNormalize {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCase {
    Hypersurface {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    Ci {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    Ruled {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    Bielliptic {
        #[arg(long)]
        g: u32,
    },
    Plane {
        #[arg(long)]
        d: u32,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let config = GroebnerConfig { max_degree: cli.max_degree, max_basis_size: cli.max_basis as usize };
    match execute(&cli, &config) {
        Ok(report) => Outcome { code: 0, stdout: render(&report, cli.format), stderr: String::new() },
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", msg) },
        Err(Failure::Lib(e)) => {
            let code = if e.is_computational() || matches!(e, Error::Refused(_)) { 1 } else { 2 };
            Outcome { code, stdout: String::new(), stderr: format!("error: {}\n", e) }
        }
    }
}

fn execute(cli: &Cli, config: &GroebnerConfig) -> Res<Value> {
    let mut report = match &cli.command {
        Command::NormalModule { file, twist } => normal_module(file, *twist, config)?,
        Command::Ks { file, max_order } => ks(file, *max_order, config)?,
        Command::UniversalExt { file } => universal(file, cli.bound, config)?,
        Command::Match { left, right, heuristic } => matching(left, right, *heuristic, config)?,
        Command::Duval { file } => duval(file, config)?,
        Command::Gaussian { file, weight } => gaussian(file, *weight, config)?,
        Command::Classify { case } => classify_case(case)?,
        Command::BiellipticNormalize { file } => bielliptic(file)?,
    };
    let name = match &cli.command {
        Command::NormalModule { .. } => "normal-module",
        Command::Ks { .. } => "ks",
        Command::UniversalExt { .. } => "universal-ext",
        Command::Match { .. } => "match",
        Command::Duval { .. } => "duval",
        Command::Gaussian { .. } => "gaussian",
        Command::Classify { .. } => "classify",
        Command::BiellipticNormalize { .. } => "bielliptic-normalize",
    };
    report.as_object_mut().unwrap().insert("command".into(), json!(name));
    Ok(report)
}

/// Parsed input file: `ring x0 x1 | t1 t2` then one generator per line,
/// optionally labelled `E:` etc.
#[derive(Clone, Debug)]
pub struct InputFile {
    pub x_ring: Ring,
    pub t_vars: Vec<String>,
    pub entries: Vec<(Option<String>, Polynomial)>,
}

impl InputFile {
    pub fn parse(text: &str) -> crate::Result<InputFile> {
        let mut header: Option<(Ring, Vec<String>, Ring)> = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap();
            if line.trim().is_empty() {
                continue;
            }
            let Some((_, _, ring)) = &header else {
                let rest = line.trim_start().strip_prefix("ring").ok_or_else(|| {
                    Error::Parse { line: line_no, column: 1, message: "expected a `ring` header".into() }
                })?;
                let (xs, ts) = match rest.split_once('|') {
                    Some((a, b)) => (a, b),
                    None => (rest, ""),
                };
                let xs: Vec<String> = xs.split_whitespace().map(String::from).collect();
                let ts: Vec<String> = ts.split_whitespace().map(String::from).collect();
                let x_ring = RingContext::new(xs.clone(), MonomialOrder::Grevlex)?;
                let full = RingContext::new(xs.into_iter().chain(ts.clone()), MonomialOrder::Grevlex)?;
                header = Some((x_ring, ts, full));
                continue;
            };
            let mut body = line;
            let mut label = None;
            if let Some((l, rest)) = line.split_once(':') {
                let l = l.trim();
                if !l.is_empty() && l.chars().all(|c| c.is_ascii_alphanumeric()) {
                    label = Some(l.to_string());
                    body = rest;
                }
            }
            let offset = line.len() - body.len();
            let p = Polynomial::parse(ring, body).map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::Parse { line: line_no, column: column + offset, message },
                other => other,
            })?;
            entries.push((label, p));
        }
        let (x_ring, t_vars, _) =
            header.ok_or_else(|| Error::Parse { line: 1, column: 1, message: "empty input".into() })?;
        Ok(InputFile { x_ring, t_vars, entries })
    }

    fn labelled(&self, label: &str) -> Vec<Polynomial> {
        self.entries
            .iter()
            .filter(|(l, _)| l.as_deref() == Some(label))
            .map(|(_, p)| p.clone())
            .collect()
    }

    /// Unlabelled generators, which must not involve `t`.
    pub fn x_generators(&self) -> crate::Result<Vec<Polynomial>> {
        self.entries
            .iter()
            .filter(|(l, _)| l.is_none())
            .map(|(_, p)| p.restrict_to(&self.x_ring))
            .collect()
    }

    pub fn extension(&self) -> crate::Result<ExtensionData> {
        let eqs = self.entries.iter().map(|(_, p)| p.clone()).collect();
        ExtensionData::from_lifts(&self.x_ring, self.t_vars.clone(), eqs)
    }
}

fn read(path: &Path) -> Res<InputFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {}", path.display(), e)))?;
    Ok(InputFile::parse(&text)?)
}

fn single(input: &InputFile) -> Res<Polynomial> {
    let gens = input.x_generators()?;
    match gens.as_slice() {
        [f] => Ok(f.clone()),
        _ => Err(Failure::Input(format!("expected exactly one generator, found {}", gens.len()))),
    }
}

fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p.to_string())).collect())
}

fn sparse(v: &SparseVec) -> Value {
    Value::Array(v.iter().map(|(i, c)| json!([i, c.to_string()])).collect())
}

fn normal_module(file: &Path, twist: i64, config: &GroebnerConfig) -> Res<Value> {
    let input = read(file)?;
    let ideal = GradedIdeal::new(&input.x_ring, input.x_generators()?)?;
    let nm = NormalModule::new(&ideal, config)?;
    let piece = nm.piece(twist);
    let mut out = json!({
        "ring": input.x_ring.vars(),
        "twist": twist,
        "dim": piece.dim(),
        "basis": piece.basis.iter().map(|g| polys(g)).collect::<Vec<_>>(),
    });
    if twist == -1 {
        out["ks_quotient_dim"] = json!(nm.ks_quotient_dim());
    }
    Ok(out)
}

fn ks(file: &Path, max_order: Option<u32>, config: &GroebnerConfig) -> Res<Value> {
    let e = read(file)?.extension()?;
    let r = ks_report(&e, max_order, config)?;
    let layers: Vec<Value> = r
        .layers
        .iter()
        .map(|l| {
            json!({
                "order": l.order,
                "piece_dim": l.piece_dim,
                "rank": l.rank,
                "surjective": l.is_surjective(),
                "domain": l.domain,
                "kernel": l.kernel,
            })
        })
        .collect();
    Ok(json!({
        "steps": r.steps,
        "quotient_dim": r.quotient_dim,
        "rank": r.rank,
        "corank": r.corank(),
        "kernel_dim": r.kernel_dim(),
        "classes": r.classes.iter().map(sparse).collect::<Vec<_>>(),
        "layers": layers,
        "verdict": format!("{:?}", r.verdict),
        "transcript": r.transcript,
        "normalized": polys(&r.normalized.equations()),
    }))
}

fn universal(file: &Path, bound: Option<u32>, config: &GroebnerConfig) -> Res<Value> {
    let input = read(file)?;
    let f = single(&input)?;
    let e = universal_hypersurface_extension(&f, config)?;
    let check = check_extension(&e, bound, config)?;
    Ok(json!({
        "steps": e.steps(),
        "t_vars": e.t_vars(),
        "equations": polys(&e.equations()),
        "listing": e.to_string(),
        "check": {
            "passed": check.passed,
            "section_matches": check.section_matches,
            "bound": check.bound,
            "first_failure": check.first_failure,
        },
    }))
}

fn matching(left: &Path, right: &Path, heuristic: bool, config: &GroebnerConfig) -> Res<Value> {
    let e1 = read(left)?.extension()?;
    let e2 = read(right)?.extension()?;
    let mode = if heuristic { MatchMode::Heuristic } else { MatchMode::Strict };
    let r = match_extensions(&e1, &e2, mode, config)?;
    let outcome = match &r.outcome {
        MatchOutcome::Equivalent => json!({ "equivalent": true }),
        MatchOutcome::Distinct { order, index, left, right } => json!({
            "equivalent": false,
            "order": order,
            "index": index,
            "left": left.as_ref().map(sparse),
            "right": right.as_ref().map(sparse),
        }),
    };
    Ok(json!({
        "outcome": outcome,
        "mode": if heuristic { "heuristic" } else { "strict" },
        "heuristic": r.heuristic,
        "twist_minus_two_dim": r.twist_minus_two_dim,
        "transcript": r.transcript,
    }))
}

fn duval(file: &Path, config: &GroebnerConfig) -> Res<Value> {
    let input = read(file)?;
    let to_x = |ps: Vec<Polynomial>| -> crate::Result<Vec<Polynomial>> {
        ps.iter().map(|p| p.restrict_to(&input.x_ring)).collect()
    };
    let x = to_x(input.labelled("X"))?;
    let (e, f) = match (to_x(input.labelled("E"))?.as_slice(), to_x(input.labelled("F"))?.as_slice()) {
        ([e], [f]) => (e.clone(), f.clone()),
        _ => return Err(Failure::Input("expected exactly one `E:` and one `F:` line".into())),
    };
    let xi = GradedIdeal::new(&input.x_ring, x)?;
    let out = duval_extension(&xi, &e, &f, config)?;
    let section = verify_hyperplane_section(&out, config)?;
    Ok(json!({
        "system": polys(&out.system),
        "image_ring": out.image.ring().vars(),
        "image": polys(out.image.generators()),
        "image_dim": out.image_dim,
        "image_degree": out.image_degree,
        "singular_dim": out.singular_dim,
        "singular_at_vertex": out.singular_at_vertex,
        "hyperplane_section": section,
    }))
}

fn gaussian(file: &Path, weight: u32, config: &GroebnerConfig) -> Res<Value> {
    let f = single(&read(file)?)?;
    let g = gaussian_corank_plane_curve(&f, weight, config)?;
    Ok(json!({
        "degree": g.degree,
        "weight": g.weight,
        "source_dim": g.source_dim,
        "target_dim": g.target_dim,
        "model_dim": g.model_dim,
        "rank": g.rank,
        "corank": g.corank,
        "surjective": g.is_surjective(),
        "euler_ok": g.euler_ok,
    }))
}

fn verdict_json(v: &Verdict) -> Value {
    let mut out = serde_json::to_value(v).expect("verdicts serialize");
    out["lies_on_calabi_yau"] = json!(v.lies_on_calabi_yau());
    out
}

fn classify_case(case: &ClassifyCase) -> Res<Value> {
    let (kind, v) = match case {
        ClassifyCase::Hypersurface { n, d } => ("hypersurface", classify::classify_hypersurface(*n, *d)),
        ClassifyCase::Ci { n, r, degrees } => ("ci", classify::classify_complete_intersection(*n, degrees, *r)?),
        ClassifyCase::Ruled { n, p, q } => ("ruled", classify::classify_ruled_curve(*n, *p, *q)),
        ClassifyCase::Bielliptic { g } => ("bielliptic", classify::classify_bielliptic(*g)),
        ClassifyCase::Plane { d } => ("plane", classify::classify_plane_curve(*d)),
    };
    let mut out = verdict_json(&v);
    out["case"] = json!(kind);
    Ok(out)
}

fn bielliptic(file: &Path) -> Res<Value> {
    let e = read(file)?.extension()?;
    let b = bielliptic_normalize(&e)?;
    Ok(json!({
        "is_cone": b.is_cone,
        "vertex": e.x_ring().vars()[b.vertex],
        "alpha": b.alpha.to_string(),
        "beta": b.beta.to_string(),
        "reduced_beta": b.reduced_beta.to_string(),
        "normalized": polys(&b.normalized.equations()),
        "transcript": b.transcript,
    }))
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("json") + "\n",
        Format::Human => {
            let mut out = String::new();
            if let Value::Object(map) = report {
                human(map, 0, &mut out);
            }
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => {
            Some(format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn human(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        if let Some(s) = scalar(v) {
            let _ = writeln!(out, "{}{}: {}", pad, k, s);
            continue;
        }
        let _ = writeln!(out, "{}{}:", pad, k);
        match v {
            Value::Object(m) => human(m, depth + 1, out),
            Value::String(s) => {
                for line in s.lines() {
                    let _ = writeln!(out, "{}  {}", pad, line);
                }
            }
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(m) => {
                            let _ = writeln!(out, "{}  -", pad);
                            human(m, depth + 2, out);
                        }
                        other => {
                            let s = scalar(other).unwrap_or_else(|| other.to_string());
                            let _ = writeln!(out, "{}  - {}", pad, s);
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }
}
