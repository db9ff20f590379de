//! The command-line surface. Machine output is JSON on standard output;
//! tables for humans go to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::catalog::{build_family, Construction, FamilySpec};
use crate::exactcore::{parse_polynomial, MultiPoly};
use crate::geometry::{LineP4, ProjPoint};
use crate::probes::{
    classify, f2_rank, lines_through_point, mu_from_points, mubar, nu, quadric_bundle_probe, reduced_at_line,
    sigma_degree, sing_locus_plane_count, singular_points_on_line, ComponentsHint, ProbeReport,
};
use crate::solve::{Arith, Lcg, PlaneOptions};
use crate::suite::{format_table, run_suite, skew_pair, SuiteConfig};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROBE_ERROR: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hyperlines", version, about = "Exact line geometry of hypersurfaces in P^4")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one measurement on an equation or a catalog family file.
    Probe {
        kind: ProbeKind,
        #[command(flatten)]
        args: ProbeArgs,
    },
    /// Build catalog families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Classify a probe report.
    Classify { report: PathBuf },
    /// Run the regression suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        filter: Option<String>,
        /// Replacement equation for the example41 fixture.
        #[arg(long)]
        eq: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    #[value(name = "mu")]
    Mu,
    #[value(name = "lines-at")]
    LinesAt,
    #[value(name = "reduced")]
    Reduced,
    #[value(name = "sing-on-line")]
    SingOnLine,
    #[value(name = "mubar")]
    Mubar,
    #[value(name = "sigma-deg")]
    SigmaDeg,
    #[value(name = "f2-rank")]
    F2Rank,
    #[value(name = "sing-locus")]
    SingLocus,
    #[value(name = "nu")]
    Nu,
    #[value(name = "quadric-bundle")]
    QuadricBundle,
    /// Every probe that applies to the input.
    #[value(name = "all")]
    All,
}

impl ProbeKind {
    fn name(self) -> &'static str {
        match self {
            ProbeKind::Mu => "mu",
            ProbeKind::LinesAt => "lines-at",
            ProbeKind::Reduced => "reduced",
            ProbeKind::SingOnLine => "sing-on-line",
            ProbeKind::Mubar => "mubar",
            ProbeKind::SigmaDeg => "sigma-deg",
            ProbeKind::F2Rank => "f2-rank",
            ProbeKind::SingLocus => "sing-locus",
            ProbeKind::Nu => "nu",
            ProbeKind::QuadricBundle => "quadric-bundle",
            ProbeKind::All => "all",
        }
    }
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Equation text in x0..x4 or y1..y4, or a catalog family JSON file.
    #[arg(long)]
    pub eq: PathBuf,
    /// A point `a,b,c,d,e`.
    #[arg(long)]
    pub point: Option<String>,
    /// A line `p1;p2`; give twice for mubar.
    #[arg(long)]
    pub line: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 7)]
    pub trials: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Build a family and write its JSON description.
    Build {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An equation, possibly with the catalog family it came from.
pub struct Input {
    pub eq: MultiPoly,
    pub family: Option<FamilySpec>,
}

pub fn load_input(path: &PathBuf) -> Result<Input, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let spec: FamilySpec = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("bad family file: {e}")))?;
        return Ok(Input { eq: spec.implicit_eq.clone(), family: Some(spec) });
    }
    let eq = parse_polynomial(text.trim())?;
    if eq.is_zero() || !eq.is_homogeneous() {
        return Err(Error::Invalid("the equation must be a nonzero form".into()));
    }
    Ok(Input { eq, family: None })
}

/// `a,b,...;c,d,...` with normalized coordinates.
pub fn line_key(l: &LineP4) -> String {
    let p = |q: &ProjPoint| q.normalized().coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    format!("{};{}", p(&l.span[0]), p(&l.span[1]))
}

fn point_arg(args: &ProbeArgs, input: &Input) -> Result<ProjPoint, Error> {
    match (&args.point, &input.family) {
        (Some(p), _) => ProjPoint::parse(p),
        (None, Some(f)) => Ok(f.sample_points(1, args.seed)?.remove(0)),
        (None, None) => Err(Error::Invalid("--point is required for a raw equation".into())),
    }
}

fn lines_arg(args: &ProbeArgs, input: &Input) -> Result<Vec<LineP4>, Error> {
    if !args.line.is_empty() {
        return args.line.iter().map(|l| LineP4::parse(l)).collect();
    }
    match &input.family {
        Some(f) if !f.known_lines.is_empty() => Ok(f.known_lines.clone()),
        _ => Err(Error::Invalid("--line is required".into())),
    }
}

fn mu_probe(args: &ProbeArgs, input: &Input, report: &mut ProbeReport) -> Result<Value, Error> {
    if args.trials < 5 {
        return Err(Error::Invalid("at least 5 trials are needed".into()));
    }
    let points = match &input.family {
        Some(f) => f.sample_points(args.trials, args.seed)?,
        None => {
            // Raw input: cubics through a given rational line only.
            if input.eq.total_degree() != Some(3) || args.line.is_empty() {
                return Err(Error::InsufficientRationalData);
            }
            let line = LineP4::parse(&args.line[0])?;
            let c = Construction::CubicWithLine { line };
            let mut rng = Lcg::new(args.seed);
            (0..args.trials)
                .map(|_| ProjPoint::new(c.sample(Some(&input.eq), &mut rng)?))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let est = mu_from_points(&input.eq, &points, args.seed, Arith::Modular)?;
    report.mu = Some(est.mu);
    report.mu_samples = est.samples;
    Ok(json!({ "mu": est.mu }))
}

fn run_probe(kind: ProbeKind, args: &ProbeArgs, input: &Input, report: &mut ProbeReport) -> Result<Value, Error> {
    let g = &input.eq;
    let seed = args.seed;
    Ok(match kind {
        ProbeKind::Mu => mu_probe(args, input, report)?,
        ProbeKind::LinesAt => {
            let p = point_arg(args, input)?;
            let fan = lines_through_point(g, &p, seed, PlaneOptions::default())?;
            let mut v = serde_json::to_value(&fan).unwrap();
            v["total"] = json!(fan.bezout_total);
            v["point"] = json!(p.normalized());
            v
        }
        ProbeKind::Reduced => {
            let mut out = Vec::new();
            for l in lines_arg(args, input)? {
                let red = reduced_at_line(g, &l)?;
                report.reduced.insert(line_key(&l), red.reduced);
                out.push(json!({ "line": line_key(&l), "reduced": red.reduced, "length": red.length,
                    "point": red.point.normalized(), "fan_point": red.fan_point }));
            }
            Value::Array(out)
        }
        ProbeKind::SingOnLine => {
            let mut out = Vec::new();
            for l in lines_arg(args, input)? {
                let s = singular_points_on_line(g, &l)?;
                report.sing_on_line.insert(line_key(&l), s);
                out.push(json!({ "line": line_key(&l), "length": s, "in_singular_locus": s.is_none() }));
            }
            Value::Array(out)
        }
        ProbeKind::Mubar => {
            let (a, b) = if args.line.len() >= 2 {
                (LineP4::parse(&args.line[0])?, LineP4::parse(&args.line[1])?)
            } else if let Some(f) = &input.family {
                skew_pair(f).ok_or(Error::LinesNotSkew)?
            } else {
                return Err(Error::Invalid("mubar needs two --line arguments".into()));
            };
            let m = mubar(g, &a, &b, seed, Arith::Modular)?;
            report.mubar = Some(m);
            json!({ "mubar": m, "lines": [line_key(&a), line_key(&b)] })
        }
        ProbeKind::SigmaDeg => {
            let l = lines_arg(args, input)?.remove(0);
            let s = sigma_degree(g, &l, seed, Arith::Modular)?;
            report.sigma_deg = Some(s);
            json!({ "sigma_deg": s, "line": line_key(&l) })
        }
        ProbeKind::F2Rank => {
            let p = point_arg(args, input)?;
            let r = f2_rank(g, &p)?;
            report.f2_rank = Some(r);
            json!({ "f2_rank": r, "point": p.normalized() })
        }
        ProbeKind::SingLocus => {
            let c = sing_locus_plane_count(g, seed, Arith::Modular)?;
            report.sing_locus_plane_count = Some(c);
            json!({ "sing_locus_plane_count": c })
        }
        ProbeKind::Nu => {
            let v = nu(g, seed, Arith::Modular)?;
            report.nu = Some(v);
            json!({ "nu": v })
        }
        ProbeKind::QuadricBundle => {
            let l = lines_arg(args, input)?.remove(0);
            let q = quadric_bundle_probe(g, &l, seed)?;
            json!({ "quadric_bundle": q, "line": line_key(&l) })
        }
        ProbeKind::All => {
            let mut out = Map::new();
            let mut skipped = Map::new();
            let n = report.n;
            let kinds = [
                ProbeKind::Mu,
                ProbeKind::F2Rank,
                ProbeKind::Reduced,
                ProbeKind::SingOnLine,
                ProbeKind::Mubar,
                ProbeKind::SigmaDeg,
                ProbeKind::SingLocus,
                ProbeKind::Nu,
            ];
            for k in kinds {
                let applies = match k {
                    ProbeKind::Mubar | ProbeKind::SigmaDeg => n >= 4,
                    // Lines on surfaces of degree 4 and more are costly and
                    // only the cubic relation is used.
                    ProbeKind::Nu => n == 3,
                    _ => true,
                };
                if !applies {
                    continue;
                }
                match run_probe(k, args, input, report) {
                    Ok(v) => {
                        out.insert(k.name().to_string(), v);
                    }
                    Err(e) => {
                        skipped.insert(k.name().to_string(), json!(e.to_string()));
                    }
                }
            }
            out.insert("skipped".into(), Value::Object(skipped));
            Value::Object(out)
        }
    })
}

fn envelope(command: &str, seed: Option<u64>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    if let Some(s) = seed {
        m.insert("seed".into(), json!(s));
    }
    m
}

fn merge(m: &mut Map<String, Value>, v: impl Serialize) {
    if let Value::Object(o) = serde_json::to_value(v).unwrap() {
        m.extend(o);
    }
}

fn error_json(mut m: Map<String, Value>, e: &Error) -> Map<String, Value> {
    m.insert("error".into(), json!(e.to_string()));
    m.insert("error_kind".into(), json!(format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("").to_string()));
    m
}

fn emit(out: &mut dyn Write, m: &Map<String, Value>, path: Option<&PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(m).unwrap() + "\n";
    if let Some(p) = path {
        std::fs::write(p, &text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", p.display())))?;
    }
    out.write_all(text.as_bytes()).map_err(|e| Error::Invalid(e.to_string()))
}

/// Parse arguments and run; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            let mut m = envelope("usage", None);
            m.insert("error".into(), json!(e.kind().to_string()));
            let _ = emit(out, &m, None);
            return EXIT_PROBE_ERROR;
        }
    };
    match cli.command {
        Command::Probe { kind, args } => {
            let command = format!("probe {}", kind.name());
            let base = envelope(&command, Some(args.seed));
            let result = load_input(&args.eq).and_then(|input| {
                let mut report = ProbeReport::new(input.eq.total_degree().unwrap_or(0), args.seed);
                if let Some(f) = &input.family {
                    report.components_hint = ComponentsHint::Known(f.expected.components);
                }
                let value = run_probe(kind, &args, &input, &mut report)?;
                report.case = classify(&report).case;
                Ok((report, value))
            });
            match result {
                Ok((report, value)) => {
                    let mut m = base;
                    merge(&mut m, &report);
                    m.insert("result".into(), value);
                    let _ = writeln!(err, "{command}: {}", m["result"]);
                    finish(out, err, &m, args.out.as_ref(), EXIT_OK)
                }
                Err(e) => finish(out, err, &error_json(base, &e), None, EXIT_PROBE_ERROR),
            }
        }
        Command::Catalog { action: CatalogAction::Build { name, seed, out: path } } => {
            let base = envelope("catalog build", Some(seed));
            match build_family(&name, seed) {
                Ok(spec) => {
                    let _ = writeln!(
                        err,
                        "{name}: degree {} with {} known lines",
                        spec.implicit_eq.total_degree().unwrap_or(0),
                        spec.known_lines.len()
                    );
                    // The file is the bare family description, readable by `--eq`.
                    if let Some(p) = &path {
                        let text = serde_json::to_string_pretty(&spec).unwrap() + "\n";
                        if let Err(e) = std::fs::write(p, text) {
                            let e = Error::Invalid(format!("cannot write {}: {e}", p.display()));
                            return finish(out, err, &error_json(base, &e), None, EXIT_PROBE_ERROR);
                        }
                    }
                    let mut m = base;
                    merge(&mut m, &spec);
                    finish(out, err, &m, None, EXIT_OK)
                }
                Err(e) => finish(out, err, &error_json(base, &e), None, EXIT_PROBE_ERROR),
            }
        }
        Command::Classify { report } => {
            let base = envelope("classify", None);
            let parsed = std::fs::read_to_string(&report)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", report.display())))
                .and_then(|t| {
                    serde_json::from_str::<ProbeReport>(&t).map_err(|e| Error::Invalid(format!("bad report: {e}")))
                });
            match parsed {
                Ok(r) => {
                    let c = classify(&r);
                    let mut m = base;
                    m.insert("seed".into(), json!(r.seed));
                    merge(&mut m, &c);
                    m.insert("bound_violations".into(), json!(r.bound_violations()));
                    let _ = writeln!(err, "case: {}", c.case);
                    finish(out, err, &m, None, EXIT_OK)
                }
                Err(e) => finish(out, err, &error_json(base, &e), None, EXIT_PROBE_ERROR),
            }
        }
        Command::Verify { seed, filter, eq, out: path } => {
            let base = envelope("verify", Some(seed));
            let mut cfg = SuiteConfig::new(seed);
            cfg.filter = filter;
            if let Some(p) = eq {
                match std::fs::read_to_string(&p) {
                    Ok(t) => cfg.example41 = t.trim().to_string(),
                    Err(e) => {
                        let e = Error::Invalid(format!("cannot read {}: {e}", p.display()));
                        return finish(out, err, &error_json(base, &e), None, EXIT_PROBE_ERROR);
                    }
                }
            }
            let report = run_suite(&cfg);
            let _ = write!(err, "{}", format_table(&report));
            let mut m = base;
            merge(&mut m, &report);
            let code = if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            finish(out, err, &m, path.as_ref(), code)
        }
    }
}

fn finish(out: &mut dyn Write, err: &mut dyn Write, m: &Map<String, Value>, path: Option<&PathBuf>, code: i32) -> i32 {
    if let Some(e) = m.get("error") {
        let _ = writeln!(err, "error: {}", e.as_str().unwrap_or_default());
    }
    match emit(out, m, path) {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_PROBE_ERROR
        }
    }
}
