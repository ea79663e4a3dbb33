mod check;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::Value;

use dakl::cartan::CartanConfig;
use dakl::deodhar::Coxeter;
use dakl::klpoly::{classical_kl, double_affine_p, involution_row, PStatus, PTable};
use dakl::order::{decreasing_chains, interval, parabolic_quotient_interval};
use dakl::paths::{iwahori_paths, iwahori_spherical_paths, spherical_paths, PathSet};
use dakl::{CartanData, Error, LaurentPoly, RootSystem, Window};

use parse::{parse_coweight, parse_element};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "dakl", version, about = "Double affine Bruhat intervals, Hecke paths and Kazhdan-Lusztig polynomials")]
struct Cli {
    /// JSON config file: {"cartan": {"type": "A", "rank": 1} | {"matrix": [[2,-2],[-2,2]]}, "window": {"d": 6, "m": 6, "h": 40}}.
    #[arg(long, global = true, env = "DAKL_CONFIG")]
    config: Option<PathBuf>,
    /// Cartan type letter (A, D or E); overrides the config file.
    #[arg(long = "type", global = true, env = "DAKL_TYPE")]
    kind: Option<String>,
    #[arg(long, global = true, env = "DAKL_RANK")]
    rank: Option<usize>,
    /// Cartan matrix as JSON rows; overrides --type and --rank.
    #[arg(long, global = true, env = "DAKL_MATRIX")]
    matrix: Option<String>,
    /// Enumeration window as D,M,H.
    #[arg(long, global = true, env = "DAKL_WINDOW")]
    window: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Evaluate every polynomial at this integer q ≥ 2 when printing.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(2..))]
    q: Option<i64>,
    /// ASCII labels in text and DOT output.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bruhat interval [v, x] with its Hasse diagram.
    Interval {
        v: String,
        x: String,
        /// Restrict to minimal representatives modulo the finite Weyl group.
        #[arg(long)]
        parabolic: bool,
    },
    /// Decreasing chains from `top` down to the minimal representative of `endpoint`.
    Chains { top: String, endpoint: String },
    /// Hecke paths of a shape ending at an endpoint (coweights, or elements for iwahori).
    HeckePaths {
        #[arg(value_enum)]
        flavor: Flavor,
        shape: String,
        endpoint: String,
    },
    /// R-polynomial summed over Hecke paths.
    Rpoly {
        #[arg(value_enum)]
        flavor: Flavor,
        shape: String,
        endpoint: String,
    },
    /// Double affine Kazhdan-Lusztig table on the interval [v, x].
    Ppoly { v: String, x: String },
    /// Truncated row of the bar involution at `x`, within the interval [floor, ceiling].
    InvolutionRow { x: String, floor: String, ceiling: String },
    /// R-polynomials of a finite or affine Weyl group up to a length.
    ClassicalR {
        kind: String,
        rank: usize,
        #[arg(long)]
        affine: bool,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Kazhdan-Lusztig polynomials of a finite or affine Weyl group up to a length.
    ClassicalKl {
        kind: String,
        rank: usize,
        #[arg(long)]
        affine: bool,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Runs the invariant suite and prints one line per invariant.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    Spherical,
    IwahoriSpherical,
    Iwahori,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    cartan: Option<CartanConfig>,
    window: Option<Window>,
}

struct Ctx {
    rs: RootSystem,
    window: Window,
    format: Format,
    q: Option<i64>,
    ascii: bool,
}

/// Failure of a command: library error, or computed data that is not a full success.
enum Failure {
    Lib(Error),
    Incomplete(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(cli: &Cli) -> Result<Ctx, Error> {
    let file: ConfigFile = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
        }
        None => ConfigFile::default(),
    };
    let cartan = if let Some(m) = &cli.matrix {
        let matrix: Vec<Vec<i64>> = serde_json::from_str(m).map_err(|e| Error::Config(format!("--matrix: {e}")))?;
        CartanData::from_matrix(matrix, "custom".into())?
    } else if cli.kind.is_some() || cli.rank.is_some() {
        CartanData::of_type(cli.kind.as_deref().unwrap_or("A"), cli.rank.unwrap_or(1))?
    } else if let Some(c) = &file.cartan {
        CartanData::from_config(c)?
    } else {
        CartanData::a1()
    };
    let window = match &cli.window {
        Some(s) => {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            let bad = || Error::Config(format!("--window expects D,M,H, got '{s}'"));
            if parts.len() != 3 {
                return Err(bad());
            }
            Window::new(
                parts[0].parse().map_err(|_| bad())?,
                parts[1].parse().map_err(|_| bad())?,
                parts[2].parse().map_err(|_| bad())?,
            )?
        }
        None => match file.window {
            Some(w) => Window::new(w.d, w.m, w.h)?,
            None => Window::default(),
        },
    };
    Ok(Ctx {
        rs: RootSystem::new(cartan),
        window,
        format: cli.format,
        q: cli.q,
        ascii: cli.ascii,
    })
}

fn fmt_value(p: &LaurentPoly, q: i64) -> String {
    let (n, d) = p.eval(q);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn fmt_poly(ctx: &Ctx, p: &LaurentPoly) -> String {
    match ctx.q {
        Some(q) => fmt_value(p, q),
        None => p.to_string(),
    }
}

/// Adds `"value"` beside every encoded polynomial when a specialization is requested.
fn specialize(v: &mut Value, q: Option<i64>) {
    let Some(q) = q else { return };
    match v {
        Value::Object(m) => {
            if m.get("var") == Some(&Value::from("q")) && m.contains_key("terms") {
                if let Ok(p) = serde_json::from_value::<LaurentPoly>(Value::Object(m.clone())) {
                    let (n, d) = p.eval(q);
                    let val = match i64::try_from(n) {
                        Ok(n) if d == 1 => Value::from(n),
                        _ => Value::from(format!("{n}/{d}")),
                    };
                    m.insert("value".into(), val);
                    m.insert("at".into(), Value::from(q));
                }
                return;
            }
            for x in m.values_mut() {
                specialize(x, Some(q));
            }
        }
        Value::Array(a) => {
            for x in a {
                specialize(x, Some(q));
            }
        }
        _ => {}
    }
}

fn json(ctx: &Ctx, mut v: Value) -> String {
    specialize(&mut v, ctx.q);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_dot(ctx: &Ctx, what: &str) -> Result<(), Error> {
    if ctx.format == Format::Dot {
        return Err(Error::Config(format!("DOT output is only available for interval, not {what}")));
    }
    Ok(())
}

fn cmd_interval(ctx: &Ctx, v: &str, x: &str, parabolic: bool) -> Result<String, Failure> {
    let rs = &ctx.rs;
    let (v, x) = (parse_element(rs, v)?, parse_element(rs, x)?);
    let iv = if parabolic {
        parabolic_quotient_interval(rs, &v, &x, ctx.window)?
    } else {
        interval(rs, &v, &x, ctx.window)?
    };
    Ok(match ctx.format {
        Format::Dot => iv.to_dot(rs, ctx.ascii),
        Format::Json => {
            let mut j = iv.to_json(rs, true);
            j["graded"] = Value::from(iv.is_graded());
            json(ctx, j)
        }
        Format::Text => {
            let mut s = format!("{} elements, {} covers, graded: {}\n", iv.len(), iv.hasse.len(), iv.is_graded());
            let mut idx: Vec<usize> = (0..iv.len()).collect();
            idx.sort_by_key(|&i| (iv.lengths[i], rs.fmt_elt(&iv.elements[i], true)));
            for i in idx {
                s.push_str(&format!("  ℓ = {:>3}  {}\n", iv.lengths[i], rs.fmt_elt(&iv.elements[i], ctx.ascii)));
            }
            for &(a, b) in &iv.hasse {
                s.push_str(&format!(
                    "  {} < {}\n",
                    rs.fmt_elt(&iv.elements[a], ctx.ascii),
                    rs.fmt_elt(&iv.elements[b], ctx.ascii)
                ));
            }
            s
        }
    })
}

fn cmd_chains(ctx: &Ctx, top: &str, endpoint: &str) -> Result<String, Failure> {
    no_dot(ctx, "chains")?;
    let rs = &ctx.rs;
    let top = parse_element(rs, top)?;
    let floor = rs.min_coset_rep_mod_weyl(&parse_element(rs, endpoint)?)?;
    let chains = decreasing_chains(rs, &top, &floor, &|z| *z == floor, ctx.window)?;
    Ok(match ctx.format {
        Format::Json => json(
            ctx,
            Value::from(
                chains
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "elements": c.elements.iter().map(|x| rs.fmt_elt(x, true)).collect::<Vec<_>>(),
                            "roots": c.roots.iter().map(|b| rs.fmt_da_root(b, true)).collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>(),
            ),
        ),
        _ => {
            let mut s = format!("{} chains\n", chains.len());
            for (i, c) in chains.iter().enumerate() {
                let roots: Vec<String> = c.roots.iter().map(|b| rs.fmt_da_root(b, ctx.ascii)).collect();
                s.push_str(&format!("  ({}) {}\n", i + 1, roots.join(", ")));
            }
            s
        }
    })
}

fn paths(ctx: &Ctx, flavor: Flavor, shape: &str, endpoint: &str) -> Result<PathSet, Failure> {
    let rs = &ctx.rs;
    Ok(match flavor {
        Flavor::Spherical => spherical_paths(rs, &parse_coweight(rs, shape)?, &parse_coweight(rs, endpoint)?, ctx.window)?,
        Flavor::IwahoriSpherical => {
            iwahori_spherical_paths(rs, &parse_coweight(rs, shape)?, &parse_coweight(rs, endpoint)?, ctx.window)?
        }
        Flavor::Iwahori => iwahori_paths(rs, &parse_element(rs, shape)?, &parse_element(rs, endpoint)?, ctx.window)?,
    })
}

/// `q(q - 1)`-style product with parentheses around multi-term factors.
fn fmt_product(factors: &[LaurentPoly]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    for f in factors {
        if f.terms().count() > 1 {
            s.push_str(&format!("({f})"));
        } else {
            s.push_str(&f.to_string());
        }
    }
    s
}

fn cmd_paths(ctx: &Ctx, flavor: Flavor, shape: &str, endpoint: &str) -> Result<String, Failure> {
    no_dot(ctx, "hecke-paths")?;
    let rs = &ctx.rs;
    let ps = paths(ctx, flavor, shape, endpoint)?;
    Ok(match ctx.format {
        Format::Json => json(ctx, ps.to_json(rs, true)),
        _ => {
            let mut s = format!("{} paths from {} chains\n", ps.paths.len(), ps.chains.len());
            for (i, p) in ps.paths.iter().enumerate() {
                let times: Vec<String> = p.times.iter().map(|t| t.to_string()).collect();
                let dirs: Vec<String> = p.dirs.iter().map(|x| rs.fmt_elt(x, ctx.ascii)).collect();
                let chains: Vec<String> = p.sources.iter().map(|c| (c + 1).to_string()).collect();
                s.push_str(&format!(
                    "  path {}: times [{}], directions [{}], chains [{}], contribution {} = {}\n",
                    i + 1,
                    times.join(", "),
                    dirs.join(", "),
                    chains.join(", "),
                    fmt_product(&p.factors),
                    fmt_poly(ctx, &p.contribution())
                ));
            }
            for (c, why) in &ps.discarded {
                s.push_str(&format!("  chain {} discarded: {why}\n", c + 1));
            }
            s.push_str(&format!("  total {}\n", fmt_poly(ctx, &ps.total())));
            s
        }
    })
}

fn cmd_rpoly(ctx: &Ctx, flavor: Flavor, shape: &str, endpoint: &str) -> Result<String, Failure> {
    no_dot(ctx, "rpoly")?;
    let ps = paths(ctx, flavor, shape, endpoint)?;
    let total = ps.total();
    Ok(match ctx.format {
        Format::Json => json(ctx, serde_json::to_value(&total).expect("polynomials serialize")),
        _ => {
            if let Some(q) = ctx.q {
                format!("{}\n", fmt_value(&total, q))
            } else {
                let parts: Vec<String> = ps.paths.iter().map(|p| fmt_product(&p.factors)).collect();
                if parts.len() > 1 || parts.first().is_some_and(|p| *p != total.to_string()) {
                    format!("{} = {total}\n", parts.join(" + "))
                } else {
                    format!("{total}\n")
                }
            }
        }
    })
}

fn table_text(ctx: &Ctx, tab: &PTable, value: &str) -> String {
    let rs = &ctx.rs;
    let mut s = String::new();
    for (&(v, w), st) in &tab.entries {
        let r = tab.r.get(&(v, w)).map(|r| fmt_poly(ctx, r)).unwrap_or_default();
        let res = match st {
            PStatus::Solved { p } => format!("{value} = {}", fmt_poly(ctx, p)),
            PStatus::PalindromyFailure { candidate, residual } => format!(
                "no solution (candidate {}, residual {})",
                fmt_poly(ctx, candidate),
                fmt_poly(ctx, residual)
            ),
            PStatus::Upstream => "blocked by an unsolved pair above".into(),
        };
        s.push_str(&format!(
            "  {} ≤ {}: R = {r}, {res}\n",
            rs.fmt_elt(&tab.elements[v], ctx.ascii),
            rs.fmt_elt(&tab.elements[w], ctx.ascii)
        ));
    }
    for (v, w, why) in &tab.flagged {
        s.push_str(&format!(
            "  flagged {} ≤ {}: {why}\n",
            rs.fmt_elt(&tab.elements[*v], ctx.ascii),
            rs.fmt_elt(&tab.elements[*w], ctx.ascii)
        ));
    }
    s
}

fn cmd_ppoly(ctx: &Ctx, v: &str, x: &str) -> Result<String, Failure> {
    no_dot(ctx, "ppoly")?;
    let rs = &ctx.rs;
    let tab = double_affine_p(rs, &parse_element(rs, v)?, &parse_element(rs, x)?, ctx.window)?;
    let out = match ctx.format {
        Format::Json => json(ctx, tab.to_json(rs, true)),
        _ => table_text(ctx, &tab, "P"),
    };
    match tab.failures() {
        0 => Ok(out),
        n => {
            print!("{out}");
            Err(Failure::Incomplete(format!("{n} pairs have no solution")))
        }
    }
}

fn cmd_involution(ctx: &Ctx, x: &str, floor: &str, ceiling: &str) -> Result<String, Failure> {
    no_dot(ctx, "involution-row")?;
    let rs = &ctx.rs;
    let row = involution_row(
        rs,
        &parse_element(rs, x)?,
        &parse_element(rs, floor)?,
        &parse_element(rs, ceiling)?,
        ctx.window,
    )?;
    Ok(match ctx.format {
        Format::Json => json(ctx, row.to_json(rs, true)),
        _ => {
            let mut s = format!("TRUNCATED row of {}\n", rs.fmt_elt(&row.top, ctx.ascii));
            for (y, c) in &row.entries {
                s.push_str(&format!("  {}: {}\n", rs.fmt_elt(y, ctx.ascii), fmt_poly(ctx, c)));
            }
            s
        }
    })
}

fn coxeter(kind: &str, rank: usize, affine: bool) -> Result<Coxeter, Error> {
    let c = CartanData::of_type(kind, rank)?;
    Ok(if affine { Coxeter::affine(c) } else { Coxeter::finite(c) })
}

fn cmd_classical_r(ctx: &Ctx, kind: &str, rank: usize, affine: bool, max_len: usize) -> Result<String, Failure> {
    no_dot(ctx, "classical-r")?;
    let cox = coxeter(kind, rank, affine)?;
    let rs = cox.root_system();
    let els = cox.elements_up_to(max_len);
    let mut rows = Vec::new();
    for w in &els {
        for v in &els {
            if cox.leq(v, w) {
                rows.push((v, w, cox.classical_r(v, w)));
            }
        }
    }
    Ok(match ctx.format {
        Format::Json => json(
            ctx,
            Value::from(
                rows.iter()
                    .map(|(v, w, r)| serde_json::json!({"v": rs.fmt_elt(v, true), "w": rs.fmt_elt(w, true), "r": r}))
                    .collect::<Vec<_>>(),
            ),
        ),
        _ => rows
            .iter()
            .map(|(v, w, r)| format!("  R({}, {}) = {}\n", rs.fmt_elt(v, ctx.ascii), rs.fmt_elt(w, ctx.ascii), fmt_poly(ctx, r)))
            .collect(),
    })
}

fn cmd_classical_kl(ctx: &Ctx, kind: &str, rank: usize, affine: bool, max_len: usize) -> Result<String, Failure> {
    no_dot(ctx, "classical-kl")?;
    let cox = coxeter(kind, rank, affine)?;
    let tab = classical_kl(&cox, max_len)?;
    Ok(match ctx.format {
        Format::Json => json(ctx, tab.to_json(cox.root_system(), true)),
        _ => {
            let sub = Ctx {
                rs: cox.root_system().clone(),
                window: ctx.window,
                format: ctx.format,
                q: ctx.q,
                ascii: ctx.ascii,
            };
            table_text(&sub, &tab, "P")
        }
    })
}

fn cmd_check(ctx: &Ctx) -> Result<String, Failure> {
    no_dot(ctx, "check")?;
    let results = check::run_all();
    let failed = results.iter().filter(|r| !r.passed).count();
    let out = match ctx.format {
        Format::Json => json(
            ctx,
            serde_json::json!({
                "executed": results.len(),
                "failed": failed,
                "checks": results.iter().map(|r| serde_json::json!({"name": r.name, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>(),
            }),
        ),
        _ => {
            let mut s = String::new();
            for r in &results {
                s.push_str(&format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail));
            }
            s.push_str(&format!("{} checks executed, {failed} failed\n", results.len()));
            s
        }
    };
    if failed == 0 {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Incomplete(format!("{failed} invariant checks failed")))
    }
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<String, Failure> {
    match cmd {
        Command::Interval { v, x, parabolic } => cmd_interval(ctx, v, x, *parabolic),
        Command::Chains { top, endpoint } => cmd_chains(ctx, top, endpoint),
        Command::HeckePaths { flavor, shape, endpoint } => cmd_paths(ctx, *flavor, shape, endpoint),
        Command::Rpoly { flavor, shape, endpoint } => cmd_rpoly(ctx, *flavor, shape, endpoint),
        Command::Ppoly { v, x } => cmd_ppoly(ctx, v, x),
        Command::InvolutionRow { x, floor, ceiling } => cmd_involution(ctx, x, floor, ceiling),
        Command::ClassicalR { kind, rank, affine, max_len } => cmd_classical_r(ctx, kind, *rank, *affine, *max_len),
        Command::ClassicalKl { kind, rank, affine, max_len } => cmd_classical_kl(ctx, kind, *rank, *affine, *max_len),
        Command::Check => cmd_check(ctx),
    }
}

/// Exit codes: 1 library error, 2 parse or usage error, 3 incomplete result, 4 window too small.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match dispatch(&ctx, &cli.command) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Incomplete(why)) => {
            eprintln!("incomplete: {why}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::StabilizationFailure { window, .. } => {
                    eprintln!("window: D = {}, M = {}, H = {}", window.d, window.m, window.h);
                    ExitCode::from(4)
                }
                Error::Parse { .. } | Error::Config(_) | Error::NotAde(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
