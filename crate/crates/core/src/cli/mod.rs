//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computation fails or a verification
//! check exceeds its tolerance, 2 on a usage error. Reports go to stdout,
//! diagnostics to stderr.

mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::algebra::{parse_rational, MultiPoly, PolyJson, Rational};
use crate::elliptic::{
    hecke_z_real, maier_check, monodromy_exponents, sample_branch_point, sample_liouville_point,
    weierstrass_eval, TorusContext,
};
use crate::lame::{assemble_ell, consistency_polys, compute_wn, WnMode};
use crate::premodular::{
    counting, cusp_expansion, cusp_leading_n4, find_zeros, CuspClass, PremodularEvaluator,
    TauRegion,
};
use crate::{Error, Result};

pub use verify::{Stop, Suite, Verifier};

type C = Complex64;

#[derive(Debug, Parser)]
#[command(name = "premodular", version, about = "Pre-modular polynomials of the Lamé curve")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Number of q-series terms (default: enough for ~18 digits at the given tau).
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the minimal polynomial W_n(z).
    EmitWn {
        #[arg(long)]
        n: u32,
        /// Full symbolic resultant, or verification of the tabulated W_n at
        /// seeded specializations (default: full for n <= 3).
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Number of specializations in the specialized mode.
        #[arg(long, default_value_t = 25)]
        draws: usize,
    },
    /// Print the spectral polynomial l_n(B).
    EmitEll {
        #[arg(long)]
        n: u32,
    },
    /// Print the compatibility polynomials F1, F0 (and G1, G0 = F / alpha^2).
    EmitConsistency {
        #[arg(long)]
        n: u32,
    },
    /// Evaluate wp, zeta, the Hecke function Z or Z_n at one point.
    Eval {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: C,
        /// `re,im` of z for wp and zeta; real coordinates `r,s` of
        /// z = r + s tau for Z and Zn.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        z: (f64, f64),
        /// n for `--what zn`.
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Build the point of the Liouville curve over B and report its data.
    SamplePoint {
        #[arg(long)]
        n: u32,
        #[arg(long = "B", value_parser = parse_complex, allow_hyphen_values = true)]
        b: C,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: C,
        /// Accept a branch point (C = 0) and take the best sign pattern.
        #[arg(long)]
        branch: bool,
    },
    /// Locate zeros of tau -> Z_{n; r, s}(tau).
    Zeros {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, value_parser = parse_rational_pair, allow_hyphen_values = true)]
        rs: (Rational, Rational),
        /// `re0,re1,im0,im1` (default -0.6,0.6,0.5,4).
        #[arg(long, value_parser = parse_region, allow_hyphen_values = true)]
        region: Option<TauRegion>,
        /// CSV of zero locations instead of the text report.
        #[arg(long)]
        csv: bool,
    },
    /// Leading term of Z_n at the cusp for sigma = t + s tau.
    Cusp {
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// `0`, `half` or a number.
        #[arg(long, value_parser = parse_cusp_class, allow_hyphen_values = true)]
        s: CuspClass,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Counting table at level N (a single value or a range `a..b`).
    Count {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long = "N", value_parser = parse_level_range)]
        level: (u64, u64),
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Specialized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Wp,
    Zeta,
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "Zn", alias = "zn")]
    Zn,
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok((parse_f64(a)?, parse_f64(b)?)),
        _ => Err(format!("expected `a,b`, got `{s}`")),
    }
}

fn parse_complex(s: &str) -> std::result::Result<C, String> {
    let (re, im) = parse_pair(s)?;
    Ok(C::new(re, im))
}

fn parse_rational_pair(s: &str) -> std::result::Result<(Rational, Rational), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok((
            parse_rational(a.trim()).map_err(|e| e.to_string())?,
            parse_rational(b.trim()).map_err(|e| e.to_string())?,
        )),
        _ => Err(format!("expected `p/q,p/q`, got `{s}`")),
    }
}

fn parse_region(s: &str) -> std::result::Result<TauRegion, String> {
    let v: Vec<f64> = s.split(',').map(parse_f64).collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        [re0, re1, im0, im1] => TauRegion::new(*re0, *re1, *im0, *im1).map_err(|e| e.to_string()),
        _ => Err(format!("expected `re0,re1,im0,im1`, got `{s}`")),
    }
}

fn parse_cusp_class(s: &str) -> std::result::Result<CuspClass, String> {
    match s {
        "half" => Ok(CuspClass::Half),
        _ => Ok(CuspClass::classify(parse_f64(s)?)),
    }
}

fn parse_level_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range `{s}`"));
            }
            Ok((a, b))
        }
        None => {
            let a = num(s)?;
            Ok((a, a))
        }
    }
}

/// `{:.14e}`: 15 significant digits.
fn num(x: f64) -> String {
    format!("{x:.14e}")
}

fn cnum(z: C) -> String {
    format!("{},{}", num(z.re), num(z.im))
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))
}

enum Failure {
    Module(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Module(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Check(name)) => {
            let _ = writeln!(err, "verification failed: {name}");
            1
        }
    }
}

fn context(tau: C, g: &Global) -> Result<TorusContext> {
    match g.trunc {
        Some(m) => TorusContext::with_trunc(tau, m),
        None => TorusContext::new(tau),
    }
}

fn emit_poly(out: &mut dyn Write, json: bool, name: &str, p: &MultiPoly) -> Result<()> {
    if json {
        writeln!(out, "{}", to_json(&PolyJson::from_poly(p))?).map_err(io)
    } else if name.is_empty() {
        writeln!(out, "{p}").map_err(io)
    } else {
        writeln!(out, "{name} = {p}").map_err(io)
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::EmitWn { n, mode, draws } => {
            let mode = match mode.unwrap_or(if *n <= 3 { Mode::Full } else { Mode::Specialized }) {
                Mode::Full => WnMode::Full,
                Mode::Specialized => WnMode::Specialized {
                    draws: *draws,
                    seed: g.seed,
                },
            };
            let report = compute_wn(*n, mode)?;
            emit_poly(out, g.json, "", &report.wn)?;
        }
        Command::EmitEll { n } => {
            emit_poly(out, g.json, "", &assemble_ell(*n)?)?;
        }
        Command::EmitConsistency { n } => {
            let p = consistency_polys(*n)?;
            if g.json {
                let v = json!({
                    "n": n,
                    "F1": PolyJson::from_poly(&p.f1),
                    "F0": PolyJson::from_poly(&p.f0),
                    "G1": PolyJson::from_poly(&p.g1),
                    "G0": PolyJson::from_poly(&p.g0),
                });
                writeln!(out, "{}", to_json(&v)?).map_err(io)?;
            } else {
                for (name, q) in [("F1", &p.f1), ("F0", &p.f0), ("G1", &p.g1), ("G0", &p.g0)] {
                    emit_poly(out, false, name, q)?;
                }
            }
        }
        Command::Eval { what, tau, z, n } => {
            let ctx = context(*tau, g)?;
            let value = match what {
                What::Wp => weierstrass_eval(C::new(z.0, z.1), &ctx)?.wp,
                What::Zeta => weierstrass_eval(C::new(z.0, z.1), &ctx)?.zeta,
                What::Z => hecke_z_real(z.0, z.1, &ctx)?,
                What::Zn => PremodularEvaluator::new(*n)?.eval_real(z.0, z.1, &ctx)?.value,
            };
            if g.json {
                let v = json!({"what": format!("{what:?}"), "tau": tau, "z": [z.0, z.1], "value": value});
                writeln!(out, "{}", to_json(&v)?).map_err(io)?;
            } else {
                writeln!(out, "{}", cnum(value)).map_err(io)?;
            }
        }
        Command::SamplePoint { n, b, tau, branch } => {
            let ctx = context(*tau, g)?;
            let pt = if *branch {
                sample_branch_point(*n, *b, &ctx)?
            } else {
                sample_liouville_point(*n, *b, &ctx)?
            };
            let (mr, ms) = monodromy_exponents(&pt, &ctx);
            let maier = maier_check(&pt, &ctx).ok();
            let wn = PremodularEvaluator::new(*n)
                .and_then(|ev| ev.eval_at_point(&pt, &ctx))
                .ok();
            if g.json {
                let v = json!({
                    "n": n,
                    "tau": tau,
                    "B": pt.b,
                    "C": pt.c,
                    "a": pt.a,
                    "sigma": pt.sigma_full,
                    "sigma_rs": [pt.sigma.r, pt.sigma.s],
                    "z_n": pt.zn,
                    "monodromy": [mr, ms],
                    "residuals": pt.residuals,
                    "b_residual": pt.b_residual,
                    "ell_residual": pt.ell_residual,
                    "c_spread": pt.c_spread,
                    "maier": maier.as_ref().map(|m| json!({
                        "x0_error": m.x0_error,
                        "y0_error": m.y0_error,
                        "x0_spread": m.x0_spread,
                        "kappa_error": m.kappa_error,
                    })),
                    "wn_normalized": wn.map(|w| w.normalized()),
                });
                writeln!(out, "{}", to_json(&v)?).map_err(io)?;
            } else {
                let mut lines = vec![
                    format!("n            {n}"),
                    format!("tau          {}", cnum(*tau)),
                    format!("B            {}", cnum(pt.b)),
                    format!("C            {}", cnum(pt.c)),
                ];
                for (i, a) in pt.a.iter().enumerate() {
                    lines.push(format!("a_{:<10} {}", i + 1, cnum(*a)));
                }
                lines.push(format!("sigma        {}", cnum(pt.sigma_full)));
                lines.push(format!("sigma (r,s)  {},{}", num(pt.sigma.r), num(pt.sigma.s)));
                lines.push(format!("z_n          {}", cnum(pt.zn)));
                lines.push(format!("monodromy r  {}", cnum(mr)));
                lines.push(format!("monodromy s  {}", cnum(ms)));
                lines.push(format!("zero-set residual {}", num(pt.max_residual())));
                lines.push(format!("B residual   {}", num(pt.b_residual)));
                lines.push(format!("C^2 residual {}", num(pt.ell_residual)));
                if let Some(m) = &maier {
                    lines.push(format!("x0 error     {}", num(m.x0_error)));
                    lines.push(format!("y0 error     {}", num(m.y0_error)));
                    lines.push(format!("x0 spread    {}", num(m.x0_spread)));
                    lines.push(format!("kappa error  {}", num(m.kappa_error)));
                }
                if let Some(w) = wn {
                    lines.push(format!("|W_n(z_n)|   {}", num(w.normalized())));
                }
                for l in lines {
                    writeln!(out, "{l}").map_err(io)?;
                }
            }
        }
        Command::Zeros { n, rs, region, csv } => {
            let ev = PremodularEvaluator::new(*n)?;
            let region = region.unwrap_or_else(TauRegion::default_search);
            let search = find_zeros(&ev, &rs.0, &rs.1, region)?;
            if g.json {
                writeln!(out, "{}", to_json(&search)?).map_err(io)?;
            } else if *csv {
                writeln!(out, "r,s,re_tau,im_tau,residual,winding").map_err(io)?;
                for z in &search.zeros {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        z.r,
                        z.s,
                        cnum(z.tau),
                        num(z.residual),
                        z.winding
                    )
                    .map_err(io)?;
                }
            } else {
                let s = &search.scanned;
                writeln!(out, "n {n}  (r, s) = ({}, {})", rs.0, rs.1).map_err(io)?;
                writeln!(
                    out,
                    "scanned Re tau in [{}, {}], Im tau in [{}, {}]",
                    s.re0, s.re1, s.im0, s.im1
                )
                .map_err(io)?;
                match search.total_winding {
                    Some(w) => writeln!(out, "boundary winding {w}"),
                    None => writeln!(out, "boundary winding unavailable"),
                }
                .map_err(io)?;
                for z in &search.zeros {
                    writeln!(
                        out,
                        "zero tau {}  residual {}  |dZ/dtau| {}  winding {}",
                        cnum(z.tau),
                        num(z.residual),
                        num(z.derivative),
                        z.winding
                    )
                    .map_err(io)?;
                }
                for u in &search.unresolved {
                    let r = &u.region;
                    writeln!(
                        out,
                        "unresolved [{}, {}] x [{}, {}]: {}",
                        r.re0, r.re1, r.im0, r.im1, u.reason
                    )
                    .map_err(io)?;
                }
            }
        }
        Command::Cusp { n, s, t } => {
            let ev = PremodularEvaluator::new(*n)?;
            let e = cusp_expansion(&ev, *s, *t)?;
            let closed = (*n == 4).then(|| cusp_leading_n4(*s, *t));
            if g.json {
                let v = json!({
                    "expansion": e,
                    "closed_form": closed.map(|(o, c)| json!({"order": o, "coefficient": c})),
                });
                writeln!(out, "{}", to_json(&v)?).map_err(io)?;
            } else {
                writeln!(out, "class        {s:?}").map_err(io)?;
                writeln!(out, "t            {}", num(*t)).map_err(io)?;
                writeln!(out, "order        {}", e.order).map_err(io)?;
                writeln!(out, "coefficient  {}", cnum(e.coefficient)).map_err(io)?;
                if let Some((o, c)) = closed {
                    let rel = (e.coefficient - c).norm() / c.abs();
                    writeln!(out, "closed form  order {o}, coefficient {}", num(c)).map_err(io)?;
                    writeln!(out, "relative difference {}", num(rel)).map_err(io)?;
                }
            }
        }
        Command::Count { n, level } => {
            let reports = (level.0..=level.1)
                .map(|big_n| counting(*n, big_n))
                .collect::<Result<Vec<_>>>()?;
            if g.json {
                writeln!(out, "{}", to_json(&reports)?).map_err(io)?;
            } else {
                writeln!(out, "{}", verify::count_header()).map_err(io)?;
                for r in &reports {
                    writeln!(out, "{}", verify::count_row(r)).map_err(io)?;
                }
                for r in reports.iter().filter(|r| r.epsilon == 1) {
                    writeln!(
                        out,
                        "note: N = {} includes 2/3 epsilon; without it U4 = {} is not an integer",
                        r.level, r.u4_without_epsilon
                    )
                    .map_err(io)?;
                }
            }
        }
        Command::Verify { suite } => {
            let mut v = Verifier::new(out, g.json, g.seed);
            match v.run(*suite) {
                Ok(()) => {
                    let passed = v.passed;
                    if !g.json {
                        writeln!(out, "all {passed} checks passed").map_err(io)?;
                    }
                }
                Err(Stop::Failed(name)) => return Err(Failure::Check(name)),
                Err(Stop::Error(e)) => return Err(Failure::Module(e)),
            }
        }
    }
    Ok(())
}
