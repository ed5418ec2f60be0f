//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 on success, 1 when a suite check fails or a computation
//! cannot finish, 2 on usage or validation errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;
use surfcob::curve_diagram::*;
use surfcob::curve_ops::{dehn_twist, resolve_double_point, surgery, twist_defect};
use surfcob::floer::{build_complex, default_radius, homology_rank, homology_rank_at_one, mu2, product_radius};
use surfcob::invariants::{class_of, turning_number};
use surfcob::unobstruction::{find_bigons, in_minimal_position, is_unobstructed, Unobstructedness};
use surfcob::{CurveDiagram, Error, GroupWord, SUM_TOL};

use crate::corpus;
use crate::render::{render_svg, RenderOptions};
use crate::suites::{run_suite_with, SuiteOptions};
use crate::{round_json, sig12};

#[derive(Parser, Debug)]
#[command(name = "surfcob", version, about = "Immersed curves on closed surfaces: invariants, surgery and Floer complexes")]
struct Args {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a named curve as JSON: alpha:H, beta:H, gamma:J, word:W,
    /// tight:W, kinked:W, figure-eight:U,V, torus, subsurface:K, circle.
    Curve {
        spec: String,
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 1.0)]
        area: f64,
    },
    /// Cobordism class (holonomy, homology, Maslov residue).
    Invariants { curve: PathBuf },
    /// Unobstructedness verdict with a witness when obstructed.
    Unobstructed { curve: PathBuf },
    /// Whether two curves are in minimal position.
    Minpos { c1: PathBuf, c2: PathBuf },
    /// Surgery of c1 and c2 at their k-th intersection point.
    Surgery {
        c1: PathBuf,
        c2: PathBuf,
        #[arg(long)]
        point: usize,
    },
    /// Smoothing of the k-th double point of a curve.
    Resolve {
        curve: PathBuf,
        #[arg(long)]
        point: usize,
    },
    /// Dehn twist of beta about the embedded curve alpha.
    Twist { alpha: PathBuf, beta: PathBuf },
    /// Floer complex of a pair, optionally with the product into c1, c3.
    Floer {
        c1: PathBuf,
        c2: PathBuf,
        #[arg(long)]
        mu2: Option<PathBuf>,
        /// Initial window radius; defaults to the total crossing count plus 4.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Run a relation suite: moves, classes, holonomy, mcg or floer.
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = SUM_TOL)]
        tolerance: f64,
    },
    /// Draw curves on the polygon as SVG.
    Render {
        curves: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        /// Genus of the empty picture when no curve is given.
        #[arg(long, default_value_t = 2)]
        genus: usize,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::WindowExhausted(_) | Error::WindingResidual(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Res = Result<bool, Failure>;

/// Runs the command line `argv` (including the program name) and returns
/// the exit code.
pub fn cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&args, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn load(path: &Path) -> Result<CurveDiagram, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, mut v: serde_json::Value, round: bool) -> Result<(), Failure> {
    if round {
        round_json(&mut v);
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(|e| Failure::Check(e.to_string()))
}

fn line(out: &mut dyn Write, s: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", s.as_ref()).map_err(|e| Failure::Check(e.to_string()))
}

fn pick(pts: &[IntersectionPoint], k: usize) -> Result<IntersectionPoint, Failure> {
    pts.get(k).copied().ok_or_else(|| Failure::Usage(format!("point {k} out of range: {} points", pts.len())))
}

fn class_json(c: &CurveDiagram) -> Result<serde_json::Value, Failure> {
    let k = class_of(c)?;
    Ok(json!({"hol": k.hol, "h": k.h, "m": k.m, "modulus": k.modulus, "turning": turning_number(c)?}))
}

fn class_line(c: &CurveDiagram) -> Result<String, Failure> {
    let k = class_of(c)?;
    Ok(format!("hol {} h {:?} m {} (mod {})", sig12(k.hol), k.h, k.m, k.modulus))
}

fn named_curve(spec: &str, genus: usize, area: f64) -> Result<CurveDiagram, Failure> {
    let m = std::sync::Arc::new(surfcob::build_surface(genus, area)?);
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let num = || arg.parse::<usize>().map_err(|_| Failure::Usage(format!("{spec}: expected a number after ':'")));
    let word = |s: &str| GroupWord::parse(s).map_err(Failure::from);
    let c = match kind {
        "alpha" => lickorish_alpha(&m, num()?)?,
        "beta" => lickorish_beta(&m, num()?)?,
        "gamma" => lickorish_gamma(&m, num()?)?,
        "word" => from_word(&m, &word(arg)?)?,
        "tight" => tighten(&from_word(&m, &word(arg)?)?),
        "kinked" => kinked(&m, &word(arg)?)?,
        "figure-eight" => {
            let (u, v) = arg.split_once(',').ok_or_else(|| Failure::Usage("figure-eight:U,V".into()))?;
            figure_eight(&m, &word(u)?, &word(v)?)?
        }
        "torus" => torus_boundary(&m),
        "subsurface" => subsurface_boundary(&m, num()?)?,
        "circle" => small_circle(&m),
        _ => return Err(Failure::Usage(format!("unknown curve kind {kind:?}"))),
    };
    Ok(c)
}

fn dispatch(args: &Args, out: &mut dyn Write) -> Res {
    let json = args.json;
    match &args.cmd {
        Cmd::Curve { spec, genus, area } => {
            let c = named_curve(spec, *genus, *area)?;
            emit(out, c.to_json_value(), false)?;
        }
        Cmd::Invariants { curve } => {
            let c = load(curve)?;
            if json {
                emit(out, class_json(&c)?, true)?;
            } else {
                line(out, class_line(&c)?)?;
            }
        }
        Cmd::Unobstructed { curve } => {
            let c = load(curve)?;
            let v = is_unobstructed(&c);
            if json {
                let mut doc = serde_json::to_value(&v).expect("json");
                doc["unobstructed"] = json!(v.is_unobstructed());
                emit(out, doc, true)?;
            } else {
                match &v {
                    Unobstructedness::Unobstructed => line(out, "unobstructed: true")?,
                    Unobstructedness::NotProper => line(out, "unobstructed: false (null-homotopic: the lift is not proper)")?,
                    Unobstructedness::Obstructed(w) => line(
                        out,
                        format!(
                            "unobstructed: false (teardrop at double point {}, chords {} and {}, period shift {})",
                            w.point, w.chords.0, w.chords.1, w.shift
                        ),
                    )?,
                }
            }
        }
        Cmd::Minpos { c1, c2 } => {
            let (a, b) = (load(c1)?, load(c2)?);
            let minimal = in_minimal_position(&a, &b)?;
            let n = intersections(&a, &b)?.len();
            let bigons = find_bigons(&a, &b)?.len();
            if json {
                emit(out, json!({"minimal": minimal, "intersections": n, "bigons": bigons}), false)?;
            } else {
                line(out, format!("minimal position: {minimal} ({n} intersections, {bigons} bigons)"))?;
            }
        }
        Cmd::Surgery { c1, c2, point } => {
            let (a, b) = (load(c1)?, load(c2)?);
            let x = pick(&intersections(&a, &b)?, *point)?;
            let s = surgery(&a, &b, &x)?;
            if json {
                emit(out, json!({"curve": s.to_json_value(), "class": class_json(&s)?}), false)?;
            } else {
                line(out, format!("surgery at point {point}: {}", class_line(&s)?))?;
                emit(out, s.to_json_value(), false)?;
            }
        }
        Cmd::Resolve { curve, point } => {
            let c = load(curve)?;
            let x = pick(&c.self_intersections(), *point)?;
            let (p, q) = resolve_double_point(&c, &x)?;
            if json {
                emit(out, json!({"curves": [p.to_json_value(), q.to_json_value()], "classes": [class_json(&p)?, class_json(&q)?]}), false)?;
            } else {
                line(out, format!("part 1: {}", class_line(&p)?))?;
                line(out, format!("part 2: {}", class_line(&q)?))?;
                emit(out, json!([p.to_json_value(), q.to_json_value()]), false)?;
            }
        }
        Cmd::Twist { alpha, beta } => {
            let (a, b) = (load(alpha)?, load(beta)?);
            let (t, d) = twist_defect(&a, &b)?;
            debug_assert_eq!(t, dehn_twist(&a, &b)?);
            if json {
                emit(out, json!({"curve": t.to_json_value(), "class": class_json(&t)?, "hol_defect": d.hol}), false)?;
            } else {
                line(out, format!("twist: {}", class_line(&t)?))?;
                line(out, format!("holonomy defect x = {}", sig12(d.hol)))?;
                emit(out, t.to_json_value(), false)?;
            }
        }
        Cmd::Floer { c1, c2, mu2: third, radius } => {
            let (a, b) = (load(c1)?, load(c2)?);
            let r = radius.unwrap_or_else(|| default_radius(&a, &b));
            let fc = build_complex(&a, &b, r)?;
            let rank = homology_rank(&fc)?;
            let rank1 = homology_rank_at_one(&fc)?;
            let product = match third {
                Some(p) => {
                    let c = load(p)?;
                    let r = radius.unwrap_or_else(|| product_radius(&a, &b, &c));
                    Some(mu2(&a, &b, &c, r)?)
                }
                None => None,
            };
            if json {
                let mut doc = json!({"complex": fc.to_json_value(), "rank": rank, "rank_at_one": rank1});
                if let Some(p) = &product {
                    doc["mu2"] = serde_json::to_value(p).expect("json");
                }
                emit(out, doc, true)?;
            } else {
                line(out, format!("generators {} lunes {} radius {}", fc.len(), fc.lunes.len(), fc.radius))?;
                for (i, g) in fc.generators.iter().enumerate() {
                    let d: Vec<String> = fc.differential[i]
                        .iter()
                        .enumerate()
                        .filter(|(_, e)| !e.is_zero())
                        .map(|(j, e)| {
                            let terms: Vec<String> = e.exponents().iter().map(|x| format!("T^{}", sig12(*x))).collect();
                            format!("({}) x{j}", terms.join(" + "))
                        })
                        .collect();
                    let d = if d.is_empty() { "0".to_string() } else { d.join(" + ") };
                    line(out, format!("x{i} degree {}: d = {d}", g.degree))?;
                }
                line(out, format!("homology rank {rank} (at T = 1: {rank1})"))?;
                if let Some(p) = &product {
                    line(out, format!("mu2: {} triangles", p.triangles.len()))?;
                    for t in &p.triangles {
                        line(out, format!("  x01_{} * x12_{} -> x02_{}: area {}", t.x01, t.x12, t.x02, sig12(t.area)))?;
                    }
                }
            }
        }
        Cmd::Suite { name, seed, genus, tolerance } => {
            let report = run_suite_with(name, SuiteOptions { genus: *genus, seed: *seed, tolerance: *tolerance })?;
            if json {
                emit(out, serde_json::to_value(&report).expect("json"), true)?;
            } else {
                write!(out, "{}", report.to_text()).map_err(|e| Failure::Check(e.to_string()))?;
            }
            return Ok(report.passed());
        }
        Cmd::Render { curves, output, genus } => {
            let cs = curves.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
            let m = match cs.first() {
                Some(c) => c.model().clone(),
                None => (*corpus::model(*genus)?).clone(),
            };
            let svg = render_svg(&m, &cs, &RenderOptions::default())?;
            std::fs::write(output, svg).map_err(|e| Failure::Usage(format!("{}: {e}", output.display())))?;
            if json {
                emit(out, json!({"output": output.display().to_string(), "curves": cs.len()}), false)?;
            } else {
                line(out, format!("wrote {} ({} curves)", output.display(), cs.len()))?;
            }
        }
    }
    Ok(true)
}
