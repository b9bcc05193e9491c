use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oneloop::cut::{cut_numeric, disc_bubble_closed, disc_triangle_2cut, disc_triangle_3cut, CutResult};
use oneloop::frame::reduce_frame;
use oneloop::kinematics::{gram_matrix, Invariants};
use oneloop::landau::{
    box_quadratic, bubble_roots, channel_root_search, landau_scan, r2_along_channel, subsets, triangle_quadratic,
    BoxChannel, BoxInvariants, RootSearch,
};
use oneloop::oracle::{euclidean_integral, holomorphy_probe, OracleOptions};
use oneloop::pinch::{r2_scale, solve_alpha, subset_pinch};
use oneloop::quadrature::SphereOptions;
use oneloop::strata::{f, general_position, stratum_membership, wick_check, ProjPoint, Q};
use oneloop::{Error, KinematicConfig, C64};

/// Analytic structure of one-loop integrals: Landau surfaces, pinch points and cut discontinuities.
#[derive(Parser, Debug)]
#[command(name = "oneloop", version)]
struct Cli {
    /// Absolute/relative tolerance for membership tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every random choice (Monte Carlo, sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Replace the config's dimension (zero-padding momenta).
    #[arg(long = "D-override", global = true)]
    d_override: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct ConfigArg {
    /// Kinematic config in JSON.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Gram matrix, determinant and channel invariants.
    Gram(ConfigArg),
    /// Complex orthogonal triangularization of the momenta.
    Reduce(ConfigArg),
    /// Pinch point, vanishing sphere and Landau multipliers.
    Pinch {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Comma-separated edges, or `all`.
        #[arg(long, default_value = "all")]
        subset: String,
    },
    /// Vanishing-sphere radius for every subset (or one).
    Landau {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value = "all")]
        subset: String,
        /// Channel for the closed-form quadratic (triangle `s`, box `s`, `v`, `w`).
        #[arg(long)]
        channel: Option<String>,
        /// `from:to:steps` root search in the channel, with the other invariants frozen.
        #[arg(long, requires = "channel", allow_hyphen_values = true)]
        scan: Option<String>,
    },
    /// Stratum membership of a projective point.
    Strata {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        subset: String,
        /// `{"u": [re, im], "k": [[re, im], ...]}`; defaults to a point of the vanishing sphere.
        #[arg(long)]
        point: Option<String>,
    },
    /// Minimum of |Q| along a Wick rotation of some coordinates.
    Wick {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Coordinates rotated, comma-separated.
        #[arg(long, default_value = "0")]
        coords: String,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Cut discontinuity with N = 1.
    Disc {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        cut: String,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Dimension for this evaluation.
        #[arg(long = "D")]
        dim: Option<usize>,
    },
    /// Direct Euclidean integral.
    Oracle {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[arg(long, default_value_t = 1 << 20)]
        samples: usize,
        /// Also run a Cauchy-Riemann probe along the momenta with this step.
        #[arg(long)]
        probe: Option<f64>,
    },
    /// r^2 (and optionally the cut) along one channel invariant.
    Scan {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        channel: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value = "all")]
        subset: String,
        /// Include the closed-form discontinuity of the subset at each point.
        #[arg(long)]
        disc: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Closed,
    Numeric,
}

enum Failure {
    Usage(String, String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.kind().into(), e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

type Out = Result<Value, Failure>;

fn load(path: &Path, d_override: Option<usize>) -> Result<KinematicConfig, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage("io".into(), format!("{}: {e}", path.display())))?;
    let cfg = KinematicConfig::from_json(&text).map_err(|e| Failure::Usage("config".into(), e.to_string()))?;
    match d_override {
        Some(d) => Ok(cfg.with_dimension(d)?),
        None => Ok(cfg),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Failure::Usage("argument".into(), format!("bad {what} entry `{x}`")))
        })
        .collect()
}

fn parse_subset(s: &str, n: usize) -> Result<Vec<usize>, Failure> {
    if s == "all" {
        Ok((1..=n).collect())
    } else {
        parse_list(s, "subset")
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize")
}

/// Classification of a vanishing-sphere radius.
fn verdict(r2: C64, scale: f64, tol: f64) -> &'static str {
    if r2.norm() < tol * scale {
        "on_surface"
    } else if r2.im.abs() > 1e-9 * r2.norm() {
        "complex_radius"
    } else if r2.re > 0.0 {
        "real_sphere"
    } else {
        "imaginary_sphere"
    }
}

fn gram(cfg: &KinematicConfig, tol: f64) -> Out {
    let g = gram_matrix(cfg.momenta())?;
    let rows: Vec<Vec<C64>> = g.row_iter().map(|r| r.iter().copied().collect()).collect();
    let inv = Invariants::from_momenta(cfg.momenta());
    let squares: serde_json::Map<String, Value> = inv.iter().map(|(k, v)| (k.to_string(), to_json(&v))).collect();
    Ok(json!({
        "n": cfg.n(),
        "D": cfg.dim(),
        "gram_matrix": rows,
        "gram_det": cfg.gram_det(),
        "in_tn": cfg.in_tn(tol),
        "invariants": squares,
    }))
}

fn pinch(cfg: &KinematicConfig, subset: &[usize], tol: f64) -> Out {
    let p = subset_pinch(cfg, subset)?;
    let alpha = solve_alpha(cfg, subset, &p.loop_momentum)?;
    let residual = p.identity_residuals().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut v = to_json(&p);
    v["sphere"] = to_json(&p.sphere());
    v["on_minkowski_branch"] = json!(p.on_minkowski_branch());
    v["identity_residual"] = json!(residual);
    v["verdict"] = json!(verdict(p.r_squared, r2_scale(cfg), tol));
    v["alpha"] = to_json(&alpha);
    Ok(v)
}

fn landau(cfg: &KinematicConfig, subset: &str, tol: f64) -> Out {
    let scale = r2_scale(cfg);
    let chosen = if subset == "all" {
        subsets(cfg.n(), 2)
    } else {
        vec![parse_list(subset, "subset")?]
    };
    let scan = landau_scan(cfg, tol)?;
    let mut entries = Vec::new();
    for s in &chosen {
        let e = match scan.get(s) {
            Some(e) => e.clone(),
            None => {
                return Err(Error::InvalidSubset {
                    subset: s.clone(),
                    reason: "not an ascending subset".into(),
                }
                .into())
            }
        };
        let mut v = to_json(&e);
        v["verdict"] = json!(verdict(e.r_squared, scale, tol));
        if s.len() == 2 {
            let small = oneloop::contract(cfg, s)?;
            let p = &small.momenta()[0];
            let (th, pseudo) = bubble_roots(cfg.mass(s[0]), cfg.mass(s[1]));
            let minus_p2: C64 = -p.iter().map(|x| x * x).sum::<C64>();
            v["channel"] = json!({"minus_p_squared": minus_p2, "threshold": th, "pseudo_threshold": pseudo});
        }
        entries.push(v);
    }
    Ok(json!({ "entries": entries }))
}

/// A point of the vanishing sphere of `subset` (its center when `D < |I|`).
fn sphere_point(cfg: &KinematicConfig, subset: &[usize]) -> Result<Vec<C64>, Failure> {
    let p = subset_pinch(cfg, subset)?;
    let m = subset.len();
    if cfg.dim() < m {
        return Ok(p.loop_momentum);
    }
    let mut a = p.a.clone();
    a[m - 1] += p.r_squared.sqrt();
    let shift = cfg.partial_sum(subset[0])?;
    Ok(p.frame
        .apply_inverse(&a)
        .iter()
        .zip(&shift)
        .map(|(x, s)| x - s)
        .collect())
}

/// Closed-form Landau quadratic of the full graph in one channel.
fn quadratic(cfg: &KinematicConfig, channel: &str) -> Out {
    let inv = Invariants::from_momenta(cfg.momenta());
    let m = cfg.masses();
    let q = match cfg.n() {
        3 if channel == "s" => triangle_quadratic(inv.mandelstam("t")?, inv.mandelstam("u")?, [m[0], m[1], m[2]]),
        4 => {
            let ch: BoxChannel = channel.parse()?;
            box_quadratic(ch, &BoxInvariants::from_invariants(&inv)?, [m[0], m[1], m[2], m[3]])
        }
        n => {
            return Err(
                Error::NoClosedForm(format!("no transcribed quadratic for channel {channel} at n = {n}")).into(),
            )
        }
    };
    Ok(to_json(&q))
}

fn strata(cfg: &KinematicConfig, subset: &[usize], point: Option<&str>, tol: f64) -> Out {
    let pt = match point {
        Some(s) => serde_json::from_str::<ProjPoint>(s).map_err(|e| Failure::Usage("point".into(), e.to_string()))?,
        None => ProjPoint::finite(sphere_point(cfg, subset)?),
    };
    let stratum = stratum_membership(cfg, subset, &pt, tol)?;
    let qs = (1..=cfg.n())
        .map(|i| Q(cfg, i, &pt))
        .collect::<oneloop::Result<Vec<_>>>()?;
    let i1 = subset[0];
    let fs = (1..=cfg.n())
        .map(|j| f(cfg, i1, j, &pt))
        .collect::<oneloop::Result<Vec<_>>>()?;
    let mut v = json!({ "point": pt, "stratum": stratum, "Q": qs, "f_from_i1": fs });
    if pt.u.norm() > 0.0 {
        let k: Vec<C64> = pt.k.iter().map(|x| x / pt.u).collect();
        v["general_position"] = to_json(&general_position(cfg, subset, &k)?);
    }
    Ok(v)
}

fn disc(cfg: &KinematicConfig, cut: &[usize], method: Method, tol: f64) -> Result<CutResult, Failure> {
    Ok(match method {
        Method::Numeric => {
            let opts = SphereOptions {
                rel_tol: tol.max(1e-14),
                ..Default::default()
            };
            cut_numeric(cfg, cut, &opts)?
        }
        Method::Closed => match (cfg.n(), cut) {
            (2, [1, 2]) => disc_bubble_closed(cfg)?,
            (3, [1, 2]) => disc_triangle_2cut(cfg)?,
            (3, [1, 2, 3]) => disc_triangle_3cut(cfg)?,
            _ => {
                return Err(
                    Error::NoClosedForm(format!("no closed form for cut {cut:?} of the {}-gon", cfg.n())).into(),
                )
            }
        },
    })
}

fn scan(
    cli: &Cli,
    cfg: &KinematicConfig,
    channel: &str,
    range: (f64, f64),
    steps: usize,
    subset: &[usize],
    with_disc: bool,
) -> Out {
    let r2 = r2_along_channel(cfg, channel, subset)?;
    let steps = steps.max(1);
    let xs: Vec<f64> = (0..=steps)
        .map(|k| range.0 + (range.1 - range.0) * k as f64 / steps as f64)
        .collect();
    let entry = |res: Result<Value, String>| match res {
        Ok(v) => v,
        Err(e) => json!({ "error": e }),
    };
    let r2s: Vec<Value> = xs
        .iter()
        .map(|x| entry(r2(*x).map(|v| to_json(&v)).map_err(|e| e.to_string())))
        .collect();
    let opts = RootSearch {
        subset: Some(subset.to_vec()),
        ..Default::default()
    };
    let roots = channel_root_search(cfg, channel, range, &opts)?;
    let mut v = json!({ "channel": channel, "subset": subset, "x": xs, "r_squared": r2s, "roots": roots });
    if with_disc {
        let base = Invariants::from_momenta(cfg.momenta());
        let discs: Vec<Value> = xs
            .iter()
            .map(|x| {
                let at = || -> Result<C64, String> {
                    let mut inv = base.clone();
                    inv.set_mandelstam(channel, C64::new(*x, 0.0))
                        .map_err(|e| e.to_string())?;
                    let p = oneloop::kinematics::momenta_from_invariants(cfg.n(), cfg.dim(), &inv)
                        .map_err(|e| e.to_string())?;
                    let c = cfg.with_momenta(p).map_err(|e| e.to_string())?;
                    match disc(&c, subset, Method::Closed, cli.tol) {
                        Ok(r) => Ok(r.value_n1),
                        Err(Failure::Domain(e)) => Err(e.to_string()),
                        Err(Failure::Usage(_, m)) => Err(m),
                    }
                };
                entry(at().map(|z| to_json(&z)))
            })
            .collect();
        v["disc"] = json!(discs);
    }
    Ok(v)
}

fn run(cli: &Cli) -> Out {
    let tol = cli.tol;
    let load = |c: &ConfigArg| load(&c.config, cli.d_override);
    match &cli.cmd {
        Cmd::Gram(c) => gram(&load(c)?, tol),
        Cmd::Reduce(c) => {
            let cfg = load(c)?;
            let fr = reduce_frame(cfg.momenta())?;
            let mut v = to_json(&fr);
            v["orthogonality_defect"] = json!(fr.orthogonality_defect());
            Ok(v)
        }
        Cmd::Pinch { cfg, subset } => {
            let cfg = load(cfg)?;
            pinch(&cfg, &parse_subset(subset, cfg.n())?, tol)
        }
        Cmd::Landau {
            cfg,
            subset,
            channel,
            scan,
        } => {
            let cfg = load(cfg)?;
            let mut v = landau(&cfg, subset, tol)?;
            if let Some(ch) = channel {
                v["quadratic"] = quadratic(&cfg, ch)?;
            }
            if let (Some(ch), Some(sc)) = (channel, scan) {
                let parts: Vec<f64> = parse_list(&sc.replace(':', ","), "scan")?;
                let [from, to, steps] = parts[..] else {
                    return Err(Failure::Usage("argument".into(), "--scan expects from:to:steps".into()));
                };
                let subset = if subset == "all" {
                    None
                } else {
                    Some(parse_list(subset, "subset")?)
                };
                let opts = RootSearch {
                    steps: steps.max(1.0) as usize,
                    subset,
                    ..Default::default()
                };
                v["roots"] = json!(channel_root_search(&cfg, ch, (from, to), &opts)?);
            }
            Ok(v)
        }
        Cmd::Strata { cfg, subset, point } => {
            let cfg = load(cfg)?;
            strata(&cfg, &parse_subset(subset, cfg.n())?, point.as_deref(), tol)
        }
        Cmd::Wick {
            cfg,
            coords,
            steps,
            samples,
        } => {
            let cfg = load(cfg)?;
            let coords: Vec<usize> = parse_list(coords, "coordinate")?;
            let n = (*steps).max(2) - 1;
            let s: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
            Ok(to_json(&wick_check(&cfg, &coords, &s, *samples, cli.seed)?))
        }
        Cmd::Disc { cfg, cut, method, dim } => {
            let mut cfg = load(cfg)?;
            if let Some(d) = dim {
                cfg = cfg.with_dimension(*d)?;
            }
            let cut = parse_subset(cut, cfg.n())?;
            Ok(to_json(&disc(&cfg, &cut, *method, tol)?))
        }
        Cmd::Oracle {
            cfg,
            nodes,
            samples,
            probe,
        } => {
            let cfg = load(cfg)?;
            let opts = OracleOptions {
                nodes: *nodes,
                samples: *samples,
                seed: cli.seed,
            };
            let mut v = to_json(&euclidean_integral(&cfg, &opts)?);
            if let Some(h) = probe {
                v["holomorphy"] = to_json(&holomorphy_probe(&cfg, cfg.momenta(), *h, &opts)?);
            }
            Ok(v)
        }
        Cmd::Scan {
            cfg,
            channel,
            from,
            to,
            steps,
            subset,
            disc,
        } => {
            let cfg = load(cfg)?;
            let subset = parse_subset(subset, cfg.n())?;
            scan(cli, &cfg, channel, (*from, *to), *steps, &subset, *disc)
        }
    }
}

/// Records where the serializer wrote `null` for a non-finite float.
fn non_finite(v: &Value, path: &str, out: &mut Vec<Value>) {
    match v {
        Value::Null => out.push(json!({ "path": path, "reason": "non-finite number (NaN or infinity)" })),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| non_finite(x, &format!("{path}/{i}"), out)),
        Value::Object(o) => o.iter().for_each(|(k, x)| non_finite(x, &format!("{path}/{k}"), out)),
        _ => {}
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let (out, code) = match run(&cli) {
        Ok(mut v) => {
            let mut nulls = Vec::new();
            non_finite(&v, "", &mut nulls);
            if !nulls.is_empty() {
                v["non_finite"] = json!(nulls);
            }
            (v, 0)
        }
        Err(Failure::Usage(kind, msg)) => {
            eprintln!("error: {msg}");
            (json!({ "error": { "kind": kind, "message": msg } }), 1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            (json!({ "error": { "kind": e.kind(), "message": e.to_string() } }), 2)
        }
    };
    let text = serde_json::to_string_pretty(&out).expect("json values serialize");
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
