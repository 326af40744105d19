//! Command-line front end: reproducible experiments with CSV/JSON
//! output. Every run echoes its configuration in the output header;
//! identical configurations produce byte-identical output.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use equid_core::constants::{gamma_c, kappa, Magnitude};
use equid_core::discrepancy::{box_discrepancy, orbit_discrepancy_shape, PointSet};
use equid_core::heights;
use equid_core::jsonio;
use equid_core::koksma;
use equid_core::laurent::QuadratureConfig;
use equid_core::ratio::{fmt_rat, parse_rat, parse_rat_vec, rat_to_f64};
use equid_core::torus::TorsionPoint;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "equid",
    version,
    about = "Exact polytope geometry, box discrepancy and torsion-orbit equidistribution experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strictness degree of a torsion point, with a minimal witness.
    Delta(DeltaArgs),
    /// Galois orbit of a torsion point.
    Orbit(OrbitArgs),
    /// Box discrepancy and isotropic bounds of a point set.
    Discrepancy(DiscrepancyArgs),
    /// Exact metrics of a rational polytope (and its shrink shell).
    Polytope(PolytopeArgs),
    /// The polytope Koksma bound, term by term.
    KoksmaBound(KoksmaArgs),
    /// Equidistribution error of Galois orbits against a polytope
    /// log-integral; several points form the experiment table.
    Equidist(EquidistArgs),
    /// The rate constants gamma(d,k), C(d,k), kappa(d,k), exactly.
    Constants(ConstantsArgs),
    /// Heights of the intersection point and the prime sweep.
    Heights(HeightsArgs),
}

#[derive(Args)]
struct DeltaArgs {
    /// Torsion point as comma-separated rational angles, e.g. 1/5,2/5
    #[arg(long)]
    omega: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    omega: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DiscrepancyArgs {
    /// Point source: "equispaced:N" or a JSON file {"d":2,"points":[["1/4","3/4"],...]}
    #[arg(long, conflicts_with = "omega")]
    points: Option<String>,
    /// Use the Galois orbit of this torsion point as the point set
    #[arg(long)]
    omega: Option<String>,
    /// Ambient dimension (checked against the source)
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PolytopeArgs {
    /// Polytope JSON file {"vertices": [["0","0"], ...]}
    #[arg(long)]
    file: std::path::PathBuf,
    /// Also report the shrink shell for this epsilon (rational)
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KoksmaArgs {
    #[arg(long)]
    polytope: std::path::PathBuf,
    /// Box discrepancy D of the point set
    #[arg(long)]
    discrepancy: f64,
    /// Upper bound M on |f|
    #[arg(long, default_value_t = 1.0)]
    sup_bound: f64,
    /// Modulus of continuity rho(f, D^(1/(d+1)))
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
}

#[derive(Args)]
struct EquidistArgs {
    /// Laurent polynomial JSON file
    #[arg(long)]
    poly: std::path::PathBuf,
    /// Polytope JSON file
    #[arg(long)]
    polytope: std::path::PathBuf,
    /// Torsion point(s); repeat for an experiment table (strict sequence)
    #[arg(long, required = true)]
    omega: Vec<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
    /// Rate exponent for the shape column (defaults to kappa(2,2))
    #[arg(long)]
    kappa: Option<f64>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: u64,
    #[arg(long, default_value = "1/2")]
    eps0: String,
    /// Write the full intermediate trace as JSON
    #[arg(long)]
    trace: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct HeightsArgs {
    #[command(subcommand)]
    sub: Option<HeightsCmd>,
    /// Torsion point for a single report
    #[arg(long)]
    omega: Option<String>,
}

#[derive(Subcommand)]
enum HeightsCmd {
    /// Sweep omega = (1/p, round(ratio*p)/p) over primes in a range.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Prime range "lo..hi" (inclusive)
    #[arg(long)]
    primes: String,
    #[arg(long, default_value_t = 0.618)]
    ratio: f64,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn header(cmd: &str, seed: Option<u64>) -> String {
    let mut h = format!(
        "# equid {VERSION}\n# cmd: {cmd}\n# precision: floats are f64 (shortest round-trip); rationals are exact p/q\n"
    );
    if let Some(s) = seed {
        h.push_str(&format!("# seed: {s}\n"));
    }
    h
}

fn env_samples() -> usize {
    std::env::var("EQUID_SAMPLES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 17)
}

fn env_tol() -> f64 {
    std::env::var("EQUID_TOL")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1e-3)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn parse_omega(text: &str) -> equid_core::Result<TorsionPoint> {
    TorsionPoint::new(&parse_rat_vec(text)?)
}

fn run(cli: Cli) -> equid_core::Result<()> {
    match cli.command {
        Command::Delta(args) => {
            let omega = parse_omega(&args.omega)?;
            let (delta, witness) = omega.strictness_degree_with_witness();
            if args.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "meta": {"tool": "equid", "version": VERSION},
                        "omega": args.omega,
                        "order": omega.order(),
                        "delta": delta,
                        "witness": witness.0,
                    })
                );
            } else {
                print!("{}", header(&format!("delta --omega {}", args.omega), None));
                println!("order: {}", omega.order());
                println!("delta: {delta}");
                println!("witness: {:?}", witness.0);
            }
        }
        Command::Orbit(args) => {
            let omega = parse_omega(&args.omega)?;
            let orbit = omega.galois_orbit();
            if args.json {
                let pts: Vec<Vec<String>> = orbit
                    .iter()
                    .map(|w| w.angles().iter().map(fmt_rat).collect())
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "meta": {"tool": "equid", "version": VERSION},
                        "order": omega.order(),
                        "size": orbit.len(),
                        "orbit": pts,
                    })
                );
            } else {
                print!("{}", header(&format!("orbit --omega {}", args.omega), None));
                println!("order: {}  size: {}", omega.order(), orbit.len());
                for w in &orbit {
                    println!("{w}");
                }
            }
        }
        Command::Discrepancy(args) => {
            let (set, delta_deg) = if let Some(omega_text) = &args.omega {
                let omega = parse_omega(omega_text)?;
                (omega.orbit_angles(), Some(omega.strictness_degree()))
            } else {
                let source = args.points.as_deref().unwrap_or("equispaced:8");
                if let Some(n) = source.strip_prefix("equispaced:") {
                    let n: usize = n.parse().map_err(|_| {
                        equid_core::Error::BadInput(format!("bad count in {source}"))
                    })?;
                    (PointSet::equispaced(n), None)
                } else {
                    let text = std::fs::read_to_string(source)?;
                    (jsonio::pointset_from_json(&text)?, None)
                }
            };
            if args.omega.is_none() && set.dim() != args.d {
                return Err(equid_core::Error::DimensionMismatch {
                    expected: args.d,
                    got: set.dim(),
                });
            }
            let rep = box_discrepancy(&set)?;
            let shape = delta_deg.map(|dd| orbit_discrepancy_shape(dd, set.dim()));
            if args.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "meta": {"tool": "equid", "version": VERSION, "exact": rep.exact},
                        "n": set.len(),
                        "delta": delta_deg,
                        "D": rep.d,
                        "D_exact": rep.d_exact.as_ref().map(fmt_rat),
                        "J_lower": rep.j_lower,
                        "J_upper": rep.j_upper,
                        "shape": shape,
                    })
                );
            } else {
                print!("{}", header("discrepancy", None));
                println!(
                    "# exact: {} (point value when true, lower-bound estimate otherwise)",
                    rep.exact
                );
                println!("# note: J is reported as bounds only; the shape column carries no certified constant");
                println!("n,delta,D,J_lower,J_upper,shape");
                println!(
                    "{},{},{},{},{},{}",
                    set.len(),
                    delta_deg.map(|v| v.to_string()).unwrap_or_default(),
                    rep.d,
                    rep.j_lower,
                    rep.j_upper,
                    shape.map(|v| v.to_string()).unwrap_or_default(),
                );
                if let Some(exact) = &rep.d_exact {
                    println!("# D exact: {}", fmt_rat(exact));
                }
            }
        }
        Command::Polytope(args) => {
            let text = std::fs::read_to_string(&args.file)?;
            let p = jsonio::polytope_from_json(&text)?;
            print!(
                "{}",
                header(&format!("polytope --file {}", args.file.display()), None)
            );
            println!("ambient: {}  dim: {}", p.ambient_dim(), p.dim());
            println!("vertices: {}", p.vertices().len());
            println!("facets: {}", p.facet_count());
            println!("volume: {}", fmt_rat(&p.volume()));
            println!("diameter (max-norm): {}", fmt_rat(&p.diameter()));
            if p.is_full_dimensional() {
                let (lo, hi) = p.surface_area_enclosure()?;
                println!(
                    "surface area: {} (enclosure [{}, {}])",
                    p.surface_area()?,
                    rat_to_f64(&lo),
                    rat_to_f64(&hi)
                );
                let (r, c) = p.inradius_and_center()?;
                let center: Vec<String> = c.iter().map(fmt_rat).collect();
                println!("inradius: {}  center: ({})", fmt_rat(&r), center.join(","));
                if let Some(eps_text) = &args.epsilon {
                    let eps = parse_rat(eps_text)?;
                    let bound = p.shell_volume_bound(&eps)?;
                    println!(
                        "shell volume at eps={}: exact {} <= bound {}",
                        eps_text,
                        fmt_rat(&bound.exact),
                        bound.bound
                    );
                }
            }
            if args.json {
                println!("{}", jsonio::polytope_to_json(&p));
            }
        }
        Command::KoksmaBound(args) => {
            let text = std::fs::read_to_string(&args.polytope)?;
            let p = jsonio::polytope_from_json(&text)?;
            let rep =
                koksma::polytope_koksma_bound(&p, args.discrepancy, args.sup_bound, args.rho)?;
            print!("{}", header("koksma-bound", None));
            println!("rho_term: {}", rep.rho_term);
            println!("inradius_term: {}", rep.inradius_term);
            println!("isotropic_term: {}", rep.isotropic_term);
            println!("shell_term: {}", rep.shell_term);
            println!("total: {}", rep.total);
        }
        Command::Equidist(args) => {
            let poly = jsonio::laurent_from_json(&std::fs::read_to_string(&args.poly)?)?;
            let delta = jsonio::polytope_from_json(&std::fs::read_to_string(&args.polytope)?)?;
            let cfg = QuadratureConfig {
                samples: args.samples.unwrap_or_else(env_samples),
                seed: args.seed,
                tol: args.tol.unwrap_or_else(env_tol),
                ..Default::default()
            };
            let omegas: equid_core::Result<Vec<TorsionPoint>> =
                args.omega.iter().map(|t| parse_omega(t)).collect();
            let omegas = omegas?;
            print!("{}", header("equidist", Some(cfg.seed)));
            println!("# samples: {}  tol: {}", cfg.samples, cfg.tol);
            println!("# note: the implied rate constant is never certified; columns report decay trends only");
            if omegas.len() == 1 {
                let rep = koksma::equidist_error(&poly, &delta, &omegas[0], &cfg)?;
                println!("orbit_size: {}", rep.orbit_size);
                println!("count_in_polytope: {}", rep.count_in);
                println!("lhs_sum: {}", rep.lhs_sum);
                println!("integral: {}", rep.integral);
                println!("error: {}", rep.error);
            } else {
                let kappa_exp = match args.kappa {
                    Some(k) => k,
                    None => rat_to_f64(&kappa(2, 2, &parse_rat("1/2")?)?),
                };
                let rows = koksma::convergence_experiment(&poly, &delta, &omegas, &cfg, kappa_exp)?;
                println!(
                    "order,delta,n,count_in_polytope,lhs_sum,integral,error,D,koksma_total,kappa_shape"
                );
                for r in rows {
                    println!(
                        "{},{},{},{},{},{},{},{},{},{}",
                        r.order,
                        r.delta_degree,
                        r.orbit_size,
                        r.count_in_polytope,
                        r.lhs_sum,
                        r.integral,
                        r.error,
                        r.discrepancy,
                        r.koksma_total,
                        r.kappa_shape
                    );
                }
            }
        }
        Command::Constants(args) => {
            let eps0 = parse_rat(&args.eps0)?;
            let res = gamma_c(args.d, args.k, &eps0)?;
            let kap = kappa(args.d, args.k, &eps0)?;
            print!(
                "{}",
                header(
                    &format!(
                        "constants --d {} --k {} --eps0 {}",
                        args.d, args.k, args.eps0
                    ),
                    None
                )
            );
            println!("gamma = {}", fmt_rat(&res.gamma));
            println!("epsilon = {}", fmt_rat(&res.epsilon));
            for (i, v) in res.v.iter().enumerate() {
                println!("v_{} = {}", i + 1, fmt_rat(v));
            }
            println!("kappa = {}", fmt_rat(&kap));
            println!("C (constraint-direction reading) = {}", res.c.describe());
            println!(
                "C (literal minimum of the same list) = {}",
                res.c_literal_min.describe()
            );
            println!("log2 C = {}", res.c_log2);
            if let Some(path) = &args.trace {
                let doc = constants_trace_json(&res);
                let mut f = std::fs::File::create(path)?;
                f.write_all(serde_json::to_string_pretty(&doc)?.as_bytes())?;
                println!("trace written to {}", path.display());
            }
        }
        Command::Heights(args) => match (&args.sub, &args.omega) {
            (Some(HeightsCmd::Sweep(sweep)), _) => {
                let (lo, hi) = sweep
                    .primes
                    .split_once("..")
                    .ok_or_else(|| equid_core::Error::BadInput("primes must be lo..hi".into()))?;
                let lo: u64 = lo
                    .parse()
                    .map_err(|_| equid_core::Error::BadInput("bad prime bound".into()))?;
                let hi: u64 = hi
                    .parse()
                    .map_err(|_| equid_core::Error::BadInput("bad prime bound".into()))?;
                let kappa_exp = rat_to_f64(&kappa(2, 2, &parse_rat("1/2")?)?);
                let rows = heights::height_sweep(lo, hi, sweep.ratio, kappa_exp)?;
                let mut out = String::new();
                out.push_str(&header(
                    &format!(
                        "heights sweep --primes {} --ratio {}",
                        sweep.primes, sweep.ratio
                    ),
                    None,
                ));
                out.push_str(&format!("# limit: {}\n", heights::limit_height()));
                out.push_str(
                    "# kappa_rate column: delta^(-kappa(2,2)); indistinguishable from 1 at desk scale\n",
                );
                out.push_str("p,mult,ord,delta,n,h_arch,h_nonarch,h_total,gap,kappa_rate");
                for i in 0..12 {
                    out.push_str(&format!(",part_{i}"));
                }
                out.push('\n');
                for r in &rows {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{}",
                        r.p,
                        r.multiplier,
                        r.report.order,
                        r.report.delta_degree,
                        r.report.orbit_size,
                        r.report.h_arch,
                        r.report.h_nonarch,
                        r.report.h_total,
                        r.report.target_gap,
                        r.kappa_rate
                    ));
                    match &r.decomposition {
                        Some(parts) => {
                            for v in parts {
                                out.push_str(&format!(",{v}"));
                            }
                        }
                        None => out.push_str(&",".repeat(12)),
                    }
                    out.push('\n');
                }
                match &sweep.out {
                    Some(path) => std::fs::write(path, out)?,
                    None => print!("{out}"),
                }
            }
            (None, Some(omega_text)) => {
                let omega = parse_omega(omega_text)?;
                let rep = heights::total_height(&omega)?;
                print!("{}", header(&format!("heights --omega {omega_text}"), None));
                println!(
                    "order: {}  delta: {}  n: {}",
                    rep.order, rep.delta_degree, rep.orbit_size
                );
                println!("h_arch: {}", rep.h_arch);
                println!("h_nonarch: {}", rep.h_nonarch);
                println!("h_total: {}", rep.h_total);
                println!("limit: {}", heights::limit_height());
                println!("gap: {}", rep.target_gap);
            }
            _ => {
                return Err(equid_core::Error::BadInput(
                    "heights needs --omega or the sweep subcommand".into(),
                ))
            }
        },
    }
    Ok(())
}

fn magnitude_json(m: &Magnitude) -> serde_json::Value {
    match m {
        Magnitude::Exact(r) => serde_json::json!({"exact": fmt_rat(r)}),
        Magnitude::Power {
            coeff,
            base,
            exponent,
            addend,
        } => serde_json::json!({
            "coeff": fmt_rat(coeff),
            "base": base,
            "exponent": fmt_rat(exponent),
            "addend": fmt_rat(addend),
        }),
    }
}

fn constants_trace_json(res: &equid_core::constants::ConstantsResult) -> serde_json::Value {
    let levels: Vec<serde_json::Value> = res
        .levels
        .iter()
        .map(|l| {
            serde_json::json!({
                "n": l.n,
                "m": l.m,
                "k_power": l.k_power,
                "v": l.v.iter().map(fmt_rat).collect::<Vec<_>>(),
                "eps_candidates": l.eps_candidates.iter().map(fmt_rat).collect::<Vec<_>>(),
                "epsilon": fmt_rat(&l.epsilon),
                "gamma": fmt_rat(&l.gamma),
                "c_candidates": l.c_candidates.iter().map(magnitude_json).collect::<Vec<_>>(),
                "c_literal_min": magnitude_json(&l.c_min),
                "c_constraint_max": magnitude_json(&l.c_max),
            })
        })
        .collect();
    serde_json::json!({
        "meta": {
            "tool": "equid",
            "version": VERSION,
            "note": "the recursion text takes a minimum over candidates that each lower-bound C; \
                     both readings are reported (suspected typo in the source); the literal minimum \
                     feeds the recursion",
        },
        "d": res.d,
        "k": res.k,
        "eps0": fmt_rat(&res.eps0),
        "gamma": fmt_rat(&res.gamma),
        "epsilon": fmt_rat(&res.epsilon),
        "v": res.v.iter().map(fmt_rat).collect::<Vec<_>>(),
        "c_constraint_max": magnitude_json(&res.c),
        "c_literal_min": magnitude_json(&res.c_literal_min),
        "c_log2": res.c_log2,
        "levels": levels,
    })
}
