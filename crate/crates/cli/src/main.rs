//! `arakheight`: heights over `Q(z_1..z_d)` from the command line.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage or input error.

mod config;
mod cycle;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use arakheight::chow::{chow_form, chow_height, cycle_height_dim0, supnorm_vs_mean, MeanVariant};
use arakheight::heights::{
    certify_fairly_large, fit_comparison, compare_identity, height_point_with, height_problem,
};
use arakheight::isogeny::counterexample_heights;
use arakheight::northcott::{enumerate_bounded, Status};
use arakheight::polyring::{parse_poly_in, parse_tuple};
use arakheight::{
    Engine, Error, NorthcottConfig, PointSpec, Polarization, ProjPoint, QuadCache, QuadConfig, Quadrature, ZeroCycle,
};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use config::{Config, Format, Layer};
use report::*;

#[derive(Parser, Debug)]
#[command(name = "arakheight", version, about = "Arakelov-style heights over finitely generated fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// TOML config file (default: ./arakheight.toml if present).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Target absolute error for numeric values.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for quasi-Monte Carlo shifts.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for cached quadrature results.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Keep quadrature results in memory only.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Same as `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Height of a point under a polarization.
    Height {
        /// Coordinates, e.g. "(1, z1)".
        #[arg(long)]
        point: String,
        /// fs | b0 | b1 | bij:i,j | halftwist:i | degenerate:i,λ
        #[arg(long, default_value = "fs")]
        pol: String,
        /// Number of variables (default: largest index used).
        #[arg(long)]
        d: Option<usize>,
        /// Include the full peeling tree.
        #[arg(long)]
        explain: bool,
    },
    /// Compare polarizations: the exact identity at one or more points, or
    /// fitted comparison constants when `--pol-a` and `--pol-b` are given.
    Compare {
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, requires = "pol_b")]
        pol_a: Option<String>,
        #[arg(long, requires = "pol_a")]
        pol_b: Option<String>,
    },
    /// Fairly-large certificate for a polarization.
    Certify {
        #[arg(long)]
        pol: String,
        #[arg(long)]
        d: usize,
    },
    /// All points with height at most a bound.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        bound: f64,
        #[arg(long, default_value = "fs")]
        pol: String,
        /// Largest number of candidate tuples to scan.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Chow form and heights of a zero-cycle.
    Chow {
        /// e.g. "[(1,'(1, z1)'), (2,'(1, 0)')]" or a JSON component list.
        #[arg(long)]
        cycle: String,
        #[arg(long, default_value = "fs")]
        pol: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Coefficient size of a section of O(d_1..d_r) against its log-mean.
    Supnorm {
        /// Polynomial in z1..zr (affine form of the section).
        #[arg(long)]
        section: String,
        /// Comma-separated degrees d_1,..,d_r.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Compare against exp(mean log) (log) or the mean itself (literal).
        #[arg(long, default_value = "log")]
        variant: String,
    },
    /// Heights of the iterated isogeny points x_n = [2]^n x_0.
    Counterexample {
        #[arg(long, default_value_t = 30)]
        n: u32,
        /// Self-intersection c of the metrized class, rational.
        #[arg(long, default_value = "0")]
        c: String,
    },
    /// Inspect or clear the quadrature cache.
    Cache {
        #[arg(value_parser = ["stats", "clear", "path"], default_value = "stats")]
        action: String,
    },
}

struct Failure {
    error: Error,
    hint: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let hint = matches!(error, Error::NotFairlyLarge { .. }).then(|| {
            "without a fairly-large certificate Northcott finiteness can fail; \
             run `arakheight counterexample --c 0` for an example"
                .to_string()
        });
        Failure { error, hint }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_input_error() {
        2
    } else {
        1
    }
}

fn point(s: &str, d: Option<usize>) -> Result<ProjPoint, Error> {
    ProjPoint::new(parse_tuple(s, d)?)
}

fn rational(s: &str) -> Result<BigRational, Error> {
    arakheight::heights::parse_rational(s)
}

fn cycle_text(z: &ZeroCycle) -> String {
    z.components
        .iter()
        .map(|(m, c)| {
            let c = match c {
                PointSpec::Point { point } => point.to_string(),
                PointSpec::Block { form } => format!("[{form}]"),
            };
            if *m == 1 {
                c
            } else {
                format!("{m}*{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn engine(cfg: &Config) -> Engine {
    let mut quad = Quadrature::new(QuadConfig {
        seed: cfg.seed,
        ..QuadConfig::default()
    });
    if let Some(dir) = &cfg.cache_dir {
        quad = quad.with_cache(Arc::new(QuadCache::on_disk(dir)));
    }
    Engine::new(quad)
}

fn run(cmd: Command, cfg: &Config) -> Result<Report, Failure> {
    let engine = engine(cfg);
    let report = match cmd {
        Command::Height { point: p, pol, d, explain } => {
            let p = point(&p, d)?;
            let d = p.num_vars();
            let pol = Polarization::preset(&pol, d, &engine)?;
            let tol = cfg.tol_or(1e-6);
            let v = height_point_with(&engine, &p, &pol, tol)?;
            let trace = if explain {
                Some(engine.explain(&height_problem(&p, &pol)?)?.1)
            } else {
                None
            };
            Report::Height(HeightReport {
                command: "height".into(),
                point: p.to_string(),
                polarization: pol.name.to_string(),
                n: p.dim_n(),
                d,
                multidegree: p.multidegree().to_vec(),
                height: Value::from(&v),
                trace,
            })
        }
        Command::Compare { points, d, pol_a, pol_b } => {
            let tol = cfg.tol_or(1e-6);
            let pts = points.iter().map(|s| point(s, d)).collect::<Result<Vec<_>, _>>()?;
            let d = pts[0].num_vars();
            if pts.iter().any(|p| p.num_vars() != d) {
                return Err(Error::Invalid("points must share the variable count; pass --d".into()).into());
            }
            match (pol_a, pol_b) {
                (Some(a), Some(b)) => {
                    let pa = Polarization::preset(&a, d, &engine)?;
                    let pb = Polarization::preset(&b, d, &engine)?;
                    let fit = fit_comparison(&engine, &pts, &pa, &pb, tol)?;
                    Report::Compare(CompareReport::Fit {
                        command: "compare".into(),
                        polarization_a: pa.name.to_string(),
                        polarization_b: pb.name.to_string(),
                        a: fit.a,
                        b: fit.b,
                        c1: fit.c1,
                        c2: fit.c2,
                        error_bound: tol,
                        rows: pts
                            .iter()
                            .zip(&fit.heights)
                            .map(|(p, (ha, hb))| FitRow {
                                point: p.to_string(),
                                height_a: *ha,
                                height_b: *hb,
                            })
                            .collect(),
                        note: fit.note,
                    })
                }
                _ => {
                    let rows = pts
                        .iter()
                        .map(|p| {
                            let r = compare_identity(&engine, p, tol)?;
                            Ok(IdentityRow {
                                point: p.to_string(),
                                lhs: Value::from(&r.lhs),
                                rhs: Value::from(&r.rhs),
                                residual: Value::from(&r.residual),
                            })
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    Report::Compare(CompareReport::Identity {
                        command: "compare".into(),
                        d,
                        rows,
                    })
                }
            }
        }
        Command::Certify { pol, d } => {
            let pol = Polarization::preset(&pol, d, &engine)?;
            let cert = certify_fairly_large(&pol)?;
            let scale = cert
                .slots
                .iter()
                .fold(BigRational::one(), |acc, s| acc * &s.exponent);
            Report::Certify(CertifyReport {
                command: "certify".into(),
                polarization: pol.name.to_string(),
                d,
                certified: true,
                scale: scale.to_string(),
                slots: cert
                    .slots
                    .iter()
                    .map(|s| SlotReport {
                        slot: s.slot,
                        factor: s.factor,
                        exponent: s.exponent.to_string(),
                        witness_exponents: s.witness.exponents.clone(),
                        witness_sup_norm: s.witness.sup_norm(),
                    })
                    .collect(),
            })
        }
        Command::Enumerate { n, d, bound, pol, budget } => {
            let pol = Polarization::preset(&pol, d, &engine)?;
            let defaults = NorthcottConfig::default();
            let ncfg = NorthcottConfig {
                tol: cfg.tol_or(defaults.tol),
                budget: budget.unwrap_or(defaults.budget),
                ..defaults
            };
            let e = enumerate_bounded(&engine, n, d, bound, &pol, &ncfg)?;
            let record = |b: &arakheight::northcott::BoundedPoint| PointRecord {
                point: b.point.to_string(),
                height: b.height.numeric,
                error_bound: b.height.error_bound,
                status: match b.status {
                    Status::In => "in",
                    Status::Undecided => "undecided",
                }
                .into(),
            };
            Report::Enumerate(EnumerateReport {
                command: "enumerate".into(),
                n,
                d,
                bound,
                polarization: pol.name.to_string(),
                degree_bounds: e.search_box.degree_bounds.clone(),
                coeff_bound: e.search_box.coeff_bound,
                evaluated: e.evaluated,
                count: e.points.len(),
                undecided: e.undecided.len(),
                points: e.points.iter().chain(&e.undecided).map(record).collect(),
            })
        }
        Command::Chow { cycle, pol, d } => {
            let z = cycle::parse_cycle(&cycle, d)?;
            let pol = Polarization::preset(&pol, z.d, &engine)?;
            let tol = cfg.tol_or(1e-6);
            let form = chow_form(&z)?;
            let hz = cycle_height_dim0(&engine, &z, &pol, tol)?;
            let hc = chow_height(&engine, &z, &pol, tol)?;
            Report::Chow(ChowReport {
                command: "chow".into(),
                cycle: cycle_text(&z),
                n: z.n,
                d: z.d,
                degree: z.degree(),
                polarization: pol.name.to_string(),
                chow_form: form.to_string(),
                chow_coordinates: form.coordinates().iter().map(|c| c.to_string()).collect(),
                cycle_height: Value::from(&hz),
                chow_height: Value::from(&hc),
            })
        }
        Command::Supnorm { section, degrees, variant } => {
            let variant = match variant.as_str() {
                "log" => MeanVariant::Log,
                "literal" => MeanVariant::Literal,
                v => return Err(Error::Invalid(format!("unknown variant `{v}` (log, literal)")).into()),
            };
            let s = parse_poly_in(&section, degrees.len())?;
            let r = supnorm_vs_mean(engine.quadrature(), &s, &degrees, variant, cfg.tol_or(1e-6))?;
            Report::Supnorm(SupnormReport {
                command: "supnorm".into(),
                section: s.to_string(),
                degrees,
                variant: match variant {
                    MeanVariant::Log => "log",
                    MeanVariant::Literal => "literal",
                }
                .into(),
                coeff_max: r.coeff_max,
                mean: r.mean,
                mean_error: r.mean_error,
                constant: r.constant,
                sup_norm: r.sup_norm,
                holds: r.holds,
            })
        }
        Command::Counterexample { n, c } => {
            let c = rational(&c)?;
            let r = counterexample_heights(n, &c)?;
            Report::Counterexample(CounterexampleReport {
                command: "counterexample".into(),
                curve: r.curve,
                c: r.c.to_string(),
                verdict: r.verdict.to_string(),
                rows: r
                    .rows
                    .iter()
                    .map(|row| CounterexampleRecord {
                        n: row.n,
                        height: row.height.to_string(),
                        value: row.height.to_f64().unwrap_or(f64::INFINITY),
                        error_bound: 0.0,
                    })
                    .collect(),
            })
        }
        Command::Cache { action } => {
            let cache = match &cfg.cache_dir {
                Some(d) => QuadCache::on_disk(d),
                None => QuadCache::in_memory(),
            };
            let removed = if action == "clear" { Some(cache.clear().map_err(Error::from)?) } else { None };
            Report::Cache(CacheReport {
                command: "cache".into(),
                action,
                dir: cfg.cache_dir.as_ref().map(|d| d.display().to_string()),
                entries: cache.len(),
                removed,
            })
        }
    };
    Ok(report)
}

fn usage_failure(message: String, format: Format) -> ExitCode {
    emit_error("usage", message, 2, None, format)
}

fn emit_error(kind: &str, message: String, code: u8, hint: Option<String>, format: Format) -> ExitCode {
    eprintln!("error: {message}");
    if let Some(h) = &hint {
        eprintln!("hint: {h}");
    }
    if format == Format::Json {
        let r = ErrorReport {
            error: ErrorBody {
                kind: kind.into(),
                message,
                exit_code: code as i32,
                hint,
            },
        };
        println!("{}", serde_json::to_string_pretty(&r).expect("error report serializes"));
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let g = &cli.global;
    let flags = Layer {
        tol: g.tol,
        cache_dir: g.cache_dir.clone(),
        no_cache: g.no_cache.then_some(true),
        threads: g.threads,
        seed: g.seed,
        format: if g.json { Some(Format::Json) } else { g.format },
    };
    let requested = flags.format.unwrap_or_default();
    let file = match &g.config {
        Some(p) => Layer::from_file(p),
        None => {
            let p = PathBuf::from(config::DEFAULT_CONFIG);
            if p.exists() {
                Layer::from_file(&p)
            } else {
                Ok(Layer::default())
            }
        }
    };
    let cfg = file
        .and_then(|file| Ok((file, Layer::from_env(|k| std::env::var(k).ok())?)))
        .and_then(|(file, env)| Config::resolve(file, flags, env));
    let cfg = match cfg {
        Ok(c) => c,
        Err(m) => return usage_failure(m, requested),
    };
    if cfg.threads > 1 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    match run(cli.command, &cfg) {
        Ok(report) => {
            let text = match cfg.format {
                Format::Json => report.json() + "\n",
                Format::Pretty => report.pretty(),
                Format::Csv => match report.csv() {
                    Some(t) => t,
                    None => {
                        return usage_failure(format!("csv output is not available for `{}`", report.name()), cfg.format)
                    }
                },
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = exit_code(&f.error);
            emit_error(f.error.kind(), f.error.to_string(), code, f.hint, cfg.format)
        }
    }
}
