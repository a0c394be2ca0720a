//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use cherednik::chars::standard_character;
use cherednik::cherednik::{singular_vectors, spherical_graded, SimpleOptions, StandardModule};
use cherednik::coxeter::kappa;
use cherednik::exact::format_rational;
use cherednik::hecke::{hook_recursion_check, specht_summary, Partition};
use cherednik::quiver::{cartan_check, cross_check_category_o};
use cherednik::{CParameter, CoxeterRealization, CoxeterType, WRep, Q};

use crate::cache::Cache;
use crate::checks::{self, Body, CheckError, CheckResult, Ctx, Params};
use crate::report::{self, Report, Status, VERSION};

pub const CONFIG_ENV: &str = "CHEREDNIK_LAB_CONFIG";

#[derive(Parser, Debug)]
#[command(name = "cherednik-lab", version, about = "Exact computations and checks for rational Cherednik algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Coxeter type: A (S_n), B, D or I2.
    #[arg(long = "type", global = true, value_name = "A|B|D|I2")]
    pub kind: Option<String>,
    /// Size: S_n, B_n, D_n.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Dihedral order parameter for I2(m).
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Constant parameter, as P/Q.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "P/Q")]
    pub c: Option<String>,
    /// Parameter on the first reflection class (long roots in type B).
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "P/Q")]
    pub c1: Option<String>,
    /// Parameter on the second reflection class (short roots in type B).
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "P/Q")]
    pub c2: Option<String>,
    /// Lowest weight: triv, sign, ext:i or partition:a,b,...
    #[arg(long, global = true)]
    pub tau: Option<String>,
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<usize>,
    /// Emit JSON reports on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// JSON config file with default bounds; also read from $CHEREDNIK_LAB_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report zero elapsed time so output is byte-for-byte reproducible.
    #[arg(long = "no-timing", global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group data: order, degrees, classes, reflections.
    Group,
    /// The simple module L(tau): graded dimensions or character.
    Simple {
        #[arg(value_enum, default_value_t = SimpleWhat::Dim)]
        what: SimpleWhat,
    },
    /// The standard module M(tau): character and relation check.
    Standard,
    /// Singular vectors of M(tau) in one degree.
    Singular {
        #[arg(long)]
        degree: usize,
    },
    /// W-invariants of a finite L(tau).
    Spherical,
    /// Specht modules at a root of unity.
    Hecke {
        /// Partition a,b,...; without it, the hook recursion at e=n runs.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        e: Option<usize>,
    },
    /// The quiver algebra and its Cartan matrix.
    Quiver {
        /// Also recover decomposition numbers from characters at c=r/n.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Run a named check, `all`, or `list`.
    Verify {
        name: String,
        /// Desk-scale cases (with `all`).
        #[arg(long)]
        desk: bool,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Points on a parameter line, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// Inspect or clear the result cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleWhat {
    Dim,
    Char,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheAction {
    Stats,
    Clear,
    Path,
}

/// Optional defaults; command-line flags take precedence.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub max_degree: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

fn load_config(common: &Common) -> CheckResult<Config> {
    let path = common.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let Some(path) = path else { return Ok(Config::default()) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CheckError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CheckError::Usage(format!("bad config {}: {e}", path.display())))
}

fn params(common: &Common, config: &Config) -> CheckResult<Params> {
    let kind = match &common.kind {
        Some(k) => Some(k.parse::<CoxeterType>()?),
        None => None,
    };
    if common.n.is_some() && common.m.is_some() {
        return Err(CheckError::Usage("give --n or --m, not both".into()));
    }
    Ok(Params {
        kind,
        n: common.n.or(common.m),
        c: common.c.clone(),
        c1: common.c1.clone(),
        c2: common.c2.clone(),
        tau: common.tau.clone(),
        max_degree: common.max_degree.or(config.max_degree),
        ..Params::default()
    })
}

/// Parses `argv` and runs; returns the process exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(reports) => {
            emit(&reports, cli.common.json);
            report::exit_code(&reports)
        }
        Err(CheckError::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(CheckError::Engine(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(reports: &[Report], json: bool) {
    if json {
        let text = match reports {
            [one] => report::to_json(one),
            many => serde_json::to_string_pretty(many).expect("reports serialize"),
        };
        println!("{text}");
    } else {
        for r in reports {
            print!("{}", report::to_table(r));
        }
    }
}

pub fn execute(cli: &Cli) -> CheckResult<Vec<Report>> {
    let config = load_config(&cli.common)?;
    let p = params(&cli.common, &config)?;
    let ctx = Ctx {
        cache: cli.common.cache_dir.clone().or(config.cache_dir.clone()).map(Cache::new),
        timing: !cli.common.no_timing,
        default_bound: config.max_degree,
    };
    match &cli.command {
        Command::Verify { name, desk, r, k, points } => {
            let p = Params { r: *r, k: *k, points: points.clone(), ..p };
            match name.as_str() {
                "all" => {
                    if !desk {
                        eprintln!("note: `verify all` runs the desk-scale suite");
                    }
                    checks::desk_suite().iter().map(|(n, q)| checks::run(n, q, &ctx)).collect()
                }
                "list" => {
                    for (n, _, about) in checks::REGISTRY {
                        println!("{n:16} {about}");
                    }
                    Ok(Vec::new())
                }
                other => Ok(vec![checks::run(other, &p, &ctx)?]),
            }
        }
        Command::Cache { action } => {
            let Some(cache) = &ctx.cache else {
                return Err(CheckError::Usage("cache needs --cache-dir or a config cache_dir".into()));
            };
            let mut b = Body::default();
            match action {
                CacheAction::Stats => b.computed("stats", cache.stats()),
                CacheAction::Clear => {
                    let n = cache.clear().map_err(|e| CheckError::Usage(format!("cannot clear cache: {e}")))?;
                    b.computed("removed", n);
                }
                CacheAction::Path => b.computed("dir", cache.dir().display().to_string()),
            }
            Ok(vec![wrap("cache", &p, &ctx, b, Instant::now())])
        }
        cmd => Ok(vec![single(cmd, &p, &ctx)?]),
    }
}

fn wrap(check: &str, p: &Params, ctx: &Ctx, b: Body, start: Instant) -> Report {
    Report {
        check: check.into(),
        inputs: p.to_json(),
        status: if b.failed { Status::Fail } else { Status::Pass },
        expected: Value::Object(b.expected),
        computed: Value::Object(b.computed),
        witness: b.witness,
        ms: if ctx.timing { start.elapsed().as_millis() as u64 } else { 0 },
        version: VERSION.into(),
    }
}

fn group_of(p: &Params) -> CheckResult<CoxeterRealization> {
    let kind = p.kind.unwrap_or(CoxeterType::A);
    let n = p.n.ok_or_else(|| CheckError::Usage("--n (or --m for I2) is required".into()))?;
    Ok(CoxeterRealization::build(kind, n)?)
}

/// Negative parameters go through the sign twist: `L_c(tau)` is computed as
/// `L_{eps c}(tau (x) eps)` with `eps` negative exactly where `c` is.
fn normalize(g: &CoxeterRealization, tau: &WRep, c: &CParameter) -> CheckResult<(WRep, CParameter, Option<Vec<i8>>)> {
    let signs: Vec<i8> = c.0.iter().map(|x| if *x < Q::from_integer(0.into()) { -1 } else { 1 }).collect();
    if signs.iter().all(|&s| s > 0) {
        return Ok((tau.clone(), c.clone(), None));
    }
    Ok((tau.twist(g, &signs)?, c.twisted(&signs), Some(signs)))
}

fn simple_opts(p: &Params, g: &CoxeterRealization, c: &CParameter) -> SimpleOptions {
    match p.max_degree {
        Some(d) => SimpleOptions::with_bound(d),
        None => SimpleOptions::default_for(g, c),
    }
}

fn single(cmd: &Command, p: &Params, ctx: &Ctx) -> CheckResult<Report> {
    let start = Instant::now();
    let mut b = Body::default();
    let name = match cmd {
        Command::Group => {
            group_info(p, &mut b)?;
            "group"
        }
        Command::Simple { what } => {
            let g = group_of(p)?;
            let (tau, c) = (p.rep(&g)?, p.parameter(&g)?);
            let (tau2, c2, twist) = normalize(&g, &tau, &c)?;
            if let Some(s) = &twist {
                b.computed("twist", json!({ "signs": s, "tau": tau2.name(), "c": c2.to_string() }));
            }
            let opts = SimpleOptions { traces: *what == SimpleWhat::Char, ..simple_opts(p, &g, &c2) };
            let rep = engine(ctx.simple(&g, &tau2, &c2, &opts), &mut b, p, ctx, start)?;
            let rep = match rep {
                Ok(r) => r,
                Err(report) => return Ok(report),
            };
            b.computed("kappa", format_rational(&rep.kappa));
            b.computed("verdict", rep.verdict.to_string());
            b.computed("finite", rep.is_finite());
            b.computed("total", rep.total_dim());
            b.computed("dims_exact", rep.dims_exact);
            b.computed("graded_dims", trim(&rep.graded_dims));
            if let Some(t) = &rep.traces {
                b.computed("character", t);
            }
            "simple"
        }
        Command::Standard => {
            let g = group_of(p)?;
            let (tau, c) = (p.rep(&g)?, p.parameter(&g)?);
            let top = p.max_degree.unwrap_or(6);
            let mut m = StandardModule::<Q>::new(&g, &tau, &c)?;
            b.computed("kappa", format_rational(&kappa(&g, &c, &tau)?));
            b.computed("layer_dims", (0..=top).map(|d| m.layer_dim(d)).collect::<Vec<_>>());
            b.computed("character", standard_character(&g, &tau, &c, top + 1)?);
            for d in 1..=top.min(4) {
                let rel = m.check_relations(d)?;
                if !b.holds(&format!("relations degree {d}"), rel.passed(), &rel.failures) {
                    break;
                }
            }
            "standard"
        }
        Command::Singular { degree } => {
            let g = group_of(p)?;
            let (tau, c) = (p.rep(&g)?, p.parameter(&g)?);
            let mut m = StandardModule::<Q>::new(&g, &tau, &c)?;
            let s = singular_vectors(&mut m, *degree)?;
            b.computed("degree", degree);
            b.computed("dim", s.dim());
            b.computed("traces", s.traces.iter().map(format_rational).collect::<Vec<_>>());
            "singular"
        }
        Command::Spherical => {
            let g = group_of(p)?;
            let c = p.parameter(&g)?;
            let (tau, c2, twist) = normalize(&g, &WRep::trivial(&g), &c)?;
            if let Some(s) = &twist {
                b.computed("twist", json!({ "signs": s, "tau": tau.name(), "c": c2.to_string() }));
            }
            let rep = match engine(ctx.simple(&g, &tau, &c2, &simple_opts(p, &g, &c2)), &mut b, p, ctx, start)? {
                Ok(r) => r,
                Err(report) => return Ok(report),
            };
            b.computed("verdict", rep.verdict.to_string());
            if rep.is_finite() {
                let sph = spherical_graded(&g, &rep)?;
                b.computed("total", sph.iter().sum::<usize>());
                b.computed("graded_dims", trim(&sph));
            }
            "spherical"
        }
        Command::Hecke { partition, e } => {
            match partition {
                Some(text) => {
                    let parts = text
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| CheckError::Usage(format!("bad partition {text:?}")))?;
                    let lambda = Partition::new(parts)?;
                    let e = e.ok_or_else(|| CheckError::Usage("--e is required with --partition".into()))?;
                    let s = specht_summary(&lambda, e)?;
                    b.computed("dim", s.dim);
                    b.computed("gram_rank", s.gram_rank);
                    b.computed("e_core", lambda.is_e_core(e));
                    b.computed("e_regular", lambda.is_e_regular(e));
                }
                None => {
                    let n = p.n.ok_or_else(|| CheckError::Usage("--n or --partition is required".into()))?;
                    let rep = hook_recursion_check(n)?;
                    b.computed("specht_dims", &rep.specht_dims);
                    b.computed("simple_dims", &rep.simple_dims);
                    b.holds("hook recursion", rep.holds, Value::Null);
                }
            }
            "hecke"
        }
        Command::Quiver { r } => {
            let n = p.n.ok_or_else(|| CheckError::Usage("--n is required".into()))?;
            let rep = cartan_check(n)?;
            b.computed("dim", rep.dim);
            b.computed("cartan", &rep.cartan);
            b.computed("labeling", if rep.matches_directly { "direct" } else { "reversed" });
            b.holds("cartan = D^T D", rep.passed(), &rep.predicted);
            if let Some(r) = r {
                let o = cross_check_category_o(n, *r)?;
                b.record("decomposition", &o.expected, &o.recovered);
            }
            "quiver"
        }
        Command::Verify { .. } | Command::Cache { .. } => unreachable!("handled by execute"),
    };
    Ok(wrap(name, p, ctx, b, start))
}

/// Turns an exceeded resource bound into a `bound-exceeded` report.
fn engine<T>(
    r: cherednik::Result<T>,
    b: &mut Body,
    p: &Params,
    ctx: &Ctx,
    start: Instant,
) -> CheckResult<Result<T, Report>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(cherednik::Error::Bound(m)) => {
            let mut body = std::mem::take(b);
            body.witness = Some(json!({ "bound": m }));
            let mut rep = wrap("simple", p, ctx, body, start);
            rep.status = Status::BoundExceeded;
            Ok(Err(rep))
        }
        Err(e) => Err(e.into()),
    }
}

fn trim(dims: &[usize]) -> Vec<usize> {
    let end = dims.iter().rposition(|&d| d > 0).map_or(0, |i| i + 1);
    dims[..end].to_vec()
}

fn group_info(p: &Params, b: &mut Body) -> CheckResult {
    let g = group_of(p)?;
    b.computed("descriptor", g.descriptor.to_string());
    b.computed("rank", g.rank());
    b.computed("coxeter_number", g.coxeter_number());
    b.computed("degrees", g.degrees());
    b.computed("exponents", g.exponents());
    b.computed("reflection_class_sizes", g.reflection_classes().iter().map(Vec::len).collect::<Vec<_>>());
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| json!({ "size": c.size, "fix": g.fix_dimension(c.representative), "det": format_rational(&g.det(c.representative)) }))
        .collect();
    b.computed("classes", classes);
    let product: usize = g.degrees().iter().map(|&d| d as usize).product();
    b.record("order", product, g.order());
    let exps: usize = g.degrees().iter().map(|&d| d as usize - 1).sum();
    b.record("reflections", exps, g.reflections().len());
    Ok(())
}
