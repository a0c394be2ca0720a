//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria with a documented disagreement between the stated expectation
//! and exact computation are listed in `KNOWN_FAILURES`; they still print
//! FAIL, and the target fails if the set of failing criteria changes.

use std::time::{Duration, Instant};

use clap::Parser;
use num_integer::gcd;

use cherednik::cherednik::{gorenstein_check, StandardModule};
use cherednik::exact::{int, rat};
use cherednik::{CParameter, CoxeterRealization, CoxeterType, WRep, Q};
use cherednik_lab::checks::{self, Ctx, Params};
use cherednik_lab::cli::{execute, Cli};
use cherednik_lab::report::{Report, Status};

use CoxeterType::{A, B, D, I2};

/// (A3, r=2) in criterion 5: 2 divides h=4, and the lattice count differs
/// from r^fix on the class of (12)(34).
const KNOWN_FAILURES: &[usize] = &[5];

const CHAR_PAIRS: [(usize, usize); 6] = [(2, 3), (2, 5), (3, 2), (3, 4), (4, 3), (4, 5)];

type Failures = Vec<String>;
type Criterion = (&'static str, fn(&Ctx) -> Failures);

fn describe(r: &Report) -> String {
    format!("{} {} -> {} {}", r.check, r.inputs, r.status, r.witness.as_ref().map_or(String::new(), |w| w.to_string()))
}

fn run_all(ctx: &Ctx, cases: Vec<(&str, Params)>) -> Failures {
    let mut out = Vec::new();
    for (name, p) in cases {
        match checks::run(name, &p, ctx) {
            Ok(r) if r.status == Status::Pass => {}
            Ok(r) => out.push(describe(&r)),
            Err(e) => out.push(format!("{name} {}: {e}", p.to_json())),
        }
    }
    out
}

fn within(t: Instant, limit: Duration, fails: &mut Failures) {
    if t.elapsed() > limit {
        fails.push(format!("runtime {} ms exceeds {} ms", t.elapsed().as_millis(), limit.as_millis()));
    }
}

fn cli(args: &[&str]) -> Result<Vec<Report>, String> {
    let mut argv = vec!["cherednik-lab"];
    argv.extend_from_slice(args);
    let parsed = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    execute(&parsed).map_err(|e| e.to_string())
}

fn classification(_: &Ctx) -> Failures {
    let t = Instant::now();
    let mut fails = Vec::new();
    for n in 2..=4usize {
        for q in 1..=6usize {
            for p in 1..=2 * q {
                if gcd(p, q) != 1 {
                    continue;
                }
                let c = format!("{p}/{q}");
                let n_s = n.to_string();
                let args = ["simple", "dim", "--type", "A", "--n", &n_s, "--c", &c, "--max-degree", "24", "--no-timing"];
                let reports = match cli(&args) {
                    Ok(r) => r,
                    Err(e) => {
                        fails.push(format!("n={n} c={c}: {e}"));
                        continue;
                    }
                };
                let verdict = reports[0].computed["verdict"].as_str().unwrap_or_default().to_string();
                let finite = q == n && gcd(p, n) == 1;
                let ok = if finite { verdict.starts_with("finite") } else { verdict == "not finite up to bound 24" };
                if !ok || reports[0].status != Status::Pass {
                    fails.push(format!("n={n} c={c}: {verdict}"));
                }
            }
        }
    }
    within(t, Duration::from_secs(120), &mut fails);
    fails
}

fn character_formula(ctx: &Ctx) -> Failures {
    let t = Instant::now();
    let mut fails = run_all(ctx, CHAR_PAIRS.iter().map(|&(n, r)| ("thm-char-A", Params::group(A, n).with_r(r))).collect());
    within(t, Duration::from_secs(300), &mut fails);
    fails
}

fn bgg(ctx: &Ctx) -> Failures {
    // for n = 3 the check covers k = 0, 1, 2 by default
    let mut cases: Vec<_> = CHAR_PAIRS.iter().map(|&(n, r)| ("thm-perv-euler", Params::group(A, n).with_r(r))).collect();
    for k in 1..=2 {
        cases.push(("thm-perv-euler", Params::group(A, 3).with_r(2).with_k(k)));
    }
    run_all(ctx, cases)
}

fn spherical(ctx: &Ctx) -> Failures {
    let mut cases: Vec<_> = CHAR_PAIRS.iter().map(|&(n, r)| ("spherical", Params::group(A, n).with_r(r))).collect();
    for n in [2, 3] {
        for r in [3, 5] {
            cases.push(("spherical", Params::group(B, n).with_r(r)));
        }
    }
    cases.push(("catalan", Params::default()));
    run_all(ctx, cases)
}

fn sommers(ctx: &Ctx) -> Failures {
    let lattice: [(CoxeterType, usize, &[usize]); 5] =
        [(A, 3, &[2, 4, 5]), (A, 4, &[2, 3, 5]), (B, 2, &[3, 5]), (B, 3, &[5, 7]), (D, 4, &[5, 7])];
    let mut cases = Vec::new();
    for (kind, n, rs) in lattice {
        for &r in rs {
            cases.push(("sommers", Params::group(kind, n).with_r(r)));
        }
    }
    // the engine's W-character of L(triv) on the character-formula pairs
    for (n, r) in CHAR_PAIRS {
        cases.push(("sommers", Params::group(A, n).with_r(r)));
    }
    run_all(ctx, cases)
}

fn solomon(ctx: &Ctx) -> Failures {
    let groups = [(A, 3), (A, 4), (B, 2), (B, 3), (D, 4), (I2, 6)];
    run_all(ctx, groups.iter().map(|&(k, n)| ("solomon", Params { max_degree: Some(10), ..Params::group(k, n) })).collect())
}

fn isotypic(ctx: &Ctx) -> Failures {
    run_all(ctx, vec![("isotypic", Params::group(A, 3).with_r(2)), ("isotypic", Params::group(A, 4).with_r(3))])
}

/// Every finite `L(triv)` met in criteria 1-4, plus `B_2` at `(1/2, 1)`.
fn finite_points() -> Vec<(CoxeterType, usize, Vec<Q>)> {
    let mut pts = Vec::new();
    for n in 2..=4i64 {
        for q in 1..=6i64 {
            for p in 1..=2 * q {
                if gcd(p, q) == 1 && q == n {
                    pts.push((A, n as usize, vec![rat(p, q)]));
                }
            }
        }
    }
    for (n, r) in CHAR_PAIRS {
        pts.push((A, n, vec![rat(r as i64, n as i64)]));
    }
    for (n, r) in [(2, 3), (2, 5), (3, 3), (3, 5)] {
        let h = 2 * n as i64;
        pts.push((B, n, vec![rat(r, h); 2]));
    }
    pts.push((B, 2, vec![rat(1, 2), int(1)]));
    pts.sort_by(|a, b| (a.0 as u8, a.1, &a.2).cmp(&(b.0 as u8, b.1, &b.2)));
    pts.dedup();
    pts
}

fn onedim_gorenstein(ctx: &Ctx) -> Failures {
    let groups = [(A, 3), (A, 4), (B, 2), (B, 3), (D, 4), (I2, 4), (I2, 6)];
    let mut fails = run_all(ctx, groups.iter().map(|&(k, n)| ("onedim", Params::group(k, n))).collect());
    for (kind, n, c) in finite_points() {
        let g = CoxeterRealization::build(kind, n).unwrap();
        let cp = CParameter(c);
        match gorenstein_check(&g, &cp, 24) {
            Ok(r) if r.passed => {}
            Ok(r) => fails.push(format!("gorenstein {} c={cp}: {}", g.descriptor, r.detail)),
            Err(e) => fails.push(format!("gorenstein {} c={cp}: {e}", g.descriptor)),
        }
    }
    fails
}

fn b_family(ctx: &Ctx) -> Failures {
    let t = Instant::now();
    let mut cases = Vec::new();
    for k in 0..=1 {
        let mut p = Params::group(B, 2).with_k(k);
        p.points = vec!["0".into(), "1/3".into(), "2".into()];
        cases.push(("b-family", p));
    }
    // constant c = 3/4 = r/h with r = 3
    cases.push(("thm-char-A", Params::group(B, 2).with_r(3)));
    let mut fails = run_all(ctx, cases);
    within(t, Duration::from_secs(600), &mut fails);
    fails
}

fn d4_example(ctx: &Ctx) -> Failures {
    let t = Instant::now();
    let mut fails = run_all(ctx, vec![("d4-example", Params::default())]);
    within(t, Duration::from_secs(900), &mut fails);
    fails
}

fn hecke(ctx: &Ctx) -> Failures {
    run_all(ctx, vec![("hecke-hooks", Params::default())])
}

fn quiver(ctx: &Ctx) -> Failures {
    run_all(ctx, vec![("quiver-cartan", Params::default())])
}

/// Relations through degree 4 on the combinations not already covered by
/// the checks above, then the rescaling and sign-twist suites.
fn self_consistency(ctx: &Ctx) -> Failures {
    let mut fails = Vec::new();
    let mut relations = |kind: CoxeterType, n: usize, tau: &dyn Fn(&CoxeterRealization) -> WRep, c: Vec<Q>| {
        let g = CoxeterRealization::build(kind, n).unwrap();
        let cp = CParameter(c);
        let t = tau(&g);
        let mut m = StandardModule::<Q>::new(&g, &t, &cp).unwrap();
        for d in 1..=4 {
            let rep = m.check_relations(d).unwrap();
            if !rep.passed() {
                fails.push(format!("relations {} {} c={cp} degree {d}: {:?}", g.descriptor, t.name(), rep.failures));
                break;
            }
        }
    };
    let triv: &dyn Fn(&CoxeterRealization) -> WRep = &|g| WRep::trivial(g);
    let h_eps: &dyn Fn(&CoxeterRealization) -> WRep = &|g| WRep::reflection(g).twist(g, &[1, -1]).unwrap();
    for k in 0..=1i64 {
        for u in [Q::from_integer(0.into()), rat(1, 3), int(2)] {
            let c2 = rat(2 * k + 1, 2) - &u;
            relations(B, 2, triv, vec![u, c2]);
        }
    }
    relations(B, 4, triv, vec![rat(1, 2), int(0)]);
    relations(B, 4, h_eps, vec![rat(1, 2), int(0)]);
    relations(D, 4, triv, vec![rat(1, 6)]);
    relations(D, 4, triv, vec![rat(1, 2)]);
    for (n, c) in [(3, "2/3"), (3, "-2/3"), (4, "3/4"), (4, "-3/4")] {
        for tau in ["triv", "sign", "ext:1"] {
            let mut p = Params::group(A, n).with_c(c);
            p.tau = Some(tau.into());
            fails.extend(run_all(ctx, vec![("relations", p.clone()), ("rescaling", p)]));
        }
    }
    for n in [3, 4] {
        fails.extend(run_all(ctx, vec![("epsilon-twist", Params::group(A, n))]));
    }
    fails
}

fn main() {
    let ctx = Ctx::default();
    let criteria: [Criterion; 13] = [
        ("type A classification", classification),
        ("character formula", character_formula),
        ("BGG alternating sums", bgg),
        ("spherical and Catalan dimensions", spherical),
        ("root lattice traces", sommers),
        ("Solomon identity", solomon),
        ("isotypic multiplicities", isotypic),
        ("one-dimensional criterion and Gorenstein", onedim_gorenstein),
        ("type B family", b_family),
        ("B4 81-dimensional example", d4_example),
        ("Hecke hooks", hecke),
        ("quiver algebra", quiver),
        ("engine self-consistency", self_consistency),
    ];
    let mut failed = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let fails = f(&ctx);
        let verdict = if fails.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict}  {title} ({} ms)", i + 1, t.elapsed().as_millis());
        for line in &fails {
            println!("    {line}");
        }
        if !fails.is_empty() {
            failed.push(i + 1);
        }
    }
    if failed != KNOWN_FAILURES {
        eprintln!("failing criteria {failed:?}, documented {KNOWN_FAILURES:?}");
        std::process::exit(1);
    }
}
