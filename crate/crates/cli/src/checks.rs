//! Named verification checks and the desk-scale suite.
//!
//! Every check fills a [`Body`] with expected and computed values; the first
//! disagreement becomes the report's witness.

use std::time::Instant;

use cherednik::chars::{
    bgg_alternating_sum, catalan_check, isotypic_dims, root_lattice_traces, shephard_todd_check,
    simple_char_closed_form, solomon_check, spherical_closed_form, spherical_dimension, type_a_spherical,
    CharacterSeries, RootLatticeModel,
};
use cherednik::cherednik::{
    b4_example, check_n_module, d_family_check, gorenstein_check, onedim_exists, simple_graded, spherical_graded,
    SimpleModuleReport, SimpleOptions, StandardModule, Verdict,
};
use cherednik::exact::{format_rational, int, parse_rational, rat};
use cherednik::hecke::{binomial, gram_rank, hook_recursion_check, specht_summary, Partition};
use cherednik::quiver::{cartan_check, cross_check_category_o};
use cherednik::{CParameter, CoxeterRealization, CoxeterType, Error, WRep, Q};
use num_integer::gcd;
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::report::{Report, Status, VERSION};

#[derive(Debug)]
pub enum CheckError {
    Usage(String),
    Engine(Error),
}

impl From<Error> for CheckError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(m) | Error::Unsupported(m) => CheckError::Usage(m),
            other => CheckError::Engine(other),
        }
    }
}

impl std::fmt::Display for CheckError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckError::Usage(m) => write!(f, "usage: {m}"),
            CheckError::Engine(e) => write!(f, "{e}"),
        }
    }
}

pub type CheckResult<T = ()> = Result<T, CheckError>;

fn usage<T>(msg: impl Into<String>) -> CheckResult<T> {
    Err(CheckError::Usage(msg.into()))
}

/// Inputs shared by all checks; unset fields take per-check defaults.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub kind: Option<CoxeterType>,
    pub n: Option<usize>,
    pub c: Option<String>,
    pub c1: Option<String>,
    pub c2: Option<String>,
    pub tau: Option<String>,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub max_degree: Option<usize>,
    pub points: Vec<String>,
}

impl Params {
    pub fn group(kind: CoxeterType, n: usize) -> Self {
        Self { kind: Some(kind), n: Some(n), ..Self::default() }
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_c(mut self, c: &str) -> Self {
        self.c = Some(c.into());
        self
    }

    pub fn with_c12(mut self, c1: &str, c2: &str) -> Self {
        self.c1 = Some(c1.into());
        self.c2 = Some(c2.into());
        self
    }

    /// The fields that were set, in a fixed order.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        if let (Some(kind), Some(n)) = (self.kind, self.n) {
            if let Ok(g) = CoxeterRealization::build(kind, n) {
                m.insert("group".into(), json!(g.descriptor.to_string()));
            }
        }
        if let Some(k) = self.kind {
            m.insert("type".into(), json!(format!("{k:?}")));
        }
        let mut put = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                m.insert(key.into(), v);
            }
        };
        put("n", self.n.map(|x| json!(x)));
        put("c", self.c.clone().map(Value::String));
        put("c1", self.c1.clone().map(Value::String));
        put("c2", self.c2.clone().map(Value::String));
        put("tau", self.tau.clone().map(Value::String));
        put("r", self.r.map(|x| json!(x)));
        put("k", self.k.map(|x| json!(x)));
        put("max_degree", self.max_degree.map(|x| json!(x)));
        if !self.points.is_empty() {
            put("points", Some(json!(self.points)));
        }
        Value::Object(m)
    }

    fn realization(&self, default_kind: CoxeterType) -> CheckResult<CoxeterRealization> {
        let kind = self.kind.unwrap_or(default_kind);
        let Some(n) = self.n else { return usage("--n (or --m for I2) is required") };
        Ok(CoxeterRealization::build(kind, n)?)
    }

    fn need_r(&self) -> CheckResult<usize> {
        match self.r {
            Some(r) if r > 0 => Ok(r),
            Some(_) => usage("--r must be positive"),
            None => usage("--r is required"),
        }
    }

    pub fn rep(&self, g: &CoxeterRealization) -> CheckResult<WRep> {
        match &self.tau {
            None => Ok(WRep::trivial(g)),
            Some(t) => Ok(WRep::build(g, &t.parse()?)?),
        }
    }

    pub fn parameter(&self, g: &CoxeterRealization) -> CheckResult<CParameter> {
        let parse = |s: &str| parse_rational(s).map_err(|e| CheckError::Usage(format!("bad rational {s:?}: {e}")));
        let c = match (&self.c, &self.c1, &self.c2) {
            (Some(c), None, None) => CParameter::constant(g, parse(c)?),
            (None, Some(a), Some(b)) => CParameter(vec![parse(a)?, parse(b)?]),
            (None, None, None) => return usage("a parameter is required: --c P/Q, or --c1 and --c2"),
            _ => return usage("give either --c or both --c1 and --c2"),
        };
        c.validate(g)?;
        Ok(c)
    }
}

/// Per-invocation settings.
#[derive(Clone, Debug, Default)]
pub struct Ctx {
    pub cache: Option<Cache>,
    /// Report wall-clock time; off for byte-stable output.
    pub timing: bool,
    /// Default bound for simple-module runs (config file).
    pub default_bound: Option<usize>,
}

impl Ctx {
    /// `simple_graded`, read from and written to the cache when one is
    /// configured.
    pub fn simple(
        &self,
        g: &CoxeterRealization,
        tau: &WRep,
        c: &CParameter,
        opts: &SimpleOptions,
    ) -> cherednik::Result<SimpleModuleReport> {
        let Some(cache) = &self.cache else { return simple_graded(g, tau, c, opts) };
        let key = Cache::key(json!({
            "group": g.descriptor.to_string(),
            "tau": tau.name(),
            "c": c.to_string(),
            "degree": opts.bound,
            "traces": opts.traces,
            "fp_dims": opts.fp_dims,
        }));
        if let Some(r) = cache.get(&key).as_ref().and_then(simple_from_json) {
            eprintln!("cache hit: {}", cache.path_for(&key).display());
            return Ok(r);
        }
        let r = simple_graded(g, tau, c, opts)?;
        cache.put(&key, &serde_json::to_value(&r).expect("reports serialize"));
        Ok(r)
    }
}

fn series_from_json(v: &Value) -> Option<CharacterSeries> {
    let offset = parse_rational(v.get("offset")?.as_str()?).ok()?;
    let coeffs = v
        .get("coeffs")?
        .as_array()?
        .iter()
        .map(|row| row.as_array()?.iter().map(|x| parse_rational(x.as_str()?).ok()).collect::<Option<Vec<Q>>>())
        .collect::<Option<Vec<_>>>()?;
    Some(CharacterSeries::new(offset, coeffs))
}

fn simple_from_json(v: &Value) -> Option<SimpleModuleReport> {
    let verdict = v.get("verdict")?;
    let num = |k: &str| verdict.get(k).and_then(Value::as_u64).map(|x| x as usize);
    let verdict = match verdict.get("kind")?.as_str()? {
        "finite" => Verdict::Finite { total: num("total")?, top_degree: num("top_degree")? },
        "not-finite-up-to" => Verdict::NotFiniteUpTo { bound: num("bound")? },
        "inconclusive" => Verdict::Inconclusive { reason: verdict.get("reason")?.as_str()?.into() },
        _ => return None,
    };
    let traces = match v.get("traces") {
        None => None,
        Some(t) => Some(series_from_json(t)?),
    };
    Some(SimpleModuleReport {
        group: v.get("group")?.as_str()?.into(),
        tau: v.get("tau")?.as_str()?.into(),
        c: v.get("c")?.as_str()?.into(),
        kappa: parse_rational(v.get("kappa")?.as_str()?).ok()?,
        graded_dims: v
            .get("graded_dims")?
            .as_array()?
            .iter()
            .map(|x| x.as_u64().map(|d| d as usize))
            .collect::<Option<_>>()?,
        dims_exact: v.get("dims_exact")?.as_bool()?,
        verdict,
        traces,
    })
}

/// Expected and computed payloads of one check.
#[derive(Debug, Default)]
pub struct Body {
    pub expected: Map<String, Value>,
    pub computed: Map<String, Value>,
    pub witness: Option<Value>,
    pub failed: bool,
}

impl Body {
    pub fn fail(&mut self, witness: Value) {
        if !self.failed {
            self.witness = Some(witness);
        }
        self.failed = true;
    }

    pub fn computed(&mut self, key: &str, v: impl serde::Serialize) {
        self.computed.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    /// Records both sides and fails on inequality.
    pub fn record(&mut self, key: &str, expected: impl serde::Serialize, computed: impl serde::Serialize) -> bool {
        let (e, c) = (json!(expected), json!(computed));
        let ok = e == c;
        if !ok {
            self.fail(json!({ "key": key, "expected": e, "got": c }));
        }
        self.expected.insert(key.into(), e);
        self.computed.insert(key.into(), c);
        ok
    }

    /// A boolean property; `detail` explains a failure.
    pub fn holds(&mut self, key: &str, ok: bool, detail: impl serde::Serialize) -> bool {
        self.expected.insert(key.into(), json!(true));
        self.computed.insert(key.into(), json!(ok));
        if !ok {
            self.fail(json!({ "key": key, "detail": detail }));
        }
        ok
    }

    /// Compares two series coefficient by coefficient; the witness is the
    /// first differing coefficient.
    pub fn series(&mut self, key: &str, got: &CharacterSeries, want: &CharacterSeries) -> bool {
        self.expected.insert(key.into(), series_summary(want));
        self.computed.insert(key.into(), series_summary(got));
        match got.mismatch(want) {
            None => true,
            Some(m) => {
                self.fail(json!({
                    "key": key,
                    "degree": m.exponent,
                    "class": m.class,
                    "expected": m.right,
                    "got": m.left,
                }));
                false
            }
        }
    }
}

/// Offset and coefficient rows, trailing zeros dropped.
fn series_summary(s: &CharacterSeries) -> Value {
    let rows: Vec<Vec<String>> = s
        .coeffs
        .iter()
        .map(|row| {
            let end = row.iter().rposition(|x| *x != int(0)).map_or(0, |i| i + 1);
            row[..end].iter().map(format_rational).collect()
        })
        .collect();
    json!({ "offset": format_rational(&s.offset), "coeffs": rows })
}

pub type CheckFn = fn(&Params, &Ctx, &mut Body) -> CheckResult;

pub const REGISTRY: &[(&str, CheckFn, &str)] = &[
    ("thm-char-A", thm_char_a, "L(triv) at c=r/h: closed-form character and dim r^l"),
    ("thm-perv-euler", thm_perv_euler, "[L(wedge^k h)] as an alternating sum of standard characters"),
    ("solomon", solomon, "bivariate Solomon identity"),
    ("sommers", sommers, "Q/rQ traces equal r^fix(w); W-character of L(triv)"),
    ("catalan", catalan, "binomial and Catalan forms of the spherical dimension"),
    ("spherical", spherical, "W-invariants of L(triv) against prod (d_i+r-1)/d_i"),
    ("isotypic", isotypic, "isotypic multiplicities of L(triv)"),
    ("gorenstein", gorenstein, "L(triv) has a one-dimensional socle and perfect pairings"),
    ("b-family", b_family, "N(triv) on the type B lines"),
    ("d-family", d_family, "N(triv) for D_n at c=(2k+1)/h"),
    ("d4-example", d4_example, "the 81-dimensional module at B4 (1/2,0)"),
    ("hecke-hooks", hecke_hooks, "hook Specht modules at e=n and cores"),
    ("quiver-cartan", quiver_cartan, "Cartan matrix of the quiver algebra and category O"),
    ("shephard-todd", shephard_todd, "sum_w r^fix(w) = prod (r+d_i-1)"),
    ("onedim", onedim, "one-dimensional modules against 2 sum c_s = l"),
    ("epsilon-twist", epsilon_twist, "L_c(triv) and L_-c(sign) have equal graded dims"),
    ("relations", relations, "defining relations on the standard module"),
    ("rescaling", rescaling, "Dunkl operators do not depend on root normalisation"),
];

pub fn lookup(name: &str) -> Option<CheckFn> {
    REGISTRY.iter().find(|(n, _, _)| *n == name).map(|(_, f, _)| *f)
}

/// Runs a named check and wraps the outcome as a report. Engine failures
/// become failing reports; exceeded resource bounds become
/// `bound-exceeded`; bad input is a usage error.
pub fn run(name: &str, p: &Params, ctx: &Ctx) -> CheckResult<Report> {
    let f = lookup(name).ok_or_else(|| CheckError::Usage(format!("unknown check {name:?}")))?;
    let start = Instant::now();
    let mut body = Body::default();
    let status = match f(p, ctx, &mut body) {
        Ok(()) if body.failed => Status::Fail,
        Ok(()) => Status::Pass,
        Err(CheckError::Usage(m)) => return Err(CheckError::Usage(m)),
        Err(CheckError::Engine(Error::Bound(m))) => {
            body.witness = Some(json!({ "bound": m }));
            Status::BoundExceeded
        }
        Err(CheckError::Engine(e)) => {
            body.fail(json!({ "error": e.to_string() }));
            Status::Fail
        }
    };
    Ok(Report {
        check: name.into(),
        inputs: p.to_json(),
        status,
        expected: Value::Object(body.expected),
        computed: Value::Object(body.computed),
        witness: body.witness,
        ms: if ctx.timing { start.elapsed().as_millis() as u64 } else { 0 },
        version: VERSION.into(),
    })
}

/// The desk-scale suite: every registered check on the cases it is meant
/// to confirm.
pub fn desk_suite() -> Vec<(&'static str, Params)> {
    use CoxeterType::*;
    let char_pairs = [(2, 3), (2, 5), (3, 2), (3, 4), (4, 3), (4, 5)];
    let mut v: Vec<(&'static str, Params)> = Vec::new();
    for (n, r) in char_pairs {
        v.push(("thm-char-A", Params::group(A, n).with_r(r)));
    }
    for (n, r) in char_pairs {
        v.push(("thm-perv-euler", Params::group(A, n).with_r(r)));
    }
    for (n, r) in char_pairs {
        v.push(("spherical", Params::group(A, n).with_r(r)));
    }
    for (n, r) in [(2, 3), (2, 5), (3, 3), (3, 5)] {
        v.push(("spherical", Params::group(B, n).with_r(r)));
    }
    v.push(("catalan", Params::default()));
    for (kind, n, rs) in [(A, 3, &[2, 4, 5][..]), (A, 4, &[2, 3, 5]), (B, 2, &[3, 5]), (B, 3, &[5, 7]), (D, 4, &[5, 7])] {
        for &r in rs {
            v.push(("sommers", Params::group(kind, n).with_r(r)));
        }
    }
    for (n, r) in char_pairs {
        v.push(("sommers", Params::group(A, n).with_r(r)));
    }
    for (kind, n) in [(A, 3), (A, 4), (B, 2), (B, 3), (D, 4), (I2, 6)] {
        v.push(("solomon", Params::group(kind, n)));
    }
    for (kind, n) in [(A, 5), (B, 3), (D, 4), (I2, 4), (I2, 6)] {
        v.push(("shephard-todd", Params::group(kind, n)));
    }
    v.push(("isotypic", Params::group(A, 3).with_r(2)));
    v.push(("isotypic", Params::group(A, 4).with_r(3)));
    for (kind, n) in [(A, 3), (A, 4), (B, 2), (B, 3), (D, 4), (I2, 4), (I2, 6)] {
        v.push(("onedim", Params::group(kind, n)));
    }
    for (n, c) in [(3, "2/3"), (3, "4/3"), (4, "3/4"), (4, "5/4")] {
        v.push(("gorenstein", Params::group(A, n).with_c(c)));
    }
    v.push(("gorenstein", Params::group(B, 2).with_c12("1/2", "1")));
    v.push(("gorenstein", Params::group(B, 2).with_c("3/4")));
    for k in 0..=1 {
        v.push(("b-family", Params::group(B, 2).with_k(k)));
    }
    v.push(("thm-char-A", Params::group(B, 2).with_r(3)));
    for k in 0..=1 {
        v.push(("d-family", Params::group(D, 4).with_k(k)));
    }
    v.push(("d4-example", Params::default()));
    for n in 3..=5 {
        v.push(("hecke-hooks", Params { n: Some(n), ..Params::default() }));
    }
    for n in 2..=6 {
        v.push(("quiver-cartan", Params { n: Some(n), ..Params::default() }));
    }
    for n in [3, 4] {
        v.push(("epsilon-twist", Params::group(A, n)));
    }
    for (n, c, tau) in [(3, "2/3", "triv"), (3, "-2/3", "ext:1"), (4, "3/4", "ext:1"), (4, "-3/4", "sign")] {
        let mut p = Params::group(A, n).with_c(c);
        p.tau = Some(tau.into());
        v.push(("relations", p.clone()));
        v.push(("rescaling", p));
    }
    let mut p = Params::group(B, 2).with_c12("1/2", "1");
    p.tau = Some("ext:1".into());
    v.push(("relations", p));
    v
}

fn ratio(r: usize, h: u32) -> Q {
    rat(r as i64, h as i64)
}

fn require_coprime(r: usize, h: u32) -> CheckResult {
    if gcd(r, h as usize) != 1 {
        return usage(format!("r={r} is not coprime to the Coxeter number {h}"));
    }
    Ok(())
}

/// Relations through degree 4 for the combination a check uses.
fn relations_through(b: &mut Body, key: &str, g: &CoxeterRealization, tau: &WRep, c: &CParameter, top: usize) -> CheckResult {
    let mut m = StandardModule::<Q>::new(g, tau, c)?;
    for d in 1..=top {
        let rep = m.check_relations(d)?;
        if !rep.passed() {
            b.holds(key, false, json!({ "degree": d, "failures": rep.failures }));
            return Ok(());
        }
    }
    b.holds(key, true, Value::Null);
    Ok(())
}

fn thm_char_a(p: &Params, ctx: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let r = p.need_r()?;
    let h = g.coxeter_number();
    require_coprime(r, h)?;
    let l = g.rank();
    let top = l * (r - 1);
    let len = p.max_degree.map_or(top + 5, |d| d + 1).max(top + 1);
    let triv = WRep::trivial(&g);
    let c = CParameter::constant(&g, ratio(r, h));
    b.computed("c", c.to_string());
    let rep = ctx.simple(&g, &triv, &c, &SimpleOptions::with_bound(len - 1))?;
    b.computed("graded_dims", &rep.graded_dims);
    b.computed("verdict", rep.verdict.to_string());
    b.record("total", r.pow(l as u32), rep.total_dim());
    let traces = rep.traces.as_ref().ok_or_else(|| CheckError::Engine(Error::Invariant("no traces".into())))?;
    b.series("character", traces, &simple_char_closed_form(&g, r, &triv, len));
    relations_through(b, "relations", &g, &triv, &c, 4)
}

fn thm_perv_euler(p: &Params, ctx: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let r = p.need_r()?;
    let h = g.coxeter_number();
    require_coprime(r, h)?;
    let l = g.rank();
    let len = p.max_degree.map_or(l * (r - 1) + 5, |d| d + 1);
    let c = CParameter::constant(&g, ratio(r, h));
    b.computed("c", c.to_string());
    let ks: Vec<usize> = match p.k {
        Some(k) if k <= l => vec![k],
        Some(k) => return usage(format!("k={k} exceeds the rank {l}")),
        None if l <= 2 => (0..=l).collect(),
        None => vec![0],
    };
    for k in ks {
        let alt = bgg_alternating_sum(&g, &c, k, len)?;
        let tau = WRep::exterior_power(&g, k)?;
        let simple = if k == 0 {
            let rep = ctx.simple(&g, &tau, &c, &SimpleOptions::with_bound(len - 1))?;
            rep.traces.ok_or_else(|| CheckError::Engine(Error::Invariant("no traces".into())))?
        } else {
            cherednik::quiver::truncated_simple_character(&g, &tau, &c, len)?
        };
        b.series(&format!("k={k}"), &simple, &alt);
        relations_through(b, &format!("relations ext:{k}"), &g, &tau, &c, 4)?;
    }
    Ok(())
}

fn solomon(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let rep = solomon_check(&g, p.max_degree.unwrap_or(10));
    b.computed("total_degree", rep.total_degree);
    b.holds("identity", rep.passed, &rep.mismatches);
    Ok(())
}

/// Per-class values of an engine character at `t = 1`, as integers.
fn class_values(s: &CharacterSeries) -> Vec<String> {
    (0..s.nclasses()).map(|ci| format_rational(&s.value_at_one(ci))).collect()
}

fn sommers(p: &Params, ctx: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let r = p.need_r()?;
    let model = RootLatticeModel::new(&g, r)?;
    let traces = root_lattice_traces(&g, &model);
    let expected: Vec<u64> =
        g.classes().iter().map(|cls| (r as u64).pow(g.fix_dimension(cls.representative) as u32)).collect();
    b.record("lattice_traces", &expected, &traces);
    let h = g.coxeter_number();
    if g.descriptor.kind == CoxeterType::A && gcd(r, h as usize) == 1 {
        let c = CParameter::constant(&g, ratio(r, h));
        let triv = WRep::trivial(&g);
        let rep = ctx.simple(&g, &triv, &c, &SimpleOptions::with_bound(g.rank() * (r - 1) + 1))?;
        let ch = rep.traces.ok_or_else(|| CheckError::Engine(Error::Invariant("no traces".into())))?;
        let want: Vec<String> = expected.iter().map(u64::to_string).collect();
        b.record("engine_character", want, class_values(&ch));
    }
    Ok(())
}

fn catalan(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let rep = catalan_check(p.n.unwrap_or(8) as u64, p.k.unwrap_or(6) as u64);
    b.computed("cases", rep.cases);
    b.holds("identity", rep.passed(), &rep.failures);
    Ok(())
}

fn spherical(p: &Params, ctx: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let r = p.need_r()?;
    let h = g.coxeter_number();
    let c = CParameter::constant(&g, ratio(r, h));
    b.computed("c", c.to_string());
    b.computed("coprime", gcd(r, h as usize) == 1);
    let opts = match p.max_degree {
        Some(d) => SimpleOptions::with_bound(d),
        None => SimpleOptions::default_for(&g, &c),
    };
    let rep = ctx.simple(&g, &WRep::trivial(&g), &c, &opts)?;
    if !rep.is_finite() {
        b.fail(json!({ "key": "verdict", "got": rep.verdict.to_string() }));
        return Ok(());
    }
    let sph = spherical_graded(&g, &rep)?;
    let total: usize = sph.iter().sum();
    let product = spherical_dimension(&g, r);
    b.record("total", format_rational(&product), total.to_string());
    let closed = spherical_closed_form(&g, r, sph.len());
    let closed_dims: Vec<String> = closed.coeffs[0].iter().map(format_rational).collect();
    let dims: Vec<String> = sph.iter().map(usize::to_string).collect();
    b.record("graded", closed_dims, dims);
    if g.descriptor.kind == CoxeterType::A {
        let n = g.descriptor.n as u64;
        b.record("binomial_form", type_a_spherical(n, r as u64), Some(total as u64));
        if r as u64 % n == 1 {
            let k = r as u64 / n;
            let cat = binomial(n * (k + 1), n) / (n * k + 1);
            b.record("catalan_form", cat, total as u64);
        }
    }
    Ok(())
}

fn isotypic(p: &Params, ctx: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let r = p.need_r()?;
    let h = g.coxeter_number();
    require_coprime(r, h)?;
    let c = CParameter::constant(&g, ratio(r, h));
    let rep = ctx.simple(&g, &WRep::trivial(&g), &c, &SimpleOptions::with_bound(g.rank() * (r - 1) + 1))?;
    let ch = rep.traces.ok_or_else(|| CheckError::Engine(Error::Invariant("no traces".into())))?;
    let order = int(g.order() as i64);
    for tau in WRep::all_irreducibles(&g)? {
        let mut s = int(0);
        for (ci, cls) in g.classes().iter().enumerate() {
            s += int(cls.size as i64) * ch.value_at_one(ci) * tau.trace(cls.representative);
        }
        let mult = s / &order;
        b.record(&tau.name(), isotypic_dims(&g, r, &tau)?.to_string(), format_rational(&mult));
    }
    Ok(())
}

fn gorenstein(p: &Params, ctx: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let c = p.parameter(&g)?;
    let bound = p.max_degree.or(ctx.default_bound).unwrap_or(24);
    let rep = gorenstein_check(&g, &c, bound)?;
    b.computed("graded_dims", &rep.graded_dims);
    b.computed("top_degree", rep.top_degree);
    b.holds("gorenstein", rep.passed, &rep.detail);
    relations_through(b, "relations", &g, &WRep::trivial(&g), &c, 4)
}

fn b_family(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    if p.kind.is_some_and(|k| k != CoxeterType::B) {
        return usage("b-family is a type B check");
    }
    let g = CoxeterRealization::build(CoxeterType::B, p.n.unwrap_or(2))?;
    let ks: Vec<usize> = p.k.map_or(vec![0, 1], |k| vec![k]);
    let points: Vec<String> =
        if p.points.is_empty() { vec!["0".into(), "1/2".into(), "2".into()] } else { p.points.clone() };
    for k in ks {
        for u in &points {
            let u = parse_rational(u).map_err(|e| CheckError::Usage(format!("bad point {u:?}: {e}")))?;
            let chk = check_n_module(&g, k, &u)?;
            let key = format!("k={k} c1={}", format_rational(&u));
            b.computed(&format!("{key} c"), &chk.module.c);
            b.computed(&format!("{key} graded_dims"), &chk.module.graded_dims);
            b.computed(&format!("{key} limit_order"), chk.module.limit_order);
            b.record(&format!("{key} dim"), chk.expected_dim, chk.module.total_dim());
            b.holds(&format!("{key} charfor"), chk.charfor.is_ok(), &chk.charfor);
            if let Some(o) = &chk.product_oracle {
                b.holds(&format!("{key} product"), o.is_ok(), o);
            }
        }
    }
    Ok(())
}

fn d_family(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let n = p.n.unwrap_or(4);
    let ks: Vec<usize> = p.k.map_or(vec![0, 1], |k| vec![k]);
    for k in ks {
        let chk = d_family_check(n, k)?;
        let key = format!("k={k}");
        b.computed(&format!("{key} c"), &chk.c);
        b.computed(&format!("{key} graded_dims"), &chk.graded_dims);
        b.computed(&format!("{key} simple_dims"), &chk.simple_dims);
        b.computed(&format!("{key} coprime"), chk.coprime);
        b.record(&format!("{key} dim"), chk.expected_dim, chk.graded_dims.iter().sum::<usize>());
        b.holds(&format!("{key} charfor"), chk.charfor.is_ok(), &chk.charfor);
        if chk.coprime {
            b.record(&format!("{key} simple"), chk.expected_dim, chk.simple_dims.iter().sum::<usize>());
        }
    }
    Ok(())
}

/// Coefficients of `(t^-1 + 1 + t)^n`.
fn trinomial(n: usize) -> Vec<usize> {
    let mut v = vec![1usize];
    for _ in 0..n {
        let mut next = vec![0; v.len() + 2];
        for (i, x) in v.iter().enumerate() {
            for j in 0..3 {
                next[i + j] += x;
            }
        }
        v = next;
    }
    v
}

fn d4_example(_: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let ex = b4_example()?;
    let dims = ex.n_module.graded_dims.iter().copied().take_while(|&d| d > 0).collect::<Vec<_>>();
    b.record("n_graded_dims", trinomial(4), &dims);
    b.record("n_dim", 81, ex.n_module.total_dim());
    b.record("singular_dim_degree_3", 4, ex.singular_dim_in_n);
    b.record("singular_traces", &ex.expected_traces, &ex.singular_traces);
    b.holds("quartic_partials_singular", ex.products_are_singular, Value::Null);
    b.computed("kappa_shift", &ex.kappa_shift);
    let lt = ex.l_triv.total_dim();
    let lh = ex.l_twisted.total_dim();
    b.computed("l_triv_graded_dims", &ex.l_triv.graded_dims);
    b.computed("l_twisted_graded_dims", &ex.l_twisted.graded_dims);
    b.computed("l_twisted_dim", lh);
    b.record("l_triv_dim", lh.map(|x| 81 - x), lt);
    b.holds("exact_sequence", ex.sequence_consistent.is_ok(), &ex.sequence_consistent);
    Ok(())
}

fn hecke_hooks(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let ns: Vec<usize> = p.n.map_or(vec![3, 4, 5], |n| vec![n]);
    for n in ns {
        let rep = hook_recursion_check(n)?;
        b.computed(&format!("n={n} specht_dims"), &rep.specht_dims);
        b.computed(&format!("n={n} simple_dims"), &rep.simple_dims);
        b.holds(&format!("n={n} recursion"), rep.holds, Value::Null);
        b.record(&format!("n={n} gram_rank(1^n)"), 0, gram_rank(&Partition::new(vec![1; n])?, n)?);
    }
    let core = Partition::new(vec![3, 1])?;
    b.holds("(3,1) is a 5-core", core.is_e_core(5), Value::Null);
    let s = specht_summary(&core, 5)?;
    b.record("(3,1) gram_rank at e=5", s.dim, s.gram_rank);
    Ok(())
}

fn quiver_cartan(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let ns: Vec<usize> = p.n.map_or((2..=6).collect(), |n| vec![n]);
    for &n in &ns {
        let rep = cartan_check(n)?;
        let key = format!("n={n}");
        if n == 2 || n == 3 {
            b.record(&format!("{key} dim"), 4 * n - 3, rep.dim);
        } else {
            b.computed(&format!("{key} dim"), rep.dim);
        }
        b.computed(&format!("{key} cartan"), &rep.cartan);
        b.computed(&format!("{key} labeling"), if rep.matches_directly { "direct" } else { "reversed" });
        b.holds(&format!("{key} cartan = D^T D"), rep.matches_directly || rep.matches_reversed, &rep.predicted);
        b.holds(&format!("{key} confluent"), rep.confluent.is_ok(), &rep.confluent);
        b.holds(&format!("{key} associative"), rep.associative.is_ok(), &rep.associative);
        let r = match (p.r, n) {
            (Some(r), _) => Some(r),
            (None, 2) => Some(3),
            (None, 3) => Some(2),
            _ => None,
        };
        if let Some(r) = r {
            let o = cross_check_category_o(n, r)?;
            b.record(&format!("{key} r={r} decomposition"), &o.expected, &o.recovered);
        }
    }
    Ok(())
}

fn shephard_todd(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let rep = shephard_todd_check(&g, p.r.unwrap_or(8));
    b.computed("cases", rep.cases);
    b.holds("identity", rep.passed(), &rep.failures);
    Ok(())
}

/// Twenty parameters: ten on the hyperplane `2 sum c_s = l` and ten off it.
fn onedim_grid(g: &CoxeterRealization) -> Vec<CParameter> {
    let sizes: Vec<i64> = g.reflection_classes().iter().map(|c| c.len() as i64).collect();
    let half_rank = rat(g.rank() as i64, 2);
    let mut out = Vec::new();
    if sizes.len() == 1 {
        let h = g.coxeter_number() as i64;
        for j in -4..16 {
            out.push(CParameter(vec![rat(j, 2 * h)]));
        }
    } else {
        for j in -2..8 {
            let c1 = rat(j, 5);
            let c2 = (&half_rank - int(sizes[0]) * &c1) / int(sizes[1]);
            out.push(CParameter(vec![c1.clone(), c2.clone()]));
            out.push(CParameter(vec![c1, c2 + rat(1, 3)]));
        }
    }
    out
}

fn onedim(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let grid = onedim_grid(&g);
    let mut agree = 0;
    let mut on_line = 0;
    for c in &grid {
        let rep = onedim_exists(&g, c)?;
        if rep.equation == rep.relations_hold {
            agree += 1;
        } else {
            b.fail(json!({ "key": "agreement", "c": c.to_string(), "equation": rep.equation, "relations": rep.relations_hold }));
        }
        on_line += rep.equation as usize;
        if g.reflection_classes().len() == 1 {
            let at_inverse_h = c.0[0] == rat(1, g.coxeter_number() as i64);
            if rep.relations_hold != at_inverse_h {
                b.fail(json!({ "key": "c = 1/h", "c": c.to_string(), "relations": rep.relations_hold }));
            }
        }
    }
    b.record("agreements", grid.len(), agree);
    b.computed("points_on_hyperplane", on_line);
    Ok(())
}

fn epsilon_twist(p: &Params, ctx: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let cs: Vec<Q> = match &p.c {
        Some(c) => vec![parse_rational(c).map_err(|e| CheckError::Usage(format!("bad rational: {e}")))?],
        None => {
            let n = g.descriptor.n as i64;
            vec![rat(n - 1, n), rat(1 - n, n)]
        }
    };
    let bound = p.max_degree.unwrap_or(10);
    let opts = SimpleOptions { fp_dims: true, ..SimpleOptions::with_bound(bound) };
    let triv = WRep::trivial(&g);
    let signs = vec![-1i8; g.reflection_classes().len()];
    let sign = WRep::linear_character(&g, &signs)?;
    for c in cs {
        let cp = CParameter::constant(&g, c.clone());
        let l1 = ctx.simple(&g, &triv, &cp, &opts)?;
        let l2 = ctx.simple(&g, &sign, &cp.twisted(&signs), &opts)?;
        let key = format!("c={}", format_rational(&c));
        b.record(&format!("{key} graded_dims"), &l1.graded_dims, &l2.graded_dims);
        b.record(&format!("{key} verdict"), l1.verdict.to_string(), l2.verdict.to_string());
    }
    Ok(())
}

fn relations(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let tau = p.rep(&g)?;
    let c = p.parameter(&g)?;
    relations_through(b, "relations", &g, &tau, &c, p.max_degree.unwrap_or(4))
}

fn rescaling(p: &Params, _: &Ctx, b: &mut Body) -> CheckResult {
    let g = p.realization(CoxeterType::A)?;
    let c = p.parameter(&g)?;
    let factors: Vec<Q> = (0..g.reflections().len()).map(|i| rat(i as i64 % 5 + 2, 3)).collect();
    let g2 = g.with_rescaled_roots(&factors)?;
    let label = match &p.tau {
        None => cherednik::coxeter::RepLabel::Trivial,
        Some(t) => t.parse()?,
    };
    let (t1, t2) = (WRep::build(&g, &label)?, WRep::build(&g2, &label)?);
    let mut m1 = StandardModule::<Q>::new(&g, &t1, &c)?;
    let mut m2 = StandardModule::<Q>::new(&g2, &t2, &c)?;
    let top = p.max_degree.unwrap_or(3);
    for d in 1..=top {
        let (a, z) = (m1.dunkl(d)?, m2.dunkl(d)?);
        let same = a.iter().zip(z.iter()).all(|(x, y)| x.to_dense() == y.to_dense());
        if !same {
            b.holds("invariant", false, json!({ "degree": d }));
            return Ok(());
        }
    }
    b.computed("degrees", top);
    b.holds("invariant", true, Value::Null);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_witness_is_the_first_differing_coefficient() {
        let mut b = Body::default();
        let want = CharacterSeries::new(rat(-1, 2), vec![vec![int(1), int(2), int(1)], vec![int(1), int(0), int(1)]]);
        let got = CharacterSeries::new(rat(-1, 2), vec![vec![int(1), int(2), int(1)], vec![int(1), int(2), int(1)]]);
        assert!(!b.series("character", &got, &want));
        let w = b.witness.unwrap();
        assert_eq!(w["degree"], "1/2");
        assert_eq!(w["class"], 1);
        assert_eq!(w["expected"], "0");
        assert_eq!(w["got"], "2");
    }

    #[test]
    fn only_the_first_failure_is_the_witness() {
        let mut b = Body::default();
        assert!(b.record("a", 1, 1));
        assert!(!b.record("b", 1, 2));
        assert!(!b.holds("c", false, "later"));
        assert_eq!(b.witness.unwrap()["key"], "b");
    }

    #[test]
    fn cached_reports_round_trip() {
        let g = CoxeterRealization::build(CoxeterType::A, 3).unwrap();
        let c = CParameter::constant(&g, rat(2, 3));
        let r = simple_graded(&g, &WRep::trivial(&g), &c, &SimpleOptions::with_bound(6)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let back = simple_from_json(&v).unwrap();
        assert_eq!(serde_json::to_value(&back).unwrap(), v);
        assert_eq!(back.traces, r.traces);
    }

    #[test]
    fn registry_has_unique_names_and_the_desk_suite_uses_them() {
        let mut names: Vec<&str> = REGISTRY.iter().map(|(n, _, _)| *n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), REGISTRY.len());
        assert!(desk_suite().iter().all(|(n, _)| lookup(n).is_some()));
    }

    #[test]
    fn onedim_grid_has_twenty_points() {
        for (kind, n) in [(CoxeterType::A, 3), (CoxeterType::B, 3)] {
            assert_eq!(onedim_grid(&CoxeterRealization::build(kind, n).unwrap()).len(), 20);
        }
    }

    #[test]
    fn trinomial_coefficients() {
        assert_eq!(trinomial(2), vec![1, 2, 3, 2, 1]);
        assert_eq!(trinomial(4).iter().sum::<usize>(), 81);
    }
}
