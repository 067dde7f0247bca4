//! Named verification tasks over a configured set of groups, with a
//! versioned report document.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{factorize, EllSpec, Scalar};
use crate::gamma::GammaContext;
use crate::group::DEFAULT_ORDER_CAP;
use crate::lambda::{
    dimension_identity, hall_generating_tuples, trivial_module_certificate, varphi_route_a, varphi_route_b, KContext,
    Kind,
};
use crate::ssc::{certify_semisimple, verify_example_blocks, verify_nilpotent_example, SscOptions, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Task {
    Dims,
    Cocycle,
    Bases,
    TauOracle,
    Ssc,
    Blocks,
    Totient,
    Trivial,
    Gamma,
}

impl Task {
    pub const ALL: [Task; 9] = [
        Task::Dims,
        Task::Cocycle,
        Task::Bases,
        Task::TauOracle,
        Task::Ssc,
        Task::Blocks,
        Task::Totient,
        Task::Trivial,
        Task::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Dims => "dims",
            Task::Cocycle => "cocycle",
            Task::Bases => "bases",
            Task::TauOracle => "tau-oracle",
            Task::Ssc => "ssc",
            Task::Blocks => "blocks",
            Task::Totient => "totient",
            Task::Trivial => "trivial",
            Task::Gamma => "gamma",
        }
    }

    pub fn explain(self) -> &'static str {
        match self {
            Task::Dims => {
                "dims: counts the square basis of the algebra by enumerating subgroups of every F x G, and \
                 compares it with the sum over isomorphism classes E of section quotients of \
                 n_E^2 |Aut(E)|, where n_E counts triples (G, B, Y) with B/Y isomorphic to E. Also reports \
                 the centre dimension predicted when the algebra is semisimple."
            }
            Task::Cocycle => {
                "cocycle: checks sigma(U, V) sigma(U*V, W) = sigma(U, V*W) sigma(V, W) for every composable \
                 triple of square-basis morphisms, comparing the integer arguments of l exactly."
            }
            Task::Bases => {
                "bases: converts seeded random elements to the round basis and back, checks that t_I t_J \
                 vanishes whenever the right projection of I differs from the left projection of J, and \
                 compares round-basis products computed from tau with products routed through the square \
                 basis."
            }
            Task::TauOracle => {
                "tau-oracle: compares the restricted-poset formula for tau_K^{I,J} with the defining double \
                 Moebius sum on every admissible triple (strongly compatible I, J and K adequate for I*J)."
            }
            Task::Ssc => {
                "ssc: builds T_E^L from epimorphisms L -> E for every section pair, cross-checks both tau \
                 routes, audits determinant degrees, and ranks the trace form of the regular \
                 representation. Invertible T-matrices for all pairs certify semisimplicity; a degenerate \
                 exact trace form certifies the opposite with a radical witness."
            }
            Task::Blocks => {
                "blocks: for each member C_q with q in {2, 3}, builds the central idempotents of End(C_q) \
                 from r = l(q) s_0 - s_01 - s_10 + s_11 and the twisted diagonals s_d, and checks they are \
                 orthogonal central idempotents summing to 1 with block dimensions 4, 1 (and 1). When \
                 l(q) = 1 it checks instead that K r is a square-zero ideal inside the trace-form radical."
            }
            Task::Totient => {
                "totient: computes phi(G) = sum over U <= G of moeb(U, G) l(|U|) by single and double \
                 Moebius sums, and for l(n) = n^d with d in {1, 2} compares it with a brute-force count of \
                 generating d-tuples."
            }
            Task::Trivial => {
                "trivial: checks t_{1xB} t_{B'x1} = delta_{B,B'} phi(B) t_{1x1} for all B, B' <= F and \
                 certifies the left ideal generated by each i_G as simple when every phi(B) is nonzero."
            }
            Task::Gamma => {
                "gamma: multiplies class-basis elements by the double-coset formula with weights \
                 l(m)/m, checks the averaging map nu into the algebra is multiplicative and injective, \
                 checks conjugation equals multiplication by twisted diagonals, and at l(n) = n compares \
                 every structure constant with a brute-force composition of transitive bisets."
            }
        }
    }

    /// Expands a list of names, with `all` standing for every task.
    pub fn parse_list<S: AsRef<str>>(names: &[S]) -> Result<Vec<Task>> {
        let mut out = Vec::new();
        for n in names {
            let n = n.as_ref();
            if n == "all" {
                for t in Task::ALL {
                    if !out.contains(&t) {
                        out.push(t);
                    }
                }
                continue;
            }
            let t: Task = n.parse()?;
            if !out.contains(&t) {
                out.push(t);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Task> {
        Task::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Task::ALL.iter().map(|t| t.name()).collect();
            Error::Precondition(format!("unknown task {s:?}; valid tasks: {}, all", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub groups: Vec<String>,
    pub ell: EllSpec,
    pub tasks: Vec<Task>,
    pub seed: u64,
    pub order_cap: usize,
    pub cache_dir: Option<PathBuf>,
    /// Upper bound on τ comparisons in `tau-oracle`.
    pub tau_limit: usize,
}

impl RunConfig {
    pub fn new(groups: Vec<String>, ell: EllSpec, tasks: Vec<Task>) -> RunConfig {
        RunConfig { groups, ell, tasks, seed: 0, order_cap: DEFAULT_ORDER_CAP, cache_dir: None, tau_limit: 200_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub task: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub groups: Vec<String>,
    pub ell: String,
    pub seed: u64,
    pub dimension: usize,
    pub tasks: Vec<TaskReport>,
    pub passed: bool,
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "groups: {}\nell: {}\nseed: {}\ndimension: {}\n",
            self.groups.join(" "),
            self.ell,
            self.seed,
            self.dimension
        );
        for t in &self.tasks {
            let status = if t.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{status} {}: {}\n", t.task, t.summary));
            if let Some(e) = &t.error {
                s.push_str(&format!("  error: {e}\n"));
            }
        }
        s.push_str(if self.passed { "overall: PASS\n" } else { "overall: FAIL\n" });
        s
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Builds the context and runs each task in order. Context construction
/// errors abort the run; task errors are recorded in that task's report.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    let specs: Vec<&str> = cfg.groups.iter().map(|s| s.as_str()).collect();
    let ctx = KContext::from_specs(&specs, cfg.ell.clone(), cfg.order_cap, cfg.cache_dir.as_deref())?;
    let mut tasks = Vec::new();
    for &t in &cfg.tasks {
        let report = match run_task(t, &ctx, cfg) {
            Ok((passed, summary, details)) => {
                TaskReport { task: t.name().into(), passed, summary, details, error: None }
            }
            Err(e) => TaskReport {
                task: t.name().into(),
                passed: false,
                summary: "task failed with an error".into(),
                details: Value::Null,
                error: Some(e.to_string()),
            },
        };
        tasks.push(report);
    }
    let passed = tasks.iter().all(|t| t.passed);
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        groups: ctx.specs().to_vec(),
        ell: cfg.ell.to_string(),
        seed: cfg.seed,
        dimension: ctx.dimension(),
        tasks,
        passed,
    })
}

type Outcome = (bool, String, Value);

fn run_task(t: Task, ctx: &KContext, cfg: &RunConfig) -> Result<Outcome> {
    match t {
        Task::Dims => dims(ctx),
        Task::Cocycle => cocycle(ctx),
        Task::Bases => bases(ctx, cfg.seed),
        Task::TauOracle => tau_oracle(ctx, cfg.tau_limit),
        Task::Ssc => ssc(ctx, cfg.seed),
        Task::Blocks => blocks(ctx),
        Task::Totient => totient(ctx),
        Task::Trivial => trivial(ctx),
        Task::Gamma => gamma(ctx, cfg),
    }
}

fn dims(ctx: &KContext) -> Result<Outcome> {
    let r = dimension_identity(ctx);
    let summary = format!("enumeration {} vs section triples {}", r.by_enumeration, r.by_triples);
    Ok((r.holds, summary, to_value(&r)))
}

/// Number of composable triples on which the cocycle identity holds and
/// fails. `l` is completely multiplicative, so comparing products of the
/// integer arguments decides the identity for every `l` at once.
pub fn cocycle_check(ctx: &KContext) -> (usize, usize) {
    let keys = ctx.keys();
    let (mut ok, mut bad) = (0, 0);
    for &u in &keys {
        for &v in keys.iter().filter(|v| v.0 == u.1) {
            let (uv, a) = ctx.star_idx(u.0, u.1, v.1, u.2, v.2);
            for &w in keys.iter().filter(|w| w.0 == v.1) {
                let (_, b) = ctx.star_idx(u.0, v.1, w.1, uv, w.2);
                let (vw, c) = ctx.star_idx(v.0, v.1, w.1, v.2, w.2);
                let (_, d) = ctx.star_idx(u.0, u.1, w.1, u.2, vw);
                if a * b == d * c {
                    ok += 1;
                } else {
                    bad += 1;
                }
            }
        }
    }
    (ok, bad)
}

fn cocycle(ctx: &KContext) -> Result<Outcome> {
    let (ok, bad) = cocycle_check(ctx);
    Ok((bad == 0, format!("{ok} triples hold, {bad} fail"), json!({ "triples": ok + bad, "failures": bad })))
}

fn bases(ctx: &KContext, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut round_trips = 0;
    let mut round_trip_ok = true;
    for _ in 0..20 {
        let a = ctx.random_element(&mut rng, Kind::Square, 4);
        round_trip_ok &= ctx.to_square(&ctx.to_round(&a)?)? == a;
        round_trips += 1;
    }
    let keys = ctx.keys();
    let mut vanishing = 0;
    let mut vanishing_ok = true;
    let exhaustive = keys.len() <= 40;
    let mut products = 0;
    let mut products_ok = true;
    for &i in &keys {
        for &j in keys.iter().filter(|j| j.0 == i.1) {
            let (ti, tj) = (ctx.basis(Kind::Round, i), ctx.basis(Kind::Round, j));
            if !ctx.strongly_compatible(i, j) {
                vanishing_ok &= ctx.round_multiply(&ti, &tj)?.is_zero();
                vanishing += 1;
            }
            if exhaustive {
                products_ok &= ctx.round_multiply(&ti, &tj)? == ctx.multiply(&ti, &tj)?;
                products += 1;
            }
        }
    }
    if !exhaustive {
        for _ in 0..30 {
            let a = ctx.random_element(&mut rng, Kind::Round, 2);
            let b = ctx.random_element(&mut rng, Kind::Round, 2);
            products_ok &= ctx.round_multiply(&a, &b)? == ctx.multiply(&a, &b)?;
            products += 1;
        }
    }
    let passed = round_trip_ok && vanishing_ok && products_ok;
    let summary = format!(
        "{round_trips} round trips, {vanishing} vanishing products, {products} {} product comparisons",
        if exhaustive { "exhaustive" } else { "sampled" }
    );
    Ok((
        passed,
        summary,
        json!({
            "round_trips": round_trips, "round_trip_ok": round_trip_ok,
            "vanishing_checked": vanishing, "vanishing_ok": vanishing_ok,
            "products_checked": products, "products_exhaustive": exhaustive, "products_ok": products_ok,
        }),
    ))
}

/// Compares both τ routes on admissible triples, stopping after `limit`.
pub fn tau_oracle_check(ctx: &KContext, limit: usize) -> Result<(usize, usize, bool)> {
    let keys = ctx.keys();
    let (mut checked, mut failures) = (0, 0);
    for &i in &keys {
        for &j in keys.iter().filter(|j| j.0 == i.1 && ctx.strongly_compatible(i, **j)) {
            let (w, _) = ctx.star_idx(i.0, i.1, j.1, i.2, j.2);
            for &k in ctx.adequate(i.0, j.1, w) {
                if checked == limit {
                    return Ok((checked, failures, false));
                }
                let key = (i.0, j.1, k);
                if ctx.tau_reduced(key, i, j)? != ctx.tau_bruteforce(key, i, j)? {
                    failures += 1;
                }
                checked += 1;
            }
        }
    }
    Ok((checked, failures, true))
}

fn tau_oracle(ctx: &KContext, limit: usize) -> Result<Outcome> {
    let (checked, failures, exhaustive) = tau_oracle_check(ctx, limit)?;
    let summary = format!(
        "{checked} admissible triples{}, {failures} disagreements",
        if exhaustive { " (exhaustive)" } else { " (truncated)" }
    );
    Ok((failures == 0, summary, json!({ "checked": checked, "failures": failures, "exhaustive": exhaustive })))
}

fn ssc(ctx: &KContext, seed: u64) -> Result<Outcome> {
    let opts = SscOptions { seed, ..SscOptions::default() };
    let r = certify_semisimple(ctx, &opts)?;
    let routes = r.pairs.iter().all(|p| p.routes_agree != Some(false));
    let passed = r.verdict != Verdict::Inconclusive && r.consistent && routes;
    let verdict = serde_json::to_value(r.verdict).expect("verdict");
    let certificate = serde_json::to_value(r.certificate).expect("certificate");
    let summary = format!(
        "{} via {}, {} section pairs",
        verdict.as_str().unwrap_or("?"),
        certificate.as_str().unwrap_or("?"),
        r.pairs.len()
    );
    Ok((passed, summary, to_value(&r)))
}

fn blocks(ctx: &KContext) -> Result<Outcome> {
    let mut details = Vec::new();
    let mut passed = true;
    for (spec, g) in ctx.specs().iter().zip(ctx.groups()) {
        let n = g.order() as u64;
        let prime = factorize(n).len() == 1 && factorize(n)[0].1 == 1;
        if !(g.is_cyclic() && prime && n <= 3) {
            details.push(json!({ "group": spec, "skipped": "only C2 and C3 have rational block formulas" }));
            continue;
        }
        let lambda = ctx.ell(n as usize)?;
        if lambda.is_one() {
            let r = verify_nilpotent_example(n)?;
            passed &= r.holds;
            details.push(json!({ "group": spec, "nilpotent": to_value(&r) }));
        } else {
            let r = verify_example_blocks(n, ctx.ell_spec().clone())?;
            passed &= r.holds;
            details.push(json!({ "group": spec, "blocks": to_value(&r) }));
        }
    }
    let checked = details.iter().filter(|d| d.get("skipped").is_none()).count();
    Ok((passed, format!("{checked} cyclic prime members checked"), Value::Array(details)))
}

fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn totient(ctx: &KContext) -> Result<Outcome> {
    let mut details = Vec::new();
    let mut passed = true;
    for (spec, g) in ctx.specs().iter().zip(ctx.groups()) {
        let a = varphi_route_a(g, ctx.ell_spec())?;
        let b = varphi_route_b(g, ctx.ell_spec())?;
        let mut entry = json!({ "group": spec, "route_a": a.to_string(), "route_b": b.to_string(), "agree": a == b });
        passed &= a == b;
        if g.order() <= 16 {
            let mut hall = Vec::new();
            for d in 1..=2u32 {
                let v = varphi_route_a(g, &EllSpec::Power(d))?;
                let count = hall_generating_tuples(g, d);
                let ok = v == Scalar::from_int(count as i64);
                passed &= ok;
                hall.push(json!({ "d": d, "totient": v.to_string(), "tuples": count, "agree": ok }));
            }
            entry["hall"] = Value::Array(hall);
        }
        if g.is_cyclic() {
            let v = varphi_route_a(g, &EllSpec::Power(1))?;
            let e = euler_phi(g.order() as u64);
            let ok = v == Scalar::from_int(e as i64);
            passed &= ok;
            entry["euler"] = json!({ "value": e, "agree": ok });
        }
        details.push(entry);
    }
    Ok((passed, format!("{} groups checked", details.len()), Value::Array(details)))
}

fn trivial(ctx: &KContext) -> Result<Outcome> {
    let r = trivial_module_certificate(ctx)?;
    let summary = format!(
        "{} products, {} failures, certificate {}",
        r.products_checked,
        r.failures.len(),
        if r.positive { "positive" } else { "withheld" }
    );
    Ok((r.failures.is_empty(), summary, to_value(&r)))
}

fn gamma(ctx: &KContext, cfg: &RunConfig) -> Result<Outcome> {
    let g = GammaContext::new(ctx);
    let nu = g.nu_check()?;
    let eq = g.equivariance_check()?;
    let specs: Vec<&str> = cfg.groups.iter().map(|s| s.as_str()).collect();
    let burn_ctx = KContext::from_specs(&specs, EllSpec::Power(1), cfg.order_cap, cfg.cache_dir.as_deref())?;
    let burn = GammaContext::new(&burn_ctx).burnside_check()?;
    let passed = nu.multiplicative && nu.identities && nu.injective && eq.holds && burn.integral && burn.matches_bisets;
    let summary = format!(
        "{} classes, nu checked on {} pairs, {} Burnside products",
        nu.classes, nu.pairs_checked, burn.pairs_checked
    );
    Ok((passed, summary, json!({ "nu": to_value(&nu), "equivariance": to_value(&eq), "burnside": to_value(&burn) })))
}
