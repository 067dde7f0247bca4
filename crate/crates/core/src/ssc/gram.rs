//! The trace form of the left regular representation, and the centre.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{factorize, Scalar};
use crate::lambda::{AlgebraElement, KContext, Key, Kind};
use crate::linalg::{as_polynomial_matrix, bareiss_rank, nullspace, rank, Matrix};

#[derive(Clone, Debug)]
pub enum GramMode {
    /// Rank over the coefficient field itself.
    Symbolic,
    /// Rank at each of the given points.
    Specialized(Vec<BTreeMap<u64, BigRational>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRank {
    pub point: BTreeMap<String, String>,
    pub rank: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub dimension: usize,
    pub mode: &'static str,
    pub symbolic_rank: Option<usize>,
    pub points: Vec<PointRank>,
    pub radical_dimension: Option<usize>,
    pub radical_text: Vec<String>,
    #[serde(skip)]
    pub radical: Vec<AlgebraElement>,
}

/// `tr(L_{s_W})` for each endomorphism key `W`: the sum of `σ(W, X)` over
/// `X` with `W * X = X`.
fn traces(ctx: &KContext, keys: &[Key]) -> Result<BTreeMap<Key, Scalar>> {
    let mut out = BTreeMap::new();
    for w in ctx.endo_keys() {
        let mut t = Scalar::zero();
        for &x in keys.iter().filter(|x| x.0 == w.1) {
            if ctx.star_key(w, x)? == x {
                t += &ctx.sigma(w, x)?;
            }
        }
        out.insert(w, t);
    }
    Ok(out)
}

/// `G(U, V) = tr(L_{s_U s_V})` on the square basis, in [`KContext::keys`] order.
pub fn gram_matrix(ctx: &KContext) -> Result<Matrix<Scalar>> {
    let keys = ctx.keys();
    let tr = traces(ctx, &keys)?;
    let n = keys.len();
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for (a, &u) in keys.iter().enumerate() {
        for (b, &v) in keys.iter().enumerate() {
            if u.1 != v.0 || u.0 != v.1 {
                continue;
            }
            let w = ctx.star_key(u, v)?;
            let t = &tr[&w];
            if !t.is_zero() {
                m[a][b] = &ctx.sigma(u, v)? * t;
            }
        }
    }
    Ok(m)
}

fn is_prime(n: u64) -> bool {
    n > 1 && factorize(n) == vec![(n, 1)]
}

/// Primes whose variables can occur in structure constants of `ctx`.
fn context_primes(ctx: &KContext) -> Vec<u64> {
    let mut ps = BTreeSet::new();
    for g in ctx.groups() {
        for (p, _) in factorize(g.order() as u64) {
            ps.insert(p);
        }
    }
    ps.into_iter().collect()
}

/// `count` points assigning distinct random primes in `[10^6, 10^7)` to the
/// variables of `ctx`, reproducible from `seed`.
pub fn random_points(ctx: &KContext, seed: u64, count: usize) -> Result<Vec<BTreeMap<u64, BigRational>>> {
    let primes = context_primes(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..count {
        let mut point = BTreeMap::new();
        for &p in &primes {
            let v = loop {
                let mut c: u64 = rng.random_range(1_000_000..10_000_000);
                while !is_prime(c) {
                    c += 1;
                }
                if used.insert(c) {
                    break c;
                }
            };
            point.insert(p, BigRational::from_integer(BigInt::from(v)));
        }
        out.push(point);
    }
    Ok(out)
}

fn transpose<F: Clone>(m: &Matrix<F>) -> Matrix<F> {
    let n = m.len();
    let c = m.first().map_or(0, |r| r.len());
    (0..c).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

/// Renders a square-basis element as `c*s[F,G:hex] + ...`.
pub fn element_text(ctx: &KContext, a: &AlgebraElement) -> String {
    let letter = match a.kind() {
        Kind::Square => "s",
        Kind::Round => "t",
    };
    let parts: Vec<String> = a
        .terms()
        .map(|(&k, c)| {
            let specs = ctx.specs();
            format!("({c})*{letter}[{},{}:{}]", specs[k.0], specs[k.1], ctx.morphism(k).members().to_hex())
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Rank of the trace form and, when it is degenerate over the coefficient
/// field, a basis of its radical.
pub fn gram_radical(ctx: &KContext, mode: &GramMode) -> Result<GramReport> {
    let g = gram_matrix(ctx)?;
    let n = g.len();
    let keys = ctx.keys();
    let mut report = GramReport {
        dimension: n,
        mode: "symbolic",
        symbolic_rank: None,
        points: Vec::new(),
        radical_dimension: None,
        radical_text: Vec::new(),
        radical: Vec::new(),
    };
    match mode {
        GramMode::Symbolic => {
            let r = match as_polynomial_matrix(&g) {
                Some(p) => bareiss_rank(&p)?,
                None => rank(&g),
            };
            report.symbolic_rank = Some(r);
            if r < n {
                for v in nullspace(&transpose(&g), n) {
                    let a = ctx.element(Kind::Square, keys.iter().copied().zip(v));
                    report.radical_text.push(element_text(ctx, &a));
                    report.radical.push(a);
                }
            }
            report.radical_dimension = Some(n - r);
        }
        GramMode::Specialized(points) => {
            report.mode = "specialized";
            for pt in points {
                let text = pt.iter().map(|(p, v)| (format!("l{p}"), v.to_string())).collect();
                let spec: Result<Matrix<BigRational>> = g
                    .iter()
                    .map(|row| row.iter().map(|x| x.specialize(pt).map_err(Error::from)).collect())
                    .collect();
                report.points.push(match spec {
                    Ok(m) => PointRank { point: text, rank: Some(rank(&m)), error: None },
                    Err(e) => PointRank { point: text, rank: None, error: Some(e.to_string()) },
                });
            }
        }
    }
    Ok(report)
}

/// A basis of `Z(Λ)` in the square basis. Central elements commute with
/// every `i_G`, so only endomorphism keys carry unknowns.
pub fn center(ctx: &KContext) -> Result<Vec<AlgebraElement>> {
    let unknowns = ctx.endo_keys();
    let mut rows: BTreeMap<(Key, Key), Vec<Scalar>> = BTreeMap::new();
    let width = unknowns.len();
    let mut add = |s: Key, y: Key, col: usize, c: Scalar| {
        let row = rows.entry((s, y)).or_insert_with(|| vec![Scalar::zero(); width]);
        row[col] = &row[col] + &c;
    };
    for s in ctx.keys() {
        for (col, &x) in unknowns.iter().enumerate() {
            if x.1 == s.0 {
                add(s, ctx.star_key(x, s)?, col, ctx.sigma(x, s)?);
            }
            if s.1 == x.0 {
                add(s, ctx.star_key(s, x)?, col, -ctx.sigma(s, x)?);
            }
        }
    }
    let m: Matrix<Scalar> = rows.into_values().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    let basis = if m.is_empty() {
        (0..width).map(|i| (0..width).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    } else {
        nullspace(&m, width)
    };
    Ok(basis.into_iter().map(|v| ctx.element(Kind::Square, unknowns.iter().copied().zip(v))).collect())
}
