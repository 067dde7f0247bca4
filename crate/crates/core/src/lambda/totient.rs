//! The totient of `l`, Hall's generating-tuple count, and the simplicity
//! certificate for the module generated by `i_G`.

use std::collections::BTreeSet;

use num::Zero;
use serde::Serialize;

use super::{KContext, Kind};
use crate::bits::ElemSet;
use crate::error::Result;
use crate::field::{EllSpec, Scalar};
use crate::goursat::ProductSubgroup;
use crate::group::GroupRef;
use crate::poset::Lattice;

/// `φ(G) = Σ_{U <= G} möb(U, G) l(|U|)`.
pub fn varphi_route_a(g: &GroupRef, ell: &EllSpec) -> Result<Scalar> {
    varphi_within(g, &g.all(), ell)
}

/// `φ(B)` for a subgroup `B` of `g`.
pub fn varphi_within(g: &GroupRef, b: &ElemSet, ell: &EllSpec) -> Result<Scalar> {
    let lat = Lattice::within(g, b);
    let top = lat.top();
    let col = lat.moebius_column(top);
    let mut acc = Scalar::zero();
    for (k, &u) in lat.below(top).iter().enumerate() {
        if !col[k].is_zero() {
            acc += &(&Scalar::from_bigint(col[k].clone()) * &ell.ell(lat.get(u).len() as u64)?);
        }
    }
    Ok(acc)
}

/// `φ(G) = Σ_{M, N <= G} möb(M, G) möb(N, G) l(|M ∩ N|)`.
pub fn varphi_route_b(g: &GroupRef, ell: &EllSpec) -> Result<Scalar> {
    let lat = Lattice::new(g);
    let top = lat.top();
    let col = lat.moebius_column(top);
    let nz: Vec<(usize, &num::BigInt)> =
        lat.below(top).iter().zip(col).filter(|(_, m)| !m.is_zero()).map(|(&u, m)| (u, m)).collect();
    let mut acc = Scalar::zero();
    for &(m, a) in &nz {
        for &(n, b) in &nz {
            let o = lat.get(m).intersection(lat.get(n)).len();
            acc += &(&Scalar::from_bigint(a * b) * &ell.ell(o as u64)?);
        }
    }
    Ok(acc)
}

/// Number of `d`-tuples of elements of `g` that generate `g`, by scanning all
/// tuples.
pub fn hall_generating_tuples(g: &GroupRef, d: u32) -> u64 {
    let n = g.order();
    let total = n.pow(d);
    let mut count = 0;
    let mut tuple = vec![0usize; d as usize];
    for code in 0..total {
        let mut c = code;
        for t in tuple.iter_mut() {
            *t = c % n;
            c /= n;
        }
        if g.closure(tuple.iter().copied()).len() == n {
            count += 1;
        }
    }
    count
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivialPairCheck {
    pub outer: String,
    pub inner: String,
    pub left: String,
    pub right: String,
    pub expected: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TotientValue {
    pub group: String,
    pub subgroup: String,
    pub order: usize,
    pub value: String,
    pub nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivialModuleReport {
    /// Number of products `t_{1×B} t_{B'×1}` compared.
    pub products_checked: usize,
    /// Products that differ from `δ_{B,B'} φ(B) t_{1×1}`.
    pub failures: Vec<TrivialPairCheck>,
    pub totients: Vec<TotientValue>,
    /// Every `φ(B)` is nonzero.
    pub hypothesis_holds: bool,
    /// `Λ i_G` has the expected basis `{s_{B×1}}` for every `G`.
    pub span_checked: bool,
    /// Groups `G` for which `Λ i_G` is certified simple.
    pub certified: Vec<String>,
    pub positive: bool,
}

/// Checks `t_{1×B}^{G,F} t_{B'×1}^{F,G} = δ_{B,B'} φ(B) t_{1×1}^{G,G}` for all
/// `G, F ∈ K` and `B, B' <= F`. When additionally every `φ(B)` is nonzero,
/// each nonzero `y = Σ y_{F,B} t_{B×1}^{F,G}` in `Λ i_G` has some
/// `t_{1×B} y = y_{F,B} φ(B) i_G ≠ 0`, so `Λ y = Λ i_G` and the module is
/// simple.
pub fn trivial_module_certificate(ctx: &KContext) -> Result<TrivialModuleReport> {
    let k = ctx.num_groups();
    let ell = ctx.ell_spec();
    let subs: Vec<Vec<ElemSet>> = ctx.groups().iter().map(|f| Lattice::new(f).subgroups().to_vec()).collect();
    let mut totients = Vec::new();
    let mut phis: Vec<Vec<Scalar>> = Vec::new();
    for (f, grp) in ctx.groups().iter().enumerate() {
        let mut row = Vec::new();
        for b in &subs[f] {
            let v = varphi_within(grp, b, ell)?;
            totients.push(TotientValue {
                group: ctx.specs()[f].clone(),
                subgroup: b.to_hex(),
                order: b.len(),
                value: v.to_string(),
                nonzero: !v.is_zero(),
            });
            row.push(v);
        }
        phis.push(row);
    }
    let hypothesis_holds = totients.iter().all(|t| t.nonzero);

    let mut checked = 0;
    let mut failures = Vec::new();
    let mut span_ok = true;
    for g in 0..k {
        let gg = ctx.group(g);
        let one_g = gg.trivial();
        let t11 = ctx.basis(Kind::Round, ctx.key(&ProductSubgroup::product(gg, gg, &one_g, &one_g))?);
        for f in 0..k {
            let ff = ctx.group(f);
            let one_f = ff.trivial();
            for (bi, b) in subs[f].iter().enumerate() {
                let left = ctx.basis(Kind::Round, ctx.key(&ProductSubgroup::product(gg, ff, &one_g, b))?);
                for (ci, c) in subs[f].iter().enumerate() {
                    let right = ctx.basis(Kind::Round, ctx.key(&ProductSubgroup::product(ff, gg, c, &one_f))?);
                    let got = ctx.multiply(&left, &right)?;
                    let expected = if bi == ci { t11.scale(&phis[f][bi]) } else { ctx.zero(Kind::Round) };
                    checked += 1;
                    if got != expected {
                        failures.push(TrivialPairCheck {
                            outer: ctx.specs()[g].clone(),
                            inner: ctx.specs()[f].clone(),
                            left: b.to_hex(),
                            right: c.to_hex(),
                            expected: if bi == ci { phis[f][bi].to_string() } else { "0".into() },
                            holds: false,
                        });
                    }
                }
            }
        }
        // Λ i_G is spanned by the s_U i_G = σ s_{U * (1×1)}
        let i_g = (g, g, ctx.key(&ProductSubgroup::product(gg, gg, &one_g, &one_g))?.2);
        let mut span: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        for key in ctx.keys().into_iter().filter(|k| k.1 == g) {
            span.insert(ctx.star_key(key, i_g)?);
        }
        let expected: usize = subs.iter().map(|s| s.len()).sum();
        let all_left_products = span.iter().all(|&key| {
            let p = ctx.projections(key);
            p.right.len() == 1 && p.left == p.left_kernel
        });
        span_ok &= span.len() == expected && all_left_products;
    }
    let positive = failures.is_empty() && hypothesis_holds && span_ok;
    Ok(TrivialModuleReport {
        products_checked: checked,
        failures,
        totients,
        hypothesis_holds,
        span_checked: span_ok,
        certified: if positive { ctx.specs().to_vec() } else { Vec::new() },
        positive,
    })
}
