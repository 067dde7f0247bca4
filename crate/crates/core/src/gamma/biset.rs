//! Composition of transitive bisets by brute force, used as an oracle for
//! the double-coset structure constants at `l(n) = n`.

use std::collections::BTreeMap;

use super::{GammaContext, GammaKey};
use crate::bits::ElemSet;
use crate::group::Group;

/// Left cosets of `u` in `a × b`, as a coset id for each pair index.
fn cosets(a: &Group, b: &Group, u: &ElemSet) -> (Vec<usize>, Vec<(usize, usize)>) {
    let m = b.order();
    let mut id = vec![usize::MAX; a.order() * m];
    let mut reps = Vec::new();
    for p in 0..id.len() {
        if id[p] != usize::MAX {
            continue;
        }
        let (x, y) = (p / m, p % m);
        for q in u.iter() {
            id[a.mul(x, q / m) * m + b.mul(y, q % m)] = reps.len();
        }
        reps.push((x, y));
    }
    (id, reps)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `[(F×G)/U] ×_G [(G×H)/V]` split into transitive `F×H`-sets, counted by
/// the class of their point stabilizers. Bisets are `F×G`-sets with
/// `f x g = (f, g⁻¹) x`.
pub fn biset_product(ctx: &GammaContext, x: GammaKey, y: GammaKey) -> BTreeMap<GammaKey, u64> {
    let lam = ctx.lambda();
    let (u, v) = (ctx.representative(x), ctx.representative(y));
    let (ff, gg, hh) = (lam.group(x.0), lam.group(x.1), lam.group(y.1));
    let (xid, xreps) = cosets(ff, gg, lam.morphism(u).members());
    let (yid, yreps) = cosets(gg, hh, lam.morphism(v).members());
    let (gm, hm) = (gg.order(), hh.order());
    let nx = xreps.len();
    let ny = yreps.len();
    // right action of G on X, left action of G on Y
    let xg = |c: usize, g: usize| {
        let (a, b) = xreps[c];
        xid[a * gm + gg.mul(gg.inv(g), b)]
    };
    let gy = |g: usize, c: usize| {
        let (a, b) = yreps[c];
        yid[gg.mul(g, a) * hm + b]
    };
    let mut parent: Vec<usize> = (0..nx * ny).collect();
    for cx in 0..nx {
        for cy in 0..ny {
            for g in gg.elements() {
                let p = find(&mut parent, xg(cx, g) * ny + cy);
                let q = find(&mut parent, cx * ny + gy(g, cy));
                if p != q {
                    parent[p] = q;
                }
            }
        }
    }
    let root: Vec<usize> = (0..nx * ny).map(|i| find(&mut parent, i)).collect();
    // (f, h) [x, y] = [f x, y h⁻¹]
    let act = |f: usize, h: usize, i: usize| {
        let (cx, cy) = (i / ny, i % ny);
        let (a, b) = xreps[cx];
        let (c, d) = yreps[cy];
        let fx = xid[ff.mul(f, a) * gm + b];
        // y h⁻¹ = (1, h) y
        let yh = yid[c * hm + hh.mul(h, d)];
        root[fx * ny + yh]
    };
    let mut seen = vec![false; nx * ny];
    let mut out = BTreeMap::new();
    for i in 0..nx * ny {
        let r = root[i];
        if seen[r] {
            continue;
        }
        let mut stab = ElemSet::empty(ff.order() * hm);
        for f in ff.elements() {
            for h in hh.elements() {
                let t = act(f, h, r);
                seen[t] = true;
                if t == r {
                    stab.insert(f * hm + h);
                }
            }
        }
        let w = lam.space(x.0, y.1).index_of(&stab).expect("stabilizer is a subgroup");
        *out.entry(ctx.class_of((x.0, y.1, w))).or_insert(0) += 1;
    }
    out
}
