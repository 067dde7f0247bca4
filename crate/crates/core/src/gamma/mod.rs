//! The deformed biset category `Γ` on conjugacy classes of subgroups, its
//! averaging embedding `ν` into Λ, and the double Burnside specialization.

mod biset;

pub use biset::biset_product;

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::field::{EllSpec, Scalar};
use crate::goursat::ProductSubgroup;
use crate::lambda::{AlgebraElement, KContext, Key, Kind};
use crate::linalg::rank;

/// `(codomain index, domain index, class index)`; the class index follows
/// the order of the smallest lattice index in each `F × G`-orbit.
pub type GammaKey = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct GammaElement {
    ctx: u64,
    terms: BTreeMap<GammaKey, Scalar>,
}

impl GammaElement {
    pub fn terms(&self) -> impl Iterator<Item = (&GammaKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: GammaKey) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GammaElement) -> Result<GammaElement> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            push(&mut terms, k, c.clone());
        }
        Ok(GammaElement { ctx: self.ctx, terms })
    }

    pub fn scale(&self, c: &Scalar) -> GammaElement {
        let mut terms = BTreeMap::new();
        for (&k, x) in &self.terms {
            push(&mut terms, k, x * c);
        }
        GammaElement { ctx: self.ctx, terms }
    }
}

fn push(map: &mut BTreeMap<GammaKey, Scalar>, k: GammaKey, c: Scalar) {
    let s = map.get(&k).map_or(c.clone(), |x| x + &c);
    if s.is_zero() {
        map.remove(&k);
    } else {
        map.insert(k, s);
    }
}

/// `F × G`-conjugacy classes of `S(F, G)`.
struct Classes {
    class_of: Vec<usize>,
    reps: Vec<usize>,
    sizes: Vec<usize>,
}

pub struct GammaContext<'a> {
    lambda: &'a KContext,
    classes: Vec<Classes>,
}

impl<'a> GammaContext<'a> {
    pub fn new(lambda: &'a KContext) -> GammaContext<'a> {
        let k = lambda.num_groups();
        let mut classes = Vec::with_capacity(k * k);
        for f in 0..k {
            for g in 0..k {
                let space = lambda.space(f, g);
                let (ff, gg) = (lambda.group(f), lambda.group(g));
                let mut class_of = vec![usize::MAX; space.len()];
                let (mut reps, mut sizes) = (Vec::new(), Vec::new());
                for i in 0..space.len() {
                    if class_of[i] != usize::MAX {
                        continue;
                    }
                    let c = reps.len();
                    let u = space.morphism(i);
                    let mut size = 0;
                    for a in ff.elements() {
                        for b in gg.elements() {
                            let j = space.index_of(u.conjugate(a, b).members()).expect("conjugate subgroup");
                            if class_of[j] == usize::MAX {
                                class_of[j] = c;
                                size += 1;
                            }
                        }
                    }
                    reps.push(i);
                    sizes.push(size);
                }
                classes.push(Classes { class_of, reps, sizes });
            }
        }
        GammaContext { lambda, classes }
    }

    fn cls(&self, f: usize, g: usize) -> &Classes {
        &self.classes[f * self.lambda.num_groups() + g]
    }

    pub fn lambda(&self) -> &KContext {
        self.lambda
    }

    pub fn keys(&self) -> Vec<GammaKey> {
        let k = self.lambda.num_groups();
        let mut out = Vec::new();
        for f in 0..k {
            for g in 0..k {
                out.extend((0..self.cls(f, g).reps.len()).map(|c| (f, g, c)));
            }
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.classes.iter().map(|c| c.reps.len()).sum()
    }

    /// Class of a Λ key.
    pub fn class_of(&self, (f, g, i): Key) -> GammaKey {
        (f, g, self.cls(f, g).class_of[i])
    }

    /// Λ key of the canonical representative.
    pub fn representative(&self, (f, g, c): GammaKey) -> Key {
        (f, g, self.cls(f, g).reps[c])
    }

    pub fn class_size(&self, (f, g, c): GammaKey) -> usize {
        self.cls(f, g).sizes[c]
    }

    pub fn zero(&self) -> GammaElement {
        GammaElement { ctx: self.lambda.id(), terms: BTreeMap::new() }
    }

    pub fn basis(&self, k: GammaKey) -> GammaElement {
        self.element([(k, Scalar::one())])
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (GammaKey, Scalar)>) -> GammaElement {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            push(&mut map, k, c);
        }
        GammaElement { ctx: self.lambda.id(), terms: map }
    }

    /// `d_{Δ(G)}`.
    pub fn identity(&self, g: usize) -> GammaElement {
        let d = ProductSubgroup::diagonal(self.lambda.group(g));
        self.basis(self.class_of(self.lambda.key(&d).expect("diagonal")))
    }

    /// `d_U d_V` for Λ keys `U`, `V`, summing over double cosets
    /// `U^• x •V`. With `rng`, each double coset is represented by a random
    /// member instead of its least element.
    pub fn multiply_keys<R: Rng>(&self, u: Key, v: Key, mut rng: Option<&mut R>) -> Result<GammaElement> {
        if u.1 != v.0 {
            return Err(Error::MiddleMismatch);
        }
        let (f, g, h) = (u.0, u.1, v.1);
        let gg = self.lambda.group(g);
        let upper = &self.lambda.projections(u).right;
        let lower = &self.lambda.projections(v).left;
        let vm = self.lambda.morphism(v);
        let hspace = self.lambda.space(g, h);
        let mut seen = ElemSet::empty(gg.order());
        let mut out = BTreeMap::new();
        for x in gg.elements() {
            if seen.contains(x) {
                continue;
            }
            let mut coset = Vec::new();
            for a in upper.iter() {
                for b in lower.iter() {
                    let y = gg.mul(gg.mul(a, x), b);
                    if seen.insert(y) {
                        coset.push(y);
                    }
                }
            }
            let rep = match rng.as_mut() {
                Some(r) => coset[r.random_range(0..coset.len())],
                None => x,
            };
            let conj = vm.conjugate(rep, self.lambda.group(h).identity());
            let vx = hspace.index_of(conj.members()).expect("conjugate subgroup");
            let (w, m) = self.lambda.star_idx(f, g, h, u.2, vx);
            let c = self.lambda.ell(m)?.div(&Scalar::from_int(m as i64))?;
            push(&mut out, self.class_of((f, h, w)), c);
        }
        Ok(GammaElement { ctx: self.lambda.id(), terms: out })
    }

    pub fn multiply(&self, a: &GammaElement, b: &GammaElement) -> Result<GammaElement> {
        let id = self.lambda.id();
        if a.ctx != id || b.ctx != id {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.zero();
        for (&x, cx) in &a.terms {
            for (&y, cy) in b.terms.iter().filter(|(y, _)| y.0 == x.1) {
                let p = self.multiply_keys::<rand::rngs::ThreadRng>(self.representative(x), self.representative(y), None)?;
                out = out.add(&p.scale(&(cx * cy)))?;
            }
        }
        Ok(out)
    }

    /// `σ_G(x) = s_{Δ(G, x, G)}` with `Δ(G, x, G) = {(x b x⁻¹, b)}`.
    pub fn sigma_g(&self, g: usize, x: usize) -> AlgebraElement {
        let gg = self.lambda.group(g);
        let pairs: Vec<(usize, usize)> = gg.elements().map(|b| (gg.conj(x, b), b)).collect();
        let u = ProductSubgroup::generated(gg, gg, &pairs);
        self.lambda.basis(Kind::Square, self.lambda.key(&u).expect("twisted diagonal"))
    }

    /// `s̄_U = (1/(|F||G|)) Σ_{f, g} s_{f×g U}`.
    pub fn bar_s(&self, u: Key) -> AlgebraElement {
        let (ff, gg) = (self.lambda.group(u.0), self.lambda.group(u.1));
        let m = self.lambda.morphism(u);
        let space = self.lambda.space(u.0, u.1);
        let w = Scalar::from_int((ff.order() * gg.order()) as i64).inv().expect("nonzero");
        let mut terms = Vec::new();
        for a in ff.elements() {
            for b in gg.elements() {
                let j = space.index_of(m.conjugate(a, b).members()).expect("conjugate subgroup");
                terms.push(((u.0, u.1, j), w.clone()));
            }
        }
        self.lambda.element(Kind::Square, terms)
    }

    /// `ν(d_U) = |G| s̄_U / |U|`, extended linearly.
    pub fn nu(&self, a: &GammaElement) -> Result<AlgebraElement> {
        if a.ctx != self.lambda.id() {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.lambda.zero(Kind::Square);
        for (&k, c) in &a.terms {
            let u = self.representative(k);
            let ratio = Scalar::from_int(self.lambda.group(k.1).order() as i64)
                .div(&Scalar::from_int(self.lambda.morphism(u).order() as i64))?;
            out = out.add(&self.bar_s(u).scale(&(&ratio * c)))?;
        }
        Ok(out)
    }

    /// Checks `f×g s_U = σ_F(f) s_U σ_G(g⁻¹)` for every key and every pair.
    pub fn equivariance_check(&self) -> Result<EquivarianceReport> {
        let lam = self.lambda;
        let mut checked = 0;
        let mut holds = true;
        for u in lam.keys() {
            let (ff, gg) = (lam.group(u.0), lam.group(u.1));
            let m = lam.morphism(u);
            let s = lam.basis(Kind::Square, u);
            for a in ff.elements() {
                let left = lam.multiply(&self.sigma_g(u.0, a), &s)?;
                for b in gg.elements() {
                    let rhs = lam.multiply(&left, &self.sigma_g(u.1, gg.inv(b)))?;
                    let j = lam.space(u.0, u.1).index_of(m.conjugate(a, b).members()).expect("conjugate");
                    holds &= rhs == lam.basis(Kind::Square, (u.0, u.1, j));
                    checked += 1;
                }
            }
        }
        Ok(EquivarianceReport { checked, holds })
    }

    /// `ν` on every composable basis pair, at the identities, and its rank.
    pub fn nu_check(&self) -> Result<NuReport> {
        let keys = self.keys();
        let mut pairs = 0;
        let mut multiplicative = true;
        let images: BTreeMap<GammaKey, AlgebraElement> =
            keys.iter().map(|&k| Ok((k, self.nu(&self.basis(k))?))).collect::<Result<_>>()?;
        for &x in &keys {
            for &y in keys.iter().filter(|y| y.0 == x.1) {
                let lhs = self.nu(&self.multiply(&self.basis(x), &self.basis(y))?)?;
                let rhs = self.lambda.multiply(&images[&x], &images[&y])?;
                multiplicative &= lhs == rhs;
                pairs += 1;
            }
        }
        let mut identities = true;
        for g in 0..self.lambda.num_groups() {
            let gg = self.lambda.group(g);
            let w = Scalar::from_int(gg.order() as i64).inv()?;
            let mut e = self.lambda.zero(Kind::Square);
            for x in gg.elements() {
                e = e.add(&self.sigma_g(g, x).scale(&w))?;
            }
            identities &= self.nu(&self.identity(g))? == e && self.lambda.multiply(&e, &e)? == e;
        }
        let lkeys = self.lambda.keys();
        let rows: Vec<Vec<Scalar>> =
            keys.iter().map(|k| lkeys.iter().map(|&j| images[k].coefficient(j)).collect()).collect();
        let image_rank = rank(&rows);
        Ok(NuReport {
            classes: keys.len(),
            pairs_checked: pairs,
            multiplicative,
            identities,
            image_rank,
            injective: image_rank == keys.len(),
        })
    }

    /// At `l(n) = n`: every structure constant is a non-negative integer and
    /// agrees with the composition of transitive bisets.
    pub fn burnside_check(&self) -> Result<BurnsideReport> {
        if *self.lambda.ell_spec() != EllSpec::Power(1) {
            return Err(Error::Precondition("the Burnside comparison needs ell = power:1".into()));
        }
        let keys = self.keys();
        let mut pairs = 0;
        let mut integral = true;
        let mut matches = true;
        let mut table = Vec::new();
        for &x in &keys {
            for &y in keys.iter().filter(|y| y.0 == x.1) {
                let p = self.multiply(&self.basis(x), &self.basis(y))?;
                let oracle = biset_product(self, x, y);
                let mut row = BTreeMap::new();
                for (&k, c) in p.terms() {
                    let n = c.as_rational().filter(|r| r.is_integer() && *r.numer() >= num::BigInt::from(0));
                    integral &= n.is_some();
                    row.insert(k, c.to_string());
                }
                let got: BTreeMap<GammaKey, Scalar> = p.terms().map(|(&k, c)| (k, c.clone())).collect();
                let want: BTreeMap<GammaKey, Scalar> =
                    oracle.into_iter().map(|(k, n)| (k, Scalar::from_int(n as i64))).collect();
                matches &= got == want;
                table.push(ProductEntry {
                    left: x,
                    right: y,
                    terms: row.into_iter().map(|(k, c)| (k, c)).collect(),
                });
                pairs += 1;
            }
        }
        Ok(BurnsideReport { classes: keys.len(), pairs_checked: pairs, integral, matches_bisets: matches, table })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub checked: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NuReport {
    pub classes: usize,
    pub pairs_checked: usize,
    pub multiplicative: bool,
    /// `ν(d_{Δ(G)}) = σ_G(e_G)` and it is idempotent.
    pub identities: bool,
    pub image_rank: usize,
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductEntry {
    pub left: GammaKey,
    pub right: GammaKey,
    pub terms: Vec<(GammaKey, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BurnsideReport {
    pub classes: usize,
    pub pairs_checked: usize,
    pub integral: bool,
    pub matches_bisets: bool,
    pub table: Vec<ProductEntry>,
}
