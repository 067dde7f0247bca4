//! The twisted subgroup-category algebra over a finite set of groups.

mod corner;
mod dims;
mod element;
mod tau;
mod totient;

pub use corner::{CornerEmbedding, CornerReport};
pub use dims::{dimension_identity, DimensionReport, SeedCount};
pub use element::{AlgebraElement, EntryDoc, Key, Kind};
pub use tau::{tau_bruteforce_standalone, tau_reduced_standalone};
pub use totient::{
    hall_generating_tuples, trivial_module_certificate, varphi_route_a, varphi_route_b, varphi_within,
    TotientValue, TrivialModuleReport, TrivialPairCheck,
};

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

use num::Zero;

use crate::bits::ElemSet;
use crate::error::{Error, FieldError, Result};
use crate::field::{EllSpec, Scalar};
use crate::goursat::{is_section_of, product_group, ProductSubgroup};
use crate::group::{automorphisms, make_group, AutGroup, GroupRef, DEFAULT_ORDER_CAP};
use crate::poset::Lattice;

/// The Goursat projections of one morphism.
#[derive(Clone, Debug)]
pub struct Projections {
    pub left: ElemSet,
    pub left_kernel: ElemSet,
    pub right_kernel: ElemSet,
    pub right: ElemSet,
}

/// `S(F, G)`: the subgroups of `F x G` with their lattice.
pub struct HomSpace {
    codomain: GroupRef,
    domain: GroupRef,
    lattice: Lattice,
    proj: Vec<Projections>,
}

impl HomSpace {
    fn new(f: &GroupRef, g: &GroupRef, cache_key: &str, cache_dir: Option<&Path>) -> HomSpace {
        let lattice = Lattice::cached(&product_group(f, g), cache_key, cache_dir);
        let proj = lattice
            .subgroups()
            .iter()
            .map(|m| {
                let u = ProductSubgroup::new_unchecked(f.clone(), g.clone(), m.clone());
                Projections {
                    left: u.left_projection(),
                    left_kernel: u.left_kernel(),
                    right_kernel: u.right_kernel(),
                    right: u.right_projection(),
                }
            })
            .collect();
        HomSpace { codomain: f.clone(), domain: g.clone(), lattice, proj }
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn projections(&self, i: usize) -> &Projections {
        &self.proj[i]
    }

    pub fn morphism(&self, i: usize) -> ProductSubgroup {
        ProductSubgroup::new_unchecked(self.codomain.clone(), self.domain.clone(), self.lattice.get(i).clone())
    }

    pub fn index_of(&self, m: &ElemSet) -> Option<usize> {
        self.lattice.index_of(m)
    }
}

/// `(index of U * V, |U_• ∩ _•V|)` for every pair.
struct StarTable {
    cols: usize,
    cells: Vec<(u32, u32)>,
}

static NEXT_CONTEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A configured set of groups `K` with a choice of `l`, together with every
/// lattice, star table and τ value computed so far. Lazily filled tables are
/// write-once.
pub struct KContext {
    id: u64,
    specs: Vec<String>,
    groups: Vec<GroupRef>,
    ell: EllSpec,
    ell_table: Vec<std::result::Result<Scalar, FieldError>>,
    spaces: Vec<HomSpace>,
    stars: Vec<OnceLock<StarTable>>,
    adequate: Vec<OnceLock<Vec<Vec<usize>>>>,
    autos: Vec<OnceLock<AutGroup>>,
    tau_cache: Mutex<HashMap<(Key, usize, usize, usize), Scalar>>,
}

impl KContext {
    /// Builds a context from named groups; repeated names are merged.
    pub fn new(groups: Vec<(String, GroupRef)>, ell: EllSpec) -> Result<KContext> {
        KContext::with_cache(groups, ell, None)
    }

    pub fn with_cache(groups: Vec<(String, GroupRef)>, ell: EllSpec, cache_dir: Option<&Path>) -> Result<KContext> {
        let mut specs = Vec::new();
        let mut gs = Vec::new();
        for (s, g) in groups {
            if !specs.contains(&s) {
                specs.push(s);
                gs.push(g);
            }
        }
        if gs.is_empty() {
            return Err(Error::Precondition("the set of groups is empty".into()));
        }
        // every prime dividing a group order needs a value
        for g in &gs {
            ell.ell(g.order() as u64)?;
        }
        let k = gs.len();
        let max = gs.iter().map(|g| g.order()).max().unwrap_or(1);
        let ell_table = (0..=max).map(|n| if n == 0 { Ok(Scalar::zero()) } else { ell.ell(n as u64) }).collect();
        let mut spaces = Vec::with_capacity(k * k);
        for f in 0..k {
            for g in 0..k {
                let key = format!("hom_{}_{}", specs[f], specs[g]);
                spaces.push(HomSpace::new(&gs[f], &gs[g], &key, cache_dir));
            }
        }
        Ok(KContext {
            id: NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed),
            specs,
            groups: gs,
            ell,
            ell_table,
            stars: (0..k * k * k).map(|_| OnceLock::new()).collect(),
            adequate: (0..k * k).map(|_| OnceLock::new()).collect(),
            autos: (0..k).map(|_| OnceLock::new()).collect(),
            spaces,
            tau_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Parses group specs with the given order cap.
    pub fn from_specs(specs: &[&str], ell: EllSpec, order_cap: usize, cache_dir: Option<&Path>) -> Result<KContext> {
        let groups = specs
            .iter()
            .map(|s| Ok((s.to_string(), make_group(s, order_cap)?)))
            .collect::<Result<Vec<_>>>()?;
        KContext::with_cache(groups, ell, cache_dir)
    }

    /// Shorthand with the default cap and no disk cache.
    pub fn parse(specs: &[&str], ell: EllSpec) -> Result<KContext> {
        KContext::from_specs(specs, ell, DEFAULT_ORDER_CAP, None)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn ell_spec(&self) -> &EllSpec {
        &self.ell
    }

    pub fn specs(&self) -> &[String] {
        &self.specs
    }

    pub fn groups(&self) -> &[GroupRef] {
        &self.groups
    }

    pub fn group(&self, i: usize) -> &GroupRef {
        &self.groups[i]
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn group_index(&self, g: &GroupRef) -> Result<usize> {
        self.groups
            .iter()
            .position(|h| h.id() == g.id())
            .ok_or_else(|| Error::NotInContext(g.name().to_string()))
    }

    pub fn space(&self, f: usize, g: usize) -> &HomSpace {
        &self.spaces[f * self.groups.len() + g]
    }

    /// `dim Λ = Σ |S(F, G)|`.
    pub fn dimension(&self) -> usize {
        self.spaces.iter().map(|s| s.len()).sum()
    }

    /// All basis keys in canonical order.
    pub fn keys(&self) -> Vec<Key> {
        let k = self.groups.len();
        let mut out = Vec::with_capacity(self.dimension());
        for f in 0..k {
            for g in 0..k {
                out.extend((0..self.space(f, g).len()).map(|i| (f, g, i)));
            }
        }
        out
    }

    /// Keys of the endomorphism spaces `S(G, G)`.
    pub fn endo_keys(&self) -> Vec<Key> {
        self.keys().into_iter().filter(|&(f, g, _)| f == g).collect()
    }

    pub fn ell(&self, n: usize) -> Result<Scalar> {
        match self.ell_table.get(n) {
            Some(v) => Ok(v.clone()?),
            None => Ok(self.ell.ell(n as u64)?),
        }
    }

    pub fn key(&self, u: &ProductSubgroup) -> Result<Key> {
        let f = self.group_index(u.codomain())?;
        let g = self.group_index(u.domain())?;
        let i = self
            .space(f, g)
            .index_of(u.members())
            .ok_or_else(|| Error::NotSubgroup("morphism outside its hom space".into()))?;
        Ok((f, g, i))
    }

    pub fn morphism(&self, (f, g, i): Key) -> ProductSubgroup {
        self.space(f, g).morphism(i)
    }

    pub fn projections(&self, (f, g, i): Key) -> &Projections {
        self.space(f, g).projections(i)
    }

    fn star_table(&self, f: usize, g: usize, h: usize) -> &StarTable {
        let k = self.groups.len();
        self.stars[(f * k + g) * k + h].get_or_init(|| {
            let (a, b, c) = (self.space(f, g), self.space(g, h), self.space(f, h));
            let mid = self.groups[g].order();
            let m = self.groups[h].order();
            let width = self.groups[f].order() * m;
            let mut by_mid: Vec<Vec<Vec<usize>>> = Vec::with_capacity(b.len());
            for v in 0..b.len() {
                let mut rows = vec![Vec::new(); mid];
                for x in b.lattice.get(v).iter() {
                    rows[x / m].push(x % m);
                }
                by_mid.push(rows);
            }
            let mut cells = Vec::with_capacity(a.len() * b.len());
            for u in 0..a.len() {
                let us = a.lattice.get(u);
                for (v, rows) in by_mid.iter().enumerate() {
                    let mut w = ElemSet::empty(width);
                    for x in us.iter() {
                        for &z in &rows[x % mid] {
                            w.insert((x / mid) * m + z);
                        }
                    }
                    let idx = c.index_of(&w).expect("star of subgroups is a subgroup");
                    let o = a.proj[u].right_kernel.intersection(&b.proj[v].left_kernel).len();
                    cells.push((idx as u32, o as u32));
                }
            }
            StarTable { cols: b.len(), cells }
        })
    }

    /// `(index of U * V, |U_• ∩ _•V|)` for `U ∈ S(F,G)`, `V ∈ S(G,H)`.
    pub fn star_idx(&self, f: usize, g: usize, h: usize, u: usize, v: usize) -> (usize, usize) {
        let t = self.star_table(f, g, h);
        let (w, o) = t.cells[u * t.cols + v];
        (w as usize, o as usize)
    }

    /// `σ(U, V)` for composable keys.
    pub fn sigma(&self, a: Key, b: Key) -> Result<Scalar> {
        if a.1 != b.0 {
            return Err(Error::MiddleMismatch);
        }
        let (_, o) = self.star_idx(a.0, a.1, b.1, a.2, b.2);
        self.ell(o)
    }

    /// Key of `U * V`.
    pub fn star_key(&self, a: Key, b: Key) -> Result<Key> {
        if a.1 != b.0 {
            return Err(Error::MiddleMismatch);
        }
        Ok((a.0, b.1, self.star_idx(a.0, a.1, b.1, a.2, b.2).0))
    }

    /// `ad(W)` for every `W` in `S(F, H)`.
    pub fn adequate(&self, f: usize, h: usize, w: usize) -> &[usize] {
        let k = self.groups.len();
        let all = self.adequate[f * k + h].get_or_init(|| {
            let s = self.space(f, h);
            (0..s.len())
                .map(|w| {
                    let pw = &s.proj[w];
                    s.lattice
                        .below(w)
                        .iter()
                        .copied()
                        .filter(|&x| s.proj[x].left == pw.left && s.proj[x].right == pw.right)
                        .collect()
                })
                .collect()
        });
        &all[w]
    }

    pub fn automorphisms(&self, g: usize) -> &AutGroup {
        self.autos[g].get_or_init(|| automorphisms(&self.groups[g]))
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.context_id() != self.id {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn zero(&self, kind: Kind) -> AlgebraElement {
        AlgebraElement::zero(self.id, kind)
    }

    pub fn basis(&self, kind: Kind, key: Key) -> AlgebraElement {
        AlgebraElement::basis(self.id, kind, key)
    }

    pub fn element(&self, kind: Kind, terms: impl IntoIterator<Item = (Key, Scalar)>) -> AlgebraElement {
        AlgebraElement::from_terms(self.id, kind, terms)
    }

    /// `id_G = s_{Δ(G)}`.
    pub fn identity(&self, g: usize) -> AlgebraElement {
        let d = ProductSubgroup::diagonal(&self.groups[g]);
        self.basis(Kind::Square, self.key(&d).expect("diagonal is a morphism"))
    }

    /// `Σ_G id_G`.
    pub fn unity(&self) -> AlgebraElement {
        let mut acc = self.zero(Kind::Square);
        for g in 0..self.groups.len() {
            acc = acc.add(&self.identity(g)).expect("same context");
        }
        acc
    }

    /// Square-basis product.
    fn multiply_square(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let mut by_cod: HashMap<usize, Vec<(Key, &Scalar)>> = HashMap::new();
        for (k, y) in b.terms() {
            by_cod.entry(k.0).or_default().push((*k, y));
        }
        let mut out: BTreeMap<Key, Scalar> = BTreeMap::new();
        for (&(f, g, u), x) in a.terms() {
            let Some(bs) = by_cod.get(&g) else { continue };
            for &((_, h, v), y) in bs {
                let (w, o) = self.star_idx(f, g, h, u, v);
                let c = &(x * y) * &self.ell(o)?;
                element::accumulate(&mut out, (f, h, w), c);
            }
        }
        Ok(AlgebraElement::from_map(self.id, Kind::Square, out))
    }

    /// `s_U = Σ_{I <= U} t_I`.
    pub fn to_round(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        if a.kind() == Kind::Round {
            return Ok(a.clone());
        }
        let mut out = BTreeMap::new();
        for (&(f, g, u), c) in a.terms() {
            for &i in self.space(f, g).lattice.below(u) {
                element::accumulate(&mut out, (f, g, i), c.clone());
            }
        }
        Ok(AlgebraElement::from_map(self.id, Kind::Round, out))
    }

    /// `t_I = Σ_{U <= I} möb(U, I) s_U`.
    pub fn to_square(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        if a.kind() == Kind::Square {
            return Ok(a.clone());
        }
        let mut out = BTreeMap::new();
        for (&(f, g, i), c) in a.terms() {
            let lat = &self.space(f, g).lattice;
            for (k, &u) in lat.below(i).iter().enumerate() {
                let m = &lat.moebius_column(i)[k];
                if !m.is_zero() {
                    element::accumulate(&mut out, (f, g, u), c * &Scalar::from_bigint(m.clone()));
                }
            }
        }
        Ok(AlgebraElement::from_map(self.id, Kind::Square, out))
    }

    pub fn convert(&self, a: &AlgebraElement, kind: Kind) -> Result<AlgebraElement> {
        match kind {
            Kind::Square => self.to_square(a),
            Kind::Round => self.to_round(a),
        }
    }

    /// The product `ab`, computed through the square basis. The right operand
    /// is first converted to the kind of the left one, and the result has
    /// that kind.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        match a.kind() {
            Kind::Square => self.multiply_square(a, &self.to_square(b)?),
            Kind::Round => {
                let p = self.multiply_square(&self.to_square(a)?, &self.to_square(b)?)?;
                self.to_round(&p)
            }
        }
    }

    /// The product computed directly in the round basis: only strongly
    /// compatible pairs contribute, and only to adequate subgroups of `I * J`,
    /// with coefficients from the restricted Möbius sum.
    pub fn round_multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let a = self.to_round(a)?;
        let b = self.to_round(b)?;
        let mut out = BTreeMap::new();
        for (&(f, g, i), x) in a.terms() {
            for (&(g2, h, j), y) in b.terms() {
                if g2 != g || !self.strongly_compatible((f, g, i), (g, h, j)) {
                    continue;
                }
                let (w, _) = self.star_idx(f, g, h, i, j);
                for &k in self.adequate(f, h, w) {
                    let t = self.tau_reduced((f, h, k), (f, g, i), (g, h, j))?;
                    if !t.is_zero() {
                        element::accumulate(&mut out, (f, h, k), &(x * y) * &t);
                    }
                }
            }
        }
        Ok(AlgebraElement::from_map(self.id, Kind::Round, out))
    }

    /// `I^• = •J`.
    pub fn strongly_compatible(&self, i: Key, j: Key) -> bool {
        i.1 == j.0 && self.projections(i).right == self.projections(j).left
    }

    /// τ by the defining sum over `{(U, V) : U <= I, V <= J, K <= U * V}`.
    pub fn tau_bruteforce(&self, k: Key, i: Key, j: Key) -> Result<Scalar> {
        let (f, g, h) = (i.0, i.1, j.1);
        if g != j.0 {
            return Err(Error::MiddleMismatch);
        }
        if k.0 != f || k.1 != h {
            return Err(Error::Precondition("K lies in a different hom space".into()));
        }
        if let Some(v) = self.tau_cache.lock().unwrap().get(&(i, h, j.2, k.2)) {
            return Ok(v.clone());
        }
        let (li, lj, lk) = (&self.space(f, g).lattice, &self.space(g, h).lattice, &self.space(f, h).lattice);
        let (ci, cj) = (li.moebius_column(i.2), lj.moebius_column(j.2));
        let mut acc = Scalar::zero();
        for (a, &u) in li.below(i.2).iter().enumerate() {
            if ci[a].is_zero() {
                continue;
            }
            for (b, &v) in lj.below(j.2).iter().enumerate() {
                if cj[b].is_zero() {
                    continue;
                }
                let (w, o) = self.star_idx(f, g, h, u, v);
                if lk.leq(k.2, w) {
                    acc += &(&Scalar::from_bigint(&ci[a] * &cj[b]) * &self.ell(o)?);
                }
            }
        }
        self.tau_cache.lock().unwrap().insert((i, h, j.2, k.2), acc.clone());
        Ok(acc)
    }

    /// τ through the restricted poset `{(U, V) : K <= U * V, U^• = •V}`
    /// with its own Möbius function. Requires `(I, J)` strongly compatible
    /// and `K ∈ ad(I * J)`.
    pub fn tau_reduced(&self, k: Key, i: Key, j: Key) -> Result<Scalar> {
        let (f, g, h) = (i.0, i.1, j.1);
        if g != j.0 {
            return Err(Error::MiddleMismatch);
        }
        if !self.strongly_compatible(i, j) {
            return Err(Error::Precondition("(I, J) is not strongly compatible".into()));
        }
        let (w, _) = self.star_idx(f, g, h, i.2, j.2);
        if k.0 != f || k.1 != h || !self.adequate(f, h, w).contains(&k.2) {
            return Err(Error::Precondition("K is not adequate for I * J".into()));
        }
        let (si, sj, sk) = (self.space(f, g), self.space(g, h), self.space(f, h));
        let mut r: Vec<(usize, usize, usize)> = Vec::new();
        for &u in si.lattice.below(i.2) {
            for &v in sj.lattice.below(j.2) {
                let (w, o) = self.star_idx(f, g, h, u, v);
                if sk.lattice.leq(k.2, w) && si.proj[u].right == sj.proj[v].left {
                    r.push((u, v, o));
                }
            }
        }
        let size = |&(u, v, _): &(usize, usize, usize)| si.lattice.get(u).len() * sj.lattice.get(v).len();
        r.sort_by_key(|x| std::cmp::Reverse(size(x)));
        debug_assert_eq!((r[0].0, r[0].1), (i.2, j.2));
        let mut mob: Vec<num::BigInt> = Vec::with_capacity(r.len());
        for x in 0..r.len() {
            if x == 0 {
                mob.push(num::BigInt::from(1));
                continue;
            }
            let (ux, vx, _) = r[x];
            let mut s = num::BigInt::zero();
            for y in 0..x {
                let (uy, vy, _) = r[y];
                if (uy, vy) != (ux, vx) && si.lattice.leq(ux, uy) && sj.lattice.leq(vx, vy) {
                    s += &mob[y];
                }
            }
            mob.push(-s);
        }
        let mut acc = Scalar::zero();
        for (x, &(_, _, o)) in r.iter().enumerate() {
            if !mob[x].is_zero() {
                acc += &(&Scalar::from_bigint(mob[x].clone()) * &self.ell(o)?);
            }
        }
        Ok(acc)
    }

    /// `μ_G`: sends `Σ c_θ θ` in the group algebra of `Aut(G)` to
    /// `Σ c_θ s_{Δ(θ)}`. Terms name automorphisms by their index in
    /// [`KContext::automorphisms`].
    pub fn mu_embed(&self, g: usize, w: &[(usize, Scalar)]) -> Result<AlgebraElement> {
        let aut = self.automorphisms(g);
        let mut out = BTreeMap::new();
        for (a, c) in w {
            let th = aut.maps.get(*a).ok_or_else(|| Error::Precondition("automorphism index out of range".into()))?;
            let key = self.key(&ProductSubgroup::graph(th))?;
            element::accumulate(&mut out, key, c.clone());
        }
        Ok(AlgebraElement::from_map(self.id, Kind::Square, out))
    }

    /// Keys `s_U ∈ End(G)` whose thorax is strictly below `G`.
    pub fn end_less_ideal(&self, g: usize) -> Vec<Key> {
        let grp = &self.groups[g];
        let s = self.space(g, g);
        (0..s.len())
            .filter(|&i| {
                let th = s.morphism(i).thorax_class();
                is_section_of(&th, grp) && crate::group::is_isomorphic(&th, grp).is_none()
            })
            .map(|i| (g, g, i))
            .collect()
    }

    /// The antiautomorphism `s_U -> s_{U°}` (also `t_I -> t_{I°}`).
    pub fn opposite(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        let mut out = BTreeMap::new();
        for (&k, c) in a.terms() {
            let o = self.key(&self.morphism(k).opposite())?;
            element::accumulate(&mut out, o, c.clone());
        }
        Ok(AlgebraElement::from_map(self.id, a.kind(), out))
    }

    pub fn element_to_doc(&self, a: &AlgebraElement) -> Result<Vec<EntryDoc>> {
        self.check(a)?;
        Ok(a.terms()
            .map(|(&(f, g, i), c)| EntryDoc {
                codomain: self.specs[f].clone(),
                domain: self.specs[g].clone(),
                subgroup: self.space(f, g).lattice.get(i).to_hex(),
                kind: a.kind(),
                scalar: c.to_string(),
            })
            .collect())
    }

    pub fn element_from_doc(&self, doc: &[EntryDoc]) -> Result<AlgebraElement> {
        let kind = doc.first().map_or(Kind::Square, |e| e.kind);
        let mut out = BTreeMap::new();
        for e in doc {
            if e.kind != kind {
                return Err(Error::Precondition("mixed basis kinds in one element".into()));
            }
            let pos = |s: &str| {
                self.specs.iter().position(|x| x == s).ok_or_else(|| Error::NotInContext(s.to_string()))
            };
            let (f, g) = (pos(&e.codomain)?, pos(&e.domain)?);
            let width = self.groups[f].order() * self.groups[g].order();
            let m = ElemSet::from_hex(width, &e.subgroup).ok_or_else(|| Error::NotSubgroup(e.subgroup.clone()))?;
            let i = self.space(f, g).index_of(&m).ok_or_else(|| Error::NotSubgroup(e.subgroup.clone()))?;
            element::accumulate(&mut out, (f, g, i), Scalar::parse(&e.scalar)?);
        }
        Ok(AlgebraElement::from_map(self.id, kind, out))
    }

    /// A random element with small integer coefficients on `terms` keys.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R, kind: Kind, terms: usize) -> AlgebraElement {
        let keys = self.keys();
        let mut out = BTreeMap::new();
        for _ in 0..terms {
            let k = keys[rng.random_range(0..keys.len())];
            element::accumulate(&mut out, k, Scalar::from_int(rng.random_range(-3..=3)));
        }
        AlgebraElement::from_map(self.id, kind, out)
    }
}

impl std::fmt::Debug for KContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KContext#{}({:?}, {})", self.id, self.specs, self.ell)
    }
}
