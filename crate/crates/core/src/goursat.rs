//! Subgroups of direct products as morphisms: Goursat data, star product,
//! opposites, thorax, and the cocycle.

use std::fmt;
use std::sync::Arc;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::field::{EllSpec, Scalar};
use crate::group::{
    catalog_representative, direct_product_group, quotient, subgroups_within, GroupMap, GroupRef, Quotient,
    Subgroup,
};

/// A subgroup `U` of `R x S`, read as a morphism `R <- S`. The pair `(r, s)`
/// is stored at `r * |S| + s`. Equal bitsets over different groups are
/// different morphisms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProductSubgroup {
    codomain: GroupRef,
    domain: GroupRef,
    members: ElemSet,
}

impl ProductSubgroup {
    /// Checks that `members` is a subgroup of `codomain x domain`.
    pub fn new(codomain: GroupRef, domain: GroupRef, members: ElemSet) -> Result<ProductSubgroup> {
        let m = domain.order();
        if members.universe() != codomain.order() * m {
            return Err(Error::NotSubgroup("bitset width differs from |R x S|".into()));
        }
        if !members.contains(codomain.identity() * m + domain.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in members.iter() {
            for b in members.iter() {
                let p = codomain.mul(a / m, b / m) * m + domain.mul(a % m, b % m);
                if !members.contains(p) {
                    return Err(Error::NotSubgroup("not closed under products".into()));
                }
            }
        }
        Ok(ProductSubgroup { codomain, domain, members })
    }

    pub(crate) fn new_unchecked(codomain: GroupRef, domain: GroupRef, members: ElemSet) -> ProductSubgroup {
        ProductSubgroup { codomain, domain, members }
    }

    /// The subgroup generated by the given pairs.
    pub fn generated(codomain: &GroupRef, domain: &GroupRef, pairs: &[(usize, usize)]) -> ProductSubgroup {
        let m = domain.order();
        let mut members = ElemSet::empty(codomain.order() * m);
        members.insert(codomain.identity() * m + domain.identity());
        let mut frontier: Vec<usize> = members.iter().collect();
        let gens: Vec<(usize, usize)> = pairs.to_vec();
        while let Some(x) = frontier.pop() {
            for &(r, s) in &gens {
                let p = codomain.mul(x / m, r) * m + domain.mul(x % m, s);
                if members.insert(p) {
                    frontier.push(p);
                }
            }
        }
        ProductSubgroup { codomain: codomain.clone(), domain: domain.clone(), members }
    }

    /// `{(phi(g), g)}` for a homomorphism `phi: R <- S`.
    pub fn graph(phi: &GroupMap) -> ProductSubgroup {
        let (r, s) = (phi.codomain(), phi.domain());
        let m = s.order();
        let members = ElemSet::from_indices(r.order() * m, s.elements().map(|g| phi.apply(g) * m + g));
        ProductSubgroup::new_unchecked(r.clone(), s.clone(), members)
    }

    /// The diagonal `Δ(G)`, the identity morphism of `G`.
    pub fn diagonal(g: &GroupRef) -> ProductSubgroup {
        ProductSubgroup::graph(&GroupMap::identity(g))
    }

    /// `A x B` for subgroups `A <= R`, `B <= S`.
    pub fn product(codomain: &GroupRef, domain: &GroupRef, a: &ElemSet, b: &ElemSet) -> ProductSubgroup {
        let m = domain.order();
        let members =
            ElemSet::from_indices(codomain.order() * m, a.iter().flat_map(|x| b.iter().map(move |y| x * m + y)));
        ProductSubgroup::new_unchecked(codomain.clone(), domain.clone(), members)
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, r: usize, s: usize) -> bool {
        self.members.contains(r * self.domain.order() + s)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.domain.order();
        self.members.iter().map(move |x| (x / m, x % m))
    }

    /// `•U`, the projection to the codomain.
    pub fn left_projection(&self) -> ElemSet {
        ElemSet::from_indices(self.codomain.order(), self.pairs().map(|(r, _)| r))
    }

    /// `_•U = {r : (r, 1) ∈ U}`.
    pub fn left_kernel(&self) -> ElemSet {
        let e = self.domain.identity();
        ElemSet::from_indices(self.codomain.order(), self.pairs().filter(|&(_, s)| s == e).map(|(r, _)| r))
    }

    /// `U_• = {s : (1, s) ∈ U}`.
    pub fn right_kernel(&self) -> ElemSet {
        let e = self.codomain.identity();
        ElemSet::from_indices(self.domain.order(), self.pairs().filter(|&(r, _)| r == e).map(|(_, s)| s))
    }

    /// `U^•`, the projection to the domain.
    pub fn right_projection(&self) -> ElemSet {
        ElemSet::from_indices(self.domain.order(), self.pairs().map(|(_, s)| s))
    }

    /// `U°`, the same subgroup with coordinates swapped.
    pub fn opposite(&self) -> ProductSubgroup {
        let n = self.codomain.order();
        let members = ElemSet::from_indices(self.members.universe(), self.pairs().map(|(r, s)| s * n + r));
        ProductSubgroup::new_unchecked(self.domain.clone(), self.codomain.clone(), members)
    }

    /// `{(f x f^-1, g y g^-1)}`.
    pub fn conjugate(&self, f: usize, g: usize) -> ProductSubgroup {
        let m = self.domain.order();
        let members = ElemSet::from_indices(
            self.members.universe(),
            self.pairs().map(|(r, s)| self.codomain.conj(f, r) * m + self.domain.conj(g, s)),
        );
        ProductSubgroup::new_unchecked(self.codomain.clone(), self.domain.clone(), members)
    }

    /// The Goursat quintuple with the section quotients and the induced
    /// isomorphism.
    pub fn goursat(&self) -> GoursatData {
        let (r, s) = (&self.codomain, &self.domain);
        let sub = |g: &GroupRef, m: ElemSet| Subgroup::new_unchecked(g.clone(), m);
        let p1_top = sub(r, self.left_projection());
        let p1_bot = sub(r, self.left_kernel());
        let p2_bot = sub(s, self.right_kernel());
        let p2_top = sub(s, self.right_projection());
        let left = quotient(&p1_top, &p1_bot).expect("kernel is normal in projection");
        let right = quotient(&p2_top, &p2_bot).expect("kernel is normal in projection");
        let mut images = vec![usize::MAX; right.group.order()];
        for (x, y) in self.pairs() {
            images[right.coset_of(y).unwrap()] = left.coset_of(x).unwrap();
        }
        let theta = GroupMap::new(left.group.clone(), right.group.clone(), images)
            .expect("Goursat correspondence is a homomorphism");
        GoursatData { codomain: r.clone(), domain: s.clone(), p1_top, p1_bot, p2_bot, p2_top, left: Arc::new(left), right: Arc::new(right), theta }
    }

    /// Canonical representative of the thorax `•U / _•U`: the first isomorphic
    /// catalog group, or the quotient itself when the catalog has none.
    pub fn thorax_class(&self) -> GroupRef {
        let q = quotient(
            &Subgroup::new_unchecked(self.codomain.clone(), self.left_projection()),
            &Subgroup::new_unchecked(self.codomain.clone(), self.left_kernel()),
        )
        .expect("kernel is normal in projection");
        catalog_representative(&q.group).unwrap_or(q.group)
    }

    /// Order of the thorax, `|•U| / |_•U|`.
    pub fn thorax_order(&self) -> usize {
        self.left_projection().len() / self.left_kernel().len()
    }

    /// All subgroups of `U`, as morphisms with the same tags.
    pub fn subgroups(&self) -> Vec<ProductSubgroup> {
        let prod = direct_product_group(&self.codomain, &self.domain);
        subgroups_within(&prod, &self.members)
            .into_iter()
            .map(|m| ProductSubgroup::new_unchecked(self.codomain.clone(), self.domain.clone(), m))
            .collect()
    }
}

impl fmt::Debug for ProductSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<-{}:{}", self.codomain.name(), self.domain.name(), self.members.to_hex())
    }
}

/// `(•U, _•U, θ_U, U_•, U^•)`, with the two section quotients so that
/// `θ_U : •U/_•U <- U^•/U_•` is a map of actual groups.
#[derive(Clone)]
pub struct GoursatData {
    pub codomain: GroupRef,
    pub domain: GroupRef,
    pub p1_top: Subgroup,
    pub p1_bot: Subgroup,
    pub p2_bot: Subgroup,
    pub p2_top: Subgroup,
    pub left: Arc<Quotient>,
    pub right: Arc<Quotient>,
    pub theta: GroupMap,
}

impl GoursatData {
    /// Assembles and validates a quintuple. `theta` must be an isomorphism
    /// between the quotient groups built from the given sections.
    pub fn new(
        p1_top: Subgroup,
        p1_bot: Subgroup,
        p2_bot: Subgroup,
        p2_top: Subgroup,
        theta: impl FnOnce(&Quotient, &Quotient) -> Result<GroupMap>,
    ) -> Result<GoursatData> {
        let bad = |s: &str| Error::InvalidGoursat(s.into());
        if p1_top.parent() != p1_bot.parent() || p2_top.parent() != p2_bot.parent() {
            return Err(Error::ParentMismatch);
        }
        if !p1_bot.is_subgroup_of(&p1_top) || !p2_bot.is_subgroup_of(&p2_top) {
            return Err(bad("kernel not contained in projection"));
        }
        let left = quotient(&p1_top, &p1_bot).map_err(|_| bad("left kernel is not normal"))?;
        let right = quotient(&p2_top, &p2_bot).map_err(|_| bad("right kernel is not normal"))?;
        let theta = theta(&left, &right)?;
        if theta.codomain() != &left.group || theta.domain() != &right.group || !theta.is_bijective() {
            return Err(bad("theta is not an isomorphism between the section quotients"));
        }
        Ok(GoursatData {
            codomain: p1_top.parent().clone(),
            domain: p2_top.parent().clone(),
            p1_top,
            p1_bot,
            p2_bot,
            p2_top,
            left: Arc::new(left),
            right: Arc::new(right),
            theta,
        })
    }

    /// `{(x, y) : x _•U = θ(y U_•)}`.
    pub fn to_subgroup(&self) -> ProductSubgroup {
        let m = self.domain.order();
        let mut members = ElemSet::empty(self.codomain.order() * m);
        for x in self.p1_top.members().iter() {
            let cx = self.left.coset_of(x).unwrap();
            for y in self.p2_top.members().iter() {
                if self.theta.apply(self.right.coset_of(y).unwrap()) == cx {
                    members.insert(x * m + y);
                }
            }
        }
        ProductSubgroup::new_unchecked(self.codomain.clone(), self.domain.clone(), members)
    }
}

pub fn from_quintuple(q: &GoursatData) -> ProductSubgroup {
    q.to_subgroup()
}

/// `Δ(A, 1, θ, 1, B)` for an isomorphism `θ: A <- B` between subgroups given
/// by their embeddings `a: R <- A` and `b: S <- B`.
pub fn delta_iso(a: &GroupMap, theta: &GroupMap, b: &GroupMap) -> Result<ProductSubgroup> {
    if !a.is_injective() || !b.is_injective() {
        return Err(Error::MapProperty("injective"));
    }
    if !theta.is_bijective() || theta.codomain() != a.domain() || theta.domain() != b.domain() {
        return Err(Error::MapProperty("an isomorphism between the embedded subgroups"));
    }
    let (r, s) = (a.codomain(), b.codomain());
    let m = s.order();
    let members = ElemSet::from_indices(
        r.order() * m,
        b.domain().elements().map(|y| a.apply(theta.apply(y)) * m + b.apply(y)),
    );
    Ok(ProductSubgroup::new_unchecked(r.clone(), s.clone(), members))
}

/// `Δ(C)` for a subgroup `C <= G`: `{(c, c) : c ∈ C}` in `S(G, G)`.
pub fn delta(g: &GroupRef, c: &ElemSet) -> ProductSubgroup {
    let m = g.order();
    ProductSubgroup::new_unchecked(g.clone(), g.clone(), ElemSet::from_indices(m * m, c.iter().map(|x| x * m + x)))
}

/// `U * V = {(r, t) : ∃ s, (r, s) ∈ U, (s, t) ∈ V}` by direct enumeration.
pub fn star(u: &ProductSubgroup, v: &ProductSubgroup) -> Result<ProductSubgroup> {
    if u.domain != v.codomain {
        return Err(Error::MiddleMismatch);
    }
    let (r, s, t) = (&u.codomain, &u.domain, &v.domain);
    let mut by_mid: Vec<Vec<usize>> = vec![Vec::new(); s.order()];
    for (y, z) in v.pairs() {
        by_mid[y].push(z);
    }
    let m = t.order();
    let mut members = ElemSet::empty(r.order() * m);
    for (x, y) in u.pairs() {
        for &z in &by_mid[y] {
            members.insert(x * m + z);
        }
    }
    Ok(ProductSubgroup::new_unchecked(r.clone(), t.clone(), members))
}

/// `|U_• ∩ _•V|`, the argument of the cocycle.
pub fn cocycle_order(u: &ProductSubgroup, v: &ProductSubgroup) -> Result<usize> {
    if u.domain != v.codomain {
        return Err(Error::MiddleMismatch);
    }
    Ok(u.right_kernel().intersection(&v.left_kernel()).len())
}

/// `σ(U, V) = l(|U_• ∩ _•V|)`.
pub fn cocycle_sigma(u: &ProductSubgroup, v: &ProductSubgroup, ell: &EllSpec) -> Result<Scalar> {
    Ok(ell.ell(cocycle_order(u, v)? as u64)?)
}

/// `I^• = •J`.
pub fn strongly_compatible(i: &ProductSubgroup, j: &ProductSubgroup) -> Result<bool> {
    if i.domain != j.codomain {
        return Err(Error::MiddleMismatch);
    }
    Ok(i.right_projection() == j.left_projection())
}

/// `ad(W) = {K <= W : •K = •W, K^• = W^•}`.
pub fn adequate_subgroups(w: &ProductSubgroup) -> Vec<ProductSubgroup> {
    let (lp, rp) = (w.left_projection(), w.right_projection());
    w.subgroups()
        .into_iter()
        .filter(|k| k.left_projection() == lp && k.right_projection() == rp)
        .collect()
}

/// `|U| |V| = |U^• •V| |U_• ∩ _•V| |U * V|`.
pub fn order_identity_check(u: &ProductSubgroup, v: &ProductSubgroup) -> Result<bool> {
    let w = star(u, v)?;
    let (a, b) = (u.right_projection(), v.left_projection());
    let s = &u.domain;
    let mut prodset = ElemSet::empty(s.order());
    for x in a.iter() {
        for y in b.iter() {
            prodset.insert(s.mul(x, y));
        }
    }
    let lhs = u.order() * v.order();
    let rhs = prodset.len() * cocycle_order(u, v)? * w.order();
    Ok(lhs == rhs)
}

/// Whether some section of `g` is isomorphic to `e`.
pub fn is_section_of(e: &GroupRef, g: &GroupRef) -> bool {
    if g.order() % e.order() != 0 {
        return false;
    }
    crate::group::sections(g).into_iter().any(|sec| {
        sec.quotient_order() == e.order()
            && quotient(&sec.top, &sec.bottom)
                .ok()
                .is_some_and(|q| crate::group::is_isomorphic(&q.group, e).is_some())
    })
}

/// Convenience: the group `R x S` in which morphisms `R <- S` live.
pub fn product_group(r: &GroupRef, s: &GroupRef) -> GroupRef {
    Arc::new(direct_product_group(r, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphisms, cyclic, homomorphisms, is_isomorphic, parse_group, sections, HomFilter};
    use crate::poset::Lattice;

    fn g(spec: &str) -> GroupRef {
        Arc::new(parse_group(spec).unwrap())
    }

    fn all_morphisms(r: &GroupRef, s: &GroupRef) -> Vec<ProductSubgroup> {
        let p = product_group(r, s);
        Lattice::new(&p)
            .subgroups()
            .iter()
            .map(|m| ProductSubgroup::new_unchecked(r.clone(), s.clone(), m.clone()))
            .collect()
    }

    #[test]
    fn goursat_of_basic_morphisms() {
        let c4 = g("C4");
        let d = ProductSubgroup::diagonal(&c4);
        let q = d.goursat();
        assert_eq!(q.p1_top.order(), 4);
        assert_eq!(q.p1_bot.order(), 1);
        assert_eq!(q.p2_bot.order(), 1);
        assert_eq!(q.p2_top.order(), 4);
        assert_eq!(from_quintuple(&q), d);

        let all = c4.all();
        let one = c4.trivial();
        let u = ProductSubgroup::product(&c4, &c4, &one, &all);
        let q = u.goursat();
        assert_eq!((q.p1_top.order(), q.p1_bot.order(), q.p2_bot.order(), q.p2_top.order()), (1, 1, 4, 4));
        let full = ProductSubgroup::product(&c4, &c4, &all, &all);
        let q = full.goursat();
        assert_eq!((q.p1_top.order(), q.p1_bot.order(), q.p2_bot.order(), q.p2_top.order()), (4, 4, 4, 4));
        assert_eq!(q.left.group.order(), 1);
    }

    #[test]
    fn quintuple_round_trip_on_corpus() {
        for (a, b) in [("C4", "C4"), ("S3", "C2"), ("C2xC2", "C2xC2"), ("S3", "S3"), ("Q8", "C2")] {
            let (r, s) = (g(a), g(b));
            for u in all_morphisms(&r, &s) {
                let q = u.goursat();
                assert_eq!(from_quintuple(&q), u);
                assert_eq!(u.order(), q.p1_top.order() * q.p2_bot.order());
                assert_eq!(ProductSubgroup::new(r.clone(), s.clone(), u.members().clone()).unwrap(), u);
            }
        }
    }

    #[test]
    fn size_eight_example() {
        let c4 = g("C4");
        let half = c4.closure([2]);
        let top = Subgroup::whole(&c4);
        let bot = Subgroup::new(c4.clone(), half).unwrap();
        let q = GoursatData::new(top.clone(), bot.clone(), bot, top, |l, r| {
            let iso = is_isomorphic(&r.group, &l.group).unwrap();
            Ok(iso)
        })
        .unwrap();
        let u = q.to_subgroup();
        assert_eq!(u.order(), 8);
        assert_eq!(u.thorax_class().name(), "C2");
        assert!(ProductSubgroup::new(c4.clone(), c4.clone(), u.members().clone()).is_ok());
    }

    #[test]
    fn invalid_quintuple() {
        let s3 = g("S3");
        let top = Subgroup::whole(&s3);
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let c2 = Subgroup::new(s3.clone(), s3.closure([t])).unwrap();
        let triv = Subgroup::trivial(&s3);
        // C2 is not normal in S3
        assert!(GoursatData::new(top.clone(), c2, triv.clone(), top.clone(), |l, _| Ok(GroupMap::identity(&l.group))).is_err());
        // orders of the quotients differ
        let r = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
        let c3 = Subgroup::new(s3.clone(), s3.closure([r])).unwrap();
        assert!(GoursatData::new(top.clone(), c3, triv, top, |l, r| {
            homomorphisms(&l.group, &r.group, HomFilter::All).into_iter().next().ok_or(Error::Precondition("none".into()))
        })
        .is_err());
    }

    #[test]
    fn star_examples() {
        let c3 = g("C3");
        let all = c3.all();
        let one = c3.trivial();
        let a = ProductSubgroup::product(&c3, &c3, &one, &all);
        let b = ProductSubgroup::product(&c3, &c3, &all, &one);
        assert_eq!(star(&a, &b).unwrap(), ProductSubgroup::product(&c3, &c3, &one, &one));
        let d = ProductSubgroup::diagonal(&c3);
        for v in all_morphisms(&c3, &c3) {
            assert_eq!(star(&d, &v).unwrap(), v);
            assert_eq!(star(&v, &d).unwrap(), v);
        }
        let other = g("C3");
        assert_eq!(star(&a, &ProductSubgroup::diagonal(&other)), Err(Error::MiddleMismatch));
    }

    #[test]
    fn delta_of_iso_and_inverse() {
        let s3 = g("S3");
        let aut = automorphisms(&s3);
        let id = GroupMap::identity(&s3);
        for th in &aut.maps {
            let u = delta_iso(&id, th, &id).unwrap();
            let v = delta_iso(&id, &th.inverse().unwrap(), &id).unwrap();
            assert_eq!(star(&u, &v).unwrap(), ProductSubgroup::diagonal(&s3));
            assert_eq!(u, ProductSubgroup::graph(th));
        }
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        assert_eq!(delta(&s3, &s3.closure([t])).order(), 2);
    }

    #[test]
    fn opposite_laws() {
        let c4 = g("C4");
        let ms = all_morphisms(&c4, &c4);
        for u in &ms {
            assert_eq!(&u.opposite().opposite(), u);
            for v in &ms {
                assert_eq!(star(u, v).unwrap().opposite(), star(&v.opposite(), &u.opposite()).unwrap());
            }
        }
        let d = ProductSubgroup::diagonal(&c4);
        assert_eq!(d.opposite(), d);
        let a = ProductSubgroup::product(&c4, &c4, &c4.trivial(), &c4.all());
        assert_eq!(a.opposite(), ProductSubgroup::product(&c4, &c4, &c4.all(), &c4.trivial()));
    }

    #[test]
    fn thorax() {
        let s3 = g("S3");
        assert_eq!(ProductSubgroup::diagonal(&s3).thorax_class().name(), "S3");
        let a = ProductSubgroup::product(&s3, &s3, &s3.trivial(), &s3.all());
        assert_eq!(a.thorax_class().name(), "C1");
        // [Θ(U*V)] is a section of both thoraxes
        let c4 = g("C4");
        let ms = all_morphisms(&c4, &c4);
        for u in &ms {
            for v in &ms {
                let w = star(u, v).unwrap().thorax_class();
                assert!(is_section_of(&w, &u.thorax_class()));
                assert!(is_section_of(&w, &v.thorax_class()));
            }
        }
    }

    #[test]
    fn sigma_examples_and_cocycle_law() {
        let ell = EllSpec::Generic;
        let c3 = g("C3");
        let a = ProductSubgroup::product(&c3, &c3, &c3.trivial(), &c3.all());
        let b = ProductSubgroup::product(&c3, &c3, &c3.all(), &c3.trivial());
        assert_eq!(cocycle_sigma(&a, &b, &ell).unwrap(), Scalar::var(3));
        assert!(cocycle_sigma(&ProductSubgroup::diagonal(&c3), &b, &ell).unwrap().is_one());

        let (c2, c4) = (g("C2"), g("C4"));
        let ks = [c2, c4];
        let hom: Vec<Vec<Vec<ProductSubgroup>>> =
            ks.iter().map(|f| ks.iter().map(|h| all_morphisms(f, h)).collect()).collect();
        let mut triples = 0;
        for (a, _) in ks.iter().enumerate() {
            for (b, _) in ks.iter().enumerate() {
                for (c, _) in ks.iter().enumerate() {
                    for (d, _) in ks.iter().enumerate() {
                        for u in &hom[a][b] {
                            for v in &hom[b][c] {
                                let uv = star(u, v).unwrap();
                                let suv = cocycle_sigma(u, v, &ell).unwrap();
                                for w in &hom[c][d] {
                                    let vw = star(v, w).unwrap();
                                    let l = cocycle_sigma(u, &vw, &ell).unwrap() * cocycle_sigma(v, w, &ell).unwrap();
                                    let r = &suv * &cocycle_sigma(&uv, w, &ell).unwrap();
                                    assert_eq!(l, r);
                                    triples += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(triples > 1000);
    }

    #[test]
    fn star_is_associative() {
        let (c2, c3) = (g("C2"), g("C3"));
        let ks = [c2, c3];
        for f in &ks {
            for h in &ks {
                for k in &ks {
                    for l in &ks {
                        for u in all_morphisms(f, h) {
                            for v in all_morphisms(h, k) {
                                for w in all_morphisms(k, l) {
                                    let x = star(&star(&u, &v).unwrap(), &w).unwrap();
                                    let y = star(&u, &star(&v, &w).unwrap()).unwrap();
                                    assert_eq!(x, y);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compatibility_and_adequacy() {
        let c5 = g("C5");
        let d = ProductSubgroup::diagonal(&c5);
        assert!(strongly_compatible(&d, &d).unwrap());
        let a = ProductSubgroup::product(&c5, &c5, &c5.trivial(), &c5.all());
        let b = ProductSubgroup::product(&c5, &c5, &c5.all(), &c5.trivial());
        assert!(strongly_compatible(&a, &b).unwrap());
        assert!(strongly_compatible(&b, &a).unwrap());
        let full = ProductSubgroup::product(&c5, &c5, &c5.all(), &c5.all());
        assert!(!strongly_compatible(&b, &full).unwrap());
        assert_eq!(adequate_subgroups(&d), vec![d.clone()]);
        // the full group, the diagonal and its four twists
        assert_eq!(adequate_subgroups(&full).len(), 5);
    }

    #[test]
    fn order_identity_exhaustive() {
        let c4 = g("C4");
        let ms = all_morphisms(&c4, &c4);
        for u in &ms {
            for v in &ms {
                assert!(order_identity_check(u, v).unwrap());
            }
        }
        let s3 = g("S3");
        let ms = all_morphisms(&s3, &s3);
        for u in ms.iter().step_by(3) {
            for v in ms.iter().step_by(5) {
                assert!(order_identity_check(u, v).unwrap());
            }
        }
    }

    /// Every U factors through a copy of its thorax.
    #[test]
    fn factorization_through_thorax() {
        for (a, b) in [("C4", "C2xC2"), ("S3", "S3"), ("D8", "C4")] {
            let (r, s) = (g(a), g(b));
            for u in all_morphisms(&r, &s) {
                let q = u.goursat();
                let th = q.left.group.clone();
                // X = {(x, x _•U) : x ∈ •U}, Y = {(θ(y U_•), y) : y ∈ U^•}
                let m = th.order();
                let x = ProductSubgroup::new_unchecked(
                    r.clone(),
                    th.clone(),
                    ElemSet::from_indices(
                        r.order() * m,
                        q.p1_top.members().iter().map(|x| x * m + q.left.coset_of(x).unwrap()),
                    ),
                );
                let n = s.order();
                let y = ProductSubgroup::new_unchecked(
                    th.clone(),
                    s.clone(),
                    ElemSet::from_indices(
                        m * n,
                        q.p2_top.members().iter().map(|y| q.theta.apply(q.right.coset_of(y).unwrap()) * n + y),
                    ),
                );
                assert!(ProductSubgroup::new(r.clone(), th.clone(), x.members().clone()).is_ok());
                assert_eq!(star(&x, &y).unwrap(), u);
            }
        }
    }

    /// |S(F x G)| recounted from pairs of sections and isomorphisms.
    #[test]
    fn goursat_count_oracle() {
        for (a, b) in [("C4", "C4"), ("S3", "C2"), ("C2xC2", "C4"), ("S3", "S3")] {
            let (r, s) = (g(a), g(b));
            let mut count = 0;
            for x in sections(&r) {
                let qx = quotient(&x.top, &x.bottom).unwrap();
                for y in sections(&s) {
                    if x.quotient_order() != y.quotient_order() {
                        continue;
                    }
                    let qy = quotient(&y.top, &y.bottom).unwrap();
                    count += homomorphisms(&qx.group, &qy.group, HomFilter::Iso).len();
                }
            }
            assert_eq!(count, all_morphisms(&r, &s).len(), "{a} {b}");
        }
        assert_eq!(all_morphisms(&Arc::new(cyclic(2)), &Arc::new(cyclic(2))).len(), 5);
    }

    #[test]
    fn conjugation_preserves_subgroups() {
        let s3 = g("S3");
        for u in all_morphisms(&s3, &s3).iter().step_by(4) {
            for f in 0..6 {
                let c = u.conjugate(f, (f + 1) % 6);
                assert!(ProductSubgroup::new(s3.clone(), s3.clone(), c.members().clone()).is_ok());
                assert_eq!(c.order(), u.order());
            }
        }
    }
}
