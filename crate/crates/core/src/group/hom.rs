use std::collections::HashMap;
use std::sync::Arc;

use super::{Group, GroupRef};
use crate::bits::ElemSet;
use crate::error::{Error, Result};

/// A homomorphism `codomain <- domain`, stored as the image of every domain
/// element.
#[derive(Clone)]
pub struct GroupMap {
    codomain: GroupRef,
    domain: GroupRef,
    images: Vec<usize>,
    injective: bool,
    surjective: bool,
}

impl GroupMap {
    /// Validates that `images` respects products.
    pub fn new(codomain: GroupRef, domain: GroupRef, images: Vec<usize>) -> Result<GroupMap> {
        if images.len() != domain.order() || images.iter().any(|&x| x >= codomain.order()) {
            return Err(Error::MapProperty("well-formed"));
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if images[domain.mul(a, b)] != codomain.mul(images[a], images[b]) {
                    return Err(Error::MapProperty("a homomorphism"));
                }
            }
        }
        Ok(Self::new_unchecked(codomain, domain, images))
    }

    pub(crate) fn new_unchecked(codomain: GroupRef, domain: GroupRef, images: Vec<usize>) -> GroupMap {
        let image = ElemSet::from_indices(codomain.order(), images.iter().copied());
        let surjective = image.len() == codomain.order();
        let injective = image.len() == domain.order();
        GroupMap { codomain, domain, images, injective, surjective }
    }

    pub fn identity(g: &GroupRef) -> GroupMap {
        Self::new_unchecked(g.clone(), g.clone(), g.elements().collect())
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn kernel(&self) -> ElemSet {
        ElemSet::from_indices(
            self.domain.order(),
            self.domain
                .elements()
                .filter(|&a| self.images[a] == self.codomain.identity()),
        )
    }

    pub fn image(&self) -> ElemSet {
        ElemSet::from_indices(self.codomain.order(), self.images.iter().copied())
    }

    /// Image of a subset of the domain.
    pub fn image_of(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.codomain.order(), set.iter().map(|a| self.images[a]))
    }

    /// `self . other`, i.e. first `other` then `self`.
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        if other.codomain != self.domain {
            return Err(Error::MiddleMismatch);
        }
        Ok(Self::new_unchecked(
            self.codomain.clone(),
            other.domain.clone(),
            other.images.iter().map(|&b| self.images[b]).collect(),
        ))
    }

    pub fn inverse(&self) -> Result<GroupMap> {
        if !self.is_bijective() {
            return Err(Error::MapProperty("bijective"));
        }
        let mut inv = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            inv[b] = a;
        }
        Ok(Self::new_unchecked(self.domain.clone(), self.codomain.clone(), inv))
    }
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.codomain == other.codomain && self.domain == other.domain && self.images == other.images
    }
}

impl Eq for GroupMap {}

impl std::fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} <- {}: {:?}", self.codomain.name(), self.domain.name(), self.images)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomFilter {
    All,
    /// Surjections onto the codomain.
    Epi,
    Iso,
}

/// All homomorphisms `target <- source` passing `filter`, in a deterministic
/// order (lexicographic in the images of the generators of `source`).
///
/// Arrow convention: `homomorphisms(E, L, Epi)` lists epimorphisms `E <- L`.
pub fn homomorphisms(target: &GroupRef, source: &GroupRef, filter: HomFilter) -> Vec<GroupMap> {
    if filter == HomFilter::Epi && source.order() % target.order() != 0 {
        return Vec::new();
    }
    if filter == HomFilter::Iso
        && (source.order() != target.order() || source.order_census() != target.order_census())
    {
        return Vec::new();
    }
    let gens = source.generators();
    let mut out = Vec::new();
    let mut assignment = Vec::with_capacity(gens.len());
    search(target, source, &gens, &mut assignment, filter, &mut out);
    out
}

fn search(
    target: &GroupRef,
    source: &GroupRef,
    gens: &[usize],
    assignment: &mut Vec<usize>,
    filter: HomFilter,
    out: &mut Vec<GroupMap>,
) {
    if assignment.len() == gens.len() {
        if let Some(images) = extend(target, source, gens, assignment) {
            let map = GroupMap::new_unchecked(target.clone(), source.clone(), images);
            let keep = match filter {
                HomFilter::All => true,
                HomFilter::Epi => map.is_surjective(),
                HomFilter::Iso => map.is_bijective(),
            };
            if keep {
                out.push(map);
            }
        }
        return;
    }
    let g = gens[assignment.len()];
    let og = source.element_order(g);
    for x in target.elements() {
        let ox = target.element_order(x);
        let ok = match filter {
            HomFilter::Iso => ox == og,
            _ => og % ox == 0,
        };
        if ok {
            assignment.push(x);
            search(target, source, gens, assignment, filter, out);
            assignment.pop();
        }
    }
}

/// Extends generator images to a full map, or `None` if inconsistent.
fn extend(target: &Group, source: &Group, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut images = vec![usize::MAX; source.order()];
    images[source.identity()] = target.identity();
    let mut stack = vec![source.identity()];
    while let Some(x) = stack.pop() {
        for (&g, &ig) in gens.iter().zip(imgs) {
            let y = source.mul(x, g);
            let iy = target.mul(images[x], ig);
            if images[y] == usize::MAX {
                images[y] = iy;
                stack.push(y);
            } else if images[y] != iy {
                return None;
            }
        }
    }
    Some(images)
}

/// `Aut(E)` as a group, with the automorphism behind each element.
pub struct AutGroup {
    pub group: GroupRef,
    /// `maps[k]` is the automorphism of element `k`; products compose as
    /// `maps[a * b] = maps[a] . maps[b]`.
    pub maps: Vec<GroupMap>,
}

impl AutGroup {
    pub fn index_of(&self, map: &GroupMap) -> Option<usize> {
        self.maps.iter().position(|m| m.images() == map.images())
    }
}

pub fn automorphisms(e: &GroupRef) -> AutGroup {
    let mut maps = homomorphisms(e, e, HomFilter::Iso);
    // identity first
    let id = maps.iter().position(|m| m.images().iter().enumerate().all(|(a, &b)| a == b)).unwrap();
    maps.swap(0, id);
    let index: HashMap<Vec<usize>, usize> =
        maps.iter().enumerate().map(|(k, m)| (m.images().to_vec(), k)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &maps {
        for b in &maps {
            let c: Vec<usize> = b.images().iter().map(|&x| a.apply(x)).collect();
            table.push(index[&c] as u32);
        }
    }
    let group = Arc::new(Group::from_trusted(format!("Aut({})", e.name()), n, table, 0, None));
    AutGroup { group, maps }
}

/// Some isomorphism `h <- g`, the first in enumeration order, if one exists.
pub fn is_isomorphic(g: &GroupRef, h: &GroupRef) -> Option<GroupMap> {
    if g.order() != h.order() || g.order_census() != h.order_census() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    if g == h {
        return Some(GroupMap::identity(g));
    }
    let gens = g.generators();
    let mut out = Vec::new();
    first_iso(h, g, &gens, &mut Vec::new(), &mut out);
    out.pop()
}

fn first_iso(target: &GroupRef, source: &GroupRef, gens: &[usize], assignment: &mut Vec<usize>, out: &mut Vec<GroupMap>) {
    if !out.is_empty() {
        return;
    }
    if assignment.len() == gens.len() {
        if let Some(images) = extend(target, source, gens, assignment) {
            let map = GroupMap::new_unchecked(target.clone(), source.clone(), images);
            if map.is_bijective() {
                out.push(map);
            }
        }
        return;
    }
    let og = source.element_order(gens[assignment.len()]);
    for x in target.elements() {
        if target.element_order(x) == og {
            assignment.push(x);
            first_iso(target, source, gens, assignment, out);
            assignment.pop();
            if !out.is_empty() {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    fn g(spec: &str) -> GroupRef {
        Arc::new(parse_group(spec).unwrap())
    }

    /// Oracle: every map on all elements that respects products.
    fn brute_force_count(target: &Group, source: &Group, filter: HomFilter) -> usize {
        let n = source.order();
        let m = target.order();
        let mut count = 0;
        let mut images = vec![0usize; n];
        loop {
            let hom = (0..n).all(|a| (0..n).all(|b| images[source.mul(a, b)] == target.mul(images[a], images[b])));
            if hom {
                let img: std::collections::HashSet<_> = images.iter().collect();
                let ok = match filter {
                    HomFilter::All => true,
                    HomFilter::Epi => img.len() == m,
                    HomFilter::Iso => img.len() == m && m == n,
                };
                if ok {
                    count += 1;
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                images[k] += 1;
                if images[k] < m {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn epimorphism_examples() {
        assert_eq!(homomorphisms(&g("C2"), &g("C4"), HomFilter::Epi).len(), 1);
        assert_eq!(homomorphisms(&g("C3"), &g("C3"), HomFilter::Epi).len(), 2);
        assert!(homomorphisms(&g("C2xC2"), &g("C4"), HomFilter::Iso).is_empty());
        assert_eq!(homomorphisms(&g("C2"), &g("C2xC2"), HomFilter::Epi).len(), 3);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let pairs = [("C2", "C4"), ("C4", "C2xC2"), ("C2xC2", "C2xC2"), ("C3", "S3"), ("C2", "S3"), ("S3", "S3"), ("C1", "C3"), ("C4", "C4")];
        for (t, s) in pairs {
            let (t, s) = (g(t), g(s));
            for filter in [HomFilter::All, HomFilter::Epi, HomFilter::Iso] {
                assert_eq!(
                    homomorphisms(&t, &s, filter).len(),
                    brute_force_count(&t, &s, filter),
                    "{} <- {} {:?}",
                    t.name(),
                    s.name(),
                    filter
                );
            }
        }
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphisms(&g("C1")).group.order(), 1);
        for q in [2usize, 3, 5, 7] {
            assert_eq!(automorphisms(&g(&format!("C{q}"))).group.order(), q - 1);
        }
        assert_eq!(automorphisms(&g("C2xC2")).group.order(), 6);
        assert_eq!(automorphisms(&g("S3")).group.order(), 6);
        let aut = automorphisms(&g("C2xC2"));
        assert!(!aut.group.is_abelian());
    }

    #[test]
    fn automorphism_table_is_composition() {
        let aut = automorphisms(&g("C2xC2"));
        for a in aut.group.elements() {
            for b in aut.group.elements() {
                let c = aut.maps[a].compose(&aut.maps[b]).unwrap();
                assert_eq!(aut.index_of(&c), Some(aut.group.mul(a, b)));
            }
        }
    }

    #[test]
    fn isomorphism_tests() {
        assert!(is_isomorphic(&g("C6"), &g("C2xC3")).is_some());
        assert!(is_isomorphic(&g("S3"), &g("C6")).is_none());
        assert!(is_isomorphic(&g("D8"), &g("Q8")).is_none());
        assert!(is_isomorphic(&g("V4"), &g("D4")).is_some());
        let s3 = g("S3");
        let id = is_isomorphic(&s3, &s3).unwrap();
        assert!(id.images().iter().enumerate().all(|(a, &b)| a == b));
    }

    #[test]
    fn isomorphism_is_an_equivalence() {
        let (a, b, c) = (g("C2xC3"), g("C6"), g("C3xC2"));
        let ab = is_isomorphic(&a, &b).unwrap();
        let ba = ab.inverse().unwrap();
        assert_eq!(ba.domain(), &b);
        assert!(ba.is_bijective());
        let bc = is_isomorphic(&b, &c).unwrap();
        let ac = bc.compose(&ab).unwrap();
        assert!(ac.is_bijective());
        GroupMap::new(c.clone(), a.clone(), ac.images().to_vec()).unwrap();
    }

    #[test]
    fn map_validation() {
        let (c2, c4) = (g("C2"), g("C4"));
        assert!(GroupMap::new(c2.clone(), c4.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(GroupMap::new(c2, c4, vec![0, 1, 1, 0]).is_err());
    }
}
