use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::{Group, GroupMap, GroupRef};
use crate::bits::ElemSet;
use crate::error::{Error, Result};

/// A subgroup, stored as a bitset over the parent's element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: GroupRef,
    members: ElemSet,
}

impl Subgroup {
    /// Validates closure, identity and Lagrange before accepting `members`.
    pub fn new(parent: GroupRef, members: ElemSet) -> Result<Subgroup> {
        if members.universe() != parent.order() {
            return Err(Error::NotSubgroup("bitset width differs from the group order".into()));
        }
        if !members.contains(parent.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in members.iter() {
            if !members.contains(parent.inv(a)) {
                return Err(Error::NotSubgroup("not closed under inverses".into()));
            }
            for b in members.iter() {
                if !members.contains(parent.mul(a, b)) {
                    return Err(Error::NotSubgroup("not closed under products".into()));
                }
            }
        }
        if parent.order() % members.len() != 0 {
            return Err(Error::NotSubgroup("order does not divide the group order".into()));
        }
        Ok(Subgroup { parent, members })
    }

    pub(crate) fn new_unchecked(parent: GroupRef, members: ElemSet) -> Subgroup {
        Subgroup { parent, members }
    }

    pub fn whole(parent: &GroupRef) -> Subgroup {
        Subgroup { members: parent.all(), parent: parent.clone() }
    }

    pub fn trivial(parent: &GroupRef) -> Subgroup {
        Subgroup { members: parent.trivial(), parent: parent.clone() }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.is_subset(&other.members)
    }

    /// Whether `self` is normal in `over` (which must contain it).
    pub fn is_normal_in(&self, over: &Subgroup) -> bool {
        self.is_subgroup_of(over) && is_normal(&self.parent, &self.members, &over.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(Subgroup {
            parent: self.parent.clone(),
            members: self.members.intersection(&other.members),
        })
    }

    /// The subgroup as a group in its own right. Element `k` of the result is
    /// the `k`-th smallest member index; the returned vector maps back.
    pub fn as_group(&self) -> (Group, Vec<usize>) {
        restrict(&self.parent, &self.members, format!("<{}>", self.parent.name()))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:?}", self.parent.name(), self.members)
    }
}

pub(crate) fn restrict(g: &Group, members: &ElemSet, name: String) -> (Group, Vec<usize>) {
    let elems: Vec<usize> = members.iter().collect();
    let mut pos = vec![usize::MAX; g.order()];
    for (k, &e) in elems.iter().enumerate() {
        pos[e] = k;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in &elems {
        for &b in &elems {
            table.push(pos[g.mul(a, b)] as u32);
        }
    }
    let labels = g
        .labels()
        .map(|l| elems.iter().map(|&e| l[e].clone()).collect());
    let sub = Group::from_trusted(name, n, table, pos[g.identity()], labels);
    (sub, elems)
}

pub(crate) fn is_normal(g: &Group, sub: &ElemSet, over: &ElemSet) -> bool {
    over.iter()
        .all(|b| sub.iter().all(|y| sub.contains(g.conj(b, y))))
}

/// All subgroups of `g` contained in `ambient` (itself a subgroup), each
/// exactly once, sorted by `(size, members)`.
///
/// Breadth-first closure over generator sets: every subgroup arises from a
/// smaller one by adjoining a single element.
pub fn subgroups_within(g: &Group, ambient: &ElemSet) -> Vec<ElemSet> {
    let start = g.trivial();
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        let mut covered = h.clone();
        for x in ambient.iter() {
            if covered.contains(x) {
                continue;
            }
            let k = g.extend_closure(&h, &[x]);
            // <H, x> = <H, xy> = <H, yx> for y in H
            for y in h.iter() {
                covered.insert(g.mul(x, y));
                covered.insert(g.mul(y, x));
            }
            if seen.insert(k.clone()) {
                queue.push_back(k);
            }
        }
        out.push(h);
    }
    out.sort();
    out
}

/// All subgroups of `g`, sorted by `(size, members)`.
pub fn subgroups(g: &GroupRef) -> Vec<Subgroup> {
    subgroups_within(g, &g.all())
        .into_iter()
        .map(|m| Subgroup::new_unchecked(g.clone(), m))
        .collect()
}

/// A section `(B, Y)` of a group: `Y` normal in `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Section {
    pub top: Subgroup,
    pub bottom: Subgroup,
}

impl Section {
    pub fn new(top: Subgroup, bottom: Subgroup) -> Result<Section> {
        if top.parent() != bottom.parent() {
            return Err(Error::ParentMismatch);
        }
        if !bottom.is_normal_in(&top) {
            return Err(Error::NotNormal);
        }
        Ok(Section { top, bottom })
    }

    /// `|B| / |Y|`.
    pub fn quotient_order(&self) -> usize {
        self.top.order() / self.bottom.order()
    }
}

/// All sections `(B, Y)` with `Y` normal in `B <= G`, ordered by `B` then `Y`.
pub fn sections(g: &GroupRef) -> Vec<Section> {
    let subs = subgroups(g);
    let mut out = Vec::new();
    for b in &subs {
        for y in &subs {
            if y.members().is_subset(b.members()) && is_normal(g, y.members(), b.members()) {
                out.push(Section { top: b.clone(), bottom: y.clone() });
            }
        }
    }
    out
}

/// A quotient `B / Y` with its projection.
pub struct Quotient {
    /// The factor group; its element `k` is the `k`-th coset in order of
    /// least member index.
    pub group: GroupRef,
    /// `B` as a group in its own right (domain of the projection).
    pub top: GroupRef,
    /// Maps elements of `top` back to indices of the parent group.
    pub top_embedding: Vec<usize>,
    /// Surjection `top -> group`.
    pub projection: GroupMap,
    coset_of: Vec<Option<usize>>,
}

impl Quotient {
    /// Coset index of a parent-group element of `B`.
    pub fn coset_of(&self, parent_elem: usize) -> Option<usize> {
        self.coset_of[parent_elem]
    }
}

/// The factor group `B / Y` on cosets of `Y`.
pub fn quotient(top: &Subgroup, bottom: &Subgroup) -> Result<Quotient> {
    if top.parent() != bottom.parent() {
        return Err(Error::ParentMismatch);
    }
    if !bottom.is_normal_in(top) {
        return Err(Error::NotNormal);
    }
    let g = top.parent();
    let (coset_of, reps) = cosets(g, top.members(), bottom.members());
    let n = reps.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)].unwrap() as u32);
        }
    }
    let identity = coset_of[g.identity()].unwrap();
    let labels = (0..n).map(|k| format!("{}Y", g.label(reps[k]))).collect();
    let qgroup = Arc::new(Group::from_trusted(
        format!("{}/{}", top.order(), bottom.order()),
        n,
        table,
        identity,
        Some(labels),
    ));
    let (top_group, embedding) = top.as_group();
    let top_group = Arc::new(top_group);
    let images = embedding.iter().map(|&e| coset_of[e].unwrap()).collect();
    let projection = GroupMap::new_unchecked(qgroup.clone(), top_group.clone(), images);
    Ok(Quotient { group: qgroup, top: top_group, top_embedding: embedding, projection, coset_of })
}

/// Left cosets `xY` of `bottom` inside `top`, numbered by least member.
pub(crate) fn cosets(g: &Group, top: &ElemSet, bottom: &ElemSet) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut coset_of = vec![None; g.order()];
    let mut reps = Vec::new();
    for x in top.iter() {
        if coset_of[x].is_some() {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for y in bottom.iter() {
            coset_of[g.mul(x, y)] = Some(k);
        }
    }
    (coset_of, reps)
}

/// Conjugate `g H g^-1` of a subgroup bitset.
pub(crate) fn conjugate_set(grp: &Group, g: usize, h: &ElemSet) -> ElemSet {
    ElemSet::from_indices(grp.order(), h.iter().map(|x| grp.conj(g, x)))
}

/// Partitions subgroups into conjugacy classes. Each class is sorted and its
/// first entry (the least bitset) is the canonical representative; classes
/// are ordered by representative.
pub fn conjugacy_classes_of_subgroups(g: &GroupRef) -> Vec<Vec<Subgroup>> {
    classes_of(g, &subgroups_within(g, &g.all()))
        .into_iter()
        .map(|class| {
            class
                .into_iter()
                .map(|m| Subgroup::new_unchecked(g.clone(), m))
                .collect()
        })
        .collect()
}

pub(crate) fn classes_of(g: &Group, subs: &[ElemSet]) -> Vec<Vec<ElemSet>> {
    let mut assigned: HashSet<&ElemSet> = HashSet::new();
    let mut classes = Vec::new();
    for h in subs {
        if assigned.contains(h) {
            continue;
        }
        let mut orbit: Vec<ElemSet> = g
            .elements()
            .map(|x| conjugate_set(g, x, h))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        orbit.sort();
        for o in &orbit {
            if let Some(s) = subs.iter().find(|s| *s == o) {
                assigned.insert(s);
            }
        }
        classes.push(orbit);
    }
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    classes
}
