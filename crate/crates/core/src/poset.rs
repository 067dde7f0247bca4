//! Subgroup lattices with a memoized Möbius function.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::{subgroups_within, GroupRef, Subgroup};

/// The subgroups of a group (or of a subgroup of it), ordered by size so that
/// list order extends inclusion. Möbius columns are filled on first use and
/// never change afterwards.
pub struct Lattice {
    group: GroupRef,
    subs: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
    /// `below[i]`: indices of subgroups of `subs[i]`, increasing.
    below: Vec<Vec<usize>>,
    /// `moeb[i][k]` = möb(subs[below[i][k]], subs[i]).
    moeb: Vec<OnceLock<Vec<BigInt>>>,
}

impl Lattice {
    pub fn new(group: &GroupRef) -> Lattice {
        Lattice::within(group, &group.all())
    }

    /// The lattice of subgroups of `ambient`, which must be a subgroup.
    pub fn within(group: &GroupRef, ambient: &ElemSet) -> Lattice {
        Lattice::from_subgroups(group, subgroups_within(group, ambient))
    }

    fn from_subgroups(group: &GroupRef, subs: Vec<ElemSet>) -> Lattice {
        let index: HashMap<ElemSet, usize> = subs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let below = (0..subs.len())
            .map(|i| (0..=i).filter(|&j| subs[j].is_subset(&subs[i])).collect())
            .collect();
        let moeb = (0..subs.len()).map(|_| OnceLock::new()).collect();
        Lattice { group: group.clone(), subs, index, below, moeb }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn get(&self, i: usize) -> &ElemSet {
        &self.subs[i]
    }

    pub fn subgroups(&self) -> &[ElemSet] {
        &self.subs
    }

    pub fn index_of(&self, s: &ElemSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn leq(&self, u: usize, i: usize) -> bool {
        self.below[i].binary_search(&u).is_ok()
    }

    pub fn below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    /// Index of the largest subgroup (the ambient group).
    pub fn top(&self) -> usize {
        self.subs.len() - 1
    }

    /// Index of the trivial subgroup.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Möbius values `möb(U, I)` for all `U <= I`, aligned with `below(i)`.
    pub fn moebius_column(&self, i: usize) -> &[BigInt] {
        self.moeb[i].get_or_init(|| {
            let bl = &self.below[i];
            let mut vals = vec![BigInt::zero(); bl.len()];
            // walk down from I; möb(U, I) = -sum over U < V <= I
            for k in (0..bl.len()).rev() {
                if k == bl.len() - 1 {
                    vals[k] = BigInt::one();
                    continue;
                }
                let u = &self.subs[bl[k]];
                let mut acc = BigInt::zero();
                for m in k + 1..bl.len() {
                    if u.is_subset(&self.subs[bl[m]]) {
                        acc += &vals[m];
                    }
                }
                vals[k] = -acc;
            }
            vals
        })
    }

    /// `möb(U, I)` by index; 0 unless `U <= I`.
    pub fn moebius_idx(&self, u: usize, i: usize) -> BigInt {
        match self.below[i].binary_search(&u) {
            Ok(k) => self.moebius_column(i)[k].clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn moebius(&self, u: &Subgroup, i: &Subgroup) -> Result<BigInt> {
        if u.parent().id() != i.parent().id() {
            return Err(Error::ParentMismatch);
        }
        if i.parent().id() != self.group.id() {
            return Err(Error::ParentMismatch);
        }
        let (Some(a), Some(b)) = (self.index_of(u.members()), self.index_of(i.members())) else {
            return Err(Error::NotSubgroup("outside this lattice".into()));
        };
        Ok(self.moebius_idx(a, b))
    }

    /// The defining recursion at `I`: möb(I, I) = 1 and the column sums over
    /// every interval `[U, I]` with `U < I` vanish.
    pub fn check_recursion(&self, i: usize) -> bool {
        let bl = &self.below[i];
        let col = self.moebius_column(i);
        if !col[bl.len() - 1].is_one() {
            return false;
        }
        (0..bl.len() - 1).all(|k| {
            let u = &self.subs[bl[k]];
            let s: BigInt = (k..bl.len())
                .filter(|&m| u.is_subset(&self.subs[bl[m]]))
                .map(|m| &col[m])
                .sum();
            s.is_zero()
        })
    }

    /// `sum_{V <= I} möb(V, I) f(V)`.
    pub fn sum_to_totient(&self, f: impl Fn(usize) -> Scalar, i: usize) -> Scalar {
        let col = self.moebius_column(i);
        let mut acc = Scalar::zero();
        for (k, &v) in self.below[i].iter().enumerate() {
            if !col[k].is_zero() {
                acc += &(Scalar::from_bigint(col[k].clone()) * f(v));
            }
        }
        acc
    }

    /// `sum_{V <= I} g(V)`, inverse to [`Lattice::sum_to_totient`].
    pub fn totient_to_sum(&self, g: impl Fn(usize) -> Scalar, i: usize) -> Scalar {
        self.below[i].iter().map(|&v| g(v)).sum()
    }

    pub fn to_cache_doc(&self, spec: &str) -> LatticeCacheDoc {
        let n = self.len();
        let moebius = (0..n)
            .map(|i| self.moebius_column(i).iter().map(|v| v.to_string()).collect())
            .collect();
        LatticeCacheDoc {
            schema_version: CACHE_SCHEMA_VERSION,
            group_spec: spec.to_string(),
            order: self.group.order(),
            subgroups: self.subs.iter().map(|s| s.to_hex()).collect(),
            moebius,
        }
    }

    /// Rebuilds a lattice from a cache document. The subgroup list is taken
    /// as given after shape checks; Möbius columns are reloaded.
    pub fn from_cache_doc(group: &GroupRef, doc: &LatticeCacheDoc) -> Result<Lattice> {
        if doc.schema_version != CACHE_SCHEMA_VERSION {
            return Err(Error::Cache(format!("unsupported schema version {}", doc.schema_version)));
        }
        if doc.order != group.order() {
            return Err(Error::Cache("group order differs".into()));
        }
        let subs = doc
            .subgroups
            .iter()
            .map(|h| ElemSet::from_hex(group.order(), h).ok_or_else(|| Error::Cache(format!("bad bitset {h}"))))
            .collect::<Result<Vec<_>>>()?;
        if subs.windows(2).any(|w| w[0] >= w[1]) || subs.first().map(|s| s.len()) != Some(1) {
            return Err(Error::Cache("subgroup list is not sorted".into()));
        }
        let lat = Lattice::from_subgroups(group, subs);
        if doc.moebius.len() != lat.len() {
            return Err(Error::Cache("Möbius table has the wrong length".into()));
        }
        for (i, col) in doc.moebius.iter().enumerate() {
            if col.len() != lat.below[i].len() {
                return Err(Error::Cache("Möbius column has the wrong length".into()));
            }
            let vals = col
                .iter()
                .map(|v| v.parse::<BigInt>().map_err(|_| Error::Cache(format!("bad integer {v}"))))
                .collect::<Result<Vec<_>>>()?;
            let _ = lat.moeb[i].set(vals);
        }
        Ok(lat)
    }

    /// Loads `dir/<spec>.lattice.json` when present and valid, else computes
    /// the lattice and tries to write the file. Cache failures never abort.
    pub fn cached(group: &GroupRef, spec: &str, dir: Option<&Path>) -> Lattice {
        let Some(dir) = dir else {
            return Lattice::new(group);
        };
        let path = dir.join(format!("{}.lattice.json", sanitize(spec)));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(doc) = serde_json::from_str::<LatticeCacheDoc>(&text) {
                if doc.group_spec == spec {
                    if let Ok(lat) = Lattice::from_cache_doc(group, &doc) {
                        return lat;
                    }
                }
            }
        }
        let lat = Lattice::new(group);
        if std::fs::create_dir_all(dir).is_ok() {
            if let Ok(text) = serde_json::to_string(&lat.to_cache_doc(spec)) {
                let _ = std::fs::write(&path, text);
            }
        }
        lat
    }
}

fn sanitize(spec: &str) -> String {
    spec.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

pub const CACHE_SCHEMA_VERSION: u32 = 1;

/// On-disk form of a lattice and its Möbius table.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LatticeCacheDoc {
    pub schema_version: u32,
    pub group_spec: String,
    pub order: usize,
    pub subgroups: Vec<String>,
    pub moebius: Vec<Vec<String>>,
}

/// Möbius function of a product of two posets: the product of the interval
/// values.
pub fn product_moebius(l1: &Lattice, (u1, i1): (usize, usize), l2: &Lattice, (u2, i2): (usize, usize)) -> BigInt {
    l1.moebius_idx(u1, i1) * l2.moebius_idx(u2, i2)
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice({}, {} subgroups)", self.group.name(), self.subs.len())
    }
}
