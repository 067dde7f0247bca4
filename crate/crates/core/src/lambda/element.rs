use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Scalar;

/// `(codomain index, domain index, subgroup index in S(F, G))`.
pub type Key = (usize, usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `s_U`
    Square,
    /// `t_I`
    Round,
}

/// A sparse linear combination of basis elements of a single kind.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraElement {
    ctx: u64,
    kind: Kind,
    terms: BTreeMap<Key, Scalar>,
}

pub(crate) fn accumulate(map: &mut BTreeMap<Key, Scalar>, key: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl AlgebraElement {
    pub(crate) fn zero(ctx: u64, kind: Kind) -> Self {
        AlgebraElement { ctx, kind, terms: BTreeMap::new() }
    }

    pub(crate) fn basis(ctx: u64, kind: Kind, key: Key) -> Self {
        AlgebraElement { ctx, kind, terms: BTreeMap::from([(key, Scalar::one())]) }
    }

    pub(crate) fn from_map(ctx: u64, kind: Kind, mut terms: BTreeMap<Key, Scalar>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        AlgebraElement { ctx, kind, terms }
    }

    pub(crate) fn from_terms(ctx: u64, kind: Kind, terms: impl IntoIterator<Item = (Key, Scalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut map, k, c);
        }
        AlgebraElement { ctx, kind, terms: map }
    }

    pub fn context_id(&self) -> u64 {
        self.ctx
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: Key) -> Scalar {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    fn compatible(&self, other: &AlgebraElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.kind != other.kind {
            return Err(Error::Precondition("adding elements written in different bases".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.compatible(other)?;
        let mut out = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out, *k, c.clone());
        }
        Ok(AlgebraElement { ctx: self.ctx, kind: self.kind, terms: out })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement::from_map(self.ctx, self.kind, self.terms.iter().map(|(k, x)| (*k, x * c)).collect())
    }

    /// Applies a coefficient map (e.g. a specialization) termwise.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<AlgebraElement> {
        let terms = self.terms.iter().map(|(k, c)| Ok((*k, f(c)?))).collect::<Result<BTreeMap<_, _>>>()?;
        Ok(AlgebraElement::from_map(self.ctx, self.kind, terms))
    }
}

/// One term of an element in serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub codomain: String,
    pub domain: String,
    /// Bitset over pair indices `r * |S| + s`, in hex.
    pub subgroup: String,
    pub kind: Kind,
    pub scalar: String,
}
