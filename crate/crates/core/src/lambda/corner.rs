//! Embeddings `s_U -> s_{(κ_F × κ_G)(U)}` induced by injective group maps.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{element, AlgebraElement, KContext, Key, Kind};
use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::goursat::ProductSubgroup;
use crate::group::GroupMap;

pub struct CornerEmbedding<'a> {
    source: &'a KContext,
    target: &'a KContext,
    kappa: Vec<GroupMap>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerReport {
    pub source_dimension: usize,
    pub image_dimension: usize,
    pub injective: bool,
    pub multiplicative: bool,
    /// `B Λ B ⊆ B` for the image `B`.
    pub corner: bool,
    pub pairs_checked: usize,
}

impl<'a> CornerEmbedding<'a> {
    /// `kappa[i]` embeds the `i`-th source group into a target group; distinct
    /// source groups must land in distinct target groups.
    pub fn new(source: &'a KContext, target: &'a KContext, kappa: Vec<GroupMap>) -> Result<Self> {
        if kappa.len() != source.num_groups() {
            return Err(Error::Precondition("one map per source group is required".into()));
        }
        let mut image_group: Vec<usize> = Vec::new();
        for (i, k) in kappa.iter().enumerate() {
            if k.domain() != source.group(i) {
                return Err(Error::Precondition(format!("map {i} has the wrong domain")));
            }
            if !k.is_injective() {
                return Err(Error::MapProperty("injective"));
            }
            let t = target.group_index(k.codomain())?;
            if image_group.contains(&t) {
                return Err(Error::Precondition("two source groups map into the same target group".into()));
            }
            image_group.push(t);
        }
        Ok(CornerEmbedding { source, target, kappa })
    }

    pub fn image_key(&self, (f, g, i): Key) -> Key {
        let u = self.source.morphism((f, g, i));
        let (kf, kg) = (&self.kappa[f], &self.kappa[g]);
        let m = kg.codomain().order();
        let members = ElemSet::from_indices(kf.codomain().order() * m, u.pairs().map(|(x, y)| kf.apply(x) * m + kg.apply(y)));
        let w = ProductSubgroup::new_unchecked(kf.codomain().clone(), kg.codomain().clone(), members);
        self.target.key(&w).expect("image of a subgroup is a subgroup")
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let a = self.source.to_square(a)?;
        let mut out = BTreeMap::new();
        for (&k, c) in a.terms() {
            element::accumulate(&mut out, self.image_key(k), c.clone());
        }
        Ok(self.target.element(Kind::Square, out))
    }

    /// Exhaustive injectivity, multiplicativity and corner checks.
    pub fn verify(&self) -> Result<CornerReport> {
        let keys = self.source.keys();
        let images: Vec<Key> = keys.iter().map(|&k| self.image_key(k)).collect();
        let image_set: BTreeSet<Key> = images.iter().copied().collect();
        let injective = image_set.len() == keys.len();
        let mut multiplicative = true;
        let mut pairs = 0;
        for &a in &keys {
            for &b in &keys {
                let x = self.source.multiply(&self.source.basis(Kind::Square, a), &self.source.basis(Kind::Square, b))?;
                let lhs = self.apply(&x)?;
                let rhs = self.target.multiply(
                    &self.target.basis(Kind::Square, self.image_key(a)),
                    &self.target.basis(Kind::Square, self.image_key(b)),
                )?;
                multiplicative &= lhs == rhs;
                pairs += 1;
            }
        }
        let mut corner = true;
        let tkeys = self.target.keys();
        for &x in &image_set {
            for &z in tkeys.iter().filter(|z| z.0 == x.1) {
                let xz = self.target.star_key(x, z)?;
                for &y in image_set.iter().filter(|y| y.0 == z.1) {
                    corner &= image_set.contains(&self.target.star_key(xz, y)?);
                }
            }
        }
        Ok(CornerReport {
            source_dimension: keys.len(),
            image_dimension: image_set.len(),
            injective,
            multiplicative,
            corner,
            pairs_checked: pairs,
        })
    }
}
