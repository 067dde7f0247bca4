//! Dimension of Λ by subgroup enumeration and by counting section triples.

use serde::Serialize;

use super::KContext;
use crate::group::{automorphisms, catalog_representative, is_isomorphic, quotient, sections, AutGroup, GroupRef};

#[derive(Clone, Debug, Serialize)]
pub struct SeedCount {
    /// Canonical name of the isomorphism class `E`.
    pub seed: String,
    pub order: usize,
    /// Number of triples `(G, B, Y)` with `G ∈ K`, `Y ⊴ B <= G`, `B/Y ≅ E`.
    pub triples: usize,
    pub aut_order: usize,
    pub aut_classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub by_enumeration: usize,
    /// `Σ_E n_E² |Aut(E)|`.
    pub by_triples: usize,
    pub seeds: Vec<SeedCount>,
    /// `Σ_E` (number of conjugacy classes of `Aut(E)`), the centre dimension
    /// when Λ is semisimple.
    pub semisimple_center_dimension: usize,
    pub holds: bool,
}

pub(crate) fn conjugacy_class_count(aut: &AutGroup) -> usize {
    let g = &aut.group;
    let mut seen = vec![false; g.order()];
    let mut classes = 0;
    for a in g.elements() {
        if !seen[a] {
            classes += 1;
            for b in g.elements() {
                seen[g.conj(b, a)] = true;
            }
        }
    }
    classes
}

/// Isomorphism classes of the section quotients of members of `K`, each
/// with its number of occurrences.
pub(crate) fn seed_classes(groups: &[GroupRef]) -> Vec<(GroupRef, usize)> {
    let mut reps: Vec<(GroupRef, usize)> = Vec::new();
    for g in groups {
        for sec in sections(g) {
            let q = quotient(&sec.top, &sec.bottom).expect("section").group;
            match reps.iter_mut().find(|(r, _)| r.order() == q.order() && is_isomorphic(r, &q).is_some()) {
                Some(entry) => entry.1 += 1,
                None => reps.push((catalog_representative(&q).unwrap_or(q), 1)),
            }
        }
    }
    reps.sort_by_key(|(r, _)| r.order());
    reps
}

pub fn dimension_identity(ctx: &KContext) -> DimensionReport {
    let by_enumeration = ctx.dimension();
    let mut seeds = Vec::new();
    for (e, n) in seed_classes(ctx.groups()) {
        let aut = automorphisms(&e);
        seeds.push(SeedCount {
            seed: e.name().to_string(),
            order: e.order(),
            triples: n,
            aut_order: aut.maps.len(),
            aut_classes: conjugacy_class_count(&aut),
        });
    }
    let by_triples = seeds.iter().map(|s| s.triples * s.triples * s.aut_order).sum();
    let semisimple_center_dimension = seeds.iter().map(|s| s.aut_classes).sum();
    DimensionReport { by_enumeration, by_triples, seeds, semisimple_center_dimension, holds: by_enumeration == by_triples }
}
