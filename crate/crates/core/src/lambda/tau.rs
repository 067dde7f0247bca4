//! τ for morphisms between arbitrary groups, outside any configured context.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::field::{EllSpec, Scalar};
use crate::goursat::{cocycle_order, product_group, star, strongly_compatible, ProductSubgroup};
use crate::poset::Lattice;

/// Subgroups of `I` with their Möbius values `möb(U, I)`.
fn interval(i: &ProductSubgroup) -> Vec<(ProductSubgroup, BigInt)> {
    let lat = Lattice::within(&product_group(i.codomain(), i.domain()), i.members());
    let top = lat.top();
    let col = lat.moebius_column(top).to_vec();
    lat.below(top)
        .iter()
        .zip(col)
        .map(|(&u, m)| (ProductSubgroup::new_unchecked(i.codomain().clone(), i.domain().clone(), lat.get(u).clone()), m))
        .collect()
}

fn check_shapes(k: &ProductSubgroup, i: &ProductSubgroup, j: &ProductSubgroup) -> Result<()> {
    if i.domain() != j.codomain() {
        return Err(Error::MiddleMismatch);
    }
    if k.codomain() != i.codomain() || k.domain() != j.domain() {
        return Err(Error::Precondition("K lies in a different hom space".into()));
    }
    Ok(())
}

/// `τ_K^{I,J} = Σ möb(U, I) möb(V, J) σ(U, V)` over `U <= I`, `V <= J`,
/// `K <= U * V`.
pub fn tau_bruteforce_standalone(
    k: &ProductSubgroup,
    i: &ProductSubgroup,
    j: &ProductSubgroup,
    ell: &EllSpec,
) -> Result<Scalar> {
    check_shapes(k, i, j)?;
    let (bi, bj) = (interval(i), interval(j));
    let mut acc = Scalar::zero();
    for (u, mu) in bi.iter().filter(|(_, m)| !m.is_zero()) {
        for (v, mv) in bj.iter().filter(|(_, m)| !m.is_zero()) {
            if k.members().is_subset(star(u, v)?.members()) {
                let s = ell.ell(cocycle_order(u, v)? as u64)?;
                acc += &(&Scalar::from_bigint(mu * mv) * &s);
            }
        }
    }
    Ok(acc)
}

/// τ through the restricted poset of pairs with `U^• = •V`.
pub fn tau_reduced_standalone(
    k: &ProductSubgroup,
    i: &ProductSubgroup,
    j: &ProductSubgroup,
    ell: &EllSpec,
) -> Result<Scalar> {
    check_shapes(k, i, j)?;
    if !strongly_compatible(i, j)? {
        return Err(Error::Precondition("(I, J) is not strongly compatible".into()));
    }
    let w = star(i, j)?;
    if !k.members().is_subset(w.members())
        || k.left_projection() != w.left_projection()
        || k.right_projection() != w.right_projection()
    {
        return Err(Error::Precondition("K is not adequate for I * J".into()));
    }
    let (bi, bj) = (interval(i), interval(j));
    let mut r: Vec<(&ProductSubgroup, &ProductSubgroup, usize)> = Vec::new();
    for (u, _) in &bi {
        for (v, _) in &bj {
            if u.right_projection() == v.left_projection() && k.members().is_subset(star(u, v)?.members()) {
                r.push((u, v, cocycle_order(u, v)?));
            }
        }
    }
    r.sort_by_key(|(u, v, _)| std::cmp::Reverse(u.order() * v.order()));
    let mut mob: Vec<BigInt> = Vec::with_capacity(r.len());
    for x in 0..r.len() {
        if x == 0 {
            mob.push(BigInt::one());
            continue;
        }
        let (ux, vx, _) = r[x];
        let s: BigInt = (0..x)
            .filter(|&y| {
                let (uy, vy, _) = r[y];
                ux.members().is_subset(uy.members()) && vx.members().is_subset(vy.members())
            })
            .map(|y| &mob[y])
            .sum();
        mob.push(-s);
    }
    let mut acc = Scalar::zero();
    for (x, &(_, _, o)) in r.iter().enumerate() {
        if !mob[x].is_zero() {
            acc += &(&Scalar::from_bigint(mob[x].clone()) * &ell.ell(o as u64)?);
        }
    }
    Ok(acc)
}
