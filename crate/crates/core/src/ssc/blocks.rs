//! Central idempotents of `End(C_q)` for `q` in {2, 3}, and the nilpotent
//! ideal at `l(q) = 1`.

use serde::Serialize;

use super::gram::{element_text, gram_matrix, gram_radical, GramMode};
use crate::error::{Error, Result};
use crate::field::{EllSpec, Scalar};
use crate::goursat::ProductSubgroup;
use crate::lambda::{AlgebraElement, KContext, Key, Kind};
use crate::linalg::rank;

#[derive(Clone, Debug, Serialize)]
pub struct BlockCheck {
    pub name: String,
    pub element: String,
    pub idempotent: bool,
    pub central: bool,
    /// `dim Λb`.
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleBlocksReport {
    pub q: u64,
    pub ell: String,
    pub lambda: String,
    pub algebra_dimension: usize,
    pub blocks: Vec<BlockCheck>,
    pub orthogonal: bool,
    pub sums_to_one: bool,
    pub expected_dimensions: Vec<usize>,
    pub holds: bool,
}

/// The named basis of `End(C_q)`.
struct Named {
    ctx: KContext,
    s0: Key,
    s01: Key,
    s10: Key,
    s11: Key,
    /// `s_d` for `d = 1, ..., q-1`, from `Δ(d) = {(g^d, g)}`.
    sd: Vec<Key>,
    lambda: Scalar,
}

fn named(q: u64, ell: EllSpec) -> Result<Named> {
    if !matches!(q, 2 | 3) {
        return Err(Error::Precondition(format!("rational characters require q in {{2, 3}}, got {q}")));
    }
    let ctx = KContext::parse(&[&format!("C{q}")], ell)?;
    let g = ctx.group(0).clone();
    let (one, all) = (g.trivial(), g.all());
    let key = |a, b| ctx.key(&ProductSubgroup::product(&g, &g, a, b));
    let (s0, s01, s10, s11) = (key(&one, &one)?, key(&one, &all)?, key(&all, &one)?, key(&all, &all)?);
    let mut sd = Vec::new();
    for d in 1..q as usize {
        let pairs: Vec<(usize, usize)> = g.elements().map(|x| (g.pow(x, d), x)).collect();
        sd.push(ctx.key(&ProductSubgroup::generated(&g, &g, &pairs))?);
    }
    let lambda = ctx.ell(q as usize)?;
    Ok(Named { ctx, s0, s01, s10, s11, sd, lambda })
}

impl Named {
    fn s(&self, k: Key) -> AlgebraElement {
        self.ctx.basis(Kind::Square, k)
    }

    /// `r = λ s_0 - s_01 - s_10 + s_11`.
    fn r(&self) -> AlgebraElement {
        self.ctx.element(
            Kind::Square,
            [
                (self.s0, self.lambda.clone()),
                (self.s01, -Scalar::one()),
                (self.s10, -Scalar::one()),
                (self.s11, Scalar::one()),
            ],
        )
    }

    fn commutes_with_all(&self, b: &AlgebraElement) -> Result<bool> {
        for k in self.ctx.keys() {
            let s = self.s(k);
            if self.ctx.multiply(b, &s)? != self.ctx.multiply(&s, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimension of the left ideal `Λb`.
    fn left_ideal_dimension(&self, b: &AlgebraElement) -> Result<usize> {
        let keys = self.ctx.keys();
        let mut rows = Vec::new();
        for &k in &keys {
            let p = self.ctx.multiply(&self.s(k), b)?;
            rows.push(keys.iter().map(|&j| p.coefficient(j)).collect::<Vec<Scalar>>());
        }
        Ok(rank(&rows))
    }
}

/// Builds `b_{1,1} = r/(λ-1)`, `b_{G,ζ} = -r/(λ-1) + Σ_d s_d/(q-1)` and, for
/// `q = 3`, `b_{G,χ} = Σ_d χ(d⁻¹) s_d/(q-1)` with the sign character `χ`,
/// then checks the block properties.
pub fn verify_example_blocks(q: u64, ell: EllSpec) -> Result<ExampleBlocksReport> {
    let n = named(q, ell.clone())?;
    let ctx = &n.ctx;
    let lm1 = &n.lambda - &Scalar::one();
    if lm1.is_zero() {
        return Err(Error::Precondition("l(q) = 1 leaves the block formulas undefined".into()));
    }
    let inv_lm1 = lm1.inv()?;
    let inv_q1 = Scalar::from_int(q as i64 - 1).inv()?;
    let r = n.r();
    let avg = ctx.element(Kind::Square, n.sd.iter().map(|&k| (k, inv_q1.clone())));
    let b11 = r.scale(&inv_lm1);
    let bz = avg.sub(&b11)?;
    let mut blocks = vec![("b_{1,1}".to_string(), b11), ("b_{G,zeta}".to_string(), bz)];
    let mut expected_dimensions = vec![4, 1];
    if q == 3 {
        // χ(1) = 1, χ(2) = -1, and each d is its own inverse mod 3
        let chi = [Scalar::one(), -Scalar::one()];
        let bx = ctx.element(Kind::Square, n.sd.iter().zip(chi).map(|(&k, c)| (k, &c * &inv_q1)));
        blocks.push(("b_{G,chi}".to_string(), bx));
        expected_dimensions.push(1);
    }
    let mut checks = Vec::new();
    for (name, b) in &blocks {
        checks.push(BlockCheck {
            name: name.clone(),
            element: element_text(ctx, b),
            idempotent: ctx.multiply(b, b)? == *b,
            central: n.commutes_with_all(b)?,
            dimension: n.left_ideal_dimension(b)?,
        });
    }
    let mut orthogonal = true;
    for (i, (_, a)) in blocks.iter().enumerate() {
        for (j, (_, b)) in blocks.iter().enumerate() {
            if i != j {
                orthogonal &= ctx.multiply(a, b)?.is_zero();
            }
        }
    }
    let mut total = ctx.zero(Kind::Square);
    for (_, b) in &blocks {
        total = total.add(b)?;
    }
    let sums_to_one = total == ctx.unity();
    let dims: Vec<usize> = checks.iter().map(|c| c.dimension).collect();
    let holds = orthogonal
        && sums_to_one
        && checks.iter().all(|c| c.idempotent && c.central)
        && dims == expected_dimensions
        && dims.iter().sum::<usize>() == ctx.dimension();
    Ok(ExampleBlocksReport {
        q,
        ell: ell.to_string(),
        lambda: n.lambda.to_string(),
        algebra_dimension: ctx.dimension(),
        blocks: checks,
        orthogonal,
        sums_to_one,
        expected_dimensions,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentReport {
    pub q: u64,
    pub r: String,
    /// `r² = (λ - 1) r`, checked at the given `l`.
    pub square_law: bool,
    pub r_squared_zero: bool,
    /// `s r` and `r s` lie in `K r` for every basis element `s`.
    pub ideal: bool,
    pub gram_rank: usize,
    pub dimension: usize,
    pub radical_dimension: usize,
    /// `r` pairs to zero with everything under the trace form.
    pub radical_contains_r: bool,
    /// The trace-form radical is exactly `K r`.
    pub radical_is_span_of_r: bool,
    pub holds: bool,
}

fn proportional(a: &AlgebraElement, r: &AlgebraElement) -> bool {
    if a.is_zero() {
        return true;
    }
    let Some((&k, c)) = r.terms().next() else {
        return false;
    };
    let f = a.coefficient(k).div(c).unwrap_or_else(|_| Scalar::zero());
    *a == r.scale(&f)
}

/// For `l(q) = 1` the line `K r` is a nilpotent ideal inside the radical of
/// the trace form. The radical itself is larger: it also holds the
/// square-zero one-sided ideals spanned by `s_0 - s_01`, `s_10 - s_11` and by
/// `s_0 - s_10`, `s_01 - s_11`.
pub fn verify_nilpotent_example(q: u64) -> Result<NilpotentReport> {
    let ell: EllSpec = format!("assign:{q}=1").parse()?;
    let n = named(q, ell)?;
    let ctx = &n.ctx;
    let r = n.r();
    let r2 = ctx.multiply(&r, &r)?;
    let square_law = r2 == r.scale(&(&n.lambda - &Scalar::one()));
    let mut ideal = true;
    for k in ctx.keys() {
        let s = n.s(k);
        ideal &= proportional(&ctx.multiply(&s, &r)?, &r) && proportional(&ctx.multiply(&r, &s)?, &r);
    }
    let gram = gram_radical(ctx, &GramMode::Symbolic)?;
    let gram_rank = gram.symbolic_rank.unwrap_or(0);
    let radical_is_span_of_r = gram.radical.len() == 1 && proportional(&r, &gram.radical[0]);
    let g = gram_matrix(ctx)?;
    let keys = ctx.keys();
    let radical_contains_r = (0..keys.len()).all(|v| {
        let mut acc = Scalar::zero();
        for (u, &k) in keys.iter().enumerate() {
            acc += &(&r.coefficient(k) * &g[u][v]);
        }
        acc.is_zero()
    });
    let r_squared_zero = r2.is_zero();
    Ok(NilpotentReport {
        q,
        r: element_text(ctx, &r),
        square_law,
        r_squared_zero,
        ideal,
        gram_rank,
        dimension: ctx.dimension(),
        radical_dimension: gram.radical.len(),
        radical_contains_r,
        radical_is_span_of_r,
        holds: square_law && r_squared_zero && ideal && radical_contains_r,
    })
}

/// `r² = (λ - 1) r` over the generic coefficient field.
#[cfg(test)]
pub(crate) fn generic_square_law(q: u64) -> Result<bool> {
    let n = named(q, EllSpec::Generic)?;
    let r = n.r();
    Ok(n.ctx.multiply(&r, &r)? == r.scale(&(&n.lambda - &Scalar::one())))
}
