//! Semisimplicity analysis: epimorphism matrices `T_E^L`, determinant audits,
//! trace-form radicals, centres and the blocks of `End(C_q)`.

mod blocks;
mod gram;

pub use blocks::{verify_example_blocks, verify_nilpotent_example, BlockCheck, ExampleBlocksReport, NilpotentReport};
pub use gram::{center, gram_matrix, gram_radical, random_points, GramMode, GramReport, PointRank};

use num::{BigRational, Zero};
use serde::Serialize;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::field::{len, EllSpec, Polynomial, Scalar};
use crate::goursat::ProductSubgroup;
use crate::group::{
    catalog_representative, homomorphisms, is_isomorphic, quotient, GroupMap, GroupRef, HomFilter, Subgroup,
};
use crate::lambda::{tau_bruteforce_standalone, KContext};
use crate::linalg::{as_polynomial_matrix, bareiss_det, rank, Matrix};
use crate::poset::Lattice;

/// `◁(φ) = {(φ(l), l)} ∈ S(E, L)` for an epimorphism `φ: L -> E`.
pub fn triangle_left(phi: &GroupMap) -> Result<ProductSubgroup> {
    if !phi.is_surjective() {
        return Err(Error::MapProperty("surjective"));
    }
    Ok(ProductSubgroup::graph(phi))
}

/// `▷(φ) = {(l, φ(l))} ∈ S(L, E)`.
pub fn triangle_right(phi: &GroupMap) -> Result<ProductSubgroup> {
    Ok(triangle_left(phi)?.opposite())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TRoute {
    /// τ at `Δ(E)` by its defining double Möbius sum.
    Bruteforce,
    /// `Σ_S möb(S, L) l(|ker φ ∩ S ∩ ker ψ|)` over `S <= L` with
    /// `Δ(E) <= (φ × ψ)(S)`.
    Restricted,
}

#[derive(Clone, Debug)]
pub struct TMatrix {
    pub e: GroupRef,
    pub l: GroupRef,
    /// Rows and columns, in the order returned by [`homomorphisms`].
    pub epis: Vec<GroupMap>,
    pub entries: Matrix<Scalar>,
}

impl TMatrix {
    pub fn size(&self) -> usize {
        self.epis.len()
    }

    pub fn text(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

fn epimorphisms(e: &GroupRef, l: &GroupRef) -> Result<Vec<GroupMap>> {
    let epis = homomorphisms(e, l, HomFilter::Epi);
    if epis.is_empty() {
        return Err(Error::NoEpimorphisms { from: l.name().into(), onto: e.name().into() });
    }
    Ok(epis)
}

fn lemma74_entry(lat: &Lattice, phi: &GroupMap, psi: &GroupMap, ell: &EllSpec) -> Result<Scalar> {
    let e = phi.codomain();
    let (kp, ks) = (phi.kernel(), psi.kernel());
    let top = lat.top();
    let col = lat.moebius_column(top);
    let mut acc = Scalar::zero();
    for (k, &s) in lat.below(top).iter().enumerate() {
        if col[k].is_zero() {
            continue;
        }
        let sub = lat.get(s);
        let mut hit = ElemSet::empty(e.order());
        for x in sub.iter().filter(|&x| phi.apply(x) == psi.apply(x)) {
            hit.insert(phi.apply(x));
        }
        if hit.len() == e.order() {
            let m = kp.intersection(sub).intersection(&ks).len();
            acc += &(&Scalar::from_bigint(col[k].clone()) * &ell.ell(m as u64)?);
        }
    }
    Ok(acc)
}

/// `T_E^L(φ, ψ) = τ_{Δ(E)}^{◁(φ), ▷(ψ)}` over `epi(E, L)`.
pub fn t_matrix(e: &GroupRef, l: &GroupRef, route: TRoute, ell: &EllSpec) -> Result<TMatrix> {
    let epis = epimorphisms(e, l)?;
    let n = epis.len();
    let mut entries = vec![vec![Scalar::zero(); n]; n];
    match route {
        TRoute::Bruteforce => {
            let d = ProductSubgroup::diagonal(e);
            let left: Vec<ProductSubgroup> = epis.iter().map(triangle_left).collect::<Result<_>>()?;
            let right: Vec<ProductSubgroup> = left.iter().map(|x| x.opposite()).collect();
            for a in 0..n {
                for b in 0..n {
                    entries[a][b] = tau_bruteforce_standalone(&d, &left[a], &right[b], ell)?;
                }
            }
        }
        TRoute::Restricted => {
            let lat = Lattice::new(l);
            for a in 0..n {
                for b in 0..n {
                    entries[a][b] = lemma74_entry(&lat, &epis[a], &epis[b], ell)?;
                }
            }
        }
    }
    Ok(TMatrix { e: e.clone(), l: l.clone(), epis, entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminantAudit {
    pub det: String,
    pub degree: Option<u32>,
    pub monic: bool,
    pub epi_count: usize,
    /// `len(|L| / |E|)`.
    pub d: u32,
    pub linear_prediction: u64,
    pub power_prediction: u64,
    pub matches_linear: bool,
    pub matches_power: bool,
    /// Every diagonal entry is monic of degree `d`.
    pub diagonal_monic: bool,
    /// Every off-diagonal entry is zero or has degree below `d`.
    pub off_diagonal_lower: bool,
}

/// Exact determinant of a generic `T_E^L` with its degree compared against
/// `d·|epi|` and `d^|epi|`.
pub fn determinant_audit(t: &TMatrix) -> Result<DeterminantAudit> {
    let m = as_polynomial_matrix(&t.entries)
        .ok_or_else(|| Error::Precondition("T-matrix entries are not polynomials".into()))?;
    let det = bareiss_det(&m)?;
    let n = t.size();
    let d = len((t.l.order() / t.e.order()) as u64);
    let (degree, monic) = if det.is_zero() { (None, false) } else { (Some(det.degree()?), det.is_monic()?) };
    let linear_prediction = d as u64 * n as u64;
    let power_prediction = (d as u64).pow(n as u32);
    let deg_of = |p: &Polynomial| p.degree().ok();
    let mut diagonal_monic = true;
    let mut off_diagonal_lower = true;
    for a in 0..n {
        for b in 0..n {
            let p = &m[a][b];
            if a == b {
                diagonal_monic &= deg_of(p) == Some(d) && p.is_monic().unwrap_or(false);
            } else if let Some(k) = deg_of(p) {
                off_diagonal_lower &= k < d;
            }
        }
    }
    Ok(DeterminantAudit {
        det: det.to_string(),
        degree,
        monic,
        epi_count: n,
        d,
        linear_prediction,
        power_prediction,
        matches_linear: degree.map(u64::from) == Some(linear_prediction),
        matches_power: degree.map(u64::from) == Some(power_prediction),
        diagonal_monic,
        off_diagonal_lower,
    })
}

fn find_class(reps: &[GroupRef], g: &GroupRef) -> Option<usize> {
    reps.iter().position(|r| r.order() == g.order() && is_isomorphic(r, g).is_some())
}

fn canonical(g: GroupRef) -> GroupRef {
    catalog_representative(&g).unwrap_or(g)
}

/// Pairs `(E, L)` up to isomorphism with `L` isomorphic to a subgroup of a
/// member of `groups` and `E` a factor group of `L`.
pub fn section_pairs(groups: &[GroupRef]) -> Vec<(GroupRef, GroupRef)> {
    let mut ls: Vec<GroupRef> = Vec::new();
    for g in groups {
        for m in Lattice::new(g).subgroups() {
            let sub = Subgroup::new(g.clone(), m.clone()).expect("lattice member");
            let l: GroupRef = sub.as_group().0.into();
            if find_class(&ls, &l).is_none() {
                ls.push(canonical(l));
            }
        }
    }
    ls.sort_by_key(|l| l.order());
    let mut out = Vec::new();
    for l in ls {
        let whole = Subgroup::whole(&l);
        let mut es: Vec<GroupRef> = Vec::new();
        for n in Lattice::new(&l).subgroups() {
            let n = Subgroup::new(l.clone(), n.clone()).expect("lattice member");
            if !n.is_normal_in(&whole) {
                continue;
            }
            let e = quotient(&whole, &n).expect("normal").group;
            if find_class(&es, &e).is_none() {
                es.push(canonical(e));
            }
        }
        es.sort_by_key(|e| e.order());
        out.extend(es.into_iter().map(|e| (e, l.clone())));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub e: String,
    pub l: String,
    pub epi_count: usize,
    pub matrix: Vec<Vec<String>>,
    /// Both τ routes agree entry-wise; absent when the cross-check is off.
    pub routes_agree: Option<bool>,
    pub det: String,
    pub invertible: bool,
    pub audit: Option<DeterminantAudit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedSemisimple,
    CertifiedNotSemisimple,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Every `T_E^L` is invertible.
    TMatrices,
    /// The trace form has full rank over the coefficient field.
    GramSymbolic,
    /// The trace form has full rank at a specialization point.
    GramSpecialized,
    /// A nonzero radical vector of the exact trace form.
    GramRadical,
    None,
}

#[derive(Clone, Debug)]
pub struct SscOptions {
    /// Largest dimension for which the trace form is ranked symbolically.
    pub gram_symbolic_limit: usize,
    pub seed: u64,
    pub points: usize,
    pub cross_check_routes: bool,
}

impl Default for SscOptions {
    fn default() -> Self {
        SscOptions { gram_symbolic_limit: 40, seed: 0, points: 3, cross_check_routes: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimplicityReport {
    pub context: Vec<String>,
    pub ell: String,
    pub dimension: usize,
    pub pairs: Vec<PairReport>,
    pub t_certificate: bool,
    pub gram: GramReport,
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// T-certificate positive implies full trace-form rank at every tested point.
    pub consistent: bool,
    pub witnesses: Vec<String>,
}

fn scalar_det_nonzero(m: &Matrix<Scalar>) -> bool {
    rank(m) == m.len()
}

/// Runs the T-matrix criterion over every section pair and ranks the trace
/// form, then combines both into a verdict.
pub fn certify_semisimple(ctx: &KContext, opts: &SscOptions) -> Result<SemisimplicityReport> {
    let ell = ctx.ell_spec();
    let mut pairs = Vec::new();
    for (e, l) in section_pairs(ctx.groups()) {
        let t = t_matrix(&e, &l, TRoute::Restricted, ell)?;
        let routes_agree = if opts.cross_check_routes {
            Some(t_matrix(&e, &l, TRoute::Bruteforce, ell)?.entries == t.entries)
        } else {
            None
        };
        let audit = if ell.is_generic() { Some(determinant_audit(&t)?) } else { None };
        let (det, invertible) = match &audit {
            Some(a) => (a.det.clone(), a.degree.is_some()),
            None => {
                let nz = scalar_det_nonzero(&t.entries);
                (if nz { "nonzero".into() } else { "0".into() }, nz)
            }
        };
        pairs.push(PairReport {
            e: e.name().into(),
            l: l.name().into(),
            epi_count: t.size(),
            matrix: t.text(),
            routes_agree,
            det,
            invertible,
            audit,
        });
    }
    let t_certificate = pairs.iter().all(|p| p.invertible);

    let exact = !ell.is_generic() || ctx.dimension() <= opts.gram_symbolic_limit;
    let mode = if exact { GramMode::Symbolic } else { GramMode::Specialized(random_points(ctx, opts.seed, opts.points)?) };
    let gram = gram_radical(ctx, &mode)?;
    let full = |r: Option<usize>| r == Some(gram.dimension);
    let consistent = !t_certificate
        || (gram.symbolic_rank.is_none_or(|r| r == gram.dimension)
            && gram.points.iter().all(|p| p.rank.is_none_or(|r| r == gram.dimension)));

    let mut witnesses = Vec::new();
    let (verdict, certificate) = if t_certificate {
        (Verdict::CertifiedSemisimple, Certificate::TMatrices)
    } else if full(gram.symbolic_rank) {
        (Verdict::CertifiedSemisimple, Certificate::GramSymbolic)
    } else if gram.symbolic_rank.is_some() {
        witnesses.extend(gram.radical_text.iter().cloned());
        (Verdict::CertifiedNotSemisimple, Certificate::GramRadical)
    } else if gram.points.iter().any(|p| full(p.rank)) {
        (Verdict::CertifiedSemisimple, Certificate::GramSpecialized)
    } else {
        (Verdict::Inconclusive, Certificate::None)
    };
    for p in pairs.iter().filter(|p| !p.invertible) {
        witnesses.push(format!("T[{}, {}] is singular", p.e, p.l));
    }
    Ok(SemisimplicityReport {
        context: ctx.specs().to_vec(),
        ell: ell.to_string(),
        dimension: ctx.dimension(),
        pairs,
        t_certificate,
        gram,
        verdict,
        certificate,
        consistent,
        witnesses,
    })
}

/// For cyclic `E`, `L` with `|E|` dividing `|L|` and `M <= L` of order
/// `|L|/|E|`: the scalar `c` with `T_E^L = c·I`, or `None` when the matrix is
/// not scalar.
pub fn cyclic_scalar(t: &TMatrix) -> Option<Scalar> {
    let c = t.entries[0][0].clone();
    for (a, row) in t.entries.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            if (a == b && *x != c) || (a != b && !x.is_zero()) {
                return None;
            }
        }
    }
    Some(c)
}

/// Evaluates every entry at a point.
pub fn specialize_matrix(m: &Matrix<Scalar>, point: &std::collections::BTreeMap<u64, BigRational>) -> Result<Matrix<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|x| x.specialize(point).map_err(Error::from)).collect())
        .collect()
}

#[cfg(test)]
mod tests;
