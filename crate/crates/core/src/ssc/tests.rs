use std::sync::Arc;

use super::blocks::generic_square_law;
use super::*;
use crate::field::{factorize, EllSpec, Scalar};
use crate::group::{parse_group, GroupRef};
use crate::lambda::dimension_identity;

fn grp(s: &str) -> GroupRef {
    Arc::new(parse_group(s).unwrap())
}

fn l(q: u64) -> Scalar {
    Scalar::var(q)
}

#[test]
fn triangles() {
    let c4 = grp("C4");
    let id = GroupMap::identity(&c4);
    assert_eq!(triangle_left(&id).unwrap(), ProductSubgroup::diagonal(&c4));
    let c2 = grp("C2");
    for phi in homomorphisms(&c2, &c4, HomFilter::Epi) {
        assert_eq!(triangle_left(&phi).unwrap().order(), 4);
        assert_eq!(triangle_left(&phi).unwrap().opposite(), triangle_right(&phi).unwrap());
    }
    let zero = homomorphisms(&c2, &c4, HomFilter::All).into_iter().find(|m| !m.is_surjective()).unwrap();
    assert!(triangle_left(&zero).is_err());
    assert!(matches!(
        t_matrix(&grp("C4"), &grp("C2"), TRoute::Restricted, &EllSpec::Generic),
        Err(Error::NoEpimorphisms { .. })
    ));
}

#[test]
fn t_routes_agree_over_corpus() {
    let groups: Vec<GroupRef> = ["C4", "C2xC2", "S3", "C6", "D8"].iter().map(|s| grp(s)).collect();
    let pairs = section_pairs(&groups);
    assert!(pairs.len() > 15);
    for (e, l) in pairs {
        let a = t_matrix(&e, &l, TRoute::Restricted, &EllSpec::Generic).unwrap();
        let b = t_matrix(&e, &l, TRoute::Bruteforce, &EllSpec::Generic).unwrap();
        assert_eq!(a.entries, b.entries, "{} {}", e.name(), l.name());
    }
}

#[test]
fn small_t_matrices() {
    let g = EllSpec::Generic;
    for n in [2, 3, 5, 6] {
        let c = grp(&format!("C{n}"));
        let t = t_matrix(&c, &c, TRoute::Bruteforce, &g).unwrap();
        assert_eq!(cyclic_scalar(&t), Some(Scalar::one()));
    }
    let t = t_matrix(&grp("C2"), &grp("C4"), TRoute::Bruteforce, &g).unwrap();
    assert_eq!(t.entries, vec![vec![l(2)]]);
    let t = t_matrix(&grp("C2"), &grp("C2xC2"), TRoute::Bruteforce, &g).unwrap();
    assert_eq!(t.size(), 3);
    // φ = ψ: S = L contributes l(2), the two complements of ker φ give -1 each
    assert_eq!(cyclic_scalar(&t), Some(&l(2) - &Scalar::from_int(2)));
}

fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `Σ_{k | n, lcm(k, m) = n} μ(n/k) l(gcd(k, m))`: the scalar of `T_E^L`
/// for cyclic `L` of order `n` and kernel of order `m`.
fn cyclic_oracle(n: u64, m: u64) -> Scalar {
    let mut acc = Scalar::zero();
    for k in (1..=n).filter(|k| n % k == 0) {
        if k / gcd(k, m) * m == n {
            let g = gcd(k, m);
            acc += &(&Scalar::from_int(mobius(n / k)) * &EllSpec::Generic.ell(g).unwrap());
        }
    }
    acc
}

#[test]
fn cyclic_pairs_are_scalar_matrices() {
    for n in [1u64, 2, 3, 4, 6, 8, 9, 12] {
        for e in (1..=n).filter(|e| n % e == 0) {
            let t = t_matrix(&grp(&format!("C{e}")), &grp(&format!("C{n}")), TRoute::Restricted, &EllSpec::Generic).unwrap();
            let m = n / e;
            let c = cyclic_scalar(&t).expect("scalar matrix");
            assert_eq!(c, cyclic_oracle(n, m), "C{e} C{n}");
            assert!(!c.is_zero());
            let frattini = factorize(m).iter().all(|&(p, _)| e % p == 0);
            assert_eq!(c == EllSpec::Generic.ell(m).unwrap(), frattini, "C{e} C{n}");
        }
    }
}

#[test]
fn determinant_audits() {
    let g = EllSpec::Generic;
    let a = determinant_audit(&t_matrix(&grp("C3"), &grp("C3"), TRoute::Restricted, &g).unwrap()).unwrap();
    assert_eq!((a.det.as_str(), a.degree, a.monic), ("1", Some(0), true));
    let a = determinant_audit(&t_matrix(&grp("C2"), &grp("C4"), TRoute::Restricted, &g).unwrap()).unwrap();
    assert_eq!((a.det.as_str(), a.degree, a.monic, a.linear_prediction), ("l2", Some(1), true, 1));
    let a = determinant_audit(&t_matrix(&grp("C2"), &grp("C2xC2"), TRoute::Restricted, &g).unwrap()).unwrap();
    assert_eq!(a.degree, Some(3));
    assert!(a.matches_linear && !a.matches_power && a.diagonal_monic && a.off_diagonal_lower);
    let expect = (&l(2) - &Scalar::from_int(2)).pow(3);
    assert_eq!(Scalar::parse(&a.det).unwrap(), expect);
}

#[test]
fn certificates() {
    for specs in [vec!["C1"], vec!["C2"], vec!["C3"], vec!["C2", "C3"]] {
        let ctx = KContext::parse(&specs, EllSpec::Generic).unwrap();
        let r = certify_semisimple(&ctx, &SscOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedSemisimple, "{specs:?}");
        assert_eq!(r.certificate, Certificate::TMatrices);
        assert!(r.consistent);
        assert!(r.pairs.iter().all(|p| p.routes_agree == Some(true)));
    }
    let ctx = KContext::parse(&["C2"], "assign:2=1".parse().unwrap()).unwrap();
    let r = certify_semisimple(&ctx, &SscOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedNotSemisimple);
    assert!(!r.witnesses.is_empty());
}

#[test]
fn specialized_gram_is_full_rank() {
    let ctx = KContext::parse(&["C2", "C3"], EllSpec::Generic).unwrap();
    let pts = random_points(&ctx, 5, 3).unwrap();
    assert_eq!(pts, random_points(&ctx, 5, 3).unwrap());
    let r = gram_radical(&ctx, &GramMode::Specialized(pts)).unwrap();
    assert!(r.points.iter().all(|p| p.rank == Some(19)));
}

#[test]
fn gram_ranks() {
    let c1 = KContext::parse(&["C1"], EllSpec::Generic).unwrap();
    assert_eq!(gram_radical(&c1, &GramMode::Symbolic).unwrap().symbolic_rank, Some(1));
    let c2 = KContext::parse(&["C2"], EllSpec::Generic).unwrap();
    assert_eq!(gram_radical(&c2, &GramMode::Symbolic).unwrap().symbolic_rank, Some(5));
    let c2 = KContext::parse(&["C2"], "assign:2=1".parse().unwrap()).unwrap();
    let r = gram_radical(&c2, &GramMode::Symbolic).unwrap();
    assert_eq!((r.symbolic_rank, r.radical.len()), (Some(2), 3));
}

#[test]
fn centres() {
    assert_eq!(center(&KContext::parse(&["C1"], EllSpec::Generic).unwrap()).unwrap().len(), 1);
    for q in [2u64, 3, 5] {
        let ctx = KContext::parse(&[&format!("C{q}")], EllSpec::Generic).unwrap();
        let z = center(&ctx).unwrap();
        assert_eq!(z.len() as u64, q);
        for a in &z {
            for k in ctx.keys() {
                let s = ctx.basis(crate::lambda::Kind::Square, k);
                assert_eq!(ctx.multiply(a, &s).unwrap(), ctx.multiply(&s, a).unwrap());
            }
        }
        if q != 2 {
            assert_eq!(z.len(), dimension_identity(&ctx).semisimple_center_dimension);
        }
    }
}

#[test]
fn example_blocks() {
    let r = verify_example_blocks(2, "assign:2=3".parse().unwrap()).unwrap();
    assert!(r.holds, "{r:?}");
    assert_eq!(r.lambda, "3");
    assert!(r.blocks[0].element.contains("(3/2)*s"));
    for q in [2, 3] {
        let r = verify_example_blocks(q, EllSpec::Generic).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.blocks.iter().map(|b| b.dimension).collect::<Vec<_>>(), r.expected_dimensions);
    }
    assert!(verify_example_blocks(2, "assign:2=1".parse().unwrap()).is_err());
    assert!(verify_example_blocks(5, EllSpec::Generic).is_err());
}

#[test]
fn nilpotent_examples() {
    for q in [2, 3] {
        let r = verify_nilpotent_example(q).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(!r.radical_is_span_of_r);
        assert_eq!(r.gram_rank + r.radical_dimension, r.dimension);
        assert!(generic_square_law(q).unwrap());
    }
}
