//! Acceptance run. Prints one PASS/FAIL line per criterion, then asserts the
//! facts that were verified by hand. Two criteria state clauses that the
//! exact computation contradicts; those lines print FAIL with the measured
//! values and the assertions pin what is actually true.

use twistcat::field::{factorize, EllSpec, Scalar};
use twistcat::gamma::GammaContext;
use twistcat::group::{homomorphisms, make_group, GroupRef, HomFilter, CATALOG, DEFAULT_ORDER_CAP};
use twistcat::lambda::{
    dimension_identity, hall_generating_tuples, trivial_module_certificate, varphi_route_a, varphi_route_b,
    CornerEmbedding, KContext, Kind,
};
use twistcat::ssc::{
    certify_semisimple, cyclic_scalar, determinant_audit, t_matrix, verify_example_blocks, verify_nilpotent_example,
    Certificate, SscOptions, TRoute, Verdict,
};
use twistcat::suites::{cocycle_check, tau_oracle_check};

struct Line {
    n: u32,
    pass: bool,
    detail: String,
}

fn grp(s: &str) -> GroupRef {
    make_group(s, DEFAULT_ORDER_CAP).unwrap()
}

fn ctx(specs: &[&str], ell: EllSpec) -> KContext {
    KContext::parse(specs, ell).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
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

fn euler(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

fn example_blocks() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [2u64, 3] {
        let c = ctx(&[&format!("C{q}")], EllSpec::Generic);
        let r = certify_semisimple(&c, &SscOptions::default()).unwrap();
        ok &= r.verdict == Verdict::CertifiedSemisimple;
        let b = verify_example_blocks(q, EllSpec::Generic).unwrap();
        let dims: Vec<usize> = b.blocks.iter().map(|x| x.dimension).collect();
        ok &= b.holds;
        notes.push(format!("q={q} blocks {dims:?}"));
    }
    let mut exact = true;
    for q in [2u64, 3] {
        let n = verify_nilpotent_example(q).unwrap();
        ok &= n.holds;
        exact &= n.radical_is_span_of_r;
        notes.push(format!("q={q} at l(q)=1: r in radical {}, radical dim {}", n.radical_contains_r, n.radical_dimension));
    }
    if !exact {
        notes.push("radical is strictly larger than span(r)".into());
    }
    Line { n: 1, pass: ok && exact, detail: notes.join("; ") }
}

fn dimension_identity_line() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    for specs in [vec!["C2"], vec!["C4"], vec!["S3"], vec!["C2", "C3"], vec!["C3"]] {
        let r = dimension_identity(&ctx(&specs, EllSpec::Generic));
        ok &= r.holds;
        notes.push(format!("{}={}", specs.join(","), r.by_enumeration));
    }
    ok &= ctx(&["C2"], EllSpec::Generic).dimension() == 5 && ctx(&["C3"], EllSpec::Generic).dimension() == 6;
    Line { n: 2, pass: ok, detail: notes.join(" ") }
}

fn cocycle_line() -> Line {
    let (good, bad) = cocycle_check(&ctx(&["C2", "C4"], EllSpec::Generic));
    Line { n: 3, pass: bad == 0 && good > 1000, detail: format!("{good} triples, {bad} failures") }
}

fn round_basis_line() -> Line {
    let c = ctx(&["C2", "C4"], EllSpec::Generic);
    let (checked, failures, exhaustive) = tau_oracle_check(&c, usize::MAX).unwrap();
    let keys = c.keys();
    let mut vanishing = 0;
    let mut vanish_ok = true;
    for &i in &keys {
        for &j in keys.iter().filter(|j| j.0 == i.1) {
            let ii = c.projections(i);
            let jj = c.projections(j);
            if ii.right != jj.left {
                vanishing += 1;
                let p = c.round_multiply(&c.basis(Kind::Round, i), &c.basis(Kind::Round, j)).unwrap();
                vanish_ok &= p.is_zero();
            }
        }
    }
    let c = ctx(&["C2", "C3"], EllSpec::Generic);
    let keys = c.keys();
    let mut products = 0;
    let mut products_ok = true;
    for &i in &keys {
        for &j in keys.iter().filter(|j| j.0 == i.1) {
            let (a, b) = (c.basis(Kind::Round, i), c.basis(Kind::Round, j));
            let sq = c.to_round(&c.multiply(&c.to_square(&a).unwrap(), &c.to_square(&b).unwrap()).unwrap()).unwrap();
            products_ok &= c.round_multiply(&a, &b).unwrap() == sq;
            products += 1;
        }
    }
    Line {
        n: 4,
        pass: exhaustive && failures == 0 && vanish_ok && products_ok,
        detail: format!("tau {checked} triples, {vanishing} vanishing products, {products} round/square products"),
    }
}

fn totient_line() -> Line {
    let mut ok = true;
    let mut count = 0;
    for spec in CATALOG {
        let g = grp(spec);
        if g.order() > 16 {
            continue;
        }
        for d in 1..=2u32 {
            let v = varphi_route_a(&g, &EllSpec::Power(d)).unwrap();
            ok &= v == varphi_route_b(&g, &EllSpec::Power(d)).unwrap();
            ok &= v == Scalar::from_int(hall_generating_tuples(&g, d) as i64);
        }
        if g.is_cyclic() {
            let n = g.order() as u64;
            ok &= varphi_route_a(&g, &EllSpec::Power(1)).unwrap() == Scalar::from_int(euler(n) as i64);
        }
        count += 1;
    }
    ok &= varphi_route_a(&grp("C2xC2"), &EllSpec::Power(1)).unwrap().is_zero();
    Line { n: 5, pass: ok, detail: format!("{count} groups of order <= 16, d in {{1, 2}}") }
}

fn trivial_line() -> Line {
    let c6 = trivial_module_certificate(&ctx(&["C6"], EllSpec::Power(1))).unwrap();
    let generic = trivial_module_certificate(&ctx(&["C6"], EllSpec::Generic)).unwrap();
    let v4 = trivial_module_certificate(&ctx(&["C2xC2"], EllSpec::Power(1))).unwrap();
    let pass = c6.failures.is_empty() && generic.failures.is_empty() && c6.positive && !v4.positive;
    Line {
        n: 6,
        pass,
        detail: format!(
            "C6 {} products, positive {}; C2xC2 positive {}",
            c6.products_checked, c6.positive, v4.positive
        ),
    }
}

fn cyclic_oracle(n: u64, m: u64) -> Scalar {
    let mut acc = Scalar::zero();
    for k in (1..=n).filter(|k| n % k == 0) {
        if k / gcd(k, m) * m == n {
            acc += &(&Scalar::from_int(mobius(n / k)) * &EllSpec::Generic.ell(gcd(k, m)).unwrap());
        }
    }
    acc
}

fn semisimplicity_line() -> (Line, Vec<String>) {
    let mut certified = true;
    for specs in [vec!["C2"], vec!["C3"], vec!["C4"], vec!["C2", "C3"], vec!["C6"]] {
        let r = certify_semisimple(&ctx(&specs, EllSpec::Generic), &SscOptions::default()).unwrap();
        certified &= r.verdict == Verdict::CertifiedSemisimple && r.certificate == Certificate::TMatrices;
    }
    let mut scalar = true;
    let mut oracle = true;
    let mut pairs = 0;
    let mut off = Vec::new();
    for n in 1..=12u64 {
        for e in (1..=n).filter(|e| n % e == 0) {
            let t = t_matrix(&grp(&format!("C{e}")), &grp(&format!("C{n}")), TRoute::Restricted, &EllSpec::Generic).unwrap();
            pairs += 1;
            let Some(c) = cyclic_scalar(&t) else {
                scalar = false;
                continue;
            };
            let m = n / e;
            oracle &= c == cyclic_oracle(n, m);
            if c != EllSpec::Generic.ell(m).unwrap() {
                off.push(format!("(C{e},C{n})={c}"));
            }
        }
    }
    let line = Line {
        n: 7,
        pass: certified && scalar && oracle && off.is_empty(),
        detail: format!(
            "T-certificates {certified}; {pairs} cyclic pairs scalar {scalar}; {} pairs differ from l(|L|/|E|), e.g. {}",
            off.len(),
            off.iter().take(3).cloned().collect::<Vec<_>>().join(" ")
        ),
    };
    assert!(certified && scalar && oracle);
    (line, off)
}

fn determinant_line() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    for (e, l) in [("C2", "C2xC2"), ("C2", "C4"), ("C2", "C8")] {
        let a = determinant_audit(&t_matrix(&grp(e), &grp(l), TRoute::Restricted, &EllSpec::Generic).unwrap()).unwrap();
        ok &= a.diagonal_monic && a.degree.is_some();
        notes.push(format!(
            "({e},{l}) det {} degree {:?} vs d*|epi| {} / d^|epi| {}",
            a.det, a.degree, a.linear_prediction, a.power_prediction
        ));
    }
    Line { n: 8, pass: ok, detail: notes.join("; ") }
}

fn gamma_line() -> Line {
    let c = ctx(&["C2", "C3"], EllSpec::Generic);
    let nu = GammaContext::new(&c).nu_check().unwrap();
    let mut ok = nu.multiplicative && nu.injective;
    let mut notes = vec![format!("nu on {} pairs", nu.pairs_checked)];
    for spec in ["C2", "S3"] {
        let c = ctx(&[spec], EllSpec::Power(1));
        let b = GammaContext::new(&c).burnside_check().unwrap();
        ok &= b.integral && b.matches_bisets;
        notes.push(format!("{spec} {} biset products", b.pairs_checked));
    }
    Line { n: 9, pass: ok, detail: notes.join("; ") }
}

fn corner_line() -> Line {
    let src = ctx(&["C2"], EllSpec::Generic);
    let tgt = ctx(&["C4"], EllSpec::Generic);
    let kappa = homomorphisms(tgt.group(0), src.group(0), HomFilter::All)
        .into_iter()
        .find(|m| m.is_injective())
        .unwrap();
    let r = CornerEmbedding::new(&src, &tgt, vec![kappa]).unwrap().verify().unwrap();
    Line {
        n: 10,
        pass: r.injective && r.multiplicative && r.corner && r.image_dimension == 5,
        detail: format!("image dimension {}, {} pairs", r.image_dimension, r.pairs_checked),
    }
}

fn main() {
    let (seven, off) = semisimplicity_line();
    let lines = vec![
        example_blocks(),
        dimension_identity_line(),
        cocycle_line(),
        round_basis_line(),
        totient_line(),
        trivial_line(),
        seven,
        determinant_line(),
        gamma_line(),
        corner_line(),
    ];
    let mut lines = lines;
    lines.sort_by_key(|l| l.n);
    for l in &lines {
        println!("criterion {:>2}: {}  {}", l.n, if l.pass { "PASS" } else { "FAIL" }, l.detail);
    }

    // everything except the two contradicted clauses holds
    for l in &lines {
        if l.n != 1 && l.n != 7 {
            assert!(l.pass, "criterion {} failed: {}", l.n, l.detail);
        }
    }
    // at l(q) = 1 the radical is three-dimensional and contains r
    for q in [2u64, 3] {
        let n = verify_nilpotent_example(q).unwrap();
        assert!(n.holds && !n.radical_is_span_of_r);
        assert_eq!(n.gram_rank + n.radical_dimension, n.dimension);
    }
    assert_eq!(verify_nilpotent_example(2).unwrap().radical_dimension, 3);
    for q in [2u64, 3] {
        assert!(verify_example_blocks(q, EllSpec::Generic).unwrap().holds);
    }
    // the scalar equals l(|L|/|E|) exactly when every prime of |L|/|E| divides |E|
    assert!(off.contains(&"(C1,C2)=l2 - 1".to_string()), "{off:?}");
    assert!(off.contains(&"(C2,C6)=l3 - 1".to_string()), "{off:?}");
}
