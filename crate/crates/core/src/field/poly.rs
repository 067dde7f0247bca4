//! Sparse multivariate polynomials over the rationals, in variables `l_q`
//! indexed by primes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::FieldError;

/// A monomial `prod l_q^e`, stored as `(q, e)` pairs sorted by prime with no
/// zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u64, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(q: u64) -> Self {
        Monomial(vec![(q, 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (u64, u32)>>(powers: I) -> Self {
        let mut m: BTreeMap<u64, u32> = BTreeMap::new();
        for (q, e) in powers {
            *m.entry(q).or_default() += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    out.push((p, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    out.push((p, e));
                    i += 1;
                }
                (Some(&(p, e)), None) => {
                    out.push((p, e));
                    i += 1;
                }
                (_, Some(&(q, f))) => {
                    out.push((q, f));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(p, e) in &self.0 {
            let mut e = e;
            if let Some(&(q, f)) = other.0.get(j) {
                if q < p {
                    return None;
                }
                if q == p {
                    if f > e {
                        return None;
                    }
                    e -= f;
                    j += 1;
                }
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(p, e) in &self.0 {
            if let Some(&(_, f)) = other.0.iter().find(|&&(q, _)| q == p) {
                out.push((p, e.min(f)));
            }
        }
        Monomial(out)
    }

    fn exponent(&self, q: u64) -> u32 {
        self.0.iter().find(|&&(p, _)| p == q).map_or(0, |&(_, e)| e)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `l_2 > l_3 > l_5 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut primes: Vec<u64> = self.0.iter().chain(&other.0).map(|&(q, _)| q).collect();
            primes.sort_unstable();
            primes.dedup();
            for q in primes {
                match self.exponent(q).cmp(&other.exponent(q)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(q, e)| if e == 1 { format!("l{q}") } else { format!("l{q}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with exact rational coefficients; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(q: u64) -> Self {
        Self::term(BigRational::one(), Monomial::var(q))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree.
    pub fn degree(&self) -> Result<u32, FieldError> {
        self.leading().map(|(m, _)| m.degree()).ok_or(FieldError::ZeroPolynomial)
    }

    /// A unique term of maximal total degree exists and has coefficient 1.
    pub fn is_monic(&self) -> Result<bool, FieldError> {
        let d = self.degree()?;
        let top: Vec<&BigRational> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(_, c)| c)
            .collect();
        Ok(top.len() == 1 && top[0].is_one())
    }

    pub fn variables(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(q, _)| q)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Exact quotient `self / d`; errors when `d` does not divide `self`.
    ///
    /// Division by a single polynomial under a monomial order leaves a zero
    /// remainder exactly when the division is exact.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial, FieldError> {
        let (lm, lc) = d.leading().ok_or(FieldError::DivisionByZero)?;
        if let Some(c) = d.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading() {
            let Some(qm) = m.div(lm) else {
                return Err(FieldError::InexactDivision);
            };
            let qc = c / lc;
            let step = Polynomial::term(qc.clone(), qm.clone());
            rem = &rem - &(&step * d);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Evaluates at a point; every variable must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<u64, BigRational>) -> Result<BigRational, FieldError> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(q, e) in &m.0 {
                let v = point.get(&q).ok_or(FieldError::MissingPrime(q))?;
                t *= num::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing monomial order, e.g. `l2^2*l3 - 3*l2 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn l(p: u64) -> Polynomial {
        Polynomial::var(p)
    }

    #[test]
    fn degree_and_monic() {
        // l2^2 l3 - 3 l2
        let p = &(&(&l(2) * &l(2)) * &l(3)) - &Polynomial::term(q(3), Monomial::var(2));
        assert_eq!(p.degree(), Ok(3));
        assert_eq!(p.is_monic(), Ok(true));
        assert_eq!(p.to_string(), "l2^2*l3 - 3*l2");
        let s = &l(2) + &l(3);
        assert_eq!(s.is_monic(), Ok(false));
        assert_eq!(Polynomial::zero().degree(), Err(FieldError::ZeroPolynomial));
        assert_eq!(Polynomial::term(q(2), Monomial::var(5)).is_monic(), Ok(false));
    }

    #[test]
    fn exact_division() {
        let a = &l(2) - &Polynomial::one();
        let b = &(&l(2) * &l(3)) + &Polynomial::from_int(4);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Ok(b.clone()));
        assert_eq!(prod.div_exact(&b), Ok(a.clone()));
        assert_eq!(l(2).div_exact(&a), Err(FieldError::InexactDivision));
        assert_eq!(a.div_exact(&Polynomial::zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let p = &(&l(2) * &l(3)) - &Polynomial::from_int(1);
        let pt: BTreeMap<u64, BigRational> = [(2, q(5)), (3, q(2))].into_iter().collect();
        assert_eq!(p.evaluate(&pt), Ok(q(9)));
        let partial: BTreeMap<u64, BigRational> = [(2, q(5))].into_iter().collect();
        assert_eq!(p.evaluate(&partial), Err(FieldError::MissingPrime(3)));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 0..4).prop_map(|ts| {
            ts.into_iter().fold(Polynomial::zero(), |acc, (c, e2, e3)| {
                &acc + &Polynomial::term(q(c), Monomial::from_powers([(2, e2), (3, e3)]))
            })
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn product_divides_exactly(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Ok(a));
        }
    }
}
