//! Rational functions in the `l_q`, kept as unreduced fractions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use super::poly::{Monomial, Polynomial};
use crate::error::FieldError;

/// `num / den` with `den != 0`. Fractions are not brought to lowest terms;
/// equality cross-multiplies.
#[derive(Clone)]
pub struct Scalar {
    num: Polynomial,
    den: Polynomial,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Scalar::from_poly(Polynomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(Polynomial::from_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Scalar { num: p, den: Polynomial::one() }
    }

    /// The indeterminate `l_q`.
    pub fn var(q: u64) -> Self {
        Scalar::from_poly(Polynomial::var(q))
    }

    pub fn monomial(m: Monomial) -> Self {
        Scalar::from_poly(Polynomial::term(BigRational::one(), m))
    }

    pub fn fraction(num: Polynomial, den: Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar { num, den }.normalized())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The value when the scalar is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// The numerator when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn variables(&self) -> Vec<u64> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar { num: self.den.clone(), den: self.num.clone() }.normalized())
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        (0..e).fold(Scalar::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Cheap simplifications: cancel the common monomial factor, fold a
    /// constant denominator into the numerator, try exact division, and make
    /// the denominator's leading coefficient 1.
    fn normalized(mut self) -> Scalar {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() {
            return self;
        }
        if let Some(c) = self.den.as_constant() {
            return Scalar::from_poly(self.num.scale(&c.recip()));
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            let gp = Polynomial::term(BigRational::one(), g);
            self.num = self.num.div_exact(&gp).expect("monomial content divides");
            self.den = self.den.div_exact(&gp).expect("monomial content divides");
            if let Some(c) = self.den.as_constant() {
                return Scalar::from_poly(self.num.scale(&c.recip()));
            }
        }
        if let Ok(q) = self.num.div_exact(&self.den) {
            return Scalar::from_poly(q);
        }
        let lc = self.den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let r = lc.recip();
            self.num = self.num.scale(&r);
            self.den = self.den.scale(&r);
        }
        self
    }

    /// Exact evaluation at a point. A variable missing from the point is
    /// reported before a vanishing denominator.
    pub fn specialize(&self, point: &BTreeMap<u64, BigRational>) -> Result<BigRational, FieldError> {
        let n = self.num.evaluate(point)?;
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(FieldError::VanishingDenominator);
        }
        Ok(n / d)
    }

    /// Substitutes rational values for some of the variables, leaving the
    /// others symbolic.
    pub fn substitute(&self, point: &BTreeMap<u64, BigRational>) -> Result<Scalar, FieldError> {
        let sub = |p: &Polynomial| {
            p.terms().fold(Polynomial::zero(), |acc, (m, c)| {
                let mut coeff = c.clone();
                let mut rest = Vec::new();
                for &(q, e) in m.powers() {
                    match point.get(&q) {
                        Some(v) => coeff *= num::pow(v.clone(), e as usize),
                        None => rest.push((q, e)),
                    }
                }
                &acc + &Polynomial::term(coeff, Monomial::from_powers(rest))
            })
        };
        let d = sub(&self.den);
        if d.is_zero() {
            return Err(FieldError::VanishingDenominator);
        }
        Ok(Scalar { num: sub(&self.num), den: d }.normalized())
    }

    /// Parses the canonical text form (and any expression built from
    /// integers, `l<prime>`, `+ - * / ^` and parentheses).
    pub fn parse(text: &str) -> Result<Scalar, FieldError> {
        let toks = tokenize(text)?;
        let mut p = Parser { toks, pos: 0 };
        let s = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(FieldError::MalformedEll(format!("trailing input in {text:?}")));
        }
        Ok(s)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar { num: &self.num + &rhs.num, den: self.den.clone() }.normalized();
        }
        Scalar {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.normalized()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    /// `p` when the denominator is 1, else `(p)/(q)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(u64),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, FieldError> {
    let bad = || FieldError::MalformedEll(format!("cannot parse scalar {s:?}"));
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| bad())?));
        } else if c == 'l' {
            i += 1;
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Var(t.parse().map_err(|_| bad())?));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(bad());
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self) -> FieldError {
        FieldError::MalformedEll(format!("unexpected token at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == '*' { acc * t } else { acc.div(&t)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, FieldError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, FieldError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| self.err())?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, FieldError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::from_bigint(n))
            }
            Some(Tok::Var(q)) => {
                self.pos += 1;
                Ok(Scalar::var(q))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err()),
        }
    }
}
