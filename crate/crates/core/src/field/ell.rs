//! The multiplicative assignment `n -> l(n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use super::poly::Monomial;
use super::scalar::Scalar;
use crate::error::FieldError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EllSpec {
    /// `l(q) = l_q`, independent indeterminates.
    Generic,
    /// `l(n) = n^d`.
    Power(u32),
    /// `l(n) = 1`.
    Unit,
    /// Fixed nonzero rational values at primes.
    Assign(BTreeMap<u64, BigRational>),
}

/// Prime factorization as `(p, e)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of prime factors counted with multiplicity.
pub fn len(n: u64) -> u32 {
    factorize(n).iter().map(|&(_, e)| e).sum()
}

impl EllSpec {
    pub fn ell(&self, n: u64) -> Result<Scalar, FieldError> {
        assert!(n >= 1, "l is defined on positive integers");
        match self {
            EllSpec::Generic => Ok(Scalar::monomial(Monomial::from_powers(factorize(n)))),
            EllSpec::Power(d) => Ok(Scalar::from_bigint(num::pow(BigInt::from(n), *d as usize))),
            EllSpec::Unit => Ok(Scalar::one()),
            EllSpec::Assign(vals) => {
                let mut acc = BigRational::one();
                for (p, e) in factorize(n) {
                    let v = vals.get(&p).ok_or(FieldError::MissingPrime(p))?;
                    acc *= num::pow(v.clone(), e as usize);
                }
                Ok(Scalar::from_rational(acc))
            }
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, EllSpec::Generic)
    }

    /// The point at which a generic scalar specializes to this mode, for the
    /// given primes. `None` for the generic mode itself.
    pub fn point(&self, primes: &[u64]) -> Result<Option<BTreeMap<u64, BigRational>>, FieldError> {
        if self.is_generic() {
            return Ok(None);
        }
        let mut pt = BTreeMap::new();
        for &p in primes {
            let v = self.ell(p)?.as_rational().expect("non-generic values are rational");
            pt.insert(p, v);
        }
        Ok(Some(pt))
    }
}

impl fmt::Display for EllSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllSpec::Generic => f.write_str("generic"),
            EllSpec::Power(d) => write!(f, "power:{d}"),
            EllSpec::Unit => f.write_str("unit"),
            EllSpec::Assign(vals) => {
                let parts: Vec<String> = vals
                    .iter()
                    .map(|(p, v)| format!("{p}={}", super::poly::fmt_rational(v)))
                    .collect();
                write!(f, "assign:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for EllSpec {
    type Err = FieldError;

    /// `generic`, `power:d` (also `power(d)`), `unit`, or `assign:2=1,3=5/2`.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let bad = |why: &str| FieldError::MalformedEll(format!("{s:?}: {why}"));
        let s = s.trim();
        match s {
            "generic" => return Ok(EllSpec::Generic),
            "unit" => return Ok(EllSpec::Unit),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("power") {
            let d = rest
                .strip_prefix(':')
                .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
                .ok_or_else(|| bad("expected power:d"))?;
            return d.trim().parse().map(EllSpec::Power).map_err(|_| bad("exponent must be a non-negative integer"));
        }
        if let Some(rest) = s.strip_prefix("assign:") {
            let mut vals = BTreeMap::new();
            for item in rest.split(',').filter(|t| !t.trim().is_empty()) {
                let (p, v) = item.split_once('=').ok_or_else(|| bad("expected prime=value"))?;
                let p: u64 = p.trim().parse().map_err(|_| bad("key must be an integer"))?;
                if p < 2 || factorize(p) != [(p, 1)] {
                    return Err(bad("keys must be primes"));
                }
                let v: BigRational = v.trim().parse().map_err(|_| bad("value must be a rational"))?;
                if v.is_zero() {
                    return Err(bad("values must be nonzero"));
                }
                if vals.insert(p, v).is_some() {
                    return Err(bad("duplicate prime"));
                }
            }
            return Ok(EllSpec::Assign(vals));
        }
        Err(bad("unknown mode"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn values() {
        assert!(EllSpec::Generic.ell(1).unwrap().is_one());
        assert_eq!(EllSpec::Generic.ell(12).unwrap().to_string(), "l2^2*l3");
        assert_eq!(EllSpec::Power(1).ell(12).unwrap(), Scalar::from_int(12));
        assert_eq!(EllSpec::Power(2).ell(6).unwrap(), Scalar::from_int(36));
        assert!(EllSpec::Unit.ell(30).unwrap().is_one());
        let a: EllSpec = "assign:2=1,3=5/2".parse().unwrap();
        assert_eq!(a.ell(18).unwrap().to_string(), "25/4");
        assert_eq!(a.ell(10).unwrap_err(), FieldError::MissingPrime(5));
        assert_eq!(len(12), 3);
        assert_eq!(len(1), 0);
    }

    #[test]
    fn parsing() {
        for s in ["generic", "unit", "power:3", "assign:2=1,3=5/2"] {
            assert_eq!(s.parse::<EllSpec>().unwrap().to_string(), s);
        }
        assert_eq!("power(2)".parse::<EllSpec>().unwrap(), EllSpec::Power(2));
        for s in ["", "power", "power:x", "assign:4=1", "assign:2=0", "assign:2=1,2=3", "lambda"] {
            assert!(s.parse::<EllSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn multiplicative_on_grid() {
        let modes = [
            EllSpec::Generic,
            EllSpec::Power(2),
            EllSpec::Unit,
            "assign:2=3,3=1/2,5=7,7=-1,11=2,13=3,17=5,19=1/3".parse().unwrap(),
        ];
        for mode in &modes {
            for m in (1..=1000u64).step_by(37) {
                for n in (1..=1000u64).step_by(41) {
                    let (Ok(a), Ok(b), Ok(c)) = (mode.ell(m), mode.ell(n), mode.ell(m * n)) else {
                        continue;
                    };
                    assert_eq!(c, &a * &b, "{mode} {m} {n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn multiplicative(m in 1u64..=1000, n in 1u64..=1000, d in 0u32..3) {
            for mode in [EllSpec::Generic, EllSpec::Power(d), EllSpec::Unit] {
                prop_assert_eq!(mode.ell(m * n).unwrap(), &mode.ell(m).unwrap() * &mode.ell(n).unwrap());
            }
        }
    }
}
