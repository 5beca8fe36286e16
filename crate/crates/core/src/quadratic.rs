//! Exact arithmetic in ℤ[√−5].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b√−5` with arbitrary-precision coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        QuadInt::new(a, 0)
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The only units are ±1.
    pub fn is_unit(&self) -> bool {
        self.b.is_zero() && self.a.abs().is_one()
    }

    pub fn conj(&self) -> Self {
        QuadInt {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `a² + 5b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + BigInt::from(5) * &self.b * &self.b
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(QuadInt::one(), |acc, _| &acc * self)
    }

    /// `f / self`, if it lies in ℤ[√−5].
    pub fn divide(&self, f: &QuadInt) -> Result<Option<QuadInt>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = f * &self.conj();
        let n = self.norm();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        Ok((ra.is_zero() && rb.is_zero()).then(|| QuadInt { a: qa, b: qb }))
    }

    /// Whether `self` divides `f`: `f·conj(self) / norm(self)` has integer coordinates.
    pub fn divides(&self, f: &QuadInt) -> Result<bool> {
        Ok(self.divide(f)?.is_some())
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = |b: &BigInt| {
            if b.abs().is_one() {
                String::new()
            } else {
                b.abs().to_string()
            }
        };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{}√-5", coeff(&self.b))
        } else {
            write!(f, "{} {sign} {}√-5", self.a, coeff(&self.b))
        }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a * &o.a - BigInt::from(5) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadInt {
            type Output = QuadInt;
            fn $m(self, o: QuadInt) -> QuadInt {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Outcome of a bounded search for `g | f^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `g · witness = f^exponent`, with `exponent` the least such.
    Member { exponent: u32, witness: QuadInt },
    /// No `n ≤ bound` works. Says nothing about larger exponents.
    UnknownUpTo(u32),
}

/// Searches `n = 1..=bound` for `g | f^n`, i.e. a certificate that `g` lies in
/// the principal filter of `f`. Never claims non-membership.
pub fn member_bounded(g: &QuadInt, f: &QuadInt, bound: u32) -> Result<Membership> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroElement);
    }
    if bound == 0 {
        return Err(Error::BadBound);
    }
    let mut power = QuadInt::one();
    for n in 1..=bound {
        power = &power * f;
        if let Some(witness) = g.divide(&power)? {
            return Ok(Membership::Member { exponent: n, witness });
        }
    }
    Ok(Membership::UnknownUpTo(bound))
}

/// Whether the norm test alone rules out `g | f^n`: `norm(g) ∤ norm(f)^n`.
pub fn norm_refutes(g: &QuadInt, f: &QuadInt, n: u32) -> bool {
    let nf = num_traits::pow(f.norm(), n as usize);
    !nf.is_multiple_of(&g.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b)
    }

    #[test]
    fn identities() {
        assert_eq!(q(1, 1).pow(2), q(-4, 2));
        assert_eq!(&q(2, -1) * &q(2, 1), q(9, 0));
        assert_eq!(q(1, 1).pow(2), &q(-2, 0) * &q(2, -1));
        assert_eq!(q(1, 1).norm(), BigInt::from(6));
    }

    #[test]
    fn divisibility() {
        assert_eq!(q(2, 0).divide(&q(-4, 2)).unwrap(), Some(q(-2, 1)));
        for n in 1..=20 {
            assert!(!q(1, 1).divides(&q(2, 0).pow(n)).unwrap());
            assert!(norm_refutes(&q(1, 1), &q(2, 0), n));
        }
        assert!(q(3, 7).divides(&q(3, 7)).unwrap());
        assert_eq!(q(0, 0).divides(&q(1, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn bounded_membership() {
        let member = |g, f, n| member_bounded(&g, &f, n).unwrap();
        assert_eq!(
            member(q(2, 0), q(1, 1), 4),
            Membership::Member {
                exponent: 2,
                witness: q(-2, 1)
            }
        );
        assert_eq!(
            member(q(2, -1), q(3, 0), 4),
            Membership::Member {
                exponent: 2,
                witness: q(2, 1)
            }
        );
        assert_eq!(
            member(q(2, -1), q(1, 1), 4),
            Membership::Member {
                exponent: 2,
                witness: q(-2, 0)
            }
        );
        assert_eq!(
            member(q(4, 1), q(4, 1), 1),
            Membership::Member {
                exponent: 1,
                witness: q(1, 0)
            }
        );
        assert_eq!(member(q(1, 1), q(2, 0), 6), Membership::UnknownUpTo(6));
        assert_eq!(member_bounded(&q(1, 0), &q(0, 0), 3), Err(Error::ZeroElement));
        assert_eq!(member_bounded(&q(1, 0), &q(1, 0), 0), Err(Error::BadBound));
    }

    #[test]
    fn units_and_display() {
        assert!(q(-1, 0).is_unit() && !q(2, 0).is_unit() && !q(0, 1).is_unit());
        assert_eq!(q(-4, 2).to_string(), "-4 + 2√-5");
        assert_eq!(q(2, -1).to_string(), "2 - √-5");
        assert_eq!(q(0, -3).to_string(), "-3√-5");
    }
}
