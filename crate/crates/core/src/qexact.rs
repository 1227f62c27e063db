//! Exact values of the form c * p^e with c a p-unit rational and e rational.

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, show, Rational};
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: i128,
    a: u32,
    q: i128,
}

fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimePower {
    pub fn new(p: i128, a: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if a == 0 {
            return Err(Error::BadExponent);
        }
        let q = p.checked_pow(a).ok_or(Error::Overflow("prime power"))?;
        if q > 1 << 40 {
            return Err(Error::Overflow("prime power"));
        }
        Ok(PrimePower { p, a, q })
    }

    /// Recovers (p, a) from q itself.
    pub fn from_q(q: i128) -> Result<Self> {
        if q < 3 {
            return Err(Error::NotOddPrime(q));
        }
        let mut p = 2;
        while q % p != 0 {
            p += 1;
        }
        let mut a = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            a += 1;
        }
        if r != 1 {
            return Err(Error::Invalid(format!("{q} is not a prime power")));
        }
        PrimePower::new(p, a)
    }

    pub fn p(&self) -> i128 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> i128 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.a)
        }
    }
}

/// Canonical c * p^e. Structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMonomial {
    p: i128,
    coeff: Rational,
    pexp: Rational,
}

fn strip(mut n: i128, p: i128) -> (i128, i128) {
    let mut k = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        k += 1;
    }
    (n, k)
}

fn checked_pow(base: &Rational, k: i64) -> Result<Rational> {
    let b = if k < 0 { base.recip() } else { *base };
    let mut acc = Rational::one();
    for _ in 0..k.unsigned_abs() {
        let n = acc
            .numer()
            .checked_mul(*b.numer())
            .ok_or(Error::Overflow("monomial power"))?;
        let d = acc
            .denom()
            .checked_mul(*b.denom())
            .ok_or(Error::Overflow("monomial power"))?;
        acc = Rational::new(n, d);
    }
    Ok(acc)
}

impl QMonomial {
    pub fn one(q: &PrimePower) -> Self {
        QMonomial {
            p: q.p,
            coeff: Rational::one(),
            pexp: Rational::zero(),
        }
    }

    /// Moves every factor of p out of r into the exponent.
    pub fn from_rational(r: Rational, q: &PrimePower) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::Zero);
        }
        let (n, kn) = strip(*r.numer(), q.p);
        let (d, kd) = strip(*r.denom(), q.p);
        Ok(QMonomial {
            p: q.p,
            coeff: Rational::new(n, d),
            pexp: int(kn - kd),
        })
    }

    pub fn from_integer(n: i128, q: &PrimePower) -> Result<Self> {
        Self::from_rational(int(n), q)
    }

    pub fn p(&self) -> i128 {
        self.p
    }

    pub fn coeff(&self) -> Rational {
        self.coeff
    }

    pub fn pexp(&self) -> Rational {
        self.pexp
    }

    /// Exponent measured in powers of q.
    pub fn qexp(&self, q: &PrimePower) -> Rational {
        self.pexp / int(q.a as i128)
    }

    fn same_p(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MixedPrime(self.p, other.p));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_p(other)?;
        Ok(QMonomial {
            p: self.p,
            coeff: self.coeff * other.coeff,
            pexp: self.pexp + other.pexp,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Self {
        QMonomial {
            p: self.p,
            coeff: self.coeff.recip(),
            pexp: -self.pexp,
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        Ok(QMonomial {
            p: self.p,
            coeff: checked_pow(&self.coeff, k)?,
            pexp: self.pexp * int(k as i128),
        })
    }

    pub fn scale(&self, r: Rational) -> Result<Self> {
        let q = PrimePower::new(self.p, 1)?;
        self.mul(&QMonomial::from_rational(r, &q)?)
    }

    pub fn abs(&self) -> Self {
        QMonomial {
            p: self.p,
            coeff: self.coeff.abs(),
            pexp: self.pexp,
        }
    }

    /// Exact rational value when the exponent is an integer.
    pub fn to_rational(&self) -> Option<Rational> {
        if !self.pexp.is_integer() {
            return None;
        }
        let e = self.pexp.to_integer();
        let pe = checked_pow(&int(self.p), i64::try_from(e).ok()?).ok()?;
        let n = self.coeff.numer().checked_mul(*pe.numer())?;
        let d = self.coeff.denom().checked_mul(*pe.denom())?;
        Some(Rational::new(n, d))
    }
}

pub fn exp_q(t: Rational, q: &PrimePower) -> QMonomial {
    QMonomial {
        p: q.p,
        coeff: Rational::one(),
        pexp: t * int(q.a as i128),
    }
}

pub fn qmon_from_integer(n: i128, q: &PrimePower) -> Result<QMonomial> {
    QMonomial::from_integer(n, q)
}

/// Product of factors raised to integer powers.
pub fn qmon_combine(q: &PrimePower, factors: &[(QMonomial, i64)]) -> Result<QMonomial> {
    let mut acc = QMonomial::one(q);
    for (m, k) in factors {
        if m.p != q.p {
            return Err(Error::MixedPrime(q.p, m.p));
        }
        acc = acc.mul(&m.pow(*k)?)?;
    }
    Ok(acc)
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", show(&r));
        }
        if self.coeff.is_one() {
            write!(f, "{}^({})", self.p, show(&self.pexp))
        } else {
            write!(f, "{}*{}^({})", show(&self.coeff), self.p, show(&self.pexp))
        }
    }
}

impl Serialize for QMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QMonomial", 2)?;
        st.serialize_field("coeff", &format_rational(&self.coeff))?;
        st.serialize_field("pexp", &format_rational(&self.pexp))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn q(p: i128, a: u32) -> PrimePower {
        PrimePower::new(p, a).unwrap()
    }

    #[test]
    fn prime_power_rejects_even_and_composite() {
        assert_eq!(PrimePower::new(2, 2), Err(Error::NotOddPrime(2)));
        assert!(PrimePower::new(9, 1).is_err());
        assert!(PrimePower::new(3, 0).is_err());
        assert_eq!(PrimePower::from_q(9).unwrap(), q(3, 2));
        assert!(PrimePower::from_q(4).is_err());
        assert!(PrimePower::from_q(15).is_err());
    }

    #[test]
    fn exp_q_examples() {
        let m = exp_q(int(0), &q(3, 2));
        assert_eq!((m.coeff(), m.pexp()), (int(1), int(0)));
        let m = exp_q(rat(1, 2), &q(3, 2));
        assert_eq!((m.coeff(), m.pexp()), (int(1), int(1)));
        assert_eq!(m.to_rational(), Some(int(3)));
    }

    #[test]
    fn combine_examples() {
        let q3 = q(3, 1);
        let two = QMonomial::from_integer(2, &q3).unwrap();
        let half = exp_q(rat(1, 2), &q3);
        let m = qmon_combine(&q3, &[(two.clone(), 1), (half, 2)]).unwrap();
        assert_eq!((m.coeff(), m.pexp()), (int(2), int(1)));
        assert_eq!(m.to_rational(), Some(int(6)));
        assert_eq!(qmon_combine(&q3, &[]).unwrap(), QMonomial::one(&q3));
        assert_eq!(
            qmon_combine(&q3, &[(two.clone(), 1), (two, -1)]).unwrap(),
            QMonomial::one(&q3)
        );
        let other = QMonomial::one(&q(5, 1));
        assert!(qmon_combine(&q3, &[(other, 1)]).is_err());
    }

    #[test]
    fn from_integer_examples() {
        let m = qmon_from_integer(28, &q(7, 1)).unwrap();
        assert_eq!((m.coeff(), m.pexp()), (int(4), int(1)));
        let m = qmon_from_integer(1, &q(7, 1)).unwrap();
        assert_eq!((m.coeff(), m.pexp()), (int(1), int(0)));
        let m = qmon_from_integer(-5, &q(3, 1)).unwrap();
        assert_eq!((m.coeff(), m.pexp()), (int(-5), int(0)));
        assert_eq!(qmon_from_integer(0, &q(3, 1)), Err(Error::Zero));
        assert_eq!(m.abs().coeff(), int(5));
    }

    #[test]
    fn display_forms() {
        let q3 = q(3, 1);
        let m = QMonomial::from_rational(rat(9, 4), &q3).unwrap();
        assert_eq!(m.to_string(), "9/4");
        assert_eq!(exp_q(rat(3, 2), &q3).to_string(), "3^(3/2)");
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"coeff":"1/4","pexp":"2/1"}"#);
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-40i128..40, 1i128..12).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn nonzero_rat() -> impl Strategy<Value = Rational> {
        (-40i128..40, 1i128..12)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| Rational::new(n, d))
    }

    fn monomial() -> impl Strategy<Value = QMonomial> {
        (nonzero_rat(), small_rat()).prop_map(|(c, t)| {
            let q5 = PrimePower::new(5, 2).unwrap();
            QMonomial::from_rational(c, &q5).unwrap().mul(&exp_q(t, &q5)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn combine_is_associative_and_commutative(a in monomial(), b in monomial(), c in monomial()) {
            let q5 = PrimePower::new(5, 2).unwrap();
            let ab_c = qmon_combine(&q5, &[(qmon_combine(&q5, &[(a.clone(), 1), (b.clone(), 1)]).unwrap(), 1), (c.clone(), 1)]).unwrap();
            let a_bc = qmon_combine(&q5, &[(a.clone(), 1), (qmon_combine(&q5, &[(b.clone(), 1), (c.clone(), 1)]).unwrap(), 1)]).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            let ba = qmon_combine(&q5, &[(b.clone(), 1), (a.clone(), 1)]).unwrap();
            let ab = qmon_combine(&q5, &[(a.clone(), 1), (b, 1)]).unwrap();
            prop_assert_eq!(ab, ba);
            prop_assert_eq!(qmon_combine(&q5, &[(a.clone(), 1)]).unwrap(), a);
        }
    }

    proptest! {
        #[test]
        fn exp_q_is_a_homomorphism(s in small_rat(), t in small_rat(), a in 1u32..4) {
            let qq = PrimePower::new(7, a).unwrap();
            let lhs = exp_q(s + t, &qq);
            let rhs = qmon_combine(&qq, &[(exp_q(s, &qq), 1), (exp_q(t, &qq), 1)]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integer_exponent_round_trips(c in nonzero_rat(), e in 0i128..6) {
            // big-integer-free oracle: repeated multiplication in i128
            let q3 = PrimePower::new(3, 1).unwrap();
            let m = QMonomial::from_rational(c, &q3).unwrap().mul(&exp_q(int(e), &q3)).unwrap();
            let mut expect = c;
            for _ in 0..e { expect *= int(3); }
            prop_assert_eq!(m.to_rational(), Some(expect));
        }
    }
}
