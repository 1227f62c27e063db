//! Rational helpers shared by every module: parsing of "num/den" strings,
//! lattice membership tests and reduction modulo 1.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Parses "n", "n/d" or "-n/d". Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: i128 = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: i128 = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Always "num/den", so that files never mix formats.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form for human-readable output.
pub fn show(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Representative of r in [0, 1).
pub fn mod1(r: &Rational) -> Rational {
    r - r.floor()
}

/// Whether r lies in (1/m)Z.
pub fn in_lattice(r: &Rational, m: i128) -> bool {
    (r * int(m)).is_integer()
}

/// Representative of r modulo (1/m)Z in [0, 1/m).
pub fn mod_lattice(r: &Rational, m: i128) -> Rational {
    let step = rat(1, m);
    let k = (r / step).floor();
    r - k * step
}

pub fn ceil_int(r: &Rational) -> i128 {
    r.ceil().to_integer()
}

pub fn floor_int(r: &Rational) -> i128 {
    r.floor().to_integer()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub fn lcm(a: i128, b: i128) -> i128 {
    a.lcm(&b)
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub mod serde_rational {
    //! serde adapter storing a rational as a "num/den" string.
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_vec {
    //! serde adapter for a list of "num/den" strings.
    use super::{format_rational, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }
}
