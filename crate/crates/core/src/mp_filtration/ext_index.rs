use crate::error::{Error, Result};
use crate::rational::{parse_rational, show, Rational};
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

/// Index set R ∪ {r+} ∪ {∞} with r < r+ < s for r < s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtIndex {
    At(Rational),
    Plus(Rational),
    Infinity,
}

impl ExtIndex {
    pub fn zero() -> Self {
        ExtIndex::At(Rational::zero())
    }

    pub fn zero_plus() -> Self {
        ExtIndex::Plus(Rational::zero())
    }

    pub fn at(r: Rational) -> Self {
        ExtIndex::At(r)
    }

    fn key(&self) -> (u8, Rational, u8) {
        match self {
            ExtIndex::At(r) => (0, *r, 0),
            ExtIndex::Plus(r) => (0, *r, 1),
            ExtIndex::Infinity => (1, Rational::zero(), 0),
        }
    }

    /// Underlying real number, if finite.
    pub fn base(&self) -> Option<Rational> {
        match self {
            ExtIndex::At(r) | ExtIndex::Plus(r) => Some(*r),
            ExtIndex::Infinity => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, ExtIndex::Infinity)
    }

    /// At + At = At, anything + Plus = Plus, Infinity absorbs.
    pub fn add(&self, other: &ExtIndex) -> ExtIndex {
        match (self, other) {
            (ExtIndex::Infinity, _) | (_, ExtIndex::Infinity) => ExtIndex::Infinity,
            (ExtIndex::At(a), ExtIndex::At(b)) => ExtIndex::At(a + b),
            (ExtIndex::At(a), ExtIndex::Plus(b))
            | (ExtIndex::Plus(a), ExtIndex::At(b))
            | (ExtIndex::Plus(a), ExtIndex::Plus(b)) => ExtIndex::Plus(a + b),
        }
    }

    /// Whether the point t lies in [self, ∞).
    pub fn le_point(&self, t: Rational) -> bool {
        *self <= ExtIndex::At(t)
    }

    /// "r", "r+", "0+", "inf".
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "infinity" {
            return Ok(ExtIndex::Infinity);
        }
        if let Some(stripped) = t.strip_suffix('+') {
            return Ok(ExtIndex::Plus(parse_rational(stripped)?));
        }
        parse_rational(t)
            .map(ExtIndex::At)
            .map_err(|_| Error::Parse(format!("bad index {s:?}")))
    }
}

impl PartialOrd for ExtIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtIndex::At(r) => write!(f, "{}", show(r)),
            ExtIndex::Plus(r) => write!(f, "{}+", show(r)),
            ExtIndex::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn ordering() {
        let a = ExtIndex::At(rat(1, 2));
        let ap = ExtIndex::Plus(rat(1, 2));
        let b = ExtIndex::At(int(1));
        assert!(a < ap && ap < b && b < ExtIndex::Infinity);
        assert!(ExtIndex::zero() < ExtIndex::zero_plus());
        assert!(ap.le_point(rat(3, 4)));
        assert!(!ap.le_point(rat(1, 2)));
    }

    #[test]
    fn addition() {
        let a = ExtIndex::At(rat(1, 2));
        let p = ExtIndex::Plus(int(1));
        assert_eq!(a.add(&a), ExtIndex::At(int(1)));
        assert_eq!(a.add(&p), ExtIndex::Plus(rat(3, 2)));
        assert_eq!(p.add(&ExtIndex::Infinity), ExtIndex::Infinity);
    }

    #[test]
    fn parsing() {
        assert_eq!(ExtIndex::parse("0+").unwrap(), ExtIndex::zero_plus());
        assert_eq!(ExtIndex::parse("3/2").unwrap(), ExtIndex::At(rat(3, 2)));
        assert_eq!(ExtIndex::parse("inf").unwrap(), ExtIndex::Infinity);
        assert!(ExtIndex::parse("x+").is_err());
        assert_eq!(ExtIndex::Plus(rat(1, 3)).to_string(), "1/3+");
    }
}
