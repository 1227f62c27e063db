use crate::error::{Error, Result};
use crate::rational::{ceil_int, floor_int, int, rat, Rational};
use num_traits::Zero;
use std::collections::BTreeSet;

/// A periodic family of support points: value `weight` on offset + period·Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPart {
    pub offset: Rational,
    pub period: Rational,
    pub weight: Rational,
}

/// Discretely supported function on Q: finitely many points plus periodic parts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiscreteFn {
    pub points: Vec<(Rational, Rational)>,
    pub periodic: Vec<PeriodicPart>,
}

impl DiscreteFn {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Indicator of offset + period·Z.
    pub fn lattice_indicator(offset: Rational, period: Rational) -> Self {
        DiscreteFn {
            points: vec![],
            periodic: vec![PeriodicPart {
                offset,
                period,
                weight: int(1),
            }],
        }
    }

    pub fn with_periodic(mut self, offset: Rational, period: Rational, weight: Rational) -> Self {
        self.periodic.push(PeriodicPart { offset, period, weight });
        self
    }

    pub fn value(&self, t: Rational) -> Rational {
        let mut v: Rational = self.points.iter().filter(|(x, _)| *x == t).map(|(_, w)| *w).sum();
        for p in &self.periodic {
            if ((t - p.offset) / p.period).is_integer() {
                v += p.weight;
            }
        }
        v
    }

    /// Support points in [a, b], sorted.
    pub fn support_in(&self, a: Rational, b: Rational) -> Vec<Rational> {
        let mut s: BTreeSet<Rational> = BTreeSet::new();
        for (x, w) in &self.points {
            if *x >= a && *x <= b && !w.is_zero() {
                s.insert(*x);
            }
        }
        for p in &self.periodic {
            let k0 = ceil_int(&((a - p.offset) / p.period));
            let k1 = floor_int(&((b - p.offset) / p.period));
            for k in k0..=k1 {
                s.insert(p.offset + p.period * int(k));
            }
        }
        s.into_iter().collect()
    }
}

/// Σ_{a<t<b} h(t) + ½h(a) + ½h(b). For a = b this is h(a).
pub fn primed_sum(h: &DiscreteFn, a: Rational, b: Rational) -> Result<Rational> {
    if a > b {
        return Err(Error::Invalid("primed sum needs a <= b".into()));
    }
    let half = rat(1, 2);
    let mut total = Rational::zero();
    for t in h.support_in(a, b) {
        let w = if t == a || t == b { half } else { int(1) };
        total += w * h.value(t);
    }
    if a == b {
        total = h.value(a);
    }
    Ok(total)
}

/// Checks that h is even and λ₀-periodic on every support point in [-2λ₀, 2λ₀].
pub fn check_even_periodic(lambda0: Rational, h: &DiscreteFn) -> Result<()> {
    let span = lambda0 * int(2);
    for t in h.support_in(-span, span) {
        if h.value(t) != h.value(-t) {
            return Err(Error::Invalid("function is not even".into()));
        }
        if h.value(t) != h.value(t + lambda0) {
            return Err(Error::Invalid("function is not λ₀-periodic".into()));
        }
    }
    Ok(())
}

/// H(s) = (s/λ₀)·H(λ₀) for s ∈ ½λ₀Z, s > 0, with H(s) the primed sum over [0, s].
pub fn periodic_sum_value(lambda0: Rational, h: &DiscreteFn, s: Rational) -> Result<Rational> {
    if lambda0 <= Rational::zero() {
        return Err(Error::Invalid("λ₀ must be positive".into()));
    }
    let k = s / (lambda0 * rat(1, 2));
    if !k.is_integer() || k <= Rational::zero() {
        return Err(Error::Invalid("s must lie in ½λ₀Z and be positive".into()));
    }
    check_even_periodic(lambda0, h)?;
    Ok(s / lambda0 * primed_sum(h, Rational::zero(), lambda0)?)
}
