use crate::error::{Error, Result};
use crate::galois_roots::{FiniteGroup, Subgroup};
use crate::rational::{mod1, rat, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A homomorphism from a subgroup of Γ to Q/Z, stored on every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: BTreeMap<usize, Rational>,
}

impl Character {
    pub fn trivial(sub: &[usize]) -> Self {
        Character {
            values: sub.iter().map(|&g| (g, Rational::zero())).collect(),
        }
    }

    /// Extends images of generating elements to all of `sub`.
    pub fn from_generators(group: &FiniteGroup, sub: &[usize], gens: &[(usize, Rational)]) -> Result<Self> {
        if let Some((g, _)) = gens.iter().find(|(g, _)| !FiniteGroup::contains(sub, *g)) {
            return Err(Error::Invalid(format!("element {g} is not in the stabilizer {sub:?}")));
        }
        let mut values: BTreeMap<usize, Rational> = BTreeMap::from([(0, Rational::zero())]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (g, v) in gens {
                let y = group.mul(x, *g);
                let val = mod1(&(values[&x] + v));
                match values.get(&y) {
                    Some(old) if *old != val => {
                        return Err(Error::Invalid(format!(
                            "character images are inconsistent at element {y}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        values.insert(y, val);
                        frontier.push(y);
                    }
                }
            }
        }
        if values.len() != sub.len() {
            return Err(Error::Invalid(format!("character images do not generate {sub:?}")));
        }
        let c = Character { values };
        if !c.is_homomorphism(group) {
            return Err(Error::Invalid("character images do not define a homomorphism".into()));
        }
        Ok(c)
    }

    fn is_homomorphism(&self, group: &FiniteGroup) -> bool {
        self.values.iter().all(|(a, va)| {
            self.values
                .iter()
                .all(|(b, vb)| self.values.get(&group.mul(*a, *b)) == Some(&mod1(&(va + vb))))
        })
    }

    pub fn domain(&self) -> Subgroup {
        self.values.keys().copied().collect()
    }

    pub fn value(&self, g: usize) -> Result<Rational> {
        self.values
            .get(&g)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("element {g} is outside the character's domain")))
    }

    pub fn values(&self) -> &BTreeMap<usize, Rational> {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    pub fn negate(&self) -> Self {
        Character {
            values: self.values.iter().map(|(g, v)| (*g, mod1(&-v))).collect(),
        }
    }

    /// g ↦ χ(σ^{-1} g σ) on σ·dom·σ^{-1}.
    pub fn transport(&self, group: &FiniteGroup, sigma: usize) -> Self {
        Character {
            values: self.values.iter().map(|(g, v)| (group.conj(sigma, *g), *v)).collect(),
        }
    }

    pub fn restrict(&self, sub: &[usize]) -> Result<Self> {
        Ok(Character {
            values: sub
                .iter()
                .map(|&g| self.value(g).map(|v| (g, v)))
                .collect::<Result<_>>()?,
        })
    }

    /// Re-indexes the domain along `pos`, e.g. into a subgroup's own numbering.
    pub fn reindex(&self, pos: impl Fn(usize) -> usize) -> Self {
        Character {
            values: self.values.iter().map(|(g, v)| (pos(*g), *v)).collect(),
        }
    }

    /// Smallest generating set found greedily, with the images on it.
    pub fn generator_images(&self, group: &FiniteGroup) -> Vec<(usize, Rational)> {
        generators(group, &self.domain())
            .into_iter()
            .map(|g| (g, self.values[&g]))
            .collect()
    }
}

/// A generating set of `sub`, chosen greedily in element order.
pub fn generators(group: &FiniteGroup, sub: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &g in sub {
        if !FiniteGroup::contains(&span, g) {
            gens.push(g);
            span = group.generate(&gens);
        }
    }
    gens
}

/// Every character of `sub`, by brute force over generator images.
pub fn all_characters(group: &FiniteGroup, sub: &[usize]) -> Vec<Character> {
    let gens = generators(group, sub);
    let orders: Vec<i128> = gens.iter().map(|&g| group.element_order(g) as i128).collect();
    let mut out = Vec::new();
    let mut idx = vec![0i128; gens.len()];
    loop {
        let imgs: Vec<(usize, Rational)> = gens
            .iter()
            .zip(&idx)
            .zip(&orders)
            .map(|((g, k), o)| (*g, rat(*k, *o)))
            .collect();
        if let Ok(c) = Character::from_generators(group, sub, &imgs) {
            out.push(c);
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return out;
            }
            idx[i] += 1;
            if idx[i] < orders[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// The transfer V: big → small^{ab} (small of finite index), returned as the
/// list of factors h_i from t_i g = h_i t_{π(i)}; χ(V(g)) = Σ χ(h_i).
pub fn transfer_factors(group: &FiniteGroup, big: &[usize], small: &[usize], g: usize) -> Vec<usize> {
    let reps = group.right_cosets(small, big);
    reps.iter()
        .map(|&t| {
            let tg = group.mul(t, g);
            let tj = group.right_coset_label(small, tg);
            group.mul(tg, group.inv(tj))
        })
        .collect()
}

pub fn transfer_value(group: &FiniteGroup, big: &[usize], chi: &Character, g: usize) -> Result<Rational> {
    let small = chi.domain();
    let mut acc = Rational::zero();
    for h in transfer_factors(group, big, &small, g) {
        acc += chi.value(h)?;
    }
    Ok(mod1(&acc))
}

/// ½ off the subgroup, 0 on it: the sign character of an index-2 subgroup.
pub fn sign_value(small: &[usize], g: usize) -> Rational {
    if FiniteGroup::contains(small, g) {
        Rational::zero()
    } else {
        rat(1, 2)
    }
}
