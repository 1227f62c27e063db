use crate::error::{Error, Result};
use std::collections::{BTreeSet, VecDeque};

/// Subgroups are sorted element lists; the identity is always element 0.
pub type Subgroup = Vec<usize>;

/// Finite group given by its multiplication table, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invalid("empty group".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|x| *x >= n)) {
            return Err(Error::Invalid(
                "multiplication table must be n x n with entries < n".into(),
            ));
        }
        if (0..n).any(|x| table[0][x] != x || table[x][0] != x) {
            return Err(Error::Invalid("element 0 must be the identity".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            let row: BTreeSet<usize> = table[x].iter().copied().collect();
            if row.len() != n {
                return Err(Error::Invalid("table is not a Latin square".into()));
            }
            inv[x] = (0..n).find(|&y| table[x][y] == 0).unwrap();
        }
        if n <= 128 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::Invalid(format!(
                                "multiplication is not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inv })
    }

    /// Closure of permutation generators. Element 0 is the identity and the
    /// remaining elements appear in breadth-first order x*g over the generators,
    /// so distinct non-identity generators get indices 1, 2, ... .
    /// Composition is (g*h)(i) = g(h(i)).
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let deg = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let s: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != deg || s.len() != deg || g.iter().any(|x| *x >= deg) {
                return Err(Error::Invalid("generators must be permutations of 0..n".into()));
            }
        }
        let id: Vec<usize> = (0..deg).collect();
        let mut elems = vec![id.clone()];
        let mut seen = std::collections::HashMap::new();
        seen.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y: Vec<usize> = (0..deg).map(|i| elems[x][g[i]]).collect();
                if !seen.contains_key(&y) {
                    if elems.len() >= 4096 {
                        return Err(Error::Invalid("permutation group too large".into()));
                    }
                    seen.insert(y.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let c: Vec<usize> = (0..deg).map(|i| elems[a][elems[b][i]]).collect();
                        seen[&c]
                    })
                    .collect()
            })
            .collect();
        Ok((Self::from_table(table)?, elems))
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// g h g^-1
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        self.elements().collect()
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn contains(sub: &[usize], x: usize) -> bool {
        sub.binary_search(&x).is_ok()
    }

    pub fn is_subgroup(&self, sub: &[usize]) -> bool {
        if sub.is_empty() || sub[0] != 0 || sub.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        sub.iter()
            .all(|&a| a < self.order() && sub.iter().all(|&b| Self::contains(sub, self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        self.elements()
            .all(|g| sub.iter().all(|&h| Self::contains(sub, self.conj(g, h))))
    }

    pub fn intersect(a: &[usize], b: &[usize]) -> Subgroup {
        a.iter().copied().filter(|x| Self::contains(b, *x)).collect()
    }

    /// A generator if the subgroup is cyclic.
    pub fn cyclic_generator(&self, sub: &[usize]) -> Option<usize> {
        sub.iter().copied().find(|&x| self.element_order(x) == sub.len())
    }

    /// Label of the right coset H x: its smallest element.
    pub fn right_coset_label(&self, sub: &[usize], x: usize) -> usize {
        sub.iter().map(|&h| self.mul(h, x)).min().unwrap()
    }

    /// Label of the left coset x H.
    pub fn left_coset_label(&self, sub: &[usize], x: usize) -> usize {
        sub.iter().map(|&h| self.mul(x, h)).min().unwrap()
    }

    /// Right cosets H x of `sub` inside `ambient`, by label.
    pub fn right_cosets(&self, sub: &[usize], ambient: &[usize]) -> Vec<usize> {
        let s: BTreeSet<usize> = ambient.iter().map(|&x| self.right_coset_label(sub, x)).collect();
        s.into_iter().collect()
    }

    /// Label of the double coset A x B.
    pub fn double_coset_label(&self, a: &[usize], x: usize, b: &[usize]) -> usize {
        a.iter()
            .flat_map(|&s| b.iter().map(move |&t| (s, t)))
            .map(|(s, t)| self.mul(self.mul(s, x), t))
            .min()
            .unwrap()
    }

    pub fn double_coset(&self, a: &[usize], x: usize, b: &[usize]) -> Vec<usize> {
        let s: BTreeSet<usize> = a
            .iter()
            .flat_map(|&s| b.iter().map(move |&t| (s, t)))
            .map(|(s, t)| self.mul(self.mul(s, x), t))
            .collect();
        s.into_iter().collect()
    }

    /// Multiplication table of a subgroup, re-indexed by position in `sub`.
    pub fn subgroup_table(&self, sub: &[usize]) -> Result<FiniteGroup> {
        if !self.is_subgroup(sub) {
            return Err(Error::NotSubgroup(format!("{sub:?}")));
        }
        let pos = |x: usize| sub.binary_search(&x).unwrap();
        let table = sub
            .iter()
            .map(|&a| sub.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        FiniteGroup::from_table(table)
    }

    /// Every subgroup, each as a sorted list, ordered by (size, elements).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let mut frontier = vec![vec![0usize]];
        found.insert(vec![0]);
        while let Some(h) = frontier.pop() {
            for g in self.elements() {
                if Self::contains(&h, g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let j = self.generate(&gens);
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        let mut v: Vec<Subgroup> = found.into_iter().collect();
        v.sort_by_key(|s| (s.len(), s.clone()));
        v
    }
}
