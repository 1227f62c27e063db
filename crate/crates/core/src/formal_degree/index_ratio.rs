use rand::Rng;
use std::collections::BTreeSet;

/// Subgroup of Z/m × Z/n generated by `gens`, as a sorted element set.
pub fn span(m: i64, n: i64, gens: &[(i64, i64)]) -> BTreeSet<(i64, i64)> {
    let mut set = BTreeSet::from([(0, 0)]);
    let mut frontier = vec![(0, 0)];
    while let Some((a, b)) = frontier.pop() {
        for (x, y) in gens {
            let c = ((a + x).rem_euclid(m), (b + y).rem_euclid(n));
            if set.insert(c) {
                frontier.push(c);
            }
        }
    }
    set
}

fn sum_set(m: i64, n: i64, a: &BTreeSet<(i64, i64)>, b: &BTreeSet<(i64, i64)>) -> BTreeSet<(i64, i64)> {
    a.iter()
        .flat_map(|(x, y)| {
            b.iter()
                .map(move |(u, v)| ((x + u).rem_euclid(m), (y + v).rem_euclid(n)))
        })
        .collect()
}

/// [A:B] counted as the number of distinct cosets a + B.
pub fn coset_count(m: i64, n: i64, a: &BTreeSet<(i64, i64)>, b: &BTreeSet<(i64, i64)>) -> usize {
    let cosets: BTreeSet<BTreeSet<(i64, i64)>> = a
        .iter()
        .map(|(x, y)| {
            b.iter()
                .map(|(u, v)| ((x + u).rem_euclid(m), (y + v).rem_euclid(n)))
                .collect()
        })
        .collect();
    cosets.len()
}

/// One instance of [M+H : N+H]·[M∩H : N∩H] = [M:N] for N ≤ M and H in Z/m × Z/n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRatioInstance {
    pub m: i64,
    pub n: i64,
    pub mh_nh: usize,
    pub m_n: usize,
    pub mcap_ncap: usize,
}

impl IndexRatioInstance {
    pub fn holds(&self) -> bool {
        self.mh_nh * self.mcap_ncap == self.m_n
    }
}

pub fn index_ratio_instance(
    m: i64,
    n: i64,
    m_gens: &[(i64, i64)],
    n_mult: i64,
    h_gens: &[(i64, i64)],
) -> IndexRatioInstance {
    let big_m = span(m, n, m_gens);
    let n_gens: Vec<(i64, i64)> = m_gens.iter().map(|(x, y)| (x * n_mult, y * n_mult)).collect();
    let big_n = span(m, n, &n_gens);
    let h = span(m, n, h_gens);
    let mh = sum_set(m, n, &big_m, &h);
    let nh = sum_set(m, n, &big_n, &h);
    let mcap: BTreeSet<_> = big_m.intersection(&h).copied().collect();
    let ncap: BTreeSet<_> = big_n.intersection(&h).copied().collect();
    IndexRatioInstance {
        m,
        n,
        mh_nh: coset_count(m, n, &mh, &nh),
        m_n: coset_count(m, n, &big_m, &big_n),
        mcap_ncap: coset_count(m, n, &mcap, &ncap),
    }
}

pub fn random_index_ratio_instance<R: Rng>(rng: &mut R) -> IndexRatioInstance {
    let m = rng.gen_range(1..=12);
    let n = rng.gen_range(1..=12);
    let mut gen =
        |k: usize| -> Vec<(i64, i64)> { (0..k).map(|_| (rng.gen_range(0..m), rng.gen_range(0..n))).collect() };
    let mg = gen(2);
    let hg = gen(2);
    let mult = rng.gen_range(1..=4);
    index_ratio_instance(m, n, &mg, mult, &hg)
}
