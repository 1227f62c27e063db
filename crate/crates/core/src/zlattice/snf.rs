use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... .
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| **x != 0).count()
    }

    /// Product of the nonzero invariant factors.
    pub fn torsion_product(&self) -> i128 {
        self.diagonal().iter().filter(|x| **x != 0).product()
    }
}

fn min_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j).abs();
            if x != 0 && best.is_none_or(|(bi, bj)| x < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut val = d.get(t, t).abs();
    for i in t + 1..d.rows() {
        let x = d.get(i, t).abs();
        if x != 0 && (val == 0 || x < val) {
            best = (i, t);
            val = x;
        }
    }
    for j in t + 1..d.cols() {
        let x = d.get(t, j).abs();
        if x != 0 && (val == 0 || x < val) {
            best = (t, j);
            val = x;
        }
    }
    best
}

/// Deterministic pivoting: smallest absolute entry, first in row-major order.
pub fn smith_normal_form(a: &IntMatrix) -> Result<Snf> {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        let mut guard = 0;
        loop {
            guard += 1;
            if guard > 10_000 {
                return Err(Error::Consistency("smith normal form did not converge".into()));
            }
            let p = d.get(t, t);
            for i in t + 1..m {
                let c = d.get(i, t) / p;
                if c != 0 {
                    d.add_row(i, t, -c);
                    u.add_row(i, t, -c);
                }
            }
            for j in t + 1..n {
                let c = d.get(t, j) / p;
                if c != 0 {
                    d.add_col(j, t, -c);
                    v.add_col(j, t, -c);
                }
            }
            let clean = (t + 1..m).all(|i| d.get(i, t) == 0) && (t + 1..n).all(|j| d.get(t, j) == 0);
            if !clean {
                let (bi, bj) = min_in_cross(&d, t);
                d.swap_rows(t, bi);
                u.swap_rows(t, bi);
                d.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d.get(i, j) % p != 0));
            match bad {
                Some(i) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    if d.max_abs() > 1 << 100 {
        return Err(Error::Overflow("smith normal form"));
    }
    Ok(Snf { u, d, v })
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`:
/// echelon rows, positive pivots, entries above a pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is a basis.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r >= m {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| h.get(i, c) != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| (h.get(i, c).abs(), i)).unwrap();
            h.swap_rows(r, best);
            let p = h.get(r, c);
            let mut done = true;
            for i in r + 1..m {
                let q = h.get(i, c).div_euclid(p);
                if q != 0 {
                    h.add_row(i, r, -q);
                }
                if h.get(i, c) != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (r..m).all(|i| h.get(i, c) == 0) {
            continue;
        }
        if h.get(r, c) < 0 {
            h.negate_row(r);
        }
        let p = h.get(r, c);
        for i in 0..r {
            let q = h.get(i, c).div_euclid(p);
            if q != 0 {
                h.add_row(i, r, -q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows: Vec<Vec<i128>> = (0..r).map(|i| h.row(i)).collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows(&rows).expect("rectangular")
    }
}

/// Saturated integer kernel {x : A x = 0}, basis as the columns of an n x k
/// matrix in Hermite form.
pub fn integer_kernel(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.cols();
    let snf = smith_normal_form(a)?;
    let rank = snf.rank();
    let cols: Vec<Vec<i128>> = (rank..n).map(|j| snf.v.column(j)).collect();
    if cols.is_empty() {
        return Ok(IntMatrix::zeros(n, 0));
    }
    let rows = IntMatrix::from_rows(&cols)?;
    Ok(hermite_rows(&rows).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.det().unwrap().abs(), 1);
        assert_eq!(s.v.det().unwrap().abs(), 1);
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
        for w in diag.windows(2) {
            assert!(w[0] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        let a = IntMatrix::square(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&a).diagonal(), vec![1, 6]);
        assert_eq!(check(&IntMatrix::identity(3)).diagonal(), vec![1, 1, 1]);
        assert_eq!(check(&IntMatrix::zeros(1, 1)).diagonal(), vec![0]);
        let e = IntMatrix::zeros(0, 2);
        assert_eq!(check(&e).diagonal(), Vec::<i128>::new());
    }

    #[test]
    fn snf_is_deterministic() {
        let a = IntMatrix::from_rows(&[vec![4, 6, 2], vec![8, 3, 1]]).unwrap();
        assert_eq!(smith_normal_form(&a).unwrap(), smith_normal_form(&a).unwrap());
    }

    #[test]
    fn hermite_basis() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![3, 6], vec![0, 0]]).unwrap();
        assert_eq!(hermite_rows(&a).to_rows(), vec![vec![1, 2]]);
        let b = IntMatrix::from_rows(&[vec![3, 1], vec![1, 1]]).unwrap();
        assert_eq!(hermite_rows(&b).to_rows(), vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn kernel_of_swap_minus_identity() {
        let swap = IntMatrix::square(&[vec![0, 1], vec![1, 0]]).unwrap();
        let k = integer_kernel(&swap.minus_identity()).unwrap();
        assert_eq!(k.to_rows(), vec![vec![1], vec![1]]);
        let k = integer_kernel(&IntMatrix::identity(2)).unwrap();
        assert_eq!(k.cols(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn snf_random(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i128..=9, 16)) {
            let data: Vec<Vec<i128>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let a = IntMatrix::from_rows(&data).unwrap();
            check(&a);
            let k = integer_kernel(&a).unwrap();
            prop_assert!(a.mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.cols() + smith_normal_form(&a).unwrap().rank(), cols);
        }
    }
}
