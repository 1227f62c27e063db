use crate::error::{Error, Result};
use crate::galois_roots::{FiniteGroup, GaloisFrame};
use crate::rational::{int, Rational};
use crate::zlattice::{integer_kernel, rank_of_vectors, rational_inverse, IntMatrix};
use num_traits::{One, Zero};

/// Ind_H^Γ of a ±1-valued character, as monomial matrices on the left cosets
/// of H (basis order: sorted coset labels).
pub fn induced_sign_representation(
    group: &FiniteGroup,
    h: &[usize],
    sign: &dyn Fn(usize) -> i128,
) -> Result<Vec<IntMatrix>> {
    if !group.is_subgroup(h) {
        return Err(Error::NotSubgroup(format!("{h:?}")));
    }
    let mut reps: Vec<usize> = group.elements().map(|g| group.left_coset_label(h, g)).collect();
    reps.sort();
    reps.dedup();
    let n = reps.len();
    let mut out = Vec::with_capacity(group.order());
    for g in group.elements() {
        let mut m = IntMatrix::zeros(n, n);
        for (i, &gi) in reps.iter().enumerate() {
            let x = group.mul(g, gi);
            let lab = group.left_coset_label(h, x);
            let j = reps.binary_search(&lab).expect("coset label");
            // x = g_j·hh
            let hh = group.mul(group.inv(reps[j]), x);
            let s = sign(hh);
            if s != 1 && s != -1 {
                return Err(Error::Invalid("character must be ±1-valued".into()));
            }
            m.set(j, i, s);
        }
        out.push(m);
    }
    Ok(out)
}

/// Coefficients (constant first) of det(1 - T·Frob | V^I) for a representation
/// given by one matrix per group element.
pub fn l_polynomial(frame: &GaloisFrame, rep: &[IntMatrix]) -> Result<Vec<Rational>> {
    let tau = &rep[frame.inertia_generator()];
    let kernel = integer_kernel(&tau.minus_identity())?;
    let k = kernel.cols();
    if k == 0 {
        return Ok(vec![Rational::one()]);
    }
    let f = &rep[frame.frobenius()];
    let image = f.mul(&kernel)?;
    // k independent coordinates of V^I
    let mut rows: Vec<usize> = Vec::new();
    for i in 0..kernel.rows() {
        let mut trial: Vec<Vec<i128>> = rows.iter().map(|&r| kernel.row(r)).collect();
        trial.push(kernel.row(i));
        if rank_of_vectors(&trial, k) == trial.len() {
            rows.push(i);
        }
        if rows.len() == k {
            break;
        }
    }
    let sub: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&r| kernel.row(r).into_iter().map(int).collect())
        .collect();
    let inv = rational_inverse(&sub).ok_or_else(|| Error::Consistency("V^I coordinates are singular".into()))?;
    let c: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|t| inv[i][t] * int(image.get(rows[t], j))).sum())
                .collect()
        })
        .collect();
    // det(1 - T C) = Σ c_{k-m} T^m with det(x - C) = Σ c_j x^j (Faddeev-LeVerrier)
    let mut coeffs = vec![Rational::zero(); k + 1];
    coeffs[k] = Rational::one();
    let mut m = vec![vec![Rational::zero(); k]; k];
    for step in 1..=k {
        let prev = coeffs[k + 1 - step];
        let mut next = mat_mul(&c, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += prev;
        }
        let am = mat_mul(&c, &next);
        let tr: Rational = (0..k).map(|i| am[i][i]).sum();
        coeffs[k - step] = -tr / int(step as i128);
        m = next;
    }
    Ok((0..=k).map(|d| coeffs[k - d]).collect())
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

/// det(1 - T·Frob_ℓ | χ) over the fixed field ℓ of H, written in T = q^{-s}:
/// 1 - χ(Frob_ℓ)·T^f when χ is trivial on inertia, else 1.
pub fn l_polynomial_of_character(
    frame: &GaloisFrame,
    h: &[usize],
    sign: &dyn Fn(usize) -> i128,
) -> Result<Vec<Rational>> {
    let inv = frame.field_invariants(h)?;
    let ih = FiniteGroup::intersect(frame.inertia(), h);
    if ih.iter().any(|&x| sign(x) != 1) {
        return Ok(vec![Rational::one()]);
    }
    let (sub, embed) = frame.sub_frame(h)?;
    let frob = embed[sub.frobenius()];
    let mut p = vec![Rational::zero(); inv.f as usize + 1];
    p[0] = Rational::one();
    p[inv.f as usize] = -int(sign(frob));
    Ok(p)
}
