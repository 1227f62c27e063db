use fdc_core::chi_data::{all_characters, frames_on};
use fdc_core::galois_roots::FiniteGroup;
use fdc_core::rational::rat;
use fdc_core::weil_gamma::{induced_sign_representation, l_polynomial, l_polynomial_of_character};
use num_traits::Zero;

fn groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=8).map(|n| (format!("Z/{n}"), FiniteGroup::cyclic(n))).collect();
    let perms: [(&str, Vec<Vec<usize>>); 4] = [
        ("S3", vec![vec![1, 0, 2], vec![1, 2, 0]]),
        ("D4", vec![vec![1, 2, 3, 0], vec![3, 2, 1, 0]]),
        ("Z2xZ2", vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]),
        ("Q8", vec![vec![1, 2, 3, 0, 5, 6, 7, 4], vec![4, 7, 6, 5, 2, 1, 0, 3]]),
    ];
    for (name, gens) in perms {
        out.push((name.into(), FiniteGroup::from_permutations(&gens).unwrap().0));
    }
    out
}

/// L(s, Ind_ℓ/k χ) computed on the monomial representation equals L(s, χ)
/// computed over ℓ, for every ±1-valued character of every subgroup.
#[test]
fn l_factor_is_inductive_on_small_groups() {
    let mut checked = 0;
    for (name, g) in groups() {
        for p in [3, 5, 7] {
            for fr in frames_on(&g, p) {
                for h in g.all_subgroups() {
                    for chi in all_characters(&g, &h) {
                        if chi.values().values().any(|v| !v.is_zero() && *v != rat(1, 2)) {
                            continue;
                        }
                        let sign = |x: usize| if chi.value(x).unwrap().is_zero() { 1 } else { -1 };
                        let rep = induced_sign_representation(&g, &h, &sign).unwrap();
                        for a in g.elements() {
                            for b in g.elements() {
                                assert_eq!(
                                    rep[a].mul(&rep[b]).unwrap(),
                                    rep[g.mul(a, b)],
                                    "{name}: not a homomorphism"
                                );
                            }
                        }
                        let direct = l_polynomial(&fr, &rep).unwrap();
                        let via = l_polynomial_of_character(&fr, &h, &sign).unwrap();
                        assert_eq!(direct, via, "{name}, p = {p}, H = {h:?}, chi = {:?}", chi.values());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100, "{checked}");
}
