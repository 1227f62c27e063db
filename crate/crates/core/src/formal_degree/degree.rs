use crate::error::{Error, Result};
use crate::galois_roots::{validate_depth_lattice, Depth, HoweFiltration, OrbitInfo};
use crate::mp_filtration::{jump_length_at, ExtIndex, LengthData, OrbitFn};
use crate::qexact::{exp_q, PrimePower, QMonomial};
use crate::rational::{int, rat, Rational};
use crate::torus::TorusData;
use num_traits::{One, Zero};
use serde::Serialize;

/// Exact value prefactor · monomial, kept apart for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degree {
    #[serde(with = "crate::rational::serde_rational")]
    pub prefactor: Rational,
    pub monomial: QMonomial,
}

impl Degree {
    pub fn value(&self) -> Result<QMonomial> {
        self.monomial.scale(self.prefactor)
    }
}

/// deg = dim ρ / vol(K). Both inputs must be positive monomials.
pub fn compact_induction_degree(dim_tau: &QMonomial, vol_k: &QMonomial) -> Result<QMonomial> {
    if dim_tau.coeff() <= Rational::zero() || vol_k.coeff() <= Rational::zero() {
        return Err(Error::Invalid("dimension and volume must be positive".into()));
    }
    dim_tau.div(vol_k)
}

/// dim R_{(S,θ)} = [G:S] / q^{(dim G - rank)/2}, required to be a positive integer.
pub fn dl_dimension(order_g: i128, order_s: i128, dim_g: i128, rank: i128, q: &PrimePower) -> Result<i128> {
    if order_g <= 0 || order_s <= 0 {
        return Err(Error::Invalid("group orders must be positive".into()));
    }
    let n = dim_g - rank;
    if n < 0 || n % 2 != 0 {
        return Err(Error::Invalid("dim G - rank must be even and nonnegative".into()));
    }
    let st = q
        .q()
        .checked_pow((n / 2) as u32)
        .ok_or(Error::Overflow("Steinberg dimension"))?;
    if order_g % order_s != 0 || (order_g / order_s) % st != 0 {
        return Err(Error::Consistency(format!(
            "{order_g}/({order_s}·{st}) is not an integer"
        )));
    }
    Ok(order_g / order_s / st)
}

/// |SL_2(F_q)|
pub fn order_sl2(q: i128) -> i128 {
    q * (q * q - 1)
}

/// |GL_2(F_q)|
pub fn order_gl2(q: i128) -> i128 {
    (q * q - 1) * (q * q - q)
}

/// Depth-zero input of the general formula: only the ratio dim ρ / index enters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthZeroInput {
    pub dim_rho: QMonomial,
    pub stab_index: QMonomial,
}

/// The data (G⃗, y, r⃗) of a cuspidal datum without representations.
#[derive(Debug, Clone, Copy)]
pub struct YuShape<'a> {
    pub lengths: LengthData<'a>,
    pub filtration: &'a HoweFiltration,
    pub q: PrimePower,
}

impl<'a> YuShape<'a> {
    pub fn new(lengths: LengthData<'a>, filtration: &'a HoweFiltration, q: PrimePower) -> Result<Self> {
        let b = filtration.breaks();
        if b.windows(2).any(|w| w[0] >= w[1]) || b.iter().any(|r| *r <= Rational::zero()) {
            return Err(Error::Invalid("breaks must be positive and strictly increasing".into()));
        }
        if b.last().is_some_and(|r| *r > filtration.total()) {
            return Err(Error::Invalid("last break exceeds the total depth".into()));
        }
        if let Some(c) = validate_depth_lattice(filtration, lengths.orbits)
            .iter()
            .find(|c| !c.pass)
        {
            return Err(Error::Invalid(format!(
                "depth lattice check fails at orbit {}",
                c.orbit
            )));
        }
        Ok(YuShape { lengths, filtration, q })
    }

    pub fn d(&self) -> usize {
        self.filtration.d()
    }

    /// s_i = r_i / 2 for i < d.
    pub fn s(&self) -> Vec<Rational> {
        self.filtration.breaks().iter().map(|r| r * rat(1, 2)).collect()
    }

    /// dim G^a = n + |R|
    pub fn dim_g(&self) -> i128 {
        self.lengths.datum.dim_g() as i128
    }

    /// None for R_0, Some(i) for R_{i+1} minus R_i.
    fn layer_of(&self, o: &OrbitInfo) -> Option<usize> {
        match self.filtration.depth_of_root(o.id) {
            Depth::Nonpositive => None,
            Depth::Positive(r) => self.filtration.breaks().iter().position(|b| *b == r),
        }
    }

    /// log_q [J^{i+1}:J^{i+1}_+]: jump lengths at s_i over R_{i+1} minus R_i.
    pub fn heisenberg_lengths(&self) -> Vec<i128> {
        let s = self.s();
        let mut out = vec![0; self.d()];
        for o in self.lengths.orbits.iter() {
            if let Some(i) = self.layer_of(o) {
                out[i] += jump_length_at(o, self.lengths.jumps, s[i]);
            }
        }
        out
    }

    /// len g_{y,0:0+} over all of R ∪ {0}.
    pub fn len_g_00plus(&self) -> i128 {
        let z = Rational::zero();
        self.lengths.toral.length_at(z)
            + self
                .lengths
                .orbits
                .iter()
                .map(|o| jump_length_at(o, self.lengths.jumps, z))
                .sum::<i128>()
    }

    /// len g^0_{y,0:0+} = dim of the reductive quotient of G^{a,0} at y.
    pub fn len_g0_00plus(&self) -> i128 {
        let z = Rational::zero();
        self.lengths.toral.length_at(z)
            + self
                .lengths
                .orbits
                .iter()
                .filter(|o| self.layer_of(o).is_none())
                .map(|o| jump_length_at(o, self.lengths.jumps, z))
                .sum::<i128>()
    }

    /// f with G_{y,f} = K_{0+} = G^0_{y,0+} G^1_{y,s_0} ... G^d_{y,s_{d-1}}.
    pub fn k_plus_function(&self) -> OrbitFn {
        let s = self.s();
        let mut f = OrbitFn::constant(self.lengths.orbits, ExtIndex::zero_plus());
        for o in self.lengths.orbits.iter() {
            if let Some(i) = self.layer_of(o) {
                f.set(o.id, ExtIndex::At(s[i]));
            }
        }
        f
    }

    /// log_q vol(K_{0+})^{-1} = ½dim G + ½len g_{y,0:0+} + len g_{y,0+:f}.
    pub fn vol_k_plus_inverse_exponent(&self) -> Result<Rational> {
        let zp = OrbitFn::constant(self.lengths.orbits, ExtIndex::zero_plus());
        let l = self.lengths.length(&zp, &self.k_plus_function())?;
        Ok(rat(self.dim_g() + self.len_g_00plus(), 2) + int(l))
    }
}

/// [J^{i+1}:J^{i+1}_+]^{1/2} for i = 0..d-1.
pub fn heisenberg_dims(shape: &YuShape) -> Vec<QMonomial> {
    shape
        .heisenberg_lengths()
        .into_iter()
        .map(|l| exp_q(rat(l, 2), &shape.q))
        .collect()
}

/// The exponent of vol(K_{0+})^{-1}·∏[J:J_+]^{1/2} computed by enumerating
/// lengths, against the closed form ½dim G + ½len g^0_{y,0:0+} + ½Σ r_i(|R_{i+1}|-|R_i|).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeAssembly {
    #[serde(with = "crate::rational::serde_rational")]
    pub enumerated: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub closed_form: Rational,
}

pub fn volume_assembly(shape: &YuShape) -> Result<VolumeAssembly> {
    let heis: i128 = shape.heisenberg_lengths().iter().sum();
    let enumerated = shape.vol_k_plus_inverse_exponent()? + rat(heis, 2);
    let closed_form = rat(shape.dim_g() + shape.len_g0_00plus(), 2) + shape.filtration.weighted_break_sum() * rat(1, 2);
    Ok(VolumeAssembly {
        enumerated,
        closed_form,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralDegree {
    pub degree: Degree,
    pub heisenberg: Vec<QMonomial>,
    /// dim ρ · ∏[J^{i+1}:J^{i+1}_+]^{1/2}
    pub dim_k_rep: QMonomial,
    pub assembly: VolumeAssembly,
}

/// dim ρ / [G^{a,0}_{[y]}:G^{a,0}_{y,0+}] · exp_q(½dim G^a + ½dim G^{a,0}_{y,0:0+} + ½Σ r_i(|R_{i+1}|-|R_i|)),
/// checked against dim(ρ⊗κ)·vol(K_{0+})^{-1}/[K:K_{0+}] assembled from raw lengths.
pub fn general_degree(shape: &YuShape, dz: &DepthZeroInput) -> Result<GeneralDegree> {
    if dz.dim_rho.coeff() <= Rational::zero() || dz.stab_index.coeff() <= Rational::zero() {
        return Err(Error::Invalid("dim ρ and the stabilizer index must be positive".into()));
    }
    let q = &shape.q;
    let heisenberg = heisenberg_dims(shape);
    let mut dim_k_rep = dz.dim_rho.clone();
    for h in &heisenberg {
        dim_k_rep = dim_k_rep.mul(h)?;
    }
    let assembly = volume_assembly(shape)?;
    if assembly.enumerated != assembly.closed_form {
        return Err(Error::Consistency(format!(
            "volume assembly: enumeration gives {}, closed form {}",
            assembly.enumerated, assembly.closed_form
        )));
    }
    let ratio = dz.dim_rho.div(&dz.stab_index)?;
    let prefactor = ratio.coeff();
    let monomial = exp_q(assembly.closed_form, q).mul(&ratio.scale(prefactor.recip())?)?;
    let raw = dim_k_rep
        .mul(&exp_q(shape.vol_k_plus_inverse_exponent()?, q))?
        .div(&dz.stab_index)?;
    let degree = Degree { prefactor, monomial };
    if degree.value()? != raw {
        return Err(Error::Consistency(
            "general degree disagrees with its raw assembly".into(),
        ));
    }
    Ok(GeneralDegree {
        degree,
        heisenberg,
        dim_k_rep,
        assembly,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularDegree {
    /// prefactor 1/|S^a_{0:0+}|
    pub by_torus_points: Degree,
    /// prefactor 1/[S^a(k):S^a(k)_{0+}]
    pub by_torus_index: Degree,
    /// |S^a_{0:0+}| = |det(qF - 1 | M)|
    pub torus_points: i128,
    /// [S^a(k):S^a(k)_{0+}] = |X_{*,I}^Frob|·|det(qF - 1 | M)|
    pub torus_index: i128,
}

/// ½dim G^a + ½rank M + Σ s_i(|R_{i+1}|-|R_i|), with the two prefactor variants.
pub fn regular_degree(shape: &YuShape, torus: &TorusData) -> Result<RegularDegree> {
    let inv = &torus.invariants;
    let s = shape.s();
    let mut t = rat(shape.dim_g() + inv.rank_m as i128, 2);
    for (i, si) in s.iter().enumerate() {
        t += si * int(shape.filtration.layer(i).len() as i128);
    }
    let monomial = exp_q(t, &shape.q);
    let torus_points = inv.det_q;
    let torus_index = inv
        .cochar_coinv_fixed
        .checked_mul(inv.det_q)
        .ok_or(Error::Overflow("torus index"))?;
    Ok(RegularDegree {
        by_torus_points: Degree {
            prefactor: Rational::one() / int(torus_points),
            monomial: monomial.clone(),
        },
        by_torus_index: Degree {
            prefactor: Rational::one() / int(torus_index),
            monomial,
        },
        torus_points,
        torus_index,
    })
}

/// dim ρ = 1 and [G^{a,0}_{[y]}:G^{a,0}_{y,0+}] = [S^a(k):S^a(k)_{0+}]·q^N with
/// N = (dim G^{a,0}_{y,0:0+} - rank M)/2: the ratio carried by a regular depth-zero ρ.
pub fn regular_depth_zero_input(shape: &YuShape, torus: &TorusData) -> Result<DepthZeroInput> {
    let inv = &torus.invariants;
    let n = rat(shape.len_g0_00plus() - inv.rank_m as i128, 2);
    let index = QMonomial::from_integer(inv.cochar_coinv_fixed * inv.det_q, &shape.q)?.mul(&exp_q(n, &shape.q))?;
    Ok(DepthZeroInput {
        dim_rho: QMonomial::one(&shape.q),
        stab_index: index,
    })
}
