use super::{build_ramification, RamificationData, RamificationError, TameCharacter};
use crate::group::{quotient, GroupError, GroupHom, Subgroup};
use crate::numtheory::{inverse_mod, modulo, rat_int, Rational};
use num_traits::Zero;

/// Ramification data of `L/M` for `M = L^{Γ'}`, with the inclusion
/// `Γ' ↪ Γ`, `f_{M/K} = [Γ : Γ_0Γ']` and `e_wild = |Γ_1| / |Γ'_1|`.
#[derive(Debug, Clone)]
pub struct SubgroupData {
    pub data: RamificationData,
    pub inclusion: GroupHom,
    pub f_mk: usize,
    pub e_wild: usize,
}

pub fn subgroup_data(r: &RamificationData, sub: &Subgroup) -> Result<SubgroupData, RamificationError> {
    if !crate::group::same_group(sub.parent(), r.gamma()) {
        return Err(GroupError::GroupMismatch.into());
    }
    let (h, inc) = sub.as_group();
    let filtration: Vec<Vec<usize>> = r.filtration().iter().map(|gi| gi.preimage(&inc).members().to_vec()).collect();
    let h0 = r.lower(0).preimage(&inc);
    let h1 = r.lower(1).preimage(&inc);
    let n_sub = h0.order() / h1.order();
    let e_wild = r.lower(1).order() / h1.order();
    let f_mk = r.gamma().order() / r.lower(0).join(sub).order();

    // Ψ_{L/K}(σ) = Ψ_{L/M}(σ)^{e_wild}; both land in μ_{n'} ⊂ μ_n
    let coset_order = |x: usize| {
        let mut y = x;
        let mut k = 1;
        while !h1.contains(y) {
            y = h.mul(y, x);
            k += 1;
        }
        k
    };
    let generator = h0.members().iter().copied().find(|&x| coset_order(x) == n_sub).expect("Γ'_0/Γ'_1 is cyclic");
    let k = r.psi_exponent(inc.apply(generator)).expect("Γ'_0 ⊆ Γ_0");
    let step = (r.n() / n_sub) as u64;
    debug_assert_eq!(k % step, 0);
    let e_inv = inverse_mod(e_wild as i64, n_sub as u64).expect("e_wild is a p-power and n' is prime to p");
    let exponent = modulo(((k / step) * e_inv) as i64, n_sub as u64) as i64;
    let data = build_ramification(&h, &filtration, r.p(), Some(TameCharacter { generator, exponent }))?;
    Ok(SubgroupData { data, inclusion: inc, f_mk, e_wild })
}

/// Ramification data of `M/K` for `M = L^N`, via upper numbering:
/// `(Γ/N)^w` is the image of `Γ^w`, converted back to lower numbering with
/// the quotient's own Herbrand function.
pub fn quotient_data(r: &RamificationData, n: &Subgroup) -> Result<(RamificationData, GroupHom), RamificationError> {
    let (q, proj) = quotient(n)?;
    let image = |h: &Subgroup| proj.image_of(h);
    let top = image(&r.lower(0)).order();

    // ψ_Q is linear with slope [Q^0 : Q^w] on each (φ(m−1), φ(m)]
    let s = r.filtration().len();
    let mut segments = Vec::new();
    for m in 1..s {
        let start = r.herbrand_phi(&rat_int(m as i64 - 1))?;
        let end = r.herbrand_phi(&rat_int(m as i64))?;
        let slope = Rational::new(top.into(), image(&r.lower(m as i64)).order().into());
        segments.push((start, end, slope));
    }
    let tail_start = r.herbrand_phi(&rat_int(s as i64 - 1))?;
    let phi_q = |u: &Rational| -> Rational {
        let mut acc = Rational::zero();
        for (start, end, slope) in &segments {
            let span = slope * (end - start);
            if *u <= &acc + &span {
                return start + (u - &acc) / slope;
            }
            acc += span;
        }
        &tail_start + (u - acc) / rat_int(top as i64)
    };

    let mut filtration = vec![image(&r.lower(0))];
    for i in 1.. {
        let qi = image(&r.upper(&phi_q(&rat_int(i)))?);
        if qi.is_trivial() {
            break;
        }
        filtration.push(qi);
    }
    let q1 = filtration.get(1).cloned().unwrap_or_else(|| Subgroup::trivial(&q));
    if q1 != image(&r.lower(1)) {
        return Err(RamificationError::QuotientTame);
    }
    let n_q = filtration[0].order() / q1.order();
    let tame = TameCharacter {
        generator: proj.apply(r.tame().generator),
        exponent: modulo(r.tame().exponent, n_q as u64) as i64,
    };
    let lists: Vec<Vec<usize>> = filtration.iter().map(|h| h.members().to_vec()).collect();
    let data = build_ramification(&q, &lists, r.p(), Some(tame))?;
    Ok((data, proj))
}
