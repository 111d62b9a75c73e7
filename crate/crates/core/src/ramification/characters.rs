use super::{RamificationData, RamificationError};
use crate::cyclotomic::Cyclotomic;
use crate::group::{quotient, ClassFunction, FiniteGroup, GroupHom, Subgroup};
use crate::numtheory::{rat, Rational};

/// `Ind_H^Γ u_H` as a class function on the parent of `h`.
pub fn induced_augmentation(h: &Subgroup) -> ClassFunction {
    let (hg, inc) = h.as_group();
    ClassFunction::augmentation(&hg).pushforward(&inc).expect("inclusion starts at h")
}

/// `Ar = Σ_{i≥0} (|Γ_i| / |Γ_0|) Ind_{Γ_i}^Γ u_{Γ_i}`.
pub fn artin_character(r: &RamificationData) -> ClassFunction {
    let g0 = r.e() as i64;
    r.filtration().iter().fold(ClassFunction::zero(r.gamma()), |acc, gi| {
        let term = induced_augmentation(gi).scale(&rat(gi.order() as i64, g0));
        acc.add(&term).expect("same group")
    })
}

/// `(1/n) Σ_r r·χ_r` on `cyclic(n)`, where element `j` stands for `ζ_n^j`.
///
/// Evaluated pointwise, `(1/n) Σ_r r ζ_n^{rj}` as one term list per element;
/// summing the `n` characters as class functions is quadratic in field operations.
pub fn bar_n(n: usize) -> ClassFunction {
    let cn = FiniteGroup::cyclic(n).expect("positive order");
    let values = (0..n)
        .map(|j| Cyclotomic::from_terms(n as u64, (0..n).map(|r| (((r * j) % n) as i64, rat(r as i64, n as i64)))))
        .collect();
    ClassFunction::new(&cn, values).expect("one value per element of an abelian group")
}

/// The refined Artin character from the lower numbering filtration:
/// `Ind_{Γ_0}^Γ Inf Ψ^*bAr_n + ½ Ind_{Γ_1}^Γ u + ½ Σ_{i≥1} (|Γ_i|/|Γ_0|) Ind_{Γ_i}^Γ u`
/// (inductions composed through `Γ_0`).
pub fn refined_artin(r: &RamificationData) -> ClassFunction {
    let (g0, inc) = r.lower(0).as_group();
    let bar = bar_n(r.n());
    let tame = ClassFunction::from_fn(&g0, |x| {
        bar.value_at(r.psi_exponent(inc.apply(x)).expect("Ψ is defined on Γ_0") as usize).clone()
    });
    let half = rat(1, 2);
    let mut total = tame.pushforward(&inc).expect("inclusion of Γ_0");
    total = total.add(&induced_augmentation(&r.lower(1)).scale(&half)).expect("same group");
    for gi in r.filtration().iter().skip(1) {
        let w = rat(gi.order() as i64, 2 * r.e() as i64);
        total = total.add(&induced_augmentation(gi).scale(&w)).expect("same group");
    }
    total
}

/// The refined Artin character from the upper numbering filtration, built
/// literally: inflation from `Γ^0/Γ^{1/g_0}`, then the `Γ^{i/g_0}` terms with
/// weight `1/(2 g_0)`, all induced from `Γ^0`.
pub fn refined_artin_upper(r: &RamificationData) -> Result<ClassFunction, RamificationError> {
    let g0 = r.e() as i64;
    let top = r.upper(&Rational::from_integer(0.into()))?;
    let (top_group, inc) = top.as_group();
    let first = r.upper(&rat(1, g0))?.preimage(&inc);
    let (tame_q, proj) = quotient(&first)?;

    let cn = FiniteGroup::cyclic(r.n())?;
    let mut map = vec![usize::MAX; tame_q.order()];
    for x in 0..top_group.order() {
        map[proj.apply(x)] = r.psi_exponent(inc.apply(x)).expect("Ψ is defined on Γ^0") as usize;
    }
    let psi = GroupHom::new(tame_q, cn, map)?;
    let mut inner = bar_n(r.n()).pullback(&psi)?.inflate(&proj)?;
    inner = inner.add(&induced_augmentation(&first).scale(&rat(1, 2)))?;
    let w = rat(1, 2 * g0);
    for i in 1.. {
        let h = r.upper(&rat(i, g0))?.preimage(&inc);
        if h.is_trivial() {
            break;
        }
        inner = inner.add(&induced_augmentation(&h).scale(&w))?;
    }
    Ok(inner.induce(&inc)?)
}

/// Valuewise average over `Gal(Q_p(μ_n)/Q_p)`; the identity for `p = 0`.
pub fn p_average(chi: &ClassFunction, p: u64) -> Result<ClassFunction, RamificationError> {
    if p == 0 {
        return Ok(chi.clone());
    }
    Ok(chi.try_map_values(|v: &Cyclotomic| v.frobenius_average(p))?)
}
