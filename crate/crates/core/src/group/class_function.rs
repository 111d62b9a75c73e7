use super::{same_group, Group, GroupError, GroupHom, Subgroup};
use crate::cyclotomic::Cyclotomic;
use crate::numtheory::{rat, Rational};
use std::fmt;

/// A class function with values in a cyclotomic field, one value per
/// conjugacy class in the group's class order.
#[derive(Clone)]
pub struct ClassFunction {
    group: Group,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: &Group, values: Vec<Cyclotomic>) -> Result<Self, GroupError> {
        if values.len() != group.num_classes() {
            return Err(GroupError::ClassCount { expected: group.num_classes(), got: values.len() });
        }
        Ok(ClassFunction { group: group.clone(), values })
    }

    /// Evaluates `f` on one representative per class.
    pub fn from_fn(group: &Group, f: impl Fn(usize) -> Cyclotomic) -> Self {
        let values = group.classes().iter().map(|c| f(c[0])).collect();
        ClassFunction { group: group.clone(), values }
    }

    pub fn zero(group: &Group) -> Self {
        Self::from_fn(group, |_| Cyclotomic::zero())
    }

    pub fn trivial(group: &Group) -> Self {
        Self::from_fn(group, |_| Cyclotomic::one())
    }

    pub fn regular(group: &Group) -> Self {
        let n = group.order() as i64;
        Self::from_fn(group, |x| Cyclotomic::from_integer(if x == 0 { n } else { 0 }))
    }

    /// Regular minus trivial.
    pub fn augmentation(group: &Group) -> Self {
        Self::regular(group).sub(&Self::trivial(group)).expect("same group")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_at(&self, x: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(x)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    fn check(&self, other: &Self) -> Result<(), GroupError> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map_values(|v| v.scale(q))
    }

    pub fn map_values(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn try_map_values<E>(&self, f: impl Fn(&Cyclotomic) -> Result<Cyclotomic, E>) -> Result<Self, E> {
        let values = self.values.iter().map(f).collect::<Result<_, _>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    /// `g ↦ χ(g⁻¹)`.
    pub fn dual(&self) -> Self {
        let g = &self.group;
        let values = (0..g.num_classes()).map(|c| self.values[g.inverse_class(c)].clone()).collect();
        ClassFunction { group: g.clone(), values }
    }

    /// `(1/|G|) Σ_g χ₁(g) χ₂(g⁻¹)`.
    pub fn pair(&self, other: &Self) -> Result<Cyclotomic, GroupError> {
        self.check(other)?;
        let g = &self.group;
        let sum: Cyclotomic = (0..g.num_classes())
            .map(|c| (&self.values[c] * &other.values[g.inverse_class(c)]).scale(&rat(g.class_size(c) as i64, 1)))
            .sum();
        Ok(sum.scale(&rat(1, g.order() as i64)))
    }

    /// `(α^*χ)(g) = χ(α(g))` for `χ` on the target of `α`.
    pub fn pullback(&self, hom: &GroupHom) -> Result<Self, GroupError> {
        if !same_group(&self.group, hom.target()) {
            return Err(GroupError::GroupMismatch);
        }
        Ok(Self::from_fn(hom.source(), |x| self.value_at(hom.apply(x)).clone()))
    }

    /// `(α_*χ)(c') = |G'| / (|G| |c'|) · Σ_{α(g) ∈ c'} χ(g)`: induction along
    /// injections, fibre averaging along surjections.
    pub fn pushforward(&self, hom: &GroupHom) -> Result<Self, GroupError> {
        if !same_group(&self.group, hom.source()) {
            return Err(GroupError::GroupMismatch);
        }
        let (g, t) = (&self.group, hom.target());
        let mut sums = vec![Cyclotomic::zero(); t.num_classes()];
        for c in 0..g.num_classes() {
            for &x in &g.classes()[c] {
                let target_class = t.class_of(hom.apply(x));
                sums[target_class] = &sums[target_class] + &self.values[c];
            }
        }
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(c, s)| s.scale(&rat(t.order() as i64, (g.order() * t.class_size(c)) as i64)))
            .collect();
        Ok(ClassFunction { group: t.clone(), values })
    }

    /// Restriction along an injective hom.
    pub fn restrict(&self, hom: &GroupHom) -> Result<Self, GroupError> {
        if !hom.is_injective() {
            return Err(GroupError::WrongKind("injective"));
        }
        self.pullback(hom)
    }

    /// Inflation along a surjective hom.
    pub fn inflate(&self, hom: &GroupHom) -> Result<Self, GroupError> {
        if !hom.is_surjective() {
            return Err(GroupError::WrongKind("surjective"));
        }
        self.pullback(hom)
    }

    /// Induction along an injective hom.
    pub fn induce(&self, hom: &GroupHom) -> Result<Self, GroupError> {
        if !hom.is_injective() {
            return Err(GroupError::WrongKind("injective"));
        }
        self.pushforward(hom)
    }

    /// Restriction to a subgroup, as a class function on `h.as_group()`.
    pub fn restrict_to(&self, h: &Subgroup) -> Result<(Self, GroupHom), GroupError> {
        let (_, inc) = h.as_group();
        Ok((self.pullback(&inc)?, inc))
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_rational)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// The linear characters of an abelian group, built by extending from the
/// trivial subgroup one element at a time. For `cyclic(n)` the `r`-th entry
/// sends the element `1` to `ζ_n^r`.
pub fn abelian_irreducibles(group: &Group) -> Result<Vec<ClassFunction>, GroupError> {
    if !group.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let m = group.order();
    let e = group.exponent();
    // characters as exponents of ζ_e, `None` outside the current subgroup
    let mut inside = vec![false; m];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut chars: Vec<Vec<Option<usize>>> = vec![{
        let mut v = vec![None; m];
        v[0] = Some(0);
        v
    }];
    while let Some(g) = (0..m).find(|&x| !inside[x]) {
        let mut k = 1;
        let mut gk = g;
        while !inside[gk] {
            gk = group.mul(gk, g);
            k += 1;
        }
        let mut powers = vec![0usize; k];
        for j in 1..k {
            powers[j] = group.mul(powers[j - 1], g);
        }
        let mut next = Vec::with_capacity(chars.len() * k);
        for chi in &chars {
            let b = chi[gk].expect("g^k lies in the subgroup");
            debug_assert_eq!(b % k, 0);
            for t in 0..k {
                let c = (b / k + t * (e / k)) % e;
                let mut v = chi.clone();
                for &h in &members {
                    let base = chi[h].expect("member");
                    for (j, &gj) in powers.iter().enumerate().skip(1) {
                        v[group.mul(h, gj)] = Some((base + j * c) % e);
                    }
                }
                next.push(v);
            }
        }
        let mut grown = Vec::with_capacity(members.len() * k);
        for &h in &members {
            for &gj in &powers {
                grown.push(group.mul(h, gj));
            }
        }
        for &x in &grown {
            inside[x] = true;
        }
        members = grown;
        chars = next;
    }
    Ok(chars
        .into_iter()
        .map(|v| ClassFunction::from_fn(group, |x| Cyclotomic::root(e as u64, v[x].expect("total") as i64)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::numtheory::rat_int;

    fn ints(v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&x| Cyclotomic::from_integer(x)).collect()
    }

    #[test]
    fn trivial_pairs_to_one() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let u = ClassFunction::trivial(&c2);
        assert_eq!(u.pair(&u).unwrap(), Cyclotomic::one());
        let reg = ClassFunction::regular(&c2);
        assert_eq!(reg.pair(&u).unwrap(), Cyclotomic::one());
        assert_eq!(reg.pair(&reg).unwrap(), Cyclotomic::from_integer(2));
    }

    #[test]
    fn induction_from_c2_to_c4() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::new(&c4, &[0, 2]).unwrap();
        let (c2, inc) = h.as_group();
        let ind = ClassFunction::trivial(&c2).induce(&inc).unwrap();
        assert_eq!(ind.values(), ints(&[2, 0, 2, 0]).as_slice());
    }

    #[test]
    fn inflation_and_averaging() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let n = Subgroup::new(&c4, &[0, 2]).unwrap();
        let (q, proj) = super::super::quotient(&n).unwrap();
        let sign = ClassFunction::new(&q, ints(&[1, -1])).unwrap();
        let inf = sign.inflate(&proj).unwrap();
        assert_eq!(inf.values(), ints(&[1, -1, 1, -1]).as_slice());
        assert_eq!(inf.pushforward(&proj).unwrap(), sign);
        let reg = ClassFunction::regular(&c4).pushforward(&proj).unwrap();
        assert_eq!(reg, ClassFunction::regular(&q));
    }

    #[test]
    fn s3_regular_and_irreducibles() {
        let s3 = FiniteGroup::from_permutations(&[vec![vec![1, 2]], vec![vec![1, 2, 3]]]).unwrap();
        assert_eq!(s3.classes().iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 2]);
        let reg = ClassFunction::regular(&s3);
        let sign = ClassFunction::new(&s3, ints(&[1, -1, 1])).unwrap();
        let std2 = ClassFunction::new(&s3, ints(&[2, 0, -1])).unwrap();
        assert_eq!(reg.pair(&std2).unwrap(), Cyclotomic::from_integer(2));
        assert_eq!(sign.pair(&std2).unwrap(), Cyclotomic::zero());
        assert_eq!(std2.pair(&std2).unwrap(), Cyclotomic::one());
        assert_eq!(reg.scale(&rat(1, 2)).degree(), &Cyclotomic::from_rational(rat_int(3)));
        assert_eq!(abelian_irreducibles(&s3).unwrap_err(), GroupError::NotAbelian);
    }

    #[test]
    fn linear_characters_are_orthonormal() {
        for inv in [vec![5], vec![2, 2], vec![2, 4], vec![3, 3], vec![12]] {
            let g = FiniteGroup::abelian(&inv).unwrap();
            let chars = abelian_irreducibles(&g).unwrap();
            assert_eq!(chars.len(), g.order());
            for (i, a) in chars.iter().enumerate() {
                for (j, b) in chars.iter().enumerate() {
                    let expected = Cyclotomic::from_integer((i == j) as i64);
                    assert_eq!(a.pair(b).unwrap(), expected, "{inv:?} {i} {j}");
                }
            }
        }
        let c5 = FiniteGroup::cyclic(5).unwrap();
        let chars = abelian_irreducibles(&c5).unwrap();
        for r in 0..5 {
            assert_eq!(chars[r].value_at(1), &Cyclotomic::root(5, r as i64));
        }
    }

    #[test]
    fn mismatched_groups() {
        let a = ClassFunction::trivial(&FiniteGroup::cyclic(2).unwrap());
        let b = ClassFunction::trivial(&FiniteGroup::cyclic(3).unwrap());
        assert_eq!(a.pair(&b).unwrap_err(), GroupError::GroupMismatch);
        assert!(ClassFunction::new(a.group(), ints(&[1])).is_err());
    }
}
