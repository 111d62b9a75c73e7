use super::{same_group, FiniteGroup, Group, GroupError, Subgroup};
use std::fmt;

/// A homomorphism given by the image of every source element.
#[derive(Clone)]
pub struct GroupHom {
    source: Group,
    target: Group,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Group, target: Group, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} images for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(GroupError::NotHomomorphism(format!("image {bad} out of range")));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism(format!("fails on ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Group, target: Group, map: Vec<usize>) -> Self {
        GroupHom { source, target, map }
    }

    pub fn identity(g: &Group) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.source.order()).filter(|&x| self.map[x] == 0).collect();
        Subgroup::new(&self.source, &members).expect("kernel is a subgroup")
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new(&self.target, &self.map).expect("image is a subgroup")
    }

    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let imgs: Vec<usize> = h.members().iter().map(|&x| self.map[x]).collect();
        Subgroup::new(&self.target, &imgs).expect("image is a subgroup")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if !same_group(&self.target, &other.source) {
            return Err(GroupError::GroupMismatch);
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Ok(GroupHom { source: self.source.clone(), target: other.target.clone(), map })
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom{:?}", self.map)
    }
}

/// `G/N` with cosets numbered by their smallest member, and the projection.
pub fn quotient(n: &Subgroup) -> Result<(Group, GroupHom), GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let g = n.parent();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &k in n.members() {
            coset_of[g.mul(x, k)] = reps.len();
        }
        reps.push(x);
    }
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let q = FiniteGroup::from_trusted_table(table);
    let proj = GroupHom::new_unchecked(g.clone(), q.clone(), coset_of);
    Ok((q, proj))
}
