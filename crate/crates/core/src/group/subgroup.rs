use super::{FiniteGroup, Group, GroupError, GroupHom};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A subgroup of `parent`, stored as the sorted list of member indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn new(parent: &Group, members: &[usize]) -> Result<Self, GroupError> {
        let m = parent.order();
        let mut mask = vec![false; m];
        for &x in members {
            if x >= m {
                return Err(GroupError::NotClosed(format!("element {x} out of range")));
            }
            mask[x] = true;
        }
        if !mask[0] {
            return Err(GroupError::NotClosed("identity missing".into()));
        }
        let list: Vec<usize> = (0..m).filter(|&x| mask[x]).collect();
        for &a in &list {
            if !mask[parent.inv(a)] {
                return Err(GroupError::NotClosed(format!("inverse of {a} missing")));
            }
            for &b in &list {
                if !mask[parent.mul(a, b)] {
                    return Err(GroupError::NotClosed(format!("product of {a} and {b} missing")));
                }
            }
        }
        Ok(Subgroup { parent: parent.clone(), members: list, mask })
    }

    fn from_mask(parent: &Group, mask: Vec<bool>) -> Self {
        let members = (0..mask.len()).filter(|&x| mask[x]).collect();
        Subgroup { parent: parent.clone(), members, mask }
    }

    pub fn trivial(parent: &Group) -> Self {
        Self::generated_by(parent, &[])
    }

    pub fn whole(parent: &Group) -> Self {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    pub fn generated_by(parent: &Group, generators: &[usize]) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = parent.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    frontier.push(y);
                }
            }
        }
        Self::from_mask(parent, mask)
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        self.members
            .iter()
            .all(|&x| (0..g.order()).all(|h| self.mask[g.conjugate_by(x, h)]))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect();
        Self::from_mask(&self.parent, mask)
    }

    /// The subgroup generated by both; equals the product set when one is normal.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        Self::generated_by(&self.parent, &gens)
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// The subgroup as a group in its own right, members renumbered in
    /// increasing order, together with the inclusion into the parent.
    pub fn as_group(&self) -> (Group, GroupHom) {
        let pos = |x: usize| self.members.binary_search(&x).expect("closed under products");
        let table = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| pos(self.parent.mul(a, b))).collect())
            .collect();
        let group = FiniteGroup::from_trusted_table(table);
        let inclusion = GroupHom::new_unchecked(group.clone(), self.parent.clone(), self.members.clone());
        (group, inclusion)
    }

    /// Pulls `self` back along a hom into its parent.
    pub fn preimage(&self, hom: &GroupHom) -> Subgroup {
        let mask = hom.map().iter().map(|&y| self.contains(y)).collect();
        Self::from_mask(hom.source(), mask)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        super::same_group(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

/// Every subgroup, found as joins of cyclic subgroups, sorted by order and
/// then by member list.
pub fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut pending: Vec<Subgroup> = Vec::new();
    for x in 0..g.order() {
        let s = Subgroup::generated_by(g, &[x]);
        if found.insert(s.members.clone()) {
            pending.push(s);
        }
    }
    let cyclic = pending.clone();
    while let Some(s) = pending.pop() {
        for c in &cyclic {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let j = s.join(c);
            if found.insert(j.members.clone()) {
                pending.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|members| {
            let mut mask = vec![false; g.order()];
            for &x in &members {
                mask[x] = true;
            }
            Subgroup { parent: g.clone(), members, mask }
        })
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

pub fn normal_subgroups(g: &Group) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(Subgroup::is_normal).collect()
}

#[allow(dead_code)]
pub(crate) fn same_parent(a: &Subgroup, b: &Subgroup) -> bool {
    Arc::ptr_eq(&a.parent, &b.parent) || super::same_group(&a.parent, &b.parent)
}
