//! Subgroup lattices by cyclic extension, maximal subgroups and Frattini subgroups.

use indexmap::IndexMap;
use rustc_hash::FxBuildHasher;

use crate::error::{GroupError, Result};
use crate::limits::Limits;
use crate::perm::{is_p_power, is_prime, Bits, FiniteGroup};

/// Default bound on the number of subgroups a lattice may hold.
pub const DEFAULT_SUBGROUP_COUNT_CAP: usize = 200_000;

/// Every subgroup of a group, as bit sets over its element indices.
///
/// Sorted by order, then by element set.
pub struct Lattice {
    group: FiniteGroup,
    members: Vec<Bits>,
    gens: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        Self::with_cap(g, DEFAULT_SUBGROUP_COUNT_CAP)
    }

    pub fn with_cap(g: &FiniteGroup, cap: usize) -> Result<Self> {
        let order_cap = Limits::current().lattice_cap;
        if g.order() > order_cap {
            return Err(GroupError::size("subgroup lattice", g.order(), order_cap));
        }
        let t = g.require_table("subgroup lattice")?;
        let orders = g.element_orders();

        // one generator per cyclic subgroup of prime-power order
        let mut cyclic: IndexMap<Bits, usize, FxBuildHasher> = IndexMap::default();
        for x in 1..g.order() {
            let o = orders[x] as u64;
            let prime_power = (2..=o)
                .find(|&p| o.is_multiple_of(p))
                .is_some_and(|p| is_prime(p) && is_p_power(o, p));
            if prime_power {
                cyclic.entry(t.closure(&[x])).or_insert(x);
            }
        }
        let extenders: Vec<(Bits, usize)> = cyclic.into_iter().collect();

        let mut found: IndexMap<Bits, Vec<usize>, FxBuildHasher> = IndexMap::default();
        let mut trivial = Bits::new(g.order());
        trivial.insert(0);
        found.insert(trivial, Vec::new());
        let mut i = 0;
        while i < found.len() {
            let (members, gens) = found
                .get_index(i)
                .map(|(m, g)| (m.clone(), g.clone()))
                .expect("in range");
            for (cyc, x) in &extenders {
                if cyc.is_subset(&members) {
                    continue;
                }
                let bigger = t.extend(&members, &gens, *x);
                if !found.contains_key(&bigger) {
                    if found.len() >= cap {
                        return Err(GroupError::size(
                            "subgroup lattice",
                            format!("more than {cap} subgroups"),
                            cap,
                        ));
                    }
                    let mut more = gens.clone();
                    more.push(*x);
                    found.insert(bigger, more);
                }
            }
            i += 1;
        }
        let mut all: Vec<(Bits, Vec<usize>)> = found.into_iter().collect();
        all.sort_by(|a, b| a.0.count().cmp(&b.0.count()).then_with(|| b.0.cmp(&a.0)));
        let (members, gens) = all.into_iter().unzip();
        Ok(Lattice {
            group: g.clone(),
            members,
            gens,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn members(&self, i: usize) -> &Bits {
        &self.members[i]
    }

    pub fn subgroup(&self, i: usize) -> FiniteGroup {
        self.group
            .subgroup_from_bits(&self.members[i], &self.gens[i])
    }

    pub fn subgroups(&self) -> Vec<FiniteGroup> {
        (0..self.len()).map(|i| self.subgroup(i)).collect()
    }

    /// Indices of the maximal subgroups.
    pub fn maximal(&self) -> Vec<usize> {
        let n = self.group.order();
        let top = self.len() - 1;
        (0..top)
            .filter(|&i| {
                let a = &self.members[i];
                let ai = a.count();
                !(i + 1..top).any(|j| {
                    let b = &self.members[j];
                    let bj = b.count();
                    bj > ai && bj < n && bj.is_multiple_of(ai) && a.is_subset(b)
                })
            })
            .collect()
    }

    pub fn frattini_bits(&self) -> Bits {
        let mut acc = Bits::full(self.group.order());
        for i in self.maximal() {
            acc = acc.intersect(&self.members[i]);
        }
        acc
    }
}

/// Every subgroup, failing if there are more than `cap`.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<FiniteGroup>> {
    Ok(Lattice::with_cap(g, cap)?.subgroups())
}

pub fn subgroups_of_order(g: &FiniteGroup, m: usize) -> Result<Vec<FiniteGroup>> {
    if m == 0 || !g.order().is_multiple_of(m) {
        return Ok(Vec::new());
    }
    let lattice = Lattice::new(g)?;
    Ok((0..lattice.len())
        .filter(|&i| lattice.members(i).count() == m)
        .map(|i| lattice.subgroup(i))
        .collect())
}

pub fn maximal_subgroups(g: &FiniteGroup) -> Result<Vec<FiniteGroup>> {
    let lattice = Lattice::new(g)?;
    Ok(lattice
        .maximal()
        .into_iter()
        .map(|i| lattice.subgroup(i))
        .collect())
}

/// Intersection of the maximal subgroups.
pub fn frattini(g: &FiniteGroup) -> Result<FiniteGroup> {
    if g.is_trivial() {
        return Ok(g.clone());
    }
    let bits = Lattice::new(g)?.frattini_bits();
    Ok(g.from_indices(bits.ones()))
}
