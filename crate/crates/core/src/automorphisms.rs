//! Automorphism groups as permutation groups on element indices.

use std::time::Instant;

use crate::complements::find_complement;
use crate::error::{GroupError, Result};
use crate::lattice::frattini;
use crate::limits::Limits;
use crate::perm::{
    center, cosets, derived_subgroup, prime_divisors, Bits, CayleyTable, FiniteGroup, Permutation,
    Point,
};

/// `Aut(N)` acting on the `|N|` elements of `N`, with `Inn(N)` inside it.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub base: FiniteGroup,
    pub carrier: FiniteGroup,
    pub inn: FiniteGroup,
    pub out_order: usize,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    /// The automorphism of `N` given by a carrier element, applied to `x`.
    pub fn apply(&self, gamma: &Permutation, x: &Permutation) -> Option<Permutation> {
        let i = self.base.index_of(x.images())?;
        Some(self.base.permutation(gamma.image(i)))
    }

    /// Carrier element of conjugation by `g ∈ N`.
    pub fn inner(&self, g: &Permutation) -> Permutation {
        conjugation_map(&self.base, g)
    }
}

fn conjugation_map(n: &FiniteGroup, g: &Permutation) -> Permutation {
    let gi = g.inverse();
    let images: Box<[Point]> = n
        .permutations()
        .map(|x| {
            n.index_of(g.compose(&x).compose(&gi).images())
                .expect("closed") as Point
        })
        .collect();
    Permutation::from_raw(images)
}

/// Invariants of an element that every automorphism preserves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Fingerprint {
    order: u32,
    centralizer: usize,
    power_centralizers: Vec<usize>,
    square_roots: usize,
}

fn fingerprints(n: &FiniteGroup, t: &CayleyTable) -> Vec<Fingerprint> {
    let size = n.order();
    let orders = n.element_orders();
    let cent: Vec<usize> = (0..size)
        .map(|x| (0..size).filter(|&y| t.mul(x, y) == t.mul(y, x)).count())
        .collect();
    let mut roots = vec![0usize; size];
    for y in 0..size {
        roots[t.mul(y, y)] += 1;
    }
    (0..size)
        .map(|x| {
            let o = orders[x] as u64;
            let power_centralizers = prime_divisors(o)
                .into_iter()
                .map(|p| cent[t.pow(x, p)])
                .collect();
            Fingerprint {
                order: orders[x],
                centralizer: cent[x],
                power_centralizers,
                square_roots: roots[x],
            }
        })
        .collect()
}

/// Builds the partial map on `⟨gens⟩` sending `gens[i] ↦ images[i]`,
/// failing on an inconsistency or a collision.
fn extend_map(
    t: &CayleyTable,
    gens: &[usize],
    images: &[usize],
    map: &mut [u32],
    used: &mut Bits,
    queue: &mut Vec<usize>,
) -> bool {
    const UNSET: u32 = u32::MAX;
    for &x in queue.iter() {
        used.remove(map[x] as usize);
        map[x] = UNSET;
    }
    queue.clear();
    map[0] = 0;
    used.insert(0);
    queue.push(0);
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x] as usize;
        for (&s, &hs) in gens.iter().zip(images) {
            let y = t.mul(x, s);
            let fy = t.mul(fx, hs) as u32;
            if map[y] == UNSET {
                if !used.insert(fy as usize) {
                    return false;
                }
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return false;
            }
        }
    }
    true
}

/// Generators picked for fast growth, ties going to rarer fingerprints.
fn backtrack_generators(n: &FiniteGroup, t: &CayleyTable, fps: &[Fingerprint]) -> Vec<usize> {
    let size = n.order();
    let mut class_size = std::collections::HashMap::new();
    for f in fps {
        *class_size.entry(f).or_insert(0usize) += 1;
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut current = Bits::new(size);
    current.insert(0);
    while current.count() < size {
        let best = (1..size)
            .filter(|&x| !current.contains(x))
            .map(|x| {
                let grown = t.extend(&current, &gens, x).count();
                (std::cmp::Reverse(grown), class_size[&fps[x]], x)
            })
            .min()
            .expect("a proper subgroup misses some element");
        let x = best.2;
        current = t.extend(&current, &gens, x);
        gens.push(x);
    }
    gens
}

/// `Aut(N)` by backtracking over generator images.
pub fn aut_group(n: &FiniteGroup) -> Result<AutGroup> {
    let limits = Limits::current();
    if n.order() > limits.aut_cap {
        return Err(GroupError::size(
            "automorphism group",
            n.order(),
            limits.aut_cap,
        ));
    }
    let t = n.require_table("automorphism group")?;
    let size = n.order();
    let fps = fingerprints(n, t);
    let gens = backtrack_generators(n, t, &fps);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (1..size).filter(|&x| fps[x] == fps[g]).collect())
        .collect();

    let start = Instant::now();
    let cap = limits.element_cap;
    let mut found: Vec<Permutation> = Vec::new();
    let k = gens.len();
    let mut images = vec![0usize; k];
    let mut pos = vec![0usize; k];
    let mut map = vec![u32::MAX; size];
    let mut used = Bits::new(size);
    let mut queue = Vec::new();
    let mut depth = 0usize;
    let mut steps = 0u64;
    if k == 0 {
        found.push(Permutation::identity(size));
    } else {
        loop {
            let mut advance = true;
            if pos[depth] < candidates[depth].len() {
                images[depth] = candidates[depth][pos[depth]];
                steps += 1;
                if steps.is_multiple_of(8192) {
                    if let Some(b) = limits.time_budget {
                        if start.elapsed() > b {
                            return Err(GroupError::Budget(b));
                        }
                    }
                }
                if extend_map(
                    t,
                    &gens[..=depth],
                    &images[..=depth],
                    &mut map,
                    &mut used,
                    &mut queue,
                ) {
                    if depth + 1 == k {
                        debug_assert_eq!(queue.len(), size);
                        let imgs: Box<[Point]> = map.iter().map(|&m| m as Point).collect();
                        found.push(Permutation::from_raw(imgs));
                        if found.len() > cap {
                            return Err(GroupError::size(
                                "automorphism group",
                                format!("more than {} ({} found so far)", cap, found.len()),
                                cap,
                            ));
                        }
                    } else {
                        depth += 1;
                        pos[depth] = 0;
                        advance = false;
                    }
                }
            } else {
                if depth == 0 {
                    break;
                }
                depth -= 1;
            }
            if advance {
                pos[depth] += 1;
            }
        }
    }

    let carrier = FiniteGroup::from_closed_set(size, found);
    let inner: Vec<Permutation> = n
        .generators()
        .iter()
        .map(|g| conjugation_map(n, g))
        .collect();
    let inn = carrier.generate(&inner);
    debug_assert_eq!(inn.order() * center(n).order(), size);
    Ok(AutGroup {
        base: n.clone(),
        out_order: carrier.order() / inn.order(),
        carrier,
        inn,
    })
}

fn index_bits(n: &FiniteGroup, m: &FiniteGroup) -> Result<Bits> {
    if !m.is_subgroup_of(n)? {
        return Err(GroupError::NotSubgroup("M is not inside N".into()));
    }
    Ok(n.bits_of(m))
}

/// True when every automorphism of `N` maps `M` onto itself.
pub fn is_characteristic(m: &FiniteGroup, n: &FiniteGroup) -> Result<bool> {
    let aut = aut_group(n)?;
    is_characteristic_in(m, &aut)
}

pub fn is_characteristic_in(m: &FiniteGroup, aut: &AutGroup) -> Result<bool> {
    let bits = index_bits(&aut.base, m)?;
    Ok(aut
        .carrier
        .generators()
        .iter()
        .all(|g| bits.ones().all(|x| bits.contains(g.image(x)))))
}

/// `Z(N) = 1` and `Inn(N)` has a complement in `Aut(N)`.
pub fn rose_criterion(n: &FiniteGroup) -> Result<bool> {
    if !center(n).is_trivial() {
        return Ok(false);
    }
    rose_with(&aut_group(n)?)
}

pub fn rose_with(aut: &AutGroup) -> Result<bool> {
    if !center(&aut.base).is_trivial() {
        return Ok(false);
    }
    Ok(aut.out_order == 1 || find_complement(&aut.carrier, &aut.inn)?.exists)
}

/// `Z(N) = 1` and every automorphism is inner.
pub fn is_complete(n: &FiniteGroup) -> Result<bool> {
    if !center(n).is_trivial() {
        return Ok(false);
    }
    Ok(aut_group(n)?.out_order == 1)
}

/// `Inn(N) ≤ Φ(Aut(N))`.
pub fn gaschuetz_eick_iii(n: &FiniteGroup) -> Result<bool> {
    let aut = aut_group(n)?;
    if aut.inn.is_trivial() {
        return Ok(true);
    }
    aut.inn.is_subgroup_of(&frattini(&aut.carrier)?)
}

/// An automorphism `γ` and `k` with `γ^k ∈ Inn(N)′` and `(δγ)^k ≠ 1` for every inner `δ`.
pub fn prop_special_search(n: &FiniteGroup) -> Result<Option<(Permutation, u64)>> {
    if !center(n).is_trivial() {
        return Err(GroupError::Precondition(
            "N must have trivial center".into(),
        ));
    }
    let aut = aut_group(n)?;
    Ok(prop_special_with(&aut))
}

pub fn prop_special_with(aut: &AutGroup) -> Option<(Permutation, u64)> {
    let a = &aut.carrier;
    let inn_derived = derived_subgroup(&aut.inn);
    let exponent = a.exponent();
    let orders = a.element_orders();
    let (coset_of, reps) = cosets(a, &aut.inn);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
    for (x, &c) in coset_of.iter().enumerate() {
        members[c as usize].push(x);
    }
    for coset in members.iter().skip(1) {
        for k in 1..=exponent {
            if coset.iter().any(|&x| k % orders[x] as u64 == 0) {
                continue;
            }
            for &x in coset {
                let gamma = a.permutation(x);
                if inn_derived.contains(&gamma.pow(k as i64)) {
                    return Some((gamma, k));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cyclic, direct_product, quaternion8, symmetric};
    use crate::perm::Homomorphism;

    #[test]
    fn small_automorphism_groups() {
        let q8 = aut_group(&quaternion8().unwrap()).unwrap();
        assert_eq!((q8.order(), q8.inn.order(), q8.out_order), (24, 4, 6));
        assert_eq!(aut_group(&cyclic(5).unwrap()).unwrap().order(), 4);
        assert_eq!(aut_group(&cyclic(1).unwrap()).unwrap().order(), 1);
        let s4 = aut_group(&symmetric(4).unwrap()).unwrap();
        assert_eq!((s4.order(), s4.out_order), (24, 1));
    }

    #[test]
    fn carrier_elements_are_automorphisms() {
        let n = quaternion8().unwrap();
        let aut = aut_group(&n).unwrap();
        for gamma in aut.carrier.permutations() {
            let images: Vec<Permutation> = n
                .generators()
                .iter()
                .map(|g| aut.apply(&gamma, g).unwrap())
                .collect();
            let h = Homomorphism::new(&n, &n, images).unwrap();
            for x in 0..n.order() {
                assert_eq!(h.map_index(x), gamma.image(x));
            }
        }
    }

    #[test]
    fn characteristic_subgroups() {
        let c2 = cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert!(!is_characteristic(&v.left_image(), &v.group).unwrap());
        let s4 = symmetric(4).unwrap();
        assert!(is_characteristic(&derived_subgroup(&s4), &s4).unwrap());
        assert!(is_characteristic(&center(&s4), &s4).unwrap());
    }

    #[test]
    fn criteria_on_symmetric_groups() {
        let s3 = symmetric(3).unwrap();
        assert!(rose_criterion(&s3).unwrap());
        assert!(is_complete(&s3).unwrap());
        assert!(!gaschuetz_eick_iii(&s3).unwrap());
        assert!(gaschuetz_eick_iii(&cyclic(2).unwrap()).unwrap());
        assert!(!gaschuetz_eick_iii(&quaternion8().unwrap()).unwrap());
        assert_eq!(prop_special_search(&s3).unwrap(), None);
        assert!(prop_special_search(&quaternion8().unwrap()).is_err());
    }
}
