//! Characteristic subgroups, quotients and structural predicates.

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;

use super::bits::Bits;
use super::group::FiniteGroup;
use super::homomorphism::Homomorphism;
use super::permutation::{compose_into, Permutation, Point};
use super::primes::{is_p_power, p_part, prime_divisors, require_prime, PrimeSet};
use crate::error::{GroupError, Result};

/// Pairwise commutators are used up to this order; above it the normal
/// closure of generator commutators.
pub const PAIRWISE_COMMUTATOR_CAP: usize = 4096;

pub fn membership(g: &Permutation, group: &FiniteGroup) -> Result<bool> {
    if g.degree() != group.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: group.degree(),
            found: g.degree(),
        });
    }
    Ok(group.contains(g))
}

pub fn is_subgroup(a: &FiniteGroup, g: &FiniteGroup) -> Result<bool> {
    a.is_subgroup_of(g)
}

pub fn is_normal(n: &FiniteGroup, g: &FiniteGroup) -> Result<bool> {
    n.is_normal_in(g)
}

pub fn center(g: &FiniteGroup) -> FiniteGroup {
    centralizer(g, g.generators())
}

/// Elements of `g` commuting with every element of `set`.
pub fn centralizer(g: &FiniteGroup, set: &[Permutation]) -> FiniteGroup {
    g.from_indices((0..g.order()).filter(|&i| {
        let x = Permutation::from_slice(g.element(i));
        set.iter().all(|s| x.commutes_with(s))
    }))
}

/// `N_G(H)` for a subgroup `H` of `g`.
pub fn normalizer(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    g.from_indices((0..g.order()).filter(|&i| normalizes(g.element(i), h)))
}

fn normalizes(x: &[Point], h: &FiniteGroup) -> bool {
    let x = Permutation::from_slice(x);
    let xi = x.inverse();
    h.generators()
        .iter()
        .all(|k| h.contains(&x.compose(k).compose(&xi)))
}

pub fn intersection(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    a.from_indices((0..a.order()).filter(|&i| b.index_of(a.element(i)).is_some()))
}

/// `⟨A, B⟩` inside a common ambient group.
pub fn join(ambient: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    ambient.generate(&gens)
}

/// Smallest normal subgroup of `g` containing `set`.
pub fn normal_closure(g: &FiniteGroup, set: &[Permutation]) -> FiniteGroup {
    let mut gens: Vec<Permutation> = set.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut k = g.generate(&gens);
    let ginv: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .map(|x| (x.clone(), x.inverse()))
        .collect();
    loop {
        let mut grew = false;
        let kgens = k.generators().to_vec();
        'outer: for (x, xi) in &ginv {
            for y in &kgens {
                let c = x.compose(y).compose(xi);
                if !k.contains(&c) {
                    gens.push(c);
                    k = g.generate(&gens);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return k;
        }
    }
}

/// `[G, G]`.
pub fn derived_subgroup(g: &FiniteGroup) -> FiniteGroup {
    if g.order() <= PAIRWISE_COMMUTATOR_CAP {
        derived_pairwise(g)
    } else {
        derived_by_closure(g)
    }
}

/// Subgroup generated by all commutators of pairs of elements.
pub fn derived_pairwise(g: &FiniteGroup) -> FiniteGroup {
    let n = g.order();
    if let Some(t) = g.table() {
        let mut bits = Bits::new(n);
        for x in 0..n {
            for y in x + 1..n {
                bits.insert(t.commutator(x, y));
            }
        }
        bits.insert(0);
        let gens: Vec<usize> = bits.ones().collect();
        let closed = t.closure(&gens);
        return g.from_indices(closed.ones());
    }
    let d = g.degree();
    let inverses: Vec<Box<[Point]>> = g
        .permutations()
        .map(|p| p.inverse().images().into())
        .collect();
    let mut set: IndexSet<Box<[Point]>, FxBuildHasher> = IndexSet::default();
    let (mut xy, mut xyx) = (vec![0 as Point; d], vec![0 as Point; d]);
    let mut c = vec![0 as Point; d];
    for x in 0..n {
        for y in x + 1..n {
            compose_into(g.element(x), g.element(y), &mut xy);
            compose_into(&xy, &inverses[x], &mut xyx);
            compose_into(&xyx, &inverses[y], &mut c);
            if !set.contains(c.as_slice()) {
                set.insert(c.as_slice().into());
            }
        }
    }
    let gens: Vec<Permutation> = set.iter().map(|b| Permutation::from_slice(b)).collect();
    let mut chosen = Vec::new();
    let mut k = FiniteGroup::trivial(d);
    for p in gens {
        if !k.contains(&p) {
            chosen.push(p);
            k = g.generate(&chosen);
        }
    }
    k
}

/// Normal closure of the commutators of generator pairs.
pub fn derived_by_closure(g: &FiniteGroup) -> FiniteGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            comms.push(Permutation::commutator(x, y));
        }
    }
    normal_closure(g, &comms)
}

/// `G, G′, G″, …` until the series stabilises.
pub fn derived_series(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// `[G, H]` for `H ⊴ G`.
pub fn commutator_subgroup(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let mut comms = Vec::new();
    for x in g.generators() {
        for y in h.generators() {
            comms.push(Permutation::commutator(x, y));
        }
    }
    normal_closure(g, &comms)
}

/// A Sylow `p`-subgroup, grown one normalising `p`-element at a time.
pub fn sylow(g: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    require_prime(p)?;
    let target = p_part(g.order() as u64, p) as usize;
    let orders = g.element_orders();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut pg = FiniteGroup::trivial(g.degree());
    while pg.order() < target {
        let next = (1..g.order()).find(|&i| {
            is_p_power(orders[i] as u64, p)
                && pg.index_of(g.element(i)).is_none()
                && normalizes(g.element(i), &pg)
        });
        let i = next.expect("a proper p-subgroup has a p-element in its normalizer outside it");
        gens.push(g.permutation(i));
        pg = g.generate(&gens);
    }
    Ok(pg)
}

/// `O^p(G)`: normal closure of the elements of order prime to `p`.
pub fn o_p_residual(g: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    require_prime(p)?;
    let orders = g.element_orders();
    let mut gens = Vec::new();
    let mut k = FiniteGroup::trivial(g.degree());
    for i in 1..g.order() {
        if !(orders[i] as u64).is_multiple_of(p) && k.index_of(g.element(i)).is_none() {
            gens.push(g.permutation(i));
            k = g.generate(&gens);
        }
    }
    Ok(normal_closure(g, k.generators()))
}

/// Last term of the lower central series.
pub fn nilpotent_residual(g: &FiniteGroup) -> FiniteGroup {
    let mut h = g.clone();
    loop {
        let next = commutator_subgroup(g, &h);
        if next.order() == h.order() {
            return h;
        }
        h = next;
    }
}

/// `G/N` acting on the left cosets of `N`, with the projection.
pub fn quotient(g: &FiniteGroup, n: &FiniteGroup) -> Result<(FiniteGroup, Homomorphism)> {
    if !n.is_normal_in(g)? {
        return Err(GroupError::NotNormal);
    }
    let (coset_of, reps) = cosets(g, n);
    let m = reps.len();
    let images: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| {
            let imgs: Vec<Point> = reps
                .iter()
                .map(|&r| {
                    let y = x.compose(&g.permutation(r));
                    coset_of[g.index_of(y.images()).expect("closed")] as Point
                })
                .collect();
            Permutation::from_raw(imgs.into_boxed_slice())
        })
        .collect();
    let q = FiniteGroup::closure_with_cap(&images, m, m.max(1) * 2)?;
    // the generator list of q may have dropped identities; map against q's own list
    let proj = Homomorphism::new(g, &q, images)?;
    Ok((q, proj))
}

/// Left coset index of every element, and the least element of each coset.
pub(crate) fn cosets(g: &FiniteGroup, n: &FiniteGroup) -> (Vec<u32>, Vec<usize>) {
    const UNSET: u32 = u32::MAX;
    let mut coset_of = vec![UNSET; g.order()];
    let mut reps = Vec::new();
    let mut buf = vec![0 as Point; g.degree()];
    for i in 0..g.order() {
        if coset_of[i] != UNSET {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(i);
        for e in n.iter() {
            compose_into(g.element(i), e, &mut buf);
            coset_of[g.index_of(&buf).expect("closed")] = c;
        }
    }
    (coset_of, reps)
}

/// Conjugacy classes as lists of element indices, ordered by least member.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    const UNSET: u32 = u32::MAX;
    let mut class_of = vec![UNSET; g.order()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let conj: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .map(|x| (x.clone(), x.inverse()))
        .collect();
    let t = g.table();
    let gen_idx: Vec<usize> = g
        .generators()
        .iter()
        .map(|x| g.index_of(x.images()).expect("generator"))
        .collect();
    for i in 0..g.order() {
        if class_of[i] != UNSET {
            continue;
        }
        let c = classes.len() as u32;
        class_of[i] = c;
        let mut class = vec![i];
        let mut head = 0;
        while head < class.len() {
            let x = class[head];
            head += 1;
            for (k, (s, si)) in conj.iter().enumerate() {
                let y = match t {
                    Some(t) => t.conj(gen_idx[k], x),
                    None => {
                        let p = s.compose(&g.permutation(x)).compose(si);
                        g.index_of(p.images()).expect("closed")
                    }
                };
                if class_of[y] == UNSET {
                    class_of[y] = c;
                    class.push(y);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// All normal subgroups, sorted by order then element set.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let mut found: Vec<FiniteGroup> = Vec::new();
    let mut keys: IndexSet<Bits, FxBuildHasher> = IndexSet::default();
    let mut push = |h: FiniteGroup, found: &mut Vec<FiniteGroup>| {
        if keys.insert(g.bits_of(&h)) {
            found.push(h);
        }
    };
    push(FiniteGroup::trivial(g.degree()), &mut found);
    for class in conjugacy_classes(g) {
        let rep = g.permutation(class[0]);
        push(normal_closure(g, &[rep]), &mut found);
    }
    let mut i = 0;
    while i < found.len() {
        let mut j = 0;
        while j < i {
            let joined = join(g, &found[i], &found[j]);
            push(joined, &mut found);
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.iter().cmp(b.iter()))
    });
    found
}

pub fn is_abelian(g: &FiniteGroup) -> bool {
    let gens = g.generators();
    gens.iter()
        .enumerate()
        .all(|(i, x)| gens[i + 1..].iter().all(|y| x.commutes_with(y)))
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    prime_divisors(g.order() as u64)
        .into_iter()
        .all(|p| sylow(g, p).and_then(|s| s.is_normal_in(g)).unwrap_or(false))
}

pub fn is_metabelian(g: &FiniteGroup) -> bool {
    is_abelian(&derived_subgroup(g))
}

pub fn is_perfect(g: &FiniteGroup) -> bool {
    derived_subgroup(g).order() == g.order()
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).last().expect("nonempty").is_trivial()
}

pub fn is_pi_group(g: &FiniteGroup, pi: &PrimeSet) -> bool {
    pi.covers(g.order() as u64)
}

pub fn element_order(g: &Permutation) -> u64 {
    g.order()
}

pub fn all_sylow_abelian(g: &FiniteGroup) -> bool {
    prime_divisors(g.order() as u64)
        .into_iter()
        .all(|p| sylow(g, p).map(|s| is_abelian(&s)).unwrap_or(false))
}

/// Index `|G:H|`.
pub fn index(g: &FiniteGroup, h: &FiniteGroup) -> usize {
    g.order() / h.order()
}

/// `gHg⁻¹`.
pub fn conjugate_subgroup(h: &FiniteGroup, x: &Permutation) -> FiniteGroup {
    let xi = x.inverse();
    let gens: Vec<Permutation> = h
        .generators()
        .iter()
        .map(|k| x.compose(k).compose(&xi))
        .collect();
    FiniteGroup::closure_with_cap(&gens, h.degree(), h.order())
        .expect("conjugate has the same order")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s4() -> FiniteGroup {
        FiniteGroup::closure(&[p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])], 4).unwrap()
    }

    fn q8() -> FiniteGroup {
        // regular representation on {±1, ±i, ±j, ±k}
        let i = p(8, &[&[0, 2, 1, 3], &[4, 6, 5, 7]]);
        let j = p(8, &[&[0, 4, 1, 5], &[2, 7, 3, 6]]);
        FiniteGroup::closure(&[i, j], 8).unwrap()
    }

    #[test]
    fn s4_structure() {
        let g = s4();
        assert!(center(&g).is_trivial());
        let orders: Vec<usize> = derived_series(&g).iter().map(FiniteGroup::order).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert_eq!(sylow(&g, 2).unwrap().order(), 8);
        assert_eq!(sylow(&g, 3).unwrap().order(), 3);
        assert_eq!(o_p_residual(&g, 2).unwrap().order(), 12);
        assert_eq!(o_p_residual(&g, 3).unwrap().order(), 24);
        assert_eq!(nilpotent_residual(&g).order(), 12);
        let orders: Vec<usize> = normal_subgroups(&g)
            .iter()
            .map(FiniteGroup::order)
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert!(!is_metabelian(&g));
        assert!(!all_sylow_abelian(&g));
        assert!(sylow(&g, 4).is_err());
    }

    #[test]
    fn q8_structure() {
        let g = q8();
        assert_eq!(g.order(), 8);
        let z = center(&g);
        assert_eq!(z.order(), 2);
        assert_eq!(derived_subgroup(&g), z);
        assert!(nilpotent_residual(&g).is_trivial());
        assert!(is_nilpotent(&g));
        let (q, proj) = quotient(&g, &z).unwrap();
        assert_eq!(q.order(), 4);
        assert!(is_abelian(&q));
        assert_eq!(q.exponent(), 2);
        assert_eq!(proj.kernel(), z);
    }

    #[test]
    fn derived_paths_agree() {
        for g in [s4(), q8()] {
            assert_eq!(derived_pairwise(&g), derived_by_closure(&g));
        }
    }

    #[test]
    fn quotient_needs_normality() {
        let g = s4();
        let t = g.generate(&[p(4, &[&[0, 1]])]);
        assert_eq!(quotient(&g, &t).unwrap_err(), GroupError::NotNormal);
        let (q, _) = quotient(&g, &g).unwrap();
        assert!(q.is_trivial());
    }
}
