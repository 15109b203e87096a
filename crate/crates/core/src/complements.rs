//! Complement decisions by lift-tuple search, and the minimal-supplement reduction.
//!
//! For `N ⊴ G` pick `g₁, …, g_m` generating `G` modulo `N`. Any complement `K`
//! meets each coset `g_i N` in exactly one element, and those elements
//! generate `K`. So complements correspond one to one with the tuples
//! `(g₁n₁, …, g_m n_m)` whose span meets `N` trivially, and walking all
//! `|N|^m` tuples decides existence.

use std::collections::HashSet;
use std::time::Instant;

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::lattice::Lattice;
use crate::limits::Limits;
use crate::perm::{
    conjugate_subgroup, intersection, prime_divisors, quotient, Bits, CayleyTable, FiniteGroup,
    Permutation, Point,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    LiftSearch,
    QuotientReducedLiftSearch,
}

impl std::fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchMethod::LiftSearch => "lift-search",
            SearchMethod::QuotientReducedLiftSearch => "quotient-reduced lift-search",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ComplementReport {
    pub exists: bool,
    pub complement: Option<FiniteGroup>,
    /// Tuples up to and including the first hit, or all of them.
    pub search_space: u64,
    /// `|N|^m` for the generator count `m` used.
    pub total_tuples: u64,
    /// Number of lifted generators `m`.
    pub generators: usize,
    pub method: SearchMethod,
}

/// Multiplication on element indices, through the table when there is one.
struct Arith<'a> {
    g: &'a FiniteGroup,
    table: Option<&'a CayleyTable>,
    scratch: Vec<Point>,
}

impl<'a> Arith<'a> {
    fn new(g: &'a FiniteGroup) -> Self {
        Arith {
            g,
            table: g.table(),
            scratch: vec![0; g.degree()],
        }
    }

    #[inline]
    fn mul(&mut self, a: usize, b: usize) -> usize {
        match self.table {
            Some(t) => t.mul(a, b),
            None => {
                let (x, y) = (self.g.element(a), self.g.element(b));
                for (o, &p) in self.scratch.iter_mut().zip(y) {
                    *o = x[p as usize];
                }
                self.g.index_of(&self.scratch).expect("closed")
            }
        }
    }
}

/// Closure of `gens` that gives up once it exceeds `limit` elements or meets
/// `forbidden` outside the identity.
fn bounded_closure(
    ar: &mut Arith<'_>,
    gens: &[usize],
    limit: usize,
    forbidden: &Bits,
    seen: &mut Bits,
    list: &mut Vec<usize>,
) -> bool {
    for &x in list.iter() {
        seen.remove(x);
    }
    list.clear();
    list.push(0);
    seen.insert(0);
    let mut head = 0;
    let mut ok = true;
    'bfs: while head < list.len() {
        let x = list[head];
        head += 1;
        for &s in gens {
            let y = ar.mul(x, s);
            if seen.insert(y) {
                list.push(y);
                if forbidden.contains(y) || list.len() > limit {
                    ok = false;
                    break 'bfs;
                }
            }
        }
    }
    ok
}

struct Setup {
    lifts: Vec<usize>,
    fiber: Vec<usize>,
    forbidden: Bits,
    index: usize,
}

/// Lifts of a small generating set of `G/N`, plus the element indices of `N`.
fn setup(g: &FiniteGroup, n: &FiniteGroup) -> Result<Setup> {
    let index = g.order() / n.order();
    let fiber: Vec<usize> = n
        .iter()
        .map(|e| g.index_of(e).expect("N is inside G"))
        .collect();
    let mut forbidden = Bits::new(g.order());
    for &x in &fiber[1..] {
        forbidden.insert(x);
    }
    if index == 1 {
        return Ok(Setup {
            lifts: Vec::new(),
            fiber,
            forbidden,
            index,
        });
    }
    let from_quotient = quotient_lifts(g, n)?;
    let from_gens = generator_lifts(g, n);
    let lifts = if from_gens.len() < from_quotient.len() {
        from_gens
    } else {
        from_quotient
    };
    Ok(Setup {
        lifts,
        fiber,
        forbidden,
        index,
    })
}

fn spans_mod(g: &FiniteGroup, n: &FiniteGroup, ys: &[usize]) -> bool {
    let mut gens: Vec<Permutation> = ys.iter().map(|&y| g.permutation(y)).collect();
    gens.extend(n.generators().iter().cloned());
    g.generate(&gens).order() == g.order()
}

fn prune(g: &FiniteGroup, n: &FiniteGroup, mut ys: Vec<usize>) -> Vec<usize> {
    let mut k = 0;
    while k < ys.len() {
        let mut fewer = ys.clone();
        fewer.remove(k);
        if spans_mod(g, n, &fewer) {
            ys = fewer;
        } else {
            k += 1;
        }
    }
    ys
}

/// The generators of `G` that are needed modulo `N`.
fn generator_lifts(g: &FiniteGroup, n: &FiniteGroup) -> Vec<usize> {
    let mut ys = Vec::new();
    for x in g.generators() {
        let i = g.index_of(x.images()).expect("generator");
        ys.push(i);
        if spans_mod(g, n, &ys) {
            break;
        }
    }
    prune(g, n, ys)
}

/// Least lifts of a greedy generating set of `G/N`, elements of large order first.
fn quotient_lifts(g: &FiniteGroup, n: &FiniteGroup) -> Result<Vec<usize>> {
    let (q, proj) = quotient(g, n)?;
    let mut lift = vec![usize::MAX; q.order()];
    for i in (0..g.order()).rev() {
        lift[proj.map_index(i)] = i;
    }
    let orders = q.element_orders();
    let mut cand: Vec<usize> = (1..q.order()).collect();
    cand.sort_by_key(|&i| std::cmp::Reverse(orders[i]));
    let mut chosen: Vec<Permutation> = Vec::new();
    let mut idx = Vec::new();
    let mut span = FiniteGroup::trivial(q.degree());
    for c in cand {
        if span.order() == q.order() {
            break;
        }
        if span.index_of(q.element(c)).is_none() {
            chosen.push(q.permutation(c));
            idx.push(lift[c]);
            span = q.generate(&chosen);
        }
    }
    Ok(prune(g, n, idx))
}

fn require_normal(g: &FiniteGroup, n: &FiniteGroup) -> Result<()> {
    if !n.is_normal_in(g)? {
        return Err(GroupError::NotNormal);
    }
    Ok(())
}

fn total_tuples(fiber: usize, m: usize) -> u128 {
    (fiber as u128).checked_pow(m as u32).unwrap_or(u128::MAX)
}

/// Depth-first walk over lift tuples in lexicographic order. A prefix whose
/// span already fails discards every extension at once. `accept` sees each
/// complement found and decides whether the walk stops there.
///
/// Returns the accepted complement (as member indices and generators) and the
/// number of tuples up to it, or the full count.
fn walk(
    g: &FiniteGroup,
    s: &Setup,
    accept: &mut dyn FnMut(&[usize], &[usize]) -> bool,
) -> Result<(Option<(Vec<usize>, Vec<usize>)>, u128)> {
    let m = s.lifts.len();
    let total = total_tuples(s.fiber.len(), m);
    if m == 0 {
        let members = vec![0usize];
        return Ok(if accept(&members, &[]) {
            (Some((members, Vec::new())), 1)
        } else {
            (None, 1)
        });
    }
    let limits = Limits::current();
    if total > limits.tuple_cap as u128 {
        return Err(GroupError::SearchSpace {
            tuples: total.to_string(),
            cap: limits.tuple_cap,
        });
    }
    let start = Instant::now();
    let mut ar = Arith::new(g);
    // fiber images of each lift: lift ∘ n_j
    let choices: Vec<Vec<usize>> = s
        .lifts
        .iter()
        .map(|&y| s.fiber.iter().map(|&n| ar.mul(y, n)).collect())
        .collect();
    let f = s.fiber.len();
    let mut pos = vec![0usize; m];
    let mut depth = 0usize;
    let mut seen = Bits::new(g.order());
    let mut list: Vec<usize> = Vec::new();
    let mut gens: Vec<usize> = Vec::with_capacity(m);
    let mut tuple_index: u128 = 0;
    let mut steps = 0u64;
    loop {
        // try the current choice at `depth`
        gens.truncate(depth);
        gens.push(choices[depth][pos[depth]]);
        let ok = bounded_closure(&mut ar, &gens, s.index, &s.forbidden, &mut seen, &mut list);
        steps += 1;
        if steps.is_multiple_of(4096) {
            if let Some(b) = limits.time_budget {
                if start.elapsed() > b {
                    return Err(GroupError::Budget(b));
                }
            }
        }
        let below = total_tuples(f, m - depth - 1);
        if ok && depth + 1 == m {
            if list.len() == s.index && accept(&list, &gens) {
                return Ok((Some((list.clone(), gens.clone())), tuple_index + 1));
            }
            tuple_index += 1;
        } else if ok {
            depth += 1;
            pos[depth] = 0;
            continue;
        } else {
            tuple_index += below;
        }
        // advance to the next sibling, climbing as needed
        loop {
            pos[depth] += 1;
            if pos[depth] < f {
                break;
            }
            if depth == 0 {
                return Ok((None, total));
            }
            depth -= 1;
        }
    }
}

fn report(
    g: &FiniteGroup,
    s: &Setup,
    found: Option<(Vec<usize>, Vec<usize>)>,
    searched: u128,
    method: SearchMethod,
) -> ComplementReport {
    let complement = found.map(|(members, gens)| {
        let mut bits = Bits::new(g.order());
        for x in members {
            bits.insert(x);
        }
        g.subgroup_from_bits(&bits, &gens)
    });
    ComplementReport {
        exists: complement.is_some(),
        complement,
        search_space: searched.min(u64::MAX as u128) as u64,
        total_tuples: total_tuples(s.fiber.len(), s.lifts.len()).min(u64::MAX as u128) as u64,
        generators: s.lifts.len(),
        method,
    }
}

/// Decides whether `N ⊴ G` has a complement.
pub fn find_complement(g: &FiniteGroup, n: &FiniteGroup) -> Result<ComplementReport> {
    require_normal(g, n)?;
    let s = setup(g, n)?;
    let (found, searched) = walk(g, &s, &mut |_, _| true)?;
    let rep = report(g, &s, found, searched, SearchMethod::LiftSearch);
    if let Some(k) = &rep.complement {
        verify_complement(g, n, k)?;
    }
    Ok(rep)
}

/// Same decision relative to a subgroup `H` with `N ⊴ H`.
pub fn find_complement_in(h: &FiniteGroup, n: &FiniteGroup) -> Result<ComplementReport> {
    find_complement(h, n)
}

/// Complement search for complements that contain the normal subgroup `hint`.
///
/// The walk runs in `G/R` for `R = hint` and each complement of `NR/R` found
/// there is pulled back; the pull-back is a complement of `N` exactly when its
/// order is `|G:N|`. When `R` lies in every complement this decides existence.
pub fn find_complement_hinted(
    g: &FiniteGroup,
    n: &FiniteGroup,
    hint: &FiniteGroup,
) -> Result<ComplementReport> {
    require_normal(g, n)?;
    require_normal(g, hint)?;
    let (qg, proj) = quotient(g, hint)?;
    let qn = proj.image_of(n);
    let s = setup(&qg, &qn)?;
    let target = g.order() / n.order();
    let mut pulled: Option<FiniteGroup> = None;
    let (found, searched) = walk(&qg, &s, &mut |_, gens| {
        let mut pre: Vec<Permutation> = gens
            .iter()
            .map(|&i| {
                proj.preimage(&qg.permutation(i))
                    .expect("projection is onto")
            })
            .collect();
        pre.extend(hint.generators().iter().cloned());
        let k = g.generate(&pre);
        if k.order() == target && intersection(&k, n).is_trivial() {
            pulled = Some(k);
            true
        } else {
            false
        }
    })?;
    debug_assert_eq!(found.is_some(), pulled.is_some());
    let mut rep = report(
        &qg,
        &s,
        None,
        searched,
        SearchMethod::QuotientReducedLiftSearch,
    );
    if let Some(k) = pulled {
        verify_complement(g, n, &k)?;
        rep.exists = true;
        rep.complement = Some(k);
    }
    Ok(rep)
}

/// Re-checks `KN = G` and `K ∩ N = 1`.
pub fn verify_complement(g: &FiniteGroup, n: &FiniteGroup, k: &FiniteGroup) -> Result<()> {
    if !k.is_subgroup_of(g)? {
        return Err(GroupError::Verification(
            "complement is not a subgroup".into(),
        ));
    }
    if !intersection(k, n).is_trivial() {
        return Err(GroupError::Verification("complement meets N".into()));
    }
    if k.order() * n.order() != g.order() {
        return Err(GroupError::Verification("KN is not the whole group".into()));
    }
    Ok(())
}

pub fn is_complement(g: &FiniteGroup, n: &FiniteGroup, k: &FiniteGroup) -> bool {
    verify_complement(g, n, k).is_ok()
}

/// Every complement of `N` in `G`.
pub fn all_complements(g: &FiniteGroup, n: &FiniteGroup) -> Result<Vec<FiniteGroup>> {
    require_normal(g, n)?;
    let s = setup(g, n)?;
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    walk(g, &s, &mut |members, gens| {
        let mut m = members.to_vec();
        m.sort_unstable();
        found.push((m, gens.to_vec()));
        false
    })?;
    found.sort();
    found.dedup_by(|a, b| a.0 == b.0);
    Ok(found
        .into_iter()
        .map(|(members, gens)| {
            let mut bits = Bits::new(g.order());
            for x in members {
                bits.insert(x);
            }
            g.subgroup_from_bits(&bits, &gens)
        })
        .collect())
}

/// True when all complements are conjugate in `G` (vacuously when there are none).
pub fn complements_conjugate(g: &FiniteGroup, n: &FiniteGroup) -> Result<bool> {
    let all = all_complements(g, n)?;
    let Some(first) = all.first() else {
        return Ok(true);
    };
    let orbit = conjugacy_orbit(g, first);
    Ok(all.len() == orbit.len() && all.iter().all(|k| orbit.contains(&key(k))))
}

fn key(h: &FiniteGroup) -> Vec<Point> {
    h.iter().flatten().copied().collect()
}

/// Element sets of the conjugates of `H` under `G`.
pub fn conjugacy_orbit(g: &FiniteGroup, h: &FiniteGroup) -> HashSet<Vec<Point>> {
    let mut seen = HashSet::new();
    seen.insert(key(h));
    let mut queue = vec![h.clone()];
    while let Some(cur) = queue.pop() {
        for x in g.generators() {
            let c = conjugate_subgroup(&cur, x);
            if seen.insert(key(&c)) {
                queue.push(c);
            }
        }
    }
    seen
}

/// A subgroup `H₁ ≤ H` of least order with `H₁N = G`.
///
/// Least order makes it inclusion-minimal, and then `H₁ ∩ N ≤ Φ(H₁)` and
/// `H₁` has the same prime divisors as `|G:N|`; both are checked.
pub fn minimal_supplement(
    g: &FiniteGroup,
    n: &FiniteGroup,
    h: &FiniteGroup,
) -> Result<FiniteGroup> {
    require_normal(g, n)?;
    if !h.is_subgroup_of(g)? {
        return Err(GroupError::Precondition("H is not a subgroup of G".into()));
    }
    let supplements =
        |m: &FiniteGroup| m.order() * n.order() == g.order() * intersection(m, n).order();
    if !supplements(h) {
        return Err(GroupError::Precondition("G is not HN".into()));
    }
    let lattice = Lattice::new(h)?;
    let h1 = (0..lattice.len())
        .map(|i| lattice.subgroup(i))
        .find(|m| supplements(m))
        .expect("H itself supplements N");
    let meet = intersection(&h1, n);
    let phi = crate::lattice::frattini(&h1)?;
    if !meet.is_subgroup_of(&phi)? {
        return Err(GroupError::Verification(
            "H₁ ∩ N is not inside Φ(H₁)".into(),
        ));
    }
    if prime_divisors(h1.order() as u64) != prime_divisors((g.order() / n.order()) as u64) {
        return Err(GroupError::Verification(
            "H₁ and |G:N| have different prime divisors".into(),
        ));
    }
    Ok(h1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{alternating, cyclic, direct_product, quaternion8, symmetric};
    use crate::perm::{center, derived_subgroup, normal_subgroups};

    #[test]
    fn a4_splits_over_v4() {
        let a4 = alternating(4).unwrap();
        let v4 = derived_subgroup(&a4);
        let r = find_complement(&a4, &v4).unwrap();
        assert!(r.exists);
        assert_eq!(r.complement.unwrap().order(), 3);
        let all = all_complements(&a4, &v4).unwrap();
        assert_eq!(all.len(), 4);
        assert!(complements_conjugate(&a4, &v4).unwrap());
    }

    #[test]
    fn q8_does_not_split_over_its_center() {
        let q8 = quaternion8().unwrap();
        let z = center(&q8);
        let r = find_complement(&q8, &z).unwrap();
        assert!(!r.exists);
        assert_eq!(r.search_space, r.total_tuples);
        assert_eq!(r.total_tuples, 4);
    }

    #[test]
    fn degenerate_cases() {
        let s4 = symmetric(4).unwrap();
        let r = find_complement_in(&s4, &s4).unwrap();
        assert!(r.exists && r.complement.unwrap().is_trivial());
        let one = FiniteGroup::trivial(4);
        assert_eq!(
            find_complement(&s4, &one)
                .unwrap()
                .complement
                .unwrap()
                .order(),
            24
        );
        let a4 = derived_subgroup(&s4);
        assert_eq!(
            find_complement(&s4, &a4)
                .unwrap()
                .complement
                .unwrap()
                .order(),
            2
        );
        let t = s4.generate(&[s4.generators()[0].clone()]);
        assert_eq!(find_complement(&s4, &t).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn counts_of_complements() {
        let s3 = symmetric(3).unwrap();
        let c3 = derived_subgroup(&s3);
        assert_eq!(all_complements(&s3, &c3).unwrap().len(), 3);
        assert!(complements_conjugate(&s3, &c3).unwrap());

        let c2 = cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        let factor = v.left_image();
        assert_eq!(all_complements(&v.group, &factor).unwrap().len(), 2);
        assert!(!complements_conjugate(&v.group, &factor).unwrap());
    }

    #[test]
    fn hinted_search_agrees_on_small_groups() {
        let s4 = symmetric(4).unwrap();
        let ns = normal_subgroups(&s4);
        for n in &ns {
            let plain = find_complement(&s4, n).unwrap();
            let trivial = FiniteGroup::trivial(4);
            let hinted = find_complement_hinted(&s4, n, &trivial).unwrap();
            assert_eq!(plain.exists, hinted.exists);
        }
    }

    #[test]
    fn minimal_supplements() {
        let s4 = symmetric(4).unwrap();
        let a4 = derived_subgroup(&s4);
        assert_eq!(minimal_supplement(&s4, &a4, &s4).unwrap().order(), 2);
        let q8 = quaternion8().unwrap();
        assert_eq!(
            minimal_supplement(&q8, &center(&q8), &q8).unwrap().order(),
            8
        );
        let one = FiniteGroup::trivial(4);
        assert_eq!(minimal_supplement(&s4, &one, &s4).unwrap().order(), 24);
        assert!(minimal_supplement(&s4, &one, &a4).is_err());
    }
}
