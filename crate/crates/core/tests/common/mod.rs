//! Catalog-wide checks shared by the acceptance and property targets.
#![allow(dead_code)]

use std::collections::HashSet;

use gaschutz_core::automorphisms::aut_group;
use gaschutz_core::catalog::bundled_catalog;
use gaschutz_core::complements::{
    complements_conjugate, find_complement, find_complement_in, minimal_supplement,
};
use gaschutz_core::engine::{has_contradiction, verdict_exhaustive};
use gaschutz_core::lattice::{frattini, Lattice};
use gaschutz_core::perm::{
    center, derived_subgroup, gcd, intersection, is_abelian, is_metabelian, nilpotent_residual,
    normal_subgroups, prime_divisors, sylow,
};
use gaschutz_core::FiniteGroup;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one catalog-wide check.
#[derive(Default, Debug)]
pub struct Tally {
    pub cases: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.cases > 0
    }

    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => format!("{} cases", self.cases),
            Some(v) => format!(
                "{} of {} cases violated, first: {v}",
                self.violations.len(),
                self.cases
            ),
        }
    }
}

/// Catalog groups of order at most 63 plus the named larger ones.
pub fn catalog_groups() -> Vec<(String, FiniteGroup)> {
    bundled_catalog()
        .iter()
        .map(|e| {
            (
                e.name.clone(),
                e.group().expect("bundled entries are valid"),
            )
        })
        .collect()
}

pub fn small(groups: &[(String, FiniteGroup)], max: usize) -> Vec<&(String, FiniteGroup)> {
    groups.iter().filter(|(_, g)| g.order() <= max).collect()
}

fn coprime(a: usize, b: usize) -> bool {
    gcd(a as u64, b as u64) == 1
}

fn meet_order(a: &FiniteGroup, b: &FiniteGroup) -> usize {
    a.permutations().filter(|x| b.contains(x)).count()
}

/// Subgroup-enumeration oracle: some subgroup of order `|G:N|` meets `N` trivially.
pub fn oracle_has_complement(lattice: &[FiniteGroup], g: &FiniteGroup, n: &FiniteGroup) -> bool {
    let want = g.order() / n.order();
    lattice
        .iter()
        .any(|k| k.order() == want && meet_order(k, n) == 1)
}

fn is_complement_by_elements(g: &FiniteGroup, n: &FiniteGroup, k: &FiniteGroup) -> bool {
    k.order() * n.order() == g.order()
        && meet_order(k, n) == 1
        && k.permutations().all(|x| g.contains(&x))
}

pub fn schur_zassenhaus(groups: &[(String, FiniteGroup)]) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups {
        for n in normal_subgroups(g) {
            if coprime(n.order(), g.order() / n.order()) {
                let ok = find_complement(g, &n).is_ok_and(|r| r.exists);
                t.check(ok, || {
                    format!("{name}: normal subgroup of order {}", n.order())
                });
            }
        }
    }
    t
}

/// Abelian `N ⊴ G`, `N ≤ H` with `|G:H|` coprime to `|N|`: split in `H` iff split in `G`.
pub fn gaschutz_abelian(groups: &[(String, FiniteGroup)]) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups {
        let Ok(lattice) = Lattice::new(g) else {
            continue;
        };
        let subs = lattice.subgroups();
        for n in normal_subgroups(g)
            .iter()
            .filter(|n| is_abelian(n) && !n.is_trivial())
        {
            let in_g = find_complement(g, n).map(|r| r.exists);
            for h in subs.iter().filter(|h| {
                h.order() % n.order() == 0
                    && coprime(n.order(), g.order() / h.order())
                    && n.is_subgroup_of(h).unwrap_or(false)
            }) {
                let in_h = find_complement_in(h, n).map(|r| r.exists);
                t.check(in_h.is_ok() && in_g.is_ok() && in_h == in_g, || {
                    format!(
                        "{name}: |N| = {}, |H| = {}: in H {in_h:?}, in G {in_g:?}",
                        n.order(),
                        h.order()
                    )
                });
            }
        }
    }
    t
}

/// Abelian Sylow subgroups of `N` complemented in Sylow subgroups of `G` for
/// every prime of `|G:N|` force a complement.
pub fn semetkov(groups: &[(String, FiniteGroup)]) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups {
        for n in normal_subgroups(g) {
            let index = (g.order() / n.order()) as u64;
            let hypothesis = prime_divisors(index).into_iter().all(|p| {
                let s = sylow(g, p).expect("prime");
                let p_n = intersection(&s, &n);
                is_abelian(&p_n) && find_complement_in(&s, &p_n).is_ok_and(|r| r.exists)
            });
            if hypothesis && index > 1 {
                let ok = find_complement(g, &n).is_ok_and(|r| r.exists);
                t.check(ok, || format!("{name}: |N| = {}", n.order()));
            }
        }
    }
    t
}

/// Minimal supplements on random `(G, N, H)` with `G = HN`.
pub fn minimal_supplements(groups: &[(String, FiniteGroup)], instances: usize, seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<(&String, &FiniteGroup, Vec<FiniteGroup>)> = groups
        .iter()
        .filter(|(_, g)| g.order() > 1 && g.order() <= 63)
        .filter_map(|(name, g)| Lattice::new(g).ok().map(|l| (name, g, l.subgroups())))
        .collect();
    let mut t = Tally::default();
    while t.cases < instances {
        let (name, g, subs) = pool.choose(&mut rng).expect("nonempty pool");
        let normals = normal_subgroups(g);
        let n = &normals[rng.gen_range(0..normals.len())];
        let sup: Vec<&FiniteGroup> = subs
            .iter()
            .filter(|h| h.order() * n.order() == g.order() * meet_order(h, n))
            .collect();
        let h = sup[rng.gen_range(0..sup.len())];
        let Ok(h1) = minimal_supplement(g, n, h) else {
            t.check(false, || format!("{name}: minimal_supplement failed"));
            continue;
        };
        let meet = intersection(&h1, n);
        let phi = frattini(&h1).expect("small");
        let inside = h1.permutations().all(|x| h.contains(&x));
        let product = h1.order() * n.order() == g.order() * meet.order();
        let frat = meet.permutations().all(|x| phi.contains(&x));
        let primes =
            prime_divisors(h1.order() as u64) == prime_divisors((g.order() / n.order()) as u64);
        t.check(inside && product && frat && primes, || {
            format!(
                "{name}: |N| = {}, |H| = {}, |H1| = {}",
                n.order(),
                h.order(),
                h1.order()
            )
        });
    }
    t
}

/// Metabelian with `Z(G) ∩ G′ = 1`: `G′` is the nilpotent residual, is
/// complemented, and its complements are conjugate.
pub fn yonaha(groups: &[(String, FiniteGroup)]) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups {
        let d = derived_subgroup(g);
        if !is_metabelian(g) || !intersection(&center(g), &d).is_trivial() {
            continue;
        }
        let residual = nilpotent_residual(g) == d;
        let exists = find_complement(g, &d).is_ok_and(|r| r.exists);
        let conjugate = complements_conjugate(g, &d).unwrap_or(false);
        t.check(residual && exists && conjugate, || {
            format!("{name}: residual {residual}, exists {exists}, conjugate {conjugate}")
        });
    }
    t
}

/// `Z(G) ∩ G′ ∩ P ≤ P′` for every Sylow subgroup `P`.
pub fn huppert(groups: &[(String, FiniteGroup)]) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups {
        let zd = intersection(&center(g), &derived_subgroup(g));
        for p in prime_divisors(g.order() as u64) {
            let s = sylow(g, p).expect("prime");
            let lhs = intersection(&zd, &s);
            let sd = derived_subgroup(&s);
            t.check(lhs.permutations().all(|x| sd.contains(&x)), || {
                format!("{name}: p = {p}")
            });
        }
    }
    t
}

/// For a complement `K` of `N` in `G` and `N ≤ H ≤ G`, `H ∩ K` complements `N` in `H`.
pub fn dedekind(groups: &[(String, FiniteGroup)]) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups {
        let Ok(lattice) = Lattice::new(g) else {
            continue;
        };
        let subs = lattice.subgroups();
        for n in normal_subgroups(g) {
            let Ok(r) = find_complement(g, &n) else {
                continue;
            };
            let Some(k) = r.complement else { continue };
            for h in subs
                .iter()
                .filter(|h| h.order() % n.order() == 0 && n.is_subgroup_of(h).unwrap_or(false))
            {
                let hk = intersection(h, &k);
                t.check(is_complement_by_elements(h, &n, &hk), || {
                    format!("{name}: |N| = {}, |H| = {}", n.order(), h.order())
                });
            }
        }
    }
    t
}

pub fn mutual_exclusion(groups: &[(String, FiniteGroup)]) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups {
        t.check(!has_contradiction(&verdict_exhaustive(g)), || name.clone());
    }
    t
}

/// `find_complement` against subgroup enumeration, on every normal subgroup.
pub fn oracle_equivalence(groups: &[(String, FiniteGroup)], max_order: usize) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups.iter().filter(|(_, g)| g.order() <= max_order) {
        let lattice = Lattice::new(g).expect("within lattice limits").subgroups();
        for n in normal_subgroups(g) {
            let oracle = oracle_has_complement(&lattice, g, &n);
            let found = find_complement(g, &n);
            let ok = match &found {
                Ok(r) => {
                    r.exists == oracle
                        && r.complement
                            .as_ref()
                            .is_none_or(|k| is_complement_by_elements(g, &n, k))
                }
                Err(_) => false,
            };
            t.check(ok, || {
                format!(
                    "{name}: |N| = {}, oracle {oracle}, search {:?}",
                    n.order(),
                    found.map(|r| r.exists)
                )
            });
        }
    }
    t
}

/// Every automorphism, by backtracking over bijections of the elements with
/// the multiplication checked on each assigned pair.
pub fn oracle_automorphisms(g: &FiniteGroup) -> HashSet<Vec<usize>> {
    let n = g.order();
    let elems: Vec<Vec<u16>> = g.iter().map(|e| e.to_vec()).collect();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let prod: Vec<u16> = elems[b].iter().map(|&x| elems[a][x as usize]).collect();
                    elems.iter().position(|e| *e == prod).expect("closed")
                })
                .collect()
        })
        .collect();
    let identity = (0..n)
        .find(|&i| elems[i].iter().enumerate().all(|(j, &x)| j == x as usize))
        .unwrap();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = HashSet::new();
    fn consistent(f: &[usize], mul: &[Vec<usize>], i: usize) -> bool {
        (0..=i).all(|j| {
            [(i, j), (j, i)].iter().all(|&(a, b)| {
                let c = mul[a][b];
                f[c] == usize::MAX || f[c] == mul[f[a]][f[b]]
            })
        })
    }
    fn go(
        i: usize,
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        mul: &[Vec<usize>],
        out: &mut HashSet<Vec<usize>>,
    ) {
        let n = f.len();
        if i == n {
            let homomorphic = (0..n).all(|a| (0..n).all(|b| f[mul[a][b]] == mul[f[a]][f[b]]));
            if homomorphic {
                out.insert(f.clone());
            }
            return;
        }
        if f[i] != usize::MAX {
            go(i + 1, f, used, mul, out);
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            f[i] = v;
            used[v] = true;
            if consistent(f, mul, i) {
                go(i + 1, f, used, mul, out);
            }
            used[v] = false;
            f[i] = usize::MAX;
        }
    }
    f[identity] = identity;
    used[identity] = true;
    go(0, &mut f, &mut used, &mul, &mut out);
    out
}

pub fn aut_oracle(groups: &[(String, FiniteGroup)], max_order: usize) -> Tally {
    let mut t = Tally::default();
    for (name, g) in groups.iter().filter(|(_, g)| g.order() <= max_order) {
        let oracle = oracle_automorphisms(g);
        let aut = aut_group(g);
        let found: Option<HashSet<Vec<usize>>> = aut
            .as_ref()
            .ok()
            .map(|a| a.carrier.permutations().map(|p| p.to_vec()).collect());
        t.check(found.as_ref() == Some(&oracle), || {
            format!(
                "{name}: oracle {} automorphisms, engine {:?}",
                oracle.len(),
                found.map(|f| f.len())
            )
        });
    }
    t
}
