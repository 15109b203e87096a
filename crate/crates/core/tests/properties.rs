mod common;

use std::sync::OnceLock;

use gaschutz_core::automorphisms::aut_group;
use gaschutz_core::complements::{find_complement, verify_complement};
use gaschutz_core::engine::verdict;
use gaschutz_core::perm::{
    center, derived_subgroup, normal_subgroups, p_part, prime_divisors, quotient, sylow,
};
use gaschutz_core::{FiniteGroup, GroupError, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn gens(degree: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(degree), 1..4)
}

fn catalog() -> &'static [(String, FiniteGroup)] {
    static GROUPS: OnceLock<Vec<(String, FiniteGroup)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        common::small(&common::catalog_groups(), 63)
            .into_iter()
            .cloned()
            .collect()
    })
}

fn catalog_group() -> impl Strategy<Value = &'static (String, FiniteGroup)> {
    (0..catalog().len()).prop_map(|i| &catalog()[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_laws(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(-1), a.inverse());
        prop_assert_eq!(a.conjugate_by(&b).order(), a.order());
        let cycles = a.cycles();
        let slices: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        let rebuilt = Permutation::from_cycles(7, &slices).unwrap();
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn closure_ignores_generator_order(mut g in gens(6)) {
        let a = FiniteGroup::closure(&g, 6).unwrap();
        g.reverse();
        let b = FiniteGroup::closure(&g, 6).unwrap();
        prop_assert!(a.same_elements(&b));
        prop_assert!(a.element_orders().iter().all(|&o| a.order().is_multiple_of(o as usize)));
    }

    #[test]
    fn lagrange_and_quotients(g in gens(6), k in 0usize..3) {
        let grp = FiniteGroup::closure(&g, 6).unwrap();
        let sub = grp.subgroup(&g[..=k.min(g.len() - 1)]).unwrap();
        prop_assert_eq!(grp.order() % sub.order(), 0);
        for n in normal_subgroups(&grp) {
            let (q, proj) = quotient(&grp, &n).unwrap();
            prop_assert_eq!(q.order() * n.order(), grp.order());
            prop_assert!(proj.kernel().same_elements(&n));
        }
    }

    #[test]
    fn sylow_and_center(g in gens(6)) {
        let grp = FiniteGroup::closure(&g, 6).unwrap();
        for p in prime_divisors(grp.order() as u64) {
            let s = sylow(&grp, p).unwrap();
            prop_assert_eq!(s.order() as u64, p_part(grp.order() as u64, p));
        }
        let z = center(&grp);
        prop_assert!(z.permutations().all(|x| grp.permutations().all(|y| x.commutes_with(&y))));
        prop_assert!(derived_subgroup(&grp).is_normal_in(&grp).unwrap());
    }

    #[test]
    fn found_complements_verify(entry in catalog_group()) {
        let (name, g) = entry;
        for n in normal_subgroups(g) {
            let r = find_complement(g, &n).unwrap();
            prop_assert!(r.search_space <= r.total_tuples);
            if let Some(k) = &r.complement {
                prop_assert!(verify_complement(g, &n, k).is_ok(), "{}", name);
            }
        }
    }

    #[test]
    fn automorphisms_preserve_products(entry in catalog_group(), i in any::<prop::sample::Index>()) {
        let (_, g) = entry;
        prop_assume!(g.order() <= 24);
        let aut = match aut_group(g) {
            Err(GroupError::SizeLimit { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let gamma = aut.carrier.permutation(i.index(aut.order()));
        for x in g.permutations() {
            for y in g.generators() {
                let lhs = aut.apply(&gamma, &x.compose(y)).unwrap();
                let rhs = aut.apply(&gamma, &x).unwrap().compose(&aut.apply(&gamma, y).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
        prop_assert_eq!(aut.inn.order() * center(g).order(), g.order());
    }

    #[test]
    fn verdicts_are_deterministic(entry in catalog_group()) {
        let (_, g) = entry;
        let a = verdict(g);
        let b = verdict(g);
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.rule, b.rule);
    }
}

#[test]
fn aut_oracle_on_tiny_groups() {
    let t = common::aut_oracle(catalog(), 8);
    assert!(t.passed(), "{}", t.summary());
}

#[test]
fn huppert_containment_on_catalog() {
    let t = common::huppert(catalog());
    assert!(t.passed(), "{}", t.summary());
}
