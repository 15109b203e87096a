//! One pass/fail line per acceptance criterion, each against a pinned time budget.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gaschutz_core::automorphisms::{aut_group, prop_special_search, rose_criterion};
use gaschutz_core::catalog::{bundled_catalog, parse_name};
use gaschutz_core::complements::{find_complement, find_complement_in};
use gaschutz_core::engine::{verdict, Rule, Status};
use gaschutz_core::perm::{center, derived_subgroup, intersection, is_abelian};
use gaschutz_core::witness::{baer_bundle, build_znthm, verify_znthm};
use gaschutz_core::FiniteGroup;

use common::{catalog_groups, small, Tally};

const MINUTE: Duration = Duration::from_secs(60);

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line {
        ok,
        detail: detail.into(),
    }
}

fn from_tally(t: &Tally) -> Line {
    line(t.passed(), t.summary())
}

fn group(name: &str) -> FiniteGroup {
    parse_name(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn baer() -> Line {
    let b = baer_bundle().expect("bundle verifies");
    let [g, h, n] = b.orders();
    let in_h = find_complement_in(&b.embedding.h, &b.embedding.n).unwrap();
    let in_g = find_complement(&b.embedding.g, &b.embedding.n).unwrap();
    let ok = [g, h, n] == [48, 16, 8]
        && in_h.exists
        && in_h.complement.as_ref().is_some_and(|k| k.order() == 2)
        && !in_g.exists
        && in_g.search_space == in_g.total_tuples;
    line(
        ok,
        format!(
            "orders {g}/{h}/{n}, {} tuples searched in G",
            in_g.total_tuples
        ),
    )
}

fn verdict_table() -> Line {
    let mut expected: Vec<(String, Status, Option<Rule>)> = Vec::new();
    for name in ["C1", "C2", "C6", "C2^3", "C4xC2", "C3^2", "C5^2", "C12xC2"] {
        expected.push((name.into(), Status::Holds, Some(Rule::Abelian)));
    }
    for name in ["S3", "A4", "D10"] {
        expected.push((name.into(), Status::Holds, Some(Rule::SylowAbelian)));
    }
    let mut p_cubed = 0;
    for e in bundled_catalog() {
        let g = e.group().unwrap();
        let o = g.order() as u64;
        let is_p_cubed = [2u64, 3].iter().any(|p| o == p * p * p);
        if is_p_cubed && !is_abelian(&g) {
            p_cubed += 1;
            expected.push((e.name.clone(), Status::Fails, Some(Rule::ZnThm)));
        }
    }
    for name in ["Q8", "D8", "SL23"] {
        expected.push((name.into(), Status::Fails, Some(Rule::ZnThm)));
    }
    expected.push(("S4".into(), Status::Holds, Some(Rule::Rose)));
    expected.push(("C5^2:Q8".into(), Status::Fails, None));
    expected.push(("(C3^2:Q8)xC2".into(), Status::Undecided, None));

    let start = Instant::now();
    let mut wrong = Vec::new();
    for (name, status, rule) in &expected {
        let g = parse_name(name).or_else(|_| {
            bundled_catalog()
                .into_iter()
                .find(|e| &e.name == name)
                .unwrap()
                .group()
        });
        let v = verdict(&g.unwrap());
        if v.status != *status || (rule.is_some() && v.rule != *rule) {
            wrong.push(format!("{name}: {} {:?}", v.status, v.rule));
        }
    }
    let elapsed = start.elapsed();
    let a6_start = Instant::now();
    let a6 = verdict(&group("A6"));
    let a6_time = a6_start.elapsed();
    if a6.status != Status::Fails {
        wrong.push(format!("A6: {}", a6.status));
    }
    let ok = wrong.is_empty()
        && p_cubed >= 4
        && elapsed < Duration::from_secs(30)
        && a6_time < 60 * MINUTE;
    line(
        ok,
        format!(
            "{} groups ({p_cubed} nonabelian of order p³) in {elapsed:.2?}, A6 in {a6_time:.2?}{}",
            expected.len() + 1,
            if wrong.is_empty() {
                String::new()
            } else {
                format!("; wrong: {}", wrong.join(", "))
            }
        ),
    )
}

fn znthm() -> Line {
    let mut details = Vec::new();
    let mut ok = true;
    for name in ["D8", "Q8"] {
        let start = Instant::now();
        let n = group(name);
        let q = 3u32;
        // order arithmetic |N × W| / |z| with |W| = |N|^q · q and |z| prime
        let z = intersection(&center(&n), &derived_subgroup(&n)).order();
        let expect_g = n.order().pow(q + 1) * q as usize / z;
        let expect_h = n.order().pow(q + 1) / z;
        let b = build_znthm(&n, q as u64).and_then(|b| verify_znthm(b, true));
        let elapsed = start.elapsed();
        match b {
            Ok(b) => {
                let [g, h, _] = b.orders();
                let r = b.nonexistence.as_ref().unwrap();
                let good = g == 6144
                    && g == expect_g
                    && h == 2048
                    && h == expect_h
                    && g / h == 3
                    && !r.exists
                    && r.search_space == r.total_tuples
                    && elapsed < 30 * MINUTE;
                ok &= good;
                details.push(format!(
                    "{name}: {g}/{h}, {} reduced tuples, {elapsed:.2?}",
                    r.total_tuples
                ));
            }
            Err(e) => {
                ok = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    line(ok, details.join("; "))
}

fn rose_values() -> Line {
    let mut details = Vec::new();
    let mut ok = true;
    for (name, want, budget) in [
        ("S3", true, MINUTE),
        ("S4", true, MINUTE),
        ("S5", true, MINUTE),
        ("C3^2:Q8", true, MINUTE),
        ("C5^2:D8", true, MINUTE),
        ("A6", false, 60 * MINUTE),
    ] {
        let start = Instant::now();
        let got = rose_criterion(&group(name));
        let elapsed = start.elapsed();
        let good = got.as_ref().is_ok_and(|&r| r == want) && elapsed < budget;
        ok &= good;
        if !good || name == "A6" {
            details.push(format!("{name}: {got:?} in {elapsed:.2?}"));
        }
    }
    line(
        ok,
        if details.is_empty() {
            "all as expected".into()
        } else {
            details.join("; ")
        },
    )
}

fn aut_sanity(groups: &[(String, FiniteGroup)]) -> Line {
    let q8 = aut_group(&group("Q8")).map(|a| a.order());
    let wr = aut_group(&group("S3wrC2")).map(|a| a.order());
    let oracle = common::aut_oracle(groups, 12);
    let ok = q8 == Ok(24) && wr == Ok(144) && oracle.passed();
    line(
        ok,
        format!(
            "|Aut(Q8)| = {q8:?}, |Aut(S3wrC2)| = {wr:?}, oracle: {}",
            oracle.summary()
        ),
    )
}

fn prop_special() -> Line {
    let start = Instant::now();
    let n = group("S3wrC2");
    let hit = prop_special_search(&n);
    let v = verdict(&n);
    let elapsed = start.elapsed();
    let ok = hit.as_ref().is_ok_and(|h| h.is_some())
        && v.status == Status::Fails
        && elapsed < 10 * MINUTE;
    let k = hit.ok().flatten().map(|(_, k)| k);
    line(
        ok,
        format!(
            "k = {k:?}, verdict {} by {:?}, {elapsed:.2?}",
            v.status, v.rule
        ),
    )
}

fn property_suites(groups: &[(String, FiniteGroup)]) -> Line {
    let suites: Vec<(&str, Tally)> = vec![
        ("Schur-Zassenhaus", common::schur_zassenhaus(groups)),
        ("abelian Gaschutz", common::gaschutz_abelian(groups)),
        ("Semetkov", common::semetkov(groups)),
        (
            "minimal supplement",
            common::minimal_supplements(groups, 200, 0x5eed),
        ),
        ("Yonaha", common::yonaha(groups)),
        ("Huppert", common::huppert(groups)),
        ("Dedekind", common::dedekind(groups)),
        ("mutual exclusion", common::mutual_exclusion(groups)),
    ];
    let ok = suites.iter().all(|(_, t)| t.passed());
    let detail = suites
        .iter()
        .map(|(n, t)| format!("{n} {}", t.summary()))
        .collect::<Vec<_>>()
        .join(", ");
    line(ok, detail)
}

fn oracle_equivalence(groups: &[(String, FiniteGroup)]) -> Line {
    from_tally(&common::oracle_equivalence(groups, 200))
}

fn main() {
    let groups = catalog_groups();
    // catalog groups together with the named larger ones
    let suite_groups: Vec<(String, FiniteGroup)> =
        small(&groups, 200).into_iter().cloned().collect();
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Line + '_>)> = vec![
        ("Baer example", Duration::from_secs(1), Box::new(baer)),
        ("verdict table", 61 * MINUTE, Box::new(verdict_table)),
        ("ZNthm witnesses", 60 * MINUTE, Box::new(znthm)),
        ("Rose values", 65 * MINUTE, Box::new(rose_values)),
        ("Aut sanity", 10 * MINUTE, Box::new(|| aut_sanity(&groups))),
        ("special search", 10 * MINUTE, Box::new(prop_special)),
        (
            "property suites",
            30 * MINUTE,
            Box::new(|| property_suites(&suite_groups)),
        ),
        (
            "oracle equivalence",
            30 * MINUTE,
            Box::new(|| oracle_equivalence(&suite_groups)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            line(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let ok = result.ok && elapsed <= *budget;
        failed += !ok as usize;
        println!(
            "criterion {}: {} {name} [{elapsed:.2?} of {budget:?}] {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
