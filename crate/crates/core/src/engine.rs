//! Rule-based verdicts on whether every locally split normal embedding of `N`
//! splits globally.
//!
//! Each rule is a sufficient condition for one answer. They are tried
//! cheapest first; a rule that cannot be evaluated within the configured
//! limits is skipped with a note, never guessed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automorphisms::{
    aut_group, is_characteristic_in, prop_special_with, rose_criterion, rose_with, AutGroup,
};
use crate::complements::find_complement;
use crate::error::GroupError;
use crate::perm::{
    all_sylow_abelian, center, derived_subgroup, gcd, intersection, is_abelian, normal_subgroups,
    prime_divisors, quotient, FiniteGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "abelian")]
    Abelian,
    #[serde(rename = "sylow-abelian")]
    SylowAbelian,
    #[serde(rename = "ZNthm")]
    ZnThm,
    #[serde(rename = "metabelian-trivial-ZcapD")]
    MetabelianTrivialZcapD,
    #[serde(rename = "perfect-split")]
    PerfectSplit,
    #[serde(rename = "perfect-no-split")]
    PerfectNoSplit,
    #[serde(rename = "rose")]
    Rose,
    #[serde(rename = "prop-special")]
    PropSpecial,
    #[serde(rename = "composite-2.8")]
    Composite,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Abelian,
        Rule::SylowAbelian,
        Rule::ZnThm,
        Rule::MetabelianTrivialZcapD,
        Rule::PerfectSplit,
        Rule::PerfectNoSplit,
        Rule::Rose,
        Rule::PropSpecial,
        Rule::Composite,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Abelian => "abelian",
            Rule::SylowAbelian => "sylow-abelian",
            Rule::ZnThm => "ZNthm",
            Rule::MetabelianTrivialZcapD => "metabelian-trivial-ZcapD",
            Rule::PerfectSplit => "perfect-split",
            Rule::PerfectNoSplit => "perfect-no-split",
            Rule::Rose => "rose",
            Rule::PropSpecial => "prop-special",
            Rule::Composite => "composite-2.8",
        }
    }

    pub fn status(self) -> Status {
        match self {
            Rule::ZnThm | Rule::PerfectNoSplit | Rule::PropSpecial => Status::Fails,
            _ => Status::Holds,
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Rule::Abelian => "an abelian normal subgroup complemented in a subgroup of coprime index is complemented",
            Rule::SylowAbelian => "the same conclusion holds when every Sylow subgroup of N is abelian",
            Rule::ZnThm => "a nontrivial Z(N) ∩ N′ yields a wreath-product counterexample",
            Rule::MetabelianTrivialZcapD => "metabelian N with Z(N) ∩ N′ = 1 satisfies the theorem",
            Rule::PerfectSplit => "perfect centerless N satisfies the theorem when Inn(N) splits in Aut(N)",
            Rule::PerfectNoSplit => "perfect centerless N fails the theorem when Inn(N) does not split in Aut(N)",
            Rule::Rose => "Z(N) = 1 with Inn(N) complemented in Aut(N) makes N complemented in every overgroup",
            Rule::PropSpecial => "some γ, k with γ^k ∈ Inn(N)′ and (δγ)^k ≠ 1 for all inner δ gives a counterexample",
            Rule::Composite => "characteristic direct factors or a characteristic M with a good quotient N/M",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Pointer to a counterexample construction that can be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRef {
    pub construction: String,
    pub q: u64,
    pub note: String,
}

/// What happened when a rule was tried.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleNote {
    pub rule: Rule,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Fired,
    Inapplicable,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub rule: Option<Rule>,
    pub evidence: Vec<String>,
    pub witness: Option<WitnessRef>,
    pub notes: Vec<RuleNote>,
}

/// Lazily computed facts about `N`, shared by the rules.
struct Facts<'a> {
    n: &'a FiniteGroup,
    center: FiniteGroup,
    derived: FiniteGroup,
    z_cap_d: FiniteGroup,
    aut: Option<std::result::Result<AutGroup, GroupError>>,
    normals: Option<Vec<FiniteGroup>>,
}

impl<'a> Facts<'a> {
    fn new(n: &'a FiniteGroup) -> Self {
        let center = center(n);
        let derived = derived_subgroup(n);
        let z_cap_d = intersection(&center, &derived);
        Facts {
            n,
            center,
            derived,
            z_cap_d,
            aut: None,
            normals: None,
        }
    }

    fn aut(&mut self) -> std::result::Result<&AutGroup, GroupError> {
        let n = self.n;
        self.aut
            .get_or_insert_with(|| aut_group(n))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn normals(&mut self) -> &[FiniteGroup] {
        let n = self.n;
        self.normals.get_or_insert_with(|| normal_subgroups(n))
    }
}

enum Eval {
    Fired(Vec<String>),
    No(String),
    Skip(String),
}

fn skip(e: GroupError) -> Eval {
    Eval::Skip(e.to_string())
}

fn evaluate(rule: Rule, f: &mut Facts<'_>) -> Eval {
    let n = f.n;
    let centerless = f.center.is_trivial();
    match rule {
        Rule::Abelian => {
            if is_abelian(n) {
                Eval::Fired(vec![format!("N is abelian of order {}", n.order())])
            } else {
                Eval::No("N is not abelian".into())
            }
        }
        Rule::SylowAbelian => {
            if all_sylow_abelian(n) {
                Eval::Fired(vec![format!(
                    "every Sylow subgroup of N is abelian (primes {:?})",
                    prime_divisors(n.order() as u64)
                )])
            } else {
                Eval::No("some Sylow subgroup is nonabelian".into())
            }
        }
        Rule::ZnThm => {
            if f.z_cap_d.is_trivial() {
                Eval::No("Z(N)∩N′ = 1".into())
            } else {
                Eval::Fired(vec![format!("Z(N)∩N′ has order {}", f.z_cap_d.order())])
            }
        }
        Rule::MetabelianTrivialZcapD => {
            if !f.z_cap_d.is_trivial() {
                Eval::No("Z(N)∩N′ ≠ 1".into())
            } else if !is_abelian(&f.derived) {
                Eval::No("N is not metabelian".into())
            } else {
                Eval::Fired(vec![
                    format!("N′ of order {} is abelian", f.derived.order()),
                    "Z(N)∩N′ = 1".into(),
                ])
            }
        }
        Rule::PerfectSplit | Rule::PerfectNoSplit => {
            if !centerless || f.derived.order() != n.order() {
                return Eval::No("N is not perfect and centerless".into());
            }
            let aut = match f.aut() {
                Ok(a) => a,
                Err(e) => return skip(e),
            };
            match rose_with(aut) {
                Ok(split) if split == (rule == Rule::PerfectSplit) => Eval::Fired(vec![
                    "N is perfect with trivial center".into(),
                    format!(
                        "Inn(N) {} a complement in Aut(N) (|Aut| = {}, |Out| = {})",
                        if split { "has" } else { "has no" },
                        aut.order(),
                        aut.out_order
                    ),
                ]),
                Ok(_) => Eval::No("splitting of Inn(N) points the other way".into()),
                Err(e) => skip(e),
            }
        }
        Rule::Rose => {
            if !centerless {
                return Eval::No("Z(N) ≠ 1".into());
            }
            let aut = match f.aut() {
                Ok(a) => a,
                Err(e) => return skip(e),
            };
            match rose_with(aut) {
                Ok(true) if aut.out_order == 1 => Eval::Fired(vec![format!(
                    "N is complete: Z(N) = 1 and Aut(N) = Inn(N) of order {}",
                    aut.order()
                )]),
                Ok(true) => Eval::Fired(vec![format!(
                    "Z(N) = 1 and Inn(N) has a complement of order {} in Aut(N)",
                    aut.out_order
                )]),
                Ok(false) => Eval::No("Inn(N) has no complement in Aut(N)".into()),
                Err(e) => skip(e),
            }
        }
        Rule::PropSpecial => {
            if !centerless {
                return Eval::No("Z(N) ≠ 1".into());
            }
            let aut = match f.aut() {
                Ok(a) => a,
                Err(e) => return skip(e),
            };
            match prop_special_with(aut) {
                Some((gamma, k)) => Eval::Fired(vec![format!(
                    "γ of order {} with k = {}: γ^k ∈ Inn(N)′ and no element of γInn(N) has order dividing k",
                    gamma.order(),
                    k
                )]),
                None => Eval::No("no pair (γ, k) found".into()),
            }
        }
        Rule::Composite => composite(f),
    }
}

fn holds(g: &FiniteGroup) -> bool {
    verdict(g).status == Status::Holds
}

fn composite(f: &mut Facts<'_>) -> Eval {
    let n = f.n;
    let normals: Vec<FiniteGroup> = f
        .normals()
        .iter()
        .filter(|m| !m.is_trivial() && m.order() < n.order())
        .cloned()
        .collect();
    if normals.is_empty() {
        return Eval::No("N has no proper nontrivial normal subgroup".into());
    }
    let mut notes = Vec::new();

    // direct decompositions N = A × B
    let mut pairs = Vec::new();
    for (i, a) in normals.iter().enumerate() {
        for b in &normals[i + 1..] {
            if a.order() * b.order() == n.order() && intersection(a, b).is_trivial() {
                let ab = |x: &FiniteGroup, y: &FiniteGroup| {
                    let abel = x.order() / derived_subgroup(x).order();
                    gcd(abel as u64, center(y).order() as u64) == 1
                };
                if ab(a, b) && ab(b, a) {
                    pairs.push((a.clone(), b.clone()));
                } else {
                    notes.push(format!(
                        "factors of orders {} and {} fail the coprimality test",
                        a.order(),
                        b.order()
                    ));
                }
            }
        }
    }

    let aut = match f.aut() {
        Ok(a) => a.clone(),
        Err(e) => {
            return Eval::Skip(format!("characteristic subgroups need Aut(N): {e}"));
        }
    };
    for (a, b) in &pairs {
        let chars = is_characteristic_in(a, &aut).unwrap_or(false)
            && is_characteristic_in(b, &aut).unwrap_or(false);
        if chars && holds(a) && holds(b) {
            return Eval::Fired(vec![format!(
                "N = A × B with characteristic factors of orders {} and {}, both satisfying the theorem",
                a.order(),
                b.order()
            )]);
        }
        notes.push(format!(
            "decomposition {} × {} does not settle N",
            a.order(),
            b.order()
        ));
    }

    let characteristic: Vec<FiniteGroup> = normals
        .into_iter()
        .filter(|m| is_characteristic_in(m, &aut).unwrap_or(false))
        .collect();
    let z_out = (f.center.order() * aut.out_order) as u64;
    for m in &characteristic {
        let quotient_holds = || quotient(n, m).map(|(q, _)| holds(&q)).unwrap_or(false);
        match rose_criterion(m) {
            Ok(true) => {
                if quotient_holds() {
                    return Eval::Fired(vec![format!(
                        "characteristic M of order {} satisfies Rose's criterion and N/M satisfies the theorem",
                        m.order()
                    )]);
                }
                notes.push(format!("M of order {}: N/M not settled", m.order()));
            }
            Ok(false) => notes.push(format!("M of order {}: Rose's criterion fails", m.order())),
            Err(e) => notes.push(format!("M of order {}: {e}", m.order())),
        }
        if gcd(m.order() as u64, z_out) != 1 {
            notes.push(format!(
                "M of order {}: not coprime to |Z(N)||Out(N)| = {z_out}",
                m.order()
            ));
            continue;
        }
        if !all_sylow_abelian(m) {
            continue;
        }
        let split = find_complement(n, m).map(|r| r.exists).unwrap_or(false);
        if split && quotient_holds() {
            return Eval::Fired(vec![format!(
                "characteristic M of order {} is coprime to |Z(N)||Out(N)| = {z_out}, has abelian Sylow subgroups \
                 and a complement, and N/M satisfies the theorem",
                m.order()
            )]);
        }
    }
    Eval::No(if notes.is_empty() {
        "no decomposition applies".into()
    } else {
        notes.join("; ")
    })
}

fn smallest_prime_not_dividing(n: u64) -> u64 {
    (2..)
        .find(|&p| crate::perm::is_prime(p) && !n.is_multiple_of(p))
        .expect("infinitely many primes")
}

fn fired_verdict(
    rule: Rule,
    evidence: Vec<String>,
    n: &FiniteGroup,
    notes: Vec<RuleNote>,
) -> Verdict {
    let witness = (rule == Rule::ZnThm).then(|| {
        let q = smallest_prime_not_dividing(n.order() as u64);
        WitnessRef {
            construction: "znthm".into(),
            q,
            note: format!("N embedded in the central product of N with N wr C{q}"),
        }
    });
    Verdict {
        status: rule.status(),
        rule: Some(rule),
        evidence,
        witness,
        notes,
    }
}

/// The first rule that decides `N`, or UNDECIDED.
pub fn verdict(n: &FiniteGroup) -> Verdict {
    let mut facts = Facts::new(n);
    let mut notes = Vec::new();
    for rule in Rule::ALL {
        match evaluate(rule, &mut facts) {
            Eval::Fired(evidence) => {
                notes.push(RuleNote {
                    rule,
                    outcome: Outcome::Fired,
                    detail: evidence.join("; "),
                });
                return fired_verdict(rule, evidence, n, notes);
            }
            Eval::No(why) => notes.push(RuleNote {
                rule,
                outcome: Outcome::Inapplicable,
                detail: why,
            }),
            Eval::Skip(why) => notes.push(RuleNote {
                rule,
                outcome: Outcome::Skipped,
                detail: why,
            }),
        }
    }
    Verdict {
        status: Status::Undecided,
        rule: None,
        evidence: vec![format!(
            "|N| = {}, |Z(N)| = {}, |N′| = {}",
            n.order(),
            facts.center.order(),
            facts.derived.order()
        )],
        witness: None,
        notes,
    }
}

/// Every rule evaluated, without stopping at the first that fires.
pub fn verdict_exhaustive(n: &FiniteGroup) -> Vec<RuleNote> {
    let mut facts = Facts::new(n);
    Rule::ALL
        .into_iter()
        .map(|rule| {
            let (outcome, detail) = match evaluate(rule, &mut facts) {
                Eval::Fired(e) => (Outcome::Fired, e.join("; ")),
                Eval::No(w) => (Outcome::Inapplicable, w),
                Eval::Skip(w) => (Outcome::Skipped, w),
            };
            RuleNote {
                rule,
                outcome,
                detail,
            }
        })
        .collect()
}

/// True when the exhaustive firings contain both a HOLDS rule and a FAILS rule.
pub fn has_contradiction(notes: &[RuleNote]) -> bool {
    let fired = |s: Status| {
        notes
            .iter()
            .any(|n| n.outcome == Outcome::Fired && n.rule.status() == s)
    };
    fired(Status::Holds) && fired(Status::Fails)
}

/// Human-readable account of a verdict.
pub fn explain(v: &Verdict) -> String {
    let mut out = String::new();
    match v.rule {
        Some(rule) => {
            out.push_str(&format!("{} by rule {}\n", v.status, rule));
            out.push_str(&format!("  {}\n", rule.statement()));
        }
        None => out.push_str(&format!("{}: no rule decides this group\n", v.status)),
    }
    for e in &v.evidence {
        out.push_str(&format!("  fact: {e}\n"));
    }
    if let Some(w) = &v.witness {
        out.push_str(&format!(
            "  witness: {} construction with q = {} ({})\n",
            w.construction, w.q, w.note
        ));
    }
    if v.status == Status::Undecided {
        for note in &v.notes {
            let tag = match note.outcome {
                Outcome::Fired => "fired",
                Outcome::Inapplicable => "evaluated",
                Outcome::Skipped => "skipped",
            };
            out.push_str(&format!("  {tag} {}: {}\n", note.rule, note.detail));
        }
    }
    out
}
