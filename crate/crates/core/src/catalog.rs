//! Group catalogs in line-delimited JSON, the name grammar for built-in
//! groups, and batch classification.
//!
//! Names:
//!
//! ```text
//! expr    := central ('x' central)*          direct product
//! central := power ('*' power)*              central product over the least common prime
//! power   := wreath ('^' k)? (':' kind)?     direct power; 'Cp^2:X' is C_p^2 ⋊ X
//! wreath  := atom ('wrC' q)*                 wreath product with C_q
//! atom    := '(' expr ')' | 'Cn' | 'Cn:Cm(r)' | 'Dn' | 'Qn' | 'Sn' | 'An' | 'SL23' | 'GL23'
//! ```
//!
//! `Dn` and `Qn` have order `n`; `Cn:Cm(r)` lets the generator of `C_m` act
//! as `x ↦ x^r`; `kind` is one of `C2`, `C3`, `C4`, `Cp`, `D8`, `Q8`.

use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::constructors::{
    affine_semidirect, alternating, central_product, cyclic, dicyclic, dihedral, direct_power,
    direct_product, gl_2_3, linear_generators, metacyclic, sl_2_3, symmetric, wreath_cyclic,
    CentralIdentification,
};
use crate::engine::{has_contradiction, verdict, verdict_exhaustive, Status};
use crate::error::{GroupError, Result};
use crate::perm::{
    center, conjugacy_classes, derived_subgroup, gcd, is_abelian, prime_divisors, FiniteGroup,
    Permutation,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

impl CatalogEntry {
    pub fn from_group(name: impl Into<String>, g: &FiniteGroup, tags: Vec<String>) -> Self {
        CatalogEntry {
            name: name.into(),
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::to_vec).collect(),
            tags,
        }
    }

    fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, images)| {
                if images.len() != self.degree {
                    return Err(GroupError::Parse(format!(
                        "generator {i} has {} images for degree {}",
                        images.len(),
                        self.degree
                    )));
                }
                Permutation::new(images.clone())
            })
            .collect()
    }

    pub fn group(&self) -> Result<FiniteGroup> {
        FiniteGroup::closure(&self.permutations()?, self.degree)
    }

    pub fn tag(&self, key: &str) -> Option<&str> {
        self.tags
            .iter()
            .find_map(|t| t.strip_prefix(key)?.strip_prefix('='))
    }
}

/// Parses catalog text, one record per nonblank line.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    let mut names = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let at = |msg: String| GroupError::Parse(format!("line {line_no}: {msg}"));
        let entry: CatalogEntry = serde_json::from_str(line).map_err(|e| at(e.to_string()))?;
        if entry.degree == 0 {
            return Err(at("degree must be positive".into()));
        }
        entry.permutations().map_err(|e| at(e.to_string()))?;
        if !names.insert(entry.name.clone()) {
            return Err(at(format!("duplicate name {}", entry.name)));
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::Parse(format!("{}: {e}", path.display())))?;
    parse_catalog(&text).map_err(|e| GroupError::Parse(format!("{}: {e}", path.display())))
}

pub fn catalog_to_string(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&serde_json::to_string(e).expect("entries serialize"));
        out.push('\n');
    }
    out
}

pub fn save_catalog(path: &Path, entries: &[CatalogEntry]) -> Result<()> {
    std::fs::write(path, catalog_to_string(entries))
        .map_err(|e| GroupError::Parse(format!("{}: {e}", path.display())))
}

/// The catalog shipped with the crate.
pub const BUNDLED_CATALOG: &str = include_str!("../data/small.jsonl");

pub fn bundled_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUNDLED_CATALOG).expect("bundled catalog is valid")
}

/// Resolves a built-in name, then falls back to `entries`.
pub fn resolve(name: &str, entries: &[CatalogEntry]) -> Result<FiniteGroup> {
    match parse_name(name) {
        Ok(g) => Ok(g),
        Err(e) => match entries.iter().find(|c| c.name == name) {
            Some(c) => c.group(),
            None => Err(e),
        },
    }
}

/// Builds the group named by a built-in expression.
pub fn parse_name(name: &str) -> Result<FiniteGroup> {
    let mut p = NameParser {
        s: name.as_bytes(),
        pos: 0,
    };
    let g = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(g)
}

struct NameParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl NameParser<'_> {
    fn error(&self, msg: &str) -> GroupError {
        GroupError::Parse(format!(
            "cannot parse group name {:?} at offset {}: {msg}",
            String::from_utf8_lossy(self.s),
            self.pos
        ))
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error("expected a number"))
    }

    fn expr(&mut self) -> Result<FiniteGroup> {
        let mut g = self.central()?;
        while self.eat("x") {
            let h = self.central()?;
            g = direct_product(&g, &h)?.group;
        }
        Ok(g)
    }

    fn central(&mut self) -> Result<FiniteGroup> {
        let mut g = self.power()?;
        while self.eat("*") {
            let h = self.power()?;
            g = central_by_least_prime(&g, &h)?;
        }
        Ok(g)
    }

    fn power(&mut self) -> Result<FiniteGroup> {
        let start = self.pos;
        let base = self.wreath()?;
        if !self.eat("^") {
            return Ok(base);
        }
        let k = self.int()?;
        if self.eat(":") {
            // only C_p^2 ⋊ X
            let text = std::str::from_utf8(&self.s[start..self.pos - 1]).expect("ascii");
            let p = text
                .strip_prefix('C')
                .and_then(|t| t.strip_suffix("^2"))
                .and_then(|t| t.parse::<u64>().ok())
                .filter(|&p| crate::perm::is_prime(p))
                .ok_or_else(|| self.error("':' after a power needs the form Cp^2"))?;
            let kind_start = self.pos;
            while self.pos < self.s.len()
                && self.s[self.pos].is_ascii_alphanumeric()
                && self.s[self.pos] != b'x'
            {
                self.pos += 1;
            }
            let kind = std::str::from_utf8(&self.s[kind_start..self.pos]).expect("ascii");
            return Ok(affine_semidirect(p, &linear_generators(p, kind)?)?.group);
        }
        direct_power(&base, k)
    }

    fn wreath(&mut self) -> Result<FiniteGroup> {
        let mut g = self.atom()?;
        while self.eat("wrC") {
            let q = self.int()?;
            g = wreath_cyclic(&g, q)?.group;
        }
        Ok(g)
    }

    fn atom(&mut self) -> Result<FiniteGroup> {
        if self.eat("(") {
            let g = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(g);
        }
        if self.eat("SL23") {
            return sl_2_3();
        }
        if self.eat("GL23") {
            return gl_2_3();
        }
        let Some(&c) = self.s.get(self.pos) else {
            return Err(self.error("expected a group"));
        };
        self.pos += 1;
        let n = self.int()?;
        match c {
            b'C' => {
                let save = self.pos;
                if self.eat(":C") {
                    if let Ok(m) = self.int() {
                        if self.eat("(") {
                            let r = self.int()?;
                            if !self.eat(")") {
                                return Err(self.error("expected ')'"));
                            }
                            return Ok(metacyclic(n, m, r)?.group);
                        }
                    }
                    self.pos = save;
                }
                cyclic(n)
            }
            b'D' => dihedral(n),
            b'Q' => dicyclic(n),
            b'S' => symmetric(n),
            b'A' => alternating(n),
            _ => {
                self.pos -= 1;
                Err(self.error("unknown group family"))
            }
        }
    }
}

/// `A ∗ B` identifying the least elements of order `p` in both centers, for
/// the least prime `p` dividing both central orders.
fn central_by_least_prime(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (za, zb) = (center(a), center(b));
    let common = gcd(za.order() as u64, zb.order() as u64);
    let &p = prime_divisors(common)
        .first()
        .ok_or_else(|| GroupError::InvalidIdentification("centers have coprime orders".into()))?;
    let pick = |z: &FiniteGroup| {
        let orders = z.element_orders();
        let i = (1..z.order())
            .find(|&i| orders[i] as u64 == p)
            .expect("Cauchy");
        z.permutation(i)
    };
    Ok(central_product(a, b, &CentralIdentification::new(pick(&za), pick(&zb)))?.group)
}

type Fingerprint = (usize, Vec<u32>, usize, usize, usize);

fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut orders = g.element_orders().to_vec();
    orders.sort_unstable();
    (
        g.order(),
        orders,
        center(g).order(),
        derived_subgroup(g).order(),
        conjugacy_classes(g).len(),
    )
}

/// Names of the abelian groups of order `n`, by invariant factors.
fn abelian_names(n: usize) -> Vec<String> {
    fn go(rest: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        // factors d₁ | d₂ | … listed from the largest down
        for d in (2..=rest).rev() {
            if rest.is_multiple_of(d) && (last == 0 || last.is_multiple_of(d)) {
                acc.push(d);
                go(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec!["C1".into()];
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|f| {
            f.iter()
                .map(|d| format!("C{d}"))
                .collect::<Vec<_>>()
                .join("x")
        })
        .collect()
}

/// Groups of order at most 63 reachable from the built-in families, one per
/// isomorphism fingerprint, plus the larger named groups.
///
/// Partial: the fingerprint may merge distinct groups and several families
/// are not generated.
pub fn generate_bundled() -> Vec<CatalogEntry> {
    const MAX: usize = 63;
    let mut names: Vec<String> = Vec::new();
    for n in 1..=MAX {
        names.extend(abelian_names(n));
    }
    for n in (6..=MAX).step_by(2) {
        names.push(format!("D{n}"));
    }
    for n in (8..=MAX).step_by(4) {
        names.push(format!("Q{n}"));
    }
    names.extend(
        [
            "A4", "S4", "A5", "SL23", "GL23", "SL23*C4", "C3^2:C3", "C3^2:C4", "C3wrC2", "C2wrC3",
        ]
        .map(String::from),
    );
    for n in 3..=MAX {
        for m in 2..=MAX / n {
            for r in 2..n {
                let ok =
                    gcd(r as u64, n as u64) == 1 && (0..m).fold(1usize, |acc, _| acc * r % n) == 1;
                if ok {
                    names.push(format!("C{n}:C{m}({r})"));
                }
            }
        }
    }
    for p in [2u64, 3, 5, 7] {
        for kind in ["C2", "C3", "C4", "D8", "Q8"] {
            names.push(format!("C{p}^2:{kind}"));
        }
        names.push(format!("C{p}^2:C{p}"));
    }
    let small: Vec<String> = names.clone();
    let mut seen: HashSet<Fingerprint> = HashSet::new();
    let mut entries = Vec::new();
    let mut nonabelian: Vec<(String, usize)> = Vec::new();
    let push = |name: &str,
                family: &str,
                entries: &mut Vec<CatalogEntry>,
                seen: &mut HashSet<Fingerprint>|
     -> Option<FiniteGroup> {
        let g = parse_name(name).ok()?;
        if (family != "named" && g.order() > MAX) || !seen.insert(fingerprint(&g)) {
            return None;
        }
        let tags = vec![format!("order={}", g.order()), format!("family={family}")];
        entries.push(CatalogEntry::from_group(name, &g, tags));
        Some(g)
    };
    for name in &small {
        let family = if name.contains(':') {
            "semidirect"
        } else {
            "builtin"
        };
        if let Some(g) = push(name, family, &mut entries, &mut seen) {
            if !is_abelian(&g) {
                nonabelian.push((name.clone(), g.order()));
            }
        }
    }
    // products with abelian and nonabelian factors
    let wrap = |s: &str| {
        if s.contains(':') || s.contains('x') || s.contains('*') {
            format!("({s})")
        } else {
            s.to_string()
        }
    };
    let bases = nonabelian.clone();
    for (a, oa) in &bases {
        for k in 2..=MAX / oa {
            for b in abelian_names(k) {
                push(
                    &format!("{}x{}", wrap(a), wrap(&b)),
                    "product",
                    &mut entries,
                    &mut seen,
                );
            }
        }
        for (b, ob) in &bases {
            if a <= b && oa * ob <= MAX {
                push(
                    &format!("{}x{}", wrap(a), wrap(b)),
                    "product",
                    &mut entries,
                    &mut seen,
                );
            }
        }
    }
    for name in [
        "C3^2:Q8",
        "(C3^2:Q8)xC2",
        "C5^2:Q8",
        "C5^2:D8",
        "S3wrC2",
        "S5",
    ] {
        push(name, "named", &mut entries, &mut seen);
    }
    entries.sort_by_key(|e| {
        (
            e.tag("order")
                .and_then(|o| o.parse::<usize>().ok())
                .unwrap_or(0),
            e.name.clone(),
        )
    });
    entries
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub name: String,
    pub order: usize,
    pub verdict: Status,
    pub rule: Option<String>,
    pub evidence: Vec<String>,
    pub contradiction: bool,
    pub timing_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub holds: usize,
    pub fails: usize,
    pub undecided: usize,
    pub contradictions: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub groups: Vec<GroupReport>,
    pub summary: Summary,
}

/// JSON schema of [`ClassificationReport`].
pub const REPORT_SCHEMA: &str = include_str!("../data/report.schema.json");

impl ClassificationReport {
    pub fn from_groups(groups: Vec<GroupReport>) -> Self {
        let mut summary = Summary {
            total: groups.len(),
            ..Summary::default()
        };
        for g in &groups {
            match g.verdict {
                Status::Holds => summary.holds += 1,
                Status::Fails => summary.fails += 1,
                Status::Undecided => summary.undecided += 1,
            }
            summary.contradictions += g.contradiction as usize;
        }
        ClassificationReport { groups, summary }
    }

    /// Summary counts agree with the per-group entries.
    pub fn is_consistent(&self) -> bool {
        Self::from_groups(self.groups.clone()).summary == self.summary
    }
}

pub fn classify_group(name: &str, g: &FiniteGroup) -> GroupReport {
    let start = Instant::now();
    let v = verdict(g);
    let contradiction = has_contradiction(&verdict_exhaustive(g));
    GroupReport {
        name: name.to_string(),
        order: g.order(),
        verdict: v.status,
        rule: v.rule.map(|r| r.id().to_string()),
        evidence: v.evidence,
        contradiction,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Classifies every entry of order at most `max_order`, in catalog order.
pub fn classify(
    entries: &[CatalogEntry],
    max_order: Option<usize>,
) -> Result<ClassificationReport> {
    let mut groups = Vec::new();
    for e in entries {
        let g = e
            .group()
            .map_err(|err| GroupError::Parse(format!("{}: {err}", e.name)))?;
        if max_order.is_some_and(|m| g.order() > m) {
            continue;
        }
        groups.push(classify_group(&e.name, &g));
    }
    Ok(ClassificationReport::from_groups(groups))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for (name, order) in [
            ("C6", 6),
            ("D10", 10),
            ("Q8", 8),
            ("S4", 24),
            ("SL23", 24),
            ("GL23", 48),
            ("C3^2:Q8", 72),
            ("(C3^2:Q8)xC2", 144),
            ("C2^3", 8),
            ("SL23*C4", 48),
            ("S3wrC2", 72),
            ("C7:C3(2)", 21),
            ("C3^2:C3", 27),
            ("D8xC2", 16),
        ] {
            assert_eq!(parse_name(name).unwrap().order(), order, "{name}");
        }
        assert!(is_abelian(&parse_name("C4xC2").unwrap()));
        assert_eq!(derived_subgroup(&parse_name("C3^2:C3").unwrap()).order(), 3);
        for bad in ["", "X5", "C", "C3^2:Z9", "(C2", "C4:C2(3", "C2^2:Q8"] {
            assert!(parse_name(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn abelian_invariant_factors() {
        assert_eq!(abelian_names(8), vec!["C8", "C4xC2", "C2xC2xC2"]);
        assert_eq!(abelian_names(12), vec!["C12", "C6xC2"]);
        assert_eq!(abelian_names(7), vec!["C7"]);
    }

    #[test]
    fn catalog_lines_are_validated() {
        let good = r#"{"name":"S4","degree":4,"generators":[[1,0,2,3],[1,2,3,0]]}"#;
        let entries = parse_catalog(good).unwrap();
        assert_eq!(entries[0].group().unwrap().order(), 24);
        let short = format!(
            "{good}\n{}",
            r#"{"name":"bad","degree":4,"generators":[[1,0,2]]}"#
        );
        let err = parse_catalog(&short).unwrap_err().to_string();
        assert!(err.starts_with("line 2:"), "{err}");
        let dup = format!("{good}\n\n{good}");
        let err = parse_catalog(&dup).unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("duplicate"), "{err}");
        assert!(parse_catalog("{not json").is_err());
        assert!(parse_catalog(r#"{"name":"x","degree":3,"generators":[[0,0,1]]}"#).is_err());
    }

    #[test]
    fn bundled_catalog_is_current() {
        assert_eq!(catalog_to_string(&generate_bundled()), BUNDLED_CATALOG);
    }

    #[test]
    fn summary_matches_tallies() {
        let entries: Vec<CatalogEntry> = bundled_catalog().into_iter().take(12).collect();
        let report = classify(&entries, Some(10)).unwrap();
        assert!(report.is_consistent());
        assert!(report.groups.iter().all(|g| g.order <= 10));
    }
}
