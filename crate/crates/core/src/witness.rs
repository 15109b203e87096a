//! Counterexample embeddings `N ≤ H ≤ G`: `N` is complemented in `H` but not in `G`.

use serde::Serialize;

use crate::automorphisms::{aut_group, AutGroup};
use crate::complements::{
    find_complement, find_complement_hinted, verify_complement, ComplementReport,
};
use crate::constructors::{
    central_product, linear_action, semidirect_product, wreath_cyclic, ActionSpec,
    CentralIdentification, Matrix2,
};
use crate::error::{GroupError, Result};
use crate::limits::Limits;
use crate::perm::{
    center, derived_subgroup, gcd, intersection, is_perfect, is_solvable, quotient, sylow,
    FiniteGroup, Permutation, Point,
};

/// `N ⊴ G` with `N ≤ H ≤ G`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub g: FiniteGroup,
    pub h: FiniteGroup,
    pub n: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct WitnessBundle {
    pub construction: String,
    pub embedding: Embedding,
    pub complement_in_h: FiniteGroup,
    /// Filled in by verification.
    pub nonexistence: Option<ComplementReport>,
    /// The unhinted search, when it was run as a cross-check.
    pub full_search: Option<ComplementReport>,
    pub q: u64,
    /// The identified central element, as an element of `G`.
    pub z: Permutation,
    /// A normal subgroup of `G` contained in every complement of `N`, if known.
    pub hint: Option<FiniteGroup>,
}

fn fail(clause: &str) -> GroupError {
    GroupError::Verification(clause.to_string())
}

fn prime_order_elements(g: &FiniteGroup) -> impl Iterator<Item = usize> + '_ {
    let orders = g.element_orders();
    (1..g.order()).filter(move |&i| crate::perm::is_prime(orders[i] as u64))
}

/// The counterexample for `N` with a nontrivial `Z(N) ∩ N′`, built from
/// `N ≀ C_q` and a central product.
pub fn build_znthm(n: &FiniteGroup, q: u64) -> Result<WitnessBundle> {
    let zd = intersection(&center(n), &derived_subgroup(n));
    if zd.is_trivial() {
        return Err(GroupError::Precondition("Z(N) ∩ N′ is trivial".into()));
    }
    if q < 2 || gcd(q, n.order() as u64) != 1 {
        return Err(GroupError::Precondition(format!(
            "q = {q} must exceed 1 and be coprime to |N| = {}",
            n.order()
        )));
    }
    let zi = prime_order_elements(&zd)
        .next()
        .expect("nontrivial group has an element of prime order");
    let z = zd.permutation(zi);
    let required = (n.order() as u128).pow(q as u32 + 1) * q as u128 / z.order() as u128;
    let cap = Limits::current().element_cap;
    if required > cap as u128 {
        return Err(GroupError::size(
            format!("ZNthm group for q = {q}"),
            required,
            cap,
        ));
    }
    let w = wreath_cyclic(n, q as usize)?;
    let zbar = w.base_element(&vec![z.clone(); q as usize]);
    let prod = central_product(n, &w.group, &CentralIdentification::new(z.clone(), zbar))?;
    let g = prod.group.clone();
    let n_emb = prod.left_image();
    let d_emb = prod.right.image_of(&w.base);
    let mut hgens = n_emb.generators().to_vec();
    hgens.extend(d_emb.generators().iter().cloned());
    let h = g.generate(&hgens);

    let id = n.identity();
    let mut kgens = Vec::new();
    for x in n.generators() {
        let mut coords = vec![id.clone(); q as usize];
        coords[0] = x.clone();
        let diag = prod
            .left
            .apply(x)
            .expect("in N")
            .compose(&prod.right.apply(&w.base_element(&coords)).expect("in W"));
        kgens.push(diag);
        for b in 1..q as usize {
            let mut coords = vec![id.clone(); q as usize];
            coords[b] = x.clone();
            kgens.push(prod.right.apply(&w.base_element(&coords)).expect("in W"));
        }
    }
    let k = g.generate(&kgens);
    let hint = prod.right.image_of(&derived_subgroup(&w.base));
    Ok(WitnessBundle {
        construction: "znthm".into(),
        embedding: Embedding { g, h, n: n_emb },
        complement_in_h: k,
        nonexistence: None,
        full_search: None,
        q,
        z: prod.left.apply(&z).expect("in N"),
        hint: Some(hint),
    })
}

/// Structural checks shared by every bundle.
fn verify_structure(b: &WitnessBundle) -> Result<()> {
    let Embedding { g, h, n } = &b.embedding;
    if !n.is_normal_in(g)? {
        return Err(fail("N is not normal in G"));
    }
    if !h.is_normal_in(g)? {
        return Err(fail("H is not normal in G"));
    }
    if !n.is_subgroup_of(h)? {
        return Err(fail("N is not inside H"));
    }
    verify_complement(h, n, &b.complement_in_h)
        .map_err(|e| fail(&format!("complement in H: {e}")))?;
    if (g.order() / h.order()) as u64 != b.q {
        return Err(fail("|G:H| differs from q"));
    }
    let (top, _) = quotient(g, h)?;
    if !top
        .element_orders()
        .iter()
        .any(|&o| o as usize == top.order())
    {
        return Err(fail("G/H is not cyclic"));
    }
    Ok(())
}

fn require_nonexistence(r: &ComplementReport, what: &str) -> Result<()> {
    if r.exists {
        return Err(fail(&format!("{what}: N has a complement in G")));
    }
    if r.search_space != r.total_tuples {
        return Err(fail(&format!("{what}: search was not exhaustive")));
    }
    Ok(())
}

/// Checks every clause of a ZNthm bundle. The nonexistence search runs in
/// `G/R` for the hint `R`; `full` adds the unhinted search as a cross-check.
pub fn verify_znthm(mut b: WitnessBundle, full: bool) -> Result<WitnessBundle> {
    verify_structure(&b)?;
    let Embedding { g, h, n } = &b.embedding;
    let q = b.q as u128;
    let nq = (n.order() as u128).pow(b.q as u32 + 1);
    let z = b.z.order() as u128;
    if g.order() as u128 != nq * q / z {
        return Err(fail("|G| ≠ |N|^(q+1)·q/|z|"));
    }
    if h.order() as u128 != nq / z {
        return Err(fail("|H| ≠ |N|^(q+1)/|z|"));
    }
    if is_solvable(h) != is_solvable(n) {
        return Err(fail("H and N disagree on solvability"));
    }
    let hinted = match &b.hint {
        Some(r) => find_complement_hinted(g, n, r)?,
        None => find_complement(g, n)?,
    };
    require_nonexistence(&hinted, "reduced search")?;
    if full {
        let plain = find_complement(g, n)?;
        require_nonexistence(&plain, "full search")?;
        b.full_search = Some(plain);
    }
    b.nonexistence = Some(hinted);
    Ok(b)
}

/// Structure plus an unhinted nonexistence search.
pub fn verify_bundle(mut b: WitnessBundle) -> Result<WitnessBundle> {
    verify_structure(&b)?;
    let r = find_complement(&b.embedding.g, &b.embedding.n)?;
    require_nonexistence(&r, "full search")?;
    b.nonexistence = Some(r);
    Ok(b)
}

/// `SL(2,3) ∗ C₄` with `N = Q₈` and `H` a Sylow 2-subgroup of order 16, verified.
pub fn baer_bundle() -> Result<WitnessBundle> {
    let sl = crate::constructors::sl_2_3()?;
    let c4 = crate::constructors::cyclic(4)?;
    let minus_one = center(&sl).permutation(1);
    let c = c4.generators()[0].clone();
    let prod = central_product(
        &sl,
        &c4,
        &CentralIdentification::new(minus_one.clone(), c.pow(2)),
    )?;
    let g = prod.group.clone();
    let n = prod.left.image_of(&sylow(&sl, 2)?);
    let h = sylow(&g, 2)?;
    let k = find_complement(&h, &n)?
        .complement
        .ok_or_else(|| fail("N has no complement in H"))?;
    let bundle = WitnessBundle {
        construction: "baer".into(),
        embedding: Embedding { g, h, n },
        complement_in_h: k,
        nonexistence: None,
        full_search: None,
        q: 3,
        z: prod.left.apply(&minus_one).expect("in SL(2,3)"),
        hint: None,
    };
    verify_bundle(bundle)
}

/// Images in `GL(2,5)` of the generators of the Baer group.
pub const BAER_GL25: [Matrix2; 3] = [[[0, 4], [1, 0]], [[3, 2], [1, 1]], [[2, 0], [0, 2]]];

/// The action of the Baer group on `C₅²` through `GL(2,5)`.
pub fn baer_action(bundle: &WitnessBundle) -> Result<ActionSpec> {
    linear_action(&bundle.embedding.g, 5, &BAER_GL25)
}

/// `L ⋊ G ≥ L ⋊ H ≥ L ⋊ N` over a verified bundle.
pub fn blow_up(
    l: &FiniteGroup,
    bundle: &WitnessBundle,
    action: &ActionSpec,
) -> Result<WitnessBundle> {
    let Embedding { g, h, n } = &bundle.embedding;
    if gcd(l.order() as u64, (g.order() / h.order()) as u64) != 1 {
        return Err(GroupError::Precondition(format!(
            "|L| = {} is not coprime to |G:H| = {}",
            l.order(),
            g.order() / h.order()
        )));
    }
    let prod = semidirect_product(l, g, action)?;
    let big = prod.group.clone();
    let l_emb = prod.left_image();
    let lift = |s: &FiniteGroup| {
        let mut gens = l_emb.generators().to_vec();
        gens.extend(prod.right.image_of(s).generators().iter().cloned());
        big.generate(&gens)
    };
    let blown = WitnessBundle {
        construction: format!("{}-blown-up", bundle.construction),
        embedding: Embedding {
            h: lift(h),
            n: lift(n),
            g: big.clone(),
        },
        complement_in_h: prod.right.image_of(&bundle.complement_in_h),
        nonexistence: None,
        full_search: None,
        q: bundle.q,
        z: prod.right.apply(&bundle.z).expect("in G"),
        hint: None,
    };
    verify_bundle(blown)
}

/// Required order `|N|^(q+1)·q·|Out(N)|` of the perfect-group construction.
pub fn perfect_required_order(n: &FiniteGroup, aut: &AutGroup, q: u64) -> u128 {
    (n.order() as u128)
        .checked_pow(q as u32 + 1)
        .and_then(|x| x.checked_mul(q as u128 * aut.out_order as u128))
        .unwrap_or(u128::MAX)
}

/// The embedding `N ≤ NDA ≤ NWA` for perfect centerless `N`.
///
/// Only the construction and its structural checks; nonexistence is not
/// searched.
pub fn build_perfect(n: &FiniteGroup, q: u64) -> Result<(Embedding, FiniteGroup)> {
    if !is_perfect(n) {
        return Err(GroupError::Precondition("N is not perfect".into()));
    }
    if !center(n).is_trivial() {
        return Err(GroupError::Precondition("N has nontrivial center".into()));
    }
    let aut = aut_group(n)?;
    if q < 2 || gcd(q, aut.order() as u64) != 1 {
        return Err(GroupError::Precondition(format!(
            "q = {q} must exceed 1 and be coprime to |Aut(N)| = {}",
            aut.order()
        )));
    }
    assemble_nwa(&aut, q, Limits::current().element_cap)
}

/// `G = NWA` acting on `q + 1` copies of the elements of `N`: copy 0 carries
/// `N`, copies `1..=q` carry `D`, `α` rotates copies `1..=q` and `A` acts
/// diagonally. Returns the embedding and the complement of `N` in `H`.
pub(crate) fn assemble_nwa(aut: &AutGroup, q: u64, cap: usize) -> Result<(Embedding, FiniteGroup)> {
    let n = &aut.base;
    let required = perfect_required_order(n, aut, q);
    if required > cap as u128 {
        return Err(GroupError::size(
            format!("NWA group for q = {q}"),
            required,
            cap,
        ));
    }
    let s = n.order();
    let copies = q as usize + 1;
    let total = s * copies;
    let on_copies = |maps: &[(usize, &Permutation)]| {
        let mut images: Vec<Point> = (0..total).map(|i| i as Point).collect();
        for &(c, m) in maps {
            for x in 0..s {
                images[c * s + x] = (c * s + m.image(x)) as Point;
            }
        }
        Permutation::from_raw(images.into_boxed_slice())
    };
    let inner: Vec<Permutation> = n.generators().iter().map(|g| aut.inner(g)).collect();
    let n_gens: Vec<Permutation> = inner.iter().map(|m| on_copies(&[(0, m)])).collect();
    let mut d_gens = Vec::new();
    for c in 1..copies {
        d_gens.extend(inner.iter().map(|m| on_copies(&[(c, m)])));
    }
    let a_gens: Vec<Permutation> = aut
        .carrier
        .generators()
        .iter()
        .map(|g| on_copies(&(0..copies).map(|c| (c, g)).collect::<Vec<_>>()))
        .collect();
    let alpha = {
        let mut images: Vec<Point> = (0..total).map(|i| i as Point).collect();
        for c in 1..copies {
            let next = if c == q as usize { 1 } else { c + 1 };
            for x in 0..s {
                images[c * s + x] = (next * s + x) as Point;
            }
        }
        Permutation::from_raw(images.into_boxed_slice())
    };
    let mut hgens = n_gens.clone();
    hgens.extend(d_gens.iter().cloned());
    hgens.extend(a_gens.iter().cloned());
    let mut ggens = hgens.clone();
    ggens.push(alpha);
    let g = FiniteGroup::closure_with_cap(&ggens, total, cap)?;
    if g.order() as u128 != required {
        return Err(fail("NWA has the wrong order"));
    }
    let h = g.generate(&hgens);
    let n_emb = g.generate(&n_gens);
    let mut kgens = Vec::new();
    for m in &inner {
        kgens.push(on_copies(&[(0, m), (1, m)]));
        for c in 2..copies {
            kgens.push(on_copies(&[(c, m)]));
        }
    }
    kgens.extend(a_gens);
    let k = g.generate(&kgens);
    let emb = Embedding { g, h, n: n_emb };
    if !emb.n.is_normal_in(&emb.g)? || !emb.h.is_normal_in(&emb.g)? {
        return Err(fail("N or H is not normal in NWA"));
    }
    if (emb.g.order() / emb.h.order()) as u64 != q {
        return Err(fail("|G:H| differs from q"));
    }
    verify_complement(&emb.h, &emb.n, &k).map_err(|e| fail(&format!("complement in H: {e}")))?;
    Ok((emb, k))
}

/// Replayable form: generators as image arrays.
#[derive(Debug, Serialize)]
pub struct BundleRecord {
    pub construction: String,
    pub q: u64,
    pub orders: [usize; 3],
    pub degree: usize,
    pub g: Vec<Vec<usize>>,
    pub h: Vec<Vec<usize>>,
    pub n: Vec<Vec<usize>>,
    pub k: Vec<Vec<usize>>,
    pub z: Vec<usize>,
    pub complement_in_h: bool,
    pub complement_in_g: Option<bool>,
    pub search_space: Option<u64>,
    pub method: Option<String>,
}

fn gens(g: &FiniteGroup) -> Vec<Vec<usize>> {
    g.generators().iter().map(Permutation::to_vec).collect()
}

impl WitnessBundle {
    pub fn orders(&self) -> [usize; 3] {
        let e = &self.embedding;
        [e.g.order(), e.h.order(), e.n.order()]
    }

    pub fn record(&self) -> BundleRecord {
        let e = &self.embedding;
        BundleRecord {
            construction: self.construction.clone(),
            q: self.q,
            orders: self.orders(),
            degree: e.g.degree(),
            g: gens(&e.g),
            h: gens(&e.h),
            n: gens(&e.n),
            k: gens(&self.complement_in_h),
            z: self.z.to_vec(),
            complement_in_h: true,
            complement_in_g: self.nonexistence.as_ref().map(|r| r.exists),
            search_space: self.nonexistence.as_ref().map(|r| r.search_space),
            method: self.nonexistence.as_ref().map(|r| r.method.to_string()),
        }
    }
}
