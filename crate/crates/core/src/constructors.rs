//! Standard families and group products.

use crate::error::{GroupError, Result};
use crate::limits::Limits;
use crate::perm::{center, is_prime, FiniteGroup, Homomorphism, Permutation, Point};

/// A product group with the embeddings of its two factors.
#[derive(Clone, Debug)]
pub struct Product {
    pub group: FiniteGroup,
    pub left: Homomorphism,
    pub right: Homomorphism,
}

impl Product {
    pub fn left_image(&self) -> FiniteGroup {
        self.left.image()
    }

    pub fn right_image(&self) -> FiniteGroup {
        self.right.image()
    }
}

/// An action of `acting` on `target` by automorphisms.
///
/// `images[i]` lists the images of the target's generators under the
/// automorphism attached to the `i`-th generator of `acting`.
#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub acting: FiniteGroup,
    pub target: FiniteGroup,
    pub images: Vec<Vec<Permutation>>,
}

impl ActionSpec {
    pub fn new(acting: &FiniteGroup, target: &FiniteGroup, images: Vec<Vec<Permutation>>) -> Self {
        ActionSpec {
            acting: acting.clone(),
            target: target.clone(),
            images,
        }
    }

    pub fn trivial(acting: &FiniteGroup, target: &FiniteGroup) -> Self {
        let id = target.generators().to_vec();
        let images = acting.generators().iter().map(|_| id.clone()).collect();
        Self::new(acting, target, images)
    }

    /// Checks every map and returns the induced permutations of the target's
    /// element indices, one per acting generator.
    pub fn verify(&self) -> Result<Vec<Permutation>> {
        if self.images.len() != self.acting.generators().len() {
            return Err(GroupError::InvalidAction(format!(
                "{} image lists for {} acting generators",
                self.images.len(),
                self.acting.generators().len()
            )));
        }
        let n = self.target.order();
        let mut perms = Vec::with_capacity(self.images.len());
        for (i, imgs) in self.images.iter().enumerate() {
            let phi = Homomorphism::new(&self.target, &self.target, imgs.clone())
                .map_err(|e| GroupError::InvalidAction(format!("generator {i}: {e}")))?;
            if !phi.is_injective() {
                return Err(GroupError::InvalidAction(format!(
                    "generator {i} does not act bijectively"
                )));
            }
            let images: Box<[Point]> = (0..n).map(|x| phi.map_index(x) as Point).collect();
            perms.push(Permutation::from_raw(images));
        }
        let carrier = FiniteGroup::closure_with_cap(&perms, n.max(1), self.acting.order())
            .map_err(|_| {
                GroupError::InvalidAction("more automorphisms than acting elements".into())
            })?;
        Homomorphism::new(&self.acting, &carrier, perms.clone())
            .map_err(|e| GroupError::InvalidAction(format!("not a homomorphism into Aut: {e}")))?;
        Ok(perms)
    }
}

/// `z` in `Z(A)` and `z̄` in `Z(B)` of equal order, to be identified.
#[derive(Clone, Debug)]
pub struct CentralIdentification {
    pub left: Permutation,
    pub right: Permutation,
    pub order: u64,
}

impl CentralIdentification {
    pub fn new(left: Permutation, right: Permutation) -> Self {
        let order = left.order();
        CentralIdentification { left, right, order }
    }
}

/// `N ≀ C_q` with its base and the rotation.
#[derive(Clone, Debug)]
pub struct Wreath {
    pub group: FiniteGroup,
    pub base: FiniteGroup,
    pub alpha: Permutation,
    factor_degree: usize,
    q: usize,
}

impl Wreath {
    /// The base element `(x₁, …, x_q)`.
    pub fn base_element(&self, coords: &[Permutation]) -> Permutation {
        assert_eq!(coords.len(), self.q);
        let d = self.factor_degree;
        let mut images = Vec::with_capacity(d * self.q);
        for (b, x) in coords.iter().enumerate() {
            images.extend(x.images().iter().map(|&p| (p as usize + b * d) as Point));
        }
        Permutation::from_raw(images.into_boxed_slice())
    }

    pub fn q(&self) -> usize {
        self.q
    }
}

fn check_order(what: impl Into<String>, required: u128) -> Result<()> {
    let cap = Limits::current().element_cap;
    if required > cap as u128 {
        return Err(GroupError::size(what, required, cap));
    }
    Ok(())
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::new(images).expect("constructed bijection")
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::Precondition("cyclic group of order 0".into()));
    }
    check_order(format!("C{n}"), n as u128)?;
    FiniteGroup::closure(&[perm((0..n).map(|i| (i + 1) % n).collect())], n)
}

/// Dihedral group of order `n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 || n % 2 == 1 {
        return Err(GroupError::Precondition(format!(
            "dihedral order {n} must be even"
        )));
    }
    check_order(format!("D{n}"), n as u128)?;
    match n {
        2 => cyclic(2),
        4 => FiniteGroup::closure(&[perm(vec![1, 0, 3, 2]), perm(vec![2, 3, 0, 1])], 4),
        _ => {
            let m = n / 2;
            let r = perm((0..m).map(|i| (i + 1) % m).collect());
            let s = perm((0..m).map(|i| (m - i) % m).collect());
            FiniteGroup::closure(&[r, s], m)
        }
    }
}

/// Dicyclic group of order `n = 4m` in its regular representation.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(GroupError::Precondition(format!(
            "dicyclic order {n} must be a multiple of 4"
        )));
    }
    check_order(format!("Q{n}"), n as u128)?;
    let m = n / 4;
    let k = 2 * m;
    // point i + k·j stands for a^i x^j
    let a = perm((0..n).map(|p| (p % k + 1) % k + (p / k) * k).collect());
    let x = perm(
        (0..n)
            .map(|p| {
                let i = p % k;
                if p < k {
                    (k - i) % k + k
                } else {
                    (m + k - i) % k
                }
            })
            .collect(),
    );
    FiniteGroup::closure(&[a, x], n)
}

pub fn quaternion8() -> Result<FiniteGroup> {
    dicyclic(8)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let n = n.max(1);
    check_order(format!("S{n}"), factorial(n))?;
    if n == 1 {
        return Ok(FiniteGroup::trivial(1));
    }
    let t = perm((0..n).map(|i| if i < 2 { 1 - i } else { i }).collect());
    let c = perm((0..n).map(|i| (i + 1) % n).collect());
    FiniteGroup::closure(&[t, c], n)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    let n = n.max(1);
    check_order(format!("A{n}"), (factorial(n) / 2).max(1))?;
    let gens: Vec<Permutation> = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).expect("3-cycle"))
        .collect();
    FiniteGroup::closure(&gens, n)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// A 2×2 matrix over `F_p`, rows first.
pub type Matrix2 = [[u64; 2]; 2];

/// Action of a matrix on the vectors of `F_p²`, point `a + p·b` for `(a, b)`.
/// With `nonzero` the zero vector is dropped and points shift down by one.
pub fn matrix_permutation(p: u64, m: &Matrix2, nonzero: bool) -> Permutation {
    let q = (p * p) as usize;
    let shift = nonzero as usize;
    let images = (shift..q)
        .map(|v| {
            let (a, b) = (v as u64 % p, v as u64 / p);
            let a2 = (m[0][0] * a + m[0][1] * b) % p;
            let b2 = (m[1][0] * a + m[1][1] * b) % p;
            (a2 + p * b2) as usize - shift
        })
        .collect();
    perm(images)
}

/// The matrix group generated by `mats`, acting on nonzero vectors.
pub fn matrix_group(p: u64, mats: &[Matrix2]) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let gens: Vec<Permutation> = mats
        .iter()
        .map(|m| matrix_permutation(p, m, true))
        .collect();
    FiniteGroup::closure(&gens, (p * p - 1) as usize)
}

/// `SL(2,3)` on the eight nonzero vectors of `F_3²`.
pub fn sl_2_3() -> Result<FiniteGroup> {
    matrix_group(3, &SL23_GENERATORS)
}

pub const SL23_GENERATORS: [Matrix2; 2] = [[[0, 2], [1, 0]], [[1, 1], [0, 1]]];

pub fn gl_2_3() -> Result<FiniteGroup> {
    matrix_group(
        3,
        &[SL23_GENERATORS[0], SL23_GENERATORS[1], [[1, 0], [0, 2]]],
    )
}

/// `C_p^k` as a direct product of cyclic groups; generators are the unit vectors.
pub fn elementary_abelian(p: u64, k: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    direct_power(&cyclic(p as usize)?, k)
}

pub fn direct_power(g: &FiniteGroup, k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Ok(FiniteGroup::trivial(1));
    }
    let mut acc = g.clone();
    for _ in 1..k {
        acc = direct_product(&acc, g)?.group;
    }
    Ok(acc)
}

fn shifted(p: &Permutation, offset: usize, total: usize) -> Permutation {
    let mut images: Vec<Point> = (0..total).map(|i| i as Point).collect();
    for (i, &x) in p.images().iter().enumerate() {
        images[i + offset] = (x as usize + offset) as Point;
    }
    Permutation::from_raw(images.into_boxed_slice())
}

/// `A × B` on the disjoint union of the point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Product> {
    check_order("direct product", a.order() as u128 * b.order() as u128)?;
    let total = a.degree() + b.degree();
    let left: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| shifted(g, 0, total))
        .collect();
    let right: Vec<Permutation> = b
        .generators()
        .iter()
        .map(|g| shifted(g, a.degree(), total))
        .collect();
    let mut gens = left.clone();
    gens.extend(right.iter().cloned());
    let group = FiniteGroup::closure(&gens, total)?;
    Ok(Product {
        left: Homomorphism::new(a, &group, left)?,
        right: Homomorphism::new(b, &group, right)?,
        group,
    })
}

/// `N ⋊ H` on the elements of `N` followed by the points of `H`.
///
/// `n` acts by left multiplication on the first block; an `H`-generator
/// acts by its automorphism there and by itself on the second block.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &ActionSpec,
) -> Result<Product> {
    if !action.target.same_elements(n) || action.target.generators() != n.generators() {
        return Err(GroupError::InvalidAction("action target is not N".into()));
    }
    if !action.acting.same_elements(h) || action.acting.generators() != h.generators() {
        return Err(GroupError::InvalidAction("acting group is not H".into()));
    }
    let phis = action.verify()?;
    check_order("semidirect product", n.order() as u128 * h.order() as u128)?;
    let size = n.order();
    let total = size + h.degree();
    let left: Vec<Permutation> = n
        .generators()
        .iter()
        .map(|g| {
            let mut images: Vec<Point> = (0..total).map(|i| i as Point).collect();
            for (x, e) in n.iter().enumerate() {
                let y = g.compose(&Permutation::from_slice(e));
                images[x] = n.index_of(y.images()).expect("closed") as Point;
            }
            Permutation::from_raw(images.into_boxed_slice())
        })
        .collect();
    let right: Vec<Permutation> = h
        .generators()
        .iter()
        .zip(&phis)
        .map(|(g, phi)| {
            let mut images: Vec<Point> = phi.images().to_vec();
            images.extend(g.images().iter().map(|&x| x + size as Point));
            Permutation::from_raw(images.into_boxed_slice())
        })
        .collect();
    let mut gens = left.clone();
    gens.extend(right.iter().cloned());
    let group = FiniteGroup::closure(&gens, total)?;
    if group.order() != n.order() * h.order() {
        return Err(GroupError::InvalidAction(format!(
            "product has order {}, expected {}",
            group.order(),
            n.order() * h.order()
        )));
    }
    Ok(Product {
        left: Homomorphism::new(n, &group, left)?,
        right: Homomorphism::new(h, &group, right)?,
        group,
    })
}

fn acts_freely(p: &Permutation) -> bool {
    let o = p.order() as usize;
    (1..o).all(|k| {
        let q = p.pow(k as i64);
        (0..q.degree()).all(|x| q.image(x) != x)
    })
}

/// `a ↦ (x ↦ x a⁻¹)` on element indices.
pub(crate) fn right_regular(g: &FiniteGroup, a: &Permutation) -> Permutation {
    let ai = a.inverse();
    let images: Box<[Point]> = g
        .permutations()
        .map(|x| g.index_of(x.compose(&ai).images()).expect("closed") as Point)
        .collect();
    Permutation::from_raw(images)
}

/// Right-regular representation, degree `|G|`.
pub fn regular_representation(g: &FiniteGroup) -> Result<FiniteGroup> {
    check_order("regular representation", g.order() as u128)?;
    if g.order() > crate::perm::MAX_DEGREE {
        return Err(GroupError::size(
            "regular representation",
            g.order(),
            crate::perm::MAX_DEGREE,
        ));
    }
    let gens: Vec<Permutation> = g.generators().iter().map(|a| right_regular(g, a)).collect();
    FiniteGroup::closure_with_cap(&gens, g.order(), g.order())
}

/// `(A × B)/⟨(z, z̄)⟩`, acting on the orbits of `⟨(z, z̄)⟩` on pairs of points.
///
/// The action is faithful as soon as `z` or `z̄` acts without fixed points;
/// when neither does, `A` is first replaced by its regular representation.
/// In the quotient the image of `z` equals the inverse of the image of `z̄`.
pub fn central_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
    ident: &CentralIdentification,
) -> Result<Product> {
    let (z, zb) = (&ident.left, &ident.right);
    if !a.contains(z) || !center(a).contains(z) {
        return Err(GroupError::InvalidIdentification(
            "z is not central in A".into(),
        ));
    }
    if !b.contains(zb) || !center(b).contains(zb) {
        return Err(GroupError::InvalidIdentification(
            "z̄ is not central in B".into(),
        ));
    }
    if z.order() != zb.order() || z.order() != ident.order {
        return Err(GroupError::InvalidIdentification(format!(
            "orders {} and {} differ",
            z.order(),
            zb.order()
        )));
    }
    let m = ident.order as usize;
    check_order(
        "central product",
        a.order() as u128 * b.order() as u128 / m as u128,
    )?;

    let regular = !acts_freely(z) && !acts_freely(zb);
    let act_a = |x: &Permutation| {
        if regular {
            right_regular(a, x)
        } else {
            x.clone()
        }
    };
    let za = act_a(z);
    let (dx, dy) = (za.degree(), b.degree());

    const UNSET: u32 = u32::MAX;
    let mut orbit = vec![UNSET; dx * dy];
    let mut count = 0usize;
    for start in 0..dx * dy {
        if orbit[start] != UNSET {
            continue;
        }
        let (mut x, mut y) = (start / dy, start % dy);
        loop {
            orbit[x * dy + y] = count as u32;
            x = za.image(x);
            y = zb.image(y);
            if x * dy + y == start {
                break;
            }
        }
        count += 1;
    }
    if count > crate::perm::MAX_DEGREE {
        return Err(GroupError::size(
            "central product points",
            count,
            crate::perm::MAX_DEGREE,
        ));
    }
    let mut reps = vec![0usize; count];
    for (pt, &o) in orbit.iter().enumerate().rev() {
        reps[o as usize] = pt;
    }
    let induced = |fx: &Permutation, fy: &Permutation| {
        let images: Box<[Point]> = reps
            .iter()
            .map(|&pt| {
                let (x, y) = (pt / dy, pt % dy);
                orbit[fx.image(x) * dy + fy.image(y)] as Point
            })
            .collect();
        Permutation::from_raw(images)
    };
    let id_x = Permutation::identity(dx);
    let id_y = Permutation::identity(dy);
    let left: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| induced(&act_a(g), &id_y))
        .collect();
    let right: Vec<Permutation> = b.generators().iter().map(|g| induced(&id_x, g)).collect();
    let mut gens = left.clone();
    gens.extend(right.iter().cloned());
    let group = FiniteGroup::closure(&gens, count)?;
    let expected = a.order() * b.order() / m;
    if group.order() != expected {
        return Err(GroupError::Verification(format!(
            "central product has order {}, expected {expected}",
            group.order()
        )));
    }
    Ok(Product {
        left: Homomorphism::new(a, &group, left)?,
        right: Homomorphism::new(b, &group, right)?,
        group,
    })
}

/// `N ≀ C_q` on `q` copies of the points of `N`.
pub fn wreath_cyclic(n: &FiniteGroup, q: usize) -> Result<Wreath> {
    if q == 0 {
        return Err(GroupError::Precondition(
            "wreath product needs q ≥ 1".into(),
        ));
    }
    let required = (n.order() as u128)
        .checked_pow(q as u32)
        .and_then(|x| x.checked_mul(q as u128))
        .unwrap_or(u128::MAX);
    check_order(format!("N wr C{q}"), required)?;
    let d = n.degree();
    let total = d * q;
    let mut base_gens = Vec::new();
    for b in 0..q {
        for g in n.generators() {
            base_gens.push(shifted(g, b * d, total));
        }
    }
    let alpha = perm((0..total).map(|i| (i + d) % total).collect());
    let base = FiniteGroup::closure(&base_gens, total)?;
    let mut gens = base_gens;
    gens.push(alpha.clone());
    let group = FiniteGroup::closure(&gens, total)?;
    Ok(Wreath {
        group,
        base,
        alpha,
        factor_degree: d,
        q,
    })
}

/// The action of a group on `C_p²` through matrices, one per acting generator.
pub fn linear_action(acting: &FiniteGroup, p: u64, mats: &[Matrix2]) -> Result<ActionSpec> {
    let target = elementary_abelian(p, 2)?;
    let (e1, e2) = (&target.generators()[0], &target.generators()[1]);
    let vector = |a: u64, b: u64| e1.pow(a as i64).compose(&e2.pow(b as i64));
    let images = mats
        .iter()
        .map(|m| vec![vector(m[0][0], m[1][0]), vector(m[0][1], m[1][1])])
        .collect();
    Ok(ActionSpec::new(acting, &target, images))
}

/// `C_p² ⋊ X` for the matrix group `X = ⟨mats⟩ ≤ GL(2, p)`.
pub fn affine_semidirect(p: u64, mats: &[Matrix2]) -> Result<Product> {
    let x = matrix_group(p, mats)?;
    let used: Vec<Matrix2> = mats
        .iter()
        .filter(|m| !matrix_permutation(p, m, true).is_identity())
        .copied()
        .collect();
    let action = linear_action(&x, p, &used)?;
    semidirect_product(&action.target.clone(), &x, &action)
}

/// Fixed matrices for the small linear groups used in names like `C5^2:Q8`.
pub fn linear_generators(p: u64, kind: &str) -> Result<Vec<Matrix2>> {
    let m1 = p - 1;
    let mats = match kind {
        k if k == format!("C{p}") => vec![[[1, 1], [0, 1]]],
        "C2" => vec![[[m1, 0], [0, m1]]],
        "C3" if p != 3 => vec![[[0, m1], [1, m1]]],
        "C4" if p != 2 => vec![[[0, m1], [1, 0]]],
        "D8" if p != 2 => vec![[[0, m1], [1, 0]], [[1, 0], [0, m1]]],
        "Q8" if p == 3 => vec![[[0, 2], [1, 0]], [[1, 1], [1, 2]]],
        "Q8" if p == 5 => vec![[[0, 4], [1, 0]], [[0, 2], [2, 0]]],
        _ => {
            return Err(GroupError::Precondition(format!(
                "no built-in action of {kind} on C{p}^2"
            )))
        }
    };
    Ok(mats)
}

/// `C_n ⋊ C_m` with the generator of `C_m` acting as `x ↦ x^r`.
pub fn metacyclic(n: usize, m: usize, r: usize) -> Result<Product> {
    let cn = cyclic(n)?;
    let cm = cyclic(m)?;
    let g = &cn
        .generators()
        .first()
        .cloned()
        .unwrap_or_else(|| cn.identity());
    let images = cm
        .generators()
        .iter()
        .map(|_| {
            if cn.generators().is_empty() {
                vec![]
            } else {
                vec![g.pow(r as i64)]
            }
        })
        .collect();
    let action = ActionSpec::new(&cm, &cn, images);
    semidirect_product(&cn, &cm, &action)
}
