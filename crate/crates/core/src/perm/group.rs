use std::fmt;
use std::sync::{Arc, OnceLock};

use indexmap::IndexSet;
use rustc_hash::{FxBuildHasher, FxHashMap};

use super::bits::Bits;
use super::permutation::{compose_into, invert_into, order_of, Permutation, Point, MAX_DEGREE};
use crate::error::{GroupError, Result};
use crate::limits::Limits;

/// Groups up to this order get a lazily built multiplication table.
pub const TABLE_CAP: usize = 2048;

/// A permutation group with its full element list.
///
/// Elements are enumerated once at construction and stored sorted by image
/// array, so the identity is always element 0 and the element order does not
/// depend on the generator list. Values are cheap to clone and immutable;
/// the cached tables are filled through `OnceLock`.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Box<[Point]>,
    order: usize,
    element_orders: OnceLock<Vec<u32>>,
    table: OnceLock<Option<Arc<CayleyTable>>>,
}

impl FiniteGroup {
    /// The group generated by `generators`, bounded by the process element cap.
    pub fn closure(generators: &[Permutation], degree: usize) -> Result<Self> {
        Self::closure_with_cap(generators, degree, Limits::current().element_cap)
    }

    pub fn closure_with_cap(generators: &[Permutation], degree: usize, cap: usize) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::MalformedPermutation(format!(
                "degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let elements = enumerate(&gens, degree, cap)?;
        Ok(Self::from_sorted(degree, gens, elements))
    }

    pub fn trivial(degree: usize) -> Self {
        let degree = degree.max(1);
        let elements = (0..degree).map(|i| i as Point).collect();
        Self::from_sorted(degree, Vec::new(), elements)
    }

    /// `elements` must be flat, sorted, duplicate free and closed.
    pub(crate) fn from_sorted(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Box<[Point]>,
    ) -> Self {
        let order = elements.len() / degree;
        debug_assert!(order >= 1);
        FiniteGroup {
            inner: Arc::new(GroupData {
                degree,
                generators,
                elements,
                order,
                element_orders: OnceLock::new(),
                table: OnceLock::new(),
            }),
        }
    }

    /// Builds a group from an element set already known to be closed,
    /// picking a small generating set greedily.
    pub(crate) fn from_closed_set(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let flat: Box<[Point]> = elements
            .iter()
            .flat_map(|p| p.images().iter().copied())
            .collect();
        Self::from_sorted(degree, Vec::new(), flat).with_greedy_generators()
    }

    /// Subgroup made of the listed elements of `self`, which must be closed.
    pub(crate) fn from_indices(&self, indices: impl IntoIterator<Item = usize>) -> FiniteGroup {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let mut flat = Vec::with_capacity(idx.len() * self.degree());
        for i in idx {
            flat.extend_from_slice(self.element(i));
        }
        Self::from_sorted(self.degree(), Vec::new(), flat.into_boxed_slice())
            .with_greedy_generators()
    }

    /// Replaces the generator list by one picked greedily, trying elements
    /// of large order first.
    fn with_greedy_generators(self) -> FiniteGroup {
        let orders = self.element_orders();
        let mut candidates: Vec<usize> = (1..self.order()).collect();
        candidates.sort_by_key(|&i| std::cmp::Reverse(orders[i]));
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = FiniteGroup::trivial(self.degree());
        for i in candidates {
            if current.order() == self.order() {
                break;
            }
            let p = self.element(i);
            if current.index_of(p).is_none() {
                gens.push(Permutation::from_slice(p));
                current = self.generate(&gens);
            }
        }
        let data = &self.inner;
        FiniteGroup {
            inner: Arc::new(GroupData {
                degree: data.degree,
                generators: gens,
                elements: data.elements.clone(),
                order: data.order,
                element_orders: data.element_orders.clone(),
                table: OnceLock::new(),
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn element(&self, i: usize) -> &[Point] {
        let d = self.inner.degree;
        &self.inner.elements[i * d..(i + 1) * d]
    }

    pub fn permutation(&self, i: usize) -> Permutation {
        Permutation::from_slice(self.element(i))
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[Point]> + '_ {
        self.inner.elements.chunks_exact(self.inner.degree)
    }

    pub fn permutations(&self) -> impl ExactSizeIterator<Item = Permutation> + '_ {
        self.iter().map(Permutation::from_slice)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    /// Position of `p` in the sorted element list.
    pub fn index_of(&self, p: &[Point]) -> Option<usize> {
        if p.len() != self.inner.degree {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.order());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.element(mid).cmp(p) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p.images()).is_some()
    }

    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        self.degree() == other.degree() && self.inner.elements == other.inner.elements
    }

    fn check_degree(&self, other: &FiniteGroup) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: other.degree(),
                found: self.degree(),
            });
        }
        Ok(())
    }

    /// `self ≤ ambient`.
    pub fn is_subgroup_of(&self, ambient: &FiniteGroup) -> Result<bool> {
        self.check_degree(ambient)?;
        if !ambient.order().is_multiple_of(self.order()) {
            return Ok(false);
        }
        Ok(self.generators().iter().all(|g| ambient.contains(g)))
    }

    /// `self ⊴ ambient`: a subgroup closed under conjugation by the
    /// generators of `ambient`.
    pub fn is_normal_in(&self, ambient: &FiniteGroup) -> Result<bool> {
        if !self.is_subgroup_of(ambient)? {
            return Ok(false);
        }
        Ok(ambient.generators().iter().all(|g| {
            let gi = g.inverse();
            self.generators()
                .iter()
                .all(|n| self.contains(&g.compose(n).compose(&gi)))
        }))
    }

    /// The subgroup generated by `gens`, which must have this group's degree.
    /// No membership check is made: the result is bounded by the element cap only.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<FiniteGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(GroupError::NotSubgroup(format!(
                    "{g} is not an element of the ambient group"
                )));
            }
        }
        Ok(self.generate(gens))
    }

    /// Closure of elements known to lie in `self`.
    pub(crate) fn generate(&self, gens: &[Permutation]) -> FiniteGroup {
        FiniteGroup::closure_with_cap(gens, self.degree(), self.order())
            .expect("elements of a group generate a subgroup")
    }

    /// Orders of all elements, indexed like `element`.
    pub fn element_orders(&self) -> &[u32] {
        self.inner
            .element_orders
            .get_or_init(|| self.iter().map(|e| order_of(e) as u32).collect())
    }

    pub fn element_order(&self, p: &Permutation) -> u64 {
        p.order()
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders()
            .iter()
            .fold(1, |acc, &o| super::permutation::lcm(acc, o as u64))
    }

    /// Full multiplication table, available for groups up to [`TABLE_CAP`].
    pub fn table(&self) -> Option<&CayleyTable> {
        self.inner
            .table
            .get_or_init(|| (self.order() <= TABLE_CAP).then(|| Arc::new(CayleyTable::build(self))))
            .as_deref()
    }

    pub(crate) fn require_table(&self, what: &str) -> Result<&CayleyTable> {
        self.table()
            .ok_or_else(|| GroupError::size(what, self.order(), TABLE_CAP))
    }

    /// Subgroup consisting of the elements whose indices are set in `bits`.
    pub(crate) fn subgroup_from_bits(&self, bits: &Bits, gens: &[usize]) -> FiniteGroup {
        let d = self.degree();
        let mut flat = Vec::with_capacity(bits.count() * d);
        for i in bits.ones() {
            flat.extend_from_slice(self.element(i));
        }
        let gens = gens
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| self.permutation(g))
            .collect();
        FiniteGroup::from_sorted(d, gens, flat.into_boxed_slice())
    }

    /// Indices (in `self`) of the elements of a subgroup.
    pub(crate) fn bits_of(&self, sub: &FiniteGroup) -> Bits {
        let mut bits = Bits::new(self.order());
        for e in sub.iter() {
            if let Some(i) = self.index_of(e) {
                bits.insert(i);
            }
        }
        bits
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_elements(other)
    }
}

impl Eq for FiniteGroup {}

/// Breadth-first orbit of the identity under the generators, sorted.
fn enumerate(gens: &[Permutation], degree: usize, cap: usize) -> Result<Box<[Point]>> {
    let mut set: IndexSet<Box<[Point]>, FxBuildHasher> = IndexSet::default();
    set.insert(Permutation::identity(degree).images().into());
    let mut scratch = vec![0 as Point; degree];
    let mut current = vec![0 as Point; degree];
    let mut i = 0;
    while i < set.len() {
        current.copy_from_slice(&set[i]);
        for g in gens {
            compose_into(&current, g.images(), &mut scratch);
            if !set.contains(scratch.as_slice()) {
                if set.len() >= cap {
                    return Err(GroupError::size(
                        format!("closure of {} generators", gens.len()),
                        format!("more than {cap}"),
                        cap,
                    ));
                }
                set.insert(scratch.as_slice().into());
            }
        }
        i += 1;
    }
    let mut all: Vec<Box<[Point]>> = set.into_iter().collect();
    all.sort_unstable();
    Ok(all.into_iter().flat_map(|b| b.into_vec()).collect())
}

/// Multiplication table over element indices.
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl CayleyTable {
    fn build(group: &FiniteGroup) -> Self {
        let n = group.order();
        let d = group.degree();
        let index: FxHashMap<&[Point], u32> = group
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        let mut mul = vec![0u32; n * n];
        let mut inv = vec![0u32; n];
        let mut scratch = vec![0 as Point; d];
        for i in 0..n {
            let a = group.element(i);
            for j in 0..n {
                compose_into(a, group.element(j), &mut scratch);
                mul[i * n + j] = index[scratch.as_slice()];
            }
            invert_into(a, &mut scratch);
            inv[i] = index[scratch.as_slice()];
        }
        CayleyTable { n, mul, inv }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Index of `element(a) ∘ element(b)`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Subgroup generated by `gens`, as a bit set over indices.
    pub(crate) fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = Bits::new(self.n);
        bits.insert(0);
        let mut list = vec![0usize];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if bits.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        bits
    }

    /// `⟨A, g⟩` for a subgroup `A` given by its members and generators,
    /// built coset by coset.
    pub(crate) fn extend(&self, members: &Bits, gens: &[usize], g: usize) -> Bits {
        if members.contains(g) {
            return members.clone();
        }
        let a: Vec<usize> = members.ones().collect();
        let mut all_gens = gens.to_vec();
        all_gens.push(g);
        let mut bits = members.clone();
        let mut reps = vec![0usize];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &all_gens {
                let t = self.mul(r, s);
                if !bits.contains(t) {
                    for &x in &a {
                        bits.insert(self.mul(x, t));
                    }
                    reps.push(t);
                }
            }
            i += 1;
        }
        bits
    }
}
