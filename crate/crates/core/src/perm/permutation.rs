use std::fmt;

use crate::error::{GroupError, Result};

/// A point of the set a permutation acts on.
pub type Point = u16;

/// Largest supported degree.
pub const MAX_DEGREE: usize = Point::MAX as usize + 1;

/// A bijection of `{0, .., n-1}` stored by its image array.
///
/// Products are function composition: `p.compose(&q)` applies `q` first,
/// so conjugation `g x g⁻¹` and the commutator `x y x⁻¹ y⁻¹` read the
/// way they are written.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    /// Validates `images` as a bijection of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(GroupError::MalformedPermutation(format!(
                "degree {n} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            if img >= n {
                return Err(GroupError::MalformedPermutation(format!(
                    "image {img} of point {i} is out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(GroupError::MalformedPermutation(format!(
                    "point {img} is hit twice"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as Point).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(GroupError::MalformedPermutation(format!(
                        "cycle point {a} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut used[a], true) {
                    return Err(GroupError::MalformedPermutation(format!(
                        "cycles are not disjoint at point {a}"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub(crate) fn from_raw(images: Box<[Point]>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    pub(crate) fn from_slice(images: &[Point]) -> Self {
        Permutation::from_raw(images.into())
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).map(|i| i as Point).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Image array widened to `usize`, the catalog wire form.
    pub fn to_vec(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let mut out = vec![0; self.degree()].into_boxed_slice();
        compose_into(&self.images, &other.images, &mut out);
        Permutation { images: out }
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.degree()].into_boxed_slice();
        invert_into(&self.images, &mut out);
        Permutation { images: out }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Permutation, y: &Permutation) -> Permutation {
        x.compose(y).compose(&x.inverse()).compose(&y.inverse())
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    pub fn order(&self) -> u64 {
        order_of(&self.images)
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn is_bijection(images: &[Point]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&x| (x as usize) < seen.len() && !std::mem::replace(&mut seen[x as usize], true))
}

/// `out = a ∘ b`.
#[inline]
pub(crate) fn compose_into(a: &[Point], b: &[Point], out: &mut [Point]) {
    for (o, &x) in out.iter_mut().zip(b.iter()) {
        *o = a[x as usize];
    }
}

#[inline]
pub(crate) fn invert_into(a: &[Point], out: &mut [Point]) {
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as Point;
    }
}

pub(crate) fn order_of(images: &[Point]) -> u64 {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut order = 1u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
