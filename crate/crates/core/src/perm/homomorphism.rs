use super::group::FiniteGroup;
use super::permutation::{compose_into, Permutation, Point};
use crate::error::{GroupError, Result};

/// A group homomorphism given by the images of the source generators.
///
/// Construction walks the Cayley graph of the source and checks
/// `φ(x s) = φ(x) φ(s)` for every element `x` and generator `s`, which is
/// the whole multiplication table in disguise. The full element map is kept.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    generator_images: Vec<Permutation>,
    map: Vec<u32>,
}

impl Homomorphism {
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        generator_images: Vec<Permutation>,
    ) -> Result<Self> {
        let gens = source.generators();
        if gens.len() != generator_images.len() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} generators but {} images",
                gens.len(),
                generator_images.len()
            )));
        }
        let mut image_idx = Vec::with_capacity(gens.len());
        for img in &generator_images {
            match target.index_of(img.images()) {
                Some(i) => image_idx.push(i),
                None => {
                    return Err(GroupError::NotHomomorphism(format!(
                        "image {img} is not in the target"
                    )))
                }
            }
        }
        const UNSET: u32 = u32::MAX;
        let n = source.order();
        let mut map = vec![UNSET; n];
        map[0] = 0;
        let mut queue = vec![0usize];
        let mut src = vec![0 as Point; source.degree()];
        let mut tgt = vec![0 as Point; target.degree()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (s, img) in gens.iter().zip(&generator_images) {
                compose_into(source.element(x), s.images(), &mut src);
                compose_into(target.element(map[x] as usize), img.images(), &mut tgt);
                let y = source.index_of(&src).expect("source is closed");
                let fy = target.index_of(&tgt).expect("target is closed") as u32;
                if map[y] == UNSET {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(GroupError::NotHomomorphism(format!(
                        "two words for {} have different images",
                        Permutation::from_slice(&src)
                    )));
                }
            }
        }
        debug_assert!(map.iter().all(|&m| m != UNSET));
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            generator_images,
            map,
        })
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    /// Target index of the image of source element `i`.
    pub fn map_index(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn apply(&self, p: &Permutation) -> Option<Permutation> {
        self.source
            .index_of(p.images())
            .map(|i| self.target.permutation(self.map_index(i)))
    }

    pub fn image(&self) -> FiniteGroup {
        self.target.generate(&self.generator_images)
    }

    pub fn kernel(&self) -> FiniteGroup {
        self.source
            .from_indices((0..self.source.order()).filter(|&i| self.map[i] == 0))
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&m| m == 0).count() == 1
    }

    /// Some source element mapping to `t`, if any.
    pub fn preimage(&self, t: &Permutation) -> Option<Permutation> {
        let ti = self.target.index_of(t.images())? as u32;
        self.map
            .iter()
            .position(|&m| m == ti)
            .map(|i| self.source.permutation(i))
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage_subgroup(&self, sub: &FiniteGroup) -> FiniteGroup {
        let keep: Vec<bool> = self
            .target
            .iter()
            .map(|e| sub.index_of(e).is_some())
            .collect();
        self.source
            .from_indices((0..self.source.order()).filter(|&i| keep[self.map_index(i)]))
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &FiniteGroup) -> FiniteGroup {
        let gens: Vec<Permutation> = sub
            .generators()
            .iter()
            .map(|g| self.apply(g).expect("subgroup of the source"))
            .collect();
        self.target.generate(&gens)
    }
}
