//! Group homomorphisms as full image arrays, validated exhaustively.

use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, {:?})",
            self.source.order(),
            self.target.order(),
            self.images
        )
    }
}

impl GroupHom {
    /// Validate the full homomorphism property on every pair.
    pub fn new(source: FiniteGroup, target: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::Argument(format!(
                "expected {} images, got {}",
                source.order(),
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.order()) {
            return Err(Error::Argument(format!("image {bad} out of range")));
        }
        if images[0] != 0 {
            return Err(Error::NotAHomomorphism { x: 0, y: 0 });
        }
        for x in source.elements() {
            for y in source.elements() {
                if images[source.mul(x, y)] != target.mul(images[x], images[y]) {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    /// Extend a map given on a generating set by BFS over products, then
    /// validate exhaustively. Fails if the pairs do not cover a generating
    /// set or if the extension runs into a conflict.
    pub fn from_generator_images(
        source: FiniteGroup,
        target: FiniteGroup,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = source.order();
        let mut images = vec![usize::MAX; n];
        images[0] = 0;
        for &(g, img) in pairs {
            if g >= n || img >= target.order() {
                return Err(Error::Argument(format!(
                    "generator pair ({g}, {img}) out of range"
                )));
            }
            if images[g] != usize::MAX && images[g] != img {
                return Err(Error::Argument(format!(
                    "conflicting images for generator {g}"
                )));
            }
            images[g] = img;
        }
        let gens: Vec<usize> = pairs.iter().map(|&(g, _)| g).collect();
        let mut in_known = vec![false; n];
        let mut known: Vec<usize> = vec![0];
        in_known[0] = true;
        for &g in &gens {
            if !in_known[g] {
                in_known[g] = true;
                known.push(g);
            }
        }
        let mut frontier = 0;
        while frontier < known.len() {
            let x = known[frontier];
            frontier += 1;
            for &g in &gens {
                let xg = source.mul(x, g);
                let img = target.mul(images[x], images[g]);
                if images[xg] == usize::MAX {
                    images[xg] = img;
                } else if images[xg] != img {
                    return Err(Error::NotAHomomorphism { x, y: g });
                }
                if !in_known[xg] {
                    in_known[xg] = true;
                    known.push(xg);
                }
            }
        }
        if known.len() < n {
            return Err(Error::DoesNotGenerate);
        }
        GroupHom::new(source, target, images)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images: g.full_set(),
        }
    }

    /// The zero map (everything to the identity).
    pub fn zero(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `other . self` (apply `self` first).
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert!(
            self.target == other.source,
            "composition target/source mismatch"
        );
        GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        }
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source
            .elements()
            .filter(|&x| self.images[x] == 0)
            .collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.images.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_endomorphism()
            && self
                .source
                .elements()
                .all(|x| self.apply(self.apply(x)) == self.apply(x))
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> GroupHom {
        assert!(self.is_bijective(), "inverse of a non-bijective hom");
        let mut inv = vec![0; self.target.order()];
        for x in self.source.elements() {
            inv[self.images[x]] = x;
        }
        GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            images: inv,
        }
    }

    /// Restriction to a subgroup already promoted to a group, with images
    /// into a promoted subgroup of the target.
    ///
    /// `sub_elems` maps sub indices to source indices; `target_elems` maps
    /// target-sub indices to target indices.
    pub fn restrict(
        &self,
        sub: &FiniteGroup,
        sub_elems: &[usize],
        target_sub: &FiniteGroup,
        target_elems: &[usize],
    ) -> Result<GroupHom> {
        let lookup: HashMap<usize, usize> = target_elems
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i))
            .collect();
        let mut images = Vec::with_capacity(sub.order());
        for &src in sub_elems {
            let img = self.images[src];
            let Some(&new) = lookup.get(&img) else {
                return Err(Error::Precondition(format!(
                    "image of element {src} is outside the target subgroup"
                )));
            };
            images.push(new);
        }
        GroupHom::new(sub.clone(), target_sub.clone(), images)
    }

    /// Induced map on quotients: given projections `p : S -> S/N` and
    /// `q : T -> T/M` with `self(N) <= M`, the map `[x] -> [self(x)]`.
    pub fn induce_on_quotients(&self, p: &GroupHom, q: &GroupHom) -> Result<GroupHom> {
        assert!(p.source == self.source && q.source == self.target);
        let mut images = vec![usize::MAX; p.target.order()];
        for x in self.source.elements() {
            let from = p.apply(x);
            let to = q.apply(self.apply(x));
            if images[from] == usize::MAX {
                images[from] = to;
            } else if images[from] != to {
                return Err(Error::Precondition(
                    "map does not descend to the quotients".into(),
                ));
            }
        }
        GroupHom::new(p.target.clone(), q.target.clone(), images)
    }
}
