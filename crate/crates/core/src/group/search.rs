//! Backtracking searches for homomorphisms between small groups.
//!
//! All searches assign images to the greedy generating sequence of the
//! source, candidates in increasing element order, and extend over the
//! Cayley graph checking consistency on every edge. Because every element
//! below the next greedy generator lies in the closure of the earlier ones,
//! the first isomorphism found is also the lexicographically first one on
//! full image arrays.

use super::{FiniteGroup, GroupHom};

struct Search<'a, F: FnMut(&GroupHom) -> bool> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    injective: bool,
    /// element orders in the target, for candidate pruning
    target_orders: Vec<usize>,
    /// visit(hom) -> keep searching?
    visit: F,
}

impl<'a, F: FnMut(&GroupHom) -> bool> Search<'a, F> {
    /// Extend the partial map by the Cayley-graph closure of the assigned
    /// generators. Returns the elements whose image got defined, or None on
    /// conflict. Consistency is checked on every (element, generator) edge,
    /// which pins the homomorphism property on the generated subgroup.
    fn extend(
        &self,
        images: &mut [usize],
        used: &mut [bool],
        depth: usize,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.source.order();
        let mut newly = Vec::new();
        let mut newly_used = Vec::new();
        let mut known: Vec<usize> = (0..n).filter(|&x| images[x] != usize::MAX).collect();
        let mut frontier = 0;
        while frontier < known.len() {
            let x = known[frontier];
            frontier += 1;
            for &g in &self.gens[..depth] {
                let xg = self.source.mul(x, g);
                let img = self.target.mul(images[x], images[g]);
                if images[xg] == usize::MAX {
                    if self.injective {
                        if used[img] {
                            self.rollback(images, used, &newly, &newly_used);
                            return None;
                        }
                        used[img] = true;
                        newly_used.push(img);
                    }
                    images[xg] = img;
                    newly.push(xg);
                    known.push(xg);
                } else if images[xg] != img {
                    self.rollback(images, used, &newly, &newly_used);
                    return None;
                }
            }
        }
        Some((newly, newly_used))
    }

    fn rollback(
        &self,
        images: &mut [usize],
        used: &mut [bool],
        newly: &[usize],
        newly_used: &[usize],
    ) {
        for &x in newly {
            images[x] = usize::MAX;
        }
        for &y in newly_used {
            used[y] = false;
        }
    }

    fn run(&mut self, images: &mut [usize], used: &mut [bool], depth: usize) -> bool {
        if depth == self.gens.len() {
            let defined = images.iter().all(|&y| y != usize::MAX);
            debug_assert!(defined, "generators must generate the source");
            let hom = GroupHom::new(self.source.clone(), self.target.clone(), images.to_vec())
                .expect("Cayley-consistent extension is a homomorphism");
            return (self.visit)(&hom);
        }
        let g = self.gens[depth];
        let g_order = self.source.element_order(g);
        for cand in self.target.elements() {
            if self.injective {
                if used[cand] || self.target_orders[cand] != g_order {
                    continue;
                }
            } else if !g_order.is_multiple_of(self.target_orders[cand]) {
                continue;
            }
            images[g] = cand;
            let mut local_used = false;
            if self.injective && !used[cand] {
                used[cand] = true;
                local_used = true;
            }
            if let Some((newly, newly_used)) = self.extend(images, used, depth + 1) {
                let keep_going = self.run(images, used, depth + 1);
                self.rollback(images, used, &newly, &newly_used);
                if !keep_going {
                    images[g] = usize::MAX;
                    if local_used {
                        used[cand] = false;
                    }
                    return false;
                }
            }
            images[g] = usize::MAX;
            if local_used {
                used[cand] = false;
            }
        }
        true
    }
}

fn search_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    injective: bool,
    mut visit: impl FnMut(&GroupHom) -> bool,
) {
    let gens = source.generating_set();
    let target_orders: Vec<usize> = target.elements().map(|y| target.element_order(y)).collect();
    let n = source.order();
    let mut images = vec![usize::MAX; n];
    images[0] = 0;
    let mut used = vec![false; target.order()];
    used[0] = true;
    if gens.is_empty() {
        // trivial source
        let hom = GroupHom::new(source.clone(), target.clone(), vec![0]).unwrap();
        visit(&hom);
        return;
    }
    let mut s = Search {
        source,
        target,
        gens,
        injective,
        target_orders,
        visit: &mut visit,
    };
    s.run(&mut images, &mut used, 0);
}

/// All isomorphisms `g1 -> g2`, in lexicographic image-array order.
pub fn all_isomorphisms(g1: &FiniteGroup, g2: &FiniteGroup) -> Vec<GroupHom> {
    if g1.order() != g2.order() {
        return Vec::new();
    }
    let mut out = Vec::new();
    search_homs(g1, g2, true, |h| {
        out.push(h.clone());
        true
    });
    out
}

pub fn all_automorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    all_isomorphisms(g, g)
}

/// First isomorphism (in lexicographic order) satisfying `pred`.
pub fn first_isomorphism_with(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    mut pred: impl FnMut(&GroupHom) -> bool,
) -> Option<GroupHom> {
    if g1.order() != g2.order() {
        return None;
    }
    // order-histogram short circuit
    let mut h1: Vec<usize> = g1.elements().map(|x| g1.element_order(x)).collect();
    let mut h2: Vec<usize> = g2.elements().map(|x| g2.element_order(x)).collect();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return None;
    }
    let mut found = None;
    search_homs(g1, g2, true, |h| {
        if pred(h) {
            found = Some(h.clone());
            false
        } else {
            true
        }
    });
    found
}

/// All endomorphisms of `g`, image-order pruned by order divisibility.
pub fn all_endomorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = Vec::new();
    search_homs(g, g, false, |h| {
        out.push(h.clone());
        true
    });
    out
}

/// All homomorphisms `source -> target`.
pub fn all_homomorphisms(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = Vec::new();
    search_homs(source, target, false, |h| {
        out.push(h.clone());
        true
    });
    out
}
