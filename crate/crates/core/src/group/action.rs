//! Group actions by automorphisms and the semidirect product.

use super::{FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// An action of `actor` on `space` by automorphisms, stored as a full
/// (actor element, space element) table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAction {
    actor: FiniteGroup,
    space: FiniteGroup,
    act: Vec<usize>, // actor-major
}

impl std::fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupAction({} on {})",
            self.actor.order(),
            self.space.order()
        )
    }
}

impl GroupAction {
    pub fn new(actor: FiniteGroup, space: FiniteGroup, act: Vec<usize>) -> Result<Self> {
        let (na, ns) = (actor.order(), space.order());
        if act.len() != na * ns {
            return Err(Error::NotAnAction(format!(
                "table has {} entries, expected {}",
                act.len(),
                na * ns
            )));
        }
        if let Some(&bad) = act.iter().find(|&&t| t >= ns) {
            return Err(Error::NotAnAction(format!(
                "table entry {bad} out of range"
            )));
        }
        let a = GroupAction { actor, space, act };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let ns = self.space.order();
        // identity acts trivially
        for t in 0..ns {
            if self.apply(0, t) != t {
                return Err(Error::NotAnAction(format!("identity moves element {t}")));
            }
        }
        // each actor element is an automorphism of the space
        for g in self.actor.elements() {
            let mut seen = vec![false; ns];
            for t in 0..ns {
                let img = self.apply(g, t);
                if seen[img] {
                    return Err(Error::NotAnAction(format!(
                        "element {g} does not act bijectively"
                    )));
                }
                seen[img] = true;
            }
            for t1 in 0..ns {
                for t2 in 0..ns {
                    if self.apply(g, self.space.mul(t1, t2))
                        != self.space.mul(self.apply(g, t1), self.apply(g, t2))
                    {
                        return Err(Error::NotAnAction(format!(
                            "element {g} does not act multiplicatively at ({t1}, {t2})"
                        )));
                    }
                }
            }
        }
        // act(g h, t) = act(g, act(h, t))
        for g in self.actor.elements() {
            for h in self.actor.elements() {
                let gh = self.actor.mul(g, h);
                for t in 0..ns {
                    if self.apply(gh, t) != self.apply(g, self.apply(h, t)) {
                        return Err(Error::NotAnAction(format!(
                            "action is not a homomorphism at ({g}, {h}, {t})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(actor: &FiniteGroup, space: &FiniteGroup) -> Self {
        let act = (0..actor.order()).flat_map(|_| 0..space.order()).collect();
        GroupAction {
            actor: actor.clone(),
            space: space.clone(),
            act,
        }
    }

    /// Conjugation of a group on itself.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut act = vec![0; n * n];
        for a in 0..n {
            for t in 0..n {
                act[a * n + t] = g.conj(a, t);
            }
        }
        GroupAction {
            actor: g.clone(),
            space: g.clone(),
            act,
        }
    }

    /// Build from the automorphism image of each actor element.
    pub fn from_automorphisms(
        actor: FiniteGroup,
        space: FiniteGroup,
        auts: &[Vec<usize>],
    ) -> Result<Self> {
        if auts.len() != actor.order() {
            return Err(Error::NotAnAction(
                "one automorphism per actor element required".into(),
            ));
        }
        let ns = space.order();
        let mut act = Vec::with_capacity(actor.order() * ns);
        for a in auts {
            if a.len() != ns {
                return Err(Error::NotAnAction(
                    "automorphism image array has wrong length".into(),
                ));
            }
            act.extend_from_slice(a);
        }
        GroupAction::new(actor, space, act)
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn space(&self) -> &FiniteGroup {
        &self.space
    }

    #[inline]
    pub fn apply(&self, g: usize, t: usize) -> usize {
        self.act[g * self.space.order() + t]
    }

    pub fn automorphism_of(&self, g: usize) -> Vec<usize> {
        let ns = self.space.order();
        self.act[g * ns..(g + 1) * ns].to_vec()
    }

    pub fn is_trivial(&self) -> bool {
        self.actor
            .elements()
            .all(|g| (0..self.space.order()).all(|t| self.apply(g, t) == t))
    }

    /// Semidirect product `space ⋊ actor` on pairs `(t, g) -> t * |actor| + g`
    /// with `(t', g')(t, g) = (t' * ^g' t, g' g)`.
    pub fn semidirect_product(&self) -> SemidirectProduct {
        let ns = self.space.order();
        let na = self.actor.order();
        let n = ns * na;
        let enc = |t: usize, g: usize| t * na + g;
        let mut table = vec![0; n * n];
        for t1 in 0..ns {
            for g1 in 0..na {
                for t2 in 0..ns {
                    for g2 in 0..na {
                        let t = self.space.mul(t1, self.apply(g1, t2));
                        let g = self.actor.mul(g1, g2);
                        table[enc(t1, g1) * n + enc(t2, g2)] = table_entry(t, g, na);
                    }
                }
            }
        }
        let labels = match (self.space.labels(), self.actor.labels()) {
            (Some(ls), Some(la)) => Some(
                (0..n)
                    .map(|i| format!("({},{})", ls[i / na], la[i % na]))
                    .collect(),
            ),
            _ => None,
        };
        let group = FiniteGroup::from_parts(n, table, labels);
        let space_injection = GroupHom::new(
            self.space.clone(),
            group.clone(),
            (0..ns).map(|t| enc(t, 0)).collect(),
        )
        .expect("space injects");
        let actor_injection = GroupHom::new(
            self.actor.clone(),
            group.clone(),
            (0..na).map(|g| enc(0, g)).collect(),
        )
        .expect("actor injects");
        let projection = GroupHom::new(
            group.clone(),
            self.actor.clone(),
            (0..n).map(|x| x % na).collect(),
        )
        .expect("projection onto actor");
        SemidirectProduct {
            group,
            space_injection,
            actor_injection,
            projection,
        }
    }
}

#[inline]
fn table_entry(t: usize, g: usize, na: usize) -> usize {
    t * na + g
}

/// `space ⋊ actor` with its structure maps. The space embeds as a normal
/// subgroup, the actor injection is a section of the projection.
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub space_injection: GroupHom,
    pub actor_injection: GroupHom,
    pub projection: GroupHom,
}

impl SemidirectProduct {
    pub fn encode(&self, t: usize, g: usize) -> usize {
        t * self.projection.target().order() + g
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        let na = self.projection.target().order();
        (x / na, x % na)
    }
}
