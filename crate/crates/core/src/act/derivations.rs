//! Whitehead derivations of a crossed module and their group of units.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::xmod::CrossedModule;

/// A map `d : G -> T` with `d(g h) = d(g) * ^g d(h)` over a crossed module
/// `(T, G, mu)`.
#[derive(Clone, PartialEq)]
pub struct Derivation {
    base: CrossedModule,
    map: Vec<usize>,
}

impl std::fmt::Debug for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Derivation({:?})", self.map)
    }
}

impl Derivation {
    pub fn new(base: CrossedModule, map: Vec<usize>) -> Result<Self> {
        if map.len() != base.base().order() {
            return Err(Error::Argument("derivation map has wrong length".into()));
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= base.top().order()) {
            return Err(Error::Argument(format!(
                "derivation value {bad} out of range"
            )));
        }
        let g = base.base();
        let t = base.top();
        for x in g.elements() {
            for y in g.elements() {
                let lhs = map[g.mul(x, y)];
                let rhs = t.mul(map[x], base.act(x, map[y]));
                if lhs != rhs {
                    return Err(Error::NotADerivation { g: x, h: y });
                }
            }
        }
        Ok(Derivation { base, map })
    }

    pub fn zero(base: &CrossedModule) -> Self {
        Derivation {
            base: base.clone(),
            map: vec![0; base.base().order()],
        }
    }

    pub fn base(&self) -> &CrossedModule {
        &self.base
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&t| t == 0)
    }

    /// `sigma(d) : g -> mu(d(g)) * g`, an endomorphism of `G`.
    pub fn sigma(&self) -> GroupHom {
        let g = self.base.base();
        let images: Vec<usize> = g
            .elements()
            .map(|x| g.mul(self.base.mu().apply(self.map[x]), x))
            .collect();
        GroupHom::new(g.clone(), g.clone(), images)
            .expect("sigma of a derivation is an endomorphism")
    }

    /// `theta(d) : t -> d(mu(t)) * t`, an endomorphism of `T`.
    pub fn theta(&self) -> GroupHom {
        let t = self.base.top();
        let images: Vec<usize> = t
            .elements()
            .map(|x| t.mul(self.map[self.base.mu().apply(x)], x))
            .collect();
        GroupHom::new(t.clone(), t.clone(), images)
            .expect("theta of a derivation is an endomorphism")
    }

    /// Whitehead product `(d1 * d2)(g) = d1(sigma2(g)) * d2(g)`.
    pub fn whitehead_product(&self, other: &Derivation) -> Derivation {
        assert!(
            self.base == other.base,
            "derivations over different crossed modules"
        );
        let g = self.base.base();
        let t = self.base.top();
        let mu = self.base.mu();
        let map: Vec<usize> = g
            .elements()
            .map(|x| {
                let sigma2 = g.mul(mu.apply(other.map[x]), x);
                t.mul(self.map[sigma2], other.map[x])
            })
            .collect();
        Derivation::new(self.base.clone(), map)
            .expect("the Whitehead product of derivations is a derivation")
    }

    /// Units are the derivations whose `sigma` (equivalently `theta`) is an
    /// automorphism.
    pub fn is_unit(&self) -> bool {
        self.sigma().is_bijective()
    }
}

/// All derivations of `x`, enumerated by generator images in lexicographic
/// order. The number of candidate maps is `|T| ^ #gens(G)` and must stay
/// under `enum_bound`.
pub fn derivation_set(x: &CrossedModule, enum_bound: usize) -> Result<Vec<Derivation>> {
    let g = x.base();
    let t = x.top();
    let gens = g.generating_set();
    let candidates = (t.order() as u128).checked_pow(gens.len() as u32);
    match candidates {
        Some(c) if c <= enum_bound as u128 => {}
        _ => {
            return Err(Error::SizeLimit {
                what: "derivation enumeration",
                bound: enum_bound,
                needed: candidates.map_or(usize::MAX, |c| c.min(usize::MAX as u128) as usize),
            })
        }
    }
    let mut out = Vec::new();
    let mut assignment = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend_derivation(x, &gens, &assignment) {
            // Cayley-edge consistency pins the law; full validation is cheap
            // and re-run here for safety.
            if let Ok(d) = Derivation::new(x.clone(), map) {
                out.push(d);
            } else {
                unreachable!("consistent extension must satisfy the derivation law");
            }
        }
        // next assignment, lexicographic
        let mut i = gens.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < t.order() {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Extend generator values to a full derivation map along the Cayley graph:
/// `d(x g) = d(x) * ^x d(g)`. Returns None on conflict.
fn extend_derivation(x: &CrossedModule, gens: &[usize], values: &[usize]) -> Option<Vec<usize>> {
    let g = x.base();
    let t = x.top();
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut known = vec![0usize];
    for (&gen, &v) in gens.iter().zip(values) {
        map[gen] = v;
        known.push(gen);
    }
    let mut frontier = 0;
    while frontier < known.len() {
        let cur = known[frontier];
        frontier += 1;
        for &gen in gens {
            let next = g.mul(cur, gen);
            let val = t.mul(map[cur], x.act(cur, map[gen]));
            if map[next] == usize::MAX {
                map[next] = val;
                known.push(next);
            } else if map[next] != val {
                return None;
            }
        }
    }
    debug_assert!(
        map.iter().all(|&v| v != usize::MAX),
        "generators generate G"
    );
    Some(map)
}

/// The Whitehead group `D(G, T)`: units of the derivation monoid, as a
/// finite group. Element 0 is the zero derivation.
pub struct WhiteheadGroup {
    pub group: FiniteGroup,
    /// unit derivations, in group-element order
    pub units: Vec<Derivation>,
    /// index of each unit inside the full derivation set
    pub set_indices: Vec<usize>,
    /// the full derivation monoid that the units were carved from
    pub all: Vec<Derivation>,
}

impl WhiteheadGroup {
    /// Index of a derivation map among the units.
    pub fn unit_index(&self, map: &[usize]) -> Option<usize> {
        self.units.iter().position(|d| d.map() == map)
    }
}

/// Compute `D(G, T)` by enumerating the derivation monoid and carving out
/// the elements with a two-sided inverse. Norrie's criterion (`sigma(d)`
/// bijective) is asserted to agree.
pub fn whitehead_group(x: &CrossedModule, enum_bound: usize) -> Result<WhiteheadGroup> {
    let all = derivation_set(x, enum_bound)?;
    let index_of: HashMap<Vec<usize>, usize> = all
        .iter()
        .enumerate()
        .map(|(i, d)| (d.map().to_vec(), i))
        .collect();
    let n = all.len();
    // full monoid product table (desk scale)
    let mut product = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = all[i].whitehead_product(&all[j]);
            product[i * n + j] = index_of[p.map()];
        }
    }
    let zero = index_of[Derivation::zero(x).map()];
    debug_assert_eq!(zero, 0, "the zero derivation is enumerated first");
    let mut is_unit = vec![false; n];
    for i in 0..n {
        let has_right = (0..n).any(|j| product[i * n + j] == zero);
        let has_left = (0..n).any(|j| product[j * n + i] == zero);
        is_unit[i] = has_right && has_left;
        assert_eq!(
            is_unit[i],
            all[i].is_unit(),
            "two-sided invertibility must match the sigma criterion"
        );
    }
    let set_indices: Vec<usize> = (0..n).filter(|&i| is_unit[i]).collect();
    let units: Vec<Derivation> = set_indices.iter().map(|&i| all[i].clone()).collect();
    let unit_pos: HashMap<usize, usize> = set_indices
        .iter()
        .enumerate()
        .map(|(pos, &i)| (i, pos))
        .collect();
    let m = units.len();
    let mut table = vec![0usize; m * m];
    for a in 0..m {
        for b in 0..m {
            let p = product[set_indices[a] * n + set_indices[b]];
            table[a * m + b] = *unit_pos.get(&p).expect("product of units is a unit");
        }
    }
    let group = FiniteGroup::from_table(
        (0..m)
            .map(|a| (0..m).map(|b| table[a * m + b]).collect())
            .collect(),
        None,
    )
    .expect("units form a group under the Whitehead product");
    Ok(WhiteheadGroup {
        group,
        units,
        set_indices,
        all,
    })
}
