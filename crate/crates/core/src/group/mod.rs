//! Finite groups as full multiplication tables.
//!
//! Element indices run `0..order` with the identity at index 0. Values are
//! immutable after construction and cheap to clone (the table sits behind an
//! `Arc`), so they can be shared freely.

mod action;
mod hom;
mod search;

pub use action::{GroupAction, SemidirectProduct};
pub use hom::GroupHom;
pub use search::{
    all_automorphisms, all_endomorphisms, all_homomorphisms, all_isomorphisms,
    first_isomorphism_with,
};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::FGAbelianGroup;
use crate::DEFAULT_ORDER_BOUND;

struct Inner {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order && self.inner.table == other.inner.table)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order())
    }
}

impl FiniteGroup {
    /// Build from a raw table, validating the full group law: identity at
    /// index 0, two-sided inverses, and associativity on every triple.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Argument("empty multiplication table".into()));
        }
        if table.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("multiplication table is not square".into()));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Argument("label count does not match order".into()));
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            for &x in row {
                if x >= n {
                    return Err(Error::Argument(format!("table entry {x} out of range")));
                }
                flat.push(x);
            }
        }
        // identity at 0
        for x in 0..n {
            if flat[x] != x || flat[x * n] != x {
                return Err(Error::Argument(
                    "index 0 is not a two-sided identity".into(),
                ));
            }
        }
        // inverses
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(Error::Argument(format!("element {a} has no inverse"))),
            }
        }
        // associativity, exhaustive
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::Argument(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            inner: Arc::new(Inner {
                order: n,
                table: flat,
                inv,
                labels,
            }),
        })
    }

    /// Internal constructor for tables that are group laws by construction.
    /// Identity/inverse consistency is always checked; full associativity
    /// only for small orders in debug builds.
    fn from_parts(order: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("constructed table has inverses");
            assert_eq!(
                table[b * order + a],
                0,
                "constructed table: one-sided inverse"
            );
            inv[a] = b;
        }
        for x in 0..order {
            assert!(
                table[x] == x && table[x * order] == x,
                "identity not at index 0"
            );
        }
        #[cfg(debug_assertions)]
        if order <= 96 {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b];
                    for c in 0..order {
                        assert_eq!(
                            table[ab * order + c],
                            table[a * order + table[b * order + c]],
                            "constructed table not associative"
                        );
                    }
                }
            }
        }
        FiniteGroup {
            inner: Arc::new(Inner {
                order,
                table,
                inv,
                labels,
            }),
        }
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_parts(1, vec![0], None)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        FiniteGroup::from_parts(n, table, None)
    }

    /// Direct sum of cyclic groups `Z/n1 + Z/n2 + ...`; elements are residue
    /// tuples in lexicographic order, so the identity tuple has index 0.
    pub fn abelian_from_invariants(factors: &[u64]) -> Result<Self> {
        if factors.iter().any(|&f| f < 2) {
            return Err(Error::Argument("invariant factors must be >= 2".into()));
        }
        let order: u64 = factors.iter().product();
        let order = usize::try_from(order).expect("order fits usize");
        if order > DEFAULT_ORDER_BOUND {
            return Err(Error::SizeLimit {
                what: "abelian group order",
                bound: DEFAULT_ORDER_BOUND,
                needed: order,
            });
        }
        let k = factors.len();
        let tuple_of = |mut idx: usize| -> Vec<u64> {
            let mut t = vec![0u64; k];
            for i in (0..k).rev() {
                t[i] = (idx as u64) % factors[i];
                idx /= factors[i] as usize;
            }
            t
        };
        let index_of = |t: &[u64]| -> usize {
            let mut idx = 0usize;
            for i in 0..k {
                idx = idx * factors[i] as usize + t[i] as usize;
            }
            idx
        };
        let mut table = vec![0; order * order];
        for a in 0..order {
            let ta = tuple_of(a);
            for b in 0..order {
                let tb = tuple_of(b);
                let sum: Vec<u64> = (0..k).map(|i| (ta[i] + tb[i]) % factors[i]).collect();
                table[a * order + b] = index_of(&sum);
            }
        }
        let labels = (0..order)
            .map(|i| {
                let t = tuple_of(i);
                let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Ok(FiniteGroup::from_parts(order, table, Some(labels)))
    }

    /// Dihedral group of order `2n` (`n >= 1`).
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        // element 2k = rotation r^k, element 2k+1 = reflection s r^k
        let enc = |refl: bool, k: usize| 2 * k + usize::from(refl);
        let mut table = vec![0; order * order];
        for a in 0..order {
            let (ra, ka) = (a % 2 == 1, a / 2);
            for b in 0..order {
                let (rb, kb) = (b % 2 == 1, b / 2);
                // (s^e r^k)(s^f r^l) = s^(e+f) r^(±k+l)
                let k = if rb { (n - ka % n) % n + kb } else { ka + kb } % n;
                table[a * order + b] = enc(ra ^ rb, k);
            }
        }
        FiniteGroup::from_parts(order, table, None)
    }

    /// Closure of permutation generators under composition. Element order is
    /// BFS order from the identity, applying generators in input order, so
    /// the labeling is deterministic. Generators are image arrays on
    /// `1..=degree` (1-based entries).
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        FiniteGroup::from_permutations_bounded(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn from_permutations_bounded(
        degree: usize,
        generators: &[Vec<usize>],
        order_bound: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Argument("degree must be positive".into()));
        }
        let mut gens: Vec<Vec<usize>> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != degree {
                return Err(Error::Argument(format!(
                    "generator has {} entries, expected {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            let mut perm = vec![0usize; degree];
            for (i, &img) in g.iter().enumerate() {
                if img < 1 || img > degree {
                    return Err(Error::Argument(format!(
                        "image {img} out of range 1..={degree}"
                    )));
                }
                if seen[img - 1] {
                    return Err(Error::Argument(format!(
                        "generator is not a bijection: {img} repeated"
                    )));
                }
                seen[img - 1] = true;
                perm[i] = img - 1;
            }
            gens.push(perm);
        }
        // left-to-right composition: (p * q)(i) = q[p[i]]
        let compose =
            |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&i| q[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            for g in &gens {
                let next = compose(&cur, g);
                if !index.contains_key(&next) {
                    if elems.len() >= order_bound {
                        return Err(Error::SizeLimit {
                            what: "permutation closure",
                            bound: order_bound,
                            needed: elems.len() + 1,
                        });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            frontier += 1;
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elems[a], &elems[b])];
            }
        }
        Ok(FiniteGroup::from_parts(n, table, None))
    }

    /// Direct product, space-major pair indexing `(a, b) -> a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        GroupAction::trivial(b, a).semidirect_product().group
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a * self.inner.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inv[a]
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn full_set(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.inner.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.inner.labels.as_deref()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    // -- subgroups as sorted element-index sets ----------------------------

    /// Smallest subgroup containing `seed`, as a sorted index set.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order()];
        in_set[0] = true;
        let mut stack: Vec<usize> = vec![0];
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                stack.push(s);
            }
        }
        let mut members = stack.clone();
        while let Some(x) = stack.pop() {
            let candidates: Vec<usize> = members
                .iter()
                .flat_map(|&m| [self.mul(x, m), self.mul(m, x)])
                .chain([self.inv(x)])
                .collect();
            for c in candidates {
                if !in_set[c] {
                    in_set[c] = true;
                    members.push(c);
                    stack.push(c);
                }
            }
        }
        let mut out: Vec<usize> = (0..self.order()).filter(|&i| in_set[i]).collect();
        out.sort_unstable();
        out
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut current = self.subgroup_closure(seed);
        loop {
            let mut extra = Vec::new();
            for &g in &self.full_set() {
                for &n in &current {
                    let c = self.conj(g, n);
                    if current.binary_search(&c).is_err() {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            let mut seed2 = current;
            seed2.extend(extra);
            current = self.subgroup_closure(&seed2);
        }
    }

    /// `[A, B]`: the normal closure, inside the subgroup generated by
    /// `A ∪ B`, of all commutators `a b a^-1 b^-1`.
    pub fn commutator_subgroup(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut union: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
        union.sort_unstable();
        union.dedup();
        let ambient_set = self.subgroup_closure(&union);
        let (ambient, old_of_new) = self
            .subgroup_as_group(&ambient_set)
            .expect("closure is a subgroup");
        let new_of_old: HashMap<usize, usize> = old_of_new
            .iter()
            .enumerate()
            .map(|(n, &o)| (o, n))
            .collect();
        let mut comms = Vec::new();
        for &x in a {
            for &y in b {
                comms.push(new_of_old[&self.commutator(x, y)]);
            }
        }
        let inside = ambient.normal_closure(&comms);
        let mut out: Vec<usize> = inside.iter().map(|&n| old_of_new[n]).collect();
        out.sort_unstable();
        out
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let all = self.full_set();
        self.commutator_subgroup(&all, &all)
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.binary_search(&0).is_err() {
            return false;
        }
        set.iter().all(|&a| {
            set.binary_search(&self.inv(a)).is_ok()
                && set
                    .iter()
                    .all(|&b| set.binary_search(&self.mul(a, b)).is_ok())
        })
    }

    pub fn is_normal_subgroup(&self, set: &[usize]) -> bool {
        self.is_subgroup(set)
            && self.elements().all(|g| {
                set.iter()
                    .all(|&n| set.binary_search(&self.conj(g, n)).is_ok())
            })
    }

    /// Promote a subgroup element set to a group of its own with the induced
    /// table. Returns the group and the map new index -> ambient index.
    pub fn subgroup_as_group(&self, set: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&w) = sorted.iter().find(|&&a| {
            sorted.binary_search(&self.inv(a)).is_err()
                || sorted
                    .iter()
                    .any(|&b| sorted.binary_search(&self.mul(a, b)).is_err())
        }) {
            return Err(Error::NotASubgroup { witness: w });
        }
        if sorted.binary_search(&0).is_err() {
            return Err(Error::NotASubgroup { witness: 0 });
        }
        let n = sorted.len();
        let new_of_old: HashMap<usize, usize> =
            sorted.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = new_of_old[&self.mul(sorted[i], sorted[j])];
            }
        }
        let labels = self
            .inner
            .labels
            .as_ref()
            .map(|l| sorted.iter().map(|&o| l[o].clone()).collect());
        Ok((FiniteGroup::from_parts(n, table, labels), sorted))
    }

    /// Inclusion homomorphism of a subgroup promoted by `subgroup_as_group`.
    pub fn inclusion_hom(&self, set: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
        let (sub, old_of_new) = self.subgroup_as_group(set)?;
        let hom = GroupHom::new(sub.clone(), self.clone(), old_of_new)?;
        Ok((sub, hom))
    }

    /// Quotient by a normal subgroup; cosets are indexed in the order of
    /// their minimal representatives. Returns the quotient and projection.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
        let mut nset = normal.to_vec();
        nset.sort_unstable();
        nset.dedup();
        if !self.is_subgroup(&nset) {
            let w = *nset.first().unwrap_or(&0);
            return Err(Error::NotASubgroup { witness: w });
        }
        if let Some((g, n)) = self.elements().find_map(|g| {
            nset.iter()
                .find(|&&n| nset.binary_search(&self.conj(g, n)).is_err())
                .map(|&n| (g, n))
        }) {
            return Err(Error::NotNormal { g, n });
        }
        let order = self.order();
        let mut coset_of = vec![usize::MAX; order];
        let mut reps = Vec::new();
        for x in 0..order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &m in &nset {
                coset_of[self.mul(x, m)] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![0; q * q];
        for i in 0..q {
            for j in 0..q {
                table[i * q + j] = coset_of[self.mul(reps[i], reps[j])];
            }
        }
        let quot = FiniteGroup::from_parts(q, table, None);
        let proj = GroupHom::new(self.clone(), quot.clone(), coset_of)?;
        Ok((quot, proj))
    }

    /// Quotient by the derived subgroup, with the invariant factors of the
    /// abelian quotient.
    pub fn abelianization(&self) -> (FiniteGroup, GroupHom, FGAbelianGroup) {
        let derived = self.derived_subgroup();
        let (ab, proj) = self.quotient(&derived).expect("derived subgroup is normal");
        let invs = ab.abelian_invariants();
        (ab, proj, FGAbelianGroup::from_torsion(&invs))
    }

    /// Invariant factors of an abelian group, computed by counting elements
    /// of each prime-power order (independent of any matrix reduction).
    pub fn abelian_invariants(&self) -> Vec<u64> {
        assert!(
            self.is_abelian(),
            "abelian_invariants needs an abelian group"
        );
        let n = self.order() as u64;
        if n == 1 {
            return vec![];
        }
        let mut primes = Vec::new();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                primes.push(p);
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        // per prime: exponents of the cyclic p-factors, descending
        let mut per_prime: Vec<Vec<u32>> = Vec::new();
        for &p in &primes {
            let mut ppart = 1u64;
            let mut q = n;
            while q.is_multiple_of(p) {
                ppart *= p;
                q /= p;
            }
            let count_killed_by = |e: u32| -> u64 {
                let pk = p.pow(e);
                self.elements()
                    .filter(|&x| self.pow(x, pk as i64) == 0)
                    .count() as u64
            };
            let mut logs = vec![0u32]; // log_p of count at k = 0
            let mut k = 1;
            loop {
                let c = count_killed_by(k);
                let mut lg = 0u32;
                let mut cc = c;
                while cc > 1 {
                    debug_assert_eq!(cc % p, 0);
                    cc /= p;
                    lg += 1;
                }
                logs.push(lg);
                if c == ppart {
                    break;
                }
                k += 1;
            }
            // m_k = #factors with exponent >= k
            let ms: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
            let r = ms[0] as usize;
            let mut lambdas = vec![0u32; r];
            for (i, lam) in lambdas.iter_mut().enumerate() {
                *lam = ms.iter().filter(|&&mk| mk as usize > i).count() as u32;
            }
            lambdas.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push(lambdas);
        }
        let width = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut factors_desc = vec![1u64; width];
        for (pi, lambdas) in per_prime.iter().enumerate() {
            for (j, &e) in lambdas.iter().enumerate() {
                factors_desc[j] *= primes[pi].pow(e);
            }
        }
        factors_desc.retain(|&d| d > 1);
        factors_desc.reverse();
        factors_desc
    }

    /// Greedy deterministic generating sequence: repeatedly adjoin the
    /// smallest element outside the closure so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = vec![0usize];
        while closure.len() < self.order() {
            let next = self
                .elements()
                .find(|x| closure.binary_search(x).is_err())
                .expect("closure not yet full");
            gens.push(next);
            closure = self.subgroup_closure(&gens);
        }
        gens
    }
}

/// Canonical generator indices of `abelian_from_invariants(factors)`:
/// the i-th generator is the tuple with 1 in slot i.
pub fn abelian_generators(factors: &[u64]) -> Vec<usize> {
    let k = factors.len();
    (0..k)
        .map(|i| {
            let mut idx = 0usize;
            for (j, &f) in factors.iter().enumerate() {
                idx = idx * f as usize + usize::from(j == i);
            }
            idx
        })
        .collect()
}
