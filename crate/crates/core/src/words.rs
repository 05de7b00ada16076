//! Free groups: reduced words, coset tables for kernels of maps onto finite
//! abelian groups, Schreier generators and Reidemeister rewriting.
//!
//! Because the quotient is handed to us as a finite group, cosets are
//! literally its elements; no enumeration procedure is needed.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Hard cap on word length; conjugate rewriting can grow words, and we want
/// a loud failure instead of an unbounded allocation.
pub const MAX_WORD_LEN: usize = 1_000_000;

/// A freely reduced word: positive letter `k` is the generator `x_k`,
/// negative `-k` its inverse (`k >= 1`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    /// Freely reduce a letter sequence. Rejects the letter 0 and words over
    /// the length cap.
    pub fn reduce(letters: &[i32]) -> Result<Self> {
        if letters.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                bound: MAX_WORD_LEN,
            });
        }
        let mut stack: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 {
                return Err(Error::Argument("letter 0 is not a generator".into()));
            }
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(Word { letters: stack })
    }

    pub fn generator(k: usize) -> Self {
        assert!(k >= 1);
        Word {
            letters: vec![k as i32],
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Concatenate and reduce.
    pub fn concat(&self, other: &Word) -> Result<Self> {
        if self.len() + other.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                bound: MAX_WORD_LEN,
            });
        }
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(Word { letters: stack })
    }

    /// `w^k` for any integer `k`.
    pub fn power(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::empty();
        for _ in 0..k.unsigned_abs() {
            acc = acc.concat(&base)?;
        }
        Ok(acc)
    }

    /// Signed exponent sums per generator.
    pub fn exponent_vector(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            assert!(k >= 1 && k <= rank, "letter {l} outside rank {rank}");
            v[k - 1] += l.signum() as i64;
        }
        v
    }

    /// Letters as `a..z` for generators 1..26, uppercase for inverses.
    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|&l| {
                let k = (l.unsigned_abs() - 1) as u8;
                assert!(k < 26, "text form only covers 26 generators");
                if l > 0 {
                    (b'a' + k) as char
                } else {
                    (b'A' + k) as char
                }
            })
            .collect()
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let l = match c {
                'a'..='z' => (c as u8 - b'a') as i32 + 1,
                'A'..='Z' => -((c as u8 - b'A') as i32 + 1),
                c if c.is_whitespace() => continue,
                _ => return Err(Error::Argument(format!("bad word character {c:?}"))),
            };
            letters.push(l);
        }
        Word::reduce(&letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.to_text())
        }
    }
}

/// Coset table for `N = ker(f)` where `f : F_rank -> M` sends `x_k` to
/// `images[k-1]` in a finite abelian group `M`. Cosets are the elements of
/// `M` (coset 0 = the subgroup). The transversal is a Schreier transversal
/// built by BFS with generators in index order, positive letter first.
#[derive(Clone)]
pub struct CosetTable {
    rank: usize,
    quotient: FiniteGroup,
    images: Vec<usize>,
    transversal: Vec<Word>,
}

impl CosetTable {
    pub fn new(rank: usize, quotient: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::Argument(format!(
                "need one image per generator: got {}, rank {rank}",
                images.len()
            )));
        }
        if !quotient.is_abelian() {
            return Err(Error::Argument("quotient group must be abelian".into()));
        }
        if let Some(&bad) = images.iter().find(|&&m| m >= quotient.order()) {
            return Err(Error::Argument(format!("image {bad} out of range")));
        }
        let reached = quotient.subgroup_closure(&images);
        if reached.len() != quotient.order() {
            let missing = quotient
                .elements()
                .find(|x| reached.binary_search(x).is_err())
                .unwrap();
            return Err(Error::NotSurjective { missing });
        }
        let n = quotient.order();
        let mut transversal: Vec<Option<Word>> = vec![None; n];
        transversal[0] = Some(Word::empty());
        let mut queue = vec![0usize];
        let mut head = 0;
        // Positive letters reach every coset of a finite quotient, so the
        // representatives are positive words; deterministic by construction.
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for (k, &img) in images.iter().enumerate() {
                let target = quotient.mul(c, img);
                if transversal[target].is_none() {
                    let step = Word::generator(k + 1);
                    transversal[target] = Some(transversal[c].as_ref().unwrap().concat(&step)?);
                    queue.push(target);
                }
            }
        }
        let transversal: Vec<Word> = transversal.into_iter().map(Option::unwrap).collect();
        Ok(CosetTable {
            rank,
            quotient,
            images,
            transversal,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn index(&self) -> usize {
        self.quotient.order()
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn generator_image(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn transversal(&self, coset: usize) -> &Word {
        &self.transversal[coset]
    }

    /// Action of a signed generator letter on a coset.
    pub fn step(&self, coset: usize, letter: i32) -> usize {
        let k = (letter.unsigned_abs() - 1) as usize;
        assert!(k < self.rank);
        if letter > 0 {
            self.quotient.mul(coset, self.images[k])
        } else {
            self.quotient.mul(coset, self.quotient.inv(self.images[k]))
        }
    }

    /// Image of a whole word in the quotient.
    pub fn image_of_word(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |c, &l| self.step(c, l))
    }

    pub fn contains_in_kernel(&self, w: &Word) -> bool {
        self.image_of_word(w) == 0
    }
}

/// Free basis of `N = ker f` by the Schreier construction: the nontrivial
/// words `t_c x_k t_{c.k}^{-1}`.
pub struct SchreierBasis {
    table: CosetTable,
    /// (coset, generator index) pairs of the surviving Schreier generators
    generators: Vec<(usize, usize)>,
    words: Vec<Word>,
    /// (coset, generator) -> basis index
    lookup: Vec<Option<usize>>,
}

impl SchreierBasis {
    pub fn new(table: CosetTable) -> Result<Self> {
        let rank = table.rank();
        let index = table.index();
        let mut generators = Vec::new();
        let mut words = Vec::new();
        let mut lookup = vec![None; index * rank];
        for c in 0..index {
            for k in 0..rank {
                let letter = k as i32 + 1;
                let target = table.step(c, letter);
                let w = table
                    .transversal(c)
                    .concat(&Word::generator(k + 1))?
                    .concat(&table.transversal(target).inverse())?;
                if w.is_empty() {
                    continue; // tree edge
                }
                debug_assert!(table.contains_in_kernel(&w));
                lookup[c * rank + k] = Some(words.len());
                generators.push((c, k));
                words.push(w);
            }
        }
        let expected = index * (rank.saturating_sub(1)) + 1;
        assert_eq!(
            words.len(),
            expected,
            "Schreier count must be index*(rank-1)+1"
        );
        Ok(SchreierBasis {
            table,
            generators,
            words,
            lookup,
        })
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn generator_pairs(&self) -> &[(usize, usize)] {
        &self.generators
    }

    /// Rewrite a kernel word as a product of signed basis elements by coset
    /// scanning. Concatenating the basis words along the output and reducing
    /// gives back the input word.
    pub fn rewrite(&self, w: &Word) -> Result<Vec<i64>> {
        let img = self.table.image_of_word(w);
        if img != 0 {
            return Err(Error::NotInKernel { image: img });
        }
        let rank = self.table.rank();
        let mut out = Vec::new();
        let mut coset = 0usize;
        for &l in w.letters() {
            if l > 0 {
                let k = (l - 1) as usize;
                if let Some(i) = self.lookup[coset * rank + k] {
                    out.push(i as i64 + 1);
                }
                coset = self.table.step(coset, l);
            } else {
                let k = (-l - 1) as usize;
                // step back to the source coset of the positive edge
                let src = self.table.step(coset, l);
                if let Some(i) = self.lookup[src * rank + k] {
                    out.push(-(i as i64 + 1));
                }
                coset = src;
            }
        }
        debug_assert_eq!(coset, 0);
        Ok(out)
    }

    /// Abelianized rewrite: exponent vector over basis indices.
    pub fn rewrite_abelianized(&self, w: &Word) -> Result<Vec<i64>> {
        let seq = self.rewrite(w)?;
        let mut v = vec![0i64; self.len()];
        for s in seq {
            let i = (s.unsigned_abs() - 1) as usize;
            v[i] += s.signum();
        }
        Ok(v)
    }

    /// Expand a signed-index sequence back into an ambient word.
    pub fn expand(&self, seq: &[i64]) -> Result<Word> {
        let mut acc = Word::empty();
        for &s in seq {
            let i = (s.unsigned_abs() - 1) as usize;
            let w = if s > 0 {
                self.words[i].clone()
            } else {
                self.words[i].inverse()
            };
            acc = acc.concat(&w)?;
        }
        Ok(acc)
    }

    /// Product of `word_i^{v_i}` in index order, as an ambient word (used
    /// for certificate witnesses).
    pub fn expand_exponents(&self, v: &[i64]) -> Result<Word> {
        assert_eq!(v.len(), self.len());
        let mut acc = Word::empty();
        for (i, &e) in v.iter().enumerate() {
            acc = acc.concat(&self.words[i].power(e)?)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(Word::reduce(&[1, -1, 2]).unwrap().letters(), &[2]);
        assert!(Word::reduce(&[]).unwrap().is_empty());
        assert!(Word::reduce(&[1, 2, -2, -1]).unwrap().is_empty());
        assert!(Word::reduce(&[1, 0]).is_err());
    }

    #[test]
    fn word_length_bound_is_enforced() {
        let too_long = vec![1i32; MAX_WORD_LEN + 1];
        assert!(matches!(
            Word::reduce(&too_long),
            Err(Error::WordTooLong { .. })
        ));
        let half = Word::reduce(&vec![1i32; MAX_WORD_LEN / 2 + 1]).unwrap();
        assert!(matches!(half.concat(&half), Err(Error::WordTooLong { .. })));
    }

    #[test]
    fn text_round_trip() {
        let w = Word::from_text("abAB").unwrap();
        assert_eq!(w.letters(), &[1, 2, -1, -2]);
        assert_eq!(w.to_text(), "abAB");
        assert_eq!(Word::from_text("aA").unwrap(), Word::empty());
    }

    fn klein_table() -> CosetTable {
        let m = FiniteGroup::abelian_from_invariants(&[2, 2]).unwrap();
        // x1 -> (1,0) = index 2, x2 -> (0,1) = index 1
        CosetTable::new(2, m, vec![2, 1]).unwrap()
    }

    #[test]
    fn coset_table_klein_four() {
        let t = klein_table();
        assert_eq!(t.index(), 4);
        assert_eq!(t.transversal(0), &Word::empty());
        assert_eq!(t.transversal(2).to_text(), "a");
        assert_eq!(t.transversal(1).to_text(), "b");
        assert_eq!(t.transversal(3).to_text(), "ab");
    }

    #[test]
    fn coset_table_cyclic_5() {
        let m = FiniteGroup::cyclic(5);
        let t = CosetTable::new(1, m, vec![1]).unwrap();
        assert_eq!(t.index(), 5);
        assert!(t.transversal(0).is_empty());
        for (c, text) in [(1, "a"), (2, "aa"), (3, "aaa"), (4, "aaaa")] {
            assert_eq!(t.transversal(c).to_text(), text);
        }
    }

    #[test]
    fn coset_table_requires_surjectivity() {
        let m = FiniteGroup::abelian_from_invariants(&[2, 2]).unwrap();
        let err = CosetTable::new(2, m, vec![1, 1]);
        assert!(matches!(err, Err(Error::NotSurjective { .. })));
    }

    #[test]
    fn coset_table_two_cosets() {
        let m = FiniteGroup::cyclic(2);
        let t = CosetTable::new(2, m, vec![1, 0]).unwrap();
        assert_eq!(t.index(), 2);
    }

    #[test]
    fn schreier_basis_klein_four() {
        let basis = SchreierBasis::new(klein_table()).unwrap();
        assert_eq!(basis.len(), 5);
        let texts: Vec<String> = basis.words().iter().map(|w| w.to_text()).collect();
        assert_eq!(texts, vec!["baBA", "bb", "aa", "abaB", "abbA"]);
    }

    #[test]
    fn schreier_basis_cyclic() {
        let m = FiniteGroup::cyclic(4);
        let basis = SchreierBasis::new(CosetTable::new(1, m, vec![1]).unwrap()).unwrap();
        assert_eq!(basis.len(), 1);
        // kernel of Z -> Z/4 is generated by x^4
        assert_eq!(basis.word(0).exponent_vector(1), vec![4]);
    }

    #[test]
    fn schreier_basis_trivial_quotient() {
        let basis =
            SchreierBasis::new(CosetTable::new(2, FiniteGroup::trivial(), vec![0, 0]).unwrap())
                .unwrap();
        assert_eq!(basis.len(), 2);
        let texts: Vec<String> = basis.words().iter().map(|w| w.to_text()).collect();
        assert_eq!(texts, vec!["a", "b"]);
    }

    #[test]
    fn rewrite_examples() {
        let basis = SchreierBasis::new(klein_table()).unwrap();
        // a basis word rewrites to its own singleton index
        for (i, w) in basis.words().iter().enumerate() {
            assert_eq!(basis.rewrite(w).unwrap(), vec![i as i64 + 1]);
        }
        assert!(basis.rewrite(&Word::empty()).unwrap().is_empty());

        // rank 1, M = Z/2, x^4 = (x^2)^2
        let m = FiniteGroup::cyclic(2);
        let b = SchreierBasis::new(CosetTable::new(1, m, vec![1]).unwrap()).unwrap();
        let w = Word::from_text("aaaa").unwrap();
        assert_eq!(b.rewrite(&w).unwrap(), vec![1, 1]);

        // membership error
        let err = b.rewrite(&Word::from_text("a").unwrap());
        assert!(matches!(err, Err(Error::NotInKernel { .. })));
    }

    #[test]
    fn exponent_vectors() {
        let w = Word::from_text("abAb").unwrap();
        assert_eq!(w.exponent_vector(2), vec![0, 2]);
        assert_eq!(Word::empty().exponent_vector(2), vec![0, 0]);
        assert_eq!(
            Word::from_text("abAB").unwrap().exponent_vector(2),
            vec![0, 0]
        );
    }

    fn arb_word(rank: i32, len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(
            (1..=rank).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]),
            0..len,
        )
        .prop_map(|ls| Word::reduce(&ls).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in arb_word(3, 40)) {
            prop_assert_eq!(Word::reduce(w.letters()).unwrap(), w);
        }

        #[test]
        fn exponent_vector_is_monoidal(u in arb_word(3, 30), v in arb_word(3, 30)) {
            let uv = u.concat(&v).unwrap();
            let sum: Vec<i64> = u
                .exponent_vector(3)
                .iter()
                .zip(v.exponent_vector(3))
                .map(|(a, b)| a + b)
                .collect();
            prop_assert_eq!(uv.exponent_vector(3), sum);
        }

        #[test]
        fn exponent_vector_conjugation_invariant(g in arb_word(3, 20), w in arb_word(3, 20)) {
            let conj = g.concat(&w).unwrap().concat(&g.inverse()).unwrap();
            prop_assert_eq!(conj.exponent_vector(3), w.exponent_vector(3));
        }

        #[test]
        fn rewrite_round_trip(ls in prop::collection::vec(
            (1i32..=2).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]), 0..30)) {
            let basis = SchreierBasis::new(klein_table()).unwrap();
            let w = Word::reduce(&ls).unwrap();
            prop_assume!(basis.table().contains_in_kernel(&w));
            let seq = basis.rewrite(&w).unwrap();
            let back = basis.expand(&seq).unwrap();
            prop_assert_eq!(back, w);
        }
    }
}
