//! Exact integer matrices, Smith normal form and finitely generated
//! abelian groups in invariant-factor form.
#![allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra
//!
//! All arithmetic is exact. The Smith reduction runs on `i128` with checked
//! operations and falls back to `BigInt` if anything would overflow, so no
//! result is ever silently wrong.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Dense matrix over the integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Glue columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    fn fits_i128(&self) -> bool {
        // Leave generous headroom below i128::MAX for the reduction itself.
        let bound = BigInt::from(i64::MAX);
        self.data.iter().all(|x| x.abs() < bound)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    /// Text format: `rows cols` header, then row-major entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of a Smith reduction: `u * a * v = d`.
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, tracked during the reduction (used to lift cokernel
    /// classes back to ambient coordinates).
    pub u_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

// ---------------------------------------------------------------------------
// generic reduction engine
// ---------------------------------------------------------------------------

/// The reduction itself lives in a module that deliberately does not import
/// `num_traits`, so the `SnfInt` methods resolve without ambiguity on
/// `BigInt`.
mod engine {
    use num_bigint::BigInt;

    /// Minimal integer interface for the reduction. `i128` reports overflow
    /// so the driver can retry with `BigInt`.
    pub(super) trait SnfInt: Clone + Ord + std::fmt::Debug {
        fn zero() -> Self;
        fn one() -> Self;
        fn is_zero(&self) -> bool;
        fn is_negative(&self) -> bool;
        fn abs(&self) -> Self;
        fn neg(&self) -> Self;
        fn checked_add(&self, other: &Self) -> Option<Self>;
        fn checked_mul(&self, other: &Self) -> Option<Self>;
        /// Truncated quotient.
        fn div(&self, other: &Self) -> Self;
        fn rem(&self, other: &Self) -> Self;
    }

    impl SnfInt for i128 {
        fn zero() -> Self {
            0
        }
        fn one() -> Self {
            1
        }
        fn is_zero(&self) -> bool {
            *self == 0
        }
        fn is_negative(&self) -> bool {
            *self < 0
        }
        fn abs(&self) -> Self {
            i128::abs(*self)
        }
        fn neg(&self) -> Self {
            -*self
        }
        fn checked_add(&self, other: &Self) -> Option<Self> {
            i128::checked_add(*self, *other)
        }
        fn checked_mul(&self, other: &Self) -> Option<Self> {
            i128::checked_mul(*self, *other)
        }
        fn div(&self, other: &Self) -> Self {
            self / other
        }
        fn rem(&self, other: &Self) -> Self {
            self % other
        }
    }

    impl SnfInt for BigInt {
        fn zero() -> Self {
            <BigInt as num_traits::Zero>::zero()
        }
        fn one() -> Self {
            <BigInt as num_traits::One>::one()
        }
        fn is_zero(&self) -> bool {
            num_traits::Zero::is_zero(self)
        }
        fn is_negative(&self) -> bool {
            num_traits::Signed::is_negative(self)
        }
        fn abs(&self) -> Self {
            num_traits::Signed::abs(self)
        }
        fn neg(&self) -> Self {
            -self
        }
        fn checked_add(&self, other: &Self) -> Option<Self> {
            Some(self + other)
        }
        fn checked_mul(&self, other: &Self) -> Option<Self> {
            Some(self * other)
        }
        fn div(&self, other: &Self) -> Self {
            self / other
        }
        fn rem(&self, other: &Self) -> Self {
            self % other
        }
    }

    /// Overflow marker for the `i128` pass.
    pub(super) struct Overflow;

    pub(super) struct SnfWork<T> {
        pub rows: usize,
        pub cols: usize,
        pub a: Vec<T>,
        pub u: Vec<T>,
        pub u_inv: Vec<T>,
        pub v: Vec<T>,
    }

    impl<T: SnfInt> SnfWork<T> {
        fn at(&self, i: usize, j: usize) -> &T {
            &self.a[i * self.cols + j]
        }

        /// row_i -= q * row_k on `a`; `u` gets the same row op, `u_inv` the
        /// inverse column op (col_k += q * col_i).
        fn row_sub(&mut self, i: usize, k: usize, q: &T) -> std::result::Result<(), Overflow> {
            if q.is_zero() {
                return Ok(());
            }
            for j in 0..self.cols {
                let t = q
                    .checked_mul(self.at(k, j))
                    .ok_or(Overflow)?
                    .neg()
                    .checked_add(self.at(i, j))
                    .ok_or(Overflow)?;
                self.a[i * self.cols + j] = t;
            }
            for j in 0..self.rows {
                let t = q
                    .checked_mul(&self.u[k * self.rows + j])
                    .ok_or(Overflow)?
                    .neg()
                    .checked_add(&self.u[i * self.rows + j])
                    .ok_or(Overflow)?;
                self.u[i * self.rows + j] = t;
                let t = q
                    .checked_mul(&self.u_inv[j * self.rows + i])
                    .ok_or(Overflow)?
                    .checked_add(&self.u_inv[j * self.rows + k])
                    .ok_or(Overflow)?;
                self.u_inv[j * self.rows + k] = t;
            }
            Ok(())
        }

        /// col_j -= q * col_k on `a` and `v`.
        fn col_sub(&mut self, j: usize, k: usize, q: &T) -> std::result::Result<(), Overflow> {
            if q.is_zero() {
                return Ok(());
            }
            for i in 0..self.rows {
                let t = q
                    .checked_mul(self.at(i, k))
                    .ok_or(Overflow)?
                    .neg()
                    .checked_add(self.at(i, j))
                    .ok_or(Overflow)?;
                self.a[i * self.cols + j] = t;
            }
            for i in 0..self.cols {
                let t = q
                    .checked_mul(&self.v[i * self.cols + k])
                    .ok_or(Overflow)?
                    .neg()
                    .checked_add(&self.v[i * self.cols + j])
                    .ok_or(Overflow)?;
                self.v[i * self.cols + j] = t;
            }
            Ok(())
        }

        fn swap_rows(&mut self, i: usize, k: usize) {
            if i == k {
                return;
            }
            for j in 0..self.cols {
                self.a.swap(i * self.cols + j, k * self.cols + j);
            }
            for j in 0..self.rows {
                self.u.swap(i * self.rows + j, k * self.rows + j);
                self.u_inv.swap(j * self.rows + i, j * self.rows + k);
            }
        }

        fn swap_cols(&mut self, j: usize, k: usize) {
            if j == k {
                return;
            }
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + k);
            }
            for i in 0..self.cols {
                self.v.swap(i * self.cols + j, i * self.cols + k);
            }
        }

        fn negate_row(&mut self, i: usize) {
            for j in 0..self.cols {
                self.a[i * self.cols + j] = self.a[i * self.cols + j].neg();
            }
            for j in 0..self.rows {
                self.u[i * self.rows + j] = self.u[i * self.rows + j].neg();
                self.u_inv[j * self.rows + i] = self.u_inv[j * self.rows + i].neg();
            }
        }

        /// Pivot choice: nonzero entry of minimal absolute value in the
        /// submatrix at (k,k), ties broken in row-major order.
        fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
            let mut best: Option<(usize, usize)> = None;
            for i in k..self.rows {
                for j in k..self.cols {
                    let x = self.at(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if x.abs() < self.at(bi, bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            best
        }

        fn reduce(&mut self) -> std::result::Result<(), Overflow> {
            let n = self.rows.min(self.cols);
            for k in 0..n {
                'step: loop {
                    let Some((pi, pj)) = self.find_pivot(k) else {
                        break 'step; // submatrix is zero
                    };
                    self.swap_rows(k, pi);
                    self.swap_cols(k, pj);
                    // Clear column k below the pivot.
                    for i in k + 1..self.rows {
                        if !self.at(i, k).is_zero() {
                            let q = self.at(i, k).div(self.at(k, k));
                            self.row_sub(i, k, &q)?;
                        }
                    }
                    if (k + 1..self.rows).any(|i| !self.at(i, k).is_zero()) {
                        continue 'step; // remainder became the new smaller pivot
                    }
                    // Clear row k right of the pivot.
                    for j in k + 1..self.cols {
                        if !self.at(k, j).is_zero() {
                            let q = self.at(k, j).div(self.at(k, k));
                            self.col_sub(j, k, &q)?;
                        }
                    }
                    if (k + 1..self.cols).any(|j| !self.at(k, j).is_zero()) {
                        continue 'step;
                    }
                    // Divisibility fix: pivot must divide the rest of the block.
                    let d = self.at(k, k).clone();
                    let mut fixed = true;
                    'search: for i in k + 1..self.rows {
                        for j in k + 1..self.cols {
                            if !self.at(i, j).rem(&d).is_zero() {
                                self.row_sub(k, i, &T::one().neg())?; // row_k += row_i
                                fixed = false;
                                break 'search;
                            }
                        }
                    }
                    if fixed {
                        break 'step;
                    }
                }
                if self.at(k, k).is_negative() {
                    self.negate_row(k);
                }
            }
            Ok(())
        }
    }

    pub(super) fn snf_generic<T: SnfInt>(
        a0: Vec<T>,
        rows: usize,
        cols: usize,
    ) -> std::result::Result<SnfWork<T>, Overflow> {
        let ident = |n: usize| {
            let mut m = vec![T::zero(); n * n];
            for i in 0..n {
                m[i * n + i] = T::one();
            }
            m
        };
        let mut w = SnfWork {
            rows,
            cols,
            a: a0,
            u: ident(rows),
            u_inv: ident(rows),
            v: ident(cols),
        };
        w.reduce()?;
        Ok(w)
    }
}

use engine::snf_generic;

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular and the
/// diagonal of `d` nonnegative with `d1 | d2 | ...`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let rows = a.rows();
    let cols = a.cols();
    let to_matrix = |data: Vec<BigInt>, r: usize, c: usize| IntMatrix {
        rows: r,
        cols: c,
        data,
    };

    if a.fits_i128() {
        let small: Vec<i128> = a
            .data
            .iter()
            .map(|x| i128::try_from(x).expect("bounded above"))
            .collect();
        if let Ok(w) = snf_generic(small, rows, cols) {
            let big = |v: Vec<i128>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
            let form = SmithForm {
                u: to_matrix(big(w.u), rows, rows),
                d: to_matrix(big(w.a), rows, cols),
                v: to_matrix(big(w.v), cols, cols),
                u_inv: to_matrix(big(w.u_inv), rows, rows),
            };
            debug_assert!(verify_snf(a, &form));
            return form;
        }
        // fall through to exact arithmetic on overflow
    }
    let w = snf_generic(a.data.clone(), rows, cols).unwrap_or_else(|_| unreachable!());
    let form = SmithForm {
        u: to_matrix(w.u, rows, rows),
        d: to_matrix(w.a, rows, cols),
        v: to_matrix(w.v, cols, cols),
        u_inv: to_matrix(w.u_inv, rows, rows),
    };
    debug_assert!(verify_snf(a, &form));
    form
}

fn verify_snf(a: &IntMatrix, f: &SmithForm) -> bool {
    if f.u.mul(a).mul(&f.v) != f.d {
        return false;
    }
    if f.u.mul(&f.u_inv) != IntMatrix::identity(a.rows()) {
        return false;
    }
    // d diagonal, nonnegative, divisibility chain
    for i in 0..f.d.rows() {
        for j in 0..f.d.cols() {
            if i != j && !f.d.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let diag = f.diagonal();
    for w in diag.windows(2) {
        if w[0].is_negative() || w[1].is_negative() {
            return false;
        }
        if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
            return false;
        }
        if w[0].is_zero() && !w[1].is_zero() {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// finitely generated abelian groups
// ---------------------------------------------------------------------------

/// Finitely generated abelian group in canonical invariant-factor form:
/// `Z^rank + Z/d1 + ... + Z/dk` with `d1 | d2 | ... | dk`, each `di >= 2`.
/// Equality of values is isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    /// Canonicalize arbitrary torsion data: repeated gcd/lcm passes until
    /// the divisibility chain stabilizes, units dropped.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        let mut t: Vec<BigInt> = torsion
            .into_iter()
            .map(|x| x.abs())
            .filter(|x| !x.is_zero())
            .collect();
        assert!(
            t.iter().all(|x| !x.is_zero()),
            "torsion factors must be nonzero"
        );
        loop {
            let mut changed = false;
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    let (a, b) = (t[i].clone(), t[j].clone());
                    if (&b % &a).is_zero() {
                        continue;
                    }
                    let g = a.gcd(&b);
                    let l = &a / &g * &b;
                    t[i] = g;
                    t[j] = l;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        t.retain(|x| !x.is_one());
        t.sort();
        FGAbelianGroup { rank, torsion: t }
    }

    pub fn trivial() -> Self {
        FGAbelianGroup {
            rank: 0,
            torsion: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            rank,
            torsion: vec![],
        }
    }

    pub fn from_torsion(factors: &[u64]) -> Self {
        FGAbelianGroup::new(0, factors.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cokernel of `a : Z^cols -> Z^rows` in canonical form.
pub fn cokernel_invariants(a: &IntMatrix) -> FGAbelianGroup {
    let f = smith_normal_form(a);
    let diag = f.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag.into_iter().filter(|d| !d.is_zero()).collect();
    FGAbelianGroup::new(a.rows() - nonzero, torsion)
}

/// Columns form a Z-basis of `ker(a)`; the basis is primitive by
/// construction (columns of the unimodular `v` of the Smith form).
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let f = smith_normal_form(a);
    let diag = f.diagonal();
    let r = diag.iter().filter(|d| !d.is_zero()).count();
    IntMatrix::from_fn(a.cols(), a.cols() - r, |i, j| f.v.get(i, r + j).clone())
}

/// Exact solver for `basis * x = target` over Z, with the Smith reduction
/// of the basis computed once and reused across targets.
pub struct LatticeSolver {
    form: SmithForm,
    rows: usize,
    cols: usize,
}

impl LatticeSolver {
    pub fn new(basis: &IntMatrix) -> Self {
        LatticeSolver {
            form: smith_normal_form(basis),
            rows: basis.rows(),
            cols: basis.cols(),
        }
    }

    /// Returns `None` when the target is not in the column span.
    pub fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(self.rows, target.len());
        let f = &self.form;
        // z = u * target
        let mut z = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = BigInt::zero();
            for j in 0..self.rows {
                let c = f.u.get(i, j);
                if !c.is_zero() && !target[j].is_zero() {
                    acc += c * &target[j];
                }
            }
            z[i] = acc;
        }
        let diag = f.diagonal();
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !z[i].is_zero() {
                    return None;
                }
            } else {
                if !(&z[i] % &d).is_zero() {
                    return None;
                }
                if i < self.cols {
                    y[i] = &z[i] / &d;
                }
            }
        }
        // x = v * y
        let mut x = vec![BigInt::zero(); self.cols];
        for i in 0..self.cols {
            let mut acc = BigInt::zero();
            for j in 0..self.cols {
                let c = f.v.get(i, j);
                if !c.is_zero() && !y[j].is_zero() {
                    acc += c * &y[j];
                }
            }
            x[i] = acc;
        }
        Some(x)
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        self.solve(target).is_some()
    }
}

/// Solve `basis * x = target` exactly over Z. Returns `None` when the target
/// is not in the column span. For many targets against one basis, build a
/// [`LatticeSolver`] instead.
pub fn solve_in_lattice(basis: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    LatticeSolver::new(basis).solve(target)
}

/// True when `v` lies in the column span of `basis` over Z.
pub fn lattice_contains(basis: &IntMatrix, v: &[BigInt]) -> bool {
    solve_in_lattice(basis, v).is_some()
}

/// True when the two column lattices span the same subgroup of Z^rows.
pub fn lattice_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows());
    let sa = LatticeSolver::new(a);
    let sb = LatticeSolver::new(b);
    (0..b.cols()).all(|j| sa.contains(&b.column(j)))
        && (0..a.cols()).all(|j| sb.contains(&a.column(j)))
}

/// Express every relation column in `sub_basis` coordinates.
fn relations_in_basis(relations: &IntMatrix, sub_basis: &IntMatrix) -> Result<IntMatrix> {
    assert_eq!(relations.rows(), sub_basis.rows());
    let solver = LatticeSolver::new(sub_basis);
    let mut coords = IntMatrix::zero(sub_basis.cols(), relations.cols());
    for j in 0..relations.cols() {
        let col = relations.column(j);
        let x = solver.solve(&col).ok_or_else(|| {
            Error::Precondition(format!(
                "relation column {j} is not contained in the subgroup lattice"
            ))
        })?;
        for i in 0..sub_basis.cols() {
            coords.set(i, j, x[i].clone());
        }
    }
    Ok(coords)
}

/// Invariants of `span(sub_basis) / span(relations)`.
///
/// Every relation column must lie in the span of `sub_basis`; the relation
/// columns are rewritten in `sub_basis` coordinates and the cokernel of the
/// resulting matrix is returned.
pub fn subquotient_invariants(
    relations: &IntMatrix,
    sub_basis: &IntMatrix,
) -> Result<FGAbelianGroup> {
    Ok(cokernel_invariants(&relations_in_basis(
        relations, sub_basis,
    )?))
}

/// A class of `span(sub_basis)/span(relations)` of finite order > 1,
/// returned in ambient coordinates together with its order.
pub fn torsion_witness(
    relations: &IntMatrix,
    sub_basis: &IntMatrix,
) -> Result<Option<(Vec<BigInt>, BigInt)>> {
    let coords = relations_in_basis(relations, sub_basis)?;
    let f = smith_normal_form(&coords);
    let diag = f.diagonal();
    for (l, d) in diag.iter().enumerate() {
        if !d.is_zero() && !d.is_one() {
            // Class generator: column l of u^-1, lifted to ambient coords.
            let mut ambient = vec![BigInt::zero(); sub_basis.rows()];
            for i in 0..sub_basis.cols() {
                let c = f.u_inv.get(i, l);
                if c.is_zero() {
                    continue;
                }
                for r in 0..sub_basis.rows() {
                    ambient[r] += c * sub_basis.get(r, i);
                }
            }
            return Ok(Some((ambient, d.clone())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn snf_basic() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let f = smith_normal_form(&a);
        assert!(verify_snf(&a, &f));
        let d: Vec<i64> = f
            .diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![2, 4]);
    }

    #[test]
    fn snf_identity_and_zero() {
        let f = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(f.d, IntMatrix::identity(3));
        let z = IntMatrix::zero(2, 3);
        let f = smith_normal_form(&z);
        assert!(f.d.is_zero());
        assert!(verify_snf(&z, &f));
    }

    #[test]
    fn snf_empty() {
        let a = IntMatrix::zero(0, 3);
        let f = smith_normal_form(&a);
        assert_eq!(f.d.rows(), 0);
        let a = IntMatrix::zero(2, 0);
        let f = smith_normal_form(&a);
        assert_eq!(f.d.cols(), 0);
        assert_eq!(cokernel_invariants(&a), FGAbelianGroup::free(2));
    }

    #[test]
    fn cokernel_merges_invariants() {
        // Z/2 + Z/3 = Z/6
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let g = cokernel_invariants(&a);
        assert_eq!(g, FGAbelianGroup::from_torsion(&[6]));
        assert_eq!(g.to_string(), "Z/6");
        // no relations: free of rank 2
        assert_eq!(
            cokernel_invariants(&m(&[vec![0], vec![0]])),
            FGAbelianGroup::free(2)
        );
        // unit relations kill everything
        assert_eq!(
            cokernel_invariants(&m(&[vec![1, 0], vec![0, 1]])),
            FGAbelianGroup::trivial()
        );
    }

    #[test]
    fn kernel_basis() {
        let a = m(&[vec![1, 1]]);
        let k = kernel_lattice(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());

        let k = kernel_lattice(&IntMatrix::identity(3));
        assert_eq!(k.cols(), 0);

        let a = m(&[vec![2, 4]]);
        let k = kernel_lattice(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        // primitive: (2, -1) up to sign
        let c: Vec<i64> = k
            .column(0)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert!(c == vec![2, -1] || c == vec![-2, 1], "got {c:?}");
    }

    #[test]
    fn subquotient_examples() {
        // Z^1 / 2Z = Z/2
        let g = subquotient_invariants(&m(&[vec![2]]), &IntMatrix::identity(1)).unwrap();
        assert_eq!(g, FGAbelianGroup::from_torsion(&[2]));
        // empty relations: free of rank = basis columns
        let g = subquotient_invariants(&IntMatrix::zero(3, 0), &IntMatrix::identity(3)).unwrap();
        assert_eq!(g, FGAbelianGroup::free(3));
        // containment violation
        let err = subquotient_invariants(&m(&[vec![1], vec![0]]), &m(&[vec![0], vec![1]]));
        assert!(err.is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FGAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(
            FGAbelianGroup::new(2, vec![BigInt::from(2), BigInt::from(4)]).to_string(),
            "Z^2 + Z/2 + Z/4"
        );
    }

    #[test]
    fn canonical_form_examples() {
        // [4, 6] -> gcd/lcm -> [2, 12]
        assert_eq!(
            FGAbelianGroup::from_torsion(&[4, 6]),
            FGAbelianGroup::from_torsion(&[2, 12])
        );
        assert_eq!(
            FGAbelianGroup::from_torsion(&[2, 3, 4]).torsion(),
            FGAbelianGroup::from_torsion(&[2, 12]).torsion()
        );
    }

    /// Brute-force gcd of all k x k minors.
    fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = Vec::new();
            for last in (k - 1)..n {
                for mut c in combos(last, k - 1) {
                    c.push(last);
                    out.push(c);
                }
            }
            out
        }
        fn det(a: &IntMatrix, rs: &[usize], cs: &[usize]) -> BigInt {
            if rs.is_empty() {
                return BigInt::one();
            }
            let mut acc = BigInt::zero();
            let mut sign = BigInt::one();
            for (idx, &c) in cs.iter().enumerate() {
                let sub_cs: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
                acc += &sign * a.get(rs[0], c) * det(a, &rs[1..], &sub_cs);
                let _ = idx;
                sign = -sign;
            }
            acc
        }
        let mut g = BigInt::zero();
        for rs in combos(a.rows(), k) {
            for cs in combos(a.cols(), k) {
                g = g.gcd(&det(a, &rs, &cs));
            }
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snf_postconditions(rows in 1usize..5, cols in 1usize..5,
                              entries in prop::collection::vec(-10i64..=10, 16)) {
            let a = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * 4 + j]));
            let f = smith_normal_form(&a);
            prop_assert!(verify_snf(&a, &f));
            // diagonal products match minor gcds
            let diag = f.diagonal();
            let mut prod = BigInt::one();
            for (k, d) in diag.iter().enumerate() {
                prod *= d;
                prop_assert_eq!(&prod, &minor_gcd(&a, k + 1));
            }
        }

        #[test]
        fn cokernel_invariant_under_column_ops_and_row_perms(
            rows in 1usize..4, cols in 2usize..5,
            entries in prop::collection::vec(-6i64..=6, 16),
            src in 0usize..4, dst in 0usize..4, mult in -3i64..=3,
            rot in 0usize..4,
        ) {
            let a = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * 4 + j]));
            // column op: col_dst += mult * col_src
            let (src, dst) = (src % cols, dst % cols);
            prop_assume!(src != dst);
            let mut b = a.clone();
            for i in 0..rows {
                let v = b.get(i, dst) + BigInt::from(mult) * a.get(i, src);
                b.set(i, dst, v);
            }
            // row permutation: rotate rows
            let c = IntMatrix::from_fn(rows, cols, |i, j| b.get((i + rot) % rows, j).clone());
            prop_assert_eq!(cokernel_invariants(&a), cokernel_invariants(&c));
        }

        #[test]
        fn kernel_is_kernel(rows in 1usize..4, cols in 1usize..5,
                            entries in prop::collection::vec(-6i64..=6, 16)) {
            let a = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * 4 + j]));
            let k = kernel_lattice(&a);
            prop_assert!(a.mul(&k).is_zero());
            let f = smith_normal_form(&a);
            let rank = f.diagonal().iter().filter(|d| !d.is_zero()).count();
            prop_assert_eq!(k.cols(), cols - rank);
        }
    }

    #[test]
    fn bigint_fallback_on_large_entries() {
        // entries beyond the i128 fast-path threshold
        let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let a = IntMatrix::from_fn(
            2,
            2,
            |i, j| if i == j { big.clone() } else { BigInt::one() },
        );
        let f = smith_normal_form(&a);
        assert!(verify_snf(&a, &f));
    }
}
