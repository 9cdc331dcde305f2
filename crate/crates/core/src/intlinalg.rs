//! Exact integer and rational linear algebra.
//!
//! Everything here works on [`rug::Integer`] entries, so no computation can
//! overflow. Conventions are row-oriented: a sublattice of `Z^n` is the row
//! span of a matrix, and Hermite normal forms are row-style with positive
//! pivots and entries above each pivot reduced into `[0, pivot)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// An integer vector.
pub type IntVec = Vec<Integer>;

/// Converts a slice of machine integers into an [`IntVec`].
pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Integer::from(x)).collect()
}

pub fn is_zero_vec(v: &[Integer]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Integer;
    fn index(&self, (r, c): (usize, usize)) -> &Integer {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Integer {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Integer::new(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::from(1);
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[IntVec]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn diagonal(entries: &[Integer]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Integer] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> IntVec {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Integer]) -> IntVec {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Integer::new(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o += x * &self[(r, c)];
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Integer]) -> IntVec {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Integer::new();
                for (c, x) in v.iter().enumerate() {
                    acc += &self[(r, c)] * x;
                }
                acc
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &Integer) {
        for c in 0..self.cols {
            let s = self[(src, c)].clone();
            self[(dst, c)] -= q * &s;
        }
    }

    /// `col[dst] -= q * col[src]`
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &Integer) {
        for r in 0..self.rows {
            let s = self[(r, src)].clone();
            self[(r, dst)] -= q * &s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self[(r, c)]);
            self[(r, c)] = v;
        }
    }

    fn add_row(&mut self, dst: usize, src: usize) {
        for c in 0..self.cols {
            let s = self[(src, c)].clone();
            self[(dst, c)] += s;
        }
    }

    /// Stacks the rows of several matrices of equal width.
    pub fn vstack(cols: usize, parts: &[&IntMatrix]) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        IntMatrix { rows, cols, data }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Integer {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Integer::from(1);
        }
        let mut m = self.clone();
        let mut sign = 1;
        let mut prev = Integer::from(1);
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Integer::new(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = Integer::from(&m[(i, j)] * &m[(k, k)])
                        - Integer::from(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = v.div_exact(&prev);
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Integer solution `c` of `c * self = v`, if one exists. When the rows
    /// are independent the solution is unique.
    pub fn solve_left(&self, v: &[Integer]) -> Option<IntVec> {
        assert_eq!(v.len(), self.cols);
        let (h, u) = hnf(self);
        let rank = hnf_rank(&h);
        let coeffs = hnf_coordinates(&h, rank, v)?;
        let mut out = vec![Integer::new(); self.rows];
        for (k, ck) in coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                *o += ck * &u[(k, r)];
            }
        }
        Some(out)
    }
}

fn floor_div(a: &Integer, b: &Integer) -> Integer {
    <(Integer, Integer)>::from(a.div_rem_floor_ref(b)).0
}

fn pivot_col(row: &[Integer]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn hnf_rank(h: &IntMatrix) -> usize {
    (0..h.rows())
        .take_while(|&r| !is_zero_vec(h.row(r)))
        .count()
}

/// Coordinates of `v` with respect to the first `rank` rows of a matrix in
/// Hermite normal form, or `None` if `v` is not in their span.
fn hnf_coordinates(h: &IntMatrix, rank: usize, v: &[Integer]) -> Option<IntVec> {
    let mut rest: IntVec = v.to_vec();
    let mut coeffs = Vec::with_capacity(rank);
    for k in 0..rank {
        let p = pivot_col(h.row(k)).expect("nonzero HNF row");
        if rest[..p].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let piv = &h[(k, p)];
        if !rest[p].is_divisible(piv) {
            return None;
        }
        let q = Integer::from(rest[p].div_exact_ref(piv));
        for (c, x) in rest.iter_mut().enumerate().skip(p) {
            *x -= &q * &h[(k, c)];
        }
        coeffs.push(q);
    }
    if is_zero_vec(&rest) {
        Some(coeffs)
    } else {
        None
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * M`, `U`
/// unimodular, nonzero rows of `H` first, pivots positive and entries above
/// each pivot in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let piv = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].cmp_abs(&h[(b, c)]));
            let Some(piv) = piv else { break };
            h.swap_rows(r, piv);
            u.swap_rows(r, piv);
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = floor_div(&h[(i, c)], &h[(r, c)]);
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].cmp0() == Ordering::Less {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = floor_div(&h[(i, c)], &h[(r, c)]);
            if !q.is_zero() {
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(S, U, V)` with `S = U * M * V` diagonal,
/// `U`, `V` unimodular and the diagonal a nonnegative divisibility chain.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if s[(bi, bj)].cmp_abs(&s[(i, j)]) != Ordering::Greater => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = floor_div(&s[(i, t)], &s[(t, t)]);
                s.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = floor_div(&s[(t, j)], &s[(t, t)]);
                s.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_divisible(&s[(t, t)])));
            match bad_row {
                Some(i) => {
                    s.add_row(t, i);
                    u.add_row(t, i);
                }
                None => break,
            }
        }
        if s[(t, t)].cmp0() == Ordering::Less {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Nonzero diagonal entries of a Smith normal form, padded with zeros up to
/// `n` (the number of generators of the presented group).
pub fn snf_diagonal(s: &IntMatrix, n: usize) -> Vec<Integer> {
    (0..n)
        .map(|i| {
            if i < s.rows() && i < s.cols() {
                s[(i, i)].clone()
            } else {
                Integer::new()
            }
        })
        .collect()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::Shape("inverse of a non-square matrix".into()));
    }
    let (h, u) = hnf(m);
    if h != IntMatrix::identity(m.rows()) {
        return Err(Error::Shape("matrix is not unimodular".into()));
    }
    Ok(u)
}

/// Inverse over the rationals, `None` when singular. Rows of the result
/// index the rows of `m`'s inverse as usual (`m * inv = I`).
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = m.row(r).iter().map(Rational::from).collect();
            row.extend((0..n).map(|c| Rational::from(if c == r { 1 } else { 0 })));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col].cmp0() != Ordering::Equal)?;
        a.swap(col, piv);
        let inv = Rational::from(a[col][col].recip_ref());
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].cmp0() == Ordering::Equal {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let t = Rational::from(&f * &a[col][c]);
                a[r][c] -= t;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Left kernel `{v : v * M = 0}` as a saturated sublattice of `Z^rows`.
pub fn kernel_saturated(m: &IntMatrix) -> SublatticeBasis {
    let (h, u) = hnf(m);
    let rank = hnf_rank(&h);
    let gens: Vec<IntVec> = (rank..m.rows()).map(|r| u.row(r).to_vec()).collect();
    SublatticeBasis::from_generators(m.rows(), &gens)
}

/// A sublattice of `Z^n`, stored as the nonzero rows of its Hermite normal
/// form. Two sublattices are equal iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SublatticeBasis {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl SublatticeBasis {
    pub fn from_generators(ambient_rank: usize, gens: &[IntVec]) -> Self {
        let m = IntMatrix::from_rows(ambient_rank, gens);
        let (h, _) = hnf(&m);
        let rank = hnf_rank(&h);
        let rows: Vec<IntVec> = (0..rank).map(|r| h.row(r).to_vec()).collect();
        SublatticeBasis {
            ambient_rank,
            basis: IntMatrix::from_rows(ambient_rank, &rows),
        }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        SublatticeBasis {
            ambient_rank,
            basis: IntMatrix::zeros(0, ambient_rank),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        SublatticeBasis {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<IntVec> {
        self.basis.row_vecs()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Integer]) -> Option<IntVec> {
        assert_eq!(v.len(), self.ambient_rank);
        hnf_coordinates(&self.basis, self.rank(), v)
    }

    pub fn contains(&self, v: &[Integer]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &SublatticeBasis) -> bool {
        (0..other.rank()).all(|r| self.contains(other.basis.row(r)))
    }

    pub fn sum(&self, other: &SublatticeBasis) -> SublatticeBasis {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut gens = self.vectors();
        gens.extend(other.vectors());
        SublatticeBasis::from_generators(self.ambient_rank, &gens)
    }

    /// True iff the lattice equals its rational span intersected with `Z^n`.
    pub fn is_saturated(&self) -> bool {
        let (s, _, _) = snf(&self.basis);
        (0..self.rank()).all(|i| s[(i, i)] == 1)
    }

    /// Lexicographically smallest basis vector, used for canonical ordering.
    pub fn min_vector(&self) -> Option<IntVec> {
        self.vectors().into_iter().min()
    }
}

/// Index of `sum(parts)` in `Z^ambient_rank`. The parts form a direct sum
/// decomposition of `Z^n` exactly when this is `1`.
pub fn direct_sum_index(parts: &[SublatticeBasis], ambient_rank: usize) -> Result<Integer> {
    if parts.iter().any(|p| p.ambient_rank() != ambient_rank) {
        return Err(Error::Shape(
            "sublattices live in different ambient ranks".into(),
        ));
    }
    let total: usize = parts.iter().map(|p| p.rank()).sum();
    if total != ambient_rank {
        return Err(Error::InfiniteIndex);
    }
    let mats: Vec<&IntMatrix> = parts.iter().map(|p| p.basis()).collect();
    let stacked = IntMatrix::vstack(ambient_rank, &mats);
    let det = stacked.determinant();
    if det.is_zero() {
        return Err(Error::InfiniteIndex);
    }
    Ok(det.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn is_hnf(h: &IntMatrix) -> bool {
        let rank = hnf_rank(h);
        if (rank..h.rows()).any(|r| !is_zero_vec(h.row(r))) {
            return false;
        }
        let mut last = None;
        for r in 0..rank {
            let p = pivot_col(h.row(r)).unwrap();
            if last.is_some_and(|l| p <= l) || h[(r, p)].cmp0() != Ordering::Greater {
                return false;
            }
            for above in 0..r {
                let x = &h[(above, p)];
                if x.cmp0() == Ordering::Less || x >= &h[(r, p)] {
                    return false;
                }
            }
            last = Some(p);
        }
        true
    }

    fn is_unimodular(u: &IntMatrix) -> bool {
        u.determinant().abs() == 1
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(2);
        assert_eq!(hnf(&id), (id.clone(), id.clone()));
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(hnf(&z), (z.clone(), id));
    }

    /// Row reduction over Q followed by brute-force search for the unique
    /// reduced lattice basis among small candidates.
    fn brute_force_hnf_2x2(a: &IntMatrix) -> IntMatrix {
        let det = a.determinant().abs().to_i64().unwrap();
        let lattice_contains = |v: &[i64]| a.solve_left(&int_vec(v)).is_some();
        // full-rank 2x2: H = [[p, x], [0, q]] with p*q = det, 0 <= x < q
        for p in 1..=det {
            if det % p != 0 {
                continue;
            }
            let q = det / p;
            for x in 0..q {
                if lattice_contains(&[p, x]) && lattice_contains(&[0, q]) {
                    return m(&[&[p, x], &[0, q]]);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn hnf_matches_brute_force() {
        let a = m(&[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&a);
        assert_eq!(h.determinant().abs(), 2);
        assert!(is_hnf(&h));
        assert_eq!(u.mul(&a), h);
        assert_eq!(h, brute_force_hnf_2x2(&a));
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn snf_examples() {
        let (s, u, v) = snf(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s, m(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m(&[&[2, 0], &[0, 3]])).mul(&v), s);
        let id = IntMatrix::identity(3);
        assert_eq!(snf(&id).0, id);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(snf(&z).0, z);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_saturated(&IntMatrix::identity(3)).is_zero());
        assert_eq!(
            kernel_saturated(&IntMatrix::zeros(3, 3)),
            SublatticeBasis::full(3)
        );
        let k = kernel_saturated(&m(&[&[2, 0], &[0, 0]]));
        assert_eq!(k.vectors(), vec![int_vec(&[0, 1])]);
        // saturated: kernel of [[2],[4]] is spanned by (2,-1), not a multiple
        let k = kernel_saturated(&m(&[&[2], &[4]]));
        assert_eq!(k.rank(), 1);
        assert!(k.is_saturated());
        assert!(k.contains(&int_vec(&[2, -1])));
    }

    #[test]
    fn direct_sum_index_examples() {
        let e1 = SublatticeBasis::from_generators(2, &[int_vec(&[1, 0])]);
        let e2 = SublatticeBasis::from_generators(2, &[int_vec(&[0, 1])]);
        let two_e1 = SublatticeBasis::from_generators(2, &[int_vec(&[2, 0])]);
        assert_eq!(direct_sum_index(&[e1.clone(), e2.clone()], 2).unwrap(), 1);
        assert_eq!(direct_sum_index(&[two_e1, e2], 2).unwrap(), 2);
        assert_eq!(
            direct_sum_index(std::slice::from_ref(&e1), 2),
            Err(Error::InfiniteIndex)
        );
        assert_eq!(
            direct_sum_index(&[e1.clone(), e1], 2),
            Err(Error::InfiniteIndex)
        );
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(a.determinant(), 1);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), IntMatrix::identity(3));
        let q = rational_inverse(&m(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(q[1][1], Rational::from((1, 4)));
        assert!(rational_inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
                let rows: Vec<IntVec> = v.chunks(c).map(int_vec).collect();
                IntMatrix::from_rows(c, &rows)
            })
        })
    }

    proptest! {
        #[test]
        fn hnf_reconstructs_and_is_canonical(a in small_matrix(4, 4), seed in 0u64..1000) {
            let (h, u) = hnf(&a);
            prop_assert!(is_unimodular(&u));
            prop_assert_eq!(u.mul(&a), h.clone());
            prop_assert!(is_hnf(&h));
            // a row-equivalent matrix gives the same H
            let mut w = IntMatrix::identity(a.rows());
            let n = a.rows();
            if n > 1 {
                let i = (seed as usize) % n;
                let j = (i + 1) % n;
                let k = Integer::from((seed % 7) as i64 - 3);
                for c in 0..n { let x = w[(j, c)].clone(); w[(i, c)] += &k * &x; }
                w.swap_rows(0, n - 1);
            }
            prop_assert_eq!(hnf(&w.mul(&a)).0, h);
        }

        #[test]
        fn snf_reconstructs_with_chain(a in small_matrix(4, 4)) {
            let (s, u, v) = snf(&a);
            prop_assert!(is_unimodular(&u));
            prop_assert!(is_unimodular(&v));
            prop_assert_eq!(u.mul(&a).mul(&v), s.clone());
            let k = s.rows().min(s.cols());
            for i in 0..s.rows() {
                for j in 0..s.cols() {
                    if i != j { prop_assert!(s[(i, j)].is_zero()); }
                }
            }
            for i in 0..k {
                prop_assert!(s[(i, i)].cmp0() != Ordering::Less);
                if i + 1 < k {
                    let (a, b) = (&s[(i, i)], &s[(i + 1, i + 1)]);
                    let ok = if a.is_zero() { b.is_zero() } else { b.is_divisible(a) };
                    prop_assert!(ok);
                }
            }
        }

        #[test]
        fn kernel_annihilates_and_is_saturated(a in small_matrix(4, 3)) {
            let k = kernel_saturated(&a);
            for v in k.vectors() {
                prop_assert!(is_zero_vec(&a.left_mul_vec(&v)));
            }
            prop_assert!(k.is_saturated());
            // any standard basis vector outside the kernel span breaks annihilation
            for i in 0..a.rows() {
                let mut e = vec![Integer::new(); a.rows()];
                e[i] = Integer::from(1);
                if !k.contains(&e) {
                    prop_assert!(!is_zero_vec(&a.left_mul_vec(&e)));
                }
            }
        }
    }
}
