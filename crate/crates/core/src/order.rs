//! Orders given by integer structure constants.
//!
//! An [`Order`] of rank `n` is stored as its multiplication table on a fixed
//! `Z`-basis `e_0, ..., e_{n-1}`: `table[i][j]` holds the coordinates of
//! `e_i * e_j`. Orders are validated once on construction and immutable
//! afterwards.

use serde::{Deserialize, Serialize};

use rug::Integer;

use crate::error::{Error, Result};
use crate::intlinalg::{
    int_vec, is_zero_vec, kernel_saturated, snf, unimodular_inverse, IntMatrix, IntVec,
    SublatticeBasis,
};

/// Coordinates of an element of an order relative to its basis.
pub type Element = IntVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    rank: usize,
    table: Vec<Vec<IntVec>>,
    one: IntVec,
    labels: Option<Vec<String>>,
}

/// Checks the ring axioms on a structure-constant table and returns the
/// resulting order. The first violation found is reported, checking
/// commutativity, then the identity, then associativity.
pub fn validate(table: Vec<Vec<IntVec>>, one: IntVec, n: usize) -> Result<Order> {
    if table.len() != n || one.len() != n {
        return Err(Error::Shape(format!(
            "expected a rank-{n} table and identity"
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n || row.iter().any(|v| v.len() != n) {
            return Err(Error::Shape(format!(
                "table row {i} does not have shape {n}x{n}"
            )));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if table[i][j] != table[j][i] {
                return Err(Error::NotCommutative { i, j });
            }
        }
    }
    let order = Order {
        rank: n,
        table,
        one,
        labels: None,
    };
    for i in 0..n {
        if order.mul(&order.one, &order.basis_element(i)) != order.basis_element(i) {
            return Err(Error::BadIdentity { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = order.mul(&order.table[i][j], &order.basis_element(k));
                let right = order.mul(&order.basis_element(i), &order.table[j][k]);
                if left != right {
                    return Err(Error::NotAssociative { i, j, k });
                }
            }
        }
    }
    Ok(order)
}

impl Order {
    pub fn new(table: Vec<Vec<IntVec>>, one: IntVec) -> Result<Order> {
        let n = one.len();
        validate(table, one, n)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Order> {
        if labels.len() != self.rank {
            return Err(Error::Shape("one label per basis element required".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn one(&self) -> &Element {
        &self.one
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Coordinates of `e_i * e_j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &IntVec {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Element {
        vec![Integer::new(); self.rank]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = Integer::from(1);
        e
    }

    pub fn element(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.rank);
        int_vec(coords)
    }

    pub fn mul(&self, x: &[Integer], y: &[Integer]) -> Element {
        debug_assert_eq!(x.len(), self.rank);
        debug_assert_eq!(y.len(), self.rank);
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coef = Integer::from(xi * yj);
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &coef * t;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Integer], mut k: u64) -> Element {
        let mut result = self.one.clone();
        let mut base = x.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Matrix of multiplication by `x`: `M_x * coords(y) = coords(x * y)`.
    pub fn regular_matrix(&self, x: &[Integer]) -> IntMatrix {
        let n = self.rank;
        let mut m = IntMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        m[(k, j)] += xi * t;
                    }
                }
            }
        }
        m
    }

    /// Gram matrix of the rational trace form `T(x, y) = tr(M_{xy})`.
    pub fn trace_gram(&self) -> IntMatrix {
        let n = self.rank;
        let traces: Vec<Integer> = (0..n)
            .map(|m| {
                let mut t = Integer::new();
                for j in 0..n {
                    t += &self.table[m][j][j];
                }
                t
            })
            .collect();
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Integer::new();
                for (c, t) in self.table[i][j].iter().zip(&traces) {
                    acc += c * t;
                }
                g[(i, j)] = acc;
            }
        }
        g
    }

    /// `x^(2^k) = 0` for `2^k >= n`, where `n` bounds the nilpotency index.
    pub fn is_nilpotent(&self, x: &[Integer]) -> bool {
        let mut y = x.to_vec();
        let steps = usize::BITS - self.rank.max(1).leading_zeros() + 1;
        for _ in 0..=steps {
            if is_zero_vec(&y) {
                return true;
            }
            y = self.mul(&y, &y);
        }
        is_zero_vec(&y)
    }

    /// The nilradical, computed as the saturated radical of the trace form.
    pub fn nilradical(&self) -> SublatticeBasis {
        let nil = kernel_saturated(&self.trace_gram());
        debug_assert!(nil.vectors().iter().all(|v| self.is_nilpotent(v)));
        nil
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical().is_zero()
    }

    /// Fails with [`Error::NotReduced`] unless the order is reduced.
    pub fn require_reduced(&self) -> Result<()> {
        let nil = self.nilradical();
        if nil.is_zero() {
            Ok(())
        } else {
            Err(Error::NotReduced {
                nil_rank: nil.rank(),
            })
        }
    }

    pub fn is_idempotent(&self, x: &[Integer]) -> bool {
        self.mul(x, x) == x
    }

    pub fn to_json(&self) -> Result<OrderJson> {
        let conv = |v: &IntVec| -> Result<Vec<i64>> {
            v.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::Shape(format!("{x} does not fit in 64 bits")))
                })
                .collect()
        };
        Ok(OrderJson {
            rank: self.rank,
            one: conv(&self.one)?,
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(conv).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
            labels: self.labels.clone(),
        })
    }

    pub fn from_json(json: &OrderJson) -> Result<Order> {
        let table = json
            .table
            .iter()
            .map(|row| row.iter().map(|v| int_vec(v)).collect())
            .collect();
        let order = validate(table, int_vec(&json.one), json.rank)?;
        match &json.labels {
            Some(l) => order.with_labels(l.clone()),
            None => Ok(order),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Order> {
        let json: OrderJson = serde_json::from_str(s).map_err(|e| Error::Shape(e.to_string()))?;
        Order::from_json(&json)
    }
}

/// On-disk order format: `table[i][j]` is the coordinate vector of `e_i * e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub rank: usize,
    pub one: Vec<i64>,
    pub table: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Element labels of a group ring: one tuple `(a_1, ..., a_r)` per basis
/// element, meaning `g_1^a_1 * ... * g_r^a_r`.
pub type GroupLabels = Vec<Vec<u64>>;

/// The group ring `Z[C_{k_1} x ... x C_{k_r}]` on the basis of group
/// elements, enumerated with the first factor varying slowest.
pub fn group_ring(cyclic_factors: &[u64]) -> Result<(Order, GroupLabels)> {
    if cyclic_factors.contains(&0) {
        return Err(Error::Shape("cyclic factors must be positive".into()));
    }
    let n: u64 = cyclic_factors.iter().product();
    let n = n as usize;
    let labels: GroupLabels = (0..n)
        .map(|mut idx| {
            let mut t = vec![0u64; cyclic_factors.len()];
            for (slot, &k) in t.iter_mut().zip(cyclic_factors).rev() {
                *slot = (idx as u64) % k;
                idx /= k as usize;
            }
            t
        })
        .collect();
    let index_of = |t: &[u64]| -> usize {
        t.iter()
            .zip(cyclic_factors)
            .fold(0usize, |acc, (&a, &k)| acc * k as usize + a as usize)
    };
    let mut table = vec![vec![vec![Integer::new(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<u64> = labels[i]
                .iter()
                .zip(&labels[j])
                .zip(cyclic_factors)
                .map(|((a, b), k)| (a + b) % k)
                .collect();
            table[i][j][index_of(&prod)] = Integer::from(1);
        }
    }
    let mut one = vec![Integer::new(); n];
    one[0] = Integer::from(1);
    let names = labels
        .iter()
        .map(|t| {
            let s: Vec<String> = t.iter().map(|a| a.to_string()).collect();
            format!("g({})", s.join(","))
        })
        .collect();
    let order = Order::new(table, one)?.with_labels(names)?;
    Ok((order, labels))
}

/// `A / I` together with the maps relating it to `A`.
#[derive(Clone, Debug)]
pub struct QuotientOrder {
    pub order: Order,
    /// `n x m` matrix: `coords_quotient = coords_A * projection`.
    pub projection: IntMatrix,
    /// `m x n` matrix whose rows are lifts of the quotient basis to `A`.
    pub section: IntMatrix,
    /// The saturated ideal that was divided out.
    pub ideal: SublatticeBasis,
}

impl QuotientOrder {
    pub fn project(&self, x: &[Integer]) -> Element {
        self.projection.left_mul_vec(x)
    }

    pub fn lift(&self, y: &[Integer]) -> Element {
        self.section.left_mul_vec(y)
    }
}

/// Ideal generated by `gens`: repeatedly multiply by basis elements until the
/// HNF stabilises.
pub fn ideal_closure(a: &Order, gens: &[Element]) -> SublatticeBasis {
    let n = a.rank();
    let mut ideal = SublatticeBasis::from_generators(n, gens);
    loop {
        let mut next = ideal.vectors();
        for v in ideal.vectors() {
            for i in 0..n {
                next.push(a.mul(&a.basis_element(i), &v));
            }
        }
        let grown = SublatticeBasis::from_generators(n, &next);
        if grown == ideal {
            return ideal;
        }
        ideal = grown;
    }
}

/// Quotient of `a` by the ideal generated by `ideal_gens`. Fails with
/// [`Error::TorsionQuotient`] when the ideal is not saturated.
pub fn quotient_order(a: &Order, ideal_gens: &[Element]) -> Result<QuotientOrder> {
    let n = a.rank();
    let ideal = ideal_closure(a, ideal_gens);
    if !ideal.is_saturated() {
        return Err(Error::TorsionQuotient);
    }
    let r = ideal.rank();
    let basis = ideal.basis();

    // Complement: standard vectors off the pivot columns when every pivot is
    // 1, otherwise read one off the Smith form.
    let pivots: Vec<usize> = (0..r)
        .map(|k| basis.row(k).iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    let complement: Vec<IntVec> = if pivots.iter().enumerate().all(|(k, &p)| basis[(k, p)] == 1) {
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|c| a.basis_element(c))
            .collect()
    } else {
        let (_, _, v) = snf(basis);
        let v_inv = unimodular_inverse(&v)?;
        (r..n).map(|k| v_inv.row(k).to_vec()).collect()
    };
    let mut full = ideal.vectors();
    full.extend(complement.iter().cloned());
    let w = IntMatrix::from_rows(n, &full);
    let w_inv = unimodular_inverse(&w)?;
    let m = n - r;
    let mut projection = IntMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            projection[(i, j)] = w_inv[(i, r + j)].clone();
        }
    }
    let section = IntMatrix::from_rows(n, &complement);
    let table: Vec<Vec<IntVec>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| projection.left_mul_vec(&a.mul(section.row(i), section.row(j))))
                .collect()
        })
        .collect();
    let one = projection.left_mul_vec(a.one());
    let order = validate(table, one, m)?;
    Ok(QuotientOrder {
        order,
        projection,
        section,
        ideal,
    })
}

/// `A / sqrt(0_A)`.
pub fn reduced_quotient(a: &Order) -> Result<QuotientOrder> {
    let nil = a.nilradical();
    quotient_order(a, &nil.vectors())
}

/// `Z[X]/(f)` on the power basis, for monic `f` given by its coefficients
/// from the constant term upwards.
pub fn monogenic_order(f: &[Integer]) -> Result<Order> {
    let n = f
        .len()
        .checked_sub(1)
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Shape("polynomial must have degree at least 1".into()))?;
    if f[n] != 1 {
        return Err(Error::Shape("polynomial must be monic".into()));
    }
    // powers[k] = X^k reduced mod f, for k < 2n - 1
    let mut powers: Vec<IntVec> = Vec::with_capacity(2 * n);
    for k in 0..n {
        let mut e = vec![Integer::new(); n];
        e[k] = Integer::from(1);
        powers.push(e);
    }
    while powers.len() < 2 * n - 1 {
        let prev = powers.last().unwrap();
        let top = prev[n - 1].clone();
        let mut next = vec![Integer::new(); n];
        next[1..n].clone_from_slice(&prev[..n - 1]);
        for (k, c) in f[..n].iter().enumerate() {
            next[k] -= &top * c;
        }
        powers.push(next);
    }
    let table = (0..n)
        .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
        .collect();
    let mut one = vec![Integer::new(); n];
    one[0] = Integer::from(1);
    let labels = (0..n).map(|k| format!("x^{k}")).collect();
    validate(table, one, n)?.with_labels(labels)
}

/// `A x B` on the concatenated bases.
pub fn product_order(a: &Order, b: &Order) -> Result<Order> {
    let (na, nb) = (a.rank(), b.rank());
    let n = na + nb;
    let mut table = vec![vec![vec![Integer::new(); n]; n]; n];
    for i in 0..na {
        for j in 0..na {
            table[i][j][..na].clone_from_slice(a.structure_constants(i, j));
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            table[na + i][na + j][na..].clone_from_slice(b.structure_constants(i, j));
        }
    }
    let mut one = a.one().clone();
    one.extend(b.one().iter().cloned());
    validate(table, one, n)
}

/// The ring `Z` as an order of rank 1.
pub fn integers() -> Order {
    Order::new(vec![vec![int_vec(&[1])]], int_vec(&[1])).expect("Z is an order")
}

/// Row-style HNF of a list of elements, dropping zero rows.
pub fn span(a: &Order, elems: &[Element]) -> SublatticeBasis {
    SublatticeBasis::from_generators(a.rank(), elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Vec<Integer> {
        int_vec(c)
    }

    fn zc2_table(gg: &[i64]) -> Vec<Vec<IntVec>> {
        vec![
            vec![int_vec(&[1, 0]), int_vec(&[0, 1])],
            vec![int_vec(&[0, 1]), int_vec(gg)],
        ]
    }

    #[test]
    fn validate_examples() {
        assert!(validate(zc2_table(&[1, 0]), int_vec(&[1, 0]), 2).is_ok());
        assert!(validate(vec![vec![int_vec(&[1])]], int_vec(&[1]), 1).is_ok());
        // g*g = g is Z[X]/(X^2 - X), a genuine order (isomorphic to Z x Z)
        let zz = validate(zc2_table(&[0, 1]), int_vec(&[1, 0]), 2).unwrap();
        assert!(zz.is_idempotent(&int_vec(&[0, 1])));
        // broken identity
        assert_eq!(
            validate(zc2_table(&[1, 0]), int_vec(&[0, 1]), 2).unwrap_err(),
            Error::BadIdentity { i: 0 }
        );
        // e1*e1 = e2, e2*e2 = e1, e1*e2 = 0: (e1 e1) e2 = e1 but e1 (e1 e2) = 0
        let t = vec![
            vec![
                int_vec(&[1, 0, 0]),
                int_vec(&[0, 1, 0]),
                int_vec(&[0, 0, 1]),
            ],
            vec![
                int_vec(&[0, 1, 0]),
                int_vec(&[0, 0, 1]),
                int_vec(&[0, 0, 0]),
            ],
            vec![
                int_vec(&[0, 0, 1]),
                int_vec(&[0, 0, 0]),
                int_vec(&[0, 1, 0]),
            ],
        ];
        assert!(matches!(
            validate(t, int_vec(&[1, 0, 0]), 3),
            Err(Error::NotAssociative { .. })
        ));
        let mut t = zc2_table(&[1, 0]);
        t[0][1] = int_vec(&[1, 1]);
        assert_eq!(
            validate(t, int_vec(&[1, 0]), 2).unwrap_err(),
            Error::NotCommutative { i: 0, j: 1 }
        );
    }

    #[test]
    fn multiplication() {
        let (zc2, _) = group_ring(&[2]).unwrap();
        let g = int_vec(&[0, 1]);
        assert_eq!(zc2.mul(&g, &g), int_vec(&[1, 0]));
        assert_eq!(zc2.mul(&int_vec(&[3, -2]), zc2.one()), int_vec(&[3, -2]));
        let z2 = monogenic_order(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(
            z2.mul(&int_vec(&[0, 1]), &int_vec(&[0, 1])),
            int_vec(&[2, 0])
        );
    }

    #[test]
    fn regular_matrices() {
        let (zc2, _) = group_ring(&[2]).unwrap();
        assert_eq!(zc2.regular_matrix(zc2.one()), IntMatrix::identity(2));
        assert_eq!(
            zc2.regular_matrix(&int_vec(&[0, 1])),
            IntMatrix::from_i64(&[&[0, 1], &[1, 0]])
        );
        let x = int_vec(&[2, -1]);
        let y = int_vec(&[-3, 5]);
        let sum: IntVec = x
            .iter()
            .zip(&y)
            .map(|(a, b)| Integer::from(a + b))
            .collect();
        let mx = zc2.regular_matrix(&x);
        let my = zc2.regular_matrix(&y);
        let ms = zc2.regular_matrix(&sum);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(ms[(i, j)], Integer::from(&mx[(i, j)] + &my[(i, j)]));
            }
        }
        assert_eq!(mx.mul_vec(&y), zc2.mul(&x, &y));
    }

    #[test]
    fn nilradical_examples() {
        let eps = monogenic_order(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(eps.nilradical().vectors(), vec![int_vec(&[0, 1])]);
        assert!(!eps.is_reduced());
        let z2 = monogenic_order(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(z2.trace_gram(), IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert!(z2.is_reduced());
        let zz = product_order(&integers(), &integers()).unwrap();
        assert!(zz.is_reduced());
    }

    #[test]
    fn nilradical_of_larger_nonreduced_order() {
        // Z[X]/(X^2 (X - 1)) has nilradical spanned by X^2 - X
        let a = monogenic_order(&poly(&[0, 0, -1, 1])).unwrap();
        let nil = a.nilradical();
        assert_eq!(nil.rank(), 1);
        assert!(nil.vectors().iter().all(|v| a.is_nilpotent(v)));
        let q = reduced_quotient(&a).unwrap();
        assert_eq!(q.order.rank(), 2);
        assert!(q.order.is_reduced());
    }

    #[test]
    fn group_rings() {
        let (zc2, labels) = group_ring(&[2]).unwrap();
        assert_eq!(labels, vec![vec![0], vec![1]]);
        assert_eq!(zc2.structure_constants(1, 1), &int_vec(&[1, 0]));
        let (z, _) = group_ring(&[1]).unwrap();
        assert_eq!(z, integers().with_labels(vec!["g(0)".into()]).unwrap());
        let (v4, labels) = group_ring(&[2, 2]).unwrap();
        assert_eq!(v4.rank(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let prod: Vec<u64> = (0..2).map(|k| (labels[i][k] + labels[j][k]) % 2).collect();
                let idx = labels.iter().position(|l| *l == prod).unwrap();
                assert_eq!(
                    v4.mul(&v4.basis_element(i), &v4.basis_element(j)),
                    v4.basis_element(idx)
                );
            }
        }
    }

    #[test]
    fn quotients() {
        let (zc5, _) = group_ring(&[5]).unwrap();
        let q = quotient_order(&zc5, &[int_vec(&[1, 1, 1, 1, 1])]).unwrap();
        assert_eq!(q.order.rank(), 4);
        assert!(q.order.is_reduced());
        // the image of a generator has order 5, and 1 + g + ... + g^4 = 0
        let g = q.project(&zc5.basis_element(1));
        assert_eq!(q.order.pow(&g, 5), *q.order.one());
        assert_ne!(q.order.pow(&g, 1), *q.order.one());
        assert!(is_zero_vec(&q.project(&int_vec(&[1, 1, 1, 1, 1]))));

        let (zc2, _) = group_ring(&[2]).unwrap();
        let q = quotient_order(&zc2, &[int_vec(&[1, 1])]).unwrap();
        // rank 1 with basis the image of g, which is -1: the ring Z
        assert_eq!(q.order.rank(), 1);
        assert_eq!(q.order.one(), &int_vec(&[-1]));
        assert_eq!(q.order.structure_constants(0, 0), &int_vec(&[-1]));
        assert_eq!(q.project(&int_vec(&[0, 1])), int_vec(&[1]));

        assert_eq!(
            quotient_order(&integers(), &[int_vec(&[2])]).unwrap_err(),
            Error::TorsionQuotient
        );
    }

    #[test]
    fn monogenic_and_products() {
        let z = monogenic_order(&poly(&[-1, 1])).unwrap();
        assert_eq!(z.rank(), 1);
        assert_eq!(z.structure_constants(0, 0), &int_vec(&[1]));
        let phi = monogenic_order(&poly(&[-1, -1, 1])).unwrap();
        assert_eq!(phi.structure_constants(1, 1), &int_vec(&[1, 1]));
        assert!(monogenic_order(&poly(&[1, 2])).is_err());

        let zz = product_order(&integers(), &integers()).unwrap();
        assert_eq!(zz.structure_constants(0, 0), &int_vec(&[1, 0]));
        assert_eq!(zz.structure_constants(1, 1), &int_vec(&[0, 1]));
        assert_eq!(zz.structure_constants(0, 1), &int_vec(&[0, 0]));
        let zero = Order::new(vec![], vec![]).unwrap();
        assert_eq!(product_order(&phi, &zero).unwrap().rank(), 2);
        let idem = (0..4)
            .filter(|m| zz.is_idempotent(&int_vec(&[(m & 1) as i64, (m >> 1) as i64])))
            .count();
        assert_eq!(idem, 4);
    }

    #[test]
    fn json_roundtrip() {
        let (zc3, _) = group_ring(&[3]).unwrap();
        let json = serde_json::to_string(&zc3.to_json().unwrap()).unwrap();
        assert_eq!(Order::from_json_str(&json).unwrap(), zc3);
        assert!(Order::from_json_str("{not json").is_err());
    }
}
