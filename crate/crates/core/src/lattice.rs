//! Decompositions, indecomposable vectors and the universal orthogonal
//! decomposition of a positive definite lattice `(Z^n, G)`.
//!
//! A decomposition of `z` is a pair `(x, y)` with `z = x + y` and
//! `<x, y> >= 0`; `z` is indecomposable when it is nonzero and only has the
//! trivial decompositions `(z, 0)` and `(0, z)`. Every vector is a sum of
//! indecomposables of no larger norm, so after LLL reduction the
//! indecomposables of norm at most the largest reduced basis norm generate
//! the lattice. Joining non-orthogonal indecomposables into connected
//! components yields the finest orthogonal decomposition, which is the
//! universal one.

use std::sync::Arc;

use rug::{Float, Integer};

use crate::embeddings::{GramForm, Sign};
use crate::error::{Error, Result};
use crate::intlinalg::{direct_sum_index, is_zero_vec, IntMatrix, IntVec, SublatticeBasis};

pub const LLL_DELTA: f64 = 0.99;

/// Relative size below which an `f64` inner product is rechecked at full
/// precision.
const SCREEN_EPS: f64 = 1e-9;

/// Magnitude above which an `f64` inner product is trusted to have the sign
/// it shows: clear of both the rounding error and the ambiguity band.
fn screen_threshold(g: &GramForm, scale: f64) -> f64 {
    (SCREEN_EPS * scale).max(2.0 * g.band().to_f64())
}

fn to_f64(v: &[Integer]) -> Vec<f64> {
    v.iter().map(Integer::to_f64).collect()
}

fn quad_f64(g: &[Vec<f64>], x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0.0 {
            continue;
        }
        let row = &g[i];
        let mut t = 0.0;
        for (j, yj) in y.iter().enumerate() {
            t += row[j] * yj;
        }
        s += xi * t;
    }
    s
}

/// `z = x + y` exactly and `<x, y> >= -tau`.
pub fn is_decomposition(g: &GramForm, z: &[Integer], x: &[Integer], y: &[Integer]) -> Result<bool> {
    let n = g.n();
    if z.len() != n || x.len() != n || y.len() != n {
        return Err(Error::Shape("vectors must have the ambient rank".into()));
    }
    if z.iter()
        .zip(x.iter().zip(y))
        .any(|(a, (b, c))| *a != Integer::from(b + c))
    {
        return Ok(false);
    }
    Ok(g.classify(&g.inner(x, y))? != Sign::Negative)
}

/// LLL-reduced basis of `(Z^n, G)` with `delta = 0.99`; rows are in standard
/// coordinates and span `Z^n`.
pub fn lll_reduce(g: &GramForm) -> IntMatrix {
    let n = g.n();
    let ga = g.approx();
    let mut basis: Vec<IntVec> = IntMatrix::identity(n).row_vecs();
    if n < 2 {
        return IntMatrix::from_rows(n, &basis);
    }
    let gso = |basis: &[IntVec]| {
        let b: Vec<Vec<f64>> = basis.iter().map(|v| to_f64(v)).collect();
        let mut mu = vec![vec![0.0; n]; n];
        let mut bstar = vec![0.0; n];
        for i in 0..n {
            for j in 0..i {
                let mut s = quad_f64(ga, &b[i], &b[j]);
                for k in 0..j {
                    s -= mu[j][k] * mu[i][k] * bstar[k];
                }
                mu[i][j] = s / bstar[j];
            }
            let mut s = quad_f64(ga, &b[i], &b[i]);
            for k in 0..i {
                s -= mu[i][k] * mu[i][k] * bstar[k];
            }
            bstar[i] = s;
        }
        (mu, bstar)
    };
    let mut k = 1;
    let mut steps = 0usize;
    while k < n && steps < 100_000 {
        steps += 1;
        let (mut mu, _) = gso(&basis);
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let qi = Integer::from_f64(q).unwrap_or_default();
                let bj = basis[j].clone();
                for (a, b) in basis[k].iter_mut().zip(&bj) {
                    *a -= Integer::from(&qi * b);
                }
                for i in 0..j {
                    mu[k][i] -= q * mu[j][i];
                }
                mu[k][j] -= q;
            }
        }
        let (mu, bstar) = gso(&basis);
        if bstar[k] >= (LLL_DELTA - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1] {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    IntMatrix::from_rows(n, &basis)
}

/// Vectors with precomputed `f64` images, for repeated inner products.
struct Screened {
    vecs: Vec<IntVec>,
    approx: Vec<Vec<f64>>,
    gx: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl Screened {
    fn new(g: &GramForm, vecs: Vec<IntVec>) -> Screened {
        let ga = g.approx();
        let approx: Vec<Vec<f64>> = vecs.iter().map(|v| to_f64(v)).collect();
        let gx: Vec<Vec<f64>> = approx
            .iter()
            .map(|x| {
                ga.iter()
                    .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        let norms = approx
            .iter()
            .zip(&gx)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a * b).sum())
            .collect();
        Screened {
            vecs,
            approx,
            gx,
            norms,
        }
    }

    fn dot(&self, i: usize, j: usize) -> f64 {
        self.approx[i]
            .iter()
            .zip(&self.gx[j])
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Fincke-Pohst enumeration of all nonzero `v` with `<v, v> <= bound + tau`,
/// one representative per `+-` pair (first nonzero coordinate positive),
/// sorted lexicographically.
pub fn enumerate_up_to(g: &GramForm, bound: &Float, cap: usize) -> Result<Vec<IntVec>> {
    let reduced = lll_reduce(g);
    enumerate_in_basis(g, &reduced, bound, cap)
}

fn enumerate_in_basis(
    g: &GramForm,
    reduced: &IntMatrix,
    bound: &Float,
    cap: usize,
) -> Result<Vec<IntVec>> {
    let n = g.n();
    if n == 0 {
        return Ok(vec![]);
    }
    let p = g.precision();
    let limit = Float::with_val(p, bound + g.tau());
    if limit <= 0 {
        return Ok(vec![]);
    }
    let ga = g.approx();
    let rows: Vec<Vec<f64>> = reduced.row_vecs().iter().map(|v| to_f64(v)).collect();
    let h: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| quad_f64(ga, &rows[i], &rows[j])).collect())
        .collect();
    // Q(c) = sum_i q[i][i] (c_i + sum_{j>i} q[i][j] c_j)^2
    let mut q = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        let mut d = h[i][i];
        for k in 0..i {
            d -= q[k][k] * q[k][i] * q[k][i];
        }
        if d <= 0.0 {
            return Err(Error::NotPositiveDefinite { k: i + 1 });
        }
        q[i][i] = d;
        for j in i + 1..n {
            let mut s = h[i][j];
            for k in 0..i {
                s -= q[k][k] * q[k][i] * q[k][j];
            }
            q[i][j] = s / d;
        }
    }
    let lim_f = limit.to_f64();
    let budget = lim_f * (1.0 + 1e-9) + 1e-9;

    let mut found: Vec<IntVec> = Vec::new();
    let visit_cap = cap.saturating_mul(64).max(1 << 16);
    let mut walk = Walk {
        q: &q,
        coeffs: vec![0i64; n],
        out: Vec::new(),
        visited: 0,
        visit_cap,
        cap,
    };
    if walk.descend(n - 1, budget).is_err() {
        return Err(Error::EnumerationBudgetExceeded { cap });
    }
    let raw = walk.out;
    for c in raw {
        let ci: IntVec = c.iter().map(|&x| Integer::from(x)).collect();
        let v = reduced.left_mul_vec(&ci);
        let positive = v.iter().find(|x| !x.is_zero()).is_some_and(|x| *x > 0);
        if !positive {
            continue;
        }
        if g.norm(&v) <= limit {
            found.push(v);
        }
    }
    if found.len() > cap {
        return Err(Error::EnumerationBudgetExceeded { cap });
    }
    found.sort();
    Ok(found)
}

/// True iff `v` has no decomposition `(x, v - x)` with `x` and `v - x` both
/// nonzero.
pub fn is_indecomposable(g: &GramForm, v: &[Integer], cap: usize) -> Result<bool> {
    if v.len() != g.n() {
        return Err(Error::Shape("vector must have the ambient rank".into()));
    }
    if is_zero_vec(v) {
        return Ok(false);
    }
    let candidates = enumerate_up_to(g, &g.norm(v), cap)?;
    let mut all = vec![v.to_vec()];
    all.extend(candidates);
    let s = Screened::new(g, all);
    indecomposable_against(g, &s, 0, 1..s.vecs.len())
}

/// Checks `s.vecs[target]` against every candidate `x = +-s.vecs[c]`.
fn indecomposable_against(
    g: &GramForm,
    s: &Screened,
    target: usize,
    candidates: impl Iterator<Item = usize>,
) -> Result<bool> {
    let v = &s.vecs[target];
    let nv = s.norms[target];
    let threshold = screen_threshold(g, nv.abs().max(g.max_abs_entry()).max(1.0));
    for c in candidates {
        let x = &s.vecs[c];
        if c == target || s.norms[c] > nv * (1.0 + 1e-9) + 1e-9 {
            continue;
        }
        for sign in [1.0f64, -1.0] {
            // <x, v - x> = <x, v> - <x, x> for x -> sign * x
            let approx = sign * s.dot(c, target) - s.norms[c];
            if approx < -threshold {
                continue;
            }
            let sx: IntVec = if sign > 0.0 {
                x.clone()
            } else {
                x.iter().map(|a| Integer::from(-a)).collect()
            };
            if sx == *v {
                continue;
            }
            let rest: IntVec = v
                .iter()
                .zip(&sx)
                .map(|(a, b)| Integer::from(a - b))
                .collect();
            if g.classify(&g.inner(&sx, &rest))? != Sign::Negative {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn nonzero_pairing(g: &GramForm, s: &Screened, i: usize, j: usize) -> Result<bool> {
    let approx = s.dot(i, j);
    let scale = s.norms[i].max(s.norms[j]).max(g.max_abs_entry()).max(1.0);
    if approx.abs() > screen_threshold(g, scale) {
        return Ok(true);
    }
    Ok(g.classify(&g.inner(&s.vecs[i], &s.vecs[j]))? != Sign::Zero)
}

/// The universal orthogonal decomposition together with the Gram form it
/// was computed from.
#[derive(Clone, Debug)]
pub struct SDecomposition {
    pub ambient_rank: usize,
    /// HNF bases, sorted by their lexicographically smallest basis vector.
    pub components: Vec<SublatticeBasis>,
    /// Indecomposables found below the enumeration bound (one per `+-` pair).
    pub indecomposables: Vec<IntVec>,
    pub gram: Arc<GramForm>,
}

impl SDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Index of the component containing `v`, if any single one does.
    pub fn component_of(&self, v: &[Integer]) -> Option<usize> {
        self.components.iter().position(|c| c.contains(v))
    }

    /// The map `f` with `other[t] = sum_{f(s) = t} components[s]`, if
    /// `other` is a decomposition that this one refines.
    pub fn factorization(&self, other: &[SublatticeBasis]) -> Result<Vec<usize>> {
        let mut f = Vec::with_capacity(self.components.len());
        for (s, c) in self.components.iter().enumerate() {
            let hits: Vec<usize> = other
                .iter()
                .enumerate()
                .filter(|(_, m)| m.contains_lattice(c))
                .map(|(t, _)| t)
                .collect();
            match hits.as_slice() {
                [t] => f.push(*t),
                [] => {
                    return Err(Error::NoMorphism(format!(
                        "component {s} lies in no target part"
                    )))
                }
                _ => return Err(Error::AmbiguousMorphism(format!("component {s}"))),
            }
        }
        for (t, m) in other.iter().enumerate() {
            let gens: Vec<IntVec> = f
                .iter()
                .enumerate()
                .filter(|(_, &ft)| ft == t)
                .flat_map(|(s, _)| self.components[s].vectors())
                .collect();
            if SublatticeBasis::from_generators(self.ambient_rank, &gens) != *m {
                return Err(Error::NoMorphism(format!(
                    "target part {t} is not a sum of components"
                )));
            }
        }
        Ok(f)
    }
}

/// Checks that `parts` are nonzero, pairwise orthogonal within tolerance and
/// sum directly to `Z^n`.
pub fn check_orthogonal_decomposition(g: &GramForm, parts: &[SublatticeBasis]) -> Result<()> {
    let n = g.n();
    if parts.iter().any(SublatticeBasis::is_zero) {
        return Err(Error::DecompositionFailed("zero component".into()));
    }
    match direct_sum_index(parts, n) {
        Ok(i) if i == 1 => {}
        Ok(i) => {
            return Err(Error::DecompositionFailed(format!(
                "components have index {i}"
            )))
        }
        Err(_) => return Err(Error::DecompositionFailed("components do not span".into())),
    }
    for (a, pa) in parts.iter().enumerate() {
        for pb in &parts[a + 1..] {
            for u in pa.vectors() {
                for v in pb.vectors() {
                    if g.classify(&g.inner(&u, &v))? != Sign::Zero {
                        return Err(Error::DecompositionFailed(
                            "components are not orthogonal".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Universal orthogonal decomposition of `(Z^n, G)`.
pub fn universal_s_decomposition(g: Arc<GramForm>, cap: usize) -> Result<SDecomposition> {
    let n = g.n();
    if n == 0 {
        return Ok(SDecomposition {
            ambient_rank: 0,
            components: vec![],
            indecomposables: vec![],
            gram: g,
        });
    }
    let reduced = lll_reduce(&g);
    let bound = reduced
        .row_vecs()
        .iter()
        .map(|v| g.norm(v))
        .fold(Float::new(g.precision()), |m, v| m.max(&v));
    let mut vecs = enumerate_in_basis(&g, &reduced, &bound, cap)?;
    // shorter vectors first so candidates for v are a prefix
    let s0 = Screened::new(&g, std::mem::take(&mut vecs));
    let mut order: Vec<usize> = (0..s0.vecs.len()).collect();
    order.sort_by(|&a, &b| {
        s0.norms[a]
            .total_cmp(&s0.norms[b])
            .then_with(|| s0.vecs[a].cmp(&s0.vecs[b]))
    });
    let s = Screened::new(&g, order.iter().map(|&i| s0.vecs[i].clone()).collect());

    let mut indec = Vec::new();
    for t in 0..s.vecs.len() {
        let limit = s.norms[t] * (1.0 + 1e-9) + 1e-9;
        let upto = s.norms.partition_point(|&x| x <= limit);
        if indecomposable_against(&g, &s, t, 0..upto)? {
            indec.push(t);
        }
    }

    let mut parent: Vec<usize> = (0..indec.len()).collect();
    for a in 0..indec.len() {
        for b in a + 1..indec.len() {
            if find(&mut parent, a) != find(&mut parent, b)
                && nonzero_pairing(&g, &s, indec[a], indec[b])?
            {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<IntVec>> = Default::default();
    for a in 0..indec.len() {
        let r = find(&mut parent, a);
        groups.entry(r).or_default().push(s.vecs[indec[a]].clone());
    }
    let mut components: Vec<SublatticeBasis> = groups
        .into_values()
        .map(|gens| SublatticeBasis::from_generators(n, &gens))
        .collect();
    components.sort_by_key(|a| a.min_vector());
    check_orthogonal_decomposition(&g, &components)?;

    let mut indecomposables: Vec<IntVec> = indec.iter().map(|&t| s.vecs[t].clone()).collect();
    indecomposables.sort();
    Ok(SDecomposition {
        ambient_rank: n,
        components,
        indecomposables,
        gram: g,
    })
}

/// Depth-first Fincke-Pohst walk over coefficient vectors in a reduced basis.
struct Walk<'a> {
    q: &'a [Vec<f64>],
    coeffs: Vec<i64>,
    out: Vec<Vec<i64>>,
    visited: usize,
    visit_cap: usize,
    cap: usize,
}

impl Walk<'_> {
    fn descend(&mut self, i: usize, remaining: f64) -> std::result::Result<(), ()> {
        let n = self.q.len();
        let qi = &self.q[i];
        let center: f64 = -(i + 1..n)
            .map(|j| qi[j] * self.coeffs[j] as f64)
            .sum::<f64>();
        let radius = (remaining.max(0.0) / qi[i]).sqrt();
        let lo = (center - radius).ceil() as i64;
        let hi = (center + radius).floor() as i64;
        for c in lo..=hi {
            self.visited += 1;
            if self.visited > self.visit_cap {
                return Err(());
            }
            let d = c as f64 - center;
            let rest = remaining - qi[i] * d * d;
            if rest < 0.0 {
                continue;
            }
            self.coeffs[i] = c;
            if i == 0 {
                if self.coeffs.iter().any(|&x| x != 0) {
                    self.out.push(self.coeffs.clone());
                    if self.out.len() > 2 * self.cap {
                        return Err(());
                    }
                }
            } else {
                self.descend(i - 1, rest)?;
            }
        }
        self.coeffs[i] = 0;
        Ok(())
    }
}
