//! Idempotents, connectedness and roots of unity of reduced orders.
//!
//! Both searches are short-vector problems for the canonical form: an
//! idempotent `e` has `<e, e> = #{sigma : sigma(e) = 1} <= rank`, and a root
//! of unity has `<z, z> = rank` exactly. Candidates are enumerated and then
//! filtered with exact ring arithmetic.

use rug::{Float, Integer};

use crate::config::{escalate, Config};
use crate::embeddings::{canonical_gram, characteristic_polynomial, GramForm, Sign};
use crate::error::{Error, Result};
use crate::intlinalg::IntVec;
use crate::lattice::{enumerate_up_to, is_indecomposable};
use crate::order::{Element, Order};

fn negate(v: &[Integer]) -> IntVec {
    v.iter().map(|x| Integer::from(-x)).collect()
}

fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Quotient of `f` by the monic `g` if the division is exact. Coefficients
/// run from the constant term upwards.
fn divide_exact(f: &[Integer], g: &[Integer]) -> Option<Vec<Integer>> {
    let dg = g.len() - 1;
    if f.len() <= dg {
        return None;
    }
    let mut rem = f.to_vec();
    let mut quot = vec![Integer::new(); f.len() - dg];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dg].clone();
        for (j, gj) in g.iter().enumerate() {
            rem[i + j] -= Integer::from(&c * gj);
        }
        quot[i] = c;
    }
    rem.iter().all(|r| r.is_zero()).then_some(quot)
}

/// The cyclotomic polynomial `Phi_k`, constant term first.
fn cyclotomic(k: u64) -> Vec<Integer> {
    let mut f = vec![Integer::new(); k as usize + 1];
    f[0] = Integer::from(-1);
    f[k as usize] = Integer::from(1);
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        f = divide_exact(&f, &cyclotomic(d)).expect("Phi_d divides X^k - 1");
    }
    f
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// If the characteristic polynomial of multiplication by `x` is a product of
/// cyclotomic polynomials `Phi_k`, the lcm of those `k`; otherwise `None`.
/// Every root of unity has an order dividing this number.
pub fn torsion_exponent(a: &Order, x: &[Integer]) -> Option<u64> {
    let mut f = characteristic_polynomial(&a.regular_matrix(x));
    let n = (f.len() - 1) as u64;
    let mut exponent = 1u64;
    // phi(k) >= sqrt(k / 2), so phi(k) <= n forces k <= 2 n^2
    for k in (1..=2 * n * n + 2).filter(|&k| euler_phi(k) <= n) {
        let phi = cyclotomic(k);
        let mut hit = false;
        while let Some(q) = divide_exact(&f, &phi) {
            f = q;
            hit = true;
        }
        if hit {
            exponent = exponent / gcd(exponent, k) * k;
        }
        if f.len() == 1 {
            break;
        }
    }
    (f.len() == 1).then_some(exponent)
}

/// Least `n >= 1` with `x^n = 1`, or `None` if `x` is not a root of unity.
pub fn element_order(a: &Order, x: &[Integer]) -> Option<u64> {
    let exponent = torsion_exponent(a, x)?;
    // all eigenvalues of x^exponent are 1, so it is unipotent; a unipotent
    // torsion element in characteristic zero is 1
    if a.pow(x, exponent) != *a.one() {
        return None;
    }
    let mut order = exponent;
    let mut rest = exponent;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            while order.is_multiple_of(p) && a.pow(x, order / p) == *a.one() {
                order /= p;
            }
        }
        p += 1;
    }
    Some(order)
}

fn idempotents_with(a: &Order, g: &GramForm, cap: usize) -> Result<Vec<Element>> {
    let bound = Float::with_val(g.precision(), a.rank() as u32);
    let mut out = vec![a.zero()];
    for v in enumerate_up_to(g, &bound, cap)? {
        for c in [negate(&v), v] {
            if a.is_idempotent(&c) {
                out.push(c);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All `x` with `x^2 = x`, including `0` and `1`, sorted.
pub fn idempotents(a: &Order, cfg: &Config) -> Result<Vec<Element>> {
    a.require_reduced()?;
    escalate(cfg, |c| {
        let g = canonical_gram(a, c)?;
        idempotents_with(a, &g, c.enumeration_cap)
    })
}

/// Connected means exactly two idempotents, equivalently `1` indecomposable;
/// both are computed and must agree.
pub fn is_connected(a: &Order, cfg: &Config) -> Result<bool> {
    a.require_reduced()?;
    if a.rank() == 0 {
        return Err(Error::Shape(
            "the zero ring has no connectedness verdict".into(),
        ));
    }
    escalate(cfg, |c| {
        let g = canonical_gram(a, c)?;
        let by_count = idempotents_with(a, &g, c.enumeration_cap)?.len() == 2;
        let by_lattice = is_indecomposable(&g, a.one(), c.enumeration_cap)?;
        if by_count != by_lattice {
            return Err(Error::InternalInconsistency(format!(
                "idempotent count says {by_count}, indecomposability of 1 says {by_lattice}"
            )));
        }
        Ok(by_count)
    })
}

/// The torsion of the unit group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroupReport {
    pub roots: Vec<Element>,
    pub count: usize,
    /// Multiplicative order of each root, aligned with `roots`.
    pub orders: Vec<u64>,
    pub closed: bool,
}

fn roots_with(a: &Order, g: &GramForm, cap: usize) -> Result<UnitGroupReport> {
    let rank = Float::with_val(g.precision(), a.rank() as u32);
    let mut pairs = Vec::new();
    for v in enumerate_up_to(g, &rank, cap)? {
        let d = Float::with_val(g.precision(), g.norm(&v) - &rank);
        if g.classify(&d)? != Sign::Zero {
            continue;
        }
        for c in [negate(&v), v] {
            if let Some(n) = element_order(a, &c) {
                pairs.push((c, n));
            }
        }
    }
    pairs.sort();
    let roots: Vec<Element> = pairs.iter().map(|(r, _)| r.clone()).collect();
    let closed = roots.iter().all(|x| {
        roots
            .iter()
            .all(|y| roots.binary_search(&a.mul(x, y)).is_ok())
    });
    if !closed {
        return Err(Error::InternalInconsistency(
            "roots of unity are not closed under multiplication".into(),
        ));
    }
    Ok(UnitGroupReport {
        count: roots.len(),
        orders: pairs.iter().map(|(_, n)| *n).collect(),
        roots,
        closed,
    })
}

/// All roots of unity, found among vectors of norm exactly `rank`.
pub fn roots_of_unity(a: &Order, cfg: &Config) -> Result<UnitGroupReport> {
    a.require_reduced()?;
    escalate(cfg, |c| {
        let g = canonical_gram(a, c)?;
        roots_with(a, &g, c.enumeration_cap)
    })
}
