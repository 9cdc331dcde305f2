//! Complex embeddings of a reduced order and its canonical Gram form
//! `<x, y> = sum_sigma sigma(x) * conj(sigma(y))`.
//!
//! A reduced order `A` of rank `n` has exactly `n` ring homomorphisms to
//! `C`. We find them without factoring anything: pick a generic element `z`
//! whose characteristic polynomial `f` is squarefree (checked exactly), so
//! that `1, z, ..., z^(n-1)` is a `Q`-basis of `A_Q`. Each basis element is
//! then an exact rational polynomial `e_i = c_i(z)` and the embeddings are
//! `sigma_k(e_i) = c_i(lambda_k)` where `lambda_k` runs over the roots of `f`,
//! computed to the working precision with the Aberth iteration.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::intlinalg::{rational_inverse, IntMatrix, IntVec};
use crate::order::{Element, Order};

/// The `n` embeddings of a reduced order; `sigma[k][i] = sigma_k(e_i)`.
#[derive(Clone, Debug)]
pub struct EmbeddingMatrix {
    pub n: usize,
    pub precision: u32,
    pub sigma: Vec<Vec<Complex>>,
    /// Largest observed ring-homomorphism defect.
    pub residual: Float,
}

impl EmbeddingMatrix {
    /// `sigma_k(x)` for every embedding `k`.
    pub fn evaluate(&self, x: &[Integer]) -> Vec<Complex> {
        self.sigma
            .iter()
            .map(|row| {
                let mut acc = Complex::new(self.precision);
                for (c, s) in x.iter().zip(row) {
                    if !c.is_zero() {
                        acc += Complex::with_val(self.precision, s * c);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Characteristic polynomial `det(X I - M)`, coefficients from the constant
/// term upwards (Faddeev-LeVerrier; every division is exact).
pub fn characteristic_polynomial(m: &IntMatrix) -> Vec<Integer> {
    let n = m.rows();
    let mut coeffs = vec![Integer::new(); n + 1];
    coeffs[n] = Integer::from(1);
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = m.mul(&next);
        let mut tr = Integer::new();
        for i in 0..n {
            tr += &am[(i, i)];
        }
        coeffs[n - k] = -tr.div_exact(&Integer::from(k));
        mk = next;
    }
    coeffs
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.cmp0() == Ordering::Equal) {
        p.pop();
    }
}

/// Degree of `gcd(a, b)` over `Q` (`None` if both are zero).
fn gcd_degree(a: &[Integer], b: &[Integer]) -> Option<usize> {
    let mut a: Vec<Rational> = a.iter().map(Rational::from).collect();
    let mut b: Vec<Rational> = b.iter().map(Rational::from).collect();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = Rational::from(a.last().unwrap() / b.last().unwrap());
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= Rational::from(&q * c);
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().checked_sub(1)
}

pub fn is_squarefree(f: &[Integer]) -> bool {
    let deriv: Vec<Integer> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Integer::from(c * i as u64))
        .collect();
    gcd_degree(f, &deriv) == Some(0)
}

fn pow2(prec: u32, exp: i32) -> Float {
    Float::with_val(prec, Float::i_exp(1, exp))
}

fn abs(c: &Complex) -> Float {
    Float::with_val(c.prec().0, c.abs_ref())
}

fn horner(coeffs: &[Complex], x: &Complex, prec: u32) -> (Complex, Complex) {
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    for c in coeffs.iter().rev() {
        dp *= x;
        dp += &p;
        p *= x;
        p += c;
    }
    (p, dp)
}

/// All complex roots of a monic squarefree integer polynomial, by the
/// Aberth-Ehrlich simultaneous iteration at `prec` bits.
pub fn polynomial_roots(f: &[Integer], prec: u32) -> Option<Vec<Complex>> {
    let n = f.len() - 1;
    if n == 0 {
        return Some(vec![]);
    }
    let coeffs: Vec<Complex> = f.iter().map(|c| Complex::with_val(prec, c)).collect();
    if n == 1 {
        return Some(vec![Complex::with_val(prec, -&coeffs[0])]);
    }
    // Fujiwara bound on the root moduli
    let radius = (0..n)
        .map(|i| {
            let a = f[i].to_f64().abs();
            if a == 0.0 {
                0.0
            } else {
                a.powf(1.0 / (n - i) as f64)
            }
        })
        .fold(0.0f64, f64::max)
        .max(1.0);
    let pi = Float::with_val(prec, Constant::Pi);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let theta = Float::with_val(prec, &pi * 2u32) * k as u32 / n as u32 + 0.4f64;
            let (s, c) = theta.sin_cos(Float::new(prec));
            Complex::with_val(prec, (c * (radius * 0.75), s * (radius * 0.75)))
        })
        .collect();
    let tol = pow2(64, 12 - prec as i32);
    let mut polished = 0;
    for _ in 0..4000 {
        let mut worst = Float::new(64);
        for k in 0..n {
            let (p, dp) = horner(&coeffs, &z[k], prec);
            if p.real().is_zero() && p.imag().is_zero() {
                continue;
            }
            let ratio = if dp.real().is_zero() && dp.imag().is_zero() {
                Complex::with_val(prec, pow2(prec, -20))
            } else {
                Complex::with_val(prec, &p / &dp)
            };
            let mut s = Complex::new(prec);
            for j in 0..n {
                if j != k {
                    let d = Complex::with_val(prec, &z[k] - &z[j]);
                    s += d.recip();
                }
            }
            let denom = Complex::with_val(prec, 1) - Complex::with_val(prec, &ratio * &s);
            let w = Complex::with_val(prec, &ratio / &denom);
            let scale = Float::with_val(64, abs(&z[k])).max(&Float::with_val(64, 1));
            let rel = Float::with_val(64, abs(&w) / scale);
            if rel > worst {
                worst = rel;
            }
            z[k] -= w;
        }
        if !worst.is_finite() {
            return None;
        }
        if worst <= tol {
            polished += 1;
            if polished >= 2 {
                return Some(z);
            }
        }
    }
    None
}

fn generic_element(n: usize, seed: u64, attempt: u32) -> IntVec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(attempt) << 32) ^ 0x9e37_79b9);
    let spread = 3 + attempt as i64;
    (0..n)
        .map(|_| Integer::from(rng.gen_range(-spread..=spread)))
        .collect()
}

fn cmp_with_tolerance(a: &Float, b: &Float, tol: &Float) -> Ordering {
    let d = Float::with_val(a.prec(), a - b);
    if Float::with_val(a.prec(), d.abs_ref()) <= *tol {
        Ordering::Equal
    } else {
        a.partial_cmp(b).unwrap_or(Ordering::Equal)
    }
}

fn cmp_rows(a: &[Complex], b: &[Complex], tol: &Float) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = cmp_with_tolerance(x.real(), y.real(), tol)
            .then_with(|| cmp_with_tolerance(x.imag(), y.imag(), tol));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

fn bit_size(q: &Rational) -> u32 {
    q.numer().significant_bits() + q.denom().significant_bits()
}

fn split_with(a: &Order, z: &Element, precision: u32) -> Result<EmbeddingMatrix> {
    let n = a.rank();
    let f = characteristic_polynomial(&a.regular_matrix(z));
    if !is_squarefree(&f) {
        return Err(Error::DegenerateSplitting);
    }
    let mut powers = Vec::with_capacity(n);
    let mut zp = a.one().clone();
    for _ in 0..n {
        powers.push(zp.clone());
        zp = a.mul(&zp, z);
    }
    let pmat = IntMatrix::from_rows(n, &powers);
    // e_i = sum_j coeff[i][j] z^j
    let coeff = rational_inverse(&pmat).ok_or(Error::DegenerateSplitting)?;
    let guard = coeff.iter().flatten().map(bit_size).max().unwrap_or(0)
        + f.iter().map(|c| c.significant_bits()).max().unwrap_or(0);
    let wp = precision + 64 + guard;
    let roots = polynomial_roots(&f, wp).ok_or(Error::DegenerateSplitting)?;

    let separation = pow2(wp, -((precision / 4) as i32));
    for i in 0..n {
        for j in i + 1..n {
            let d = Complex::with_val(wp, &roots[i] - &roots[j]);
            if abs(&d) <= separation {
                return Err(Error::DegenerateSplitting);
            }
        }
    }

    let mut sigma: Vec<Vec<Complex>> = roots
        .iter()
        .map(|lambda| {
            let mut lp = Vec::with_capacity(n);
            let mut acc = Complex::with_val(wp, 1);
            for _ in 0..n {
                lp.push(acc.clone());
                acc *= lambda;
            }
            coeff
                .iter()
                .map(|row| {
                    let mut s = Complex::new(wp);
                    for (c, l) in row.iter().zip(&lp) {
                        if c.cmp0() != Ordering::Equal {
                            s += Complex::with_val(wp, l * &Float::with_val(wp, c));
                        }
                    }
                    Complex::with_val(precision, &s)
                })
                .collect()
        })
        .collect();
    let order_tol = pow2(precision, -((precision / 4) as i32));
    sigma.sort_by(|x, y| cmp_rows(x, y, &order_tol));

    let residual = homomorphism_defect(a, &sigma, precision);
    let max_sigma = sigma
        .iter()
        .flatten()
        .map(abs)
        .fold(
            Float::with_val(precision, 1),
            |m, v| if v > m { v } else { m },
        );
    let max_table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            a.structure_constants(i, j)
                .iter()
                .fold(Integer::new(), |s, c| s + c.clone().abs())
        })
        .max()
        .unwrap_or_default();
    let scale = Float::with_val(precision, &max_sigma + 1u32).square()
        * (Float::with_val(precision, &max_table) + 1u32);
    let bound = pow2(precision, -((precision / 2) as i32)) * scale;
    if residual > bound {
        return Err(Error::PrecisionExhausted {
            bits: precision,
            cause: format!("embedding residual {residual:.3e} exceeds {bound:.3e}"),
        });
    }
    Ok(EmbeddingMatrix {
        n,
        precision,
        sigma,
        residual,
    })
}

/// Largest `|sigma(e_i) sigma(e_j) - sigma(e_i e_j)|` and `|sigma(1) - 1|`.
pub fn homomorphism_defect(a: &Order, sigma: &[Vec<Complex>], precision: u32) -> Float {
    let n = a.rank();
    let mut worst = Float::new(precision);
    let eval = |row: &[Complex], x: &[Integer]| {
        let mut s = Complex::new(precision);
        for (c, v) in x.iter().zip(row) {
            if !c.is_zero() {
                s += Complex::with_val(precision, v * c);
            }
        }
        s
    };
    for row in sigma {
        let d = eval(row, a.one()) - Complex::with_val(precision, 1);
        worst = worst.max(&abs(&d));
        for i in 0..n {
            for j in i..n {
                let lhs = Complex::with_val(precision, &row[i] * &row[j]);
                let d = lhs - eval(row, a.structure_constants(i, j));
                worst = worst.max(&abs(&d));
            }
        }
    }
    worst
}

/// The `rank(A)` complex embeddings of a reduced order at the configured
/// precision, trying up to `cfg.split_retries` generic elements.
pub fn compute_embeddings(a: &Order, cfg: &Config) -> Result<EmbeddingMatrix> {
    a.require_reduced()?;
    let n = a.rank();
    if n == 0 {
        return Ok(EmbeddingMatrix {
            n,
            precision: cfg.precision,
            sigma: vec![],
            residual: Float::new(cfg.precision),
        });
    }
    for attempt in 0..cfg.split_retries.max(1) {
        let z = generic_element(n, cfg.seed, attempt);
        match split_with(a, &z, cfg.precision) {
            Err(Error::DegenerateSplitting) => continue,
            other => return other,
        }
    }
    Err(Error::DegenerateSplitting)
}

/// Sign of a real quantity relative to the zero tolerance of a Gram form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Width of the ambiguity band above the zero tolerance, in bits.
pub const AMBIGUITY_BAND_BITS: i32 = 16;

/// Real symmetric positive definite Gram matrix with a zero tolerance.
#[derive(Clone, Debug)]
pub struct GramForm {
    n: usize,
    precision: u32,
    entries: Vec<Vec<Float>>,
    approx: Vec<Vec<f64>>,
    tau: Float,
    band: Float,
}

impl GramForm {
    /// Validates symmetry (within tolerance) and positive definiteness (every
    /// leading minor exceeds the tolerance). The tolerance is
    /// `2^-tolerance_bits * max|G_ij|`.
    pub fn new(entries: Vec<Vec<Float>>, precision: u32, tolerance_bits: u32) -> Result<GramForm> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        let entries: Vec<Vec<Float>> = entries
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| Float::with_val(precision, x))
                    .collect()
            })
            .collect();
        let max = entries
            .iter()
            .flatten()
            .map(|x| Float::with_val(precision, x.abs_ref()))
            .fold(Float::new(precision), |m, v| m.max(&v));
        let tau = max * pow2(precision, -(tolerance_bits as i32));
        let band = Float::with_val(precision, &tau * pow2(precision, AMBIGUITY_BAND_BITS));
        for i in 0..n {
            for j in i + 1..n {
                let d = Float::with_val(precision, &entries[i][j] - &entries[j][i]);
                if Float::with_val(precision, d.abs_ref()) > tau {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        let approx = entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64()).collect())
            .collect();
        let g = GramForm {
            n,
            precision,
            entries,
            approx,
            tau,
            band,
        };
        g.check_positive_definite()?;
        Ok(g)
    }

    fn check_positive_definite(&self) -> Result<()> {
        let p = self.precision;
        let n = self.n;
        // LDL^T; leading minor k is the product of the first k pivots
        let mut l = vec![vec![Float::new(p); n]; n];
        let mut d = vec![Float::new(p); n];
        let mut minor = Float::with_val(p, 1);
        for j in 0..n {
            let mut dj = self.entries[j][j].clone();
            for k in 0..j {
                dj -= Float::with_val(p, &l[j][k] * &l[j][k]) * &d[k];
            }
            minor *= &dj;
            if minor <= self.tau || dj <= 0 {
                return Err(Error::NotPositiveDefinite { k: j + 1 });
            }
            d[j] = dj;
            for i in j + 1..n {
                let mut v = self.entries[i][j].clone();
                for k in 0..j {
                    v -= Float::with_val(p, &l[i][k] * &l[j][k]) * &d[k];
                }
                l[i][j] = v / &d[j];
            }
        }
        Ok(())
    }

    pub fn from_integers(m: &IntMatrix, precision: u32, tolerance_bits: u32) -> Result<GramForm> {
        let entries = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| Float::with_val(precision, &m[(i, j)]))
                    .collect()
            })
            .collect();
        GramForm::new(entries, precision, tolerance_bits)
    }

    /// Parses decimal strings such as `"2"`, `"-0.5"` or `"1.2599210498948732"`.
    pub fn from_decimal_strings(
        rows: &[Vec<String>],
        precision: u32,
        tolerance_bits: u32,
    ) -> Result<GramForm> {
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        Float::parse(s.trim())
                            .map(|v| Float::with_val(precision, v))
                            .map_err(|e| Error::Shape(format!("bad Gram entry {s:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GramForm::new(entries, precision, tolerance_bits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn entry(&self, i: usize, j: usize) -> &Float {
        &self.entries[i][j]
    }

    /// `f64` copy of the entries, for fast screening.
    pub fn approx(&self) -> &[Vec<f64>] {
        &self.approx
    }

    pub fn tau(&self) -> &Float {
        &self.tau
    }

    /// Upper edge of the ambiguity band, `2^16 * tau`.
    pub fn band(&self) -> &Float {
        &self.band
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.approx
            .iter()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// `G * x` at full precision.
    pub fn apply(&self, x: &[Integer]) -> Vec<Float> {
        let p = self.precision;
        (0..self.n)
            .map(|i| {
                let mut acc = Float::new(p);
                for (j, c) in x.iter().enumerate() {
                    if !c.is_zero() {
                        acc += Float::with_val(p, &self.entries[i][j] * c);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn inner(&self, x: &[Integer], y: &[Integer]) -> Float {
        let gy = self.apply(y);
        let mut acc = Float::new(self.precision);
        for (c, v) in x.iter().zip(&gy) {
            if !c.is_zero() {
                acc += Float::with_val(self.precision, v * c);
            }
        }
        acc
    }

    pub fn norm(&self, x: &[Integer]) -> Float {
        self.inner(x, x)
    }

    /// Classifies `v` as zero (`|v| <= tau`) or signed (`|v| > 2^16 tau`);
    /// anything in between is [`Error::AmbiguousSign`].
    pub fn classify(&self, v: &Float) -> Result<Sign> {
        let a = Float::with_val(self.precision, v.abs_ref());
        if a <= self.tau {
            Ok(Sign::Zero)
        } else if a > self.band {
            Ok(if v.is_sign_negative() {
                Sign::Negative
            } else {
                Sign::Positive
            })
        } else {
            Err(Error::AmbiguousSign)
        }
    }

    /// Entries as decimal strings, `digits` significant digits each.
    pub fn to_decimal_strings(&self, digits: usize) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| format_decimal(x, digits)).collect())
            .collect()
    }
}

/// Plain decimal rendering of a float with `digits` significant digits.
pub fn format_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits));
    // rug renders as d.ddde[+-]x; expand into positional notation
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits_all = format!("{int_part}{frac_part}");
    let point = int_part.len() as i64 + exp;
    let mut out = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits_all)
    } else if point as usize >= digits_all.len() {
        format!(
            "{}{}",
            digits_all,
            "0".repeat(point as usize - digits_all.len())
        )
    } else {
        format!(
            "{}.{}",
            &digits_all[..point as usize],
            &digits_all[point as usize..]
        )
    };
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    if neg {
        out.insert(0, '-');
    }
    out
}

/// The canonical Gram form `G_ij = Re sum_k sigma_k(e_i) conj(sigma_k(e_j))`
/// with zero tolerance `2^-tolerance_bits * max|G|`.
pub fn gram(e: &EmbeddingMatrix, tolerance_bits: u32) -> Result<GramForm> {
    let p = e.precision;
    let n = e.n;
    let mut entries = vec![vec![Float::new(p); n]; n];
    for row in &e.sigma {
        for i in 0..n {
            for j in 0..n {
                let (ri, ii) = (row[i].real(), row[i].imag());
                let (rj, ij) = (row[j].real(), row[j].imag());
                entries[i][j] += Float::with_val(p, ri * rj) + Float::with_val(p, ii * ij);
            }
        }
    }
    GramForm::new(entries, p, tolerance_bits)
}

/// Embeddings followed by the Gram form, at `cfg.precision`.
pub fn canonical_gram(a: &Order, cfg: &Config) -> Result<GramForm> {
    let e = compute_embeddings(a, cfg)?;
    gram(&e, cfg.tolerance_bits())
}
