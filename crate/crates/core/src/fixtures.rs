//! Named example orders.

use rug::Integer;

use crate::error::{Error, Result};
use crate::intlinalg::{int_vec, IntVec};
use crate::order::{group_ring, integers, monogenic_order, product_order, quotient_order, Order};

/// `Z[X]/(X^2 - d)`.
pub fn quadratic(d: i64) -> Result<Order> {
    monogenic_order(&int_vec(&[-d, 0, 1]))
}

/// `Z[(1 + sqrt 5)/2] = Z[X]/(X^2 - X - 1)`.
pub fn golden() -> Result<Order> {
    monogenic_order(&int_vec(&[-1, -1, 1]))
}

/// Dual numbers `Z[X]/(X^2)`.
pub fn dual_numbers() -> Result<Order> {
    monogenic_order(&int_vec(&[0, 0, 1]))
}

/// `Z[C_p] / (sum of the group elements)`, a ring of cyclotomic integers.
pub fn cyclotomic_quotient(p: u64) -> Result<Order> {
    let (a, _) = group_ring(&[p])?;
    let norm = vec![Integer::from(1); a.rank()];
    Ok(quotient_order(&a, &[norm])?.order)
}

/// Vectors of `Z^n` whose coordinates all have the same parity, in the
/// basis `(1, ..., 1), 2e_1, ..., 2e_(n-1)`.
pub fn parity_ring(n: usize) -> Result<Order> {
    if n == 0 {
        return Err(Error::Shape("parity ring needs at least one factor".into()));
    }
    let mut table = vec![vec![vec![Integer::new(); n]; n]; n];
    for i in 0..n {
        table[0][i][i] = Integer::from(1);
        table[i][0][i] = Integer::from(1);
    }
    for i in 1..n {
        table[i][i][i] = Integer::from(2);
    }
    let mut labels = vec!["(1..1)".to_string()];
    labels.extend((1..n).map(|i| format!("2e{i}")));
    Order::new(table, {
        let mut one = vec![Integer::new(); n];
        one[0] = Integer::from(1);
        one
    })?
    .with_labels(labels)
}

/// Coordinates in [`parity_ring`] of a vector of `Z^n`, if it lies there.
pub fn parity_coordinates(ambient: &[i64]) -> Option<IntVec> {
    let first = *ambient.first()?;
    let mut out = vec![Integer::from(first)];
    for &x in &ambient[1..] {
        let d = x - first;
        if d % 2 != 0 {
            return None;
        }
        out.push(Integer::from(d / 2));
    }
    Some(out)
}

/// `Z[zeta_3, cbrt 2]` in the basis `zeta^a c^b` (index `3a + b`, `a < 2`,
/// `b < 3`) with `zeta^2 = -1 - zeta` and `c^3 = 2`.
pub fn eisenstein_kummer() -> Result<Order> {
    let n = 6;
    let mut table = vec![vec![vec![Integer::new(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (i / 3 + j / 3, i % 3 + j % 3);
            let (b, scale) = if b >= 3 { (b - 3, 2) } else { (b, 1) };
            // zeta^a with a in 0..=2, reduced by zeta^2 = -1 - zeta
            let zeta_part: &[(usize, i64)] = match a {
                0 => &[(0, 1)],
                1 => &[(1, 1)],
                _ => &[(0, -1), (1, -1)],
            };
            for &(za, c) in zeta_part {
                table[i][j][3 * za + b] += c * scale;
            }
        }
    }
    let labels = ["1", "c", "c^2", "z", "zc", "zc^2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut one = vec![Integer::new(); n];
    one[0] = Integer::from(1);
    Order::new(table, one)?.with_labels(labels)
}

pub const EXAMPLE_NAMES: &[&str] = &[
    "z",
    "zc<n>",
    "zc<n>x<m>...",
    "zsqrt<d>",
    "zphi",
    "zeta5",
    "zeta<p>",
    "parity5",
    "parity<n>",
    "eisenstein-kummer",
    "zeps",
    "zxz",
];

/// Builds a named example order.
pub fn example(name: &str) -> Result<Order> {
    let bad = || {
        Error::Shape(format!(
            "unknown example {name:?}; known: {}",
            EXAMPLE_NAMES.join(", ")
        ))
    };
    match name {
        "z" => Ok(integers()),
        "zphi" => golden(),
        "zeps" => dual_numbers(),
        "zxz" => product_order(&integers(), &integers()),
        "eisenstein-kummer" => eisenstein_kummer(),
        _ => {
            if let Some(rest) = name.strip_prefix("zsqrt") {
                let d: i64 = rest.parse().map_err(|_| bad())?;
                quadratic(d)
            } else if let Some(rest) = name.strip_prefix("zeta") {
                let p: u64 = rest.parse().map_err(|_| bad())?;
                if p < 2 {
                    return Err(bad());
                }
                cyclotomic_quotient(p)
            } else if let Some(rest) = name.strip_prefix("parity") {
                parity_ring(rest.parse().map_err(|_| bad())?)
            } else if let Some(rest) = name.strip_prefix("zc") {
                let factors: Vec<u64> = rest
                    .split('x')
                    .map(|f| f.trim_start_matches('c').parse::<u64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad())?;
                Ok(group_ring(&factors)?.0)
            } else {
                Err(bad())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_ring_matches_ambient_arithmetic() {
        let a = parity_ring(5).unwrap();
        assert!(a.is_reduced());
        let x = parity_coordinates(&[3, 1, 5, -1, 3]).unwrap();
        let y = parity_coordinates(&[2, 0, 4, 6, -2]).unwrap();
        let prod = parity_coordinates(&[6, 0, 20, -6, -6]).unwrap();
        assert_eq!(a.mul(&x, &y), prod);
        assert_eq!(
            parity_coordinates(&[2, 0, 0, 0, 0]).unwrap(),
            int_vec(&[2, -1, -1, -1, -1])
        );
        assert!(parity_coordinates(&[1, 0, 0, 0, 0]).is_none());
    }

    #[test]
    fn eisenstein_kummer_relations() {
        let a = eisenstein_kummer().unwrap();
        let z = a.basis_element(3);
        let c = a.basis_element(1);
        // 1 + zeta + zeta^2 = 0 and c^3 = 2
        let s: IntVec = (0..6)
            .map(|k| Integer::from(&a.one()[k] + &z[k]) + &a.mul(&z, &z)[k])
            .collect();
        assert!(s.iter().all(|x| x.is_zero()));
        assert_eq!(a.pow(&c, 3), int_vec(&[2, 0, 0, 0, 0, 0]));
        assert!(a.is_reduced());
    }

    #[test]
    fn example_names_resolve() {
        for name in [
            "z",
            "zc4",
            "zc2x2",
            "zc2xc2",
            "zsqrt-1",
            "zsqrt5",
            "zphi",
            "zeta5",
            "parity5",
            "eisenstein-kummer",
            "zeps",
            "zxz",
        ] {
            assert!(example(name).is_ok(), "{name}");
        }
        assert_eq!(example("zc2x2").unwrap().rank(), 4);
        assert_eq!(example("zeta5").unwrap().rank(), 4);
        assert!(example("nonsense").is_err());
        assert!(example("zeta1").is_err());
    }
}
