use std::sync::Arc;

use gradus_core::embeddings::{canonical_gram, Sign};
use gradus_core::fixtures::{eisenstein_kummer, example, parity_coordinates, parity_ring};
use gradus_core::grading::{
    group_ring_with_grading, homogeneous_parts, is_homogeneous_sublattice, pieces_orthogonal,
    universal_grading, verify_grading,
};
use gradus_core::intlinalg::{int_vec, IntVec, SublatticeBasis};
use gradus_core::lattice::universal_s_decomposition;
use gradus_core::order::{group_ring, quotient_order};
use gradus_core::units::{idempotents, is_connected, roots_of_unity};
use gradus_core::Config;
use rug::Float;

fn cfg() -> Config {
    Config::default()
}

fn span(n: usize, rows: &[&[i64]]) -> SublatticeBasis {
    let gens: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
    SublatticeBasis::from_generators(n, &gens)
}

#[test]
fn eisenstein_kummer_grading_is_cyclic_of_order_three() {
    let a = eisenstein_kummer().unwrap();
    let u = universal_grading(&a, &cfg()).unwrap();
    assert_eq!(u.group().invariant_factors(), &[3]);
    let mut pieces: Vec<SublatticeBasis> = u.grading.pieces.values().cloned().collect();
    pieces.sort_by_key(|p| p.min_vector());
    // span{c^j, zeta c^j} for j = 0, 1, 2 (basis index 3a + b)
    let mut expected = vec![
        span(6, &[&[1, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0]]),
        span(6, &[&[0, 1, 0, 0, 0, 0], &[0, 0, 0, 0, 1, 0]]),
        span(6, &[&[0, 0, 1, 0, 0, 0], &[0, 0, 0, 0, 0, 1]]),
    ];
    expected.sort_by_key(|p| p.min_vector());
    assert_eq!(pieces, expected);
    assert_eq!(
        u.grading.identity_piece(),
        Some(
            &expected
                .iter()
                .find(|p| p.contains(a.one()))
                .unwrap()
                .clone()
        )
    );
}

#[test]
fn group_ring_gram_and_grading() {
    for factors in [&[6u64][..], &[2, 2], &[4]] {
        let (a, natural) = group_ring_with_grading(factors).unwrap();
        let u = universal_grading(&a, &cfg()).unwrap();
        assert_eq!(u.group(), &natural.group);
        assert!(verify_grading(&a, &u.grading).passed());
        assert!(pieces_orthogonal(&u.grading, &u.decomposition.gram).unwrap());
    }
}

#[test]
fn cyclotomic_quotient_form_is_sum_of_squared_differences() {
    let (zc5, _) = group_ring(&[5]).unwrap();
    let q = quotient_order(&zc5, &[int_vec(&[1, 1, 1, 1, 1])]).unwrap();
    let g = canonical_gram(&q.order, &cfg()).unwrap();
    for x in [
        [1i64, 0, 0, 0, 0],
        [2, -1, 0, 3, 1],
        [0, 1, 1, 0, 0],
        [5, 4, 3, 2, 1],
    ] {
        let xv = int_vec(&x);
        let expected: i64 = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (x[i] - x[j]).pow(2))
            .sum();
        let d = Float::with_val(192, g.norm(&q.project(&xv)) - expected);
        assert_eq!(g.classify(&d).unwrap(), Sign::Zero, "{x:?}");
    }
}

#[test]
fn parity_ring_is_connected_with_a_short_vector() {
    let a = parity_ring(5).unwrap();
    assert!(is_connected(&a, &cfg()).unwrap());
    assert_eq!(idempotents(&a, &cfg()).unwrap().len(), 2);
    let g = canonical_gram(&a, &cfg()).unwrap();
    let x = parity_coordinates(&[2, 0, 0, 0, 0]).unwrap();
    let d = Float::with_val(192, g.norm(&x) - 4u32);
    assert_eq!(g.classify(&d).unwrap(), Sign::Zero);
}

#[test]
fn homogeneity_on_graded_fixtures() {
    for name in [
        "zc2",
        "zc3",
        "zc4",
        "zc2x2",
        "zc6",
        "zsqrt2",
        "zsqrt-1",
        "zsqrt5",
        "zphi",
        "eisenstein-kummer",
    ] {
        let a = example(name).unwrap();
        let u = universal_grading(&a, &cfg()).unwrap();
        let b1 = u.grading.identity_piece().unwrap().clone();
        for e in idempotents(&a, &cfg()).unwrap() {
            assert!(
                b1.contains(&e),
                "{name}: idempotent outside the identity piece"
            );
        }
        // the identity piece is connected in all of these
        for z in roots_of_unity(&a, &cfg()).unwrap().roots {
            assert_eq!(
                homogeneous_parts(&u.grading, &z).unwrap().len(),
                1,
                "{name}"
            );
        }
        assert!(is_homogeneous_sublattice(&u.grading, &a.nilradical()).unwrap());
    }
}

#[test]
fn decomposition_of_a_product_splits_into_factors() {
    let a = example("zxz").unwrap();
    let g = Arc::new(canonical_gram(&a, &cfg()).unwrap());
    let d = universal_s_decomposition(g, 1000).unwrap();
    assert_eq!(d.len(), 2);
    assert!(!is_connected(&a, &cfg()).unwrap());
    assert!(d.components.iter().all(|c| c.rank() == 1));
    // both factors are idempotent, so every degree is forced to be trivial
    let u = universal_grading(&a, &cfg()).unwrap();
    assert_eq!(u.group().order(), 1);
    assert_eq!(u.grading.pieces.len(), 1);
}
