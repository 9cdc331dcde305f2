use gradus_core::embeddings::{canonical_gram, compute_embeddings, is_squarefree, Sign};
use gradus_core::grading::{
    find_morphism, push_forward, universal_grading, verify_grading, FinAbGroup, GroupHom,
};
use gradus_core::intlinalg::IntVec;
use gradus_core::lattice::enumerate_up_to;
use gradus_core::order::{group_ring, monogenic_order, product_order, Order};
use gradus_core::units::{idempotents, roots_of_unity};
use gradus_core::Config;
use proptest::prelude::*;
use rug::{Float, Integer};

fn cfg() -> Config {
    Config::default()
}

/// Monic squarefree polynomials of degree 2..=4 with small coefficients.
fn monic_squarefree() -> impl Strategy<Value = IntVec> {
    (2usize..=4)
        .prop_flat_map(|d| prop::collection::vec(-3i64..=3, d))
        .prop_map(|mut c| {
            c.push(1);
            c.into_iter().map(Integer::from).collect::<IntVec>()
        })
        .prop_filter("squarefree", |f| is_squarefree(f))
}

fn quadratic_squarefree() -> impl Strategy<Value = IntVec> {
    (-3i64..=3, -3i64..=3)
        .prop_map(|(c, b)| vec![Integer::from(c), Integer::from(b), Integer::from(1)])
        .prop_filter("squarefree", |f| is_squarefree(f))
}

fn small_reduced_order() -> impl Strategy<Value = Order> {
    prop_oneof![
        monic_squarefree().prop_map(|f| monogenic_order(&f).unwrap()),
        prop::collection::vec(2u64..=4, 1..=2).prop_map(|f| group_ring(&f).unwrap().0),
        (quadratic_squarefree(), 2u64..=3).prop_map(|(f, n)| {
            product_order(&monogenic_order(&f).unwrap(), &group_ring(&[n]).unwrap().0).unwrap()
        }),
    ]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A homomorphism into a cyclic group whose order is a multiple of the
/// exponent of `src`, chosen by `picks`.
fn hom_from_picks(src: &FinAbGroup, scale: u64, picks: &[u64]) -> GroupHom {
    let exponent = src.invariant_factors().last().copied().unwrap_or(1);
    let t = exponent * scale;
    let target = FinAbGroup::new(vec![t]).unwrap();
    let images = src
        .invariant_factors()
        .iter()
        .zip(picks)
        .map(|(&d, &k)| {
            let step = t / gcd(t, d);
            target.reduce(&[Integer::from(k * step)])
        })
        .collect();
    GroupHom::new(src.clone(), target, images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unit_norm_equals_rank(a in small_reduced_order()) {
        let g = canonical_gram(&a, &cfg()).unwrap();
        let d = Float::with_val(g.precision(), g.norm(a.one()) - a.rank() as u32);
        prop_assert_eq!(g.classify(&d).unwrap(), Sign::Zero);
    }

    #[test]
    fn embeddings_are_multiplicative(a in small_reduced_order()) {
        let e = compute_embeddings(&a, &cfg()).unwrap();
        prop_assert_eq!(e.sigma.len(), a.rank());
        let bound = Float::with_val(64, Float::i_exp(1, -80));
        prop_assert!(e.residual < bound);
    }

    #[test]
    fn norm_bounds_number_of_nonvanishing_embeddings(a in small_reduced_order()) {
        let c = cfg();
        let e = compute_embeddings(&a, &c).unwrap();
        let g = canonical_gram(&a, &c).unwrap();
        let bound = Float::with_val(c.precision, 2 * a.rank() as u32);
        for v in enumerate_up_to(&g, &bound, 20_000).unwrap().into_iter().take(200) {
            let support = e.evaluate(&v).iter().filter(|s| Float::with_val(c.precision, s.abs_ref()) > *g.tau()).count();
            let slack = Float::with_val(c.precision, g.norm(&v) - support as u32) + g.tau();
            prop_assert!(slack >= 0);
        }
    }

    #[test]
    fn universal_grading_invariants(a in small_reduced_order()) {
        let u = universal_grading(&a, &cfg()).unwrap();
        prop_assert!(verify_grading(&a, &u.grading).passed());
        prop_assert!(u.group().generated_by(&u.grading.support()));
        prop_assert!(gradus_core::grading::pieces_orthogonal(&u.grading, &u.decomposition.gram).unwrap());
        let components = u.decomposition.len();
        let idem = idempotents(&a, &cfg()).unwrap().len();
        // 2^(number of connected components) idempotents
        let connected_components = idem.trailing_zeros() as usize;
        prop_assert!(components <= a.rank());
        prop_assert!(components >= connected_components);
    }

    #[test]
    fn push_forward_roundtrips(a in small_reduced_order(), scale in 1u64..=3, picks in prop::collection::vec(0u64..12, 4)) {
        let u = universal_grading(&a, &cfg()).unwrap();
        let f = hom_from_picks(u.group(), scale, &picks);
        let c = push_forward(&u.grading, &f).unwrap();
        prop_assert!(verify_grading(&a, &c).passed());
        prop_assert_eq!(find_morphism(&u, &c).unwrap(), f);
    }

    #[test]
    fn roots_of_unity_form_a_group(a in small_reduced_order()) {
        let r = roots_of_unity(&a, &cfg()).unwrap();
        prop_assert!(r.closed);
        prop_assert_eq!(r.count % 2, 0);
        prop_assert!(r.roots.contains(a.one()));
        for x in &r.roots {
            let inverse_present = r.roots.iter().any(|y| a.mul(x, y) == *a.one());
            prop_assert!(inverse_present);
        }
    }
}
