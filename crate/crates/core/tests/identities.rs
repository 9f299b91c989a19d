//! Cross-module identities through the public API, on random rational
//! Satake parameters and random graded representations.

use extsq_core::galois::{
    build_matrices, divisibility_check, ext_sq, random_rep, standard_satake, wedge_of_invariant_kernel_lfactor,
    RandomRepBounds,
};
use extsq_core::integrals::{
    bf_candidate, bf_even_closed_form, bf_odd_correction_probe, bf_series, js_even_series, js_odd_series,
};
use extsq_core::lfactors::{ext_sq_expansion, formal_ext_sq_l, formal_ext_sq_series, formal_l_via_full_expansion};
use extsq_core::{Entry, SatakeParams, Scalar};
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn entries(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Entry>> {
    prop::collection::vec(rational().prop_map(Entry::Scalar), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formal_factor_is_symmetric(e in entries(2..=5), seed in any::<u64>()) {
        let p = SatakeParams::from_entries(&e);
        let mut perm: Vec<usize> = (0..e.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        prop_assert_eq!(formal_ext_sq_l(&p), formal_ext_sq_l(&p.permuted(&perm)));
    }

    #[test]
    fn littlewood_with_zeros(e in entries(1..=5)) {
        let p = SatakeParams::from_entries(&e);
        let k = p.nonzero_count();
        let exp = ext_sq_expansion(&p, k, 5).unwrap();
        prop_assert_eq!(exp, formal_ext_sq_series(&p, 5));
    }

    #[test]
    fn full_rank_expansion_when_claimed(e in entries(1..=5)) {
        let p = SatakeParams::from_entries(&e);
        let full = formal_l_via_full_expansion(&p, 4).unwrap();
        if full.hypothesis_met {
            prop_assert_eq!(full.series, formal_ext_sq_series(&p, 4));
        }
    }

    #[test]
    fn js_odd_numeric(e in entries(3..=3)) {
        let p = SatakeParams::from_entries(&e);
        prop_assert_eq!(js_odd_series(&p, 5).unwrap(), formal_ext_sq_series(&p, 5));
    }

    #[test]
    fn js_even_numeric_at_positive_conductor(mut e in entries(4..=4), slot in 0usize..4) {
        e[slot] = Entry::zero();
        let p = SatakeParams::from_entries(&e);
        let js = js_even_series(&p, 5).unwrap();
        prop_assert!(js.hypothesis_met);
        prop_assert_eq!(js.series, formal_ext_sq_series(&p, 5));
    }

    #[test]
    fn bf_even_numeric(e in entries(4..=4)) {
        let p = SatakeParams::from_entries(&e);
        prop_assert_eq!(bf_series(&p, (3, 3)).unwrap(), bf_even_closed_form(&p, (3, 3)).unwrap());
    }

    #[test]
    fn bf_odd_numeric_at_positive_conductor(mut e in entries(3..=3), slot in 0usize..3) {
        e[slot] = Entry::zero();
        let p = SatakeParams::from_entries(&e);
        prop_assert_eq!(bf_series(&p, (3, 3)).unwrap(), bf_candidate(&p, (3, 3)));
        let probe = bf_odd_correction_probe(&p, (3, 3)).unwrap();
        prop_assert_eq!(probe.holds, Some(true));
    }
}

#[test]
fn random_reps_satisfy_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bounds = RandomRepBounds::default();
    for _ in 0..200 {
        let rep = random_rep(&mut rng, &bounds);
        let q_inv = Scalar::one() / rep.q();
        assert!(build_matrices(&rep).satisfies_relation(&q_inv), "{rep}");
        assert!(ext_sq(&rep).matrices.satisfies_relation(&q_inv), "{rep}");
        assert_eq!(
            formal_ext_sq_l(&standard_satake(&rep)),
            wedge_of_invariant_kernel_lfactor(&rep),
            "{rep}"
        );
        let d = divisibility_check(&rep);
        assert!(d.divides, "{rep}");
        // Extra factors come from ∧² of a Steinberg block whose doubled grade
        // is unramified, or from a ramified pair with unramified product.
        let g = rep.group();
        let b = rep.blocks();
        let steinberg = b.iter().any(|x| x.length >= 2 && g.add(&x.grade, &x.grade).is_zero());
        let ramified_pair = (0..b.len()).any(|i| {
            (i + 1..b.len())
                .any(|j| !b[i].grade.is_zero() && !b[j].grade.is_zero() && g.add(&b[i].grade, &b[j].grade).is_zero())
        });
        assert_eq!(d.strict, steinberg || ramified_pair, "{rep}");
    }
}
