use knot_witt::fixtures::printed;
use knot_witt::unknotting::{
    crossing_change_image, lickorish_solvable, lickorish_witness, signature_lower_bound,
    u1_obstruction, u2_matches, u2_row_has_choice, u2_target_forms, CrossingContext, CrossingSign,
    Direction, LensSurgeryDescription, SignChoice, U2Case,
};
use knot_witt::witt::DiagonalForm;
use num_integer::Integer;
use proptest::prelude::*;

fn odd_det() -> impl Strategy<Value = u64> {
    (0u64..200).prop_map(|k| 2 * k + 1)
}

fn small_form() -> impl Strategy<Value = DiagonalForm> {
    prop::collection::vec((-30i64..=30).prop_filter("nonzero", |x| *x != 0), 0..6)
        .prop_map(|v| DiagonalForm::from_integers(v).unwrap())
}

fn context() -> impl Strategy<Value = CrossingContext> {
    (odd_det(), odd_det(), -4i64..=4, any::<bool>()).prop_map(|(dm, dp, s, drop)| {
        let sm = 2 * (s / 2);
        let sp = if drop { sm - 2 } else { sm };
        CrossingContext::new(dm, dp, sm, sp).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn crossing_change_round_trip(phi in small_form(), ctx in context()) {
        let plus = crossing_change_image(&phi, &ctx, Direction::ToPlus);
        let back = crossing_change_image(&plus, &ctx, Direction::ToMinus);
        prop_assert!(back.is_equal(&phi));
        prop_assert_eq!(plus.signature() - phi.signature(), ctx.sig_plus() - ctx.sig_minus());
    }

    #[test]
    fn one_change_from_the_unknot_is_consistent(d in odd_det(), drop in any::<bool>()) {
        // K₋ = unknot, K₊ = K: undoing K needs a negative change.
        let s = if drop { -2 } else { 0 };
        let ctx = CrossingContext::new(1, d, 0, s).unwrap();
        let phi = crossing_change_image(&DiagonalForm::zero(), &ctx, Direction::ToPlus);
        let verdict = u1_obstruction(&phi, d, s).unwrap();
        prop_assert!(!verdict.outcome(CrossingSign::Negative).is_excluded());

        // K₋ = K, K₊ = unknot: undoing K needs a positive change.
        let s = if drop { 2 } else { 0 };
        let ctx = CrossingContext::new(d, 1, s, 0).unwrap();
        let phi = crossing_change_image(&DiagonalForm::zero(), &ctx, Direction::ToMinus);
        let verdict = u1_obstruction(&phi, d, s).unwrap();
        prop_assert!(!verdict.outcome(CrossingSign::Positive).is_excluded());
        prop_assert!(!verdict.is_obstructed());
    }

    #[test]
    fn verdict_ignores_odd_square_factors(phi in small_form(), d in odd_det(), m in 0u64..20, s in -2i64..=2) {
        let sigma = 2 * (s / 2).clamp(-1, 1);
        let m = 2 * m + 1;
        let a = u1_obstruction(&phi, d, sigma).unwrap();
        let b = u1_obstruction(&phi, d * m * m, sigma).unwrap();
        prop_assert_eq!(a.is_obstructed(), b.is_obstructed());
        prop_assert_eq!(a.category(), b.category());
    }

    #[test]
    fn mirror_swaps_crossing_signs(phi in small_form(), d in odd_det(), s in -1i64..=1) {
        let sigma = 2 * s;
        let a = u1_obstruction(&phi, d, sigma).unwrap();
        let b = u1_obstruction(&phi.negate(), d, -sigma).unwrap();
        prop_assert_eq!(
            a.outcome(CrossingSign::Positive).is_excluded(),
            b.outcome(CrossingSign::Negative).is_excluded()
        );
        prop_assert_eq!(a.is_obstructed(), b.is_obstructed());
    }

    #[test]
    fn every_target_row_is_recognised(dk in odd_det(), dl in odd_det(), which in 0usize..3, sk in -2i64..=0, minus in any::<bool>()) {
        let case = U2Case::ALL[which];
        let sigma = 2 * sk;
        let Some(has_choice) = u2_row_has_choice(case, sigma) else { return Ok(()); };
        let signs = if minus { SignChoice::MinusPlus } else { SignChoice::PlusMinus };
        let target = u2_target_forms(dk, dl, sigma, case, signs).unwrap();
        prop_assert_eq!(target.signature(), sigma);
        let found = u2_matches(&target, dk, sigma, dl).unwrap();
        prop_assert!(found.iter().any(|m| m.case == case && (!has_choice || m.signs == Some(signs))));
        if sigma == 0 {
            return Ok(());
        }
        // For σ < 0 the mirror sees the same rows with every σ(L) negated.
        let mirrored = u2_matches(&target.negate(), dk, -sigma, dl).unwrap();
        prop_assert_eq!(mirrored.len(), found.len());
        for (a, b) in found.iter().zip(&mirrored) {
            let neg: Vec<i64> = a.sigma_l.iter().map(|s| -s).collect();
            prop_assert_eq!(&b.sigma_l, &neg);
        }
    }
}

fn brute_lickorish(q: i64, det: u64) -> bool {
    let m = det as i64;
    (0..m).any(|t| {
        let v = (2 * t * t).rem_euclid(m);
        v == q.rem_euclid(m) || v == (-q).rem_euclid(m)
    })
}

#[test]
fn lickorish_matches_brute_force() {
    for det in (3..500u64).step_by(2) {
        for q in 1..det as i64 {
            if q.gcd(&(det as i64)) != 1 {
                continue;
            }
            let expected = brute_lickorish(q, det);
            let lens = LensSurgeryDescription::new(det as i64, q).unwrap();
            assert_eq!(lickorish_solvable(&lens, det).unwrap(), expected, "L({det},{q})");
            assert_eq!(lickorish_witness(-q, det).is_some(), expected, "q ↔ −q at {det}");
            if let Some(t) = lickorish_witness(q, det) {
                let v = (2 * t * t) as i64 % det as i64;
                assert!(v == q || v == det as i64 - q, "witness {t} for L({det},{q})");
            }
        }
    }
}

#[test]
fn lickorish_rejects_mismatched_lens() {
    let lens = LensSurgeryDescription::new(15, 4).unwrap();
    assert!(lickorish_solvable(&lens, 21).is_err());
    assert!(LensSurgeryDescription::new(15, 5).is_err());
}

#[test]
fn ten_forty_seven_range_filter() {
    let phi = printed::m10_47();
    let odd: Vec<u64> = (1..=75).step_by(2).collect();
    let got = knot_witt::unknotting::u2_candidate_filter(&phi, 41, -4, &odd).unwrap();
    assert_eq!(got, [3, 7, 11, 15, 19, 27, 35, 47, 55, 63, 67, 71, 75]);
    assert_eq!(signature_lower_bound(phi.signature()).unwrap(), 2);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(CrossingContext::new(4, 1, 0, 0).is_err());
    assert!(CrossingContext::new(3, 1, 0, 2).is_err());
    assert!(CrossingContext::new(3, 1, 1, 1).is_err());
    assert!(u1_obstruction(&DiagonalForm::zero(), 2, 0).is_err());
    assert!(signature_lower_bound(3).is_err());
}
