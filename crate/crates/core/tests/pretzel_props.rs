use knot_witt::pretzel::{
    pretzel3_class, pretzel4_class, pretzel_class, telescope_simplify, telescope_sum, PretzelParams,
};
use knot_witt::seifert::SymmetricRationalMatrix;
use knot_witt::witt::{DiagonalForm, LocalClass};
use num_bigint::BigInt;
use proptest::prelude::*;

// Goeritz matrix of the checkerboard surface: the cycle Laplacian with
// strand weights, one region deleted.
fn goeritz(strands: &[i64]) -> SymmetricRationalMatrix {
    let n = strands.len();
    let mut g = vec![vec![0i64; n - 1]; n - 1];
    // Region i sits between strands i and i + 1; region n − 1 is deleted.
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = strands[i] + strands[i + 1];
    }
    for i in 0..n - 2 {
        g[i][i + 1] = -strands[i + 1];
        g[i + 1][i] = -strands[i + 1];
    }
    SymmetricRationalMatrix::from_integer_rows(&g).unwrap()
}

fn odd_primes_dividing(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 3;
    while d.is_multiple_of(2) && d > 0 {
        d /= 2;
    }
    while p * p <= d {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 2;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

fn odd_boundaries(form: &DiagonalForm, primes: &[u64]) -> Vec<LocalClass> {
    primes.iter().map(|&p| form.boundary(p).unwrap()).collect()
}

// Brieskorn lattice count: −#{i/p + j/q ∈ (1/2, 3/2)} + #{outside}.
fn torus_signature(p: i64, q: i64) -> i64 {
    let mut s = 0;
    for i in 1..p {
        for j in 1..q {
            let x = 2 * (i * q + j * p);
            if x > p * q && x < 3 * p * q {
                s -= 1;
            } else {
                s += 1;
            }
        }
    }
    s
}

fn odd_nonzero() -> impl Strategy<Value = i64> {
    (-5i64..=4).prop_map(|k| 2 * k + 1)
}

fn even_nonzero() -> impl Strategy<Value = i64> {
    (1i64..=5, any::<bool>()).prop_map(|(k, neg)| if neg { -2 * k } else { 2 * k })
}

#[test]
fn telescope_identity() {
    for n in 2..=50 {
        for eps in [1, -1] {
            let sum = telescope_sum(n, eps).unwrap();
            let closed = telescope_simplify(n, eps).unwrap();
            assert!(sum.is_equal(&closed), "n = {n}, ε = {eps}");
        }
    }
    assert!(telescope_sum(1, 1).is_err());
}

#[test]
fn three_term_identity() {
    for p1 in (7..=99).step_by(2) {
        let p2 = 4 - p1;
        let form = DiagonalForm::from_integers([p1, p2, -p1 * p2]).unwrap();
        assert!(form.is_equal(&DiagonalForm::from_integers([1]).unwrap()), "p1 = {p1}");
    }
}

#[test]
fn torus_knots_match_lattice_count() {
    for (strands, (p, q)) in [([-2, 3, 1], (2, 5)), ([-2, 3, 3], (3, 4)), ([-2, 3, 5], (3, 5))] {
        let class = pretzel3_class(strands[0], strands[1], strands[2]).unwrap();
        // T(p, q) with q even has determinant p, and 1 when both are odd.
        let torus_det = if p % 2 == 0 { q } else if q % 2 == 0 { p } else { 1 };
        assert_eq!(class.det().unwrap(), torus_det as u64, "{strands:?}");
        assert_eq!(class.signature, torus_signature(p, q), "{strands:?}");
    }
    assert_eq!(torus_signature(2, 3), -2);
}

#[test]
fn three_strand_signature_is_form_signature() {
    for a in (-9i64..=9).filter(|x| x % 2 != 0) {
        for b in (-9i64..=9).filter(|x| x % 2 != 0) {
            for c in (-8i64..=8).filter(|x| x % 2 == 0 && *x != 0) {
                let Ok(class) = pretzel3_class(a, b, c) else {
                    continue;
                };
                assert_eq!(class.signature, class.form.signature(), "P({a},{b},{c})");
                assert_eq!(class.signed_det, BigInt::from(a * b + b * c + c * a));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn three_strand_matches_goeritz(a in odd_nonzero(), b in odd_nonzero(), c in even_nonzero(), rot in 0usize..3) {
        let mut s = vec![a, b, c];
        s.rotate_left(rot);
        let class = pretzel3_class(s[0], s[1], s[2]).unwrap();
        let det = class.signed_det.clone();
        prop_assume!(det != BigInt::from(0));
        let g = goeritz(&s);
        prop_assert_eq!(g.determinant().numer().clone(), det.clone());
        let gform = g.diagonalize().unwrap().form;
        let primes = odd_primes_dividing(class.det().unwrap());
        prop_assert_eq!(odd_boundaries(&class.form, &primes), odd_boundaries(&gform, &primes));
        prop_assert_eq!(class.signature, class.form.signature());
    }

    #[test]
    fn four_strand_matches_goeritz(
        odd in prop::collection::vec(odd_nonzero(), 3),
        e in even_nonzero(),
        pos in 0usize..4,
    ) {
        let mut s = odd.clone();
        s.insert(pos, e);
        let Ok(class) = pretzel4_class(s[0], s[1], s[2], s[3]) else { return Ok(()); };
        let g = goeritz(&s);
        prop_assert_eq!(g.determinant().numer().clone(), class.signed_det.clone());
        let gform = g.diagonalize().unwrap().form;
        let primes = odd_primes_dividing(class.det().unwrap());
        prop_assert_eq!(odd_boundaries(&class.form, &primes), odd_boundaries(&gform, &primes));
        prop_assert_eq!(class.signature, class.form.signature());
    }

    #[test]
    fn stabilization_transfers(a in odd_nonzero(), b in odd_nonzero(), c in even_nonzero(), p in odd_nonzero(), i in 0usize..4, j in 0usize..5) {
        let base = PretzelParams::new(vec![a, b, c]).unwrap();
        prop_assume!(base.signed_determinant() != BigInt::from(0));
        let (first, second) = if i < j { (i, j) } else { (j, i + 1) };
        let up = base.upward_stabilize(p, first, second.min(base.len() + 1)).unwrap();
        let lo = pretzel_class(&base).unwrap();
        let hi = pretzel_class(&up).unwrap();
        prop_assert!(hi.form.is_equal(&lo.form));
        prop_assert_eq!(hi.signature, lo.signature);
        prop_assert_eq!(hi.signed_det, lo.signed_det * BigInt::from(-p * p));
    }

    #[test]
    fn cancelling_pair_is_invisible(a in odd_nonzero(), c in even_nonzero(), q in odd_nonzero(), r in odd_nonzero()) {
        let x = pretzel4_class(a, q, -q, c);
        let y = pretzel4_class(a, r, -r, c);
        if let (Ok(x), Ok(y)) = (x, y) {
            prop_assert!(x.form.is_equal(&y.form));
            prop_assert_eq!(x.signature, y.signature);
        }
    }
}

#[test]
fn corrected_family_one_form() {
    for p1 in (7..=31).step_by(2) {
        for p3 in (2..=40).step_by(2) {
            let d = 4 * p3 - p1 * (p1 - 4);
            if d == 0 {
                continue;
            }
            let class = pretzel3_class(p1, 4 - p1, p3).unwrap();
            assert_eq!(class.signed_det, BigInt::from(d));
            let corrected = DiagonalForm::from_integers([d, -1, -1, -1]).unwrap();
            assert!(class.form.is_equal(&corrected), "P({p1}, {}, {p3})", 4 - p1);
            let printed = DiagonalForm::from_integers([d, -1, -1, -1, -1, -1, -1]).unwrap();
            assert!(!class.form.is_equal(&printed));
        }
    }
}
