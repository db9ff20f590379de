use hyperlines::catalog::{CUBIC_SMOOTH, EXAMPLE41};
use hyperlines::exactcore::{parse_polynomial, print_polynomial, ExactMatrix, Mono, MultiPoly, Scalar, UniPoly};
use hyperlines::geometry::{plucker_from_span, ProjPoint};
use hyperlines::probes::{classify, CaseLabel, ComponentsHint, ProbeReport};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, b, c, d)| {
        &Scalar::from_ratio(a, b) + &(&Scalar::i() * &Scalar::from_ratio(c, d))
    })
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn form(degree: u32) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0u32..=degree, 4), scalar()), 1..8).prop_map(move |terms| {
        let mut f = MultiPoly::zero(5);
        for (e, c) in terms {
            // Fill x0 so that the monomial has the requested degree.
            let mut exps = vec![0u32; 5];
            let mut left = degree;
            for (k, v) in e.into_iter().enumerate() {
                let take = v.min(left);
                exps[k + 1] = take;
                left -= take;
            }
            exps[0] = left;
            f.add_term(Mono::from_exps(&exps), &c);
        }
        f
    })
}

fn point() -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(-5i64..=5, 5)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| v.into_iter().map(Scalar::from_int).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in nonzero_scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &c) * &c.inv().unwrap(), a.clone());
        prop_assert_eq!(Scalar::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn parse_print_round_trip(f in form(3)) {
        let text = print_polynomial(&f);
        prop_assert_eq!(parse_polynomial(&text).unwrap(), f);
    }

    #[test]
    fn linear_change_is_invertible(f in form(2), d in proptest::collection::vec(1i64..4, 5), k in -3i64..=3) {
        let mut rows: Vec<Vec<i64>> = (0..5).map(|i| (0..5).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        rows[0][4] = k;
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let a = ExactMatrix::from_ints(&refs);
        let g = f.linear_change(&a).unwrap();
        prop_assert_eq!(g.linear_change(&a.inverse().unwrap()).unwrap(), f);
    }

    #[test]
    fn plucker_relations_vanish(a in point(), b in point()) {
        let (pa, pb) = (ProjPoint::new(a).unwrap(), ProjPoint::new(b).unwrap());
        prop_assume!(!pa.proportional(&pb));
        let l = plucker_from_span(&pa, &pb).unwrap();
        prop_assert!(l.grassmann_relations().iter().all(|r| r.is_zero()));
        prop_assert!(l.contains(&pa) && l.contains(&pb));
        prop_assert!(l.same_line(&plucker_from_span(&pb, &pa).unwrap()));
    }

    #[test]
    fn gcd_recovers_common_factor(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9) {
        prop_assume!(b != c && a != b && a != c);
        let lin = |r: i64| UniPoly::<Scalar>::from_ints(&[-r, 1]);
        let f = lin(a).mul(&lin(b));
        let g = lin(a).mul(&lin(c));
        prop_assert_eq!(UniPoly::gcd(&f, &g), lin(a));
    }

    #[test]
    fn classification_is_total(n in 3u32..9, mu in proptest::option::of(0usize..8), comp in proptest::option::of(1usize..5)) {
        let mut r = ProbeReport::new(n, 0);
        r.mu = mu;
        r.components_hint = comp.map_or(ComponentsHint::Unknown, ComponentsHint::Known);
        let c = classify(&r);
        match c.case {
            CaseLabel::Case(k) => prop_assert!((1..=5).contains(&k) && c.failed.is_empty()),
            CaseLabel::Unclassified => prop_assert!(!c.failed.is_empty()),
        }
        let violates = mu.is_some_and(|m| m > 6 || (n > 3 && m > 4));
        prop_assert_eq!(violates, !r.bound_violations().is_empty());
    }
}

#[test]
fn fixture_corpus_round_trips() {
    for text in [EXAMPLE41, CUBIC_SMOOTH] {
        let f = parse_polynomial(text).unwrap();
        assert_eq!(parse_polynomial(&print_polynomial(&f)).unwrap(), f);
    }
    for name in hyperlines::catalog::FAMILY_NAMES {
        if matches!(name, "cubic_smooth" | "example41" | "ci22") {
            let spec = hyperlines::catalog::build_family(name, 0).unwrap();
            let f = &spec.implicit_eq;
            assert_eq!(&parse_polynomial(&print_polynomial(f)).unwrap(), f);
        }
    }
}
