use super::*;
use crate::algebra::{q, RingContext};

fn cfg() -> GroebnerConfig {
    GroebnerConfig::default()
}

fn x_ring(n: usize) -> Ring {
    RingContext::indexed("x", n)
}

fn ext(x: &Ring, t: &[&str], eqs: &[&str]) -> ExtensionData {
    let mut vars = x.vars().to_vec();
    vars.extend(t.iter().map(|s| s.to_string()));
    let w = RingContext::new(vars, MonomialOrder::Grevlex).unwrap();
    let eqs = eqs.iter().map(|s| Polynomial::parse(&w, s).unwrap()).collect();
    ExtensionData::from_lifts(x, t.iter().map(|s| s.to_string()).collect(), eqs).unwrap()
}

fn fermat(n: usize, d: u32) -> Polynomial {
    let r = x_ring(n + 1);
    let s = (0..=n).map(|i| format!("x{}^{}", i, d)).collect::<Vec<_>>().join("+");
    Polynomial::parse(&r, &s).unwrap()
}

const TWISTED: [&str; 3] = ["x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"];

fn twisted_extension() -> ExtensionData {
    // Minors of [[x0, x1, x2], [x1, x2 + t, x3]].
    ext(&x_ring(4), &["t"], &["x0*x2+x0*t-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2-x2*t"])
}

#[test]
fn check_examples() {
    let x = x_ring(2);
    let c = cone_over(&GradedIdeal::new(&x, vec![fermat(1, 2)]).unwrap(), 1).unwrap();
    assert!(check_extension(&c, None, &cfg()).unwrap().passed);
    let w = ext(&x, &["t"], &["x0^2+x1^2+t^2"]);
    assert!(check_extension(&w, None, &cfg()).unwrap().passed);
    let bad = ext(&x, &["t"], &["x0^2+x1^2+t*x0", "t*x1"]);
    let r = check_extension(&bad, None, &cfg()).unwrap();
    assert!(!r.passed);
    assert_eq!(r.first_failure, Some(2));
    assert_eq!(&r.actual[..4], &[1, 3, 4, 4]);
    assert_eq!(&r.expected[..4], &[1, 3, 5, 7]);
    assert!(check_extension(&twisted_extension(), None, &cfg()).unwrap().passed);
}

#[test]
fn universal_extensions() {
    let u = universal_hypersurface_extension(&fermat(1, 2), &cfg()).unwrap();
    assert_eq!(u.steps(), 1);
    assert_eq!(u.lifted()[0].to_string(), "x0^2 + x1^2 + t1^2");
    let u3 = universal_hypersurface_extension(&fermat(2, 3), &cfg()).unwrap();
    assert_eq!(u3.steps(), 7);
    let big = &u3.lifted()[0];
    for i in 0..7 {
        let mut index = vec![0; 7];
        let coeffs: Vec<(Vec<u32>, Polynomial)> = u3.t_expansion(big).into_iter().filter(|(k, _)| k[i] > 0).collect();
        assert_eq!(coeffs.len(), 1);
        let (key, m) = &coeffs[0];
        index[i] = key[i];
        assert_eq!(key, &index);
        assert_eq!(key[i] + m.total_degree().unwrap(), 3);
    }
    assert!(check_extension(&u3, None, &cfg()).unwrap().passed);
    let u4 = universal_hypersurface_extension(&fermat(2, 4), &cfg()).unwrap();
    assert_eq!(u4.steps(), 17);
    let cusp = Polynomial::parse(&x_ring(3), "x1^2*x2-x0^3").unwrap();
    assert!(matches!(universal_hypersurface_extension(&cusp, &cfg()), Err(Error::Singular(_))));
}

#[test]
fn ks_examples() {
    let x = x_ring(2);
    let conic = ext(&x, &["t"], &["x0^2+x1^2+t^2"]);
    let r = ks_report(&conic, None, &cfg()).unwrap();
    assert_eq!(r.rank, 0);
    assert_eq!(r.layer(2).unwrap().rank, 1);
    let lin = ext(&x, &["t"], &["x0^2+x1^2+t*x0"]);
    let r = ks_map(&lin, &cfg()).unwrap();
    assert!(r.classes[0].is_empty());

    let u3 = universal_hypersurface_extension(&fermat(2, 3), &cfg()).unwrap();
    let r = ks_report(&u3, None, &cfg()).unwrap();
    assert_eq!((r.rank, r.quotient_dim), (3, 3));
    let l2 = r.layer(2).unwrap();
    assert_eq!((l2.rank, l2.piece_dim), (3, 3));
    let l3 = r.layer(3).unwrap();
    assert_eq!((l3.rank, l3.piece_dim), (1, 1));
    assert_eq!(ks_higher(&u3, 2, &cfg()).unwrap().unwrap().rank, 3);

    // Restrict to the three t-linear directions.
    let dirs: Vec<usize> = (0..7).filter(|&i| u3.t_expansion(&u3.lifted()[0]).keys().any(|k| k[i] == 1)).collect();
    assert_eq!(dirs.len(), 3);
    let matrix: Vec<Vec<Rational>> = (0..7)
        .map(|i| (0..3).map(|c| if dirs[c] == i { q(1) } else { q(0) }).collect())
        .collect();
    let sub = sub_extension(&u3, &matrix).unwrap();
    let r = ks_map(&sub, &cfg()).unwrap();
    assert_eq!(r.rank, 3);
    assert_eq!(r.verdict, KsVerdict::Isomorphism);

    let c = cone_over(&GradedIdeal::new(&x_ring(3), vec![fermat(2, 3)]).unwrap(), 2).unwrap();
    let r = ks_report(&c, None, &cfg()).unwrap();
    assert_eq!(r.verdict, KsVerdict::Zero);
}

#[test]
fn cones_and_subextensions() {
    let base = GradedIdeal::new(&x_ring(3), vec![fermat(2, 3)]).unwrap();
    let c1 = cone_over(&base, 1).unwrap();
    assert_eq!(ks_map(&c1, &cfg()).unwrap().rank, 0);
    let c11 = cone(&c1, 1).unwrap();
    let c2 = cone_over(&base, 2).unwrap();
    assert_eq!(c11.steps(), 2);
    assert_eq!(c11.t_vars(), c2.t_vars());
    assert_eq!(c11.lifted(), c2.lifted());
    assert!(check_extension(&cone_over(&base, 3).unwrap(), None, &cfg()).unwrap().passed);

    let u = universal_hypersurface_extension(&fermat(2, 3), &cfg()).unwrap();
    let id: Vec<Vec<Rational>> = (0..7).map(|i| (0..7).map(|j| q((i == j) as i64)).collect()).collect();
    let same = sub_extension(&u, &id).unwrap();
    assert_eq!(same.lifted(), u.lifted());
    let none = sub_extension(&u, &vec![vec![]; 7]).unwrap();
    assert_eq!(none.steps(), 0);
    assert_eq!(none.lifted()[0].to_ring(&x_ring(3)).unwrap(), fermat(2, 3));
    let singular = vec![vec![q(1), q(1)]; 7];
    assert!(sub_extension(&u, &singular).is_err());
}

fn shifted(e: &ExtensionData, a: &[i64], direction: usize) -> ExtensionData {
    let shift: Vec<Rational> = a.iter().map(|&v| q(v)).collect();
    Move::Shift { direction, shift }.apply(e).unwrap()
}

#[test]
fn strict_matching() {
    let e1 = twisted_extension();
    let expect: Vec<String> = TWISTED.iter().map(|s| Polynomial::parse(&x_ring(4), s).unwrap().to_string()).collect();
    let got: Vec<String> = e1.base().generators().iter().map(|p| p.to_string()).collect();
    assert_eq!(got, expect);
    let nm = crate::normal::NormalModule::new(e1.base(), &cfg()).unwrap();
    assert_eq!(nm.twist_minus_two_vanishes(), (true, 0));
    let e2 = shifted(&e1, &[2, -1, 0, 3], 0);
    assert_ne!(e1.lifted(), e2.lifted());
    let m = match_extensions(&e1, &e2, MatchMode::Strict, &cfg()).unwrap();
    assert!(m.is_equivalent());
    assert!(!m.heuristic);
    assert!(!m.transcript.is_empty());
    let back = match_extensions(&e2, &e1, MatchMode::Strict, &cfg()).unwrap();
    assert!(back.is_equivalent());
    // Cone versus a nontrivial extension differ at order 1.
    let c = cone_over(e1.base(), 1).unwrap();
    let d = match_extensions(&e1, &c, MatchMode::Strict, &cfg()).unwrap();
    let d2 = match_extensions(&c, &e1, MatchMode::Strict, &cfg()).unwrap();
    match (&d.outcome, &d2.outcome) {
        (MatchOutcome::Distinct { order: a, .. }, MatchOutcome::Distinct { order: b, .. }) => {
            assert_eq!((*a, *b), (1, 1))
        }
        _ => panic!("expected distinct"),
    }
    assert!(match_extensions(&c, &c, MatchMode::Strict, &cfg()).unwrap().is_equivalent());
}

#[test]
fn hypersurface_matching_is_refused_in_strict_mode() {
    let x = x_ring(2);
    let a = ext(&x, &["t"], &["x0^2+x1^2+t^2"]);
    let c = cone_over(a.base(), 1).unwrap();
    assert!(matches!(
        match_extensions(&a, &c, MatchMode::Strict, &cfg()),
        Err(Error::Refused(_))
    ));
    let m = match_extensions(&a, &c, MatchMode::Heuristic, &cfg()).unwrap();
    assert!(m.heuristic);
    match m.outcome {
        MatchOutcome::Distinct { order, left, right, .. } => {
            assert_eq!(order, 2);
            assert_eq!(left.unwrap().len(), 1);
            assert!(right.unwrap().is_empty());
        }
        _ => panic!("expected distinct"),
    }
}

fn toy_bielliptic(h_lift: &str) -> ExtensionData {
    // Cone over a conic in x2..x4 plus h = x1^2 - A.
    ext(&x_ring(5), &["t"], &["x2*x4-x3^2", &format!("x1^2-x2*x3-x4^2{}", h_lift)])
}

#[test]
fn bielliptic_forms() {
    let b = bielliptic_normalize(&toy_bielliptic("+2*t*x1+3*t^2")).unwrap();
    assert_eq!(b.vertex, 1);
    assert_eq!((b.alpha.clone(), b.beta.clone(), b.reduced_beta.clone()), (q(2), q(3), q(2)));
    assert!(!b.is_cone);
    assert_eq!(b.normalized.lifted()[1].to_string(), "x1^2 - x2*x3 - x4^2 + t^2");
    assert!(b.transcript[0].contains("x1 -> x1 - (1)*t"));

    let b = bielliptic_normalize(&toy_bielliptic("+t*x1")).unwrap();
    assert_eq!(b.reduced_beta, crate::algebra::qq(-1, 4));
    assert_eq!(b.normalized.lifted()[1].to_string(), "x1^2 - x2*x3 - x4^2 + t^2");

    let b = bielliptic_normalize(&toy_bielliptic("+2*t*x1+t^2")).unwrap();
    assert!(b.is_cone);
    let b = bielliptic_normalize(&toy_bielliptic("")).unwrap();
    assert!(b.is_cone);
    assert!(b.transcript.is_empty());
    assert!(bielliptic_normalize(&toy_bielliptic("+t*x2")).is_err());
}

mod properties {
    use proptest::prelude::*;

    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn ks_invariant_under_shifts(a in prop::collection::vec(-3i64..=3, 4)) {
            let e = twisted_extension();
            let before = ks_map(&e, &cfg()).unwrap();
            let after = ks_map(&shifted(&e, &a, 0), &cfg()).unwrap();
            prop_assert_eq!(before.classes, after.classes);
            prop_assert_eq!(before.rank, after.rank);
        }

        #[test]
        fn sub_extension_functorial(cols in prop::collection::vec(prop::collection::vec(-2i64..=2, 7), 1..3)) {
            let u = universal_hypersurface_extension(&fermat(2, 3), &cfg()).unwrap();
            let matrix: Vec<Vec<Rational>> = (0..7).map(|i| cols.iter().map(|c| q(c[i])).collect()).collect();
            prop_assume!(sub_extension(&u, &matrix).is_ok());
            let sub = sub_extension(&u, &matrix).unwrap();
            let full = ks_map(&u, &cfg()).unwrap();
            let part = ks_map(&sub, &cfg()).unwrap();
            for (l, col) in cols.iter().enumerate() {
                let mut expect: crate::linalg::SparseVec = Vec::new();
                for (i, c) in col.iter().enumerate() {
                    expect = crate::linalg::axpy(&expect, &q(*c), &full.classes[i]);
                }
                prop_assert_eq!(&part.classes[l], &expect);
            }
        }
    }
}
