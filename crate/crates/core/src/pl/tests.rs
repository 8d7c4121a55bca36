use super::*;
use crate::rng::SplitMix64;
use crate::sample::{random_f, random_t};
use proptest::prelude::*;

fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

/// 2x on [0,1/4], x+1/4 on [1/4,1/2], x/2+1/2 on [1/2,1].
fn sample_f() -> PLMap {
    PLMap::from_graph(
        Domain::Interval,
        &[(d("0"), d("0")), (d("1/2^2"), d("1/2^1")), (d("1/2^1"), d("3/2^2")), (d("1"), d("1"))],
    )
    .unwrap()
}

fn grid(bits: u32) -> impl Iterator<Item = Dyadic> {
    (0..=(1i64 << bits)).map(move |n| Dyadic::new(n, bits))
}

#[test]
fn eval_examples() {
    let id = PLMap::identity(Domain::Interval);
    assert_eq!(id.eval(&d("1/2^1")).unwrap(), d("1/2^1"));
    let f = sample_f();
    assert_eq!(f.eval(&d("1/2^3")).unwrap(), d("1/2^2"));
    assert_eq!(f.eval(&d("1/2^1")).unwrap(), d("3/2^2"));
    assert_eq!(f.eval(&d("1")).unwrap(), d("1"));
    assert!(matches!(f.eval(&d("3/2^1")), Err(PlError::OutOfDomain(_))));
    assert!(matches!(f.eval(&d("-1/2^3")), Err(PlError::OutOfDomain(_))));
}

#[test]
fn pieces_match_description() {
    let f = sample_f();
    let p = f.pieces();
    assert_eq!(p.len(), 3);
    assert_eq!((p[0].slope_exp, p[1].slope_exp, p[2].slope_exp), (1, 0, -1));
    assert_eq!(p[1].offset, d("1/2^2"));
    assert_eq!(p[2].offset, d("1/2^1"));
}

#[test]
fn compose_examples() {
    let f = sample_f();
    assert!(f.compose(&f.inverse()).is_identity());
    assert!(f.inverse().compose(&f).is_identity());
    let id = PLMap::identity(Domain::Interval);
    assert_eq!(id.compose(&f), f);
    assert_eq!(f.compose(&id), f);
    // f∘f against pointwise evaluation on the 2^-10 grid
    let ff = f.compose(&f);
    for x in grid(10) {
        let direct = f.eval(&f.eval(&x).unwrap()).unwrap();
        assert_eq!(ff.eval(&x).unwrap(), direct, "x = {x}");
    }
}

#[test]
fn invert_examples() {
    assert!(PLMap::identity(Domain::Interval).inverse().is_identity());
    let inv = sample_f().inverse();
    let p0 = &inv.pieces()[0];
    assert_eq!((p0.left.clone(), p0.slope_exp, p0.offset.clone()), (d("0"), -1, d("0")));
    assert_eq!(inv.pieces()[1].left, d("1/2^1"));
}

#[test]
fn membership_examples() {
    let id = PLMap::identity(Domain::Interval).to_spec();
    assert!(membership(&id, Membership::F).member);
    assert!(membership(&id, Membership::T).member);
    assert!(membership(&sample_f().to_spec(), Membership::F).member);
    let rot = PLMap::rotation(&d("1/2^1")).to_spec();
    assert!(membership(&rot, Membership::T).member);
    let rep = membership(&rot, Membership::F);
    assert!(!rep.member);
    assert!(rep.violations.iter().any(|v| v.condition == "interval-domain"));
}

#[test]
fn membership_names_violations() {
    let bad = PiecewiseSpec {
        domain: Domain::Interval,
        pieces: vec![Piece::new(d("0"), 1, d("0")), Piece::new(d("1/2^2"), 0, d("1/2^3"))],
    };
    let rep = membership(&bad, Membership::F);
    assert!(!rep.member);
    let conds: Vec<_> = rep.violations.iter().map(|v| v.condition.as_str()).collect();
    assert!(conds.contains(&"continuity"), "{conds:?}");
    assert!(conds.contains(&"fixes-1"), "{conds:?}");
    assert!(rep.violations.iter().any(|v| v.location.contains("1/2^2")));

    let not_degree_one = PiecewiseSpec { domain: Domain::Circle, pieces: vec![Piece::new(d("0"), 1, d("0"))] };
    let rep = membership(&not_degree_one, Membership::T);
    assert!(rep.violations.iter().any(|v| v.condition == "degree-one"));
    assert!(PLMap::from_pieces(Domain::Circle, not_degree_one.pieces).is_err());
}

#[test]
fn json_wire_format() {
    let f = sample_f();
    let json = serde_json::to_string(&f).unwrap();
    assert!(json.starts_with(r#"{"domain":"interval","pieces":[{"left":"0/2^0","slopeExp":1,"offset":"0/2^0"}"#), "{json}");
    let back: PLMap = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
    let broken = r#"{"domain":"interval","pieces":[{"left":"0/2^0","slopeExp":1,"offset":"0/2^0"}]}"#;
    assert!(serde_json::from_str::<PLMap>(broken).is_err());
}

#[test]
fn germ_examples() {
    assert_eq!(PLMap::identity(Domain::Interval).germ(false).unwrap(), 0);
    let f = sample_f();
    assert_eq!(f.germ(false).unwrap(), 1);
    assert_eq!(f.germ(true).unwrap(), -1);
    assert_eq!(f.inverse().germ(false).unwrap(), -1);
    assert!(matches!(PLMap::rotation(&d("1/2^2")).germ(false), Err(PlError::NotInF(_))));
}

#[test]
fn support_examples() {
    use num_rational::BigRational;
    let q = |n: i64, den: i64| BigRational::new(n.into(), den.into());
    assert!(PLMap::identity(Domain::Interval).support().is_empty());
    assert_eq!(sample_f().support(), vec![(q(0, 1), q(1, 1))]);
    // a bump supported on (1/4, 1/2)
    let bump = PLMap::from_graph(
        Domain::Interval,
        &[
            (d("0"), d("0")),
            (d("1/2^2"), d("1/2^2")),
            (d("3/2^3"), d("5/2^4")),
            (d("7/2^4"), d("3/2^3")),
            (d("1/2^1"), d("1/2^1")),
            (d("1"), d("1")),
        ],
    )
    .unwrap();
    assert_eq!(bump.support(), vec![(q(1, 4), q(1, 2))]);
    // transversal crossing of the diagonal at a non-dyadic point
    let cross = PLMap::from_graph(
        Domain::Interval,
        &[(d("0"), d("0")), (d("1/2^2"), d("1/2^3")), (d("3/2^3"), d("5/2^3")), (d("1/2^1"), d("3/2^2")), (d("1"), d("1"))],
    )
    .unwrap();
    assert_eq!(cross.support(), vec![(q(0, 1), q(7, 24)), (q(7, 24), q(1, 1))]);
    // rotation moves every point
    assert_eq!(PLMap::rotation(&d("1/2^1")).support(), vec![(q(0, 1), q(1, 1))]);
}

#[test]
fn commutator_examples() {
    let f = sample_f();
    assert!(f.commutator(&f).map.is_identity());
    assert!(f.commutator(&PLMap::identity(Domain::Interval)).map.is_identity());
    assert_eq!(f.commutator(&f).convention, COMMUTATOR_CONVENTION);
    let g = standard_generator(1);
    let c = f.commutator(&g).map;
    let manual = f.inverse().compose(&g.inverse()).compose(&f).compose(&g);
    assert_eq!(c, manual);
    // commutators lie in F': trivial germs at both ends
    assert_eq!((c.germ(false).unwrap(), c.germ(true).unwrap()), (0, 0));
}

#[test]
fn circle_maps() {
    let r = PLMap::rotation(&d("1/2^2"));
    assert_eq!(r.eval(&d("7/2^3")).unwrap(), d("1/2^3"));
    assert_eq!(r.pow(4), PLMap::identity(Domain::Circle));
    let r3 = r.inverse();
    assert_eq!(r3, PLMap::rotation(&d("3/2^2")));
    let mut rng = SplitMix64::new(5);
    for _ in 0..30 {
        let a = random_t(&mut rng, 4);
        let b = random_t(&mut rng, 4);
        let ab = a.compose(&b);
        assert!(membership(&ab.to_spec(), Membership::T).member);
        assert!(a.compose(&a.inverse()).is_identity(), "{a:?}");
        for x in grid(7).take(128) {
            let p = CirclePoint::reduce(&x);
            assert_eq!(ab.act(&p), a.act(&b.act(&p)));
            assert_eq!(a.inverse().act(&a.act(&p)), p);
        }
    }
}

fn arb_f() -> impl Strategy<Value = PLMap> {
    (any::<u64>(), 0usize..8).prop_map(|(seed, len)| random_f(&mut SplitMix64::new(seed), len))
}

fn arb_t() -> impl Strategy<Value = PLMap> {
    (any::<u64>(), 0usize..5).prop_map(|(seed, len)| random_t(&mut SplitMix64::new(seed), len))
}

fn arb_unit() -> impl Strategy<Value = Dyadic> {
    (0i64..=4096).prop_map(|n| Dyadic::new(n, 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_inverse(f in arb_f()) {
        prop_assert_eq!(f.inverse().inverse(), f.clone());
        prop_assert!(f.compose(&f.inverse()).is_identity());
    }

    #[test]
    fn double_inverse_circle(f in arb_t()) {
        prop_assert_eq!(f.inverse().inverse(), f.clone());
    }

    #[test]
    fn monotone(f in arb_f(), x in arb_unit(), y in arb_unit()) {
        prop_assume!(x < y);
        prop_assert!(f.eval(&x).unwrap() < f.eval(&y).unwrap());
    }

    #[test]
    fn equality_agrees_with_grid(f in arb_f(), g in arb_f()) {
        let fg = f.compose(&g);
        let pointwise_equal = grid(12).all(|x| fg.eval(&x).unwrap() == f.eval(&g.eval(&x).unwrap()).unwrap());
        prop_assert!(pointwise_equal);
        let same = grid(12).all(|x| f.eval(&x).unwrap() == g.eval(&x).unwrap());
        prop_assert_eq!(same, f == g);
        // re-normalizing is a no-op
        let again = PLMap::from_pieces(f.domain(), f.pieces().to_vec()).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn germ_homomorphism(f in arb_f(), g in arb_f()) {
        let fg = f.compose(&g);
        for end in [false, true] {
            prop_assert_eq!(fg.germ(end).unwrap(), f.germ(end).unwrap() + g.germ(end).unwrap());
        }
    }

    #[test]
    fn associativity(f in arb_t(), g in arb_t(), h in arb_t()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }
}
