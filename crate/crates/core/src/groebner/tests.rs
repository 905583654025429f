use super::*;
use crate::poly::{parse_poly, Monomial};
use proptest::prelude::*;

fn setup(names: &[&str]) -> (Arc<VarUniverse>, MonomialOrder) {
    let u = VarUniverse::new(names).unwrap();
    let o = MonomialOrder::lex(&u);
    (u, o)
}

fn gb(gens: &[MPoly], o: &MonomialOrder) -> GroebnerBasis {
    let b = buchberger(gens, o, &StripSet::empty(), &GbConfig::default()).unwrap();
    assert!(b.satisfies_buchberger_criterion());
    b
}

#[test]
fn s_polynomials() {
    let (u, o) = setup(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    assert_eq!(s_polynomial(&p("x^2*y - 1"), &p("x*y^2 - 1"), &o).unwrap(), p("x - y"));
    assert!(s_polynomial(&p("x^2 + y"), &p("x^2 + y"), &o).unwrap().is_zero());
    let s = s_polynomial(&p("x"), &p("y"), &o).unwrap();
    assert!(normal_form(&s, &[p("x"), p("y")], &o).is_zero());
    assert!(matches!(s_polynomial(&p("0"), &p("y"), &o), Err(GbError::ZeroInput)));
}

#[test]
fn normal_forms() {
    let (u, o) = setup(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    assert_eq!(normal_form(&p("x^2"), &[p("x - y")], &o), p("y^2"));
    let f = p("3*x^2*y + 1/2*y");
    assert!(normal_form(&f, &[f.clone()], &o).is_zero());
    assert_eq!(normal_form(&p("x^2*y"), &[p("x^2 - 1"), p("y - 2")], &o), p("2"));
    // Rational bookkeeping: non-monic divisor.
    assert_eq!(normal_form(&p("x"), &[p("2*x - 1")], &o), p("1/2"));
}

#[test]
fn small_bases() {
    let (u, o) = setup(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    let b = gb(&[p("x - y"), p("y^2 - 1")], &o);
    assert_eq!(b.generators(), &[p("y^2 - 1"), p("x - y")]);
    let one = gb(&[p("1")], &o);
    assert!(one.is_unit());
    assert_eq!(one.generators(), &[p("1")]);
    assert!(matches!(
        buchberger(&[], &o, &StripSet::empty(), &GbConfig::default()),
        Err(GbError::EmptyInput)
    ));
    let b = gb(&[p("x^2*y - 1"), p("x*y^2 - 1")], &o);
    assert!(b.contains(&p("x - y")));
    assert!(b.contains(&p("y^3 - 1")));
    assert!(!b.contains(&p("1")));
    assert!(b.is_reduced());
}

#[test]
fn twisted_cubic_elimination() {
    let (u, o) = setup(&["t", "x", "y"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    let b = gb(&[p("x - t^2"), p("y - t^3")], &o);
    let e = b.eliminate(&[1, 2]).unwrap();
    assert!(e.generators().iter().all(|g| !g.involves(0)));
    assert!(e.contains(&p("y^2 - x^3")));
    for g in e.generators() {
        assert!(b.contains(g));
    }
    let all = b.eliminate(&[0, 1, 2]).unwrap();
    assert_eq!(all.generators(), b.generators());
    assert!(matches!(b.eliminate(&[0]), Err(GbError::NotEliminationOrder(_))));
}

#[test]
fn equality_and_orders() {
    let (u, o) = setup(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    let a = gb(&[p("x")], &o);
    let b = gb(&[p("2*x")], &o);
    assert!(a.ideal_equal(&b).unwrap());
    assert!(a.ideal_equal(&a).unwrap());
    let o2 = MonomialOrder::lex_by_names(&u, &["y", "x"]).unwrap();
    let c = gb(&[p("x")], &o2);
    assert!(matches!(a.ideal_equal(&c), Err(GbError::OrderMismatch)));
    let json = a.to_json();
    assert_eq!(json["order"], serde_json::json!(["x", "y"]));
    assert_eq!(json["generators"], serde_json::json!(["x"]));
    assert_eq!(json["reduced"], serde_json::json!(true));
}

#[test]
fn saturation() {
    let (u, o) = setup(&["t", "x", "y"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    let cfg = GbConfig::default();
    let s = saturation_rabinowitsch(&[p("x*y")], &p("x"), &o, &cfg).unwrap();
    assert!(s.contains(&p("y")));
    let same = saturation_rabinowitsch(&[p("x*y")], &p("1"), &o, &cfg).unwrap();
    assert_eq!(same.generators(), &[p("x*y")]);
    let (u2, o2) = setup(&["x", "y"]);
    let q = parse_poly("x", &u2).unwrap();
    assert!(matches!(
        saturation_rabinowitsch(&[q.clone()], &q, &o2, &cfg),
        Err(GbError::MissingAuxiliary)
    ));
}

#[test]
fn stripping_removes_difference_factors() {
    let (u, o) = setup(&["x2", "x1", "a"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    let strip = StripSet::vertex_differences(&u);
    assert_eq!(strip.pairs(), &[(0, 1)]);
    // (x2 - x1) * (x2 + x1 - a) with the factor stripped leaves x2 + x1 - a.
    let f = &p("x2 - x1") * &p("x2 + x1 - a");
    let b = buchberger(&[f, p("x1^2 - a")], &o, &strip, &GbConfig::default()).unwrap();
    assert!(b.contains(&p("x2 + x1 - a")));
    let sp = strip.as_polys(&u);
    for g in b.generators() {
        assert!(g.divide_exact(&sp[0]).is_err());
    }
    assert!(b.stats().strips >= 1);
    assert!(StripSet::new(&u, vec![(0, 2)]).is_err());
}

#[test]
fn caps_are_reported() {
    let (u, o) = setup(&["x", "y", "z"]);
    let p = |s: &str| parse_poly(s, &u).unwrap();
    let gens = [p("x^3 - y*z + 1"), p("y^3 - x*z"), p("z^3 - x*y - 2")];
    let cfg = GbConfig {
        max_pairs: Some(1),
        ..GbConfig::default()
    };
    match buchberger(&gens, &o, &StripSet::empty(), &cfg) {
        Err(GbError::CapExceeded(r)) => {
            assert_eq!(r.kind, CapKind::Pairs);
            assert!(!r.partial.is_empty());
        }
        other => panic!("expected cap, got {:?}", other.map(|b| b.len())),
    }
    let cfg = GbConfig {
        max_degree: Some(2),
        ..GbConfig::default()
    };
    assert!(matches!(
        buchberger(&gens, &o, &StripSet::empty(), &cfg),
        Err(GbError::CapExceeded(r)) if r.kind == CapKind::Degree
    ));
}

fn small_poly() -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    proptest::collection::vec((proptest::collection::vec(0u16..3, 3), -3i64..4), 1..4)
}

fn build(u: &Arc<VarUniverse>, raw: Vec<(Vec<u16>, i64)>) -> MPoly {
    MPoly::from_terms(
        u,
        raw.into_iter()
            .map(|(e, c)| (Monomial(e.into_iter().collect()), Rational::from_integer(c.into()))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn reduced_basis_is_canonical(a in small_poly(), b in small_poly(), c in small_poly()) {
        let (u, o) = setup(&["x", "y", "z"]);
        let gens: Vec<MPoly> = [a, b, c].into_iter().map(|r| build(&u, r)).collect();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let cfg = GbConfig { max_pairs: Some(2000), ..GbConfig::default() };
        let fwd = buchberger(&gens, &o, &StripSet::empty(), &cfg);
        prop_assume!(fwd.is_ok());
        let fwd = fwd.unwrap();
        let rev: Vec<MPoly> = gens.iter().rev().cloned().collect();
        let back = buchberger(&rev, &o, &StripSet::empty(), &cfg).unwrap();
        prop_assert_eq!(fwd.generators(), back.generators());
        prop_assert!(fwd.satisfies_buchberger_criterion());
        for g in &gens {
            prop_assert!(fwd.contains(g));
        }
    }
}
