mod common;

use std::sync::Arc;

use common::{divided_difference_holds, rat, root_separation_holds, LOPSIDED_CUBIC};
use ggk_core::graph::Graph;
use ggk_core::groebner::{buchberger, GbConfig, StripSet};
use ggk_core::poly::{MPoly, MonomialOrder, Rational, VarUniverse};
use proptest::prelude::*;

fn coeffs(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    let m = (d + 1) * (d + 2) / 2;
    prop::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(n, q)| rat(n, q)), m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divided_differences(d in 1usize..=3, vals in coeffs(3)) {
        prop_assert!(divided_difference_holds(d, &vals));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn root_separation(vals in coeffs(2), (n, q) in (-5i64..=5, 1i64..=3)) {
        let r = root_separation_holds(&vals, &rat(n, q));
        prop_assume!(r.is_some());
        prop_assert!(r.unwrap());
    }
}

fn xyz() -> Arc<VarUniverse> {
    VarUniverse::new(&["x", "y", "z"]).unwrap()
}

fn small_poly() -> impl Strategy<Value = MPoly> {
    let u = xyz();
    prop::collection::vec((prop::collection::vec(0u16..=1, 3), -3i64..=3), 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(MPoly::zero(&u), |acc, (e, c)| {
            let mut m = MPoly::constant(&u, rat(c, 1));
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m = &m * &MPoly::var(&u, v);
                }
            }
            &acc + &m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn buchberger_criterion_holds(a in small_poly(), b in small_poly(), c in small_poly()) {
        let gens: Vec<MPoly> = [a, b, c].into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let u = gens[0].universe().clone();
        let cfg = GbConfig { max_pairs: Some(500), max_seconds: Some(2.0), heartbeat_secs: 0.0, ..Default::default() };
        for ord in [MonomialOrder::lex(&u), MonomialOrder::lex_by_names(&u, &["z", "y", "x"]).unwrap()] {
            let Ok(gb) = buchberger(&gens, &ord, &StripSet::empty(), &cfg) else { continue };
            prop_assert!(gb.satisfies_buchberger_criterion());
            prop_assert!(gb.contains_all(&gens));
        }
    }
}

#[test]
fn vertex_transitivity_of_small_families() {
    for n in 3..=8 {
        assert!(Graph::cycle(n).unwrap().is_vertex_transitive().unwrap());
    }
    assert!(Graph::petersen().is_vertex_transitive().unwrap());
    let lopsided = Graph::new(8, LOPSIDED_CUBIC).unwrap();
    assert_eq!(lopsided.regular_degree(), Some(3));
    assert!(lopsided.is_connected());
    assert!(!lopsided.is_vertex_transitive().unwrap());
}

/// Every regular graph on 6 vertices is vertex-transitive, so the smallest
/// connected regular graph that is not has more vertices.
#[test]
fn six_vertex_regular_graphs_are_vertex_transitive() {
    let pairs: Vec<(usize, usize)> = (1..=6).flat_map(|i| (i + 1..=6).map(move |j| (i, j))).collect();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::new(6, &edges).unwrap();
        if g.regular_degree().is_some() {
            assert!(g.is_vertex_transitive().unwrap(), "{:?}", edges);
        }
    }
}
