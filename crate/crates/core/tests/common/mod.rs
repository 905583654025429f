#![allow(dead_code)]

use std::sync::Arc;

use ggk_core::groebner::{normal_form, reduced_basis, GbConfig, GroebnerBasis};
use ggk_core::pairing::{completion_poly, graph_universe, vertex_var};
use ggk_core::poly::{
    build_generic_phi, coeff_names, divided_difference, parse_poly, MPoly, MonomialOrder, Rational, VarUniverse,
};

pub const DELTA3: &str = "a22*a00 + a11*a20 - a20^2 - a21*a10";

pub const DELTA4: &str = "a22*a11*a00 - a22*a10^2 - a11*a20^2 + 2*a21*a20*a10 - a21^2*a00";

pub const DELTA5: &str = "a22^3*a00^3 - a21^3*a10^3 - 4*a22*a20^3*a10^2 + 5*a21*a20^4*a10 \
    + a20^2*a10^2*a21^2 + a10^2*a21^2*a20*a11 - 4*a10*a21*a20^3*a11 - a22^2*a10^4 - a11*a20^5 - a20^6 \
    + 3*a22*a11*a10^2*a20^2 + a22*a21*a11*a10^3 - a22*a11^2*a20*a10^2 + a11^2*a20^4 \
    + 4*a22^2*a20*a10^2*a00 + 3*a11*a21^2*a20^2*a00 - 2*a22*a21*a20^2*a10*a00 \
    - a20*a11^2*a21^2*a00 - 4*a20^3*a21^2*a00 - 3*a22^2*a20^2*a00^2 + a22^2*a10^2*a11*a00 \
    + a11*a21^2*a22*a00^2 - 3*a22^2*a10*a21*a00^2 + a10*a11*a21^3*a00 - a22*a20^2*a11^2*a00 \
    - 4*a22*a10*a11*a20*a21*a00 + a22*a20*a11^3*a00 + 2*a22*a11*a20^3*a00 \
    + 4*a22*a21^2*a20*a00^2 - a11*a22^2*a20*a00^2 + a22*a10^2*a21^2*a00 \
    - a22*a10*a21*a11^2*a00 - a21^4*a00^2 + 3*a22*a20^4*a00";

/// Generator of I_ā(C4) with a21 = 0.
pub const C4_A21_ZERO: &str = "a00*a11*a22 - a10^2*a22 - a11*a20^2";

pub const K4_IDEAL: &[&str] = &[
    "a11*a33 - a32*a21 + a32*a30 - a31^2 + a31*a22 - a33*a20",
    "a10*a33 - a32*a20 - a30*a31 + a30*a22",
    "a10*a21*a32 - a10*a31*a22 - a10*a32*a30 + a10*a31^2 - a11*a32*a20 + a11*a30*a22 - a11*a30*a31 \
     + a32*a20^2 - a20*a30*a22 + a20*a30*a31",
    "a00*a33 - a31*a20 + a30*a21 - a30^2",
    "a00*a32 - a31*a10 + a30*a11 - a30*a20",
    "a00*a22 - a10*a21 + a10*a30 - a20^2 + a20*a11 - a31*a00",
];

pub const K5_IDEAL: &[&str] = &[
    "a22*a44 - a44*a31 + a41*a43 - a43*a32 - a42^2 + a42*a33",
    "a21*a44 - a44*a30 + a43*a40 - a43*a31 - a41*a42 + a41*a33",
    "a21*a32*a43 + a43*a41*a30 - a30*a43*a32 - a30*a42^2 + a30*a42*a33 - a43*a40*a31 + a43*a31^2 \
     + a31*a41*a42 - a31*a41*a33 - a21*a41*a43 + a21*a42^2 - a21*a42*a33 + a22*a43*a40 - a22*a43*a31 \
     - a22*a41*a42 + a22*a41*a33",
    "a20*a44 - a43*a30 - a42*a40 + a40*a33",
    "a20*a32*a43 - a42*a33*a20 - a41*a43*a20 + a42^2*a20 - a22*a43*a30 + a22*a40*a33 - a42*a40*a22 \
     + a31*a43*a30 - a31*a40*a33 + a42*a40*a31",
    "a20*a31*a43 - a41*a33*a20 + a41*a42*a20 - a21*a43*a30 + a21*a40*a33 + a43*a30^2 - a30*a40*a33 \
     + a40*a42*a30 - a40*a42*a21 - a40*a43*a20",
    "a20*a31*a42 + a22*a41*a30 - a42*a30*a21 - a32*a41*a20 - a31*a41*a30 + a41^2*a20 + a42*a30^2 \
     - a40*a32*a30 + a40*a32*a21 + a40*a31^2 - a22*a40*a31 - a40*a42*a20 - a40^2*a31 + a40^2*a22 \
     + a40*a41*a30 - a40*a41*a21",
    "a11*a44 - a43*a30 - a42*a31 - a41^2 + a41*a32 + a40*a33",
    "a11*a43 - a41*a31 + a41*a22 + a42*a30 - a42*a21 - a43*a20",
    "a11*a33 + a32*a30 - a32*a21 - a31^2 + a31*a22 - a42*a11 - a33*a20 + a42*a20 + a40*a31 - a40*a22 \
     - a41*a30 + a41*a21",
    "a10*a44 - a42*a30 + a40*a32 - a41*a40",
    "a10*a43 - a42*a20 + a40*a22 - a40*a31",
    "a10*a33 + a41*a20 - a10*a42 - a32*a20 - a30*a31 + a30*a22",
    "a10*a31*a42 - a32*a41*a10 - a40*a10*a42 + a41^2*a10 - a30*a42*a11 + a32*a40*a11 - a41*a40*a11 \
     + a30*a42*a20 - a40*a32*a20 + a40*a41*a20",
    "a10*a21*a42 - a22*a41*a10 - a30*a10*a42 + a31*a41*a10 - a20*a42*a11 + a22*a40*a11 - a31*a40*a11 \
     + a42*a20^2 - a20*a40*a22 + a20*a40*a31",
    "a10*a21*a32 - a10*a40*a31 + a22*a40*a10 + a11*a41*a20 - a11*a32*a20 - a11*a30*a31 + a11*a30*a22 \
     - a20*a30*a22 - a10*a31*a22 - a10*a32*a30 - a21*a41*a10 - a41*a20^2 + a10*a31^2 + a32*a20^2 \
     + a30*a41*a10 + a20*a30*a31",
    "a00*a44 - a41*a30 + a40*a31 - a40^2",
    "a00*a43 - a41*a20 - a40*a30 + a40*a21",
    "a00*a42 - a40*a20 - a41*a10 + a40*a11",
    "a00*a33 - a41*a10 - a30^2 + a30*a21 + a40*a11 - a31*a20",
    "a00*a32 - a31*a10 + a40*a10 - a00*a41 - a30*a20 + a30*a11",
    "a00*a22 - a10*a21 + a10*a30 - a20^2 + a20*a11 - a31*a00",
];

/// (graph name, polynomial) from the example tables.
pub const TABLE: &[(&str, &str)] = &[
    ("C3", "x^2*y^2 + x^2 + y^2 - x*y + 2"),
    ("C4", "x^2*y^2 + x^2 + y^2 + x*y + 1"),
    ("C5", "x^2*y^2 + x^2 + y^2 - 2*x*y + x + y - 2"),
    ("K3", "x^2*y^2 + x^2 + y^2 + 3*x + 3*y + 1"),
    ("K4", "x^3*y + x*y^3 + x^2*y^2 + 1"),
    ("K5", "2*x^4*y^4 + 2*x^4 + 2*y^4 + x^3*y + x*y^3 + x^2*y^2 + 1"),
    ("K6", "x^5*y^5 + x^5 + y^5 - x^4*y^2 - x^2*y^4 - x^3*y^3 + x + y + 1"),
];

/// Edges of a connected cubic graph on 8 vertices that is not
/// vertex-transitive: two copies of K4 minus an edge, joined at the ends.
pub const LOPSIDED_CUBIC: &[(usize, usize)] =
    &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (1, 5), (4, 8)];

pub fn quiet() -> GbConfig {
    GbConfig { heartbeat_secs: 0.0, ..Default::default() }
}

pub fn xy() -> Arc<VarUniverse> {
    VarUniverse::new(&["x", "y"]).unwrap()
}

/// `a00, a10, ..., a_dd` under natural lex.
pub fn coefficient_universe(d: usize) -> Arc<VarUniverse> {
    VarUniverse::new(&coeff_names(d)).unwrap()
}

/// Reduced basis of `gens` (in any universe using only a_ij) moved to the
/// coefficient universe of degree `d`.
pub fn canonical(gens: &[MPoly], d: usize) -> GroebnerBasis {
    let u = coefficient_universe(d);
    let moved: Vec<MPoly> = gens.iter().map(|g| g.transfer(&u).unwrap()).collect();
    reduced_basis(&moved, &MonomialOrder::lex(&u), &quiet()).unwrap()
}

pub fn parse_all(gens: &[&str], u: &Arc<VarUniverse>) -> Vec<MPoly> {
    gens.iter().map(|s| parse_poly(s, u).unwrap()).collect()
}

pub fn same_up_to_scalar(a: &MPoly, b: &MPoly) -> bool {
    !a.is_zero() && a.divide_exact(b).map(|q| q.is_constant() && !q.is_zero()).unwrap_or(false)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn specialise(f: &MPoly, u: &Arc<VarUniverse>, d: usize, vals: &[Rational]) -> MPoly {
    let bindings: Vec<(usize, MPoly)> = coeff_names(d)
        .iter()
        .zip(vals)
        .map(|(name, c)| (u.index(name).unwrap(), MPoly::constant(u, c.clone())))
        .collect();
    f.substitute(&bindings)
}

/// Defining identity of the divided difference on Φ_ā(x1, x2), and
/// symmetry of Φ1(x1; x2, x3) in its second block. `vals` must have at
/// least (d+1)(d+2)/2 entries.
pub fn divided_difference_holds(d: usize, vals: &[Rational]) -> bool {
    let u = graph_universe(3, d, &[]);
    let (x1, x2, x3) = (vertex_var(&u, 1), vertex_var(&u, 2), vertex_var(&u, 3));
    let phi = specialise(&build_generic_phi(d, &u, x1, x2).unwrap(), &u, d, vals);
    let q = divided_difference(&phi, x2, x3);
    let moved = phi.substitute(&[(x2, MPoly::var(&u, x3))]);
    let diff = &MPoly::var(&u, x2) - &MPoly::var(&u, x3);
    if &q * &diff != &phi - &moved {
        return false;
    }
    let f = specialise(&completion_poly(&u, d, x1, &[x2, x3]).unwrap(), &u, d, vals);
    let swapped = f.substitute(&[(x2, MPoly::var(&u, x3)), (x3, MPoly::var(&u, x2))]);
    f == swapped
}

/// For d = 2: the system {Φ(u0, x1), Φ1(u0; x1, x2)} has exactly the two
/// orderings of the roots of Φ(u0, y) as solutions. None when Φ(u0, y)
/// is not a quadratic with distinct roots.
pub fn root_separation_holds(vals: &[Rational], u0: &Rational) -> Option<bool> {
    let d = 2;
    let u = graph_universe(3, d, &[]);
    let (x0, x1, x2) = (vertex_var(&u, 3), vertex_var(&u, 1), vertex_var(&u, 2));
    let at_u0 = [(x0, MPoly::constant(&u, u0.clone()))];
    let f0 = specialise(&build_generic_phi(d, &u, x0, x1).unwrap(), &u, d, vals).substitute(&at_u0);
    let f1 = specialise(&completion_poly(&u, d, x0, &[x1, x2]).unwrap(), &u, d, vals).substitute(&at_u0);
    if f0.degree_in(x1) != 2 {
        return None;
    }
    let c = f0.as_univariate(x1);
    let disc = &(&c[1] * &c[1]) - &(&MPoly::constant(&u, rat(4, 1)) * &(&c[0] * &c[2]));
    if disc.is_zero() {
        return None;
    }
    let ord = MonomialOrder::lex(&u);
    // Φ1 is linear in x2 with a constant leading coefficient.
    let parts = f1.as_univariate(x2);
    if parts.len() != 2 {
        return Some(false);
    }
    let Some(lead) = parts[1].constant_value() else {
        return Some(false);
    };
    if lead == rat(0, 1) {
        return Some(false);
    }
    let x2_star = &parts[0] * &MPoly::constant(&u, rat(-1, 1) / lead);
    let other = f0.substitute(&[(x1, x2_star.clone())]);
    if !normal_form(&other, &[f0.clone()], &ord).is_zero() {
        return Some(false);
    }
    let gap = &x2_star - &MPoly::var(&u, x1);
    let sep = normal_form(&(&gap * &gap), &[f0], &ord);
    Some(sep.is_constant() && !sep.is_zero())
}
