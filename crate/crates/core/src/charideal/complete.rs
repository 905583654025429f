//! Complete graphs: the edge system is linear in ā, and its solution is
//! symmetric in the vertex values, so it is rewritten in s_1, ..., s_n.
//!
//! At a point of S(K_n), Φ(x_i, y) = A_d(x_i) ∏_{j≠i} (y - x_j) for every
//! i, where Φ = Σ_k A_k(x) y^k. Comparing y^k coefficients and expanding
//! e_m(x̂_i) = Σ_t (-1)^t x_i^t s_{m-t} gives
//! A_k(z) ≡ (-1)^{d-k} A_d(z) Σ_t (-1)^t s_{d-k-t} z^t  mod ∏ (z - x_j),
//! and deg A_k < n, so A_k is that remainder.

use std::sync::Arc;
use std::time::Instant;

use serde_json::json;

use super::{CharIdealError, CharIdealReport, Pipeline};
use crate::graph::Graph;
use crate::groebner::{buchberger, reduced_basis, GbConfig, GbError, GroebnerBasis, StripSet};
use crate::pairing::{Label, PolySystem};
use crate::poly::{
    build_generic_phi, coeff_name, coeff_names, linalg, symmetrize_to_elementary, MPoly, MonomialOrder,
    VarRole, VarUniverse,
};

pub const MIN_COMPLETE: usize = 3;
pub const MAX_COMPLETE: usize = 6;

/// Coefficients fixed to zero in the K_6 run.
pub const K6_PRESET_ZERO: &[&str] = &["a54"];

#[derive(Clone, Debug, Default)]
pub struct CompleteOptions {
    pub gb: GbConfig,
    pub zero_vars: Vec<String>,
    /// Re-derive the system by an exact linear solve over ℚ(x) and
    /// compare. Only attempted for n <= 4.
    pub cross_check: bool,
}

/// Universe `s1, ..., s_n, a00, ..., a_dd`; natural lex is
/// lex(s_1, ..., s_{n-1}, s_n, ā).
pub fn complete_universe(n: usize) -> Arc<VarUniverse> {
    let mut names: Vec<String> = (1..=n).map(|k| format!("s{}", k)).collect();
    names.extend(coeff_names(n - 1));
    VarUniverse::new(&names).expect("well-formed names")
}

fn s_var(u: &Arc<VarUniverse>, k: usize) -> MPoly {
    if k == 0 {
        MPoly::one(u)
    } else {
        MPoly::var_named(u, &format!("s{}", k)).unwrap()
    }
}

fn a_var(u: &Arc<VarUniverse>, i: usize, j: usize) -> MPoly {
    MPoly::var_named(u, &coeff_name(i, j)).unwrap()
}

fn signed(p: MPoly, negative: bool) -> MPoly {
    if negative {
        -p
    } else {
        p
    }
}

/// Coefficient lists in z of A_0, ..., A_d at a point of S(K_n).
fn closed_form(u: &Arc<VarUniverse>, n: usize) -> Vec<Vec<MPoly>> {
    let d = n - 1;
    let top: Vec<MPoly> = (0..=d).map(|j| a_var(u, d, j)).collect();
    // z^n = Σ_{t>=1} (-1)^{t+1} s_t z^{n-t}
    let reduce = |mut c: Vec<MPoly>| -> Vec<MPoly> {
        for deg in (n..c.len()).rev() {
            let lead = std::mem::replace(&mut c[deg], MPoly::zero(u));
            if lead.is_zero() {
                continue;
            }
            for t in 1..=n {
                let term = &lead * &s_var(u, t);
                let pos = deg - t;
                c[pos] = if t % 2 == 1 { &c[pos] + &term } else { &c[pos] - &term };
            }
        }
        c.truncate(n);
        c
    };
    (0..=d)
        .map(|k| {
            let m = d - k;
            let e: Vec<MPoly> = (0..=m).map(|t| signed(s_var(u, m - t), (t + m) % 2 == 1)).collect();
            let mut prod = vec![MPoly::zero(u); d + m + 1];
            for (i, a) in top.iter().enumerate() {
                for (t, b) in e.iter().enumerate() {
                    prod[i + t] = &prod[i + t] + &(a * b);
                }
            }
            reduce(prod)
        })
        .collect()
}

/// S(K_n) in the s-variables: a_ij - (expression in s and the top row
/// a_d*) for every i < d. Fails if the closed form is not self-consistent.
pub fn complete_symmetric_system(n: usize) -> Result<PolySystem, CharIdealError> {
    if !(2..=MAX_COMPLETE).contains(&n) {
        return Err(CharIdealError::UnsupportedSize(n));
    }
    let u = complete_universe(n);
    let d = n - 1;
    let a = closed_form(&u, n);
    let mut sys = PolySystem::new(&u);
    for k in 0..=d {
        for j in 0..=d {
            let value = &a[k][j];
            let ok = if j == d || k == d {
                *value == a_var(&u, k, j)
            } else if j > k {
                *value == a[j][k]
            } else {
                true
            };
            if !ok {
                return Err(CharIdealError::LinearSolve(format!("closed form disagrees at {}", coeff_name(k, j))));
            }
        }
    }
    for k in 0..d {
        for j in 0..=k {
            let f = &a_var(&u, k, j) - &a[k][j];
            sys.push(f, Label::Other(coeff_name(k, j)));
        }
    }
    Ok(sys)
}

/// Exact solve of S(K_n) for the lower-index coefficients over ℚ(x),
/// each solution written back in the s-variables. Bareiss elimination;
/// practical up to n = 4.
pub fn complete_linear_solution(n: usize) -> Result<PolySystem, CharIdealError> {
    if !(2..=MAX_COMPLETE).contains(&n) {
        return Err(CharIdealError::UnsupportedSize(n));
    }
    let d = n - 1;
    let mut names: Vec<String> = (1..=n).rev().map(|i| format!("x{}", i)).collect();
    names.extend((1..=n).map(|k| format!("s{}", k)));
    names.extend(coeff_names(d));
    let u = VarUniverse::new(&names)?;
    let xs: Vec<usize> = (1..=n).map(|i| u.index(&format!("x{}", i)).unwrap()).collect();
    let ss: Vec<usize> = (1..=n).map(|k| u.index(&format!("s{}", k)).unwrap()).collect();
    let unknowns: Vec<usize> = (0..d)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .map(|(i, j)| u.index(&coeff_name(i, j)).unwrap())
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let phi = build_generic_phi(d, &u, xs[i], xs[j])?;
            let by_unknown = phi.coefficients_in(&unknowns);
            let mut row = vec![MPoly::zero(&u); unknowns.len()];
            let mut rest = MPoly::zero(&u);
            for (m, c) in by_unknown {
                match unknowns.iter().position(|&v| m.0[v] == 1) {
                    Some(pos) => row[pos] = c,
                    None => rest = &rest + &c,
                }
            }
            rows.push(row);
            rhs.push(-rest);
        }
    }
    let (det, nums) = linalg::solve(&rows, &rhs)
        .ok_or_else(|| CharIdealError::LinearSolve("singular system".into()))?;
    let target = complete_universe(n);
    let mut sys = PolySystem::new(&target);
    for (k, num) in nums.iter().enumerate() {
        let value = num
            .divide_exact(&det)
            .map_err(|_| CharIdealError::LinearSolve(format!("{} is not polynomial in x", u.name(unknowns[k]))))?;
        let sym = symmetrize_to_elementary(&value, &xs, &ss).map_err(|_| CharIdealError::Symmetrization)?;
        let f = &MPoly::var(&u, unknowns[k]) - &sym;
        sys.push(f.transfer(&target)?, Label::Other(u.name(unknowns[k]).to_string()));
    }
    Ok(sys)
}

fn zero_out(sys: &PolySystem, zero_vars: &[String]) -> Result<PolySystem, CharIdealError> {
    if zero_vars.is_empty() {
        return Ok(sys.clone());
    }
    let u = sys.universe().clone();
    let mut bindings = Vec::new();
    for name in zero_vars {
        bindings.push((u.require(name)?, MPoly::zero(&u)));
    }
    let mut out = PolySystem::new(&u);
    for (f, labels) in sys.polys().iter().zip(sys.labels()) {
        let g = f.substitute(&bindings);
        if !g.is_zero() {
            for l in labels {
                out.push(g.clone(), l.clone());
            }
        }
    }
    Ok(out)
}

/// I_ā(K_n) from the symmetric system under lex(s_1, ..., s_n, ā).
/// `s_n_free` records that no generator of the ideal eliminated down to
/// ℚ[s_n, ā] involves s_n.
pub fn complete_char_ideal(n: usize, opts: &CompleteOptions) -> Result<CharIdealReport, CharIdealError> {
    if !(MIN_COMPLETE..=MAX_COMPLETE).contains(&n) {
        return Err(CharIdealError::UnsupportedSize(n));
    }
    let start = Instant::now();
    let config = json!({
        "zero_vars": opts.zero_vars,
        "cross_check": opts.cross_check && n <= 4,
        "max_pairs": opts.gb.max_pairs,
        "max_degree": opts.gb.max_degree,
        "max_seconds": opts.gb.max_seconds,
    });
    let mut report = CharIdealReport::empty(&Graph::complete(n)?, n - 1, Pipeline::Complete, config);
    let sys = complete_symmetric_system(n)?;
    if opts.cross_check && n <= 4 {
        let t = Instant::now();
        let solved = complete_linear_solution(n)?;
        let order = MonomialOrder::lex(sys.universe());
        let a = reduced_basis(sys.polys(), &order, &opts.gb)?;
        let b = reduced_basis(solved.polys(), &order, &opts.gb)?;
        if !a.ideal_equal(&b)? {
            return Err(CharIdealError::LinearSolve("closed form and linear solve disagree".into()));
        }
        report.timings_ms.insert("cross_check".into(), t.elapsed().as_millis() as u64);
    }
    let sys = zero_out(&sys, &opts.zero_vars)?;
    let u = sys.universe().clone();
    report.system = Some(sys.clone());
    let order = MonomialOrder::lex(&u);
    let t = Instant::now();
    let full = match buchberger(sys.polys(), &order, &StripSet::empty(), &opts.gb) {
        Ok(b) => b,
        Err(GbError::CapExceeded(cap)) => {
            report.caps_hit = Some(cap);
            report.timings_ms.insert("groebner".into(), t.elapsed().as_millis() as u64);
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.timings_ms.insert("groebner".into(), t.elapsed().as_millis() as u64);
    let coeffs = u.coefficient_vars();
    let s_n = u.index(&format!("s{}", n)).unwrap();
    let mut with_sn = coeffs.clone();
    with_sn.push(s_n);
    let lower = full.eliminate(&with_sn)?;
    report.s_n_free = Some(lower.generators().iter().all(|g| !g.involves(s_n)));
    report.char_ideal = Some(full.eliminate(&coeffs)?);
    report.full_basis = Some(full);
    report.timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Outcome of comparing I_ā(K_{d+1}) with I_ā(K_{d+2}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    pub small_degree: usize,
    /// Zeroing the top-index coefficients of the larger ideal's
    /// generators gives a generating set of the smaller ideal.
    pub substitution_generates: bool,
    /// a_ij -> a_{i+1,j+1} maps the smaller ideal into the larger one.
    pub shift_contained: bool,
    /// The same, modulo the boundary coefficients a_{i0}. Shifted
    /// points are the polynomials xyΦ, which all have a_{i0} = 0.
    pub shift_contained_mod_boundary: bool,
}

impl InclusionReport {
    pub fn holds(&self) -> bool {
        self.substitution_generates && self.shift_contained
    }

    pub fn holds_mod_boundary(&self) -> bool {
        self.substitution_generates && self.shift_contained_mod_boundary
    }
}

fn coefficient_degree(u: &VarUniverse) -> Option<usize> {
    (0..u.len())
        .filter_map(|v| match u.role(v) {
            VarRole::Coefficient(i, _) => Some(i),
            _ => None,
        })
        .max()
}

/// Generators with every a_{d,j} set to zero, `d` the top index.
pub fn zero_top_coefficients(gens: &[MPoly]) -> Vec<MPoly> {
    let Some(u) = gens.first().map(|g| g.universe().clone()) else {
        return Vec::new();
    };
    let Some(d) = coefficient_degree(&u) else {
        return gens.to_vec();
    };
    let bindings: Vec<(usize, MPoly)> = (0..=d)
        .filter_map(|j| u.index(&coeff_name(d, j)))
        .map(|v| (v, MPoly::zero(&u)))
        .collect();
    gens.iter().map(|g| g.substitute(&bindings)).filter(|g| !g.is_zero()).collect()
}

/// a_ij -> a_{i+1,j+1}, moving `f` into `target`.
pub fn shift_indices(f: &MPoly, target: &Arc<VarUniverse>) -> Result<MPoly, CharIdealError> {
    let u = f.universe();
    let image: Vec<String> = (0..u.len())
        .map(|v| match u.role(v) {
            VarRole::Coefficient(i, j) => coeff_name(i + 1, j + 1),
            _ => u.name(v).to_string(),
        })
        .collect();
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        let mut out = crate::poly::Monomial::one(target.len());
        for (v, &e) in m.0.iter().enumerate() {
            if e > 0 {
                out.0[target.require(&image[v])?] += e;
            }
        }
        terms.push((out, c.clone()));
    }
    Ok(MPoly::from_terms(target, terms))
}

/// Substitution and shift relations between the characteristic ideals of
/// K_{d+1} (`small`) and K_{d+2} (`big`). Two ideals of the same degree
/// are simply compared.
pub fn check_inclusions(small: &GroebnerBasis, big: &GroebnerBasis, cfg: &GbConfig) -> Result<InclusionReport, CharIdealError> {
    let ds = coefficient_degree(small.universe()).ok_or_else(|| CharIdealError::MissingBasis("smaller graph".into()))?;
    let db = coefficient_degree(big.universe()).ok_or_else(|| CharIdealError::MissingBasis("larger graph".into()))?;
    if db == ds {
        let same = small.ideal_equal(big)?;
        return Ok(InclusionReport {
            small_degree: ds,
            substitution_generates: same,
            shift_contained: same,
            shift_contained_mod_boundary: same,
        });
    }
    if db != ds + 1 {
        return Err(CharIdealError::MissingBasis(format!("degree {} after degree {}", ds + 1, ds)));
    }
    let zeroed: Vec<MPoly> = zero_top_coefficients(big.generators())
        .iter()
        .map(|g| g.transfer(small.universe()))
        .collect::<Result<_, _>>()?;
    let substitution_generates = if zeroed.is_empty() {
        small.is_empty()
    } else {
        let gb = reduced_basis(&zeroed, small.order(), cfg)?;
        gb.ideal_equal(small)?
    };
    let bu = big.universe();
    let shifted: Vec<MPoly> = small.generators().iter().map(|g| shift_indices(g, bu)).collect::<Result<_, _>>()?;
    let shift_contained = big.contains_all(&shifted);
    let mut bounded = big.generators().to_vec();
    bounded.extend((0..=db).filter_map(|i| bu.index(&coeff_name(i, 0))).map(|v| MPoly::var(bu, v)));
    let bounded = reduced_basis(&bounded, big.order(), cfg)?;
    let shift_contained_mod_boundary = bounded.contains_all(&shifted);
    Ok(InclusionReport { small_degree: ds, substitution_generates, shift_contained, shift_contained_mod_boundary })
}
