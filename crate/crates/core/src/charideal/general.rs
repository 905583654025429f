//! The general algorithm: completed system, optional clique and twin
//! polynomials, stripped Gröbner basis, elimination.

use std::time::Instant;

use serde_json::json;

use super::{CharIdealError, CharIdealReport, Pipeline};
use crate::graph::Graph;
use crate::groebner::{buchberger, GbConfig, GbError, StripSet};
use crate::pairing::{
    clique_polynomials_in, completed_system_in, graph_universe, twin_reduction_polynomials_in,
    vertex_var, PolySystem,
};
use crate::poly::{MPoly, MonomialOrder};

#[derive(Clone, Debug)]
pub struct GeneralOptions {
    pub use_clique: bool,
    pub use_twin: bool,
    /// Coefficient variables fixed to zero before the run, e.g. `a21`.
    pub zero_vars: Vec<String>,
    pub gb: GbConfig,
}

impl Default for GeneralOptions {
    fn default() -> Self {
        GeneralOptions {
            use_clique: true,
            use_twin: false,
            zero_vars: Vec::new(),
            gb: GbConfig::default(),
        }
    }
}

impl GeneralOptions {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "use_clique": self.use_clique,
            "use_twin": self.use_twin,
            "zero_vars": self.zero_vars,
            "max_pairs": self.gb.max_pairs,
            "max_degree": self.gb.max_degree,
            "max_seconds": self.gb.max_seconds,
        })
    }
}

/// The generator list fed to Buchberger: S'(H) plus the requested extras,
/// with `zero_vars` substituted.
pub fn general_system(h: &Graph, d: usize, opts: &GeneralOptions) -> Result<PolySystem, CharIdealError> {
    check_input(h, d)?;
    let u = graph_universe(h.n(), d, &[]);
    let mut sys = completed_system_in(h, d, &u)?;
    if opts.use_clique {
        sys.extend(&clique_polynomials_in(h, d, &u)?);
    }
    if opts.use_twin {
        sys.extend(&twin_reduction_polynomials_in(h, d, &u)?);
    }
    if opts.zero_vars.is_empty() {
        return Ok(sys);
    }
    let mut bindings = Vec::new();
    for name in &opts.zero_vars {
        bindings.push((u.require(name)?, MPoly::zero(&u)));
    }
    let mut out = PolySystem::new(&u);
    for (f, labels) in sys.polys().iter().zip(sys.labels()) {
        let g = f.substitute(&bindings);
        if g.is_zero() {
            continue;
        }
        for l in labels {
            out.push(g.clone(), l.clone());
        }
    }
    Ok(out)
}

pub(super) fn check_input(h: &Graph, d: usize) -> Result<(), CharIdealError> {
    if !h.is_connected() {
        return Err(CharIdealError::Graph(crate::graph::GraphError::Disconnected));
    }
    match h.regular_degree() {
        Some(found) if found == d => Ok(()),
        Some(found) => Err(crate::pairing::PairingError::DegreeMismatch { expected: d, found }.into()),
        None => Err(crate::pairing::PairingError::NotRegular.into()),
    }
}

/// I(H), I_ā(H) and I_{ā,x1}(H) under lex(x_n, ..., x_1, a00, ..., a_dd).
/// Graphs without a DFS labelling are relabelled first; the report keeps
/// the permutation.
pub fn char_ideal_general(h: &Graph, d: usize, opts: &GeneralOptions) -> Result<CharIdealReport, CharIdealError> {
    check_input(h, d)?;
    let start = Instant::now();
    let (g, relabel) = if h.has_dfs_labeling() {
        (h.clone(), None)
    } else {
        let (g, perm) = h.dfs_relabel()?;
        (g, Some(perm))
    };
    let sys = general_system(&g, d, opts)?;
    let u = sys.universe().clone();
    let order = MonomialOrder::lex(&u);
    let strip = StripSet::vertex_differences(&u);
    let built_ms = start.elapsed().as_millis() as u64;
    let mut report = CharIdealReport::empty(&g, d, Pipeline::General, opts.to_json());
    report.relabel = relabel;
    report.system = Some(sys.clone());
    report.timings_ms.insert("system".into(), built_ms);
    let full = match buchberger(sys.polys(), &order, &strip, &opts.gb) {
        Ok(b) => b,
        Err(GbError::CapExceeded(cap)) => {
            report.caps_hit = Some(cap);
            report.timings_ms.insert("groebner".into(), start.elapsed().as_millis() as u64 - built_ms);
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.timings_ms.insert("groebner".into(), full.stats().elapsed_ms);
    let coeffs = u.coefficient_vars();
    let mut with_x1 = coeffs.clone();
    with_x1.push(vertex_var(&u, 1));
    report.char_ideal = Some(full.eliminate(&coeffs)?);
    report.char_ideal_x1 = Some(full.eliminate(&with_x1)?);
    report.full_basis = Some(full);
    report.timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    Ok(report)
}
