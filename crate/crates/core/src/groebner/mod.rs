//! Gröbner bases under lexicographic orders, with optional stripping of
//! `x_i - x_j` factors from every polynomial the algorithm produces.

mod engine;
mod ipoly;

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde_json::json;

use crate::poly::{MPoly, MonomialOrder, PolyError, Rational, VarRole, VarUniverse};
use ipoly::{divides, mask_of, IPoly, Reducer};

/// Resource limits. `None` means unlimited.
#[derive(Clone, Debug)]
pub struct GbConfig {
    pub max_pairs: Option<u64>,
    pub max_degree: Option<u32>,
    pub max_seconds: Option<f64>,
    /// Interval of progress lines on the `log` channel; 0 disables them.
    pub heartbeat_secs: f64,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_pairs: None,
            max_degree: None,
            max_seconds: None,
            heartbeat_secs: 10.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapKind {
    Pairs,
    Degree,
    Time,
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapKind::Pairs => "max pairs",
            CapKind::Degree => "max degree",
            CapKind::Time => "wall-clock budget",
        })
    }
}

/// State of a run that hit a resource cap. `partial` is the current
/// working set, which generates a subideal but is not a Gröbner basis.
#[derive(Clone, Debug)]
pub struct CapReport {
    pub kind: CapKind,
    pub pairs_processed: u64,
    pub basis_size: usize,
    pub queue_len: usize,
    pub elapsed_ms: u64,
    pub partial: Vec<MPoly>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_processed: u64,
    pub pairs_pruned: u64,
    pub zero_reductions: u64,
    pub strips: u64,
    pub rounds: u32,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum GbError {
    #[error("empty generator list")]
    EmptyInput,
    #[error("S-polynomial of a zero polynomial")]
    ZeroInput,
    #[error("bases use different monomial orders")]
    OrderMismatch,
    #[error("order does not eliminate `{0}` before the kept variables")]
    NotEliminationOrder(String),
    #[error("invalid strip element: {0}")]
    BadStrip(String),
    #[error("saturation needs an auxiliary variable `t` ranked first in the order")]
    MissingAuxiliary,
    #[error("resource cap hit ({}) after {} pairs, basis size {}, {} ms", .0.kind, .0.pairs_processed, .0.basis_size, .0.elapsed_ms)]
    CapExceeded(Box<CapReport>),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Linear factors `x_i - x_j` to remove from generated polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StripSet {
    pairs: Vec<(usize, usize)>,
}

impl StripSet {
    pub fn empty() -> StripSet {
        StripSet::default()
    }

    /// Explicit list of `(i, j)` universe indices, each meaning `x_i - x_j`.
    pub fn new(universe: &VarUniverse, pairs: Vec<(usize, usize)>) -> Result<StripSet, GbError> {
        for &(i, j) in &pairs {
            let ok = i != j
                && i < universe.len()
                && j < universe.len()
                && matches!(universe.role(i), VarRole::Vertex(_))
                && matches!(universe.role(j), VarRole::Vertex(_));
            if !ok {
                return Err(GbError::BadStrip(format!("({}, {})", i, j)));
            }
        }
        Ok(StripSet { pairs })
    }

    /// All `x_i - x_j` with `i > j` over the vertex variables of `universe`.
    pub fn vertex_differences(universe: &VarUniverse) -> StripSet {
        let mut vs: Vec<(usize, usize)> = (0..universe.len())
            .filter_map(|v| match universe.role(v) {
                VarRole::Vertex(k) => Some((k, v)),
                _ => None,
            })
            .collect();
        vs.sort();
        let mut pairs = Vec::new();
        for a in (0..vs.len()).rev() {
            for b in 0..a {
                pairs.push((vs[a].1, vs[b].1));
            }
        }
        StripSet { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn as_polys(&self, universe: &Arc<VarUniverse>) -> Vec<MPoly> {
        self.pairs
            .iter()
            .map(|&(i, j)| &MPoly::var(universe, i) - &MPoly::var(universe, j))
            .collect()
    }
}

fn same_order(a: &MonomialOrder, b: &MonomialOrder) -> bool {
    a.names() == b.names() && a.universe().names() == b.universe().names()
}

/// Basis of a polynomial ideal for a fixed lexicographic order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    generators: Vec<MPoly>,
    order: MonomialOrder,
    reduced: bool,
    stats: GbStats,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        self.order.universe()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn normal_form(&self, f: &MPoly) -> MPoly {
        normal_form(f, &self.generators, &self.order)
    }

    pub fn contains(&self, f: &MPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every generator of `other` lies in this ideal.
    pub fn contains_all(&self, other: &[MPoly]) -> bool {
        other.iter().all(|g| self.contains(g))
    }

    /// Term-for-term equality of reduced bases.
    pub fn ideal_equal(&self, other: &GroebnerBasis) -> Result<bool, GbError> {
        if !same_order(&self.order, &other.order) {
            return Err(GbError::OrderMismatch);
        }
        if self.reduced && other.reduced {
            let a: Vec<String> = self.generators.iter().map(|g| g.to_string_by(&self.order)).collect();
            let b: Vec<String> = other.generators.iter().map(|g| g.to_string_by(&other.order)).collect();
            return Ok(a == b);
        }
        Ok(self.contains_all(&other.generators) && other.contains_all(&self.generators))
    }

    /// Generators that only involve `keep`. The discarded variables must
    /// all outrank the kept ones.
    pub fn eliminate(&self, keep: &[usize]) -> Result<GroebnerBasis, GbError> {
        let u = self.universe();
        let min_kept = keep.iter().map(|&v| self.order.rank(v)).min();
        if let Some(min_kept) = min_kept {
            for v in 0..u.len() {
                if !keep.contains(&v) && self.order.rank(v) > min_kept {
                    return Err(GbError::NotEliminationOrder(u.name(v).to_string()));
                }
            }
        }
        Ok(GroebnerBasis {
            generators: self
                .generators
                .iter()
                .filter(|g| g.only_involves(keep))
                .cloned()
                .collect(),
            order: self.order.clone(),
            reduced: self.reduced,
            stats: self.stats.clone(),
        })
    }

    /// Post-hoc check that every S-polynomial reduces to zero. Pairs with
    /// coprime leading monomials are skipped (they always do).
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let ord = &self.order;
        let polys: Vec<IPoly> = self
            .generators
            .iter()
            .map(|g| IPoly::from_mpoly(g, ord).0)
            .collect();
        let masks: Vec<u64> = polys.iter().map(|p| mask_of(p.lm())).collect();
        let find = |t: &[u16], tm: u64| {
            polys.iter().zip(&masks).find_map(|(p, &m)| {
                (m & !tm == 0 && divides(p.lm(), t)).then_some(Reducer { lm: p.lm(), poly: p })
            })
        };
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if ipoly::coprime(polys[i].lm(), polys[j].lm()) {
                    continue;
                }
                let s = IPoly::spoly(&polys[i], &polys[j]);
                let (r, _) = s.reduce(&find, false, None).expect("no deadline");
                if !r.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `{"order": [...], "generators": [...], "reduced": bool}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "order": self.order.names(),
            "generators": self
                .generators
                .iter()
                .map(|g| g.to_string_by(&self.order))
                .collect::<Vec<_>>(),
            "reduced": self.reduced,
        })
    }

    /// The same generators viewed in another universe (matched by name)
    /// under `order`, re-reduced there.
    pub fn transfer(&self, order: &MonomialOrder, cfg: &GbConfig) -> Result<GroebnerBasis, GbError> {
        let gens: Vec<MPoly> = self
            .generators
            .iter()
            .map(|g| g.transfer(order.universe()))
            .collect::<Result<_, _>>()?;
        if gens.is_empty() {
            return Ok(GroebnerBasis {
                generators: gens,
                order: order.clone(),
                reduced: true,
                stats: GbStats::default(),
            });
        }
        buchberger(&gens, order, &StripSet::empty(), cfg)
    }
}

/// Lcm-cancellation S-polynomial over the rationals.
pub fn s_polynomial(f: &MPoly, g: &MPoly, order: &MonomialOrder) -> Result<MPoly, GbError> {
    f.check_universe(g)?;
    let (mf, cf) = f.leading_by(order).ok_or(GbError::ZeroInput)?;
    let (mg, cg) = g.leading_by(order).ok_or(GbError::ZeroInput)?;
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&l.div(mf), &cf.recip());
    let b = g.mul_monomial(&l.div(mg), &cg.recip());
    Ok(&a - &b)
}

/// Remainder of multivariate division of `f` by `gens` (first divisor in
/// list order), exact over the rationals.
pub fn normal_form(f: &MPoly, gens: &[MPoly], order: &MonomialOrder) -> MPoly {
    let (fi, den) = IPoly::from_mpoly(f, order);
    let polys: Vec<IPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| IPoly::from_mpoly(g, order).0)
        .collect();
    let masks: Vec<u64> = polys.iter().map(|p| mask_of(p.lm())).collect();
    let find = |t: &[u16], tm: u64| {
        polys.iter().zip(&masks).find_map(|(p, &m)| {
            (m & !tm == 0 && divides(p.lm(), t)).then_some(Reducer { lm: p.lm(), poly: p })
        })
    };
    let (r, mult) = fi.reduce(find, true, None).expect("no deadline");
    let scale = (mult * Rational::from_integer(den)).recip();
    let out = r.to_mpoly(order);
    if scale.is_one() {
        out
    } else {
        out.scale(&scale)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, with every
/// strip factor removed from every polynomial admitted along the way.
pub fn buchberger(
    gens: &[MPoly],
    order: &MonomialOrder,
    strip: &StripSet,
    cfg: &GbConfig,
) -> Result<GroebnerBasis, GbError> {
    if gens.is_empty() {
        return Err(GbError::EmptyInput);
    }
    for g in gens {
        if **g.universe() != **order.universe() {
            return Err(PolyError::UniverseMismatch.into());
        }
    }
    let out = engine::run(gens, order, strip, cfg)?;
    let generators = out
        .basis
        .iter()
        .map(|p| p.to_mpoly(order).normalized_by(order))
        .collect();
    Ok(GroebnerBasis {
        generators,
        order: order.clone(),
        reduced: true,
        stats: out.stats,
    })
}

/// Saturation `(gens : h^inf)` by adjoining `t*h - 1` and eliminating `t`.
pub fn saturation_rabinowitsch(
    gens: &[MPoly],
    h: &MPoly,
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis, GbError> {
    let u = order.universe();
    let t = u.index("t").ok_or(GbError::MissingAuxiliary)?;
    if order.rank(t) != 0 {
        return Err(GbError::MissingAuxiliary);
    }
    let mut all = gens.to_vec();
    if h.is_zero() {
        return buchberger(&[MPoly::one(u)], order, &StripSet::empty(), cfg);
    }
    if !(h.is_constant()) {
        all.push(&(&MPoly::var(u, t) * h) - &MPoly::one(u));
    }
    let b = buchberger(&all, order, &StripSet::empty(), cfg)?;
    let keep: Vec<usize> = (0..u.len()).filter(|&v| v != t).collect();
    b.eliminate(&keep)
}

/// Builds the reduced basis of an ideal given by trusted generators.
pub fn reduced_basis(gens: &[MPoly], order: &MonomialOrder, cfg: &GbConfig) -> Result<GroebnerBasis, GbError> {
    let nonzero: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(GroebnerBasis {
            generators: Vec::new(),
            order: order.clone(),
            reduced: true,
            stats: GbStats::default(),
        });
    }
    buchberger(&nonzero, order, &StripSet::empty(), cfg)
}

#[cfg(test)]
mod tests;
