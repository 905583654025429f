//! Characteristic ideals: the general algorithm, the cycle recurrence and
//! the complete-graph reduction, plus classification and membership.

mod complete;
mod cycle;
mod general;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

pub use complete::{
    check_inclusions, complete_char_ideal, complete_linear_solution, complete_symmetric_system,
    shift_indices, zero_top_coefficients, CompleteOptions, MAX_COMPLETE, MIN_COMPLETE, InclusionReport, K6_PRESET_ZERO,
};
pub use cycle::{cycle_delta, cycle_universe, iterate, CycleResult, RationalFunctionPair, MAX_CYCLE, MIN_CYCLE};
pub use general::{char_ideal_general, general_system, GeneralOptions};

use crate::graph::{Graph, GraphError};
use crate::groebner::{CapReport, GbError, GroebnerBasis};
use crate::pairing::{PairingError, PolySystem};
use crate::poly::{MPoly, PolyError, Rational, VarRole, VarUniverse};

#[derive(Debug, thiserror::Error)]
pub enum CharIdealError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("size {0} is outside the supported range")]
    UnsupportedSize(usize),
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("remainder for the {0}-cycle has no coefficient-only factor")]
    EmptyContent(usize),
    #[error("linear solve failed: {0}")]
    LinearSolve(String),
    #[error("expression is not symmetric in the vertex variables")]
    Symmetrization,
    #[error("missing characteristic ideal for {0}")]
    MissingBasis(String),
    #[error("coefficient {0} is not assigned")]
    IncompleteAssignment(String),
    #[error("polynomial is not symmetric in x and y")]
    Asymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    General,
    Cycle,
    Complete,
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pipeline::General => "general",
            Pipeline::Cycle => "cycle",
            Pipeline::Complete => "complete",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CharIdealReport {
    pub graph: Graph,
    pub degree: usize,
    pub pipeline: Pipeline,
    /// Old label -> new label, when the graph had to be relabelled.
    pub relabel: Option<Vec<usize>>,
    pub system: Option<PolySystem>,
    pub full_basis: Option<GroebnerBasis>,
    pub char_ideal: Option<GroebnerBasis>,
    pub char_ideal_x1: Option<GroebnerBasis>,
    /// Set when a Gröbner run hit a cap; the bases are then absent.
    pub caps_hit: Option<Box<CapReport>>,
    pub s_n_free: Option<bool>,
    pub config: serde_json::Value,
    pub timings_ms: BTreeMap<String, u64>,
}

impl CharIdealReport {
    pub(crate) fn empty(g: &Graph, d: usize, pipeline: Pipeline, config: serde_json::Value) -> Self {
        CharIdealReport {
            graph: g.clone(),
            degree: d,
            pipeline,
            relabel: None,
            system: None,
            full_basis: None,
            char_ideal: None,
            char_ideal_x1: None,
            caps_hit: None,
            s_n_free: None,
            config,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.caps_hit.is_none() && self.char_ideal.is_some()
    }

    pub fn char_ideal(&self) -> Result<&GroebnerBasis, CharIdealError> {
        self.char_ideal
            .as_ref()
            .ok_or_else(|| CharIdealError::MissingBasis(format!("{} vertices", self.graph.n())))
    }

    /// Every generator of each ideal lies in the next one up the chain
    /// I_ā ⊆ I_{ā,x1} ⊆ I.
    pub fn chain_holds(&self) -> bool {
        let links = [
            (&self.char_ideal, &self.char_ideal_x1),
            (&self.char_ideal_x1, &self.full_basis),
        ];
        links.iter().all(|(small, big)| match (small, big) {
            (Some(s), Some(b)) => b.contains_all(s.generators()),
            _ => true,
        })
    }

    pub fn to_json(&self, verdict: Option<&Verdict>, timings: bool) -> serde_json::Value {
        let mut v = json!({
            "graph": self.graph,
            "degree": self.degree,
            "pipeline": self.pipeline.to_string(),
            "config": self.config,
            "char_ideal": self.char_ideal.as_ref().map(|b| b.to_json()),
            "char_ideal_x1": self.char_ideal_x1.as_ref().map(|b| b.to_json()),
            "full_basis_size": self.full_basis.as_ref().map(|b| b.len()),
        });
        let obj = v.as_object_mut().unwrap();
        if let Some(b) = &self.full_basis {
            obj.insert("order".into(), json!(b.order().names()));
            obj.insert("stats".into(), json!({
                "pairs_processed": b.stats().pairs_processed,
                "pairs_pruned": b.stats().pairs_pruned,
                "zero_reductions": b.stats().zero_reductions,
                "strips": b.stats().strips,
            }));
        }
        if let Some(p) = &self.relabel {
            obj.insert("relabel".into(), json!(p));
        }
        if let Some(c) = &self.caps_hit {
            obj.insert("caps_hit".into(), json!({
                "kind": c.kind.to_string(),
                "pairs_processed": c.pairs_processed,
                "basis_size": c.basis_size,
                "queue_len": c.queue_len,
            }));
        }
        if let Some(s) = self.s_n_free {
            obj.insert("s_n_free".into(), json!(s));
        }
        if let Some(v) = verdict {
            obj.insert("verdict".into(), json!(v.to_string()));
        }
        if timings {
            obj.insert("timings_ms".into(), json!(self.timings_ms));
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotPolynomial,
    StronglyPolynomial,
    PolynomialNotStrongly,
    /// A resource cap stopped the computation.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotPolynomial => "NotPolynomial",
            Verdict::StronglyPolynomial => "StronglyPolynomial",
            Verdict::PolynomialNotStrongly => "PolynomialNotStrongly",
            Verdict::Inconclusive => "inconclusive: caps",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub report: CharIdealReport,
    /// None when the graph is too large for the automorphism search.
    pub vertex_transitive: Option<bool>,
    pub complete_graph: bool,
    /// StronglyPolynomial for a graph that is not vertex-transitive.
    pub inconsistent: bool,
}

impl ClassificationResult {
    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let mut v = self.report.to_json(Some(&self.verdict), timings);
        let obj = v.as_object_mut().unwrap();
        obj.insert("vertex_transitive".into(), json!(self.vertex_transitive));
        obj.insert("complete_graph".into(), json!(self.complete_graph));
        obj.insert("inconsistent".into(), json!(self.inconsistent));
        v
    }
}

/// Verdict from the two elimination ideals.
pub fn verdict_of(report: &CharIdealReport) -> Result<Verdict, CharIdealError> {
    let (Some(ci), true) = (&report.char_ideal, report.caps_hit.is_none()) else {
        return Ok(Verdict::Inconclusive);
    };
    if ci.is_unit() {
        return Ok(Verdict::NotPolynomial);
    }
    match &report.char_ideal_x1 {
        Some(x1) if x1.ideal_equal(ci)? => Ok(Verdict::StronglyPolynomial),
        Some(_) => Ok(Verdict::PolynomialNotStrongly),
        // Complete graphs: a proper characteristic ideal already means
        // strongly polynomial.
        None => Ok(Verdict::StronglyPolynomial),
    }
}

fn is_complete_graph(h: &Graph) -> bool {
    h.n() >= 2 && h.edge_count() == h.n() * (h.n() - 1) / 2
}

/// Runs the appropriate pipeline and applies the three-case verdict.
/// Complete graphs on 3 to 6 vertices go through the symmetric reduction.
pub fn classify(h: &Graph, d: usize, opts: &GeneralOptions) -> Result<ClassificationResult, CharIdealError> {
    general::check_input(h, d)?;
    let complete_graph = is_complete_graph(h);
    let report = if complete_graph && (complete::MIN_COMPLETE..=complete::MAX_COMPLETE).contains(&h.n()) {
        let copts = CompleteOptions { gb: opts.gb.clone(), zero_vars: opts.zero_vars.clone(), ..Default::default() };
        complete_char_ideal(h.n(), &copts)?
    } else {
        char_ideal_general(h, d, opts)?
    };
    let verdict = verdict_of(&report)?;
    let vertex_transitive = match h.is_vertex_transitive() {
        Ok(b) => Some(b),
        Err(GraphError::TooLarge(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let inconsistent = verdict == Verdict::StronglyPolynomial && vertex_transitive == Some(false);
    if inconsistent {
        log::warn!("strongly polynomial verdict for a graph that is not vertex-transitive");
    }
    Ok(ClassificationResult { verdict, report, vertex_transitive, complete_graph, inconsistent })
}

/// Coefficient assignment a_ij of a concrete symmetric Φ(x, y) of partial
/// degree at most `d`. Unlisted coefficients are zero.
pub fn coefficient_assignment(phi: &MPoly, d: usize) -> Result<BTreeMap<String, Rational>, CharIdealError> {
    let u = phi.universe();
    let (sx, sy) = match (u.resolve("x"), u.resolve("y")) {
        (Some(x), Some(y)) => (x, y),
        (Some(x), None) => (x, usize::MAX),
        (None, Some(y)) => (usize::MAX, y),
        (None, None) => (usize::MAX, usize::MAX),
    };
    let mut out = BTreeMap::new();
    for name in crate::poly::coeff_names(d) {
        out.insert(name, Rational::from_integer(0.into()));
    }
    let mut seen: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (m, c) in phi.terms() {
        let e = |v: usize| if v == usize::MAX { 0 } else { m.0[v] as usize };
        let (i, j) = (e(sx), e(sy));
        if m.degree() as usize != i + j {
            return Err(PolyError::UnknownVariable(format!("{}", phi)).into());
        }
        if i > d || j > d {
            return Err(PolyError::BadDegree(i.max(j)).into());
        }
        seen.insert((i, j), c.clone());
    }
    for (&(i, j), c) in &seen {
        if seen.get(&(j, i)) != Some(c) {
            return Err(CharIdealError::Asymmetric);
        }
        out.insert(crate::poly::coeff_name(i, j), c.clone());
    }
    Ok(out)
}

/// Value of every generator at the given coefficients.
pub fn membership_evaluations(
    coeffs: &BTreeMap<String, Rational>,
    char_ideal: &GroebnerBasis,
) -> Result<Vec<Rational>, CharIdealError> {
    let u: &VarUniverse = char_ideal.universe();
    let mut values = vec![Rational::from_integer(0.into()); u.len()];
    for v in 0..u.len() {
        if let VarRole::Coefficient(..) = u.role(v) {
            let name = u.name(v);
            let val = coeffs
                .get(name)
                .ok_or_else(|| CharIdealError::IncompleteAssignment(name.to_string()))?;
            values[v] = val.clone();
        }
    }
    for g in char_ideal.generators() {
        for v in g.variables() {
            if !matches!(u.role(v), VarRole::Coefficient(..)) {
                return Err(CharIdealError::IncompleteAssignment(u.name(v).to_string()));
            }
        }
    }
    Ok(char_ideal.generators().iter().map(|g| g.eval(&values)).collect())
}

/// Every generator vanishes at `coeffs`.
pub fn verify_membership(
    coeffs: &BTreeMap<String, Rational>,
    char_ideal: &GroebnerBasis,
) -> Result<bool, CharIdealError> {
    Ok(membership_evaluations(coeffs, char_ideal)?.iter().all(|v| *v == Rational::from_integer(0.into())))
}
