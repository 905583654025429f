//! Cycles through the root-sum recurrence v_n = -v_{n-2} - b(v_{n-1})/a(v_{n-1}).

use std::sync::Arc;

use super::CharIdealError;
use crate::poly::{build_generic_phi, coeff_names, content, coprime_by_images, pseudo_remainder, MPoly, MonomialOrder, VarUniverse};

/// v = p/q in ℚ[v0, v1, ā]. The denominator is kept as a product of
/// factors so common factors can be cancelled by trial division.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionPair {
    pub p: MPoly,
    pub q: MPoly,
    q_factors: Vec<MPoly>,
}

impl RationalFunctionPair {
    fn new(p: MPoly, q_factors: Vec<MPoly>) -> RationalFunctionPair {
        let mut q = MPoly::one(p.universe());
        for f in &q_factors {
            q = &q * f;
        }
        RationalFunctionPair { p, q, q_factors }
    }

    /// Cancels every factor of q that divides p.
    fn reduce(mut self) -> RationalFunctionPair {
        let mut kept = Vec::with_capacity(self.q_factors.len());
        for f in std::mem::take(&mut self.q_factors) {
            match self.p.divide_exact(&f) {
                Ok(r) => self.p = r,
                Err(_) => kept.push(f),
            }
        }
        let out = RationalFunctionPair::new(self.p, kept);
        if !coprime_by_images(&out.p, &out.q) {
            log::warn!("cycle recurrence: numerator and denominator may share a factor");
        }
        out
    }

    /// gcd(p, q) is constant, by a modular test.
    pub fn is_reduced(&self) -> bool {
        coprime_by_images(&self.p, &self.q)
    }
}

/// Splits `f` by the known factors, recording any new cofactor.
fn split(mut f: MPoly, known: &mut Vec<MPoly>) -> Vec<MPoly> {
    let mut out = Vec::new();
    for k in known.iter() {
        while let Ok(r) = f.divide_exact(k) {
            out.push(k.clone());
            f = r;
        }
    }
    if !f.is_constant() {
        known.push(f.clone());
    }
    out.push(f);
    out
}

/// Universe `v1, v0, a00, ..., a22`; its natural lex order is lex(v1, v0, ā).
pub fn cycle_universe() -> Arc<VarUniverse> {
    let mut names = vec!["v1".to_string(), "v0".to_string()];
    names.extend(coeff_names(2));
    VarUniverse::new(&names).expect("well-formed names")
}

pub const MIN_CYCLE: usize = 3;
pub const MAX_CYCLE: usize = 6;

/// Output of the cycle pipeline, with the intermediate objects kept.
#[derive(Clone, Debug)]
pub struct CycleResult {
    pub n: usize,
    pub delta: MPoly,
    pub k_n: MPoly,
    pub remainder: MPoly,
    /// Power of lc(Φ(v0, v1)) in v1 from the pseudo-division.
    pub multiplier_exponent: u32,
}

/// a(p,q), b(p,q): the homogenised y² and y coefficients of Φ(x, y).
fn homogenised(u: &Arc<VarUniverse>, v: &RationalFunctionPair) -> (MPoly, MPoly) {
    let a = |n: &str| MPoly::var_named(u, n).unwrap();
    let pp = &v.p * &v.p;
    let pq = &v.p * &v.q;
    let qq = &v.q * &v.q;
    let big_a = &(&(&a("a22") * &pp) + &(&a("a21") * &pq)) + &(&a("a20") * &qq);
    let big_b = &(&(&a("a21") * &pp) + &(&a("a11") * &pq)) + &(&a("a10") * &qq);
    (big_a, big_b)
}

/// Largest product-term estimate attempted for one recurrence step.
pub const MAX_STEP_PRODUCTS: usize = 1_000_000_000;

/// v_n as a reduced fraction, starting from free values v0 and v1.
pub fn iterate(n: usize) -> Result<Vec<RationalFunctionPair>, CharIdealError> {
    let u = cycle_universe();
    let mut seq = vec![
        RationalFunctionPair::new(MPoly::var_named(&u, "v0").unwrap(), Vec::new()),
        RationalFunctionPair::new(MPoly::var_named(&u, "v1").unwrap(), Vec::new()),
    ];
    let mut known = Vec::new();
    for k in 2..=n {
        let prev = &seq[k - 1];
        let prev2 = &seq[k - 2];
        let estimate = prev.p.len().max(prev.q.len()).pow(2).saturating_mul(prev2.p.len().max(prev2.q.len()));
        if estimate > MAX_STEP_PRODUCTS {
            return Err(CharIdealError::TooLarge(format!(
                "step {} of the {}-cycle recurrence needs about {} term products",
                k, n, estimate
            )));
        }
        let (a, b) = homogenised(&u, prev);
        let p = &(-&(&prev2.p * &a)) - &(&prev2.q * &b);
        let mut factors = prev2.q_factors.clone();
        factors.extend(split(a, &mut known));
        seq.push(RationalFunctionPair::new(p, factors).reduce());
        log::debug!("cycle recurrence: v{} has {} + {} terms", k, seq[k].p.len(), seq[k].q.len());
    }
    Ok(seq)
}

/// Δ_n: the ā-only factor of K_n = p_n - v0 q_n modulo Φ(v0, v1).
pub fn cycle_delta(n: usize) -> Result<CycleResult, CharIdealError> {
    if !(MIN_CYCLE..=MAX_CYCLE).contains(&n) {
        return Err(CharIdealError::UnsupportedSize(n));
    }
    let u = cycle_universe();
    let v0 = u.index("v0").unwrap();
    let v1 = u.index("v1").unwrap();
    let seq = iterate(n)?;
    let last = &seq[n];
    let k_n = &last.p - &(&MPoly::var(&u, v0) * &last.q);
    let phi = build_generic_phi(2, &u, v0, v1)?;
    let (remainder, k) = pseudo_remainder(&k_n, &phi, v1);
    let mut delta = content(&remainder, &[v0, v1]);
    if delta.is_zero() || !delta.only_involves(&u.coefficient_vars()) || delta.is_constant() {
        return Err(CharIdealError::EmptyContent(n));
    }
    let lc = phi.as_univariate(v1).pop().unwrap();
    if lc.only_involves(&u.coefficient_vars()) {
        for _ in 0..k {
            match delta.divide_exact(&lc) {
                Ok(q) if !q.is_constant() => delta = q,
                _ => break,
            }
        }
    }
    let delta = delta.normalized_by(&MonomialOrder::lex(&u));
    Ok(CycleResult { n, delta, k_n, remainder, multiplier_exponent: k })
}
