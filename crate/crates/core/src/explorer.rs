//! Numerical exploration of G(Φ) for a concrete Φ: components by
//! breadth-first root finding, singularity flags, comparison with a
//! target graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::graph::{Graph, GraphError};
use crate::poly::{content, gcd, linalg, MPoly, Rational, VarUniverse};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ExplorerError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not symmetric in x and y")]
    Asymmetric,
    #[error("polynomial must use only the variables x and y")]
    BadVariables,
    #[error("root finding did not converge at vertex {0}")]
    RootFinding(String),
    #[error("not comparable: {0}")]
    NotComparable(String),
    #[error("bad complex number `{0}`")]
    BadComplex(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Φ(x, y) = Σ c_ij x^i y^j with c_ij = c_ji.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcretePoly {
    degree: usize,
    /// `coeffs[i][j]`, square of side degree + 1.
    coeffs: Vec<Vec<Complex64>>,
    exact: Option<MPoly>,
}

fn slot_vars(universe: &VarUniverse) -> Result<(Option<usize>, Option<usize>), ExplorerError> {
    let x = universe.resolve("x");
    let y = universe.resolve("y");
    for v in 0..universe.len() {
        if Some(v) != x && Some(v) != y {
            return Err(ExplorerError::BadVariables);
        }
    }
    Ok((x, y))
}

impl ConcretePoly {
    /// From an exact polynomial in `x`, `y`.
    pub fn from_mpoly(phi: &MPoly) -> Result<ConcretePoly, ExplorerError> {
        if phi.is_zero() {
            return Err(ExplorerError::ZeroPolynomial);
        }
        let used = phi.variables();
        let u = phi.universe();
        let (x, y) = slot_vars(u).or_else(|e| {
            // Unused extra variables are harmless.
            let x = u.resolve("x");
            let y = u.resolve("y");
            if used.iter().all(|v| Some(*v) == x || Some(*v) == y) {
                Ok((x, y))
            } else {
                Err(e)
            }
        })?;
        let e = |m: &crate::poly::Monomial, v: Option<usize>| v.map(|v| m.0[v] as usize).unwrap_or(0);
        let degree = phi
            .terms()
            .iter()
            .map(|(m, _)| e(m, x).max(e(m, y)))
            .max()
            .unwrap_or(0);
        let mut exact_coeffs = vec![vec![Rational::zero(); degree + 1]; degree + 1];
        for (m, c) in phi.terms() {
            exact_coeffs[e(m, x)][e(m, y)] = c.clone();
        }
        for i in 0..=degree {
            for j in 0..i {
                if exact_coeffs[i][j] != exact_coeffs[j][i] {
                    return Err(ExplorerError::Asymmetric);
                }
            }
        }
        let coeffs = exact_coeffs
            .iter()
            .map(|row| row.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect())
            .collect();
        Ok(ConcretePoly { degree, coeffs, exact: Some(phi.clone()) })
    }

    /// From complex coefficients keyed by (i, j); missing mirror entries
    /// are filled in, conflicting ones rejected.
    pub fn from_coefficients(map: &BTreeMap<(usize, usize), Complex64>) -> Result<ConcretePoly, ExplorerError> {
        let degree = map
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), _)| i.max(j))
            .max()
            .ok_or(ExplorerError::ZeroPolynomial)?;
        let mut coeffs = vec![vec![Complex64::zero(); degree + 1]; degree + 1];
        for (&(i, j), &c) in map {
            if i > degree || j > degree {
                continue;
            }
            if let Some(&other) = map.get(&(j, i)) {
                if other != c {
                    return Err(ExplorerError::Asymmetric);
                }
            }
            coeffs[i][j] = c;
            coeffs[j][i] = c;
        }
        Ok(ConcretePoly { degree, coeffs, exact: None })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, i: usize, j: usize) -> Complex64 {
        self.coeffs.get(i).and_then(|r| r.get(j)).copied().unwrap_or_default()
    }

    pub fn exact(&self) -> Option<&MPoly> {
        self.exact.as_ref()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.in_y(x).iter().rev().fold(Complex64::zero(), |acc, &c| acc * y + c)
    }

    /// Σ |c_ij| |x|^i |y|^j, the natural size of Φ(x, y).
    pub fn scale(&self, x: Complex64, y: Complex64) -> f64 {
        let (ax, ay) = (x.norm(), y.norm());
        let mut s = 0.0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                s += c.norm() * ax.powi(i as i32) * ay.powi(j as i32);
            }
        }
        s
    }

    /// Coefficients of Φ(x, y) as a polynomial in y, lowest first.
    pub fn in_y(&self, x: Complex64) -> Vec<Complex64> {
        (0..=self.degree)
            .map(|j| (0..=self.degree).rev().fold(Complex64::zero(), |acc, i| acc * x + self.coeffs[i][j]))
            .collect()
    }

    /// The leading y-coefficient a_d(x).
    pub fn leading(&self, x: Complex64) -> Complex64 {
        self.in_y(x)[self.degree]
    }

    fn leading_scale(&self, x: Complex64) -> f64 {
        let ax = x.norm();
        self.coeffs.iter().enumerate().map(|(i, r)| r[self.degree].norm() * ax.powi(i as i32)).sum()
    }
}

/// The three standardness criteria that can be decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardnessReport {
    /// gcd(Φ, ∂Φ/∂y) has degree 0 in y.
    pub square_free: bool,
    /// Φ(x, x) is not identically zero.
    pub diagonal_nonzero: bool,
    /// The content of Φ in y (a polynomial in x) is constant.
    pub no_univariate_factor: bool,
}

impl StandardnessReport {
    pub fn is_standard(&self) -> bool {
        self.square_free && self.diagonal_nonzero && self.no_univariate_factor
    }
}

pub fn standardness_report(phi: &MPoly) -> Result<StandardnessReport, ExplorerError> {
    if phi.is_zero() {
        return Err(ExplorerError::ZeroPolynomial);
    }
    let u = phi.universe();
    let (Some(x), Some(y)) = (u.resolve("x"), u.resolve("y")) else {
        return Err(ExplorerError::BadVariables);
    };
    let g = gcd(phi, &phi.derivative(y));
    let diag = phi.substitute(&[(y, MPoly::var(u, x))]);
    let c = content(phi, &[y]);
    Ok(StandardnessReport {
        square_free: g.degree_in(y) == 0,
        diagonal_nonzero: !diag.is_zero(),
        no_univariate_factor: c.is_constant(),
    })
}

/// Roots with multiplicity, plus how many leading coefficients were
/// dropped as numerically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Roots {
    pub roots: Vec<Complex64>,
    pub trimmed: usize,
}

fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Aberth–Ehrlich iteration with a Newton polish. `p` is lowest degree
/// first; leading coefficients below `tol` times the largest are trimmed.
pub fn roots_univariate(p: &[Complex64], tol: f64) -> Result<Roots, ExplorerError> {
    let big = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if big == 0.0 {
        return Err(ExplorerError::ZeroPolynomial);
    }
    let mut n = p.len();
    while p[n - 1].norm() <= tol * big {
        n -= 1;
    }
    let trimmed = p.len() - n;
    let p = &p[..n];
    let deg = n - 1;
    if deg == 0 {
        return Ok(Roots { roots: Vec::new(), trimmed });
    }
    // Roots at zero are split off exactly.
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    let q = &p[zeros..];
    let m = q.len() - 1;
    let mut roots = vec![Complex64::zero(); zeros];
    if m > 0 {
        let lead = q[m];
        let radius = q[..m].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max).max(1e-3);
        let radius = radius.powf(1.0 / m as f64).min(1.0 + radius);
        let mut z: Vec<Complex64> = (0..m)
            .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / m as f64 + 0.4))
            .collect();
        let mut converged = false;
        for _ in 0..1000 {
            let mut worst: f64 = 0.0;
            for k in 0..m {
                let (v, d) = horner(q, z[k]);
                if v.is_zero() {
                    continue;
                }
                let ratio = v / d;
                let sum: Complex64 = (0..m).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
                if w.is_finite() {
                    z[k] -= w;
                    worst = worst.max(w.norm() / z[k].norm().max(1.0));
                }
            }
            if worst < 1e-15 {
                converged = true;
                break;
            }
        }
        for r in z.iter_mut() {
            for _ in 0..3 {
                let (v, d) = horner(q, *r);
                if d.is_zero() {
                    break;
                }
                let step = v / d;
                if !step.is_finite() {
                    break;
                }
                *r -= step;
            }
        }
        let ok = z.iter().all(|&r| {
            let (v, _) = horner(q, r);
            let s: f64 = q.iter().enumerate().map(|(i, c)| c.norm() * r.norm().powi(i as i32)).sum();
            v.norm() <= 1e3 * tol.max(1e-12) * s.max(f64::MIN_POSITIVE)
        });
        if !converged && !ok {
            return Err(ExplorerError::RootFinding(format!("degree {}", m)));
        }
        roots.extend(z);
    }
    Ok(Roots { roots, trimmed })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VertexFlags {
    /// a_d(u) vanishes, so u has fewer than d neighbours.
    pub defective: bool,
    /// Φ(u, u) vanishes.
    pub loop_: bool,
    /// Φ(u, y) has a repeated root.
    pub repeated_root: bool,
}

impl VertexFlags {
    pub fn any(&self) -> bool {
        self.defective || self.loop_ || self.repeated_root
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentGraph {
    pub vertices: Vec<Complex64>,
    /// Index pairs (i < j), sorted.
    pub edges: Vec<(usize, usize)>,
    pub flags: Vec<VertexFlags>,
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExploreOptions {
    /// Relative residual tolerance for roots and edges.
    pub tol: f64,
    /// Vertices closer than this (relative to max(1, |v|)) are merged.
    pub merge_tol: f64,
    pub cap: usize,
}

pub const DEFAULT_CAP: usize = 256;

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { tol: 1e-10, merge_tol: 1e-8, cap: DEFAULT_CAP }
    }
}

impl ExploreOptions {
    /// Cap of ten times the target's order.
    pub fn for_target(h: &Graph) -> Self {
        ExploreOptions { cap: 10 * h.n(), ..Default::default() }
    }
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

impl ComponentGraph {
    pub fn is_clean(&self) -> bool {
        !self.truncated && self.flags.iter().all(|f| !f.any())
    }

    pub fn has_flags(&self) -> bool {
        self.flags.iter().any(|f| f.any())
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// The underlying graph, vertices numbered from 1 in discovery order.
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        Graph::new(self.vertices.len(), &edges)
    }

    /// Largest |Φ(u, v)| / scale over the edges.
    pub fn max_relative_residual(&self, phi: &ConcretePoly) -> f64 {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (self.vertices[a], self.vertices[b]);
                phi.eval(u, v).norm() / phi.scale(u, v).max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph component {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let f = &self.flags[i];
            let _ = write!(s, "  {} [label=\"{}\"", i, format_complex(*v));
            for (on, name) in [(f.defective, "defective"), (f.loop_, "loop"), (f.repeated_root, "repeated_root")] {
                if on {
                    let _ = write!(s, ", {}=true", name);
                }
            }
            s.push_str("];\n");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  {} -- {};", a, b);
        }
        if self.truncated {
            s.push_str("  truncated=true;\n");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertices": self.vertices.iter().map(|v| format_complex(*v)).collect::<Vec<_>>(),
            "edges": self.edges,
            "flags": self.flags.iter().map(|f| json!({
                "defective": f.defective,
                "loop": f.loop_,
                "repeated_root": f.repeated_root,
            })).collect::<Vec<_>>(),
            "truncated": self.truncated,
        })
    }
}

fn format_fixed(x: f64, prec: usize) -> String {
    let mut s = format!("{:.*}", prec, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// `a+bi` to 6 significant digits of the larger part.
pub fn format_complex(z: Complex64) -> String {
    let m = z.re.abs().max(z.im.abs());
    if m == 0.0 || !m.is_finite() {
        return if m == 0.0 { "0".into() } else { format!("{}+{}i", z.re, z.im) };
    }
    let prec = (5 - m.log10().floor() as i32).max(0) as usize;
    let re = format_fixed(z.re, prec);
    let im = format_fixed(z.im, prec);
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{}i", im),
        _ if im.starts_with('-') => format!("{}{}i", re, im),
        _ => format!("{}+{}i", re, im),
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(text: &str) -> Result<Complex64, ExplorerError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || ExplorerError::BadComplex(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|r| Complex64::new(r, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// Breadth-first closure of `seed` under y ↦ roots of Φ(·, y).
pub fn explore_component(
    phi: &ConcretePoly,
    seed: Complex64,
    opts: &ExploreOptions,
) -> Result<ComponentGraph, ExplorerError> {
    let cap = opts.cap.max(1);
    let mut vertices = vec![seed];
    let mut flags = vec![VertexFlags::default()];
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let u = vertices[i];
        let poly = phi.in_y(u);
        let roots = roots_univariate(&poly, opts.tol).map_err(|_| ExplorerError::RootFinding(format_complex(u)))?;
        let mut f = VertexFlags {
            defective: phi.leading(u).norm() <= opts.merge_tol * phi.leading_scale(u).max(f64::MIN_POSITIVE),
            loop_: phi.eval(u, u).norm() <= opts.tol * phi.scale(u, u).max(f64::MIN_POSITIVE),
            repeated_root: false,
        };
        f.defective |= roots.roots.len() < phi.degree();
        let rs = &roots.roots;
        for a in 0..rs.len() {
            for b in a + 1..rs.len() {
                if close(rs[a], rs[b], opts.merge_tol) {
                    f.repeated_root = true;
                }
            }
        }
        flags[i] = f;
        for &r in rs {
            let j = match vertices.iter().position(|&v| close(r, v, opts.merge_tol)) {
                Some(j) => j,
                None => {
                    if vertices.len() >= cap {
                        truncated = true;
                        continue;
                    }
                    vertices.push(r);
                    flags.push(VertexFlags::default());
                    queue.push_back(vertices.len() - 1);
                    vertices.len() - 1
                }
            };
            if j == i {
                flags[i].loop_ = true;
                continue;
            }
            let v = vertices[j];
            if phi.eval(u, v).norm() <= opts.tol * phi.scale(u, v).max(f64::MIN_POSITIVE) {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    Ok(ComponentGraph { vertices, edges: edges.into_iter().collect(), flags, truncated })
}

/// Whether a clean component is isomorphic to `h`.
pub fn matches_target(c: &ComponentGraph, h: &Graph) -> Result<bool, ExplorerError> {
    if c.truncated {
        return Err(ExplorerError::NotComparable("component is truncated".into()));
    }
    if c.has_flags() {
        return Err(ExplorerError::NotComparable("component has singular vertices".into()));
    }
    if c.vertices.len() != h.n() {
        return Ok(false);
    }
    Ok(c.to_graph()?.is_isomorphic(h)?)
}

#[derive(Clone, Debug)]
pub struct SampleReport {
    pub n_seeds: usize,
    pub clean: usize,
    pub matches: usize,
    /// matches / clean; None when no component was clean.
    pub match_rate: Option<f64>,
    /// Components with a flagged vertex.
    pub singular_count: usize,
    pub truncated_count: usize,
    /// Seeds within merge tolerance of a singular locus.
    pub seeds_near_singular: usize,
    pub mismatch_examples: Vec<ComponentGraph>,
}

impl SampleReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n_seeds": self.n_seeds,
            "clean": self.clean,
            "matches": self.matches,
            "match_rate": self.match_rate,
            "singular_count": self.singular_count,
            "truncated_count": self.truncated_count,
            "seeds_near_singular": self.seeds_near_singular,
            "mismatch_examples": self.mismatch_examples.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

const MAX_MISMATCH_EXAMPLES: usize = 5;

/// Seeds drawn uniformly from the disc of radius 2.
pub fn sample_seeds(n: usize, rng_seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..n)
        .map(|_| {
            let r = 2.0 * rng.random::<f64>().sqrt();
            let t = 2.0 * std::f64::consts::PI * rng.random::<f64>();
            Complex64::from_polar(r, t)
        })
        .collect()
}

fn to_complex_univariate(f: &MPoly, var: usize) -> Vec<Complex64> {
    f.as_univariate(var)
        .iter()
        .map(|c| Complex64::new(c.constant_term().to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

/// Roots of a_d(x), of disc_y Φ and of Φ(x, x), when Φ is exact.
pub fn singular_locus(phi: &ConcretePoly, tol: f64) -> Vec<Complex64> {
    let Some(f) = phi.exact() else {
        return Vec::new();
    };
    let u = f.universe();
    let (Some(x), Some(y)) = (u.resolve("x"), u.resolve("y")) else {
        return Vec::new();
    };
    let lead = f.as_univariate(y).pop().unwrap_or_else(|| MPoly::zero(u));
    let disc = linalg::resultant(f, &f.derivative(y), y);
    let diag = f.substitute(&[(y, MPoly::var(u, x))]);
    let mut out = Vec::new();
    for g in [lead, disc, diag] {
        if g.is_zero() || g.is_constant() {
            continue;
        }
        if let Ok(r) = roots_univariate(&to_complex_univariate(&g, x), tol) {
            out.extend(r.roots);
        }
    }
    out
}

/// Explores from `n_seeds` seeded random starting points and compares
/// clean components with `h`.
pub fn sample_classify(
    phi: &ConcretePoly,
    h: &Graph,
    n_seeds: usize,
    rng_seed: u64,
    opts: &ExploreOptions,
) -> Result<SampleReport, ExplorerError> {
    let locus = singular_locus(phi, opts.tol);
    let mut report = SampleReport {
        n_seeds,
        clean: 0,
        matches: 0,
        match_rate: None,
        singular_count: 0,
        truncated_count: 0,
        seeds_near_singular: 0,
        mismatch_examples: Vec::new(),
    };
    for seed in sample_seeds(n_seeds, rng_seed) {
        if locus.iter().any(|&s| close(seed, s, opts.merge_tol)) {
            report.seeds_near_singular += 1;
        }
        let c = explore_component(phi, seed, opts)?;
        if c.truncated {
            report.truncated_count += 1;
            continue;
        }
        if c.has_flags() {
            report.singular_count += 1;
            continue;
        }
        report.clean += 1;
        if matches_target(&c, h)? {
            report.matches += 1;
        } else if report.mismatch_examples.len() < MAX_MISMATCH_EXAMPLES {
            report.mismatch_examples.push(c);
        }
    }
    if report.clean > 0 {
        report.match_rate = Some(report.matches as f64 / report.clean as f64);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn phi(s: &str) -> MPoly {
        let u = VarUniverse::new(&["x", "y"]).unwrap();
        parse_poly(s, &u).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn standardness() {
        let r = standardness_report(&phi("x*y")).unwrap();
        assert!(!r.no_univariate_factor);
        let r = standardness_report(&phi("x^2+2*x*y+y^2")).unwrap();
        assert!(!r.square_free);
        let r = standardness_report(&phi("x^2*y^2+x^2+y^2-x*y+2")).unwrap();
        assert!(r.is_standard());
        let r = standardness_report(&phi("x - y")).unwrap();
        assert!(!r.diagonal_nonzero);
    }

    #[test]
    fn roots() {
        let r = roots_univariate(&[c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 1e-10).unwrap();
        let mut ims: Vec<f64> = r.roots.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 2f64.sqrt()).abs() < 1e-12 && (ims[1] - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.roots.iter().all(|z| z.re.abs() < 1e-12));
        let r = roots_univariate(&[c(-3.5, 1.0), c(1.0, 0.0)], 1e-10).unwrap();
        assert!((r.roots[0] - c(3.5, -1.0)).norm() < 1e-14);
        let r = roots_univariate(&[c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)], 1e-10).unwrap();
        assert!(r.roots.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-6));
        let r = roots_univariate(&[c(1.0, 0.0), c(1.0, 0.0), c(1e-20, 0.0)], 1e-10).unwrap();
        assert_eq!(r.trimmed, 1);
        assert_eq!(r.roots.len(), 1);
        assert_eq!(roots_univariate(&[c(0.0, 0.0)], 1e-10), Err(ExplorerError::ZeroPolynomial));
    }

    #[test]
    fn triangle_from_zero() {
        let p = ConcretePoly::from_mpoly(&phi("x^2*y^2+x^2+y^2-x*y+2")).unwrap();
        let comp = explore_component(&p, c(0.0, 0.0), &ExploreOptions::default()).unwrap();
        assert_eq!(comp.vertices.len(), 3);
        assert_eq!(comp.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(comp.is_clean());
        let s = 2f64.sqrt();
        for want in [c(0.0, s), c(0.0, -s)] {
            assert!(comp.vertices.iter().any(|&v| (v - want).norm() < 1e-10));
        }
        assert!(matches_target(&comp, &Graph::cycle(3).unwrap()).unwrap());
        assert!(!matches_target(&comp, &Graph::cycle(4).unwrap()).unwrap());
    }

    #[test]
    fn caps_and_loops() {
        let p = ConcretePoly::from_mpoly(&phi("x^2*y^2+x^2+y^2-x*y+2")).unwrap();
        let comp = explore_component(&p, c(0.0, 0.0), &ExploreOptions { cap: 1, ..Default::default() }).unwrap();
        assert_eq!(comp.vertices.len(), 1);
        assert!(comp.truncated);
        assert!(matches!(matches_target(&comp, &Graph::cycle(3).unwrap()), Err(ExplorerError::NotComparable(_))));
        // Φ(u, u) = 2u^2 - 2 vanishes at u = 1.
        let p = ConcretePoly::from_mpoly(&phi("x^2 + y^2 - 2")).unwrap();
        let comp = explore_component(&p, c(1.0, 0.0), &ExploreOptions::default()).unwrap();
        assert!(comp.flags[0].loop_);
    }

    #[test]
    fn single_edge() {
        let p = ConcretePoly::from_mpoly(&phi("x + y")).unwrap();
        let comp = explore_component(&p, c(5.0, 0.0), &ExploreOptions::default()).unwrap();
        assert_eq!(comp.vertices.len(), 2);
        assert!((comp.vertices[1] - c(-5.0, 0.0)).norm() < 1e-12);
        assert_eq!(comp.edges, vec![(0, 1)]);
    }

    #[test]
    fn complex_text() {
        assert_eq!(parse_complex("0").unwrap(), c(0.0, 0.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex("1e-3+1e2i").unwrap(), c(1e-3, 100.0));
        assert!(parse_complex("x").is_err());
        assert_eq!(format_complex(c(0.0, 2f64.sqrt())), "1.41421i");
        assert_eq!(format_complex(c(-5.0, 0.0)), "-5");
        assert_eq!(format_complex(c(1.0, -0.5)), "1-0.5i");
        assert_eq!(format_complex(c(1e-90, -2f64.sqrt())), "-1.41421i");
        assert_eq!(format_complex(c(1234567.0, 0.5)), "1234567");
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_seeds(5, 7), sample_seeds(5, 7));
        assert!(sample_seeds(50, 1).iter().all(|z| z.norm() <= 2.0));
    }
}
