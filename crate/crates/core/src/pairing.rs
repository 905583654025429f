//! Polynomial systems attached to a graph: edge systems, the completed
//! system of divided differences, clique and twin reductions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::graph::Graph;
use crate::poly::{
    build_generic_phi, coeff_names, divided_difference, swap_difference, MPoly, Monomial, PolyError,
    VarRole, VarUniverse,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("polynomial is not symmetric in x and y")]
    AsymmetricPhi,
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is {found}-regular, expected degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Where a polynomial of a system came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Edge(usize, usize),
    /// Φ_{ℓ-1}(x_vertex; x_block...), ℓ = block length >= 2.
    Completion { vertex: usize, block: Vec<usize> },
    /// Φ_{ℓ-1,k}(first; second), k + 1 = first.len().
    Clique { first: Vec<usize>, second: Vec<usize> },
    /// Ψ(x_i, x_j; x_k, x_l).
    Twin { pair: (usize, usize), common: (usize, usize) },
    Other(String),
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Edge(i, j) => write!(f, "edge {}-{}", i, j),
            Label::Completion { vertex, block } => {
                write!(f, "phi{}({};{})", block.len() - 1, vertex, list(block))
            }
            Label::Clique { first, second } => write!(
                f,
                "phi{},{}({};{})",
                first.len() + second.len() - 2,
                first.len() - 1,
                list(first),
                list(second)
            ),
            Label::Twin { pair, common } => {
                write!(f, "psi({},{};{},{})", pair.0, pair.1, common.0, common.1)
            }
            Label::Other(s) => f.write_str(s),
        }
    }
}

/// A set of polynomials with provenance labels. Duplicates (equal up to
/// a constant factor) are merged and their labels united.
#[derive(Clone, Debug)]
pub struct PolySystem {
    universe: Arc<VarUniverse>,
    polys: Vec<MPoly>,
    labels: Vec<Vec<Label>>,
    index: HashMap<String, usize>,
}

impl PolySystem {
    pub fn new(universe: &Arc<VarUniverse>) -> PolySystem {
        PolySystem {
            universe: universe.clone(),
            polys: Vec::new(),
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Adds `f`; returns false if an associate was already present. Zero
    /// polynomials are ignored.
    pub fn push(&mut self, f: MPoly, label: Label) -> bool {
        if f.is_zero() {
            return false;
        }
        let key = f.normalized().to_string();
        if let Some(&k) = self.index.get(&key) {
            if !self.labels[k].contains(&label) {
                self.labels[k].push(label);
            }
            return false;
        }
        self.index.insert(key, self.polys.len());
        self.polys.push(f);
        self.labels.push(vec![label]);
        true
    }

    pub fn extend(&mut self, other: &PolySystem) {
        for (p, ls) in other.polys.iter().zip(&other.labels) {
            for l in ls {
                self.push(p.clone(), l.clone());
            }
        }
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn labels(&self) -> &[Vec<Label>] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn contains(&self, f: &MPoly) -> bool {
        !f.is_zero() && self.index.contains_key(&f.normalized().to_string())
    }

    /// `{"universe": [...], "polys": [{"label": ..., "poly": ...}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let polys: Vec<serde_json::Value> = self
            .polys
            .iter()
            .zip(&self.labels)
            .map(|(p, ls)| {
                let label = ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("; ");
                json!({"label": label, "poly": p.to_string()})
            })
            .collect();
        json!({"universe": self.universe.names(), "polys": polys})
    }
}

/// Universe `x_n, ..., x_1, a00, a10, a11, ..., a_dd` followed by `extra`,
/// whose natural order is the elimination order used for graphs.
pub fn graph_universe(n: usize, d: usize, extra: &[&str]) -> Arc<VarUniverse> {
    let mut names: Vec<String> = (1..=n).rev().map(|i| format!("x{}", i)).collect();
    names.extend(coeff_names(d));
    names.extend(extra.iter().map(|s| s.to_string()));
    VarUniverse::new(&names).expect("well-formed names")
}

/// Index of vertex variable `x_i`.
pub fn vertex_var(universe: &VarUniverse, i: usize) -> usize {
    universe
        .index(&format!("x{}", i))
        .unwrap_or_else(|| panic!("universe has no x{}", i))
}

fn check_regular(h: &Graph, d: usize) -> Result<(), PairingError> {
    match h.regular_degree() {
        None => Err(PairingError::NotRegular),
        Some(found) if found != d => Err(PairingError::DegreeMismatch { expected: d, found }),
        Some(_) => Ok(()),
    }
}

/// Φ(x,y) evaluated on every edge. `phi` lives in a universe with slot
/// variables `x`, `y` (or `x1`, `x2`) and possibly coefficient variables.
pub fn system_s(h: &Graph, phi: &MPoly) -> Result<PolySystem, PairingError> {
    let pu = phi.universe();
    let sx = pu.resolve("x").ok_or_else(|| PolyError::UnknownVariable("x".into()))?;
    let sy = pu.resolve("y").ok_or_else(|| PolyError::UnknownVariable("y".into()))?;
    if phi.swap_vars(sx, sy) != *phi {
        return Err(PairingError::AsymmetricPhi);
    }
    let mut names: Vec<String> = (1..=h.n()).rev().map(|i| format!("x{}", i)).collect();
    let others: Vec<usize> = (0..pu.len()).filter(|&v| v != sx && v != sy).collect();
    for &v in &others {
        if names.iter().any(|n| n == pu.name(v)) {
            return Err(PolyError::DuplicateVariable(pu.name(v).to_string()).into());
        }
        names.push(pu.name(v).to_string());
    }
    let u = VarUniverse::new(&names)?;
    let image: Vec<usize> = others.iter().map(|&v| u.index(pu.name(v)).unwrap()).collect();
    let mut sys = PolySystem::new(&u);
    for (i, j) in h.edges() {
        let (xi, xj) = (vertex_var(&u, i), vertex_var(&u, j));
        let terms = phi.terms().iter().map(|(m, c)| {
            let mut e = Monomial::one(u.len());
            e.0[xi] = m.0[sx];
            e.0[xj] = m.0[sy];
            for (&v, &w) in others.iter().zip(&image) {
                e.0[w] = m.0[v];
            }
            (e, c.clone())
        });
        sys.push(MPoly::from_terms(&u, terms), Label::Edge(i, j));
    }
    Ok(sys)
}

/// S(H): the generic Φ of partial degree `d` on every edge.
pub fn system_s_symbolic(h: &Graph, d: usize) -> Result<PolySystem, PairingError> {
    check_regular(h, d)?;
    let u = graph_universe(h.n(), d, &[]);
    let mut sys = PolySystem::new(&u);
    for (i, j) in h.edges() {
        let phi = build_generic_phi(d, &u, vertex_var(&u, i), vertex_var(&u, j))?;
        sys.push(phi, Label::Edge(i, j));
    }
    Ok(sys)
}

/// Φ_{ℓ-1}(x_center; x_block...) by iterated divided differences.
pub fn completion_poly(
    universe: &Arc<VarUniverse>,
    d: usize,
    center: usize,
    block: &[usize],
) -> Result<MPoly, PolyError> {
    assert!(!block.is_empty());
    let mut f = build_generic_phi(d, universe, center, block[0])?;
    for w in block.windows(2) {
        f = divided_difference(&f, w[0], w[1]);
    }
    Ok(f)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// S'(H): Φ_{ℓ-1}(x_i; x_{i_1}, ..., x_{i_ℓ}) for every vertex i and every
/// nonempty subset of its neighbourhood.
pub fn completed_system(h: &Graph, d: usize) -> Result<PolySystem, PairingError> {
    check_regular(h, d)?;
    let u = graph_universe(h.n(), d, &[]);
    completed_system_in(h, d, &u)
}

pub(crate) fn completed_system_in(
    h: &Graph,
    d: usize,
    u: &Arc<VarUniverse>,
) -> Result<PolySystem, PairingError> {
    let mut sys = PolySystem::new(u);
    for i in 1..=h.n() {
        let nbrs: Vec<usize> = h.neighbors(i).iter().copied().collect();
        for l in 1..=nbrs.len() {
            for block in subsets(&nbrs, l) {
                let vars: Vec<usize> = block.iter().map(|&b| vertex_var(u, b)).collect();
                let f = completion_poly(u, d, vertex_var(u, i), &vars)?;
                let label = if l == 1 {
                    Label::Edge(i.min(block[0]), i.max(block[0]))
                } else {
                    Label::Completion { vertex: i, block }
                };
                sys.push(f, label);
            }
        }
    }
    Ok(sys)
}

/// Φ_{ℓ-1,k}(x_first...; x_second...) with `first.len() = k + 1`.
pub fn clique_poly(
    universe: &Arc<VarUniverse>,
    d: usize,
    first: &[usize],
    second: &[usize],
) -> Result<MPoly, PolyError> {
    // Φ_{ℓ-1,0} centred on first[0] over first[1..] ++ second.
    let mut all = first[1..].to_vec();
    all.extend_from_slice(second);
    let mut f = completion_poly(universe, d, first[0], &all)?;
    for k in 1..first.len() {
        f = swap_difference(&f, first[k - 1], first[k]);
    }
    Ok(f)
}

/// Φ_{ℓ-1,k} for every clique of size ℓ+1 <= d+1 and 1 <= k <= ℓ-1, over
/// every choice of the first block.
pub fn clique_polynomials(h: &Graph, d: usize) -> Result<PolySystem, PairingError> {
    check_regular(h, d)?;
    let u = graph_universe(h.n(), d, &[]);
    clique_polynomials_in(h, d, &u)
}

pub(crate) fn clique_polynomials_in(
    h: &Graph,
    d: usize,
    u: &Arc<VarUniverse>,
) -> Result<PolySystem, PairingError> {
    let mut sys = PolySystem::new(u);
    for clique in h.enumerate_cliques(d + 1) {
        let l = clique.len() - 1;
        for k in 1..l {
            for first in subsets(&clique, k + 1) {
                let second: Vec<usize> = clique.iter().copied().filter(|v| !first.contains(v)).collect();
                let fv: Vec<usize> = first.iter().map(|&v| vertex_var(u, v)).collect();
                let sv: Vec<usize> = second.iter().map(|&v| vertex_var(u, v)).collect();
                let f = clique_poly(u, d, &fv, &sv)?;
                sys.push(f, Label::Clique { first, second });
            }
        }
    }
    Ok(sys)
}

/// Ψ(x_i, x_j; x_k, x_l) for non-adjacent i, j and every pair k, l of
/// their common neighbours.
pub fn twin_reduction_polynomials(h: &Graph, d: usize) -> Result<PolySystem, PairingError> {
    check_regular(h, d)?;
    let u = graph_universe(h.n(), d, &[]);
    twin_reduction_polynomials_in(h, d, &u)
}

pub(crate) fn twin_reduction_polynomials_in(
    h: &Graph,
    d: usize,
    u: &Arc<VarUniverse>,
) -> Result<PolySystem, PairingError> {
    let mut sys = PolySystem::new(u);
    for i in 1..=h.n() {
        for j in i + 1..=h.n() {
            if h.has_edge(i, j) {
                continue;
            }
            let common = h.common_neighbors(i, j);
            for kl in subsets(&common, 2) {
                let (k, l) = (kl[0], kl[1]);
                let phi1 = completion_poly(u, d, vertex_var(u, i), &[vertex_var(u, k), vertex_var(u, l)])?;
                let psi = divided_difference(&phi1, vertex_var(u, i), vertex_var(u, j));
                sys.push(psi, Label::Twin { pair: (i, j), common: (k, l) });
            }
        }
    }
    Ok(sys)
}

/// Vertex variables of a universe, by vertex number.
pub fn vertex_vars(universe: &VarUniverse) -> Vec<(usize, usize)> {
    (0..universe.len())
        .filter_map(|v| match universe.role(v) {
            VarRole::Vertex(k) => Some((k, v)),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{coeff_name, parse_poly};

    fn p(u: &Arc<VarUniverse>, s: &str) -> MPoly {
        parse_poly(s, u).unwrap()
    }

    #[test]
    fn edge_systems() {
        let u = VarUniverse::new(&["x", "y"]).unwrap();
        let phi = p(&u, "x^2*y^2 + x^2 + y^2 + x*y + 1");
        let c4 = Graph::cycle(4).unwrap();
        let s = system_s(&c4, &phi).unwrap();
        assert_eq!(s.len(), 4);
        let su = s.universe().clone();
        assert!(s.contains(&p(&su, "x1^2*x2^2 + x1^2 + x2^2 + x1*x2 + 1")));
        assert!(s.contains(&p(&su, "x4^2*x1^2 + x4^2 + x1^2 + x4*x1 + 1")));
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(system_s(&k2, &phi).unwrap().len(), 1);
        let asym = p(&u, "x^2 + y");
        assert_eq!(system_s(&c4, &asym).unwrap_err(), PairingError::AsymmetricPhi);
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(system_s(&k3, &phi).unwrap().len(), 3);
    }

    #[test]
    fn symbolic_counts() {
        let c3 = system_s_symbolic(&Graph::cycle(3).unwrap(), 2).unwrap();
        assert_eq!((c3.len(), c3.universe().len()), (3, 9));
        assert_eq!(system_s_symbolic(&Graph::cycle(4).unwrap(), 2).unwrap().len(), 4);
        let k4 = system_s_symbolic(&Graph::complete(4).unwrap(), 3).unwrap();
        assert_eq!((k4.len(), k4.universe().len()), (6, 14));
        assert_eq!(
            system_s_symbolic(&Graph::path(3).unwrap(), 2).unwrap_err(),
            PairingError::NotRegular
        );
        assert_eq!(
            system_s_symbolic(&Graph::cycle(4).unwrap(), 3).unwrap_err(),
            PairingError::DegreeMismatch { expected: 3, found: 2 }
        );
    }

    #[test]
    fn completion_matches_worked_forms() {
        let u = graph_universe(3, 2, &[]);
        let (x, y, z) = (vertex_var(&u, 1), vertex_var(&u, 2), vertex_var(&u, 3));
        let phi1 = completion_poly(&u, 2, x, &[y, z]).unwrap();
        let expected = p(
            &u,
            "a10 + a11*x1 + a20*x2 + a20*x3 + a21*x1^2 + a21*x1*x2 + a21*x1*x3 + a22*x1^2*x2 + a22*x1^2*x3",
        );
        assert_eq!(phi1, expected);
        let no21 = phi1.specialize(u.index("a21").unwrap(), &crate::poly::rat(0));
        assert_eq!(
            no21,
            p(&u, "a10 + a11*x1 + a20*x2 + a20*x3 + a22*x1^2*x2 + a22*x1^2*x3")
        );
        // Degree one: the divided difference of a11*x*y + a10*(x+y) + a00.
        let u1 = graph_universe(2, 1, &[]);
        let f = completion_poly(&u1, 1, vertex_var(&u1, 1), &[vertex_var(&u1, 2)]).unwrap();
        let g = crate::poly::divided_difference(&f, vertex_var(&u1, 2), vertex_var(&u1, 1));
        assert_eq!(g, p(&u1, "a11*x1 + a10"));
    }

    #[test]
    fn completed_system_sizes() {
        let c3 = completed_system(&Graph::cycle(3).unwrap(), 2).unwrap();
        assert_eq!(c3.len(), 6);
        let c4 = completed_system(&Graph::cycle(4).unwrap(), 2).unwrap();
        assert_eq!(c4.len(), 8);
        let k2 = completed_system(&Graph::complete(2).unwrap(), 1).unwrap();
        assert_eq!(k2.len(), 1);
        assert_eq!(k2.labels()[0], vec![Label::Edge(1, 2)]);
        let u = c4.universe().clone();
        let want = completion_poly(&u, 2, vertex_var(&u, 1), &[vertex_var(&u, 4), vertex_var(&u, 2)]).unwrap();
        assert!(c4.contains(&want));
    }

    #[test]
    fn clique_polynomials_match_worked_form() {
        let c3 = clique_polynomials(&Graph::cycle(3).unwrap(), 2).unwrap();
        assert_eq!(c3.len(), 1);
        let u = c3.universe().clone();
        let phi11 = p(
            &u,
            "a11 - a20 + a21*x1 + a21*x2 + a21*x3 + a22*x1*x2 + a22*x2*x3 + a22*x1*x3",
        );
        assert_eq!(c3.polys()[0], phi11);
        assert!(clique_polynomials(&Graph::cycle(4).unwrap(), 2).unwrap().is_empty());
        // x-degree of Φ_{ℓ-1,k} is 2d - ℓ + 1 - k.
        let d = 3;
        let k4 = clique_polynomials(&Graph::complete(4).unwrap(), d).unwrap();
        let xs: Vec<usize> = (1..=4).map(|i| vertex_var(k4.universe(), i)).collect();
        assert!(!k4.is_empty());
        for (f, ls) in k4.polys().iter().zip(k4.labels()) {
            let Label::Clique { first, second } = &ls[0] else { panic!() };
            let l = first.len() + second.len() - 1;
            let k = first.len() - 1;
            let xdeg = f.terms().iter().map(|(m, _)| xs.iter().map(|&v| m.0[v] as usize).sum::<usize>()).max().unwrap();
            assert_eq!(xdeg, 2 * d - l + 1 - k, "{}", ls[0]);
        }
    }

    #[test]
    fn twin_polynomials() {
        let c4 = twin_reduction_polynomials(&Graph::cycle(4).unwrap(), 2).unwrap();
        let u = c4.universe().clone();
        let psi = p(
            &u,
            "a11 + a21*x1 + a21*x2 + a21*x3 + a21*x4 + a22*x1*x2 + a22*x1*x4 + a22*x3*x2 + a22*x3*x4",
        );
        assert!(c4.contains(&psi));
        // Ψ(x2,x4;x1,x3) is the same polynomial.
        assert_eq!(c4.len(), 1);
        assert_eq!(c4.labels()[0].len(), 2);
        assert!(twin_reduction_polynomials(&Graph::cycle(3).unwrap(), 2).unwrap().is_empty());
        assert!(twin_reduction_polynomials(&Graph::cycle(5).unwrap(), 2).unwrap().is_empty());
    }

    #[test]
    fn explicit_formula_and_symmetry() {
        // Φ_{ℓ-1} = sum a_ij x0^i h_{j-ℓ+1}(x_1..x_ℓ).
        for d in 1..=3 {
            let u = graph_universe(d + 1, d, &[]);
            let x0 = vertex_var(&u, 1);
            let block: Vec<usize> = (2..=d + 1).map(|i| vertex_var(&u, i)).collect();
            for l in 1..=d {
                let f = completion_poly(&u, d, x0, &block[..l]).unwrap();
                let mut want = MPoly::zero(&u);
                for i in 0..=d {
                    for j in (l - 1)..=d {
                        let a = MPoly::var(&u, u.index(&coeff_name(i, j)).unwrap());
                        let h = complete_homogeneous(&u, &block[..l], j + 1 - l);
                        want = &want + &(&(&a * &MPoly::var(&u, x0).pow(i as u32)) * &h);
                    }
                }
                assert_eq!(f, want, "d={} l={}", d, l);
                for w in block[..l].windows(2) {
                    assert_eq!(f.swap_vars(w[0], w[1]), f);
                }
            }
        }
    }

    fn complete_homogeneous(u: &Arc<VarUniverse>, vars: &[usize], k: usize) -> MPoly {
        if vars.is_empty() {
            return if k == 0 { MPoly::one(u) } else { MPoly::zero(u) };
        }
        let mut out = MPoly::zero(u);
        for e in 0..=k {
            let rest = complete_homogeneous(u, &vars[1..], k - e);
            out = &out + &(&MPoly::var(u, vars[0]).pow(e as u32) * &rest);
        }
        out
    }

    #[test]
    fn json_shape() {
        let s = system_s_symbolic(&Graph::complete(2).unwrap(), 1).unwrap();
        let j = s.to_json();
        assert_eq!(j["universe"], serde_json::json!(["x2", "x1", "a00", "a10", "a11"]));
        assert_eq!(j["polys"][0]["label"], "edge 1-2");
    }
}
