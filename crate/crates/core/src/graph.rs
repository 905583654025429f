//! Small finite simple graphs on vertices `1..=n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Isomorphism and automorphism searches are brute force above this size.
pub const MAX_SEARCH_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("{0}")]
    OutOfRange(String),
    #[error("vertex {0} is outside 1..={1}")]
    BadVertex(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has {0} vertices; the search supports at most {MAX_SEARCH_VERTICES}")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;
    fn try_from(r: GraphRepr) -> Result<Graph, GraphError> {
        Graph::new(r.n, &r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            n: g.n,
            edges: g.edges(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(GraphError::BadVertex(v, n));
                }
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            if !adj[i - 1].insert(j) {
                return Err(GraphError::DuplicateEdge(i.min(j), i.max(j)));
            }
            adj[j - 1].insert(i);
        }
        Ok(Graph { n, adj })
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::OutOfRange(format!("cycle needs n >= 3, got {}", n)));
        }
        let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Graph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n < 2 {
            return Err(GraphError::OutOfRange(format!("complete graph needs n >= 2, got {}", n)));
        }
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        if n < 1 {
            return Err(GraphError::OutOfRange("path needs n >= 1".into()));
        }
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges)
    }

    /// Outer 5-cycle 1..5, inner pentagram 6..10, spokes i -- i+5.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 1..=5 {
            edges.push((i, i % 5 + 1));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 1) % 5 + 6));
        }
        Graph::new(10, &edges).expect("valid construction")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted edge list with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for &j in &self.adj[i - 1] {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.n && self.adj[i - 1].contains(&j)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Common degree of all vertices, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([1usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v - 1] {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn common_neighbors(&self, i: usize, j: usize) -> Vec<usize> {
        self.adj[i - 1].intersection(&self.adj[j - 1]).copied().collect()
    }

    /// Copy with vertex `v` renamed `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(i, j)| (perm[i - 1], perm[j - 1]))
            .collect();
        Graph::new(self.n, &edges).expect("relabeling by a permutation")
    }

    /// Preorder numbering of a depth-first search from vertex 1, lowest
    /// neighbour first, so every vertex after the first has an earlier
    /// neighbour. Returns the relabeled graph and the map old -> new.
    pub fn dfs_relabel(&self) -> Result<(Graph, Vec<usize>), GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut perm = vec![0usize; self.n];
        let mut next = 1;
        let mut stack = vec![1usize];
        while let Some(v) = stack.pop() {
            if perm[v - 1] != 0 {
                continue;
            }
            perm[v - 1] = next;
            next += 1;
            for &w in self.adj[v - 1].iter().rev() {
                if perm[w - 1] == 0 {
                    stack.push(w);
                }
            }
        }
        Ok((self.relabel(&perm), perm))
    }

    /// Every vertex `i >= 2` has a neighbour `j < i`.
    pub fn has_dfs_labeling(&self) -> bool {
        (2..=self.n).all(|i| self.adj[i - 1].iter().any(|&j| j < i))
    }

    /// All cliques with 2..=max_size vertices, each sorted, ordered by size
    /// and then lexicographically.
    pub fn enumerate_cliques(&self, max_size: usize) -> Vec<Vec<usize>> {
        let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_size + 1];
        fn grow(g: &Graph, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
            if cur.len() >= 2 {
                out[cur.len()].push(cur.clone());
            }
            if cur.len() == max {
                return;
            }
            let last = *cur.last().unwrap();
            for w in last + 1..=g.n {
                if cur.iter().all(|&u| g.has_edge(u, w)) {
                    cur.push(w);
                    grow(g, cur, max, out);
                    cur.pop();
                }
            }
        }
        if max_size >= 2 {
            for v in 1..=self.n {
                grow(self, &mut vec![v], max_size, &mut by_size);
            }
        }
        by_size.into_iter().flatten().collect()
    }

    /// An isomorphism `self -> other` as `map[v - 1]`, if one exists.
    pub fn isomorphism(&self, other: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
        for g in [self, other] {
            if g.n > MAX_SEARCH_VERTICES {
                return Err(GraphError::TooLarge(g.n));
            }
        }
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return Ok(None);
        }
        let mut da: Vec<usize> = self.adj.iter().map(|a| a.len()).collect();
        let mut db: Vec<usize> = other.adj.iter().map(|a| a.len()).collect();
        da.sort();
        db.sort();
        if da != db {
            return Ok(None);
        }
        Ok(search(self, other, None))
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool, GraphError> {
        Ok(self.isomorphism(other)?.is_some())
    }

    /// Whether the automorphism group moves vertex 1 to every vertex.
    pub fn is_vertex_transitive(&self) -> Result<bool, GraphError> {
        if self.n > MAX_SEARCH_VERTICES {
            return Err(GraphError::TooLarge(self.n));
        }
        if self.n <= 1 {
            return Ok(true);
        }
        if self.regular_degree().is_none() {
            return Ok(false);
        }
        let mut orbit = vec![false; self.n];
        orbit[0] = true;
        for v in 2..=self.n {
            if orbit[v - 1] {
                continue;
            }
            match search(self, self, Some((1, v))) {
                Some(map) => {
                    // Powers of the automorphism give more orbit points for free.
                    let mut w = map[0];
                    while !orbit[w - 1] {
                        orbit[w - 1] = true;
                        w = map[w - 1];
                    }
                }
                None => return Ok(false),
            }
        }
        Ok(orbit.into_iter().all(|o| o))
    }

    /// Text form: `n` on the first line, then one `i j` per edge.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut seen = BTreeSet::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: k + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let nums: Vec<usize> = fields
                .iter()
                .map(|f| f.parse::<usize>().map_err(|_| err(format!("`{}` is not a vertex number", f))))
                .collect::<Result<_, _>>()?;
            match n {
                None => {
                    if nums.len() != 1 {
                        return Err(err("first line must hold the vertex count".into()));
                    }
                    n = Some(nums[0]);
                }
                Some(n) => {
                    if nums.len() != 2 {
                        return Err(err("expected `i j`".into()));
                    }
                    let (i, j) = (nums[0], nums[1]);
                    if i == j {
                        return Err(err(format!("self-loop at {}", i)));
                    }
                    if i == 0 || j == 0 || i > n || j > n {
                        return Err(err(format!("vertex outside 1..={}", n)));
                    }
                    if !seen.insert((i.min(j), i.max(j))) {
                        return Err(err(format!("duplicate edge {} {}", i, j)));
                    }
                    edges.push((i, j));
                }
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            msg: "empty graph file".into(),
        })?;
        Graph::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, j) in self.edges() {
            s.push_str(&format!("{} {}\n", i, j));
        }
        s
    }
}

/// Backtracking isomorphism search `a -> b`, optionally forcing one pair.
fn search(a: &Graph, b: &Graph, fixed: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let n = a.n;
    if n == 0 {
        return Some(Vec::new());
    }
    // Visit `a` in BFS order from the fixed (or first) vertex so each new
    // vertex is usually adjacent to a mapped one.
    let root = fixed.map(|f| f.0).unwrap_or(1);
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in std::iter::once(root).chain(1..=n) {
        if seen[start - 1] {
            continue;
        }
        seen[start - 1] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in &a.adj[v - 1] {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut map = vec![0usize; n];
    let mut used = vec![false; n];
    fn step(
        a: &Graph,
        b: &Graph,
        order: &[usize],
        k: usize,
        fixed: Option<(usize, usize)>,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let candidates: Vec<usize> = match fixed {
            Some((fa, fb)) if fa == v => vec![fb],
            _ => (1..=b.n).collect(),
        };
        for w in candidates {
            if used[w - 1] || a.degree(v) != b.degree(w) {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&u| a.has_edge(u, v) == b.has_edge(map[u - 1], w));
            if !consistent {
                continue;
            }
            map[v - 1] = w;
            used[w - 1] = true;
            if step(a, b, order, k + 1, fixed, map, used) {
                return true;
            }
            used[w - 1] = false;
        }
        false
    }
    step(a, b, &order, 0, fixed, &mut map, &mut used).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constructors() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert_eq!(Graph::complete(3).unwrap().edges(), Graph::cycle(3).unwrap().edges());
        let p = Graph::petersen();
        assert_eq!((p.n(), p.edge_count(), p.regular_degree()), (10, 15, Some(3)));
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::complete(1).is_err());
        for n in 3..=8 {
            assert_eq!(Graph::cycle(n).unwrap().regular_degree(), Some(2));
            assert_eq!(Graph::complete(n).unwrap().regular_degree(), Some(n - 1));
        }
        assert_eq!(Graph::path(3).unwrap().regular_degree(), None);
    }

    #[test]
    fn dfs_relabeling() {
        let g = Graph::new(3, &[(1, 3), (3, 2)]).unwrap();
        assert!(!g.has_dfs_labeling());
        let (h, perm) = g.dfs_relabel().unwrap();
        assert!(h.has_dfs_labeling());
        assert_eq!(perm, vec![1, 3, 2]);
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.has_dfs_labeling());
        assert!(c5.dfs_relabel().unwrap().0.has_dfs_labeling());
        let split = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(split.dfs_relabel(), Err(GraphError::Disconnected));
    }

    #[test]
    fn cliques() {
        let k4 = Graph::complete(4).unwrap().enumerate_cliques(4);
        let count = |s: usize| k4.iter().filter(|c| c.len() == s).count();
        assert_eq!((count(2), count(3), count(4)), (6, 4, 1));
        let c4 = Graph::cycle(4).unwrap().enumerate_cliques(3);
        assert_eq!(c4.len(), 4);
        let c3 = Graph::cycle(3).unwrap().enumerate_cliques(3);
        assert_eq!(c3.iter().filter(|c| c.len() == 3).collect::<Vec<_>>(), vec![&vec![1, 2, 3]]);
    }

    #[test]
    fn isomorphism_and_transitivity() {
        let c3 = Graph::cycle(3).unwrap();
        assert!(!Graph::cycle(4).unwrap().is_isomorphic(&Graph::complete(4).unwrap()).unwrap());
        assert!(c3.is_isomorphic(&Graph::complete(3).unwrap()).unwrap());
        let p = Graph::petersen();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut perm: Vec<usize> = (1..=10).collect();
        perm.shuffle(&mut rng);
        let a = p.relabel(&perm);
        perm.shuffle(&mut rng);
        let b = p.relabel(&perm);
        let map = a.isomorphism(&b).unwrap().unwrap();
        for (i, j) in a.edges() {
            assert!(b.has_edge(map[i - 1], map[j - 1]));
        }
        assert!(Graph::cycle(5).unwrap().is_vertex_transitive().unwrap());
        assert!(!Graph::path(3).unwrap().is_vertex_transitive().unwrap());
        assert!(p.is_vertex_transitive().unwrap());
        // Cubic, 8 vertices, not vertex-transitive: two K4 minus an edge joined.
        let g = Graph::new(
            8,
            &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (1, 5), (4, 8)],
        )
        .unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert!(!g.is_vertex_transitive().unwrap());
        let big = Graph::cycle(13).unwrap();
        assert_eq!(big.is_vertex_transitive(), Err(GraphError::TooLarge(13)));
    }

    #[test]
    fn text_format() {
        let g = Graph::parse("# square\n4\n1 2\n2 3 # edge\n\n3 4\n4 1\n").unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(matches!(Graph::parse("3\n1 2\n2 1\n"), Err(GraphError::Parse { line: 3, .. })));
        assert!(matches!(Graph::parse("3\n1 1\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("3\n1 4\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse(""), Err(GraphError::Parse { .. })));
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[1,2],[1,4],[2,3],[3,4]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
    }

    fn connected_graph() -> impl Strategy<Value = Graph> {
        (2usize..=8, proptest::collection::vec(any::<bool>(), 28), any::<u64>()).prop_map(|(n, bits, seed)| {
            // Random spanning tree plus random extra edges.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut verts: Vec<usize> = (1..=n).collect();
            verts.shuffle(&mut rng);
            let mut edges = BTreeSet::new();
            for k in 1..n {
                let parent = verts[(seed as usize + k * 7) % k];
                let (a, b) = (verts[k], parent);
                edges.insert((a.min(b), a.max(b)));
            }
            let mut idx = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    if bits[idx % bits.len()] {
                        edges.insert((i, j));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, &edges.into_iter().collect::<Vec<_>>()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn relabel_preserves_structure(g in connected_graph()) {
            prop_assert!(g.is_connected());
            let (h, _) = g.dfs_relabel().unwrap();
            prop_assert!(h.has_dfs_labeling());
            prop_assert!(g.is_isomorphic(&h).unwrap());
        }
    }
}
