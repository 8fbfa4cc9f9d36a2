//! Simple undirected graphs with canonical 0-indexed vertices, plus the named
//! constructions the rest of the crate works on.
//!
//! Adjacency is stored as bit rows, so membership tests are O(1) and the
//! branch-and-bound code can borrow whole rows. All constructions document
//! their vertex ordering; spectra and reports derived from them are
//! reproducible bit for bit.

use crate::error::{Error, Result};

/// Parsers refuse orders above this; everything downstream is dense.
pub const MAX_ORDER: usize = 4096;

/// A simple undirected graph: no loops, no multi-edges, vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}
impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder("graph order must be at least 1".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit(format!(
                "graph order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            adj: vec![0; n * words],
            label: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = Some(label.into());
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn m(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({u},{v}) out of range for order {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        self.adj[u * self.words + (v >> 6)] |= 1u64 << (v & 63);
        self.adj[v * self.words + (u >> 6)] |= 1u64 << (u & 63);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u * self.words + (v >> 6)] >> (v & 63) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        let row = &self.adj[v * self.words..(v + 1) * self.words];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d0 = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d0).then_some(d0)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order. This is the
    /// canonical edge ordering used by the line graph and the weight search.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Adjacency rows as single-word bitsets; requires n <= 64.
    pub fn bit_rows(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::SizeLimit(format!(
                "bitset rows need n <= 64, got n = {}",
                self.n
            )));
        }
        Ok((0..self.n).map(|v| self.adj[v * self.words]).collect())
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n).expect("order already validated");
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("in range");
                }
            }
        }
        if let Some(l) = &self.label {
            g.label = Some(format!("complement({l})"));
        }
        g
    }

    /// BFS 2-coloring. Returns the coloring or an odd cycle.
    pub fn bipartition(&self) -> Bipartition {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        parent[v] = u;
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return Bipartition::OddCycle(odd_cycle(&parent, u, v));
                    }
                }
            }
        }
        Bipartition::Bipartite { coloring: color }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Bipartite { .. })
    }

    /// Length of a shortest cycle, or None if the graph is a forest.
    /// BFS from every vertex; the minimum over roots of the first non-tree
    /// edge closure is exact for unweighted graphs.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v && parent[v] != u {
                        let cycle = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }
}

/// Outcome of the bipartiteness check: a 2-coloring, or an odd cycle as a
/// vertex sequence (consecutive vertices adjacent, last adjacent to first).
#[derive(Clone, Debug)]
pub enum Bipartition {
    Bipartite { coloring: Vec<u8> },
    OddCycle(Vec<usize>),
}

impl Bipartition {
    /// The two parts, when bipartite.
    pub fn parts(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        match self {
            Bipartition::Bipartite { coloring } => {
                let left = coloring
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c == 0)
                    .map(|(v, _)| v)
                    .collect();
                let right = coloring
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c == 1)
                    .map(|(v, _)| v)
                    .collect();
                Some((left, right))
            }
            Bipartition::OddCycle(_) => None,
        }
    }
}

// Walk both BFS branches up to their common ancestor; the two partial paths
// plus the conflict edge form an odd cycle.
fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // Trim the shared tail.
    let mut iu = pu.len();
    let mut iv = pv.len();
    while iu > 0 && iv > 0 && pu[iu - 1] == pv[iv - 1] {
        iu -= 1;
        iv -= 1;
    }
    // Keep one copy of the common ancestor.
    let mut cycle: Vec<usize> = pu[..=iu.min(pu.len() - 1)].to_vec();
    let mut back: Vec<usize> = pv[..iv].to_vec();
    back.reverse();
    cycle.extend(back);
    cycle
}

/// Cycle C_n with edges {i, i+1 mod n}.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidOrder(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = Graph::new(n)?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n)?;
    }
    Ok(g.with_label(format!("C{n}")))
}

/// Path P_n on vertices 0..n.
pub fn make_path(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for i in 1..n {
        g.add_edge(i - 1, i)?;
    }
    Ok(g.with_label(format!("P{n}")))
}

/// Complete graph K_n.
pub fn make_complete(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g.with_label(format!("K{n}")))
}

/// Edgeless graph on n vertices.
pub fn make_empty(n: usize) -> Result<Graph> {
    Ok(Graph::new(n)?.with_label(format!("empty{n}")))
}

/// Kneser graph K(n, k): vertices are the k-subsets of [n] in lexicographic
/// order; subsets are adjacent iff disjoint. K(5, 2) is the Petersen graph.
pub fn make_kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidParameters(format!(
            "Kneser graph needs n >= 2k >= 2, got n = {n}, k = {k}"
        )));
    }
    let subsets = k_subsets(n, k);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &x| m | 1 << x))
        .collect();
    let mut g = Graph::new(subsets.len())?;
    for i in 0..masks.len() {
        for j in (i + 1)..masks.len() {
            if masks[i] & masks[j] == 0 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g.with_label(format!("kneser_{n}_{k}")))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Paley graph on Z_q for prime q = 1 (mod 4): u ~ v iff u - v is a nonzero
/// quadratic residue. Prime powers are out of scope.
pub fn make_paley(q: usize) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::InvalidParameters(format!(
            "Paley graph needs q prime, got {q}"
        )));
    }
    if q % 4 != 1 {
        return Err(Error::InvalidParameters(format!(
            "Paley graph needs q = 1 (mod 4), got {q}"
        )));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let mut g = Graph::new(q)?;
    for u in 0..q {
        for v in (u + 1)..q {
            if residue[(v - u) % q] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g.with_label(format!("paley{q}")))
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Folded d-cube: vertices are the binary strings of length d-1 (ordered as
/// integers); edges join strings at Hamming distance 1 or d-1. d-regular on
/// 2^(d-1) vertices. The folded 5-cube is the Clebsch graph.
pub fn make_folded_cube(d: usize) -> Result<Graph> {
    if d < 2 {
        return Err(Error::InvalidParameters(format!(
            "folded cube needs d >= 2, got {d}"
        )));
    }
    let len = d - 1;
    let n = 1usize << len;
    if n > MAX_ORDER {
        return Err(Error::SizeLimit(format!("folded {d}-cube order {n} too large")));
    }
    let all = (n - 1) as u64;
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            let diff = (u as u64) ^ (v as u64);
            if diff.count_ones() == 1 || diff == all {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g.with_label(format!("foldedcube{d}")))
}

/// Line graph L(g): one vertex per edge of g (canonical edge order); vertices
/// adjacent iff the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::InvalidInput(
            "line graph of an edgeless graph is undefined here".into(),
        ));
    }
    let mut lg = Graph::new(edges.len())?;
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                lg.add_edge(i, j)?;
            }
        }
    }
    if let Some(l) = g.label() {
        lg.set_label(format!("line({l})"));
    }
    Ok(lg)
}

/// Cartesian product: vertex (a, b) has index a * n_h + b; (a, b) ~ (a', b')
/// iff a = a' and b ~ b', or b = b' and a ~ a'.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g
        .n()
        .checked_mul(h.n())
        .ok_or_else(|| Error::SizeLimit("product order overflow".into()))?;
    let mut p = Graph::new(n)?;
    let idx = |a: usize, b: usize| a * h.n() + b;
    for a in 0..g.n() {
        for b in 0..h.n() {
            for b2 in (b + 1)..h.n() {
                if h.has_edge(b, b2) {
                    p.add_edge(idx(a, b), idx(a, b2))?;
                }
            }
            for a2 in (a + 1)..g.n() {
                if g.has_edge(a, a2) {
                    p.add_edge(idx(a, b), idx(a2, b))?;
                }
            }
        }
    }
    Ok(p)
}
