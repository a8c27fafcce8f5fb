//! Core undirected-graph type plus the classic named families used
//! throughout the crate (complete graphs, cycles, Kneser graphs).

use crate::bitset::BitMatrix;
use crate::label::{KSet, VertexLabel};
use crate::{Error, Result};
use std::collections::HashSet;
use std::collections::VecDeque;

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted; adjacency lists are
/// sorted ascending.  An optional label vector gives each index a structured
/// identity.
#[derive(Clone, Debug)]
pub struct Graph {
    pub name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    edge_set: HashSet<(usize, usize)>,
    pub labels: Option<Vec<VertexLabel>>,
    /// Set only by constructors whose output is known vertex-transitive;
    /// used to enable symmetry breaking in homomorphism search.
    pub vertex_transitive: bool,
}

impl Graph {
    /// Build a graph from an edge list.  Self-loops are rejected; duplicate
    /// edges (in either orientation) are merged.
    pub fn new(name: impl Into<String>, n: usize, raw_edges: &[(usize, usize)]) -> Result<Graph> {
        let name = name.into();
        let mut edge_set = HashSet::with_capacity(raw_edges.len());
        for &(u, v) in raw_edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices in '{name}'"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u} in '{name}'")));
            }
            edge_set.insert((u.min(v), u.max(v)));
        }
        let mut edges: Vec<_> = edge_set.iter().copied().collect();
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            name,
            n,
            edges,
            adj,
            edge_set,
            labels: None,
            vertex_transitive: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_set.contains(&(u.min(v), u.max(v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn label(&self, v: usize) -> Option<&VertexLabel> {
        self.labels.as_ref().map(|ls| &ls[v])
    }

    /// Copy with one edge removed (vertex set unchanged).
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let key = (u.min(v), u.max(v));
        if !self.edge_set.contains(&key) {
            return Err(Error::invalid(format!(
                "edge ({u},{v}) not present in '{}'",
                self.name
            )));
        }
        let edges: Vec<_> = self.edges.iter().copied().filter(|&e| e != key).collect();
        let mut g = Graph::new(format!("{}-e({u},{v})", self.name), self.n, &edges)?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Copy with one vertex removed; higher indices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::invalid(format!(
                "vertex {v} not present in '{}'",
                self.name
            )));
        }
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        let mut g = Graph::new(format!("{}-v({v})", self.name), self.n - 1, &edges)?;
        g.labels = self.labels.as_ref().map(|ls| {
            ls.iter()
                .enumerate()
                .filter(|&(i, _)| i != v)
                .map(|(_, l)| l.clone())
                .collect()
        });
        Ok(g)
    }

    pub fn adjacency_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::new(self.n);
        for &(u, v) in &self.edges {
            m.set(u, v);
            m.set(v, u);
        }
        m
    }

    /// Relation "there is a walk of length exactly `len` from u to v"
    /// (vertices may repeat; u = v is allowed).  Computed as the `len`-th
    /// boolean power of the adjacency matrix; length 0 gives the identity.
    pub fn walk_relation(&self, len: usize) -> BitMatrix {
        if len == 0 {
            return BitMatrix::identity(self.n);
        }
        let mut cur = self.adjacency_matrix();
        for _ in 1..len {
            cur = cur.or_gather(&self.adj);
        }
        cur
    }

    /// Length of a shortest odd cycle, or `None` for bipartite graphs.
    ///
    /// For each start vertex we run a BFS over (vertex, parity) states; the
    /// first time the start is reached with odd parity gives the shortest odd
    /// closed walk through it, and every odd closed walk contains an odd
    /// cycle of at most its length.
    pub fn odd_girth(&self) -> Option<usize> {
        let starts: Vec<usize> = if self.vertex_transitive && self.n > 0 {
            vec![0]
        } else {
            (0..self.n).collect()
        };
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; 2 * self.n];
        for &v in &starts {
            dist.fill(usize::MAX);
            let mut queue = VecDeque::new();
            dist[2 * v] = 0;
            queue.push_back((v, 0usize));
            'bfs: while let Some((u, p)) = queue.pop_front() {
                let d = dist[2 * u + p];
                if d + 1 >= best {
                    continue;
                }
                for &w in &self.adj[u] {
                    let q = 1 - p;
                    if w == v && q == 1 {
                        best = d + 1;
                        break 'bfs;
                    }
                    if dist[2 * w + q] == usize::MAX {
                        dist[2 * w + q] = d + 1;
                        queue.push_back((w, q));
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// Complete graph on `t` vertices.
pub fn complete(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::invalid("complete graph needs at least one vertex"));
    }
    let mut edges = Vec::new();
    for u in 0..t {
        for v in u + 1..t {
            edges.push((u, v));
        }
    }
    let mut g = Graph::new(format!("K:{t}"), t, &edges)?;
    g.labels = Some((0..t).map(VertexLabel::Plain).collect());
    g.vertex_transitive = true;
    Ok(g)
}

/// Cycle on `n >= 3` vertices, edges `(i, i+1 mod n)`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("cycle needs at least three vertices"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut g = Graph::new(format!("C:{n}"), n, &edges)?;
    g.labels = Some((0..n).map(VertexLabel::Plain).collect());
    g.vertex_transitive = true;
    Ok(g)
}

/// All k-subsets of `{1..n}` in lexicographic order.
pub fn k_subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k as usize);
    fn rec(n: u32, k: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k as usize {
            out.push(cur.clone());
            return;
        }
        for e in start..=n {
            cur.push(e);
            rec(n, k, e + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 1, &mut cur, &mut out);
    out
}

/// Kneser graph: vertices are the k-subsets of `{1..n}`, edges join
/// disjoint subsets.
pub fn kneser(n: u32, k: u32) -> Result<Graph> {
    if k == 0 || n < k {
        return Err(Error::invalid(format!(
            "Kneser graph needs 1 <= k <= n, got n={n} k={k}"
        )));
    }
    let subsets = k_subsets(n, k);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << e))
        .collect();
    let mut edges = Vec::new();
    for u in 0..masks.len() {
        for v in u + 1..masks.len() {
            if masks[u] & masks[v] == 0 {
                edges.push((u, v));
            }
        }
    }
    let mut g = Graph::new(format!("KG:{n},{k}"), subsets.len(), &edges)?;
    g.labels = Some(
        subsets
            .into_iter()
            .map(|elems| VertexLabel::KSet(KSet { n, elems }))
            .collect(),
    );
    g.vertex_transitive = true;
    Ok(g)
}

/// Index of a k-subset in the lexicographic ordering used by [`kneser`].
pub fn k_subset_index(n: u32, elems: &[u32]) -> usize {
    // Count subsets lexicographically smaller: standard combinatorial ranking.
    let k = elems.len();
    let mut rank = 0usize;
    let mut prev = 0u32;
    for (i, &e) in elems.iter().enumerate() {
        for c in prev + 1..e {
            rank += binomial((n - c) as usize, k - i - 1);
        }
        prev = e;
    }
    rank
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_counts() {
        let g = complete(5).unwrap();
        assert_eq!((g.n(), g.m()), (5, 10));
        assert!(g.has_edge(0, 4));
        assert_eq!(g.max_degree(), 4);
        assert_eq!(g.odd_girth(), Some(3));
    }

    #[test]
    fn single_vertex_complete() {
        let g = complete(1).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(g.odd_girth(), None);
    }

    #[test]
    fn cycle_structure() {
        let g = cycle(7).unwrap();
        assert_eq!((g.n(), g.m()), (7, 7));
        assert_eq!(g.odd_girth(), Some(7));
        assert!(cycle(6).unwrap().odd_girth().is_none());
        assert!(g.is_connected());
    }

    #[test]
    fn petersen() {
        let g = kneser(5, 2).unwrap();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert_eq!(g.max_degree(), 3);
        assert_eq!(g.min_degree(), 3);
        assert_eq!(g.odd_girth(), Some(5));
    }

    #[test]
    fn kneser_no_edges_below_threshold() {
        // n < 2k: every pair of k-subsets intersects.
        let g = kneser(3, 2).unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn subset_ranking_matches_enumeration() {
        for (n, k) in [(5u32, 2u32), (7, 3), (6, 1)] {
            let subsets = k_subsets(n, k);
            for (i, s) in subsets.iter().enumerate() {
                assert_eq!(k_subset_index(n, s), i, "subset {s:?}");
            }
        }
    }

    #[test]
    fn walk_relation_cycle() {
        let g = cycle(5).unwrap();
        let w2 = g.walk_relation(2);
        // Walks of length 2 from 0: back to 0, or to 0±2.
        assert!(w2.get(0, 0));
        assert!(w2.get(0, 2));
        assert!(w2.get(0, 3));
        assert!(!w2.get(0, 1));
        // Length 5 closes the odd cycle.
        let w5 = g.walk_relation(5);
        assert!(w5.get(0, 0));

        let c4 = cycle(4).unwrap();
        let w = c4.walk_relation(2);
        for u in 0..4 {
            assert!(w.get(u, u), "go-and-return walk at {u}");
        }

        let c9 = cycle(9).unwrap();
        let w3 = c9.walk_relation(3);
        assert!(w3.get(0, 3));
        assert!(!w3.get(0, 2));

        // Length 0 is the identity relation.
        let w0 = c9.walk_relation(0);
        assert!(w0.get(4, 4));
        assert!(!w0.get(4, 5));
    }

    #[test]
    fn kneser_4_2_bipartite() {
        // KG(4,2) is a perfect matching on 6 vertices: 3 disjoint edges.
        let g = kneser(4, 2).unwrap();
        assert_eq!((g.n(), g.m()), (6, 3));
        assert_eq!(g.odd_girth(), None);
        assert_eq!(g.max_degree(), 1);
    }

    #[test]
    fn kneser_singletons_complete() {
        let g = kneser(6, 1).unwrap();
        assert_eq!((g.n(), g.m()), (6, 15));
        assert_eq!(g.max_degree(), 5);
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = Graph::new("g", 3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert!(Graph::new("g", 3, &[(1, 1)]).is_err());
        assert!(Graph::new("g", 3, &[(0, 3)]).is_err());
    }

    #[test]
    fn edge_deletion() {
        let g = cycle(5).unwrap();
        let h = g.delete_edge(0, 1).unwrap();
        assert_eq!(h.m(), 4);
        assert!(!h.has_edge(0, 1));
        assert!(h.delete_edge(0, 1).is_err());
        assert_eq!(h.odd_girth(), None);
    }
}
