//! Small-scale graph isomorphism testing.
//!
//! Deliberately modest: a backtracking search over vertex bijections with
//! degree and distance-profile pruning, capped at 64 vertices.  Intended for
//! auditing small constructed graphs against reference families, not for
//! general isomorphism workloads.

use crate::graph::Graph;
use crate::{Error, Result};
use std::collections::HashMap;
use std::collections::VecDeque;

/// Hard vertex cap for [`is_isomorphic_small`].
pub const ISO_VERTEX_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// `image[u]` is the vertex of the second graph matched to `u`.
    Isomorphic(Vec<usize>),
    NotIsomorphic,
    BudgetExhausted,
}

/// Per-vertex invariant preserved by isomorphism: degree plus the sorted
/// multiset of BFS distances to all vertices (unreachable encoded as `n`).
fn signature(g: &Graph, v: usize) -> Vec<usize> {
    let n = g.n();
    let mut dist = vec![n; n];
    let mut q = VecDeque::new();
    dist[v] = 0;
    q.push_back(v);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == n {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist.sort_unstable();
    let mut sig = vec![g.degree(v)];
    sig.extend(dist);
    sig
}

/// Decide whether two graphs are isomorphic, returning a verified vertex
/// bijection on success.  `budget` bounds the number of assignment attempts
/// in the backtracking search; exhaustion is reported, never silent.
pub fn is_isomorphic_small(g: &Graph, h: &Graph, budget: u64) -> Result<IsoResult> {
    if g.n() > ISO_VERTEX_CAP || h.n() > ISO_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "isomorphism search capped at {ISO_VERTEX_CAP} vertices, got {} and {}",
            g.n(),
            h.n()
        )));
    }
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(IsoResult::NotIsomorphic);
    }
    let n = g.n();
    if n == 0 {
        return Ok(IsoResult::Isomorphic(Vec::new()));
    }

    let sig_g: Vec<_> = (0..n).map(|v| signature(g, v)).collect();
    let sig_h: Vec<_> = (0..n).map(|v| signature(h, v)).collect();
    {
        let mut a = sig_g.clone();
        let mut b = sig_h.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(IsoResult::NotIsomorphic);
        }
    }

    // Map each signature to its candidate targets in h.
    let mut by_sig: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for v in 0..n {
        by_sig.entry(&sig_h[v]).or_default().push(v);
    }

    // Assign rarest signatures first, ties broken by degree (descending).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (by_sig[sig_g[v].as_slice()].len(), std::cmp::Reverse(g.degree(v))));

    let adj_g: Vec<u64> = bit_rows(g);
    let adj_h: Vec<u64> = bit_rows(h);

    struct Search<'a> {
        order: &'a [usize],
        by_sig: &'a HashMap<&'a [usize], Vec<usize>>,
        sig_g: &'a [Vec<usize>],
        adj_g: &'a [u64],
        adj_h: &'a [u64],
        image: Vec<usize>,
        mapped_g: u64,
        used_h: u64,
        nodes: u64,
        budget: u64,
    }

    enum Outcome {
        Found,
        Exhausted,
        OutOfBudget,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize) -> Outcome {
            if depth == self.order.len() {
                return Outcome::Found;
            }
            let u = self.order[depth];
            let candidates = &self.by_sig[self.sig_g[u].as_slice()];
            for &w in candidates {
                if self.used_h >> w & 1 == 1 {
                    continue;
                }
                if self.nodes >= self.budget {
                    return Outcome::OutOfBudget;
                }
                self.nodes += 1;
                // u's mapped neighbors must land exactly on w's neighbors
                // among used targets, and vice versa for non-neighbors.
                let mut ok = true;
                let mut rest = self.mapped_g;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let gv = self.adj_g[u] >> v & 1;
                    let hv = self.adj_h[w] >> self.image[v] & 1;
                    if gv != hv {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                self.image[u] = w;
                self.mapped_g |= 1 << u;
                self.used_h |= 1 << w;
                match self.go(depth + 1) {
                    Outcome::Exhausted => {
                        self.mapped_g &= !(1 << u);
                        self.used_h &= !(1 << w);
                    }
                    done => return done,
                }
            }
            Outcome::Exhausted
        }
    }

    let mut search = Search {
        order: &order,
        by_sig: &by_sig,
        sig_g: &sig_g,
        adj_g: &adj_g,
        adj_h: &adj_h,
        image: vec![usize::MAX; n],
        mapped_g: 0,
        used_h: 0,
        nodes: 0,
        budget,
    };
    match search.go(0) {
        Outcome::Found => {
            let image = search.image;
            verify_bijection(g, h, &image)?;
            Ok(IsoResult::Isomorphic(image))
        }
        Outcome::Exhausted => Ok(IsoResult::NotIsomorphic),
        Outcome::OutOfBudget => Ok(IsoResult::BudgetExhausted),
    }
}

fn bit_rows(g: &Graph) -> Vec<u64> {
    let mut rows = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

/// Check that `perm` maps the graph onto itself: a vertex bijection sending
/// every edge to an edge.  Since edges map injectively and their count is
/// finite, this makes non-edges map to non-edges as well.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    let n = g.n();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &w in perm {
        if w >= n || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]))
}

/// Collect up to `max_count` automorphisms by backtracking over vertex
/// images with adjacency consistency, spending at most `budget` assignment
/// attempts.  Unlike [`is_isomorphic_small`] there is no vertex cap.  The
/// result always contains the identity, every entry is re-verified through
/// [`is_automorphism`] before being returned, and the collection may be
/// incomplete — callers must not assume the full group was found.
pub fn sample_automorphisms(g: &Graph, max_count: usize, budget: u64) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut found: Vec<Vec<usize>> = vec![(0..n).collect()];
    if n == 0 || max_count <= 1 {
        return found;
    }
    let adj: Vec<Vec<bool>> = {
        let mut m = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            m[u][v] = true;
            m[v][u] = true;
        }
        m
    };
    // Order vertices so each one sees many already-placed neighbors: start
    // from a highest-degree vertex and greedily extend.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let start = (0..n).max_by_key(|&v| g.degree(v)).expect("n > 0");
    order.push(start);
    placed[start] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let anchored = order.iter().filter(|&&u| adj[u][v]).count();
                (anchored, g.degree(v), std::cmp::Reverse(v))
            })
            .expect("some vertex unplaced");
        order.push(next);
        placed[next] = true;
    }

    struct Search<'a> {
        g: &'a Graph,
        adj: &'a [Vec<bool>],
        order: &'a [usize],
        image: Vec<usize>,
        used: Vec<bool>,
        nodes: u64,
        budget: u64,
        found: Vec<Vec<usize>>,
        max_count: usize,
    }

    impl Search<'_> {
        /// Returns false when the budget or the collection limit is hit.
        fn go(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                if is_automorphism(self.g, &self.image) {
                    self.found.push(self.image.clone());
                }
                return self.found.len() < self.max_count;
            }
            let u = self.order[depth];
            for w in 0..self.g.n() {
                if self.used[w] || self.g.degree(w) != self.g.degree(u) {
                    continue;
                }
                if self.nodes >= self.budget {
                    return false;
                }
                self.nodes += 1;
                let consistent = self.order[..depth]
                    .iter()
                    .all(|&p| self.adj[u][p] == self.adj[w][self.image[p]]);
                if !consistent {
                    continue;
                }
                self.image[u] = w;
                self.used[w] = true;
                let keep_going = self.go(depth + 1);
                self.used[w] = false;
                if !keep_going {
                    return false;
                }
            }
            true
        }
    }

    let mut search = Search {
        g,
        adj: &adj,
        order: &order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        budget,
        found: Vec::new(),
        max_count: max_count - 1,
    };
    search.go(0);
    for perm in search.found {
        if perm.iter().enumerate().any(|(v, &w)| v != w) {
            found.push(perm);
        }
    }
    found
}

/// Check that `image` is a bijection mapping edges onto edges exactly.
fn verify_bijection(g: &Graph, h: &Graph, image: &[usize]) -> Result<()> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &w in image {
        if w >= n || seen[w] {
            return Err(Error::internal("isomorphism witness is not a bijection"));
        }
        seen[w] = true;
    }
    for &(u, v) in g.edges() {
        if !h.has_edge(image[u], image[v]) {
            return Err(Error::internal("isomorphism witness drops an edge"));
        }
    }
    if g.m() != h.m() {
        return Err(Error::internal("isomorphism witness does not cover all edges"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, kneser, Graph};

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn cycles_of_different_length() {
        let a = cycle(9).unwrap();
        let b = cycle(7).unwrap();
        assert_eq!(is_isomorphic_small(&a, &b, BUDGET).unwrap(), IsoResult::NotIsomorphic);
    }

    #[test]
    fn petersen_two_constructions() {
        // Outer 5-cycle, inner pentagram, spokes.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let pet = Graph::new("petersen", 10, &edges).unwrap();
        let kg = kneser(5, 2).unwrap();
        match is_isomorphic_small(&pet, &kg, BUDGET).unwrap() {
            IsoResult::Isomorphic(_) => {}
            other => panic!("expected isomorphism, got {other:?}"),
        }
    }

    #[test]
    fn same_degree_sequence_not_isomorphic() {
        // C_6 versus two disjoint triangles: both 2-regular on 6 vertices.
        let c6 = cycle(6).unwrap();
        let tri2 = Graph::new("2K3", 6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(is_isomorphic_small(&c6, &tri2, BUDGET).unwrap(), IsoResult::NotIsomorphic);
    }

    #[test]
    fn self_isomorphism_identity_graphs() {
        for g in [complete(4).unwrap(), cycle(5).unwrap(), kneser(5, 2).unwrap()] {
            match is_isomorphic_small(&g, &g, BUDGET).unwrap() {
                IsoResult::Isomorphic(img) => {
                    // Some bijection, not necessarily the identity.
                    assert_eq!(img.len(), g.n());
                }
                other => panic!("expected isomorphism, got {other:?}"),
            }
        }
    }

    #[test]
    fn budget_zero_reports_exhaustion() {
        let a = cycle(5).unwrap();
        let b = cycle(5).unwrap();
        assert_eq!(is_isomorphic_small(&a, &b, 0).unwrap(), IsoResult::BudgetExhausted);
    }

    #[test]
    fn cap_enforced() {
        let a = cycle(65).unwrap();
        assert!(is_isomorphic_small(&a, &a, BUDGET).is_err());
    }

    #[test]
    fn automorphism_groups_of_known_graphs() {
        // Pentagon: dihedral, 10 elements.  K4: all 24 permutations.
        let c5 = cycle(5).unwrap();
        let got = sample_automorphisms(&c5, 1000, BUDGET);
        assert_eq!(got.len(), 10);
        for p in &got {
            assert!(is_automorphism(&c5, p));
        }
        assert!(got.iter().any(|p| p.iter().enumerate().all(|(v, &w)| v == w)));
        let k4 = complete(4).unwrap();
        assert_eq!(sample_automorphisms(&k4, 1000, BUDGET).len(), 24);
        // Petersen graph: 120 automorphisms.
        let pet = kneser(5, 2).unwrap();
        assert_eq!(sample_automorphisms(&pet, 1000, BUDGET).len(), 120);
    }

    #[test]
    fn automorphism_sampling_respects_limits() {
        let c5 = cycle(5).unwrap();
        assert_eq!(sample_automorphisms(&c5, 3, BUDGET).len(), 3);
        // Zero budget still yields the identity.
        let only_id = sample_automorphisms(&c5, 1000, 0);
        assert_eq!(only_id.len(), 1);
        assert!(is_automorphism(&c5, &only_id[0]));
    }

    #[test]
    fn is_automorphism_rejects_bad_maps() {
        let c5 = cycle(5).unwrap();
        // Not a bijection.
        assert!(!is_automorphism(&c5, &[0, 0, 1, 2, 3]));
        // Bijection that breaks edges: swapping two non-adjacent vertices
        // of a path would do; on C5 reversing two adjacent labels only is
        // enough to break adjacency.
        assert!(!is_automorphism(&c5, &[0, 2, 1, 3, 4]));
        // Wrong length.
        assert!(!is_automorphism(&c5, &[0, 1, 2, 3]));
    }
}
