//! The universal graphs for wide colorings in their two encodings — coordinate
//! sequences and set chains — together with the isomorphism between them, the
//! canonical coloring, the wideness checker, and closed-form counts.
//!
//! A proper coloring is *s-wide* when the endvertices of every walk of length
//! 2s−1 receive different colors.  The sequence graph `W:s,t` is the universal
//! target for s-wide colorings with t colors: vertices are sequences
//! `(x_1..x_t)` over `{0..s}` with exactly one 0 and at least one 1, edges
//! join sequences that differ by exactly 1 in every coordinate (with `s`
//! allowed to repeat).  The chain graph `Omega:s,t` re-encodes the same graph
//! as chains of subsets of `{1..t}`.

use crate::bitset::BitMatrix;
use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::label::{OmegaVertex, VertexLabel, WideVertex, MAX_GROUND_SET};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};

/// Largest vertex count for materialized construction; larger instances are
/// served by the streaming verification path.
pub const W_VERTEX_CAP: u64 = 20_000;

fn check_params(s: u32, t: u32) -> Result<u64> {
    if s < 1 {
        return Err(Error::invalid("s must be at least 1"));
    }
    if t < 2 {
        return Err(Error::invalid("t must be at least 2"));
    }
    if t > MAX_GROUND_SET {
        return Err(Error::CapExceeded(format!(
            "t = {t} exceeds the supported ground-set size {MAX_GROUND_SET}"
        )));
    }
    let count = vertex_count_formula(s, t)?;
    if count > W_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "W:{s},{t} has {count} vertices, above the build cap {W_VERTEX_CAP}"
        )));
    }
    Ok(count)
}

/// Closed form for the vertex count of `W:s,t`: t(s^{t−1} − (s−1)^{t−1}).
pub fn vertex_count_formula(s: u32, t: u32) -> Result<u64> {
    if s < 1 || t < 2 {
        return Err(Error::invalid("need s >= 1 and t >= 2"));
    }
    let a = (s as u128)
        .checked_pow(t - 1)
        .ok_or_else(|| Error::invalid("vertex count overflows"))?;
    let b = ((s - 1) as u128)
        .checked_pow(t - 1)
        .ok_or_else(|| Error::invalid("vertex count overflows"))?;
    u64::try_from(t as u128 * (a - b)).map_err(|_| Error::invalid("vertex count overflows"))
}

/// Closed form for the odd girth of `W:s,t`: 2s−1 + 2⌈(2s−1)/(t−2)⌉, t ≥ 3.
pub fn odd_girth_formula(s: u32, t: u32) -> Result<u64> {
    if s < 1 || t < 3 {
        return Err(Error::invalid("need s >= 1 and t >= 3"));
    }
    let w = (2 * s - 1) as u64;
    Ok(w + 2 * w.div_ceil((t - 2) as u64))
}

/// All vertex sequences of `W:s,t` in lexicographic order.
pub fn w_vertices(s: u32, t: u32) -> Vec<Vec<u32>> {
    fn rec(s: u32, t: usize, x: &mut Vec<u32>, zeros: u32, ones: u32, out: &mut Vec<Vec<u32>>) {
        if x.len() == t {
            if zeros == 1 && ones >= 1 {
                out.push(x.clone());
            }
            return;
        }
        for v in 0..=s {
            let z = zeros + (v == 0) as u32;
            if z > 1 {
                continue;
            }
            x.push(v);
            rec(s, t, x, z, ones + (v == 1) as u32, out);
            x.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, t as usize, &mut Vec::with_capacity(t as usize), 0, 0, &mut out);
    out
}

/// Edge rule of `W:s,t`: every coordinate differs by exactly 1, except that
/// the top value `s` may repeat.
pub fn w_adjacent(s: u32, x: &[u32], y: &[u32]) -> bool {
    x.len() == y.len()
        && x.iter()
            .zip(y)
            .all(|(&a, &b)| a.abs_diff(b) == 1 || (a == b && a == s))
}

/// Visit every neighbor sequence of `x` in `W:s,t`, generated coordinatewise
/// without consulting a materialized graph.
pub fn for_each_w_neighbor(s: u32, x: &[u32], f: &mut dyn FnMut(&[u32])) {
    fn rec(
        s: u32,
        x: &[u32],
        y: &mut Vec<u32>,
        zeros: u32,
        ones: u32,
        f: &mut dyn FnMut(&[u32]),
    ) {
        let i = y.len();
        if i == x.len() {
            if zeros == 1 && ones >= 1 {
                f(y);
            }
            return;
        }
        let xi = x[i];
        let choices: [Option<u32>; 2] = match xi {
            0 => [Some(1), None],
            v if v < s => [Some(v - 1), Some(v + 1)],
            _ => [Some(s - 1), Some(s)],
        };
        for v in choices.into_iter().flatten() {
            let z = zeros + (v == 0) as u32;
            if z > 1 {
                continue;
            }
            y.push(v);
            rec(s, x, y, z, ones + (v == 1) as u32, f);
            y.pop();
        }
    }
    let mut y = Vec::with_capacity(x.len());
    rec(s, x, &mut y, 0, 0, f);
}

/// Build `W:s,t` with sequence labels, vertices in lexicographic order.
pub fn build_w(s: u32, t: u32) -> Result<Graph> {
    check_params(s, t)?;
    let verts = w_vertices(s, t);
    let index: HashMap<&[u32], usize> = verts
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let mut edges = Vec::new();
    for (u, x) in verts.iter().enumerate() {
        for_each_w_neighbor(s, x, &mut |y| {
            let v = *index
                .get(y)
                .expect("generated neighbor must be a valid vertex");
            if u < v {
                edges.push((u, v));
            }
        });
    }
    let mut g = Graph::new(format!("W:{s},{t}"), verts.len(), &edges)?;
    g.labels = Some(
        verts
            .into_iter()
            .map(|x| VertexLabel::Wide(WideVertex { s, x }))
            .collect(),
    );
    Ok(g)
}

/// Chain image of a sequence vertex: `A_i = {j : x_j <= i and x_j ≡ i mod 2}`
/// for `i = 0..s−1`, as bitmasks.
pub(crate) fn chain_masks(s: u32, x: &[u32]) -> Vec<u32> {
    (0..s)
        .map(|i| {
            let mut mask = 0u32;
            for (j, &xj) in x.iter().enumerate() {
                if xj <= i && xj % 2 == i % 2 {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect()
}

/// The isomorphism from sequence vertices to chain vertices.  Output chain
/// validity is re-checked; a violation is an internal error.
pub fn sequence_to_chain(v: &WideVertex) -> Result<OmegaVertex> {
    if !v.is_valid() {
        return Err(Error::invalid(format!("{v} is not a valid sequence vertex")));
    }
    let t = v.t() as u32;
    let sets = chain_masks(v.s, &v.x);
    if !chain_is_valid(t, &sets) || !chain_consecutive_disjoint(&sets) {
        return Err(Error::internal(format!(
            "chain image of {v} violates the chain invariants"
        )));
    }
    Ok(OmegaVertex { t, sets })
}

/// Defining constraints of a chain vertex `(A_0..A_{s−1})`: |A_0| = 1,
/// A_1 nonempty, A_i ⊆ A_{i+2}, and the top two levels disjoint.
pub fn chain_is_valid(t: u32, sets: &[u32]) -> bool {
    let s = sets.len();
    let full = (1u32 << t) - 1;
    if s < 2 || sets.iter().any(|&m| m & !full != 0) {
        return false;
    }
    sets[0].count_ones() == 1
        && sets[1] != 0
        && (0..s.saturating_sub(2)).all(|i| sets[i] & !sets[i + 2] == 0)
        && sets[s - 2] & sets[s - 1] == 0
}

/// Consequence of the chain constraints, checked separately: consecutive
/// levels are disjoint.
pub fn chain_consecutive_disjoint(sets: &[u32]) -> bool {
    sets.windows(2).all(|w| w[0] & w[1] == 0)
}

/// Edge rule of `Omega:s,t`: mutual inclusion one level up, disjoint tops.
pub fn omega_adjacent(a: &[u32], b: &[u32]) -> bool {
    let s = a.len();
    debug_assert_eq!(s, b.len());
    (0..s - 1).all(|i| a[i] & !b[i + 1] == 0 && b[i] & !a[i + 1] == 0)
        && a[s - 1] & b[s - 1] == 0
}

/// Enumerate every valid chain directly from the defining constraints,
/// independent of the sequence encoding.  Order is unspecified.
fn enumerate_chains(s: u32, t: u32) -> Vec<Vec<u32>> {
    let full = (1u32 << t) - 1;
    let mut out = Vec::new();
    let mut chain: Vec<u32> = Vec::with_capacity(s as usize);
    fn rec(s: usize, full: u32, chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = chain.len();
        if i == s {
            if chain[s - 2] & chain[s - 1] == 0 {
                out.push(chain.clone());
            }
            return;
        }
        // Level 1 ranges over nonempty subsets; level i >= 2 over supersets
        // of level i−2.
        let base = if i >= 2 { chain[i - 2] } else { 0 };
        let free = full & !base;
        let mut c = free;
        loop {
            let m = base | c;
            if !(i == 1 && m == 0) {
                chain.push(m);
                rec(s, full, chain, out);
                chain.pop();
            }
            if c == 0 {
                break;
            }
            c = (c - 1) & free;
        }
    }
    for j in 0..t {
        chain.push(1 << j);
        rec(s as usize, full, &mut chain, &mut out);
        chain.pop();
    }
    out
}

/// Build `Omega:s,t` (s ≥ 2) with chain labels.
///
/// The vertex set is enumerated twice — once from the chain constraints,
/// once as the image of the sequence vertices — and the two enumerations are
/// required to agree as sets.  Vertices are ordered by the image of the
/// lexicographic sequence order, so the isomorphism is the identity on
/// indices.  Edges come from the chain-level edge rule, checked on all pairs.
pub fn build_omega(s: u32, t: u32) -> Result<Graph> {
    if s < 2 {
        return Err(Error::invalid(
            "chain form needs s >= 2; for s = 1 build the sequence form (it is the complete graph)",
        ));
    }
    check_params(s, t)?;
    let images: Vec<Vec<u32>> = w_vertices(s, t).iter().map(|x| chain_masks(s, x)).collect();

    let enumerated = enumerate_chains(s, t);
    if enumerated.len() != images.len() {
        return Err(Error::internal(format!(
            "chain enumeration found {} vertices, sequence image has {}",
            enumerated.len(),
            images.len()
        )));
    }
    let image_set: HashSet<&Vec<u32>> = images.iter().collect();
    if !enumerated.iter().all(|c| image_set.contains(c)) {
        return Err(Error::internal(
            "chain enumeration disagrees with the sequence image as a set",
        ));
    }
    for c in &images {
        if !chain_is_valid(t, c) || !chain_consecutive_disjoint(c) {
            return Err(Error::internal("invalid chain in vertex enumeration"));
        }
    }

    let n = images.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let images = &images;
            (u + 1..n)
                .filter(move |&v| omega_adjacent(&images[u], &images[v]))
                .map(move |v| (u, v))
        })
        .collect();

    let mut g = Graph::new(format!("Omega:{s},{t}"), n, &edges)?;
    g.labels = Some(
        images
            .into_iter()
            .map(|sets| VertexLabel::Omega(OmegaVertex { t, sets }))
            .collect(),
    );
    Ok(g)
}

/// The coloring that assigns each sequence vertex the position of its unique
/// zero coordinate.  Requires sequence labels; the result is verified proper.
pub fn canonical_coloring(g: &Graph) -> Result<Coloring> {
    let labels = g
        .labels
        .as_ref()
        .ok_or_else(|| Error::invalid("canonical coloring needs sequence labels"))?;
    let mut t = 0u32;
    let mut assign = Vec::with_capacity(g.n());
    for l in labels {
        match l {
            VertexLabel::Wide(w) => {
                t = w.t() as u32;
                assign.push(w.zero_position());
            }
            other => {
                return Err(Error::invalid(format!(
                    "canonical coloring needs sequence labels, found {other}"
                )))
            }
        }
    }
    let c = Coloring::new(t, assign)?;
    if !c.is_proper(g) {
        return Err(Error::internal("canonical coloring is not proper"));
    }
    Ok(c)
}

/// Outcome of a wideness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WideCheck {
    Wide,
    /// Two vertices (possibly equal) with the same color joined by a walk of
    /// the offending length.
    NotWide {
        u: usize,
        v: usize,
        color: u32,
        walk_len: usize,
    },
}

impl WideCheck {
    pub fn is_wide(&self) -> bool {
        matches!(self, WideCheck::Wide)
    }
}

fn check_classes(c: &Coloring, rel: &BitMatrix, walk_len: usize) -> WideCheck {
    let mut classes: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, &col) in c.assign.iter().enumerate() {
        classes.entry(col).or_default().push(v);
    }
    let mut colors: Vec<u32> = classes.keys().copied().collect();
    colors.sort_unstable();
    for col in colors {
        let class = &classes[&col];
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i..] {
                if rel.get(u, v) {
                    return WideCheck::NotWide { u, v, color: col, walk_len };
                }
            }
        }
    }
    WideCheck::Wide
}

/// Test whether a coloring is s-wide: no two equal-colored vertices (a vertex
/// may pair with itself) are joined by a walk of length exactly 2s−1.
pub fn is_s_wide(g: &Graph, c: &Coloring, s: u32) -> Result<WideCheck> {
    if c.assign.len() != g.n() {
        return Err(Error::invalid("coloring does not cover the vertex set"));
    }
    if s < 1 {
        return Err(Error::invalid("wideness parameter must be at least 1"));
    }
    let len = (2 * s - 1) as usize;
    Ok(check_classes(c, &g.walk_relation(len), len))
}

/// Stricter convenience check: every odd walk length 1, 3, …, 2s−1.  The
/// definition itself only requires length 2s−1.
pub fn is_s_wide_all_odd(g: &Graph, c: &Coloring, s: u32) -> Result<WideCheck> {
    if c.assign.len() != g.n() {
        return Err(Error::invalid("coloring does not cover the vertex set"));
    }
    if s < 1 {
        return Err(Error::invalid("wideness parameter must be at least 1"));
    }
    let mut rel = g.walk_relation(1);
    let mut len = 1usize;
    loop {
        if let bad @ WideCheck::NotWide { .. } = check_classes(c, &rel, len) {
            return Ok(bad);
        }
        if len == (2 * s - 1) as usize {
            return Ok(WideCheck::Wide);
        }
        let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        rel = rel.or_gather(&adj).or_gather(&adj);
        len += 2;
    }
}

/// The explicit odd cycle in `W:s,t` for t ≥ 2s+1: the cyclic rotations of
/// `(0,1,…,s,s,s−1,…,1)`, padded with trailing `s` coordinates.  Consecutive
/// rotations are adjacent, so the 2s+1 vertices form an odd cycle; this is
/// verified against the edge rule before returning.
pub fn embedded_odd_cycle(s: u32, t: u32) -> Result<Vec<WideVertex>> {
    if t < 2 * s + 1 {
        return Err(Error::invalid(format!(
            "need t >= 2s+1 = {} to embed the cycle, got t = {t}",
            2 * s + 1
        )));
    }
    if t > 64 {
        return Err(Error::CapExceeded("t > 64 unsupported".into()));
    }
    let m = (2 * s + 1) as usize;
    let mut base: Vec<u32> = (0..=s).collect();
    base.extend((1..=s).rev());
    debug_assert_eq!(base.len(), m);

    let cycle: Vec<WideVertex> = (0..m)
        .map(|r| {
            let mut x: Vec<u32> = (0..m).map(|i| base[(i + m - r) % m]).collect();
            x.resize(t as usize, s);
            WideVertex { s, x }
        })
        .collect();

    for (i, v) in cycle.iter().enumerate() {
        if !v.is_valid() {
            return Err(Error::internal(format!("cycle vertex {v} is invalid")));
        }
        let w = &cycle[(i + 1) % m];
        if !w_adjacent(s, &v.x, &w.x) {
            return Err(Error::internal(format!(
                "cycle vertices {v} and {w} are not adjacent"
            )));
        }
    }
    let distinct: HashSet<&Vec<u32>> = cycle.iter().map(|v| &v.x).collect();
    if distinct.len() != m {
        return Err(Error::internal("cycle vertices are not distinct"));
    }
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use crate::iso::{is_isomorphic_small, IsoResult};

    #[test]
    fn counts_match_formula() {
        for (s, t, want) in [(2, 3, 9), (2, 4, 28), (3, 4, 76), (1, 4, 4), (3, 8, 16472)] {
            assert_eq!(vertex_count_formula(s, t).unwrap(), want, "({s},{t})");
        }
        for (s, t) in [(2u32, 3u32), (2, 4), (3, 3), (1, 4), (4, 3)] {
            let g = build_w(s, t).unwrap();
            assert_eq!(g.n() as u64, vertex_count_formula(s, t).unwrap(), "({s},{t})");
        }
    }

    #[test]
    fn w_1_t_is_complete() {
        let g = build_w(1, 4).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        match is_isomorphic_small(&g, &crate::graph::complete(4).unwrap(), 10_000).unwrap() {
            IsoResult::Isomorphic(_) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn w_2_3_is_c9() {
        let g = build_w(2, 3).unwrap();
        assert_eq!((g.n(), g.m()), (9, 9));
        match is_isomorphic_small(&g, &cycle(9).unwrap(), 100_000).unwrap() {
            IsoResult::Isomorphic(_) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn build_caps_enforced() {
        assert!(matches!(build_w(3, 9), Err(Error::CapExceeded(_))));
        assert!(build_w(0, 3).is_err());
        assert!(build_w(2, 1).is_err());
        assert!(build_omega(1, 3).is_err());
    }

    #[test]
    fn omega_2_2_by_hand() {
        let g = build_omega(2, 2).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        let labels = g.labels.as_ref().unwrap();
        assert_eq!(labels[0].to_string(), "({1},{2})");
        assert_eq!(labels[1].to_string(), "({2},{1})");
    }

    #[test]
    fn omega_edges_equal_w_edges_small() {
        for (s, t) in [(2u32, 3u32), (2, 4), (3, 3), (3, 4)] {
            let w = build_w(s, t).unwrap();
            let o = build_omega(s, t).unwrap();
            assert_eq!(w.n(), o.n(), "({s},{t})");
            assert_eq!(w.edges(), o.edges(), "({s},{t})");
        }
    }

    #[test]
    fn iso_examples_by_hand() {
        let img = sequence_to_chain(&WideVertex { s: 2, x: vec![0, 1] }).unwrap();
        assert_eq!(img.to_string(), "({1},{2})");
        let img = sequence_to_chain(&WideVertex { s: 2, x: vec![1, 0, 2] }).unwrap();
        assert_eq!(img.to_string(), "({2},{1})");
        let img = sequence_to_chain(&WideVertex { s: 3, x: vec![0, 1, 2, 3] }).unwrap();
        assert_eq!(img.to_string(), "({1},{2},{1,3})");
        assert!(sequence_to_chain(&WideVertex { s: 2, x: vec![2, 2] }).is_err());
    }

    #[test]
    fn canonical_coloring_examples() {
        let g = build_w(2, 3).unwrap();
        let c = canonical_coloring(&g).unwrap();
        assert_eq!(c.num_colors, 3);
        assert!(c.is_proper(&g));

        // Sequence form of the complete graph: identity coloring.
        let k = build_w(1, 4).unwrap();
        let c = canonical_coloring(&k).unwrap();
        assert_eq!(c.assign, vec![1, 2, 3, 4]);

        let g = build_w(2, 4).unwrap();
        let c = canonical_coloring(&g).unwrap();
        assert_eq!(c.class_sizes().iter().sum::<usize>(), 28);

        assert!(canonical_coloring(&cycle(5).unwrap()).is_err());
    }

    #[test]
    fn canonical_coloring_is_wide() {
        for (s, t) in [(2u32, 3u32), (2, 4), (3, 3), (3, 4), (1, 5)] {
            let g = build_w(s, t).unwrap();
            let c = canonical_coloring(&g).unwrap();
            assert!(is_s_wide(&g, &c, s).unwrap().is_wide(), "({s},{t})");
        }
    }

    #[test]
    fn repeating_pattern_on_c9_is_not_wide() {
        let g = cycle(9).unwrap();
        let c = Coloring::new(3, (0..9).map(|i| (i % 3) as u32 + 1).collect()).unwrap();
        assert!(c.is_proper(&g));
        match is_s_wide(&g, &c, 2).unwrap() {
            WideCheck::NotWide { u, v, color, walk_len } => {
                assert_eq!(walk_len, 3);
                assert_eq!(c.color(u), color);
                assert_eq!(c.color(v), color);
                // Distance-3 vertices around the cycle share a color.
                assert_eq!((v + 9 - u) % 9 % 3, 0);
            }
            WideCheck::Wide => panic!("expected a witness"),
        }
    }

    #[test]
    fn s1_wideness_is_properness() {
        let g = cycle(4).unwrap();
        let proper = Coloring::new(2, vec![1, 2, 1, 2]).unwrap();
        assert!(is_s_wide(&g, &proper, 1).unwrap().is_wide());
        let improper = Coloring::new(2, vec![1, 1, 1, 2]).unwrap();
        assert!(!is_s_wide(&g, &improper, 1).unwrap().is_wide());
    }

    #[test]
    fn all_odd_mode_catches_short_walks() {
        // 5-coloring of C_9 that is fine at walk length 3 for colors used
        // once, but improper somewhere: strict mode must catch length 1.
        let g = cycle(9).unwrap();
        let c = Coloring::new(9, (1..=9).collect()).unwrap();
        // All colors distinct: wide at every length.
        assert!(is_s_wide_all_odd(&g, &c, 2).unwrap().is_wide());
        let improper = Coloring::new(9, vec![1, 1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        match is_s_wide_all_odd(&g, &improper, 2).unwrap() {
            WideCheck::NotWide { walk_len, .. } => assert_eq!(walk_len, 1),
            WideCheck::Wide => panic!("expected a witness"),
        }
    }

    #[test]
    fn odd_girth_formula_values() {
        assert_eq!(odd_girth_formula(2, 3).unwrap(), 9);
        assert_eq!(odd_girth_formula(2, 5).unwrap(), 5);
        assert_eq!(odd_girth_formula(2, 4).unwrap(), 7);
        assert_eq!(odd_girth_formula(1, 3).unwrap(), 3);
        assert!(odd_girth_formula(2, 2).is_err());
    }

    #[test]
    fn odd_girth_matches_formula_small() {
        for (s, t) in [(2u32, 3u32), (2, 4), (2, 5), (3, 3), (3, 4)] {
            let g = build_w(s, t).unwrap();
            assert_eq!(
                g.odd_girth().map(|v| v as u64),
                Some(odd_girth_formula(s, t).unwrap()),
                "({s},{t})"
            );
        }
    }

    #[test]
    fn embedded_cycle_cases() {
        // Triangle inside the complete graph form.
        let tri = embedded_odd_cycle(1, 3).unwrap();
        assert_eq!(tri.len(), 3);

        let five = embedded_odd_cycle(2, 5).unwrap();
        assert_eq!(five.len(), 5);
        assert_eq!(five[0].x, vec![0, 1, 2, 2, 1]);

        // One padding coordinate.
        let padded = embedded_odd_cycle(2, 6).unwrap();
        assert_eq!(padded[0].x, vec![0, 1, 2, 2, 1, 2]);

        assert!(embedded_odd_cycle(2, 4).is_err());
    }

    #[test]
    fn embedded_cycle_lives_in_graph() {
        let g = build_w(2, 5).unwrap();
        let cyc = embedded_odd_cycle(2, 5).unwrap();
        let labels = g.labels.as_ref().unwrap();
        let idx: Vec<usize> = cyc
            .iter()
            .map(|v| {
                labels
                    .iter()
                    .position(|l| matches!(l, VertexLabel::Wide(w) if w == v))
                    .expect("cycle vertex present")
            })
            .collect();
        for i in 0..idx.len() {
            assert!(g.has_edge(idx[i], idx[(i + 1) % idx.len()]));
        }
    }

    #[test]
    fn chain_invariants_on_enumeration() {
        for (s, t) in [(2u32, 4u32), (3, 4), (4, 3), (5, 3)] {
            let g = build_omega(s, t).unwrap();
            for l in g.labels.as_ref().unwrap() {
                let VertexLabel::Omega(o) = l else { panic!("chain label expected") };
                assert!(chain_is_valid(t, &o.sets));
                assert!(chain_consecutive_disjoint(&o.sets));
            }
        }
    }
}
