//! Graph homomorphisms: representation and verification, the explicit
//! constructions into Kneser graphs, composition and pullbacks, and an
//! exhaustive backtracking search oracle used to certify nonexistence.

use crate::bitset::Bitset;
use crate::coloring::Coloring;
use crate::graph::{k_subset_index, Graph};
use crate::label::{mask_elems, OmegaVertex, VertexLabel};
use crate::wide;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::collections::VecDeque;

/// Verification state of a [`VertexMap`].  Only [`verify_homomorphism`]
/// transitions it out of `Unverified`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Unverified,
    VerifiedHom,
    Refuted { edge: (usize, usize) },
}

impl Certificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certificate::Unverified => "unverified",
            Certificate::VerifiedHom => "verified-hom",
            Certificate::Refuted { .. } => "refuted",
        }
    }
}

/// A total map from the vertices of one named graph to another, with a
/// verification certificate.
#[derive(Clone, Debug)]
pub struct VertexMap {
    pub source: String,
    pub target: String,
    /// `image[v]` is the target vertex assigned to source vertex `v`.
    pub image: Vec<usize>,
    certificate: Certificate,
}

impl VertexMap {
    pub fn new(source: impl Into<String>, target: impl Into<String>, image: Vec<usize>) -> Self {
        VertexMap {
            source: source.into(),
            target: target.into(),
            image,
            certificate: Certificate::Unverified,
        }
    }

    pub fn identity(g: &Graph) -> Self {
        VertexMap::new(g.name.clone(), g.name.clone(), (0..g.n()).collect())
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn is_verified(&self) -> bool {
        self.certificate == Certificate::VerifiedHom
    }
}

/// Two graph names describe the same carrier when equal, or when one is the
/// sequence form and the other the chain form of the same parameters (the
/// two encodings share vertex indexing by construction).
pub fn carrier_eq(a: &str, b: &str) -> bool {
    fn normalize(name: &str) -> String {
        match name.strip_prefix("Omega:") {
            Some(rest) => format!("W:{rest}"),
            None => name.to_string(),
        }
    }
    normalize(a) == normalize(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Verified,
    Refuted { edge: (usize, usize) },
}

/// Check edge preservation of `m` from `f` to `g`, streaming over the edges
/// of `f`.  Updates the map's certificate and returns the outcome.
pub fn verify_homomorphism(f: &Graph, g: &Graph, m: &mut VertexMap) -> Result<VerifyOutcome> {
    if !carrier_eq(&m.source, &f.name) || !carrier_eq(&m.target, &g.name) {
        return Err(Error::invalid(format!(
            "map {} -> {} does not match graphs {} -> {}",
            m.source, m.target, f.name, g.name
        )));
    }
    if m.image.len() != f.n() {
        return Err(Error::invalid(format!(
            "map covers {} vertices, source has {}",
            m.image.len(),
            f.n()
        )));
    }
    if let Some(&w) = m.image.iter().find(|&&w| w >= g.n()) {
        return Err(Error::invalid(format!(
            "image vertex {w} out of range for target with {} vertices",
            g.n()
        )));
    }
    for &(u, v) in f.edges() {
        if !g.has_edge(m.image[u], m.image[v]) {
            m.certificate = Certificate::Refuted { edge: (u, v) };
            return Ok(VerifyOutcome::Refuted { edge: (u, v) });
        }
    }
    m.certificate = Certificate::VerifiedHom;
    Ok(VerifyOutcome::Verified)
}

/// Composition `m2 ∘ m1`.  Both maps must be verified and the endpoints must
/// agree; the result starts unverified.
pub fn compose(m1: &VertexMap, m2: &VertexMap) -> Result<VertexMap> {
    if !m1.is_verified() || !m2.is_verified() {
        return Err(Error::invalid("compose requires two verified maps"));
    }
    if !carrier_eq(&m1.target, &m2.source) {
        return Err(Error::invalid(format!(
            "cannot compose {} -> {} with {} -> {}",
            m1.source, m1.target, m2.source, m2.target
        )));
    }
    let image = m1
        .image
        .iter()
        .map(|&w| {
            m2.image.get(w).copied().ok_or_else(|| {
                Error::invalid(format!("intermediate vertex {w} outside the second map"))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(VertexMap::new(m1.source.clone(), m2.target.clone(), image))
}

// ---------------------------------------------------------------------------
// The explicit map from the chain graph into the Kneser graph.
// ---------------------------------------------------------------------------

/// Resolution of the "pick any element" steps in the explicit construction:
/// deterministic minimum, or a seeded uniform pick (per-vertex substreams, so
/// the result is independent of evaluation order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChoicePolicy {
    Smallest,
    SeededRandom(u64),
}

impl ChoicePolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChoicePolicy::Smallest => "smallest",
            ChoicePolicy::SeededRandom(_) => "seeded-random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            ChoicePolicy::Smallest => None,
            ChoicePolicy::SeededRandom(s) => Some(*s),
        }
    }
}

enum Chooser {
    Smallest,
    Rng(ChaCha8Rng),
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Chooser {
    fn for_vertex(policy: ChoicePolicy, vertex_index: usize) -> Chooser {
        match policy {
            ChoicePolicy::Smallest => Chooser::Smallest,
            ChoicePolicy::SeededRandom(seed) => {
                let mixed = splitmix64(seed ^ (vertex_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                Chooser::Rng(ChaCha8Rng::seed_from_u64(mixed))
            }
        }
    }

    /// `k` distinct 1-based elements of `mask`.
    fn pick(&mut self, mask: u32, k: usize) -> Vec<u32> {
        let mut elems = mask_elems(mask);
        debug_assert!(elems.len() >= k);
        match self {
            Chooser::Smallest => {}
            Chooser::Rng(rng) => {
                for i in 0..k {
                    let j = rng.gen_range(i..elems.len());
                    elems.swap(i, j);
                }
            }
        }
        elems.truncate(k);
        elems
    }
}

fn unique_elem(mask: u32) -> u32 {
    debug_assert_eq!(mask.count_ones(), 1);
    mask.trailing_zeros() + 1
}

fn min_of(mask: u32) -> u32 {
    debug_assert_ne!(mask, 0);
    mask.trailing_zeros() + 1
}

fn contains(mask: u32, elem: u32) -> bool {
    mask >> (elem - 1) & 1 == 1
}

/// Assign the two image elements contributed by the set triple
/// `(P, Q, R) = (A_{i−2}, A_{i−1}, A_i)`.  `lo` is the label pair used by
/// the size-decrease case on the first inequality (it differs between the
/// odd and even constructions); `hi` the pair for the second.
fn triple_elems(
    p: u32,
    q: u32,
    r: u32,
    lo: (u32, u32),
    hi: (u32, u32),
    chooser: &mut Chooser,
) -> Result<(u32, u32)> {
    let (cp, cq, cr) = (p.count_ones(), q.count_ones(), r.count_ones());
    let first_drop = cp > cq;
    let second_drop = cq > cr;
    if first_drop && second_drop {
        // P ⊆ R makes the two strict drops incompatible.
        return Err(Error::internal(
            "both size drops hold on a chain triple; the chain violates its inclusion invariant",
        ));
    }
    let free = r & !p;
    Ok(if first_drop {
        (lo.0, lo.1)
    } else if second_drop {
        (hi.0, hi.1)
    } else if cp < cq && cq < cr {
        if free.count_ones() < 2 {
            return Err(Error::internal("strictly growing triple with under two free elements"));
        }
        let e = chooser.pick(free, 2);
        (e[0], e[1])
    } else if cp < cq {
        // Sizes P < Q = R.
        if free == 0 {
            return Err(Error::internal("growing triple with no free element"));
        }
        let e = chooser.pick(free, 1)[0];
        let second = if contains(q, min_of(q | r)) { hi.0 } else { hi.1 };
        (e, second)
    } else if cq < cr {
        // Sizes P = Q < R.
        if free == 0 {
            return Err(Error::internal("growing triple with no free element"));
        }
        let first = if contains(p, min_of(p | q)) { lo.0 } else { lo.1 };
        let e = chooser.pick(free, 1)[0];
        (first, e)
    } else {
        // All three sizes equal.
        let first = if contains(p, min_of(p | q)) { lo.0 } else { lo.1 };
        let second = if contains(q, min_of(q | r)) { hi.0 } else { hi.1 };
        (first, second)
    })
}

/// Image k-set (sorted, 1-based, over `[t+2(s−1)]`) of one chain vertex.
fn image_for_chain(
    s: u32,
    t: u32,
    chain: &[u32],
    policy: ChoicePolicy,
    vertex_index: usize,
) -> Result<Vec<u32>> {
    debug_assert_eq!(chain.len(), s as usize);
    let mut chooser = Chooser::for_vertex(policy, vertex_index);
    let mut out: Vec<u32> = Vec::with_capacity(s as usize);

    if s % 2 == 1 {
        // Odd construction: one element from the bottom singleton, two per
        // even-index triple.
        out.push(unique_elem(chain[0]));
        let mut i = 2;
        while i < s {
            let (p, q, r) = (chain[(i - 2) as usize], chain[(i - 1) as usize], chain[i as usize]);
            let (a, b) = triple_elems(p, q, r, (t + i - 1, t + i), (t + s + i - 2, t + s + i - 1), &mut chooser)?;
            out.push(a);
            out.push(b);
            i += 2;
        }
    } else {
        // Even construction: the bottom pair contributes two elements, then
        // two per odd-index triple with the low label pair shifted by one.
        let (a0, a1) = (chain[0], chain[1]);
        let (c0, c1) = (a0.count_ones(), a1.count_ones());
        if c0 > c1 {
            return Err(Error::internal(
                "bottom level larger than the next; the chain violates its nonemptiness invariant",
            ));
        }
        if c1 == c0 {
            out.push(if contains(a0, min_of(a0 | a1)) { t + 1 } else { t + 2 });
            out.push(unique_elem(a1));
        } else {
            let e = chooser.pick(a1, 2);
            out.push(e[0]);
            out.push(e[1]);
        }
        let mut i = 3;
        while i < s {
            let (p, q, r) = (chain[(i - 2) as usize], chain[(i - 1) as usize], chain[i as usize]);
            let (a, b) = triple_elems(p, q, r, (t + i, t + i + 1), (t + s + i - 2, t + s + i - 1), &mut chooser)?;
            out.push(a);
            out.push(b);
            i += 2;
        }
    }

    out.sort_unstable();
    let n = t + 2 * (s - 1);
    let distinct = out.windows(2).all(|w| w[0] < w[1]);
    if out.len() != s as usize || !distinct || out.iter().any(|&e| e == 0 || e > n) {
        let chain_view = OmegaVertex { t, sets: chain.to_vec() };
        return Err(Error::internal(format!(
            "image of chain {chain_view} is not an s-subset of the palette: {out:?}"
        )));
    }
    Ok(out)
}

/// Largest vertex count accepted by the streaming construction/verification
/// paths (vertex enumeration without materializing edges).
pub const STREAM_VERTEX_CAP: u64 = 500_000;

fn check_stream_params(s: u32, t: u32) -> Result<u64> {
    if s < 1 || t < 2 {
        return Err(Error::invalid("need s >= 1 and t >= 2"));
    }
    if t > crate::label::MAX_GROUND_SET {
        return Err(Error::CapExceeded(format!(
            "t = {t} exceeds the supported ground-set size"
        )));
    }
    let count = wide::vertex_count_formula(s, t)?;
    if count > STREAM_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "{count} vertices exceed the streaming cap {STREAM_VERTEX_CAP}"
        )));
    }
    Ok(count)
}

/// Image k-sets for every vertex, in the lexicographic sequence order (which
/// is also the chain-graph vertex order).
pub fn wide_to_kneser_images(s: u32, t: u32, policy: ChoicePolicy) -> Result<Vec<Vec<u32>>> {
    check_stream_params(s, t)?;
    let verts = wide::w_vertices(s, t);
    if s == 1 {
        // Sequence index v has its zero at position v+1; send it to the
        // singleton {v+1}.
        return Ok((0..verts.len()).map(|v| vec![v as u32 + 1]).collect());
    }
    verts
        .iter()
        .enumerate()
        .map(|(idx, x)| image_for_chain(s, t, &wide::chain_masks(s, x), policy, idx))
        .collect()
}

/// The explicit homomorphism into `KG:t+2(s−1),s`, as a vertex map on
/// indices.  Source is the chain graph for s ≥ 2, the sequence graph for
/// s = 1.  The map starts unverified; callers certify it against built or
/// streamed edges.
pub fn wide_to_kneser(s: u32, t: u32, policy: ChoicePolicy) -> Result<VertexMap> {
    let images = wide_to_kneser_images(s, t, policy)?;
    let n = t + 2 * (s - 1);
    let image: Vec<usize> = images.iter().map(|ks| k_subset_index(n, ks)).collect();
    let source = if s == 1 {
        format!("W:1,{t}")
    } else {
        format!("Omega:{s},{t}")
    };
    Ok(VertexMap::new(source, format!("KG:{n},{s}"), image))
}

/// Counts recorded by the streaming verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamedVerification {
    pub vertices: u64,
    pub edges: u64,
}

/// Verify the explicit Kneser map over the sequence-form edge rule without
/// materializing any graph: every neighbor pair must receive disjoint
/// k-sets.  Returns the vertex/edge counts seen.
pub fn verify_wide_to_kneser_streamed(
    s: u32,
    t: u32,
    policy: ChoicePolicy,
) -> Result<StreamedVerification> {
    use rayon::prelude::*;
    check_stream_params(s, t)?;
    let verts = wide::w_vertices(s, t);
    let images = wide_to_kneser_images(s, t, policy)?;
    let masks: Vec<u32> = images
        .iter()
        .map(|ks| ks.iter().fold(0u32, |m, &e| m | 1 << (e - 1)))
        .collect();
    let index: HashMap<&[u32], usize> = verts
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();

    let results: Vec<Result<u64>> = verts
        .par_iter()
        .enumerate()
        .map(|(u, x)| {
            let mut degree = 0u64;
            let mut clash: Option<usize> = None;
            wide::for_each_w_neighbor(s, x, &mut |y| {
                degree += 1;
                if clash.is_none() {
                    let v = *index.get(y).expect("neighbor is a vertex");
                    if masks[u] & masks[v] != 0 {
                        clash = Some(v);
                    }
                }
            });
            match clash {
                Some(v) => Err(Error::internal(format!(
                    "image sets intersect across the edge ({u},{v})"
                ))),
                None => Ok(degree),
            }
        })
        .collect();

    let mut degree_sum = 0u64;
    for r in results {
        degree_sum += r?;
    }
    if degree_sum % 2 != 0 {
        return Err(Error::internal("neighbor streaming produced an odd degree sum"));
    }
    Ok(StreamedVerification {
        vertices: verts.len() as u64,
        edges: degree_sum / 2,
    })
}

// ---------------------------------------------------------------------------
// Level restriction and its composition with the Kneser map.
// ---------------------------------------------------------------------------

/// The coordinatewise clamp `x_i ↦ min(x_i, r)` as a map from `W:s,t` to
/// `W:r,t`, verified against both built graphs.
pub fn level_restriction(s: u32, r: u32, t: u32) -> Result<VertexMap> {
    if r < 1 || r > s {
        return Err(Error::invalid(format!("need 1 <= r <= s, got r={r}, s={s}")));
    }
    let source = wide::build_w(s, t)?;
    let target = wide::build_w(r, t)?;
    let target_index: HashMap<&VertexLabel, usize> = target
        .labels
        .as_ref()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let image = source
        .labels
        .as_ref()
        .unwrap()
        .iter()
        .map(|l| {
            let VertexLabel::Wide(wv) = l else {
                return Err(Error::internal("sequence labels expected"));
            };
            let clamped = VertexLabel::Wide(crate::label::WideVertex {
                s: r,
                x: wv.x.iter().map(|&a| a.min(r)).collect(),
            });
            target_index
                .get(&clamped)
                .copied()
                .ok_or_else(|| Error::internal(format!("clamp of {l} is not a vertex")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut m = VertexMap::new(source.name.clone(), target.name.clone(), image);
    match verify_homomorphism(&source, &target, &mut m)? {
        VerifyOutcome::Verified => Ok(m),
        VerifyOutcome::Refuted { edge } => Err(Error::internal(format!(
            "level restriction dropped the edge {edge:?}"
        ))),
    }
}

/// Composite homomorphism `W:s,t -> W:r,t -> KG:t+2(r−1),r`, verified.
pub fn wide_to_kneser_via_restriction(
    s: u32,
    r: u32,
    t: u32,
    policy: ChoicePolicy,
) -> Result<VertexMap> {
    let phi = level_restriction(s, r, t)?;
    let mut f = wide_to_kneser(r, t, policy)?;
    let carrier = wide::build_w(r, t)?;
    let n = t + 2 * (r - 1);
    let kg = crate::graph::kneser(n, r)?;
    match verify_homomorphism(&carrier, &kg, &mut f)? {
        VerifyOutcome::Verified => {}
        VerifyOutcome::Refuted { edge } => {
            return Err(Error::internal(format!("Kneser map dropped the edge {edge:?}")))
        }
    }
    let mut composed = compose(&phi, &f)?;
    let source = wide::build_w(s, t)?;
    match verify_homomorphism(&source, &kg, &mut composed)? {
        VerifyOutcome::Verified => Ok(composed),
        VerifyOutcome::Refuted { edge } => Err(Error::internal(format!(
            "composite map dropped the edge {edge:?}"
        ))),
    }
}

/// Pull a coloring of the source back along a verified map into the
/// sequence graph: each vertex takes the canonical color of its image.  The
/// result is re-checked to be s-wide.
pub fn pullback_coloring(source: &Graph, m: &VertexMap, w: &Graph) -> Result<Coloring> {
    if !m.is_verified() {
        return Err(Error::invalid("pullback requires a verified map"));
    }
    if !carrier_eq(&m.source, &source.name) || !carrier_eq(&m.target, &w.name) {
        return Err(Error::invalid("pullback endpoints do not match the map"));
    }
    let canon = wide::canonical_coloring(w)?;
    let s = match w.labels.as_ref().and_then(|ls| ls.first()) {
        Some(VertexLabel::Wide(wv)) => wv.s,
        _ => return Err(Error::invalid("pullback target needs sequence labels")),
    };
    let assign = m.image.iter().map(|&im| canon.color(im)).collect();
    let c = Coloring::new(canon.num_colors, assign)?;
    match wide::is_s_wide(source, &c, s)? {
        wide::WideCheck::Wide => Ok(c),
        wide::WideCheck::NotWide { u, v, color, walk_len } => Err(Error::internal(format!(
            "pulled-back coloring is not {s}-wide: vertices {u},{v} share color {color} across a {walk_len}-walk"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Exhaustive search oracle.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(VertexMap),
    NoHomomorphism,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&VertexMap> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

enum Step {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

struct HomSearch<'a> {
    f: &'a Graph,
    g_rows: Vec<Bitset>,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl HomSearch<'_> {
    fn revise(&self, doms: &mut [Bitset], a: usize, b: usize) -> bool {
        let mut removed = false;
        let vals: Vec<usize> = doms[a].iter().collect();
        for x in vals {
            if !self.g_rows[x].intersects(&doms[b]) {
                doms[a].remove(x);
                removed = true;
            }
        }
        removed
    }

    /// Arc-consistency propagation seeded from `starts`; false on a wipeout.
    fn propagate(&self, doms: &mut [Bitset], starts: &[usize]) -> bool {
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for &b in starts {
            for &a in self.f.neighbors(b) {
                queue.push_back((a, b));
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            if self.revise(doms, a, b) {
                if doms[a].is_empty() {
                    return false;
                }
                for &c in self.f.neighbors(a) {
                    if c != b {
                        queue.push_back((c, a));
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize, doms: &[Bitset]) -> Step {
        if depth == self.order.len() {
            let image = (0..self.f.n())
                .map(|v| doms[v].first().expect("assigned domain"))
                .collect();
            return Step::Found(image);
        }
        let var = self.order[depth];
        let vals: Vec<usize> = doms[var].iter().collect();
        for w in vals {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let mut next = doms.to_vec();
            for x in next[var].clone().iter() {
                if x != w {
                    next[var].remove(x);
                }
            }
            if self.propagate(&mut next, &[var]) {
                match self.dfs(depth + 1, &next) {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
        }
        Step::Exhausted
    }
}

/// Search for a homomorphism from `f` to `g` by backtracking over vertex
/// images with arc-consistency propagation.  Vertices are assigned in
/// degree-descending order (ties prefer vertices adjacent to the assigned
/// prefix); when the target is vertex-transitive by construction, the first
/// image is pinned to vertex 0.  `NoHomomorphism` is returned only after
/// exhaustive refutation; running out of `budget` nodes is a distinct state.
/// Found maps are verified before being returned.
pub fn search_homomorphism(f: &Graph, g: &Graph, budget: u64) -> Result<SearchOutcome> {
    if f.n() == 0 {
        let mut m = VertexMap::new(f.name.clone(), g.name.clone(), Vec::new());
        m.certificate = Certificate::VerifiedHom;
        return Ok(SearchOutcome::Found(m));
    }
    if g.n() == 0 {
        return Ok(SearchOutcome::NoHomomorphism);
    }

    // Degree-descending assignment order, preferring vertices with an
    // already-ordered neighbor so propagation bites early.
    let n = f.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut touching = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (f.degree(v), touching[v], std::cmp::Reverse(v)))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &w in f.neighbors(v) {
            touching[w] = 1;
        }
    }

    let mut g_rows = vec![Bitset::new(g.n()); g.n()];
    for &(u, v) in g.edges() {
        g_rows[u].insert(v);
        g_rows[v].insert(u);
    }

    let mut doms = vec![Bitset::full(g.n()); n];
    if g.vertex_transitive {
        let first = order[0];
        doms[first] = Bitset::new(g.n());
        doms[first].insert(0);
    }

    let mut search = HomSearch { f, g_rows, order, nodes: 0, budget };
    // Root-level propagation from every vertex once.
    let all: Vec<usize> = (0..n).collect();
    if !search.propagate(&mut doms, &all) {
        return Ok(SearchOutcome::NoHomomorphism);
    }
    match search.dfs(0, &doms) {
        Step::Found(image) => {
            let mut m = VertexMap::new(f.name.clone(), g.name.clone(), image);
            match verify_homomorphism(f, g, &mut m)? {
                VerifyOutcome::Verified => Ok(SearchOutcome::Found(m)),
                VerifyOutcome::Refuted { edge } => Err(Error::internal(format!(
                    "search produced a non-homomorphism at edge {edge:?}"
                ))),
            }
        }
        Step::Exhausted => Ok(SearchOutcome::NoHomomorphism),
        Step::OutOfBudget => Ok(SearchOutcome::BudgetExhausted),
    }
}

/// Reference oracle: enumerate every total map and test edge preservation.
/// Deliberately tiny; used to validate the search.
pub fn naive_homomorphism_exists(f: &Graph, g: &Graph) -> Result<bool> {
    if f.n() > 8 || g.n() > 6 {
        return Err(Error::CapExceeded(
            "naive enumeration limited to 8 source and 6 target vertices".into(),
        ));
    }
    if f.n() == 0 {
        return Ok(true);
    }
    if g.n() == 0 {
        return Ok(false);
    }
    let mut assign = vec![0usize; f.n()];
    loop {
        if f.edges()
            .iter()
            .all(|&(u, v)| g.has_edge(assign[u], assign[v]))
        {
            return Ok(true);
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == f.n() {
                return Ok(false);
            }
            assign[i] += 1;
            if assign[i] < g.n() {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Serializable certificates.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertCounts {
    pub source_vertices: u64,
    pub source_edges: u64,
    pub target_vertices: u64,
    pub target_edges: u64,
}

/// On-disk form of a verified vertex map, replayable bit-exactly from
/// `(source, target, policy, seed)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCertificate {
    pub schema: String,
    pub source: String,
    pub target: String,
    pub policy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub images: Vec<usize>,
    pub certificate: String,
    pub counts: CertCounts,
}

pub const CERT_SCHEMA: &str = "widecolor-cert/1";

impl HomCertificate {
    pub fn from_map(m: &VertexMap, policy: ChoicePolicy, counts: CertCounts) -> Self {
        HomCertificate {
            schema: CERT_SCHEMA.to_string(),
            source: m.source.clone(),
            target: m.target.clone(),
            policy: policy.as_str().to_string(),
            seed: policy.seed(),
            images: m.image.clone(),
            certificate: m.certificate.as_str().to_string(),
            counts,
        }
    }

    pub fn to_map(&self) -> VertexMap {
        VertexMap::new(self.source.clone(), self.target.clone(), self.images.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, kneser};
    use crate::wide::{build_omega, build_w};

    #[test]
    fn identity_verifies_constant_refutes() {
        let c9 = cycle(9).unwrap();
        let mut id = VertexMap::identity(&c9);
        assert_eq!(verify_homomorphism(&c9, &c9, &mut id).unwrap(), VerifyOutcome::Verified);
        assert!(id.is_verified());

        let k3 = complete(3).unwrap();
        let mut constant = VertexMap::new("C:9", "K:3", vec![0; 9]);
        match verify_homomorphism(&c9, &k3, &mut constant).unwrap() {
            VerifyOutcome::Refuted { edge } => assert!(c9.has_edge(edge.0, edge.1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn encoding_change_is_a_homomorphism_both_ways() {
        // The chain graph shares vertex indexing with the sequence graph, so
        // the identity on indices must verify in both directions.
        let w = build_w(2, 3).unwrap();
        let o = build_omega(2, 3).unwrap();
        let mut m = VertexMap::new(w.name.clone(), o.name.clone(), (0..w.n()).collect());
        assert_eq!(verify_homomorphism(&w, &o, &mut m).unwrap(), VerifyOutcome::Verified);
        let mut back = VertexMap::new(o.name.clone(), w.name.clone(), (0..o.n()).collect());
        assert_eq!(verify_homomorphism(&o, &w, &mut back).unwrap(), VerifyOutcome::Verified);
    }

    #[test]
    fn kneser_map_smallest_case_by_hand() {
        let images = wide_to_kneser_images(2, 2, ChoicePolicy::Smallest).unwrap();
        assert_eq!(images, vec![vec![2, 3], vec![1, 4]]);

        let o = build_omega(2, 2).unwrap();
        let kg = kneser(4, 2).unwrap();
        let mut m = wide_to_kneser(2, 2, ChoicePolicy::Smallest).unwrap();
        assert_eq!(verify_homomorphism(&o, &kg, &mut m).unwrap(), VerifyOutcome::Verified);
    }

    #[test]
    fn kneser_map_verifies_small_grid() {
        for (s, t) in [(1u32, 4u32), (2, 3), (3, 3), (2, 4), (4, 2)] {
            for policy in [ChoicePolicy::Smallest, ChoicePolicy::SeededRandom(7)] {
                let source = if s == 1 { build_w(s, t).unwrap() } else { build_omega(s, t).unwrap() };
                let kg = kneser(t + 2 * (s - 1), s).unwrap();
                let mut m = wide_to_kneser(s, t, policy).unwrap();
                assert_eq!(
                    verify_homomorphism(&source, &kg, &mut m).unwrap(),
                    VerifyOutcome::Verified,
                    "({s},{t}) {policy:?}"
                );
            }
        }
    }

    #[test]
    fn image_sets_have_s_distinct_elements() {
        let images = wide_to_kneser_images(3, 3, ChoicePolicy::SeededRandom(99)).unwrap();
        for ks in &images {
            assert_eq!(ks.len(), 3);
            assert!(ks.windows(2).all(|w| w[0] < w[1]));
            assert!(ks.iter().all(|&e| (1..=7).contains(&e)));
        }
    }

    #[test]
    fn streamed_verification_matches_built_graph() {
        let sv = verify_wide_to_kneser_streamed(2, 3, ChoicePolicy::Smallest).unwrap();
        let w = build_w(2, 3).unwrap();
        assert_eq!(sv.vertices, w.n() as u64);
        assert_eq!(sv.edges, w.m() as u64);

        let sv = verify_wide_to_kneser_streamed(3, 4, ChoicePolicy::SeededRandom(5)).unwrap();
        let w = build_w(3, 4).unwrap();
        assert_eq!((sv.vertices, sv.edges), (w.n() as u64, w.m() as u64));
    }

    #[test]
    fn level_restriction_cases() {
        // Clamp value check: a coordinate 3 becomes 2 when restricting to 2.
        let m = level_restriction(3, 2, 3).unwrap();
        assert!(m.is_verified());
        assert_eq!(m.source, "W:3,3");
        assert_eq!(m.target, "W:2,3");

        let id = level_restriction(2, 2, 3).unwrap();
        assert_eq!(id.image, (0..9).collect::<Vec<_>>());

        assert!(level_restriction(2, 3, 3).is_err());
    }

    #[test]
    fn restriction_clamps_coordinates() {
        let source = build_w(3, 3).unwrap();
        let target = build_w(2, 3).unwrap();
        let m = level_restriction(3, 2, 3).unwrap();
        for (v, l) in source.labels.as_ref().unwrap().iter().enumerate() {
            let VertexLabel::Wide(wv) = l else { panic!() };
            let VertexLabel::Wide(im) = &target.labels.as_ref().unwrap()[m.image[v]] else {
                panic!()
            };
            for (a, b) in wv.x.iter().zip(&im.x) {
                assert_eq!(*b, (*a).min(2));
            }
        }
    }

    #[test]
    fn composite_into_kneser() {
        let m = wide_to_kneser_via_restriction(3, 2, 3, ChoicePolicy::Smallest).unwrap();
        assert!(m.is_verified());
        assert_eq!(m.source, "W:3,3");
        assert_eq!(m.target, "KG:5,2");

        // Restricting to the same level reproduces the direct map.
        let direct = wide_to_kneser(2, 3, ChoicePolicy::Smallest).unwrap();
        let via = wide_to_kneser_via_restriction(2, 2, 3, ChoicePolicy::Smallest).unwrap();
        assert_eq!(via.image, direct.image);
    }

    #[test]
    fn compose_rules() {
        let c9 = cycle(9).unwrap();
        let mut id = VertexMap::identity(&c9);
        verify_homomorphism(&c9, &c9, &mut id).unwrap();
        let composed = compose(&id, &id).unwrap();
        assert_eq!(composed.image, id.image);
        assert_eq!(*composed.certificate(), Certificate::Unverified);

        let unverified = VertexMap::identity(&c9);
        assert!(compose(&unverified, &id).is_err());
    }

    #[test]
    fn pullback_of_identity_is_canonical() {
        let w = build_w(2, 3).unwrap();
        let mut id = VertexMap::identity(&w);
        verify_homomorphism(&w, &w, &mut id).unwrap();
        let c = pullback_coloring(&w, &id, &w).unwrap();
        assert_eq!(c, crate::wide::canonical_coloring(&w).unwrap());
    }

    #[test]
    fn pullback_along_restriction_is_wide() {
        let source = build_w(3, 4).unwrap();
        let target = build_w(2, 4).unwrap();
        let m = level_restriction(3, 2, 4).unwrap();
        let c = pullback_coloring(&source, &m, &target).unwrap();
        assert!(crate::wide::is_s_wide(&source, &c, 2).unwrap().is_wide());
    }

    #[test]
    fn search_examples() {
        let c9 = cycle(9).unwrap();
        let c5 = cycle(5).unwrap();
        let kg42 = kneser(4, 2).unwrap();
        assert!(matches!(
            search_homomorphism(&c9, &kg42, 1_000_000).unwrap(),
            SearchOutcome::NoHomomorphism
        ));
        assert!(matches!(
            search_homomorphism(&c5, &c9, 1_000_000).unwrap(),
            SearchOutcome::NoHomomorphism
        ));
        match search_homomorphism(&c9, &c5, 1_000_000).unwrap() {
            SearchOutcome::Found(m) => assert!(m.is_verified()),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            search_homomorphism(&c9, &c5, 1).unwrap(),
            SearchOutcome::BudgetExhausted
        ));
    }

    #[test]
    fn search_agrees_with_naive_smoke() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for case in 0..60 {
            let nf = rng.gen_range(1..=5);
            let ng = rng.gen_range(1..=4);
            let mut fe = Vec::new();
            for u in 0..nf {
                for v in u + 1..nf {
                    if rng.gen_bool(0.5) {
                        fe.push((u, v));
                    }
                }
            }
            let mut ge = Vec::new();
            for u in 0..ng {
                for v in u + 1..ng {
                    if rng.gen_bool(0.5) {
                        ge.push((u, v));
                    }
                }
            }
            let f = Graph::new("f", nf, &fe).unwrap();
            let g = Graph::new("g", ng, &ge).unwrap();
            let naive = naive_homomorphism_exists(&f, &g).unwrap();
            match search_homomorphism(&f, &g, 1_000_000).unwrap() {
                SearchOutcome::Found(_) => assert!(naive, "case {case}"),
                SearchOutcome::NoHomomorphism => assert!(!naive, "case {case}"),
                SearchOutcome::BudgetExhausted => panic!("budget too small in smoke test"),
            }
        }
    }

    #[test]
    fn certificate_round_trip() {
        let mut m = wide_to_kneser(2, 3, ChoicePolicy::SeededRandom(11)).unwrap();
        let o = build_omega(2, 3).unwrap();
        let kg = kneser(5, 2).unwrap();
        verify_homomorphism(&o, &kg, &mut m).unwrap();
        let counts = CertCounts {
            source_vertices: o.n() as u64,
            source_edges: o.m() as u64,
            target_vertices: kg.n() as u64,
            target_edges: kg.m() as u64,
        };
        let cert = HomCertificate::from_map(&m, ChoicePolicy::SeededRandom(11), counts);
        let text = serde_json::to_string(&cert).unwrap();
        let back: HomCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(cert, back);
        assert_eq!(back.to_map().image, m.image);
        assert_eq!(back.seed, Some(11));
    }

    #[test]
    fn carrier_names() {
        assert!(carrier_eq("W:2,3", "Omega:2,3"));
        assert!(carrier_eq("Omega:2,3", "Omega:2,3"));
        assert!(!carrier_eq("W:2,3", "W:2,4"));
        assert!(!carrier_eq("K:3", "C:3"));
    }
}
