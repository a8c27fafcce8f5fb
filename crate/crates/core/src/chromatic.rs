//! Exact chromatic invariants at desk scale: chromatic number by
//! branch-and-bound, k-fold chromatic numbers via homomorphism search into
//! Kneser graphs, fractional chromatic number by an exact-rational LP over
//! maximal independent sets, color-criticality checks, and the three-graph
//! homomorphism sandwich report.

use crate::coloring::{Coloring, KFoldColoring};
use crate::graph::{kneser, Graph};
use crate::hom::{search_homomorphism, SearchOutcome};
use crate::iso::{is_isomorphic_small, IsoResult};
use crate::label::VertexLabel;
use crate::mycielski::mycielskian;
use crate::sat;
use crate::simplex::solve_covering_lp;
use crate::wide::build_w;
use crate::{Error, Result};
use num::{BigInt, BigRational};
use serde::Serialize;

pub const CHROMATIC_VERTEX_CAP: usize = 100;

#[derive(Clone, Debug)]
pub enum ChromaticResult {
    Exact { chi: u32, witness: Coloring },
    /// Budget ran out with the value pinned to `lb..=ub`.
    Bounded { lb: u32, ub: u32 },
}

impl ChromaticResult {
    pub fn exact(&self) -> Option<u32> {
        match self {
            ChromaticResult::Exact { chi, .. } => Some(*chi),
            ChromaticResult::Bounded { .. } => None,
        }
    }
}

/// Greedy clique heuristic from several high-degree seeds; any clique size
/// is a chromatic lower bound.
fn clique_lower_bound(g: &Graph) -> u32 {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = 1;
    for &seed in order.iter().take(20) {
        let mut clique = vec![seed];
        for &v in &order {
            if v != seed && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len() as u32);
    }
    best
}

/// Greedy coloring choosing the most saturated vertex first; returns a
/// proper coloring (and so an upper bound).
fn dsatur_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let mut assign = vec![0u32; n];
    let mut max_used = 0u32;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| assign[v] == 0)
            .max_by_key(|&v| {
                let mut seen: u128 = 0;
                for &w in g.neighbors(v) {
                    if assign[w] != 0 {
                        seen |= 1 << assign[w];
                    }
                }
                (seen.count_ones(), g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        let mut taken: Vec<u32> = g.neighbors(v).iter().map(|&w| assign[w]).collect();
        taken.sort_unstable();
        let mut c = 1;
        for t in taken {
            if t == c {
                c += 1;
            }
        }
        assign[v] = c;
        max_used = max_used.max(c);
    }
    Coloring::new(max_used.max(1), assign).expect("greedy coloring is total")
}

struct ColorSearch<'a> {
    g: &'a Graph,
    k: u32,
    assign: Vec<u32>,
    nodes: u64,
    budget: u64,
}

enum ColorStep {
    Found,
    Exhausted,
    OutOfBudget,
}

impl ColorSearch<'_> {
    /// Most saturated uncolored vertex; ties prefer higher degree, then
    /// lower index.
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.assign[v] == 0)
            .max_by_key(|&v| {
                let mut seen = 0u128;
                for &w in self.g.neighbors(v) {
                    let c = self.assign[w];
                    if c != 0 {
                        seen |= 1 << c;
                    }
                }
                (seen.count_ones(), self.g.degree(v), std::cmp::Reverse(v))
            })
    }

    fn dfs(&mut self, max_used: u32) -> ColorStep {
        let Some(v) = self.pick() else { return ColorStep::Found };
        let mut forbidden = 0u128;
        for &w in self.g.neighbors(v) {
            forbidden |= 1 << self.assign[w];
        }
        // Unused colors are interchangeable: allow at most one fresh color.
        let limit = self.k.min(max_used + 1);
        for c in 1..=limit {
            if forbidden >> c & 1 == 1 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return ColorStep::OutOfBudget;
            }
            self.assign[v] = c;
            match self.dfs(max_used.max(c)) {
                ColorStep::Exhausted => {}
                done => return done,
            }
            self.assign[v] = 0;
        }
        ColorStep::Exhausted
    }
}

/// Decide k-colorability by saturation-ordered backtracking.  `Ok(Some)` is
/// a witness, `Ok(None)` an exhaustive refutation, `Err` budget exhaustion.
fn try_k_coloring(g: &Graph, k: u32, budget: u64) -> std::result::Result<Option<Coloring>, ()> {
    let mut search = ColorSearch { g, k, assign: vec![0; g.n()], nodes: 0, budget };
    match search.dfs(0) {
        ColorStep::Found => {
            let c = Coloring::new(k, search.assign).expect("search output is total");
            debug_assert!(c.is_proper(g));
            Ok(Some(c))
        }
        ColorStep::Exhausted => Ok(None),
        ColorStep::OutOfBudget => Err(()),
    }
}

/// Vertex orbits of the group generated by the sampled automorphisms:
/// the connected components of `v ~ perm[v]` over all perms.
fn vertex_orbits(n: usize, autos: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for perm in autos {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, perm[v]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut orbits: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let root = find(&mut parent, v);
        orbits.entry(root).or_default().push(v);
    }
    orbits.into_values().collect()
}

/// Permutations of orbit positions induced by the sampled automorphisms
/// (every automorphism maps each orbit onto itself), closed under
/// composition.  Each element of the closure is induced by a composition
/// of the sampled automorphisms and so by a verified automorphism.
fn induced_orbit_permutations(orbit: &[usize], autos: &[Vec<usize>]) -> Vec<Vec<u8>> {
    let position: std::collections::HashMap<usize, u8> = orbit
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u8))
        .collect();
    let mut set: std::collections::BTreeSet<Vec<u8>> = Default::default();
    set.insert((0..orbit.len() as u8).collect());
    for a in autos {
        let induced: Option<Vec<u8>> = orbit.iter().map(|&v| position.get(&a[v]).copied()).collect();
        if let Some(p) = induced {
            set.insert(p);
        }
    }
    loop {
        let snapshot: Vec<Vec<u8>> = set.iter().cloned().collect();
        let before = set.len();
        for a in &snapshot {
            for b in &snapshot {
                let c: Vec<u8> = b.iter().map(|&i| a[i as usize]).collect();
                set.insert(c);
            }
        }
        if set.len() == before {
            break;
        }
    }
    set.into_iter().collect()
}

/// Rename colors into first-occurrence order, the normal form under color
/// permutation: `[2,0,2,1]` becomes `[0,1,0,2]`.
fn color_normal_form(p: &[u8]) -> Vec<u8> {
    let mut rename = [u8::MAX; 256];
    let mut next = 0u8;
    p.iter()
        .map(|&c| {
            if rename[c as usize] == u8::MAX {
                rename[c as usize] = next;
                next += 1;
            }
            rename[c as usize]
        })
        .collect()
}

/// Distinct representatives of the color patterns on `orbit` under the
/// induced vertex permutations and arbitrary color renaming.  Patterns
/// coloring two adjacent orbit vertices alike are dropped: no proper
/// coloring restricts to them, and feasibility is preserved by the orbit
/// permutations, so the representatives still cover every proper coloring.
fn orbit_case_patterns(
    g: &Graph,
    orbit: &[usize],
    k: usize,
    perms: &[Vec<u8>],
) -> Vec<Vec<u8>> {
    let len = orbit.len();
    let inner_edges: Vec<(usize, usize)> = (0..len)
        .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
        .filter(|&(i, j)| g.has_edge(orbit[i], orbit[j]))
        .collect();
    let mut reps: std::collections::BTreeSet<Vec<u8>> = Default::default();
    let mut pattern = vec![0u8; len];
    loop {
        let feasible = inner_edges.iter().all(|&(i, j)| pattern[i] != pattern[j]);
        if feasible {
            let canon = perms
                .iter()
                .map(|s| color_normal_form(&s.iter().map(|&i| pattern[i as usize]).collect::<Vec<_>>()))
                .min()
                .expect("perm set contains the identity");
            reps.insert(canon);
        }
        // Advance the base-k counter.
        let mut pos = 0;
        loop {
            if pos == len {
                return reps.into_iter().collect();
            }
            pattern[pos] += 1;
            if (pattern[pos] as usize) < k {
                break;
            }
            pattern[pos] = 0;
            pos += 1;
        }
    }
}

/// Choose the orbit giving the fewest case patterns, among orbits small
/// enough to enumerate.  Ties favor the larger orbit, whose cases pin more
/// vertices.
fn choose_case_split(
    g: &Graph,
    k: usize,
    autos: &[Vec<usize>],
) -> Option<(Vec<usize>, Vec<Vec<u8>>)> {
    const MAX_PATTERNS: u64 = 200_000;
    let mut best: Option<(Vec<usize>, Vec<Vec<u8>>)> = None;
    for orbit in vertex_orbits(g.n(), autos) {
        if orbit.len() < 2 || orbit.len() > 12 || k > 64 {
            continue;
        }
        let total = (k as u64).checked_pow(orbit.len() as u32);
        if !total.is_some_and(|t| t <= MAX_PATTERNS) {
            continue;
        }
        let perms = induced_orbit_permutations(&orbit, autos);
        let cases = orbit_case_patterns(g, &orbit, k, &perms);
        let better = match &best {
            None => true,
            Some((bo, bc)) => {
                (cases.len(), std::cmp::Reverse(orbit.len()))
                    < (bc.len(), std::cmp::Reverse(bo.len()))
            }
        };
        if better {
            best = Some((orbit, cases));
        }
    }
    best
}

/// Escalation engine for k-colorability when plain backtracking stalls:
/// encode the decision as clauses (a color-presence variable per vertex
/// and color, "some color" per vertex, "not the same color" per edge and
/// color) and run the clause-learning solver.  Learned conflicts prune
/// whole families of partial colorings at once, which plain backtracking
/// cannot.
///
/// Refutations that stall under a direct run are split into cases along a
/// symmetry of the graph: fix a small vertex orbit of the (verified)
/// automorphisms found by sampling, and solve once per representative
/// color pattern on that orbit.  Any proper coloring can be carried by an
/// automorphism and a color renaming onto one of the representatives, so
/// refuting every case refutes k-colorability.  The solver keeps learnt
/// clauses across cases, which is what makes the split cheaper than the
/// direct run.
fn try_k_coloring_by_learning(
    g: &Graph,
    k: u32,
    budget: u64,
) -> std::result::Result<Option<Coloring>, ()> {
    let n = g.n();
    let k = k as usize;
    let lit = |v: usize, c: usize| v * k + c;
    let mut solver = sat::Solver::new(n * k);
    let mut scratch: Vec<sat::Lit> = Vec::with_capacity(k);
    for v in 0..n {
        scratch.clear();
        scratch.extend((0..k).map(|c| sat::pos(lit(v, c))));
        solver.add_clause(&scratch);
    }
    for &(u, w) in g.edges() {
        for c in 0..k {
            solver.add_clause(&[sat::neg(lit(u, c)), sat::neg(lit(w, c))]);
        }
    }
    let extract = |model: Vec<bool>| -> std::result::Result<Option<Coloring>, ()> {
        let mut assign = vec![0u32; n];
        for v in 0..n {
            let c = (0..k)
                .find(|&c| model[lit(v, c)])
                .expect("per-vertex clause guarantees a color");
            assign[v] = c as u32 + 1;
        }
        let coloring = Coloring::new(k as u32, assign).expect("assignment is total");
        // The model is checked directly rather than trusted.
        if coloring.is_proper(g) {
            Ok(Some(coloring))
        } else {
            Err(())
        }
    };
    // Budget arrives in backtracking-node units; conflicts are far heavier
    // than nodes, so scale down while keeping generous headroom.
    let conflict_budget = (budget / 16).max(20_000);
    // First try head-on.  Colors are interchangeable, so the busiest vertex
    // may take color 0; as an assumption rather than a clause, the pin
    // keeps every clause learnt here valid for the case stage below.
    let pin: Vec<sat::Lit> = (0..n)
        .max_by_key(|&v| g.degree(v))
        .map(|v0| vec![sat::pos(lit(v0, 0))])
        .unwrap_or_default();
    // Capped: on hard refutations the split below is where budget pays off,
    // so the head-on attempt only gets a bounded slice.
    let direct_slice = (conflict_budget / 16).clamp(10_000, 100_000);
    match solver.solve(&pin, direct_slice) {
        sat::SatOutcome::Satisfiable(model) => return extract(model),
        sat::SatOutcome::Unsatisfiable => return Ok(None),
        sat::SatOutcome::Budget => {}
    }
    // Case split along a sampled symmetry, if one is usable.
    let autos = crate::iso::sample_automorphisms(g, 130, 2_000_000);
    let split = if autos.len() > 1 { choose_case_split(g, k, &autos) } else { None };
    let remaining = |solver: &sat::Solver| conflict_budget.saturating_sub(solver.conflicts());
    if let Some((orbit, cases)) = split {
        for case in cases {
            let assumptions: Vec<sat::Lit> = orbit
                .iter()
                .zip(case.iter())
                .map(|(&v, &c)| sat::pos(lit(v, c as usize)))
                .collect();
            let left = remaining(&solver);
            if left == 0 {
                return Err(());
            }
            match solver.solve(&assumptions, left) {
                sat::SatOutcome::Satisfiable(model) => return extract(model),
                sat::SatOutcome::Unsatisfiable => {}
                sat::SatOutcome::Budget => return Err(()),
            }
        }
        // Every representative pattern is impossible, so no coloring.
        return Ok(None);
    }
    // No usable symmetry: put the rest of the budget into the direct run.
    let left = remaining(&solver);
    if left == 0 {
        return Err(());
    }
    match solver.solve(&pin, left) {
        sat::SatOutcome::Satisfiable(model) => extract(model),
        sat::SatOutcome::Unsatisfiable => Ok(None),
        sat::SatOutcome::Budget => Err(()),
    }
}

/// Exact chromatic number by branch-and-bound between a clique lower bound
/// and a saturation-greedy upper bound; `budget` caps backtracking nodes per
/// candidate color count.
pub fn chromatic_number(g: &Graph, budget: u64) -> Result<ChromaticResult> {
    if g.n() > CHROMATIC_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "{} vertices exceed the chromatic solver cap {CHROMATIC_VERTEX_CAP}",
            g.n()
        )));
    }
    if g.n() == 0 {
        return Ok(ChromaticResult::Exact { chi: 0, witness: Coloring::new(0, vec![])? });
    }
    if g.m() == 0 {
        return Ok(ChromaticResult::Exact {
            chi: 1,
            witness: Coloring::new(1, vec![1; g.n()])?,
        });
    }
    let mut lb = clique_lower_bound(g).max(2);
    if lb == 2 && g.odd_girth().is_some() {
        lb = 3;
    }
    let greedy = dsatur_coloring(g);
    let ub = greedy.num_colors;
    if lb >= ub {
        return Ok(ChromaticResult::Exact { chi: ub, witness: greedy });
    }
    for k in lb..ub {
        // Saturation backtracking first; escalate to clause learning when
        // it stalls, which handles sparse refutations far beyond the plain
        // solver's reach.
        let decided = match try_k_coloring(g, k, budget / 64) {
            Err(()) => try_k_coloring_by_learning(g, k, budget),
            done => done,
        };
        match decided {
            Ok(Some(witness)) => return Ok(ChromaticResult::Exact { chi: k, witness }),
            Ok(None) => {}
            Err(()) => return Ok(ChromaticResult::Bounded { lb: k, ub }),
        }
    }
    Ok(ChromaticResult::Exact { chi: ub, witness: greedy })
}

/// [`chromatic_number`] forced exact; budget exhaustion becomes an error.
pub fn exact_chromatic_number(g: &Graph, budget: u64) -> Result<u32> {
    match chromatic_number(g, budget)? {
        ChromaticResult::Exact { chi, .. } => Ok(chi),
        ChromaticResult::Bounded { lb, ub } => Err(Error::BudgetExhausted(format!(
            "chromatic number of '{}' undecided in [{lb},{ub}]",
            g.name
        ))),
    }
}

// ---------------------------------------------------------------------------
// k-fold chromatic numbers.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct MultichromaticExact {
    pub k: u32,
    pub value: u32,
    pub witness: KFoldColoring,
    /// Palette sizes exhaustively shown to admit no k-fold coloring.
    pub refuted: Vec<u32>,
}

#[derive(Clone, Debug)]
pub enum MultichromaticResult {
    Exact(MultichromaticExact),
    Unconfirmed { refuted: Vec<u32>, stalled_at: u32 },
}

/// Exact k-fold chromatic number: the least `n` with a homomorphism into
/// the Kneser graph of k-subsets of an n-palette.  Scans `n` upward from
/// `max(2k, ⌈k·χ_f⌉)` (fractional bound used when its LP fits the caps),
/// refuting each size exhaustively until one is found, and always includes
/// an explicit refutation one below the answer.
pub fn multichromatic_number(g: &Graph, k: u32, budget: u64) -> Result<MultichromaticResult> {
    if k < 1 {
        return Err(Error::invalid("need k >= 1"));
    }
    if g.n() == 0 {
        return Err(Error::invalid("k-fold chromatic number of the empty graph"));
    }
    let chi_ub = match chromatic_number(g, budget)? {
        ChromaticResult::Exact { chi, .. } => chi,
        ChromaticResult::Bounded { ub, .. } => ub,
    };
    let mut lo = if g.m() == 0 { k } else { 2 * k };
    if let Ok(qf) = fractional_chromatic(g, &LpCaps::default()) {
        let scaled = qf * BigRational::from(BigInt::from(k));
        lo = lo.max(rational_ceil(&scaled) as u32);
    }
    let hi = k * chi_ub;
    let mut refuted = Vec::new();
    for n in lo..=hi {
        let target = kneser(n, k)?;
        match search_homomorphism(g, &target, budget)? {
            SearchOutcome::Found(map) => {
                let witness = kfold_from_map(g, &target, &map.image, k, n)?;
                if n > k && n - 1 >= k && !refuted.contains(&(n - 1)) {
                    let below = kneser(n - 1, k)?;
                    match search_homomorphism(g, &below, budget)? {
                        SearchOutcome::NoHomomorphism => refuted.push(n - 1),
                        SearchOutcome::BudgetExhausted => {
                            return Ok(MultichromaticResult::Unconfirmed {
                                refuted,
                                stalled_at: n - 1,
                            })
                        }
                        SearchOutcome::Found(_) => {
                            return Err(Error::internal(
                                "smaller palette admitted a map after the scan skipped it",
                            ))
                        }
                    }
                }
                refuted.sort_unstable();
                return Ok(MultichromaticResult::Exact(MultichromaticExact {
                    k,
                    value: n,
                    witness,
                    refuted,
                }));
            }
            SearchOutcome::NoHomomorphism => refuted.push(n),
            SearchOutcome::BudgetExhausted => {
                return Ok(MultichromaticResult::Unconfirmed { refuted, stalled_at: n })
            }
        }
    }
    Err(Error::internal(
        "palette scan passed k times the chromatic number without a coloring",
    ))
}

fn kfold_from_map(
    g: &Graph,
    target: &Graph,
    image: &[usize],
    k: u32,
    n: u32,
) -> Result<KFoldColoring> {
    let labels = target
        .labels
        .as_ref()
        .ok_or_else(|| Error::internal("Kneser graph lost its labels"))?;
    let assign = image
        .iter()
        .map(|&w| match &labels[w] {
            VertexLabel::KSet(ks) => Ok(ks.clone()),
            other => Err(Error::internal(format!("unexpected label {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let c = KFoldColoring::new(k, n, assign)?;
    if !c.is_proper(g) {
        return Err(Error::internal("k-fold witness from a verified map is improper"));
    }
    Ok(c)
}

fn rational_ceil(q: &BigRational) -> u64 {
    use num::ToPrimitive;
    q.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

// ---------------------------------------------------------------------------
// Fractional chromatic number.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct LpCaps {
    pub vertex_cap: usize,
    pub mis_cap: usize,
}

impl Default for LpCaps {
    fn default() -> Self {
        LpCaps { vertex_cap: 40, mis_cap: 100_000 }
    }
}

/// All maximal independent sets as bitmasks, by pivoting Bron–Kerbosch on
/// the complement; exceeding `cap` is an error, never a truncation.
pub fn maximal_independent_sets(g: &Graph, cap: usize) -> Result<Vec<u64>> {
    let n = g.n();
    if n > 64 {
        return Err(Error::CapExceeded(format!(
            "{n} vertices exceed the bitmask limit of the set enumerator"
        )));
    }
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let nonadj: Vec<u64> = (0..n)
        .map(|v| {
            let mut adj = 1u64 << v;
            for &w in g.neighbors(v) {
                adj |= 1 << w;
            }
            !adj & full
        })
        .collect();

    fn expand(
        r: u64,
        p: u64,
        x: u64,
        nonadj: &[u64],
        out: &mut Vec<u64>,
        cap: usize,
    ) -> Result<()> {
        if p == 0 && x == 0 {
            if out.len() >= cap {
                return Err(Error::CapExceeded(format!(
                    "more than {cap} maximal independent sets"
                )));
            }
            out.push(r);
            return Ok(());
        }
        let mut pivot_gain = u32::MAX;
        let mut pivot = 0usize;
        let mut scan = p | x;
        while scan != 0 {
            let u = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let loss = (p & !nonadj[u]).count_ones();
            if loss < pivot_gain {
                pivot_gain = loss;
                pivot = u;
            }
        }
        let mut candidates = p & !nonadj[pivot];
        let mut p = p;
        let mut x = x;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            let bit = 1u64 << v;
            candidates &= candidates - 1;
            expand(r | bit, p & nonadj[v], x & nonadj[v], nonadj, out, cap)?;
            p &= !bit;
            x |= bit;
        }
        Ok(())
    }

    let mut out = Vec::new();
    expand(0, full, 0, &nonadj, &mut out, cap)?;
    Ok(out)
}

/// Exact fractional chromatic number: the optimum of the covering LP whose
/// columns are the maximal independent sets, solved in exact rationals.
pub fn fractional_chromatic(g: &Graph, caps: &LpCaps) -> Result<BigRational> {
    if g.n() == 0 {
        return Err(Error::invalid("fractional chromatic number of the empty graph"));
    }
    if g.n() > caps.vertex_cap {
        return Err(Error::CapExceeded(format!(
            "{} vertices exceed the LP vertex cap {}",
            g.n(),
            caps.vertex_cap
        )));
    }
    let sets = maximal_independent_sets(g, caps.mis_cap)?;
    let columns: Vec<Vec<usize>> = sets
        .iter()
        .map(|&mask| (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    let (value, _) = solve_covering_lp(g.n(), &columns)?;
    Ok(value)
}

// ---------------------------------------------------------------------------
// Closed-form values and bounds.
// ---------------------------------------------------------------------------

/// Chromatic number of the Kneser graph on k-subsets of an n-set.
pub fn kneser_chromatic(n: u32, k: u32) -> Result<u32> {
    if k < 1 || n < 2 * k {
        return Err(Error::invalid(format!("need n >= 2k >= 2, got n={n} k={k}")));
    }
    Ok(n - 2 * k + 2)
}

/// Lower bound `t + 2(r−1)` on the r-fold chromatic number of the level-s
/// sequence graph on t positions (valid for r ≤ s).
pub fn multichromatic_lower_bound(s: u32, t: u32, r: u32) -> Result<u32> {
    if r < 1 || r > s || t < 2 {
        return Err(Error::invalid(format!(
            "need 1 <= r <= s and t >= 2, got s={s} t={t} r={r}"
        )));
    }
    Ok(t + 2 * (r - 1))
}

/// `(2b+1)/b` where `2b+1` is the odd girth; a fractional lower bound.
/// Bipartite graphs are rejected.
pub fn fractional_lower_bound_from_odd_girth(g: &Graph) -> Result<BigRational> {
    match g.odd_girth() {
        Some(og) => Ok(BigRational::new(
            BigInt::from(og as u64),
            BigInt::from((og as u64 - 1) / 2),
        )),
        None => Err(Error::invalid(format!(
            "'{}' is bipartite: it has no odd girth",
            g.name
        ))),
    }
}

// ---------------------------------------------------------------------------
// Color-criticality.
// ---------------------------------------------------------------------------

/// True when deleting any single edge strictly lowers the chromatic number.
pub fn is_edge_color_critical(g: &Graph, budget: u64) -> Result<bool> {
    use rayon::prelude::*;
    let chi = exact_chromatic_number(g, budget)?;
    let results: Vec<Result<bool>> = g
        .edges()
        .par_iter()
        .map(|&(u, v)| {
            let h = g.delete_edge(u, v)?;
            Ok(exact_chromatic_number(&h, budget)? < chi)
        })
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when deleting any single vertex strictly lowers the chromatic
/// number.
pub fn is_vertex_color_critical(g: &Graph, budget: u64) -> Result<bool> {
    use rayon::prelude::*;
    let chi = exact_chromatic_number(g, budget)?;
    let results: Vec<Result<bool>> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let h = g.delete_vertex(v)?;
            Ok(exact_chromatic_number(&h, budget)? < chi)
        })
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// The three-graph homomorphism sandwich.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct GraphFacts {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationStatus {
    Found,
    Refuted,
    Unconfirmed,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomRelation {
    pub from: String,
    pub to: String,
    pub forward: RelationStatus,
    pub reverse: RelationStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub s: u32,
    pub t: u32,
    pub graphs: Vec<GraphFacts>,
    pub relations: Vec<HomRelation>,
    /// Set in the degenerate level-1 case, where all three graphs coincide.
    pub all_isomorphic: Option<bool>,
}

fn relation_status(f: &Graph, g: &Graph, budget: u64) -> Result<RelationStatus> {
    Ok(match search_homomorphism(f, g, budget)? {
        SearchOutcome::Found(_) => RelationStatus::Found,
        SearchOutcome::NoHomomorphism => RelationStatus::Refuted,
        SearchOutcome::BudgetExhausted => RelationStatus::Unconfirmed,
    })
}

/// Certify the chain "many-level cone of W(s,t) → W(s,t+1) → s-level cone
/// of W(s,t)" on the smallest parameters: search both directions of each
/// link, reporting found/refuted/unconfirmed.  Budget exhaustion is never
/// reported as refutation.
pub fn sandwich_report(s: u32, t: u32, budget: u64) -> Result<SandwichReport> {
    let small = (s == 1 && (2..=5).contains(&t)) || (t == 2 && (1..=3).contains(&s));
    if !small {
        return Err(Error::invalid(
            "sandwich report is limited to s=1 with small t, or t=2 with s <= 3",
        ));
    }
    let base = build_w(s, t)?;
    let low = mycielskian(&base, 3 * s - 2)?;
    let mid = build_w(s, t + 1)?;
    let high = mycielskian(&base, s)?;

    let facts = |g: &Graph| GraphFacts {
        name: g.name.clone(),
        vertices: g.n(),
        edges: g.m(),
    };
    let mut relations = Vec::new();
    for (f, g) in [(&low, &mid), (&mid, &high)] {
        relations.push(HomRelation {
            from: f.name.clone(),
            to: g.name.clone(),
            forward: relation_status(f, g, budget)?,
            reverse: relation_status(g, f, budget)?,
        });
    }
    let all_isomorphic = if s == 1 {
        let ab = matches!(is_isomorphic_small(&low, &mid, budget)?, IsoResult::Isomorphic(_));
        let bc = matches!(is_isomorphic_small(&mid, &high, budget)?, IsoResult::Isomorphic(_));
        Some(ab && bc)
    } else {
        None
    };
    Ok(SandwichReport {
        s,
        t,
        graphs: vec![facts(&low), facts(&mid), facts(&high)],
        relations,
        all_isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_named;
    use crate::graph::{complete, cycle};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn chromatic_small_cases() {
        let budget = 10_000_000;
        assert_eq!(exact_chromatic_number(&cycle(9).unwrap(), budget).unwrap(), 3);
        assert_eq!(exact_chromatic_number(&complete(4).unwrap(), budget).unwrap(), 4);
        assert_eq!(exact_chromatic_number(&kneser(5, 2).unwrap(), budget).unwrap(), 3);
        assert_eq!(exact_chromatic_number(&kneser(4, 2).unwrap(), budget).unwrap(), 2);
        assert_eq!(exact_chromatic_number(&build_w(2, 4).unwrap(), budget).unwrap(), 4);
        assert_eq!(
            exact_chromatic_number(&build_named("M:2^2(K:2)").unwrap(), budget).unwrap(),
            4
        );
        let edgeless = Graph::new("e", 5, &[]).unwrap();
        assert_eq!(exact_chromatic_number(&edgeless, budget).unwrap(), 1);
    }

    #[test]
    fn chromatic_budget_exhaustion_reports_interval() {
        // Easy instances resolve even at zero budget thanks to the effort
        // floors; a hard refutation must report its interval instead.
        let grotzsch = build_named("M:2^2(K:2)").unwrap();
        match chromatic_number(&grotzsch, 0).unwrap() {
            ChromaticResult::Exact { chi, .. } => assert_eq!(chi, 4),
            other => panic!("{other:?}"),
        }
        let hard = build_w(2, 5).unwrap();
        match chromatic_number(&hard, 0).unwrap() {
            ChromaticResult::Bounded { lb, ub } => {
                assert!(lb <= 5 && 5 <= ub, "lb={lb} ub={ub}");
            }
            ChromaticResult::Exact { chi, .. } => {
                panic!("a zero budget should not settle this graph (got {chi})")
            }
        }
        assert!(exact_chromatic_number(&hard, 0).is_err());
    }

    #[test]
    fn chromatic_witnesses_are_proper() {
        for g in [cycle(9).unwrap(), kneser(5, 2).unwrap(), build_w(2, 4).unwrap()] {
            match chromatic_number(&g, 10_000_000).unwrap() {
                ChromaticResult::Exact { chi, witness } => {
                    assert_eq!(witness.num_colors, chi);
                    assert!(witness.is_proper(&g));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn multichromatic_examples() {
        let budget = 10_000_000;
        match multichromatic_number(&cycle(9).unwrap(), 2, budget).unwrap() {
            MultichromaticResult::Exact(r) => {
                assert_eq!(r.value, 5);
                assert!(r.refuted.contains(&4));
                assert!(r.witness.is_proper(&cycle(9).unwrap()));
            }
            other => panic!("{other:?}"),
        }
        match multichromatic_number(&complete(3).unwrap(), 1, budget).unwrap() {
            MultichromaticResult::Exact(r) => assert_eq!(r.value, 3),
            other => panic!("{other:?}"),
        }
        match multichromatic_number(&cycle(5).unwrap(), 2, budget).unwrap() {
            MultichromaticResult::Exact(r) => {
                assert_eq!(r.value, 5);
                assert!(r.refuted.contains(&4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_fold_matches_chromatic() {
        let budget = 10_000_000;
        for g in [cycle(9).unwrap(), complete(4).unwrap(), kneser(5, 2).unwrap()] {
            let chi = exact_chromatic_number(&g, budget).unwrap();
            match multichromatic_number(&g, 1, budget).unwrap() {
                MultichromaticResult::Exact(r) => assert_eq!(r.value, chi, "{}", g.name),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn fractional_examples() {
        let caps = LpCaps::default();
        assert_eq!(fractional_chromatic(&cycle(5).unwrap(), &caps).unwrap(), q(5, 2));
        assert_eq!(fractional_chromatic(&cycle(7).unwrap(), &caps).unwrap(), q(7, 3));
        assert_eq!(fractional_chromatic(&complete(4).unwrap(), &caps).unwrap(), q(4, 1));
        assert_eq!(fractional_chromatic(&kneser(5, 2).unwrap(), &caps).unwrap(), q(5, 2));
        assert_eq!(
            fractional_chromatic(&build_named("M:2^2(K:2)").unwrap(), &caps).unwrap(),
            q(29, 10)
        );
    }

    #[test]
    fn fractional_respects_caps() {
        let caps = LpCaps { vertex_cap: 5, mis_cap: 100_000 };
        assert!(matches!(
            fractional_chromatic(&cycle(9).unwrap(), &caps),
            Err(Error::CapExceeded(_))
        ));
        let caps = LpCaps { vertex_cap: 40, mis_cap: 3 };
        assert!(matches!(
            fractional_chromatic(&cycle(9).unwrap(), &caps),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn mis_enumeration_on_the_five_cycle() {
        let sets = maximal_independent_sets(&cycle(5).unwrap(), 1000).unwrap();
        assert_eq!(sets.len(), 5);
        for mask in sets {
            assert_eq!(mask.count_ones(), 2);
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(kneser_chromatic(5, 2).unwrap(), 3);
        assert_eq!(kneser_chromatic(4, 2).unwrap(), 2);
        assert_eq!(kneser_chromatic(6, 2).unwrap(), 4);
        assert!(kneser_chromatic(3, 2).is_err());
        assert_eq!(multichromatic_lower_bound(3, 7, 3).unwrap(), 11);
        assert_eq!(multichromatic_lower_bound(2, 3, 1).unwrap(), 3);
        assert_eq!(multichromatic_lower_bound(2, 3, 2).unwrap(), 5);
        assert!(multichromatic_lower_bound(2, 3, 3).is_err());
    }

    #[test]
    fn kneser_formula_matches_solver() {
        let budget = 10_000_000;
        for (n, k) in [(4u32, 2u32), (5, 2), (6, 2)] {
            let g = kneser(n, k).unwrap();
            assert_eq!(
                exact_chromatic_number(&g, budget).unwrap(),
                kneser_chromatic(n, k).unwrap(),
                "KG:{n},{k}"
            );
        }
    }

    #[test]
    fn odd_girth_bound() {
        assert_eq!(fractional_lower_bound_from_odd_girth(&cycle(9).unwrap()).unwrap(), q(9, 4));
        assert_eq!(fractional_lower_bound_from_odd_girth(&complete(3).unwrap()).unwrap(), q(3, 1));
        assert_eq!(fractional_lower_bound_from_odd_girth(&kneser(5, 2).unwrap()).unwrap(), q(5, 2));
        assert!(fractional_lower_bound_from_odd_girth(&cycle(8).unwrap()).is_err());
    }

    #[test]
    fn criticality_cases() {
        let budget = 10_000_000;
        assert!(is_edge_color_critical(&cycle(9).unwrap(), budget).unwrap());
        assert!(is_vertex_color_critical(&cycle(9).unwrap(), budget).unwrap());
        assert!(is_vertex_color_critical(&build_named("M:2^2(K:2)").unwrap(), budget).unwrap());
        // A path is 2-chromatic but deleting an edge keeps another edge.
        let p3 = Graph::new("p3", 3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_edge_color_critical(&p3, budget).unwrap());
        // A triangle with a pendant vertex is not vertex-critical.
        let lollipop = Graph::new("lolli", 4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(!is_vertex_color_critical(&lollipop, budget).unwrap());
    }

    #[test]
    fn sandwich_smallest_level() {
        let rep = sandwich_report(2, 2, 10_000_000).unwrap();
        assert_eq!(rep.graphs[0].vertices, 9);
        assert_eq!(rep.graphs[1].vertices, 9);
        assert_eq!(rep.graphs[2].vertices, 5);
        assert_eq!(rep.relations[1].forward, RelationStatus::Found);
        assert_eq!(rep.relations[1].reverse, RelationStatus::Refuted);
        assert!(rep.all_isomorphic.is_none());
    }

    #[test]
    fn sandwich_degenerate_level_is_isomorphic() {
        let rep = sandwich_report(1, 3, 10_000_000).unwrap();
        assert_eq!(rep.all_isomorphic, Some(true));
        for rel in &rep.relations {
            assert_eq!(rel.forward, RelationStatus::Found);
            assert_eq!(rel.reverse, RelationStatus::Found);
        }
    }

    #[test]
    fn sandwich_rejects_large_parameters() {
        assert!(sandwich_report(2, 3, 1000).is_err());
    }

    #[test]
    fn color_normal_form_examples() {
        assert_eq!(color_normal_form(&[2, 0, 2, 1]), vec![0, 1, 0, 2]);
        assert_eq!(color_normal_form(&[1, 1, 1]), vec![0, 0, 0]);
        assert_eq!(color_normal_form(&[0, 1, 2]), vec![0, 1, 2]);
        assert!(color_normal_form(&[]).is_empty());
    }

    #[test]
    fn orbits_and_cases_on_a_single_edge() {
        // One edge plus an isolated vertex: the swap is the only symmetry.
        let g = Graph::new("edge+1", 3, &[(0, 1)]).unwrap();
        let autos = crate::iso::sample_automorphisms(&g, 100, 10_000);
        let orbits = vertex_orbits(g.n(), &autos);
        assert_eq!(orbits, vec![vec![0, 1], vec![2]]);
        let perms = induced_orbit_permutations(&orbits[0], &autos);
        assert_eq!(perms.len(), 2);
        // Patterns on an adjacent pair: only "two different colors", and
        // renaming collapses that to a single representative.
        let cases = orbit_case_patterns(&g, &orbits[0], 2, &perms);
        assert_eq!(cases, vec![vec![0, 1]]);
    }

    #[test]
    fn case_split_on_the_wide_graph() {
        // The 28-vertex level-2 graph has a 4-element independent orbit
        // whose patterns collapse to the set partitions of four items into
        // at most three blocks.
        let g = build_w(2, 4).unwrap();
        let autos = crate::iso::sample_automorphisms(&g, 130, 2_000_000);
        assert!(autos.len() > 1, "expected nontrivial symmetry");
        let split = choose_case_split(&g, 3, &autos);
        let (orbit, cases) = split.expect("a small orbit exists");
        assert_eq!(orbit.len(), 4);
        assert!(
            (1..=14).contains(&cases.len()),
            "got {} cases: {cases:?}",
            cases.len()
        );
    }

    #[test]
    fn escalation_decides_small_instances() {
        let g = build_w(2, 4).unwrap();
        match try_k_coloring_by_learning(&g, 3, 50_000_000) {
            Ok(None) => {}
            other => panic!("expected refutation, got {other:?}"),
        }
        match try_k_coloring_by_learning(&g, 4, 50_000_000) {
            Ok(Some(c)) => assert!(c.is_proper(&g)),
            other => panic!("expected witness, got {other:?}"),
        }
    }
}
