//! The reproducibility report: each acceptance area as a callable check,
//! shared by the command-line `report` subcommand and the integration test
//! suite.  All outcomes are deterministic given the configuration; wall
//! times are kept outside the deterministic payload.

use crate::chromatic::{
    chromatic_number, fractional_chromatic, fractional_lower_bound_from_odd_girth,
    is_edge_color_critical, multichromatic_number, sandwich_report, ChromaticResult, LpCaps,
    MultichromaticResult, RelationStatus,
};
use crate::family::build_named;
use crate::graph::{cycle, kneser, Graph};
use crate::hom::{
    compose, level_restriction, pullback_coloring, search_homomorphism, verify_homomorphism,
    wide_to_kneser, naive_homomorphism_exists, verify_wide_to_kneser_streamed, ChoicePolicy,
    SearchOutcome, VerifyOutcome,
};
use crate::iso::{is_isomorphic_small, IsoResult};
use crate::mycielski::{
    fractional_growth_lower_bounds, iterated_mycielskian, mycielski_fractional_step, mycielskian,
    ratio, wide_coloring_of_mycielskian, wide_to_mycielskian,
};
use crate::wide::{
    build_omega, build_w, canonical_coloring, embedded_odd_cycle, is_s_wide, odd_girth_formula,
    vertex_count_formula, w_adjacent, w_vertices, W_VERTEX_CAP,
};
use crate::Result;
use num::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Clone, Copy, Debug)]
pub struct ReportConfig {
    /// Node budget for homomorphism searches and refutations.
    pub search_budget: u64,
    /// Node budget per candidate color count in the exact coloring solver.
    pub chromatic_budget: u64,
    /// Random seeds tried per seeded-policy check.
    pub seeds: u64,
    pub lp: LpCaps,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            search_budget: 50_000_000,
            chromatic_budget: 400_000_000,
            seeds: 10,
            lp: LpCaps::default(),
        }
    }
}

impl ReportConfig {
    /// A deliberately starved configuration; decidable-only-with-work checks
    /// degrade to `Unconfirmed`.
    pub fn reduced() -> Self {
        ReportConfig {
            search_budget: 2_000,
            chromatic_budget: 2_000,
            seeds: 2,
            lp: LpCaps { vertex_cap: 12, mis_cap: 50 },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionStatus {
    Pass,
    Fail,
    Unconfirmed,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub label: String,
    pub status: CriterionStatus,
    pub detail: String,
    /// Structured payload (exact rationals as `{num, den}` strings, counts).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub status: CriterionStatus,
    pub checks: Vec<CheckLine>,
    #[serde(skip)]
    pub millis: u128,
}

fn check(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        label: label.into(),
        status: if ok { CriterionStatus::Pass } else { CriterionStatus::Fail },
        detail: detail.into(),
        data: None,
    }
}

fn unconfirmed(label: impl Into<String>, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        label: label.into(),
        status: CriterionStatus::Unconfirmed,
        detail: detail.into(),
        data: None,
    }
}

/// Fail dominates; otherwise any unconfirmed *required* line demotes to
/// unconfirmed.  Lines listed in `tolerated` may stay unconfirmed without
/// demoting the criterion.
fn rollup(id: u32, title: &str, checks: Vec<CheckLine>, tolerated: &[&str]) -> CriterionResult {
    let mut status = CriterionStatus::Pass;
    for c in &checks {
        match c.status {
            CriterionStatus::Fail => {
                status = CriterionStatus::Fail;
                break;
            }
            CriterionStatus::Unconfirmed if !tolerated.contains(&c.label.as_str()) => {
                status = CriterionStatus::Unconfirmed;
            }
            _ => {}
        }
    }
    CriterionResult {
        id,
        title: title.to_string(),
        status,
        checks,
        millis: 0,
    }
}

pub fn rational_json(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn rational_approx(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Wrap an error into a failing check line instead of aborting the report.
fn guard(label: &str, r: Result<CheckLine>) -> CheckLine {
    match r {
        Ok(line) => line,
        Err(e) => check(label, false, format!("error: {e}")),
    }
}

// ---------------------------------------------------------------------------
// Criterion 1: the explicit maps into Kneser graphs verify.
// ---------------------------------------------------------------------------

fn policies(seeds: u64) -> Vec<ChoicePolicy> {
    let mut out = vec![ChoicePolicy::Smallest];
    out.extend((0..seeds).map(ChoicePolicy::SeededRandom));
    out
}

pub fn criterion_1(cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();
    for s in 1..=5u32 {
        for t in 2..=6u32 {
            let label = format!("map W:{s},{t} -> KG:{},{s}", t + 2 * (s - 1));
            checks.push(guard(&label, verify_grid_case(s, t, cfg)));
        }
    }
    for (s, t) in [(3u32, 7u32), (3, 8)] {
        let label = format!("streamed map W:{s},{t} -> KG:{},{s}", t + 2 * (s - 1));
        checks.push(guard(&label, verify_streamed_case(s, t, cfg)));
    }
    rollup(1, "explicit maps into Kneser graphs verify across the grid", checks, &[])
}

fn verify_grid_case(s: u32, t: u32, cfg: &ReportConfig) -> Result<CheckLine> {
    let label = format!("map W:{s},{t} -> KG:{},{s}", t + 2 * (s - 1));
    if vertex_count_formula(s, t)? > W_VERTEX_CAP {
        return Ok(unconfirmed(label, "outside the build cap"));
    }
    let source = if s == 1 { build_w(s, t)? } else { build_omega(s, t)? };
    let target = kneser(t + 2 * (s - 1), s)?;
    let mut runs = 0;
    for policy in policies(cfg.seeds) {
        let mut m = wide_to_kneser(s, t, policy)?;
        match verify_homomorphism(&source, &target, &mut m)? {
            VerifyOutcome::Verified => runs += 1,
            VerifyOutcome::Refuted { edge } => {
                return Ok(check(
                    label,
                    false,
                    format!("policy {policy:?} dropped the edge {edge:?}"),
                ))
            }
        }
    }
    Ok(check(label, true, format!("{runs} policy/seed runs verified")))
}

fn verify_streamed_case(s: u32, t: u32, cfg: &ReportConfig) -> Result<CheckLine> {
    let label = format!("streamed map W:{s},{t} -> KG:{},{s}", t + 2 * (s - 1));
    let mut runs = 0;
    let mut counts = (0, 0);
    for policy in policies(cfg.seeds) {
        let sv = verify_wide_to_kneser_streamed(s, t, policy)?;
        counts = (sv.vertices, sv.edges);
        runs += 1;
    }
    let expected = vertex_count_formula(s, t)?;
    let ok = counts.0 == expected;
    Ok(check(
        label,
        ok,
        format!("{runs} runs verified over {} vertices / {} edges", counts.0, counts.1),
    ))
}

// ---------------------------------------------------------------------------
// Criterion 2: two-fold chromatic numbers with explicit refutations.
// ---------------------------------------------------------------------------

pub fn criterion_2(cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();
    for (s, t, want) in [(2u32, 3u32, 5u32), (2, 4, 6)] {
        let label = format!("2-fold chromatic number of W:{s},{t}");
        checks.push(guard(&label, (|| {
            let g = build_w(s, t)?;
            Ok(match multichromatic_number(&g, 2, cfg.search_budget)? {
                MultichromaticResult::Exact(r) => {
                    let ok = r.value == want && r.refuted.contains(&(want - 1));
                    check(
                        &label,
                        ok,
                        format!("value {} with palette sizes {:?} exhaustively refuted", r.value, r.refuted),
                    )
                }
                MultichromaticResult::Unconfirmed { refuted, stalled_at } => unconfirmed(
                    &label,
                    format!("budget exhausted at palette size {stalled_at}; refuted {refuted:?}"),
                ),
            })
        })()));
    }
    rollup(2, "two-fold chromatic numbers are exact with refutations", checks, &[])
}

// ---------------------------------------------------------------------------
// Criterion 3: chromatic number equals the position count.
// ---------------------------------------------------------------------------

const TOLERATED_CHI: &str = "chromatic number of W:3,4";

pub fn criterion_3(cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();
    for (s, t) in [(2u32, 3u32), (2, 4), (3, 3), (2, 5), (3, 4)] {
        let label = format!("chromatic number of W:{s},{t}");
        checks.push(guard(&label, (|| {
            let g = build_w(s, t)?;
            Ok(match chromatic_number(&g, cfg.chromatic_budget)? {
                ChromaticResult::Exact { chi, .. } => {
                    check(&label, chi == t, format!("exact value {chi}, expected {t}"))
                }
                ChromaticResult::Bounded { lb, ub } => {
                    if lb <= t && t <= ub {
                        unconfirmed(&label, format!("undecided in [{lb},{ub}]"))
                    } else {
                        check(&label, false, format!("interval [{lb},{ub}] excludes {t}"))
                    }
                }
            })
        })()));
    }
    rollup(
        3,
        "chromatic number equals the position count",
        checks,
        &[TOLERATED_CHI],
    )
}

// ---------------------------------------------------------------------------
// Criterion 4: counts, cycle isomorphisms, odd girth, embedded cycles.
// ---------------------------------------------------------------------------

pub fn criterion_4(cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();

    let mut bad_counts = Vec::new();
    let mut tested = 0;
    for s in 1..=5u32 {
        for t in 2..=6u32 {
            let formula = vertex_count_formula(s, t).unwrap_or(0);
            let listed = w_vertices(s, t).len() as u64;
            tested += 1;
            if formula != listed {
                bad_counts.push((s, t, formula, listed));
            }
        }
    }
    for (s, t) in [(3u32, 7u32), (3, 8)] {
        let formula = vertex_count_formula(s, t).unwrap_or(0);
        let listed = w_vertices(s, t).len() as u64;
        tested += 1;
        if formula != listed {
            bad_counts.push((s, t, formula, listed));
        }
    }
    checks.push(check(
        "vertex counts match the closed formula",
        bad_counts.is_empty(),
        if bad_counts.is_empty() {
            format!("{tested} parameter pairs agree")
        } else {
            format!("mismatches: {bad_counts:?}")
        },
    ));

    for s in 2..=4u32 {
        let label = format!("W:{s},3 is the cycle of length {}", 6 * s - 3);
        checks.push(guard(&label, (|| {
            let w = build_w(s, 3)?;
            let c = cycle((6 * s - 3) as usize)?;
            Ok(match is_isomorphic_small(&w, &c, cfg.search_budget)? {
                IsoResult::Isomorphic(_) => check(&label, true, "explicit isomorphism found"),
                IsoResult::NotIsomorphic => check(&label, false, "not isomorphic"),
                IsoResult::BudgetExhausted => unconfirmed(&label, "isomorphism search budget exhausted"),
            })
        })()));
    }

    let mut og_bad = Vec::new();
    let mut og_tested = 0;
    for s in 2..=3u32 {
        for t in 3..=6u32 {
            match (|| -> Result<(u64, u64)> {
                let g = build_w(s, t)?;
                let got = g.odd_girth().map(|x| x as u64).unwrap_or(0);
                Ok((got, odd_girth_formula(s, t)?))
            })() {
                Ok((got, want)) if got == want => og_tested += 1,
                Ok((got, want)) => og_bad.push(format!("W:{s},{t}: got {got}, want {want}")),
                Err(e) => og_bad.push(format!("W:{s},{t}: {e}")),
            }
        }
    }
    checks.push(check(
        "odd girth matches the ceiling formula",
        og_bad.is_empty(),
        if og_bad.is_empty() { format!("{og_tested} cases agree") } else { og_bad.join("; ") },
    ));

    for (s, t) in [(2u32, 5u32), (2, 6), (2, 7), (3, 7), (3, 8)] {
        let label = format!("embedded odd cycle in W:{s},{t}");
        checks.push(guard(&label, (|| {
            let cyc = embedded_odd_cycle(s, t)?;
            let len = cyc.len();
            let mut ok = len == (2 * s + 1) as usize;
            for i in 0..len {
                let a = &cyc[i];
                let b = &cyc[(i + 1) % len];
                if !w_adjacent(s, &a.x, &b.x) {
                    ok = false;
                }
            }
            let distinct = {
                let mut seen: Vec<&Vec<u32>> = cyc.iter().map(|v| &v.x).collect();
                seen.sort();
                seen.windows(2).all(|w| w[0] != w[1])
            };
            Ok(check(
                &label,
                ok && distinct,
                format!("cycle of length {len} with consecutive adjacency"),
            ))
        })()));
    }

    rollup(4, "counts, cycle isomorphisms, odd girth, embedded cycles", checks, &[])
}

// ---------------------------------------------------------------------------
// Criterion 5: the two encodings agree edge-for-edge.
// ---------------------------------------------------------------------------

pub fn criterion_5(_cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();
    let mut agreed = Vec::new();
    let mut skipped = 0;
    for s in 2..=6u32 {
        for t in 2..=12u32 {
            match vertex_count_formula(s, t) {
                Ok(count) if count <= W_VERTEX_CAP => {}
                _ => {
                    skipped += 1;
                    continue;
                }
            }
            let label = format!("edge sets of W:{s},{t} and Omega:{s},{t}");
            let line = guard(&label, (|| {
                let w = build_w(s, t)?;
                let o = build_omega(s, t)?;
                let ok = w.n() == o.n() && w.edges() == o.edges();
                Ok(check(&label, ok, format!("{} vertices, {} edges", w.n(), w.m())))
            })());
            if line.status == CriterionStatus::Pass {
                agreed.push(format!("({s},{t})"));
            } else {
                checks.push(line);
            }
        }
    }
    checks.push(check(
        "encoding agreement sweep",
        true,
        format!("{} instances within the cap agree ({} skipped): {}", agreed.len(), skipped, agreed.join(" ")),
    ));
    rollup(5, "sequence and chain encodings agree edge-for-edge", checks, &[])
}

// ---------------------------------------------------------------------------
// Criterion 6: Mycielskian suite.
// ---------------------------------------------------------------------------

pub fn criterion_6(cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();

    for h in 2..=4u32 {
        let label = format!("M:{h}(K:2) is the cycle of length {}", 2 * h + 1);
        checks.push(guard(&label, (|| {
            let m = mycielskian(&crate::graph::complete(2)?, h)?;
            let c = cycle((2 * h + 1) as usize)?;
            Ok(match is_isomorphic_small(&m, &c, cfg.search_budget)? {
                IsoResult::Isomorphic(_) => check(&label, true, "explicit isomorphism found"),
                IsoResult::NotIsomorphic => check(&label, false, "not isomorphic"),
                IsoResult::BudgetExhausted => unconfirmed(&label, "isomorphism search budget exhausted"),
            })
        })()));
    }

    for h in 2..=4u32 {
        for d in 1..=2u32 {
            let label = format!("chromatic number of M:{h}^{d}(K:2)");
            checks.push(guard(&label, (|| {
                let g = iterated_mycielskian(&crate::graph::complete(2)?, h, d)?;
                Ok(match chromatic_number(&g, cfg.chromatic_budget)? {
                    ChromaticResult::Exact { chi, .. } => check(
                        &label,
                        chi == d + 2,
                        format!("exact value {chi}, expected {}", d + 2),
                    ),
                    ChromaticResult::Bounded { lb, ub } => {
                        unconfirmed(&label, format!("undecided in [{lb},{ub}]"))
                    }
                })
            })()));
        }
    }

    let label = "transferred coloring of the 4-level cone over the 9-cycle is 2-wide";
    checks.push(guard(label, (|| {
        let g = build_w(2, 3)?;
        let c0 = canonical_coloring(&g)?;
        let (m, c) = wide_coloring_of_mycielskian(&g, &c0, 2)?;
        let ok = m.n() == 37 && c.num_colors == 4 && is_s_wide(&m, &c, 2)?.is_wide();
        Ok(check(label, ok, format!("{} vertices, {} colors", m.n(), c.num_colors)))
    })()));

    for (s, t) in [(2u32, 2u32), (2, 3), (3, 2)] {
        let label = format!("map W:{s},{} into the {s}-level cone over W:{s},{t}", t + 1);
        checks.push(guard(&label, (|| {
            let (source, target, m) = wide_to_mycielskian(s, t)?;
            Ok(check(
                &label,
                m.is_verified(),
                format!("{} -> {} over {} vertices", source.name, target.name, source.n()),
            ))
        })()));
    }

    rollup(6, "Mycielskian suite", checks, &[])
}

// ---------------------------------------------------------------------------
// Criterion 7: fractional chromatic suite.
// ---------------------------------------------------------------------------

pub fn criterion_7(cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();

    for b in 1..=7u32 {
        let n = 2 * b + 1;
        let label = format!("fractional chromatic number of C:{n}");
        checks.push(guard(&label, (|| {
            let got = fractional_chromatic(&cycle(n as usize)?, &cfg.lp)?;
            let want = ratio(n as i64, b as i64);
            Ok(CheckLine {
                data: Some(rational_json(&got)),
                ..check(&label, got == want, format!("got {got}, want {want}"))
            })
        })()));
    }

    let label = "eleven-vertex double cone value matches the one-step formula";
    checks.push(guard(label, (|| {
        let g = build_named("M:2^2(K:2)")?;
        let got = fractional_chromatic(&g, &cfg.lp)?;
        let stepped = mycielski_fractional_step(&ratio(5, 2), 2)?;
        let ok = got == ratio(29, 10) && stepped == ratio(29, 10);
        Ok(CheckLine {
            data: Some(rational_json(&got)),
            ..check(label, ok, format!("LP {got}, formula {stepped}"))
        })
    })()));

    for base in ["C:5", "C:7", "K:3"] {
        for h in 2..=3u32 {
            let label = format!("LP equals the step formula for M:{h}({base})");
            checks.push(guard(&label, (|| {
                let g = build_named(base)?;
                let qf = fractional_chromatic(&g, &cfg.lp)?;
                let m = mycielskian(&g, h)?;
                let lp = fractional_chromatic(&m, &cfg.lp)?;
                let formula = mycielski_fractional_step(&qf, h)?;
                Ok(CheckLine {
                    data: Some(json!({ "lp": rational_json(&lp), "formula": rational_json(&formula) })),
                    ..check(&label, lp == formula, format!("LP {lp}, formula {formula}"))
                })
            })()));
        }
    }

    for s in 2..=3u32 {
        let label = format!("fractional lower-bound sequence at s={s} rises for 20 steps");
        checks.push(guard(&label, (|| {
            let table = fractional_growth_lower_bounds(s, 22)?;
            let rising = table.windows(2).all(|w| w[0].1 < w[1].1);
            let seed_ok = table[0].1 == ratio((6 * s - 3) as i64, (3 * s - 2) as i64);
            Ok(check(
                &label,
                table.len() == 20 && rising && seed_ok,
                format!("{} entries, last ~ {:.4}", table.len(), rational_approx(&table[19].1)),
            ))
        })()));
    }

    let label = "fractional chromatic number of W:2,4 sits in its bounds";
    checks.push(guard(label, (|| {
        let g = build_w(2, 4)?;
        let got = fractional_chromatic(&g, &cfg.lp)?;
        let lower = fractional_lower_bound_from_odd_girth(&g)?;
        let upper = ratio(3, 1);
        let ok = lower == ratio(7, 3) && got >= lower && got <= upper;
        Ok(CheckLine {
            data: Some(rational_json(&got)),
            ..check(label, ok, format!("value {got} in [{lower}, {upper}]"))
        })
    })()));

    rollup(7, "fractional chromatic suite with exact rationals", checks, &[])
}

// ---------------------------------------------------------------------------
// Criterion 8: criticality, sandwich, degrees.
// ---------------------------------------------------------------------------

pub fn criterion_8(cfg: &ReportConfig) -> CriterionResult {
    let mut checks = Vec::new();

    for (s, t) in [(2u32, 3u32), (2, 4), (3, 3)] {
        let label = format!("W:{s},{t} is edge-color-critical");
        checks.push(guard(&label, (|| {
            let g = build_w(s, t)?;
            match is_edge_color_critical(&g, cfg.chromatic_budget) {
                Ok(flag) => Ok(check(&label, flag, format!("{} edge deletions checked", g.m()))),
                Err(crate::Error::BudgetExhausted(msg)) => Ok(unconfirmed(&label, msg)),
                Err(e) => Err(e),
            }
        })()));
    }

    let label = "sandwich at the smallest level: forward found, reverse refuted";
    checks.push(guard(label, (|| {
        let rep = sandwich_report(2, 2, cfg.search_budget)?;
        let rel = &rep.relations[1];
        let ok = rel.forward == RelationStatus::Found && rel.reverse == RelationStatus::Refuted;
        if rel.forward == RelationStatus::Unconfirmed || rel.reverse == RelationStatus::Unconfirmed
        {
            return Ok(unconfirmed(label, format!("{rel:?}")));
        }
        Ok(check(
            label,
            ok,
            format!("{} -> {}: {:?}, reverse {:?}", rel.from, rel.to, rel.forward, rel.reverse),
        ))
    })()));

    let mut deg_bad = Vec::new();
    let mut deg_tested = 0;
    for s in 2..=4u32 {
        for t in 3..=6u32 {
            match build_w(s, t) {
                Ok(g) => {
                    deg_tested += 1;
                    let want = 1usize << (t - 2);
                    if g.max_degree() != want {
                        deg_bad.push(format!("W:{s},{t}: {} != {want}", g.max_degree()));
                    }
                }
                Err(e) => deg_bad.push(format!("W:{s},{t}: {e}")),
            }
        }
    }
    checks.push(check(
        "maximum degree is 2^(t-2)",
        deg_bad.is_empty(),
        if deg_bad.is_empty() { format!("{deg_tested} cases agree") } else { deg_bad.join("; ") },
    ));

    rollup(8, "criticality, sandwich, and degree facts", checks, &[])
}

// ---------------------------------------------------------------------------
// Criterion 9: oracle soundness.
// ---------------------------------------------------------------------------

fn random_graph(rng: &mut impl rand::Rng, n: usize, p: f64, name: &str) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(name, n, &edges).expect("random graph parameters are valid")
}

pub fn criterion_9(cfg: &ReportConfig) -> CriterionResult {
    use rand::{Rng, SeedableRng};
    let mut checks = Vec::new();

    let label = "search agrees with naive enumeration on random pairs";
    checks.push(guard(label, (|| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let mut disagreements = Vec::new();
        let mut undecided = 0u32;
        let pairs = 500;
        for case in 0..pairs {
            let nf = rng.gen_range(1..=6);
            let ng = rng.gen_range(1..=5);
            let p: f64 = rng.gen_range(0.15..0.85);
            let f = random_graph(&mut rng, nf, p, "f");
            let g = random_graph(&mut rng, ng, p, "g");
            let naive = naive_homomorphism_exists(&f, &g)?;
            match search_homomorphism(&f, &g, cfg.search_budget)? {
                SearchOutcome::Found(m) => {
                    if !naive || !m.is_verified() {
                        disagreements.push(case);
                    }
                }
                SearchOutcome::NoHomomorphism => {
                    if naive {
                        disagreements.push(case);
                    }
                }
                SearchOutcome::BudgetExhausted => undecided += 1,
            }
        }
        if !disagreements.is_empty() {
            return Ok(check(label, false, format!("disagreements at cases {disagreements:?}")));
        }
        if undecided > 0 {
            return Ok(unconfirmed(label, format!("{undecided} of {pairs} pairs hit the budget")));
        }
        Ok(check(label, true, format!("{pairs} random pairs agree")))
    })()));

    let label = "pulled-back colorings are always wide";
    checks.push(guard(label, (|| {
        let mut cases = 0;
        // Along coordinate clamps between sequence graphs.
        for (s, r, t) in [(2u32, 2u32, 3u32), (3, 2, 3), (3, 2, 4), (2, 2, 4), (3, 3, 3)] {
            let source = build_w(s, t)?;
            let target = build_w(r, t)?;
            let m = level_restriction(s, r, t)?;
            let c = pullback_coloring(&source, &m, &target)?;
            if !is_s_wide(&source, &c, r)?.is_wide() {
                return Ok(check(label, false, format!("clamp ({s},{r},{t}) gave a non-wide coloring")));
            }
            cases += 1;
        }
        // Along search-found maps from odd cycles.
        for n in [9usize, 11, 15] {
            let source = cycle(n)?;
            let target = build_w(2, 3)?;
            match search_homomorphism(&source, &target, cfg.search_budget)? {
                SearchOutcome::Found(m) => {
                    let c = pullback_coloring(&source, &m, &target)?;
                    if !is_s_wide(&source, &c, 2)?.is_wide() {
                        return Ok(check(label, false, format!("C:{n} pullback not wide")));
                    }
                    cases += 1;
                }
                SearchOutcome::NoHomomorphism => {
                    return Ok(check(label, false, format!("no map from C:{n} found")))
                }
                SearchOutcome::BudgetExhausted => {
                    return Ok(unconfirmed(label, format!("search from C:{n} hit the budget")))
                }
            }
        }
        Ok(check(label, true, format!("{cases} pullbacks re-checked wide")))
    })()));

    let label = "composites of verified maps verify";
    checks.push(guard(label, (|| {
        let mut cases = 0;
        for (s, r, t) in [(3u32, 2u32, 3u32), (4, 2, 3), (3, 2, 4), (2, 1, 4)] {
            let phi = level_restriction(s, r, t)?;
            let mut f = wide_to_kneser(r, t, ChoicePolicy::Smallest)?;
            let carrier = build_w(r, t)?;
            let kg = kneser(t + 2 * (r - 1), r)?;
            verify_homomorphism(&carrier, &kg, &mut f)?;
            let mut composed = compose(&phi, &f)?;
            let source = build_w(s, t)?;
            match verify_homomorphism(&source, &kg, &mut composed)? {
                VerifyOutcome::Verified => cases += 1,
                VerifyOutcome::Refuted { edge } => {
                    return Ok(check(label, false, format!("({s},{r},{t}) dropped {edge:?}")))
                }
            }
        }
        // Chains of search-found maps between odd cycles.
        let c15 = cycle(15)?;
        let c9 = cycle(9)?;
        let c5 = cycle(5)?;
        let SearchOutcome::Found(a) = search_homomorphism(&c15, &c9, cfg.search_budget)? else {
            return Ok(unconfirmed(label, "search C:15 -> C:9 undecided"));
        };
        let SearchOutcome::Found(b) = search_homomorphism(&c9, &c5, cfg.search_budget)? else {
            return Ok(unconfirmed(label, "search C:9 -> C:5 undecided"));
        };
        let mut ab = compose(&a, &b)?;
        match verify_homomorphism(&c15, &c5, &mut ab)? {
            VerifyOutcome::Verified => cases += 1,
            VerifyOutcome::Refuted { edge } => {
                return Ok(check(label, false, format!("cycle composite dropped {edge:?}")))
            }
        }
        Ok(check(label, true, format!("{cases} composites verified")))
    })()));

    rollup(9, "oracle soundness properties", checks, &[])
}

// ---------------------------------------------------------------------------
// Runner and serialization.
// ---------------------------------------------------------------------------

pub fn run_criterion(id: u32, cfg: &ReportConfig) -> CriterionResult {
    let start = Instant::now();
    let mut result = match id {
        1 => criterion_1(cfg),
        2 => criterion_2(cfg),
        3 => criterion_3(cfg),
        4 => criterion_4(cfg),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        other => rollup(other, "unknown criterion", vec![check("id", false, "no such criterion")], &[]),
    };
    result.millis = start.elapsed().as_millis();
    result
}

pub fn run_all(cfg: &ReportConfig) -> Vec<CriterionResult> {
    (1..=9).map(|id| run_criterion(id, cfg)).collect()
}

/// Versioned JSON document: results are deterministic for a fixed
/// configuration; wall-clock timings live in a separate section.
pub fn report_to_json(results: &[CriterionResult]) -> Value {
    let timings: serde_json::Map<String, Value> = results
        .iter()
        .map(|r| (r.id.to_string(), json!(r.millis as u64)))
        .collect();
    json!({
        "schema": "widecolor-report/1",
        "results": results,
        "timings_ms": timings,
    })
}

/// Aligned text table, one line per criterion, with indented detail lines
/// for anything that did not pass.
pub fn render_text(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        let tag = match r.status {
            CriterionStatus::Pass => "PASS       ",
            CriterionStatus::Fail => "FAIL       ",
            CriterionStatus::Unconfirmed => "UNCONFIRMED",
        };
        out.push_str(&format!("{tag} {} {:<55} ({} ms)\n", r.id, r.title, r.millis));
        for c in &r.checks {
            if c.status != CriterionStatus::Pass {
                let ctag = match c.status {
                    CriterionStatus::Fail => "fail",
                    CriterionStatus::Unconfirmed => "unconfirmed",
                    CriterionStatus::Pass => unreachable!(),
                };
                out.push_str(&format!("    [{ctag}] {}: {}\n", c.label, c.detail));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rollup_rules() {
        let r = rollup(1, "t", vec![check("a", true, ""), check("b", true, "")], &[]);
        assert_eq!(r.status, CriterionStatus::Pass);
        let r = rollup(1, "t", vec![check("a", true, ""), check("b", false, "")], &[]);
        assert_eq!(r.status, CriterionStatus::Fail);
        let r = rollup(1, "t", vec![unconfirmed("a", "")], &[]);
        assert_eq!(r.status, CriterionStatus::Unconfirmed);
        let r = rollup(1, "t", vec![unconfirmed("a", "")], &["a"]);
        assert_eq!(r.status, CriterionStatus::Pass);
        let r = rollup(1, "t", vec![unconfirmed("a", ""), check("b", false, "")], &["a"]);
        assert_eq!(r.status, CriterionStatus::Fail);
    }

    #[test]
    fn json_shape_and_rationals() {
        let q = ratio(29, 10);
        assert_eq!(rational_json(&q), json!({"num": "29", "den": "10"}));
        let results = vec![rollup(1, "t", vec![check("a", true, "ok")], &[])];
        let doc = report_to_json(&results);
        assert_eq!(doc["schema"], "widecolor-report/1");
        assert_eq!(doc["results"][0]["status"], "pass");
        assert!(doc["results"][0].get("millis").is_none());
        assert!(doc["timings_ms"].get("1").is_some());
    }

    #[test]
    fn text_rendering_marks_failures() {
        let results = vec![rollup(
            2,
            "demo",
            vec![check("good", true, ""), check("bad", false, "boom")],
            &[],
        )]
        .into_iter()
        .map(|mut r| {
            r.millis = 7;
            r
        })
        .collect::<Vec<_>>();
        let text = render_text(&results);
        assert!(text.contains("FAIL"));
        assert!(text.contains("bad: boom"));
        assert!(!text.contains("good:"));
    }
}
