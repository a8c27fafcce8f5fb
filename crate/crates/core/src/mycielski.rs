//! Generalized Mycielskians: the cone construction itself, iterated
//! application, the wide-coloring transfer, the homomorphism from the next
//! sequence graph into the Mycielskian of the current one, and the exact
//! fractional-chromatic step formula with its lower-bound iteration.

use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::hom::{verify_homomorphism, VertexMap, VerifyOutcome};
use crate::label::{MycielskiVertex, VertexLabel, WideVertex};
use crate::wide::{self, WideCheck};
use crate::{Error, Result};
use num::{BigInt, BigRational, Integer, One, Zero};

/// Largest vertex count a (possibly iterated) Mycielskian is allowed to
/// reach.
pub const MYCIELSKI_VERTEX_CAP: u64 = 200_000;

/// The generalized Mycielskian with `h` levels over `g`: `h` stacked copies
/// of the vertex set, a copy of each base edge inside level 0 and across
/// consecutive levels, and an apex joined to all of level `h−1`.
/// Vertex `(v, j)` gets index `j·n + v`; the apex is the last index.
pub fn mycielskian(g: &Graph, h: u32) -> Result<Graph> {
    if h < 1 {
        return Err(Error::invalid("need h >= 1"));
    }
    let n = g.n() as u64;
    let count = (h as u64) * n + 1;
    if count > MYCIELSKI_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "{count} vertices exceed the Mycielskian cap {MYCIELSKI_VERTEX_CAP}"
        )));
    }
    let n = g.n();
    let h = h as usize;
    let apex = h * n;
    let mut edges = Vec::with_capacity((2 * h - 1) * g.m() + n);
    for &(u, v) in g.edges() {
        edges.push((u, v));
        for i in 0..h - 1 {
            edges.push((i * n + u, (i + 1) * n + v));
            edges.push((i * n + v, (i + 1) * n + u));
        }
    }
    for v in 0..n {
        edges.push(((h - 1) * n + v, apex));
    }
    let mut out = Graph::new(format!("M:{h}({})", g.name), h * n + 1, &edges)?;
    if out.m() != (2 * h - 1) * g.m() + n {
        return Err(Error::internal("Mycielskian edge count disagrees with its formula"));
    }
    let mut labels = Vec::with_capacity(out.n());
    for j in 0..h {
        for v in 0..n {
            labels.push(VertexLabel::Mycielski(MycielskiVertex::Level {
                base: v,
                level: j as u32,
            }));
        }
    }
    labels.push(VertexLabel::Mycielski(MycielskiVertex::Apex));
    out.labels = Some(labels);
    Ok(out)
}

/// `d`-fold application of [`mycielskian`]; `d = 0` returns the input
/// unchanged.
pub fn iterated_mycielskian(g: &Graph, h: u32, d: u32) -> Result<Graph> {
    if d == 0 {
        return Ok(g.clone());
    }
    let base_name = g.name.clone();
    let mut out = g.clone();
    for _ in 0..d {
        out = mycielskian(&out, h)?;
    }
    out.name = format!("M:{h}^{d}({base_name})");
    Ok(out)
}

/// Transfer an `s`-wide `t`-coloring of `g` to an `s`-wide `(t+1)`-coloring
/// of the `(3s−2)`-level Mycielskian: the new color goes to the apex and to
/// the levels `s, s+2, …, 3s−4`; every other cone vertex keeps its base
/// color.  The input coloring's wideness is a precondition and the output's
/// is re-checked, not trusted.
pub fn wide_coloring_of_mycielskian(
    g: &Graph,
    c0: &Coloring,
    s: u32,
) -> Result<(Graph, Coloring)> {
    if s < 2 {
        return Err(Error::invalid("need s >= 2"));
    }
    if c0.assign.len() != g.n() || !c0.is_proper(g) {
        return Err(Error::invalid("base coloring is not a proper coloring of the graph"));
    }
    match wide::is_s_wide(g, c0, s)? {
        WideCheck::Wide => {}
        WideCheck::NotWide { u, v, color, walk_len } => {
            return Err(Error::invalid(format!(
                "base coloring is not {s}-wide: vertices {u},{v} share color {color} across a {walk_len}-walk"
            )))
        }
    }
    let h = 3 * s - 2;
    let m = mycielskian(g, h)?;
    let fresh = c0.num_colors + 1;
    let n = g.n();
    let recolored = |j: u32| j >= s && j <= 3 * s - 4 && (j - s) % 2 == 0;
    let mut assign = Vec::with_capacity(m.n());
    for j in 0..h {
        for v in 0..n {
            assign.push(if recolored(j) { fresh } else { c0.color(v) });
        }
    }
    assign.push(fresh);
    let c = Coloring::new(fresh, assign)?;
    match wide::is_s_wide(&m, &c, s)? {
        WideCheck::Wide => Ok((m, c)),
        WideCheck::NotWide { u, v, color, walk_len } => Err(Error::internal(format!(
            "transferred coloring failed its {s}-wideness guarantee at vertices {u},{v}, color {color}, walk length {walk_len}"
        ))),
    }
}

/// Index of the base vertex `(0,1,1,…,1)` in the sequence graph `W:s,t`.
fn all_ones_tail_index(base: &Graph) -> Result<usize> {
    let labels = base
        .labels
        .as_ref()
        .ok_or_else(|| Error::internal("sequence graph lost its labels"))?;
    labels
        .iter()
        .position(|l| match l {
            VertexLabel::Wide(wv) => {
                wv.x[0] == 0 && wv.x[1..].iter().all(|&a| a == 1)
            }
            _ => false,
        })
        .ok_or_else(|| Error::internal("sequence graph lacks the (0,1,…,1) vertex"))
}

/// The homomorphism from `W:s,t+1` into the `s`-level Mycielskian of
/// `W:s,t`: a vertex whose last coordinate is 0 goes to the apex; a vertex
/// whose only 1 is the last coordinate goes to `fallback` (by default the
/// base vertex `(0,1,…,1)`) at level `s−1`; every other vertex drops its
/// last coordinate `a` and lands on the prefix at level `s−a`.
/// Returns the two graphs with the verified map; verification failure is an
/// internal error.
pub fn wide_to_mycielskian_with_fallback(
    s: u32,
    t: u32,
    fallback: Option<usize>,
) -> Result<(Graph, Graph, VertexMap)> {
    if s < 1 || t < 2 {
        return Err(Error::invalid("need s >= 1 and t >= 2"));
    }
    let source = wide::build_w(s, t + 1)?;
    let base = wide::build_w(s, t)?;
    let target = mycielskian(&base, s)?;
    let fallback_base = match fallback {
        Some(idx) => {
            if idx >= base.n() {
                return Err(Error::invalid(format!(
                    "fallback base vertex {idx} out of range"
                )));
            }
            idx
        }
        None => all_ones_tail_index(&base)?,
    };
    let base_index: std::collections::HashMap<&VertexLabel, usize> = base
        .labels
        .as_ref()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();

    let nb = base.n();
    let apex = (s as usize) * nb;
    let at_level = |v: usize, j: u32| (j as usize) * nb + v;
    let image = source
        .labels
        .as_ref()
        .unwrap()
        .iter()
        .map(|l| {
            let VertexLabel::Wide(wv) = l else {
                return Err(Error::internal("sequence labels expected"));
            };
            let last = wv.x[t as usize];
            if last == 0 {
                return Ok(apex);
            }
            let prefix = &wv.x[..t as usize];
            if last == 1 && !prefix.contains(&1) {
                return Ok(at_level(fallback_base, s - 1));
            }
            let key = VertexLabel::Wide(WideVertex { s, x: prefix.to_vec() });
            let v = base_index
                .get(&key)
                .copied()
                .ok_or_else(|| Error::internal(format!("prefix of {l} is not a base vertex")))?;
            Ok(at_level(v, s - last))
        })
        .collect::<Result<Vec<usize>>>()?;

    let mut m = VertexMap::new(source.name.clone(), target.name.clone(), image);
    match verify_homomorphism(&source, &target, &mut m)? {
        VerifyOutcome::Verified => Ok((source, target, m)),
        VerifyOutcome::Refuted { edge } => Err(Error::internal(format!(
            "cone-bound map dropped the edge {edge:?}"
        ))),
    }
}

/// [`wide_to_mycielskian_with_fallback`] with the default fallback vertex.
pub fn wide_to_mycielskian(s: u32, t: u32) -> Result<(Graph, Graph, VertexMap)> {
    wide_to_mycielskian_with_fallback(s, t, None)
}

/// One step of the fractional-chromatic growth formula for an `h`-level
/// Mycielskian: `q + 1/(1 + (q−1) + … + (q−1)^{h−1})`.
pub fn mycielski_fractional_step(q: &BigRational, h: u32) -> Result<BigRational> {
    if h < 1 {
        return Err(Error::invalid("need h >= 1"));
    }
    if *q <= BigRational::one() {
        return Err(Error::invalid(format!("need q > 1, got {q}")));
    }
    let base = q - BigRational::one();
    let mut power = BigRational::one();
    let mut sum = BigRational::zero();
    for _ in 0..h {
        sum += &power;
        power *= &base;
    }
    Ok(q + sum.recip())
}

/// Exact rational from integer numerator/denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Bit size past which a table entry is floored to a fixed denominator.
/// Iterating the step exactly roughly quadruples the bit size per step, so
/// long tables are infeasible without this; flooring keeps every entry a
/// true lower bound because the step formula is monotone increasing in `q`.
const GROWTH_DENOM_BITS: u64 = 64;

/// Largest rational `<= q` with denominator `2^GROWTH_DENOM_BITS`, or `q`
/// itself when it is already that small.
fn floor_to_small_denominator(q: BigRational) -> BigRational {
    if q.denom().bits() <= GROWTH_DENOM_BITS {
        return q;
    }
    let d = BigInt::one() << GROWTH_DENOM_BITS;
    let num = (q.numer() * &d).div_floor(q.denom());
    BigRational::new(num, d)
}

/// Lower bounds on the fractional chromatic number of the sequence graphs
/// at level `s`, for `t = 3…t_max`: seeded by the odd-cycle value
/// `(6s−3)/(3s−2)` at `t = 3` and advanced by one fractional step with
/// `h = 3s−2` per unit of `t`.  Oversized entries are floored to a
/// 64-bit-denominator rational, which stays a valid lower bound and keeps
/// long tables computable.  The sequence is strictly increasing.
pub fn fractional_growth_lower_bounds(s: u32, t_max: u32) -> Result<Vec<(u32, BigRational)>> {
    if s < 2 {
        return Err(Error::invalid("need s >= 2"));
    }
    if t_max < 3 {
        return Err(Error::invalid("need t_max >= 3"));
    }
    let h = 3 * s - 2;
    let mut q = ratio((6 * s - 3) as i64, (3 * s - 2) as i64);
    let mut table = vec![(3, q.clone())];
    for t in 4..=t_max {
        let next = floor_to_small_denominator(mycielski_fractional_step(&q, h)?);
        if next <= q {
            return Err(Error::internal("fractional step failed to increase"));
        }
        table.push((t, next.clone()));
        q = next;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};
    use crate::iso::{is_isomorphic_small, IsoResult};
    use crate::wide::build_w;

    #[test]
    fn two_level_cone_of_an_edge_is_the_five_cycle() {
        let m = mycielskian(&complete(2).unwrap(), 2).unwrap();
        assert_eq!((m.n(), m.m()), (5, 5));
        match is_isomorphic_small(&m, &cycle(5).unwrap(), 100_000).unwrap() {
            IsoResult::Isomorphic(_) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cones_of_an_edge_are_odd_cycles() {
        for h in 2..=4u32 {
            let m = mycielskian(&complete(2).unwrap(), h).unwrap();
            let c = cycle(2 * h as usize + 1).unwrap();
            assert!(matches!(
                is_isomorphic_small(&m, &c, 1_000_000).unwrap(),
                IsoResult::Isomorphic(_)
            ));
        }
    }

    #[test]
    fn eleven_vertex_double_cone_counts() {
        let g = iterated_mycielskian(&complete(2).unwrap(), 2, 2).unwrap();
        assert_eq!((g.n(), g.m()), (11, 20));
        assert_eq!(g.name, "M:2^2(K:2)");
    }

    #[test]
    fn count_formulas_hold() {
        for (g, h) in [
            (cycle(5).unwrap(), 2u32),
            (cycle(9).unwrap(), 4),
            (complete(4).unwrap(), 3),
        ] {
            let m = mycielskian(&g, h).unwrap();
            assert_eq!(m.n(), h as usize * g.n() + 1);
            assert_eq!(m.m(), (2 * h as usize - 1) * g.m() + g.n());
        }
    }

    #[test]
    fn zero_iterations_is_identity() {
        let g = cycle(7).unwrap();
        let same = iterated_mycielskian(&g, 3, 0).unwrap();
        assert_eq!(same.name, g.name);
        assert_eq!(same.edges(), g.edges());
    }

    #[test]
    fn labels_mark_levels_and_apex() {
        let m = mycielskian(&complete(2).unwrap(), 3).unwrap();
        let labels = m.labels.as_ref().unwrap();
        assert_eq!(
            labels[2],
            VertexLabel::Mycielski(MycielskiVertex::Level { base: 0, level: 1 })
        );
        assert_eq!(labels[6], VertexLabel::Mycielski(MycielskiVertex::Apex));
    }

    #[test]
    fn wide_coloring_of_edge_cone_matches_the_construction() {
        let k2 = complete(2).unwrap();
        let c0 = Coloring::new(2, vec![1, 2]).unwrap();
        let (m, c) = wide_coloring_of_mycielskian(&k2, &c0, 2).unwrap();
        assert_eq!(m.n(), 9);
        assert_eq!(c.num_colors, 3);
        // Fresh color exactly on level 2 and the apex.
        for (v, l) in m.labels.as_ref().unwrap().iter().enumerate() {
            let expect_fresh = matches!(
                l,
                VertexLabel::Mycielski(MycielskiVertex::Level { level: 2, .. })
                    | VertexLabel::Mycielski(MycielskiVertex::Apex)
            );
            assert_eq!(c.color(v) == 3, expect_fresh, "vertex {v}");
        }
        assert!(wide::is_s_wide(&m, &c, 2).unwrap().is_wide());
    }

    #[test]
    fn wide_coloring_transfer_on_the_nine_cycle() {
        let g = build_w(2, 3).unwrap();
        let c0 = wide::canonical_coloring(&g).unwrap();
        let (m, c) = wide_coloring_of_mycielskian(&g, &c0, 2).unwrap();
        assert_eq!(m.n(), 37);
        assert_eq!(c.num_colors, 4);
        assert!(wide::is_s_wide(&m, &c, 2).unwrap().is_wide());
    }

    #[test]
    fn non_wide_base_coloring_rejected() {
        // Proper 3-coloring of C_9 by repetition is not 2-wide.
        let g = cycle(9).unwrap();
        let c0 = Coloring::new(3, vec![1, 2, 3, 1, 2, 3, 1, 2, 3]).unwrap();
        assert!(c0.is_proper(&g));
        assert!(wide_coloring_of_mycielskian(&g, &c0, 2).is_err());
    }

    #[test]
    fn cone_bound_map_small_cases() {
        let (source, target, m) = wide_to_mycielskian(2, 2).unwrap();
        assert_eq!(source.n(), 9);
        assert_eq!(target.n(), 5);
        assert!(m.is_verified());
        // Last-coordinate-zero vertices land on the apex.
        let apex = target.n() - 1;
        for (v, l) in source.labels.as_ref().unwrap().iter().enumerate() {
            let VertexLabel::Wide(wv) = l else { panic!() };
            if *wv.x.last().unwrap() == 0 {
                assert_eq!(m.image[v], apex, "vertex {l}");
            }
        }
    }

    #[test]
    fn cone_bound_map_verifies_with_any_fallback() {
        let base_n = build_w(2, 3).unwrap().n();
        for idx in 0..base_n {
            let (_, _, m) = wide_to_mycielskian_with_fallback(2, 3, Some(idx)).unwrap();
            assert!(m.is_verified());
        }
    }

    #[test]
    fn fractional_step_values() {
        assert_eq!(mycielski_fractional_step(&ratio(5, 2), 2).unwrap(), ratio(29, 10));
        for h in 1..=5u32 {
            assert_eq!(
                mycielski_fractional_step(&ratio(2, 1), h).unwrap(),
                ratio(2 * h as i64 + 1, h as i64)
            );
        }
        // 9/4 + 1/(1 + 5/4 + 25/16 + 125/64)
        let sum = ratio(1, 1) + ratio(5, 4) + ratio(25, 16) + ratio(125, 64);
        assert_eq!(
            mycielski_fractional_step(&ratio(9, 4), 4).unwrap(),
            ratio(9, 4) + sum.recip()
        );
        assert!(mycielski_fractional_step(&ratio(1, 1), 2).is_err());
        assert!(mycielski_fractional_step(&ratio(1, 2), 2).is_err());
    }

    #[test]
    fn growth_table_values_and_monotonicity() {
        let table = fractional_growth_lower_bounds(2, 22).unwrap();
        assert_eq!(table[0], (3, ratio(9, 4)));
        assert_eq!(table[1], (4, ratio(3577, 1476)));
        assert_eq!(table.len(), 20);
        for w in table.windows(2) {
            assert!(w[0].1 < w[1].1);
        }
    }
}
