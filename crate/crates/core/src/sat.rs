//! Minimal conflict-driven clause-learning solver, used by the coloring
//! code as its escalation stage when plain backtracking stalls.  Two
//! watched literals per clause with blocking literals and a dedicated
//! two-literal fast path, first-unique-implication-point learning with
//! recursive clause minimization, variable and clause activities, phase
//! saving, Luby restarts, and periodic deletion of low-activity learnt
//! clauses.  Clauses live in one flat literal arena.  Sized for the
//! small formulas this crate produces (a few thousand variables), so
//! decision picking is a linear scan instead of a heap.
//!
//! `solve` takes assumption literals that act as forced first decisions;
//! learnt clauses never depend on them, so one solver instance can be
//! reused across many assumption sets while keeping everything it
//! learnt.  This is what the coloring refutation's case splits rely on.

/// Literal encoding: `variable << 1 | sign`, sign bit set for negation.
pub type Lit = u32;

pub fn pos(var: usize) -> Lit {
    (var as u32) << 1
}

pub fn neg(var: usize) -> Lit {
    (var as u32) << 1 | 1
}

fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

fn negate(l: Lit) -> Lit {
    l ^ 1
}

#[derive(Debug)]
pub enum SatOutcome {
    /// Truth value per variable.
    Satisfiable(Vec<bool>),
    /// No model extends the given assumptions.  With no assumptions this
    /// means the formula itself is unsatisfiable.
    Unsatisfiable,
    /// Conflict budget ran out first.
    Budget,
}

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNSET: i8 = 0;

#[derive(Clone, Copy)]
struct Clause {
    start: u32,
    len: u32,
}

/// Watch entries for two-literal clauses set this bit on the clause index;
/// their blocker is the whole remainder of the clause, so propagation never
/// has to touch the clause itself.
const BINARY: u32 = 1 << 31;

#[derive(Clone, Copy)]
struct Watch {
    clause: u32,
    /// Some other literal of the clause; if it is already true the
    /// clause is satisfied and need not be touched.
    blocker: Lit,
}

pub struct Solver {
    nvars: usize,
    arena: Vec<Lit>,
    clauses: Vec<Clause>,
    /// Learnt-clause quality: the number of distinct decision levels in the
    /// clause when it was learnt (lower is better, 0 for caller clauses).
    glue: Vec<u16>,
    /// Deletion ranking: bumped whenever the clause drives a conflict.
    cl_act: Vec<f32>,
    cl_bump: f32,
    /// Clauses below this index came from the caller and are never deleted.
    problem_clauses: usize,
    /// For each literal, the clauses currently watching it.
    watches: Vec<Vec<Watch>>,
    /// Assignment per literal: 1 true, -1 false, 0 unassigned; the two
    /// literals of a variable always hold opposite non-zero values.
    assign: Vec<i8>,
    levels: Vec<u32>,
    reasons: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_marks: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    bump: f64,
    phase: Vec<bool>,
    seen: Vec<bool>,
    /// Redundancy memo during clause minimization: 0 unknown, 1 removable,
    /// 2 not removable.
    marks: Vec<u8>,
    conflicts: u64,
    reductions: u64,
    next_reduce: u64,
    /// Set when an added clause is already contradictory at level zero.
    dead: bool,
}

impl Solver {
    pub fn new(nvars: usize) -> Solver {
        Solver {
            nvars,
            arena: Vec::new(),
            clauses: Vec::new(),
            glue: Vec::new(),
            cl_act: Vec::new(),
            cl_bump: 1.0,
            problem_clauses: 0,
            watches: vec![Vec::new(); 2 * nvars],
            assign: vec![UNSET; 2 * nvars],
            levels: vec![0; nvars],
            reasons: vec![None; nvars],
            trail: Vec::new(),
            trail_marks: Vec::new(),
            qhead: 0,
            activity: vec![0.0; nvars],
            bump: 1.0,
            phase: vec![false; nvars],
            // Indexed by variable in analysis and by decision level in
            // count_levels; levels can reach nvars plus the assumption
            // count, hence the double size.
            seen: vec![false; 2 * nvars + 2],
            marks: vec![0; nvars],
            conflicts: 0,
            reductions: 0,
            next_reduce: 8_000,
            dead: false,
        }
    }

    fn lits(&self, ci: u32) -> &[Lit] {
        let c = self.clauses[ci as usize];
        &self.arena[c.start as usize..(c.start + c.len) as usize]
    }

    /// Total conflicts over the solver's lifetime, for budget accounting
    /// across repeated `solve` calls.
    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = var_of(l);
        self.assign[l as usize] = TRUE;
        self.assign[negate(l) as usize] = FALSE;
        self.levels[v] = self.trail_marks.len() as u32;
        self.reasons[v] = reason;
        self.trail.push(l);
    }

    fn attach(&mut self, lits: &[Lit], glue: u16) -> u32 {
        let ci = self.clauses.len() as u32;
        self.clauses.push(Clause {
            start: self.arena.len() as u32,
            len: lits.len() as u32,
        });
        self.glue.push(glue);
        self.cl_act.push(0.0);
        self.arena.extend_from_slice(lits);
        let tag = if lits.len() == 2 { ci | BINARY } else { ci };
        self.watches[lits[0] as usize].push(Watch {
            clause: tag,
            blocker: lits[1],
        });
        self.watches[lits[1] as usize].push(Watch {
            clause: tag,
            blocker: lits[0],
        });
        ci
    }

    /// Add a clause over the given literals (must be non-empty and free of
    /// duplicate variables).  Unit clauses assign immediately at level zero.
    pub fn add_clause(&mut self, lits: &[Lit]) {
        debug_assert!(!lits.is_empty());
        debug_assert!(self.trail_marks.is_empty(), "clauses precede solving");
        if self.dead {
            return;
        }
        if lits.len() == 1 {
            match self.assign[lits[0] as usize] {
                TRUE => {}
                FALSE => self.dead = true,
                _ => self.enqueue(lits[0], None),
            }
            return;
        }
        self.attach(lits, 0);
        self.problem_clauses = self.clauses.len();
    }

    /// Propagate every queued assignment; `Some(clause)` on conflict.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let l = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = negate(l);
            let mut conflict = None;
            // Compact the watch list in place: entries that keep watching
            // `falsified` are written back at `kept`.
            let mut ws = std::mem::take(&mut self.watches[falsified as usize]);
            let mut kept = 0;
            let mut i = 0;
            'watches: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.assign[w.blocker as usize] == TRUE {
                    ws[kept] = w;
                    kept += 1;
                    continue;
                }
                if w.clause & BINARY != 0 {
                    // Two-literal clause with its other literal false or
                    // unassigned; the watch never moves.
                    ws[kept] = w;
                    kept += 1;
                    if self.assign[w.blocker as usize] == UNSET {
                        self.enqueue(w.blocker, Some(w.clause & !BINARY));
                    } else {
                        while i < ws.len() {
                            ws[kept] = ws[i];
                            kept += 1;
                            i += 1;
                        }
                        conflict = Some(w.clause & !BINARY);
                    }
                    continue;
                }
                let ci = w.clause;
                let c = self.clauses[ci as usize];
                let range = c.start as usize..(c.start + c.len) as usize;
                // Normalize so the falsified literal sits at slot 1.
                if self.arena[range.start] == falsified {
                    self.arena.swap(range.start, range.start + 1);
                }
                let first = self.arena[range.start];
                if first != w.blocker && self.assign[first as usize] == TRUE {
                    ws[kept] = Watch {
                        clause: ci,
                        blocker: first,
                    };
                    kept += 1;
                    continue;
                }
                for j in range.start + 2..range.end {
                    let cand = self.arena[j];
                    if self.assign[cand as usize] != FALSE {
                        self.arena.swap(range.start + 1, j);
                        self.watches[cand as usize].push(Watch {
                            clause: ci,
                            blocker: first,
                        });
                        continue 'watches;
                    }
                }
                ws[kept] = Watch {
                    clause: ci,
                    blocker: first,
                };
                kept += 1;
                if self.assign[first as usize] == UNSET {
                    self.enqueue(first, Some(ci));
                } else {
                    // Conflict: keep the remaining watches before reporting.
                    while i < ws.len() {
                        ws[kept] = ws[i];
                        kept += 1;
                        i += 1;
                    }
                    conflict = Some(ci);
                }
            }
            ws.truncate(kept);
            self.watches[falsified as usize] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.bump;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.bump *= 1e-100;
        }
    }

    fn bump_clause(&mut self, ci: u32) {
        let a = &mut self.cl_act[ci as usize];
        *a += self.cl_bump;
        if *a > 1e20 {
            for x in &mut self.cl_act {
                *x *= 1e-20;
            }
            self.cl_bump *= 1e-20;
        }
    }

    /// Number of distinct decision levels among the already-assigned
    /// literals of a fresh learnt clause, plus one for the asserting
    /// literal; a standard clause-quality measure.
    fn count_levels(&mut self, learnt: &[Lit]) -> u16 {
        // `seen` doubles as a level scratchpad: analyze has cleared it, and
        // it is sized `nvars + 1` so any decision level fits.
        let mut glue = 1u16;
        for &l in &learnt[1..] {
            let lv = self.levels[var_of(l)] as usize;
            if !self.seen[lv] {
                self.seen[lv] = true;
                glue = glue.saturating_add(1);
            }
        }
        for &l in &learnt[1..] {
            self.seen[self.levels[var_of(l)] as usize] = false;
        }
        glue
    }

    /// Is `q` implied by the marked literals and level-zero facts alone,
    /// following reason chains?  `level_mask` hashes the decision levels
    /// present in the learnt clause; a chain literal from any other level
    /// can never be covered, so the walk fails fast.  `marks` memoizes
    /// verdicts across the literals of one learnt clause and `touched`
    /// records every mark for cleanup.
    fn literal_is_redundant(
        &self,
        q: Lit,
        level_mask: u64,
        marks: &mut [u8],
        touched: &mut Vec<usize>,
    ) -> bool {
        let Some(r0) = self.reasons[var_of(q)] else {
            return false;
        };
        // Stack frames: clause, position within it, variable it implied.
        let mut stack: Vec<(u32, usize, usize)> = vec![(r0, 0, var_of(q))];
        loop {
            let Some(&(ci, pos, implied)) = stack.last() else {
                return true;
            };
            let body = self.lits(ci);
            if pos == body.len() {
                // Every antecedent checked out, so `implied` is redundant.
                marks[implied] = 1;
                touched.push(implied);
                stack.pop();
                continue;
            }
            stack.last_mut().expect("frame exists").1 += 1;
            let r = body[pos];
            let v = var_of(r);
            if v == implied || self.levels[v] == 0 || self.seen[v] || marks[v] == 1 {
                continue;
            }
            let level_plausible = level_mask >> (self.levels[v] & 63) & 1 == 1;
            if marks[v] == 2 || !level_plausible || self.reasons[v].is_none() {
                // Dead end: everything pending depended on this branch.
                for &(_, _, iv) in &stack {
                    marks[iv] = 2;
                    touched.push(iv);
                }
                marks[v] = 2;
                touched.push(v);
                return false;
            }
            stack.push((self.reasons[v].expect("checked above"), 0, v));
        }
    }

    /// First-unique-implication-point analysis.  Returns the learnt clause
    /// (asserting literal first) and the level to jump back to.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let current = self.trail_marks.len() as u32;
        let mut learnt: Vec<Lit> = vec![0];
        let mut counter = 0u32;
        let mut idx = self.trail.len();
        let mut p: Option<Lit> = None;
        loop {
            if confl as usize >= self.problem_clauses {
                self.bump_clause(confl);
            }
            let c = self.clauses[confl as usize];
            for pos_in_clause in c.start..c.start + c.len {
                let q = self.arena[pos_in_clause as usize];
                // A reason clause contains the literal it implied; that
                // variable is the one being resolved on, so skip it.
                if Some(var_of(q)) == p.map(var_of) {
                    continue;
                }
                let v = var_of(q);
                if !self.seen[v] && self.levels[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.levels[v] == current {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var_of(self.trail[idx])] {
                    break;
                }
            }
            let lit = self.trail[idx];
            self.seen[var_of(lit)] = false;
            counter -= 1;
            if counter == 0 {
                learnt[0] = negate(lit);
                break;
            }
            p = Some(lit);
            confl = self.reasons[var_of(lit)].expect("implied literals have reasons");
        }
        // Minimize: drop literals implied by the rest of the clause through
        // reason chains.
        let mut level_mask = 0u64;
        for &q in &learnt[1..] {
            level_mask |= 1 << (self.levels[var_of(q)] & 63);
        }
        let mut marks = std::mem::take(&mut self.marks);
        let mut touched = Vec::new();
        let mut kept: Vec<Lit> = Vec::with_capacity(learnt.len());
        kept.push(learnt[0]);
        for &q in &learnt[1..] {
            let redundant = marks[var_of(q)] == 1
                || self.literal_is_redundant(q, level_mask, &mut marks, &mut touched);
            if !redundant {
                kept.push(q);
            }
        }
        for v in touched {
            marks[v] = 0;
        }
        self.marks = marks;
        for &q in &learnt[1..] {
            self.seen[var_of(q)] = false;
        }
        let mut learnt = kept;
        // Jump to the second-highest decision level in the clause, placing
        // one of its literals in the watch slot.
        let mut back = 0u32;
        for j in 1..learnt.len() {
            let lv = self.levels[var_of(learnt[j])];
            if lv > back {
                back = lv;
                learnt.swap(1, j);
            }
        }
        (learnt, back)
    }

    /// Delete the least useful half of the deletable learnt clauses, ranked
    /// by activity then glue.  Two-literal clauses, low-glue clauses, and
    /// current reason clauses survive.  Must be called at decision level
    /// zero.
    fn reduce_learnt(&mut self) {
        debug_assert!(self.trail_marks.is_empty());
        let mut order: Vec<u32> = (self.problem_clauses as u32..self.clauses.len() as u32)
            .filter(|&ci| self.clauses[ci as usize].len > 2 && self.glue[ci as usize] > 2)
            .collect();
        order.sort_by(|&a, &b| {
            let ka = (self.cl_act[a as usize], std::cmp::Reverse(self.glue[a as usize]));
            let kb = (self.cl_act[b as usize], std::cmp::Reverse(self.glue[b as usize]));
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut keep = vec![true; self.clauses.len()];
        for &ci in &order[..order.len() / 2] {
            keep[ci as usize] = false;
        }
        for v in 0..self.nvars {
            if let Some(ci) = self.reasons[v] {
                keep[ci as usize] = true;
            }
        }
        let mut remap = vec![u32::MAX; self.clauses.len()];
        let old_clauses = std::mem::take(&mut self.clauses);
        let old_arena = std::mem::take(&mut self.arena);
        let old_glue = std::mem::take(&mut self.glue);
        let old_act = std::mem::take(&mut self.cl_act);
        for (ci, c) in old_clauses.into_iter().enumerate() {
            if keep[ci] {
                remap[ci] = self.clauses.len() as u32;
                let start = self.arena.len() as u32;
                self.arena.extend_from_slice(
                    &old_arena[c.start as usize..(c.start + c.len) as usize],
                );
                self.clauses.push(Clause { start, len: c.len });
                self.glue.push(old_glue[ci]);
                self.cl_act.push(old_act[ci]);
            }
        }
        for w in &mut self.watches {
            w.clear();
        }
        for ci in 0..self.clauses.len() as u32 {
            let c = self.clauses[ci as usize];
            let l0 = self.arena[c.start as usize];
            let l1 = self.arena[c.start as usize + 1];
            let tag = if c.len == 2 { ci | BINARY } else { ci };
            self.watches[l0 as usize].push(Watch {
                clause: tag,
                blocker: l1,
            });
            self.watches[l1 as usize].push(Watch {
                clause: tag,
                blocker: l0,
            });
        }
        for v in 0..self.nvars {
            self.reasons[v] = self.reasons[v].map(|ci| remap[ci as usize]);
        }
    }

    fn backtrack(&mut self, level: u32) {
        while self.trail_marks.len() as u32 > level {
            let mark = self.trail_marks.pop().expect("level is positive");
            for l in self.trail.drain(mark..) {
                let v = var_of(l);
                self.phase[v] = l & 1 == 0;
                self.assign[l as usize] = UNSET;
                self.assign[negate(l) as usize] = UNSET;
                self.reasons[v] = None;
            }
        }
        self.qhead = self.trail.len();
    }

    /// Place the next assumption or activity-ordered decision.  Returns
    /// `None` when every variable is assigned, `Some(false)` when an
    /// assumption is already falsified.
    fn decide(&mut self, assumptions: &[Lit]) -> Option<bool> {
        while self.trail_marks.len() < assumptions.len() {
            let a = assumptions[self.trail_marks.len()];
            match self.assign[a as usize] {
                FALSE => return Some(false),
                TRUE => self.trail_marks.push(self.trail.len()),
                _ => {
                    self.trail_marks.push(self.trail.len());
                    self.enqueue(a, None);
                    return Some(true);
                }
            }
        }
        let mut best: Option<usize> = None;
        for v in 0..self.nvars {
            if self.assign[pos(v) as usize] == UNSET
                && best.map_or(true, |b| self.activity[v] > self.activity[b])
            {
                best = Some(v);
            }
        }
        let Some(v) = best else { return None };
        self.trail_marks.push(self.trail.len());
        let lit = if self.phase[v] { pos(v) } else { neg(v) };
        self.enqueue(lit, None);
        Some(true)
    }

    /// Solve under the given assumptions with a conflict budget.  The
    /// solver keeps its learnt clauses between calls, so later calls with
    /// different assumptions profit from earlier ones.
    pub fn solve(&mut self, assumptions: &[Lit], max_conflicts: u64) -> SatOutcome {
        debug_assert!(assumptions.len() <= self.nvars);
        if self.dead {
            return SatOutcome::Unsatisfiable;
        }
        self.backtrack(0);
        if self.propagate().is_some() {
            self.dead = true;
            return SatOutcome::Unsatisfiable;
        }
        let budget_end = self.conflicts + max_conflicts;
        let mut restart_unit = 0u64;
        let mut restart_at = self.conflicts + luby(restart_unit) * 128;
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                if self.trail_marks.is_empty() {
                    self.dead = true;
                    return SatOutcome::Unsatisfiable;
                }
                if self.conflicts > budget_end {
                    return SatOutcome::Budget;
                }
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    if back > 0 {
                        self.backtrack(0);
                    }
                    match self.assign[learnt[0] as usize] {
                        FALSE => {
                            self.dead = true;
                            return SatOutcome::Unsatisfiable;
                        }
                        TRUE => {}
                        _ => self.enqueue(learnt[0], None),
                    }
                } else {
                    let glue = self.count_levels(&learnt);
                    let ci = self.attach(&learnt, glue);
                    self.bump_clause(ci);
                    self.enqueue(learnt[0], Some(ci));
                }
                self.bump *= 1.0 / 0.95;
                self.cl_bump *= 1.0 / 0.999;
                if self.conflicts >= restart_at {
                    restart_unit += 1;
                    restart_at = self.conflicts + luby(restart_unit) * 128;
                    self.backtrack(0);
                    if self.conflicts >= self.next_reduce {
                        self.reduce_learnt();
                        self.reductions += 1;
                        self.next_reduce = self.conflicts + 6_000 + 2_000 * self.reductions;
                    }
                }
            } else {
                match self.decide(assumptions) {
                    Some(true) => {}
                    Some(false) => return SatOutcome::Unsatisfiable,
                    None => {
                        let model = (0..self.nvars)
                            .map(|v| self.assign[pos(v) as usize] == TRUE)
                            .collect();
                        return SatOutcome::Satisfiable(model);
                    }
                }
            }
        }
    }
}

/// Luby restart sequence: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
fn luby(mut x: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) / 2;
        seq -= 1;
        x %= size;
    }
    1u64 << seq
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(nvars: usize, clauses: &[&[Lit]]) -> SatOutcome {
        let mut s = Solver::new(nvars);
        for c in clauses {
            s.add_clause(c);
        }
        s.solve(&[], 1_000_000)
    }

    #[test]
    fn trivial_cases() {
        match solve(1, &[&[pos(0)]]) {
            SatOutcome::Satisfiable(m) => assert!(m[0]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            solve(1, &[&[pos(0)], &[neg(0)]]),
            SatOutcome::Unsatisfiable
        ));
    }

    #[test]
    fn chains_propagate() {
        // x0 -> x1 -> x2 -> x3, with x0 forced.
        match solve(
            4,
            &[
                &[pos(0)],
                &[neg(0), pos(1)],
                &[neg(1), pos(2)],
                &[neg(2), pos(3)],
            ],
        ) {
            SatOutcome::Satisfiable(m) => assert!(m.iter().all(|&b| b)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsatisfiable() {
        // Pigeon p in hole h: var p*2+h.
        let v = |p: usize, h: usize| p * 2 + h;
        let mut cl: Vec<Vec<Lit>> = Vec::new();
        for p in 0..3 {
            cl.push(vec![pos(v(p, 0)), pos(v(p, 1))]);
        }
        for h in 0..2 {
            for p in 0..3 {
                for q in p + 1..3 {
                    cl.push(vec![neg(v(p, h)), neg(v(q, h))]);
                }
            }
        }
        let refs: Vec<&[Lit]> = cl.iter().map(|c| c.as_slice()).collect();
        assert!(matches!(solve(6, &refs), SatOutcome::Unsatisfiable));
    }

    #[test]
    fn models_satisfy_all_clauses() {
        // A few scrambled random-ish formulas; verify returned models.
        let formulas: Vec<Vec<Vec<Lit>>> = vec![
            vec![
                vec![pos(0), pos(1), pos(2)],
                vec![neg(0), pos(3)],
                vec![neg(1), neg(3)],
                vec![neg(2), pos(4)],
                vec![neg(4), pos(1), neg(0)],
            ],
            vec![
                vec![pos(0), neg(1)],
                vec![pos(1), neg(2)],
                vec![pos(2), neg(0)],
                vec![pos(0), pos(1), pos(2)],
            ],
        ];
        for f in formulas {
            let nv = 5;
            let refs: Vec<&[Lit]> = f.iter().map(|c| c.as_slice()).collect();
            match solve(nv, &refs) {
                SatOutcome::Satisfiable(m) => {
                    for c in &f {
                        assert!(
                            c.iter().any(|&l| m[var_of(l)] == (l & 1 == 0)),
                            "clause {c:?} unsatisfied by {m:?}"
                        );
                    }
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn budget_zero_on_conflicting_formula_reports_budget_or_answer() {
        // With a one-conflict budget the solver may or may not finish; it
        // must never claim satisfiability of an unsatisfiable formula.
        let mut s = Solver::new(2);
        s.add_clause(&[pos(0), pos(1)]);
        s.add_clause(&[pos(0), neg(1)]);
        s.add_clause(&[neg(0), pos(1)]);
        s.add_clause(&[neg(0), neg(1)]);
        match s.solve(&[], 1) {
            SatOutcome::Satisfiable(_) => panic!("formula is unsatisfiable"),
            SatOutcome::Unsatisfiable | SatOutcome::Budget => {}
        }
    }

    #[test]
    fn assumptions_branch_a_formula() {
        // (x0 or x1) with assumption not-x0 forces x1; assuming both
        // negative is unsatisfiable under assumptions, yet the formula
        // stays satisfiable afterwards.
        let mut s = Solver::new(2);
        s.add_clause(&[pos(0), pos(1)]);
        match s.solve(&[neg(0)], 1000) {
            SatOutcome::Satisfiable(m) => {
                assert!(!m[0]);
                assert!(m[1]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            s.solve(&[neg(0), neg(1)], 1000),
            SatOutcome::Unsatisfiable
        ));
        assert!(matches!(s.solve(&[], 1000), SatOutcome::Satisfiable(_)));
    }

    #[test]
    fn luby_sequence_prefix() {
        let want = [1u64, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8];
        let got: Vec<u64> = (0..want.len() as u64).map(luby).collect();
        assert_eq!(got, want);
    }
}
