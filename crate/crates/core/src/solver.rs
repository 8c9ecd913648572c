//! Greedy guarding of right (left) convex vertices and the union
//! 2-approximation for the whole terrain.
//!
//! Both right-convex engines scan the right convex vertices from left to
//! right. Whenever the current vertex `v` is not yet seen by a chosen guard,
//! `v` becomes a witness and the higher of `L(v)` and the vertex directly
//! above `v` becomes a guard (ties and a missing upper neighbour go to
//! `L(v)`).
//!
//! The reference engine answers "is `v` guarded" with direct visibility
//! queries. The fast engine answers it by walking a shrinking linked chain of
//! still-relevant vertices leftward from `v`, trying guards from the
//! rightmost one down; every vertex it steps over is unlinked, so the whole
//! run touches each vertex a constant number of times.

use std::collections::BTreeMap;

use crate::error::VisibilityError;
use crate::terrain::{Classification, Terrain};
use crate::visibility::{
    for_each_visible, leftmost_seers, orient, rightmost_seers, sees_unchecked,
};

/// Which vertices a solution guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Right convex vertices.
    Right,
    /// Left convex vertices.
    Left,
    /// Every vertex.
    Full,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
            Side::Full => "full",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            "full" => Ok(Side::Full),
            other => Err(format!("unknown side `{other}`")),
        }
    }
}

/// Right-convex engine selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Fast,
    Reference,
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Engine::Fast),
            "reference" => Ok(Engine::Reference),
            other => Err(format!("unknown engine `{other}`")),
        }
    }
}

/// Output of a guarding run. All indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardSolution {
    pub side: Side,
    /// Guard vertices, ascending.
    pub guards: Vec<usize>,
    /// Witness vertex -> the guard recorded for it.
    pub assignment: BTreeMap<usize, usize>,
    /// Vertices that triggered a new guard, in processing order.
    pub witnesses: Vec<usize>,
    /// Vertex touches made by the run.
    pub visits: u64,
    /// Set when some guard is a convex vertex, which only happens when a
    /// candidate pair offers no reflex vertex (e.g. a single flat edge).
    pub degenerate: bool,
}

impl GuardSolution {
    fn empty(side: Side) -> Self {
        GuardSolution {
            side,
            guards: Vec::new(),
            assignment: BTreeMap::new(),
            witnesses: Vec::new(),
            visits: 0,
            degenerate: false,
        }
    }

    pub fn len(&self) -> usize {
        self.guards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.guards.is_empty()
    }
}

// Higher of L(v) and the vertex above v; ties go to L(v).
#[inline]
fn candidate(t: &Terrain, v: usize, leftmost: usize) -> usize {
    if v + 1 < t.len() && t.vertex(v + 1).y > t.vertex(leftmost).y {
        v + 1
    } else {
        leftmost
    }
}

fn finish(c: &Classification, mut sol: GuardSolution) -> GuardSolution {
    sol.guards.sort_unstable();
    sol.degenerate = sol.guards.iter().any(|&g| c.class(g).is_convex());
    debug_assert_eq!(sol.guards.len(), sol.witnesses.len());
    sol
}

/// Quadratic-time engine: guardedness by direct visibility tests.
///
/// The guard recorded for a vertex `v` is the rightmost *active* guard that
/// sees it. Guards start active; processing `v` dismisses every active guard
/// to the right of the recorded one, or every active guard at or right of
/// `L(v)` when `v` needs a new guard. A dismissed guard still counts for
/// guardedness, which never depends on it: whatever it could see later is
/// also seen by an active guard.
pub fn solve_right_convex_reference(t: &Terrain) -> GuardSolution {
    let c = t.classify();
    let left = leftmost_seers(t);
    let mut sol = GuardSolution::empty(Side::Right);
    let mut guards: Vec<usize> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    for &v in &c.right_convex {
        sol.visits += 1;
        let mut seen_by_any = false;
        for &g in &guards {
            sol.visits += g.abs_diff(v) as u64;
            seen_by_any |= sees_unchecked(t, g, v);
        }
        let recorded = active
            .iter()
            .copied()
            .filter(|&g| sees_unchecked(t, g, v))
            .max();
        let g = match (seen_by_any, recorded) {
            (true, Some(g)) => {
                active.retain(|&a| a <= g);
                g
            }
            (false, None) => {
                active.retain(|&a| a < left[v]);
                let g = candidate(t, v, left[v]);
                guards.push(g);
                active.push(g);
                sol.witnesses.push(v);
                g
            }
            (true, None) => unreachable!("vertex {v} is seen only by dismissed guards"),
            (false, Some(_)) => unreachable!(),
        };
        sol.assignment.insert(v, g);
    }
    sol.guards = guards;
    finish(&c, sol)
}

const NIL: usize = usize::MAX;

/// Doubly linked list over the vertex indices that are still relevant to
/// the fast engine, plus the stack of guards that are still worth trying
/// (the top is the rightmost one).
#[derive(Clone, Debug)]
pub struct ActiveChain {
    prev: Vec<usize>,
    next: Vec<usize>,
    live: Vec<bool>,
    guards: Vec<usize>,
}

impl ActiveChain {
    pub fn new(n: usize) -> Self {
        ActiveChain {
            prev: (0..n).map(|i| if i == 0 { NIL } else { i - 1 }).collect(),
            next: (0..n)
                .map(|i| if i + 1 == n { NIL } else { i + 1 })
                .collect(),
            live: vec![true; n],
            guards: Vec::new(),
        }
    }

    pub fn is_live(&self, i: usize) -> bool {
        self.live[i]
    }

    /// Previous live vertex, if any.
    pub fn prev(&self, i: usize) -> Option<usize> {
        let p = self.prev[i];
        (p != NIL).then_some(p)
    }

    pub fn next(&self, i: usize) -> Option<usize> {
        let p = self.next[i];
        (p != NIL).then_some(p)
    }

    /// Unlinks `i`. Its own pointers are left intact so a walk standing on
    /// `i` can continue.
    pub fn remove(&mut self, i: usize) {
        debug_assert!(self.live[i]);
        let (p, n) = (self.prev[i], self.next[i]);
        if p != NIL {
            self.next[p] = n;
        }
        if n != NIL {
            self.prev[n] = p;
        }
        self.live[i] = false;
    }

    /// Rightmost guard still on the stack.
    pub fn top_guard(&self) -> Option<usize> {
        self.guards.last().copied()
    }

    fn push_guard(&mut self, g: usize) {
        debug_assert!(self.guards.last().is_none_or(|&top| top < g));
        self.guards.push(g);
    }

    fn pop_guard(&mut self) {
        self.guards.pop();
    }

    pub fn live_len(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }
}

/// Linear-time engine. Produces the same guards, assignment and witnesses
/// as [`solve_right_convex_reference`].
pub fn solve_right_convex_fast(t: &Terrain) -> GuardSolution {
    let c = t.classify();
    let left = leftmost_seers(t);
    right_convex_fast(t, &c, &left)
}

fn right_convex_fast(t: &Terrain, c: &Classification, left: &[usize]) -> GuardSolution {
    let v = t.vertices();
    let mut chain = ActiveChain::new(t.len());
    let mut sol = GuardSolution::empty(Side::Right);
    let mut guards = Vec::new();

    for &i in &c.right_convex {
        let li = left[i];
        sol.visits += 1;
        let mut cur = i;
        // vertex of highest elevation (seen from i) among those walked over
        let mut rec: Option<usize> = None;
        let step = |cur: &mut usize,
                    chain: &mut ActiveChain,
                    rec: &mut Option<usize>,
                    visits: &mut u64| {
            let p = chain.prev[*cur];
            if *cur != i {
                chain.remove(*cur);
                match *rec {
                    Some(r) if orient(v[r], v[i], v[*cur]) <= 0 => {}
                    _ => *rec = Some(*cur),
                }
            }
            *cur = p;
            *visits += 1;
        };
        let assigned = loop {
            match chain.top_guard() {
                Some(g) if g >= li => {
                    while cur != NIL && cur > g {
                        step(&mut cur, &mut chain, &mut rec, &mut sol.visits);
                    }
                    debug_assert_eq!(cur, g, "guard {g} fell out of the chain");
                    let sees = rec.is_none_or(|r| orient(v[g], v[i], v[r]) <= 0);
                    if sees {
                        break g;
                    }
                    chain.pop_guard();
                }
                _ => {
                    while cur != NIL && cur > li {
                        step(&mut cur, &mut chain, &mut rec, &mut sol.visits);
                    }
                    if i + 1 < t.len() {
                        // reading the vertex above i
                        sol.visits += 1;
                    }
                    let g = candidate(t, i, li);
                    debug_assert!(chain.is_live(g));
                    chain.push_guard(g);
                    guards.push(g);
                    sol.witnesses.push(i);
                    break g;
                }
            }
        };
        sol.assignment.insert(i, assigned);
    }
    sol.guards = guards;
    finish(c, sol)
}

fn solve_right(t: &Terrain, engine: Engine) -> GuardSolution {
    match engine {
        Engine::Fast => solve_right_convex_fast(t),
        Engine::Reference => solve_right_convex_reference(t),
    }
}

/// Guards the left convex vertices by solving the right-convex problem on
/// the mirrored terrain and mapping indices back.
pub fn solve_left_convex(t: &Terrain, engine: Engine) -> GuardSolution {
    let m = t.mirror();
    let r = solve_right(&m.terrain, engine);
    let mut guards: Vec<usize> = r.guards.iter().map(|&g| m.map(g)).collect();
    guards.sort_unstable();
    GuardSolution {
        side: Side::Left,
        guards,
        assignment: r
            .assignment
            .iter()
            .map(|(&w, &g)| (m.map(w), m.map(g)))
            .collect(),
        witnesses: r.witnesses.iter().map(|&w| m.map(w)).collect(),
        visits: r.visits,
        degenerate: r.degenerate,
    }
}

/// Terrains up to this size get a full coverage check in debug builds.
const DEBUG_COVERAGE_LIMIT: usize = 4096;

/// Union of the right- and left-convex solutions (fast engine). Guards every
/// vertex using at most twice the optimum number of guards.
pub fn solve_full(t: &Terrain) -> GuardSolution {
    solve_full_with(t, Engine::Fast)
}

/// [`solve_full`] with a choice of engine for both sides.
pub fn solve_full_with(t: &Terrain, engine: Engine) -> GuardSolution {
    let right = solve_right(t, engine);
    let left = solve_left_convex(t, engine);
    let sol = merge(right, left);
    if cfg!(debug_assertions) && t.len() <= DEBUG_COVERAGE_LIMIT {
        let all: Vec<usize> = (0..t.len()).collect();
        let missed = verify_coverage(t, &sol.guards, &all).expect("indices are in range");
        debug_assert!(missed.is_empty(), "union leaves {missed:?} unguarded");
    }
    sol
}

fn merge(right: GuardSolution, left: GuardSolution) -> GuardSolution {
    let mut guards: Vec<usize> = right.guards.iter().chain(&left.guards).copied().collect();
    guards.sort_unstable();
    guards.dedup();
    let mut assignment = left.assignment;
    // right-side entries win on shared keys
    assignment.extend(right.assignment);
    let mut witnesses: Vec<usize> = right
        .witnesses
        .iter()
        .chain(&left.witnesses)
        .copied()
        .collect();
    witnesses.sort_unstable();
    GuardSolution {
        side: Side::Full,
        guards,
        assignment,
        witnesses,
        visits: right.visits + left.visits,
        degenerate: right.degenerate || left.degenerate,
    }
}

/// Returns the witnesses (ascending, deduplicated) that no guard sees.
///
/// Each guard sweeps outward only as far as its extreme seers, so the cost is
/// linear in the total span of the guards' visibility ranges.
pub fn verify_coverage(
    t: &Terrain,
    guards: &[usize],
    witnesses: &[usize],
) -> Result<Vec<usize>, VisibilityError> {
    let n = t.len();
    if let Some(&bad) = guards.iter().chain(witnesses).find(|&&i| i >= n) {
        return Err(VisibilityError::IndexOutOfRange { index: bad, len: n });
    }
    let left = leftmost_seers(t);
    let right = rightmost_seers(t);
    let mut seen = vec![false; n];
    for &g in guards {
        for_each_visible(t, g, left[g], right[g], |w| seen[w] = true);
    }
    let mut missed: Vec<usize> = witnesses.iter().copied().filter(|&w| !seen[w]).collect();
    missed.sort_unstable();
    missed.dedup();
    Ok(missed)
}
