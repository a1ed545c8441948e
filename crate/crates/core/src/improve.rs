//! 2-opt and 3-opt local search.
//!
//! Both searches are best-improvement: each pass scans the whole
//! neighbourhood in a fixed index order, keeps the first move with the
//! largest gain, and applies it only if the gain exceeds
//! `epsilon * current_length`. The searches work on bare cycles so they can
//! also run on partial tours between layer merges.

use crate::error::{Error, Result};
use crate::geometry::segments_properly_intersect;
use crate::tsp::{cycle_length, tour_length, Instance, Tour};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    BestImprovement,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImproveConfig {
    /// Minimum accepted gain, relative to the current tour length.
    pub epsilon: f64,
    /// Maximum number of applied moves; `None` runs to a local optimum.
    pub max_passes: Option<usize>,
    pub strategy: Strategy,
}

impl Default for ImproveConfig {
    fn default() -> Self {
        ImproveConfig {
            epsilon: 1e-9,
            max_passes: None,
            strategy: Strategy::BestImprovement,
        }
    }
}

impl ImproveConfig {
    pub fn new(epsilon: f64, max_passes: Option<usize>) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        Ok(ImproveConfig {
            epsilon,
            max_passes,
            strategy: Strategy::BestImprovement,
        })
    }
}

/// Distance lookups for the cities of one instance.
struct Dist {
    n: usize,
    table: Vec<f64>,
}

impl Dist {
    fn new(inst: &Instance) -> Self {
        Dist {
            n: inst.len(),
            table: inst.distance_matrix(),
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> f64 {
        self.table[a * self.n + b]
    }
}

fn best_two_opt(order: &[usize], d: &Dist) -> Option<(usize, usize, f64)> {
    let n = order.len();
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..n.saturating_sub(2) {
        let (a, b) = (order[i], order[i + 1]);
        let ab = d.get(a, b);
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, e) = (order[j], order[(j + 1) % n]);
            let gain = ab + d.get(c, e) - d.get(a, c) - d.get(b, e);
            if best.map_or(gain > 0.0, |(_, _, g)| gain > g) {
                best = Some((i, j, gain));
            }
        }
    }
    best
}

fn two_opt_with(order: &mut [usize], d: &Dist, cfg: &ImproveConfig) -> usize {
    let mut moves = 0;
    let mut length = cycle_length_with(order, d);
    while cfg.max_passes.is_none_or(|m| moves < m) {
        match best_two_opt(order, d) {
            Some((i, j, gain)) if gain > cfg.epsilon * length => {
                order[i + 1..=j].reverse();
                length = cycle_length_with(order, d);
                moves += 1;
            }
            _ => break,
        }
    }
    moves
}

fn cycle_length_with(order: &[usize], d: &Dist) -> f64 {
    let n = order.len();
    if n < 2 {
        return 0.0;
    }
    (0..n).map(|i| d.get(order[i], order[(i + 1) % n])).sum()
}

/// The seven ways to reconnect segments `A B C` after removing three edges,
/// in tie-break order. `true` marks a reversed segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reconnection {
    /// `A B C'`
    ReverseC,
    /// `A B' C`
    ReverseB,
    /// `A B' C'`
    ReverseBoth,
    /// `A C B`
    Swap,
    /// `A C B'`
    SwapReverseB,
    /// `A C' B`
    SwapReverseC,
    /// `A C' B'`, the same as reversing `B C` as a whole
    SwapReverseBoth,
}

const RECONNECTIONS: [Reconnection; 7] = [
    Reconnection::ReverseC,
    Reconnection::ReverseB,
    Reconnection::ReverseBoth,
    Reconnection::Swap,
    Reconnection::SwapReverseB,
    Reconnection::SwapReverseC,
    Reconnection::SwapReverseBoth,
];

#[derive(Debug, Clone, Copy, PartialEq)]
struct ThreeOptMove {
    i: usize,
    j: usize,
    k: usize,
    kind: Reconnection,
    gain: f64,
}

fn best_three_opt(order: &[usize], d: &Dist) -> Option<ThreeOptMove> {
    let n = order.len();
    let mut best: Option<ThreeOptMove> = None;
    for i in 0..n {
        let (a, b) = (order[i], order[(i + 1) % n]);
        for j in i + 1..n {
            let (c, dd) = (order[j], order[(j + 1) % n]);
            for k in j + 1..n {
                let (e, f) = (order[k], order[(k + 1) % n]);
                let removed = d.get(a, b) + d.get(c, dd) + d.get(e, f);
                for kind in RECONNECTIONS {
                    let added = match kind {
                        Reconnection::ReverseC => d.get(a, b) + d.get(c, e) + d.get(dd, f),
                        Reconnection::ReverseB => d.get(a, c) + d.get(b, dd) + d.get(e, f),
                        Reconnection::ReverseBoth => d.get(a, c) + d.get(b, e) + d.get(dd, f),
                        Reconnection::Swap => d.get(a, dd) + d.get(e, b) + d.get(c, f),
                        Reconnection::SwapReverseB => d.get(a, dd) + d.get(e, c) + d.get(b, f),
                        Reconnection::SwapReverseC => d.get(a, e) + d.get(dd, b) + d.get(c, f),
                        Reconnection::SwapReverseBoth => d.get(a, e) + d.get(dd, c) + d.get(b, f),
                    };
                    let gain = removed - added;
                    if best.map_or(gain > 0.0, |m| gain > m.gain) {
                        best = Some(ThreeOptMove {
                            i,
                            j,
                            k,
                            kind,
                            gain,
                        });
                    }
                }
            }
        }
    }
    best
}

fn apply_three_opt(order: &[usize], mv: &ThreeOptMove) -> Vec<usize> {
    let (i, j, k) = (mv.i, mv.j, mv.k);
    let seg_b = &order[i + 1..=j];
    let seg_c = &order[j + 1..=k];
    let mut out = Vec::with_capacity(order.len());
    out.extend_from_slice(&order[..=i]);
    let push = |out: &mut Vec<usize>, seg: &[usize], rev: bool| {
        if rev {
            out.extend(seg.iter().rev());
        } else {
            out.extend_from_slice(seg);
        }
    };
    let (first, first_rev, second, second_rev) = match mv.kind {
        Reconnection::ReverseC => (seg_b, false, seg_c, true),
        Reconnection::ReverseB => (seg_b, true, seg_c, false),
        Reconnection::ReverseBoth => (seg_b, true, seg_c, true),
        Reconnection::Swap => (seg_c, false, seg_b, false),
        Reconnection::SwapReverseB => (seg_c, false, seg_b, true),
        Reconnection::SwapReverseC => (seg_c, true, seg_b, false),
        Reconnection::SwapReverseBoth => (seg_c, true, seg_b, true),
    };
    push(&mut out, first, first_rev);
    push(&mut out, second, second_rev);
    out.extend_from_slice(&order[k + 1..]);
    out
}

fn three_opt_with(order: &mut Vec<usize>, d: &Dist, cfg: &ImproveConfig) -> usize {
    let mut moves = 0;
    let mut length = cycle_length_with(order, d);
    while cfg.max_passes.is_none_or(|m| moves < m) {
        match best_three_opt(order, d) {
            Some(mv) if mv.gain > cfg.epsilon * length => {
                *order = apply_three_opt(order, &mv);
                length = cycle_length_with(order, d);
                moves += 1;
            }
            _ => break,
        }
    }
    moves
}

/// 2-opt on a cycle over any subset of the instance's cities. Returns the
/// number of applied moves.
pub fn two_opt_cycle(order: &mut [usize], inst: &Instance, cfg: &ImproveConfig) -> usize {
    two_opt_with(order, &Dist::new(inst), cfg)
}

/// 3-opt on a cycle over any subset of the instance's cities. Returns the
/// number of applied moves.
pub fn three_opt_cycle(order: &mut Vec<usize>, inst: &Instance, cfg: &ImproveConfig) -> usize {
    three_opt_with(order, &Dist::new(inst), cfg)
}

fn improve_tour<F>(tour: &Tour, inst: &Instance, search: F) -> Result<Tour>
where
    F: FnOnce(&mut Vec<usize>) -> usize,
{
    tour_length(tour, inst)?;
    let mut order = tour.order.clone();
    if search(&mut order) == 0 {
        return Ok(tour.clone());
    }
    Tour::new(order, inst)
}

/// Runs 2-opt to a local optimum (or `max_passes` moves).
pub fn two_opt(tour: &Tour, inst: &Instance, cfg: &ImproveConfig) -> Result<Tour> {
    improve_tour(tour, inst, |order| two_opt_cycle(order, inst, cfg))
}

/// Runs 3-opt over all seven reconnections to a local optimum (or
/// `max_passes` moves).
pub fn three_opt(tour: &Tour, inst: &Instance, cfg: &ImproveConfig) -> Result<Tour> {
    improve_tour(tour, inst, |order| three_opt_cycle(order, inst, cfg))
}

/// True when two non-adjacent tour edges cross properly.
pub fn has_crossings(tour: &Tour, inst: &Instance) -> bool {
    let o = &tour.order;
    let n = o.len();
    let p = |k: usize| &inst.points[o[k % n]];
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_properly_intersect(p(i), p(i + 1), p(j), p(j + 1)) {
                return true;
            }
        }
    }
    false
}

/// Length of `order` as a cycle; exposed for callers holding partial tours.
pub fn partial_length(order: &[usize], inst: &Instance) -> f64 {
    cycle_length(order, inst)
}
