//! Tour construction: the nearest-neighbor baseline and the layer merge.
//!
//! The merge folds the convex layers into one cycle, absorbing one layer at
//! a time with [`splice`], the cheapest exchange of one host edge and one
//! guest edge.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConvexLayers;
use crate::tsp::{Instance, Tour};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeOrder {
    OutermostFirst,
    InnermostFirst,
}

impl fmt::Display for MergeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MergeOrder::OutermostFirst => "outer",
            MergeOrder::InnermostFirst => "inner",
        })
    }
}

impl FromStr for MergeOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outer" | "outermost" | "outermost_first" => Ok(MergeOrder::OutermostFirst),
            "inner" | "innermost" | "innermost_first" => Ok(MergeOrder::InnermostFirst),
            other => Err(Error::InvalidPipeline(format!(
                "unknown merge order {other}"
            ))),
        }
    }
}

/// Greedy tour from `start`; distance ties go to the smaller id.
pub fn nearest_neighbor(inst: &Instance, start: usize) -> Result<Tour> {
    let n = inst.len();
    if start >= n {
        return Err(Error::UnknownId(start));
    }
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        let mut best = None;
        let mut best_d = f64::INFINITY;
        for (j, _) in visited.iter().enumerate().filter(|(_, &v)| !v) {
            let d = inst.dist(cur, j);
            if d < best_d {
                best_d = d;
                best = Some(j);
            }
        }
        cur = best.expect("an unvisited city remains");
        visited[cur] = true;
        order.push(cur);
    }
    Tour::new(order, inst)
}

/// A chosen splice: cut host edge `host_edge` (between positions `i` and
/// `i + 1`) and guest edge `guest_edge`, inserting the guest forwards or
/// reversed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpliceMove {
    pub host_edge: usize,
    pub guest_edge: usize,
    pub reversed: bool,
    pub cost: f64,
}

/// Added length of one reconnection: host `a1 -> a2` and guest `b1 -> b2`
/// become `a1 -> b2 ... b1 -> a2` (forward) or `a1 -> b1 ... b2 -> a2`
/// (reversed).
pub fn splice_cost(
    host: &[usize],
    guest: &[usize],
    host_edge: usize,
    guest_edge: usize,
    reversed: bool,
    inst: &Instance,
) -> f64 {
    let (a1, a2) = (host[host_edge], host[(host_edge + 1) % host.len()]);
    let (b1, b2) = (guest[guest_edge], guest[(guest_edge + 1) % guest.len()]);
    let (enter, leave) = if reversed { (b1, b2) } else { (b2, b1) };
    inst.dist(a1, enter) + inst.dist(leave, a2) - inst.dist(a1, a2) - inst.dist(b1, b2)
}

fn check_cycles(host: &[usize], guest: &[usize], n: usize) -> Result<()> {
    if host.is_empty() || guest.is_empty() {
        return Err(Error::EmptyCycle);
    }
    let mut seen = HashSet::with_capacity(host.len() + guest.len());
    for &id in host.iter().chain(guest) {
        if id >= n {
            return Err(Error::UnknownId(id));
        }
        if !seen.insert(id) {
            return Err(Error::OverlappingCycles(id));
        }
    }
    Ok(())
}

/// Cheapest reconnection over every host edge, guest edge and guest
/// orientation. Ties go to the smallest `(host edge, guest edge, reversed)`.
pub fn best_splice(host: &[usize], guest: &[usize], inst: &Instance) -> Result<SpliceMove> {
    check_cycles(host, guest, inst.len())?;
    let mut best: Option<SpliceMove> = None;
    for i in 0..host.len() {
        for j in 0..guest.len() {
            for reversed in [false, true] {
                let cost = splice_cost(host, guest, i, j, reversed, inst);
                if best.is_none_or(|b| cost < b.cost) {
                    best = Some(SpliceMove {
                        host_edge: i,
                        guest_edge: j,
                        reversed,
                        cost,
                    });
                }
            }
        }
    }
    Ok(best.expect("both cycles are non-empty"))
}

/// Applies a splice, returning the merged cycle.
pub fn apply_splice(host: &[usize], guest: &[usize], mv: &SpliceMove) -> Vec<usize> {
    let m = guest.len();
    let mut out = Vec::with_capacity(host.len() + m);
    out.extend_from_slice(&host[..=mv.host_edge]);
    let j = mv.guest_edge;
    if mv.reversed {
        // b1 = guest[j] first, walking backwards to b2 = guest[j + 1]
        out.extend((0..m).map(|k| guest[(j + m - k) % m]));
    } else {
        out.extend((0..m).map(|k| guest[(j + 1 + k) % m]));
    }
    out.extend_from_slice(&host[mv.host_edge + 1..]);
    out
}

/// Merges two disjoint cycles with the cheapest two-edge exchange.
pub fn splice(host: &[usize], guest: &[usize], inst: &Instance) -> Result<Vec<usize>> {
    let mv = best_splice(host, guest, inst)?;
    Ok(apply_splice(host, guest, &mv))
}

fn check_layers(inst: &Instance, layers: &ConvexLayers) -> Result<()> {
    let n = inst.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for layer in &layers.layers {
        if layer.is_empty() {
            return Err(Error::LayerMismatch("empty layer".into()));
        }
        for &id in &layer.vertex_ids {
            if id >= n {
                return Err(Error::LayerMismatch(format!("unknown id {id}")));
            }
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::LayerMismatch(format!("id {id} in two layers")));
            }
            count += 1;
        }
    }
    if count != n {
        return Err(Error::LayerMismatch(format!(
            "layers cover {count} of {n} cities"
        )));
    }
    Ok(())
}

/// Folds the layers into one tour, calling `after_merge` on the host cycle
/// after every splice.
pub fn layer_merge_with<F>(
    inst: &Instance,
    layers: &ConvexLayers,
    order: MergeOrder,
    mut after_merge: F,
) -> Result<Tour>
where
    F: FnMut(&mut Vec<usize>),
{
    check_layers(inst, layers)?;
    let mut cycles: Vec<&[usize]> = layers
        .layers
        .iter()
        .map(|l| l.vertex_ids.as_slice())
        .collect();
    if order == MergeOrder::InnermostFirst {
        cycles.reverse();
    }
    let mut host = cycles[0].to_vec();
    for guest in &cycles[1..] {
        host = splice(&host, guest, inst)?;
        after_merge(&mut host);
    }
    Tour::new(host, inst)
}

pub fn layer_merge(inst: &Instance, layers: &ConvexLayers, order: MergeOrder) -> Result<Tour> {
    layer_merge_with(inst, layers, order, |_| {})
}
