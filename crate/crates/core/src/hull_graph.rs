//! Deletion-only hull graph.
//!
//! Points are sorted by [`lex_cmp`] and stored as the leaves of a complete
//! binary tree. Every internal node `v` whose two subtrees both hold alive
//! points stores a bridge: the common tangent joining the upper chain of its
//! left subtree to the upper chain of its right subtree (and separately for
//! the lower chains). The chain of `v` is never materialized; it is the left
//! child's chain up to the bridge's left endpoint followed by the right
//! child's chain from the bridge's right endpoint.
//!
//! Each vertex keeps two stacks of node indices: `right[p]` holds the nodes
//! whose bridge leaves `p` towards larger x, `left[p]` the nodes whose bridge
//! arrives at `p` from smaller x. Both are ordered by tree height with the
//! highest node on top, so the top of `right[p]` is the successor of `p` on
//! the outermost chain that contains it.
//!
//! Deleting a vertex pops every bridge on its leaf-to-root path top-down
//! (each pop removes a stack top) and recomputes them bottom-up (each push
//! lands on top). While a node is being recomputed none of its ancestors hold
//! a bridge, so stack tops describe the children's chains exactly.
//!
//! Chains are boundary-inclusive: the tangent search keeps the innermost pair
//! of tangent points, so collinear points on a hull edge stay on the chain.

use crate::error::{Error, Result};
use crate::geometry::{
    lex_cmp, orientation, validate_points, ConvexLayers, HullCycle, Orientation, Point,
};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chain {
    Upper,
    Lower,
}

impl Chain {
    /// Side of a left-to-right line that lies outside this chain.
    fn outside(self) -> Orientation {
        match self {
            Chain::Upper => Orientation::Left,
            Chain::Lower => Orientation::Right,
        }
    }
}

#[derive(Debug, Clone)]
struct ChainGraph {
    chain: Chain,
    /// Leaf positions `(left, right)` per node index; leaves never hold one.
    bridges: Vec<Option<(usize, usize)>>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

impl ChainGraph {
    fn new(chain: Chain, size: usize, n: usize) -> Self {
        ChainGraph {
            chain,
            bridges: vec![None; size],
            right: vec![Vec::new(); n],
            left: vec![Vec::new(); n],
        }
    }

    fn succ(&self, p: usize) -> Option<usize> {
        self.right[p]
            .last()
            .map(|&v| self.bridges[v].expect("stacked node has a bridge").1)
    }

    fn pred(&self, p: usize) -> Option<usize> {
        self.left[p]
            .last()
            .map(|&v| self.bridges[v].expect("stacked node has a bridge").0)
    }

    fn detach(&mut self, v: usize) {
        if let Some((a, b)) = self.bridges[v].take() {
            let top = self.right[a].pop();
            debug_assert_eq!(top, Some(v));
            let top = self.left[b].pop();
            debug_assert_eq!(top, Some(v));
        }
    }

    fn attach(&mut self, v: usize, a: usize, b: usize) {
        self.bridges[v] = Some((a, b));
        self.right[a].push(v);
        self.left[b].push(v);
    }

    /// Common tangent between the chain ending at `a` (left subtree) and
    /// the chain starting at `b` (right subtree). Both pointers only ever
    /// move outwards; collinear neighbours do not move them.
    fn tangent(&self, points: &[Point], mut a: usize, mut b: usize) -> (usize, usize) {
        let out = self.chain.outside();
        loop {
            let mut moved = false;
            while let Some(pa) = self.pred(a) {
                if orientation(&points[a], &points[b], &points[pa]) != out {
                    break;
                }
                a = pa;
                moved = true;
            }
            while let Some(sb) = self.succ(b) {
                if orientation(&points[a], &points[b], &points[sb]) != out {
                    break;
                }
                b = sb;
                moved = true;
            }
            if !moved {
                return (a, b);
            }
        }
    }

    /// Chain of the root, as leaf positions from `first` to `last`.
    fn walk(&self, first: usize, last: usize) -> Vec<usize> {
        let mut seq = vec![first];
        let mut p = first;
        while p != last {
            p = self.succ(p).expect("root chain reaches its last vertex");
            seq.push(p);
        }
        seq
    }
}

/// Binary tree of bridges over x-sorted points, for both hull chains.
#[derive(Debug, Clone)]
pub struct HullGraph {
    /// Leaves in lexicographic order.
    points: Vec<Point>,
    /// Leaf position of each point id.
    slot: std::collections::HashMap<usize, usize>,
    /// Number of leaf slots, a power of two; node `v` has children `2v`, `2v + 1`.
    size: usize,
    alive: Vec<bool>,
    alive_count: usize,
    min_alive: Vec<usize>,
    max_alive: Vec<usize>,
    upper: ChainGraph,
    lower: ChainGraph,
}

impl HullGraph {
    pub fn build(points: &[Point]) -> Result<HullGraph> {
        validate_points(points)?;
        let mut sorted = points.to_vec();
        sorted.sort_by(lex_cmp);
        let n = sorted.len();
        let size = n.next_power_of_two();

        let mut min_alive = vec![NONE; 2 * size];
        let mut max_alive = vec![NONE; 2 * size];
        for i in 0..n {
            min_alive[size + i] = i;
            max_alive[size + i] = i;
        }
        let slot = sorted.iter().enumerate().map(|(i, p)| (p.id, i)).collect();

        let mut g = HullGraph {
            points: sorted,
            slot,
            size,
            alive: vec![true; n],
            alive_count: n,
            min_alive,
            max_alive,
            upper: ChainGraph::new(Chain::Upper, size, n),
            lower: ChainGraph::new(Chain::Lower, size, n),
        };
        for v in (1..size).rev() {
            g.recompute(v);
        }
        Ok(g)
    }

    fn recompute(&mut self, v: usize) {
        let (l, r) = (2 * v, 2 * v + 1);
        self.min_alive[v] = if self.min_alive[l] != NONE {
            self.min_alive[l]
        } else {
            self.min_alive[r]
        };
        self.max_alive[v] = if self.max_alive[r] != NONE {
            self.max_alive[r]
        } else {
            self.max_alive[l]
        };
        if self.max_alive[l] == NONE || self.min_alive[r] == NONE {
            return;
        }
        let (a0, b0) = (self.max_alive[l], self.min_alive[r]);
        for graph in [&mut self.upper, &mut self.lower] {
            let (a, b) = graph.tangent(&self.points, a0, b0);
            graph.attach(v, a, b);
        }
    }

    fn graph(&self, chain: Chain) -> &ChainGraph {
        match chain {
            Chain::Upper => &self.upper,
            Chain::Lower => &self.lower,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn is_alive(&self, id: usize) -> bool {
        self.slot.get(&id).is_some_and(|&p| self.alive[p])
    }

    /// Whether the alive point at leaf `pos` lies on the root chain.
    fn on_root_chain(&self, chain: Chain, pos: usize) -> bool {
        let graph = self.graph(chain);
        let mut child = self.size + pos;
        while child > 1 {
            let v = child / 2;
            if let Some((a, b)) = graph.bridges[v] {
                let keep = if child == 2 * v { pos <= a } else { pos >= b };
                if !keep {
                    return false;
                }
            }
            child = v;
        }
        true
    }

    /// Whether `id` is alive and on the current outermost layer.
    pub fn on_outer_layer(&self, id: usize) -> bool {
        match self.slot.get(&id) {
            Some(&pos) if self.alive[pos] => {
                self.on_root_chain(Chain::Upper, pos) || self.on_root_chain(Chain::Lower, pos)
            }
            _ => false,
        }
    }

    /// Root chain as point ids, from the lexicographically smallest alive
    /// point to the largest.
    pub fn root_chain(&self, chain: Chain) -> Vec<usize> {
        if self.alive_count == 0 {
            return Vec::new();
        }
        self.graph(chain)
            .walk(self.min_alive[1], self.max_alive[1])
            .into_iter()
            .map(|p| self.points[p].id)
            .collect()
    }

    /// The outermost layer of the alive points, counterclockwise and
    /// boundary-inclusive, starting at the lexicographically smallest point.
    pub fn extract_outer(&self) -> Result<HullCycle> {
        if self.alive_count == 0 {
            return Err(Error::EmptyPointSet);
        }
        let lower = self.root_chain(Chain::Lower);
        let upper = self.root_chain(Chain::Upper);
        if lower == upper {
            // one, two or collinear points
            return Ok(HullCycle { vertex_ids: lower });
        }
        let mut ids = lower;
        ids.extend(upper.iter().rev().skip(1).take(upper.len() - 2));
        Ok(HullCycle { vertex_ids: ids })
    }

    /// Removes an alive point of the outermost layer from both chains.
    pub fn delete_vertex(&mut self, id: usize) -> Result<()> {
        let pos = *self.slot.get(&id).ok_or(Error::UnknownId(id))?;
        if !self.alive[pos] || !self.on_outer_layer(id) {
            return Err(Error::NotOnCurrentLayer(id));
        }

        let leaf = self.size + pos;
        let path = self.path_above(leaf);
        for &v in path.iter().rev() {
            self.upper.detach(v);
            self.lower.detach(v);
        }

        self.alive[pos] = false;
        self.alive_count -= 1;
        self.min_alive[leaf] = NONE;
        self.max_alive[leaf] = NONE;
        for &v in &path {
            self.recompute(v);
        }
        debug_assert!(self.upper.right[pos].is_empty() && self.upper.left[pos].is_empty());
        debug_assert!(self.lower.right[pos].is_empty() && self.lower.left[pos].is_empty());
        Ok(())
    }

    /// Every stored bridge of one chain as `(node, left id, right id)`.
    pub fn bridges(&self, chain: Chain) -> Vec<(usize, usize, usize)> {
        self.graph(chain)
            .bridges
            .iter()
            .enumerate()
            .filter_map(|(v, b)| b.map(|(a, b)| (v, self.points[a].id, self.points[b].id)))
            .collect()
    }

    /// `R(p)`: nodes whose bridge leaves `id` rightwards, bottom first.
    pub fn right_list(&self, chain: Chain, id: usize) -> Option<&[usize]> {
        self.slot
            .get(&id)
            .map(|&p| self.graph(chain).right[p].as_slice())
    }

    /// `L(p)`: nodes whose bridge reaches `id` from the left, bottom first.
    pub fn left_list(&self, chain: Chain, id: usize) -> Option<&[usize]> {
        self.slot
            .get(&id)
            .map(|&p| self.graph(chain).left[p].as_slice())
    }

    fn path_above(&self, node: usize) -> Vec<usize> {
        std::iter::successors(Some(node / 2), |&v| (v > 1).then_some(v / 2))
            .filter(|&v| v >= 1)
            .collect()
    }

    /// Internal nodes on the path from the leaf of `id` to the root, bottom first.
    pub fn root_path(&self, id: usize) -> Option<Vec<usize>> {
        let pos = *self.slot.get(&id)?;
        Some(self.path_above(self.size + pos))
    }

    /// Peels every remaining layer, outermost first.
    pub fn peel_all(&mut self) -> Vec<HullCycle> {
        let mut layers = Vec::new();
        while self.alive_count > 0 {
            let layer = self.extract_outer().expect("alive points remain");
            for &id in &layer.vertex_ids {
                self.delete_vertex(id)
                    .expect("outer layer vertex is deletable");
            }
            layers.push(layer);
        }
        layers
    }
}

/// Onion peeling through the hull graph; identical to
/// [`convex_layers_naive`](crate::geometry::convex_layers_naive).
pub fn convex_layers_fast(points: &[Point]) -> Result<ConvexLayers> {
    let mut graph = HullGraph::build(points)?;
    Ok(ConvexLayers::from_layers(graph.peel_all()))
}
