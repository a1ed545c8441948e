//! Planar predicates, the boundary-inclusive convex hull and the naive
//! repeated-hull onion peeling.
//!
//! Every decision that depends on the sign of a cross product goes through
//! [`orientation`], which is exact for all finite `f64` inputs. Points are
//! ordered lexicographically by `(x, y)`; this order acts as a strict
//! x-order under an infinitesimal shear, which leaves every orientation
//! unchanged, so vertical runs need no special casing downstream.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(id: usize, x: f64, y: f64) -> Self {
        Point { id, x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of `(q - p) x (r - p)`: `Left` when `p, q, r` turn counterclockwise.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let det = robust::orient2d(
        robust::Coord { x: p.x, y: p.y },
        robust::Coord { x: q.x, y: q.y },
        robust::Coord { x: r.x, y: r.y },
    );
    if det > 0.0 {
        Orientation::Left
    } else if det < 0.0 {
        Orientation::Right
    } else {
        Orientation::Collinear
    }
}

/// Lexicographic `(x, y)` order. Coordinates must be finite.
pub fn lex_cmp(a: &Point, b: &Point) -> Ordering {
    a.x.partial_cmp(&b.x)
        .unwrap_or(Ordering::Equal)
        .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
}

/// True when the segments `ab` and `cd` cross at a single point interior to both.
pub fn segments_properly_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
        && o1 != o2
        && o3 != o4
}

/// True when `p` lies strictly inside the CCW polygon `poly`. Degenerate
/// polygons (fewer than three vertices, or all collinear) contain nothing.
pub fn strictly_inside(poly: &[Point], p: &Point) -> bool {
    if poly.len() < 3 {
        return false;
    }
    let n = poly.len();
    (0..n).all(|i| orientation(&poly[i], &poly[(i + 1) % n], p) == Orientation::Left)
}

/// An ordered boundary cycle, counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullCycle {
    pub vertex_ids: Vec<usize>,
}

impl HullCycle {
    pub fn len(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_ids.is_empty()
    }

    /// Equal as cycles: same sequence up to a rotation.
    pub fn same_cycle(&self, other: &HullCycle) -> bool {
        let (a, b) = (&self.vertex_ids, &other.vertex_ids);
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        match b.iter().position(|&id| id == a[0]) {
            Some(shift) => (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]),
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexLayers {
    /// Outermost first.
    pub layers: Vec<HullCycle>,
    pub depth: BTreeMap<usize, usize>,
}

impl ConvexLayers {
    pub fn from_layers(layers: Vec<HullCycle>) -> Self {
        let depth = layers
            .iter()
            .enumerate()
            .flat_map(|(k, layer)| layer.vertex_ids.iter().map(move |&id| (id, k)))
            .collect();
        ConvexLayers { layers, depth }
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(HullCycle::len).collect()
    }

    /// Same depth map and every layer equal up to rotation.
    pub fn equivalent(&self, other: &ConvexLayers) -> bool {
        self.depth == other.depth
            && self.layers.len() == other.layers.len()
            && self
                .layers
                .iter()
                .zip(&other.layers)
                .all(|(a, b)| a.same_cycle(b))
    }
}

/// Rejects empty sets, non-finite coordinates, repeated ids and repeated
/// coordinates.
pub(crate) fn validate_points(points: &[Point]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut ids = HashSet::with_capacity(points.len());
    for p in points {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(Error::NonFinite(p.id));
        }
        if !ids.insert(p.id) {
            return Err(Error::DuplicateId(p.id));
        }
    }
    let mut sorted: Vec<&Point> = points.iter().collect();
    sorted.sort_by(|a, b| lex_cmp(a, b));
    for w in sorted.windows(2) {
        if lex_cmp(w[0], w[1]) == Ordering::Equal {
            return Err(Error::DuplicatePoint {
                x: w[0].x,
                y: w[0].y,
            });
        }
    }
    Ok(())
}

/// Boundary-inclusive hull of points already sorted by [`lex_cmp`].
fn hull_of_sorted(sorted: &[&Point]) -> Vec<usize> {
    let n = sorted.len();
    if n <= 2 {
        return sorted.iter().map(|p| p.id).collect();
    }
    let (first, last) = (sorted[0], sorted[n - 1]);
    if sorted
        .iter()
        .all(|p| orientation(first, last, p) == Orientation::Collinear)
    {
        return sorted.iter().map(|p| p.id).collect();
    }

    let mut cycle: Vec<&Point> = Vec::with_capacity(n + 1);
    // lower chain, then upper chain walking back
    for pass in [true, false] {
        let floor = cycle.len();
        let iter: Box<dyn Iterator<Item = &&Point>> = if pass {
            Box::new(sorted.iter())
        } else {
            Box::new(sorted.iter().rev())
        };
        for p in iter {
            while cycle.len() >= floor + 2
                && orientation(cycle[cycle.len() - 2], cycle[cycle.len() - 1], p)
                    == Orientation::Right
            {
                cycle.pop();
            }
            cycle.push(p);
        }
        cycle.pop();
    }
    cycle.into_iter().map(|p| p.id).collect()
}

/// Counterclockwise cycle of every point on the hull boundary, including
/// points interior to a hull edge. One or two points, or a fully collinear
/// set, come back as a degenerate cycle ordered by `(x, y)`.
pub fn convex_hull(points: &[Point]) -> Result<HullCycle> {
    validate_points(points)?;
    let mut sorted: Vec<&Point> = points.iter().collect();
    sorted.sort_by(|a, b| lex_cmp(a, b));
    Ok(HullCycle {
        vertex_ids: hull_of_sorted(&sorted),
    })
}

/// Onion peeling by repeated hulls: layer `k` is the hull of everything not
/// in layers `0..k`.
pub fn convex_layers_naive(points: &[Point]) -> Result<ConvexLayers> {
    validate_points(points)?;
    let mut remaining: Vec<&Point> = points.iter().collect();
    remaining.sort_by(|a, b| lex_cmp(a, b));

    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let ids = hull_of_sorted(&remaining);
        let peeled: HashSet<usize> = ids.iter().copied().collect();
        remaining.retain(|p| !peeled.contains(&p.id));
        layers.push(HullCycle { vertex_ids: ids });
    }
    Ok(ConvexLayers::from_layers(layers))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(coords: &[(f64, f64)]) -> Vec<Point> {
        coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Point::new(i, x, y))
            .collect()
    }

    fn grid3() -> Vec<Point> {
        let mut v = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                v.push(Point::new(v.len(), x as f64, y as f64));
            }
        }
        v
    }

    #[test]
    fn orientation_examples() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 0.0), (1.0, 1.0)]);
        assert_eq!(orientation(&p[0], &p[1], &p[2]), Orientation::Left);
        assert_eq!(orientation(&p[0], &p[1], &p[3]), Orientation::Collinear);
        assert_eq!(orientation(&p[0], &p[2], &p[4]), Orientation::Right);
    }

    #[test]
    fn hull_of_square() {
        let sq = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(convex_hull(&sq).unwrap().vertex_ids, vec![0, 1, 2, 3]);
        let mut with_center = sq.clone();
        with_center.push(Point::new(4, 0.5, 0.5));
        assert_eq!(
            convex_hull(&with_center).unwrap().vertex_ids,
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn hull_of_grid_keeps_edge_midpoints() {
        let hull = convex_hull(&grid3()).unwrap();
        // ids are x*3 + y
        assert_eq!(hull.vertex_ids, vec![0, 3, 6, 7, 8, 5, 2, 1]);
        assert!(!hull.vertex_ids.contains(&4));
    }

    #[test]
    fn hull_degenerate_inputs() {
        let one = pts(&[(3.0, 4.0)]);
        assert_eq!(convex_hull(&one).unwrap().vertex_ids, vec![0]);
        let two = pts(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(convex_hull(&two).unwrap().vertex_ids, vec![1, 0]);
        let line = pts(&[(2.0, 2.0), (0.0, 0.0), (4.0, 4.0), (1.0, 1.0), (3.0, 3.0)]);
        assert_eq!(convex_hull(&line).unwrap().vertex_ids, vec![1, 3, 0, 4, 2]);
        let vertical = pts(&[(0.0, 2.0), (0.0, 0.0), (0.0, 1.0)]);
        assert_eq!(convex_hull(&vertical).unwrap().vertex_ids, vec![1, 2, 0]);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(&[]), Err(Error::EmptyPointSet));
        let dup = vec![Point::new(0, 0.0, 0.0), Point::new(0, 1.0, 0.0)];
        assert_eq!(convex_hull(&dup), Err(Error::DuplicateId(0)));
        let same = vec![Point::new(0, 1.0, 1.0), Point::new(1, 1.0, 1.0)];
        assert!(matches!(
            convex_hull(&same),
            Err(Error::DuplicatePoint { .. })
        ));
        let nan = vec![Point::new(0, f64::NAN, 1.0)];
        assert_eq!(convex_hull(&nan), Err(Error::NonFinite(0)));
    }

    #[test]
    fn hull_vertical_edges() {
        // left and right sides are vertical with midpoints
        let p = pts(&[
            (0.0, 0.0),
            (0.0, 1.0),
            (0.0, 2.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (2.0, 2.0),
            (1.0, 1.0),
        ]);
        let hull = convex_hull(&p).unwrap();
        assert_eq!(hull.vertex_ids, vec![0, 3, 4, 5, 2, 1]);
    }

    #[test]
    fn layers_examples() {
        let g = convex_layers_naive(&grid3()).unwrap();
        assert_eq!(g.sizes(), vec![8, 1]);
        assert_eq!(g.depth[&4], 1);

        let nested = pts(&[
            (-2.0, -2.0),
            (2.0, -2.0),
            (2.0, 2.0),
            (-2.0, 2.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
        ]);
        let l = convex_layers_naive(&nested).unwrap();
        assert_eq!(l.sizes(), vec![4, 4]);
        assert_eq!(l.layers[1].vertex_ids, vec![4, 5, 6, 7]);
    }

    #[test]
    fn same_cycle_is_rotation_only() {
        let a = HullCycle {
            vertex_ids: vec![1, 2, 3],
        };
        let b = HullCycle {
            vertex_ids: vec![3, 1, 2],
        };
        let c = HullCycle {
            vertex_ids: vec![3, 2, 1],
        };
        assert!(a.same_cycle(&b));
        assert!(!a.same_cycle(&c));
    }

    #[test]
    fn proper_intersection() {
        let p = pts(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (2.0, 2.0)]);
        assert!(segments_properly_intersect(&p[0], &p[1], &p[2], &p[3]));
        // touching at an endpoint is not a proper crossing
        assert!(!segments_properly_intersect(&p[0], &p[1], &p[1], &p[2]));
        // collinear overlap is not proper either
        assert!(!segments_properly_intersect(&p[0], &p[4], &p[1], &p[1]));
    }
}
