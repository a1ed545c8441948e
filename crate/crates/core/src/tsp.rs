//! Instances, distance metrics and tours.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "EUC_2D")]
    Euc2d,
    #[serde(rename = "ATT")]
    Att,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Euc2d => "EUC_2D",
            Metric::Att => "ATT",
        })
    }
}

/// Exact Euclidean distance for `EUC_2D`; the TSPLIB pseudo-Euclidean
/// integer distance for `ATT`.
pub fn distance(a: &Point, b: &Point, metric: Metric) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    match metric {
        Metric::Euc2d => dx.hypot(dy),
        Metric::Att => {
            let r = ((dx * dx + dy * dy) / 10.0).sqrt();
            let t = r.round();
            if t < r {
                t + 1.0
            } else {
                t
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    /// `points[i].id == i`.
    pub points: Vec<Point>,
    pub metric: Metric,
}

impl Instance {
    /// Builds an instance from coordinates; ids are assigned by position.
    pub fn new(name: impl Into<String>, coords: &[(f64, f64)], metric: Metric) -> Result<Self> {
        let points = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Point::new(i, x, y))
            .collect();
        Self::from_points(name, points, metric)
    }

    /// Ids must be dense `0..n`; points are reordered by id.
    pub fn from_points(
        name: impl Into<String>,
        mut points: Vec<Point>,
        metric: Metric,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInstance);
        }
        points.sort_by_key(|p| p.id);
        for (i, p) in points.iter().enumerate() {
            if p.id != i {
                return Err(if i > 0 && points[i - 1].id == p.id {
                    Error::DuplicateId(p.id)
                } else {
                    Error::Parse(format!(
                        "point ids are not dense: expected {i}, found {}",
                        p.id
                    ))
                });
            }
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::NonFinite(p.id));
            }
        }
        Ok(Instance {
            name: name.into(),
            points,
            metric,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dist(&self, a: usize, b: usize) -> f64 {
        distance(&self.points[a], &self.points[b], self.metric)
    }

    /// Dense `n x n` distance table, row-major.
    pub fn distance_matrix(&self) -> Vec<f64> {
        let n = self.len();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = self.dist(i, j);
                m[i * n + j] = d;
                m[j * n + i] = d;
            }
        }
        m
    }
}

/// Sum of consecutive distances around `order`, closing edge included.
pub(crate) fn cycle_length(order: &[usize], inst: &Instance) -> f64 {
    match order.len() {
        0 | 1 => 0.0,
        n => (0..n)
            .map(|i| inst.dist(order[i], order[(i + 1) % n]))
            .sum(),
    }
}

fn permutation_violation(order: &[usize], n: usize) -> Option<TourViolation> {
    if order.len() != n {
        return Some(TourViolation::WrongSize {
            expected: n,
            found: order.len(),
        });
    }
    let mut seen = vec![false; n];
    for &id in order {
        if id >= n {
            return Some(TourViolation::UnknownId(id));
        }
        if std::mem::replace(&mut seen[id], true) {
            return Some(TourViolation::Repeated(id));
        }
    }
    None
}

/// Rotates to start at the smallest id and picks the direction whose second
/// element is smaller.
pub fn canonicalize(order: &mut [usize]) {
    let n = order.len();
    if n == 0 {
        return;
    }
    let start = (0..n).min_by_key(|&i| order[i]).unwrap();
    order.rotate_left(start);
    if n > 2 && order[n - 1] < order[1] {
        order[1..].reverse();
    }
}

/// A closed tour with its cached length. The canonical form starts at the
/// smallest id and takes the lexicographically smaller direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tour {
    pub order: Vec<usize>,
    pub length: f64,
}

impl Tour {
    /// Validates and canonicalizes `order`, computing its length.
    pub fn new(mut order: Vec<usize>, inst: &Instance) -> Result<Tour> {
        if let Some(v) = permutation_violation(&order, inst.len()) {
            return Err(Error::InvalidTour(v.to_string()));
        }
        canonicalize(&mut order);
        let length = cycle_length(&order, inst);
        Ok(Tour { order, length })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

pub fn tour_length(tour: &Tour, inst: &Instance) -> Result<f64> {
    if let Some(v) = permutation_violation(&tour.order, inst.len()) {
        return Err(Error::InvalidTour(v.to_string()));
    }
    Ok(cycle_length(&tour.order, inst))
}

#[derive(Debug, Clone, PartialEq)]
pub enum TourViolation {
    WrongSize { expected: usize, found: usize },
    UnknownId(usize),
    Repeated(usize),
    LengthMismatch { cached: f64, actual: f64 },
}

impl fmt::Display for TourViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TourViolation::WrongSize { expected, found } => {
                write!(f, "tour visits {found} cities, expected {expected}")
            }
            TourViolation::UnknownId(id) => write!(f, "unknown id {id}"),
            TourViolation::Repeated(id) => write!(f, "id visited twice: {id}"),
            TourViolation::LengthMismatch { cached, actual } => {
                write!(f, "length mismatch: cached {cached}, actual {actual}")
            }
        }
    }
}

/// Checks the permutation property and that the cached length agrees with
/// the recomputed one to 1e-9 relative.
pub fn validate_tour(tour: &Tour, inst: &Instance) -> std::result::Result<(), TourViolation> {
    if let Some(v) = permutation_violation(&tour.order, inst.len()) {
        return Err(v);
    }
    let actual = cycle_length(&tour.order, inst);
    let tol = 1e-9 * actual.abs().max(1.0);
    // written so that a NaN length is rejected
    if (tour.length - actual).abs() <= tol {
        Ok(())
    } else {
        Err(TourViolation::LengthMismatch {
            cached: tour.length,
            actual,
        })
    }
}
