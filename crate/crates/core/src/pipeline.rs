//! Construct-then-improve pipelines, shared by the CLI and the bench harness.
//!
//! A pipeline is written as `<construct>[+<improve>[-each]]`, where
//! `construct` is `nn`, `nn@<start>`, `layers` (outermost first),
//! `layers-outer` or `layers-inner`, and `improve` is `none`, `2opt` or
//! `3opt`. The `-each` suffix also runs the improvement after every layer
//! merge.

use std::fmt;
use std::str::FromStr;

use crate::construct::{layer_merge_with, nearest_neighbor, MergeOrder};
use crate::error::{Error, Result};
use crate::hull_graph::convex_layers_fast;
use crate::improve::{three_opt, three_opt_cycle, two_opt, two_opt_cycle, ImproveConfig};
use crate::tsp::{Instance, Tour};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    NearestNeighbor { start: usize },
    Layers { order: MergeOrder },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Improvement {
    None,
    TwoOpt,
    ThreeOpt,
}

impl fmt::Display for Improvement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Improvement::None => "none",
            Improvement::TwoOpt => "2opt",
            Improvement::ThreeOpt => "3opt",
        })
    }
}

impl FromStr for Improvement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Improvement::None),
            "2opt" | "2-opt" => Ok(Improvement::TwoOpt),
            "3opt" | "3-opt" => Ok(Improvement::ThreeOpt),
            other => Err(Error::InvalidPipeline(format!(
                "unknown improvement {other}"
            ))),
        }
    }
}

impl Improvement {
    /// Improves a bare cycle in place; returns the number of applied moves.
    pub fn apply_cycle(
        self,
        order: &mut Vec<usize>,
        inst: &Instance,
        cfg: &ImproveConfig,
    ) -> usize {
        match self {
            Improvement::None => 0,
            Improvement::TwoOpt => two_opt_cycle(order, inst, cfg),
            Improvement::ThreeOpt => three_opt_cycle(order, inst, cfg),
        }
    }

    pub fn apply(self, tour: &Tour, inst: &Instance, cfg: &ImproveConfig) -> Result<Tour> {
        match self {
            Improvement::None => Ok(tour.clone()),
            Improvement::TwoOpt => two_opt(tour, inst, cfg),
            Improvement::ThreeOpt => three_opt(tour, inst, cfg),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pipeline {
    pub construct: Construction,
    pub improve: Improvement,
    pub improve_each_merge: bool,
}

impl Pipeline {
    pub fn nn(improve: Improvement) -> Self {
        Pipeline {
            construct: Construction::NearestNeighbor { start: 0 },
            improve,
            improve_each_merge: false,
        }
    }

    pub fn layers(order: MergeOrder, improve: Improvement) -> Self {
        Pipeline {
            construct: Construction::Layers { order },
            improve,
            improve_each_merge: false,
        }
    }

    pub fn construct_name(&self) -> &'static str {
        match self.construct {
            Construction::NearestNeighbor { .. } => "nn",
            Construction::Layers { .. } => "layers",
        }
    }

    pub fn merge_order(&self) -> Option<MergeOrder> {
        match self.construct {
            Construction::Layers { order } => Some(order),
            Construction::NearestNeighbor { .. } => None,
        }
    }

    pub fn start(&self) -> Option<usize> {
        match self.construct {
            Construction::NearestNeighbor { start } => Some(start),
            Construction::Layers { .. } => None,
        }
    }

    pub fn run(&self, inst: &Instance, cfg: &ImproveConfig) -> Result<PipelineRun> {
        let layers = convex_layers_fast(&inst.points)?;
        let initial = match self.construct {
            Construction::NearestNeighbor { start } => nearest_neighbor(inst, start)?,
            Construction::Layers { order } => {
                let each = self.improve_each_merge;
                layer_merge_with(inst, &layers, order, |host| {
                    if each {
                        self.improve.apply_cycle(host, inst, cfg);
                    }
                })?
            }
        };
        let tour = self.improve.apply(&initial, inst, cfg)?;
        Ok(PipelineRun {
            initial,
            tour,
            layer_count: layers.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineRun {
    /// The constructed tour before the final improvement.
    pub initial: Tour,
    pub tour: Tour,
    pub layer_count: usize,
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.construct {
            Construction::NearestNeighbor { start: 0 } => f.write_str("nn")?,
            Construction::NearestNeighbor { start } => write!(f, "nn@{start}")?,
            Construction::Layers { order } => write!(f, "layers-{order}")?,
        }
        if self.improve != Improvement::None {
            write!(f, "+{}", self.improve)?;
            if self.improve_each_merge {
                f.write_str("-each")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPipeline(s.to_string());
        let (head, tail) = match s.split_once('+') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let construct = match head {
            "nn" => Construction::NearestNeighbor { start: 0 },
            "layers" => Construction::Layers {
                order: MergeOrder::OutermostFirst,
            },
            _ => {
                if let Some(start) = head.strip_prefix("nn@") {
                    Construction::NearestNeighbor {
                        start: start.parse().map_err(|_| bad())?,
                    }
                } else if let Some(order) = head.strip_prefix("layers-") {
                    Construction::Layers {
                        order: order.parse().map_err(|_| bad())?,
                    }
                } else {
                    return Err(bad());
                }
            }
        };
        let (improve, each) = match tail {
            None => (Improvement::None, false),
            Some(t) => match t.strip_suffix("-each") {
                Some(name) => (name.parse().map_err(|_| bad())?, true),
                None => (t.parse().map_err(|_| bad())?, false),
            },
        };
        if each && !matches!(construct, Construction::Layers { .. }) {
            return Err(bad());
        }
        Ok(Pipeline {
            construct,
            improve,
            improve_each_merge: each && improve != Improvement::None,
        })
    }
}
