//! The TSPLIB subset needed for coordinate instances: `NAME`, `TYPE: TSP`,
//! `DIMENSION`, `EDGE_WEIGHT_TYPE` (`EUC_2D` or `ATT`), `NODE_COORD_SECTION`
//! and `EOF`. `COMMENT` and other header keys are ignored. Node ids are
//! 1-based in the file and 0-based in the returned instance.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::tsp::{Instance, Metric};

fn perr(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

pub fn parse_tsplib(text: &str) -> Result<Instance> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut metric: Option<Metric> = None;
    let mut coords: Vec<Option<(f64, f64)>> = Vec::new();
    let mut in_coords = false;
    let mut count = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if in_coords {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(perr(lineno, "expected `id x y`"));
            }
            let id: usize = fields[0]
                .parse()
                .map_err(|_| perr(lineno, format!("bad node id {}", fields[0])))?;
            let x: f64 = fields[1]
                .parse()
                .map_err(|_| perr(lineno, format!("bad coordinate {}", fields[1])))?;
            let y: f64 = fields[2]
                .parse()
                .map_err(|_| perr(lineno, format!("bad coordinate {}", fields[2])))?;
            let n = coords.len();
            if id == 0 || id > n {
                return Err(perr(lineno, format!("node id {id} outside 1..={n}")));
            }
            if coords[id - 1].replace((x, y)).is_some() {
                return Err(Error::DuplicateId(id - 1));
            }
            count += 1;
            continue;
        }

        if line.starts_with("NODE_COORD_SECTION") {
            let n = dimension.ok_or_else(|| perr(lineno, "NODE_COORD_SECTION before DIMENSION"))?;
            if metric.is_none() {
                return Err(perr(lineno, "missing EDGE_WEIGHT_TYPE"));
            }
            coords = vec![None; n];
            in_coords = true;
            continue;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => return Err(perr(lineno, format!("unexpected line `{line}`"))),
        };
        match key {
            "NAME" => name = value.to_string(),
            "TYPE" => {
                if value != "TSP" {
                    return Err(perr(lineno, format!("unsupported problem type {value}")));
                }
            }
            "DIMENSION" => {
                dimension = Some(
                    value
                        .parse()
                        .map_err(|_| perr(lineno, format!("bad DIMENSION {value}")))?,
                )
            }
            "EDGE_WEIGHT_TYPE" => {
                metric = Some(match value {
                    "EUC_2D" => Metric::Euc2d,
                    "ATT" => Metric::Att,
                    other => return Err(Error::UnsupportedMetric(other.to_string())),
                })
            }
            k if k.ends_with("_SECTION") => {
                return Err(perr(lineno, format!("unsupported section {k}")));
            }
            _ => {}
        }
    }

    if !in_coords {
        return Err(Error::Parse("missing NODE_COORD_SECTION".into()));
    }
    let n = coords.len();
    if count != n {
        return Err(Error::Parse(format!(
            "DIMENSION is {n} but {count} coordinates were given"
        )));
    }
    let points = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let (x, y) = c.expect("every slot filled once count matches");
            Point::new(i, x, y)
        })
        .collect();
    Instance::from_points(name, points, metric.expect("checked at section start"))
}
