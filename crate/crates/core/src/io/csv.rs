//! Plain CSV instances: an `id,x,y` header followed by rows, or headerless
//! `x,y` rows numbered by position. Always `EUC_2D`.

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::tsp::{Instance, Metric};

fn field<T: std::str::FromStr>(raw: &str, line: usize, what: &str) -> Result<T> {
    raw.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: non-numeric {what} `{}`", raw.trim())))
}

pub fn parse_csv(text: &str, name: &str) -> Result<Instance> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let with_ids = match rows.peek() {
        None => return Err(Error::Parse("empty file".into())),
        Some((_, header)) => {
            let cols: Vec<String> = header
                .split(',')
                .map(|c| c.trim().to_ascii_lowercase())
                .collect();
            match cols
                .iter()
                .map(String::as_str)
                .collect::<Vec<_>>()
                .as_slice()
            {
                ["id", "x", "y"] => {
                    rows.next();
                    true
                }
                ["x", "y"] => {
                    rows.next();
                    false
                }
                _ => false,
            }
        }
    };

    let mut points = Vec::new();
    let mut ids = HashSet::new();
    for (line, row) in rows {
        let cols: Vec<&str> = row.split(',').collect();
        let point = match (with_ids, cols.as_slice()) {
            (true, [id, x, y]) => {
                let id: usize = field(id, line, "id")?;
                if !ids.insert(id) {
                    return Err(Error::Parse(format!("line {line}: duplicate id {id}")));
                }
                Point::new(id, field(x, line, "x")?, field(y, line, "y")?)
            }
            (false, [x, y]) => Point::new(points.len(), field(x, line, "x")?, field(y, line, "y")?),
            _ => {
                let want = if with_ids { 3 } else { 2 };
                return Err(Error::Parse(format!(
                    "line {line}: expected {want} fields, found {}",
                    cols.len()
                )));
            }
        };
        if !point.x.is_finite() || !point.y.is_finite() {
            return Err(Error::Parse(format!("line {line}: non-finite coordinate")));
        }
        points.push(point);
    }
    if points.is_empty() {
        return Err(Error::Parse("no points".into()));
    }
    Instance::from_points(name, points, Metric::Euc2d)
}

/// `id,x,y` rows with shortest round-trip float formatting.
pub fn render_csv(inst: &Instance) -> String {
    let mut out = String::from("id,x,y\n");
    for p in &inst.points {
        writeln!(out, "{},{},{}", p.id, p.x, p.y).unwrap();
    }
    out
}
