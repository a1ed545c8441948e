//! SVG 1.1 figures of points, layers and tours.
//!
//! The y axis is flipped so the picture matches the usual math orientation.
//! The viewBox is the bounding box grown by 5% of its larger side on every
//! edge.

use std::fmt::Write;

use crate::geometry::ConvexLayers;
use crate::tsp::{Instance, Tour};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn point_list(inst: &Instance, ids: &[usize]) -> String {
    ids.iter()
        .map(|&id| {
            let p = &inst.points[id];
            format!("{},{}", num(p.x), num(-p.y))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_svg(inst: &Instance, layers: Option<&ConvexLayers>, tour: Option<&Tour>) -> String {
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &inst.points {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    let span = (max_x - min_x).max(max_y - min_y);
    let span = if span > 0.0 { span } else { 1.0 };
    let margin = 0.05 * span;
    let stroke = span * 0.004;
    let radius = span * 0.008;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(min_x - margin),
        num(-max_y - margin),
        num(max_x - min_x + 2.0 * margin),
        num(max_y - min_y + 2.0 * margin)
    )
    .unwrap();
    writeln!(out, "  <title>{}</title>", escape(&inst.name)).unwrap();

    if let Some(layers) = layers {
        writeln!(
            out,
            "  <g id=\"layers\" fill=\"none\" stroke-width=\"{}\">",
            num(stroke)
        )
        .unwrap();
        for (k, layer) in layers.layers.iter().enumerate() {
            writeln!(
                out,
                "    <polygon points=\"{}\" stroke=\"{}\"/>",
                point_list(inst, &layer.vertex_ids),
                PALETTE[k % PALETTE.len()]
            )
            .unwrap();
        }
        out.push_str("  </g>\n");
    }

    if let Some(tour) = tour {
        let mut closed = tour.order.clone();
        if let Some(&first) = tour.order.first() {
            closed.push(first);
        }
        writeln!(
            out,
            "  <polyline id=\"tour\" points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\"/>",
            point_list(inst, &closed),
            num(stroke)
        )
        .unwrap();
    }

    writeln!(out, "  <g id=\"points\" fill=\"#000000\">").unwrap();
    for p in &inst.points {
        writeln!(
            out,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(p.x),
            num(-p.y),
            num(radius)
        )
        .unwrap();
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_layers_naive;
    use crate::tsp::Metric;

    fn square() -> Instance {
        Instance::new(
            "sq",
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
            Metric::Euc2d,
        )
        .unwrap()
    }

    #[test]
    fn one_polygon_for_the_hull() {
        let inst = square();
        let layers = convex_layers_naive(&inst.points).unwrap();
        let svg = write_svg(&inst, Some(&layers), None);
        assert_eq!(svg.matches("<polygon").count(), 1);
        let poly = svg.lines().find(|l| l.contains("<polygon")).unwrap();
        let pts = poly.split('"').nth(1).unwrap();
        assert_eq!(pts.split(' ').count(), 4);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains("viewBox=\"-0.0500 -1.0500 1.1000 1.1000\""));
    }

    #[test]
    fn tour_is_a_closed_polyline() {
        let inst = square();
        let tour = Tour::new(vec![0, 1, 2, 3], &inst).unwrap();
        let svg = write_svg(&inst, None, Some(&tour));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(
            "points=\"0.0000,0.0000 1.0000,0.0000 1.0000,-1.0000 0.0000,-1.0000 0.0000,0.0000\""
        ));
        assert!(!svg.contains("<polygon"));
        assert_eq!(svg, write_svg(&inst, None, Some(&tour)));
    }

    #[test]
    fn single_point_gets_a_unit_box() {
        let inst = Instance::new("<one>", &[(2.0, 3.0)], Metric::Euc2d).unwrap();
        let svg = write_svg(&inst, None, None);
        assert!(svg.contains("&lt;one&gt;"));
        assert!(svg.contains("viewBox=\"1.9500 -3.0500 0.1000 0.1000\""));
    }
}
