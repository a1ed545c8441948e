//! Instance formats, result emission and figures.

pub mod csv;
pub mod json;
pub mod svg;
pub mod tsplib;

pub use self::csv::{parse_csv, render_csv};
pub use self::json::{LayersOutput, PipelineDescriptor, SolveResult};
pub use self::svg::write_svg;
pub use self::tsplib::parse_tsplib;

use crate::error::Result;
use crate::tsp::Instance;

/// Parses TSPLIB text when it carries a `NODE_COORD_SECTION`, CSV otherwise.
pub fn parse_instance(text: &str, name: &str) -> Result<Instance> {
    if text
        .lines()
        .any(|l| l.trim_start().starts_with("NODE_COORD_SECTION"))
    {
        parse_tsplib(text)
    } else {
        parse_csv(text, name)
    }
}
