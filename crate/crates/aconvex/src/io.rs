//! Polygon documents: a small TOML format with a `name` and a `vertices`
//! array of `[x, y]` pairs, one polygon per file. Orientation is normalized
//! on load; parse errors carry line and column.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orient_ccw, Polygon, Vec2};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonDocument {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonDocument {
    pub fn from_polygon(name: &str, k: &Polygon) -> PolygonDocument {
        PolygonDocument {
            name: name.to_string(),
            vertices: k.vertices().iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    /// Validate and normalize into a polygon (closes up, simple, CCW).
    pub fn to_polygon(&self) -> Result<Polygon> {
        if self.vertices.len() < 3 {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!(
                    "a polygon needs at least 3 vertices, found {}",
                    self.vertices.len()
                ),
            });
        }
        let pts: Vec<Vec2> = self
            .vertices
            .iter()
            .map(|&[x, y]| {
                if x.is_finite() && y.is_finite() {
                    Ok(Vec2::new(x, y))
                } else {
                    Err(Error::Parse {
                        line: 1,
                        column: 1,
                        message: "non-finite coordinate".into(),
                    })
                }
            })
            .collect::<Result<_>>()?;
        orient_ccw(&pts)
    }
}

/// Parse a polygon document; the polygon comes back normalized CCW.
pub fn parse_polygon(text: &str) -> Result<(String, Polygon)> {
    let doc: PolygonDocument = toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|s| offset_to_line_col(text, s.start))
            .unwrap_or((1, 1));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let polygon = doc.to_polygon()?;
    Ok((doc.name, polygon))
}

/// Serialize a polygon to its document form. Coordinates use the shortest
/// representation that round-trips exactly.
pub fn serialize_polygon(k: &Polygon, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("name = {:?}\n", name));
    out.push_str("vertices = [\n");
    for p in k.vertices() {
        out.push_str(&format!("    [{}, {}],\n", fmt_coord(p.x), fmt_coord(p.y)));
    }
    out.push_str("]\n");
    out
}

fn fmt_coord(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{x:.1}")
    } else {
        format!("{x}")
    }
}

fn offset_to_line_col(text: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, c) in text.char_indices() {
        if i >= offset {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Format an angle in radians with 12 significant digits, plain decimal.
pub fn fmt_radians(x: f64) -> String {
    fmt_sig(x, 12)
}

pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Trim trailing zeros but keep at least one decimal digit if any.
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        t.to_string()
    } else {
        s
    }
}
