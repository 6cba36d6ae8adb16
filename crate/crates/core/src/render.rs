//! SVG drawings of patches.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::atlas::VertexConfig;
use crate::patch::{Patch, TileKind};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    /// Pixels per unit edge.
    pub scale: f64,
    pub palette: BTreeMap<TileKind, String>,
    pub stroke_width: f64,
    /// Mark interior vertices by configuration.
    pub vertex_markers: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        let palette = BTreeMap::from([
            (TileKind::Triangle, "#f2c14e".to_string()),
            (TileKind::Shield, "#5b8e7d".to_string()),
        ]);
        RenderStyle { scale: 40.0, palette, stroke_width: 1.0, vertex_markers: false }
    }
}

fn marker_color(c: &VertexConfig) -> &'static str {
    match c.name() {
        Some("hex") => "#d1495b",
        Some("bowtie") => "#00798c",
        Some("fault") => "#2e294e",
        _ => "#edae49",
    }
}

/// One polygon per tile, y pointing up. Output depends only on the inputs.
pub fn render_svg(patch: &Patch, style: &RenderStyle) -> String {
    assert!(style.scale > 0.0, "scale must be positive");
    let pts: Vec<(f64, f64)> = patch.tiles().iter().flat_map(|t| t.xy.iter().copied()).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = pts.first() {
        (x0, y0, x1, y1) = (x, y, x, y);
    }
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let margin = 0.5;
    let s = style.scale;
    let width = (x1 - x0 + 2.0 * margin) * s;
    let height = (y1 - y0 + 2.0 * margin) * s;
    let map = |(x, y): (f64, f64)| ((x - x0 + margin) * s, (y1 - y + margin) * s);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    writeln!(out, r##"<g stroke="#222" stroke-width="{}" stroke-linejoin="round">"##, style.stroke_width).unwrap();
    for t in patch.tiles() {
        let fill = style.palette.get(&t.placement.kind).map_or("none", |c| c.as_str());
        let points: Vec<String> = t.xy.iter().map(|&p| {
            let (x, y) = map(p);
            format!("{x:.3},{y:.3}")
        }).collect();
        writeln!(out, r#"<polygon class="{}" fill="{fill}" points="{}"/>"#, t.placement.kind.letter(), points.join(" ")).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if style.vertex_markers {
        writeln!(out, "<g>").unwrap();
        for v in patch.interior_vertices() {
            let Some(c) = patch.config(v) else { continue };
            let (x, y) = map(patch.vertex(v).pos.xy);
            writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.2}" fill="{}"><title>{c}</title></circle>"#, 0.08 * s, marker_color(&c))
                .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
