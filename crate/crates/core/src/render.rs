//! Static SVG rendering of diagrams and their derived layers.
//!
//! Layers: the form diagram itself, stress coloring (red tension, blue
//! compression), the dual diagram as a dashed overlay, and rotation-cochain
//! arc glyphs. Output is deterministic for identical inputs.

use std::fmt::Write;

use crate::complex::Diagram;
use crate::reciprocal::{DualRealization, EdgeRotationCochain};
use crate::statics::SelfStress;

/// Layer toggles for [`render_svg`].
#[derive(Debug, Clone, Copy)]
pub struct RenderLayers {
    pub form: bool,
    pub force: bool,
    pub dual: bool,
    pub rotations: bool,
}

impl Default for RenderLayers {
    fn default() -> Self {
        Self {
            form: true,
            force: true,
            dual: true,
            rotations: false,
        }
    }
}

struct Frame {
    min: [f64; 2],
    scale: f64,
    height: f64,
}

impl Frame {
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            (p[0] - self.min[0]) * self.scale + 40.0,
            self.height - ((p[1] - self.min[1]) * self.scale + 40.0),
        )
    }
}

fn bounds(points: impl Iterator<Item = [f64; 2]>) -> ([f64; 2], [f64; 2]) {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in points {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    if !min[0].is_finite() {
        (min, max) = ([0.0, 0.0], [1.0, 1.0]);
    }
    (min, max)
}

/// Render the requested layers to an SVG document.
pub fn render_svg(
    diagram: &Diagram,
    stress: Option<&SelfStress>,
    dual: Option<&DualRealization>,
    rotations: Option<&EdgeRotationCochain>,
    layers: RenderLayers,
) -> String {
    let base = &diagram.complex;
    let primal_points = base
        .cells_of_dim(0)
        .into_iter()
        .map(|v| diagram.vertex_position(v));
    let dual_points: Vec<[f64; 2]> = dual
        .map(|d| d.coordinates.values().copied().collect())
        .unwrap_or_default();
    let (min, max) = bounds(primal_points.chain(dual_points.iter().copied()));
    let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
    let scale = 480.0 / span;
    let width = (max[0] - min[0]) * scale + 80.0;
    let height = (max[1] - min[1]) * scale + 80.0;
    let frame = Frame { min, scale, height };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"##
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="white"/>"##);

    let max_stress = stress
        .map(|s| s.values.values().fold(0.0_f64, |a, &v| a.max(v.abs())))
        .unwrap_or(0.0);

    if layers.form || layers.force {
        let _ = writeln!(svg, r##"<g id="form" stroke-linecap="round">"##);
        for e in base.cells_of_dim(1) {
            let vs = base.edge_vertices(e);
            let (color, width_px) = match (layers.force, stress) {
                (true, Some(s)) if max_stress > 0.0 => {
                    let w = s.values.get(base.cell_id(e)).copied().unwrap_or(0.0);
                    if w > 1e-12 * max_stress {
                        ("#c62828", 1.5 + 3.0 * w.abs() / max_stress)
                    } else if w < -1e-12 * max_stress {
                        ("#1565c0", 1.5 + 3.0 * w.abs() / max_stress)
                    } else {
                        ("#222222", 1.5)
                    }
                }
                _ => ("#222222", 1.5),
            };
            match vs.len() {
                2 => {
                    let (x1, y1) = frame.map(diagram.vertex_position(vs[0].0));
                    let (x2, y2) = frame.map(diagram.vertex_position(vs[1].0));
                    let _ = writeln!(
                        svg,
                        r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="{width_px:.2}"/>"##
                    );
                }
                1 => {
                    // Open-ended edge: a dashed ray out of its anchor.
                    let p = diagram.vertex_position(vs[0].0);
                    let d = diagram.open_direction(e).unwrap_or([1.0, 0.0]);
                    let ray = 0.35 * span;
                    let q = [p[0] + ray * d[0], p[1] + ray * d[1]];
                    let (x1, y1) = frame.map(p);
                    let (x2, y2) = frame.map(q);
                    let _ = writeln!(
                        svg,
                        r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="{width_px:.2}" stroke-dasharray="8 4"/>"##
                    );
                }
                _ => {}
            }
        }
        for v in base.cells_of_dim(0) {
            let (x, y) = frame.map(diagram.vertex_position(v));
            let _ = writeln!(svg, r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#222222"/>"##);
        }
        let _ = writeln!(svg, "</g>");
    }

    if layers.dual {
        if let Some(dual) = dual {
            let _ = writeln!(svg, r##"<g id="dual" stroke="#777777" stroke-dasharray="5 4">"##);
            for e in base.cells_of_dim(1) {
                let fs = base.edge_faces(e);
                if fs.len() != 2 {
                    continue;
                }
                let qa = dual.coordinates[base.cell_id(fs[0].0)];
                let qb = dual.coordinates[base.cell_id(fs[1].0)];
                let (x1, y1) = frame.map(qa);
                let (x2, y2) = frame.map(qb);
                let _ = writeln!(
                    svg,
                    r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="1.2"/>"##
                );
            }
            for q in dual.coordinates.values() {
                let (x, y) = frame.map(*q);
                let _ = writeln!(
                    svg,
                    r##"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="#777777" stroke="none"/>"##
                );
            }
            let _ = writeln!(svg, "</g>");
        }
    }

    if layers.rotations {
        if let Some(rot) = rotations {
            if let Some(dual) = dual {
                let max_rot = rot.values.values().fold(0.0_f64, |a, &v| a.max(v.abs()));
                let _ = writeln!(svg, r##"<g id="rotations" fill="none" stroke="#2e7d32">"##);
                for e in base.cells_of_dim(1) {
                    let fs = base.edge_faces(e);
                    if fs.len() != 2 {
                        continue;
                    }
                    let key = format!("~{}", base.cell_id(e));
                    let Some(&value) = rot.values.get(&key) else {
                        continue;
                    };
                    if max_rot == 0.0 || value.abs() < 1e-12 * max_rot {
                        continue;
                    }
                    let qa = dual.coordinates[base.cell_id(fs[0].0)];
                    let qb = dual.coordinates[base.cell_id(fs[1].0)];
                    let mid = [(qa[0] + qb[0]) / 2.0, (qa[1] + qb[1]) / 2.0];
                    let (cx, cy) = frame.map(mid);
                    let r = 9.0;
                    // Arc glyph: sweep flag encodes the rotation sense.
                    let sweep = if value > 0.0 { 1 } else { 0 };
                    let _ = writeln!(
                        svg,
                        r##"<path d="M {:.2} {:.2} A {r} {r} 0 1 {sweep} {:.2} {:.2}" stroke-width="1.5"/>"##,
                        cx - r,
                        cy,
                        cx + r,
                        cy
                    );
                }
                let _ = writeln!(svg, "</g>");
            }
        }
    }

    svg.push_str("</svg>\n");
    svg
}
