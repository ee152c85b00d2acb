//! JSON file formats: diagrams in, analysis results out.
//!
//! The diagram schema is strict (unknown keys rejected) and round-trips
//! exactly; floating values are serialized with 17 significant digits so
//! that emitted files reparse to identical bits.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{CellComplex, Diagram};
use crate::dynamics::SpringConstants;
use crate::error::Error;
use crate::lifting;
use crate::numerics::Tolerance;
use crate::reciprocal;
use crate::statics::{self, ModeKind};
use crate::Result;

/// On-disk diagram document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub dimension: u32,
    pub closed: bool,
    pub cells: CellsSection,
    /// Signed incidence triples `[lower, upper, sign]`.
    pub incidence: Vec<(String, String, i8)>,
    pub realization: BTreeMap<String, [f64; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub open_edge_directions: BTreeMap<String, [f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spring_constants: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellsSection {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    #[serde(default)]
    pub faces: Vec<String>,
}

impl DiagramFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_diagram(&self) -> Result<(Diagram, Option<SpringConstants>)> {
        if self.dimension != 2 {
            return Err(Error::Schema(format!(
                "dimension {} unsupported; this tool is planar",
                self.dimension
            )));
        }
        let mut cells = Vec::new();
        for v in &self.cells.vertices {
            cells.push((v.clone(), 0));
        }
        for e in &self.cells.edges {
            cells.push((e.clone(), 1));
        }
        for f in &self.cells.faces {
            cells.push((f.clone(), 2));
        }
        let complex = Arc::new(CellComplex::new(
            cells,
            self.incidence.clone(),
            self.closed,
        )?);
        let diagram = Diagram::new(
            complex,
            self.realization
                .iter()
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
            self.open_edge_directions
                .iter()
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        )?;
        let springs = self.spring_constants.as_ref().map(|by_edge| SpringConstants {
            by_edge: by_edge.clone(),
        });
        if let Some(s) = &springs {
            s.validate()?;
        }
        Ok((diagram, springs))
    }

    pub fn from_diagram(diagram: &Diagram, springs: Option<&SpringConstants>) -> Self {
        let complex = &diagram.complex;
        let by_dim = |d: usize| -> Vec<String> {
            complex
                .cells_of_dim(d)
                .into_iter()
                .map(|i| complex.cell_id(i).to_string())
                .collect()
        };
        DiagramFile {
            dimension: 2,
            closed: complex.is_closed(),
            cells: CellsSection {
                vertices: by_dim(0),
                edges: by_dim(1),
                faces: by_dim(2),
            },
            incidence: complex
                .incidences()
                .iter()
                .map(|inc| {
                    (
                        complex.cell_id(inc.lower).to_string(),
                        complex.cell_id(inc.upper).to_string(),
                        inc.sign,
                    )
                })
                .collect(),
            realization: diagram.realization_by_id().into_iter().collect(),
            open_edge_directions: diagram.open_directions_by_id().into_iter().collect(),
            spring_constants: springs.map(|s| s.by_edge.clone()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyDims {
    pub h0: usize,
    pub h1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusBounds {
    pub genus: u32,
    pub dim_self_stress: usize,
    pub reciprocal_bound: usize,
    pub reciprocal_guaranteed: bool,
    pub lift_bound: usize,
    pub lift_guaranteed: bool,
    pub lift_dim_mod_affine: usize,
}

/// Full analysis document emitted by `statics analyze`.
#[derive(Debug, Clone, Serialize)]
pub struct ResultFile {
    pub force: HomologyDims,
    pub position: HomologyDims,
    /// Quotient of the ambient plane by the force cosheaf.
    pub quotient: HomologyDims,
    pub maxwell: statics::MaxwellReport,
    /// Self-stress basis, one value map per basis vector.
    pub self_stresses: Vec<BTreeMap<String, f64>>,
    /// Mechanism modes (rigid motions excluded), as per-vertex vectors.
    pub mechanisms: Vec<BTreeMap<String, [f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus_bounds: Option<GenusBounds>,
}

/// Run the full homological analysis of a diagram.
pub fn analyze_diagram(diagram: &Diagram, tol: Tolerance) -> Result<ResultFile> {
    let (force_h0, force_h1) = statics::force_homology_dims(diagram, tol)?;
    let (pos_h0, pos_h1) = statics::position_homology_dims(diagram, tol)?;
    let ws = statics::StaticsWorkspace::new(diagram, tol)?;
    let quotient = HomologyDims {
        h0: ws.quotient.homology(0, tol)?.dim(),
        h1: ws.quotient.homology(1, tol)?.dim(),
        h2: Some(ws.quotient.homology(2, tol)?.dim()),
    };
    let maxwell = statics::maxwell_rule_report(diagram, tol)?;
    let self_stresses = statics::self_stresses(diagram, tol)?
        .into_iter()
        .map(|s| s.values)
        .collect();
    let mechanisms = statics::freedom_modes(diagram, tol)?
        .into_iter()
        .filter(|m| m.kind == ModeKind::Mechanism)
        .map(|m| m.vertex_vectors)
        .collect();
    let genus_bounds = if diagram.complex.is_closed() {
        let (gc, _) = reciprocal::genus_existence_check(diagram, tol)?;
        let (lc, _) = lifting::lift_genus_check(diagram, tol)?;
        Some(GenusBounds {
            genus: gc.genus,
            dim_self_stress: gc.dim_self_stress,
            reciprocal_bound: gc.bound,
            reciprocal_guaranteed: gc.guaranteed,
            lift_bound: lc.bound,
            lift_guaranteed: lc.guaranteed,
            lift_dim_mod_affine: lc.lift_dim_mod_affine,
        })
    } else {
        None
    };
    Ok(ResultFile {
        force: HomologyDims {
            h0: force_h0,
            h1: force_h1,
            h2: None,
        },
        position: HomologyDims {
            h0: pos_h0,
            h1: pos_h1,
            h2: None,
        },
        quotient,
        maxwell,
        self_stresses,
        mechanisms,
        genus_bounds,
    })
}

/// Pretty JSON with every float at 17 significant digits.
pub fn to_json_17<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter::new());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Schema(e.to_string()))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Schema(e.to_string()))
}

/// Pretty formatter that writes floats as `d.dddddddddddddddde[+-]d`.
struct SigFigFormatter {
    indent: usize,
    has_value: bool,
}

impl SigFigFormatter {
    fn new() -> Self {
        Self {
            indent: 0,
            has_value: false,
        }
    }

    fn newline<W: ?Sized + Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        writer.write_all(b"[")
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(writer)?;
        }
        writer.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        if !first {
            writer.write_all(b",")?;
        }
        self.newline(writer)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, _writer: &mut W) -> std::io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        writer.write_all(b"{")
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(writer)?;
        }
        writer.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        if !first {
            writer.write_all(b",")?;
        }
        self.newline(writer)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        writer.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, _writer: &mut W) -> std::io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn diagram_file_roundtrip_is_exact() {
        for (_, d) in fixtures::named_fixtures() {
            let file = DiagramFile::from_diagram(&d, None);
            let json = to_json_17(&file).unwrap();
            let parsed = DiagramFile::parse(&json).unwrap();
            let rejson = to_json_17(&parsed).unwrap();
            assert_eq!(json, rejson);
            let (d2, _) = parsed.to_diagram().unwrap();
            assert_eq!(d2.complex.cell_counts(), d.complex.cell_counts());
            for v in d.complex.cells_of_dim(0) {
                let id = d.complex.cell_id(v);
                let p = d.vertex_position(v);
                let q = d2.vertex_position(d2.complex.cell_index(id).unwrap());
                assert_eq!(p, q);
            }
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let json = r#"{"dimension": 2, "closed": false, "cells": {"vertices": [], "edges": []},
                       "incidence": [], "realization": {}, "mystery": 1}"#;
        assert!(matches!(DiagramFile::parse(json), Err(Error::Schema(_))));
    }

    #[test]
    fn seventeen_digit_floats_roundtrip() {
        let file = DiagramFile::from_diagram(&fixtures::octahedron(), None);
        let json = to_json_17(&file).unwrap();
        let parsed = DiagramFile::parse(&json).unwrap();
        assert_eq!(file.realization, parsed.realization);
    }

    #[test]
    fn analyze_braced_square_matches_reference_dims() {
        let d = fixtures::braced_square();
        let result = analyze_diagram(&d, Tolerance::default()).unwrap();
        assert_eq!((result.force.h0, result.force.h1), (3, 1));
        assert_eq!((result.position.h0, result.position.h1), (3, 1));
        assert!(result.maxwell.holds);
        assert_eq!(result.self_stresses.len(), 1);
        assert!(result.mechanisms.is_empty());
        let gb = result.genus_bounds.unwrap();
        assert_eq!(gb.genus, 0);
        assert!(gb.reciprocal_guaranteed && gb.lift_guaranteed);
    }
}
