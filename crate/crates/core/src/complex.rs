//! Regular cell complexes of dimension ≤ 2 with signed incidence.
//!
//! A complex is a list of cells (vertices, edges, faces) plus a signed
//! incidence relation `[c:d] ∈ {-1,+1}` between cells of consecutive
//! dimension. Closed complexes are oriented surfaces; open complexes model
//! boundary conditions through edges with a single incident vertex
//! (load/reaction lines) and unbounded faces.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

/// Opaque cell identifier.
pub type CellId = String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cell {
    pub id: CellId,
    pub dim: usize,
}

/// A signed incidence entry between a lower and an upper cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub lower: usize,
    pub upper: usize,
    pub sign: i8,
}

/// Regular cell complex of dimension ≤ 2.
///
/// Immutable after construction; validity is checked by [`CellComplex::validate`]
/// rather than enforced by the constructor, so that invalid inputs can be
/// reported in full.
#[derive(Debug, Clone)]
pub struct CellComplex {
    cells: Vec<Cell>,
    index: HashMap<CellId, usize>,
    incidence: Vec<Incidence>,
    /// Upward incidences per cell: (upper cell, sign).
    up: Vec<Vec<(usize, i8)>>,
    /// Downward incidences per cell: (lower cell, sign).
    down: Vec<Vec<(usize, i8)>>,
    closed: bool,
}

impl CellComplex {
    /// Build a complex from cell lists and signed incidence triples.
    ///
    /// Cells keep their given order (used for chain indexing); incidence
    /// entries must reference declared ids.
    pub fn new(
        cells: Vec<(CellId, usize)>,
        incidence: Vec<(CellId, CellId, i8)>,
        closed: bool,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        let mut cell_vec = Vec::with_capacity(cells.len());
        for (id, dim) in cells {
            if dim > 2 {
                return Err(Error::Schema(format!("cell {id:?} has dimension {dim} > 2")));
            }
            if index.insert(id.clone(), cell_vec.len()).is_some() {
                return Err(Error::Schema(format!("duplicate cell id {id:?}")));
            }
            cell_vec.push(Cell { id, dim });
        }
        let mut inc = Vec::with_capacity(incidence.len());
        let mut up = vec![Vec::new(); cell_vec.len()];
        let mut down = vec![Vec::new(); cell_vec.len()];
        for (lo, hi, sign) in incidence {
            let &lower = index.get(&lo).ok_or_else(|| Error::UnknownCell(lo.clone()))?;
            let &upper = index.get(&hi).ok_or_else(|| Error::UnknownCell(hi.clone()))?;
            if sign != 1 && sign != -1 {
                return Err(Error::Schema(format!(
                    "incidence sign for ({lo:?}, {hi:?}) must be ±1, got {sign}"
                )));
            }
            up[lower].push((upper, sign));
            down[upper].push((lower, sign));
            inc.push(Incidence { lower, upper, sign });
        }
        Ok(Self {
            cells: cell_vec,
            index,
            incidence: inc,
            up,
            down,
            closed,
        })
    }

    /// Whether the complex claims to be a closed oriented surface.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of cells of each dimension present.
    pub fn cell_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    /// Indices of all cells of the given dimension, in declaration order.
    pub fn cells_of_dim(&self, dim: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim == dim).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_id(&self, idx: usize) -> &str {
        &self.cells[idx].id
    }

    pub fn cell_dim(&self, idx: usize) -> usize {
        self.cells[idx].dim
    }

    pub fn cell_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// All signed incidence entries.
    pub fn incidences(&self) -> &[Incidence] {
        &self.incidence
    }

    /// Upper cells incident to `idx` with signs.
    pub fn upper(&self, idx: usize) -> &[(usize, i8)] {
        &self.up[idx]
    }

    /// Lower cells incident to `idx` with signs.
    pub fn lower(&self, idx: usize) -> &[(usize, i8)] {
        &self.down[idx]
    }

    /// Vertices of an edge with incidence signs, tail first (sign -1) where a
    /// tail exists. Open-ended edges return a single vertex.
    pub fn edge_vertices(&self, edge: usize) -> Vec<(usize, i8)> {
        let mut vs = self.down[edge].clone();
        vs.sort_by_key(|&(_, s)| s); // tail (-1) first
        vs
    }

    /// Faces incident to an edge with signs.
    pub fn edge_faces(&self, edge: usize) -> &[(usize, i8)] {
        &self.up[edge]
    }

    /// Euler characteristic from the cells that are present.
    pub fn euler_characteristic(&self) -> i64 {
        let [v, e, f] = self.cell_counts();
        v as i64 - e as i64 + f as i64
    }

    /// Genus of a closed oriented surface: g = (2 - χ) / 2.
    pub fn genus(&self) -> Result<u32> {
        self.require_closed_surface()?;
        let chi = self.euler_characteristic();
        Ok(((2 - chi) / 2) as u32)
    }

    /// Error unless this is a validated closed oriented surface.
    pub fn require_closed_surface(&self) -> Result<()> {
        if !self.closed {
            return Err(Error::NotClosedSurface("complex is marked open".into()));
        }
        let report = self.validate();
        if !report.passed() {
            return Err(Error::NotClosedSurface(report.to_string()));
        }
        Ok(())
    }

    /// Check every structural invariant, reporting all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        // Adjacency: incidence only between consecutive dimensions.
        for inc in &self.incidence {
            let (dl, du) = (self.cells[inc.lower].dim, self.cells[inc.upper].dim);
            if dl + 1 != du {
                violations.push(Violation {
                    rule: "adjacency",
                    cells: vec![self.cells[inc.lower].id.clone(), self.cells[inc.upper].id.clone()],
                    detail: format!("incidence between dimensions {dl} and {du}"),
                });
            }
        }

        // Directed edges: two incident vertices with opposite signs; open
        // complexes also allow a single incident vertex.
        for e in self.cells_of_dim(1) {
            let vs = &self.down[e];
            match vs.len() {
                2 => {
                    if vs[0].1 as i32 * vs[1].1 as i32 != -1 {
                        violations.push(Violation {
                            rule: "directed-edges",
                            cells: vec![self.cells[e].id.clone()],
                            detail: "vertex signs must multiply to -1".into(),
                        });
                    }
                }
                1 if !self.closed => {}
                n => {
                    violations.push(Violation {
                        rule: "directed-edges",
                        cells: vec![self.cells[e].id.clone()],
                        detail: format!("edge has {n} incident vertices"),
                    });
                }
            }
        }

        // Regularity: for every vertex-face incident pair, the signed paths
        // through edges cancel.
        for f in self.cells_of_dim(2) {
            let mut vertex_sums: HashMap<usize, i32> = HashMap::new();
            for &(e, se) in &self.down[f] {
                if self.cells[e].dim != 1 {
                    continue;
                }
                for &(v, sv) in &self.down[e] {
                    *vertex_sums.entry(v).or_insert(0) += sv as i32 * se as i32;
                }
            }
            for (v, sum) in vertex_sums {
                if sum != 0 {
                    violations.push(Violation {
                        rule: "regularity",
                        cells: vec![self.cells[v].id.clone(), self.cells[f].id.clone()],
                        detail: format!("signed incidence sum is {sum}, expected 0"),
                    });
                }
            }
        }

        if self.closed {
            // Each edge bounded by exactly two faces with opposite signs
            // (coherent orientation of the surface).
            for e in self.cells_of_dim(1) {
                let fs = &self.up[e];
                if fs.len() != 2 {
                    violations.push(Violation {
                        rule: "closed-surface",
                        cells: vec![self.cells[e].id.clone()],
                        detail: format!("edge has {} incident faces, expected 2", fs.len()),
                    });
                } else if fs[0].1 as i32 * fs[1].1 as i32 != -1 {
                    violations.push(Violation {
                        rule: "orientation",
                        cells: vec![self.cells[e].id.clone()],
                        detail: "face signs must multiply to -1 on a coherently oriented surface"
                            .into(),
                    });
                }
            }
            let chi = self.euler_characteristic();
            if chi % 2 != 0 || chi > 2 {
                violations.push(Violation {
                    rule: "closed-surface",
                    cells: vec![],
                    detail: format!("Euler characteristic {chi} is not that of an oriented surface"),
                });
            }
        }

        ValidationReport { violations }
    }

    /// Poincaré dual of a closed oriented surface: cell dimensions flip
    /// (vertices ↔ faces), incidence signs are preserved, and dual ids are
    /// `"~"` prepended to the original ids.
    pub fn poincare_dual(&self) -> Result<CellComplex> {
        self.require_closed_surface()?;
        // Dual vertices from faces, dual edges from edges, dual faces from
        // vertices, each group in original declaration order.
        let mut cells = Vec::with_capacity(self.cells.len());
        for dim in [2, 1, 0] {
            for i in self.cells_of_dim(dim) {
                cells.push((format!("~{}", self.cells[i].id), 2 - dim));
            }
        }
        let incidence = self
            .incidence
            .iter()
            .map(|inc| {
                // c ⊲ d in X becomes ~d ⊲ ~c in the dual with the same sign.
                (
                    format!("~{}", self.cells[inc.upper].id),
                    format!("~{}", self.cells[inc.lower].id),
                    inc.sign,
                )
            })
            .collect();
        CellComplex::new(cells, incidence, true)
    }
}

/// One violated validation rule.
#[derive(Debug, Clone)]
pub struct Violation {
    pub rule: &'static str,
    pub cells: Vec<CellId>,
    pub detail: String,
}

/// Outcome of [`CellComplex::validate`]: carries every violation found.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "[{}] {} ({})", v.rule, v.detail, v.cells.join(", "))?;
        }
        Ok(())
    }
}

/// A cell complex realized in the plane.
///
/// Vertices get coordinates; open-ended edges get a unit line-of-action
/// direction in place of their missing endpoint.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub complex: Arc<CellComplex>,
    coords: HashMap<usize, [f64; 2]>,
    open_dirs: HashMap<usize, [f64; 2]>,
}

impl Diagram {
    pub fn new(
        complex: Arc<CellComplex>,
        realization: HashMap<CellId, [f64; 2]>,
        open_edge_directions: HashMap<CellId, [f64; 2]>,
    ) -> Result<Self> {
        let mut coords = HashMap::new();
        for (id, xy) in realization {
            let idx = complex
                .cell_index(&id)
                .ok_or_else(|| Error::UnknownCell(id.clone()))?;
            if complex.cell_dim(idx) != 0 {
                return Err(Error::InvalidDiagram(format!("{id:?} is not a vertex")));
            }
            if !xy.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFiniteInput("realization"));
            }
            coords.insert(idx, xy);
        }
        let mut open_dirs = HashMap::new();
        for (id, d) in open_edge_directions {
            let idx = complex
                .cell_index(&id)
                .ok_or_else(|| Error::UnknownCell(id.clone()))?;
            if complex.cell_dim(idx) != 1 {
                return Err(Error::InvalidDiagram(format!("{id:?} is not an edge")));
            }
            let norm = (d[0] * d[0] + d[1] * d[1]).sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::InvalidDiagram(format!(
                    "open edge {id:?} needs a nonzero direction"
                )));
            }
            open_dirs.insert(idx, [d[0] / norm, d[1] / norm]);
        }
        let diagram = Self {
            complex,
            coords,
            open_dirs,
        };
        diagram.check_realization()?;
        Ok(diagram)
    }

    fn check_realization(&self) -> Result<()> {
        for v in self.complex.cells_of_dim(0) {
            if !self.coords.contains_key(&v) {
                return Err(Error::InvalidDiagram(format!(
                    "vertex {:?} has no coordinates",
                    self.complex.cell_id(v)
                )));
            }
        }
        // Injectivity.
        let vs = self.complex.cells_of_dim(0);
        for (a, &i) in vs.iter().enumerate() {
            for &j in &vs[a + 1..] {
                let (p, q) = (self.coords[&i], self.coords[&j]);
                if p == q {
                    return Err(Error::InvalidDiagram(format!(
                        "vertices {:?} and {:?} share coordinates",
                        self.complex.cell_id(i),
                        self.complex.cell_id(j)
                    )));
                }
            }
        }
        for e in self.complex.cells_of_dim(1) {
            let vs = self.complex.edge_vertices(e);
            match vs.len() {
                2 => {
                    if self.edge_length(e)? == 0.0 {
                        return Err(Error::DegenerateEdge(self.complex.cell_id(e).to_string()));
                    }
                }
                1 => {
                    if !self.open_dirs.contains_key(&e) {
                        return Err(Error::InvalidDiagram(format!(
                            "open edge {:?} has no direction",
                            self.complex.cell_id(e)
                        )));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn vertex_position(&self, vertex: usize) -> [f64; 2] {
        self.coords[&vertex]
    }

    pub fn open_direction(&self, edge: usize) -> Option<[f64; 2]> {
        self.open_dirs.get(&edge).copied()
    }

    pub fn is_open_edge(&self, edge: usize) -> bool {
        self.complex.edge_vertices(edge).len() == 1
    }

    /// Unit direction of an edge, pointing from the sign -1 vertex (tail) to
    /// the sign +1 vertex (head); open edges use their stored line of action.
    pub fn edge_direction(&self, edge: usize) -> Result<[f64; 2]> {
        let vs = self.complex.edge_vertices(edge);
        match vs.len() {
            2 => {
                let tail = self.coords[&vs[0].0];
                let head = self.coords[&vs[1].0];
                let d = [head[0] - tail[0], head[1] - tail[1]];
                let norm = (d[0] * d[0] + d[1] * d[1]).sqrt();
                if norm == 0.0 {
                    return Err(Error::DegenerateEdge(self.complex.cell_id(edge).to_string()));
                }
                Ok([d[0] / norm, d[1] / norm])
            }
            1 => self
                .open_dirs
                .get(&edge)
                .copied()
                .ok_or_else(|| Error::InvalidDiagram(format!(
                    "open edge {:?} has no direction",
                    self.complex.cell_id(edge)
                ))),
            n => Err(Error::InvalidDiagram(format!(
                "edge {:?} has {n} vertices",
                self.complex.cell_id(edge)
            ))),
        }
    }

    /// Length of a closed edge.
    pub fn edge_length(&self, edge: usize) -> Result<f64> {
        let vs = self.complex.edge_vertices(edge);
        if vs.len() != 2 {
            return Err(Error::InvalidDiagram(format!(
                "edge {:?} is open-ended",
                self.complex.cell_id(edge)
            )));
        }
        let a = self.coords[&vs[0].0];
        let b = self.coords[&vs[1].0];
        Ok(((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt())
    }

    /// Centroid of the realized vertices.
    pub fn centroid(&self) -> [f64; 2] {
        let vs = self.complex.cells_of_dim(0);
        let mut c = [0.0, 0.0];
        for &v in &vs {
            c[0] += self.coords[&v][0];
            c[1] += self.coords[&v][1];
        }
        let n = vs.len().max(1) as f64;
        [c[0] / n, c[1] / n]
    }

    /// Largest coordinate magnitude; the length scale for residual gates.
    pub fn coordinate_scale(&self) -> f64 {
        self.coords
            .values()
            .flat_map(|p| p.iter())
            .fold(1.0_f64, |acc, &v| acc.max(v.abs()))
    }

    /// Copy of the realization keyed by vertex id.
    pub fn realization_by_id(&self) -> HashMap<CellId, [f64; 2]> {
        self.coords
            .iter()
            .map(|(&i, &p)| (self.complex.cell_id(i).to_string(), p))
            .collect()
    }

    /// Copy of the open-edge directions keyed by edge id.
    pub fn open_directions_by_id(&self) -> HashMap<CellId, [f64; 2]> {
        self.open_dirs
            .iter()
            .map(|(&i, &d)| (self.complex.cell_id(i).to_string(), d))
            .collect()
    }

    /// New diagram with the same complex and displaced vertex coordinates.
    pub fn with_realization(&self, coords: HashMap<usize, [f64; 2]>) -> Result<Self> {
        let by_id = coords
            .into_iter()
            .map(|(i, p)| (self.complex.cell_id(i).to_string(), p))
            .collect();
        Diagram::new(
            Arc::clone(&self.complex),
            by_id,
            self.open_directions_by_id(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn square_sphere_complex_validates() {
        let d = fixtures::unit_square();
        assert!(d.complex.validate().passed());
        assert_eq!(d.complex.euler_characteristic(), 2);
        assert_eq!(d.complex.genus().unwrap(), 0);
    }

    #[test]
    fn bad_edge_signs_fail_directed_rule() {
        let c = CellComplex::new(
            vec![("u".into(), 0), ("v".into(), 0), ("e".into(), 1)],
            vec![("u".into(), "e".into(), 1), ("v".into(), "e".into(), 1)],
            false,
        )
        .unwrap();
        let report = c.validate();
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.rule == "directed-edges"));
    }

    #[test]
    fn boxed_fixture_validates_and_is_spherical() {
        let d = fixtures::braced_square();
        let report = d.complex.validate();
        assert!(report.passed(), "{report}");
        assert_eq!(d.complex.cell_counts(), [5, 8, 5]);
        assert_eq!(d.complex.euler_characteristic(), 2);
        assert_eq!(d.complex.genus().unwrap(), 0);
    }

    #[test]
    fn toroidal_grid_counts_and_genus() {
        let d = fixtures::toroidal_grid();
        let report = d.complex.validate();
        assert!(report.passed(), "{report}");
        assert_eq!(d.complex.cell_counts(), [9, 18, 9]);
        assert_eq!(d.complex.euler_characteristic(), 0);
        assert_eq!(d.complex.genus().unwrap(), 1);
    }

    #[test]
    fn poincare_dual_swaps_counts_and_preserves_incidence_size() {
        let d = fixtures::braced_square();
        let dual = d.complex.poincare_dual().unwrap();
        assert!(dual.validate().passed());
        assert_eq!(dual.cell_counts(), [5, 8, 5]);
        assert_eq!(dual.incidences().len(), d.complex.incidences().len());
    }

    #[test]
    fn double_dual_is_isomorphic_via_id_mapping() {
        for d in fixtures::closed_suite() {
            let dd = d.complex.poincare_dual().unwrap().poincare_dual().unwrap();
            assert_eq!(dd.num_cells(), d.complex.num_cells());
            for i in 0..d.complex.num_cells() {
                let id = d.complex.cell_id(i);
                let j = dd.cell_index(&format!("~~{id}")).expect("double-dual id");
                assert_eq!(dd.cell_dim(j), d.complex.cell_dim(i));
            }
            // Same signed incidence set under the id mapping.
            let mut expect: Vec<(String, String, i8)> = d
                .complex
                .incidences()
                .iter()
                .map(|inc| {
                    (
                        format!("~~{}", d.complex.cell_id(inc.lower)),
                        format!("~~{}", d.complex.cell_id(inc.upper)),
                        inc.sign,
                    )
                })
                .collect();
            let mut got: Vec<(String, String, i8)> = dd
                .incidences()
                .iter()
                .map(|inc| {
                    (
                        dd.cell_id(inc.lower).to_string(),
                        dd.cell_id(inc.upper).to_string(),
                        inc.sign,
                    )
                })
                .collect();
            expect.sort();
            got.sort();
            assert_eq!(expect, got);
        }
    }

    #[test]
    fn open_truss_euler_counts_present_cells_only() {
        let d = fixtures::open_truss();
        let report = d.complex.validate();
        assert!(report.passed(), "{report}");
        let [v, e, f] = d.complex.cell_counts();
        assert_eq!(d.complex.euler_characteristic(), v as i64 - e as i64 + f as i64);
        // Open disk topology.
        assert_eq!(d.complex.euler_characteristic(), 1);
        assert!(d.complex.genus().is_err());
    }

    #[test]
    fn genus_two_fixture() {
        let d = fixtures::genus_two();
        let report = d.complex.validate();
        assert!(report.passed(), "{report}");
        assert_eq!(d.complex.euler_characteristic(), -2);
        assert_eq!(d.complex.genus().unwrap(), 2);
    }
}
