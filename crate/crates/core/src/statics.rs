//! Statics-specific (co)sheaves over a diagram and their mechanical reading.
//!
//! The force cosheaf carries vertex loads and edge stresses; its first
//! homology is the space of axial self-stresses, its zeroth the constrained
//! degrees of freedom (rigid motions plus mechanisms). The linkage sheaf is
//! its linear dual; the position sheaf measures parallel redrawings.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::complex::{CellId, Diagram};
use crate::error::Error;
use crate::numerics::{self, Tolerance};
use crate::sheaf::{quotient_cosheaf, Cosheaf, CosheafMap, HomologySpace, Variance};
use crate::Result;

/// Rotate a vector a quarter turn counterclockwise.
pub fn quarter_turn_vec(v: [f64; 2]) -> [f64; 2] {
    [-v[1], v[0]]
}

/// Force cosheaf of a diagram: vertex stalks are the plane, edge stalks the
/// line spanned by the edge direction, face stalks zero. The extension map
/// at either endpoint includes the edge line into the plane; incidence signs
/// produce the opposing end forces.
pub fn force_cosheaf(diagram: &Diagram) -> Result<Cosheaf> {
    let base = &diagram.complex;
    let mut stalk_dims = vec![0usize; base.num_cells()];
    for v in base.cells_of_dim(0) {
        stalk_dims[v] = 2;
    }
    for e in base.cells_of_dim(1) {
        stalk_dims[e] = 1;
    }
    let mut maps = HashMap::new();
    for e in base.cells_of_dim(1) {
        let d = diagram.edge_direction(e)?;
        for &(v, _) in &base.edge_vertices(e) {
            maps.insert((v, e), DMatrix::from_column_slice(2, 1, &d));
        }
    }
    Cosheaf::new(Arc::clone(base), Variance::Cosheaf, stalk_dims, maps)
}

/// Linkage sheaf: linear dual of the force cosheaf. Its coboundary measures
/// first-order edge elongations under vertex displacements.
pub fn linkage_sheaf(diagram: &Diagram) -> Result<Cosheaf> {
    Ok(force_cosheaf(diagram)?.linear_dual())
}

/// Position sheaf: vertex stalks are covectors on the plane, edge stalks the
/// perpendicular covector line, restriction the orthogonal projection. Its
/// H^0 is the space of parallel redrawings, H^1 the impossible edge
/// rotations.
pub fn position_sheaf(diagram: &Diagram) -> Result<Cosheaf> {
    let base = &diagram.complex;
    let mut stalk_dims = vec![0usize; base.num_cells()];
    for v in base.cells_of_dim(0) {
        stalk_dims[v] = 2;
    }
    for e in base.cells_of_dim(1) {
        stalk_dims[e] = 1;
    }
    let mut maps = HashMap::new();
    for e in base.cells_of_dim(1) {
        let n = quarter_turn_vec(diagram.edge_direction(e)?);
        for &(v, _) in &base.edge_vertices(e) {
            maps.insert((v, e), DMatrix::from_row_slice(1, 2, &n));
        }
    }
    Cosheaf::new(Arc::clone(base), Variance::Sheaf, stalk_dims, maps)
}

/// Linear dual of the position sheaf: edge stalks are the perpendicular
/// lines included into the plane. Its H_1 is the space of self-shear
/// stresses.
pub fn position_dual_cosheaf(diagram: &Diagram) -> Result<Cosheaf> {
    Ok(position_sheaf(diagram)?.linear_dual())
}

/// The force cosheaf embedded in the ambient constant plane cosheaf, with
/// the quotient and projection. This short exact sequence drives reciprocal
/// diagrams and the genus bounds.
pub struct StaticsWorkspace {
    pub force: Cosheaf,
    pub ambient: Cosheaf,
    /// Inclusion of the force cosheaf into the ambient constant cosheaf.
    pub embedding: CosheafMap,
    /// Quotient cosheaf (edge stalks perpendicular lines, face stalks the
    /// full plane).
    pub quotient: Cosheaf,
    pub projection: CosheafMap,
    pub tol: Tolerance,
}

impl StaticsWorkspace {
    pub fn new(diagram: &Diagram, tol: Tolerance) -> Result<Self> {
        let force = force_cosheaf(diagram)?;
        let ambient = Cosheaf::constant(Arc::clone(&diagram.complex), 2);
        let mut components = Vec::with_capacity(diagram.complex.num_cells());
        for c in 0..diagram.complex.num_cells() {
            let m = match diagram.complex.cell_dim(c) {
                0 => DMatrix::identity(2, 2),
                1 => {
                    let d = diagram.edge_direction(c)?;
                    DMatrix::from_column_slice(2, 1, &d)
                }
                _ => DMatrix::zeros(2, 0),
            };
            components.push(m);
        }
        let embedding = CosheafMap::new(force.clone(), ambient.clone(), components)?;
        let (quotient, projection) = quotient_cosheaf(&embedding, tol)?;
        Ok(Self {
            force,
            ambient,
            embedding,
            quotient,
            projection,
            tol,
        })
    }
}

/// An axial self-stress: a cycle of the force cosheaf, tension positive.
#[derive(Debug, Clone)]
pub struct SelfStress {
    /// Value per edge id.
    pub values: BTreeMap<CellId, f64>,
    /// The same values as a chain vector in edge-layout order.
    pub chain: DVector<f64>,
}

impl SelfStress {
    pub fn from_chain(diagram: &Diagram, force: &Cosheaf, chain: DVector<f64>) -> Self {
        let layout = force.layout(1);
        let mut values = BTreeMap::new();
        for (pos, &e) in layout.cells.iter().enumerate() {
            values.insert(
                diagram.complex.cell_id(e).to_string(),
                chain[layout.offsets[pos]],
            );
        }
        Self { values, chain }
    }
}

/// Classification of a degree-of-freedom mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Translation,
    Rotation,
    Mechanism,
}

/// A constrained degree of freedom: a harmonic representative of H_0 of the
/// force cosheaf, read as a vector per vertex.
#[derive(Debug, Clone)]
pub struct FreedomMode {
    pub kind: ModeKind,
    pub vertex_vectors: BTreeMap<CellId, [f64; 2]>,
    pub chain: DVector<f64>,
}

impl FreedomMode {
    fn from_chain(diagram: &Diagram, force: &Cosheaf, kind: ModeKind, chain: DVector<f64>) -> Self {
        let layout = force.layout(0);
        let mut vertex_vectors = BTreeMap::new();
        for (pos, &v) in layout.cells.iter().enumerate() {
            let o = layout.offsets[pos];
            vertex_vectors.insert(
                diagram.complex.cell_id(v).to_string(),
                [chain[o], chain[o + 1]],
            );
        }
        Self {
            kind,
            vertex_vectors,
            chain,
        }
    }
}

/// Generators of the rigid-motion subspace in vertex-chain coordinates: two
/// translations and an infinitesimal rotation about the centroid.
pub fn rigid_motion_generators(diagram: &Diagram, force: &Cosheaf) -> DMatrix<f64> {
    let layout = force.layout(0);
    let centroid = diagram.centroid();
    let mut gens = DMatrix::zeros(layout.total, 3);
    for (pos, &v) in layout.cells.iter().enumerate() {
        let o = layout.offsets[pos];
        let p = diagram.vertex_position(v);
        gens[(o, 0)] = 1.0;
        gens[(o + 1, 1)] = 1.0;
        let r = quarter_turn_vec([p[0] - centroid[0], p[1] - centroid[1]]);
        gens[(o, 2)] = r[0];
        gens[(o + 1, 2)] = r[1];
    }
    gens
}

/// Basis of self-stresses: harmonic representatives of H_1 of the force
/// cosheaf, one [`SelfStress`] per basis column.
pub fn self_stresses(diagram: &Diagram, tol: Tolerance) -> Result<Vec<SelfStress>> {
    let force = force_cosheaf(diagram)?;
    let h1 = force.homology(1, tol)?;
    Ok((0..h1.dim())
        .map(|j| SelfStress::from_chain(diagram, &force, h1.basis.column(j).into_owned()))
        .collect())
}

/// All degree-of-freedom modes: an adapted basis of H_0 of the force cosheaf
/// in which rigid motions (those surviving the boundary conditions) come
/// first, then pure mechanisms.
pub fn freedom_modes(diagram: &Diagram, tol: Tolerance) -> Result<Vec<FreedomMode>> {
    let force = force_cosheaf(diagram)?;
    let h0 = force.homology(0, tol)?;
    let gens = rigid_motion_generators(diagram, &force);
    // Rigid motions surviving inside H_0 (projected to harmonic
    // representatives; open complexes may pin some or all of them).
    let projected = &h0.basis * (h0.basis.transpose() * &gens);
    let rigid = numerics::column_space_basis(&projected, tol)?;
    let mechanisms = numerics::quotient_basis(&h0.basis, &rigid, tol)?;

    // Translation span, for classifying rigid modes.
    let translations = numerics::column_space_basis(&gens.columns(0, 2).into_owned(), tol)?;
    let mut modes = Vec::new();
    for j in 0..rigid.ncols() {
        let col = rigid.column(j).into_owned();
        let trans_part = &translations * (translations.transpose() * &col);
        let kind = if (col.clone() - trans_part).norm() < 1e-6 * col.norm() {
            ModeKind::Translation
        } else {
            ModeKind::Rotation
        };
        modes.push(FreedomMode::from_chain(diagram, &force, kind, col));
    }
    for j in 0..mechanisms.ncols() {
        modes.push(FreedomMode::from_chain(
            diagram,
            &force,
            ModeKind::Mechanism,
            mechanisms.column(j).into_owned(),
        ));
    }
    Ok(modes)
}

/// Mechanism-classified modes only.
pub fn mechanisms(diagram: &Diagram, tol: Tolerance) -> Result<Vec<FreedomMode>> {
    Ok(freedom_modes(diagram, tol)?
        .into_iter()
        .filter(|m| m.kind == ModeKind::Mechanism)
        .collect())
}

fn is_connected(diagram: &Diagram) -> bool {
    let base = &diagram.complex;
    let vs = base.cells_of_dim(0);
    if vs.is_empty() {
        return true;
    }
    let mut seen = vec![false; base.num_cells()];
    let mut stack = vec![vs[0]];
    seen[vs[0]] = true;
    while let Some(v) = stack.pop() {
        for &(e, _) in base.upper(v) {
            if base.cell_dim(e) != 1 {
                continue;
            }
            for &(w, _) in &base.edge_vertices(e) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    vs.iter().all(|&v| seen[v])
}

/// A diagram is rigid when its only degrees of freedom are the planar rigid
/// motions and the linkage is connected.
pub fn is_rigid(diagram: &Diagram, tol: Tolerance) -> Result<bool> {
    let force = force_cosheaf(diagram)?;
    let h0 = force.homology(0, tol)?;
    Ok(h0.dim() == 3 && is_connected(diagram))
}

/// Maxwell's rule as an exact integer identity between cell counts and
/// homology dimensions.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MaxwellReport {
    pub vertices: usize,
    pub closed_edges: usize,
    pub open_edges: usize,
    /// Rigid motions surviving the boundary conditions (3 for closed
    /// diagrams, possibly fewer when open edges pin translations).
    pub rigid_rank: usize,
    pub mechanisms: usize,
    pub self_stresses: usize,
    /// 2|V| - |E| over closed edges.
    pub lhs: i64,
    /// rigid + |M| - |S|, plus one per open edge.
    pub rhs: i64,
    pub holds: bool,
}

pub fn maxwell_rule_report(diagram: &Diagram, tol: Tolerance) -> Result<MaxwellReport> {
    let modes = freedom_modes(diagram, tol)?;
    let stresses = self_stresses(diagram, tol)?;
    let vertices = diagram.complex.cells_of_dim(0).len();
    let edges = diagram.complex.cells_of_dim(1);
    let open_edges = edges.iter().filter(|&&e| diagram.is_open_edge(e)).count();
    let closed_edges = edges.len() - open_edges;
    let rigid_rank = modes.iter().filter(|m| m.kind != ModeKind::Mechanism).count();
    let mechanisms = modes.len() - rigid_rank;
    let lhs = 2 * vertices as i64 - closed_edges as i64;
    let rhs = rigid_rank as i64 + mechanisms as i64 - stresses.len() as i64 + open_edges as i64;
    Ok(MaxwellReport {
        vertices,
        closed_edges,
        open_edges,
        rigid_rank,
        mechanisms,
        self_stresses: stresses.len(),
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Result of an equilibrium solve on an open diagram.
#[derive(Debug, Clone)]
pub struct EquilibriumSolution {
    /// Forces in closed (structural) edges.
    pub internal: BTreeMap<CellId, f64>,
    /// Forces in open-ended edges that were not prescribed.
    pub reactions: BTreeMap<CellId, f64>,
    /// Residual of the prescribed-value fit.
    pub residual: f64,
    /// Dimension of the self-stress space; when nonzero the returned cycle
    /// is the minimum-norm representative.
    pub null_dim: usize,
    pub stress: SelfStress,
}

/// Solve for internal and reaction forces given prescribed values on load
/// edges: find the cycle of the force cosheaf matching the prescription.
pub fn solve_equilibrium(
    diagram: &Diagram,
    prescribed: &BTreeMap<CellId, f64>,
    tol: Tolerance,
) -> Result<EquilibriumSolution> {
    if diagram.complex.is_closed() {
        return Err(Error::InvalidDiagram(
            "equilibrium solves need an open diagram with load edges".into(),
        ));
    }
    let force = force_cosheaf(diagram)?;
    let cc = force.chain_complex(tol)?;
    let cycles = numerics::kernel_basis(cc.op(0), tol)?;
    let layout = force.layout(1);

    let mut prescribed_rows = Vec::new();
    let mut rhs = Vec::new();
    for (id, value) in prescribed {
        let e = diagram
            .complex
            .cell_index(id)
            .ok_or_else(|| Error::UnknownCell(id.clone()))?;
        if !diagram.is_open_edge(e) {
            return Err(Error::InvalidDiagram(format!(
                "prescribed edge {id:?} is not open-ended"
            )));
        }
        let (off, w) = layout.block(e).expect("edge block");
        debug_assert_eq!(w, 1);
        prescribed_rows.push(off);
        rhs.push(*value);
    }
    let mut selector = DMatrix::zeros(prescribed_rows.len(), layout.total);
    for (r, &off) in prescribed_rows.iter().enumerate() {
        selector[(r, off)] = 1.0;
    }
    let system = &selector * &cycles;
    let b = DVector::from_vec(rhs);
    let (alpha, residual) = numerics::least_squares_solve(&system, &b, tol)?;
    let gate = tol.residual_gate(b.norm().max(1.0));
    if residual > gate {
        return Err(Error::Infeasible {
            residual,
            tol: gate,
        });
    }
    let chain = &cycles * alpha;
    let stress = SelfStress::from_chain(diagram, &force, chain);

    let null_dim = {
        // Cycles hitting zero on every prescribed coordinate remain free.
        numerics::kernel_basis(&system, tol)?.ncols()
    };
    let mut internal = BTreeMap::new();
    let mut reactions = BTreeMap::new();
    for (id, value) in &stress.values {
        let e = diagram.complex.cell_index(id).unwrap();
        if diagram.is_open_edge(e) {
            if !prescribed.contains_key(id) {
                reactions.insert(id.clone(), *value);
            }
        } else {
            internal.insert(id.clone(), *value);
        }
    }
    Ok(EquilibriumSolution {
        internal,
        reactions,
        residual,
        null_dim,
        stress,
    })
}

/// Convenience: dimensions of H_0/H_1 of the force cosheaf.
pub fn force_homology_dims(diagram: &Diagram, tol: Tolerance) -> Result<(usize, usize)> {
    let force = force_cosheaf(diagram)?;
    Ok((
        force.homology(0, tol)?.dim(),
        force.homology(1, tol)?.dim(),
    ))
}

/// Convenience: dimensions of H^0/H^1 of the position sheaf.
pub fn position_homology_dims(diagram: &Diagram, tol: Tolerance) -> Result<(usize, usize)> {
    let sheaf = position_sheaf(diagram)?;
    Ok((
        sheaf.homology(0, tol)?.dim(),
        sheaf.homology(1, tol)?.dim(),
    ))
}

/// Harmonic H_1 space of the force cosheaf (the self-stress space).
pub fn stress_space(diagram: &Diagram, tol: Tolerance) -> Result<(Cosheaf, HomologySpace)> {
    let force = force_cosheaf(diagram)?;
    let h1 = force.homology(1, tol)?;
    Ok((force, h1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn single_edge_extension_maps_are_unit_direction() {
        let d = fixtures::single_edge();
        let force = force_cosheaf(&d).unwrap();
        let e = d.complex.cell_index("e").unwrap();
        for &(v, _) in &d.complex.edge_vertices(e) {
            let m = force.map(v, e).unwrap();
            assert_relative_eq!(m[(0, 0)], 1.0, epsilon = 1e-15);
            assert_relative_eq!(m[(1, 0)], 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn braced_square_stress_generator() {
        let d = fixtures::braced_square();
        let stresses = self_stresses(&d, tol()).unwrap();
        assert_eq!(stresses.len(), 1);
        let s = &stresses[0];
        // Proportional to 1 on the ring, -sqrt(2) on the braces.
        let ring = s.values["e_ab"];
        assert!(ring.abs() > 1e-8);
        for e in ["e_bc", "e_cd", "e_da"] {
            assert_relative_eq!(s.values[e] / ring, 1.0, epsilon = 1e-9);
        }
        for e in ["e_oa", "e_ob", "e_oc", "e_od"] {
            assert_relative_eq!(s.values[e] / ring, -2.0_f64.sqrt(), epsilon = 1e-9);
        }
    }

    #[test]
    fn braced_square_is_rigid_with_three_rigid_modes() {
        let d = fixtures::braced_square();
        let (h0, h1) = force_homology_dims(&d, tol()).unwrap();
        assert_eq!((h0, h1), (3, 1));
        assert!(is_rigid(&d, tol()).unwrap());
        let modes = freedom_modes(&d, tol()).unwrap();
        let kinds: Vec<_> = modes.iter().map(|m| m.kind).collect();
        assert_eq!(
            kinds.iter().filter(|&&k| k == ModeKind::Translation).count(),
            2
        );
        assert_eq!(kinds.iter().filter(|&&k| k == ModeKind::Rotation).count(), 1);
        assert_eq!(kinds.iter().filter(|&&k| k == ModeKind::Mechanism).count(), 0);
    }

    #[test]
    fn four_bar_has_one_mechanism_no_stress() {
        let d = fixtures::four_bar();
        let (h0, h1) = force_homology_dims(&d, tol()).unwrap();
        assert_eq!((h0, h1), (4, 0));
        assert!(!is_rigid(&d, tol()).unwrap());
        assert_eq!(mechanisms(&d, tol()).unwrap().len(), 1);
    }

    #[test]
    fn triangle_is_rigid() {
        let d = fixtures::triangle();
        let (h0, h1) = force_homology_dims(&d, tol()).unwrap();
        assert_eq!((h0, h1), (3, 0));
        assert!(is_rigid(&d, tol()).unwrap());
    }

    #[test]
    fn single_edge_admits_only_rigid_motions() {
        let d = fixtures::single_edge();
        let (h0, h1) = force_homology_dims(&d, tol()).unwrap();
        assert_eq!((h0, h1), (3, 0));
        assert!(is_rigid(&d, tol()).unwrap());
    }

    #[test]
    fn maxwell_rule_on_reference_fixtures() {
        for (name, d) in fixtures::named_fixtures() {
            let r = maxwell_rule_report(&d, tol()).unwrap();
            assert!(r.holds, "Maxwell identity fails on {name}: {r:?}");
        }
        let boxed = maxwell_rule_report(&fixtures::braced_square(), tol()).unwrap();
        assert_eq!((boxed.lhs, boxed.rhs), (2, 2));
        assert_eq!((boxed.mechanisms, boxed.self_stresses), (0, 1));
        let four_bar = maxwell_rule_report(&fixtures::four_bar(), tol()).unwrap();
        assert_eq!((four_bar.lhs, four_bar.rhs), (4, 4));
        assert_eq!((four_bar.mechanisms, four_bar.self_stresses), (1, 0));
        let tri = maxwell_rule_report(&fixtures::triangle(), tol()).unwrap();
        assert_eq!((tri.lhs, tri.rhs), (3, 3));
        assert_eq!((tri.mechanisms, tri.self_stresses), (0, 0));
    }

    #[test]
    fn rigid_modes_lie_in_cokernel() {
        // The three generated rigid modes are orthogonal to im(d1) for closed
        // diagrams: the boundary transpose annihilates them.
        for d in [fixtures::braced_square(), fixtures::unit_square(), fixtures::triangle()] {
            let force = force_cosheaf(&d).unwrap();
            let cc = force.chain_complex(tol()).unwrap();
            let gens = rigid_motion_generators(&d, &force);
            let residual = cc.op(0).transpose() * &gens;
            assert!(numerics::fro_norm(&residual) < 1e-12);
        }
    }

    #[test]
    fn position_sheaf_dims() {
        let square = fixtures::unit_square();
        assert_eq!(position_homology_dims(&square, tol()).unwrap(), (4, 0));
        let boxed = fixtures::braced_square();
        assert_eq!(position_homology_dims(&boxed, tol()).unwrap(), (3, 1));
    }

    #[test]
    fn self_shear_dimension_matches_impossible_rotations() {
        let d = fixtures::braced_square();
        let shear = position_dual_cosheaf(&d).unwrap();
        assert_eq!(shear.homology(1, tol()).unwrap().dim(), 1);
    }

    #[test]
    fn linkage_sheaf_dims_match_force_dims() {
        let d = fixtures::braced_square();
        let linkage = linkage_sheaf(&d).unwrap();
        assert_eq!(linkage.homology(0, tol()).unwrap().dim(), 3);
        assert_eq!(linkage.homology(1, tol()).unwrap().dim(), 1);
    }

    #[test]
    fn stress_satisfies_vertex_equilibrium() {
        for (_, d) in fixtures::named_fixtures() {
            let force = force_cosheaf(&d).unwrap();
            let cc = force.chain_complex(tol()).unwrap();
            for s in self_stresses(&d, tol()).unwrap() {
                let residual = (cc.op(0) * &s.chain).norm();
                assert!(residual <= 1e-9 * s.chain.norm().max(1.0) * 4.0);
            }
        }
    }

    #[test]
    fn equilibrium_solve_on_open_truss() {
        let d = fixtures::open_truss();
        // Zero loads give the zero solution (statically determinate).
        let zero = BTreeMap::from([("load".to_string(), 0.0)]);
        let sol = solve_equilibrium(&d, &zero, tol()).unwrap();
        assert!(sol.stress.chain.norm() < 1e-12);
        // A unit load yields a unique equilibrium set.
        let unit = BTreeMap::from([("load".to_string(), 1.0)]);
        let sol = solve_equilibrium(&d, &unit, tol()).unwrap();
        assert!(sol.residual < 1e-9);
        assert_eq!(sol.null_dim, 0);
        assert_eq!(sol.internal.len(), 3);
        assert_eq!(sol.reactions.len(), 3);
        // Equilibrium residual of the full cycle.
        let force = force_cosheaf(&d).unwrap();
        let cc = force.chain_complex(tol()).unwrap();
        assert!((cc.op(0) * &sol.stress.chain).norm() < 1e-9);
    }

    #[test]
    fn unbalanced_load_is_infeasible() {
        // A triangle with a single load edge and no reactions cannot cancel a
        // net load.
        use crate::complex::{CellComplex, Diagram};
        use std::collections::HashMap as Map;
        let complex = Arc::new(
            CellComplex::new(
                vec![
                    ("a".into(), 0),
                    ("b".into(), 0),
                    ("c".into(), 0),
                    ("e_ab".into(), 1),
                    ("e_bc".into(), 1),
                    ("e_ca".into(), 1),
                    ("load".into(), 1),
                ],
                vec![
                    ("a".into(), "e_ab".into(), -1),
                    ("b".into(), "e_ab".into(), 1),
                    ("b".into(), "e_bc".into(), -1),
                    ("c".into(), "e_bc".into(), 1),
                    ("c".into(), "e_ca".into(), -1),
                    ("a".into(), "e_ca".into(), 1),
                    ("c".into(), "load".into(), -1),
                ],
                false,
            )
            .unwrap(),
        );
        let d = Diagram::new(
            complex,
            Map::from([
                ("a".into(), [0.0, 0.0]),
                ("b".into(), [2.0, 0.0]),
                ("c".into(), [1.0, 1.5]),
            ]),
            Map::from([("load".into(), [0.0, 1.0])]),
        )
        .unwrap();
        let unit = BTreeMap::from([("load".to_string(), 1.0)]);
        assert!(matches!(
            solve_equilibrium(&d, &unit, tol()),
            Err(Error::Infeasible { .. })
        ));
    }
}
