//! Reciprocal (force) diagrams and the mechanics they transport.
//!
//! A self-stress of a form diagram integrates to a realization of the dual
//! complex: across each edge the dual vertices of the two incident faces
//! differ by the stress-scaled edge direction (Cremona convention) or its
//! quarter turn (Maxwell convention). Mechanisms transfer to impossible
//! rotation cochains on the dual, and five spaces attached to the pair of
//! diagrams are isomorphic.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use nalgebra::DVector;

use crate::complex::{CellId, Diagram};
use crate::error::Error;
use crate::numerics::{self, Tolerance};
use crate::sheaf::connecting_homomorphism;
use crate::statics::{
    self, force_cosheaf, position_dual_cosheaf, position_sheaf, quarter_turn_vec, FreedomMode,
    ModeKind, SelfStress, StaticsWorkspace,
};
use crate::Result;

/// Drawing convention for dual diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Dual edges parallel to their primal counterparts.
    Cremona,
    /// Dual edges perpendicular (the Cremona drawing rotated a quarter turn).
    Maxwell,
}

/// A realization of the dual complex: one coordinate per primal face.
#[derive(Debug, Clone)]
pub struct DualRealization {
    pub convention: Convention,
    /// Coordinates keyed by primal face id.
    pub coordinates: BTreeMap<CellId, [f64; 2]>,
}

impl DualRealization {
    /// Vector between the dual vertices of the two faces of an edge, ordered
    /// positive face minus negative face.
    pub fn dual_edge_vector(&self, diagram: &Diagram, edge: usize) -> Option<[f64; 2]> {
        let (f_pos, f_neg) = edge_face_pair(diagram, edge)?;
        let qp = self.coordinates[diagram.complex.cell_id(f_pos)];
        let qn = self.coordinates[diagram.complex.cell_id(f_neg)];
        Some([qp[0] - qn[0], qp[1] - qn[1]])
    }

    /// Longest dual edge; the nontriviality measure.
    pub fn max_dual_edge_length(&self, diagram: &Diagram) -> f64 {
        diagram
            .complex
            .cells_of_dim(1)
            .into_iter()
            .filter_map(|e| self.dual_edge_vector(diagram, e))
            .map(|v| (v[0] * v[0] + v[1] * v[1]).sqrt())
            .fold(0.0, f64::max)
    }

    /// The same realization rotated a quarter turn (swaps conventions).
    pub fn quarter_turn(&self) -> DualRealization {
        DualRealization {
            convention: match self.convention {
                Convention::Cremona => Convention::Maxwell,
                Convention::Maxwell => Convention::Cremona,
            },
            coordinates: self
                .coordinates
                .iter()
                .map(|(k, &v)| (k.clone(), quarter_turn_vec(v)))
                .collect(),
        }
    }

    /// Realize the dual complex as a diagram. Closed surfaces dualize to the
    /// full Poincaré dual; open complexes yield the dual one-skeleton.
    pub fn as_diagram(&self, diagram: &Diagram) -> Result<Diagram> {
        let complex = if diagram.complex.is_closed() {
            Arc::new(diagram.complex.poincare_dual()?)
        } else {
            let mut cells: Vec<(CellId, usize)> = Vec::new();
            let mut incidence = Vec::new();
            for f in diagram.complex.cells_of_dim(2) {
                cells.push((format!("~{}", diagram.complex.cell_id(f)), 0));
            }
            for e in diagram.complex.cells_of_dim(1) {
                if diagram.complex.edge_faces(e).len() != 2 {
                    continue;
                }
                let id = format!("~{}", diagram.complex.cell_id(e));
                cells.push((id.clone(), 1));
                for &(f, s) in diagram.complex.edge_faces(e) {
                    incidence.push((format!("~{}", diagram.complex.cell_id(f)), id.clone(), s));
                }
            }
            Arc::new(crate::complex::CellComplex::new(cells, incidence, false)?)
        };
        let realization = self
            .coordinates
            .iter()
            .map(|(id, &q)| (format!("~{id}"), q))
            .collect();
        Diagram::new(complex, realization, HashMap::new())
    }
}

/// The two faces of an edge ordered by incidence sign (+, -).
fn edge_face_pair(diagram: &Diagram, edge: usize) -> Option<(usize, usize)> {
    let fs = diagram.complex.edge_faces(edge);
    if fs.len() != 2 {
        return None;
    }
    match (fs[0], fs[1]) {
        ((f, 1), (g, -1)) | ((g, -1), (f, 1)) => Some((f, g)),
        _ => None,
    }
}

fn require_two_sided_edges(diagram: &Diagram) -> Result<()> {
    for e in diagram.complex.cells_of_dim(1) {
        if edge_face_pair(diagram, e).is_none() {
            return Err(Error::NotClosedSurface(format!(
                "edge {} is not bounded by a coherently signed face pair",
                diagram.complex.cell_id(e)
            )));
        }
    }
    Ok(())
}

/// Integrate a self-stress to a dual realization over a spanning tree of the
/// dual one-skeleton, pinning the lowest face id at the origin. The closure
/// residual over every non-tree edge certifies that the input was a cycle.
pub fn reciprocal_diagram(
    diagram: &Diagram,
    stress: &SelfStress,
    convention: Convention,
    tol: Tolerance,
) -> Result<DualRealization> {
    reciprocal_with_traversal(diagram, stress, convention, tol, false)
}

/// As [`reciprocal_diagram`], with a depth-first spanning tree instead of
/// breadth-first; the result is identical up to roundoff by path
/// independence.
pub fn reciprocal_with_traversal(
    diagram: &Diagram,
    stress: &SelfStress,
    convention: Convention,
    tol: Tolerance,
    depth_first: bool,
) -> Result<DualRealization> {
    require_two_sided_edges(diagram)?;
    // The stress must be a cycle of the force cosheaf.
    let force = force_cosheaf(diagram)?;
    let cc = force.chain_complex(tol)?;
    let residual = cc.cycle_residual(1, &stress.chain);
    let gate = tol.residual_gate(stress.chain.norm().max(1.0));
    if residual > gate {
        return Err(Error::NotACycle {
            residual,
            tol: gate,
        });
    }

    let faces = diagram.complex.cells_of_dim(2);
    let base = faces
        .iter()
        .copied()
        .min_by_key(|&f| diagram.complex.cell_id(f).to_string())
        .ok_or_else(|| Error::NotClosedSurface("no faces to dualize".into()))?;

    // Jump across edge e into face f: q_f - q_g = [e:f] w_e dir(e).
    let jump = |edge: usize| -> Result<[f64; 2]> {
        let w = stress.values[diagram.complex.cell_id(edge)];
        let d = diagram.edge_direction(edge)?;
        let v = match convention {
            Convention::Cremona => d,
            Convention::Maxwell => quarter_turn_vec(d),
        };
        Ok([w * v[0], w * v[1]])
    };

    let mut coords: HashMap<usize, [f64; 2]> = HashMap::new();
    coords.insert(base, [0.0, 0.0]);
    let mut frontier: VecDeque<usize> = VecDeque::from([base]);
    while let Some(f) = if depth_first {
        frontier.pop_back()
    } else {
        frontier.pop_front()
    } {
        let qf = coords[&f];
        for &(e, sign_f) in diagram.complex.lower(f) {
            if diagram.complex.cell_dim(e) != 1 {
                continue;
            }
            let Some((fp, fn_)) = edge_face_pair(diagram, e) else {
                continue;
            };
            let other = if fp == f { fn_ } else { fp };
            if coords.contains_key(&other) {
                continue;
            }
            let dq = jump(e)?;
            // q_{f+} - q_{f-} = jump; walk from f to the other side.
            let q_other = if sign_f == 1 {
                [qf[0] - dq[0], qf[1] - dq[1]]
            } else {
                [qf[0] + dq[0], qf[1] + dq[1]]
            };
            coords.insert(other, q_other);
            frontier.push_back(other);
        }
    }
    if coords.len() != faces.len() {
        return Err(Error::NotClosedSurface(
            "dual one-skeleton is disconnected".into(),
        ));
    }

    // Closure over every edge (tree edges hold by construction).
    let scale = diagram.coordinate_scale() * stress.chain.norm().max(1.0);
    for e in diagram.complex.cells_of_dim(1) {
        let (fp, fn_) = edge_face_pair(diagram, e).unwrap();
        let dq = jump(e)?;
        let (qp, qn) = (coords[&fp], coords[&fn_]);
        let rx = qp[0] - qn[0] - dq[0];
        let ry = qp[1] - qn[1] - dq[1];
        let closure = (rx * rx + ry * ry).sqrt();
        if closure > 1e-9 * scale.max(1.0) {
            return Err(Error::NotACycle {
                residual: closure,
                tol: 1e-9 * scale.max(1.0),
            });
        }
    }

    Ok(DualRealization {
        convention,
        coordinates: coords
            .into_iter()
            .map(|(f, q)| (diagram.complex.cell_id(f).to_string(), q))
            .collect(),
    })
}

/// Recover the generating stress from a dual realization through the long
/// exact sequence: the realization is a 2-cycle of the quotient cosheaf and
/// the connecting homomorphism lands in the self-stress space.
pub fn stress_from_dual_zigzag(
    workspace: &StaticsWorkspace,
    diagram: &Diagram,
    dual: &DualRealization,
) -> Result<DVector<f64>> {
    assert_eq!(dual.convention, Convention::Cremona);
    let layout = workspace.quotient.layout(2);
    let mut z = DVector::zeros(layout.total);
    for (pos, &f) in layout.cells.iter().enumerate() {
        let q = dual.coordinates[diagram.complex.cell_id(f)];
        let o = layout.offsets[pos];
        // Face stalks of the quotient carry the full plane with the identity
        // basis, so dual coordinates embed directly.
        z[o] = q[0];
        z[o + 1] = q[1];
    }
    connecting_homomorphism(
        &workspace.embedding,
        &workspace.projection,
        2,
        &z,
        workspace.tol,
    )
}

/// Genus-based existence guarantee for reciprocal diagrams: on a genus-g
/// surface, more than 4g self-stresses force a nontrivial parallel dual
/// realization.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GenusCheck {
    pub genus: u32,
    pub dim_self_stress: usize,
    pub bound: usize,
    pub guaranteed: bool,
    /// Longest dual edge of the produced witness (0 when none exists).
    pub witness_max_edge: f64,
}

/// Check the 4g bound and, when it guarantees existence, produce a witness
/// realization from the second homology of the quotient cosheaf.
pub fn genus_existence_check(
    diagram: &Diagram,
    tol: Tolerance,
) -> Result<(GenusCheck, Option<DualRealization>)> {
    diagram.complex.require_closed_surface()?;
    let genus = diagram.complex.genus()?;
    let stresses = statics::self_stresses(diagram, tol)?;
    let bound = 4 * genus as usize;
    let guaranteed = stresses.len() > bound;
    let witness = nontrivial_dual_realization(diagram, tol)?;
    let witness_max_edge = witness
        .as_ref()
        .map(|w| w.max_dual_edge_length(diagram))
        .unwrap_or(0.0);
    Ok((
        GenusCheck {
            genus,
            dim_self_stress: stresses.len(),
            bound,
            guaranteed,
            witness_max_edge,
        },
        witness,
    ))
}

/// Space of parallel dual realizations beyond global translation, read off
/// the second homology of the quotient cosheaf. Returns a representative if
/// one exists.
pub fn nontrivial_dual_realization(
    diagram: &Diagram,
    tol: Tolerance,
) -> Result<Option<DualRealization>> {
    let ws = StaticsWorkspace::new(diagram, tol)?;
    let basis = nontrivial_dual_basis(&ws, diagram)?;
    Ok(basis.into_iter().next())
}

/// All dual-realization classes orthogonal to the global translations.
pub fn nontrivial_dual_basis(
    ws: &StaticsWorkspace,
    diagram: &Diagram,
) -> Result<Vec<DualRealization>> {
    let cc = ws.quotient.chain_complex(ws.tol)?;
    let cycles = numerics::kernel_basis(&cc.outgoing(2), ws.tol)?;
    // Global translations: the same vector on every face.
    let layout = ws.quotient.layout(2);
    let mut translations = nalgebra::DMatrix::zeros(layout.total, 2);
    for (pos, _) in layout.cells.iter().enumerate() {
        let o = layout.offsets[pos];
        translations[(o, 0)] = 1.0;
        translations[(o + 1, 1)] = 1.0;
    }
    let projected = &cycles * (cycles.transpose() * &translations);
    let nontrivial = numerics::quotient_basis(&cycles, &projected, ws.tol)?;
    let mut result = Vec::new();
    for j in 0..nontrivial.ncols() {
        let col = nontrivial.column(j);
        let mut coordinates = BTreeMap::new();
        for (pos, &f) in layout.cells.iter().enumerate() {
            let o = layout.offsets[pos];
            coordinates.insert(
                diagram.complex.cell_id(f).to_string(),
                [col[o], col[o + 1]],
            );
        }
        result.push(DualRealization {
            convention: Convention::Cremona,
            coordinates,
        });
    }
    Ok(result)
}

/// A rotation cochain over dual edges, with its harmonic certificate.
#[derive(Debug, Clone)]
pub struct EdgeRotationCochain {
    /// Rotation coefficient per dual edge id.
    pub values: BTreeMap<CellId, f64>,
    /// Norm of the component in H^1 of the dual position sheaf; nonzero
    /// certifies an impossible rotation system.
    pub harmonic_norm: f64,
}

/// Transfer a freedom mode of the primal diagram to edge rotations of the
/// dual. Edges in tension flip the rotation sense; the harmonic component
/// over the dual position sheaf certifies impossibility (zero exactly for
/// global translations).
pub fn transfer_mechanism(
    diagram: &Diagram,
    dual: &DualRealization,
    mode: &FreedomMode,
    tol: Tolerance,
) -> Result<EdgeRotationCochain> {
    require_two_sided_edges(diagram)?;
    let dual_diagram = dual.as_diagram(diagram)?;
    let sheaf = position_sheaf(&dual_diagram)?;
    let layout = sheaf.layout(1);
    let mut cochain = DVector::zeros(layout.total);
    let mut values = BTreeMap::new();
    for &de in &layout.cells {
        let dual_id = dual_diagram.complex.cell_id(de).to_string();
        let primal_id = dual_id.strip_prefix('~').unwrap_or(&dual_id).to_string();
        let e = diagram
            .complex
            .cell_index(&primal_id)
            .ok_or_else(|| Error::UnknownCell(primal_id.clone()))?;
        let vs = diagram.complex.edge_vertices(e);
        if vs.len() != 2 {
            return Err(Error::InvalidDiagram(
                "mechanism transfer needs closed edges".into(),
            ));
        }
        let d = diagram.edge_direction(e)?;
        let n = quarter_turn_vec(d);
        let len = diagram.edge_length(e)?;
        let xi_tail = mode.vertex_vectors[diagram.complex.cell_id(vs[0].0)];
        let xi_head = mode.vertex_vectors[diagram.complex.cell_id(vs[1].0)];
        let rotation =
            ((xi_head[0] - xi_tail[0]) * n[0] + (xi_head[1] - xi_tail[1]) * n[1]) / len;
        // Stress sign read off the dual edge itself (Cremona: the dual edge
        // vector is the stress-scaled direction).
        let dq = dual
            .dual_edge_vector(diagram, e)
            .expect("two-sided edge");
        let w = match dual.convention {
            Convention::Cremona => dq[0] * d[0] + dq[1] * d[1],
            Convention::Maxwell => {
                let nd = quarter_turn_vec(d);
                dq[0] * nd[0] + dq[1] * nd[1]
            }
        };
        let transferred = if w > 0.0 { -rotation } else { rotation };
        let (off, width) = layout.block(de).expect("dual edge block");
        debug_assert_eq!(width, 1);
        cochain[off] = transferred;
        values.insert(dual_id, transferred);
    }
    let h1 = sheaf.homology(1, tol)?;
    let harmonic_norm = h1.class_coefficients(&cochain).norm();
    Ok(EdgeRotationCochain {
        values,
        harmonic_norm,
    })
}

/// The five isomorphic spaces attached to a reciprocal pair of spherical
/// diagrams.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ReciprocityReport {
    /// Mechanisms and global rotations of the primal.
    pub primal_nontranslation_freedoms: usize,
    /// Parallel deformations of the primal modulo translation.
    pub primal_parallel_deformations: usize,
    /// Impossible edge rotations over the dual.
    pub dual_impossible_rotations: usize,
    /// Self-shear stresses over the dual.
    pub dual_self_shear: usize,
    /// Axial self-stresses over the dual.
    pub dual_self_stresses: usize,
    pub all_equal: bool,
}

pub fn reciprocity_report(
    diagram: &Diagram,
    dual: &DualRealization,
    tol: Tolerance,
) -> Result<ReciprocityReport> {
    let modes = statics::freedom_modes(diagram, tol)?;
    let primal_nontranslation_freedoms = modes
        .iter()
        .filter(|m| m.kind != ModeKind::Translation)
        .count();
    let (h0_pos, _) = statics::position_homology_dims(diagram, tol)?;
    let primal_parallel_deformations = h0_pos - 2;

    let dual_diagram = dual.as_diagram(diagram)?;
    let dual_position = position_sheaf(&dual_diagram)?;
    let dual_impossible_rotations = dual_position.homology(1, tol)?.dim();
    let dual_shear = position_dual_cosheaf(&dual_diagram)?;
    let dual_self_shear = dual_shear.homology(1, tol)?.dim();
    let dual_force = force_cosheaf(&dual_diagram)?;
    let dual_self_stresses = dual_force.homology(1, tol)?.dim();

    let dims = [
        primal_nontranslation_freedoms,
        primal_parallel_deformations,
        dual_impossible_rotations,
        dual_self_shear,
        dual_self_stresses,
    ];
    Ok(ReciprocityReport {
        primal_nontranslation_freedoms,
        primal_parallel_deformations,
        dual_impossible_rotations,
        dual_self_shear,
        dual_self_stresses,
        all_equal: dims.iter().all(|&d| d == dims[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn braced_square_dual() -> (Diagram, SelfStress, DualRealization) {
        let d = fixtures::braced_square();
        let stress = statics::self_stresses(&d, tol()).unwrap().remove(0);
        let dual = reciprocal_diagram(&d, &stress, Convention::Cremona, tol()).unwrap();
        (d, stress, dual)
    }

    #[test]
    fn braced_square_dual_edge_lengths() {
        let (d, stress, dual) = braced_square_dual();
        let scale = stress.values["e_ab"].abs();
        // Ring edges carry unit force, braces sqrt(2), up to the generator's
        // overall scale.
        for e in ["e_ab", "e_bc", "e_cd", "e_da"] {
            let idx = d.complex.cell_index(e).unwrap();
            let v = dual.dual_edge_vector(&d, idx).unwrap();
            assert_relative_eq!((v[0] * v[0] + v[1] * v[1]).sqrt() / scale, 1.0, epsilon = 1e-9);
        }
        for e in ["e_oa", "e_ob", "e_oc", "e_od"] {
            let idx = d.complex.cell_index(e).unwrap();
            let v = dual.dual_edge_vector(&d, idx).unwrap();
            assert_relative_eq!(
                (v[0] * v[0] + v[1] * v[1]).sqrt() / scale,
                2.0_f64.sqrt(),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn oriented_length_law() {
        let (d, stress, dual) = braced_square_dual();
        for e in d.complex.cells_of_dim(1) {
            let v = dual.dual_edge_vector(&d, e).unwrap();
            let dir = d.edge_direction(e).unwrap();
            let w = stress.values[d.complex.cell_id(e)];
            assert_relative_eq!(v[0] * dir[0] + v[1] * dir[1], w, epsilon = 1e-9);
        }
    }

    #[test]
    fn zero_stress_collapses_dual() {
        let d = fixtures::unit_square();
        let force = force_cosheaf(&d).unwrap();
        let zero = SelfStress::from_chain(&d, &force, DVector::zeros(4));
        let dual = reciprocal_diagram(&d, &zero, Convention::Cremona, tol()).unwrap();
        assert!(dual.max_dual_edge_length(&d) < 1e-15);
        for q in dual.coordinates.values() {
            assert_relative_eq!(q[0], 0.0, epsilon = 1e-15);
            assert_relative_eq!(q[1], 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn non_cycle_is_rejected() {
        let d = fixtures::braced_square();
        let force = force_cosheaf(&d).unwrap();
        let mut chain = DVector::zeros(8);
        chain[0] = 1.0; // a single loaded edge is not in equilibrium
        let bogus = SelfStress::from_chain(&d, &force, chain);
        assert!(matches!(
            reciprocal_diagram(&d, &bogus, Convention::Cremona, tol()),
            Err(Error::NotACycle { .. })
        ));
    }

    #[test]
    fn path_independence_of_integration() {
        let (d, stress, _) = braced_square_dual();
        let bfs = reciprocal_with_traversal(&d, &stress, Convention::Cremona, tol(), false).unwrap();
        let dfs = reciprocal_with_traversal(&d, &stress, Convention::Cremona, tol(), true).unwrap();
        // Same pinning makes them directly comparable.
        for (f, q) in &bfs.coordinates {
            let p = dfs.coordinates[f];
            assert_relative_eq!(q[0], p[0], epsilon = 1e-9);
            assert_relative_eq!(q[1], p[1], epsilon = 1e-9);
        }
    }

    #[test]
    fn reciprocation_is_linear_in_the_stress() {
        let d = fixtures::strutted_frame();
        let stresses = statics::self_stresses(&d, tol()).unwrap();
        let s = &stresses[0];
        let force = force_cosheaf(&d).unwrap();
        let doubled = SelfStress::from_chain(&d, &force, &s.chain * 2.0);
        let single = reciprocal_diagram(&d, s, Convention::Cremona, tol()).unwrap();
        let double = reciprocal_diagram(&d, &doubled, Convention::Cremona, tol()).unwrap();
        for (f, q) in &single.coordinates {
            let p = double.coordinates[f];
            assert_relative_eq!(2.0 * q[0], p[0], epsilon = 1e-9);
            assert_relative_eq!(2.0 * q[1], p[1], epsilon = 1e-9);
        }
    }

    #[test]
    fn zigzag_recovers_stress_up_to_scale() {
        let (d, stress, dual) = braced_square_dual();
        let ws = StaticsWorkspace::new(&d, tol()).unwrap();
        let recovered = stress_from_dual_zigzag(&ws, &d, &dual).unwrap();
        // Proportional to the generator.
        let cos = recovered.dot(&stress.chain) / (recovered.norm() * stress.chain.norm());
        assert!(cos.abs() > 1.0 - 1e-8, "cosine {cos}");
    }

    #[test]
    fn quarter_turn_is_fourth_root_of_identity() {
        let v = [0.3, -1.7];
        let mut w = v;
        for _ in 0..4 {
            w = quarter_turn_vec(w);
        }
        assert_relative_eq!(w[0], v[0], epsilon = 1e-15);
        assert_relative_eq!(w[1], v[1], epsilon = 1e-15);
        assert_eq!(quarter_turn_vec([1.0, 0.0]), [0.0, 1.0]);
    }

    #[test]
    fn quarter_turn_conjugates_force_into_position_dual() {
        let d = fixtures::braced_square();
        let force = force_cosheaf(&d).unwrap();
        let shear = position_dual_cosheaf(&d).unwrap();
        for e in d.complex.cells_of_dim(1) {
            for &(v, _) in &d.complex.edge_vertices(e) {
                let f = force.map(v, e).unwrap();
                let rotated = quarter_turn_vec([f[(0, 0)], f[(1, 0)]]);
                let s = shear.map(v, e).unwrap();
                assert_relative_eq!(rotated[0], s[(0, 0)], epsilon = 1e-12);
                assert_relative_eq!(rotated[1], s[(1, 0)], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn translations_transfer_to_zero_rotation() {
        let (d, _, dual) = braced_square_dual();
        let modes = statics::freedom_modes(&d, tol()).unwrap();
        for m in modes.iter().filter(|m| m.kind == ModeKind::Translation) {
            let cochain = transfer_mechanism(&d, &dual, m, tol()).unwrap();
            assert!(cochain.harmonic_norm < 1e-9);
            assert!(cochain.values.values().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn rotation_transfers_to_impossible_class() {
        let (d, _, dual) = braced_square_dual();
        let modes = statics::freedom_modes(&d, tol()).unwrap();
        let rotation = modes
            .iter()
            .find(|m| m.kind == ModeKind::Rotation)
            .expect("rotation mode");
        let cochain = transfer_mechanism(&d, &dual, rotation, tol()).unwrap();
        assert!(cochain.harmonic_norm > 1e-6);
        // Ring and brace rotations have opposite senses after the tension
        // flip.
        let ring = cochain.values["~e_ab"];
        let brace = cochain.values["~e_oa"];
        assert!(ring * brace < 0.0, "ring {ring} brace {brace}");
    }

    #[test]
    fn five_way_reciprocity_on_braced_square() {
        let (d, _, dual) = braced_square_dual();
        let report = reciprocity_report(&d, &dual, tol()).unwrap();
        assert!(report.all_equal, "{report:?}");
        assert_eq!(report.primal_nontranslation_freedoms, 1);
    }

    #[test]
    fn genus_bound_on_sphere_is_trivially_met() {
        let d = fixtures::braced_square();
        let (check, witness) = genus_existence_check(&d, tol()).unwrap();
        assert_eq!(check.bound, 0);
        assert!(check.guaranteed);
        assert!(witness.is_some());
        assert!(check.witness_max_edge > 1e-8);
    }
}
