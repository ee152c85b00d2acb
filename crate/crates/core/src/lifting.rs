//! Maxwell–Cremona polyhedral lifting.
//!
//! Realized in the hyperplane {z = 1} of 3-space, every cell spans a
//! subspace of affine functions vanishing on it (the zero-locus cosheaf).
//! The quotient by the ambient affine functions is the affine cosheaf, whose
//! 2-cycles are exactly the polyhedral lifts: per-face affine functions that
//! glue along edges. Self-stresses integrate to lifts, and gradient
//! differences across edges recover the stress.

use std::collections::{BTreeMap, HashMap, VecDeque};

use nalgebra::{DMatrix, DVector};

use crate::complex::{CellId, Diagram};
use crate::error::Error;
use crate::numerics::{self, Tolerance};
use crate::sheaf::{quotient_cosheaf, Cosheaf, CosheafMap, Variance};
use crate::statics::{force_cosheaf, SelfStress};
use crate::Result;

/// An affine function `h(x, y) = a x + b y + c` on the realization plane.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AffineFunction {
    pub coefficients: [f64; 3],
}

impl AffineFunction {
    pub fn zero() -> Self {
        Self {
            coefficients: [0.0; 3],
        }
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        let [a, b, c] = self.coefficients;
        a * p[0] + b * p[1] + c
    }

    /// Planar gradient (the constant term drops).
    pub fn gradient(&self) -> [f64; 2] {
        [self.coefficients[0], self.coefficients[1]]
    }
}

/// A polyhedral lift: one affine function per face, with the induced vertex
/// heights.
#[derive(Debug, Clone)]
pub struct LiftFunctionSet {
    pub faces: BTreeMap<CellId, AffineFunction>,
    pub vertex_heights: BTreeMap<CellId, f64>,
}

fn homog(p: [f64; 2]) -> [f64; 3] {
    [p[0], p[1], 1.0]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// The functional spanning the zero-locus line of an edge, normalized
/// against the unit edge direction: evaluating it at a probe point measures
/// the affine jump that one unit of stress produces across the edge.
pub fn edge_zero_functional(diagram: &Diagram, edge: usize) -> Result<[f64; 3]> {
    let d = diagram.edge_direction(edge)?;
    let vs = diagram.complex.edge_vertices(edge);
    let anchor = homog(diagram.vertex_position(vs[0].0));
    Ok(cross([d[0], d[1], 0.0], anchor))
}

/// Constraint rows whose null space is the zero-locus stalk of a cell:
/// homogeneous coordinates of its vertices plus the directions of its
/// open-ended edges.
fn cell_constraints(diagram: &Diagram, cell: usize) -> DMatrix<f64> {
    let base = &diagram.complex;
    let mut rows: Vec<[f64; 3]> = Vec::new();
    let add_edge = |e: usize, rows: &mut Vec<[f64; 3]>| {
        for &(v, _) in &base.edge_vertices(e) {
            rows.push(homog(diagram.vertex_position(v)));
        }
        if let Some(dir) = diagram.open_direction(e) {
            rows.push([dir[0], dir[1], 0.0]);
        }
    };
    match base.cell_dim(cell) {
        0 => rows.push(homog(diagram.vertex_position(cell))),
        1 => add_edge(cell, &mut rows),
        _ => {
            for &(e, _) in base.lower(cell) {
                if base.cell_dim(e) == 1 {
                    add_edge(e, &mut rows);
                }
            }
        }
    }
    let mut m = DMatrix::zeros(rows.len(), 3);
    for (i, r) in rows.iter().enumerate() {
        m.set_row(i, &nalgebra::RowVector3::from_row_slice(r));
    }
    m
}

/// Zero-locus cosheaf together with the orthonormal stalk bases used to
/// express its inclusion into the ambient affine functions.
pub struct LiftingWorkspace {
    pub zero_locus: Cosheaf,
    /// Per-cell orthonormal basis of the stalk inside affine-coefficient
    /// space.
    pub stalk_bases: Vec<DMatrix<f64>>,
    pub ambient: Cosheaf,
    /// Inclusion of the zero locus into the constant affine cosheaf.
    pub inclusion: CosheafMap,
    /// The affine cosheaf (quotient of the ambient by the zero locus).
    pub affine: Cosheaf,
    pub projection: CosheafMap,
    pub tol: Tolerance,
}

impl LiftingWorkspace {
    pub fn new(diagram: &Diagram, tol: Tolerance) -> Result<Self> {
        let base = &diagram.complex;
        let mut stalk_dims = vec![0usize; base.num_cells()];
        let mut stalk_bases = Vec::with_capacity(base.num_cells());
        for c in 0..base.num_cells() {
            let constraints = cell_constraints(diagram, c);
            let basis = numerics::kernel_basis(&constraints, tol)?;
            let expected = 3usize.saturating_sub(base.cell_dim(c) + 1);
            if basis.ncols() != expected {
                return Err(Error::DegenerateCell(base.cell_id(c).to_string()));
            }
            stalk_dims[c] = basis.ncols();
            stalk_bases.push(basis);
        }
        let mut maps = HashMap::new();
        for inc in base.incidences() {
            let (lo, up) = (inc.lower, inc.upper);
            if stalk_dims[lo] == 0 || stalk_dims[up] == 0 {
                continue;
            }
            // Inclusion of the upper stalk into the lower, in the chosen
            // bases.
            maps.insert(
                (lo, up),
                stalk_bases[lo].transpose() * &stalk_bases[up],
            );
        }
        let zero_locus = Cosheaf::new(
            std::sync::Arc::clone(base),
            Variance::Cosheaf,
            stalk_dims,
            maps,
        )?;
        let ambient = Cosheaf::constant(std::sync::Arc::clone(base), 3);
        let inclusion = CosheafMap::new(
            zero_locus.clone(),
            ambient.clone(),
            stalk_bases.clone(),
        )?;
        let (affine, projection) = quotient_cosheaf(&inclusion, tol)?;
        Ok(Self {
            zero_locus,
            stalk_bases,
            ambient,
            inclusion,
            affine,
            projection,
            tol,
        })
    }

    /// Dimension of the polyhedral lift space (2-cycles of the affine
    /// cosheaf, including global affine shifts).
    pub fn lift_space_dim(&self) -> Result<usize> {
        let cc = self.affine.chain_complex(self.tol)?;
        Ok(numerics::kernel_basis(&cc.outgoing(2), self.tol)?.ncols())
    }

    /// Lift classes orthogonal to the global affine functions, as concrete
    /// per-face function sets.
    pub fn nontrivial_lifts(&self, diagram: &Diagram) -> Result<Vec<LiftFunctionSet>> {
        let cc = self.affine.chain_complex(self.tol)?;
        let cycles = numerics::kernel_basis(&cc.outgoing(2), self.tol)?;
        let layout = self.affine.layout(2);
        let mut constants = DMatrix::zeros(layout.total, 3);
        for (pos, _) in layout.cells.iter().enumerate() {
            let o = layout.offsets[pos];
            for k in 0..3 {
                constants[(o + k, k)] = 1.0;
            }
        }
        let projected = &cycles * (cycles.transpose() * &constants);
        let nontrivial = numerics::quotient_basis(&cycles, &projected, self.tol)?;
        let mut lifts = Vec::new();
        for j in 0..nontrivial.ncols() {
            let col = nontrivial.column(j).into_owned();
            lifts.push(self.chain_to_lift(diagram, &col)?);
        }
        Ok(lifts)
    }

    /// Rank of the global affine functions inside the lift space; 3 on
    /// closed surfaces, possibly less on degenerate open complexes.
    pub fn global_affine_rank(&self) -> Result<usize> {
        let cc = self.affine.chain_complex(self.tol)?;
        let cycles = numerics::kernel_basis(&cc.outgoing(2), self.tol)?;
        let layout = self.affine.layout(2);
        let mut constants = DMatrix::zeros(layout.total, 3);
        for (pos, _) in layout.cells.iter().enumerate() {
            let o = layout.offsets[pos];
            for k in 0..3 {
                constants[(o + k, k)] = 1.0;
            }
        }
        numerics::rank(&(cycles.transpose() * &constants), self.tol)
    }

    /// Interpret a 2-chain of the affine cosheaf as per-face affine
    /// functions. Face stalks of nondegenerate faces carry the identity
    /// basis, so blocks are coefficient triples directly.
    fn chain_to_lift(&self, diagram: &Diagram, chain: &DVector<f64>) -> Result<LiftFunctionSet> {
        let layout = self.affine.layout(2);
        let mut faces = BTreeMap::new();
        for (pos, &f) in layout.cells.iter().enumerate() {
            let o = layout.offsets[pos];
            faces.insert(
                diagram.complex.cell_id(f).to_string(),
                AffineFunction {
                    coefficients: [chain[o], chain[o + 1], chain[o + 2]],
                },
            );
        }
        lift_from_faces(diagram, faces)
    }
}

/// Shorthand: the zero-locus cosheaf of a diagram.
pub fn zero_locus_cosheaf(diagram: &Diagram, tol: Tolerance) -> Result<Cosheaf> {
    Ok(LiftingWorkspace::new(diagram, tol)?.zero_locus)
}

/// Shorthand: the affine cosheaf of a diagram.
pub fn affine_cosheaf(diagram: &Diagram, tol: Tolerance) -> Result<Cosheaf> {
    Ok(LiftingWorkspace::new(diagram, tol)?.affine)
}

/// The cosheaf isomorphism from the force cosheaf to the zero locus: a
/// stress on an edge becomes the affine functional vanishing on its line; a
/// vertex force becomes the functional vanishing at the vertex.
pub fn tau_isomorphism(diagram: &Diagram, tol: Tolerance) -> Result<CosheafMap> {
    let ws = LiftingWorkspace::new(diagram, tol)?;
    tau_into_workspace(diagram, &ws)
}

fn tau_into_workspace(diagram: &Diagram, ws: &LiftingWorkspace) -> Result<CosheafMap> {
    let base = &diagram.complex;
    let force = force_cosheaf(diagram)?;
    let mut components = Vec::with_capacity(base.num_cells());
    for c in 0..base.num_cells() {
        let m = match base.cell_dim(c) {
            0 => {
                let p = homog(diagram.vertex_position(c));
                let c1 = cross([1.0, 0.0, 0.0], p);
                let c2 = cross([0.0, 1.0, 0.0], p);
                let raw =
                    DMatrix::from_column_slice(3, 2, &[c1[0], c1[1], c1[2], c2[0], c2[1], c2[2]]);
                ws.stalk_bases[c].transpose() * raw
            }
            1 => {
                let zeta = edge_zero_functional(diagram, c)?;
                let raw = DMatrix::from_column_slice(3, 1, &zeta);
                ws.stalk_bases[c].transpose() * raw
            }
            _ => DMatrix::zeros(0, 0),
        };
        if m.ncols() > 0 && numerics::rank(&m, ws.tol)? < m.ncols() {
            return Err(Error::DegenerateCell(base.cell_id(c).to_string()));
        }
        components.push(m);
    }
    CosheafMap::new(force, ws.zero_locus.clone(), components)
}

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

/// Build the vertex heights of a lift and check the gluing condition.
fn lift_from_faces(
    diagram: &Diagram,
    faces: BTreeMap<CellId, AffineFunction>,
) -> Result<LiftFunctionSet> {
    let base = &diagram.complex;
    let scale = diagram.coordinate_scale();
    let h_scale = faces
        .values()
        .flat_map(|h| h.coefficients.iter())
        .fold(1.0_f64, |a, &c| a.max(c.abs()));
    let gate = 1e-9 * scale.max(1.0) * h_scale;
    let mut vertex_heights: BTreeMap<CellId, f64> = BTreeMap::new();
    for e in base.cells_of_dim(1) {
        let Some((fp, fn_)) = edge_face_pair(diagram, e) else {
            continue;
        };
        let hp = faces[base.cell_id(fp)];
        let hn = faces[base.cell_id(fn_)];
        for &(v, _) in &base.edge_vertices(e) {
            let p = diagram.vertex_position(v);
            let (zp, zn) = (hp.eval(p), hn.eval(p));
            if (zp - zn).abs() > gate {
                return Err(Error::GluingViolated {
                    edge: base.cell_id(e).to_string(),
                    residual: (zp - zn).abs(),
                });
            }
            vertex_heights.insert(base.cell_id(v).to_string(), zp);
        }
    }
    // Vertices not on any two-sided edge still get a height from any
    // incident face.
    for v in base.cells_of_dim(0) {
        let id = base.cell_id(v).to_string();
        if vertex_heights.contains_key(&id) {
            continue;
        }
        if let Some(&(e, _)) = base.upper(v).first() {
            if let Some(&(f, _)) = base.edge_faces(e).first() {
                vertex_heights.insert(id, faces[base.cell_id(f)].eval(diagram.vertex_position(v)));
            }
        }
    }
    Ok(LiftFunctionSet {
        faces,
        vertex_heights,
    })
}

/// Integrate a self-stress to a polyhedral lift over a spanning tree of the
/// dual one-skeleton, pinning the lowest face id to the zero function.
pub fn polyhedral_lift(
    diagram: &Diagram,
    stress: &SelfStress,
    tol: Tolerance,
) -> Result<LiftFunctionSet> {
    // Cycle check via the force cosheaf.
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
    let base = &diagram.complex;
    for f in base.cells_of_dim(2) {
        let constraints = cell_constraints(diagram, f);
        if numerics::rank(&constraints, tol)? != 3 {
            return Err(Error::DegenerateCell(base.cell_id(f).to_string()));
        }
    }

    let faces = base.cells_of_dim(2);
    let start = faces
        .iter()
        .copied()
        .min_by_key(|&f| base.cell_id(f).to_string())
        .ok_or_else(|| Error::NotClosedSurface("no faces to lift".into()))?;

    // Jump across edge e: h_{f+} - h_{f-} = w_e * zeta_e.
    let jump = |e: usize| -> Result<[f64; 3]> {
        let w = stress.values[base.cell_id(e)];
        let zeta = edge_zero_functional(diagram, e)?;
        Ok([w * zeta[0], w * zeta[1], w * zeta[2]])
    };

    let mut h: HashMap<usize, [f64; 3]> = HashMap::new();
    h.insert(start, [0.0; 3]);
    let mut frontier = VecDeque::from([start]);
    while let Some(f) = frontier.pop_front() {
        let hf = h[&f];
        for &(e, sign_f) in base.lower(f) {
            if base.cell_dim(e) != 1 {
                continue;
            }
            let Some((fp, fn_)) = edge_face_pair(diagram, e) else {
                continue;
            };
            let other = if fp == f { fn_ } else { fp };
            if h.contains_key(&other) {
                continue;
            }
            let dq = jump(e)?;
            let h_other = if sign_f == 1 {
                [hf[0] - dq[0], hf[1] - dq[1], hf[2] - dq[2]]
            } else {
                [hf[0] + dq[0], hf[1] + dq[1], hf[2] + dq[2]]
            };
            h.insert(other, h_other);
            frontier.push_back(other);
        }
    }
    if h.len() != faces.len() {
        return Err(Error::NotClosedSurface(
            "dual one-skeleton is disconnected".into(),
        ));
    }

    // Closure over every two-sided edge.
    let scale = diagram.coordinate_scale().powi(2) * stress.chain.norm().max(1.0);
    for e in base.cells_of_dim(1) {
        let Some((fp, fn_)) = edge_face_pair(diagram, e) else {
            continue;
        };
        let dq = jump(e)?;
        let (hp, hn) = (h[&fp], h[&fn_]);
        let mut closure = 0.0_f64;
        for k in 0..3 {
            closure += (hp[k] - hn[k] - dq[k]).powi(2);
        }
        let closure = closure.sqrt();
        if closure > 1e-9 * scale.max(1.0) {
            return Err(Error::NotACycle {
                residual: closure,
                tol: 1e-9 * scale.max(1.0),
            });
        }
    }

    let faces_map = h
        .into_iter()
        .map(|(f, c)| {
            (
                base.cell_id(f).to_string(),
                AffineFunction { coefficients: c },
            )
        })
        .collect();
    lift_from_faces(diagram, faces_map)
}

/// Recover the stress of a lift from gradient differences across edges.
///
/// The jump `h_f - h_g` across an edge is proportional to the edge's
/// zero-locus functional; evaluating both at a probe point away from the
/// edge line gives the stress value, independent of the probe choice.
pub fn verify_lift(diagram: &Diagram, lift: &LiftFunctionSet, tol: Tolerance) -> Result<SelfStress> {
    let base = &diagram.complex;
    // Gluing check is part of reconstructing vertex heights.
    let lift = lift_from_faces(diagram, lift.faces.clone())?;
    let force = force_cosheaf(diagram)?;
    let layout = force.layout(1);
    let mut chain = DVector::zeros(layout.total);

    // Candidate probe points: face centroids.
    let centroids: Vec<(usize, [f64; 2])> = base
        .cells_of_dim(2)
        .into_iter()
        .map(|f| {
            let mut c = [0.0, 0.0];
            let mut n = 0.0_f64;
            for &(e, _) in base.lower(f) {
                if base.cell_dim(e) != 1 {
                    continue;
                }
                for &(v, _) in &base.edge_vertices(e) {
                    let p = diagram.vertex_position(v);
                    c[0] += p[0];
                    c[1] += p[1];
                    n += 1.0;
                }
            }
            (f, [c[0] / n.max(1.0), c[1] / n.max(1.0)])
        })
        .collect();

    for (pos, &e) in layout.cells.iter().enumerate() {
        let Some((fp, fn_)) = edge_face_pair(diagram, e) else {
            continue;
        };
        let zeta = edge_zero_functional(diagram, e)?;
        let zeta_at = |p: [f64; 2]| {
            let q = homog(p);
            zeta[0] * q[0] + zeta[1] * q[1] + zeta[2] * q[2]
        };
        // Deterministic probe: the centroid (of a face not touching e) that
        // maximizes the denominator, with a perturbation fallback.
        let mut best: Option<[f64; 2]> = None;
        let mut best_val = 0.0;
        for &(f, c) in &centroids {
            if f == fp || f == fn_ {
                continue;
            }
            let v = zeta_at(c).abs();
            if v > best_val {
                best_val = v;
                best = Some(c);
            }
        }
        let probe = match best {
            Some(p) if best_val > 1e-10 => p,
            other => {
                let anchor = other.unwrap_or_else(|| {
                    let vs = base.edge_vertices(e);
                    diagram.vertex_position(vs[0].0)
                });
                let mut found = None;
                for k in 1..=8 {
                    let t = k as f64;
                    let candidate = [
                        anchor[0] + 0.377 * t * diagram.coordinate_scale(),
                        anchor[1] + 0.519 * t * diagram.coordinate_scale(),
                    ];
                    if zeta_at(candidate).abs() > 1e-10 {
                        found = Some(candidate);
                        break;
                    }
                }
                found.ok_or_else(|| Error::CollinearProbePoint(base.cell_id(e).to_string()))?
            }
        };
        let hp = lift.faces[base.cell_id(fp)];
        let hn = lift.faces[base.cell_id(fn_)];
        let w = (hp.eval(probe) - hn.eval(probe)) / zeta_at(probe);
        chain[layout.offsets[pos]] = w;
    }

    let cc = force.chain_complex(tol)?;
    let residual = cc.cycle_residual(1, &chain);
    let gate = tol.residual_gate(chain.norm().max(1.0)) * 10.0;
    if residual > gate {
        return Err(Error::NotACycle {
            residual,
            tol: gate,
        });
    }
    Ok(SelfStress::from_chain(diagram, &force, chain))
}

/// Genus-based lift guarantee: on a genus-g surface, more than 6g
/// self-stresses force a nontrivial polyhedral lift.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LiftGenusCheck {
    pub genus: u32,
    pub dim_self_stress: usize,
    pub bound: usize,
    pub guaranteed: bool,
    /// Dimension of the lift space modulo global affine functions.
    pub lift_dim_mod_affine: usize,
}

pub fn lift_genus_check(
    diagram: &Diagram,
    tol: Tolerance,
) -> Result<(LiftGenusCheck, Option<LiftFunctionSet>)> {
    diagram.complex.require_closed_surface()?;
    let genus = diagram.complex.genus()?;
    let stresses = crate::statics::self_stresses(diagram, tol)?;
    let bound = 6 * genus as usize;
    let ws = LiftingWorkspace::new(diagram, tol)?;
    let lifts = ws.nontrivial_lifts(diagram)?;
    Ok((
        LiftGenusCheck {
            genus,
            dim_self_stress: stresses.len(),
            bound,
            guaranteed: stresses.len() > bound,
            lift_dim_mod_affine: lifts.len(),
        },
        lifts.into_iter().next(),
    ))
}

/// Maximum gradient difference across any edge: the nontriviality measure
/// of a lift.
pub fn max_gradient_jump(diagram: &Diagram, lift: &LiftFunctionSet) -> f64 {
    let base = &diagram.complex;
    base.cells_of_dim(1)
        .into_iter()
        .filter_map(|e| edge_face_pair(diagram, e))
        .map(|(fp, fn_)| {
            let gp = lift.faces[base.cell_id(fp)].gradient();
            let gn = lift.faces[base.cell_id(fn_)].gradient();
            ((gp[0] - gn[0]).powi(2) + (gp[1] - gn[1]).powi(2)).sqrt()
        })
        .fold(0.0, f64::max)
}

/// Ordered boundary vertex cycle of a face (closed edges only).
fn face_vertex_cycle(diagram: &Diagram, face: usize) -> Option<Vec<usize>> {
    let base = &diagram.complex;
    let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(e, _) in base.lower(face) {
        if base.cell_dim(e) != 1 {
            continue;
        }
        let vs = base.edge_vertices(e);
        if vs.len() != 2 {
            return None;
        }
        adjacency.entry(vs[0].0).or_default().push(vs[1].0);
        adjacency.entry(vs[1].0).or_default().push(vs[0].0);
    }
    if adjacency.is_empty() || adjacency.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *adjacency.keys().min_by_key(|&&v| base.cell_id(v).to_string())?;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut current = adjacency[&start][0];
    while current != start {
        cycle.push(current);
        let next = if adjacency[&current][0] == prev {
            adjacency[&current][1]
        } else {
            adjacency[&current][0]
        };
        prev = current;
        current = next;
    }
    Some(cycle)
}

/// Export a lifted diagram as a Wavefront-style text mesh: `v x y z` lines
/// for the lifted vertices and fan-triangulated `f` index lines per face.
/// Heights are affine over faces, so any triangulation is exact.
pub fn export_mesh(diagram: &Diagram, lift: &LiftFunctionSet) -> String {
    let base = &diagram.complex;
    let vertices = base.cells_of_dim(0);
    let index: HashMap<usize, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();
    let mut out = String::new();
    for &v in &vertices {
        let p = diagram.vertex_position(v);
        let z = lift
            .vertex_heights
            .get(base.cell_id(v))
            .copied()
            .unwrap_or(0.0);
        out.push_str(&format!("v {:.17e} {:.17e} {:.17e}\n", p[0], p[1], z));
    }
    for f in base.cells_of_dim(2) {
        let Some(cycle) = face_vertex_cycle(diagram, f) else {
            continue;
        };
        // Fan from the lowest-id vertex (first by construction).
        for k in 1..cycle.len() - 1 {
            out.push_str(&format!(
                "f {} {} {}\n",
                index[&cycle[0]],
                index[&cycle[k]],
                index[&cycle[k + 1]]
            ));
        }
    }
    out
}
