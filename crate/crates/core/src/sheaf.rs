//! Cellular cosheaves and sheaves as concrete matrix data.
//!
//! A cosheaf assigns a stalk dimension to every cell and an extension matrix
//! to every incident pair of consecutive dimension; information flows down in
//! dimension. A sheaf is the same data with maps flowing up. One structure
//! serves both through a [`Variance`] flag, and the linear dual is a
//! transpose.
//!
//! Chains are assembled blockwise with incidence signs; homology is computed
//! as an orthonormal basis of harmonic representatives (kernel of the
//! outgoing map, orthogonal to the image of the incoming map).

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::complex::CellComplex;
use crate::error::Error;
use crate::numerics::{self, Tolerance};
use crate::Result;

/// Direction data flows in: extension maps (cosheaf, downward) or
/// restriction maps (sheaf, upward).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Cosheaf,
    Sheaf,
}

/// A cellular cosheaf or sheaf over a cell complex.
///
/// Maps are keyed by `(lower cell, upper cell)` index pairs and exist exactly
/// for the incident pairs whose stalks are both nonzero. For a cosheaf the
/// stored matrix is the extension map (upper stalk -> lower stalk, shape
/// `lower x upper`); for a sheaf it is the restriction map (shape
/// `upper x lower`).
#[derive(Debug, Clone)]
pub struct Cosheaf {
    pub base: Arc<CellComplex>,
    pub variance: Variance,
    stalk_dims: Vec<usize>,
    maps: HashMap<(usize, usize), DMatrix<f64>>,
}

/// Column layout of one chain degree: cells in declaration order with their
/// block offsets.
#[derive(Debug, Clone)]
pub struct DegreeLayout {
    pub cells: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl DegreeLayout {
    /// Offset and width of the block belonging to `cell`, if present.
    pub fn block(&self, cell: usize) -> Option<(usize, usize)> {
        let pos = self.cells.iter().position(|&c| c == cell)?;
        let start = self.offsets[pos];
        let end = if pos + 1 < self.offsets.len() {
            self.offsets[pos + 1]
        } else {
            self.total
        };
        Some((start, end - start))
    }
}

impl Cosheaf {
    /// Build from per-cell stalk dimensions and per-incidence matrices.
    pub fn new(
        base: Arc<CellComplex>,
        variance: Variance,
        stalk_dims: Vec<usize>,
        maps: HashMap<(usize, usize), DMatrix<f64>>,
    ) -> Result<Self> {
        assert_eq!(stalk_dims.len(), base.num_cells());
        for inc in base.incidences() {
            let (lo, up) = (inc.lower, inc.upper);
            let needed = stalk_dims[lo] > 0 && stalk_dims[up] > 0;
            let present = maps.contains_key(&(lo, up));
            if needed != present {
                return Err(Error::Schema(format!(
                    "map for pair ({}, {}) {}",
                    base.cell_id(lo),
                    base.cell_id(up),
                    if needed { "missing" } else { "should not exist" }
                )));
            }
            if let Some(m) = maps.get(&(lo, up)) {
                let want = match variance {
                    Variance::Cosheaf => (stalk_dims[lo], stalk_dims[up]),
                    Variance::Sheaf => (stalk_dims[up], stalk_dims[lo]),
                };
                if m.shape() != want {
                    return Err(Error::Schema(format!(
                        "map for pair ({}, {}) has shape {:?}, expected {:?}",
                        base.cell_id(lo),
                        base.cell_id(up),
                        m.shape(),
                        want
                    )));
                }
            }
        }
        Ok(Self {
            base,
            variance,
            stalk_dims,
            maps,
        })
    }

    /// Constant cosheaf: every stalk is `dim`-dimensional, every map identity.
    pub fn constant(base: Arc<CellComplex>, dim: usize) -> Self {
        assert!(dim >= 1, "constant cosheaf needs a positive stalk dimension");
        let stalk_dims = vec![dim; base.num_cells()];
        let maps = base
            .incidences()
            .iter()
            .map(|inc| ((inc.lower, inc.upper), DMatrix::identity(dim, dim)))
            .collect();
        Self {
            base,
            variance: Variance::Cosheaf,
            stalk_dims,
            maps,
        }
    }

    pub fn stalk_dim(&self, cell: usize) -> usize {
        self.stalk_dims[cell]
    }

    pub fn stalk_dims(&self) -> &[usize] {
        &self.stalk_dims
    }

    pub fn map(&self, lower: usize, upper: usize) -> Option<&DMatrix<f64>> {
        self.maps.get(&(lower, upper))
    }

    /// Chain-degree layout: cells of the given dimension with nonzero-width
    /// blocks in declaration order (zero-dimensional stalks occupy no room
    /// but keep their slot for bookkeeping).
    pub fn layout(&self, degree: usize) -> DegreeLayout {
        let cells = self.base.cells_of_dim(degree);
        let mut offsets = Vec::with_capacity(cells.len());
        let mut total = 0;
        for &c in &cells {
            offsets.push(total);
            total += self.stalk_dims[c];
        }
        DegreeLayout {
            cells,
            offsets,
            total,
        }
    }

    /// Linear dual: transpose every map and flip the variance. Homology of a
    /// cosheaf equals cohomology of its dual degree by degree.
    pub fn linear_dual(&self) -> Cosheaf {
        Cosheaf {
            base: Arc::clone(&self.base),
            variance: match self.variance {
                Variance::Cosheaf => Variance::Sheaf,
                Variance::Sheaf => Variance::Cosheaf,
            },
            stalk_dims: self.stalk_dims.clone(),
            maps: self
                .maps
                .iter()
                .map(|(&k, m)| (k, m.transpose()))
                .collect(),
        }
    }

    /// Poincaré dual: same stalks and maps re-indexed over the dual complex,
    /// with the variance flipped. Requires a closed oriented surface.
    pub fn poincare_dual(&self) -> Result<Cosheaf> {
        let dual = Arc::new(self.base.poincare_dual()?);
        let mut stalk_dims = vec![0usize; dual.num_cells()];
        for i in 0..self.base.num_cells() {
            let di = dual
                .cell_index(&format!("~{}", self.base.cell_id(i)))
                .expect("dual cell");
            stalk_dims[di] = self.stalk_dims[i];
        }
        let mut maps = HashMap::new();
        for (&(lo, up), m) in &self.maps {
            let dlo = dual
                .cell_index(&format!("~{}", self.base.cell_id(up)))
                .expect("dual cell");
            let dup = dual
                .cell_index(&format!("~{}", self.base.cell_id(lo)))
                .expect("dual cell");
            maps.insert((dlo, dup), m.clone());
        }
        Ok(Cosheaf {
            base: dual,
            variance: match self.variance {
                Variance::Cosheaf => Variance::Sheaf,
                Variance::Sheaf => Variance::Cosheaf,
            },
            stalk_dims,
            maps,
        })
    }

    /// Assemble boundary (or coboundary) matrices blockwise with incidence
    /// signs and verify they square to zero.
    pub fn chain_complex(&self, tol: Tolerance) -> Result<ChainComplex> {
        let layouts = [self.layout(0), self.layout(1), self.layout(2)];
        let mut ops = Vec::with_capacity(2);
        for low in 0..2 {
            // Map between degrees low and low+1; direction depends on variance.
            let (rows, cols) = match self.variance {
                Variance::Cosheaf => (&layouts[low], &layouts[low + 1]),
                Variance::Sheaf => (&layouts[low + 1], &layouts[low]),
            };
            let mut op = DMatrix::zeros(rows.total, cols.total);
            for inc in self.base.incidences() {
                if self.base.cell_dim(inc.lower) != low {
                    continue;
                }
                let Some(m) = self.maps.get(&(inc.lower, inc.upper)) else {
                    continue;
                };
                let (r0, rw, c0, cw) = match self.variance {
                    Variance::Cosheaf => {
                        let (r0, rw) = rows.block(inc.lower).unwrap();
                        let (c0, cw) = cols.block(inc.upper).unwrap();
                        (r0, rw, c0, cw)
                    }
                    Variance::Sheaf => {
                        let (r0, rw) = rows.block(inc.upper).unwrap();
                        let (c0, cw) = cols.block(inc.lower).unwrap();
                        (r0, rw, c0, cw)
                    }
                };
                debug_assert_eq!((rw, cw), m.shape());
                let signed = m * inc.sign as f64;
                let mut block = op.view_mut((r0, c0), (rw, cw));
                block += signed;
            }
            ops.push(op);
        }
        let op1 = ops.pop().unwrap();
        let op0 = ops.pop().unwrap();
        // dd = 0: for a cosheaf op0 is d1: C1->C0 and op1 is d2: C2->C1, so
        // the composite is op0 * op1; for a sheaf the composite is op1 * op0.
        let composite = match self.variance {
            Variance::Cosheaf => &op0 * &op1,
            Variance::Sheaf => &op1 * &op0,
        };
        let scale = numerics::fro_norm(&op0) * numerics::fro_norm(&op1);
        let dd = numerics::fro_norm(&composite);
        if dd > 1e-12 * scale.max(1.0) {
            return Err(Error::BoundarySquareNonzero(dd));
        }
        Ok(ChainComplex {
            variance: self.variance,
            layouts,
            ops: [op0, op1],
            tol,
        })
    }

    /// Homology (cosheaf) or cohomology (sheaf) in the given degree.
    pub fn homology(&self, degree: usize, tol: Tolerance) -> Result<HomologySpace> {
        self.chain_complex(tol)?.homology(degree)
    }
}

/// Assembled chain/cochain complex of a cosheaf or sheaf.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub variance: Variance,
    layouts: [DegreeLayout; 3],
    /// `ops[i]` maps between degrees i and i+1: downward for a cosheaf
    /// (`C_{i+1} -> C_i`), upward for a sheaf (`C^i -> C^{i+1}`).
    ops: [DMatrix<f64>; 2],
    tol: Tolerance,
}

impl ChainComplex {
    pub fn layout(&self, degree: usize) -> &DegreeLayout {
        &self.layouts[degree]
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.layouts[degree].total
    }

    /// The operator between degrees `low` and `low + 1` (direction per
    /// variance).
    pub fn op(&self, low: usize) -> &DMatrix<f64> {
        &self.ops[low]
    }

    /// The map leaving degree `i` (zero map at the end of the complex).
    pub fn outgoing(&self, degree: usize) -> DMatrix<f64> {
        match (self.variance, degree) {
            (Variance::Cosheaf, 0) => DMatrix::zeros(0, self.dim(0)),
            (Variance::Cosheaf, d) => self.ops[d - 1].clone(),
            (Variance::Sheaf, 2) => DMatrix::zeros(0, self.dim(2)),
            (Variance::Sheaf, d) => self.ops[d].clone(),
        }
    }

    /// The map arriving into degree `i` (empty generators at the start).
    pub fn incoming(&self, degree: usize) -> DMatrix<f64> {
        match (self.variance, degree) {
            (Variance::Cosheaf, 2) => DMatrix::zeros(self.dim(2), 0),
            (Variance::Cosheaf, d) => self.ops[d].clone(),
            (Variance::Sheaf, 0) => DMatrix::zeros(self.dim(0), 0),
            (Variance::Sheaf, d) => self.ops[d - 1].clone(),
        }
    }

    /// Harmonic representatives of homology in the given degree.
    pub fn homology(&self, degree: usize) -> Result<HomologySpace> {
        assert!(degree <= 2);
        let kernel = numerics::kernel_basis(&self.outgoing(degree), self.tol)?;
        let basis = numerics::quotient_basis(&kernel, &self.incoming(degree), self.tol)?;
        Ok(HomologySpace { degree, basis })
    }

    /// Residual of the cycle condition for a chain in the given degree.
    pub fn cycle_residual(&self, degree: usize, chain: &DVector<f64>) -> f64 {
        let out = self.outgoing(degree);
        if out.nrows() == 0 {
            return 0.0;
        }
        (&out * chain).norm()
    }
}

/// Orthonormal harmonic representatives of one homology degree.
#[derive(Debug, Clone)]
pub struct HomologySpace {
    pub degree: usize,
    pub basis: DMatrix<f64>,
}

impl HomologySpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Coefficients of a cycle's harmonic part in this basis. Two cycles
    /// represent the same class exactly when their coefficients agree.
    pub fn class_coefficients(&self, cycle: &DVector<f64>) -> DVector<f64> {
        self.basis.transpose() * cycle
    }

    /// Orthogonal projection of a chain onto the harmonic subspace.
    pub fn harmonic_part(&self, chain: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * chain)
    }
}

/// A map of cosheaves over a shared base: one matrix per cell, commuting
/// with the extension maps.
#[derive(Debug, Clone)]
pub struct CosheafMap {
    pub source: Cosheaf,
    pub target: Cosheaf,
    pub components: Vec<DMatrix<f64>>,
}

impl CosheafMap {
    /// Build and verify the commutativity condition on every incident pair.
    pub fn new(source: Cosheaf, target: Cosheaf, components: Vec<DMatrix<f64>>) -> Result<Self> {
        assert!(Arc::ptr_eq(&source.base, &target.base), "maps need a shared base");
        assert_eq!(source.variance, target.variance);
        assert_eq!(components.len(), source.base.num_cells());
        for (i, comp) in components.iter().enumerate() {
            assert_eq!(
                comp.shape(),
                (target.stalk_dim(i), source.stalk_dim(i)),
                "component shape mismatch over cell {}",
                source.base.cell_id(i)
            );
        }
        let map = Self {
            source,
            target,
            components,
        };
        map.check_commutativity(Tolerance::default())?;
        Ok(map)
    }

    fn check_commutativity(&self, tol: Tolerance) -> Result<()> {
        for inc in self.source.base.incidences() {
            let (lo, up) = (inc.lower, inc.upper);
            let (lhs, rhs) = match self.source.variance {
                Variance::Cosheaf => {
                    let (Some(src), Some(dst)) = (self.source.map(lo, up), self.target.map(lo, up))
                    else {
                        continue;
                    };
                    // phi_lo . K_{up > lo} = L_{up > lo} . phi_up
                    (&self.components[lo] * src, dst * &self.components[up])
                }
                Variance::Sheaf => {
                    let (Some(src), Some(dst)) = (self.source.map(lo, up), self.target.map(lo, up))
                    else {
                        continue;
                    };
                    // phi_up . J_{lo < up} = L_{lo < up} . phi_lo
                    (&self.components[up] * src, dst * &self.components[lo])
                }
            };
            let scale = numerics::fro_norm(&lhs).max(numerics::fro_norm(&rhs)).max(1.0);
            if numerics::fro_norm(&(lhs - rhs)) > tol.residual_gate(scale) {
                return Err(Error::Schema(format!(
                    "cosheaf map does not commute over pair ({}, {})",
                    self.source.base.cell_id(lo),
                    self.source.base.cell_id(up)
                )));
            }
        }
        Ok(())
    }

    /// Block-diagonal matrix of the components over cells of one dimension,
    /// mapping source chains to target chains.
    pub fn chain_map(&self, degree: usize) -> DMatrix<f64> {
        let src = self.source.layout(degree);
        let dst = self.target.layout(degree);
        let mut m = DMatrix::zeros(dst.total, src.total);
        for &cell in &src.cells {
            let (c0, cw) = src.block(cell).unwrap();
            let (r0, rw) = dst.block(cell).unwrap();
            if cw == 0 || rw == 0 {
                continue;
            }
            m.view_mut((r0, c0), (rw, cw))
                .copy_from(&self.components[cell]);
        }
        m
    }
}

/// Quotient of an injective cosheaf map: stalks are orthogonal complements
/// of the image, maps are conjugated by the complement bases, and the
/// returned projection is the stalk-wise orthogonal projection.
pub fn quotient_cosheaf(map: &CosheafMap, tol: Tolerance) -> Result<(Cosheaf, CosheafMap)> {
    assert_eq!(map.source.variance, Variance::Cosheaf, "quotients act on cosheaves");
    let base = Arc::clone(&map.target.base);
    let n = base.num_cells();
    let mut bases: Vec<DMatrix<f64>> = Vec::with_capacity(n);
    let mut stalk_dims = Vec::with_capacity(n);
    for c in 0..n {
        let phi = &map.components[c];
        if phi.ncols() > 0 && numerics::rank(phi, tol)? < phi.ncols() {
            return Err(Error::NotInjective(base.cell_id(c).to_string()));
        }
        let q = numerics::kernel_basis(&phi.transpose(), tol)?;
        stalk_dims.push(q.ncols());
        bases.push(q);
    }
    let mut maps = HashMap::new();
    for inc in base.incidences() {
        let (lo, up) = (inc.lower, inc.upper);
        if stalk_dims[lo] == 0 || stalk_dims[up] == 0 {
            continue;
        }
        let target_map = map
            .target
            .map(lo, up)
            .expect("target map exists for nonzero stalks");
        maps.insert(
            (lo, up),
            bases[lo].transpose() * target_map * &bases[up],
        );
    }
    let quotient = Cosheaf::new(base, Variance::Cosheaf, stalk_dims, maps)?;
    let projection = CosheafMap::new(
        map.target.clone(),
        quotient.clone(),
        bases.iter().map(|q| q.transpose()).collect(),
    )?;
    Ok((quotient, projection))
}

/// Verify that `sub` and `proj` form a short exact sequence stalk-wise:
/// the projection annihilates the image and ranks add up.
pub fn check_exactness(sub: &CosheafMap, proj: &CosheafMap, tol: Tolerance) -> Result<()> {
    let base = &sub.target.base;
    for c in 0..base.num_cells() {
        let phi = &sub.components[c];
        let pi = &proj.components[c];
        let comp = pi * phi;
        let scale = numerics::fro_norm(phi).max(1.0) * numerics::fro_norm(pi).max(1.0);
        if numerics::fro_norm(&comp) > tol.residual_gate(scale) {
            return Err(Error::NotExact(base.cell_id(c).to_string()));
        }
        let rank_phi = numerics::rank(phi, tol)?;
        let rank_pi = numerics::rank(pi, tol)?;
        if rank_phi + rank_pi != sub.target.stalk_dim(c) {
            return Err(Error::NotExact(base.cell_id(c).to_string()));
        }
    }
    Ok(())
}

/// The connecting homomorphism of the long exact sequence.
///
/// Takes a cycle in degree `degree` of the quotient cosheaf and produces a
/// cycle in degree `degree - 1` of the sub-cosheaf by the zig-zag: preimage
/// under the projection (least squares), boundary in the middle cosheaf,
/// exact preimage under the inclusion.
pub fn connecting_homomorphism(
    sub: &CosheafMap,
    proj: &CosheafMap,
    degree: usize,
    class: &DVector<f64>,
    tol: Tolerance,
) -> Result<DVector<f64>> {
    assert!((1..=2).contains(&degree));
    check_exactness(sub, proj, tol)?;
    let quotient_cc = proj.target.chain_complex(tol)?;
    let middle_cc = proj.source.chain_complex(tol)?;
    let sub_cc = sub.source.chain_complex(tol)?;

    let cycle_gate = tol.residual_gate(class.norm());
    let residual = quotient_cc.cycle_residual(degree, class);
    if residual > cycle_gate {
        return Err(Error::NotACycle {
            residual,
            tol: cycle_gate,
        });
    }

    // Preimage of the class under the projection.
    let pi_block = proj.chain_map(degree);
    let (lift, res_pi) = numerics::least_squares_solve(&pi_block, class, tol)?;
    let gate = 1e-8 * class.norm().max(1.0);
    if res_pi > gate {
        return Err(Error::PreimageResidualTooLarge {
            residual: res_pi,
            tol: gate,
        });
    }

    // Boundary in the middle cosheaf.
    let boundary = middle_cc.op(degree - 1) * &lift;

    // Exact preimage under the inclusion.
    let phi_block = sub.chain_map(degree - 1);
    let (result, res_phi) = numerics::least_squares_solve(&phi_block, &boundary, tol)?;
    let gate = 1e-8 * boundary.norm().max(1.0);
    if res_phi > gate {
        return Err(Error::PreimageResidualTooLarge {
            residual: res_phi,
            tol: gate,
        });
    }

    let res_cycle = sub_cc.cycle_residual(degree - 1, &result);
    let gate = tol.residual_gate(result.norm().max(1.0));
    if res_cycle > gate {
        return Err(Error::NotACycle {
            residual: res_cycle,
            tol: gate,
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Ring graph: four vertices, four edges, no faces.
    fn circle_graph() -> Arc<CellComplex> {
        Arc::clone(&fixtures::four_bar().complex)
    }

    #[test]
    fn classical_homology_of_circle() {
        let c = Cosheaf::constant(circle_graph(), 1);
        let h0 = c.homology(0, tol()).unwrap();
        let h1 = c.homology(1, tol()).unwrap();
        assert_eq!(h0.dim(), 1);
        assert_eq!(h1.dim(), 1);
    }

    #[test]
    fn boundary_of_constant_cosheaf_is_oriented_incidence_matrix() {
        let c = Cosheaf::constant(circle_graph(), 1);
        let cc = c.chain_complex(tol()).unwrap();
        let d1 = cc.op(0);
        assert_eq!(d1.shape(), (4, 4));
        // Every column has exactly one +1 and one -1.
        for j in 0..4 {
            let col = d1.column(j);
            assert_eq!(col.iter().filter(|&&x| x == 1.0).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == -1.0).count(), 1);
        }
    }

    #[test]
    fn sphere_homology_of_constant_r2() {
        let d = fixtures::braced_square();
        let c = Cosheaf::constant(Arc::clone(&d.complex), 2);
        assert_eq!(c.homology(0, tol()).unwrap().dim(), 2);
        assert_eq!(c.homology(1, tol()).unwrap().dim(), 0);
        assert_eq!(c.homology(2, tol()).unwrap().dim(), 2);
    }

    #[test]
    fn torus_homology_of_constant_r2() {
        let d = fixtures::toroidal_grid();
        let c = Cosheaf::constant(Arc::clone(&d.complex), 2);
        assert_eq!(c.homology(0, tol()).unwrap().dim(), 2);
        assert_eq!(c.homology(1, tol()).unwrap().dim(), 4);
        assert_eq!(c.homology(2, tol()).unwrap().dim(), 2);
    }

    #[test]
    fn connected_fixtures_have_one_dimensional_h0() {
        for d in fixtures::closed_suite() {
            let c = Cosheaf::constant(Arc::clone(&d.complex), 1);
            assert_eq!(c.homology(0, tol()).unwrap().dim(), 1);
        }
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        for d in fixtures::closed_suite() {
            let c = Cosheaf::constant(Arc::clone(&d.complex), 2);
            let cc = c.chain_complex(tol()).unwrap();
            let chain_chi = cc.dim(0) as i64 - cc.dim(1) as i64 + cc.dim(2) as i64;
            let h_chi = cc.homology(0).unwrap().dim() as i64 - cc.homology(1).unwrap().dim() as i64
                + cc.homology(2).unwrap().dim() as i64;
            assert_eq!(chain_chi, h_chi);
            assert_eq!(chain_chi, 2 * d.complex.euler_characteristic());
        }
    }

    #[test]
    fn linear_dual_preserves_dims_and_double_dual_is_identity() {
        let d = fixtures::braced_square();
        let c = Cosheaf::constant(Arc::clone(&d.complex), 2);
        let dual = c.linear_dual();
        assert_eq!(dual.variance, Variance::Sheaf);
        for k in 0..=2 {
            assert_eq!(
                c.homology(k, tol()).unwrap().dim(),
                dual.homology(k, tol()).unwrap().dim()
            );
        }
        let dd = dual.linear_dual();
        for inc in d.complex.incidences() {
            assert_eq!(
                dd.map(inc.lower, inc.upper).unwrap(),
                c.map(inc.lower, inc.upper).unwrap()
            );
        }
    }

    #[test]
    fn poincare_dual_swaps_degrees() {
        for d in fixtures::closed_suite() {
            let c = Cosheaf::constant(Arc::clone(&d.complex), 2);
            let dual = c.poincare_dual().unwrap();
            for k in 0..=2 {
                assert_eq!(
                    c.homology(k, tol()).unwrap().dim(),
                    dual.homology(2 - k, tol()).unwrap().dim(),
                    "degree {k}"
                );
            }
        }
    }

    #[test]
    fn quotient_by_identity_is_zero() {
        let d = fixtures::unit_square();
        let c = Cosheaf::constant(Arc::clone(&d.complex), 2);
        let id_components: Vec<_> = (0..d.complex.num_cells())
            .map(|_| DMatrix::identity(2, 2))
            .collect();
        let map = CosheafMap::new(c.clone(), c, id_components).unwrap();
        let (q, _) = quotient_cosheaf(&map, tol()).unwrap();
        assert!(q.stalk_dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn quotient_by_zero_source_is_target() {
        let d = fixtures::unit_square();
        let target = Cosheaf::constant(Arc::clone(&d.complex), 2);
        let source = Cosheaf::new(
            Arc::clone(&d.complex),
            Variance::Cosheaf,
            vec![0; d.complex.num_cells()],
            HashMap::new(),
        )
        .unwrap();
        let components: Vec<_> = (0..d.complex.num_cells())
            .map(|_| DMatrix::zeros(2, 0))
            .collect();
        let map = CosheafMap::new(source, target.clone(), components).unwrap();
        let (q, _) = quotient_cosheaf(&map, tol()).unwrap();
        assert_eq!(q.stalk_dims(), target.stalk_dims());
        for k in 0..=2 {
            assert_eq!(
                q.homology(k, tol()).unwrap().dim(),
                target.homology(k, tol()).unwrap().dim()
            );
        }
    }

    #[test]
    fn connecting_homomorphism_sends_zero_to_zero() {
        let d = fixtures::braced_square();
        let statics = crate::statics::StaticsWorkspace::new(&d, tol()).unwrap();
        let zero = DVector::zeros(statics.quotient.layout(2).total);
        let w = connecting_homomorphism(&statics.embedding, &statics.projection, 2, &zero, tol())
            .unwrap();
        assert!(w.norm() < 1e-12);
    }
}
