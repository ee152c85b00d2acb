//! Sheaf Laplacians, stiffness matrices and heat-equation diffusion.
//!
//! On 0-cochains the Laplacian of a sheaf is `delta^T W delta` with `W` the
//! (optionally spring-weighted) inner product on edge stalks. For the
//! linkage sheaf this is the classical truss stiffness matrix; diffusion
//! under it converges to the orthogonal projection onto the harmonic space.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::complex::{CellId, Diagram};
use crate::error::Error;
use crate::numerics::Tolerance;
use crate::sheaf::{Cosheaf, Variance};
use crate::statics::linkage_sheaf;
use crate::Result;

/// Strictly positive spring constants keyed by edge id.
#[derive(Debug, Clone, Default)]
pub struct SpringConstants {
    pub by_edge: BTreeMap<CellId, f64>,
}

impl SpringConstants {
    pub fn uniform() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (edge, &k) in &self.by_edge {
            if !(k > 0.0) || !k.is_finite() {
                return Err(Error::NonPositiveWeight {
                    edge: edge.clone(),
                    value: k,
                });
            }
        }
        Ok(())
    }

    fn weight(&self, id: &str) -> f64 {
        self.by_edge.get(id).copied().unwrap_or(1.0)
    }
}

/// Degree-0 sheaf Laplacian `delta^T W delta`, with `W` diagonal per edge
/// stalk (identity when no weights are given). Symmetric positive
/// semidefinite; its kernel is H^0.
pub fn sheaf_laplacian(
    sheaf: &Cosheaf,
    weights: Option<&SpringConstants>,
    tol: Tolerance,
) -> Result<DMatrix<f64>> {
    assert_eq!(sheaf.variance, Variance::Sheaf, "Laplacians act on sheaves");
    if let Some(w) = weights {
        w.validate()?;
    }
    let cc = sheaf.chain_complex(tol)?;
    let delta = cc.op(0);
    let layout = sheaf.layout(1);
    let mut weighted = delta.clone();
    if let Some(w) = weights {
        for (pos, &e) in layout.cells.iter().enumerate() {
            let k = w.weight(sheaf.base.cell_id(e));
            let start = layout.offsets[pos];
            let width = sheaf.stalk_dim(e);
            for r in start..start + width {
                for c in 0..weighted.ncols() {
                    weighted[(r, c)] *= k;
                }
            }
        }
    }
    Ok(delta.transpose() * weighted)
}

/// Higher-degree Laplacian block `delta_{k-1} delta_{k-1}^T +
/// delta_k^T delta_k` acting on k-cochains (unweighted).
pub fn hodge_laplacian(sheaf: &Cosheaf, degree: usize, tol: Tolerance) -> Result<DMatrix<f64>> {
    assert_eq!(sheaf.variance, Variance::Sheaf);
    assert!(degree <= 2);
    let cc = sheaf.chain_complex(tol)?;
    let n = cc.dim(degree);
    let mut lap = DMatrix::zeros(n, n);
    if degree < 2 {
        let up = cc.op(degree);
        lap += up.transpose() * up;
    }
    if degree > 0 {
        let down = cc.op(degree - 1);
        lap += down * down.transpose();
    }
    Ok(lap)
}

/// Total stiffness matrix of a truss: the spring-weighted Laplacian of its
/// linkage sheaf. `<xi, K xi>` is twice the stored elastic energy of the
/// displacement `xi`.
pub fn stiffness_matrix(
    diagram: &Diagram,
    springs: &SpringConstants,
    tol: Tolerance,
) -> Result<DMatrix<f64>> {
    let linkage = linkage_sheaf(diagram)?;
    sheaf_laplacian(&linkage, Some(springs), tol)
}

/// Integration scheme for the heat equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiffusionScheme {
    /// Exact solution via eigendecomposition, sampled along the trace.
    Spectral { steps: usize, t_end: f64 },
    /// Explicit Euler with fixed step; errors if the step exceeds the
    /// stability bound 2 / (alpha * lambda_max).
    Euler { steps: usize, dt: f64 },
}

/// Sampled diffusion history with the harmonic limit.
#[derive(Debug, Clone)]
pub struct DiffusionTrace {
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
    /// Orthogonal projection of the initial state onto ker(Laplacian).
    pub limit: DVector<f64>,
}

impl DiffusionTrace {
    /// Dirichlet energy `<xi, L xi>` along the trace.
    pub fn energies(&self, laplacian: &DMatrix<f64>) -> Vec<f64> {
        self.states
            .iter()
            .map(|s| (s.transpose() * laplacian * s)[(0, 0)])
            .collect()
    }
}

/// Run the heat equation `d xi/dt = -alpha L xi` from `xi0`.
pub fn diffuse(
    laplacian: &DMatrix<f64>,
    xi0: &DVector<f64>,
    alpha: f64,
    scheme: DiffusionScheme,
) -> Result<DiffusionTrace> {
    assert!(alpha > 0.0, "diffusion rate must be positive");
    assert_eq!(laplacian.nrows(), laplacian.ncols());
    assert_eq!(laplacian.nrows(), xi0.nrows());
    let eig = laplacian.clone().symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    // Kernel cutoff relative to the spectral radius.
    let cut = 1e-9 * lambda_max.max(1.0);
    let coords = eig.eigenvectors.transpose() * xi0;

    let mut limit = DVector::zeros(xi0.nrows());
    for i in 0..eig.eigenvalues.len() {
        if eig.eigenvalues[i] <= cut {
            limit += eig.eigenvectors.column(i) * coords[i];
        }
    }

    let mut times = Vec::new();
    let mut states = Vec::new();
    match scheme {
        DiffusionScheme::Spectral { steps, t_end } => {
            let steps = steps.max(1);
            for k in 0..=steps {
                let t = t_end * k as f64 / steps as f64;
                let mut state = DVector::zeros(xi0.nrows());
                for i in 0..eig.eigenvalues.len() {
                    let decay = (-alpha * eig.eigenvalues[i].max(0.0) * t).exp();
                    state += eig.eigenvectors.column(i) * (coords[i] * decay);
                }
                times.push(t);
                states.push(state);
            }
        }
        DiffusionScheme::Euler { steps, dt } => {
            let limit_dt = 2.0 / (alpha * lambda_max.max(f64::MIN_POSITIVE));
            if dt >= limit_dt {
                return Err(Error::UnstableStepSize {
                    dt,
                    limit: limit_dt,
                });
            }
            let mut state = xi0.clone();
            times.push(0.0);
            states.push(state.clone());
            for k in 1..=steps {
                state = &state - laplacian * &state * (alpha * dt);
                times.push(dt * k as f64);
                states.push(state.clone());
            }
        }
    }
    Ok(DiffusionTrace {
        times,
        states,
        limit,
    })
}

/// Project a perturbed realization back to the nearest diagram whose edges
/// stay parallel to the reference: the position-sheaf harmonic part of the
/// displacement, added to the reference realization.
pub fn nearest_parallel_realization(
    diagram: &Diagram,
    perturbed: &BTreeMap<CellId, [f64; 2]>,
    tol: Tolerance,
) -> Result<BTreeMap<CellId, [f64; 2]>> {
    let sheaf = crate::statics::position_sheaf(diagram)?;
    let layout = sheaf.layout(0);
    let lap = sheaf_laplacian(&sheaf, None, tol)?;
    let mut xi0 = DVector::zeros(layout.total);
    for (pos, &v) in layout.cells.iter().enumerate() {
        let id = diagram.complex.cell_id(v);
        let p = diagram.vertex_position(v);
        let q = perturbed
            .get(id)
            .ok_or_else(|| Error::UnknownCell(id.to_string()))?;
        let o = layout.offsets[pos];
        xi0[o] = q[0] - p[0];
        xi0[o + 1] = q[1] - p[1];
    }
    let trace = diffuse(
        &lap,
        &xi0,
        1.0,
        DiffusionScheme::Spectral { steps: 1, t_end: 0.0 },
    )?;
    let mut result = BTreeMap::new();
    for (pos, &v) in layout.cells.iter().enumerate() {
        let p = diagram.vertex_position(v);
        let o = layout.offsets[pos];
        result.insert(
            diagram.complex.cell_id(v).to_string(),
            [p[0] + trace.limit[o], p[1] + trace.limit[o + 1]],
        );
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sheaf::Cosheaf;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Eq-style single-edge stiffness block built directly from the angle.
    fn single_edge_stiffness(theta: f64, kappa: f64) -> DMatrix<f64> {
        let (c, s) = (theta.cos(), theta.sin());
        let d = DMatrix::from_column_slice(2, 1, &[c, s]);
        let block = &d * d.transpose() * kappa;
        let mut k = DMatrix::zeros(4, 4);
        k.view_mut((0, 0), (2, 2)).copy_from(&block);
        k.view_mut((2, 2), (2, 2)).copy_from(&block);
        k.view_mut((0, 2), (2, 2)).copy_from(&(-&block));
        k.view_mut((2, 0), (2, 2)).copy_from(&(-&block));
        k
    }

    fn edge_diagram(theta: f64) -> Diagram {
        use crate::complex::CellComplex;
        use std::collections::HashMap;
        let complex = Arc::new(
            CellComplex::new(
                vec![("u".into(), 0), ("v".into(), 0), ("e".into(), 1)],
                vec![("u".into(), "e".into(), -1), ("v".into(), "e".into(), 1)],
                false,
            )
            .unwrap(),
        );
        Diagram::new(
            complex,
            HashMap::from([
                ("u".into(), [0.0, 0.0]),
                ("v".into(), [theta.cos(), theta.sin()]),
            ]),
            HashMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn constant_sheaf_laplacian_is_graph_laplacian() {
        let d = fixtures::four_bar();
        let sheaf = Cosheaf::constant(Arc::clone(&d.complex), 1).linear_dual();
        let lap = sheaf_laplacian(&sheaf, None, tol()).unwrap();
        // Degree 2 on the diagonal, -1 off-diagonal for ring adjacency.
        for i in 0..4 {
            assert_relative_eq!(lap[(i, i)], 2.0, epsilon = 1e-12);
        }
        let row_sums: Vec<f64> = (0..4).map(|i| lap.row(i).sum()).collect();
        for s in row_sums {
            assert_relative_eq!(s, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_edge_matches_classical_stiffness_block() {
        for &(theta, kappa) in &[(0.0, 1.0), (std::f64::consts::FRAC_PI_4, 2.0)] {
            let d = edge_diagram(theta);
            let springs = SpringConstants {
                by_edge: BTreeMap::from([("e".to_string(), kappa)]),
            };
            let k = stiffness_matrix(&d, &springs, tol()).unwrap();
            let expected = single_edge_stiffness(theta, kappa);
            assert_relative_eq!(k, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn quarter_turn_edge_with_kappa_two_has_unit_entries() {
        let d = edge_diagram(std::f64::consts::FRAC_PI_4);
        let springs = SpringConstants {
            by_edge: BTreeMap::from([("e".to_string(), 2.0)]),
        };
        let k = stiffness_matrix(&d, &springs, tol()).unwrap();
        for v in k.iter() {
            assert_relative_eq!(v.abs(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn laplacian_kernel_dimension_matches_h0() {
        let d = fixtures::braced_square();
        let linkage = linkage_sheaf(&d).unwrap();
        let lap = sheaf_laplacian(&linkage, None, tol()).unwrap();
        let eig = lap.clone().symmetric_eigen();
        let nulls = eig
            .eigenvalues
            .iter()
            .filter(|&&l| l.abs() <= 1e-9 * eig.eigenvalues.amax())
            .count();
        assert_eq!(nulls, 3);
        // Symmetric PSD.
        assert_relative_eq!(lap.clone(), lap.transpose(), epsilon = 1e-12);
        assert!(eig.eigenvalues.iter().all(|&l| l > -1e-10));
    }

    #[test]
    fn diffusion_of_harmonic_state_is_constant() {
        let d = fixtures::braced_square();
        let linkage = linkage_sheaf(&d).unwrap();
        let lap = sheaf_laplacian(&linkage, None, tol()).unwrap();
        let h0 = linkage.homology(0, tol()).unwrap();
        let xi0 = h0.basis.column(0).into_owned();
        let trace = diffuse(
            &lap,
            &xi0,
            1.0,
            DiffusionScheme::Spectral { steps: 4, t_end: 2.0 },
        )
        .unwrap();
        for s in &trace.states {
            assert_relative_eq!(s.clone(), xi0.clone(), epsilon = 1e-9);
        }
    }

    #[test]
    fn euler_rejects_unstable_step() {
        let d = fixtures::braced_square();
        let linkage = linkage_sheaf(&d).unwrap();
        let lap = sheaf_laplacian(&linkage, None, tol()).unwrap();
        let xi0 = DVector::from_element(lap.nrows(), 1.0);
        let err = diffuse(&lap, &xi0, 1.0, DiffusionScheme::Euler { steps: 10, dt: 1e3 });
        assert!(matches!(err, Err(Error::UnstableStepSize { .. })));
    }

    #[test]
    fn euler_limit_matches_spectral_projection() {
        let d = fixtures::braced_square();
        let linkage = linkage_sheaf(&d).unwrap();
        let lap = sheaf_laplacian(&linkage, None, tol()).unwrap();
        let eig = lap.clone().symmetric_eigen();
        let lambda_max = eig.eigenvalues.amax();
        let mut xi0 = DVector::zeros(lap.nrows());
        for i in 0..xi0.nrows() {
            xi0[i] = ((i * 37 + 11) % 17) as f64 / 17.0 - 0.5;
        }
        let dt = 1.0 / lambda_max;
        let trace = diffuse(&lap, &xi0, 1.0, DiffusionScheme::Euler { steps: 4000, dt }).unwrap();
        let last = trace.states.last().unwrap();
        assert_relative_eq!(last.clone(), trace.limit.clone(), epsilon = 1e-6);
        // Energy decreases monotonically.
        let energies = trace.energies(&lap);
        for w in energies.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn nonpositive_weight_is_rejected() {
        let d = fixtures::single_edge();
        let springs = SpringConstants {
            by_edge: BTreeMap::from([("e".to_string(), -1.0)]),
        };
        assert!(matches!(
            stiffness_matrix(&d, &springs, tol()),
            Err(Error::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn nearest_parallel_realization_fixes_translations() {
        let d = fixtures::braced_square();
        // Pure translation is already parallel.
        let mut perturbed = BTreeMap::new();
        for (id, p) in d.realization_by_id() {
            perturbed.insert(id, [p[0] + 0.3, p[1] - 0.1]);
        }
        let result = nearest_parallel_realization(&d, &perturbed, tol()).unwrap();
        for (id, p) in &perturbed {
            let q = result[id];
            assert_relative_eq!(q[0], p[0], epsilon = 1e-9);
            assert_relative_eq!(q[1], p[1], epsilon = 1e-9);
        }
    }
}
