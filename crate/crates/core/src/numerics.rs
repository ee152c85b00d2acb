//! Tolerance-controlled dense linear algebra.
//!
//! Every homology computation in this crate reduces to three primitives:
//! an orthonormal kernel basis, an orthogonal quotient inside a kernel, and a
//! minimum-norm least-squares solve. All three make rank decisions with the
//! same [`Tolerance`] policy so that dimension counts are consistent across
//! modules.

use nalgebra::{DMatrix, DVector};

use crate::error::Error;
use crate::Result;

/// Rank-decision policy: a singular value counts as zero when it is at most
/// `relative * sigma_max`, with `absolute_floor` as a lower cutoff so that
/// all-zero matrices are handled sensibly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative threshold against the largest singular value.
    pub relative: f64,
    /// Absolute floor applied when the matrix is tiny or zero.
    pub absolute_floor: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            relative: 1e-9,
            absolute_floor: 1e-12,
        }
    }
}

impl Tolerance {
    /// A policy with a custom relative threshold and the default floor.
    pub fn with_relative(relative: f64) -> Self {
        assert!(relative > 0.0, "relative threshold must be positive");
        Self {
            relative,
            ..Self::default()
        }
    }

    /// The singular-value cutoff for a matrix whose largest singular value is
    /// `sigma_max`.
    pub fn cutoff(&self, sigma_max: f64) -> f64 {
        (self.relative * sigma_max).max(self.absolute_floor)
    }

    /// Residual gate for comparing a vector of magnitude `scale` to zero.
    pub fn residual_gate(&self, scale: f64) -> f64 {
        (self.relative * scale).max(self.absolute_floor)
    }
}

fn check_finite(m: &DMatrix<f64>, what: &'static str) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteInput(what))
    }
}

/// Singular value decomposition with the full right factor.
///
/// nalgebra's thin SVD of a wide matrix only produces `min(r, c)` right
/// singular vectors; padding with zero rows keeps the null space intact and
/// recovers the full `c x c` right factor.
fn full_svd(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let (r, c) = m.shape();
    let work = if r < c {
        let mut padded = DMatrix::zeros(c, c);
        padded.view_mut((0, 0), (r, c)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("SVD requested v_t");
    (svd.singular_values, v_t)
}

/// Orthonormal basis of the null space of `m`.
///
/// Columns of the result are orthonormal and each satisfies
/// `|m * k| <= cutoff`. The number of columns is the number of singular
/// values at or below the cutoff.
pub fn kernel_basis(m: &DMatrix<f64>, tol: Tolerance) -> Result<DMatrix<f64>> {
    check_finite(m, "kernel_basis")?;
    let cols = m.ncols();
    if cols == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    if m.nrows() == 0 {
        return Ok(DMatrix::identity(cols, cols));
    }
    let (sigma, v_t) = full_svd(m);
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol.cutoff(sigma_max);
    let null_rows: Vec<usize> = (0..v_t.nrows()).filter(|&i| sigma[i] <= cutoff).collect();
    let mut basis = DMatrix::zeros(cols, null_rows.len());
    for (j, &i) in null_rows.iter().enumerate() {
        basis.set_column(j, &v_t.row(i).transpose());
    }
    Ok(basis)
}

/// Numerical rank of `m` under the tolerance policy.
pub fn rank(m: &DMatrix<f64>, tol: Tolerance) -> Result<usize> {
    check_finite(m, "rank")?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    let (sigma, _) = full_svd(m);
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol.cutoff(sigma_max);
    Ok(sigma.iter().filter(|&&s| s > cutoff).count())
}

/// Orthonormal basis of the orthogonal complement of `span(image)` inside
/// `span(kernel)`.
///
/// `kernel` must have orthonormal columns. Every column of `image_generators`
/// must lie in `span(kernel)` up to the tolerance; the result is the space of
/// harmonic representatives when `kernel` spans cycles and `image_generators`
/// spans boundaries.
pub fn quotient_basis(
    kernel: &DMatrix<f64>,
    image_generators: &DMatrix<f64>,
    tol: Tolerance,
) -> Result<DMatrix<f64>> {
    check_finite(kernel, "quotient_basis kernel")?;
    check_finite(image_generators, "quotient_basis image")?;
    let k = kernel.ncols();
    if k == 0 {
        return Ok(DMatrix::zeros(kernel.nrows(), 0));
    }
    // Containment check: residual of each generator against the kernel.
    for j in 0..image_generators.ncols() {
        let g = image_generators.column(j);
        let coords = kernel.transpose() * g;
        let residual = (g - kernel * &coords).norm();
        let gate = tol.residual_gate(g.norm());
        if residual > gate {
            return Err(Error::ImageNotInKernel {
                residual,
                tol: gate,
            });
        }
    }
    let coords = kernel.transpose() * image_generators; // k x j
    let complement = kernel_basis(&coords.transpose(), tol)?; // null(coords^T) in R^k
    Ok(kernel * complement)
}

/// Minimum-norm least-squares solution of `m x = b`.
///
/// Returns the solution together with the residual `|m x - b|`; the caller
/// decides whether the residual means "no preimage exists".
pub fn least_squares_solve(
    m: &DMatrix<f64>,
    b: &DVector<f64>,
    tol: Tolerance,
) -> Result<(DVector<f64>, f64)> {
    check_finite(m, "least_squares_solve matrix")?;
    if !b.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFiniteInput("least_squares_solve rhs"));
    }
    assert_eq!(m.nrows(), b.nrows(), "dimension mismatch in least squares");
    if m.ncols() == 0 {
        return Ok((DVector::zeros(0), b.norm()));
    }
    if m.nrows() == 0 {
        return Ok((DVector::zeros(m.ncols()), 0.0));
    }
    let svd = m.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let x = svd
        .solve(b, tol.cutoff(sigma_max))
        .expect("SVD solve with u/v computed");
    let residual = (m * &x - b).norm();
    Ok((x, residual))
}

/// Orthonormal basis of the column space of `m`.
pub fn column_space_basis(m: &DMatrix<f64>, tol: Tolerance) -> Result<DMatrix<f64>> {
    check_finite(m, "column_space_basis")?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(DMatrix::zeros(m.nrows(), 0));
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("SVD requested u");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol.cutoff(sigma_max);
    let keep: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] > cutoff).collect();
    let mut basis = DMatrix::zeros(m.nrows(), keep.len());
    for (j, &i) in keep.iter().enumerate() {
        basis.set_column(j, &u.column(i));
    }
    Ok(basis)
}

/// Frobenius norm, also defined for empty matrices.
pub fn fro_norm(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn kernel_of_zero_matrix_is_identity() {
        let m = DMatrix::zeros(2, 2);
        let k = kernel_basis(&m, Tolerance::default()).unwrap();
        assert_eq!(k.ncols(), 2);
        assert_relative_eq!((k.transpose() * &k), DMatrix::identity(2, 2), epsilon = 1e-12);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = DMatrix::identity(3, 3);
        let k = kernel_basis(&m, Tolerance::default()).unwrap();
        assert_eq!(k.ncols(), 0);
    }

    #[test]
    fn kernel_of_wide_matrix_has_full_complement() {
        // 1x3 row picks out x: kernel is the yz-plane.
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0]);
        let k = kernel_basis(&m, Tolerance::default()).unwrap();
        assert_eq!(k.ncols(), 2);
        assert!(fro_norm(&(&m * &k)) < 1e-12);
    }

    #[test]
    fn quotient_of_plane_by_axis_is_other_axis() {
        let kernel = DMatrix::identity(2, 2);
        let image = DMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
        let q = quotient_basis(&kernel, &image, Tolerance::default()).unwrap();
        assert_eq!(q.ncols(), 1);
        assert_relative_eq!(q[(0, 0)].abs(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(q[(1, 0)].abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn quotient_by_nothing_is_whole_kernel() {
        let kernel = DMatrix::identity(2, 2);
        let image = DMatrix::zeros(2, 0);
        let q = quotient_basis(&kernel, &image, Tolerance::default()).unwrap();
        assert_eq!(q.ncols(), 2);
    }

    #[test]
    fn quotient_rejects_vectors_outside_kernel() {
        let kernel = DMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
        let image = DMatrix::from_column_slice(2, 1, &[0.0, 1.0]);
        let err = quotient_basis(&kernel, &image, Tolerance::default()).unwrap_err();
        assert!(matches!(err, Error::ImageNotInKernel { .. }));
    }

    #[test]
    fn least_squares_on_identity_returns_rhs() {
        let m = DMatrix::identity(3, 3);
        let b = DVector::from_column_slice(&[1.0, -2.0, 0.5]);
        let (x, r) = least_squares_solve(&m, &b, Tolerance::default()).unwrap();
        assert_relative_eq!(x, b, epsilon = 1e-12);
        assert!(r < 1e-12);
    }

    #[test]
    fn least_squares_orthogonal_target() {
        // Column (1,1)^T with rhs (1,-1): best solution is 0, residual sqrt(2).
        let m = DMatrix::from_column_slice(2, 1, &[1.0, 1.0]);
        let b = DVector::from_column_slice(&[1.0, -1.0]);
        let (x, r) = least_squares_solve(&m, &b, Tolerance::default()).unwrap();
        assert_relative_eq!(x[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(r, 2.0_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let m = DMatrix::from_row_slice(1, 1, &[f64::NAN]);
        assert!(matches!(
            kernel_basis(&m, Tolerance::default()),
            Err(Error::NonFiniteInput(_))
        ));
    }

    proptest! {
        /// Rank-nullity holds exactly on random small matrices.
        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-5.0f64..5.0, 36)) {
            let m = DMatrix::from_fn(rows, cols, |i, j| seed[i * 6 + j]);
            let tol = Tolerance::default();
            let k = kernel_basis(&m, tol).unwrap();
            let r = rank(&m, tol).unwrap();
            prop_assert_eq!(r + k.ncols(), cols);
            // Columns actually lie in the kernel.
            prop_assert!(fro_norm(&(&m * &k)) <= tol.cutoff(fro_norm(&m)) * (cols as f64));
        }

        /// Kernel dimension is invariant under row and column permutation.
        #[test]
        fn kernel_dim_permutation_invariant(seed in proptest::collection::vec(-3.0f64..3.0, 16)) {
            let m = DMatrix::from_fn(4, 4, |i, j| {
                // Make rank deficiency likely.
                let v = seed[i * 4 + j];
                if v.abs() < 1.0 { 0.0 } else { v }
            });
            let tol = Tolerance::default();
            let k0 = kernel_basis(&m, tol).unwrap().ncols();
            let mut perm = m.clone();
            perm.swap_rows(0, 3);
            perm.swap_columns(1, 2);
            let k1 = kernel_basis(&perm, tol).unwrap().ncols();
            prop_assert_eq!(k0, k1);
        }
    }
}
