//! Small dense linear algebra on top of nalgebra.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Determinant by LU with partial pivoting; the empty matrix has det 1.
pub fn det(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 1.0;
    }
    m.clone().lu().determinant()
}

/// `H[i][j] = coeffs[offset + i + j]`, `dim × dim`.
pub fn hankel(coeffs: &[f64], offset: usize, dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| coeffs[offset + i + j])
}

/// A one-dimensional null space and the singular values that certify it.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub vector: Vec<f64>,
    pub sigma_min: f64,
    pub sigma_second: f64,
    pub sigma_max: f64,
}

/// Relative gap required between the smallest and largest singular value.
pub const KERNEL_REL_TOL: f64 = 1e-8;
/// Required ratio between the smallest and the next singular value.
pub const KERNEL_GAP_TOL: f64 = 1e-4;

/// Right singular vector of the least singular value of a square matrix.
pub fn kernel_vector(m: &DMatrix<f64>) -> Result<Kernel> {
    let n = m.ncols();
    assert!(n >= 1 && m.nrows() >= n, "kernel_vector needs rows >= cols >= 1");
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[i].total_cmp(&sv[j]));
    let sigma_min = sv[order[0]];
    let sigma_second = if n > 1 { sv[order[1]] } else { f64::INFINITY };
    let sigma_max = sv[order[n - 1]];
    // a 1×1 system has no second singular value; it only has a kernel when zero
    let separated = if n == 1 {
        sigma_min == 0.0
    } else {
        sigma_min < KERNEL_REL_TOL * sigma_max && sigma_min < KERNEL_GAP_TOL * sigma_second
    };
    if !separated {
        return Err(Error::NoKernel {
            sigma_min,
            sigma_second,
            sigma_max,
        });
    }
    let row = v_t.row(order[0]);
    Ok(Kernel {
        vector: row.iter().copied().collect(),
        sigma_min,
        sigma_second,
        sigma_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert!((det(&m) + 2.0).abs() < 1e-14);
        assert_eq!(det(&DMatrix::zeros(0, 0)), 1.0);
    }

    #[test]
    fn hankel_layout() {
        let h = hankel(&[0.0, 1.0, 2.0, 3.0, 4.0], 1, 2);
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 3.0]));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.5, 1.0, 2.0, 3.0]);
        let k = kernel_vector(&m).unwrap();
        let v = nalgebra::DVector::from_vec(k.vector);
        assert!((&m * &v).norm() < 1e-12);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_rank_has_no_kernel() {
        let m = DMatrix::<f64>::identity(3, 3);
        assert!(matches!(kernel_vector(&m), Err(Error::NoKernel { .. })));
    }
}
