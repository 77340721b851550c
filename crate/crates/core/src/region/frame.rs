use std::f64::consts::PI;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{mat_approx_eq, mat_from_rows, try_inverse, Mat, Vector, EPS_GEOM};

/// Coordinate frame: region coordinates `u` map to ambient points `basis · u`.
#[derive(Clone, Debug)]
pub struct Frame {
    basis: Mat,
    inverse: Mat,
    det_abs: f64,
}

impl Frame {
    pub fn new(basis: Mat) -> Result<Self> {
        let inverse = try_inverse(&basis)?;
        let n = basis.nrows();
        let residual = (&basis * &inverse - Mat::identity(n, n)).norm();
        if residual > 1e-12 * (n as f64) * basis.norm().max(1.0) * inverse.norm().max(1.0) {
            return Err(Error::Rank(format!("ill-conditioned frame, residual {residual:e}")));
        }
        let det_abs = basis.determinant().abs();
        Ok(Self {
            basis,
            inverse,
            det_abs,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            basis: Mat::identity(dim, dim),
            inverse: Mat::identity(dim, dim),
            det_abs: 1.0,
        }
    }

    /// Frame from column vectors.
    pub fn from_columns(cols: &[Vec<f64>]) -> Result<Self> {
        let m = mat_from_rows(cols)?.transpose();
        Self::new(m)
    }

    /// Frame `{(1,0), (cot 2π/m, 1)}` spanning the fundamental wedge of the
    /// rotation group of order `m`.
    pub fn rotation_domain(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::UnsupportedOrder(m));
        }
        let t = 2.0 * PI / m as f64;
        let mut cot = t.cos() / t.sin();
        if cot.abs() < 1e-15 {
            cot = 0.0;
        }
        Self::new(Mat::from_row_slice(2, 2, &[1.0, cot, 0.0, 1.0]))
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn inverse(&self) -> &Mat {
        &self.inverse
    }

    pub fn det_abs(&self) -> f64 {
        self.det_abs
    }

    pub fn to_ambient(&self, u: &[f64]) -> Vector {
        &self.basis * DVector::from_column_slice(u)
    }

    pub fn to_frame(&self, x: &Vector) -> Vec<f64> {
        (&self.inverse * x).iter().copied().collect()
    }

    pub fn same_as(&self, other: &Frame) -> bool {
        mat_approx_eq(&self.basis, &other.basis, EPS_GEOM)
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_domain_for_square_is_standard() {
        let f = Frame::rotation_domain(4).unwrap();
        assert_eq!(f.basis(), &Mat::identity(2, 2));
        let f6 = Frame::rotation_domain(6).unwrap();
        assert!((f6.basis()[(0, 1)] - (PI / 3.0).tan().recip()).abs() < 1e-15);
    }

    #[test]
    fn inverse_round_trip() {
        let f = Frame::from_columns(&[vec![2.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!((f.det_abs() - 2.0).abs() < 1e-15);
        let x = DVector::from_vec(vec![0.3, -0.7]);
        let u = f.to_frame(&x);
        assert!((f.to_ambient(&u) - x).norm() < 1e-15);
        assert!(Frame::from_columns(&[vec![1.0, 1.0], vec![2.0, 2.0]]).is_err());
    }
}
