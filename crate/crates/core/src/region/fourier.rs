//! Closed-form exponential integrals over box regions.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::cell::Cell;
use super::frame::Frame;
use super::set::Region;

/// `(e^z − 1)/z`, continuous at `z = 0`.
pub(crate) fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        // Taylor series; five terms give full double precision on this disk
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..=7 {
            term = term * z / k as f64;
            sum += term;
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `∫_lo^hi e^{2πi η u} du` for complex `η`.
#[inline]
pub(crate) fn interval_integral(eta: Complex64, lo: f64, hi: f64) -> Complex64 {
    let width = hi - lo;
    let phase = Complex64::new(0.0, 2.0 * PI) * eta;
    (phase * lo).exp() * exprel(phase * width) * width
}

/// `η = Fᵀζ` for a complex frequency `ζ`.
pub(crate) fn frame_frequency(frame: &Frame, zeta: &[Complex64]) -> Vec<Complex64> {
    let b = frame.basis();
    let n = frame.dim();
    (0..n)
        .map(|j| (0..n).fold(Complex64::new(0.0, 0.0), |acc, i| acc + zeta[i] * b[(i, j)]))
        .collect()
}

/// `∫_{F·cell} e^{2πi(ζ,λ)} dλ` given `η = Fᵀζ` and `|det F|`.
pub(crate) fn cell_integral(cell: &Cell, eta: &[Complex64], det_abs: f64) -> Complex64 {
    let mut acc = Complex64::new(det_abs, 0.0);
    for (j, &e) in eta.iter().enumerate() {
        acc *= interval_integral(e, cell.lo_f64()[j], cell.hi_f64()[j]);
    }
    acc
}

impl Region {
    /// `∫_A e^{2πi(ζ,λ)} dλ` for a complex frequency vector `ζ`, evaluated cell
    /// by cell in closed form.
    pub fn exponential_integral(&self, zeta: &[Complex64]) -> Complex64 {
        let eta = frame_frequency(self.frame(), zeta);
        let det = self.frame().det_abs();
        self.cells().iter().map(|c| cell_integral(c, &eta, det)).sum()
    }

    /// `𝓕χ_A(ξ) = ∫_A e^{−2πi(ξ,x)} dx`.
    pub fn fourier_indicator(&self, xi: &[f64]) -> Complex64 {
        let zeta: Vec<Complex64> = xi.iter().map(|&x| Complex64::new(-x, 0.0)).collect();
        self.exponential_integral(&zeta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qi};

    #[test]
    fn zero_frequency_gives_volume() {
        let f = Frame::from_columns(&[vec![1.0, 0.0], vec![0.5, 1.5]]).unwrap();
        let r = Region::from_box(f, vec![qi(0), q(1, 3)], vec![q(5, 2), qi(1)]).unwrap();
        let v = r.fourier_indicator(&[0.0, 0.0]);
        assert!((v.re - r.volume()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn full_period_vanishes() {
        let r = Region::from_box(Frame::identity(1), vec![qi(0)], vec![qi(1)]).unwrap();
        assert!(r.fourier_indicator(&[1.0]).norm() < 1e-15);
    }

    #[test]
    fn exprel_is_smooth_across_switch() {
        let z = Complex64::new(0.0, 0.999e-3);
        let w = Complex64::new(0.0, 1.001e-3);
        assert!((exprel(z) - exprel(w)).norm() < 1e-5);
        assert!((exprel(Complex64::new(0.0, 0.0)) - 1.0).norm() == 0.0);
    }
}
