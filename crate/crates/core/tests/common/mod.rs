//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use coxwave::region::{Cell, Frame};
use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Composite rule on `[lo, hi)`: `panels` equal panels of `order` points.
pub fn composite(lo: f64, hi: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let a = lo + h * p as f64;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((a + 0.5 * h * (xi + 1.0), 0.5 * h * wi));
        }
    }
    out
}

/// `∫_{F·cell} g(x) dx` by tensor-product quadrature in frame coordinates.
/// The panel count per axis follows the oscillation count `|freq_j|·width`.
pub fn cell_quadrature(frame: &Frame, cell: &Cell, freq_scale: &[f64], g: &dyn Fn(&[f64]) -> Complex64) -> Complex64 {
    let d = cell.dim();
    let rules: Vec<Vec<(f64, f64)>> = (0..d)
        .map(|j| {
            let (lo, hi) = (cell.lo_f64()[j], cell.hi_f64()[j]);
            let waves = freq_scale[j] * (hi - lo);
            let panels = (2.0 * waves).ceil().max(2.0) as usize;
            composite(lo, hi, panels, 12)
        })
        .collect();
    let b = frame.basis();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0; d];
    loop {
        let mut w = frame.det_abs();
        for i in 0..d {
            x[i] = 0.0;
        }
        for (j, &k) in idx.iter().enumerate() {
            let (u, wj) = rules[j][k];
            w *= wj;
            for i in 0..d {
                x[i] += b[(i, j)] * u;
            }
        }
        acc += g(&x) * w;
        let mut axis = 0;
        loop {
            if axis == d {
                return acc;
            }
            idx[axis] += 1;
            if idx[axis] < rules[axis].len() {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
}

/// Oscillation scale of `e^{2πi(ξ,x)}` along each frame axis: `|Fᵀξ|_j`.
pub fn frame_freq(frame: &Frame, xi: &[f64]) -> Vec<f64> {
    let b = frame.basis();
    (0..xi.len())
        .map(|j| (0..xi.len()).map(|i| b[(i, j)] * xi[i]).sum::<f64>().abs())
        .collect()
}

pub fn expi(phase: f64) -> Complex64 {
    Complex64::new(0.0, 2.0 * PI * phase).exp()
}
