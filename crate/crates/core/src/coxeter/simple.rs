use std::f64::consts::{E, PI};

use nalgebra::DVector;

use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::linalg::{mat_from_columns, try_inverse, Mat, Vector, EPS_GEOM};
use crate::region::Frame;

/// Default generic order vector `(1, 1/π, 1/π², …)`.
pub fn default_order_vector(dim: usize) -> Vector {
    DVector::from_fn(dim, |i, _| PI.powi(-(i as i32)))
}

/// Simple roots `Π` of a root system with respect to the ordering induced by
/// `order_vector`, sorted by decreasing `(α, order_vector)`.
#[derive(Clone, Debug)]
pub struct SimpleSystem {
    simple_roots: Vec<Vector>,
    order_vector: Vector,
}

impl SimpleSystem {
    /// Builds a simple system directly from a basis. Used for hand-picked
    /// examples; no root system is consulted.
    pub fn from_basis(simple_roots: Vec<Vector>, order_vector: Vector) -> Result<Self> {
        let m = mat_from_columns(&simple_roots);
        try_inverse(&m)?;
        Ok(Self {
            simple_roots,
            order_vector,
        })
    }

    pub fn roots(&self) -> &[Vector] {
        &self.simple_roots
    }

    pub fn order_vector(&self) -> &Vector {
        &self.order_vector
    }

    pub fn dim(&self) -> usize {
        self.simple_roots.len()
    }

    /// Matrix whose columns are the simple roots.
    pub fn matrix(&self) -> Mat {
        mat_from_columns(&self.simple_roots)
    }

    /// Rescales every simple root by the same positive factor so that
    /// `|det Π| = 1`. Walls, chambers and reflections are unchanged; the dual
    /// basis, and hence every frame built on it, becomes unimodular.
    pub fn unimodular(&self) -> Self {
        let det = self.matrix().determinant().abs();
        let c = det.powf(-1.0 / self.dim() as f64);
        Self {
            simple_roots: self.simple_roots.iter().map(|r| r * c).collect(),
            order_vector: self.order_vector.clone(),
        }
    }

    /// Coefficients of `v` in the basis `Π`.
    pub fn coordinates(&self, v: &Vector) -> Result<Vector> {
        Ok(try_inverse(&self.matrix())? * v)
    }
}

/// Positive roots with respect to `order_vector`.
pub fn positive_roots(rs: &RootSystem, order_vector: &Vector) -> Vec<Vector> {
    rs.roots()
        .iter()
        .filter(|r| r.dot(order_vector) > 0.0)
        .cloned()
        .collect()
}

/// Index subsets of `0..n` with exactly `k` elements, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Whether `target` is a nonnegative combination of a linearly independent
/// subset of `pool` (Carathéodory: subsets of size at most `dim` suffice).
fn in_cone_of(target: &Vector, pool: &[Vector], dim: usize) -> bool {
    for k in 2..=dim.min(pool.len()) {
        for idx in combinations(pool.len(), k) {
            let cols: Vec<Vector> = idx.iter().map(|&i| pool[i].clone()).collect();
            let m = mat_from_columns(&cols);
            let gram = m.transpose() * &m;
            if gram.determinant().abs() <= 1e-10 {
                continue;
            }
            let Some(ginv) = gram.try_inverse() else { continue };
            let c = ginv * (m.transpose() * target);
            let residual = (&m * &c - target).norm();
            if residual <= 1e-9 && c.iter().all(|&x| x >= -1e-12) {
                return true;
            }
        }
    }
    false
}

/// Computes the simple system contained in the positive system determined by
/// `order_vector` (default [`default_order_vector`]). A positive root is simple
/// when it is an extreme ray of the cone spanned by the positive roots.
pub fn simple_system(rs: &RootSystem, order_vector: Option<&Vector>) -> Result<SimpleSystem> {
    const RETRIES: usize = 8;
    let dim = rs.dim();
    let base = order_vector.cloned().unwrap_or_else(|| default_order_vector(dim));
    if base.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: base.len(),
        });
    }
    let mut v = base.clone();
    let mut attempt = 0;
    while rs
        .roots()
        .iter()
        .any(|r| r.dot(&v).abs() <= EPS_GEOM * r.norm() * v.norm())
    {
        attempt += 1;
        if attempt > RETRIES {
            return Err(Error::Genericity { retries: RETRIES });
        }
        let bump = DVector::from_fn(dim, |i, _| E.powi(-(i as i32 + 1)) * 1e-3 * attempt as f64);
        v = &base + bump;
    }

    let positive = positive_roots(rs, &v);
    let mut simple: Vec<Vector> = positive
        .iter()
        .enumerate()
        .filter(|(i, a)| {
            let others: Vec<Vector> = positive
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, b)| b.clone())
                .collect();
            !in_cone_of(a, &others, dim)
        })
        .map(|(_, a)| a.clone())
        .collect();
    if simple.len() != dim {
        return Err(Error::Rank(format!(
            "found {} simple roots in dimension {dim}",
            simple.len()
        )));
    }
    simple.sort_by(|a, b| b.dot(&v).total_cmp(&a.dot(&v)));
    SimpleSystem::from_basis(simple, v)
}

/// Dual basis `Π*` with `(α_i, α_j*) = δ_ij`.
#[derive(Clone, Debug)]
pub struct DualBasis {
    dual_roots: Vec<Vector>,
}

impl DualBasis {
    pub fn vectors(&self) -> &[Vector] {
        &self.dual_roots
    }

    pub fn matrix(&self) -> Mat {
        mat_from_columns(&self.dual_roots)
    }

    /// The working frame whose coordinate directions are the dual vectors.
    pub fn frame(&self) -> Result<Frame> {
        Frame::new(self.matrix())
    }

    /// `max_{i,j} |(α_i, α_j*) − δ_ij|`.
    pub fn max_gram_error(&self, simple: &SimpleSystem) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in simple.roots().iter().enumerate() {
            for (j, d) in self.dual_roots.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dot(d) - target).abs());
            }
        }
        worst
    }
}

pub fn dual_basis(simple: &SimpleSystem) -> Result<DualBasis> {
    let inv_t = try_inverse(&simple.matrix())?.transpose();
    Ok(DualBasis {
        dual_roots: inv_t.column_iter().map(|c| c.into_owned()).collect(),
    })
}

/// Polyhedral cone `{x : (x, n) ≥ 0 for every wall normal n}` with apex at 0.
#[derive(Clone, Debug)]
pub struct Cone {
    normals: Vec<Vector>,
}

impl Cone {
    pub fn new(normals: Vec<Vector>) -> Self {
        Self { normals }
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn wall_count(&self) -> usize {
        self.normals.len()
    }

    /// Closed membership with tolerance `tol`.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.normals.iter().all(|n| x.dot(n) >= -tol)
    }

    /// Open membership: strictly positive against every wall by more than `tol`.
    pub fn contains_interior(&self, x: &Vector, tol: f64) -> bool {
        self.normals.iter().all(|n| x.dot(n) > tol)
    }

    /// Smallest `|(x, n)|` over walls; distance-like only for unit normals.
    pub fn wall_proximity(&self, x: &Vector) -> f64 {
        self.normals
            .iter()
            .map(|n| x.dot(n).abs() / n.norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// `C(Π) = {λ : (λ, α) ≥ 0 ∀ α ∈ Π}`.
pub fn fundamental_cone(simple: &SimpleSystem) -> Cone {
    Cone::new(simple.roots().to_vec())
}
