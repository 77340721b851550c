use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector, EPS_GEOM};

/// Reflection through the hyperplane orthogonal to `alpha`:
/// `λ ↦ λ − 2(λ,α)/(α,α) α`.
pub fn reflection_matrix(alpha: &Vector) -> Result<Mat> {
    let nn = alpha.norm_squared();
    if !(nn > 0.0) || !nn.is_finite() {
        return Err(Error::InvalidInput("reflection vector must be nonzero".into()));
    }
    let n = alpha.len();
    Ok(Mat::identity(n, n) - (alpha * alpha.transpose()) * (2.0 / nn))
}

/// Supported finite reflection-group families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Dihedral group of order `2m` acting on the plane.
    Dihedral(u32),
    /// Symmetries of the regular tetrahedron, `Sym(4)`.
    A3,
    /// Symmetries of the cube.
    B3,
    /// `I2(m) × A1` acting on ℝ³.
    DihedralTimesA1(u32),
}

impl Family {
    pub fn dim(&self) -> usize {
        match self {
            Family::Dihedral(_) => 2,
            _ => 3,
        }
    }

    /// Number of roots in the root system.
    pub fn root_count(&self) -> usize {
        match *self {
            Family::Dihedral(m) => 2 * m as usize,
            Family::A3 => 12,
            Family::B3 => 18,
            Family::DihedralTimesA1(m) => 2 * m as usize + 2,
        }
    }

    /// Order of the generated reflection group.
    pub fn group_order(&self) -> usize {
        match *self {
            Family::Dihedral(m) => 2 * m as usize,
            Family::A3 => 24,
            Family::B3 => 48,
            Family::DihedralTimesA1(m) => 4 * m as usize,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Dihedral(m) => write!(f, "I2:{m}"),
            Family::A3 => write!(f, "A3"),
            Family::B3 => write!(f, "B3"),
            Family::DihedralTimesA1(m) => write!(f, "I2:{m}xA1"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `I2:m`, `I2(m)`, `A3`, `B3`, `I2:mxA1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace(['(', ')'], ":").replace("::", ":");
        let t = t.trim_end_matches(':');
        let unsupported = || Error::UnsupportedFamily(s.to_string());
        match t {
            "A3" => return Ok(Family::A3),
            "B3" => return Ok(Family::B3),
            _ => {}
        }
        let rest = t.strip_prefix("I2:").ok_or_else(unsupported)?;
        let (num, product) = match rest.split_once(['x', 'X', '×']) {
            Some((n, tail)) if tail.trim_start_matches(':') == "A1" => (n.trim_end_matches(':'), true),
            Some(_) => return Err(unsupported()),
            None => (rest, false),
        };
        let m: u32 = num.parse().map_err(|_| unsupported())?;
        if m < 2 {
            return Err(unsupported());
        }
        Ok(if product {
            Family::DihedralTimesA1(m)
        } else {
            Family::Dihedral(m)
        })
    }
}

/// A finite root system: spanning, reduced (`±α` only), closed under its reflections.
#[derive(Clone, Debug)]
pub struct RootSystem {
    dim: usize,
    roots: Vec<Vector>,
    family: Family,
}

impl RootSystem {
    pub fn build(family: Family) -> Result<Self> {
        build_root_system(family)
    }

    /// Wraps an explicit root list after checking the three root-system axioms.
    pub fn from_roots(family: Family, roots: Vec<Vector>) -> Result<Self> {
        let dim = roots
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::InvalidInput("empty root list".into()))?;
        let rs = Self { dim, roots, family };
        rs.check_axioms()?;
        Ok(rs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.roots.iter().any(|r| (r - v).norm() <= EPS_GEOM)
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        if self.roots.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidInput("roots of mixed dimension".into()));
        }
        if self.roots.iter().any(|r| r.norm() <= EPS_GEOM) {
            return Err(Error::InvalidInput("zero root".into()));
        }
        // Spanning: the Gram-type matrix Σ ααᵀ is positive definite.
        let mut scatter = Mat::zeros(d, d);
        for r in &self.roots {
            scatter += r * r.transpose();
        }
        let min_eig = scatter.symmetric_eigenvalues().min();
        if min_eig <= 1e-9 {
            return Err(Error::InvalidInput("roots do not span the ambient space".into()));
        }
        for a in &self.roots {
            for b in &self.roots {
                // Parallel roots must be exactly ±a.
                let cross = a.dot(b).abs() - a.norm() * b.norm();
                if cross.abs() <= 1e-9 * a.norm() * b.norm() {
                    let same = (a - b).norm() <= EPS_GEOM;
                    let opposite = (a + b).norm() <= EPS_GEOM;
                    if !same && !opposite {
                        return Err(Error::InvalidInput(
                            "root system contains a non-trivial scalar multiple".into(),
                        ));
                    }
                }
            }
            if !self.contains(&(-a)) {
                return Err(Error::InvalidInput("root system is not symmetric under α ↦ −α".into()));
            }
            let r = reflection_matrix(a)?;
            for b in &self.roots {
                if !self.contains(&(&r * b)) {
                    return Err(Error::InvalidInput(
                        "root system is not closed under its reflections".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Orthonormal basis of the sum-zero hyperplane of ℝ⁴, used to place `A3` in ℝ³.
fn sum_zero_basis() -> [[f64; 4]; 3] {
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let s12 = 12f64.sqrt();
    [
        [1.0 / s2, -1.0 / s2, 0.0, 0.0],
        [1.0 / s6, 1.0 / s6, -2.0 / s6, 0.0],
        [1.0 / s12, 1.0 / s12, 1.0 / s12, -3.0 / s12],
    ]
}

fn dihedral_roots(m: u32) -> Vec<Vector> {
    (0..2 * m)
        .map(|k| {
            let t = k as f64 * PI / m as f64;
            let (s, c) = t.sin_cos();
            // snap tiny values so that e.g. I2(2) is exactly {±e1, ±e2}
            let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
            DVector::from_vec(vec![snap(c), snap(s)])
        })
        .collect()
}

pub fn build_root_system(family: Family) -> Result<RootSystem> {
    let roots = match family {
        Family::Dihedral(m) => {
            if m < 2 {
                return Err(Error::UnsupportedFamily(family.to_string()));
            }
            dihedral_roots(m)
        }
        Family::DihedralTimesA1(m) => {
            if m < 2 {
                return Err(Error::UnsupportedFamily(family.to_string()));
            }
            let mut roots: Vec<Vector> = dihedral_roots(m)
                .into_iter()
                .map(|r| DVector::from_vec(vec![r[0], r[1], 0.0]))
                .collect();
            roots.push(DVector::from_vec(vec![0.0, 0.0, 1.0]));
            roots.push(DVector::from_vec(vec![0.0, 0.0, -1.0]));
            roots
        }
        Family::A3 => {
            let basis = sum_zero_basis();
            let mut roots = Vec::with_capacity(12);
            for i in 0..4 {
                for j in 0..4 {
                    if i == j {
                        continue;
                    }
                    let mut e = [0.0; 4];
                    e[i] = 1.0;
                    e[j] = -1.0;
                    let coords: Vec<f64> = basis
                        .iter()
                        .map(|b| b.iter().zip(&e).map(|(x, y)| x * y).sum())
                        .collect();
                    roots.push(DVector::from_vec(coords));
                }
            }
            roots
        }
        Family::B3 => {
            let mut roots = Vec::with_capacity(18);
            for i in 0..3 {
                for s in [1.0, -1.0] {
                    let mut v = DVector::zeros(3);
                    v[i] = s;
                    roots.push(v);
                }
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        let mut v = DVector::zeros(3);
                        v[i] = si;
                        v[j] = sj;
                        roots.push(v);
                    }
                }
            }
            roots
        }
    };
    let rs = RootSystem::from_roots(family, roots)?;
    debug_assert_eq!(rs.roots.len(), family.root_count());
    Ok(rs)
}
