use std::f64::consts::PI;

use super::roots::{reflection_matrix, RootSystem};
use super::simple::SimpleSystem;
use crate::error::{Error, Result};
use crate::linalg::{mat_approx_eq, Mat, EPS_GEOM};

pub const DEFAULT_MAX_ORDER: usize = 1024;

/// A finite group of orthogonal matrices, stored as its full element list.
/// Element 0 is always the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<Mat>,
    generators: Vec<Mat>,
}

/// The reflection groups `W(Δ)` of this crate are matrix groups generated by
/// reflections.
pub type ReflectionGroup = MatrixGroup;

fn is_orthogonal(m: &Mat) -> bool {
    let n = m.nrows();
    m.is_square() && mat_approx_eq(&(m.transpose() * m), &Mat::identity(n, n), 1e-9)
}

/// Checks that `m` is an orthogonal involution fixing a hyperplane.
pub fn is_reflection(m: &Mat) -> bool {
    if !is_orthogonal(m) {
        return false;
    }
    let n = m.nrows();
    let id = Mat::identity(n, n);
    if !mat_approx_eq(&(m * m), &id, 1e-9) {
        return false;
    }
    // trace of a reflection is n − 2
    (m.trace() - (n as f64 - 2.0)).abs() < 1e-9
}

impl MatrixGroup {
    /// Closes `generators` under multiplication. Fails with
    /// [`Error::NonFiniteGroup`] once more than `max_order` elements appear.
    pub fn generate(generators: Vec<Mat>, max_order: usize) -> Result<Self> {
        let n = generators
            .first()
            .map(Mat::nrows)
            .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        if generators.iter().any(|g| !is_orthogonal(g) || g.nrows() != n) {
            return Err(Error::InvalidInput("generators must be orthogonal n×n matrices".into()));
        }
        let mut elements = vec![Mat::identity(n, n)];
        let mut frontier = 0;
        while frontier < elements.len() {
            let g = elements[frontier].clone();
            frontier += 1;
            for s in &generators {
                let h = &g * s;
                if !elements.iter().any(|e| mat_approx_eq(e, &h, EPS_GEOM)) {
                    elements.push(h);
                    if elements.len() > max_order {
                        return Err(Error::NonFiniteGroup { max_order });
                    }
                }
            }
        }
        Ok(Self { elements, generators })
    }

    /// `generate` with reflection generators only.
    pub fn from_reflections(generators: Vec<Mat>, max_order: usize) -> Result<Self> {
        if let Some(i) = generators.iter().position(|g| !is_reflection(g)) {
            return Err(Error::InvalidInput(format!("generator {i} is not a reflection")));
        }
        Self::generate(generators, max_order)
    }

    /// `W` generated by the simple reflections `r_α, α ∈ Π`.
    pub fn weyl(simple: &SimpleSystem) -> Result<Self> {
        let gens = simple
            .roots()
            .iter()
            .map(reflection_matrix)
            .collect::<Result<Vec<_>>>()?;
        Self::from_reflections(gens, DEFAULT_MAX_ORDER)
    }

    /// `W` generated by all root reflections.
    pub fn from_root_system(rs: &RootSystem) -> Result<Self> {
        let gens = rs.roots().iter().map(reflection_matrix).collect::<Result<Vec<_>>>()?;
        Self::from_reflections(gens, DEFAULT_MAX_ORDER)
    }

    /// Cyclic rotation group `{R_{2πj/m}}` of the plane.
    pub fn cyclic_rotations(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("rotation order must be positive".into()));
        }
        let t = 2.0 * PI / m as f64;
        let (s, c) = t.sin_cos();
        Self::generate(vec![Mat::from_row_slice(2, 2, &[c, -s, s, c])], DEFAULT_MAX_ORDER)
    }

    pub fn trivial(dim: usize) -> Self {
        Self {
            elements: vec![Mat::identity(dim, dim)],
            generators: vec![],
        }
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.elements.iter().position(|e| mat_approx_eq(e, m, EPS_GEOM))
    }

    /// Exhaustive closure check, `O(|W|²)` products.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|g| self.elements.iter().all(|h| self.index_of(&(g * h)).is_some()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::roots::{build_root_system, Family};
    use crate::coxeter::simple::simple_system;
    use nalgebra::DVector;

    #[test]
    fn single_reflection_has_order_two() {
        let r = reflection_matrix(&DVector::from_vec(vec![0.3, -1.2, 0.5])).unwrap();
        let g = MatrixGroup::from_reflections(vec![r], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn orders_of_supported_families() {
        for fam in [
            Family::Dihedral(2),
            Family::Dihedral(5),
            Family::A3,
            Family::B3,
            Family::DihedralTimesA1(3),
        ] {
            let rs = build_root_system(fam).unwrap();
            let pi = simple_system(&rs, None).unwrap();
            let w = MatrixGroup::weyl(&pi).unwrap();
            assert_eq!(w.order(), fam.group_order(), "{fam}");
            assert!(w.is_closed());
            // simple reflections already generate all root reflections
            let full = MatrixGroup::from_root_system(&rs).unwrap();
            assert_eq!(full.order(), w.order());
        }
    }

    #[test]
    fn irrational_angle_exceeds_cap() {
        let t: f64 = 1.0; // one radian: generates an infinite dihedral group
        let a = DVector::from_vec(vec![1.0, 0.0]);
        let b = DVector::from_vec(vec![t.cos(), t.sin()]);
        let gens = vec![reflection_matrix(&a).unwrap(), reflection_matrix(&b).unwrap()];
        let err = MatrixGroup::from_reflections(gens, 64).unwrap_err();
        assert!(matches!(err, Error::NonFiniteGroup { max_order: 64 }));
    }

    #[test]
    fn rejects_non_reflection_generators() {
        let rot = MatrixGroup::cyclic_rotations(4).unwrap();
        assert_eq!(rot.order(), 4);
        let g = rot.elements()[1].clone();
        assert!(MatrixGroup::from_reflections(vec![g], 16).is_err());
    }
}
