use super::group::MatrixGroup;
use super::roots::reflection_matrix;
use super::simple::SimpleSystem;
use crate::error::{Error, Result};
use crate::linalg::{lex_cmp, Mat, Vector, EPS_GEOM};

/// Result of locating the chamber `wC(Π)` that contains a point.
#[derive(Clone, Debug)]
pub struct ChamberLookup {
    /// Index of `w` in the group's element list.
    pub element: usize,
    /// `w⁻¹x`, a point of the closed fundamental cone.
    pub canonical: Vector,
    /// The point lies within `ε_geom` of a wall.
    pub boundary: bool,
}

/// Finds `w ∈ W` with `w⁻¹x ∈ C(Π)` by reflecting `x` through any simple wall
/// it lies behind until none remains.
///
/// Points within `ε_geom` of a wall are flagged; for those, `w` is the
/// lexicographically least element (row-major) among all admissible ones.
pub fn chamber_of(x: &Vector, simple: &SimpleSystem, group: &MatrixGroup) -> Result<ChamberLookup> {
    let n = x.len();
    if n != group.dim() {
        return Err(Error::DimensionMismatch {
            expected: group.dim(),
            got: n,
        });
    }
    let reflections: Vec<Mat> = simple.roots().iter().map(reflection_matrix).collect::<Result<_>>()?;
    let mut y = x.clone();
    let mut w = Mat::identity(n, n);
    // Each step strictly decreases the number of positive roots separating y
    // from C(Π); the bound is generous.
    let max_steps = 4 * group.order() + 16;
    let mut steps = 0;
    while let Some(i) = simple.roots().iter().position(|a| a.dot(&y) < 0.0) {
        y = &reflections[i] * &y;
        w = &w * &reflections[i];
        steps += 1;
        if steps > max_steps {
            return Err(Error::InvalidInput("chamber walk did not terminate".into()));
        }
    }
    let boundary = simple.roots().iter().any(|a| a.dot(&y).abs() <= EPS_GEOM);
    if boundary {
        let best = group
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, g)| {
                let c = g.transpose() * x;
                simple.roots().iter().all(|a| a.dot(&c) >= -EPS_GEOM)
            })
            .min_by(|(_, a), (_, b)| lex_cmp(a, b))
            .map(|(i, _)| i)
            .ok_or_else(|| Error::InvalidInput("no group element maps x into C(Π)".into()))?;
        return Ok(ChamberLookup {
            element: best,
            canonical: group.elements()[best].transpose() * x,
            boundary: true,
        });
    }
    let element = group
        .index_of(&w)
        .ok_or_else(|| Error::InvalidInput("group does not contain the chamber element".into()))?;
    Ok(ChamberLookup {
        element,
        canonical: y,
        boundary: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::roots::{build_root_system, Family};
    use crate::coxeter::simple::simple_system;
    use nalgebra::DVector;

    #[test]
    fn interior_point_maps_to_identity() {
        let rs = build_root_system(Family::Dihedral(4)).unwrap();
        let pi = simple_system(&rs, None).unwrap();
        let w = MatrixGroup::weyl(&pi).unwrap();
        // chamber is the wedge 0 < θ < π/4
        let x = DVector::from_vec(vec![1.0, 0.2]);
        let hit = chamber_of(&x, &pi, &w).unwrap();
        assert_eq!(hit.element, 0);
        assert!(!hit.boundary);
    }

    #[test]
    fn reflected_point_maps_to_that_reflection() {
        let rs = build_root_system(Family::A3).unwrap();
        let pi = simple_system(&rs, None).unwrap();
        let w = MatrixGroup::weyl(&pi).unwrap();
        let dual = crate::coxeter::dual_basis(&pi).unwrap();
        let y: Vector = dual.vectors().iter().sum::<Vector>() * 0.3;
        for a in pi.roots() {
            let r = reflection_matrix(a).unwrap();
            let hit = chamber_of(&(&r * &y), &pi, &w).unwrap();
            assert_eq!(hit.element, w.index_of(&r).unwrap());
            assert!((hit.canonical - &y).norm() < 1e-12);
        }
    }

    #[test]
    fn wall_points_are_flagged_with_least_element() {
        let rs = build_root_system(Family::Dihedral(2)).unwrap();
        let pi = simple_system(&rs, Some(&DVector::from_vec(vec![2.0, 1.0]))).unwrap();
        let w = MatrixGroup::weyl(&pi).unwrap();
        let x = DVector::from_vec(vec![0.0, 1.0]);
        let a = chamber_of(&x, &pi, &w).unwrap();
        assert!(a.boundary);
        let again = chamber_of(&x, &pi, &w).unwrap();
        assert_eq!(a.element, again.element);
    }
}
