//! Scaling sets, their splitting into digit pieces `K_i`, and the SMRA
//! multiwavelet sets `Ω_i = B K_i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::DualBasis;
use crate::error::{Error, Result};
use crate::lattice::{digit_representatives, is_subset_lattice, DigitSet, DilationScheme, Lattice, ENUMERATION_LIMIT};
use crate::linalg::{q_to_f64, qmat_vec, Q};
use crate::region::Region;
use crate::tiling::{gram_max_offdiag, is_translation_tile, TileReport};

/// Side lengths `s_j` of the box `{Σ t_j α_j* : 0 ≤ t_j < s_j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingBoxSpec {
    #[serde(with = "crate::io::qvec")]
    pub sides: Vec<Q>,
}

impl ScalingBoxSpec {
    pub fn unit(dim: usize) -> Self {
        Self {
            sides: vec![Q::one(); dim],
        }
    }
}

/// The box `P = ∏ [0, s_j)` in the dual-basis frame.
pub fn standard_scaling_box(dual: &DualBasis, spec: &ScalingBoxSpec) -> Result<Region> {
    let frame = dual.frame()?;
    if spec.sides.len() != frame.dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.dim(),
            got: spec.sides.len(),
        });
    }
    if spec.sides.iter().any(|s| s <= &Q::zero()) {
        return Err(Error::InvalidInput("box sides must be positive".into()));
    }
    Region::from_box(frame, vec![Q::zero(); spec.sides.len()], spec.sides.clone())
}

/// Both halves of the scaling-set test.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    /// `B⁻¹K ⊆ K`.
    pub nested: bool,
    pub tile: TileReport,
}

impl ScalingReport {
    pub fn is_scaling_set(&self) -> bool {
        self.nested && self.tile.is_tile
    }
}

/// `K` is a scaling set for `(B, T)` iff it is a `T`-tile with `B⁻¹K ⊆ K`.
pub fn is_scaling_set(k: &Region, scheme: &DilationScheme, lattice: &Lattice) -> Result<ScalingReport> {
    let shrunk = scheme.apply_power(k, -1)?;
    Ok(ScalingReport {
        nested: shrunk.is_subset(k)?,
        tile: is_translation_tile(k, lattice)?,
    })
}

/// Lattice points `t ∈ T` (frame coordinates) with `lo < t < hi` on every axis.
fn lattice_points_in_box(lattice: &Lattice, lo: &[Q], hi: &[Q]) -> Result<Vec<Vec<Q>>> {
    let h = lattice.hermite_basis();
    let n = lattice.dim();
    let mut out = Vec::new();
    let mut coeffs = vec![BigInt::zero(); n];
    fn recurse(
        axis: usize,
        h: &crate::linalg::QMat,
        lo: &[Q],
        hi: &[Q],
        coeffs: &mut Vec<BigInt>,
        out: &mut Vec<Vec<Q>>,
    ) -> Result<()> {
        let n = h.len();
        // contribution of the already-fixed higher coefficients to this axis
        let fixed: Q = (axis + 1..n).fold(Q::zero(), |acc, k| {
            acc + &h[axis][k] * Q::from_integer(coeffs[k].clone())
        });
        let pivot = &h[axis][axis];
        let first: BigInt = ((&lo[axis] - &fixed) / pivot).floor().to_integer() + 1;
        let last: BigInt = ((&hi[axis] - &fixed) / pivot).ceil().to_integer() - 1;
        let mut c = first;
        while c <= last {
            if out.len() > ENUMERATION_LIMIT {
                return Err(Error::EnumerationOverflow {
                    limit: ENUMERATION_LIMIT,
                });
            }
            coeffs[axis] = c.clone();
            if axis == 0 {
                let cq: Vec<Q> = coeffs.iter().map(|x| Q::from_integer(x.clone())).collect();
                out.push(qmat_vec(h, &cq));
            } else {
                recurse(axis - 1, h, lo, hi, coeffs, out)?;
            }
            c += 1;
        }
        Ok(())
    }
    recurse(n - 1, &h, lo, hi, &mut coeffs, &mut out)?;
    Ok(out)
}

/// `(X + T) ∩ K`, summing over the finitely many translates that can meet `K`.
fn periodize_onto(x: &Region, lattice: &Lattice, k: &Region) -> Result<Region> {
    let (Some((xlo, xhi)), Some((klo, khi))) = (x.bounding_box(), k.bounding_box()) else {
        return Ok(Region::empty(k.frame().clone()));
    };
    let lo: Vec<Q> = klo.iter().zip(&xhi).map(|(a, b)| a - b).collect();
    let hi: Vec<Q> = khi.iter().zip(&xlo).map(|(a, b)| a - b).collect();
    let shifts = lattice_points_in_box(lattice, &lo, &hi)?;
    let mut acc = Region::empty(k.frame().clone());
    for t in shifts {
        let piece = x.translate(&t)?.intersect(k)?;
        if !piece.is_empty() {
            acc = acc.union(&piece)?;
        }
    }
    Ok(acc.coalesce())
}

/// `K_i = (B⁻¹K + B⁻¹v_i + T) ∩ K` for every digit.
pub fn split_scaling_set(
    k: &Region,
    scheme: &DilationScheme,
    lattice: &Lattice,
    digits: &DigitSet,
) -> Result<Vec<Region>> {
    if !k.frame().same_as(scheme.frame()) || !k.frame().same_as(lattice.frame()) {
        return Err(Error::FrameMismatch);
    }
    digits
        .digits
        .par_iter()
        .map(|v| {
            let shifted = k.translate(v)?;
            let x = scheme.apply_power(&shifted, -1)?;
            periodize_onto(&x, lattice, k)
        })
        .collect()
}

/// `Ω_i = B K_i` for `i = 1..q−1`.
pub fn multiwavelet_sets(pieces: &[Region], scheme: &DilationScheme) -> Result<Vec<Region>> {
    pieces.iter().skip(1).map(|p| scheme.apply(p)).collect()
}

/// Scaling set `K` with dilation `B` and lattice `T`; level `j` is `BʲK`.
#[derive(Clone, Debug)]
pub struct MraLadder {
    k: Region,
    scheme: DilationScheme,
    lattice: Lattice,
}

impl MraLadder {
    /// Validates that `K` is a scaling set for `(B, T)`.
    pub fn new(k: Region, scheme: DilationScheme, lattice: Lattice) -> Result<Self> {
        let report = is_scaling_set(&k, &scheme, &lattice)?;
        if !report.nested {
            return Err(Error::InvalidInput("B⁻¹K is not contained in K".into()));
        }
        if !report.tile.is_tile {
            return Err(Error::InvalidInput(format!(
                "K is not a lattice tile (gap {}, overlap {})",
                report.tile.gap_volume, report.tile.overlap_volume
            )));
        }
        Ok(Self { k, scheme, lattice })
    }

    pub fn scaling_set(&self) -> &Region {
        &self.k
    }

    pub fn scheme(&self) -> &DilationScheme {
        &self.scheme
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Frequency support `BʲK` of `V_j`.
    pub fn level(&self, j: i32) -> Result<Region> {
        self.scheme.apply_power(&self.k, j)
    }

    pub fn digits(&self) -> Result<DigitSet> {
        if !is_subset_lattice(&self.scheme, &self.lattice)? {
            return Err(Error::IncompatibleLattice("BT is not contained in T".into()));
        }
        digit_representatives(&self.scheme, &self.lattice)
    }

    /// Digits, pieces, wavelet sets and all set-level checks.
    pub fn decompose(&self, gram_cutoff: f64) -> Result<MraBundle> {
        let digits = self.digits()?;
        let pieces = split_scaling_set(&self.k, &self.scheme, &self.lattice, &digits)?;
        let wavelet_sets = multiwavelet_sets(&pieces, &self.scheme)?;
        let checks = self.checks(&pieces, &wavelet_sets, gram_cutoff)?;
        Ok(MraBundle {
            k: self.k.clone(),
            scheme: SchemeDoc::from(&self.scheme),
            digits,
            pieces,
            wavelet_sets,
            checks,
        })
    }

    fn checks(&self, pieces: &[Region], sets: &[Region], gram_cutoff: f64) -> Result<MraChecks> {
        let k_vol = self.k.coordinate_volume();
        let q = Q::from_integer(BigInt::from(pieces.len()));
        let sum: Q = pieces.iter().fold(Q::zero(), |a, p| a + p.coordinate_volume());
        let mut disjoint = true;
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                disjoint &= a.intersect(b)?.is_empty();
            }
        }
        let equal_parts = pieces.iter().all(|p| p.coordinate_volume() * &q == k_vol);
        let union = pieces
            .iter()
            .try_fold(Region::empty(self.k.frame().clone()), |acc, p| acc.union(p))?;
        let partition = disjoint && equal_parts && sum == k_vol && union.set_eq(&self.k)?;

        let reduced_k = crate::lattice::reduce_mod_lattice(&self.k, &self.lattice)?;
        let mut congruence = reduced_k.overlap.is_zero();
        for s in sets {
            let r = crate::lattice::reduce_mod_lattice(s, &self.lattice)?;
            congruence &= r.overlap.is_zero() && r.region.set_eq(&reduced_k.region)?;
        }

        let bk = self.scheme.apply(&self.k)?;
        let rest = sets.iter().try_fold(self.k.clone(), |acc, s| acc.union(s))?;
        let refinement = bk.coordinate_volume() == &q * &k_vol && bk.set_eq(&rest)?;

        let spectrum = self.lattice.dual_generator()?;
        let gram = sets
            .iter()
            .map(|s| gram_max_offdiag(s, &spectrum, gram_cutoff))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        Ok(MraChecks {
            partition,
            congruence,
            refinement,
            gram,
        })
    }
}

/// Serialized view of a dilation: ambient matrix, frame scales and `q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemeDoc {
    #[serde(rename = "B", with = "crate::io::f17_rows")]
    pub b: Vec<Vec<f64>>,
    #[serde(with = "crate::io::f17_vec")]
    pub a: Vec<f64>,
    pub q: String,
}

impl From<&DilationScheme> for SchemeDoc {
    fn from(s: &DilationScheme) -> Self {
        Self {
            b: crate::linalg::mat_to_rows(&s.ambient()),
            a: s.scales().unwrap_or_default().iter().map(q_to_f64).collect(),
            q: crate::linalg::format_q(&s.det_abs()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MraChecks {
    pub partition: bool,
    pub congruence: bool,
    pub refinement: bool,
    #[serde(with = "crate::io::f17")]
    pub gram: f64,
}

impl MraChecks {
    pub fn all_pass(&self, gram_tol: f64) -> bool {
        self.partition && self.congruence && self.refinement && self.gram <= gram_tol
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MraBundle {
    #[serde(rename = "K")]
    pub k: Region,
    pub scheme: SchemeDoc,
    pub digits: DigitSet,
    pub pieces: Vec<Region>,
    pub wavelet_sets: Vec<Region>,
    pub checks: MraChecks,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qi};
    use crate::region::Frame;

    fn dyadic(dim: usize) -> (Region, DilationScheme, Lattice) {
        let f = Frame::identity(dim);
        let k = Region::from_box(f.clone(), vec![qi(0); dim], vec![qi(1); dim]).unwrap();
        let b = DilationScheme::diagonal(f.clone(), vec![qi(2); dim]).unwrap();
        (k, b, Lattice::frame_integer(f))
    }

    #[test]
    fn first_piece_needs_no_shift() {
        let (k, b, t) = dyadic(2);
        let d = digit_representatives(&b, &t).unwrap();
        let pieces = split_scaling_set(&k, &b, &t, &d).unwrap();
        let quarter = Region::from_box(Frame::identity(2), vec![qi(0), qi(0)], vec![q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(pieces[0], quarter);
        assert!(pieces.iter().all(|p| p.coordinate_volume() == q(1, 4)));
    }

    #[test]
    fn scaling_set_examples() {
        let f = Frame::identity(1);
        let b = DilationScheme::diagonal(f.clone(), vec![qi(2)]).unwrap();
        let t = Lattice::frame_integer(f.clone());
        let split = Region::from_box(f.clone(), vec![qi(0)], vec![qi(1)])
            .unwrap()
            .union(&Region::from_box(f.clone(), vec![qi(2)], vec![qi(3)]).unwrap())
            .unwrap();
        assert!(!is_scaling_set(&split, &b, &t).unwrap().is_scaling_set());
        let annulus = Region::from_box(f, vec![qi(1)], vec![qi(2)]).unwrap();
        let rep = is_scaling_set(&annulus, &b, &t).unwrap();
        assert!(rep.tile.is_tile && !rep.nested);
    }

    #[test]
    fn dyadic_ladder_passes_every_check() {
        let (k, b, t) = dyadic(2);
        let ladder = MraLadder::new(k, b, t).unwrap();
        let bundle = ladder.decompose(4.0).unwrap();
        assert_eq!(bundle.wavelet_sets.len(), 3);
        assert!(bundle.checks.all_pass(1e-10), "{:?}", bundle.checks);
        assert_eq!(ladder.level(2).unwrap().coordinate_volume(), qi(16));
    }

    #[test]
    fn shifted_scaling_box_splits_with_lattice_shifts() {
        // K = [-1/2, 1/2), B = 3: pieces need translates by ±1
        let f = Frame::identity(1);
        let k = Region::from_box(f.clone(), vec![q(-1, 2)], vec![q(1, 2)]).unwrap();
        let b = DilationScheme::diagonal(f.clone(), vec![qi(3)]).unwrap();
        let ladder = MraLadder::new(k, b, Lattice::frame_integer(f)).unwrap();
        let bundle = ladder.decompose(4.0).unwrap();
        assert_eq!(bundle.pieces.len(), 3);
        assert!(bundle.checks.all_pass(1e-10), "{:?}", bundle.checks);
    }
}
