//! Translation-tiling and spectral checks against a lattice, and Monte Carlo
//! multiplicity of multiplicative families.

use std::collections::{BTreeMap, HashSet};

use nalgebra::DVector;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::Cone;
use crate::error::{Error, Result};
use crate::lattice::{reduce_mod_lattice, Lattice};
use crate::linalg::{q_to_f64, try_inverse, Mat, EPS_GEOM, Q};
use crate::region::{Frame, PointClass, Region};

/// Largest ambient dimension handled by the point-classification fast path.
pub const MAX_DIM: usize = 8;

/// Outcome of folding a region modulo a lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileReport {
    pub is_tile: bool,
    #[serde(with = "crate::io::f17")]
    pub overlap_volume: f64,
    #[serde(with = "crate::io::f17")]
    pub gap_volume: f64,
    /// Number of boxes in the gap region plus folded pieces that overlap.
    pub defect_cells: usize,
}

impl TileReport {
    pub fn defect(&self) -> f64 {
        self.overlap_volume + self.gap_volume
    }
}

/// Decides exactly whether `region + T` tiles space: the folded copy must
/// cover the fundamental box once.
pub fn is_translation_tile(region: &Region, lattice: &Lattice) -> Result<TileReport> {
    let reduced = reduce_mod_lattice(region, lattice)?;
    let fundamental = lattice.fundamental_box();
    let gap = fundamental.subtract(&reduced.region)?;
    let det = region.frame().det_abs();
    let is_tile = gap.is_empty() && reduced.overlap.is_zero();
    let overlap_pieces = if reduced.overlap.is_zero() {
        0
    } else {
        reduced.pieces.saturating_sub(reduced.region.cells().len()).max(1)
    };
    Ok(TileReport {
        is_tile,
        overlap_volume: det * q_to_f64(&reduced.overlap),
        gap_volume: gap.volume(),
        defect_cells: gap.cells().len() + overlap_pieces,
    })
}

/// Ambient generator of `Λ = {Σ n_j s_j⁻¹ α_j}`, the dual of the box lattice
/// `⊕ s_j α_j* ℤ`; the exponentials it indexes are orthogonal on the box.
pub fn box_spectrum(frame: &Frame, sides: &[Q]) -> Result<Mat> {
    Lattice::box_lattice(frame.clone(), sides)?.dual_generator()
}

/// Integer coefficient vectors `n` with `‖G n‖₂ ≤ radius`.
pub fn lattice_points_in_ball(generator: &Mat, radius: f64) -> Result<Vec<Vec<i64>>> {
    let d = generator.nrows();
    let inv = try_inverse(generator)?;
    let bound = (radius * inv.norm()).ceil() as i64;
    let side = (2 * bound + 1) as usize;
    let total = side.checked_pow(d as u32).unwrap_or(usize::MAX);
    if total > crate::lattice::ENUMERATION_LIMIT * 4 {
        return Err(Error::EnumerationOverflow {
            limit: crate::lattice::ENUMERATION_LIMIT * 4,
        });
    }
    let mut out = Vec::new();
    let mut n = vec![-bound; d];
    loop {
        let x = generator * DVector::from_iterator(d, n.iter().map(|&k| k as f64));
        if x.norm() <= radius + 1e-12 {
            out.push(n.clone());
        }
        let mut axis = 0;
        loop {
            if axis == d {
                return Ok(out);
            }
            n[axis] += 1;
            if n[axis] <= bound {
                break;
            }
            n[axis] = -bound;
            axis += 1;
        }
    }
}

/// `max |∫_A e^{2πi(γ−γ′,x)} dx| / |A|` over distinct spectrum points in the
/// ball of radius `cutoff`.
pub fn gram_max_offdiag(region: &Region, spectrum: &Mat, cutoff: f64) -> Result<f64> {
    let vol = region.volume();
    if vol == 0.0 {
        return Err(Error::InvalidInput("Gram check on an empty region".into()));
    }
    let points = lattice_points_in_ball(spectrum, cutoff)?;
    let mut diffs: HashSet<Vec<i64>> = HashSet::new();
    for a in &points {
        for b in &points {
            let dn: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            if dn.iter().any(|&k| k != 0) {
                // |integral| is symmetric under δ ↦ −δ
                let neg: Vec<i64> = dn.iter().map(|k| -k).collect();
                if !diffs.contains(&neg) {
                    diffs.insert(dn);
                }
            }
        }
    }
    let diffs: Vec<Vec<i64>> = diffs.into_iter().collect();
    let d = spectrum.nrows();
    let worst = diffs
        .par_iter()
        .map(|dn| {
            let delta = spectrum * DVector::from_iterator(d, dn.iter().map(|&k| k as f64));
            let zeta: Vec<Complex64> = delta.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            region.exponential_integral(&zeta).norm()
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst / vol)
}

/// Anything that can classify an ambient point as inside, outside or on its
/// boundary.
pub trait Tile: Sync {
    fn dim(&self) -> usize;
    /// Inside, outside, or within `eps` of the boundary.
    fn classify_point(&self, x: &[f64], eps: f64) -> PointClass;
}

#[inline]
fn apply(m: &Mat, x: &[f64], out: &mut [f64]) {
    let d = x.len();
    for (i, o) in out.iter_mut().enumerate().take(d) {
        let mut s = 0.0;
        for (j, &xj) in x.iter().enumerate() {
            s += m[(i, j)] * xj;
        }
        *o = s;
    }
}

impl Tile for Region {
    fn dim(&self) -> usize {
        Region::dim(self)
    }

    fn classify_point(&self, x: &[f64], eps: f64) -> PointClass {
        let mut u = [0.0; MAX_DIM];
        apply(self.frame().inverse(), x, &mut u);
        self.classify_frame_within(&u[..x.len()], eps)
    }
}

impl Tile for Cone {
    fn dim(&self) -> usize {
        self.normals()[0].len()
    }

    fn classify_point(&self, x: &[f64], eps: f64) -> PointClass {
        let mut near = false;
        for n in self.normals() {
            let s = n.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / n.norm();
            if s < -eps {
                return PointClass::Outside;
            }
            if s <= eps {
                near = true;
            }
        }
        if near {
            PointClass::Boundary
        } else {
            PointClass::Inside
        }
    }
}

/// Region from which multiplicity samples are drawn uniformly.
#[derive(Clone, Debug)]
pub enum SampleWindow {
    Region(Region),
    /// `{x : inner ≤ |x| < outer}` in `dim` dimensions.
    Shell {
        dim: usize,
        inner: f64,
        outer: f64,
    },
}

impl SampleWindow {
    pub fn annulus(dim: usize, inner: f64, outer: f64) -> Self {
        Self::Shell { dim, inner, outer }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Region(r) => r.dim(),
            Self::Shell { dim, .. } => *dim,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Region(r) if r.is_empty() => Err(Error::EmptyWindow),
            Self::Shell { inner, outer, .. } if !(0.0 <= *inner && inner < outer) => Err(Error::EmptyWindow),
            _ if self.dim() > MAX_DIM => Err(Error::DimensionMismatch {
                expected: MAX_DIM,
                got: self.dim(),
            }),
            _ => Ok(()),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cumulative: &[f64], out: &mut [f64]) {
        match self {
            Self::Region(r) => {
                let t: f64 = rng.random::<f64>() * cumulative.last().copied().unwrap_or(0.0);
                let k = cumulative.partition_point(|&c| c <= t).min(r.cells().len() - 1);
                let cell = &r.cells()[k];
                let mut u = [0.0; MAX_DIM];
                for (j, uj) in u.iter_mut().enumerate().take(r.dim()) {
                    let (lo, hi) = (cell.lo_f64()[j], cell.hi_f64()[j]);
                    *uj = lo + (hi - lo) * rng.random::<f64>();
                }
                apply(r.frame().basis(), &u[..r.dim()], out);
            }
            Self::Shell { dim, inner, outer } => loop {
                let mut r2 = 0.0;
                for o in out.iter_mut().take(*dim) {
                    *o = outer * (2.0 * rng.random::<f64>() - 1.0);
                    r2 += *o * *o;
                }
                if r2 >= inner * inner && r2 < outer * outer {
                    break;
                }
            },
        }
    }
}

/// Fractions of samples covered `k` times, boundary samples excluded from
/// the histogram and counted separately. The fractions and the boundary
/// fraction sum to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    #[serde(with = "crate::io::f17_map")]
    pub histogram: BTreeMap<usize, f64>,
    #[serde(with = "crate::io::f17")]
    pub boundary_fraction: f64,
    pub seed: u64,
    pub n_samples: usize,
}

impl MultiplicityReport {
    pub fn fraction(&self, k: usize) -> f64 {
        self.histogram.get(&k).copied().unwrap_or(0.0)
    }
}

/// One member `d(R)` of a multiplicative family: the matrix `d` and the tile `R`.
pub struct FamilyMember<'a> {
    pub matrix: Mat,
    pub tile: &'a dyn Tile,
}

const BLOCK: usize = 4096;

/// Monte Carlo covering multiplicity of `{d(R)}` over the window. A sample
/// `x` is covered by `(d, R)` when `d⁻¹x ∈ R`.
pub fn multiplicative_multiplicity(
    family: &[FamilyMember<'_>],
    window: &SampleWindow,
    n_samples: usize,
    seed: u64,
) -> Result<MultiplicityReport> {
    window.validate()?;
    let dim = window.dim();
    let inverses: Vec<Mat> = family
        .iter()
        .map(|m| {
            if m.tile.dim() != dim || m.matrix.nrows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.tile.dim(),
                });
            }
            try_inverse(&m.matrix)
        })
        .collect::<Result<_>>()?;
    // The boundary band is ε_geom wide in sample space, so it shrinks with d⁻¹.
    let eps: Vec<f64> = inverses.iter().map(|inv| EPS_GEOM * inv.norm()).collect();
    let cumulative: Vec<f64> = match window {
        SampleWindow::Region(r) => r
            .cells()
            .iter()
            .scan(0.0, |acc, c| {
                *acc += q_to_f64(&c.volume());
                Some(*acc)
            })
            .collect(),
        SampleWindow::Shell { .. } => Vec::new(),
    };
    let blocks = n_samples.div_ceil(BLOCK);
    let partials: Vec<(BTreeMap<usize, usize>, usize)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let count = BLOCK.min(n_samples - b * BLOCK);
            let mut hist = BTreeMap::new();
            let mut boundary = 0usize;
            let mut x = [0.0; MAX_DIM];
            let mut y = [0.0; MAX_DIM];
            for _ in 0..count {
                window.sample(&mut rng, &cumulative, &mut x);
                let mut mult = 0usize;
                let mut near = false;
                for ((inv, member), &e) in inverses.iter().zip(family).zip(&eps) {
                    apply(inv, &x[..dim], &mut y);
                    match member.tile.classify_point(&y[..dim], e) {
                        PointClass::Inside => mult += 1,
                        PointClass::Boundary => near = true,
                        PointClass::Outside => {}
                    }
                }
                if near {
                    boundary += 1;
                } else {
                    *hist.entry(mult).or_insert(0) += 1;
                }
            }
            (hist, boundary)
        })
        .collect();
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut boundary = 0;
    for (h, b) in partials {
        boundary += b;
        for (k, c) in h {
            *hist.entry(k).or_insert(0) += c;
        }
    }
    let n = n_samples.max(1) as f64;
    Ok(MultiplicityReport {
        histogram: hist.into_iter().map(|(k, c)| (k, c as f64 / n)).collect(),
        boundary_fraction: boundary as f64 / n,
        seed,
        n_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qi};

    fn boxed(lo: &[Q], hi: &[Q]) -> Region {
        Region::from_box(Frame::identity(lo.len()), lo.to_vec(), hi.to_vec()).unwrap()
    }

    #[test]
    fn unit_square_tiles_and_is_spectral() {
        let r = boxed(&[qi(0), qi(0)], &[qi(1), qi(1)]);
        let t = Lattice::frame_integer(Frame::identity(2));
        let rep = is_translation_tile(&r, &t).unwrap();
        assert!(rep.is_tile);
        let g = gram_max_offdiag(&r, &t.dual_generator().unwrap(), 4.0).unwrap();
        assert!(g < 1e-12, "{g}");
    }

    #[test]
    fn double_box_overlaps_once() {
        let r = boxed(&[qi(0), qi(0)], &[qi(2), qi(1)]);
        let rep = is_translation_tile(&r, &Lattice::frame_integer(Frame::identity(2))).unwrap();
        assert!(!rep.is_tile);
        assert!((rep.overlap_volume - 1.0).abs() < 1e-15);
        assert_eq!(rep.gap_volume, 0.0);
    }

    #[test]
    fn non_tile_is_not_spectral() {
        let r = boxed(&[qi(0), qi(0)], &[q(3, 2), qi(1)]);
        let g = gram_max_offdiag(&r, &Mat::identity(2, 2), 4.0).unwrap();
        assert!(g > 0.1, "{g}");
    }

    #[test]
    fn box_spectrum_is_orthogonal() {
        let f = Frame::from_columns(&[vec![1.0, 0.0], vec![0.5, 2.0]]).unwrap();
        let sides = [q(3, 2), q(2, 3)];
        let r = Region::from_box(f.clone(), vec![qi(0), qi(0)], sides.to_vec()).unwrap();
        let g = gram_max_offdiag(&r, &box_spectrum(&f, &sides).unwrap(), 6.0).unwrap();
        assert!(g < 1e-12, "{g}");
    }

    #[test]
    fn dyadic_intervals_cover_once() {
        let unit = boxed(&[qi(1)], &[qi(2)]);
        let family: Vec<FamilyMember> = (-40..=40)
            .map(|k| FamilyMember {
                matrix: Mat::from_element(1, 1, 2f64.powi(k)),
                tile: &unit,
            })
            .collect();
        let window = SampleWindow::Region(boxed(&[q(1, 10)], &[qi(10)]));
        let rep = multiplicative_multiplicity(&family, &window, 20_000, 7).unwrap();
        assert_eq!(rep.fraction(1) + rep.boundary_fraction, 1.0);
        assert!(rep.fraction(1) > 0.999);
        let again = multiplicative_multiplicity(&family, &window, 20_000, 7).unwrap();
        assert_eq!(rep, again);
    }

    #[test]
    fn small_tile_leaves_uncovered_samples() {
        let small = boxed(&[qi(0), qi(0)], &[q(1, 2), q(1, 2)]);
        let family = [FamilyMember {
            matrix: Mat::identity(2, 2),
            tile: &small,
        }];
        let window = SampleWindow::Region(boxed(&[qi(0), qi(0)], &[qi(1), qi(1)]));
        let rep = multiplicative_multiplicity(&family, &window, 10_000, 1).unwrap();
        assert!(rep.fraction(0) > 0.7);
        assert!(multiplicative_multiplicity(&family, &SampleWindow::annulus(2, 1.0, 1.0), 10, 1).is_err());
    }

    #[test]
    fn boundary_band_follows_the_dilation() {
        // Shell whose bottom face runs through the origin; deep contractions
        // push samples next to that face in tile coordinates.
        let shell = boxed(&[qi(-2), qi(0)], &[qi(2), qi(2)])
            .subtract(&boxed(&[qi(-1), qi(0)], &[qi(1), qi(1)]))
            .unwrap();
        let family: Vec<FamilyMember> = (-40..=40)
            .map(|k| FamilyMember {
                matrix: Mat::identity(2, 2) * 2f64.powi(k),
                tile: &shell,
            })
            .collect();
        let window = SampleWindow::Region(boxed(&[qi(-2), q(1, 4)], &[qi(2), qi(2)]));
        let rep = multiplicative_multiplicity(&family, &window, 10_000, 4).unwrap();
        assert_eq!(rep.boundary_fraction, 0.0);
        assert_eq!(rep.fraction(1), 1.0);
    }
}
