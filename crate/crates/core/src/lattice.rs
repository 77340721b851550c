//! Lattices that are rational in a working frame, dilation schemes, coset
//! digit sets and reduction of regions modulo a lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    common_denominator, q_to_f64, qmat_det, qmat_diag, qmat_identity, qmat_inverse, qmat_is_diagonal, qmat_is_integer,
    qmat_mul, qmat_to_f64, qmat_vec, rationalize, try_inverse, Mat, QMat, Q,
};
use crate::region::{Cell, Frame, Region};

/// Upper bound on pieces produced while chopping or enumerating translates.
pub const ENUMERATION_LIMIT: usize = 1 << 20;

/// Full-rank lattice `T = F·M·ℤⁿ`, with `M` rational (frame coordinates).
#[derive(Clone, Debug)]
pub struct Lattice {
    frame: Frame,
    generator: QMat,
}

impl Lattice {
    /// The frame's own integer lattice `Fℤⁿ`.
    pub fn frame_integer(frame: Frame) -> Self {
        let n = frame.dim();
        Self {
            frame,
            generator: qmat_identity(n),
        }
    }

    /// Columns of `generator` are the lattice basis in frame coordinates.
    pub fn from_frame_generator(frame: Frame, generator: QMat) -> Result<Self> {
        let n = frame.dim();
        if generator.len() != n || generator.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: generator.len(),
            });
        }
        if qmat_det(&generator).is_zero() {
            return Err(Error::Rank("lattice generator is singular".into()));
        }
        Ok(Self { frame, generator })
    }

    /// Diagonal lattice `⊕ s_j ℤ` in frame coordinates, the box lattice of
    /// `∏ [0, s_j)`.
    pub fn box_lattice(frame: Frame, sides: &[Q]) -> Result<Self> {
        Self::from_frame_generator(frame, qmat_diag(sides))
    }

    /// Lattice with ambient generator `g`; `F⁻¹g` must be rational with
    /// denominators at most 10⁶.
    pub fn from_ambient(frame: Frame, g: &Mat) -> Result<Self> {
        let m = frame.inverse() * g;
        let n = frame.dim();
        let mut generator = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                generator[i][j] = rationalize(m[(i, j)], 1_000_000, 1e-9)
                    .ok_or_else(|| Error::IrrationalLattice(format!("entry ({i},{j}) = {}", m[(i, j)])))?;
            }
        }
        Self::from_frame_generator(frame, generator)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn generator_frame(&self) -> &QMat {
        &self.generator
    }

    pub fn generator_ambient(&self) -> Mat {
        self.frame.basis() * qmat_to_f64(&self.generator)
    }

    /// Generator of the dual lattice `{γ : (γ, t) ∈ ℤ ∀ t ∈ T}`.
    pub fn dual_generator(&self) -> Result<Mat> {
        Ok(try_inverse(&self.generator_ambient())?.transpose())
    }

    /// Volume of a fundamental domain.
    pub fn covolume(&self) -> f64 {
        self.frame.det_abs() * q_to_f64(&qmat_det(&self.generator).abs())
    }

    /// Upper-triangular basis of the same lattice with positive diagonal.
    pub fn hermite_basis(&self) -> QMat {
        hermite_upper(&self.generator)
    }

    /// Half-open fundamental box `∏ [0, h_jj)` of the Hermite basis.
    pub fn fundamental_box(&self) -> Region {
        let h = self.hermite_basis();
        let n = self.dim();
        let lo = vec![Q::zero(); n];
        let hi = (0..n).map(|j| h[j][j].clone()).collect();
        Region::from_disjoint_checked(self.frame.clone(), vec![Cell::new(lo, hi).expect("positive diagonal")])
            .expect("single cell")
    }
}

/// Column-style Hermite normal form (upper triangular, positive diagonal,
/// off-diagonal entries reduced into `[0, h_ii)`) of a rational basis.
pub fn hermite_upper(m: &QMat) -> QMat {
    let n = m.len();
    let den = common_denominator(m.iter().flatten());
    let den_q = Q::from_integer(den.clone());
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| (x * &den_q).to_integer()).collect())
        .collect();
    for i in (0..n).rev() {
        loop {
            let nonzero: Vec<usize> = (0..=i).filter(|&c| !a[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&c| a[i][c].abs()).unwrap();
            for &c in &nonzero {
                if c == p {
                    continue;
                }
                let f = a[i][c].div_floor(&a[i][p]);
                for r in 0..n {
                    let delta = &f * &a[r][p];
                    a[r][c] -= delta;
                }
            }
        }
        if let Some(c) = (0..=i).find(|&c| !a[i][c].is_zero()) {
            if c != i {
                for row in a.iter_mut() {
                    row.swap(c, i);
                }
            }
        }
        if a[i][i].is_negative() {
            for row in a.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
    }
    // reduce entries to the right of each pivot
    for i in 0..n {
        for j in i + 1..n {
            let f = a[i][j].div_floor(&a[i][i]);
            if !f.is_zero() {
                for r in 0..n {
                    let delta = &f * &a[r][i];
                    a[r][j] -= delta;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| row.into_iter().map(|x| Q::new(x, den.clone())).collect())
        .collect()
}

/// Dilation `B`, given by its exact matrix in frame coordinates.
#[derive(Clone, Debug)]
pub struct DilationScheme {
    frame: Frame,
    matrix: QMat,
}

impl DilationScheme {
    /// `B α_j* = a_j α_j*`: diagonal in the frame. Every `a_j` must exceed 1.
    pub fn diagonal(frame: Frame, scales: Vec<Q>) -> Result<Self> {
        if scales.len() != frame.dim() {
            return Err(Error::DimensionMismatch {
                expected: frame.dim(),
                got: scales.len(),
            });
        }
        if let Some(a) = scales.iter().find(|a| a.abs() <= Q::one()) {
            return Err(Error::NonExpansive(format!("scale {a} has modulus ≤ 1")));
        }
        Ok(Self {
            frame,
            matrix: qmat_diag(&scales),
        })
    }

    /// General rational frame matrix; expansiveness is checked on the
    /// eigenvalues.
    pub fn from_frame_matrix(frame: Frame, matrix: QMat) -> Result<Self> {
        let n = frame.dim();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.len(),
            });
        }
        let m = qmat_to_f64(&matrix);
        let eig = m.complex_eigenvalues();
        if let Some(e) = eig.iter().find(|e| e.norm() <= 1.0 + 1e-12) {
            return Err(Error::NonExpansive(format!("eigenvalue {e} has modulus ≤ 1")));
        }
        Ok(Self { frame, matrix })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn frame_matrix(&self) -> &QMat {
        &self.matrix
    }

    /// Per-axis scales when `B` is diagonal in the frame.
    pub fn scales(&self) -> Option<Vec<Q>> {
        qmat_is_diagonal(&self.matrix).then(|| (0..self.dim()).map(|j| self.matrix[j][j].clone()).collect())
    }

    pub fn require_scales(&self) -> Result<Vec<Q>> {
        self.scales()
            .ok_or_else(|| Error::UnsupportedTransform("dilation is not diagonal in the frame".into()))
    }

    /// Ambient matrix `B = F·B_frame·F⁻¹`.
    pub fn ambient(&self) -> Mat {
        self.frame.basis() * qmat_to_f64(&self.matrix) * self.frame.inverse()
    }

    /// Ambient matrix of `Bᵏ`, any integer `k`.
    pub fn ambient_power(&self, k: i32) -> Result<Mat> {
        let b = self.ambient();
        let base = if k < 0 { try_inverse(&b)? } else { b };
        let mut out = Mat::identity(self.dim(), self.dim());
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `L = (B⁻¹)ᵀ`.
    pub fn dual_ambient(&self) -> Result<Mat> {
        Ok(try_inverse(&self.ambient())?.transpose())
    }

    /// `q = |det B|`.
    pub fn det_abs(&self) -> Q {
        qmat_det(&self.matrix).abs()
    }

    /// Image of a region under `B` (frame-diagonal only).
    pub fn apply(&self, r: &Region) -> Result<Region> {
        r.scale_diag(&self.require_scales()?)
    }

    /// Image of a region under `Bᵏ` (frame-diagonal only).
    pub fn apply_power(&self, r: &Region, k: i32) -> Result<Region> {
        let s = self.require_scales()?;
        let d: Vec<Q> = s
            .iter()
            .map(|a| {
                let p = num_traits::pow(a.clone(), k.unsigned_abs() as usize);
                if k < 0 {
                    p.recip()
                } else {
                    p
                }
            })
            .collect();
        r.scale_diag(&d)
    }
}

/// Representatives `v_0 = 0, v_1, …, v_{q−1}` of `T / BT`, in frame coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigitSet {
    #[serde(with = "crate::io::qvecs")]
    pub digits: Vec<Vec<Q>>,
}

impl DigitSet {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Serpentine (boustrophedon) enumeration of `∏ [0, h_j)`, axis 0 fastest.
/// Consecutive entries differ by one step along a single axis, and the walk
/// starts at the origin.
fn serpentine(extents: &[usize]) -> Vec<Vec<usize>> {
    let Some((&last, rest)) = extents.split_last() else {
        return vec![vec![]];
    };
    let inner = serpentine(rest);
    let mut out = Vec::with_capacity(inner.len() * last);
    for k in 0..last {
        let iter: Box<dyn Iterator<Item = &Vec<usize>>> = if k % 2 == 0 {
            Box::new(inner.iter())
        } else {
            Box::new(inner.iter().rev())
        };
        for v in iter {
            let mut w = v.clone();
            w.push(k);
            out.push(w);
        }
    }
    out
}

/// `M⁻¹ B M`: the dilation in lattice coordinates.
fn lattice_coordinates_of(scheme: &DilationScheme, lattice: &Lattice) -> Result<QMat> {
    let m = lattice.generator_frame();
    let m_inv = qmat_inverse(m)?;
    Ok(qmat_mul(&qmat_mul(&m_inv, scheme.frame_matrix()), m))
}

/// Whether `BT ⊆ T`.
pub fn is_subset_lattice(scheme: &DilationScheme, lattice: &Lattice) -> Result<bool> {
    if !scheme.frame().same_as(lattice.frame()) {
        return Err(Error::FrameMismatch);
    }
    Ok(qmat_is_integer(&lattice_coordinates_of(scheme, lattice)?))
}

/// Coset representatives of `T / BT`. Requires `BT ⊆ T`, i.e. `M⁻¹ B M` integer.
///
/// Digits are lattice points in the fundamental box of the Hermite basis of
/// `BT` (in `T`-coordinates), listed in serpentine order starting from 0.
pub fn digit_representatives(scheme: &DilationScheme, lattice: &Lattice) -> Result<DigitSet> {
    if !scheme.frame().same_as(lattice.frame()) {
        return Err(Error::FrameMismatch);
    }
    let m = lattice.generator_frame();
    let c = lattice_coordinates_of(scheme, lattice)?;
    if !qmat_is_integer(&c) {
        return Err(Error::IncompatibleLattice("M⁻¹BM is not an integer matrix".into()));
    }
    let h = hermite_upper(&c);
    let extents: Vec<usize> = (0..h.len())
        .map(|j| {
            h[j][j]
                .to_integer()
                .to_usize()
                .ok_or_else(|| Error::IncompatibleLattice("digit count too large".into()))
        })
        .collect::<Result<_>>()?;
    let total: usize = extents.iter().product();
    if total > ENUMERATION_LIMIT {
        return Err(Error::EnumerationOverflow {
            limit: ENUMERATION_LIMIT,
        });
    }
    let digits = serpentine(&extents)
        .into_iter()
        .map(|k| {
            let kq: Vec<Q> = k.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect();
            qmat_vec(m, &kq)
        })
        .collect();
    Ok(DigitSet { digits })
}

/// Result of folding a region into a fundamental box of a lattice.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Disjoint union of the folded pieces.
    pub region: Region,
    /// Exact coordinate volume covered more than once (with multiplicity).
    pub overlap: Q,
    /// Number of folded pieces before disjointification.
    pub pieces: usize,
}

/// Splits `cell` along `axis` at multiples of `h[axis][axis]` and folds
/// each slab back by the matching multiple of Hermite column `axis`.
fn fold_axis(cell: &Cell, h: &QMat, axis: usize, out: &mut Vec<Cell>) -> Result<()> {
    let period = &h[axis][axis];
    let first = (&cell.lo()[axis] / period).floor().to_integer();
    let last = (&cell.hi()[axis] / period).ceil().to_integer();
    let count = (&last - &first).to_usize().unwrap_or(usize::MAX);
    if count > ENUMERATION_LIMIT || out.len() > ENUMERATION_LIMIT {
        return Err(Error::EnumerationOverflow {
            limit: ENUMERATION_LIMIT,
        });
    }
    let n = cell.dim();
    let mut k = first;
    while k < last {
        let kq = Q::from_integer(k.clone());
        let slab_lo = &kq * period;
        let slab_hi = &slab_lo + period;
        let mut lo = cell.lo().to_vec();
        let mut hi = cell.hi().to_vec();
        if lo[axis] < slab_lo {
            lo[axis] = slab_lo;
        }
        if hi[axis] > slab_hi {
            hi[axis] = slab_hi;
        }
        if lo[axis] < hi[axis] {
            let shift: Vec<Q> = (0..n).map(|r| -(&kq * &h[r][axis])).collect();
            let piece = Cell::new(lo, hi)?.translate(&shift);
            if axis == 0 {
                out.push(piece);
            } else {
                fold_axis(&piece, h, axis - 1, out)?;
            }
        }
        k += 1;
    }
    Ok(())
}

/// Folds every cell of `region` into the fundamental box of `lattice`.
pub fn reduce_mod_lattice(region: &Region, lattice: &Lattice) -> Result<Reduction> {
    if !region.frame().same_as(lattice.frame()) {
        return Err(Error::FrameMismatch);
    }
    let h = lattice.hermite_basis();
    let n = lattice.dim();
    let mut pieces = Vec::new();
    for c in region.cells() {
        fold_axis(c, &h, n - 1, &mut pieces)?;
    }
    let count = pieces.len();
    let total: Q = pieces.iter().fold(Q::zero(), |acc, p| acc + p.volume());
    let mut acc = Region::empty(region.frame().clone());
    for p in pieces {
        let r = Region::from_cell(region.frame().clone(), p)?;
        acc = acc.union(&r)?;
    }
    let overlap = total - acc.coordinate_volume();
    Ok(Reduction {
        region: acc.coalesce(),
        overlap,
        pieces: count,
    })
}
