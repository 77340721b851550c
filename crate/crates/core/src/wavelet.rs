//! Iterative wavelet-set constructions and their verification.
//!
//! Both constructions fold a target set `F` (a multiplicative tile of the
//! fundamental wedge) into a translation tile `P` (or `E`) piece by piece.
//! After `N` steps a residual of volume `O(a^{-N})` is still missing.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{Cone, MatrixGroup};
use crate::error::{Error, Result};
use crate::lattice::{DilationScheme, Lattice};
use crate::linalg::{q_to_f64, qi, rationalize, Q};
use crate::region::{Frame, Region};
use crate::tiling::{
    gram_max_offdiag, is_translation_tile, multiplicative_multiplicity, FamilyMember, MultiplicityReport, SampleWindow,
    TileReport,
};

/// Which recursion produced a [`RecursionState`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Section5,
    Example31,
}

/// Truncated wavelet set: the pieces `W_{1,n}` and `W_{2,n}` for `n ≤ N`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecursionState {
    pub method: Method,
    pub depth: usize,
    /// Translation tile the pieces fold onto (`P` or `E`).
    pub base: Region,
    /// Multiplicative tile the pieces dilate onto.
    pub target: Region,
    pub first: Vec<Region>,
    pub second: Vec<Region>,
    /// Translation applied to the first family, in frame coordinates.
    #[serde(with = "crate::io::qvec")]
    pub translation: Vec<Q>,
    #[serde(with = "crate::io::f17")]
    pub residual_volume: f64,
    /// Set when `F` or `E` had to be replaced by a rational approximation.
    pub approximate: bool,
    /// Deviations from the printed construction, for reports.
    pub notes: Vec<String>,
}

impl RecursionState {
    pub fn pieces(&self) -> impl Iterator<Item = &Region> {
        self.first.iter().chain(&self.second)
    }

    /// `W_N`, the union of all pieces.
    pub fn region(&self) -> Result<Region> {
        let acc = self
            .pieces()
            .try_fold(Region::empty(self.base.frame().clone()), |acc, p| acc.union(p))?;
        Ok(acc.coalesce())
    }

    /// Exact check that no two pieces overlap.
    pub fn pieces_disjoint(&self) -> Result<bool> {
        let all: Vec<&Region> = self.pieces().collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                if !a.intersect(b)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn finish(&mut self) {
        let covered: f64 = self.pieces().map(Region::volume).sum();
        self.residual_volume = self.base.volume() - covered;
    }
}

fn ensure_depth(depth: usize, min: usize) -> Result<()> {
    if depth < min {
        return Err(Error::InvalidInput(format!("depth must be at least {min}")));
    }
    Ok(())
}

fn unit_vector(dim: usize, index: usize) -> Vec<Q> {
    (0..dim)
        .map(|j| if j == index { Q::one() } else { Q::zero() })
        .collect()
}

/// The recursion
///
/// ```text
/// W_{1,1} = (P∖B⁻¹P) + α*,            W_{2,1} = B⁻²[F∖(P + α*)],
/// W_{1,n} = [(B^{1−n}P∖B^{−n}P)∖W_{2,n−1}] + α*,
/// W_{2,n} = B^{−n−1}{[(B^{1−n}P∖B^{−n}P) + α*]∖W_{1,n}},
/// ```
///
/// with `F = BP∖P` and `α* = α_index*` (frame axis `index`).
pub fn construct_section5(p: &Region, scheme: &DilationScheme, index: usize, depth: usize) -> Result<RecursionState> {
    ensure_depth(depth, 1)?;
    if !p.frame().same_as(scheme.frame()) {
        return Err(Error::FrameMismatch);
    }
    if index >= p.dim() {
        return Err(Error::InvalidInput(format!("α* index {index} out of range")));
    }
    scheme.require_scales()?;
    let alpha = unit_vector(p.dim(), index);
    let f = scheme.apply(p)?.subtract(p)?;
    let mut first = Vec::with_capacity(depth);
    let mut second = Vec::with_capacity(depth);
    first.push(p.subtract(&scheme.apply_power(p, -1)?)?.translate(&alpha)?);
    second.push(scheme.apply_power(&f.subtract(&p.translate(&alpha)?)?, -2)?);
    for n in 2..=depth as i32 {
        let shell = scheme.apply_power(p, 1 - n)?.subtract(&scheme.apply_power(p, -n)?)?;
        let w1 = shell.subtract(&second[second.len() - 1])?.translate(&alpha)?;
        let w2 = scheme.apply_power(&shell.translate(&alpha)?.subtract(&w1)?, -n - 1)?;
        first.push(w1.coalesce());
        second.push(w2.coalesce());
    }
    let mut state = RecursionState {
        method: Method::Section5,
        depth,
        base: p.clone(),
        target: f,
        first,
        second,
        translation: alpha,
        residual_volume: 0.0,
        approximate: false,
        notes: Vec::new(),
    };
    state.finish();
    Ok(state)
}

/// Fundamental wedge `{r(cos θ, sin θ) : 0 ≤ θ ≤ 2π/m}` as a cone.
pub fn wedge_cone(m: u32) -> Result<Cone> {
    if m < 2 {
        return Err(Error::UnsupportedOrder(m));
    }
    let t = 2.0 * PI / m as f64;
    let (s, c) = t.sin_cos();
    let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    Ok(Cone::new(vec![
        DVector::from_vec(vec![0.0, 1.0]),
        DVector::from_vec(vec![snap(s), snap(-c)]),
    ]))
}

/// Exact wedge predicate plus an inner staircase approximation of the slab
/// `x_lo ≤ x < x_hi` of the wedge (columns of width `(x_hi − x_lo)/columns`,
/// each as tall as the wedge at its left edge).
#[derive(Clone, Debug)]
pub struct WedgeApprox {
    pub cone: Cone,
    pub staircase: Region,
    /// Rational slope used for the staircase.
    pub slope: Q,
}

/// Rational approximation of `tan(2π/m)`, `m ≥ 5`.
pub fn rational_tan(m: u32) -> Result<Q> {
    if m < 5 {
        return Err(Error::UnsupportedOrder(m));
    }
    let t = (2.0 * PI / m as f64).tan();
    rationalize(t, 1_000_000, 1e-9).ok_or_else(|| Error::Domain(format!("cannot rationalize tan(2π/{m})")))
}

pub fn wedge_region(m: u32, x_lo: &Q, x_hi: &Q, columns: usize) -> Result<WedgeApprox> {
    let cone = wedge_cone(m)?;
    let slope = rational_tan(m)?;
    if !(x_lo.is_positive() && x_lo < x_hi) || columns == 0 {
        return Err(Error::InvalidInput(
            "staircase needs 0 < x_lo < x_hi and columns > 0".into(),
        ));
    }
    let frame = Frame::identity(2);
    let width = (x_hi - x_lo) / qi(columns as i64);
    let mut cells = Vec::with_capacity(columns);
    for k in 0..columns {
        let left = x_lo + &width * qi(k as i64);
        let right = &left + &width;
        let top = &left * &slope;
        cells.push(crate::region::Cell::new(vec![left, Q::zero()], vec![right, top])?);
    }
    Ok(WedgeApprox {
        cone,
        staircase: Region::from_disjoint_checked(frame, cells)?,
        slope,
    })
}

/// Options for the rotation-group example.
#[derive(Clone, Debug)]
pub struct Example31Options {
    /// Staircase columns for `F` when `m ≥ 5`.
    pub columns: usize,
}

impl Default for Example31Options {
    fn default() -> Self {
        Self { columns: 64 }
    }
}

/// `(D_{a,m}, ℤ²)` wavelet set built from `E` and `F` by
///
/// ```text
/// Ω_{1,1} = (E∖a⁻¹E) + (1,0),        Ω_{2,1} = a⁻²(F∖(E + (0,1))),
/// Ω_{1,j} = [(a^{1−j}E∖a^{−j}E)∖Ω_{2,j−1}] + (1,0),
/// Ω_{2,j} = a^{−j−1}[Ω_{2,j−1} + (0,1)].
/// ```
///
/// For `m ∈ {2, 4}`, `F = (aE)∖E`. For `m ≥ 5`, `tan(2π/m)` is replaced by a
/// rational and `F` by a staircase; the result is flagged approximate.
pub fn construct_example31(a: &Q, m: u32, depth: usize, opts: &Example31Options) -> Result<RecursionState> {
    ensure_depth(depth, 2)?;
    if a <= &Q::one() {
        return Err(Error::NonExpansive(format!("a = {a} must exceed 1")));
    }
    let frame = Frame::identity(2);
    let mut notes = Vec::new();
    let (e, f, approximate) = match m {
        2 | 4 => {
            let e = if m == 4 {
                Region::from_box(frame.clone(), vec![qi(0), qi(0)], vec![qi(1), qi(1)])?
            } else {
                Region::from_box(frame.clone(), vec![qi(-1), qi(0)], vec![qi(1), qi(1)])?
            };
            let f = e.scale(a)?.subtract(&e)?;
            notes.push("F = (aE)∖E replaces the unbounded wedge slab".into());
            (e, f, false)
        }
        3 => return Err(Error::UnsupportedOrder(3)),
        _ => {
            let wedge = wedge_region(m, &Q::one(), a, opts.columns)?;
            let e = Region::from_box(frame.clone(), vec![qi(0), qi(0)], vec![qi(1), wedge.slope.clone()])?;
            notes.push(format!(
                "tan(2π/{m}) replaced by {}; F replaced by a {}-column inner staircase",
                wedge.slope, opts.columns
            ));
            (e, wedge.staircase, true)
        }
    };
    let inv = a.recip();
    let pow = |k: i32| -> Q {
        let p = num_traits::pow(inv.clone(), k.unsigned_abs() as usize);
        if k < 0 {
            p.recip()
        } else {
            p
        }
    };
    let right = vec![qi(1), qi(0)];
    let up = vec![qi(0), qi(1)];
    let mut first = Vec::with_capacity(depth);
    let mut second = Vec::with_capacity(depth);
    first.push(e.subtract(&e.scale(&inv)?)?.translate(&right)?);
    second.push(f.subtract(&e.translate(&up)?)?.scale(&pow(2))?);
    for j in 2..=depth as i32 {
        let shell = e.scale(&pow(j - 1))?.subtract(&e.scale(&pow(j))?)?;
        let w1 = shell.subtract(&second[second.len() - 1])?.translate(&right)?;
        let w2 = second[second.len() - 1].translate(&up)?.scale(&pow(j + 1))?;
        first.push(w1.coalesce());
        second.push(w2.coalesce());
    }
    let mut state = RecursionState {
        method: Method::Example31,
        depth,
        base: e,
        target: f,
        first,
        second,
        translation: right,
        residual_volume: 0.0,
        approximate,
        notes,
    };
    state.finish();
    Ok(state)
}

/// Translation, dilation and spectral evidence for a candidate wavelet set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WaveletVerdict {
    pub translation_report: TileReport,
    pub dilation_histogram: MultiplicityReport,
    #[serde(with = "crate::io::f17")]
    pub gram_bound: f64,
}

/// Parameters of [`verify_wavelet_set`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub k_max: i32,
    pub n_samples: usize,
    pub seed: u64,
    pub gram_cutoff: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            k_max: 40,
            n_samples: 100_000,
            seed: 0,
            gram_cutoff: 5.0,
        }
    }
}

/// Checks `Ω` against `(D, Γ)` with `D = {Bᵏw : |k| ≤ k_max, w ∈ W}`.
pub fn verify_wavelet_set(
    omega: &Region,
    group: &MatrixGroup,
    scheme: &DilationScheme,
    lattice: &Lattice,
    window: &SampleWindow,
    opts: &VerifyOptions,
) -> Result<WaveletVerdict> {
    let translation_report = is_translation_tile(omega, lattice)?;
    let mut family = Vec::new();
    for k in -opts.k_max..=opts.k_max {
        let bk = scheme.ambient_power(k)?;
        for w in group.elements() {
            family.push(FamilyMember {
                matrix: &bk * w,
                tile: omega,
            });
        }
    }
    let dilation_histogram = multiplicative_multiplicity(&family, window, opts.n_samples, opts.seed)?;
    let gram_bound = gram_max_offdiag(omega, &lattice.dual_generator()?, opts.gram_cutoff)?;
    Ok(WaveletVerdict {
        translation_report,
        dilation_histogram,
        gram_bound,
    })
}

/// Exact coordinate volume of every piece, for bookkeeping in tests and reports.
pub fn piece_volumes(state: &RecursionState) -> Vec<f64> {
    state.pieces().map(|p| q_to_f64(&p.coordinate_volume())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn unit_square() -> Region {
        Region::from_box(Frame::identity(2), vec![qi(0), qi(0)], vec![qi(1), qi(1)]).unwrap()
    }

    fn dyadic() -> DilationScheme {
        DilationScheme::diagonal(Frame::identity(2), vec![qi(2), qi(2)]).unwrap()
    }

    #[test]
    fn first_piece_volume() {
        let s = construct_section5(&unit_square(), &dyadic(), 0, 1).unwrap();
        assert_eq!(s.first[0].coordinate_volume(), q(3, 4));
    }

    #[test]
    fn chamber_recursion_converges_and_stays_disjoint() {
        let s = construct_section5(&unit_square(), &dyadic(), 0, 8).unwrap();
        assert!(s.pieces_disjoint().unwrap());
        assert!(
            s.residual_volume >= 0.0 && s.residual_volume < 1e-3,
            "{}",
            s.residual_volume
        );
    }

    #[test]
    fn rotation_m4_first_pieces() {
        let s = construct_example31(&qi(2), 4, 3, &Example31Options::default()).unwrap();
        let e = unit_square();
        let expect = e
            .subtract(&e.scale(&q(1, 2)).unwrap())
            .unwrap()
            .translate(&[qi(1), qi(0)])
            .unwrap();
        assert_eq!(s.first[0], expect);
        assert_eq!(s.first[0].coordinate_volume(), q(3, 4));
        let w22 = s.second[0].translate(&[qi(0), qi(1)]).unwrap().scale(&q(1, 8)).unwrap();
        assert_eq!(s.second[1], w22);
    }

    #[test]
    fn rotation_rejects_m3() {
        assert!(matches!(
            construct_example31(&qi(2), 3, 4, &Example31Options::default()),
            Err(Error::UnsupportedOrder(3))
        ));
    }

    #[test]
    fn wedge_membership() {
        for m in [5u32, 6, 8, 12] {
            let w = wedge_region(m, &qi(1), &qi(2), 32).unwrap();
            let t = (2.0 * PI / m as f64).tan();
            assert!(w.cone.contains_interior(&DVector::from_vec(vec![1.0, t / 2.0]), 0.0));
            assert!(!w.cone.contains(&DVector::from_vec(vec![1.0, 2.0 * t]), 0.0));
        }
    }

    #[test]
    fn staircase_area_is_first_order() {
        let m = 6;
        let t = (2.0 * PI / m as f64).tan();
        let exact = t * (4.0 - 1.0) / 2.0;
        let mut last = f64::INFINITY;
        for cols in [8usize, 16, 32, 64] {
            let w = wedge_region(m, &qi(1), &qi(2), cols).unwrap();
            let err = exact - w.staircase.volume();
            assert!(err > 0.0 && err <= t / cols as f64 + 1e-9);
            assert!(err < last);
            last = err;
        }
    }
}
