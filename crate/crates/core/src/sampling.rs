//! Band-limited signals with box spectra, Shannon-type reconstruction from
//! samples on a spectrum lattice, and the chamber-wise decomposition with
//! its tube-domain extension.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coxeter::{chamber_of, MatrixGroup, SimpleSystem};
use crate::error::{Error, Result};
use crate::lattice::DilationScheme;
use crate::linalg::{format_q, parse_q, q, q_to_f64, try_inverse, Mat, Vector, EPS_GEOM, Q};
use crate::region::{cell_integral, frame_frequency, Cell, Frame, Region};
use crate::tiling::{box_spectrum, gram_max_offdiag};

/// One spectral term `c·χ_S`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTerm {
    pub coeff: Complex64,
    pub cell: Cell,
}

/// `𝓕f = Σ c_k χ_{S_k}` with pairwise-disjoint boxes `S_k` in a frame.
#[derive(Clone, Debug)]
pub struct BandlimitedSignal {
    frame: Frame,
    terms: Vec<SpectrumTerm>,
}

impl BandlimitedSignal {
    pub fn new(frame: Frame, terms: Vec<SpectrumTerm>) -> Result<Self> {
        for t in &terms {
            if t.cell.dim() != frame.dim() {
                return Err(Error::DimensionMismatch {
                    expected: frame.dim(),
                    got: t.cell.dim(),
                });
            }
        }
        for (i, a) in terms.iter().enumerate() {
            if terms[i + 1..].iter().any(|b| a.cell.overlaps(&b.cell)) {
                return Err(Error::InvalidInput(format!("spectrum box {i} overlaps a later box")));
            }
        }
        Ok(Self { frame, terms })
    }

    pub fn zero(frame: Frame) -> Self {
        Self {
            frame,
            terms: Vec::new(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn terms(&self) -> &[SpectrumTerm] {
        &self.terms
    }

    /// `f(x) = Σ c_k ∫_{S_k} e^{2πi(x,λ)} dλ`.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let zeta: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.eval_complex(&zeta)
    }

    /// `Σ c_k ∫_{S_k} e^{2πi(ζ,λ)} dλ` at a complex point `ζ`.
    pub fn eval_complex(&self, zeta: &[Complex64]) -> Complex64 {
        let eta = frame_frequency(&self.frame, zeta);
        let det = self.frame.det_abs();
        self.terms
            .iter()
            .map(|t| t.coeff * cell_integral(&t.cell, &eta, det))
            .sum()
    }

    /// `‖f‖² = Σ |c_k|² |S_k|`.
    pub fn norm_sq(&self) -> f64 {
        let det = self.frame.det_abs();
        self.terms
            .iter()
            .map(|t| t.coeff.norm_sqr() * det * q_to_f64(&t.cell.volume()))
            .sum()
    }

    /// Spectral support as a region.
    pub fn support(&self) -> Result<Region> {
        Region::from_disjoint_checked(self.frame.clone(), self.terms.iter().map(|t| t.cell.clone()).collect())
    }

    /// Random signal on the box `∏ [lo_j, hi_j)`: each axis is cut at
    /// `cuts` random points (denominator 64 relative to the side), and every
    /// grid cell gets a coefficient with components uniform in `[-1, 1)`.
    pub fn random_on_box(frame: Frame, lo: &[Q], hi: &[Q], cuts: usize, rng: &mut ChaCha8Rng) -> Result<Self> {
        let d = frame.dim();
        if lo.len() != d || hi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: lo.len(),
            });
        }
        let mut breaks: Vec<Vec<Q>> = Vec::with_capacity(d);
        for j in 0..d {
            let side = &hi[j] - &lo[j];
            let mut ticks: Vec<i64> = (0..cuts).map(|_| rng.random_range(1..64)).collect();
            ticks.sort_unstable();
            ticks.dedup();
            let mut b = vec![lo[j].clone()];
            b.extend(ticks.iter().map(|&t| &lo[j] + &side * q(t, 64)));
            b.push(hi[j].clone());
            breaks.push(b);
        }
        let mut terms = Vec::new();
        let mut idx = vec![0usize; d];
        loop {
            let lo_c = (0..d).map(|j| breaks[j][idx[j]].clone()).collect();
            let hi_c = (0..d).map(|j| breaks[j][idx[j] + 1].clone()).collect();
            let coeff = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            terms.push(SpectrumTerm {
                coeff,
                cell: Cell::new(lo_c, hi_c)?,
            });
            let mut axis = 0;
            loop {
                if axis == d {
                    return Self::new(frame, terms);
                }
                idx[axis] += 1;
                if idx[axis] + 1 < breaks[axis].len() {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    #[serde(with = "crate::io::f17")]
    re: f64,
    #[serde(with = "crate::io::f17")]
    im: f64,
    lo: Vec<String>,
    hi: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignalDoc {
    frame: Frame,
    terms: Vec<TermDoc>,
}

impl Serialize for BandlimitedSignal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SignalDoc {
            frame: self.frame.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| TermDoc {
                    re: t.coeff.re,
                    im: t.coeff.im,
                    lo: t.cell.lo().iter().map(format_q).collect(),
                    hi: t.cell.hi().iter().map(format_q).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BandlimitedSignal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SignalDoc::deserialize(d)?;
        let build = || -> Result<Self> {
            let terms = doc
                .terms
                .iter()
                .map(|t| {
                    let lo = t.lo.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
                    let hi = t.hi.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
                    Ok(SpectrumTerm {
                        coeff: Complex64::new(t.re, t.im),
                        cell: Cell::new(lo, hi)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Self::new(doc.frame, terms)
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// `𝓕⁻¹χ_P(x) = ∫_P e^{2πi(x,λ)} dλ`.
pub fn phi_eval(p: &Region, x: &[f64]) -> Complex64 {
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    p.fourier_indicator(&neg)
}

/// Spectral support `P`, its spectrum lattice `Γ`, the truncation radius and
/// the dilation level.
#[derive(Clone, Debug)]
pub struct SamplingPlan {
    support: Region,
    spectrum: Mat,
    radius: usize,
    level: i32,
    scheme: Option<DilationScheme>,
}

/// Coefficient vector `n` of `γ = Γn` with `‖n‖∞ ≤ R`, in a fixed order.
fn cube(dim: usize, radius: usize) -> Vec<Vec<i64>> {
    let r = radius as i64;
    let mut out = Vec::with_capacity((2 * radius + 1).pow(dim as u32));
    let mut n = vec![-r; dim];
    loop {
        out.push(n.clone());
        let mut axis = 0;
        loop {
            if axis == dim {
                return out;
            }
            n[axis] += 1;
            if n[axis] <= r {
                break;
            }
            n[axis] = -r;
            axis += 1;
        }
    }
}

impl SamplingPlan {
    /// Plan for a spectral box `∏ [lo_j, lo_j + s_j)` with `Γ = {Σ n_j s_j⁻¹ α_j}`.
    pub fn for_box(support: Region, radius: usize) -> Result<Self> {
        let [cell] = support.cells() else {
            return Err(Error::InvalidInput("box plan needs a single-cell support".into()));
        };
        let sides: Vec<Q> = cell.lo().iter().zip(cell.hi()).map(|(l, h)| h - l).collect();
        let spectrum = box_spectrum(support.frame(), &sides)?;
        Ok(Self {
            support,
            spectrum,
            radius,
            level: 0,
            scheme: None,
        })
    }

    /// Plan with an explicit spectrum generator; the orthogonality of the
    /// exponentials on `P` is checked over a small ball.
    pub fn with_spectrum(support: Region, spectrum: Mat, radius: usize) -> Result<Self> {
        let g = gram_max_offdiag(&support, &spectrum, 3.0)?;
        if g > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "exponentials on the support are not orthogonal (Gram {g:e})"
            )));
        }
        Ok(Self {
            support,
            spectrum,
            radius,
            level: 0,
            scheme: None,
        })
    }

    /// Sampling at level `j` of the ladder `V_j = L²(BʲP)`.
    pub fn at_level(mut self, scheme: DilationScheme, level: i32) -> Result<Self> {
        if scheme.dim() != self.support.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.support.dim(),
                got: scheme.dim(),
            });
        }
        self.scheme = Some(scheme);
        self.level = level;
        Ok(self)
    }

    pub fn with_radius(mut self, radius: usize) -> Self {
        self.radius = radius;
        self
    }

    pub fn support(&self) -> &Region {
        &self.support
    }

    pub fn spectrum(&self) -> &Mat {
        &self.spectrum
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    /// Gram bound of `P` against its spectrum over a ball of radius 3.
    pub fn spectral_defect(&self) -> Result<f64> {
        gram_max_offdiag(&self.support, &self.spectrum, 3.0)
    }

    pub fn indices(&self) -> Vec<Vec<i64>> {
        cube(self.dim(), self.radius)
    }

    pub fn gamma(&self, n: &[i64]) -> Vector {
        &self.spectrum * DVector::from_iterator(n.len(), n.iter().map(|&k| k as f64))
    }

    /// `Lʲ = (B^{−j})ᵀ`, identity at level 0.
    fn l_power(&self) -> Result<Mat> {
        match (&self.scheme, self.level) {
            (_, 0) | (None, _) => Ok(Mat::identity(self.dim(), self.dim())),
            (Some(s), j) => Ok(s.ambient_power(-j)?.transpose()),
        }
    }

    /// `(Bʲ)ᵀ`, identity at level 0.
    fn bt_power(&self) -> Result<Mat> {
        match (&self.scheme, self.level) {
            (_, 0) | (None, _) => Ok(Mat::identity(self.dim(), self.dim())),
            (Some(s), j) => Ok(s.ambient_power(j)?.transpose()),
        }
    }

    /// Sample point `−Lʲγ_n`.
    pub fn sample_point(&self, n: &[i64]) -> Result<Vector> {
        Ok(-(self.l_power()? * self.gamma(n)))
    }

    /// Samples `n ↦ f(−Lʲγ_n)` over the plan's cube.
    pub fn sample(&self, f: &BandlimitedSignal) -> Result<Samples> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: f.dim(),
            });
        }
        let l = self.l_power()?;
        let values = self
            .indices()
            .into_par_iter()
            .map(|n| {
                let x = -(&l * self.gamma(&n));
                let v = f.eval(x.as_slice());
                (n, v)
            })
            .collect();
        Ok(Samples { values })
    }
}

/// Sample values keyed by the lattice coefficient vector `n`.
#[derive(Clone, Debug, Default)]
pub struct Samples {
    pub values: HashMap<Vec<i64>, Complex64>,
}

fn reconstruct_at(plan: &SamplingPlan, samples: &Samples, y: &[f64]) -> Result<Complex64> {
    let p = &plan.support;
    let vol = p.volume();
    let eta_y = frame_frequency(
        p.frame(),
        &y.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>(),
    );
    let det = p.frame().det_abs();
    // η(y + γ) = Fᵀy + Fᵀγ
    let fg = p.frame().basis().transpose() * &plan.spectrum;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in plan.indices() {
        let Some(&v) = samples.values.get(&n) else {
            return Err(Error::IncompletePlan(n));
        };
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let eta: Vec<Complex64> = (0..y.len())
            .map(|i| {
                let shift: f64 = n.iter().enumerate().map(|(k, &nk)| fg[(i, k)] * nk as f64).sum();
                eta_y[i] + shift
            })
            .collect();
        let phi: Complex64 = p.cells().iter().map(|c| cell_integral(c, &eta, det)).sum();
        acc += v * phi;
    }
    Ok(acc / vol)
}

/// `f(x) ≈ |P|⁻¹ Σ_{‖n‖∞≤R} f(−γ_n) φ(x + γ_n)`; ignores the plan's level.
pub fn wsk_reconstruct(plan: &SamplingPlan, samples: &Samples, x: &[f64]) -> Result<Complex64> {
    reconstruct_at(plan, samples, x)
}

/// `f(x) ≈ |P|⁻¹ Σ f(−Lʲγ) φ((Bʲ)ᵀx + γ)` for `f` band-limited to `BʲP`.
pub fn wsk_reconstruct_dilated(plan: &SamplingPlan, samples: &Samples, x: &[f64]) -> Result<Complex64> {
    if plan.level == 0 {
        return reconstruct_at(plan, samples, x);
    }
    let y = plan.bt_power()? * DVector::from_column_slice(x);
    reconstruct_at(plan, samples, y.as_slice())
}

/// Square grid `[-h, h]^d` with `k` points per axis.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TestGrid {
    pub half_width: f64,
    pub points_per_axis: usize,
}

impl TestGrid {
    pub fn points(&self, dim: usize) -> Vec<Vec<f64>> {
        let k = self.points_per_axis.max(1);
        let step = if k == 1 {
            0.0
        } else {
            2.0 * self.half_width / (k - 1) as f64
        };
        index_grid(dim, k)
            .into_iter()
            .map(|ix| ix.iter().map(|&i| -self.half_width + step * i as f64).collect())
            .collect()
    }
}

fn index_grid(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut ix = vec![0usize; dim];
    loop {
        out.push(ix.clone());
        let mut axis = 0;
        loop {
            if axis == dim {
                return out;
            }
            ix[axis] += 1;
            if ix[axis] < k {
                break;
            }
            ix[axis] = 0;
            axis += 1;
        }
    }
}

/// One row of a reconstruction experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    #[serde(rename = "R")]
    pub radius: usize,
    #[serde(with = "crate::io::f17")]
    pub l2_rel_error: f64,
    #[serde(with = "crate::io::f17")]
    pub sup_error: f64,
    #[serde(with = "crate::io::f17")]
    pub interp_max_abs_err: f64,
    pub seed: u64,
}

/// Reconstruction errors of `f` on the grid for each radius, plus the worst
/// interpolation error at sample points with `‖n‖∞ ≤ 2`.
pub fn reconstruction_experiment(
    plan: &SamplingPlan,
    f: &BandlimitedSignal,
    radii: &[usize],
    grid: &TestGrid,
    seed: u64,
) -> Result<Vec<ExperimentRow>> {
    let pts = grid.points(plan.dim());
    let exact: Vec<Complex64> = pts.par_iter().map(|x| f.eval(x)).collect();
    let energy: f64 = exact.iter().map(|v| v.norm_sqr()).sum();
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let p = plan.clone().with_radius(r);
        let samples = p.sample(f)?;
        let approx: Vec<Complex64> = pts
            .par_iter()
            .map(|x| wsk_reconstruct_dilated(&p, &samples, x))
            .collect::<Result<_>>()?;
        let diff: Vec<f64> = approx.iter().zip(&exact).map(|(a, b)| (a - b).norm()).collect();
        let err: f64 = diff.iter().map(|d| d * d).sum();
        let l2_rel_error = if energy > 0.0 {
            (err / energy).sqrt()
        } else {
            err.sqrt()
        };
        let sup_error = diff.iter().copied().fold(0.0, f64::max);
        let interp = cube(p.dim(), r.min(2))
            .par_iter()
            .map(|n| -> Result<f64> {
                let x = p.sample_point(n)?;
                let got = wsk_reconstruct_dilated(&p, &samples, x.as_slice())?;
                Ok((got - samples.values[n]).norm())
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        rows.push(ExperimentRow {
            radius: r,
            l2_rel_error,
            sup_error,
            interp_max_abs_err: interp,
            seed,
        });
    }
    Ok(rows)
}

/// Splits `f` by chamber: `f = Σ_w f_w` with `𝓕f_w` supported in `wC(Π)`.
/// Keys are indices into `group.elements()`.
pub fn directional_decompose(
    f: &BandlimitedSignal,
    group: &MatrixGroup,
    simple: &SimpleSystem,
) -> Result<BTreeMap<usize, BandlimitedSignal>> {
    let d = f.dim();
    let mut parts: BTreeMap<usize, Vec<SpectrumTerm>> = BTreeMap::new();
    for (idx, t) in f.terms().iter().enumerate() {
        let center: Vec<f64> = (0..d)
            .map(|j| 0.5 * (t.cell.lo_f64()[j] + t.cell.hi_f64()[j]))
            .collect();
        let hit = chamber_of(&f.frame().to_ambient(&center), simple, group)?;
        if hit.boundary {
            return Err(Error::Straddle { index: idx });
        }
        let w_inv = group.elements()[hit.element].transpose();
        for corner in 0..(1usize << d) {
            let u: Vec<f64> = (0..d)
                .map(|j| {
                    if corner >> j & 1 == 1 {
                        t.cell.hi_f64()[j]
                    } else {
                        t.cell.lo_f64()[j]
                    }
                })
                .collect();
            let y = &w_inv * f.frame().to_ambient(&u);
            let scale = y.norm().max(1.0);
            if simple.roots().iter().any(|a| y.dot(a) / a.norm() < -EPS_GEOM * scale) {
                return Err(Error::Straddle { index: idx });
            }
        }
        parts.entry(hit.element).or_default().push(t.clone());
    }
    parts
        .into_iter()
        .map(|(w, terms)| Ok((w, BandlimitedSignal::new(f.frame().clone(), terms)?)))
        .collect()
}

/// Open cone generated by `wα_1, …, wα_n`, the dual of the chamber `wC(Π)`.
#[derive(Clone, Debug)]
pub struct DualCone {
    generators: Vec<Vector>,
    coords: Mat,
}

impl DualCone {
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Coefficients of `y` in the generators.
    pub fn coordinates(&self, y: &Vector) -> Vector {
        &self.coords * y
    }

    /// Every coefficient strictly positive (beyond `tol`).
    pub fn contains_interior(&self, y: &Vector, tol: f64) -> bool {
        self.coordinates(y).iter().all(|&t| t > tol)
    }
}

pub fn dual_cone(simple: &SimpleSystem, w: &Mat) -> Result<DualCone> {
    let generators: Vec<Vector> = simple.roots().iter().map(|a| w * a).collect();
    let g = crate::linalg::mat_from_columns(&generators);
    let coords = try_inverse(&g)?;
    Ok(DualCone { generators, coords })
}

/// `F_w(x + iy) = Σ c_k ∫_{S_k} e^{2πi(x,λ)} e^{−2π(y,λ)} dλ` for `y` in the
/// open dual cone.
pub fn eval_tube_extension(f_w: &BandlimitedSignal, cone: &DualCone, x: &[f64], y: &[f64]) -> Result<Complex64> {
    let yv = DVector::from_column_slice(y);
    if !cone.contains_interior(&yv, 0.0) {
        return Err(Error::Domain("imaginary part lies outside the dual cone".into()));
    }
    let zeta: Vec<Complex64> = x.iter().zip(y).map(|(&a, &b)| Complex64::new(a, b)).collect();
    Ok(f_w.eval_complex(&zeta))
}

/// `Σ |c_k| ∫_{S_k} e^{−2π(y,λ)} dλ`, an upper bound for `|F_w(x + iy)|`.
pub fn tube_damping_bound(f_w: &BandlimitedSignal, y: &[f64]) -> f64 {
    let zeta: Vec<Complex64> = y.iter().map(|&b| Complex64::new(0.0, b)).collect();
    let eta = frame_frequency(f_w.frame(), &zeta);
    let det = f_w.frame().det_abs();
    f_w.terms()
        .iter()
        .map(|t| t.coeff.norm() * cell_integral(&t.cell, &eta, det).re)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qi;
    use rand::SeedableRng;

    fn unit_box(dim: usize) -> Region {
        Region::from_box(Frame::identity(dim), vec![qi(0); dim], vec![qi(1); dim]).unwrap()
    }

    #[test]
    fn single_box_at_origin_is_volume() {
        let f = BandlimitedSignal::new(
            Frame::identity(1),
            vec![SpectrumTerm {
                coeff: Complex64::new(1.0, 0.0),
                cell: Cell::new(vec![qi(0)], vec![qi(1)]).unwrap(),
            }],
        )
        .unwrap();
        assert!((f.eval(&[0.0]) - 1.0).norm() < 1e-15);
        assert!((phi_eval(&unit_box(1), &[0.0]) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn overlapping_terms_rejected() {
        let c = Cell::new(vec![qi(0)], vec![qi(1)]).unwrap();
        let t = SpectrumTerm {
            coeff: Complex64::new(1.0, 0.0),
            cell: c,
        };
        assert!(BandlimitedSignal::new(Frame::identity(1), vec![t.clone(), t]).is_err());
    }

    #[test]
    fn interpolation_identity_2d() {
        let p = unit_box(2);
        let plan = SamplingPlan::for_box(p, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = BandlimitedSignal::random_on_box(Frame::identity(2), &[qi(0), qi(0)], &[qi(1), qi(1)], 3, &mut rng)
            .unwrap();
        let s = plan.sample(&f).unwrap();
        for n in [vec![0, 0], vec![2, -3], vec![-6, 6]] {
            let x = plan.sample_point(&n).unwrap();
            let r = wsk_reconstruct(&plan, &s, x.as_slice()).unwrap();
            assert!((r - s.values[&n]).norm() < 1e-10);
        }
    }

    #[test]
    fn missing_sample_is_reported() {
        let plan = SamplingPlan::for_box(unit_box(1), 2).unwrap();
        let mut s = plan.sample(&BandlimitedSignal::zero(Frame::identity(1))).unwrap();
        s.values.remove(&vec![1]);
        assert!(matches!(
            wsk_reconstruct(&plan, &s, &[0.3]),
            Err(Error::IncompletePlan(n)) if n == vec![1]
        ));
    }

    #[test]
    fn zero_signal_reconstructs_to_zero() {
        let plan = SamplingPlan::for_box(unit_box(2), 3).unwrap();
        let s = plan.sample(&BandlimitedSignal::zero(Frame::identity(2))).unwrap();
        assert_eq!(
            wsk_reconstruct(&plan, &s, &[0.2, 0.7]).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn dual_cone_of_identity_is_generated_by_simple_roots() {
        let data = crate::coxeter::CoxeterData::new("I2:4".parse().unwrap(), false).unwrap();
        let c = dual_cone(&data.simple, &Mat::identity(2, 2)).unwrap();
        for (g, a) in c.generators().iter().zip(data.simple.roots()) {
            assert_eq!(g, a);
        }
    }
}
