use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q_to_f64, Q};

/// Compares two rationals using their cached `f64` images first. Rounding to
/// `f64` is monotone, so distinct floats decide the order; only equal floats
/// fall back to exact comparison.
#[inline]
pub(crate) fn cmp_q(a: &Q, af: f64, b: &Q, bf: f64) -> Ordering {
    if af < bf {
        Ordering::Less
    } else if af > bf {
        Ordering::Greater
    } else {
        a.cmp(b)
    }
}

/// Half-open axis-aligned box `∏ [lo_j, hi_j)` in frame coordinates.
#[derive(Clone, Debug)]
pub struct Cell {
    lo: Vec<Q>,
    hi: Vec<Q>,
    lo_f: Vec<f64>,
    hi_f: Vec<f64>,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }
}

impl Eq for Cell {}

impl Cell {
    pub fn new(lo: Vec<Q>, hi: Vec<Q>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidInput("box corners of different dimension".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::InvalidInput("box needs lo < hi on every axis".into()));
        }
        Ok(Self::new_unchecked(lo, hi))
    }

    pub(crate) fn new_unchecked(lo: Vec<Q>, hi: Vec<Q>) -> Self {
        let lo_f = lo.iter().map(q_to_f64).collect();
        let hi_f = hi.iter().map(q_to_f64).collect();
        Self { lo, hi, lo_f, hi_f }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Q] {
        &self.lo
    }

    pub fn hi(&self) -> &[Q] {
        &self.hi
    }

    pub fn lo_f64(&self) -> &[f64] {
        &self.lo_f
    }

    pub fn hi_f64(&self) -> &[f64] {
        &self.hi_f
    }

    /// Exact coordinate volume `∏ (hi − lo)`.
    pub fn volume(&self) -> Q {
        self.lo
            .iter()
            .zip(&self.hi)
            .fold(Q::from_integer(1.into()), |acc, (l, h)| acc * (h - l))
    }

    #[inline]
    fn axis_overlaps(&self, other: &Cell, j: usize) -> bool {
        // [a, b) ∩ [c, d) ≠ ∅ ⇔ a < d ∧ c < b
        cmp_q(&self.lo[j], self.lo_f[j], &other.hi[j], other.hi_f[j]) == Ordering::Less
            && cmp_q(&other.lo[j], other.lo_f[j], &self.hi[j], self.hi_f[j]) == Ordering::Less
    }

    pub fn overlaps(&self, other: &Cell) -> bool {
        (0..self.dim()).all(|j| self.axis_overlaps(other, j))
    }

    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        if !self.overlaps(other) {
            return None;
        }
        let lo = (0..self.dim())
            .map(|j| self.lo[j].clone().max(other.lo[j].clone()))
            .collect();
        let hi = (0..self.dim())
            .map(|j| self.hi[j].clone().min(other.hi[j].clone()))
            .collect();
        Some(Cell::new_unchecked(lo, hi))
    }

    /// `self \ other` as at most `2·dim` disjoint boxes.
    pub fn subtract(&self, other: &Cell) -> Vec<Cell> {
        if !self.overlaps(other) {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut rest_lo = self.lo.clone();
        let mut rest_hi = self.hi.clone();
        for j in 0..self.dim() {
            if rest_lo[j] < other.lo[j] {
                let mut hi = rest_hi.clone();
                hi[j] = other.lo[j].clone();
                out.push(Cell::new_unchecked(rest_lo.clone(), hi));
                rest_lo[j] = other.lo[j].clone();
            }
            if other.hi[j] < rest_hi[j] {
                let mut lo = rest_lo.clone();
                lo[j] = other.hi[j].clone();
                out.push(Cell::new_unchecked(lo, rest_hi.clone()));
                rest_hi[j] = other.hi[j].clone();
            }
        }
        out
    }

    pub fn translate(&self, v: &[Q]) -> Cell {
        let lo = self.lo.iter().zip(v).map(|(a, b)| a + b).collect();
        let hi = self.hi.iter().zip(v).map(|(a, b)| a + b).collect();
        Cell::new_unchecked(lo, hi)
    }

    /// Per-axis scaling. A negative factor swaps the faces; the image is
    /// stored half-open `[d·hi, d·lo)`, which differs from the exact image by
    /// a null set.
    pub fn scale(&self, d: &[Q]) -> Result<Cell> {
        let mut lo = Vec::with_capacity(self.dim());
        let mut hi = Vec::with_capacity(self.dim());
        for (j, f) in d.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::ZeroScale { axis: j });
            }
            let a = &self.lo[j] * f;
            let b = &self.hi[j] * f;
            if f.is_negative() {
                lo.push(b);
                hi.push(a);
            } else {
                lo.push(a);
                hi.push(b);
            }
        }
        Ok(Cell::new_unchecked(lo, hi))
    }

    /// Half-open membership in frame coordinates.
    pub fn contains_frame(&self, u: &[f64]) -> bool {
        u.iter()
            .enumerate()
            .all(|(j, &x)| self.lo_f[j] <= x && x < self.hi_f[j])
    }

    /// Smallest distance (in frame coordinates) from `u` to a face, assuming
    /// `u` lies in the `guard`-inflated box; `None` when it does not.
    pub(crate) fn face_distance(&self, u: &[f64], guard: f64) -> Option<f64> {
        let mut best = f64::INFINITY;
        for (j, &x) in u.iter().enumerate() {
            if x < self.lo_f[j] - guard || x >= self.hi_f[j] + guard {
                return None;
            }
            best = best.min((x - self.lo_f[j]).abs()).min((self.hi_f[j] - x).abs());
        }
        Some(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn cell(lo: &[(i64, i64)], hi: &[(i64, i64)]) -> Cell {
        Cell::new(
            lo.iter().map(|&(n, d)| q(n, d)).collect(),
            hi.iter().map(|&(n, d)| q(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn subtract_produces_disjoint_pieces() {
        let a = cell(&[(0, 1), (0, 1)], &[(1, 1), (1, 1)]);
        let b = cell(&[(1, 4), (1, 4)], &[(1, 2), (1, 2)]);
        let pieces = a.subtract(&b);
        assert!(pieces.len() <= 4);
        let total = pieces.iter().fold(q(0, 1), |acc, p| acc + p.volume());
        assert_eq!(total, q(15, 16));
        for (i, p) in pieces.iter().enumerate() {
            assert!(!p.overlaps(&b));
            for r in &pieces[i + 1..] {
                assert!(!p.overlaps(r));
            }
        }
    }

    #[test]
    fn touching_faces_do_not_overlap() {
        let a = cell(&[(0, 1)], &[(1, 1)]);
        let b = cell(&[(1, 1)], &[(2, 1)]);
        assert!(!a.overlaps(&b));
        assert!(a.intersect(&b).is_none());
    }

    #[test]
    fn negative_scale_swaps_faces() {
        let a = cell(&[(1, 1)], &[(2, 1)]);
        let s = a.scale(&[q(-1, 2)]).unwrap();
        assert_eq!(s.lo(), &[q(-1, 1)]);
        assert_eq!(s.hi(), &[q(-1, 2)]);
        assert!(a.scale(&[q(0, 1)]).is_err());
    }

    #[test]
    fn rejects_degenerate_boxes() {
        assert!(Cell::new(vec![q(1, 1)], vec![q(1, 1)]).is_err());
    }
}
