use std::collections::HashMap;

use num_traits::Zero;

use super::cell::Cell;
use super::frame::Frame;
use crate::error::{Error, Result};
use crate::linalg::{q_to_f64, Vector, EPS_GEOM, Q};

/// Outcome of a guarded membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Inside,
    Outside,
    /// Within `ε_geom` of a face; membership is decided but not trusted.
    Boundary,
}

/// A finite union of pairwise-disjoint half-open boxes in a frame.
#[derive(Clone, Debug)]
pub struct Region {
    frame: Frame,
    cells: Vec<Cell>,
    bbox: Option<(Vec<f64>, Vec<f64>)>,
}

fn bbox_of(cells: &[Cell]) -> Option<(Vec<f64>, Vec<f64>)> {
    let first = cells.first()?;
    let mut lo = first.lo_f64().to_vec();
    let mut hi = first.hi_f64().to_vec();
    for c in &cells[1..] {
        for j in 0..lo.len() {
            lo[j] = lo[j].min(c.lo_f64()[j]);
            hi[j] = hi[j].max(c.hi_f64()[j]);
        }
    }
    Some((lo, hi))
}

impl PartialEq for Region {
    /// Exact set equality.
    fn eq(&self, other: &Self) -> bool {
        self.set_eq(other).unwrap_or(false)
    }
}

impl Region {
    pub fn empty(frame: Frame) -> Self {
        Self {
            frame,
            cells: Vec::new(),
            bbox: None,
        }
    }

    /// Caller guarantees the cells are pairwise disjoint.
    pub(crate) fn from_disjoint(frame: Frame, cells: Vec<Cell>) -> Self {
        let bbox = bbox_of(&cells);
        Self { frame, cells, bbox }
    }

    pub fn from_cell(frame: Frame, cell: Cell) -> Result<Self> {
        if cell.dim() != frame.dim() {
            return Err(Error::DimensionMismatch {
                expected: frame.dim(),
                got: cell.dim(),
            });
        }
        Ok(Self::from_disjoint(frame, vec![cell]))
    }

    /// Single box `∏ [lo_j, hi_j)`.
    pub fn from_box(frame: Frame, lo: Vec<Q>, hi: Vec<Q>) -> Result<Self> {
        Self::from_cell(frame, Cell::new(lo, hi)?)
    }

    /// Union of arbitrary (possibly overlapping) boxes.
    pub fn from_cells(frame: Frame, cells: Vec<Cell>) -> Result<Self> {
        let mut out = Self::empty(frame);
        for c in cells {
            let r = Self::from_cell(out.frame.clone(), c)?;
            out = out.union(&r)?;
        }
        Ok(out)
    }

    /// Builds a region from cells asserted disjoint, verifying the claim.
    pub fn from_disjoint_checked(frame: Frame, cells: Vec<Cell>) -> Result<Self> {
        if let Some(c) = cells.iter().find(|c| c.dim() != frame.dim()) {
            return Err(Error::DimensionMismatch {
                expected: frame.dim(),
                got: c.dim(),
            });
        }
        let r = Self::from_disjoint(frame, cells);
        if !r.is_disjoint() {
            return Err(Error::InvalidInput("cells overlap".into()));
        }
        Ok(r)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Float bounding box in frame coordinates.
    pub fn bbox_f64(&self) -> Option<(&[f64], &[f64])> {
        self.bbox.as_ref().map(|(l, h)| (l.as_slice(), h.as_slice()))
    }

    /// Exact bounding box in frame coordinates.
    pub fn bounding_box(&self) -> Option<(Vec<Q>, Vec<Q>)> {
        let first = self.cells.first()?;
        let mut lo = first.lo().to_vec();
        let mut hi = first.hi().to_vec();
        for c in &self.cells[1..] {
            for j in 0..lo.len() {
                if c.lo()[j] < lo[j] {
                    lo[j] = c.lo()[j].clone();
                }
                if c.hi()[j] > hi[j] {
                    hi[j] = c.hi()[j].clone();
                }
            }
        }
        Some((lo, hi))
    }

    fn check_frame(&self, other: &Region) -> Result<()> {
        if self.frame.same_as(&other.frame) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Exact pairwise disjointness check, `O(n²)`.
    pub fn is_disjoint(&self) -> bool {
        self.cells
            .iter()
            .enumerate()
            .all(|(i, a)| self.cells[i + 1..].iter().all(|b| !a.overlaps(b)))
    }

    fn bbox_meets(&self, cell: &Cell) -> bool {
        match &self.bbox {
            None => false,
            Some((lo, hi)) => (0..lo.len()).all(|j| cell.lo_f64()[j] <= hi[j] && lo[j] <= cell.hi_f64()[j]),
        }
    }

    fn subtract_cells(pieces: Vec<Cell>, other: &Region) -> Vec<Cell> {
        let mut pieces = pieces;
        for b in &other.cells {
            if pieces.is_empty() {
                break;
            }
            let mut next = Vec::with_capacity(pieces.len());
            for p in pieces {
                if p.overlaps(b) {
                    next.extend(p.subtract(b));
                } else {
                    next.push(p);
                }
            }
            pieces = next;
        }
        pieces
    }

    /// `self \ other`.
    pub fn subtract(&self, other: &Region) -> Result<Region> {
        self.check_frame(other)?;
        let mut out = Vec::with_capacity(self.cells.len());
        for a in &self.cells {
            if !other.bbox_meets(a) {
                out.push(a.clone());
                continue;
            }
            out.extend(Self::subtract_cells(vec![a.clone()], other));
        }
        Ok(Self::from_disjoint(self.frame.clone(), out))
    }

    /// `self ∪ other`, disjointified as `self ⊔ (other \ self)`.
    pub fn union(&self, other: &Region) -> Result<Region> {
        self.check_frame(other)?;
        let extra = other.subtract(self)?;
        let mut cells = self.cells.clone();
        cells.extend(extra.cells);
        Ok(Self::from_disjoint(self.frame.clone(), cells))
    }

    pub fn intersect(&self, other: &Region) -> Result<Region> {
        self.check_frame(other)?;
        let mut out = Vec::new();
        for a in &self.cells {
            if !other.bbox_meets(a) {
                continue;
            }
            for b in &other.cells {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        Ok(Self::from_disjoint(self.frame.clone(), out))
    }

    /// Translation by a frame-coordinate vector.
    pub fn translate(&self, v: &[Q]) -> Result<Region> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let cells = self.cells.iter().map(|c| c.translate(v)).collect();
        Ok(Self::from_disjoint(self.frame.clone(), cells))
    }

    /// Per-axis scaling in frame coordinates (a frame-diagonal linear map).
    pub fn scale_diag(&self, d: &[Q]) -> Result<Region> {
        if d.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: d.len(),
            });
        }
        if let Some(axis) = d.iter().position(Zero::is_zero) {
            return Err(Error::ZeroScale { axis });
        }
        let cells = self.cells.iter().map(|c| c.scale(d)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_disjoint(self.frame.clone(), cells))
    }

    /// Uniform scaling by `s` on every axis.
    pub fn scale(&self, s: &Q) -> Result<Region> {
        self.scale_diag(&vec![s.clone(); self.dim()])
    }

    /// Exact frame-coordinate volume `Σ ∏ (hi − lo)`.
    pub fn coordinate_volume(&self) -> Q {
        self.cells.iter().fold(Q::zero(), |acc, c| acc + c.volume())
    }

    /// Lebesgue measure in ambient coordinates.
    pub fn volume(&self) -> f64 {
        self.frame.det_abs() * q_to_f64(&self.coordinate_volume())
    }

    pub fn contains(&self, x: &Vector) -> bool {
        let u = self.frame.to_frame(x);
        self.contains_frame(&u)
    }

    pub fn contains_frame(&self, u: &[f64]) -> bool {
        if let Some((lo, hi)) = &self.bbox {
            if u.iter().enumerate().any(|(j, &x)| x < lo[j] || x >= hi[j]) {
                return false;
            }
        }
        self.cells.iter().any(|c| c.contains_frame(u))
    }

    /// Membership with an `ε_geom` guard band on every cell face.
    pub fn classify_frame(&self, u: &[f64]) -> PointClass {
        self.classify_frame_within(u, EPS_GEOM)
    }

    /// [`Region::classify_frame`] with an explicit boundary band.
    pub fn classify_frame_within(&self, u: &[f64], guard: f64) -> PointClass {
        if let Some((lo, hi)) = &self.bbox {
            if u.iter()
                .enumerate()
                .any(|(j, &x)| x < lo[j] - guard || x >= hi[j] + guard)
            {
                return PointClass::Outside;
            }
        } else {
            return PointClass::Outside;
        }
        let mut near = false;
        for c in &self.cells {
            if let Some(d) = c.face_distance(u, guard) {
                if d <= guard {
                    near = true;
                } else if c.contains_frame(u) {
                    return PointClass::Inside;
                }
            }
        }
        if near {
            PointClass::Boundary
        } else {
            PointClass::Outside
        }
    }

    pub fn classify(&self, x: &Vector) -> PointClass {
        self.classify_frame(&self.frame.to_frame(x))
    }

    pub fn is_subset(&self, other: &Region) -> Result<bool> {
        Ok(self.subtract(other)?.is_empty())
    }

    /// Exact set equality (both differences empty).
    pub fn set_eq(&self, other: &Region) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// Merges cells that share a full face until no merge applies. The point
    /// set is unchanged.
    pub fn coalesce(&self) -> Region {
        let d = self.dim();
        let mut cells = self.cells.clone();
        loop {
            let before = cells.len();
            for axis in 0..d {
                let mut groups: HashMap<Vec<Q>, Vec<Cell>> = HashMap::new();
                for c in cells.drain(..) {
                    let key: Vec<Q> = (0..d)
                        .filter(|&j| j != axis)
                        .flat_map(|j| [c.lo()[j].clone(), c.hi()[j].clone()])
                        .collect();
                    groups.entry(key).or_default().push(c);
                }
                let mut keys: Vec<_> = groups.keys().cloned().collect();
                keys.sort();
                for k in keys {
                    let mut g = groups.remove(&k).unwrap();
                    g.sort_by(|a, b| a.lo()[axis].cmp(&b.lo()[axis]));
                    let mut cur = g[0].clone();
                    for c in g.into_iter().skip(1) {
                        if c.lo()[axis] == cur.hi()[axis] {
                            let mut hi = cur.hi().to_vec();
                            hi[axis] = c.hi()[axis].clone();
                            cur = Cell::new_unchecked(cur.lo().to_vec(), hi);
                        } else {
                            cells.push(cur);
                            cur = c;
                        }
                    }
                    cells.push(cur);
                }
            }
            if cells.len() == before {
                break;
            }
        }
        Self::from_disjoint(self.frame.clone(), cells)
    }

    /// Same point set expressed in a different frame object; the bases must agree.
    pub fn with_frame(&self, frame: Frame) -> Result<Region> {
        if !self.frame.same_as(&frame) {
            return Err(Error::FrameMismatch);
        }
        Ok(Self::from_disjoint(frame, self.cells.clone()))
    }
}
