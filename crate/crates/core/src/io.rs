//! JSON documents and SVG rendering.
//!
//! Floats are written with 17 significant digits so that every `f64`
//! round-trips exactly; rationals are written as `"n/d"` strings.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::coxeter::CoxeterData;
use crate::error::{Error, Result};
use crate::linalg::{format_q, mat_from_rows, mat_to_rows, parse_q, Mat, Q};
use crate::region::{Cell, Frame, Region};

fn raw_f64(x: f64) -> Box<RawValue> {
    let s = if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    };
    RawValue::from_string(s).expect("formatted float is valid JSON")
}

/// `serde(with)` adapter for a single `f64`.
pub mod f17 {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        raw_f64(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        Option::<f64>::deserialize(d).map(|x| x.unwrap_or(f64::NAN))
    }
}

/// `serde(with)` adapter for `Vec<f64>`.
pub mod f17_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
        xs.iter().map(|&x| raw_f64(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
        Vec::<f64>::deserialize(d)
    }
}

/// `serde(with)` adapter for row-major matrices stored as `Vec<Vec<f64>>`.
pub mod f17_rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<f64>], s: S) -> std::result::Result<S::Ok, S::Error> {
        rows.iter()
            .map(|r| r.iter().map(|&x| raw_f64(x)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<f64>>, D::Error> {
        Vec::<Vec<f64>>::deserialize(d)
    }
}

/// `serde(with)` adapter for maps with `f64` values; keys become strings.
pub mod f17_map {
    use std::collections::BTreeMap;

    use super::*;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, &v)| (k.to_string(), raw_f64(v)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<usize, f64>, D::Error> {
        let raw = BTreeMap::<String, f64>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `serde(with)` adapter for lists of rational vectors.
pub mod qvecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(format_q).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|r| r.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

/// `serde(with)` adapter for a single rational vector.
pub mod qvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|x| parse_q(x))
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    #[serde(with = "qvec")]
    lo: Vec<Q>,
    #[serde(with = "qvec")]
    hi: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionDoc {
    #[serde(with = "f17_rows")]
    frame: Vec<Vec<f64>>,
    cells: Vec<CellDoc>,
}

impl Serialize for Frame {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        f17_rows::serialize(&mat_to_rows(self.basis()), s)
    }
}

impl<'de> Deserialize<'de> for Frame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        mat_from_rows(&rows)
            .and_then(Frame::new)
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RegionDoc {
            frame: mat_to_rows(self.frame().basis()),
            cells: self
                .cells()
                .iter()
                .map(|c| CellDoc {
                    lo: c.lo().to_vec(),
                    hi: c.hi().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = RegionDoc::deserialize(d)?;
        let build = || -> Result<Region> {
            let frame = Frame::new(mat_from_rows(&doc.frame)?)?;
            let cells = doc
                .cells
                .into_iter()
                .map(|c| Cell::new(c.lo, c.hi))
                .collect::<Result<Vec<_>>>()?;
            Region::from_disjoint_checked(frame, cells)
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// Root-system document: roots, `Π`, `Π*` and the group elements.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemDoc {
    pub dim: usize,
    pub family: String,
    #[serde(with = "f17_rows")]
    pub roots: Vec<Vec<f64>>,
    #[serde(with = "f17_rows")]
    pub simple: Vec<Vec<f64>>,
    #[serde(with = "f17_rows")]
    pub dual: Vec<Vec<f64>>,
    pub elements: Vec<Matrix17>,
}

/// Row-major matrix serialized with 17 significant digits.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix17(#[serde(with = "f17_rows")] pub Vec<Vec<f64>>);

impl From<&Mat> for Matrix17 {
    fn from(m: &Mat) -> Self {
        Self(mat_to_rows(m))
    }
}

impl From<&CoxeterData> for RootSystemDoc {
    fn from(c: &CoxeterData) -> Self {
        let vecs = |v: &[crate::linalg::Vector]| v.iter().map(|x| x.iter().copied().collect()).collect();
        Self {
            dim: c.roots.dim(),
            family: c.roots.family().to_string(),
            roots: vecs(c.roots.roots()),
            simple: vecs(c.simple.roots()),
            dual: vecs(c.dual.vectors()),
            elements: c.group.elements().iter().map(Matrix17::from).collect(),
        }
    }
}

/// One named region in a box-list export.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedRegion {
    pub name: String,
    pub region: Region,
}

/// Ambient-coordinate corner list of every cell, for 3D viewers.
#[derive(Clone, Debug, Serialize)]
pub struct BoxListDoc {
    pub regions: Vec<BoxListEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoxListEntry {
    pub name: String,
    pub boxes: Vec<BoxCorners>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoxCorners {
    /// Ambient image of the frame corner `lo`.
    #[serde(with = "f17_vec")]
    pub origin: Vec<f64>,
    /// Ambient images of the box edges from `origin`.
    #[serde(with = "f17_rows")]
    pub edges: Vec<Vec<f64>>,
}

pub fn box_list(regions: &[NamedRegion]) -> BoxListDoc {
    let regions = regions
        .iter()
        .map(|nr| {
            let f = nr.region.frame();
            let boxes = nr
                .region
                .cells()
                .iter()
                .map(|c| {
                    let origin = f.to_ambient(c.lo_f64()).iter().copied().collect();
                    let edges = (0..c.dim())
                        .map(|j| {
                            let w = c.hi_f64()[j] - c.lo_f64()[j];
                            f.basis().column(j).iter().map(|x| x * w).collect()
                        })
                        .collect();
                    BoxCorners { origin, edges }
                })
                .collect();
            BoxListEntry {
                name: nr.name.clone(),
                boxes,
            }
        })
        .collect();
    BoxListDoc { regions }
}

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f",
];

/// Renders 2D regions as outlined parallelograms, one `<path>` per cell.
pub fn svg_2d(regions: &[NamedRegion], width_px: f64) -> Result<String> {
    if regions.iter().any(|r| r.region.dim() != 2) {
        return Err(Error::InvalidInput("SVG export needs 2D regions".into()));
    }
    let mut polys: Vec<(usize, Vec<[f64; 2]>)> = Vec::new();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (k, nr) in regions.iter().enumerate() {
        let f = nr.region.frame();
        for c in nr.region.cells() {
            let (lo, hi) = (c.lo_f64(), c.hi_f64());
            let corners = [[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]];
            let pts: Vec<[f64; 2]> = corners
                .iter()
                .map(|u| {
                    let p = f.to_ambient(u);
                    [p[0], p[1]]
                })
                .collect();
            for p in &pts {
                x0 = x0.min(p[0]);
                x1 = x1.max(p[0]);
                y0 = y0.min(p[1]);
                y1 = y1.max(p[1]);
            }
            polys.push((k, pts));
        }
    }
    if polys.is_empty() {
        x0 = 0.0;
        y0 = 0.0;
        x1 = 1.0;
        y1 = 1.0;
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let (vx, vy, vw, vh) = (x0 - pad, -(y1 + pad), x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let height_px = width_px * vh / vw;
    let stroke = vw / width_px;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width_px:.0}" height="{height_px:.0}" viewBox="{vx} {vy} {vw} {vh}">"#
    )
    .ok();
    for (k, nr) in regions.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        writeln!(
            out,
            r#"<g id="{}" fill="{color}" fill-opacity="0.35" stroke="black" stroke-width="{stroke}">"#,
            xml_escape(&nr.name)
        )
        .ok();
        for (_, pts) in polys.iter().filter(|(i, _)| *i == k) {
            let mut d = String::new();
            for (i, p) in pts.iter().enumerate() {
                write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, p[0], -p[1]).ok();
            }
            d.push('Z');
            writeln!(out, r#"<path d="{d}"/>"#).ok();
        }
        writeln!(out, "</g>").ok();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Serializes any document as pretty JSON.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qi};

    #[test]
    fn region_round_trip_is_exact() {
        let f = Frame::from_columns(&[vec![1.0, 0.0], vec![(0.7f64).cos() / 3.0, 1.0]]).unwrap();
        let r = Region::from_box(f, vec![q(-1, 3), qi(0)], vec![q(22, 7), q(1, 1 << 40)]).unwrap();
        let s = to_json(&r).unwrap();
        let back: Region = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.frame().basis(), r.frame().basis());
    }

    #[test]
    fn floats_have_seventeen_digits() {
        #[derive(Serialize)]
        struct W(#[serde(with = "f17")] f64);
        assert_eq!(serde_json::to_string(&W(0.1)).unwrap(), "1.0000000000000001e-1");
    }

    #[test]
    fn svg_has_one_path_per_cell() {
        let r = Region::from_box(Frame::identity(2), vec![qi(0), qi(0)], vec![qi(1), qi(1)]).unwrap();
        let two = r.union(&r.translate(&[qi(2), qi(0)]).unwrap()).unwrap();
        let svg = svg_2d(
            &[NamedRegion {
                name: "A".into(),
                region: two,
            }],
            400.0,
        )
        .unwrap();
        assert_eq!(svg.matches("<path").count(), 2);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let s = r#"{"frame":[[1.0]],"cells":[],"extra":1}"#;
        assert!(serde_json::from_str::<Region>(s).is_err());
    }
}
