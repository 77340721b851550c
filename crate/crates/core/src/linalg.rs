//! Small dense linear-algebra and exact-rational helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;
pub type Q = BigRational;

/// Geometric tolerance used for matrix equality, wall proximity and face guards.
pub const EPS_GEOM: f64 = 1e-9;

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued fractions. Returns `None` when the approximation misses `x`
/// by more than `tol`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = target;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let approx = p1 as f64 / q1 as f64;
        if (approx - target).abs() <= tol.min(1e-15 * target.max(1.0)) {
            break;
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let approx = p1 as f64 / q1 as f64;
    if (approx - target).abs() > tol {
        return None;
    }
    Some(BigRational::new(BigInt::from(sign as i128 * p1), BigInt::from(q1)))
}

pub fn frobenius_dist(a: &Mat, b: &Mat) -> f64 {
    (a - b).norm()
}

pub fn mat_approx_eq(a: &Mat, b: &Mat, tol: f64) -> bool {
    a.shape() == b.shape() && frobenius_dist(a, b) <= tol
}

/// Row-major lexicographic comparison, used for deterministic tie-breaks.
pub fn lex_cmp(a: &Mat, b: &Mat) -> std::cmp::Ordering {
    let ra = a.transpose();
    let rb = b.transpose();
    for (x, y) in ra.iter().zip(rb.iter()) {
        if (x - y).abs() > EPS_GEOM {
            return x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal);
        }
    }
    std::cmp::Ordering::Equal
}

pub fn mat_from_rows(rows: &[Vec<f64>]) -> Result<Mat> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let m = rows[0].len();
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidInput("ragged matrix rows".into()));
    }
    Ok(DMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

pub fn mat_to_rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn mat_from_columns(cols: &[Vector]) -> Mat {
    DMatrix::from_columns(cols)
}

pub fn try_inverse(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::Rank(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let det = m.determinant();
    let scale = m.norm().powi(m.nrows() as i32);
    if !det.is_finite() || scale == 0.0 || det.abs() < 1e-14 * scale {
        return Err(Error::Rank(format!("determinant {det:e}")));
    }
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Rank("inverse failed".into()))
}

/// Exact rational square matrix, row-major.
pub type QMat = Vec<Vec<Q>>;

pub fn qmat_identity(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn qmat_diag(d: &[Q]) -> QMat {
    let n = d.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Q::zero() }).collect())
        .collect()
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Q::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn qmat_vec(a: &QMat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Gauss-Jordan inverse over the rationals.
pub fn qmat_inverse(a: &QMat) -> Result<QMat> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Rank("singular rational matrix".into()))?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn qmat_det(a: &QMat) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    det
}

pub fn qmat_to_f64(a: &QMat) -> Mat {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    DMatrix::from_fn(n, m, |i, j| q_to_f64(&a[i][j]))
}

pub fn qmat_is_diagonal(a: &QMat) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

pub fn qmat_is_integer(a: &QMat) -> bool {
    a.iter().flatten().all(|x| x.is_integer())
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(0.75, 1000, 1e-12), Some(q(3, 4)));
        assert_eq!(rationalize(-2.0, 10, 1e-12), Some(qi(-2)));
        assert_eq!(rationalize(1.0 / 3.0, 100, 1e-12), Some(q(1, 3)));
        assert!(rationalize(std::f64::consts::PI, 10, 1e-9).is_none());
    }

    #[test]
    fn rational_inverse_and_det() {
        let a = vec![vec![qi(1), qi(-1)], vec![qi(1), qi(1)]];
        assert_eq!(qmat_det(&a), qi(2));
        let inv = qmat_inverse(&a).unwrap();
        assert_eq!(qmat_mul(&a, &inv), qmat_identity(2));
        assert!(qmat_inverse(&vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "5", "0"] {
            assert_eq!(format_q(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
