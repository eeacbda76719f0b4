//! Isometries of the upper half plane and of products of upper half planes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular_group::MatrixSL2;
use crate::number_field::AlgebraicInteger;

/// `|tr|` within this distance of 2 counts as parabolic for float traces.
pub const PARABOLIC_TOLERANCE: f64 = 1e-12;

/// Relative tolerance on `det = 1` for embedded real matrices.
pub const DET_TOLERANCE: f64 = 1e-9;

const ACOSH_ASYMPTOTIC_FROM: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    pub trace: f64,
}

pub fn classify(trace: f64) -> IsometryClass {
    let t = trace.abs();
    let kind = if (t - 2.0).abs() <= PARABOLIC_TOLERANCE {
        IsometryKind::Parabolic
    } else if t < 2.0 {
        IsometryKind::Elliptic
    } else {
        IsometryKind::Hyperbolic
    };
    IsometryClass { kind, trace }
}

/// Classification of every embedding of an exact trace. An embedding can have
/// `|σ(t)| = 2` only when `t = ±2`, so the exact case needs no tolerance.
pub fn classify_exact(trace: &AlgebraicInteger) -> Vec<IsometryClass> {
    let values = trace.embed();
    let parabolic = trace.as_integer().is_some_and(|k| k.magnitude() == &2u32.into());
    values
        .into_iter()
        .map(|t| {
            if parabolic {
                IsometryClass { kind: IsometryKind::Parabolic, trace: t }
            } else if t.abs() < 2.0 {
                IsometryClass { kind: IsometryKind::Elliptic, trace: t }
            } else {
                IsometryClass { kind: IsometryKind::Hyperbolic, trace: t }
            }
        })
        .collect()
}

/// `arccosh(x)` for `x ≥ 1`, switching to `ln(2x) − 1/(4x²)` for large `x`.
pub fn arccosh(x: f64) -> f64 {
    if x > ACOSH_ASYMPTOTIC_FROM {
        std::f64::consts::LN_2 + x.ln() - 0.25 / (x * x)
    } else {
        (x + ((x - 1.0) * (x + 1.0)).sqrt()).ln()
    }
}

fn require_hyperbolic(trace: f64) -> Result<f64> {
    let t = trace.abs();
    if classify(trace).kind == IsometryKind::Hyperbolic {
        Ok(t)
    } else {
        Err(Error::NotHyperbolic(trace))
    }
}

/// Translation length `ℓ` with `2 cosh(ℓ/2) = |tr|`.
pub fn translation_length(trace: f64) -> Result<f64> {
    let t = require_hyperbolic(trace)?;
    Ok(2.0 * arccosh(t / 2.0))
}

/// `2 log(|tr| − 1)`, a lower bound for the displacement of every point.
pub fn displacement_lower_bound_single(trace: f64) -> Result<f64> {
    let t = require_hyperbolic(trace)?;
    Ok(2.0 * (t - 1.0).ln())
}

/// Length of the closed geodesic of a totally hyperbolic element in the
/// product metric: `sqrt(Σ ℓ_i²)`. Failing embeddings are reported 1-based.
pub fn product_geodesic_length(traces: &[f64]) -> Result<f64> {
    let bad: Vec<usize> = traces
        .iter()
        .enumerate()
        .filter(|(_, &t)| classify(t).kind != IsometryKind::Hyperbolic)
        .map(|(i, _)| i + 1)
        .collect();
    if !bad.is_empty() {
        return Err(Error::NotTotallyHyperbolic { indices: bad });
    }
    let sum: f64 = traces.iter().map(|&t| translation_length(t).unwrap().powi(2)).sum();
    Ok(sum.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if y > 0.0 && x.is_finite() && y.is_finite() {
            Ok(UpperHalfPoint { x, y })
        } else {
            Err(Error::NotInUpperHalfPlane(y))
        }
    }

    pub fn i() -> Self {
        UpperHalfPoint { x: 0.0, y: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductPoint(pub Vec<UpperHalfPoint>);

pub type RealMatrix = [[f64; 2]; 2];

pub fn real_mul(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn check_det(m: &RealMatrix) -> Result<()> {
    let ad = m[0][0] * m[1][1];
    let bc = m[0][1] * m[1][0];
    let det = ad - bc;
    if (det - 1.0).abs() <= DET_TOLERANCE * (ad.abs() + bc.abs()).max(1.0) {
        Ok(())
    } else {
        Err(Error::DegenerateMatrix { det })
    }
}

/// `z ↦ (az + b)/(cz + d)`.
pub fn moebius_apply(m: &RealMatrix, z: &UpperHalfPoint) -> Result<UpperHalfPoint> {
    check_det(m)?;
    let [[a, b], [c, d]] = *m;
    // (a z + b) / (c z + d) with z = x + iy
    let nr = a * z.x + b;
    let ni = a * z.y;
    let dr = c * z.x + d;
    let di = c * z.y;
    let den = dr * dr + di * di;
    let x = (nr * dr + ni * di) / den;
    // Im = y·det/|cz+d|^2 and det = 1
    let y = z.y / den;
    UpperHalfPoint::new(x, y)
}

/// Hyperbolic distance from `cosh d = 1 + |z − w|² / (2 Im z Im w)`.
pub fn distance(z: &UpperHalfPoint, w: &UpperHalfPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    arccosh(1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y))
}

/// Product-metric displacement `sqrt(Σ d(z_i, σ_i(A) z_i)²)`.
pub fn displacement_at(z: &ProductPoint, a: &MatrixSL2) -> Result<f64> {
    let mats = a.embed();
    if mats.len() != z.0.len() {
        return Err(Error::InvalidArgument(format!(
            "point has {} factors, field degree is {}",
            z.0.len(),
            mats.len()
        )));
    }
    let mut sum = 0.0;
    for (m, zi) in mats.iter().zip(&z.0) {
        let w = moebius_apply(m, zi)?;
        sum += distance(zi, &w).powi(2);
    }
    Ok(sum.sqrt())
}

/// `2 sqrt(Σ log²(|tr_i| − 1))` over the hyperbolic embeddings; no point is
/// displaced by less.
pub fn product_displacement_bound(traces: &[f64]) -> f64 {
    let s: f64 = traces
        .iter()
        .filter_map(|&t| displacement_lower_bound_single(t).ok())
        .map(|b| (b / 2.0).powi(2))
        .sum();
    2.0 * s.sqrt()
}
