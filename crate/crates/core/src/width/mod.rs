//! Lower bounds on the Reeb width of Riemannian manifolds, and empirical
//! checks of the disk and hemisphere contour results on meshes.
//!
//! Angles are in radians, curvature bounds in 1/length².

mod verify;

pub use verify::{
    disk_contour_verify, disk_suite, hemisphere_suite, hemisphere_width_verify, DiskReport,
    FieldWidth, HemisphereReport, SuiteField,
};

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WidthError {
    #[error("{0}")]
    Domain(String),
}

fn domain(msg: impl Into<String>) -> WidthError {
    WidthError::Domain(msg.into())
}

/// A geodesic ball `B(p, r)` with `r ≤ min{conv. rad(p), inj(p)}` (asserted
/// by the caller) and sectional curvature at most `curvature` on it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalGeometry {
    pub r: f64,
    pub curvature: f64,
    pub dim: u32,
}

impl LocalGeometry {
    pub fn validate(&self) -> Result<(), WidthError> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(domain(format!("radius must be positive, got {}", self.r)));
        }
        if !self.curvature.is_finite() {
            return Err(domain("curvature bound must be finite"));
        }
        if self.dim < 2 {
            return Err(domain(format!("dimension must be at least 2, got {}", self.dim)));
        }
        Ok(())
    }
}

/// A compact manifold described by its injectivity radius and the supremum
/// of its sectional curvature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalGeometry {
    pub inj: f64,
    pub curvature: f64,
    pub dim: u32,
    pub volume: Option<f64>,
    pub diameter: Option<f64>,
}

impl GlobalGeometry {
    pub fn validate(&self) -> Result<(), WidthError> {
        if !(self.inj >= 0.0 && self.inj.is_finite()) {
            return Err(domain(format!("injectivity radius must be nonnegative, got {}", self.inj)));
        }
        if !self.curvature.is_finite() {
            return Err(domain("curvature bound must be finite"));
        }
        if self.dim < 2 {
            return Err(domain(format!("dimension must be at least 2, got {}", self.dim)));
        }
        for (name, v) in [("volume", self.volume), ("diameter", self.diameter)] {
            if let Some(x) = v {
                if !(x > 0.0 && x.is_finite()) {
                    return Err(domain(format!("{name} must be positive, got {x}")));
                }
            }
        }
        Ok(())
    }
}

/// `(2/√K) asin((√3/2) sin min{x, π/2})` with `x = r√K`.
fn spherical_two_dim(x: f64, sqrt_k: f64) -> f64 {
    2.0 / sqrt_k * ((3f64.sqrt() / 2.0) * x.min(FRAC_PI_2).sin()).asin()
}

/// Lower bound on the Reeb width from a ball of radius `r`:
/// `2r` for `n ≥ 3`; `√3 r` for `n = 2, K ≤ 0`;
/// `(2/√K) asin((√3/2) sin min{r√K, π/2})` for `n = 2, K > 0`.
pub fn reeb_width_local(g: &LocalGeometry) -> Result<f64, WidthError> {
    g.validate()?;
    Ok(if g.dim >= 3 {
        2.0 * g.r
    } else if g.curvature <= 0.0 {
        3f64.sqrt() * g.r
    } else {
        let s = g.curvature.sqrt();
        spherical_two_dim(g.r * s, s)
    })
}

/// The global bound with the message attached when it is vacuous.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalWidth {
    pub value: f64,
    pub warning: Option<String>,
}

/// Lower bound on the Reeb width from the injectivity radius and the
/// curvature supremum: `inj` or `min{inj, π/√K}` for `dim ≥ 3`;
/// `(√3/2) inj` or `(2/√K) asin((√3/2) sin min{(√K/2) inj, π/2})` in
/// dimension 2.
pub fn reeb_width_global(g: &GlobalGeometry) -> Result<GlobalWidth, WidthError> {
    g.validate()?;
    let k = g.curvature;
    let value = match (g.dim >= 3, k > 0.0) {
        (true, false) => g.inj,
        (true, true) => g.inj.min(PI / k.sqrt()),
        (false, false) => 3f64.sqrt() / 2.0 * g.inj,
        (false, true) => {
            let s = k.sqrt();
            spherical_two_dim(s / 2.0 * g.inj, s)
        }
    };
    let warning = (g.inj == 0.0).then(|| "global bound vacuous, use local form".to_string());
    Ok(GlobalWidth { value, warning })
}

/// The radius at which [`reeb_width_local`] reproduces
/// [`reeb_width_global`]: `min{½ inj, π/(2√K)}`, or `½ inj` for `K ≤ 0`.
pub fn global_radius(inj: f64, curvature: f64) -> f64 {
    convexity_radius_bound(inj, curvature)
}

/// `conv. rad ≥ min{½ inj, π/(2√K)}` for `K > 0`; `= ½ inj` for `K ≤ 0`.
pub fn convexity_radius_bound(inj: f64, curvature: f64) -> f64 {
    if curvature > 0.0 {
        (0.5 * inj).min(PI / (2.0 * curvature.sqrt()))
    } else {
        0.5 * inj
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Geometry {
    Local(LocalGeometry),
    Global(GlobalGeometry),
}

/// The simplified bound with the two linearized constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Simplified {
    /// `min{r, 2/√K}`, or `min{½ inj, 2/√K}` globally.
    pub value: f64,
    /// `(2√3/π) r`: the two-dimensional spherical bound with `sin x ≈ 2x/π`
    /// and `asin x ≈ x`.
    pub linear_radius: f64,
    /// `2π/(3√K)`, the saturated spherical bound; `+∞` for `K ≤ 0`.
    pub saturated: f64,
}

pub fn simplified_bounds(g: &Geometry) -> Result<Simplified, WidthError> {
    let (r, k) = match g {
        Geometry::Local(l) => {
            l.validate()?;
            (l.r, l.curvature)
        }
        Geometry::Global(gl) => {
            gl.validate()?;
            (0.5 * gl.inj, gl.curvature)
        }
    };
    let (curv_term, saturated) = if k > 0.0 {
        (2.0 / k.sqrt(), 2.0 * PI / (3.0 * k.sqrt()))
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    Ok(Simplified {
        value: r.min(curv_term),
        linear_radius: 2.0 * 3f64.sqrt() / PI * r,
        saturated,
    })
}

/// Geodesic distance on the sphere of curvature `K` between two points on
/// the circle at polar distance `r`, separated by azimuth `alpha`:
/// `(2/√K) asin(sin(α/2) sin(r√K))`.
pub fn sphere_chord(alpha: f64, r: f64, curvature: f64) -> Result<f64, WidthError> {
    if !(0.0..=PI).contains(&alpha) {
        return Err(domain(format!("azimuth must lie in [0, π], got {alpha}")));
    }
    if !(curvature > 0.0 && curvature.is_finite()) {
        return Err(domain(format!("curvature must be positive, got {curvature}")));
    }
    if !(r >= 0.0 && r * curvature.sqrt() <= FRAC_PI_2 * (1.0 + 1e-15)) {
        return Err(domain(format!("polar distance must lie in [0, π/(2√K)], got {r}")));
    }
    let s = curvature.sqrt();
    Ok(2.0 / s * ((alpha / 2.0).sin() * (r * s).min(FRAC_PI_2).sin()).asin())
}

/// Volume lower bound on the Urysohn width: `(c · vol/diam)^(1/(n−1))`,
/// with the dimensional constant `c` supplied by the caller.
pub fn urysohn_volume_lower(volume: f64, diameter: f64, dim: u32, c: f64) -> Result<f64, WidthError> {
    for (name, v) in [("volume", volume), ("diameter", diameter), ("c", c)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(domain(format!("{name} must be positive, got {v}")));
        }
    }
    if dim < 2 {
        return Err(domain(format!("dimension must be at least 2, got {dim}")));
    }
    Ok((c * volume / diameter).powf(1.0 / f64::from(dim - 1)))
}
