//! Closed-form distortion and Gromov–Hausdorff bounds.
//!
//! All formulas are evaluated literally, left to right as written, so that
//! algebraic reductions can be checked to rounding error.

use super::ApproxError;
use serde::{Deserialize, Serialize};

/// Inputs to the distortion bound for a Lipschitz simple Morse function on
/// a closed Riemannian manifold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorseBoundParams {
    /// Upper bound on the cycle rank of the Reeb graph.
    pub b: usize,
    pub lipschitz: f64,
    pub dim: usize,
    pub volume: f64,
    pub thickness: f64,
    pub diameter: f64,
    /// Sup-distance from the function to a distance function.
    pub eps: f64,
}

impl MorseBoundParams {
    pub fn validate(&self) -> Result<(), ApproxError> {
        check_dim(self.dim)?;
        nonneg("lipschitz", self.lipschitz)?;
        positive("volume", self.volume)?;
        positive("thickness", self.thickness)?;
        positive("diameter", self.diameter)?;
        nonneg("eps", self.eps)
    }
}

fn check_dim(n: usize) -> Result<(), ApproxError> {
    if n < 2 {
        return Err(ApproxError::Parameter(format!("dimension must be at least 2, got {n}")));
    }
    Ok(())
}

fn positive(name: &str, x: f64) -> Result<(), ApproxError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(ApproxError::Parameter(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

fn nonneg(name: &str, x: f64) -> Result<(), ApproxError> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(ApproxError::Parameter(format!("{name} must be nonnegative, got {x}")));
    }
    Ok(())
}

/// A distortion bound with its Gromov–Hausdorff form (half of it).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortionBound {
    pub distortion: f64,
    pub gromov_hausdorff: f64,
}

impl DistortionBound {
    fn of(distortion: f64) -> Self {
        DistortionBound {
            distortion,
            gromov_hausdorff: 0.5 * distortion,
        }
    }
}

/// `eps`-term shared by both bounds: `diam^(1/n) · eps^((n−1)/n) + eps`.
fn eps_term(diameter: f64, eps: f64, n: f64) -> f64 {
    diameter.powf(1.0 / n) * eps.powf((n - 1.0) / n) + eps
}

/// `B(b) = 4(b+1)² ((2L/(b+1) · vol/T)^(1/n) + 8(diam^(1/n) eps^((n−1)/n) + eps)) + |L−1| diam`.
pub fn morse_bound(p: &MorseBoundParams) -> Result<DistortionBound, ApproxError> {
    p.validate()?;
    let b1 = p.b as f64 + 1.0;
    let n = p.dim as f64;
    let inner = (2.0 * p.lipschitz / b1 * (p.volume / p.thickness)).powf(1.0 / n)
        + 8.0 * eps_term(p.diameter, p.eps, n);
    let value = 4.0 * b1 * b1 * inner + (p.lipschitz - 1.0).abs() * p.diameter;
    Ok(DistortionBound::of(value))
}

/// Inputs to the two intermediate estimates behind [`morse_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntermediateParams {
    /// Cycle rank of the Reeb graph.
    pub reeb_cycle_rank: usize,
    /// Supremum of contour diameters.
    pub contour_diameter: f64,
    pub eps: f64,
    pub lipschitz: f64,
    pub diameter: f64,
    /// Least number of regular contours whose removal always disconnects.
    pub k: usize,
    pub dim: usize,
    pub volume: f64,
    pub thickness: f64,
}

/// Distortion from contour diameters: `(2 b₁(R) + 1)(D + 4 eps) + |L−1| diam`.
pub fn distortion_from_diameter(
    reeb_cycle_rank: usize,
    contour_diameter: f64,
    eps: f64,
    lipschitz: f64,
    diameter: f64,
) -> f64 {
    (2.0 * reeb_cycle_rank as f64 + 1.0) * (contour_diameter + 4.0 * eps)
        + (lipschitz - 1.0).abs() * diameter
}

/// Contour diameters from volume and thickness:
/// `(2^(n+1) k^(n−1) L · vol/T)^(1/n) + 8k(diam^(1/n) eps^((n−1)/n) + eps)`.
pub fn diameter_from_volume(
    k: usize,
    lipschitz: f64,
    dim: usize,
    volume: f64,
    thickness: f64,
    diameter: f64,
    eps: f64,
) -> f64 {
    let n = dim as f64;
    let k = k as f64;
    (2f64.powf(n + 1.0) * k.powf(n - 1.0) * lipschitz * (volume / thickness)).powf(1.0 / n)
        + 8.0 * k * eps_term(diameter, eps, n)
}

/// Both intermediate estimates, as `(distortion, contour diameter)`.
pub fn intermediate_bounds(p: &IntermediateParams) -> Result<(f64, f64), ApproxError> {
    check_dim(p.dim)?;
    nonneg("contour_diameter", p.contour_diameter)?;
    nonneg("eps", p.eps)?;
    nonneg("lipschitz", p.lipschitz)?;
    positive("diameter", p.diameter)?;
    positive("volume", p.volume)?;
    positive("thickness", p.thickness)?;
    Ok((
        distortion_from_diameter(p.reeb_cycle_rank, p.contour_diameter, p.eps, p.lipschitz, p.diameter),
        diameter_from_volume(p.k, p.lipschitz, p.dim, p.volume, p.thickness, p.diameter, p.eps),
    ))
}

/// Ratio of the bound at `b1` to the bound at `b1_prime`, for `eps = 0`
/// and `L = 1`: `((b1 + 1)/(b1' + 1))^(2 − 1/n)`.
pub fn bound_ratio(b1: usize, b1_prime: usize, dim: usize) -> Result<f64, ApproxError> {
    check_dim(dim)?;
    if b1 < b1_prime {
        return Err(ApproxError::Parameter(format!(
            "b1 = {b1} is smaller than the corank {b1_prime}"
        )));
    }
    let n = dim as f64;
    Ok(((b1 as f64 + 1.0) / (b1_prime as f64 + 1.0)).powf(2.0 - 1.0 / n))
}

/// Bounds on the graph-approximation constant `δ_i` of a geodesic space
/// with corank `b` and sup-distance constant `rho`. Below the corank the
/// upper bound needs the next persistence bar length `a_next`.
pub fn gh_delta_bounds(i: usize, b: usize, rho: f64, a_next: Option<f64>) -> Result<(f64, f64), ApproxError> {
    nonneg("rho", rho)?;
    if i >= b {
        return Ok((rho / (16.0 * i as f64 + 12.0), rho));
    }
    let a = a_next.ok_or_else(|| {
        ApproxError::Parameter(format!("a_next is required when i = {i} < b = {b}"))
    })?;
    nonneg("a_next", a)?;
    Ok((rho / (16.0 * b as f64 + 12.0), rho + 6.0 * (b as f64 + 1.0) * a))
}

/// Distortion bound for a distance function: `2(b₁' + 1) D`, with the
/// Gromov–Hausdorff form `(b₁' + 1) D`.
pub fn distance_function_bound(b1_prime: usize, d: f64) -> Result<DistortionBound, ApproxError> {
    nonneg("D", d)?;
    Ok(DistortionBound::of(2.0 * (b1_prime as f64 + 1.0) * d))
}
