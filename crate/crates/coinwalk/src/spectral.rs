//! Momentum-space diagonalization of translation-invariant walks.
//!
//! On plane waves |k⟩ = Σ_j e^{ikj}|j⟩ (so R|k⟩ = e^{−ik}|k⟩) a simple
//! walk acts per k as the 2×2 block Z(k) = U·diag(e^{−ik}, e^{ik}). Its
//! eigenvalues e^{±iω(k)} define the dispersion ω(k); for a coin with
//! Euler angles (η, θ, ξ) the trace gives
//! cos ω(k) = cos(θ/2)·cos(k − (η+ξ)/2), so the Euler phases only shift
//! the curve in k: one more face of the reduction to Z_θ.

use crate::coin::CoinMatrix;
use crate::coin::EulerAngles;
use crate::equivalence::EquivReport;
use crate::error::{Result, WalkError};
use crate::mat2::Mat2;
use crate::sweep;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

/// The walk's 2×2 momentum block Z(k) = U·diag(e^{−ik}, e^{ik}), under the
/// convention R|k⟩ = e^{−ik}|k⟩. Unitary with determinant 1 whenever U is.
pub fn momentum_propagator(u: &CoinMatrix, k: f64) -> Mat2 {
    u.mat()
        * Mat2::diag(
            Complex64::from_polar(1.0, -k),
            Complex64::from_polar(1.0, k),
        )
}

/// The momentum shift (η+ξ)/2 by which a coin's dispersion curve is
/// translated relative to the curve of its reduced θ-coin.
pub fn momentum_shift(u: &CoinMatrix) -> f64 {
    let angles = u.euler_angles();
    0.5 * (angles.eta + angles.xi)
}

/// One sample of the dispersion relation.
#[derive(Clone, Copy, Debug)]
pub struct DispersionPoint {
    /// Quasi-momentum in (−π, π].
    pub k: f64,
    /// Eigenphase branch in [0, π].
    pub omega_plus: f64,
    /// Mirror branch, −omega_plus (determinant 1 forces the ± pairing).
    pub omega_minus: f64,
    /// dω₊/dk by centered finite difference on the periodic grid.
    pub v_group: f64,
}

/// Dispersion relation sampled on a uniform k-grid.
#[derive(Clone, Debug)]
pub struct DispersionCurve {
    points: Vec<DispersionPoint>,
}

impl DispersionCurve {
    pub fn points(&self) -> &[DispersionPoint] {
        &self.points
    }

    /// max over k of |v_group|; the ballistic front speed of the walk.
    pub fn max_group_speed(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.v_group.abs())
            .fold(0.0, f64::max)
    }

    /// (min, max) of the ω₊ branch over the sampled grid.
    pub fn omega_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &self.points {
            lo = lo.min(p.omega_plus);
            hi = hi.max(p.omega_plus);
        }
        (lo, hi)
    }

    /// Writes `k,omega_plus,omega_minus,v_group` rows, k ascending.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,omega_plus,omega_minus,v_group")?;
        for p in &self.points {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                p.k, p.omega_plus, p.omega_minus, p.v_group
            )?;
        }
        Ok(())
    }
}

/// Bands never separate by less than this before the curve is treated as
/// flat (θ = π), where the finite-difference v_group would be pure noise.
const FLAT_BAND_TOL: f64 = 1e-12;

/// Eigenphase ω₊(k) of the momentum block: the trace of an SU(2) matrix is
/// real, so ω₊ = arccos(tr/2) on the principal branch [0, π]. This branch
/// is continuous in k (the two bands ±ω only touch at θ = 0), which is
/// what makes plain centered differences valid for the group velocity.
fn eigenphase(u: &CoinMatrix, k: f64) -> f64 {
    let half_trace = 0.5 * momentum_propagator(u, k).trace().re;
    half_trace.clamp(-1.0, 1.0).acos()
}

/// Samples ω₊, ω₋ and the group velocity on the uniform grid
/// k_m = −π + 2π(m+1)/n, m = 0..n−1, which covers (−π, π]. Requires at
/// least 8 samples. A flat band (θ = π) short-circuits to v_group = 0.
pub fn dispersion(u: &CoinMatrix, n_samples: usize) -> Result<DispersionCurve> {
    if n_samples < 8 {
        return Err(WalkError::InvalidInput(format!(
            "dispersion needs at least 8 samples, got {n_samples}"
        )));
    }
    let n = n_samples;
    let dk = TAU / n as f64;
    let ks: Vec<f64> = (0..n).map(|m| -PI + dk * (m + 1) as f64).collect();
    let omegas = sweep::map(&ks, |&k| eigenphase(u, k));
    let (lo, hi) = omegas
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &w| {
            (lo.min(w), hi.max(w))
        });
    let flat = hi - lo <= FLAT_BAND_TOL;
    let points = (0..n)
        .map(|m| {
            let v_group = if flat {
                0.0
            } else {
                // ω is 2π-periodic in k, so the stencil wraps around.
                (omegas[(m + 1) % n] - omegas[(m + n - 1) % n]) / (2.0 * dk)
            };
            DispersionPoint {
                k: ks[m],
                omega_plus: omegas[m],
                omega_minus: -omegas[m],
                v_group,
            }
        })
        .collect();
    Ok(DispersionCurve { points })
}

/// Verifies that the eigenphases of Z_{ηθξ}(k) coincide with those of
/// Z_θ(k − (η+ξ)/2) at every sampled k: the momentum-space picture of the
/// reduction transform, whose walker factor E_{−(η+ξ)/2} is exactly a
/// momentum shift.
pub fn spectral_invariance_check(
    angles: &EulerAngles,
    n_samples: usize,
    tol: f64,
) -> Result<EquivReport> {
    if n_samples < 8 {
        return Err(WalkError::InvalidInput(format!(
            "spectral check needs at least 8 samples, got {n_samples}"
        )));
    }
    let full = CoinMatrix::from_euler(angles);
    let reduced = CoinMatrix::from_euler(&EulerAngles {
        eta: 0.0,
        theta: angles.theta,
        xi: 0.0,
    });
    let shift = 0.5 * (angles.eta + angles.xi);
    let dk = TAU / n_samples as f64;
    let ks: Vec<f64> = (0..n_samples).map(|m| -PI + dk * (m + 1) as f64).collect();
    let deviations = sweep::map(&ks, |&k| {
        // The ± pair makes |ω_full − ω_reduced| the full multiset distance.
        (eigenphase(&full, k) - eigenphase(&reduced, k - shift)).abs()
    });
    let worst = deviations.into_iter().fold(0.0_f64, f64::max);
    Ok(EquivReport::new("spectral_invariance", 0, worst, tol)
        .param("eta", angles.eta)
        .param("theta", angles.theta)
        .param("xi", angles.xi)
        .param("momentum_shift", shift)
        .param("n_samples", n_samples as u64))
}
