//! Constructive unitary equivalences between walk families, with
//! machine-checkable verification reports.
//!
//! Two results are implemented. First, a walk with coin angles (η, θ, ξ)
//! is equivalent to the single-parameter walk Z_θ under the product
//! transform V = E_{−(η+ξ)/2}⊗diag(e^{−iη/2}, e^{iη/2}): only the middle
//! angle affects the dynamics. Second, an electric walk relates to a
//! time-dependent-coin walk step by step, Z_Eⁿ = (E_{nΦ}⊗I)Z(n)···Z(1),
//! with exact equality (no residual phase factor) at every multiple of q
//! steps when Φ = 2πp/q.

use crate::coin::{CoinMatrix, EulerAngles};
use crate::error::{Result, WalkError};
use crate::lattice::{Boundary, LatticeConfig, WalkerCoinState};
use crate::sweep;
use crate::walk::{CoinSchedule, DenseUnitary, WalkSpec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Product-form transform V = W⊗X where W = E_{w_phase} is a
/// quasi-momentum shift of the walker and X is a coin rotation. Every
/// equivalence constructed here is of this form; transforms that entangle
/// walker and coin are out of scope.
#[derive(Clone, Copy, Debug)]
pub struct ProductTransform {
    /// Phase parameter Φ_W of the walker factor E_{Φ_W}; 0 means W = I.
    pub w_phase: f64,
    /// Coin factor.
    pub x: CoinMatrix,
}

impl ProductTransform {
    pub fn new(w_phase: f64, x: CoinMatrix) -> Result<Self> {
        if !w_phase.is_finite() {
            return Err(WalkError::InvalidInput(
                "transform phase must be finite".into(),
            ));
        }
        Ok(ProductTransform { w_phase, x })
    }

    pub fn identity() -> Self {
        ProductTransform {
            w_phase: 0.0,
            x: CoinMatrix::identity(),
        }
    }

    /// Applies V = E_{w_phase}⊗X. On a ring the walker factor requires
    /// w_phase·L ≡ 0 (mod 2π).
    pub fn apply(&self, state: &mut WalkerCoinState) -> Result<()> {
        state.apply_quasimomentum_shift(self.w_phase)?;
        state.apply_coin(&self.x);
        Ok(())
    }

    /// Applies V† = E_{−w_phase}⊗X†.
    pub fn apply_inverse(&self, state: &mut WalkerCoinState) -> Result<()> {
        state.apply_quasimomentum_shift(-self.w_phase)?;
        state.apply_coin(&self.x.adjoint());
        Ok(())
    }

    /// Dense matrix of V on a ring window, subject to the same
    /// commensurability requirement as [`Self::apply`].
    pub fn dense(&self, config: LatticeConfig) -> Result<DenseUnitary> {
        if config.boundary() != Boundary::Ring {
            return Err(WalkError::InvalidInput(
                "dense transforms are built on ring lattices".into(),
            ));
        }
        if !config.ring_commensurate(self.w_phase) {
            return Err(WalkError::IncommensurateRingPhase(format!(
                "transform phase times ring size, {}, is not a multiple of 2π",
                self.w_phase * config.size() as f64
            )));
        }
        let x = self.x.mat();
        let mut m = DenseUnitary::zeros(2 * config.size());
        for s in 0..config.size() {
            let ph = Complex64::from_polar(1.0, self.w_phase * config.site_of(s) as f64);
            for a in 0..2 {
                for b in 0..2 {
                    m.set(2 * s + a, 2 * s + b, ph * x[(a, b)]);
                }
            }
        }
        Ok(m)
    }
}

/// The transform reducing a three-angle walk to its middle angle:
/// returns θ and V = E_{−(η+ξ)/2}⊗diag(e^{−iη/2}, e^{iη/2}) such that
/// conjugating the (η, θ, ξ) walk by V gives the Z_θ walk.
pub fn canonical_reduction(angles: &EulerAngles) -> (f64, ProductTransform) {
    let w_phase = -0.5 * (angles.eta + angles.xi);
    let x = CoinMatrix::from_euler(&EulerAngles {
        eta: -angles.eta,
        theta: 0.0,
        xi: 0.0,
    });
    (angles.theta, ProductTransform { w_phase, x })
}

/// Field phase Φ = 2πp/q given as a reduced fraction of a full turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalField {
    p: i64,
    q: u64,
}

impl RationalField {
    /// Requires q ≥ 1 and gcd(|p|, q) = 1. Reducible fractions are
    /// rejected, not silently reduced, so q is always the true period.
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q < 1 {
            return Err(WalkError::InvalidInput(
                "field denominator must be positive".into(),
            ));
        }
        if gcd(p.unsigned_abs(), q) != 1 {
            return Err(WalkError::InvalidInput(format!(
                "{p}/{q} is not in lowest terms"
            )));
        }
        Ok(RationalField { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The field phase Φ = 2πp/q.
    pub fn phi(&self) -> f64 {
        std::f64::consts::TAU * self.p as f64 / self.q as f64
    }
}

/// gcd(a, b) with gcd(0, b) = b.
fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// The time-dependent walk whose step-n coin is
/// U(n) = e^{iθ/2 σy}·diag(e^{−i(n−1)Φ}, e^{i(n−1)Φ}); its cumulative
/// product matches the electric walk, Z_Eⁿ = (E_{nΦ}⊗I)Z(n)···Z(1).
pub fn electric_schedule(theta: f64, phi: f64) -> Result<WalkSpec> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(WalkError::InvalidInput(
            "schedule angles must be finite".into(),
        ));
    }
    Ok(WalkSpec::time_dependent(CoinSchedule::ElectricEquivalent {
        theta,
        phi,
    }))
}

/// Machine-readable outcome of one verification run.
#[derive(Clone, Debug, Serialize)]
pub struct EquivReport {
    /// Which identity was checked, in lower_snake_case.
    pub check: String,
    /// Input parameters of the run.
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub n_steps: u64,
    /// Largest deviation observed across probes and compared steps.
    pub max_deviation: f64,
    pub tolerance: f64,
    /// True exactly when max_deviation ≤ tolerance.
    pub pass: bool,
}

impl EquivReport {
    pub fn new(check: &str, n_steps: u64, max_deviation: f64, tolerance: f64) -> Self {
        EquivReport {
            check: check.to_string(),
            parameters: BTreeMap::new(),
            n_steps,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }

    /// Records an input parameter; builder-style.
    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Evolves each probe under both walks, conjugating the second by V, and
/// reports the largest amplitude deviation:
/// evolve(spec_a, |Ψ⟩, n) versus V†·evolve(spec_b, V|Ψ⟩, n).
pub fn check_amplitude_equiv(
    spec_a: &WalkSpec,
    spec_b: &WalkSpec,
    v: &ProductTransform,
    n_steps: u64,
    probes: &[WalkerCoinState],
    tol: f64,
) -> Result<EquivReport> {
    let worst = worst_over_probes(probes, |probe| {
        let mut lhs = probe.clone();
        spec_a.evolve(&mut lhs, n_steps)?;
        let mut rhs = probe.clone();
        v.apply(&mut rhs)?;
        spec_b.evolve(&mut rhs, n_steps)?;
        v.apply_inverse(&mut rhs)?;
        Ok(lhs.max_abs_diff(&rhs))
    })?;
    Ok(EquivReport::new("amplitude_equivalence", n_steps, worst, tol))
}

/// Like [`check_amplitude_equiv`] but compares position distributions
/// (total-variation distance). The final V† is omitted: a product
/// transform with position-diagonal W and coin-local X cannot change the
/// position marginal.
pub fn check_distribution_equiv(
    spec_a: &WalkSpec,
    spec_b: &WalkSpec,
    v: &ProductTransform,
    n_steps: u64,
    probes: &[WalkerCoinState],
    tol: f64,
) -> Result<EquivReport> {
    let worst = worst_over_probes(probes, |probe| {
        let mut lhs = probe.clone();
        spec_a.evolve(&mut lhs, n_steps)?;
        let mut rhs = probe.clone();
        v.apply(&mut rhs)?;
        spec_b.evolve(&mut rhs, n_steps)?;
        Ok(lhs
            .position_distribution()
            .tv_distance(&rhs.position_distribution()))
    })?;
    Ok(EquivReport::new(
        "distribution_equivalence",
        n_steps,
        worst,
        tol,
    ))
}

/// Verifies the canonical reduction end to end: the (η, θ, ξ) walk against
/// the Z_θ walk under the transform from [`canonical_reduction`].
pub fn verify_canonical(
    angles: &EulerAngles,
    n_steps: u64,
    probes: &[WalkerCoinState],
    tol: f64,
) -> Result<EquivReport> {
    let (theta, v) = canonical_reduction(angles);
    let full = WalkSpec::simple(CoinMatrix::from_euler(angles));
    let reduced = WalkSpec::simple(CoinMatrix::from_euler(&EulerAngles {
        eta: 0.0,
        theta,
        xi: 0.0,
    }));
    let report = check_amplitude_equiv(&full, &reduced, &v, n_steps, probes, tol)?;
    Ok(EquivReport::new(
        "canonical_reduction",
        n_steps,
        report.max_deviation,
        tol,
    )
    .param("eta", angles.eta)
    .param("theta", angles.theta)
    .param("xi", angles.xi)
    .param("w_phase", v.w_phase))
}

/// Verifies Z_Eⁿ = (E_{nΦ}⊗I)Z(n)···Z(1): the electric walk against the
/// equivalent schedule walk followed by one cumulative quasi-momentum
/// shift. Amplitudes must match within tol, and (since E_{nΦ} is
/// position-diagonal) so must the position distributions, recorded as the
/// `max_tv_distance` parameter.
pub fn check_cumulative_identity(
    theta: f64,
    phi: f64,
    n_steps: u64,
    probes: &[WalkerCoinState],
    tol: f64,
) -> Result<EquivReport> {
    let coin = CoinMatrix::from_euler(&EulerAngles::new(0.0, theta, 0.0)?);
    let electric = WalkSpec::electric(coin, phi)?;
    let schedule = electric_schedule(theta, phi)?;
    let pairs = worst_pairs_over_probes(probes, |probe| {
        let mut lhs = probe.clone();
        electric.evolve(&mut lhs, n_steps)?;
        let mut rhs = probe.clone();
        schedule.evolve(&mut rhs, n_steps)?;
        rhs.apply_quasimomentum_shift(n_steps as f64 * phi)?;
        let amp = lhs.max_abs_diff(&rhs);
        let tv = lhs
            .position_distribution()
            .tv_distance(&rhs.position_distribution());
        Ok((amp, tv))
    })?;
    let report = EquivReport::new("cumulative_electric_identity", n_steps, pairs.0, tol)
        .param("theta", theta)
        .param("phi", phi)
        .param("max_tv_distance", pairs.1);
    Ok(EquivReport {
        pass: report.pass && pairs.1 <= tol,
        ..report
    })
}

/// Verifies the exact q-step periodicity for Φ = 2πp/q: the electric walk
/// and the schedule walk agree amplitude-for-amplitude (no residual
/// quasi-momentum factor) at every step that is a multiple of q, over
/// `n_periods` periods.
pub fn check_rational_field(
    theta: f64,
    field: &RationalField,
    n_periods: u64,
    probes: &[WalkerCoinState],
    tol: f64,
) -> Result<EquivReport> {
    let phi = field.phi();
    let coin = CoinMatrix::from_euler(&EulerAngles::new(0.0, theta, 0.0)?);
    let electric = WalkSpec::electric(coin, phi)?;
    let schedule = electric_schedule(theta, phi)?;
    let total_steps = n_periods * field.q();
    let q = field.q();
    let worst = worst_over_probes(probes, |probe| {
        let mut lhs = probe.clone();
        let mut rhs = probe.clone();
        let mut worst = 0.0_f64;
        for n in 1..=total_steps {
            electric.step(&mut lhs, n)?;
            schedule.step(&mut rhs, n)?;
            if n % q == 0 {
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        Ok(worst)
    })?;
    Ok(
        EquivReport::new("rational_field_periodicity", total_steps, worst, tol)
            .param("theta", theta)
            .param("p", field.p())
            .param("q", field.q())
            .param("phi", phi)
            .param("n_periods", n_periods),
    )
}

/// Standard probe set: the two localized canonical starts |0,↑⟩ and
/// |0,↓⟩, plus `n_random` pseudo-random product states (walker support on
/// sites −2..=2, random coin) drawn from a ChaCha stream seeded with
/// `seed` so runs are reproducible.
pub fn standard_probes(
    config: LatticeConfig,
    n_random: usize,
    seed: u64,
) -> Result<Vec<WalkerCoinState>> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::ZERO;
    let mut probes = vec![
        WalkerCoinState::localized(0, [one, zero], config)?,
        WalkerCoinState::localized(0, [zero, one], config)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_random {
        let mut walker = vec![zero; config.size()];
        for site in -2..=2_i64 {
            let s = config.storage_index(site).ok_or_else(|| {
                WalkError::InvalidInput(
                    "probe lattice must contain sites -2..=2".into(),
                )
            })?;
            walker[s] = Complex64::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
        }
        let coin = [
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        ];
        probes.push(WalkerCoinState::product_state(&walker, coin, config)?);
    }
    Ok(probes)
}

/// Largest value of `f` over the probes, evaluated in parallel.
fn worst_over_probes<F>(probes: &[WalkerCoinState], f: F) -> Result<f64>
where
    F: Fn(&WalkerCoinState) -> Result<f64> + Sync + Send,
{
    if probes.is_empty() {
        return Err(WalkError::InvalidInput(
            "verification needs at least one probe state".into(),
        ));
    }
    let results = sweep::map(probes, f);
    let mut worst = 0.0_f64;
    for r in results {
        worst = worst.max(r?);
    }
    Ok(worst)
}

/// Componentwise-largest pair of `f` values over the probes.
fn worst_pairs_over_probes<F>(probes: &[WalkerCoinState], f: F) -> Result<(f64, f64)>
where
    F: Fn(&WalkerCoinState) -> Result<(f64, f64)> + Sync + Send,
{
    if probes.is_empty() {
        return Err(WalkError::InvalidInput(
            "verification needs at least one probe state".into(),
        ));
    }
    let results = sweep::map(probes, f);
    let mut worst = (0.0_f64, 0.0_f64);
    for r in results {
        let (a, b) = r?;
        worst = (worst.0.max(a), worst.1.max(b));
    }
    Ok(worst)
}
