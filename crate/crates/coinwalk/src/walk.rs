//! The three walk propagators and their repeated application.
//!
//! One step of a coined walk is Z = (I⊗U)S: the conditional shift S first,
//! the coin U after. The time-dependent variant swaps in a per-step coin
//! U(n), and the electric variant left-multiplies a quasi-momentum shift,
//! Z_E = (E_Φ⊗I)(I⊗U)S.

use crate::coin::{CoinMatrix, EulerAngles};
use crate::error::{Result, WalkError};
use crate::lattice::{Boundary, LatticeConfig, ShiftDirection, WalkerCoinState};
use crate::sweep;
use num_complex::Complex64;

/// Norm drift beyond this bound during evolution signals a bug, not bad
/// input.
pub const NORM_DRIFT_TOL: f64 = 1e-8;

/// Largest ring size accepted by [`dense_matrix`].
pub const DENSE_SIZE_LIMIT: usize = 64;

/// Per-step coin assignment n ↦ U(n), defined for every step index n ≥ 1.
#[derive(Clone, Debug)]
pub enum CoinSchedule {
    /// The same coin at every step.
    Constant(CoinMatrix),
    /// Coins repeating cyclically: step n uses element (n−1) mod len.
    Cycle(Vec<CoinMatrix>),
    /// U(n) = e^{iθ/2 σy}·diag(e^{−i(n−1)Φ}, e^{i(n−1)Φ}), the schedule
    /// whose cumulative product reproduces an electric walk up to one
    /// trailing quasi-momentum shift.
    ElectricEquivalent { theta: f64, phi: f64 },
}

impl CoinSchedule {
    /// The coin for step n. Step indices start at 1; the electric-
    /// equivalent schedule then starts with the bare θ-coin at n = 1.
    pub fn coin(&self, n: u64) -> CoinMatrix {
        assert!(n >= 1, "step indices start at 1");
        match self {
            CoinSchedule::Constant(u) => *u,
            CoinSchedule::Cycle(coins) => coins[((n - 1) % coins.len() as u64) as usize],
            CoinSchedule::ElectricEquivalent { theta, phi } => {
                let xi = -2.0 * (n - 1) as f64 * phi;
                CoinMatrix::from_euler(&EulerAngles {
                    eta: 0.0,
                    theta: *theta,
                    xi,
                })
            }
        }
    }
}

/// One of the three walk families.
#[derive(Clone, Debug)]
pub enum WalkSpec {
    /// Z = (I⊗U)S with a fixed coin.
    Simple { coin: CoinMatrix },
    /// Z(n) = (I⊗U(n))S with a per-step coin.
    TimeDependent { schedule: CoinSchedule },
    /// Z_E = (E_Φ⊗I)(I⊗U)S.
    Electric { coin: CoinMatrix, phi: f64 },
}

impl WalkSpec {
    pub fn simple(coin: CoinMatrix) -> Self {
        WalkSpec::Simple { coin }
    }

    pub fn time_dependent(schedule: CoinSchedule) -> Self {
        WalkSpec::TimeDependent { schedule }
    }

    /// Requires a finite field phase Φ.
    pub fn electric(coin: CoinMatrix, phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(WalkError::InvalidInput(
                "electric field phase must be finite".into(),
            ));
        }
        Ok(WalkSpec::Electric { coin, phi })
    }

    /// The coin applied at step n.
    pub fn coin_for_step(&self, n: u64) -> CoinMatrix {
        match self {
            WalkSpec::Simple { coin } | WalkSpec::Electric { coin, .. } => *coin,
            WalkSpec::TimeDependent { schedule } => schedule.coin(n),
        }
    }

    /// Site-phase applied after the coin, if this walk has one.
    fn site_phase(&self) -> Option<f64> {
        match self {
            WalkSpec::Electric { phi, .. } => Some(*phi),
            _ => None,
        }
    }

    /// Applies step n: conditional shift, then the coin, then (electric
    /// only) the quasi-momentum shift E_Φ. On a ring, an electric step
    /// requires Φ·L ≡ 0 (mod 2π).
    pub fn step(&self, state: &mut WalkerCoinState, n: u64) -> Result<()> {
        if n < 1 {
            return Err(WalkError::InvalidInput("step indices start at 1".into()));
        }
        state.conditional_shift()?;
        state.apply_coin(&self.coin_for_step(n));
        if let Some(phi) = self.site_phase() {
            state.apply_quasimomentum_shift(phi)?;
        }
        Ok(())
    }

    /// [`Self::step`] without the ring commensurability guard on the
    /// electric phase; translation-defect diagnostics need to evaluate the
    /// raw operator on incommensurate rings.
    pub(crate) fn step_raw(&self, state: &mut WalkerCoinState, n: u64) -> Result<()> {
        state.conditional_shift()?;
        state.apply_coin(&self.coin_for_step(n));
        if let Some(phi) = self.site_phase() {
            state.apply_site_phase(phi);
        }
        Ok(())
    }

    /// Applies steps n = 1..=n_steps in time order (the product
    /// Z(n)···Z(2)Z(1) acting on the right operand first). The norm is
    /// checked against 1 after every step; drift beyond [`NORM_DRIFT_TOL`]
    /// aborts with [`WalkError::Internal`] rather than renormalizing.
    pub fn evolve(&self, state: &mut WalkerCoinState, n_steps: u64) -> Result<()> {
        for n in 1..=n_steps {
            self.step(state, n)?;
            let drift = (state.norm() - 1.0).abs();
            if drift > NORM_DRIFT_TOL {
                return Err(WalkError::Internal(format!(
                    "norm drifted by {drift:.3e} after step {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Largest deviation ‖(R⊗I)Z(R†⊗I)|Ψ⟩ − Z|Ψ⟩‖₂ over the probe states,
/// where Z is step n of the walk. Zero (to rounding) exactly when the walk
/// commutes with the lattice translation; electric walks with Φ ∉ 2πZ
/// break the symmetry.
///
/// Probes must live on a ring so the translation R is itself unitary. The
/// electric phase is applied raw (no commensurability guard): the defect
/// of an incommensurate field on a finite ring is the very thing this
/// diagnostic measures.
pub fn translation_defect(
    spec: &WalkSpec,
    probes: &[WalkerCoinState],
    n: u64,
) -> Result<f64> {
    if n < 1 {
        return Err(WalkError::InvalidInput("step indices start at 1".into()));
    }
    if probes.is_empty() {
        return Err(WalkError::InvalidInput(
            "translation defect needs at least one probe state".into(),
        ));
    }
    for p in probes {
        if p.config().boundary() != Boundary::Ring {
            return Err(WalkError::InvalidInput(
                "translation defect is defined on ring lattices".into(),
            ));
        }
    }
    let deviations = sweep::map(probes, |probe| -> Result<f64> {
        let mut conjugated = probe.clone();
        conjugated.apply_shift(ShiftDirection::Left)?;
        spec.step_raw(&mut conjugated, n)?;
        conjugated.apply_shift(ShiftDirection::Right)?;
        let mut direct = probe.clone();
        spec.step_raw(&mut direct, n)?;
        Ok(conjugated.distance(&direct))
    });
    let mut worst = 0.0_f64;
    for d in deviations {
        worst = worst.max(d?);
    }
    Ok(worst)
}

/// Dense 2L×2L matrix, row-major, acting on amplitude vectors in the
/// storage layout of [`WalkerCoinState`] (index 2s is (site s, ↑)).
#[derive(Clone, Debug)]
pub struct DenseUnitary {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    pub(crate) fn zeros(dim: usize) -> Self {
        DenseUnitary {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = DenseUnitary::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Matrix–vector product. Panics on dimension mismatch.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must match matrix size");
        (0..self.dim)
            .map(|r| {
                let row = &self.data[r * self.dim..(r + 1) * self.dim];
                row.iter().zip(v).map(|(m, x)| m * x).sum()
            })
            .collect()
    }

    /// Matrix product self·other. Panics on dimension mismatch.
    pub fn mul(&self, other: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.dim, other.dim, "matrix sizes must match");
        let d = self.dim;
        let mut out = DenseUnitary::zeros(d);
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for t in 0..d {
                    acc += self.data[r * d + t] * other.data[t * d + c];
                }
                out.data[r * d + c] = acc;
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseUnitary {
        let d = self.dim;
        let mut out = DenseUnitary::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix sizes must match");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of |U†U − I|.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.adjoint().mul(self);
        let mut worst = 0.0_f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let want = if r == c {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((product.entry(r, c) - want).norm());
            }
        }
        worst
    }
}

/// Explicit matrix of step n of the walk on a ring of L ≤ 64 sites,
/// assembled directly from the operator definition: the column of basis
/// state (s, ↑) has the coin's first column at the site one step right of
/// s, the column of (s, ↓) has the coin's second column one step left, and
/// an electric walk scales each row block by its site phase e^{iΦj}.
///
/// The assembly shares no code with [`WalkSpec::step`], so agreement
/// between the two is a meaningful cross-check, not a tautology. Like
/// [`translation_defect`], the electric phase is applied without the
/// commensurability guard.
pub fn dense_matrix(spec: &WalkSpec, config: LatticeConfig, n: u64) -> Result<DenseUnitary> {
    if n < 1 {
        return Err(WalkError::InvalidInput("step indices start at 1".into()));
    }
    if config.boundary() != Boundary::Ring {
        return Err(WalkError::InvalidInput(
            "dense matrices are built on ring lattices".into(),
        ));
    }
    let l = config.size();
    if l > DENSE_SIZE_LIMIT {
        return Err(WalkError::SizeLimit(format!(
            "dense matrix capped at {DENSE_SIZE_LIMIT} sites, got {l}"
        )));
    }
    let u = spec.coin_for_step(n).mat();
    let mut m = DenseUnitary::zeros(2 * l);
    for s in 0..l {
        let right = (s + 1) % l;
        m.set(2 * right, 2 * s, u[(0, 0)]);
        m.set(2 * right + 1, 2 * s, u[(1, 0)]);
        let left = (s + l - 1) % l;
        m.set(2 * left, 2 * s + 1, u[(0, 1)]);
        m.set(2 * left + 1, 2 * s + 1, u[(1, 1)]);
    }
    if let WalkSpec::Electric { phi, .. } = spec {
        for t in 0..l {
            let ph = Complex64::from_polar(1.0, phi * config.site_of(t) as f64);
            for col in 0..2 * l {
                m.set(2 * t, col, m.entry(2 * t, col) * ph);
                m.set(2 * t + 1, col, m.entry(2 * t + 1, col) * ph);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::AxisAngle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn theta_coin(theta: f64) -> CoinMatrix {
        CoinMatrix::from_euler(&EulerAngles::new(0.0, theta, 0.0).unwrap())
    }

    fn up_at_origin(config: LatticeConfig) -> WalkerCoinState {
        WalkerCoinState::localized(0, [c(1.0, 0.0), c(0.0, 0.0)], config).unwrap()
    }

    #[test]
    fn one_step_from_up_delta() {
        let theta = 1.3;
        let spec = WalkSpec::simple(theta_coin(theta));
        let mut st = up_at_origin(LatticeConfig::padded_for(0, 1).unwrap());
        spec.step(&mut st, 1).unwrap();
        let [up, down] = st.amplitude(1).unwrap();
        assert!((up - c((0.5 * theta).cos(), 0.0)).norm() <= 1e-15);
        assert!((down - c(-(0.5 * theta).sin(), 0.0)).norm() <= 1e-15);
        let d = st.position_distribution();
        assert!((d.prob(1) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn identity_coin_walk_is_a_pure_right_mover() {
        let spec = WalkSpec::simple(CoinMatrix::identity());
        let mut st = up_at_origin(LatticeConfig::padded_for(0, 7).unwrap());
        spec.evolve(&mut st, 7).unwrap();
        assert_eq!(st.amplitude(7).unwrap()[0], c(1.0, 0.0));
    }

    #[test]
    fn identity_coin_step_equals_conditional_shift() {
        let cfg = LatticeConfig::padded_for(1, 2).unwrap();
        let st0 = WalkerCoinState::localized(1, [c(0.6, 0.1), c(-0.3, 0.7)], cfg).unwrap();
        let mut a = st0.clone();
        WalkSpec::simple(CoinMatrix::identity())
            .step(&mut a, 1)
            .unwrap();
        let mut b = st0.clone();
        b.conditional_shift().unwrap();
        assert_eq!(a.max_abs_diff(&b), 0.0);
    }

    #[test]
    fn electric_with_zero_field_matches_simple() {
        let coin = theta_coin(0.9);
        let electric = WalkSpec::electric(coin, 0.0).unwrap();
        let simple = WalkSpec::simple(coin);
        let cfg = LatticeConfig::padded_for(0, 5).unwrap();
        let mut a = up_at_origin(cfg);
        let mut b = up_at_origin(cfg);
        electric.evolve(&mut a, 5).unwrap();
        simple.evolve(&mut b, 5).unwrap();
        assert!(a.max_abs_diff(&b) <= 1e-15);
    }

    #[test]
    fn hadamard_like_two_step_distribution() {
        // After two θ=π/2 steps from |0,↑⟩: P(2) = cos²(θ/2) = 1/2,
        // P(0) = sin²(θ/2) = 1/2.
        let spec = WalkSpec::simple(theta_coin(FRAC_PI_2));
        let mut st = up_at_origin(LatticeConfig::padded_for(0, 2).unwrap());
        spec.evolve(&mut st, 2).unwrap();
        let d = st.position_distribution();
        assert!((d.prob(2) - 0.5).abs() <= 1e-12);
        assert!((d.prob(0) - 0.5).abs() <= 1e-12);
        assert!(d.prob(-2) <= 1e-15);
    }

    #[test]
    fn zero_steps_is_identity() {
        let spec = WalkSpec::simple(theta_coin(1.1));
        let cfg = LatticeConfig::padded_for(0, 3).unwrap();
        let st0 = up_at_origin(cfg);
        let mut st = st0.clone();
        spec.evolve(&mut st, 0).unwrap();
        assert_eq!(st.max_abs_diff(&st0), 0.0);
    }

    #[test]
    fn evolve_equals_manual_step_composition() {
        let schedule = CoinSchedule::Cycle(vec![
            theta_coin(0.7),
            theta_coin(2.1),
            CoinMatrix::from_euler(&EulerAngles::new(0.4, 1.0, -0.9).unwrap()),
        ]);
        let spec = WalkSpec::time_dependent(schedule);
        let cfg = LatticeConfig::padded_for(0, 7).unwrap();
        let mut a = up_at_origin(cfg);
        spec.evolve(&mut a, 7).unwrap();
        let mut b = up_at_origin(cfg);
        for n in 1..=7 {
            spec.step(&mut b, n).unwrap();
        }
        assert!(a.max_abs_diff(&b) <= 1e-12);
    }

    #[test]
    fn step_rejects_index_zero() {
        let spec = WalkSpec::simple(theta_coin(1.0));
        let mut st = up_at_origin(LatticeConfig::padded_for(0, 1).unwrap());
        assert!(spec.step(&mut st, 0).is_err());
    }

    #[test]
    fn evolve_propagates_guard_violation() {
        let spec = WalkSpec::simple(theta_coin(1.0));
        let cfg = LatticeConfig::padded(5, 2).unwrap();
        let mut st = up_at_origin(cfg);
        assert!(matches!(
            spec.evolve(&mut st, 10),
            Err(WalkError::GuardViolation(_))
        ));
    }

    #[test]
    fn electric_equivalent_schedule_values() {
        let (theta, phi) = (1.2, 0.3);
        let sched = CoinSchedule::ElectricEquivalent { theta, phi };
        // n = 1: the bare θ-coin.
        assert!(
            sched
                .coin(1)
                .mat()
                .max_abs_diff(&theta_coin(theta).mat())
                <= 1e-15
        );
        // General n: θ-coin times diag(e^{−i(n−1)Φ}, e^{i(n−1)Φ}).
        let n = 5_u64;
        let diag = crate::mat2::Mat2::diag(
            Complex64::from_polar(1.0, -((n - 1) as f64) * phi),
            Complex64::from_polar(1.0, (n - 1) as f64 * phi),
        );
        let want = theta_coin(theta).mat() * diag;
        assert!(sched.coin(n).mat().max_abs_diff(&want) <= 1e-14);

        // n=3, Φ=π/2: the diagonal factor is −I.
        let sched = CoinSchedule::ElectricEquivalent {
            theta,
            phi: FRAC_PI_2,
        };
        let want = theta_coin(theta).mat().scale(c(-1.0, 0.0));
        assert!(sched.coin(3).mat().max_abs_diff(&want) <= 1e-15);
    }

    #[test]
    fn cycle_schedule_wraps() {
        let coins = vec![theta_coin(0.3), theta_coin(1.9)];
        let sched = CoinSchedule::Cycle(coins.clone());
        assert_eq!(sched.coin(1).mat().entries(), coins[0].mat().entries());
        assert_eq!(sched.coin(2).mat().entries(), coins[1].mat().entries());
        assert_eq!(sched.coin(3).mat().entries(), coins[0].mat().entries());
    }

    #[test]
    fn electric_step_on_ring_requires_commensurate_phase() {
        let spec = WalkSpec::electric(theta_coin(FRAC_PI_2), 0.3).unwrap();
        let mut st = up_at_origin(LatticeConfig::ring(8, 0).unwrap());
        assert!(matches!(
            spec.step(&mut st, 1),
            Err(WalkError::IncommensurateRingPhase(_))
        ));
        let spec = WalkSpec::electric(theta_coin(FRAC_PI_2), TAU / 8.0).unwrap();
        let mut st = up_at_origin(LatticeConfig::ring(8, 0).unwrap());
        spec.step(&mut st, 1).unwrap();
        assert!((st.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn translation_defect_vanishes_for_simple_and_time_dependent() {
        let ring = LatticeConfig::ring(8, 0).unwrap();
        let probes = WalkerCoinState::basis(ring);
        let simple = WalkSpec::simple(theta_coin(FRAC_PI_2));
        assert!(translation_defect(&simple, &probes, 1).unwrap() <= 1e-12);
        let td = WalkSpec::time_dependent(CoinSchedule::Cycle(vec![
            theta_coin(0.4),
            theta_coin(2.5),
        ]));
        assert!(translation_defect(&td, &probes, 2).unwrap() <= 1e-12);
    }

    #[test]
    fn translation_defect_of_electric_walks() {
        let ring = LatticeConfig::ring(8, 0).unwrap();
        let probes = WalkerCoinState::basis(ring);
        // Φ = 2π acts as the identity on integer sites.
        let trivial = WalkSpec::electric(theta_coin(FRAC_PI_2), TAU).unwrap();
        assert!(translation_defect(&trivial, &probes, 1).unwrap() <= 1e-12);
        // Φ = 0.3 breaks translation symmetry visibly. The basis probe
        // stepping onto the wrap site sees the largest phase mismatch:
        // conjugation replaces its phase e^{iΦ·j_min} by e^{iΦ·j_max},
        // giving a deviation of exactly 2·sin(Φ(L−1)/2) there, versus
        // 2·sin(Φ/2) at interior sites.
        let phi = 0.3;
        let broken = WalkSpec::electric(theta_coin(FRAC_PI_2), phi).unwrap();
        let defect = translation_defect(&broken, &probes, 1).unwrap();
        assert!(defect >= 0.1, "defect {defect} unexpectedly small");
        let wrap_mismatch = 2.0 * (phi * 7.0 / 2.0).sin();
        assert!(
            (defect - wrap_mismatch).abs() <= 1e-12,
            "defect {defect} vs predicted {wrap_mismatch}"
        );
    }

    #[test]
    fn translation_defect_requires_ring_probes() {
        let padded = LatticeConfig::padded_for(0, 2).unwrap();
        let probes = vec![up_at_origin(padded)];
        let spec = WalkSpec::simple(theta_coin(1.0));
        assert!(translation_defect(&spec, &probes, 1).is_err());
    }

    #[test]
    fn dense_identity_coin_is_the_conditional_shift_permutation() {
        let ring = LatticeConfig::ring(2, 0).unwrap();
        let m = dense_matrix(&WalkSpec::simple(CoinMatrix::identity()), ring, 1).unwrap();
        // (0,↑)→(1,↑), (1,↑)→(0,↑), (0,↓)→(1,↓), (1,↓)→(0,↓).
        let one = c(1.0, 0.0);
        assert_eq!(m.entry(2, 0), one);
        assert_eq!(m.entry(0, 2), one);
        assert_eq!(m.entry(3, 1), one);
        assert_eq!(m.entry(1, 3), one);
        assert_eq!(m.entry(0, 0), Complex64::ZERO);
        assert!(m.unitarity_defect() <= 1e-15);
    }

    #[test]
    fn dense_matrices_are_unitary() {
        let ring = LatticeConfig::ring(8, 3).unwrap();
        for spec in [
            WalkSpec::simple(theta_coin(1.234)),
            WalkSpec::electric(theta_coin(0.8), 0.3).unwrap(),
            WalkSpec::electric(theta_coin(0.8), TAU / 8.0).unwrap(),
        ] {
            let m = dense_matrix(&spec, ring, 1).unwrap();
            assert!(m.unitarity_defect() <= 1e-12);
        }
    }

    #[test]
    fn dense_matrix_agrees_with_stepping_on_basis_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ring = LatticeConfig::ring(8, 4).unwrap();
        for trial in 0..10 {
            let coin = CoinMatrix::from_euler(
                &EulerAngles::new(
                    rng.random_range(-PI..PI),
                    rng.random_range(0.0..PI),
                    rng.random_range(-PI..PI),
                )
                .unwrap(),
            );
            // Commensurate field keeps checked stepping legal on the ring.
            let spec = if trial % 2 == 0 {
                WalkSpec::simple(coin)
            } else {
                WalkSpec::electric(coin, TAU * (trial as f64) / 8.0).unwrap()
            };
            let m = dense_matrix(&spec, ring, 1).unwrap();
            for probe in WalkerCoinState::basis(ring) {
                let via_matrix = m.apply(probe.amplitudes());
                let mut via_step = probe.clone();
                spec.step(&mut via_step, 1).unwrap();
                let diff = via_matrix
                    .iter()
                    .zip(via_step.amplitudes())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(diff <= 1e-12, "trial {trial}: diff {diff:.3e}");
            }
        }
    }

    #[test]
    fn dense_matrix_respects_size_limit() {
        let big = LatticeConfig::ring(65, 0).unwrap();
        assert!(matches!(
            dense_matrix(&WalkSpec::simple(theta_coin(1.0)), big, 1),
            Err(WalkError::SizeLimit(_))
        ));
        let padded = LatticeConfig::padded(8, 4).unwrap();
        assert!(dense_matrix(&WalkSpec::simple(theta_coin(1.0)), padded, 1).is_err());
    }

    #[test]
    fn dense_unitary_algebra() {
        let ring = LatticeConfig::ring(4, 0).unwrap();
        let spec = WalkSpec::simple(
            CoinMatrix::from_axis_angle(&AxisAngle::new(0.77, [0.0, 1.0, 0.0]).unwrap()),
        );
        let m = dense_matrix(&spec, ring, 1).unwrap();
        let prod = m.adjoint().mul(&m);
        assert!(prod.max_abs_diff(&DenseUnitary::identity(8)) <= 1e-12);
    }

    #[test]
    fn norm_is_preserved_across_long_evolutions() {
        let spec = WalkSpec::electric(theta_coin(1.9), 0.41).unwrap();
        let cfg = LatticeConfig::padded_for(0, 200).unwrap();
        let mut st = WalkerCoinState::localized(0, [c(0.6, 0.0), c(0.0, 0.8)], cfg).unwrap();
        spec.evolve(&mut st, 200).unwrap();
        assert!((st.norm() - 1.0).abs() <= 1e-12);
    }
}
