//! Walker⊗coin state storage, shift operators, and measurement statistics.
//!
//! The walker lives on integer sites. Storage truncates the line in one of
//! two ways: `Padded` embeds a window with a guard band and refuses any
//! shift that would push amplitude off the array, so every infinite-line
//! identity holds exactly on the stored window; `Ring` closes the window
//! cyclically, which is what the dense-matrix oracles need.

use crate::coin::CoinMatrix;
use crate::error::{Result, WalkError};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::io::{self, Write};

/// Largest acceptable |Φ·L mod 2π| for a quasi-momentum shift on a ring.
pub const RING_PHASE_TOL: f64 = 1e-9;

/// Boundary handling for the truncated line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Open window with a guard band of `guard ≥ 1` sites. Shifting
    /// amplitude off either end of the array is an error, never a silent
    /// truncation.
    Padded { guard: usize },
    /// Cyclic closure: site L−1 neighbours site 0.
    Ring,
}

/// Geometry of the stored window: `size` sites, with logical site j held at
/// storage index `origin + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeConfig {
    size: usize,
    origin: usize,
    boundary: Boundary,
}

impl LatticeConfig {
    /// Requires size ≥ 2, origin inside the array, and guard ≥ 1 in
    /// `Padded` mode.
    pub fn new(size: usize, origin: usize, boundary: Boundary) -> Result<Self> {
        if size < 2 {
            return Err(WalkError::InvalidInput(format!(
                "lattice needs at least 2 sites, got {size}"
            )));
        }
        if origin >= size {
            return Err(WalkError::InvalidInput(format!(
                "origin index {origin} outside a lattice of {size} sites"
            )));
        }
        if let Boundary::Padded { guard } = boundary {
            if guard < 1 {
                return Err(WalkError::InvalidInput(
                    "padded boundary needs a guard band of at least 1 site".into(),
                ));
            }
        }
        Ok(LatticeConfig {
            size,
            origin,
            boundary,
        })
    }

    /// Cyclic lattice of `size` sites.
    pub fn ring(size: usize, origin: usize) -> Result<Self> {
        LatticeConfig::new(size, origin, Boundary::Ring)
    }

    /// Open window of `size` sites with a single-site guard band.
    pub fn padded(size: usize, origin: usize) -> Result<Self> {
        LatticeConfig::new(size, origin, Boundary::Padded { guard: 1 })
    }

    /// Window sized for `steps` steps of a walk whose initial support lies
    /// within |j| ≤ `support_radius`: the support can grow by one site per
    /// step and the rest is margin, so no legitimate evolution reaches the
    /// boundary.
    pub fn padded_for(support_radius: usize, steps: usize) -> Result<Self> {
        let size = 2 * (steps + 2) + 2 * support_radius + 1;
        LatticeConfig::new(size, (size - 1) / 2, Boundary::Padded { guard: 2 })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Smallest logical site held in storage.
    pub fn site_min(&self) -> i64 {
        -(self.origin as i64)
    }

    /// Largest logical site held in storage.
    pub fn site_max(&self) -> i64 {
        (self.size - 1 - self.origin) as i64
    }

    /// Storage index of logical site j. On a ring every j resolves by
    /// wrapping; on a padded window sites outside the array yield `None`.
    pub fn storage_index(&self, site: i64) -> Option<usize> {
        let raw = site + self.origin as i64;
        match self.boundary {
            Boundary::Padded { .. } => {
                if (0..self.size as i64).contains(&raw) {
                    Some(raw as usize)
                } else {
                    None
                }
            }
            Boundary::Ring => Some(raw.rem_euclid(self.size as i64) as usize),
        }
    }

    /// Logical site held at storage index s.
    pub fn site_of(&self, s: usize) -> i64 {
        s as i64 - self.origin as i64
    }

    /// All logical sites in storage order.
    pub fn sites(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.size).map(|s| self.site_of(s))
    }

    /// Checks Φ·L ≡ 0 (mod 2π) within [`RING_PHASE_TOL`].
    pub fn ring_commensurate(&self, phi: f64) -> bool {
        let x = phi * self.size as f64;
        (x - (x / TAU).round() * TAU).abs() <= RING_PHASE_TOL
    }
}

/// Direction of the unconditional walker shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    Left,
    Right,
}

/// Pure state of the walker⊗coin system.
///
/// Amplitudes are stored site-major, the ↑ component before the ↓
/// component of each site: index 2s is (site s, ↑), index 2s+1 is
/// (site s, ↓). The norm is 1 after construction and stays 1 under every
/// operation here; norm drift is a bug, so nothing ever renormalizes.
#[derive(Clone, Debug)]
pub struct WalkerCoinState {
    amps: Vec<Complex64>,
    config: LatticeConfig,
}

impl WalkerCoinState {
    /// Uncorrelated product |ψ⟩⊗|χ⟩ of a walker amplitude per storage site
    /// and a coin pair, normalized. Either factor with zero norm is
    /// rejected.
    pub fn product_state(
        walker: &[Complex64],
        coin: [Complex64; 2],
        config: LatticeConfig,
    ) -> Result<Self> {
        if walker.len() != config.size {
            return Err(WalkError::InvalidInput(format!(
                "walker amplitude count {} does not match lattice size {}",
                walker.len(),
                config.size
            )));
        }
        if walker.iter().any(|a| !a.re.is_finite() || !a.im.is_finite())
            || coin.iter().any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(WalkError::InvalidInput(
                "state amplitudes must be finite".into(),
            ));
        }
        let wn = walker.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let cn = (coin[0].norm_sqr() + coin[1].norm_sqr()).sqrt();
        if wn == 0.0 || cn == 0.0 {
            return Err(WalkError::InvalidInput(
                "product state factors must have nonzero norm".into(),
            ));
        }
        let mut amps = Vec::with_capacity(2 * config.size);
        for a in walker {
            let a = a / wn;
            amps.push(a * coin[0] / cn);
            amps.push(a * coin[1] / cn);
        }
        Ok(WalkerCoinState { amps, config })
    }

    /// δ-localized walker at one logical site with the given coin pair.
    pub fn localized(site: i64, coin: [Complex64; 2], config: LatticeConfig) -> Result<Self> {
        let s = config.storage_index(site).ok_or_else(|| {
            WalkError::InvalidInput(format!(
                "site {site} outside the lattice window [{}, {}]",
                config.site_min(),
                config.site_max()
            ))
        })?;
        let mut walker = vec![Complex64::new(0.0, 0.0); config.size];
        walker[s] = Complex64::new(1.0, 0.0);
        WalkerCoinState::product_state(&walker, coin, config)
    }

    /// The 2L canonical basis states, ordered like the amplitude layout:
    /// element 2s is (site s, ↑), element 2s+1 is (site s, ↓). Dense
    /// operator matrices use the same column ordering.
    pub fn basis(config: LatticeConfig) -> Vec<Self> {
        (0..2 * config.size)
            .map(|i| {
                let mut amps = vec![Complex64::new(0.0, 0.0); 2 * config.size];
                amps[i] = Complex64::new(1.0, 0.0);
                WalkerCoinState { amps, config }
            })
            .collect()
    }

    /// Builds a state directly from amplitudes in storage layout,
    /// normalized. Rejects zero-norm input.
    pub fn from_amplitudes(amps: Vec<Complex64>, config: LatticeConfig) -> Result<Self> {
        if amps.len() != 2 * config.size {
            return Err(WalkError::InvalidInput(format!(
                "amplitude count {} does not match 2×{} slots",
                amps.len(),
                config.size
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(WalkError::InvalidInput(
                "state amplitudes must be finite".into(),
            ));
        }
        let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return Err(WalkError::InvalidInput(
                "state must have nonzero norm".into(),
            ));
        }
        let amps = amps.into_iter().map(|a| a / n).collect();
        Ok(WalkerCoinState { amps, config })
    }

    pub fn config(&self) -> LatticeConfig {
        self.config
    }

    /// Raw amplitudes in storage layout.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// (↑, ↓) amplitude pair at a logical site; `None` outside a padded
    /// window.
    pub fn amplitude(&self, site: i64) -> Option<[Complex64; 2]> {
        let s = self.config.storage_index(site)?;
        Some([self.amps[2 * s], self.amps[2 * s + 1]])
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise amplitude difference. Panics if the two states
    /// live on different lattices; comparing those is a programming error.
    pub fn max_abs_diff(&self, other: &WalkerCoinState) -> f64 {
        assert_eq!(
            self.config, other.config,
            "states on different lattices cannot be compared"
        );
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean distance ‖self − other‖₂. Panics on mismatched lattices
    /// like [`Self::max_abs_diff`].
    pub fn distance(&self, other: &WalkerCoinState) -> f64 {
        assert_eq!(
            self.config, other.config,
            "states on different lattices cannot be compared"
        );
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Smallest and largest logical sites carrying any amplitude, or
    /// `None` for the all-zero support of a freshly zeroed buffer. Shifts
    /// move amplitudes without arithmetic, so exact zeros stay exact and
    /// this is a sharp bound.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        let mut bounds: Option<(i64, i64)> = None;
        for s in 0..self.config.size {
            if self.amps[2 * s] != Complex64::ZERO || self.amps[2 * s + 1] != Complex64::ZERO {
                let j = self.config.site_of(s);
                bounds = Some(match bounds {
                    None => (j, j),
                    Some((lo, hi)) => (lo.min(j), hi.max(j)),
                });
            }
        }
        bounds
    }

    /// Unconditional walker shift by one site: `Right` applies
    /// R = Σ_j |j+1⟩⟨j| to both coin components, `Left` applies R†.
    /// On a padded window, amplitude at the outgoing edge is a
    /// [`WalkError::GuardViolation`].
    pub fn apply_shift(&mut self, dir: ShiftDirection) -> Result<()> {
        let l = self.config.size;
        match self.config.boundary {
            Boundary::Padded { .. } => {
                let edge = match dir {
                    ShiftDirection::Right => l - 1,
                    ShiftDirection::Left => 0,
                };
                if self.amps[2 * edge] != Complex64::ZERO
                    || self.amps[2 * edge + 1] != Complex64::ZERO
                {
                    return Err(WalkError::GuardViolation(format!(
                        "shift would move amplitude at site {} off the padded window",
                        self.config.site_of(edge)
                    )));
                }
                match dir {
                    ShiftDirection::Right => {
                        for s in (1..l).rev() {
                            self.amps[2 * s] = self.amps[2 * (s - 1)];
                            self.amps[2 * s + 1] = self.amps[2 * (s - 1) + 1];
                        }
                        self.amps[0] = Complex64::ZERO;
                        self.amps[1] = Complex64::ZERO;
                    }
                    ShiftDirection::Left => {
                        for s in 0..l - 1 {
                            self.amps[2 * s] = self.amps[2 * (s + 1)];
                            self.amps[2 * s + 1] = self.amps[2 * (s + 1) + 1];
                        }
                        self.amps[2 * (l - 1)] = Complex64::ZERO;
                        self.amps[2 * (l - 1) + 1] = Complex64::ZERO;
                    }
                }
            }
            Boundary::Ring => match dir {
                ShiftDirection::Right => self.amps.rotate_right(2),
                ShiftDirection::Left => self.amps.rotate_left(2),
            },
        }
        Ok(())
    }

    /// Conditional shift S = R⊗|↑⟩⟨↑| + R†⊗|↓⟩⟨↓|: the ↑ component moves
    /// one site right, the ↓ component one site left.
    pub fn conditional_shift(&mut self) -> Result<()> {
        let l = self.config.size;
        match self.config.boundary {
            Boundary::Padded { .. } => {
                if self.amps[2 * (l - 1)] != Complex64::ZERO || self.amps[1] != Complex64::ZERO {
                    return Err(WalkError::GuardViolation(format!(
                        "conditional shift would move amplitude off the padded window \
                         [{}, {}]",
                        self.config.site_min(),
                        self.config.site_max()
                    )));
                }
                for s in (1..l).rev() {
                    self.amps[2 * s] = self.amps[2 * (s - 1)];
                }
                self.amps[0] = Complex64::ZERO;
                for s in 0..l - 1 {
                    self.amps[2 * s + 1] = self.amps[2 * (s + 1) + 1];
                }
                self.amps[2 * (l - 1) + 1] = Complex64::ZERO;
            }
            Boundary::Ring => {
                let last_up = self.amps[2 * (l - 1)];
                for s in (1..l).rev() {
                    self.amps[2 * s] = self.amps[2 * (s - 1)];
                }
                self.amps[0] = last_up;
                let first_down = self.amps[1];
                for s in 0..l - 1 {
                    self.amps[2 * s + 1] = self.amps[2 * (s + 1) + 1];
                }
                self.amps[2 * (l - 1) + 1] = first_down;
            }
        }
        Ok(())
    }

    /// Applies I⊗U: the coin matrix acts on each site's (↑, ↓) pair.
    pub fn apply_coin(&mut self, u: &CoinMatrix) {
        let m = u.mat();
        let (u00, u01, u10, u11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        for s in 0..self.config.size {
            let a = self.amps[2 * s];
            let b = self.amps[2 * s + 1];
            self.amps[2 * s] = u00 * a + u01 * b;
            self.amps[2 * s + 1] = u10 * a + u11 * b;
        }
    }

    /// Applies E_Φ = Σ_j e^{iΦj}|j⟩⟨j| (both coin components at logical
    /// site j pick up e^{iΦj}).
    ///
    /// On a ring this is only a consistent operator when Φ·L ≡ 0 (mod 2π):
    /// otherwise the phases e^{iΦj} and e^{iΦ(j+L)} disagree at the wrap
    /// and E_Φ R E_Φ† = e^{iΦ}R fails there. Incommensurate phases are
    /// rejected rather than silently approximated.
    pub fn apply_quasimomentum_shift(&mut self, phi: f64) -> Result<()> {
        if matches!(self.config.boundary, Boundary::Ring) && !self.config.ring_commensurate(phi) {
            return Err(WalkError::IncommensurateRingPhase(format!(
                "Φ·L = {} is not a multiple of 2π for L = {}",
                phi * self.config.size as f64,
                self.config.size
            )));
        }
        self.apply_site_phase(phi);
        Ok(())
    }

    /// E_Φ without the ring commensurability check. Diagnostics that
    /// deliberately probe the wrap-site inconsistency (translation-defect
    /// measurements) use this; everything else goes through
    /// [`Self::apply_quasimomentum_shift`].
    pub(crate) fn apply_site_phase(&mut self, phi: f64) {
        for s in 0..self.config.size {
            let j = self.config.site_of(s);
            let ph = Complex64::from_polar(1.0, phi * j as f64);
            self.amps[2 * s] *= ph;
            self.amps[2 * s + 1] *= ph;
        }
    }

    /// Position measurement statistics: p_j = |amp(j,↑)|² + |amp(j,↓)|².
    pub fn position_distribution(&self) -> Distribution {
        let probs = (0..self.config.size)
            .map(|s| self.amps[2 * s].norm_sqr() + self.amps[2 * s + 1].norm_sqr())
            .collect();
        Distribution {
            probs,
            config: self.config,
        }
    }

    /// Writes `site,re_up,im_up,re_down,im_down` rows, sites ascending.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "site,re_up,im_up,re_down,im_down")?;
        for s in 0..self.config.size {
            let (u, d) = (self.amps[2 * s], self.amps[2 * s + 1]);
            writeln!(
                w,
                "{},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.config.site_of(s),
                u.re,
                u.im,
                d.re,
                d.im
            )?;
        }
        Ok(())
    }
}

/// Position distribution over the logical sites of one lattice window.
#[derive(Clone, Debug)]
pub struct Distribution {
    probs: Vec<f64>,
    config: LatticeConfig,
}

/// First and second moments of a position distribution, in units of sites
/// (variance in sites²).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub stddev: f64,
}

impl Distribution {
    pub fn config(&self) -> LatticeConfig {
        self.config
    }

    /// Probability at a logical site (0 outside a padded window).
    pub fn prob(&self, site: i64) -> f64 {
        self.config
            .storage_index(site)
            .map_or(0.0, |s| self.probs[s])
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// (logical site, probability) pairs, sites ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(|(s, &p)| (self.config.site_of(s), p))
    }

    /// Mean, variance, and standard deviation of the logical site index.
    /// Assumes a normalized distribution.
    pub fn moments(&self) -> Moments {
        let mean: f64 = self.iter().map(|(j, p)| j as f64 * p).sum();
        let variance: f64 = self
            .iter()
            .map(|(j, p)| {
                let d = j as f64 - mean;
                d * d * p
            })
            .sum();
        Moments {
            mean,
            variance,
            stddev: variance.sqrt(),
        }
    }

    /// Total-variation distance ½·Σ_j |p_j − q_j|, matched by logical site
    /// so the two distributions may live on different windows.
    pub fn tv_distance(&self, other: &Distribution) -> f64 {
        let mut by_site: BTreeMap<i64, (f64, f64)> = BTreeMap::new();
        for (j, p) in self.iter() {
            by_site.entry(j).or_insert((0.0, 0.0)).0 += p;
        }
        for (j, q) in other.iter() {
            by_site.entry(j).or_insert((0.0, 0.0)).1 += q;
        }
        0.5 * by_site.values().map(|(p, q)| (p - q).abs()).sum::<f64>()
    }

    /// Writes `site,probability` rows, sites ascending.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "site,probability")?;
        for (j, p) in self.iter() {
            writeln!(w, "{},{:.16e}", j, p)?;
        }
        Ok(())
    }
}
