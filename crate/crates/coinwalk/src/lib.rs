//! Simulation and verification toolkit for coined quantum walks on the
//! line.
//!
//! A walker on integer sites carries a two-level coin. One step is
//! Z = (I⊗U)S: the conditional shift S moves the ↑ component right and
//! the ↓ component left, then the SU(2) coin U mixes the components. Three
//! families are implemented ([`walk::WalkSpec`]): the simple walk with a
//! fixed coin, the time-dependent walk with a per-step coin schedule, and
//! the electric walk Z_E = (E_Φ⊗I)Z that applies the quasi-momentum shift
//! E_Φ = Σ_j e^{iΦj}|j⟩⟨j| after every step.
//!
//! Beyond simulation, the crate machine-checks two structural results:
//!
//! * **Canonical reduction** ([`equivalence::canonical_reduction`]): a
//!   walk whose coin has Euler angles (η, θ, ξ) is unitarily equivalent,
//!   via a product transform V = E_{−(η+ξ)/2}⊗diag(e^{−iη/2}, e^{iη/2}),
//!   to the single-parameter walk Z_θ — only the middle angle matters.
//!   The same fact appears in momentum space as a pure shift of the
//!   dispersion relation ([`spectral::spectral_invariance_check`]).
//! * **Electric ↔ time-dependent equivalence**
//!   ([`equivalence::check_cumulative_identity`]): n electric steps equal
//!   n scheduled-coin steps followed by one cumulative shift E_{nΦ}, and
//!   for rational fields Φ = 2πp/q the two walks agree exactly at every
//!   multiple of q steps ([`equivalence::check_rational_field`]).
//!
//! Verification runs return machine-readable
//! [`equivalence::EquivReport`] values; probe sweeps run in parallel under
//! the default `parallel` feature (see [`sweep`]).

pub mod coin;
pub mod equivalence;
pub mod error;
pub mod lattice;
pub mod mat2;
pub mod spectral;
pub mod sweep;
pub mod walk;

pub use coin::CoinMatrix;
pub use error::{Result, WalkError};
pub use lattice::{LatticeConfig, WalkerCoinState};
pub use walk::WalkSpec;
