//! SU(2) coin operators.
//!
//! A coin operator is a 2×2 special unitary acting on the two-level coin.
//! This module builds them from an axis–angle pair U = exp(iφ/2 r⃗·σ⃗) or
//! from Euler angles U = e^{iη/2 σz} e^{iθ/2 σy} e^{iξ/2 σz}, decomposes a
//! given unitary back into Euler angles, strips global phases off U(2)
//! inputs, and constructs the basis rotation X that takes a rotation axis
//! r⃗ to the vertical, X (r⃗·σ⃗) X† = σz.

use crate::error::{Result, WalkError};
use crate::mat2::Mat2;
use num_complex::Complex64;

/// Default absolute tolerance for matrix-entry validation.
pub const MATRIX_TOL: f64 = 1e-12;

/// Below this magnitude a matrix entry is treated as zero when picking
/// decomposition branches and eigenvector phase conventions.
const DEGENERATE_TOL: f64 = 1e-12;

/// Rotation given by an angle φ and a unit axis r⃗.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisAngle {
    phi: f64,
    axis: [f64; 3],
}

impl AxisAngle {
    /// Requires finite φ and ‖r⃗‖ = 1 within 1e-12.
    pub fn new(phi: f64, axis: [f64; 3]) -> Result<Self> {
        if !phi.is_finite() || axis.iter().any(|a| !a.is_finite()) {
            return Err(WalkError::InvalidInput(
                "axis-angle parameters must be finite".into(),
            ));
        }
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if (norm - 1.0).abs() > MATRIX_TOL {
            return Err(WalkError::InvalidInput(format!(
                "rotation axis must be a unit vector (norm {norm:.3e})"
            )));
        }
        Ok(AxisAngle { phi, axis })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }
}

/// Euler angles (η, θ, ξ) of the z–y–z decomposition.
///
/// Construction accepts any finite triple and [`CoinMatrix::from_euler`] is
/// total on them. Decomposition via [`CoinMatrix::euler_angles`] returns the
/// canonical form: θ ∈ [0, π], and η, ξ ∈ (−2π, 2π] with at most one of the
/// two outside (−π, π] — both lie inside whenever the matrix admits such a
/// representation (shifting η or ξ alone by 2π flips the sign of the matrix,
/// so a handful of matrices need the wider interval for an exact roundtrip).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    pub eta: f64,
    pub theta: f64,
    pub xi: f64,
}

impl EulerAngles {
    pub fn new(eta: f64, theta: f64, xi: f64) -> Result<Self> {
        if !(eta.is_finite() && theta.is_finite() && xi.is_finite()) {
            return Err(WalkError::InvalidInput(
                "Euler angles must be finite".into(),
            ));
        }
        Ok(EulerAngles { eta, theta, xi })
    }
}

/// 2×2 special unitary coin operator: U†U = I and det U = 1, both within
/// 1e-12 on entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix {
    m: Mat2,
}

impl CoinMatrix {
    /// Validates the SU(2) invariants.
    pub fn try_new(m: Mat2) -> Result<Self> {
        let u = m.unitarity_defect();
        if u > MATRIX_TOL {
            return Err(WalkError::InvalidInput(format!(
                "coin matrix is not unitary (defect {u:.3e})"
            )));
        }
        let d = (m.det() - Complex64::new(1.0, 0.0)).norm();
        if d > MATRIX_TOL {
            return Err(WalkError::InvalidInput(format!(
                "coin matrix determinant differs from 1 by {d:.3e}; \
                 strip the global phase with CoinMatrix::from_unitary"
            )));
        }
        Ok(CoinMatrix { m })
    }

    pub fn identity() -> Self {
        CoinMatrix {
            m: Mat2::identity(),
        }
    }

    /// U = cos(φ/2)·I + i·sin(φ/2)·(r⃗·σ⃗).
    pub fn from_axis_angle(p: &AxisAngle) -> Self {
        let (s, c) = (0.5 * p.phi).sin_cos();
        let [rx, ry, rz] = p.axis;
        CoinMatrix {
            m: Mat2::new([
                Complex64::new(c, s * rz),
                Complex64::new(s * ry, s * rx),
                Complex64::new(-s * ry, s * rx),
                Complex64::new(c, -s * rz),
            ]),
        }
    }

    /// U = e^{iη/2 σz} e^{iθ/2 σy} e^{iξ/2 σz}, in closed form
    /// [[e^{i(η+ξ)/2}cos(θ/2),  e^{i(η−ξ)/2}sin(θ/2)],
    ///  [−e^{−i(η−ξ)/2}sin(θ/2), e^{−i(η+ξ)/2}cos(θ/2)]].
    pub fn from_euler(p: &EulerAngles) -> Self {
        let c = (0.5 * p.theta).cos();
        let s = (0.5 * p.theta).sin();
        let a = Complex64::from_polar(c, 0.5 * (p.eta + p.xi));
        let b = Complex64::from_polar(s, 0.5 * (p.eta - p.xi));
        CoinMatrix {
            m: Mat2::new([a, b, -b.conj(), a.conj()]),
        }
    }

    /// The underlying matrix.
    pub fn mat(&self) -> Mat2 {
        self.m
    }

    /// Inverse coin; the adjoint of an SU(2) matrix stays in SU(2).
    pub fn adjoint(&self) -> Self {
        CoinMatrix {
            m: self.m.adjoint(),
        }
    }

    /// Splits a general 2×2 unitary M into e^{iδ}·U with U ∈ SU(2),
    /// returning (U, δ). The phase is δ = arg(det M)/2 on the principal
    /// branch, so δ ∈ (−π/2, π/2].
    pub fn from_unitary(m: Mat2) -> Result<(Self, f64)> {
        let u = m.unitarity_defect();
        if u > MATRIX_TOL {
            return Err(WalkError::InvalidInput(format!(
                "matrix is not unitary (defect {u:.3e})"
            )));
        }
        let phase = 0.5 * m.det().arg();
        let su2 = m.scale(Complex64::from_polar(1.0, -phase));
        Ok((CoinMatrix::try_new(su2)?, phase))
    }

    /// Inverse of [`CoinMatrix::from_euler`]: θ = 2·atan2(|U01|, |U00|),
    /// phases from the arguments of the first row. When θ = 0 or θ = π only
    /// one phase combination is determined; the tie-break sets ξ = 0 and
    /// folds everything into η. The roundtrip
    /// `from_euler(u.euler_angles())` reproduces `u` entrywise.
    pub fn euler_angles(&self) -> EulerAngles {
        let a = self.m[(0, 0)];
        let b = self.m[(0, 1)];
        let theta = 2.0 * b.norm().atan2(a.norm());
        let (eta, xi) = if b.norm() <= DEGENERATE_TOL {
            (2.0 * a.arg(), 0.0)
        } else if a.norm() <= DEGENERATE_TOL {
            (2.0 * b.arg(), 0.0)
        } else {
            // arg(a) = (η+ξ)/2 and arg(b) = (η−ξ)/2 up to joint 2π shifts;
            // the sums below land in (−2π, 2π] and at most one of them can
            // fall outside (−π, π], which is left as-is for exactness.
            (a.arg() + b.arg(), a.arg() - b.arg())
        };
        EulerAngles { eta, theta, xi }
    }
}

/// The Pauli vector contraction r⃗·σ⃗ = [[rz, rx − i·ry], [rx + i·ry, −rz]].
pub fn pauli_dot(axis: [f64; 3]) -> Mat2 {
    let [rx, ry, rz] = axis;
    Mat2::new([
        Complex64::new(rz, 0.0),
        Complex64::new(rx, -ry),
        Complex64::new(rx, ry),
        Complex64::new(-rz, 0.0),
    ])
}

/// Basis rotation X with X (r⃗·σ⃗) X† = σz.
///
/// The rows of X are the conjugated eigenvectors of r⃗·σ⃗ (eigenvalue +1
/// first). Each eigenvector's phase is fixed by the convention: first
/// component real and non-negative; if its magnitude is below 1e-12, the
/// second component is made real and positive. X is unitary but its
/// determinant may be −1 (e.g. axis = x yields the Hadamard matrix), so the
/// return type is a plain [`Mat2`].
pub fn basis_rotation_for_axis(axis: [f64; 3]) -> Result<Mat2> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if axis.iter().any(|a| !a.is_finite()) || (norm - 1.0).abs() > MATRIX_TOL {
        return Err(WalkError::InvalidInput(format!(
            "rotation axis must be a unit vector (norm {norm:.3e})"
        )));
    }
    let [rx, ry, rz] = axis;
    // Two algebraic forms of the ±1 eigenvectors of r⃗·σ⃗; each is singular
    // at one pole, so pick by the sign of rz.
    let (up, down) = if rz >= 0.0 {
        (
            [Complex64::new(1.0 + rz, 0.0), Complex64::new(rx, ry)],
            [Complex64::new(-rx, ry), Complex64::new(1.0 + rz, 0.0)],
        )
    } else {
        (
            [Complex64::new(rx, -ry), Complex64::new(1.0 - rz, 0.0)],
            [Complex64::new(1.0 - rz, 0.0), Complex64::new(-rx, -ry)],
        )
    };
    let up = fix_eigenvector_phase(up);
    let down = fix_eigenvector_phase(down);
    Ok(Mat2::new([
        up[0].conj(),
        up[1].conj(),
        down[0].conj(),
        down[1].conj(),
    ]))
}

/// Normalizes and applies the row phase convention of
/// [`basis_rotation_for_axis`].
fn fix_eigenvector_phase(v: [Complex64; 2]) -> [Complex64; 2] {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v = [v[0] / norm, v[1] / norm];
    let anchor = if v[0].norm() >= DEGENERATE_TOL {
        v[0]
    } else {
        v[1]
    };
    let phase = Complex64::from_polar(1.0, -anchor.arg());
    [v[0] * phase, v[1] * phase]
}

/// A coin parsed from the CLI string grammar.
#[derive(Clone, Copy, Debug)]
pub struct ParsedCoin {
    pub coin: CoinMatrix,
    /// Global phase stripped from a `matrix:` input; 0 for the SU(2)
    /// `euler:`/`axis:` forms.
    pub global_phase: f64,
}

/// Parses the coin specification grammar
/// `euler:<eta>,<theta>,<xi>` | `axis:<phi>,<rx>,<ry>,<rz>` |
/// `matrix:<8 floats row-major re,im>` (angles in radians, decimal floats).
///
/// Axis vectors are normalized if their norm differs from 1 (a decimal
/// text form cannot carry 1e-12-accurate unit vectors); vectors with norm
/// below 1e-12 are rejected.
pub fn parse_coin_spec(spec: &str) -> Result<ParsedCoin> {
    let bad = |msg: &str| WalkError::InvalidInput(format!("coin spec `{spec}`: {msg}"));
    let (kind, rest) = spec
        .trim()
        .split_once(':')
        .ok_or_else(|| bad("expected `euler:`, `axis:` or `matrix:` prefix"))?;
    let values: Vec<f64> = rest
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| bad(&format!("number parse failed ({e})")))?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite"));
    }
    match kind.trim() {
        "euler" => {
            let [eta, theta, xi] = values[..]
                .try_into()
                .map_err(|_| bad("euler form takes 3 values: eta,theta,xi"))?;
            Ok(ParsedCoin {
                coin: CoinMatrix::from_euler(&EulerAngles::new(eta, theta, xi)?),
                global_phase: 0.0,
            })
        }
        "axis" => {
            let [phi, rx, ry, rz] = values[..]
                .try_into()
                .map_err(|_| bad("axis form takes 4 values: phi,rx,ry,rz"))?;
            let norm = (rx * rx + ry * ry + rz * rz).sqrt();
            if norm < 1e-12 {
                return Err(bad("axis vector has zero norm"));
            }
            let p = AxisAngle::new(phi, [rx / norm, ry / norm, rz / norm])?;
            Ok(ParsedCoin {
                coin: CoinMatrix::from_axis_angle(&p),
                global_phase: 0.0,
            })
        }
        "matrix" => {
            let [a, b, c, d, e, f, g, h] = values[..]
                .try_into()
                .map_err(|_| bad("matrix form takes 8 values: re,im per entry, row-major"))?;
            let m = Mat2::new([
                Complex64::new(a, b),
                Complex64::new(c, d),
                Complex64::new(e, f),
                Complex64::new(g, h),
            ]);
            let (coin, global_phase) = CoinMatrix::from_unitary(m)?;
            Ok(ParsedCoin { coin, global_phase })
        }
        other => Err(bad(&format!("unknown coin form `{other}`"))),
    }
}
