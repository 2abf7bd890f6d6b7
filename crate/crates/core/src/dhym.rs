//! Lifted phase angles, phase windows, and central charges.
//!
//! For a Kähler class `ω` and an invariant class `ψ`, the endomorphism
//! `ω^{-1}ψ` acts on each root line by the rational eigenvalue
//! `q_β = ⟨λ_ψ, β∨⟩ / ⟨λ_ω, β∨⟩`. The lifted phase angle is
//! `Θ̂ = Σ_β arctan(q_β)`, the unique continuous lift in `(-nπ/2, nπ/2)`.
//! Window classification compares `Θ̂` against the thresholds
//! `(n-1)π/2` (hypercritical above) and `(n-2)π/2` (supercritical above,
//! subcritical at or below); it refuses to answer within `10⁻⁹` of a
//! threshold instead of guessing.
//!
//! Central charges are exact Gaussian rationals:
//! * whole space: `Z = -(-i)ⁿ · Π_β (1 + i q_β) · Vol(ω)`,
//! * generator curve `P¹_β`: `Z = -⟨λ, β∨⟩ + r·i·⟨λ_ω, β∨⟩`,
//! * divisor class `λ_Y`: `Z = -Σ_α b_α · Π_{β≠α} (a_β - i) · Vol(ω)`
//!   with `a_β` the eigenvalues of the source class and
//!   `b_α = ⟨λ_Y, α∨⟩ / ⟨λ_ω, α∨⟩`.
//!
//! Comparison invariants never go through floats: the sign of
//! `Im(Z_Y / Z_X)` is computed as the exact sign of `Im(Z_Y · conj Z_X)`.

use crate::flag::{FlagError, InvariantClass, KahlerClass, ParabolicGeometry, SplitBundle};
use crate::rootsys::{Rat, Root};
use num::complex::Complex;
use num::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use thiserror::Error;

/// Gaussian rational: exact complex number with rational parts.
pub type GaussRat = Complex<Rat>;

/// Absolute guard band around the window thresholds.
pub const BOUNDARY_GUARD: f64 = 1e-9;

/// Errors from phase and charge computations.
#[derive(Debug, Error, PartialEq)]
pub enum DhymError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    /// The lifted angle sits too close to a window threshold for a
    /// float comparison to be trusted.
    #[error("lifted angle {theta_hat} is within {BOUNDARY_GUARD:e} of the threshold {threshold}")]
    BoundaryAmbiguous { theta_hat: f64, threshold: f64 },
    /// The reference charge vanishes, so no ratio sign exists.
    #[error("total central charge is zero; the comparison ratio is undefined")]
    ZeroTotalCharge,
    /// A curve charge needs at least one bundle summand.
    #[error("curve central charge requires positive rank")]
    ZeroRank,
}

/// Phase windows, ordered from most to least restrictive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// `Θ̂ > (n-1)·π/2`.
    Hypercritical,
    /// `(n-2)·π/2 < Θ̂ ≤ (n-1)·π/2`.
    Supercritical,
    /// `Θ̂ ≤ (n-2)·π/2`.
    Subcritical,
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Window::Hypercritical => "hypercritical",
            Window::Supercritical => "supercritical",
            Window::Subcritical => "subcritical",
        };
        write!(f, "{s}")
    }
}

/// Everything the lifted-angle computation produces.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseReport {
    /// `q_β` per complement root, canonical order.
    pub eigenvalues: Vec<Rat>,
    /// `Π_β (1 + q_β²)`, the squared modulus of the normalized charge;
    /// at least one, with equality exactly when all eigenvalues vanish.
    pub modulus_sq: Rat,
    /// `Σ_β arctan(q_β)`, the unique lift in `(-nπ/2, nπ/2)`.
    pub theta_hat: f64,
    /// Complex dimension of the flag variety.
    pub dimension: usize,
    pub window: Window,
    /// Distance from `theta_hat` to the nearest window threshold.
    pub boundary_distance: f64,
}

/// What a central charge is measured against.
#[derive(Debug, Clone, PartialEq)]
pub enum ChargeTarget {
    /// The flag variety itself.
    WholeSpace,
    /// A generator curve `P¹_β` for a complement root `β`.
    Curve(Root),
    /// A divisor with invariant class `λ_Y`.
    Divisor(InvariantClass),
}

/// Source object of a charge: a first Chern class and a rank. Rank zero
/// encodes a virtual class of pure codimension; it is rejected only for
/// curve targets, where it would collapse the charge formula.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeSource {
    pub class: InvariantClass,
    pub rank: u64,
}

impl ChargeSource {
    /// A line bundle with the given first Chern class.
    pub fn line_bundle(class: InvariantClass) -> Self {
        ChargeSource { class, rank: 1 }
    }

    /// Determinant class and rank of a split bundle.
    pub fn from_bundle(bundle: &SplitBundle) -> Self {
        ChargeSource { class: bundle.determinant(), rank: bundle.rank() as u64 }
    }
}

/// An exact central charge with its principal float argument.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralCharge {
    pub value: GaussRat,
    /// `atan2(Im, Re)`, in `(-π, π]`; zero for the zero charge.
    pub arg: f64,
    pub target: ChargeTarget,
}

/// Exact sign and float value of one CJY comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CjyReport {
    /// Sign of `Im(Z_Y / Z_X)`, computed exactly: -1, 0, or +1.
    pub sign: i8,
    /// `Im(Z_Y / Z_X)` as a float, for reporting only.
    pub ratio_im: f64,
    pub z_y: CentralCharge,
    pub z_x: CentralCharge,
}

/// Lifted subvariety angle against the expected window drop.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    /// Lifted angle of the target subvariety.
    pub theta_y: f64,
    /// Lifted angle of the ambient space.
    pub theta_hat: f64,
    /// `Θ_Y - (Θ̂ - (n - dim Y)·π/2)`.
    pub defect: f64,
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational converts to float")
}

/// Computes the lifted angle `Θ̂` of `ψ` against `ω`, with eigenvalues,
/// modulus, and window classification.
pub fn lifted_angle(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    psi: &InvariantClass,
) -> Result<PhaseReport, DhymError> {
    let eigenvalues = flag.eigenvalues(omega, psi)?;
    let mut modulus_sq = Rat::one();
    let mut theta_hat = 0.0f64;
    for q in &eigenvalues {
        modulus_sq *= Rat::one() + q * q;
        theta_hat += rat_to_f64(q).atan();
    }
    let dimension = flag.dimension();
    let (window, boundary_distance) = classify_window(theta_hat, dimension)?;
    Ok(PhaseReport { eigenvalues, modulus_sq, theta_hat, dimension, window, boundary_distance })
}

/// Places a lifted angle into its phase window. Errs on the side of
/// refusing: within [`BOUNDARY_GUARD`] of either threshold the caller
/// gets [`DhymError::BoundaryAmbiguous`] instead of a guess.
pub fn classify_window(theta_hat: f64, dimension: usize) -> Result<(Window, f64), DhymError> {
    let n = dimension as f64;
    let hi = (n - 1.0) * PI / 2.0;
    let lo = (n - 2.0) * PI / 2.0;
    let (threshold, distance) = if (theta_hat - hi).abs() <= (theta_hat - lo).abs() {
        (hi, (theta_hat - hi).abs())
    } else {
        (lo, (theta_hat - lo).abs())
    };
    if distance < BOUNDARY_GUARD {
        return Err(DhymError::BoundaryAmbiguous { theta_hat, threshold });
    }
    let window = if theta_hat > hi {
        Window::Hypercritical
    } else if theta_hat > lo {
        Window::Supercritical
    } else {
        Window::Subcritical
    };
    Ok((window, distance))
}

fn gauss_i() -> GaussRat {
    GaussRat::new(Rat::zero(), Rat::one())
}

/// `(-i)^n` as an exact Gaussian rational.
fn minus_i_pow(n: usize) -> GaussRat {
    match n % 4 {
        0 => GaussRat::new(Rat::one(), Rat::zero()),
        1 => GaussRat::new(Rat::zero(), -Rat::one()),
        2 => GaussRat::new(-Rat::one(), Rat::zero()),
        _ => gauss_i(),
    }
}

fn principal_arg(z: &GaussRat) -> f64 {
    if z.re.is_zero() && z.im.is_zero() {
        return 0.0;
    }
    rat_to_f64(&z.im).atan2(rat_to_f64(&z.re))
}

/// Exact central charge of `source` against `target`.
pub fn central_charge(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    source: &ChargeSource,
    target: &ChargeTarget,
) -> Result<CentralCharge, DhymError> {
    let value = match target {
        ChargeTarget::WholeSpace => {
            let eig = flag.eigenvalues(omega, &source.class)?;
            let vol = flag.volume(omega)?;
            let mut prod = GaussRat::new(Rat::one(), Rat::zero());
            for q in &eig {
                prod *= GaussRat::new(Rat::one(), q.clone());
            }
            let scale = GaussRat::new(-vol, Rat::zero());
            minus_i_pow(flag.dimension()) * prod * scale
        }
        ChargeTarget::Curve(beta) => {
            if source.rank == 0 {
                return Err(DhymError::ZeroRank);
            }
            // Membership and Kähler positivity are enforced by the
            // decomposition and pairing calls.
            flag.curve_class_decomposition(beta)?;
            let rs = flag.root_system();
            let deg = rs.coroot_pairing(source.class.weight(), beta).map_err(FlagError::from)?;
            let vol_beta =
                rs.coroot_pairing(omega.weight(), beta).map_err(FlagError::from)?;
            flag.volume(omega)?;
            GaussRat::new(-deg, Rat::from_integer(source.rank.into()) * vol_beta)
        }
        ChargeTarget::Divisor(lambda_y) => {
            let a = flag.eigenvalues(omega, &source.class)?;
            let b = flag.eigenvalues(omega, lambda_y)?;
            let vol = flag.volume(omega)?;
            let mut sum = GaussRat::new(Rat::zero(), Rat::zero());
            for (alpha, b_alpha) in b.iter().enumerate() {
                if b_alpha.is_zero() {
                    continue;
                }
                let mut prod = GaussRat::new(b_alpha.clone(), Rat::zero());
                for (beta, a_beta) in a.iter().enumerate() {
                    if beta != alpha {
                        prod *= GaussRat::new(a_beta.clone(), -Rat::one());
                    }
                }
                sum += prod;
            }
            sum * GaussRat::new(-vol, Rat::zero())
        }
    };
    let arg = principal_arg(&value);
    Ok(CentralCharge { value, arg, target: target.clone() })
}

/// Exact sign (and float value) of `Im(Z_Y / Z_X)` for a curve or
/// divisor target `Y`, with `Z_X` the whole-space charge of the same
/// source.
pub fn cjy_ratio(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    source: &ChargeSource,
    target: &ChargeTarget,
) -> Result<CjyReport, DhymError> {
    let z_y = central_charge(flag, omega, source, target)?;
    let z_x = central_charge(flag, omega, source, &ChargeTarget::WholeSpace)?;
    let norm_x = z_x.value.norm_sqr();
    if norm_x.is_zero() {
        return Err(DhymError::ZeroTotalCharge);
    }
    // Im(Z_Y / Z_X) = Im(Z_Y · conj Z_X) / |Z_X|², and |Z_X|² > 0.
    let im = &z_y.value.im * &z_x.value.re - &z_y.value.re * &z_x.value.im;
    let sign = match im.cmp(&Rat::zero()) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    };
    let ratio_im = rat_to_f64(&(&im / &norm_x));
    Ok(CjyReport { sign, ratio_im, z_y, z_x })
}

/// Lifted angle of a curve or divisor target against `ψ`.
///
/// For a curve `P¹_β` the integral of `(ω + iψ)` has positive real part
/// and the angle is `arctan(q_β)`. For a divisor the integral is, up to
/// a positive factor, `S = Σ_α b_α Π_{β≠α}(1 + i a_β)`; when the divisor
/// class is effective (all `b_α ≥ 0`) every term of `S` lies in an open
/// half-plane around the term phases `Σ_{β≠α} arctan(a_β)`, which pin
/// the continuous lift of `Arg S`. Classes outside the effective cone
/// fall back to the principal branch.
fn target_angle(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    psi: &InvariantClass,
    target: &ChargeTarget,
) -> Result<f64, DhymError> {
    match target {
        ChargeTarget::WholeSpace => Ok(lifted_angle(flag, omega, psi)?.theta_hat),
        ChargeTarget::Curve(beta) => {
            flag.curve_class_decomposition(beta)?;
            let rs = flag.root_system();
            let num = rs.coroot_pairing(psi.weight(), beta).map_err(FlagError::from)?;
            let den = rs.coroot_pairing(omega.weight(), beta).map_err(FlagError::from)?;
            flag.volume(omega)?;
            Ok(rat_to_f64(&(num / den)).atan())
        }
        ChargeTarget::Divisor(lambda_y) => {
            let a = flag.eigenvalues(omega, psi)?;
            let b = flag.eigenvalues(omega, lambda_y)?;
            if b.iter().all(|x| x.is_zero()) {
                return Err(DhymError::ZeroTotalCharge);
            }
            let atans: Vec<f64> = a.iter().map(|q| rat_to_f64(q).atan()).collect();
            let full: f64 = atans.iter().sum();
            let mut sum = GaussRat::new(Rat::zero(), Rat::zero());
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            let mut effective = true;
            for (alpha, b_alpha) in b.iter().enumerate() {
                if b_alpha.is_zero() {
                    continue;
                }
                if b_alpha.is_negative() {
                    effective = false;
                }
                let mut prod = GaussRat::new(b_alpha.clone(), Rat::zero());
                for (beta, a_beta) in a.iter().enumerate() {
                    if beta != alpha {
                        prod *= GaussRat::new(Rat::one(), a_beta.clone());
                    }
                }
                sum += prod;
                let term = full - atans[alpha];
                lo = lo.min(term);
                hi = hi.max(term);
            }
            let re = rat_to_f64(&sum.re);
            let im = rat_to_f64(&sum.im);
            if !effective {
                return Ok(im.atan2(re));
            }
            // Term phases span strictly less than π, so rotating by the
            // midpoint puts the sum in the right half-plane; the lift is
            // the midpoint plus a principal angle.
            let mid = (lo + hi) / 2.0;
            let (sin, cos) = mid.sin_cos();
            let re_rot = re * cos + im * sin;
            let im_rot = im * cos - re * sin;
            Ok(mid + im_rot.atan2(re_rot))
        }
    }
}

/// `Θ_Y - (Θ̂ - (n - dim Y)·π/2)`: how far the target angle sits above
/// the ambient angle minus the codimension drop.
pub fn phase_defect(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    psi: &InvariantClass,
    target: &ChargeTarget,
) -> Result<DefectReport, DhymError> {
    let theta_hat = lifted_angle(flag, omega, psi)?.theta_hat;
    let theta_y = target_angle(flag, omega, psi, target)?;
    let dim_y = match target {
        ChargeTarget::WholeSpace => flag.dimension(),
        ChargeTarget::Curve(_) => 1,
        ChargeTarget::Divisor(_) => flag.dimension().saturating_sub(1),
    };
    let codim = (flag.dimension() - dim_y) as f64;
    let defect = theta_y - (theta_hat - codim * PI / 2.0);
    Ok(DefectReport { theta_y, theta_hat, defect })
}
