//! Slopes and stability predicates for split bundles.
//!
//! The slope of a split bundle is its degree divided by its rank; the
//! normalized slope `μ̂` divides the per-root pairing sum by the rank
//! instead, so that `μ = (n-1)! · μ̂ · Vol(ω)` holds exactly.
//!
//! Stability here is always relative to split subbundles: the candidates
//! quantified over are the nonempty proper sub-multisets of summands.
//! Whether those exhaust all destabilizing subsheaves of a homogeneous
//! split bundle is an open question, so `Unstable` verdicts are sound,
//! `Stable` is only claimed for line bundles, and the intermediate
//! verdicts are documented as relative to this candidate set. Note that
//! a sub-multiset's slope is an average of summand slopes, so for a
//! genuinely split bundle the maximum is attained by a single summand
//! and the `Semistable` verdict (max strictly between the extremes)
//! cannot occur; the enumeration keeps the definition honest anyway.

use crate::flag::{FlagError, KahlerClass, ParabolicGeometry, SplitBundle};
use crate::rootsys::{rat, Rat};
use num::Zero;
use thiserror::Error;

/// Largest rank for which sub-multiset enumeration is attempted.
pub const RANK_CAP: usize = 20;

/// Errors from stability computations.
#[derive(Debug, Error, PartialEq)]
pub enum StabilityError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    /// Sub-multiset enumeration is exponential in the rank.
    #[error("bundle rank {rank} exceeds the enumeration cap {RANK_CAP}")]
    RankTooLarge { rank: usize },
}

/// Stability relative to split subbundles, strongest verdict first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Rank one: no proper split subbundle exists.
    Stable,
    /// Rank at least two with all summand slopes equal.
    Polystable,
    /// No destabilizing sub-multiset, but summand slopes differ.
    Semistable,
    /// Some sub-multiset has slope strictly above the bundle's.
    Unstable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Stable => "stable",
            Verdict::Polystable => "polystable",
            Verdict::Semistable => "semistable",
            Verdict::Unstable => "unstable",
        };
        write!(f, "{s}")
    }
}

/// A sub-multiset of summands together with its slope.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeWitness {
    /// Indices into the bundle's summand list.
    pub indices: Vec<usize>,
    pub slope: Rat,
}

/// Verdict plus the witnessing sub-multiset where one is informative:
/// the destabilizer for `Unstable`, a maximal equal-slope sub-multiset
/// for `Semistable`, nothing otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub witness: Option<SlopeWitness>,
}

/// Restriction degrees of every summand on every generator curve.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionReport {
    /// True when the restriction to every generator curve is semistable,
    /// i.e. all summand degrees agree on each curve.
    pub semistable: bool,
    /// Per free simple-root index, the summand degrees `⟨λ_j, α∨⟩` in
    /// summand order.
    pub degrees: Vec<(usize, Vec<Rat>)>,
}

/// The Einstein constant of the diagonal invariant metric, when the
/// bundle admits one.
#[derive(Debug, Clone, PartialEq)]
pub enum HymConstant {
    /// All summands share the contraction value; the constant is
    /// `pi_coefficient · π` with `pi_coefficient = 2·Λ`.
    Defined { pi_coefficient: Rat, lambda: Rat },
    /// Summands disagree; the distinct per-summand `π`-coefficients, in
    /// first-appearance order.
    Undefined { pi_coefficients: Vec<Rat> },
}

/// `μ(b) = deg(b) / rank(b)`, exact.
pub fn slope(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    bundle: &SplitBundle,
) -> Result<Rat, StabilityError> {
    let deg = flag.bundle_degree(omega, bundle)?;
    Ok(deg / rat(bundle.rank() as i64))
}

/// `μ̂(b) = Σ_β ⟨λ_det, β∨⟩ / (r·⟨λ_ω, β∨⟩)`, exact; satisfies
/// `μ = (n-1)! · μ̂ · Vol(ω)`.
pub fn mu_hat(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    bundle: &SplitBundle,
) -> Result<Rat, StabilityError> {
    let det = bundle.determinant();
    let mut sum = Rat::zero();
    for q in flag.eigenvalues(omega, &det)? {
        sum += q;
    }
    Ok(sum / rat(bundle.rank() as i64))
}

/// Degrees of the summands restricted to each generator curve `P¹_α`,
/// and whether every restriction is semistable (all degrees equal).
pub fn restriction_semistable(
    flag: &ParabolicGeometry,
    bundle: &SplitBundle,
) -> Result<RestrictionReport, StabilityError> {
    let rs = flag.root_system();
    let mut semistable = true;
    let mut degrees = Vec::new();
    for &alpha in flag.free_indices() {
        let simple = rs.simple_root(alpha).clone();
        let per_summand: Vec<Rat> = bundle
            .summands()
            .iter()
            .map(|s| rs.coroot_pairing(s.weight(), &simple).map_err(FlagError::from))
            .collect::<Result<_, _>>()?;
        if per_summand.iter().any(|d| *d != per_summand[0]) {
            semistable = false;
        }
        degrees.push((alpha, per_summand));
    }
    Ok(RestrictionReport { semistable, degrees })
}

/// Stability of a split bundle relative to its split subbundles, by
/// exhaustive enumeration of nonempty proper sub-multisets.
pub fn split_stability(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    bundle: &SplitBundle,
) -> Result<StabilityVerdict, StabilityError> {
    let rank = bundle.rank();
    if rank > RANK_CAP {
        return Err(StabilityError::RankTooLarge { rank });
    }
    if rank == 1 {
        // Validate inputs even though no comparison happens.
        slope(flag, omega, bundle)?;
        return Ok(StabilityVerdict { verdict: Verdict::Stable, witness: None });
    }
    let summand_slopes: Vec<Rat> = bundle
        .summands()
        .iter()
        .map(|s| {
            flag.degree(omega, s).map_err(StabilityError::from)
        })
        .collect::<Result<_, _>>()?;
    if summand_slopes.iter().all(|s| *s == summand_slopes[0]) {
        return Ok(StabilityVerdict { verdict: Verdict::Polystable, witness: None });
    }
    let total = slope(flag, omega, bundle)?;
    // Slope of a sub-multiset is the average of its summand degrees
    // (each summand has rank one).
    let mut best: Option<SlopeWitness> = None;
    // rank <= RANK_CAP < 32, so the shift cannot overflow.
    let full_mask: u32 = (1u32 << rank) - 1;
    for mask in 1..full_mask {
        let mut sum = Rat::zero();
        let mut indices = Vec::new();
        for (i, d) in summand_slopes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += d;
                indices.push(i);
            }
        }
        let s = sum / rat(indices.len() as i64);
        if best.as_ref().is_none_or(|w| s > w.slope) {
            best = Some(SlopeWitness { indices, slope: s });
        }
    }
    let best = best.expect("rank >= 2 has proper sub-multisets");
    if best.slope > total {
        Ok(StabilityVerdict { verdict: Verdict::Unstable, witness: Some(best) })
    } else {
        Ok(StabilityVerdict { verdict: Verdict::Semistable, witness: Some(best) })
    }
}

/// True when `Arg Z(E, P¹_β) > Arg Z(F, P¹_β)` strictly for every
/// generator curve. Both arguments lie in `(0, π)` where the argument is
/// monotone in `⟨λ, β∨⟩ / r`, so the comparison is exact on rationals.
pub fn arg_dominance(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    e: &SplitBundle,
    f: &SplitBundle,
) -> Result<bool, StabilityError> {
    flag.volume(omega)?;
    let rs = flag.root_system();
    let det_e = e.determinant();
    let det_f = f.determinant();
    let re = rat(e.rank() as i64);
    let rf = rat(f.rank() as i64);
    for beta in flag.complement_roots() {
        let pe = rs.coroot_pairing(det_e.weight(), beta).map_err(FlagError::from)?;
        let pf = rs.coroot_pairing(det_f.weight(), beta).map_err(FlagError::from)?;
        if pe / &re <= pf / &rf {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Einstein constant of the induced diagonal metric: defined when every
/// summand has the same contraction value `Λ = Σ_β ⟨λ_j, β∨⟩/⟨λ_ω, β∨⟩`,
/// in which case the constant is `2Λ·π`.
pub fn hym_constant(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    bundle: &SplitBundle,
) -> Result<HymConstant, StabilityError> {
    let mut lambdas = Vec::with_capacity(bundle.rank());
    for s in bundle.summands() {
        let mut lambda = Rat::zero();
        for q in flag.eigenvalues(omega, s)? {
            lambda += q;
        }
        lambdas.push(lambda);
    }
    if lambdas.iter().all(|l| *l == lambdas[0]) {
        let lambda = lambdas.into_iter().next().expect("bundle is nonempty");
        Ok(HymConstant::Defined { pi_coefficient: rat(2) * &lambda, lambda })
    } else {
        let mut distinct: Vec<Rat> = Vec::new();
        for l in lambdas {
            let coeff = rat(2) * l;
            if !distinct.contains(&coeff) {
                distinct.push(coeff);
            }
        }
        Ok(HymConstant::Undefined { pi_coefficients: distinct })
    }
}
