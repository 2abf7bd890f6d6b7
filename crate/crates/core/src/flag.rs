//! Parabolic geometry: the flag variety attached to a simple type and a
//! marked subset `I` of simple roots.
//!
//! The variety's tangent directions correspond to the positive roots
//! outside the span of `I`; their count is the complex dimension `n`.
//! Cohomology classes invariant under the group action are encoded by
//! weight vectors supported on the free indices `Δ∖I`, so every
//! intersection-theoretic quantity reduces to coroot pairings over the
//! complement set `Φ_I⁺`:
//!
//! * volume of a Kähler class `ω`: `Π_β ⟨λ_ω, β∨⟩ / ⟨ϱ⁺, β∨⟩`,
//! * degree of a class `χ`: `(n-1)! · Σ_β ⟨λ_χ, β∨⟩ / ⟨λ_ω, β∨⟩ · Vol(ω)`,
//! * eigenvalues of `χ` against `ω`: `⟨λ_χ, β∨⟩ / ⟨λ_ω, β∨⟩` per root.
//!
//! Classes with nonzero coordinates on `I` do not descend to the flag
//! variety; constructors reject them instead of projecting silently.

use crate::rootsys::{Rat, Root, RootSysError, RootSystem, WeightVector};
use crate::util::factorial;
use num::{One, Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

/// Errors from flag-variety construction and intersection numbers.
#[derive(Debug, Error, PartialEq)]
pub enum FlagError {
    /// A simple-root index outside `0..rank`.
    #[error("simple-root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    /// A class that is not strictly positive on the free indices or not
    /// zero on the parabolic ones.
    #[error("class is not Kahler: offending coordinate index {index}")]
    NotKahler { index: usize },
    /// A curve label that is not one of the positive roots outside `I`.
    #[error("root {coeffs:?} does not lie outside the parabolic span")]
    RootNotInParabolicSet { coeffs: Vec<i64> },
    /// An invariant class with support meeting `I`.
    #[error("invariant class has nonzero coordinate {index} on the parabolic set")]
    NonzeroOnParabolic { index: usize },
    /// A bundle summand with a fractional exponent.
    #[error("split bundle summand {index} has a non-integer coordinate")]
    NonIntegralSummand { index: usize },
    /// A bundle with no summands.
    #[error("split bundle needs at least one summand")]
    EmptyBundle,
    #[error(transparent)]
    RootSys(#[from] RootSysError),
}

/// A flag variety: a root system with a parabolic set `I`, together with
/// the derived data used by every downstream computation.
#[derive(Debug, Clone)]
pub struct ParabolicGeometry {
    rs: RootSystem,
    parabolic: Vec<usize>,
    free: Vec<usize>,
    /// Positive roots outside the span of `I`, in canonical root order.
    phi: Vec<Root>,
    phi_set: HashSet<Vec<i64>>,
    /// Sum of the roots in `phi`, in fundamental-weight coordinates.
    /// Coordinates on `I` are kept (they are generally nonzero).
    delta_p: WeightVector,
}

impl ParabolicGeometry {
    /// Marks the simple roots listed in `parabolic` (zero-based, any
    /// order, duplicates ignored) and derives the complement geometry.
    pub fn new(rs: RootSystem, parabolic: &[usize]) -> Result<Self, FlagError> {
        let rank = rs.rank();
        let mut mask = vec![false; rank];
        for &i in parabolic {
            if i >= rank {
                return Err(FlagError::IndexOutOfRange { index: i, rank });
            }
            mask[i] = true;
        }
        let parabolic: Vec<usize> = (0..rank).filter(|&i| mask[i]).collect();
        let free: Vec<usize> = (0..rank).filter(|&i| !mask[i]).collect();
        // A root lies in the span of I exactly when its support does:
        // every coefficient outside I is zero.
        let phi: Vec<Root> = rs
            .positive_roots
            .iter()
            .filter(|r| r.coeffs.iter().enumerate().any(|(i, &c)| c != 0 && !mask[i]))
            .cloned()
            .collect();
        let phi_set: HashSet<Vec<i64>> = phi.iter().map(|r| r.coeffs.clone()).collect();
        let mut delta_p = WeightVector::zero(rank);
        for beta in &phi {
            delta_p = delta_p.add(&rs.root_to_weight_coords(beta)?);
        }
        Ok(ParabolicGeometry { rs, parabolic, free, phi, phi_set, delta_p })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Complex dimension: the number of positive roots outside `I`.
    pub fn dimension(&self) -> usize {
        self.phi.len()
    }

    /// The positive roots outside the span of `I`, canonical order.
    pub fn complement_roots(&self) -> &[Root] {
        &self.phi
    }

    pub fn parabolic_indices(&self) -> &[usize] {
        &self.parabolic
    }

    /// Indices of `Δ∖I`, increasing. These label the Schubert divisor
    /// basis and the free coordinates of invariant classes.
    pub fn free_indices(&self) -> &[usize] {
        &self.free
    }

    /// Sum of the complement roots in fundamental-weight coordinates.
    pub fn delta_p(&self) -> &WeightVector {
        &self.delta_p
    }

    pub fn rho_plus(&self) -> WeightVector {
        self.rs.rho_plus()
    }

    fn check_support(&self, w: &WeightVector) -> Result<(), FlagError> {
        if w.rank() != self.rank() {
            return Err(RootSysError::DimensionMismatch {
                expected: self.rank(),
                found: w.rank(),
            }
            .into());
        }
        for &i in &self.parabolic {
            if !w.coords[i].is_zero() {
                return Err(FlagError::NonzeroOnParabolic { index: i });
            }
        }
        Ok(())
    }

    fn check_kahler(&self, w: &WeightVector) -> Result<(), FlagError> {
        if w.rank() != self.rank() {
            return Err(RootSysError::DimensionMismatch {
                expected: self.rank(),
                found: w.rank(),
            }
            .into());
        }
        for i in 0..self.rank() {
            let on_parabolic = self.parabolic.binary_search(&i).is_ok();
            let c = &w.coords[i];
            if on_parabolic != c.is_zero() || (!on_parabolic && c.is_negative()) {
                return Err(FlagError::NotKahler { index: i });
            }
        }
        Ok(())
    }

    /// Wraps a full-rank weight vector as a Kähler class: strictly
    /// positive on `Δ∖I`, zero on `I`.
    pub fn kahler(&self, weight: WeightVector) -> Result<KahlerClass, FlagError> {
        self.check_kahler(&weight)?;
        let integral = weight.is_integral();
        Ok(KahlerClass { weight, integral })
    }

    /// Kähler class from coordinates listed over `Δ∖I` only.
    pub fn kahler_from_free(&self, free_coords: &[Rat]) -> Result<KahlerClass, FlagError> {
        self.kahler(self.spread(free_coords)?)
    }

    /// Wraps a full-rank weight vector as an invariant class: zero on `I`.
    pub fn invariant(&self, weight: WeightVector) -> Result<InvariantClass, FlagError> {
        self.check_support(&weight)?;
        Ok(InvariantClass { weight })
    }

    /// Invariant class from coordinates listed over `Δ∖I` only.
    pub fn invariant_from_free(&self, free_coords: &[Rat]) -> Result<InvariantClass, FlagError> {
        Ok(InvariantClass { weight: self.spread(free_coords)? })
    }

    fn spread(&self, free_coords: &[Rat]) -> Result<WeightVector, FlagError> {
        if free_coords.len() != self.free.len() {
            return Err(RootSysError::DimensionMismatch {
                expected: self.free.len(),
                found: free_coords.len(),
            }
            .into());
        }
        let mut w = WeightVector::zero(self.rank());
        for (&i, c) in self.free.iter().zip(free_coords) {
            w.coords[i] = c.clone();
        }
        Ok(w)
    }

    /// All coroot pairings `⟨λ, β∨⟩` over the complement roots, in
    /// canonical order.
    pub fn pairings(&self, lambda: &WeightVector) -> Result<Vec<Rat>, FlagError> {
        self.phi
            .iter()
            .map(|b| self.rs.coroot_pairing(lambda, b).map_err(FlagError::from))
            .collect()
    }

    /// `Vol(ω) = Π_β ⟨λ_ω, β∨⟩ / ⟨ϱ⁺, β∨⟩`, a positive rational. The
    /// empty flag (I = Δ) has volume one.
    pub fn volume(&self, omega: &KahlerClass) -> Result<Rat, FlagError> {
        self.check_kahler(&omega.weight)?;
        let rho = self.rho_plus();
        let mut vol = Rat::one();
        for beta in &self.phi {
            vol *= self.rs.coroot_pairing(&omega.weight, beta)?
                / self.rs.coroot_pairing(&rho, beta)?;
        }
        Ok(vol)
    }

    /// `deg_ω(χ) = (n-1)! · Σ_β ⟨λ_χ, β∨⟩ / ⟨λ_ω, β∨⟩ · Vol(ω)`.
    pub fn degree(&self, omega: &KahlerClass, class: &InvariantClass) -> Result<Rat, FlagError> {
        self.check_kahler(&omega.weight)?;
        self.check_support(&class.weight)?;
        let n = self.dimension();
        if n == 0 {
            return Ok(Rat::zero());
        }
        let mut sum = Rat::zero();
        for beta in &self.phi {
            sum += self.rs.coroot_pairing(&class.weight, beta)?
                / self.rs.coroot_pairing(&omega.weight, beta)?;
        }
        Ok(Rat::from_integer(factorial(n - 1)) * sum * self.volume(omega)?)
    }

    /// Degree of a split bundle: the degree of its determinant class.
    pub fn bundle_degree(&self, omega: &KahlerClass, bundle: &SplitBundle) -> Result<Rat, FlagError> {
        self.degree(omega, &bundle.determinant())
    }

    /// Per-root eigenvalue list `⟨λ_χ, β∨⟩ / ⟨λ_ω, β∨⟩`, canonical order.
    pub fn eigenvalues(
        &self,
        omega: &KahlerClass,
        class: &InvariantClass,
    ) -> Result<Vec<Rat>, FlagError> {
        self.check_kahler(&omega.weight)?;
        self.check_support(&class.weight)?;
        self.phi
            .iter()
            .map(|beta| {
                Ok(self.rs.coroot_pairing(&class.weight, beta)?
                    / self.rs.coroot_pairing(&omega.weight, beta)?)
            })
            .collect()
    }

    /// Expands the curve class of `β ∈ Φ_I⁺` over the Schubert curve
    /// basis: coordinate `α` is `⟨ϖ_α, β∨⟩` for `α ∈ Δ∖I`, zero on `I`.
    /// The output is always a vector of nonnegative integers.
    pub fn curve_class_decomposition(&self, beta: &Root) -> Result<WeightVector, FlagError> {
        if !self.phi_set.contains(&beta.coeffs) {
            return Err(FlagError::RootNotInParabolicSet { coeffs: beta.coeffs.clone() });
        }
        let mut w = WeightVector::zero(self.rank());
        for &alpha in &self.free {
            w.coords[alpha] = self.rs.fundamental_coroot_pairing(alpha, beta);
        }
        Ok(w)
    }

    /// The anticanonical line bundle, a rank-one split bundle with
    /// exponents `⟨δ_P, α∨⟩` on the free indices.
    pub fn anticanonical(&self) -> SplitBundle {
        let mut w = WeightVector::zero(self.rank());
        for &alpha in &self.free {
            w.coords[alpha] = self.delta_p.coords[alpha].clone();
        }
        SplitBundle { summands: vec![InvariantClass { weight: w }] }
    }
}

/// A Kähler class: strictly positive coordinates on `Δ∖I`, zero on `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KahlerClass {
    weight: WeightVector,
    integral: bool,
}

impl KahlerClass {
    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    /// True when every coordinate is an integer, i.e. the class lifts to
    /// a line bundle.
    pub fn is_integral(&self) -> bool {
        self.integral
    }
}

/// An invariant (1,1)-class: a weight vector supported on `Δ∖I`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantClass {
    weight: WeightVector,
}

impl InvariantClass {
    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn is_integral(&self) -> bool {
        self.weight.is_integral()
    }

    /// Coordinatewise sum. Supports stay inside `Δ∖I`, so no revalidation
    /// is needed.
    pub fn add(&self, other: &InvariantClass) -> InvariantClass {
        InvariantClass { weight: self.weight.add(&other.weight) }
    }

}

/// A direct sum of line bundles on the flag variety, recorded by the
/// multiset of first Chern classes of the summands.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitBundle {
    summands: Vec<InvariantClass>,
}

impl SplitBundle {
    /// A nonempty multiset of integral invariant classes.
    pub fn new(summands: Vec<InvariantClass>) -> Result<Self, FlagError> {
        if summands.is_empty() {
            return Err(FlagError::EmptyBundle);
        }
        for (index, s) in summands.iter().enumerate() {
            if !s.is_integral() {
                return Err(FlagError::NonIntegralSummand { index });
            }
        }
        Ok(SplitBundle { summands })
    }

    pub fn summands(&self) -> &[InvariantClass] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// First Chern class of the whole bundle: the sum of the summand
    /// classes.
    pub fn determinant(&self) -> InvariantClass {
        let rank = self.summands[0].weight.rank();
        let mut acc = InvariantClass { weight: WeightVector::zero(rank) };
        for s in &self.summands {
            acc = acc.add(s);
        }
        acc
    }
}
