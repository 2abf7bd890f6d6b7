//! Exact invariants of generalized flag varieties.
//!
//! A flag variety is determined by a simple Lie type and a set `I` of
//! marked simple roots (the parabolic set). Every quantity computed by
//! this crate reduces to coroot pairings `⟨λ, β∨⟩` of weight vectors
//! against the positive roots outside the span of `I`. All such pairings
//! are rational, so the whole pipeline runs over arbitrary-precision
//! rationals; floating point enters only at the final step, for angles
//! and for display.
//!
//! Module layout:
//! * [`rootsys`]: Cartan data and positive-root generation for the
//!   finite simple series, plus exact coroot pairings.
//! * [`flag`]: parabolic geometry (the complement set `Φ_I⁺`, volumes,
//!   degrees, curve classes) and the class types built on it.
//! * [`dhym`]: lifted phase angles, window classification, central
//!   charges, and comparison invariants built from them.
//! * [`stability`]: slopes and stability verdicts for split bundles.
//! * [`arith`]: intersection matrices, the slope lattice (gcd of line
//!   bundle degrees), and the induced splitting of the Grothendieck
//!   group.

pub mod arith;
pub mod dhym;
pub mod flag;
pub mod rootsys;
pub mod stability;

pub use rootsys::{Rat, WeightVector};

pub(crate) mod util {
    use num::BigInt;

    /// `k!` as a big integer. `k` stays small (bounded by the number of
    /// positive roots), but the product does not.
    pub fn factorial(k: usize) -> BigInt {
        let mut acc = BigInt::from(1);
        for i in 2..=k {
            acc *= BigInt::from(i);
        }
        acc
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn small_factorials() {
            assert_eq!(factorial(0), BigInt::from(1));
            assert_eq!(factorial(1), BigInt::from(1));
            assert_eq!(factorial(5), BigInt::from(120));
            assert_eq!(factorial(10), BigInt::from(3_628_800));
        }
    }
}
