//! Root systems of the finite simple types.
//!
//! The Cartan matrix convention is `C[i][j] = 2⟨α_i, α_j⟩ / ⟨α_j, α_j⟩`,
//! so row `i` expands the simple root `α_i` over the fundamental weights:
//! `α_i = Σ_j C[i][j] ϖ_j`. Lengths are fixed by the minimal integer
//! symmetrizer `d` with `⟨α_i, α_i⟩ = 2 d_i` and `gcd(d_1, …, d_r) = 1`;
//! symmetry of the bilinear form then reads `d_i C[j][i] = d_j C[i][j]`.
//!
//! Positive roots are generated from the simple roots by root strings:
//! for a positive root `β`, the sum `β + α_i` is again a root exactly when
//! `p - ⟨β, α_i∨⟩ > 0`, where `p` is the largest `k` with `β - k α_i` a
//! root. Walking heights in increasing order makes the string length `p`
//! available before it is needed, so the closure terminates with the full
//! positive system and no candidates are ever revisited.
//!
//! Everything exported here is exact: coroot pairings of rational weight
//! vectors are rationals, never floats.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Arbitrary-precision rational, the scalar type of the whole crate.
pub type Rat = BigRational;

/// Shorthand used throughout the crate for exact integer literals.
pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The seven infinite-or-exceptional simple series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    /// Ranks for which a simple root system of this series exists and is
    /// not a relabeling of an earlier entry in the same series.
    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Series {
    type Err = RootSysError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            "E" | "e" => Ok(Series::E),
            "F" | "f" => Ok(Series::F),
            "G" | "g" => Ok(Series::G),
            _ => Err(RootSysError::UnknownSeries { token: s.to_string() }),
        }
    }
}

/// Errors from root-system construction and pairing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootSysError {
    /// The requested (series, rank) pair does not name a simple type.
    #[error("no simple root system of type {series}{rank}")]
    InvalidCartanType { series: Series, rank: usize },
    /// A coordinate vector does not match the rank of the system.
    #[error("coordinate vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    /// A series letter outside A..G.
    #[error("unknown series letter {token:?} (expected one of A, B, C, D, E, F, G)")]
    UnknownSeries { token: String },
}

/// A Cartan matrix together with its type label and symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    pub series: Series,
    pub rank: usize,
    /// `matrix[i][j] = ⟨α_i, α_j∨⟩`. Rows expand simple roots over
    /// fundamental weights.
    pub matrix: Vec<Vec<i64>>,
    /// Minimal positive integers with `d_i C[j][i] = d_j C[i][j]` and
    /// gcd 1; `⟨α_i, α_i⟩ = 2 d_i`.
    pub symmetrizer: Vec<i64>,
}

/// A positive root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    /// Nonnegative integer coefficients over the simple roots.
    pub coeffs: Vec<i64>,
    /// Sum of the coefficients.
    pub height: i64,
    /// `⟨β, β⟩` in the symmetrizer normalization; always a positive
    /// integer, stored as a rational for direct use in pairings.
    pub normsq: Rat,
}

impl Root {
    fn new(coeffs: Vec<i64>, cartan: &CartanDatum) -> Self {
        let height = coeffs.iter().sum();
        let mut normsq = BigInt::zero();
        for (i, &ci) in coeffs.iter().enumerate() {
            for (j, &cj) in coeffs.iter().enumerate() {
                normsq += BigInt::from(ci * cj * cartan.symmetrizer[j] * cartan.matrix[i][j]);
            }
        }
        debug_assert!(normsq.is_positive(), "root has nonpositive length");
        Root { coeffs, height, normsq: Rat::from_integer(normsq) }
    }

    /// True when the root is simple (height one).
    pub fn is_simple(&self) -> bool {
        self.height == 1
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            if c == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{}a{}", c, i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A vector of rational coordinates over the fundamental weights
/// `ϖ_1, …, ϖ_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub coords: Vec<Rat>,
}

impl WeightVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        WeightVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        WeightVector { coords: vec![Rat::zero(); rank] }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        WeightVector { coords: coords.iter().map(|&c| rat(c)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// True when every coordinate has denominator one.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Coordinatewise sum; the ranks must agree.
    pub fn add(&self, other: &WeightVector) -> WeightVector {
        debug_assert_eq!(self.rank(), other.rank());
        WeightVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> WeightVector {
        WeightVector { coords: self.coords.iter().map(|c| c * s).collect() }
    }
}

/// A full positive system over a fixed Cartan datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub cartan: CartanDatum,
    /// All positive roots, ordered by height and then by coefficient
    /// vectors with `α_1` leading, so the simple roots come first in
    /// index order.
    pub positive_roots: Vec<Root>,
}

/// Builds the positive system of the given simple type.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem, RootSysError> {
    if !series.admits_rank(rank) {
        return Err(RootSysError::InvalidCartanType { series, rank });
    }
    let matrix = cartan_matrix(series, rank);
    let symmetrizer = minimal_symmetrizer(&matrix);
    let cartan = CartanDatum { series, rank, matrix, symmetrizer };
    let positive_roots = generate_positive_roots(&cartan);
    Ok(RootSystem { cartan, positive_roots })
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// The simple root `α_i` (zero-based index).
    pub fn simple_root(&self, i: usize) -> &Root {
        // Simple roots occupy the first `rank` slots in index order.
        &self.positive_roots[i]
    }

    /// Exact pairing `⟨λ, β∨⟩ = Σ_α λ_α · 2 c_α d_α / ⟨β, β⟩` of a weight
    /// vector against the coroot of `β`.
    pub fn coroot_pairing(&self, lambda: &WeightVector, beta: &Root) -> Result<Rat, RootSysError> {
        let rank = self.rank();
        if lambda.rank() != rank {
            return Err(RootSysError::DimensionMismatch { expected: rank, found: lambda.rank() });
        }
        if beta.coeffs.len() != rank {
            return Err(RootSysError::DimensionMismatch {
                expected: rank,
                found: beta.coeffs.len(),
            });
        }
        let mut acc = Rat::zero();
        for (alpha, coord) in lambda.coords.iter().enumerate() {
            if coord.is_zero() || beta.coeffs[alpha] == 0 {
                continue;
            }
            acc += coord * rat(2 * beta.coeffs[alpha] * self.cartan.symmetrizer[alpha]);
        }
        Ok(acc / &beta.normsq)
    }

    /// `⟨ϖ_α, β∨⟩` for a fundamental weight; always a nonnegative integer.
    pub fn fundamental_coroot_pairing(&self, alpha: usize, beta: &Root) -> Rat {
        let num = rat(2 * beta.coeffs[alpha] * self.cartan.symmetrizer[alpha]);
        let val = num / &beta.normsq;
        debug_assert!(val.is_integer(), "fundamental pairing must be integral");
        val
    }

    /// Expands `β` over the fundamental weights: coordinate `j` is
    /// `⟨β, α_j∨⟩ = Σ_i c_i C[i][j]`.
    pub fn root_to_weight_coords(&self, beta: &Root) -> Result<WeightVector, RootSysError> {
        let rank = self.rank();
        if beta.coeffs.len() != rank {
            return Err(RootSysError::DimensionMismatch {
                expected: rank,
                found: beta.coeffs.len(),
            });
        }
        let coords = (0..rank)
            .map(|j| {
                let mut acc = 0i64;
                for (i, &ci) in beta.coeffs.iter().enumerate() {
                    acc += ci * self.cartan.matrix[i][j];
                }
                rat(acc)
            })
            .collect();
        Ok(WeightVector::new(coords))
    }

    /// The weight `ϱ⁺` with every coordinate one; pairs with `β∨` to the
    /// height of `β` measured against coroots.
    pub fn rho_plus(&self) -> WeightVector {
        WeightVector { coords: vec![Rat::one(); self.rank()] }
    }
}

fn cartan_matrix(series: Series, rank: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let bond = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series {
        Series::A => {
            for i in 0..rank - 1 {
                bond(&mut c, i, i + 1);
            }
        }
        Series::B => {
            // α_r is the short root: ⟨α_{r-1}, α_r∨⟩ = -2.
            for i in 0..rank - 1 {
                bond(&mut c, i, i + 1);
            }
            c[rank - 2][rank - 1] = -2;
        }
        Series::C => {
            // α_r is the long root: ⟨α_r, α_{r-1}∨⟩ = -2.
            for i in 0..rank - 1 {
                bond(&mut c, i, i + 1);
            }
            c[rank - 1][rank - 2] = -2;
        }
        Series::D => {
            // Chain α_1 … α_{r-1} with α_r forked off α_{r-2}.
            for i in 0..rank - 2 {
                bond(&mut c, i, i + 1);
            }
            bond(&mut c, rank - 3, rank - 1);
        }
        Series::E => {
            // Chain α_1 α_3 α_4 … α_r with α_2 forked off α_4.
            bond(&mut c, 0, 2);
            for i in 2..rank - 1 {
                bond(&mut c, i, i + 1);
            }
            bond(&mut c, 1, 3);
        }
        Series::F => {
            // Double bond in the middle: ⟨α_2, α_3∨⟩ = -2.
            for i in 0..rank - 1 {
                bond(&mut c, i, i + 1);
            }
            c[1][2] = -2;
        }
        Series::G => {
            // α_1 short, α_2 long: ⟨α_2, α_1∨⟩ = -3.
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    c
}

/// Solves `d_i C[j][i] = d_j C[i][j]` over the positive rationals by
/// propagating along bonds, then clears denominators to the minimal
/// gcd-one integer vector. All simple Dynkin diagrams are connected, so
/// one sweep from node zero reaches every node.
fn minimal_symmetrizer(matrix: &[Vec<i64>]) -> Vec<i64> {
    let rank = matrix.len();
    let mut d: Vec<Option<Rat>> = vec![None; rank];
    d[0] = Some(Rat::one());
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        let di = d[i].clone().expect("visited node has a value");
        for j in 0..rank {
            if i == j || matrix[i][j] == 0 || d[j].is_some() {
                continue;
            }
            // d_j / d_i = C[j][i] / C[i][j] on the bond (i, j).
            d[j] = Some(&di * rat(matrix[j][i]) / rat(matrix[i][j]));
            queue.push(j);
        }
    }
    let vals: Vec<Rat> = d
        .into_iter()
        .map(|x| x.expect("Dynkin diagram of a simple type is connected"))
        .collect();
    let mut lcm = BigInt::one();
    for v in &vals {
        lcm = num::integer::lcm(lcm, v.denom().clone());
    }
    let ints: Vec<BigInt> = vals.iter().map(|v| (v * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = num::integer::gcd(g, v.clone());
    }
    ints.iter()
        .map(|v| {
            let q = v / &g;
            i64::try_from(&q).expect("symmetrizer entries fit in i64")
        })
        .collect()
}

/// Height-by-height closure of the simple roots under root strings.
fn generate_positive_roots(cartan: &CartanDatum) -> Vec<Root> {
    let rank = cartan.rank;
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut coeffs = vec![0i64; rank];
        coeffs[i] = 1;
        known.insert(coeffs.clone());
        frontier.push(coeffs);
    }
    let mut all: Vec<Vec<i64>> = frontier.clone();
    while !frontier.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &frontier {
            for i in 0..rank {
                // p: how far the string through β extends downward along α_i.
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if probe[i] < 0 || !known.contains(&probe) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 =
                    beta.iter().enumerate().map(|(j, &cj)| cj * cartan.matrix[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    let mut roots: Vec<Root> = all.into_iter().map(|c| Root::new(c, cartan)).collect();
    // Within a height, α_1 leads: compare coefficient vectors so that
    // larger leading entries sort first. This puts the simple roots in
    // index order and matches the documented orderings downstream.
    roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.coeffs.cmp(&a.coeffs)));
    roots
}
