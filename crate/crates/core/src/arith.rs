//! Lattice arithmetic of slopes: the Hodge-Riemann pairing matrix, the
//! slope gcd `τ`, Diophantine prescription of slopes, the slope-zero
//! sublattice of line bundles, natural density of attainable slopes,
//! nef representatives, and the induced splitting of the Grothendieck
//! group.
//!
//! Everything is keyed to the vector of generator degrees
//! `d_α = deg_ω 𝒪_α(1)` over the free indices `α ∈ Δ∖I`. For an
//! integral Kähler class these are positive integers; the slope of the
//! line bundle with exponents `x` is the integer combination
//! `Σ_α d_α x_α`, so the set of attainable slopes is exactly
//! `τ·ℤ` with `τ = gcd_α d_α`.

use crate::flag::{FlagError, KahlerClass, ParabolicGeometry};
use crate::rootsys::{Rat, WeightVector};
use crate::util::factorial;
use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

/// Errors from slope-lattice arithmetic.
#[derive(Debug, Error, PartialEq)]
pub enum ArithError {
    /// The Hodge-Riemann matrix needs at least a surface.
    #[error("operation needs complex dimension at least 2, got {dimension}")]
    DimensionTooSmall { dimension: usize },
    /// Degree arithmetic needs an integral Kähler class.
    #[error("operation requires an integral Kahler class")]
    NotIntegral,
    /// A pivot index that is not a free simple-root index.
    #[error("pivot index {index} is not a free simple-root index")]
    IndexOutOfRange { index: usize },
    /// Density needs a positive sample bound.
    #[error("sample bound must be positive")]
    InvalidSampleCount,
    /// The bounded nef search failed although the guarantee applies;
    /// this indicates an internal inconsistency, not a bad input.
    #[error("no nonnegative solution for m0 = {m0} although tau = 1 and m0 >= bound {bound}")]
    GuaranteeViolated { m0: BigInt, bound: BigInt },
    /// There is no free simple root to generate anything from.
    #[error("operation needs at least one free simple root")]
    NoFreeIndices,
    #[error(transparent)]
    Flag(#[from] FlagError),
}

/// The intersection-form matrix over the Schubert divisor generators.
#[derive(Debug, Clone, PartialEq)]
pub struct HodgeRiemannMatrix {
    /// Row/column labels: the free simple-root indices, increasing.
    pub generators: Vec<usize>,
    /// `entries[i][j] = (n-2)!·(Λ(Ω_i)Λ(Ω_j) - ⟨Ω_i,Ω_j⟩_ω)·Vol(ω)`,
    /// symmetric.
    pub entries: Vec<Vec<Rat>>,
    /// True when every entry is an integer.
    pub integral: bool,
}

/// `τ` with the slope-zero basis and an optional prescribed-slope
/// representative.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeLattice {
    /// gcd of the generator degrees; every line bundle slope is a
    /// multiple of it.
    pub tau: BigInt,
    /// A line bundle hitting the requested slope, when one was requested
    /// and exists.
    pub particular: Option<WeightVector>,
    /// `ξ_α = -q_α·[Ω_γ] + q_γ·[Ω_α]` for free `α ≠ γ`; each has slope
    /// zero.
    pub pic0_basis: Vec<WeightVector>,
    /// The pivot index `γ` the basis is built around.
    pub gamma: usize,
}

/// Outcome of prescribing a slope.
#[derive(Debug, Clone, PartialEq)]
pub enum SlopeSolution {
    /// Integer exponents with the requested slope.
    Solution(WeightVector),
    /// The target is not a multiple of `τ`.
    Unsolvable { tau: BigInt },
}

/// Outcome of the bounded nonnegative search.
#[derive(Debug, Clone, PartialEq)]
pub enum NefSolution {
    /// Nonnegative integer exponents with the requested slope.
    Solution(WeightVector),
    /// No nonnegative representative below the guarantee threshold.
    NotFound,
}

/// Natural density data of the attainable-slope set.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    /// `|{1 ≤ m ≤ n : τ | m}| = floor(n/τ)`.
    pub count: BigInt,
    /// The limiting density `1/τ`.
    pub limit: Rat,
    /// `τ/n`, a strict bound on `1/τ - count/n`.
    pub bound: Rat,
}

/// The Grothendieck-group splitting summary.
#[derive(Debug, Clone, PartialEq)]
pub struct K0Report {
    pub lattice: SlopeLattice,
    /// Index of the span of `pic0_basis` inside the full slope-zero
    /// sublattice; one exactly when the basis generates it.
    pub pic0_index: BigInt,
    pub statement: String,
}

/// Bézout triple `(g, x, y)` with `x·a + y·b = g` and `g ≥ 0`.
fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let eg = a.extended_gcd(b);
    if eg.gcd.is_negative() {
        (-eg.gcd, -eg.x, -eg.y)
    } else {
        (eg.gcd, eg.x, eg.y)
    }
}

fn lambda_contraction(
    flag: &ParabolicGeometry,
    alpha: usize,
    omega_pairings: &[Rat],
) -> Rat {
    let rs = flag.root_system();
    let mut acc = Rat::zero();
    for (beta, w) in flag.complement_roots().iter().zip(omega_pairings) {
        acc += rs.fundamental_coroot_pairing(alpha, beta) / w;
    }
    acc
}

/// `Q_ω(Ω_i, Ω_j)` over the free generators.
pub fn hodge_riemann_matrix(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
) -> Result<HodgeRiemannMatrix, ArithError> {
    let n = flag.dimension();
    if n < 2 {
        return Err(ArithError::DimensionTooSmall { dimension: n });
    }
    let vol = flag.volume(omega)?;
    let omega_pairings = flag.pairings(omega.weight())?;
    let generators: Vec<usize> = flag.free_indices().to_vec();
    let rs = flag.root_system();
    let lambdas: Vec<Rat> =
        generators.iter().map(|&a| lambda_contraction(flag, a, &omega_pairings)).collect();
    let scale = Rat::from_integer(factorial(n - 2)) * vol;
    let rho = generators.len();
    let mut entries = vec![vec![Rat::zero(); rho]; rho];
    for i in 0..rho {
        for j in i..rho {
            let mut inner = Rat::zero();
            for (beta, w) in flag.complement_roots().iter().zip(&omega_pairings) {
                inner += rs.fundamental_coroot_pairing(generators[i], beta)
                    * rs.fundamental_coroot_pairing(generators[j], beta)
                    / (w * w);
            }
            let q = (&lambdas[i] * &lambdas[j] - inner) * &scale;
            entries[i][j] = q.clone();
            entries[j][i] = q;
        }
    }
    let integral = entries.iter().flatten().all(|e| e.is_integer());
    Ok(HodgeRiemannMatrix { generators, entries, integral })
}

/// Degrees `d_α = deg_ω 𝒪_α(1)` over the free indices, as exact
/// integers. Requires an integral Kähler class.
pub fn generator_degrees(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
) -> Result<Vec<BigInt>, ArithError> {
    if !omega.is_integral() {
        return Err(ArithError::NotIntegral);
    }
    if flag.free_indices().is_empty() {
        return Err(ArithError::NoFreeIndices);
    }
    let mut degs = Vec::new();
    for &alpha in flag.free_indices() {
        let mut coords = vec![Rat::zero(); flag.rank()];
        coords[alpha] = Rat::one();
        let class = flag.invariant(WeightVector::new(coords))?;
        let d = flag.degree(omega, &class)?;
        // Degrees of line bundles against an integral class are
        // integers; a failure here is an arithmetic bug, not bad input.
        assert!(d.is_integer(), "generator degree {d} is not an integer");
        degs.push(d.to_integer());
    }
    Ok(degs)
}

/// `τ = gcd_α deg_ω 𝒪_α(1)`, a positive integer.
pub fn tau(flag: &ParabolicGeometry, omega: &KahlerClass) -> Result<BigInt, ArithError> {
    let degs = generator_degrees(flag, omega)?;
    let mut g = BigInt::zero();
    for d in &degs {
        g = g.gcd(d);
    }
    Ok(g)
}

fn spread_free(flag: &ParabolicGeometry, xs: &[BigInt]) -> WeightVector {
    let mut w = WeightVector::zero(flag.rank());
    for (&alpha, x) in flag.free_indices().iter().zip(xs) {
        w.coords[alpha] = Rat::from_integer(x.clone());
    }
    w
}

/// Integer exponents with slope exactly `m0`, by iterated extended
/// Euclid over the generator degrees; `Unsolvable` exactly when
/// `τ ∤ m0`.
pub fn solve_slope(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    m0: &BigInt,
) -> Result<SlopeSolution, ArithError> {
    let degs = generator_degrees(flag, omega)?;
    // Fold Bezout coefficients: after step k, sum(coeffs·degs[..=k]) = g.
    let mut g = degs[0].clone();
    let mut coeffs = vec![BigInt::one()];
    for d in &degs[1..] {
        let (gcd, x, y) = egcd(&g, d);
        for c in coeffs.iter_mut() {
            *c *= &x;
        }
        coeffs.push(y);
        g = gcd;
    }
    if !(m0 % &g).is_zero() {
        return Ok(SlopeSolution::Unsolvable { tau: g });
    }
    let scale = m0 / &g;
    let xs: Vec<BigInt> = coeffs.into_iter().map(|c| c * &scale).collect();
    debug_assert_eq!(
        xs.iter().zip(&degs).map(|(x, d)| x * d).sum::<BigInt>(),
        m0.clone()
    );
    Ok(SlopeSolution::Solution(spread_free(flag, &xs)))
}

fn resolve_gamma(flag: &ParabolicGeometry, gamma: Option<usize>) -> Result<usize, ArithError> {
    let free = flag.free_indices();
    match gamma {
        None => free.first().copied().ok_or(ArithError::NoFreeIndices),
        Some(g) => {
            if free.contains(&g) {
                Ok(g)
            } else {
                Err(ArithError::IndexOutOfRange { index: g })
            }
        }
    }
}

/// Slope-zero basis `ξ_α = -q_α·[Ω_γ] + q_γ·[Ω_α]` with
/// `q_α = d_α / τ`, for the free indices `α ≠ γ` in increasing order.
pub fn pic0_generators(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    gamma: Option<usize>,
) -> Result<Vec<WeightVector>, ArithError> {
    let gamma = resolve_gamma(flag, gamma)?;
    let degs = generator_degrees(flag, omega)?;
    let t = tau(flag, omega)?;
    let q: Vec<BigInt> = degs.iter().map(|d| d / &t).collect();
    let free = flag.free_indices();
    let gamma_pos = free.iter().position(|&a| a == gamma).expect("gamma is free");
    let mut basis = Vec::new();
    for (pos, &alpha) in free.iter().enumerate() {
        if alpha == gamma {
            continue;
        }
        let mut w = WeightVector::zero(flag.rank());
        w.coords[gamma] = Rat::from_integer(-q[pos].clone());
        w.coords[alpha] = Rat::from_integer(q[gamma_pos].clone());
        basis.push(w);
    }
    Ok(basis)
}

/// Natural density of the attainable slopes among `1..=n`: the exact
/// count `floor(n/τ)`, the limit `1/τ`, and the error bound `τ/n`.
pub fn density(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    n: u64,
) -> Result<DensityReport, ArithError> {
    if n == 0 {
        return Err(ArithError::InvalidSampleCount);
    }
    let t = tau(flag, omega)?;
    let n_int = BigInt::from(n);
    let count = &n_int / &t;
    let limit = Rat::new(BigInt::one(), t.clone());
    let bound = Rat::new(t, n_int);
    Ok(DensityReport { count, limit, bound })
}

/// Bounded search for nonnegative exponents with slope `m0`. Each
/// coordinate is capped by `m0 / d_α`; subtree feasibility is pruned
/// with suffix gcds. `NotFound` can only be reported below the nef
/// guarantee `m0 ≥ (d_γ - 1)·Σ_{α≠γ} d_α` for `τ = 1`; at or above it a
/// fruitless search is escalated to [`ArithError::GuaranteeViolated`].
pub fn nef_solve(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    m0: &BigInt,
    gamma: Option<usize>,
) -> Result<NefSolution, ArithError> {
    let gamma = resolve_gamma(flag, gamma)?;
    let degs = generator_degrees(flag, omega)?;
    let t = tau(flag, omega)?;
    let found = if m0.is_negative() { None } else { search_nonnegative(&degs, m0) };
    match found {
        Some(xs) => {
            debug_assert_eq!(xs.iter().zip(&degs).map(|(x, d)| x * d).sum::<BigInt>(), m0.clone());
            Ok(NefSolution::Solution(spread_free(flag, &xs)))
        }
        None => {
            let gamma_pos =
                flag.free_indices().iter().position(|&a| a == gamma).expect("gamma is free");
            let rest: BigInt =
                degs.iter().enumerate().filter(|(i, _)| *i != gamma_pos).map(|(_, d)| d).sum();
            let bound = (&degs[gamma_pos] - BigInt::one()) * rest;
            if t.is_one() && m0 >= &bound {
                return Err(ArithError::GuaranteeViolated { m0: m0.clone(), bound });
            }
            Ok(NefSolution::NotFound)
        }
    }
}

fn search_nonnegative(degs: &[BigInt], target: &BigInt) -> Option<Vec<BigInt>> {
    // suffix_gcd[i] = gcd(degs[i..]); a remainder is feasible for the
    // suffix only if the suffix gcd divides it.
    let k = degs.len();
    let mut suffix_gcd = vec![BigInt::zero(); k + 1];
    for i in (0..k).rev() {
        suffix_gcd[i] = degs[i].gcd(&suffix_gcd[i + 1]);
    }
    let mut xs = vec![BigInt::zero(); k];
    fn go(
        degs: &[BigInt],
        suffix_gcd: &[BigInt],
        idx: usize,
        remaining: &BigInt,
        xs: &mut Vec<BigInt>,
    ) -> bool {
        if idx == degs.len() {
            return remaining.is_zero();
        }
        if !(remaining % &suffix_gcd[idx]).is_zero() {
            return false;
        }
        if idx == degs.len() - 1 {
            // Divisibility just checked; the last coordinate is forced.
            xs[idx] = remaining / &degs[idx];
            return true;
        }
        let cap = remaining / &degs[idx];
        let mut x = BigInt::zero();
        while x <= cap {
            let rest = remaining - &x * &degs[idx];
            if (rest.clone() % &suffix_gcd[idx + 1]).is_zero() {
                xs[idx] = x.clone();
                if go(degs, suffix_gcd, idx + 1, &rest, xs) {
                    return true;
                }
            }
            x += 1;
        }
        false
    }
    if go(degs, &suffix_gcd, 0, target, &mut xs) {
        Some(xs)
    } else {
        None
    }
}

/// Assembles `τ`, the slope-zero basis, and (optionally) a particular
/// solution of `μ = m0` into one lattice description.
pub fn slope_lattice(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    m0: Option<&BigInt>,
    gamma: Option<usize>,
) -> Result<SlopeLattice, ArithError> {
    let gamma = resolve_gamma(flag, gamma)?;
    let t = tau(flag, omega)?;
    let pic0_basis = pic0_generators(flag, omega, Some(gamma))?;
    let particular = match m0 {
        None => None,
        Some(m) => match solve_slope(flag, omega, m)? {
            SlopeSolution::Solution(w) => Some(w),
            SlopeSolution::Unsolvable { .. } => None,
        },
    };
    Ok(SlopeLattice { tau: t, particular, pic0_basis, gamma })
}

/// A readable line-bundle label like `O_1(-8) ⊗ O_2(5)` from exponents
/// over the free indices (one-based in the label).
pub fn line_bundle_label(flag: &ParabolicGeometry, w: &WeightVector) -> String {
    let mut parts = Vec::new();
    for &alpha in flag.free_indices() {
        let c = &w.coords[alpha];
        if !c.is_zero() {
            parts.push(format!("O_{}({})", alpha + 1, c));
        }
    }
    if parts.is_empty() {
        "O".to_string()
    } else {
        parts.join(" ⊗ ")
    }
}

/// Grothendieck-group splitting: `K0 = SK0 ⊕ Pic0 ⊕ τℤ`, with the
/// slope-zero basis and its index inside the full slope-zero sublattice.
pub fn k0_report(
    flag: &ParabolicGeometry,
    omega: &KahlerClass,
    gamma: Option<usize>,
) -> Result<K0Report, ArithError> {
    let lattice = slope_lattice(flag, omega, None, gamma)?;
    let degs = generator_degrees(flag, omega)?;
    let pic0_index = basis_index_in_kernel(flag, &degs, &lattice.pic0_basis);
    let basis_str = if lattice.pic0_basis.is_empty() {
        "trivial".to_string()
    } else {
        lattice
            .pic0_basis
            .iter()
            .map(|w| line_bundle_label(flag, w))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut statement = format!(
        "K0 = SK0 (+) Pic0 (+) {}Z; Pic0 basis: {}; SK0 not computed",
        lattice.tau, basis_str
    );
    if !pic0_index.is_one() {
        statement.push_str(&format!(
            "; warning: basis spans an index-{pic0_index} sublattice of the slope-zero lattice"
        ));
    }
    Ok(K0Report { lattice, pic0_index, statement })
}

/// Index of the span of `basis` inside the full kernel lattice of the
/// degree form, computed from a unimodular kernel basis. Returns one for
/// the rank-zero case.
fn basis_index_in_kernel(
    flag: &ParabolicGeometry,
    degs: &[BigInt],
    basis: &[WeightVector],
) -> BigInt {
    let rho = degs.len();
    if rho <= 1 {
        return BigInt::one();
    }
    let kernel = kernel_basis(degs);
    debug_assert_eq!(kernel.len(), rho - 1);
    // Express each ξ over the kernel basis (free coordinates only) and
    // take the determinant of the coefficient matrix.
    let free = flag.free_indices();
    let a: Vec<Vec<Rat>> = (0..rho)
        .map(|r| kernel.iter().map(|col| Rat::from_integer(col[r].clone())).collect())
        .collect();
    let b: Vec<Vec<Rat>> = (0..rho)
        .map(|r| basis.iter().map(|w| w.coords[free[r]].clone()).collect())
        .collect();
    let m = solve_matrix(a, b);
    det(m).abs().to_integer()
}

/// Columns of a basis of `{x ∈ ℤ^ρ : d·x = 0}`, obtained by unimodular
/// column operations carrying `d` to `(g, 0, …, 0)`.
fn kernel_basis(degs: &[BigInt]) -> Vec<Vec<BigInt>> {
    let rho = degs.len();
    let mut cols: Vec<Vec<BigInt>> = (0..rho)
        .map(|j| (0..rho).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut vals = degs.to_vec();
    for j in 1..rho {
        if vals[j].is_zero() {
            continue;
        }
        let (gcd, x, y) = egcd(&vals[0], &vals[j]);
        let c0 = &vals[0] / &gcd;
        let cj = &vals[j] / &gcd;
        let col0: Vec<BigInt> = (0..rho).map(|i| &x * &cols[0][i] + &y * &cols[j][i]).collect();
        let colj: Vec<BigInt> = (0..rho).map(|i| -&cj * &cols[0][i] + &c0 * &cols[j][i]).collect();
        cols[0] = col0;
        cols[j] = colj;
        vals[0] = gcd;
        vals[j] = BigInt::zero();
    }
    cols.into_iter().skip(1).collect()
}

/// Solves `A·X = B` exactly for a full-column-rank `A` (rows ≥ cols),
/// assuming consistency; both inputs are row-major.
fn solve_matrix(mut a: Vec<Vec<Rat>>, mut b: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let rows = a.len();
    let cols = a[0].len();
    let width = b[0].len();
    let mut pivot_rows = Vec::with_capacity(cols);
    let mut row = 0;
    for col in 0..cols {
        let pr = (row..rows).find(|&r| !a[r][col].is_zero()).expect("full column rank");
        a.swap(row, pr);
        b.swap(row, pr);
        let inv = a[row][col].clone();
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..cols {
                let delta = &factor * &a[row][c];
                a[r][c] = &a[r][c] - delta;
            }
            for c in 0..width {
                let delta = &factor * &b[row][c];
                b[r][c] = &b[r][c] - delta;
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    debug_assert!(b[row..].iter().flatten().all(|x| x.is_zero()), "inconsistent system");
    let mut x = vec![vec![Rat::zero(); width]; cols];
    for (col, &pr) in pivot_rows.iter().enumerate() {
        for c in 0..width {
            x[col][c] = &b[pr][c] / &a[pr][col];
        }
    }
    x
}

/// Determinant by fraction-free-ish Gaussian elimination over rationals.
fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let k = m.len();
    if k == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    for col in 0..k {
        let Some(pr) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pr != col {
            m.swap(col, pr);
            acc = -acc;
        }
        let pivot = m[col][col].clone();
        acc *= &pivot;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..k {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - delta;
            }
        }
    }
    acc
}
