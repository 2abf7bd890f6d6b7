//! Test-side oracles, deliberately independent of the library's
//! algorithms.
//!
//! The root-system oracle realizes each simple type by explicit vectors
//! in ℚ^N (the classical coordinate models), recovers simple-root
//! coefficients by exact linear solves, and computes every pairing from
//! dot products. The library's closure generation and symmetrizer
//! normalization never enter.
//!
//! The charge oracle expands products like `Π_β (1 + i a_β)` through
//! elementary symmetric polynomials evaluated by explicit subset
//! enumeration, instead of multiplying complex factors.

#![allow(dead_code)]

use flagcalc::rootsys::{Rat, Series};
use num::{BigInt, One, Signed, Zero};

pub fn r(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// n/2 as an exact rational.
fn rh(n: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(2))
}

fn zero_vec(dim: usize) -> Vec<Rat> {
    vec![Rat::zero(); dim]
}

/// `e_i - e_j`.
fn diff(dim: usize, i: usize, j: usize) -> Vec<Rat> {
    let mut v = zero_vec(dim);
    v[i] = Rat::one();
    v[j] = -Rat::one();
    v
}

/// `e_i + e_j`.
fn sum2(dim: usize, i: usize, j: usize) -> Vec<Rat> {
    let mut v = zero_vec(dim);
    v[i] = Rat::one();
    v[j] = Rat::one();
    v
}

fn unit(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = zero_vec(dim);
    v[i] = Rat::one();
    v
}

fn scaled_unit(dim: usize, i: usize, s: i64) -> Vec<Rat> {
    let mut v = zero_vec(dim);
    v[i] = r(s);
    v
}

pub fn dot(u: &[Rat], v: &[Rat]) -> Rat {
    u.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
}

/// A simple system with its full positive system, in ambient exact
/// coordinates.
pub struct EuclideanSystem {
    pub simples: Vec<Vec<Rat>>,
    pub positives: Vec<Vec<Rat>>,
}

/// Solves `Σ_k c_k · simples[k] = v` exactly; `None` when `v` is outside
/// the span. Plain Gaussian elimination on the augmented matrix.
pub fn expand_over_simples(simples: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let dim = v.len();
    let k = simples.len();
    let mut m: Vec<Vec<Rat>> = (0..dim)
        .map(|row| {
            let mut line: Vec<Rat> = simples.iter().map(|s| s[row].clone()).collect();
            line.push(v[row].clone());
            line
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..dim).find(|&x| !m[x][col].is_zero()) else {
            // Simple roots are independent, so this cannot happen for a
            // genuine simple system; bail out defensively.
            return None;
        };
        m.swap(row, pr);
        let pivot = m[row][col].clone();
        for x in 0..dim {
            if x == row || m[x][col].is_zero() {
                continue;
            }
            let f = &m[x][col] / &pivot;
            for c in col..=k {
                let delta = &f * &m[row][c];
                m[x][c] = &m[x][c] - delta;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if m[row..].iter().any(|line| !line[k].is_zero()) {
        return None;
    }
    let mut coeffs = vec![Rat::zero(); k];
    for (pr, col) in pivots {
        coeffs[col] = &m[pr][k] / &m[pr][col];
    }
    Some(coeffs)
}

fn e8_simples() -> Vec<Vec<Rat>> {
    vec![
        vec![rh(1), rh(-1), rh(-1), rh(-1), rh(-1), rh(-1), rh(-1), rh(1)],
        sum2(8, 0, 1),
        diff(8, 1, 0),
        diff(8, 2, 1),
        diff(8, 3, 2),
        diff(8, 4, 3),
        diff(8, 5, 4),
        diff(8, 6, 5),
    ]
}

fn e8_positives() -> Vec<Vec<Rat>> {
    let mut pos = Vec::new();
    for j in 1..8 {
        for i in 0..j {
            pos.push(diff(8, j, i));
            pos.push(sum2(8, i, j));
        }
    }
    // Half-sum roots: coefficient +1/2 on e_7, even number of minus
    // signs among the others.
    for mask in 0u32..128 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut v = zero_vec(8);
        for i in 0..7 {
            v[i] = if mask & (1 << i) != 0 { rh(-1) } else { rh(1) };
        }
        v[7] = rh(1);
        pos.push(v);
    }
    pos
}

/// The classical coordinate model of each simple type. For E₆ and E₇
/// the positive system is carved out of E₈ by exact span membership.
pub fn euclidean_system(series: Series, rank: usize) -> EuclideanSystem {
    match series {
        Series::A => {
            let dim = rank + 1;
            let simples = (0..rank).map(|i| diff(dim, i, i + 1)).collect();
            let mut positives = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    positives.push(diff(dim, i, j));
                }
            }
            EuclideanSystem { simples, positives }
        }
        Series::B => {
            let dim = rank;
            let mut simples: Vec<Vec<Rat>> =
                (0..rank - 1).map(|i| diff(dim, i, i + 1)).collect();
            simples.push(unit(dim, rank - 1));
            let mut positives = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    positives.push(diff(dim, i, j));
                    positives.push(sum2(dim, i, j));
                }
                positives.push(unit(dim, i));
            }
            EuclideanSystem { simples, positives }
        }
        Series::C => {
            let dim = rank;
            let mut simples: Vec<Vec<Rat>> =
                (0..rank - 1).map(|i| diff(dim, i, i + 1)).collect();
            simples.push(scaled_unit(dim, rank - 1, 2));
            let mut positives = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    positives.push(diff(dim, i, j));
                    positives.push(sum2(dim, i, j));
                }
                positives.push(scaled_unit(dim, i, 2));
            }
            EuclideanSystem { simples, positives }
        }
        Series::D => {
            let dim = rank;
            let mut simples: Vec<Vec<Rat>> =
                (0..rank - 1).map(|i| diff(dim, i, i + 1)).collect();
            simples.push(sum2(dim, rank - 2, rank - 1));
            let mut positives = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    positives.push(diff(dim, i, j));
                    positives.push(sum2(dim, i, j));
                }
            }
            EuclideanSystem { simples, positives }
        }
        Series::G => {
            let simples = vec![diff(3, 0, 1), {
                let mut v = zero_vec(3);
                v[0] = r(-2);
                v[1] = Rat::one();
                v[2] = Rat::one();
                v
            }];
            let positives = vec![
                diff(3, 0, 1),
                {
                    let mut v = zero_vec(3);
                    v[0] = r(-2);
                    v[1] = Rat::one();
                    v[2] = Rat::one();
                    v
                },
                diff(3, 2, 0),
                diff(3, 2, 1),
                {
                    let mut v = zero_vec(3);
                    v[0] = Rat::one();
                    v[1] = r(-2);
                    v[2] = Rat::one();
                    v
                },
                {
                    let mut v = zero_vec(3);
                    v[0] = -Rat::one();
                    v[1] = -Rat::one();
                    v[2] = r(2);
                    v
                },
            ];
            EuclideanSystem { simples, positives }
        }
        Series::F => {
            let simples = vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3), {
                let mut v = zero_vec(4);
                v[0] = rh(1);
                v[1] = rh(-1);
                v[2] = rh(-1);
                v[3] = rh(-1);
                v
            }];
            let mut positives = Vec::new();
            for i in 0..4 {
                positives.push(unit(4, i));
                for j in i + 1..4 {
                    positives.push(diff(4, i, j));
                    positives.push(sum2(4, i, j));
                }
            }
            for mask in 0u32..8 {
                let mut v = zero_vec(4);
                v[0] = rh(1);
                for i in 0..3 {
                    v[i + 1] = if mask & (1 << i) != 0 { rh(-1) } else { rh(1) };
                }
                positives.push(v);
            }
            EuclideanSystem { simples, positives }
        }
        Series::E => {
            let simples: Vec<Vec<Rat>> = e8_simples().into_iter().take(rank).collect();
            let positives = e8_positives()
                .into_iter()
                .filter(|v| expand_over_simples(&simples, v).is_some())
                .collect();
            EuclideanSystem { simples, positives }
        }
    }
}

/// One positive root as the oracle sees it: simple-root coefficients,
/// ambient squared length, and both pairing families.
pub struct OracleRoot {
    pub coeffs: Vec<i64>,
    pub normsq: Rat,
    /// `⟨ϖ_α, β∨⟩` for every simple index `α`.
    pub fundamental_pairings: Vec<Rat>,
    /// `⟨β, α_j∨⟩` for every simple index `j`.
    pub simple_pairings: Vec<Rat>,
}

/// All positive roots of the type with oracle-computed data.
pub fn oracle_roots(series: Series, rank: usize) -> Vec<OracleRoot> {
    let sys = euclidean_system(series, rank);
    // Fundamental weights over the simple basis: solve Mᵀ c = e_α with
    // M_kj = 2 (s_k · s_j) / (s_j · s_j).
    let m: Vec<Vec<Rat>> = (0..rank)
        .map(|k| {
            (0..rank)
                .map(|j| {
                    r(2) * dot(&sys.simples[k], &sys.simples[j])
                        / dot(&sys.simples[j], &sys.simples[j])
                })
                .collect()
        })
        .collect();
    let dim = sys.simples[0].len();
    let mt: Vec<Vec<Rat>> = (0..rank)
        .map(|i| (0..rank).map(|j| m[j][i].clone()).collect())
        .collect();
    let mut weights: Vec<Vec<Rat>> = Vec::with_capacity(rank);
    for alpha in 0..rank {
        let mut rhs = vec![Rat::zero(); rank];
        rhs[alpha] = Rat::one();
        let coeffs = solve_square(&mt, &rhs);
        let mut w = zero_vec(dim);
        for (c, s) in coeffs.iter().zip(&sys.simples) {
            for d in 0..dim {
                w[d] = &w[d] + c * &s[d];
            }
        }
        weights.push(w);
    }
    sys.positives
        .iter()
        .map(|beta| {
            let expansion = expand_over_simples(&sys.simples, beta)
                .expect("positive root lies in the simple span");
            let coeffs: Vec<i64> = expansion
                .iter()
                .map(|c| {
                    assert!(c.is_integer() && !c.is_negative(), "expansion {c} not in N");
                    i64::try_from(&c.to_integer()).expect("small coefficient")
                })
                .collect();
            let normsq = dot(beta, beta);
            let fundamental_pairings = weights
                .iter()
                .map(|w| r(2) * dot(w, beta) / &normsq)
                .collect();
            let simple_pairings = sys
                .simples
                .iter()
                .map(|s| r(2) * dot(beta, s) / dot(s, s))
                .collect();
            OracleRoot { coeffs, normsq, fundamental_pairings, simple_pairings }
        })
        .collect()
}

/// Solves a square nonsingular system by elimination.
fn solve_square(a: &[Vec<Rat>], rhs: &[Rat]) -> Vec<Rat> {
    let k = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut line = row.clone();
            line.push(b.clone());
            line
        })
        .collect();
    for col in 0..k {
        let pr = (col..k).find(|&x| !m[x][col].is_zero()).expect("nonsingular");
        m.swap(col, pr);
        let pivot = m[col][col].clone();
        for x in 0..k {
            if x == col || m[x][col].is_zero() {
                continue;
            }
            let f = &m[x][col] / &pivot;
            for c in col..=k {
                let delta = &f * &m[col][c];
                m[x][c] = &m[x][c] - delta;
            }
        }
    }
    (0..k).map(|i| &m[i][k] / &m[i][i]).collect()
}

/// Elementary symmetric values `e_0 … e_n` by explicit subset sums; this
/// is exponential on purpose, as an independent route.
pub fn elementary_symmetric(vals: &[Rat]) -> Vec<Rat> {
    let n = vals.len();
    let mut es = vec![Rat::zero(); n + 1];
    for mask in 0u64..(1u64 << n) {
        let k = mask.count_ones() as usize;
        let mut prod = Rat::one();
        for (i, v) in vals.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod *= v;
            }
        }
        es[k] = &es[k] + prod;
    }
    es
}

/// `(re, im)` of `i^k`.
fn i_pow(k: usize) -> (Rat, Rat) {
    match k % 4 {
        0 => (Rat::one(), Rat::zero()),
        1 => (Rat::zero(), Rat::one()),
        2 => (-Rat::one(), Rat::zero()),
        _ => (Rat::zero(), -Rat::one()),
    }
}

fn cmul(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// `-(-i)^n · Vol · Π_β (1 + i q_β)` via symmetric-function expansion.
pub fn whole_space_charge_oracle(eigs: &[Rat], vol: &Rat) -> (Rat, Rat) {
    let es = elementary_symmetric(eigs);
    let mut acc = (Rat::zero(), Rat::zero());
    for (k, e) in es.iter().enumerate() {
        let (re, im) = i_pow(k);
        acc.0 += re * e;
        acc.1 += im * e;
    }
    let (mre, mim) = i_pow(3 * eigs.len()); // (-i)^n = i^{3n}
    let front = (-vol * mre, -vol * mim);
    cmul(&front, &acc)
}

/// `-(-i)^{n-1} · Vol · Σ_α b_α Π_{β≠α} (1 + i a_β)` via expansion.
pub fn divisor_charge_oracle(a: &[Rat], b: &[Rat], vol: &Rat) -> (Rat, Rat) {
    let n = a.len();
    let mut s = (Rat::zero(), Rat::zero());
    for (alpha, b_alpha) in b.iter().enumerate() {
        if b_alpha.is_zero() {
            continue;
        }
        let reduced: Vec<Rat> =
            a.iter().enumerate().filter(|(i, _)| *i != alpha).map(|(_, v)| v.clone()).collect();
        let es = elementary_symmetric(&reduced);
        for (k, e) in es.iter().enumerate() {
            let (re, im) = i_pow(k);
            s.0 += re * e * b_alpha;
            s.1 += im * e * b_alpha;
        }
    }
    let (mre, mim) = i_pow(3 * (n - 1));
    let front = (-vol * mre, -vol * mim);
    cmul(&front, &s)
}
