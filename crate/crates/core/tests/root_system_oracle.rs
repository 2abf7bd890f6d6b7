//! Cross-checks the generated positive systems against explicit
//! coordinate models for every simple type up to rank eight.

mod oracle;

use std::collections::BTreeMap;

use flagcalc::rootsys::{build_root_system, Series};
use num::{One, Zero};
use oracle::{oracle_roots, OracleRoot};

fn all_types() -> Vec<(Series, usize)> {
    let mut out = Vec::new();
    for rank in 1..=8 {
        out.push((Series::A, rank));
    }
    for rank in 2..=8 {
        out.push((Series::B, rank));
        out.push((Series::C, rank));
    }
    for rank in 3..=8 {
        out.push((Series::D, rank));
    }
    for rank in 6..=8 {
        out.push((Series::E, rank));
    }
    out.push((Series::F, 4));
    out.push((Series::G, 2));
    out
}

#[test]
fn positive_systems_match_the_coordinate_models() {
    for (series, rank) in all_types() {
        let rs = build_root_system(series, rank).unwrap();
        let model = oracle_roots(series, rank);
        assert_eq!(rs.positive_roots.len(), model.len(), "{series}{rank}: root count");

        let by_coeffs: BTreeMap<&[i64], &OracleRoot> =
            model.iter().map(|o| (o.coeffs.as_slice(), o)).collect();
        assert_eq!(by_coeffs.len(), model.len(), "{series}{rank}: model roots distinct");

        // The two normalizations can differ by one global factor, fixed
        // here on the first simple root.
        let first = rs.simple_root(0);
        let scale = &first.normsq / &by_coeffs[first.coeffs.as_slice()].normsq;

        for root in &rs.positive_roots {
            let o = by_coeffs.get(root.coeffs.as_slice()).unwrap_or_else(|| {
                panic!("{series}{rank}: generated root {root} missing from the model")
            });
            assert_eq!(root.normsq, &o.normsq * &scale, "{series}{rank}: length of {root}");
            for alpha in 0..rank {
                assert_eq!(
                    rs.fundamental_coroot_pairing(alpha, root),
                    o.fundamental_pairings[alpha],
                    "{series}{rank}: <w_{}, {root}~> pairing",
                    alpha + 1,
                );
            }
            let wt = rs.root_to_weight_coords(root).unwrap();
            assert_eq!(wt.coords, o.simple_pairings, "{series}{rank}: weight coords of {root}");
        }
    }
}

#[test]
fn rho_pairings_match_and_separate_simples() {
    for (series, rank) in all_types() {
        let rs = build_root_system(series, rank).unwrap();
        let model = oracle_roots(series, rank);
        let by_coeffs: BTreeMap<&[i64], &OracleRoot> =
            model.iter().map(|o| (o.coeffs.as_slice(), o)).collect();
        let rho = rs.rho_plus();
        for root in &rs.positive_roots {
            let pairing = rs.coroot_pairing(&rho, root).unwrap();
            let expected = by_coeffs[root.coeffs.as_slice()]
                .fundamental_pairings
                .iter()
                .fold(oracle::r(0), |acc, p| acc + p);
            assert_eq!(pairing, expected, "{series}{rank}: rho pairing of {root}");
            assert!(pairing >= One::one(), "{series}{rank}: rho pairing below one");
            assert_eq!(pairing.is_one(), root.is_simple(), "{series}{rank}: simplicity of {root}");
            assert!(!pairing.is_zero());
        }
    }
}
