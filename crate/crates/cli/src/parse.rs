//! Flag-spec parsing: type labels, index lists, rational coordinate
//! lists, bundle specs, and target specs.

use std::str::FromStr;

use flagcalc::rootsys::{Rat, Series};
use num::BigInt;

use crate::CliError;

fn parse_err(msg: String) -> CliError {
    CliError::Parse(msg)
}

/// "A2" → (Series::A, 2). One letter, then the rank.
pub fn series_rank(token: &str) -> Result<(Series, usize), CliError> {
    let t = token.trim();
    let mut chars = t.chars();
    let letter = chars
        .next()
        .ok_or_else(|| parse_err("empty type; expected a label like A2".into()))?;
    let series = Series::from_str(&letter.to_string())
        .map_err(|e| parse_err(format!("bad type {t:?}: {e}")))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| parse_err(format!("bad type {t:?}: expected a rank after {letter}")))?;
    Ok((series, rank))
}

/// Comma list of 1-based indices; empty means the Borel case. Returned
/// 0-based.
pub fn index_list(s: &str) -> Result<Vec<usize>, CliError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|item| {
            let n: usize = item
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad index {:?} in {s:?}", item.trim())))?;
            if n == 0 {
                return Err(parse_err("indices are 1-based; 0 is not valid".into()));
            }
            Ok(n - 1)
        })
        .collect()
}

/// Comma list of rationals like "2,1/2,-3".
pub fn rationals(s: &str) -> Result<Vec<Rat>, CliError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(parse_err("empty coordinate list".into()));
    }
    t.split(',')
        .map(|item| {
            Rat::from_str(item.trim())
                .map_err(|_| parse_err(format!("bad rational {:?} in {s:?}", item.trim())))
        })
        .collect()
}

/// Semicolon-separated summands, each a comma list of rationals.
pub fn bundle(s: &str) -> Result<Vec<Vec<Rat>>, CliError> {
    s.trim()
        .split(';')
        .map(rationals)
        .collect::<Result<Vec<_>, _>>()
        .and_then(|summands| {
            if summands.is_empty() {
                Err(parse_err("empty bundle spec".into()))
            } else {
                Ok(summands)
            }
        })
}

pub fn big_int(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s.trim()).map_err(|_| parse_err(format!("bad integer {s:?}")))
}

/// A target cycle: the whole space, the K-th generator curve (1-based,
/// canonical root order), or a divisor by free coordinates.
pub enum TargetSpec {
    Space,
    Curve(usize),
    Divisor(Vec<Rat>),
}

pub fn target(s: &str) -> Result<TargetSpec, CliError> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("space") {
        return Ok(TargetSpec::Space);
    }
    if let Some(rest) = t.strip_prefix("curve:") {
        let k: usize = rest
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad curve index {:?}", rest.trim())))?;
        if k == 0 {
            return Err(parse_err("curve indices are 1-based".into()));
        }
        return Ok(TargetSpec::Curve(k));
    }
    if let Some(rest) = t.strip_prefix("divisor:") {
        return Ok(TargetSpec::Divisor(rationals(rest)?));
    }
    Err(parse_err(format!(
        "bad target {t:?}: expected space, curve:K, or divisor:COORDS"
    )))
}
