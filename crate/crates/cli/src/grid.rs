//! Parsing of `--alpha` / `--beta` values into a validated threshold grid.

use prsreduct_core::{Fraction, Thresholds};

use crate::error::CliError;

/// Parses a comma-separated list of values, where each item is a single
/// value (`0.6`, `3/5`) or an inclusive range `lo:hi:step`.
pub fn parse_values(text: &str) -> Result<Vec<Fraction>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(Fraction::parse(one)?),
            [lo, hi, step] => out.extend(range(
                Fraction::parse(lo)?,
                Fraction::parse(hi)?,
                Fraction::parse(step)?,
            )?),
            _ => return Err(CliError::Validation(format!("bad value or range {item:?}"))),
        }
    }
    if out.is_empty() {
        return Err(CliError::Validation(format!("no values in {text:?}")));
    }
    Ok(out)
}

fn range(lo: Fraction, hi: Fraction, step: Fraction) -> Result<Vec<Fraction>, CliError> {
    if step.is_zero() {
        return Err(CliError::Validation("range step must be positive".into()));
    }
    // lo + i·step over the common denominator lo.den · step.den
    let den = lo.denom() as u128 * step.denom() as u128;
    let start = lo.numer() as u128 * step.denom() as u128;
    let inc = step.numer() as u128 * lo.denom() as u128;
    let mut out = Vec::new();
    for i in 0u128.. {
        let num = start + i * inc;
        let value = reduce(num, den)?;
        if value > hi {
            break;
        }
        out.push(value);
        if out.len() > 10_000 {
            return Err(CliError::Validation(
                "range has more than 10000 points".into(),
            ));
        }
    }
    Ok(out)
}

fn reduce(num: u128, den: u128) -> Result<Fraction, CliError> {
    let (mut a, mut b) = (num, den);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    let g = a.max(1);
    let (n, d) = (num / g, den / g);
    match (u64::try_from(n), u64::try_from(d)) {
        (Ok(n), Ok(d)) => Ok(Fraction::new(n, d)?),
        _ => Err(CliError::Validation(
            "range value does not fit in 64 bits".into(),
        )),
    }
}

/// β paired with `alpha` when none is given: `max(0, α − 1/5)`.
pub fn default_beta(alpha: Fraction) -> Fraction {
    alpha.saturating_sub(&Fraction::new(1, 5).expect("nonzero denominator"))
}

/// Pairs alphas with betas. `betas` may be absent (default rule), a single
/// value applied to every α, or one value per α.
pub fn thresholds(
    alphas: &[Fraction],
    betas: Option<&[Fraction]>,
) -> Result<Vec<Thresholds>, CliError> {
    let betas: Vec<Fraction> = match betas {
        None => alphas.iter().map(|&a| default_beta(a)).collect(),
        Some([one]) => vec![*one; alphas.len()],
        Some(list) if list.len() == alphas.len() => list.to_vec(),
        Some(list) => {
            return Err(CliError::Validation(format!(
                "{} beta values for {} alpha values",
                list.len(),
                alphas.len()
            )))
        }
    };
    alphas
        .iter()
        .zip(betas)
        .map(|(&a, b)| Thresholds::new(a, b).map_err(CliError::from))
        .collect()
}
