//! Function generators for `grm gen`.

use grm_core::{FTable, FieldSpec, VecM};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    Zero,
    /// Uniform values from a ChaCha8 stream seeded with `seed`.
    Random {
        seed: u64,
    },
    /// `u ↦ <u,v> + t`.
    Affine {
        v: Vec<u32>,
        t: u32,
    },
    /// `u ↦ c · Π u_i^{e_i}`.
    Monomial {
        coeff: u32,
        exponents: Vec<u32>,
    },
}

/// Parses a monomial spec `c:e_1,...,e_m` (or just `e_1,...,e_m` for `c = 1`).
pub fn parse_monomial(spec: &str) -> Result<GenKind, CliError> {
    let bad = || CliError::Usage(format!("bad monomial `{spec}`, expected c:e1,...,em"));
    let (coeff, exps) = match spec.split_once(':') {
        Some((c, e)) => (c.trim().parse().map_err(|_| bad())?, e),
        None => (1, spec),
    };
    let exponents = parse_codes(exps).map_err(|_| bad())?;
    if exponents.is_empty() {
        return Err(bad());
    }
    Ok(GenKind::Monomial { coeff, exponents })
}

/// Parses `a,b,c` (commas or whitespace).
pub fn parse_codes(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("`{s}` is not a nonnegative integer")))
        })
        .collect()
}

fn check_dim(what: &str, got: usize, m: usize) -> Result<(), CliError> {
    if got != m {
        return Err(CliError::Usage(format!(
            "{what} has {got} coordinates, expected m = {m}"
        )));
    }
    Ok(())
}

pub fn generate(kind: &GenKind, field: &FieldSpec, m: usize) -> Result<FTable, CliError> {
    let table = match kind {
        GenKind::Zero => FTable::zero(field, m)?,
        GenKind::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            FTable::random(field, m, &mut rng)?
        }
        GenKind::Affine { v, t } => {
            check_dim("v", v.len(), m)?;
            for &c in v {
                field.element(c)?;
            }
            FTable::affine(field, &VecM::from_codes(v), field.element(*t)?)?
        }
        GenKind::Monomial { coeff, exponents } => {
            check_dim("exponent list", exponents.len(), m)?;
            let c = field.element(*coeff)?;
            FTable::from_fn(field, m, |u| {
                u.coords()
                    .iter()
                    .zip(exponents)
                    .fold(c, |acc, (&x, &e)| field.mul(acc, field.pow(x, e as u64)))
            })?
        }
    };
    Ok(table)
}
