//! Empirical check of the expected number of keys `k` for which `f - k`
//! splits completely over `F_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use secfilter::ffield::PrimeModulus;
use secfilter::symm::expected_candidates_exact;
use secfilter::unipoly::{splits_completely, splitting_test, Poly};

use crate::error::{CliError, CliResult};
use crate::output::ExperimentRow;

/// Upper bound on `p^n` splitting checks in exhaustive mode.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000_000;

/// Width of the acceptance band in Monte Carlo mode, in standard errors.
pub const SE_BAND: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Mode {
    Exhaustive,
    MonteCarlo { samples: u64, seed: u64 },
}

/// Counts over `k` for one polynomial: (complete splits, distinct-root splits).
fn split_counts(f: &Poly) -> CliResult<(u64, u64)> {
    let field = f.field();
    let (mut full, mut distinct) = (0, 0);
    for k in 0..field.p() {
        if splits_completely(&f.sub_constant(k))? {
            full += 1;
            if splitting_test(f, &field.element(k))? {
                distinct += 1;
            }
        }
    }
    Ok((full, distinct))
}

/// The monic degree-`n` polynomial whose coefficients of `x^1..x^(n-1)` are
/// the base-`p` digits of `index`; the constant term is zero, since it is
/// absorbed by the shift `f - k`.
fn indexed_poly(field: PrimeModulus, n: usize, mut index: u128) -> Poly {
    let p = field.p();
    let mut c = vec![0u128; n + 1];
    for slot in c.iter_mut().take(n).skip(1) {
        *slot = index % p;
        index /= p;
    }
    c[n] = 1;
    Poly::from_coeffs(field, c)
}

pub fn cmd_lemma1(p: u128, n: usize, mode: Lemma1Mode) -> CliResult<ExperimentRow> {
    let field = PrimeModulus::new(p)?;
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let expected = expected_candidates_exact(p, n as u64)?;
    match mode {
        Lemma1Mode::Exhaustive => {
            let checks = u32::try_from(n)
                .ok()
                .and_then(|e| p.checked_pow(e))
                .filter(|&c| c <= EXHAUSTIVE_LIMIT)
                .ok_or_else(|| {
                    CliError::Guard(format!(
                        "exhaustive mode needs p^n <= {EXHAUSTIVE_LIMIT} splitting checks \
                         (p = {p}, n = {n}); use Monte Carlo mode"
                    ))
                })?;
            let polys = checks / p;
            let (full, distinct) = (0..polys)
                .into_par_iter()
                .map(|i| split_counts(&indexed_poly(field, n, i)))
                .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
            let denom = BigInt::from(polys);
            let mean = BigRational::new(BigInt::from(full), denom.clone());
            let distinct_mean = BigRational::new(BigInt::from(distinct), denom);
            Ok(ExperimentRow {
                experiment: "lemma1-exhaustive".into(),
                p: Some(p),
                bits: Some(field.bits()),
                n: Some(n),
                alpha: None,
                beta: None,
                samples: Some(polys as u64),
                seed: 0,
                measured: format!("mean={mean} distinct_mean={distinct_mean}"),
                expected: format!("mean={expected}"),
                pass: mean == expected,
            })
        }
        Lemma1Mode::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return Err(CliError::Usage("Monte Carlo mode needs at least 2 samples".into()));
            }
            let counts: Vec<(u64, u64)> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    let mut c: Vec<u128> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                    c[0] = 0;
                    c.push(1);
                    split_counts(&Poly::from_coeffs(field, c))
                })
                .collect::<CliResult<_>>()?;
            let m = samples as f64;
            let mean = counts.iter().map(|c| c.0 as f64).sum::<f64>() / m;
            let var = counts.iter().map(|c| (c.0 as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0);
            let se = (var / m).sqrt();
            let distinct_mean = counts.iter().map(|c| c.1 as f64).sum::<f64>() / m;
            let target = expected.to_f64().unwrap_or(f64::NAN);
            Ok(ExperimentRow {
                experiment: "lemma1-montecarlo".into(),
                p: Some(p),
                bits: Some(field.bits()),
                n: Some(n),
                alpha: None,
                beta: None,
                samples: Some(samples),
                seed,
                measured: format!("mean={mean:.6} se={se:.6} distinct_mean={distinct_mean:.6}"),
                expected: format!("mean={expected} (~{:.6})", target),
                pass: (mean - target).abs() <= SE_BAND * se,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::exit;

    /// Counts by listing every multiset of roots: each multiset of size `n`
    /// gives one (f, k) pair with `f - k` completely split.
    fn multiset_total(p: u128, n: usize) -> u128 {
        fn rec(p: u128, left: usize, min: u128) -> u128 {
            if left == 0 {
                return 1;
            }
            (min..p).map(|r| rec(p, left - 1, r)).sum()
        }
        rec(p, n, 0)
    }

    #[test]
    fn exhaustive_small_cases() {
        let row = cmd_lemma1(7, 2, Lemma1Mode::Exhaustive).unwrap();
        assert!(row.pass, "{}", row.text());
        assert!(row.measured.starts_with("mean=4 "), "{}", row.measured);
        let row = cmd_lemma1(13, 3, Lemma1Mode::Exhaustive).unwrap();
        assert!(row.pass);
        // 455/169 in lowest terms
        assert!(row.measured.starts_with("mean=35/13 "), "{}", row.measured);
        assert_eq!(multiset_total(13, 3), 455);
    }

    #[test]
    fn distinct_count_is_smaller() {
        let row = cmd_lemma1(7, 3, Lemma1Mode::Exhaustive).unwrap();
        // distinct-root splits correspond to 3-subsets: C(7,3)/49 = 35/49 = 5/7
        assert!(row.measured.contains("distinct_mean=5/7"), "{}", row.measured);
    }

    #[test]
    fn guard_refuses_large_enumerations() {
        let err = cmd_lemma1(101, 5, Lemma1Mode::Exhaustive).unwrap_err();
        assert_eq!(err.exit_code(), exit::GUARD);
    }

    #[test]
    fn monte_carlo_within_band() {
        let mode = Lemma1Mode::MonteCarlo { samples: 2000, seed: 3 };
        let a = cmd_lemma1(101, 3, mode).unwrap();
        assert!(a.pass, "{}", a.text());
        assert_eq!(a, cmd_lemma1(101, 3, mode).unwrap());
    }
}
