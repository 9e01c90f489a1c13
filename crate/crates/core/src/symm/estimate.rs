//! How many keys survive the splitting test, and how large `n` must be for
//! that number to be `O(1)`.

use std::f64::consts::E;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::sn::omega_size;
use crate::error::{Error, Result};

/// Expected number of `k` for which `f - k` splits completely, when the
/// non-constant lower coefficients of `f` are uniform.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedCandidates {
    /// `C(p + n - 1, n) / p^(n - 1)` in lowest terms.
    pub exact: BigRational,
    /// `(p / n!) * prod_{i < n} (1 + i/p)` evaluated in floating point.
    pub approx: f64,
}

pub fn expected_candidates_exact(p: u128, n: u64) -> Result<BigRational> {
    if n == 0 || p < 2 {
        return Err(Error::InvalidInput(format!("need n >= 1 and p >= 2, got n = {n}, p = {p}")));
    }
    let denom = num_traits::pow(BigUint::from(p), (n - 1) as usize);
    Ok(BigRational::new(omega_size(p, n).into(), denom.into()))
}

/// Natural log of the expected candidate count, through the product form.
pub fn ln_expected_candidates(p: f64, n: u64) -> Result<f64> {
    if n == 0 || p.is_nan() || p < 2.0 {
        return Err(Error::InvalidInput(format!("need n >= 1 and p >= 2, got n = {n}, p = {p}")));
    }
    let ln_factorial: f64 = (2..=n).map(|i| (i as f64).ln()).sum();
    let correction: f64 = (1..n).map(|i| (i as f64 / p).ln_1p()).sum();
    Ok(p.ln() - ln_factorial + correction)
}

pub fn expected_candidates_approx(p: f64, n: u64) -> Result<f64> {
    ln_expected_candidates(p, n).map(f64::exp)
}

pub fn expected_candidates(p: u128, n: u64) -> Result<ExpectedCandidates> {
    Ok(ExpectedCandidates {
        exact: expected_candidates_exact(p, n)?,
        approx: expected_candidates_approx(p as f64, n)?,
    })
}

/// Principal branch of the Lambert W function for `t >= 0`.
///
/// Halley iteration from `ln t - ln ln t` for large `t` and from `ln(1 + t)`
/// otherwise. The residual `|W e^W - t|` stays below `1e-12 * max(1, t)`.
pub fn lambert_w(t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::OutOfDomain(format!("lambert_w({t}) needs t >= 0")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut w = if t > 3.0 {
        let l1 = t.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    } else {
        t.ln_1p()
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - t;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(w)
}

/// Estimate of `n` with `n! = r`, given `ln r > 1`:
/// `n ~ ln(r/e) / W(ln(r/e) / e)`.
///
/// The value returned is the real `x` solving `e (x/e)^x = r`, which lies in
/// `[n, n + 1]` for integer `n` with `n! = r`.
pub fn invert_factorial(ln_r: f64) -> Result<f64> {
    if ln_r.is_nan() || ln_r <= 1.0 {
        return Err(Error::OutOfDomain(format!(
            "invert_factorial needs r > e, got ln r = {ln_r}"
        )));
    }
    let l = ln_r - 1.0;
    Ok(l / lambert_w(l / E)?)
}

/// `ln p / ln ln p`: above this many users the expected number of
/// candidate keys is `O(1)`. Needs `p >= 16`.
pub fn threshold_n(p: f64) -> Result<f64> {
    if p.is_nan() || p < 16.0 {
        return Err(Error::OutOfDomain(format!("threshold_n needs p >= 16, got {p}")));
    }
    let l = p.ln();
    Ok(l / l.ln())
}

impl ExpectedCandidates {
    /// The exact value rounded to `f64`.
    pub fn exact_f64(&self) -> f64 {
        ratio_to_f64(&self.exact)
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
