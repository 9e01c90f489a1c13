//! Random primes for instance generation and the prime statistics.

use rand::Rng;
use secfilter::ffield::{factorize, is_prime, Factorization};

use crate::error::{CliError, CliResult};

/// A uniform odd integer with exactly `bits` bits, advanced to the next
/// prime; wraps to the bottom of the range if it runs off the top.
pub fn random_prime<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> CliResult<u128> {
    if !(3..=127).contains(&bits) {
        return Err(CliError::Usage(format!("prime bit size must be in 3..=127, got {bits}")));
    }
    let lo = 1u128 << (bits - 1);
    let hi = (1u128 << bits) - 1;
    let mut x = rng.gen_range(lo..=hi) | 1;
    loop {
        if is_prime(x) {
            return Ok(x);
        }
        x = if x + 2 > hi { lo | 1 } else { x + 2 };
    }
}

/// Whether some divisor `d` of `p - 1` satisfies `p^alpha <= d <= p^beta`.
pub fn has_divisor_in_range(p: u128, fact: &Factorization, alpha: f64, beta: f64) -> bool {
    let ln_p = (p as f64).ln();
    // a little slack so that exact powers are not lost to rounding
    let eps = 1e-12;
    fact.divisors().into_iter().any(|d| {
        let r = (d as f64).ln() / ln_p;
        r >= alpha - eps && r <= beta + eps
    })
}

/// Smallest divisor of `p - 1` in `[p^alpha, p^beta]`.
pub fn smallest_divisor_in_range(p: u128, alpha: f64, beta: f64) -> CliResult<Option<u128>> {
    let fact = factorize(p - 1)?;
    let ln_p = (p as f64).ln();
    Ok(fact.divisors().into_iter().find(|&d| {
        let r = (d as f64).ln() / ln_p;
        r >= alpha - 1e-12 && r <= beta + 1e-12
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primes_have_the_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for bits in [3u32, 8, 20, 32, 61, 90] {
            for _ in 0..5 {
                let p = random_prime(bits, &mut rng).unwrap();
                assert!(is_prime(p));
                assert_eq!(128 - p.leading_zeros(), bits);
            }
        }
        assert!(random_prime(2, &mut rng).is_err());
    }

    #[test]
    fn divisor_ranges() {
        // 31 - 1 = 30: divisors 1 2 3 5 6 10 15 30
        let fact = factorize(30).unwrap();
        assert!(has_divisor_in_range(31, &fact, 0.0, 1.0));
        assert!(has_divisor_in_range(31, &fact, 0.45, 0.5)); // 5 = 31^0.469
        assert!(!has_divisor_in_range(31, &fact, 0.70, 0.75)); // 31^0.7 = 11.0, 31^0.75 = 13.1
        assert_eq!(smallest_divisor_in_range(31, 0.4, 0.55).unwrap(), Some(5));
    }
}
