//! Integer factorization: trial division by primes below 10^6, then
//! Brent's variant of Pollard rho on whatever cofactor is left.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::{gcd, is_prime, mul_mod};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;
const DEFAULT_SEED: u64 = 0x5f3c_9d2e_a1b4_7086;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Prime-power factorization `m = prod q_i^e_i`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    /// Builds a factorization from explicit prime powers. Each base must be
    /// prime; bases are merged and sorted.
    pub fn from_prime_powers(powers: &[(u128, u32)]) -> Result<Self> {
        let mut factors: Vec<(u128, u32)> = Vec::new();
        for &(q, e) in powers {
            if !is_prime(q) {
                return Err(Error::NotPrime(q));
            }
            if e == 0 {
                continue;
            }
            match factors.iter_mut().find(|(b, _)| *b == q) {
                Some(entry) => entry.1 += e,
                None => factors.push((q, e)),
            }
        }
        factors.sort_unstable();
        let f = Self { factors };
        f.checked_value()
            .ok_or_else(|| Error::InvalidInput("factored value exceeds 128 bits".into()))?;
        Ok(f)
    }

    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    fn checked_value(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, &(q, e)| acc.checked_mul(q.checked_pow(e)?))
    }

    /// The integer this factorization describes.
    pub fn value(&self) -> u128 {
        self.checked_value().expect("validated at construction")
    }

    /// Number of divisors, `prod (e_i + 1)`.
    pub fn divisor_count(&self) -> u128 {
        self.factors.iter().map(|&(_, e)| e as u128 + 1).product()
    }

    /// All positive divisors in ascending order.
    pub fn divisors(&self) -> Vec<u128> {
        let mut divs = vec![1u128];
        for &(q, e) in &self.factors {
            let current = divs.len();
            let mut power = 1u128;
            for _ in 0..e {
                power *= q;
                for i in 0..current {
                    divs.push(divs[i] * power);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Factors `m >= 2` with the default rho seed.
pub fn factorize(m: u128) -> Result<Factorization> {
    factorize_with_seed(m, DEFAULT_SEED)
}

/// Factors `m >= 2`. The seed only drives the rho walk; the result does not
/// depend on it.
pub fn factorize_with_seed(m: u128, seed: u64) -> Result<Factorization> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("cannot factor {m}")));
    }
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut rest = m;
    for &q in small_primes() {
        let q = q as u128;
        if q * q > rest {
            break;
        }
        if rest.is_multiple_of(q) {
            let mut e = 0;
            while rest.is_multiple_of(q) {
                rest /= q;
                e += 1;
            }
            factors.push((q, e));
        }
    }
    if rest > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stack = vec![rest];
        while let Some(x) = stack.pop() {
            if is_prime(x) {
                match factors.iter_mut().find(|(b, _)| *b == x) {
                    Some(entry) => entry.1 += 1,
                    None => factors.push((x, 1)),
                }
            } else {
                let d = brent_rho(x, &mut rng);
                stack.push(d);
                stack.push(x / d);
            }
        }
    }
    factors.sort_unstable();
    Ok(Factorization { factors })
}

/// Returns a nontrivial factor of the odd composite `n`.
fn brent_rho(n: u128, rng: &mut ChaCha8Rng) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    const BATCH: u128 = 128;
    let diff = |a: u128, b: u128| a.max(b) - a.min(b);
    loop {
        let c = rng.gen_range(1..n);
        let step = |v: u128| {
            let sq = mul_mod(v, v, n);
            // sq + c mod n without overflow
            if sq >= n - c {
                sq - (n - c)
            } else {
                sq + c
            }
        };
        let mut y = rng.gen_range(0..n);
        let (mut g, mut r, mut q) = (1u128, 1u128, 1u128);
        let (mut x, mut ys) = (0u128, 0u128);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, diff(x, y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == n {
            loop {
                ys = step(ys);
                g = gcd(diff(x, ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorize(30).unwrap().factors(), &[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(factorize(2).unwrap().factors(), &[(2, 1)]);
        assert_eq!(factorize(1024).unwrap().factors(), &[(2, 10)]);
        assert_eq!(factorize(999_983).unwrap().factors(), &[(999_983, 1)]);
    }

    #[test]
    fn rejects_below_two() {
        assert!(matches!(factorize(1), Err(Error::InvalidInput(_))));
        assert!(matches!(factorize(0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn strong_prime_order() {
        let q: u128 = 1_000_151;
        assert!(is_prime(q) && is_prime(2 * q + 1));
        assert_eq!(factorize(2 * q).unwrap().factors(), &[(2, 1), (q, 1)]);
    }

    #[test]
    fn large_semiprimes_need_rho() {
        let a: u128 = (1 << 31) - 1;
        let b: u128 = 4_294_967_291; // largest prime below 2^32
        let c: u128 = (1 << 61) - 1;
        assert_eq!(factorize(a * b).unwrap().factors(), &[(a, 1), (b, 1)]);
        assert_eq!(factorize(b * c).unwrap().factors(), &[(b, 1), (c, 1)]);
        let f = factorize(b * b * 1_000_003).unwrap();
        assert_eq!(f.factors(), &[(1_000_003, 1), (b, 2)]);
    }

    #[test]
    fn divisors_of_thirty() {
        let f = factorize(30).unwrap();
        assert_eq!(f.divisors(), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(f.divisor_count(), 8);
    }

    #[test]
    fn from_prime_powers_validates() {
        assert!(Factorization::from_prime_powers(&[(4, 1)]).is_err());
        let f = Factorization::from_prime_powers(&[(3, 1), (2, 2), (3, 1)]).unwrap();
        assert_eq!(f.factors(), &[(2, 2), (3, 2)]);
        assert_eq!(f.value(), 36);
    }
}
