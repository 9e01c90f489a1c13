use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use secfilter::ffield::{factorize, PrimeModulus};
use secfilter::scheme::Instance;
use secfilter::Error;

use crate::error::{CliError, CliResult};
use crate::sampling::{has_divisor_in_range, random_prime};

/// Primes drawn before a divisor constraint is declared unsatisfiable.
const PRIME_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub enum PrimeSpec {
    Explicit(u128),
    Bits(u32),
    /// A prime of the given size whose `p - 1` has a divisor in
    /// `[p^alpha, p^beta]`.
    BitsWithDivisor { bits: u32, alpha: f64, beta: f64 },
}

/// A random instance over the specified prime; deterministic in `seed`.
pub fn cmd_generate(spec: &PrimeSpec, n: usize, seed: u64) -> CliResult<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = match *spec {
        PrimeSpec::Explicit(p) => p,
        PrimeSpec::Bits(bits) => random_prime(bits, &mut rng)?,
        PrimeSpec::BitsWithDivisor { bits, alpha, beta } => {
            if !(0.0..=1.0).contains(&alpha) || alpha > beta || beta > 1.0 {
                return Err(CliError::Usage(format!(
                    "divisor range needs 0 <= alpha <= beta <= 1, got [{alpha}, {beta}]"
                )));
            }
            let mut found = None;
            for _ in 0..PRIME_ATTEMPTS {
                let p = random_prime(bits, &mut rng)?;
                if has_divisor_in_range(p, &factorize(p - 1)?, alpha, beta) {
                    found = Some(p);
                    break;
                }
            }
            found.ok_or_else(|| {
                Error::GenerationFailed(format!(
                    "no {bits}-bit prime with a divisor of p - 1 in [p^{alpha}, p^{beta}] \
                     after {PRIME_ATTEMPTS} draws"
                ))
            })?
        }
    };
    let field = PrimeModulus::new(p)?;
    Ok(Instance::generate(field, n, &mut rng)?)
}
