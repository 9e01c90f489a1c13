//! Key-recovery attacks on the secure filter.
//!
//! * [`brute_force_attack`] runs the splitting test for every `k` in `F_p`.
//! * [`value_collision_attack`] samples `a` and tests whether `f - f(a)`
//!   splits; it pays off when `n` is large relative to `p`.
//! * [`tmto_attack`] is the time–memory tradeoff over a split
//!   `p - 1 = d1 * d2`: it computes `x^p - x` modulo
//!   `(f(x) - y, y^d1 - omega)` for each of the `d2` values of `omega` and
//!   reads candidate keys off a common linear factor of the coefficients.
//!
//! Operation counts are reported in two units because the natural unit,
//! "modular polynomial operations", hides the operand size: univariate
//! operations have degree `< n`, bivariate ones are `n x d1` tables.
//! [`OpCount::poly_mul`] counts operations and [`OpCount::coeff_work`]
//! normalizes them to schoolbook coefficient multiplications.

mod bivariate;
mod brute;
mod collision;
pub mod oracle;
mod tmto;

use std::fmt;
use std::time::Duration;

pub use bivariate::{bi_reduce_powmod, BiResidue, BiRing};
pub use brute::{brute_force_attack, brute_force_attack_with_ceiling, DEFAULT_SCAN_CEILING};
pub use collision::value_collision_attack;
pub use tmto::{tmto_attack, TmtoOptions};

use crate::ffield::FieldElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackKind {
    BruteForce,
    ValueCollision,
    Tmto,
}

impl AttackKind {
    pub fn name(&self) -> &'static str {
        match self {
            AttackKind::BruteForce => "brute",
            AttackKind::ValueCollision => "collision",
            AttackKind::Tmto => "tmto",
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    /// Modular polynomial multiplications (squarings and multiplications by
    /// `x` included), univariate and bivariate alike.
    pub poly_mul: u64,
    /// Polynomial gcd computations.
    pub gcd: u64,
    /// Schoolbook-equivalent coefficient multiplications.
    pub coeff_work: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.poly_mul + self.gcd
    }
}

impl std::ops::AddAssign for OpCount {
    fn add_assign(&mut self, rhs: Self) {
        self.poly_mul += rhs.poly_mul;
        self.gcd += rhs.gcd;
        self.coeff_work += rhs.coeff_work;
    }
}

/// Attack-specific parameters echoed into the report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AttackParams {
    pub d1: Option<u128>,
    pub d2: Option<u128>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub exhaustive: bool,
    /// Peak size of the bivariate tables, in bits.
    pub memory_bits: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackReport {
    pub kind: AttackKind,
    pub p: u128,
    pub n: usize,
    /// First confirmed candidate in scan order; `None` means nothing was found.
    pub recovered_k: Option<FieldElement>,
    /// Every confirmed candidate seen, ascending.
    pub candidates: Vec<FieldElement>,
    pub op_count: OpCount,
    pub wall_time: Duration,
    pub params: AttackParams,
}

impl AttackReport {
    pub fn found(&self) -> bool {
        self.recovered_k.is_some()
    }

    pub fn candidate_values(&self) -> Vec<u128> {
        self.candidates.iter().map(|c| c.value()).collect()
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// One `key=value` record per report.
impl fmt::Display for AttackReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cands: Vec<String> = self.candidates.iter().map(|c| c.value().to_string()).collect();
        write!(
            f,
            "attack={} p={} n={} d1={} d2={} seed={} trials={} candidates=[{}] recovered_k={} \
             op_count={} poly_mul={} gcd={} coeff_work={} wall_time_ms={:.3}",
            self.kind,
            self.p,
            self.n,
            opt(&self.params.d1),
            opt(&self.params.d2),
            opt(&self.params.seed),
            opt(&self.params.trials),
            cands.join(","),
            opt(&self.recovered_k.map(|k| k.value())),
            self.op_count.total(),
            self.op_count.poly_mul,
            self.op_count.gcd,
            self.op_count.coeff_work,
            self.wall_time.as_secs_f64() * 1e3,
        )
    }
}
