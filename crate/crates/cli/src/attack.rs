use std::fmt;

use secfilter::attacks::{
    brute_force_attack_with_ceiling, tmto_attack, value_collision_attack, AttackReport,
    TmtoOptions, DEFAULT_SCAN_CEILING,
};
use secfilter::ffield::{factorize, isqrt, select_tmto_split, TmtoSplit};
use secfilter::scheme::Instance;

use crate::error::{exit, CliError, CliResult};
use crate::output::ExperimentRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackChoice {
    Brute,
    Collision,
    Tmto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackOptions {
    pub attack: AttackChoice,
    pub seed: u64,
    /// Overrides the memory-driven choice of `d1`.
    pub d1: Option<u128>,
    /// Defaults to `ceil(sqrt(p)) * bits(p)`.
    pub memory_bits: Option<u128>,
    /// Defaults to `20 * ceil(p / n) + 100`.
    pub max_trials: Option<u64>,
    pub exhaustive: bool,
    pub scan_ceiling: u128,
}

impl Default for AttackOptions {
    fn default() -> Self {
        Self {
            attack: AttackChoice::Brute,
            seed: 0,
            d1: None,
            memory_bits: None,
            max_trials: None,
            exhaustive: false,
            scan_ceiling: DEFAULT_SCAN_CEILING,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AttackOutcome {
    pub report: AttackReport,
    /// `Some(recovered == planted)` when the instance carries its key.
    pub verified: Option<bool>,
}

impl AttackOutcome {
    pub fn exit_code(&self) -> i32 {
        match (self.report.found(), self.verified) {
            (false, _) => exit::NOT_FOUND,
            (true, Some(false)) => exit::FAILURE,
            _ => exit::SUCCESS,
        }
    }
}

impl AttackOutcome {
    pub fn row(&self) -> ExperimentRow {
        let r = &self.report;
        let show = |v: Option<u128>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        ExperimentRow {
            experiment: format!("attack-{}", r.kind.name()),
            p: Some(r.p),
            bits: Some(128 - r.p.leading_zeros()),
            n: Some(r.n),
            alpha: None,
            beta: None,
            samples: r.params.trials,
            seed: r.params.seed.unwrap_or(0),
            measured: format!(
                "recovered_k={} candidates={} op_count={}",
                show(r.recovered_k.map(|k| k.value())),
                r.candidates.len(),
                r.op_count.total()
            ),
            expected: match self.verified {
                Some(_) => "recovered_k=planted".into(),
                None => "-".into(),
            },
            pass: self.exit_code() == exit::SUCCESS,
        }
    }
}

impl fmt::Display for AttackOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verified = self.verified.map_or("-".to_string(), |v| v.to_string());
        write!(f, "{} verified={verified}", self.report)
    }
}

/// The memory budget used when none is given.
pub fn default_memory_bits(p: u128) -> u128 {
    let r = isqrt(p);
    let ceil = if r * r == p { r } else { r + 1 };
    ceil * (128 - p.leading_zeros()) as u128
}

pub fn tmto_split_for(p: u128, d1: Option<u128>, memory_bits: Option<u128>) -> CliResult<TmtoSplit> {
    let field = secfilter::ffield::PrimeModulus::new(p)?;
    let fact = factorize(p - 1)?;
    Ok(match d1 {
        Some(d1) => TmtoSplit::new(field, &fact, d1)?,
        None => select_tmto_split(field, &fact, memory_bits.unwrap_or_else(|| default_memory_bits(p)))?,
    })
}

pub fn cmd_attack(inst: &Instance, opts: &AttackOptions) -> CliResult<AttackOutcome> {
    let bc = inst.broadcast()?;
    let p = bc.field().p();
    let mut report = match opts.attack {
        AttackChoice::Brute => brute_force_attack_with_ceiling(&bc, opts.scan_ceiling)?,
        AttackChoice::Collision => {
            let n = bc.n() as u128;
            let default = (20 * p.div_ceil(n) + 100).min(u64::MAX as u128) as u64;
            value_collision_attack(&bc, opts.seed, opts.max_trials.unwrap_or(default))?
        }
        AttackChoice::Tmto => {
            if opts.max_trials.is_some() {
                return Err(CliError::Usage("--max-trials applies to the collision attack only".into()));
            }
            let split = tmto_split_for(p, opts.d1, opts.memory_bits)?;
            tmto_attack(&bc, &split, TmtoOptions { exhaustive: opts.exhaustive })?
        }
    };
    report.params.seed = Some(opts.seed);
    let verified = inst
        .planted_key()
        .map(|k| report.recovered_k == Some(k));
    Ok(AttackOutcome { report, verified })
}
