//! Parameter estimates: the user-count threshold, expected candidate keys,
//! and predicted costs of the value-collision and time–memory attacks.
//!
//! Cost model for the tradeoff attack: `T = d2 * ln p * ln d1` polynomial
//! operations and `M = d1 * log2 p` bits. For the collision attack: `p / n`
//! trials of `log2 p` polynomial operations each.

use std::fmt;

use secfilter::ffield::{factorize, select_tmto_split, PrimeModulus};
use secfilter::symm::{expected_candidates, ln_expected_candidates, threshold_n};

use crate::error::{CliError, CliResult};
use crate::output::ExperimentRow;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimateTarget {
    Prime(u128),
    /// A prime of about `2^bits`; `p - 1` is not factored, so any `d1`
    /// permitted by the memory budget is assumed to divide it.
    Bits(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TmtoEstimate {
    pub log2_d1: f64,
    pub log2_d2: f64,
    pub memory_bits: f64,
    pub log2_time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollisionEstimate {
    pub log2_trials: f64,
    pub log2_ops: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub p: Option<u128>,
    pub log2_p: f64,
    pub threshold_n: f64,
    pub n: Option<u64>,
    /// Expected number of candidate keys for the given `n`.
    pub expected_candidates: Option<f64>,
    pub tmto: Option<TmtoEstimate>,
    pub collision: Option<CollisionEstimate>,
    pub warning: Option<String>,
}

fn tmto_time(d1: f64, d2: f64, p_ln: f64) -> f64 {
    (d2 * p_ln * d1.ln()).log2()
}

pub fn cmd_estimate(target: EstimateTarget, n: Option<u64>, memory_bits: Option<u128>) -> CliResult<EstimateReport> {
    let (p, log2_p) = match target {
        EstimateTarget::Prime(p) => {
            PrimeModulus::new(p)?;
            (Some(p), (p as f64).log2())
        }
        EstimateTarget::Bits(bits) if (5..=127).contains(&bits) => (None, bits as f64),
        EstimateTarget::Bits(bits) => {
            return Err(CliError::Usage(format!("bit size must be in 5..=127, got {bits}")))
        }
    };
    let p_f = 2f64.powf(log2_p);
    let p_ln = log2_p * std::f64::consts::LN_2;
    let threshold = threshold_n(p_f)?;

    let expected = match (n, p) {
        (Some(n), Some(p)) => Some(expected_candidates(p, n)?.approx),
        (Some(n), None) => Some(ln_expected_candidates(p_f, n)?.exp()),
        (None, _) => None,
    };
    let warning = n.filter(|&n| (n as f64) < threshold).map(|n| {
        format!("n = {n} is below the threshold {threshold:.2}; many candidate keys may survive")
    });

    let tmto = match (memory_bits, p) {
        (None, _) => None,
        (Some(budget), Some(p)) => {
            let split = select_tmto_split(PrimeModulus::new(p)?, &factorize(p - 1)?, budget)?;
            let (d1, d2) = (split.d1() as f64, split.d2() as f64);
            Some(TmtoEstimate {
                log2_d1: d1.log2(),
                log2_d2: d2.log2(),
                memory_bits: split.memory_bits() as f64,
                log2_time: tmto_time(d1, d2, p_ln),
            })
        }
        (Some(budget), None) => {
            let bits = log2_p.ceil();
            let d1 = (budget as f64 / bits).floor();
            if d1 < 2.0 {
                return Err(secfilter::Error::NoFeasibleSplit { budget_bits: budget }.into());
            }
            let d2 = (p_f / d1).max(1.0);
            Some(TmtoEstimate {
                log2_d1: d1.log2(),
                log2_d2: d2.log2(),
                memory_bits: d1 * bits,
                log2_time: tmto_time(d1, d2, p_ln),
            })
        }
    };

    let collision = n.map(|n| {
        let log2_trials = log2_p - (n as f64).log2();
        CollisionEstimate {
            log2_trials,
            log2_ops: log2_trials + log2_p.log2(),
        }
    });

    Ok(EstimateReport {
        p,
        log2_p,
        threshold_n: threshold,
        n,
        expected_candidates: expected,
        tmto,
        collision,
        warning,
    })
}

impl EstimateReport {
    pub fn rows(&self, seed: u64) -> Vec<ExperimentRow> {
        let row = |name: &str, measured: String| ExperimentRow {
            experiment: format!("estimate-{name}"),
            p: self.p,
            bits: Some(self.log2_p.ceil() as u32),
            n: self.n.map(|n| n as usize),
            alpha: None,
            beta: None,
            samples: None,
            seed,
            measured,
            expected: "-".into(),
            pass: self.warning.is_none(),
        };
        let mut rows = vec![row("threshold", format!("{:.4}", self.threshold_n))];
        if let Some(e) = self.expected_candidates {
            rows.push(row("candidates", format!("{e:.6e}")));
        }
        if let Some(t) = &self.tmto {
            rows.push(row(
                "tmto",
                format!("log2_d1={:.2} log2_d2={:.2} memory_bits={:.0} log2_time={:.2}", t.log2_d1, t.log2_d2, t.memory_bits, t.log2_time),
            ));
        }
        if let Some(c) = &self.collision {
            rows.push(row("collision", format!("log2_trials={:.2} log2_ops={:.2}", c.log2_trials, c.log2_ops)));
        }
        rows
    }
}

impl fmt::Display for EstimateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            Some(p) => writeln!(f, "p={p} log2_p={:.2}", self.log2_p)?,
            None => writeln!(f, "p=~2^{}", self.log2_p)?,
        }
        writeln!(f, "threshold_n={:.4}", self.threshold_n)?;
        if let (Some(n), Some(e)) = (self.n, self.expected_candidates) {
            writeln!(f, "n={n} expected_candidates={e:.6e}")?;
        }
        if let Some(c) = &self.collision {
            writeln!(f, "collision log2_trials={:.2} log2_ops={:.2}", c.log2_trials, c.log2_ops)?;
        }
        if let Some(t) = &self.tmto {
            writeln!(
                f,
                "tmto log2_d1={:.2} log2_d2={:.2} memory_bits={:.0} log2_time={:.2}",
                t.log2_d1, t.log2_d2, t.memory_bits, t.log2_time
            )?;
        }
        if let Some(w) = &self.warning {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tradeoff_at_75_bits() {
        let budget = (1u128 << 40) * 75;
        let r = cmd_estimate(EstimateTarget::Bits(75), None, Some(budget)).unwrap();
        let t = r.tmto.unwrap();
        assert!((t.log2_d1 - 40.0).abs() < 1e-9);
        assert!((t.log2_time - 45.0).abs() < 1.0, "{}", t.log2_time);
    }

    #[test]
    fn collision_at_64_bits() {
        let r = cmd_estimate(EstimateTarget::Bits(64), Some(1 << 20), None).unwrap();
        let c = r.collision.unwrap();
        assert!((c.log2_trials - 44.0).abs() < 1e-9);
        assert!((c.log2_ops - 50.0).abs() < 1e-9);
        assert!(r.warning.is_none());
    }

    #[test]
    fn explicit_prime_uses_real_split() {
        // 65537 - 1 = 2^16; a 17 * 300-bit budget allows d1 = 256
        let r = cmd_estimate(EstimateTarget::Prime(65537), Some(3), Some(17 * 300)).unwrap();
        let t = r.tmto.unwrap();
        assert_eq!(t.log2_d1, 8.0);
        assert_eq!(t.memory_bits, 256.0 * 17.0);
        assert!(r.warning.is_some());
        let e = r.expected_candidates.unwrap();
        assert!((e - 65539.0 * 65538.0 / 6.0 / 65537.0).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        assert!(cmd_estimate(EstimateTarget::Prime(13), None, None).is_err());
        assert!(cmd_estimate(EstimateTarget::Prime(15), None, None).is_err());
        assert!(cmd_estimate(EstimateTarget::Bits(64), None, Some(10)).is_err());
    }
}
