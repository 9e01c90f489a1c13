use std::time::Instant;

use rayon::prelude::*;

use super::{AttackKind, AttackParams, AttackReport, OpCount};
use crate::error::{Error, Result};
use crate::scheme::Broadcast;
use crate::unipoly::splitting_test_counted;

/// Largest `p` scanned by default.
pub const DEFAULT_SCAN_CEILING: u128 = 1 << 34;

const CHUNK: u128 = 4096;

/// Every `k` with `x^p - x = 0 mod (f - k)`, by scanning `k = 0..p`.
pub fn brute_force_attack(bc: &Broadcast) -> Result<AttackReport> {
    brute_force_attack_with_ceiling(bc, DEFAULT_SCAN_CEILING)
}

pub fn brute_force_attack_with_ceiling(bc: &Broadcast, ceiling: u128) -> Result<AttackReport> {
    let field = bc.field();
    let p = field.p();
    if p > ceiling {
        return Err(Error::ScanTooLarge { p, ceiling });
    }
    let start = Instant::now();
    let f = bc.polynomial();
    let n = bc.n() as u64;
    let chunks: Vec<(Vec<u128>, u64)> = (0..p.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut hits = Vec::new();
            let mut ops = 0u64;
            for k in c * CHUNK..((c + 1) * CHUNK).min(p) {
                let (ok, used) = splitting_test_counted(&f, &field.element(k))?;
                ops += used;
                if ok {
                    hits.push(k);
                }
            }
            Ok((hits, ops))
        })
        .collect::<Result<_>>()?;
    let mut op_count = OpCount::default();
    let mut candidates = Vec::new();
    for (hits, ops) in chunks {
        op_count.poly_mul += ops;
        candidates.extend(hits.into_iter().map(|k| field.element(k)));
    }
    op_count.coeff_work = op_count.poly_mul * 2 * n * n;
    Ok(AttackReport {
        kind: AttackKind::BruteForce,
        p,
        n: bc.n(),
        recovered_k: candidates.first().copied(),
        candidates,
        op_count,
        wall_time: start.elapsed(),
        params: AttackParams::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::PrimeModulus;
    use crate::scheme::{HashSelector, Instance};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn finds_the_planted_key() {
        let f = PrimeModulus::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let inst = Instance::generate(f, 7, &mut rng).unwrap();
            let report = brute_force_attack(&inst.broadcast().unwrap()).unwrap();
            assert!(report.candidates.contains(&inst.planted_key().unwrap()));
            let bits = 7u64; // ceil(log2 101)
            assert!(report.op_count.poly_mul <= 101 * 2 * bits);
        }
    }

    #[test]
    fn degree_one_accepts_every_key() {
        let f = PrimeModulus::new(31).unwrap();
        let bc = Broadcast::new(f, &[f.element(4)], HashSelector::new(f.zero())).unwrap();
        assert_eq!(brute_force_attack(&bc).unwrap().candidates.len(), 31);
    }

    #[test]
    fn unique_candidate_above_threshold() {
        let f = PrimeModulus::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let inst = Instance::generate(f, 10, &mut rng).unwrap();
        let report = brute_force_attack(&inst.broadcast().unwrap()).unwrap();
        assert_eq!(report.candidates, vec![inst.planted_key().unwrap()]);
        assert_eq!(report.recovered_k, inst.planted_key());
    }

    #[test]
    fn ceiling_is_enforced() {
        let f = PrimeModulus::new(65537).unwrap();
        let bc = Broadcast::new(f, &[f.one(), f.one()], HashSelector::new(f.zero())).unwrap();
        assert_eq!(
            brute_force_attack_with_ceiling(&bc, 1000),
            Err(Error::ScanTooLarge { p: 65537, ceiling: 1000 })
        );
    }
}
