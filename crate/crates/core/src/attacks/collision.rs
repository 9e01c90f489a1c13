use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AttackKind, AttackParams, AttackReport, OpCount};
use crate::error::Result;
use crate::scheme::Broadcast;
use crate::unipoly::splitting_test_counted;

/// Samples `a` uniformly and tests whether `f - f(a)` splits into distinct
/// linear factors, i.e. whether `r_a = x^p - x mod (f - f(a))` vanishes.
///
/// `f` takes the value `k` at `n` points, so about `p / n` trials are needed.
/// If `max_trials` runs out the report comes back with no candidates.
pub fn value_collision_attack(bc: &Broadcast, seed: u64, max_trials: u64) -> Result<AttackReport> {
    let start = Instant::now();
    let field = bc.field();
    let f = bc.polynomial();
    let n = bc.n() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut op_count = OpCount::default();
    let mut found = None;
    let mut trials = 0u64;
    while trials < max_trials {
        trials += 1;
        let a = field.element(rng.gen_range(0..field.p()));
        let v = f.eval(&a)?;
        let (ok, ops) = splitting_test_counted(&f, &v)?;
        op_count.poly_mul += ops;
        if ok {
            found = Some(v);
            break;
        }
    }
    op_count.coeff_work = op_count.poly_mul * 2 * n * n;
    Ok(AttackReport {
        kind: AttackKind::ValueCollision,
        p: field.p(),
        n: bc.n(),
        recovered_k: found,
        candidates: found.into_iter().collect(),
        op_count,
        wall_time: start.elapsed(),
        params: AttackParams {
            trials: Some(trials),
            seed: Some(seed),
            ..AttackParams::default()
        },
    })
}
