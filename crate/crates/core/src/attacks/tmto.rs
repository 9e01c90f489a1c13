use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bivariate::{x_pow_p_minus_x, BiRing};
use super::{AttackKind, AttackParams, AttackReport, OpCount};
use crate::error::{Error, Result};
use crate::ffield::{roots_of_unity, TmtoSplit};
use crate::scheme::Broadcast;
use crate::unipoly::{distinct_roots, poly_gcd, splitting_test_counted, Poly};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TmtoOptions {
    /// Scan every `omega` instead of stopping at the first confirmed key.
    pub exhaustive: bool,
}

/// Everything learned from one `omega`.
struct OmegaScan {
    confirmed: Vec<u128>,
    ops: OpCount,
}

/// Time–memory tradeoff attack over the split `p - 1 = d1 * d2`.
///
/// For `omega` running over the `d2`-th roots of unity, in index order, the
/// coefficients `c_(i, omega)(y)` of `x^p - x` modulo
/// `(f(x) - y, y^d1 - omega)` all vanish at `y = k` when `omega = k^d1`.
/// Their gcd with `y^d1 - omega` is folded in, its roots `kappa` are
/// extracted, and each is confirmed by the splitting test and by
/// `kappa^d1 = omega`. `k = 0` is not a `d1`-th root of any `omega` and is
/// covered by one extra splitting test up front.
pub fn tmto_attack(bc: &Broadcast, split: &TmtoSplit, opts: TmtoOptions) -> Result<AttackReport> {
    let start = Instant::now();
    let field = bc.field();
    if split.modulus() != field {
        return Err(Error::ModulusMismatch {
            left: field.p(),
            right: split.modulus().p(),
        });
    }
    let f = bc.polynomial();
    let n = bc.n();
    let d1 = usize::try_from(split.d1())
        .map_err(|_| Error::InvalidInput(format!("d1 = {} does not fit in memory", split.d1())))?;
    let omegas = roots_of_unity(field, split.d2(), split.beta())?;

    let mut op_count = OpCount::default();
    let mut candidates = Vec::new();
    let mut recovered = None;

    let (zero_ok, ops) = splitting_test_counted(&f, &field.zero())?;
    op_count.poly_mul += ops;
    if zero_ok {
        candidates.push(0u128);
        recovered = Some(0u128);
    }

    if recovered.is_none() || opts.exhaustive {
        // Workers skip any omega past the earliest hit; results are merged
        // by index, so the outcome does not depend on scheduling.
        let first_hit = AtomicUsize::new(usize::MAX);
        let scans: Vec<Option<OmegaScan>> = omegas
            .par_iter()
            .enumerate()
            .map(|(j, omega)| {
                if !opts.exhaustive && j > first_hit.load(Ordering::Relaxed) {
                    return Ok(None);
                }
                let scan = scan_omega(&f, d1, omega.value(), j as u64)?;
                if !scan.confirmed.is_empty() {
                    first_hit.fetch_min(j, Ordering::Relaxed);
                }
                Ok(Some(scan))
            })
            .collect::<Result<_>>()?;
        for scan in scans.into_iter().flatten() {
            op_count += scan.ops;
            if recovered.is_none() {
                recovered = scan.confirmed.first().copied();
            }
            candidates.extend(scan.confirmed);
            if !opts.exhaustive && recovered.is_some() {
                break;
            }
        }
    }

    candidates.sort_unstable();
    let memory_bits = (n * d1) as u128 * field.bits() as u128;
    Ok(AttackReport {
        kind: AttackKind::Tmto,
        p: field.p(),
        n,
        recovered_k: recovered.map(|k| field.element(k)),
        candidates: candidates.into_iter().map(|k| field.element(k)).collect(),
        op_count,
        wall_time: start.elapsed(),
        params: AttackParams {
            d1: Some(split.d1()),
            d2: Some(split.d2()),
            exhaustive: opts.exhaustive,
            memory_bits: Some(memory_bits),
            ..AttackParams::default()
        },
    })
}

fn scan_omega(f: &Poly, d1: usize, omega: u128, index: u64) -> Result<OmegaScan> {
    let field = f.field();
    let ring = BiRing::new(f, d1, &field.element(omega))?;
    let frob = x_pow_p_minus_x(&ring);
    let mut ops = OpCount {
        poly_mul: frob.poly_mul,
        gcd: 0,
        coeff_work: frob.coeff_work,
    };

    let mut g = Poly::monomial(field, 1, d1).sub_constant(omega);
    for i in 0..ring.n() {
        if g.degree().is_some_and(|d| d <= 1) {
            break;
        }
        let c = Poly::from_coeffs(field, frob.residue.row(i).to_vec());
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c)?;
        ops.gcd += 1;
    }

    let kappas: Vec<u128> = match g.degree() {
        Some(0) | None => Vec::new(),
        Some(1) => vec![field.neg(g.raw_coeffs()[0])],
        Some(_) => {
            // g divides y^d1 - omega, which splits into distinct factors.
            let mut rng = ChaCha8Rng::seed_from_u64(index);
            distinct_roots(&g, &mut rng)?.iter().map(|e| e.value()).collect()
        }
    };

    let mut confirmed = Vec::new();
    for kappa in kappas {
        if field.pow(kappa, d1 as u128) != omega {
            continue;
        }
        let (ok, used) = splitting_test_counted(f, &field.element(kappa))?;
        ops.poly_mul += used;
        if ok {
            confirmed.push(kappa);
        }
    }
    confirmed.sort_unstable();
    Ok(OmegaScan { confirmed, ops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attacks::brute_force_attack;
    use crate::ffield::{factorize, PrimeModulus};
    use crate::scheme::Instance;
    use crate::unipoly::splitting_test;

    fn split(p: u128, d1: u128) -> TmtoSplit {
        let f = PrimeModulus::new(p).unwrap();
        TmtoSplit::new(f, &factorize(p - 1).unwrap(), d1).unwrap()
    }

    #[test]
    fn recovers_planted_key_at_31() {
        let f = PrimeModulus::new(31).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let s = split(31, 5);
        assert_eq!(s.d2(), 6);
        let mut checked = 0;
        while checked < 20 {
            let inst = Instance::generate(f, 4, &mut rng).unwrap();
            let k = inst.planted_key().unwrap();
            if k.is_zero() {
                continue;
            }
            checked += 1;
            let bc = inst.broadcast().unwrap();
            let brute = brute_force_attack(&bc).unwrap();
            let report = tmto_attack(&bc, &s, TmtoOptions { exhaustive: true }).unwrap();
            assert_eq!(report.candidates, brute.candidates);
            assert!(report.candidates.contains(&k));
            let quick = tmto_attack(&bc, &s, TmtoOptions::default()).unwrap();
            assert!(quick.found());
            assert!(quick.candidates.iter().all(|c| brute.candidates.contains(c)));
        }
    }

    #[test]
    fn candidates_are_sound() {
        let f = PrimeModulus::new(7681).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let s = split(7681, 40);
        for _ in 0..3 {
            let bc = Instance::generate(f, 3, &mut rng).unwrap().broadcast().unwrap();
            let poly = bc.polynomial();
            let report = tmto_attack(&bc, &s, TmtoOptions { exhaustive: true }).unwrap();
            for k in &report.candidates {
                assert!(splitting_test(&poly, k).unwrap());
            }
            assert_eq!(report.params.memory_bits, Some(3 * 40 * 13));
        }
    }

    #[test]
    fn zero_key_is_caught_by_the_precheck() {
        let f = PrimeModulus::new(31).unwrap();
        // f = x^2 - 4 = (x - 2)(x + 2), so k = 0 splits
        let bc = Broadcast::new(
            f,
            &[f.element(27), f.zero()],
            crate::scheme::HashSelector::new(f.zero()),
        )
        .unwrap();
        let report = tmto_attack(&bc, &split(31, 5), TmtoOptions::default()).unwrap();
        assert_eq!(report.recovered_k, Some(f.zero()));
    }

    #[test]
    fn op_count_is_linear_in_d2() {
        let f = PrimeModulus::new(7681).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let bc = Instance::generate(f, 3, &mut rng).unwrap().broadcast().unwrap();
        let counts: Vec<(u128, u64)> = [16u128, 32, 64]
            .iter()
            .map(|&d1| {
                let s = split(7681, d1);
                let r = tmto_attack(&bc, &s, TmtoOptions { exhaustive: true }).unwrap();
                (s.d2(), r.op_count.poly_mul)
            })
            .collect();
        // every omega costs the same number of bivariate multiplications;
        // confirming the (split-independent) candidates adds a constant
        let xs: Vec<f64> = counts.iter().map(|&(d2, _)| d2 as f64).collect();
        let ys: Vec<f64> = counts.iter().map(|&(_, ops)| ops as f64).collect();
        let mx = xs.iter().sum::<f64>() / 3.0;
        let my = ys.iter().sum::<f64>() / 3.0;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
        let r2 = sxy * sxy / (sxx * syy);
        assert!(sxy > 0.0 && r2 > 0.99, "{counts:?} r2 = {r2}");
    }
}
