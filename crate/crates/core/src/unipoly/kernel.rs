//! Coefficient-slice kernels shared by univariate and bivariate arithmetic.
//!
//! Slices hold canonical residues, lowest degree first. Results are canonical
//! but not trimmed.

use crate::ffield::PrimeModulus;

pub(crate) const KARATSUBA_THRESHOLD: usize = 64;

/// How many products of two residues can be added to a reduced `u128`
/// accumulator before it may overflow. Zero when even one product does not fit.
pub(crate) fn lazy_budget(field: &PrimeModulus) -> usize {
    let pm1 = field.p() - 1;
    if field.bits() > 64 {
        return 0;
    }
    let sq = pm1 * pm1;
    if sq == 0 {
        return usize::MAX;
    }
    ((u128::MAX - pm1) / sq).min(usize::MAX as u128) as usize
}

pub(crate) fn mul(field: &PrimeModulus, a: &[u128], b: &[u128]) -> Vec<u128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.len() < KARATSUBA_THRESHOLD {
        return schoolbook(field, a, b);
    }
    if long.len() > 2 * short.len() {
        // unbalanced: cut the long operand into blocks the size of the short one
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (block, chunk) in long.chunks(short.len()).enumerate() {
            let part = mul(field, short, chunk);
            let offset = block * short.len();
            for (o, v) in out[offset..offset + part.len()].iter_mut().zip(part) {
                *o = field.add(*o, v);
            }
        }
        return out;
    }
    karatsuba(field, a, b)
}

fn karatsuba(field: &PrimeModulus, a: &[u128], b: &[u128]) -> Vec<u128> {
    let len = a.len() + b.len() - 1;
    let h = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(h.min(a.len()));
    let (b0, b1) = b.split_at(h.min(b.len()));
    let z0 = mul(field, a0, b0);
    let z2 = mul(field, a1, b1);
    let z1 = mul(field, &add_slices(field, a0, a1), &add_slices(field, b0, b1));

    let mut out = vec![0u128; len];
    for (i, &v) in z0.iter().enumerate() {
        out[i] = field.add(out[i], v);
    }
    for (i, &v) in z2.iter().enumerate() {
        out[2 * h + i] = field.add(out[2 * h + i], v);
    }
    for (i, &v) in z1.iter().enumerate() {
        let mut mid = v;
        if let Some(&x) = z0.get(i) {
            mid = field.sub(mid, x);
        }
        if let Some(&x) = z2.get(i) {
            mid = field.sub(mid, x);
        }
        if h + i < len {
            out[h + i] = field.add(out[h + i], mid);
        } else {
            debug_assert_eq!(mid, 0);
        }
    }
    out
}

fn add_slices(field: &PrimeModulus, a: &[u128], b: &[u128]) -> Vec<u128> {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &v) in out.iter_mut().zip(short) {
        *o = field.add(*o, v);
    }
    out
}

fn schoolbook(field: &PrimeModulus, a: &[u128], b: &[u128]) -> Vec<u128> {
    let len = a.len() + b.len() - 1;
    let budget = lazy_budget(field);
    if budget == 0 {
        let mut out = vec![0u128; len];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (o, &bj) in out[i..i + b.len()].iter_mut().zip(b) {
                *o = field.add(*o, field.mul(ai, bj));
            }
        }
        return out;
    }
    if field.bits() <= 31 {
        return schoolbook_u64(field.p() as u64, a, b);
    }
    let p = field.p();
    let mut acc = vec![0u128; len];
    let mut pending = 0usize;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        if pending == budget {
            acc.iter_mut().for_each(|v| *v %= p);
            pending = 0;
        }
        let ai = ai as u64 as u128;
        for (o, &bj) in acc[i..i + b.len()].iter_mut().zip(b) {
            *o += ai * (bj as u64 as u128);
        }
        pending += 1;
    }
    acc.iter_mut().for_each(|v| *v %= p);
    acc
}

/// Schoolbook for `p < 2^31`: products fit in 62 bits, so a `u64`
/// accumulator absorbs at least four of them between reductions.
fn schoolbook_u64(p: u64, a: &[u128], b: &[u128]) -> Vec<u128> {
    let budget = (u64::MAX / ((p - 1) * (p - 1)).max(1)) as usize;
    let b: Vec<u64> = b.iter().map(|&v| v as u64).collect();
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let mut pending = 0usize;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        if pending == budget {
            acc.iter_mut().for_each(|v| *v %= p);
            pending = 0;
        }
        let ai = ai as u64;
        for (o, &bj) in acc[i..i + b.len()].iter_mut().zip(&b) {
            *o += ai * bj;
        }
        pending += 1;
    }
    acc.into_iter().map(|v| (v % p) as u128).collect()
}

/// Reduces `r` modulo the monic polynomial `m` (given with its leading 1) in
/// place and truncates it to `deg m` coefficients.
pub(crate) fn rem_monic(field: &PrimeModulus, r: &mut Vec<u128>, m: &[u128]) {
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    if r.len() <= dm {
        return;
    }
    let steps = r.len() - dm;
    if lazy_budget(field) > steps {
        // each slot receives at most `steps` products before it is read again
        let p = field.p();
        let neg: Vec<u128> = m[..dm].iter().map(|&c| field.neg(c)).collect();
        for i in (dm..r.len()).rev() {
            let q = r[i] % p;
            if q == 0 {
                continue;
            }
            let base = i - dm;
            for (o, &c) in r[base..i].iter_mut().zip(&neg) {
                *o += q * c;
            }
        }
        r.truncate(dm);
        r.iter_mut().for_each(|v| *v %= p);
        return;
    }
    for i in (dm..r.len()).rev() {
        let q = r[i];
        if q == 0 {
            continue;
        }
        let base = i - dm;
        for (o, &c) in r[base..i].iter_mut().zip(&m[..dm]) {
            *o = field.sub(*o, field.mul(q, c));
        }
    }
    r.truncate(dm);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(field: &PrimeModulus, a: &[u128], b: &[u128]) -> Vec<u128> {
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
        out
    }

    #[test]
    fn karatsuba_matches_naive_across_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [101u128, (1 << 31) - 1, 4_294_967_291, (1 << 61) - 1, (1 << 79) + 23] {
            let field = PrimeModulus::new(p).unwrap();
            for (la, lb) in [(1, 1), (63, 64), (64, 64), (130, 129), (70, 300), (200, 65), (257, 513)] {
                let a: Vec<u128> = (0..la).map(|_| rng.gen_range(0..p)).collect();
                let b: Vec<u128> = (0..lb).map(|_| rng.gen_range(0..p)).collect();
                assert_eq!(mul(&field, &a, &b), naive(&field, &a, &b), "p={p} {la}x{lb}");
            }
        }
    }

    #[test]
    fn lazy_reduction_survives_near_overflow_budget() {
        // p just below 2^64 leaves room for a single product per flush
        let p = 18_446_744_073_709_551_557u128;
        let field = PrimeModulus::new(p).unwrap();
        assert_eq!(lazy_budget(&field), 1);
        let a = vec![p - 1; 40];
        let b = vec![p - 1; 40];
        assert_eq!(mul(&field, &a, &b), naive(&field, &a, &b));
        let mut r = naive(&field, &a, &b);
        let mut m = vec![p - 1; 10];
        m.push(1);
        let mut expect = r.clone();
        // plain path oracle: long division step by step
        for i in (10..expect.len()).rev() {
            let q = expect[i];
            for j in 0..10 {
                expect[i - 10 + j] = field.sub(expect[i - 10 + j], field.mul(q, m[j]));
            }
        }
        expect.truncate(10);
        rem_monic(&field, &mut r, &m);
        assert_eq!(r, expect);
    }
}
