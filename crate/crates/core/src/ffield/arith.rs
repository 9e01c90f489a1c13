//! Modular arithmetic on raw `u128` residues.
//!
//! Every routine here accepts any modulus `m` in `[1, 2^128)`. Products of
//! operands wider than 64 bits go through a 256-bit intermediate, so nothing
//! overflows regardless of the size of `m`.

const LOW64: u128 = u64::MAX as u128;

#[inline]
pub(crate) fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// Full 256-bit product of two `u128` values as `(high, low)`.
pub(crate) fn widening_mul(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & LOW64);
    let (b1, b0) = (b >> 64, b & LOW64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let (mid, c1) = p01.overflowing_add(p10);
    let (mid, c2) = mid.overflowing_add(p00 >> 64);
    let lo = (p00 & LOW64) | (mid << 64);
    let hi = p11 + (mid >> 64) + (((c1 as u128) + (c2 as u128)) << 64);
    (hi, lo)
}

/// Reduces the 256-bit value `hi * 2^128 + lo` modulo `m`.
///
/// Feeds `lo` into the running remainder in chunks of as many bits as the
/// headroom above `m` allows, so each step is a single `u128` remainder.
pub(crate) fn reduce_wide(hi: u128, lo: u128, m: u128) -> u128 {
    let mut r = hi % m;
    let headroom = m.leading_zeros();
    if headroom == 0 {
        for bit in (0..128).rev() {
            r = add_mod(r, r, m);
            if (lo >> bit) & 1 == 1 {
                r = add_mod(r, 1, m);
            }
        }
        return r;
    }
    let width = headroom.min(64);
    let mut remaining = 128u32;
    while remaining > 0 {
        let take = width.min(remaining);
        remaining -= take;
        let chunk = (lo >> remaining) & ((1u128 << take) - 1);
        r = ((r << take) | chunk) % m;
    }
    r
}

#[inline]
pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= LOW64 {
        let (a, b) = (a % m, b % m);
        return a * b % m;
    }
    let (hi, lo) = widening_mul(a, b);
    reduce_wide(hi, lo, m)
}

pub(crate) fn pow_mod(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut base = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Floor of the square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // the float estimate is off by at most a few units
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

const SMALL_PRIMES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller–Rabin with the first 13 prime bases is deterministic below this bound
/// (about 2^81.4).
const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Primality test.
///
/// Deterministic for `n < 3.3 * 10^24`; above that the first 20 prime bases
/// are used and the answer is "probable prime".
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &SMALL_PRIMES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    let bases: &[u128] = if n < DETERMINISTIC_BOUND {
        &SMALL_PRIMES[..13]
    } else {
        &SMALL_PRIMES[..]
    };
    'witness: for &a in bases {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul_mod(a: u128, b: u128, m: u128) -> u128 {
        // shift-and-add oracle
        let mut r = 0u128;
        let mut a = a % m;
        let mut b = b;
        while b > 0 {
            if b & 1 == 1 {
                r = add_mod(r, a, m);
            }
            a = add_mod(a, a, m);
            b >>= 1;
        }
        r
    }

    #[test]
    fn widening_mul_matches_known_values() {
        assert_eq!(widening_mul(u128::MAX, u128::MAX), (u128::MAX - 1, 1));
        assert_eq!(widening_mul(1 << 64, 1 << 64), (1, 0));
        assert_eq!(widening_mul(3, 5), (0, 15));
    }

    #[test]
    fn wide_mul_mod_agrees_with_shift_and_add() {
        let moduli = [
            (1u128 << 79) + 23,
            (1u128 << 100) - 15,
            u128::MAX - 158,
            (1u128 << 127) - 1,
            (1u128 << 64) + 13,
        ];
        let mut x = 0x9e37_79b9_7f4a_7c15_f39c_c060_5ced_c834u128;
        for &m in &moduli {
            for _ in 0..200 {
                x = x.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(0x1234_5678_9abc_def1);
                let a = x % m;
                let b = x.rotate_left(37) % m;
                assert_eq!(mul_mod(a, b, m), naive_mul_mod(a, b, m));
            }
        }
    }

    #[test]
    fn add_and_sub_near_the_top_of_u128() {
        let m = u128::MAX - 158;
        assert_eq!(add_mod(m - 1, m - 1, m), m - 2);
        assert_eq!(sub_mod(0, 1, m), m - 1);
    }

    #[test]
    fn primality_small_and_large() {
        let primes: Vec<u128> = (0..200).filter(|&n| is_prime(n)).collect();
        let sieve: Vec<u128> = (2..200u128)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, sieve);
        assert!(is_prime((1u128 << 61) - 1));
        assert!(is_prime((1u128 << 89) - 1));
        assert!(is_prime((1u128 << 127) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(((1u128 << 61) - 1) * ((1u128 << 31) - 1)));
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u128::MAX), u64::MAX as u128);
        let big = (1u128 << 100) + 12345;
        let r = isqrt(big);
        assert!(r * r <= big && (r + 1) * (r + 1) > big);
    }
}
