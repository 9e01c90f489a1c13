//! Prime-field arithmetic and the number theory around `p - 1` that the
//! time–memory tradeoff needs: factorization, primitive roots, roots of
//! unity and the choice of the split `p - 1 = d1 * d2`.
//!
//! Residues are always stored canonically in `[0, p)`. Hot loops elsewhere in
//! the crate work on raw `u128` residues through [`PrimeModulus`]; the checked
//! [`FieldElement`] wrapper is the public currency.

pub(crate) mod arith;
mod factor;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use arith::{is_prime, isqrt};
pub use factor::{factorize, factorize_with_seed, Factorization};

use crate::error::{Error, Result};

/// An odd prime `p < 2^128`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus {
    p: u128,
    bits: u32,
}

impl PrimeModulus {
    pub fn new(p: u128) -> Result<Self> {
        if p < 3 {
            return Err(Error::ModulusTooSmall(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            bits: 128 - p.leading_zeros(),
        })
    }

    #[inline]
    pub fn p(&self) -> u128 {
        self.p
    }

    /// Bit length of `p`, which equals `ceil(log2 p)` for an odd prime.
    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn element(&self, value: u128) -> FieldElement {
        FieldElement {
            value: value % self.p,
            modulus: *self,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    #[inline]
    pub(crate) fn add(&self, a: u128, b: u128) -> u128 {
        arith::add_mod(a, b, self.p)
    }

    #[inline]
    pub(crate) fn sub(&self, a: u128, b: u128) -> u128 {
        arith::sub_mod(a, b, self.p)
    }

    #[inline]
    pub(crate) fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u128, b: u128) -> u128 {
        if self.bits <= 32 {
            ((a as u64 * b as u64) % self.p as u64) as u128
        } else if self.bits <= 64 {
            (a as u64 as u128 * b as u64 as u128) % self.p
        } else {
            arith::mul_mod(a, b, self.p)
        }
    }

    pub(crate) fn pow(&self, mut base: u128, mut exp: u128) -> u128 {
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: u128) -> Result<u128> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Raw residue of a `FieldElement`, checking that it lives in this field.
    pub(crate) fn residue_of(&self, e: &FieldElement) -> Result<u128> {
        if e.modulus.p != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: e.modulus.p,
            });
        }
        Ok(e.value)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// A canonical residue modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    modulus: PrimeModulus,
    value: u128,
}

impl FieldElement {
    pub fn new(modulus: PrimeModulus, value: u128) -> Self {
        modulus.element(value)
    }

    #[inline]
    pub fn value(&self) -> u128 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<PrimeModulus> {
        if self.modulus.p != other.modulus.p {
            return Err(Error::ModulusMismatch {
                left: self.modulus.p,
                right: other.modulus.p,
            });
        }
        Ok(self.modulus)
    }

    fn with(&self, value: u128) -> Self {
        Self {
            modulus: self.modulus,
            value,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let m = self.same_field(other)?;
        Ok(self.with(m.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let m = self.same_field(other)?;
        Ok(self.with(m.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let m = self.same_field(other)?;
        Ok(self.with(m.mul(self.value, other.value)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.modulus.inv(self.value)?))
    }

    pub fn pow(&self, exp: u128) -> Self {
        self.with(self.modulus.pow(self.value, exp))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator impls panic on mixed moduli; the `try_*` methods report it.
impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("field elements from different moduli")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("field elements from different moduli")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("field elements from different moduli")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        self.with(self.modulus.neg(self.value))
    }
}

fn check_factors_order(modulus: &PrimeModulus, fact: &Factorization) -> Result<()> {
    if fact.value() != modulus.p - 1 {
        return Err(Error::InvalidInput(format!(
            "factorization of {} supplied for p - 1 = {}",
            fact.value(),
            modulus.p - 1
        )));
    }
    Ok(())
}

/// Smallest `beta >= 2` whose order is `p - 1`.
pub fn find_primitive_root(modulus: PrimeModulus, fact: &Factorization) -> Result<FieldElement> {
    check_factors_order(&modulus, fact)?;
    let order = modulus.p - 1;
    let exponents: Vec<u128> = fact.primes().map(|q| order / q).collect();
    let mut beta = 2u128;
    loop {
        if exponents.iter().all(|&e| modulus.pow(beta, e) != 1) {
            return Ok(modulus.element(beta));
        }
        beta += 1;
    }
}

/// The `d2`-th roots of unity `beta^(j (p-1)/d2)` for `j = 0..d2`, in index order.
///
/// `beta` must be a primitive root; this is not re-checked here.
pub fn roots_of_unity(
    modulus: PrimeModulus,
    d2: u128,
    beta: FieldElement,
) -> Result<Vec<FieldElement>> {
    let order = modulus.p - 1;
    if d2 == 0 || !order.is_multiple_of(d2) {
        return Err(Error::InvalidSplit { d: d2, order });
    }
    let b = modulus.residue_of(&beta)?;
    let step = modulus.pow(b, order / d2);
    let len = usize::try_from(d2)
        .map_err(|_| Error::InvalidInput(format!("cannot list {d2} roots of unity")))?;
    let mut out = Vec::with_capacity(len);
    let mut w = 1u128;
    for _ in 0..len {
        out.push(modulus.element(w));
        w = modulus.mul(w, step);
    }
    Ok(out)
}

/// A factorization `p - 1 = d1 * d2` with `d1 > 1`, plus a primitive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TmtoSplit {
    d1: u128,
    d2: u128,
    beta: FieldElement,
}

impl TmtoSplit {
    /// Split with an explicitly chosen `d1`.
    pub fn new(modulus: PrimeModulus, fact: &Factorization, d1: u128) -> Result<Self> {
        check_factors_order(&modulus, fact)?;
        let order = modulus.p - 1;
        if d1 <= 1 || !order.is_multiple_of(d1) {
            return Err(Error::InvalidSplit { d: d1, order });
        }
        Ok(Self {
            d1,
            d2: order / d1,
            beta: find_primitive_root(modulus, fact)?,
        })
    }

    pub fn d1(&self) -> u128 {
        self.d1
    }

    pub fn d2(&self) -> u128 {
        self.d2
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.beta.modulus()
    }

    /// Bits of memory for one table of `d1` field elements.
    pub fn memory_bits(&self) -> u128 {
        self.d1 * self.modulus().bits() as u128
    }
}

/// Largest divisor `d1 > 1` of `p - 1` with `d1 * ceil(log2 p) <= memory_budget_bits`.
pub fn select_tmto_split(
    modulus: PrimeModulus,
    fact: &Factorization,
    memory_budget_bits: u128,
) -> Result<TmtoSplit> {
    check_factors_order(&modulus, fact)?;
    let bits = modulus.bits() as u128;
    let d1 = fact
        .divisors()
        .into_iter()
        .filter(|&d| d > 1 && d.checked_mul(bits).is_some_and(|m| m <= memory_budget_bits))
        .max()
        .ok_or(Error::NoFeasibleSplit {
            budget_bits: memory_budget_bits,
        })?;
    TmtoSplit::new(modulus, fact, d1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u128) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn modulus_validation() {
        assert!(matches!(PrimeModulus::new(2), Err(Error::ModulusTooSmall(2))));
        assert!(matches!(PrimeModulus::new(15), Err(Error::NotPrime(15))));
        assert_eq!(field(31).bits(), 5);
        assert_eq!(field((1 << 61) - 1).bits(), 61);
    }

    #[test]
    fn small_field_examples() {
        let f7 = field(7);
        assert_eq!(f7.element(3).inv().unwrap().value(), 5);
        assert_eq!(f7.element(3).pow(6).value(), 1);
        assert_eq!(field(31).element(3).pow(5).value(), 26);
        assert_eq!(f7.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!((f7.element(5) + f7.element(4)).value(), 2);
        assert_eq!((f7.element(2) - f7.element(4)).value(), 5);
        assert_eq!((-f7.element(2)).value(), 5);
        assert_eq!(f7.element(10).value(), 3);
    }

    #[test]
    fn modulus_mismatch_is_reported() {
        let a = field(7).element(1);
        let b = field(11).element(1);
        assert_eq!(
            a.try_add(&b),
            Err(Error::ModulusMismatch { left: 7, right: 11 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn eighty_bit_arithmetic() {
        let p: u128 = (1 << 79) + 23;
        assert!(is_prime(p));
        let m = field(p);
        let a = m.element(p - 2);
        let b = m.element(p - 3);
        // (-2)(-3) = 6
        assert_eq!((a * b).value(), 6);
        let x = m.element(0x1234_5678_9abc_def0_1234);
        assert_eq!((x * x.inv().unwrap()).value(), 1);
        assert_eq!(x.pow(p - 1).value(), 1);
    }

    #[test]
    fn primitive_roots() {
        let f7 = field(7);
        assert_eq!(find_primitive_root(f7, &factorize(6).unwrap()).unwrap().value(), 3);
        let f31 = field(31);
        assert_eq!(find_primitive_root(f31, &factorize(30).unwrap()).unwrap().value(), 3);
        assert!(find_primitive_root(f31, &factorize(29).unwrap()).is_err());
    }

    #[test]
    fn roots_of_unity_examples() {
        let f31 = field(31);
        let beta = f31.element(3);
        let roots: Vec<u128> = roots_of_unity(f31, 6, beta).unwrap().iter().map(|r| r.value()).collect();
        assert_eq!(roots, vec![1, 26, 25, 30, 5, 6]);
        let one: Vec<u128> = roots_of_unity(f31, 1, beta).unwrap().iter().map(|r| r.value()).collect();
        assert_eq!(one, vec![1]);
        let f7 = field(7);
        let pair: Vec<u128> = roots_of_unity(f7, 2, f7.element(3)).unwrap().iter().map(|r| r.value()).collect();
        assert_eq!(pair, vec![1, 6]);
        assert!(matches!(roots_of_unity(f31, 7, beta), Err(Error::InvalidSplit { d: 7, order: 30 })));
    }

    #[test]
    fn roots_of_unity_form_the_kernel() {
        for p in [31u128, 101, 401, 9973] {
            let m = field(p);
            let fact = factorize(p - 1).unwrap();
            let beta = find_primitive_root(m, &fact).unwrap();
            for d2 in fact.divisors() {
                let mut roots: Vec<u128> =
                    roots_of_unity(m, d2, beta).unwrap().iter().map(|r| r.value()).collect();
                assert_eq!(roots[0], 1);
                roots.sort_unstable();
                let kernel: Vec<u128> = (1..p).filter(|&x| m.pow(x, d2) == 1).collect();
                assert_eq!(roots, kernel, "p = {p}, d2 = {d2}");
            }
        }
    }

    #[test]
    fn split_selection() {
        let f31 = field(31);
        let fact = factorize(30).unwrap();
        let s = select_tmto_split(f31, &fact, 6 * 5).unwrap();
        assert_eq!((s.d1(), s.d2()), (6, 5));
        assert_eq!(s.beta().value(), 3);
        assert!(matches!(
            select_tmto_split(f31, &fact, 9),
            Err(Error::NoFeasibleSplit { budget_bits: 9 })
        ));

        // strong prime 2q + 1: only d1 = 2 fits below q * log2 p
        let q = 1_000_151u128;
        let p = field(2 * q + 1);
        let fact = factorize(2 * q).unwrap();
        let s = select_tmto_split(p, &fact, (q - 1) * p.bits() as u128).unwrap();
        assert_eq!(s.d1(), 2);

        // p - 1 = 2^16: the divisor lattice is a chain
        let p = field(65537);
        let fact = factorize(65536).unwrap();
        let s = select_tmto_split(p, &fact, 1000 * p.bits() as u128).unwrap();
        assert_eq!((s.d1(), s.d2()), (512, 128));
    }

    #[test]
    fn explicit_split_rejects_bad_d1() {
        let f31 = field(31);
        let fact = factorize(30).unwrap();
        assert!(TmtoSplit::new(f31, &fact, 1).is_err());
        assert!(TmtoSplit::new(f31, &fact, 4).is_err());
        assert_eq!(TmtoSplit::new(f31, &fact, 30).unwrap().d2(), 1);
    }
}
