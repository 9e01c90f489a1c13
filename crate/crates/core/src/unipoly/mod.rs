//! Dense univariate polynomials over a prime field.
//!
//! Two splitting predicates live here and they are not interchangeable:
//!
//! * [`splitting_test`] checks `x^p - x = 0 mod (f - k)`. It holds only when
//!   `f - k` is a product of *distinct* linear factors, because `x^p - x` is
//!   squarefree. This is the test a brute-force attacker runs.
//! * [`splits_completely`] accepts repeated roots. This is the predicate under
//!   which the expected number of keys equals `C(p+n-1, n) / p^(n-1)`, since
//!   that count ranges over multisets of roots.

pub(crate) mod kernel;
mod roots;

use std::fmt;

pub use roots::{distinct_roots, find_roots, poly_gcd, splits_completely, splitting_test, splitting_test_counted};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, PrimeModulus};

/// A polynomial with coefficients in `F_p`, lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector and [`Poly::degree`] returns `None` for it.
/// Binary arithmetic methods panic when the operands come from different
/// fields; the free functions of this module return [`Error::ModulusMismatch`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeModulus,
    coeffs: Vec<u128>,
}

impl Poly {
    pub fn zero(field: PrimeModulus) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeModulus) -> Self {
        Self::constant(field, 1)
    }

    pub fn x(field: PrimeModulus) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    pub fn constant(field: PrimeModulus, c: u128) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(field: PrimeModulus, c: u128, degree: usize) -> Self {
        let mut coeffs = vec![0u128; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// Coefficients are reduced modulo `p`.
    pub fn from_coeffs(field: PrimeModulus, mut coeffs: Vec<u128>) -> Self {
        let p = field.p();
        coeffs.iter_mut().for_each(|c| *c %= p);
        Self::from_raw(field, coeffs)
    }

    pub fn from_elements(field: PrimeModulus, coeffs: &[FieldElement]) -> Result<Self> {
        let raw = coeffs
            .iter()
            .map(|c| field.residue_of(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(field, raw))
    }

    /// `prod (x - r)` over the given roots (repetitions allowed).
    pub fn from_roots(field: PrimeModulus, roots: &[u128]) -> Self {
        // balanced product tree keeps the multiplications Karatsuba-sized
        fn build(field: &PrimeModulus, roots: &[u128]) -> Vec<u128> {
            match roots.len() {
                0 => vec![1],
                1 => vec![field.neg(roots[0] % field.p()), 1],
                n => {
                    let (l, r) = roots.split_at(n / 2);
                    kernel::mul(field, &build(field, l), &build(field, r))
                }
            }
        }
        Self::from_raw(field, build(&field, roots))
    }

    /// Takes canonical residues as they are and trims.
    pub(crate) fn from_raw(field: PrimeModulus, coeffs: Vec<u128>) -> Self {
        let mut p = Self { field, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeModulus {
        self.field
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.element(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.field.element(c)).collect()
    }

    pub fn raw_coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    pub(crate) fn into_raw(self) -> Vec<u128> {
        self.coeffs
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| self.field.element(c))
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let x = self.field.residue_of(x)?;
        Ok(self.field.element(self.eval_raw(x)))
    }

    /// Horner evaluation on a raw residue.
    pub(crate) fn eval_raw(&self, x: u128) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    fn assert_same_field(&self, other: &Poly) {
        assert_eq!(
            self.field, other.field,
            "polynomials over different fields"
        );
    }

    pub(crate) fn check_same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::from_raw(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly::from_raw(self.field, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        Poly::from_raw(self.field, kernel::mul(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: u128) -> Poly {
        let c = c % self.field.p();
        let coeffs = self.coeffs.iter().map(|&v| self.field.mul(v, c)).collect();
        Poly::from_raw(self.field, coeffs)
    }

    /// `self - c` for a constant `c`.
    pub fn sub_constant(&self, c: u128) -> Poly {
        self.sub(&Poly::constant(self.field, c))
    }

    /// Scales to leading coefficient 1.
    pub fn monic(&self) -> Result<Poly> {
        let lead = *self.coeffs.last().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(self.field.inv(lead)?))
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![0u128; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], lead_inv);
            q[i - dd] = c;
            if c == 0 {
                continue;
            }
            for j in 0..=dd {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, divisor.coeffs[j]));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_raw(self.field, q), Poly::from_raw(self.field, r)))
    }

    /// Remainder modulo a monic polynomial of degree >= 1.
    pub(crate) fn rem_monic(&self, m: &Poly) -> Poly {
        debug_assert!(m.is_monic());
        let mut r = self.coeffs.clone();
        kernel::rem_monic(&self.field, &mut r, &m.coeffs);
        Poly::from_raw(self.field, r)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

fn check_modulus(m: &Poly) -> Result<()> {
    if !m.is_monic() || m.degree() == Some(0) {
        return Err(Error::NonMonicModulus);
    }
    Ok(())
}

/// `a * b mod m` for monic `m` of degree >= 1.
pub fn poly_mul_mod(a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
    a.check_same_field(b)?;
    a.check_same_field(m)?;
    check_modulus(m)?;
    Ok(a.rem_monic(m).mul(&b.rem_monic(m)).rem_monic(m))
}

/// `x^e mod m` by left-to-right square-and-multiply.
///
/// Also returns the number of modular polynomial multiplications performed
/// (squarings plus multiplications by `x`), at most `2 * (bits(e) - 1)`.
pub fn x_pow_mod(e: u128, m: &Poly) -> Result<(Poly, u64)> {
    check_modulus(m)?;
    let field = m.field;
    if e == 0 {
        return Ok((Poly::one(field).rem_monic(m), 0));
    }
    let mut acc = Poly::x(field).rem_monic(m).coeffs;
    let mut ops = 0u64;
    for bit in (0..127 - e.leading_zeros()).rev() {
        let mut sq = kernel::mul(&field, &acc, &acc);
        kernel::rem_monic(&field, &mut sq, &m.coeffs);
        acc = sq;
        ops += 1;
        if (e >> bit) & 1 == 1 {
            acc.insert(0, 0);
            kernel::rem_monic(&field, &mut acc, &m.coeffs);
            ops += 1;
        }
    }
    Ok((Poly::from_raw(field, acc), ops))
}

/// `base^e mod m` for monic `m` of degree >= 1.
pub fn pow_mod(base: &Poly, mut e: u128, m: &Poly) -> Result<Poly> {
    base.check_same_field(m)?;
    check_modulus(m)?;
    let field = m.field;
    let mut acc = Poly::one(field).rem_monic(m).coeffs;
    let mut b = base.rem_monic(m).coeffs;
    while e > 0 {
        if e & 1 == 1 {
            acc = kernel::mul(&field, &acc, &b);
            kernel::rem_monic(&field, &mut acc, &m.coeffs);
        }
        e >>= 1;
        if e > 0 {
            b = kernel::mul(&field, &b, &b);
            kernel::rem_monic(&field, &mut b, &m.coeffs);
        }
    }
    Ok(Poly::from_raw(field, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u128) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn random_poly(f: PrimeModulus, len: usize, rng: &mut ChaCha8Rng) -> Poly {
        Poly::from_coeffs(f, (0..len).map(|_| rng.gen_range(0..f.p())).collect())
    }

    fn random_monic(f: PrimeModulus, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        let mut c: Vec<u128> = (0..deg).map(|_| rng.gen_range(0..f.p())).collect();
        c.push(1);
        Poly::from_coeffs(f, c)
    }

    /// Schoolbook product followed by textbook long division.
    fn schoolbook_mul_mod(a: &Poly, b: &Poly, m: &Poly) -> Poly {
        let f = a.field();
        let mut prod = vec![0u128; a.raw_coeffs().len() + b.raw_coeffs().len()];
        for (i, &x) in a.raw_coeffs().iter().enumerate() {
            for (j, &y) in b.raw_coeffs().iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        Poly::from_coeffs(f, prod).div_rem(m).unwrap().1
    }

    #[test]
    fn zero_is_canonical() {
        let f = field(7);
        let z = Poly::from_coeffs(f, vec![0, 0, 7]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z, Poly::zero(f));
        assert_eq!(Poly::from_coeffs(f, vec![1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn mul_mod_examples() {
        let f = field(7);
        let x = Poly::x(f);
        let m = Poly::from_coeffs(f, vec![1, 0, 1]);
        assert_eq!(poly_mul_mod(&x, &x, &m).unwrap(), Poly::constant(f, 6));
        let b = Poly::from_coeffs(f, vec![3, 4, 5, 6]);
        assert_eq!(
            poly_mul_mod(&Poly::one(f), &b, &m).unwrap(),
            b.div_rem(&m).unwrap().1
        );
        let non_monic = Poly::from_coeffs(f, vec![1, 0, 2]);
        assert_eq!(poly_mul_mod(&x, &x, &non_monic), Err(Error::NonMonicModulus));
        assert_eq!(poly_mul_mod(&x, &x, &Poly::one(f)), Err(Error::NonMonicModulus));
    }

    #[test]
    fn mul_mod_matches_schoolbook_oracle() {
        let f = field(101);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let dm = rng.gen_range(1..12);
            let m = random_monic(f, dm, &mut rng);
            let a = random_poly(f, rng.gen_range(0..20), &mut rng);
            let b = random_poly(f, rng.gen_range(0..20), &mut rng);
            assert_eq!(poly_mul_mod(&a, &b, &m).unwrap(), schoolbook_mul_mod(&a, &b, &m));
        }
    }

    #[test]
    fn x_pow_mod_examples() {
        let f = field(7);
        let m = Poly::from_coeffs(f, vec![4, 0, 1]); // x^2 + 4
        let (r, _) = x_pow_mod(2, &m).unwrap();
        assert_eq!(r, Poly::monomial(f, 1, 2).div_rem(&m).unwrap().1);
        let lin = Poly::from_coeffs(f, vec![4, 1]); // x - 3
        assert_eq!(x_pow_mod(7, &lin).unwrap().0, Poly::constant(f, 3));
        assert_eq!(x_pow_mod(0, &m).unwrap().0, Poly::one(f));

        let f = field(101);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_monic(f, 5, &mut rng);
        let x = Poly::x(f);
        let mut iter = Poly::one(f);
        for _ in 0..101 {
            iter = poly_mul_mod(&iter, &x, &m).unwrap();
        }
        let (r, ops) = x_pow_mod(101, &m).unwrap();
        assert_eq!(r, iter);
        assert!(ops <= 2 * 7);
    }

    #[test]
    fn pow_mod_agrees_with_x_pow_mod() {
        let f = field(65537);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = random_monic(f, rng.gen_range(1..10), &mut rng);
            let e = rng.gen_range(0..1_000_000u128);
            assert_eq!(pow_mod(&Poly::x(f), e, &m).unwrap(), x_pow_mod(e, &m).unwrap().0);
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = field(101);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let a = random_poly(f, rng.gen_range(0..15), &mut rng);
            let b = random_poly(f, rng.gen_range(1..8), &mut rng);
            if b.is_zero() {
                assert_eq!(a.div_rem(&b), Err(Error::DivisionByZero));
                continue;
            }
            let (q, r) = a.div_rem(&b).unwrap();
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.degree() < b.degree());
        }
    }

    #[test]
    fn from_roots_and_eval() {
        let f = field(7);
        let g = Poly::from_roots(f, &[1, 2]);
        assert_eq!(g, Poly::from_coeffs(f, vec![2, 4, 1])); // x^2 - 3x + 2
        for r in [1u128, 2] {
            assert!(g.eval(&f.element(r)).unwrap().is_zero());
        }
        assert_eq!(g.to_string(), "x^2 + 4*x + 2");
    }
}
