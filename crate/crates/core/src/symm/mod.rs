//! Power sums, elementary symmetric functions and the counting/estimation
//! tools built on them.
//!
//! Sign convention: `sigma_j` is the standard (unsigned) elementary symmetric
//! function of the roots, so `prod (x - r_i) = sum_j (-1)^j sigma_j x^(n-j)`.
//! Newton's identities then read
//!
//! ```text
//! j * sigma_j = sum_{i=1..j} (-1)^(i-1) sigma_(j-i) s_i        (sigma_0 = 1)
//! ```
//!
//! so `sigma_1 = s_1` and `sigma_2 = (s_1^2 - s_2) / 2`. Writing the monic
//! polynomial as `x^n + sum e_(n-j) x^j` makes `e_j = (-1)^j sigma_j`; the
//! two agree only up to that sign, and everything here is expressed through
//! `sigma_j`.

mod estimate;
mod sn;

pub use estimate::{
    expected_candidates, expected_candidates_approx, expected_candidates_exact, invert_factorial,
    lambert_w, ln_expected_candidates, threshold_n, ExpectedCandidates,
};
pub use sn::{brute_solve_sn, omega_size, SnInstance, ENUMERATION_LIMIT};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, PrimeModulus};
use crate::unipoly::Poly;

/// An unordered tuple of field elements, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    field: PrimeModulus,
    elems: Vec<u128>,
}

impl Multiset {
    pub fn new(field: PrimeModulus, elems: &[FieldElement]) -> Result<Self> {
        let raw = elems
            .iter()
            .map(|e| field.residue_of(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(field, raw))
    }

    pub(crate) fn from_raw(field: PrimeModulus, mut elems: Vec<u128>) -> Self {
        elems.iter_mut().for_each(|e| *e %= field.p());
        elems.sort_unstable();
        Self { field, elems }
    }

    pub fn field(&self) -> PrimeModulus {
        self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<FieldElement> {
        self.elems.iter().map(|&e| self.field.element(e)).collect()
    }

    pub fn values(&self) -> &[u128] {
        &self.elems
    }

    /// `prod (x - r)` over the elements.
    pub fn polynomial(&self) -> Poly {
        Poly::from_roots(self.field, &self.elems)
    }
}

/// Paired power sums `s_1..s_m` and elementary symmetric values
/// `sigma_1..sigma_m`, always Newton-consistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymData {
    field: PrimeModulus,
    s: Vec<u128>,
    sigma: Vec<u128>,
}

impl SymData {
    /// Requires `m < p`.
    pub fn from_powersums(field: PrimeModulus, s: &[FieldElement]) -> Result<Self> {
        let s = raw(field, s)?;
        let sigma = elementary_from_powersums(field, &s)?;
        Ok(Self { field, s, sigma })
    }

    pub fn from_elementary(field: PrimeModulus, sigma: &[FieldElement]) -> Result<Self> {
        let sigma = raw(field, sigma)?;
        let s = powersums_from_elementary(field, &sigma, sigma.len());
        Ok(Self { field, s, sigma })
    }

    pub fn powersums(&self) -> Vec<FieldElement> {
        self.s.iter().map(|&v| self.field.element(v)).collect()
    }

    pub fn elementary(&self) -> Vec<FieldElement> {
        self.sigma.iter().map(|&v| self.field.element(v)).collect()
    }
}

fn raw(field: PrimeModulus, v: &[FieldElement]) -> Result<Vec<u128>> {
    v.iter().map(|e| field.residue_of(e)).collect()
}

/// `sigma_1..sigma_m` from `s_1..s_m` by the triangular Newton recursion.
fn elementary_from_powersums(field: PrimeModulus, s: &[u128]) -> Result<Vec<u128>> {
    let m = s.len();
    if m as u128 >= field.p() {
        return Err(Error::DegreeTooLarge {
            degree: m,
            p: field.p(),
        });
    }
    let mut sigma = vec![1u128]; // sigma_0
    for j in 1..=m {
        let mut acc = 0u128;
        for i in 1..=j {
            let term = field.mul(sigma[j - i], s[i - 1]);
            acc = if i % 2 == 1 {
                field.add(acc, term)
            } else {
                field.sub(acc, term)
            };
        }
        sigma.push(field.mul(acc, field.inv(j as u128)?));
    }
    sigma.remove(0);
    Ok(sigma)
}

/// `s_1..s_m` from `sigma_1..sigma_n` (`m <= n`).
fn powersums_from_elementary(field: PrimeModulus, sigma: &[u128], m: usize) -> Vec<u128> {
    debug_assert!(m <= sigma.len());
    let mut s: Vec<u128> = Vec::with_capacity(m);
    for j in 1..=m {
        let mut acc = field.mul(j as u128 % field.p(), sigma[j - 1]);
        if j % 2 == 0 {
            acc = field.neg(acc);
        }
        for i in 1..j {
            let term = field.mul(sigma[i - 1], s[j - i - 1]);
            acc = if i % 2 == 1 {
                field.add(acc, term)
            } else {
                field.sub(acc, term)
            };
        }
        s.push(acc);
    }
    s
}

/// `s_j = sum r^j` for `j = 1..=m`.
pub fn powersums_from_roots(roots: &Multiset, m: usize) -> Vec<FieldElement> {
    let field = roots.field;
    let mut sums = vec![0u128; m];
    for &r in &roots.elems {
        let mut pw = 1u128;
        for s in sums.iter_mut() {
            pw = field.mul(pw, r);
            *s = field.add(*s, pw);
        }
    }
    sums.into_iter().map(|v| field.element(v)).collect()
}

/// The monic degree-`n` polynomial whose roots have power sums
/// `s_1..s_n`, where `n = s.len() < p`.
pub fn coeffs_from_powersums(field: PrimeModulus, s: &[FieldElement]) -> Result<Poly> {
    let n = s.len();
    let sigma = elementary_from_powersums(field, &raw(field, s)?)?;
    let mut coeffs = vec![0u128; n + 1];
    coeffs[n] = 1;
    for (j, &sj) in sigma.iter().enumerate() {
        let j = j + 1;
        coeffs[n - j] = if j % 2 == 0 { sj } else { field.neg(sj) };
    }
    Ok(Poly::from_raw(field, coeffs))
}

/// First `m <= deg g` power sums of the roots of monic `g`.
pub fn powersums_from_coeffs(g: &Poly, m: usize) -> Result<Vec<FieldElement>> {
    if !g.is_monic() {
        return Err(Error::NonMonicModulus);
    }
    let n = g.degree().unwrap_or(0);
    if m > n {
        return Err(Error::InvalidInput(format!(
            "{m} power sums requested from a degree-{n} polynomial"
        )));
    }
    let field = g.field();
    let c = g.raw_coeffs();
    let sigma: Vec<u128> = (1..=n)
        .map(|j| if j % 2 == 0 { c[n - j] } else { field.neg(c[n - j]) })
        .collect();
    Ok(powersums_from_elementary(field, &sigma, m)
        .into_iter()
        .map(|v| field.element(v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u128) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn vals(v: &[FieldElement]) -> Vec<u128> {
        v.iter().map(|e| e.value()).collect()
    }

    fn elems(f: PrimeModulus, v: &[u128]) -> Vec<FieldElement> {
        v.iter().map(|&x| f.element(x)).collect()
    }

    #[test]
    fn powersums_of_one_two() {
        let f = field(7);
        let r = Multiset::from_raw(f, vec![2, 1]);
        assert_eq!(r.values(), &[1, 2]);
        assert_eq!(vals(&powersums_from_roots(&r, 2)), vec![3, 5]);
        let zeros = Multiset::from_raw(f, vec![0, 0, 0]);
        assert_eq!(vals(&powersums_from_roots(&zeros, 4)), vec![0; 4]);
    }

    #[test]
    fn coeffs_from_small_powersums() {
        let f = field(7);
        let g = coeffs_from_powersums(f, &elems(f, &[3, 5])).unwrap();
        // x^2 - 3x + 2
        assert_eq!(g.raw_coeffs(), &[2, 4, 1]);
        let sym = SymData::from_powersums(f, &elems(f, &[3, 5])).unwrap();
        assert_eq!(vals(&sym.elementary()), vec![3, 2]);
        assert_eq!(
            coeffs_from_powersums(f, &elems(f, &[0, 0, 0])).unwrap(),
            Poly::monomial(f, 1, 3)
        );
        assert!(matches!(
            coeffs_from_powersums(f, &elems(f, &[1; 7])),
            Err(Error::DegreeTooLarge { degree: 7, p: 7 })
        ));
    }

    #[test]
    fn powersums_from_small_coeffs() {
        let f = field(7);
        let g = Poly::from_coeffs(f, vec![2, 4, 1]);
        assert_eq!(vals(&powersums_from_coeffs(&g, 2).unwrap()), vec![3, 5]);
        assert_eq!(vals(&powersums_from_coeffs(&Poly::monomial(f, 1, 4), 4).unwrap()), vec![0; 4]);
        assert!(powersums_from_coeffs(&g, 3).is_err());
    }

    #[test]
    fn product_oracle_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = field(101);
        for _ in 0..200 {
            let n = rng.gen_range(1..30);
            let roots = Multiset::from_raw(f, (0..n).map(|_| rng.gen_range(0..101)).collect());
            let s = powersums_from_roots(&roots, n);
            let g = coeffs_from_powersums(f, &s).unwrap();
            assert_eq!(g, roots.polynomial());
            assert_eq!(powersums_from_coeffs(&g, n).unwrap(), s);
        }
    }

    #[test]
    fn symdata_is_consistent_both_ways() {
        let f = field(65537);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sigma: Vec<FieldElement> = (0..12).map(|_| f.element(rng.gen_range(0..65537))).collect();
        let a = SymData::from_elementary(f, &sigma).unwrap();
        let b = SymData::from_powersums(f, &a.powersums()).unwrap();
        assert_eq!(a, b);
    }
}
