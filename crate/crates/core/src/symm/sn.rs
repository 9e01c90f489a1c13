//! The power-sum system `S_n`: find all multisets `{x_1..x_n}` over `F_p`
//! with `sum x_i^j = s_j` for `j = 1..n-1`.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{powersums_from_coeffs, Multiset};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, PrimeModulus};
use crate::unipoly::Poly;

/// Largest multiset space `brute_solve_sn` will walk.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

/// `|Omega_n| = C(p + n - 1, n)`, the number of size-`n` multisets over `F_p`.
pub fn omega_size(p: u128, n: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 1..=n {
        acc = acc * BigUint::from(p - 1 + i as u128) / BigUint::from(i);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnInstance {
    field: PrimeModulus,
    n: usize,
    s: Vec<u128>,
}

impl SnInstance {
    /// `s` holds `s_1..s_(n-1)`; requires `1 <= n < p`.
    pub fn new(field: PrimeModulus, n: usize, s: &[FieldElement]) -> Result<Self> {
        if n == 0 || n as u128 >= field.p() {
            return Err(Error::InvalidInput(format!(
                "S_n needs 1 <= n < p, got n = {n}, p = {}",
                field.p()
            )));
        }
        if s.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "S_{n} takes {} power sums, got {}",
                n - 1,
                s.len()
            )));
        }
        let s = s
            .iter()
            .map(|e| field.residue_of(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field, n, s })
    }

    /// The system whose solutions are the root multisets of `f - k` over all
    /// `k`: its right-hand sides are the first `n - 1` power sums of `f`.
    pub fn from_polynomial(f: &Poly) -> Result<Self> {
        let n = f.degree().unwrap_or(0);
        let s = powersums_from_coeffs(f, n.saturating_sub(1))?;
        Self::new(f.field(), n, &s)
    }

    pub fn field(&self) -> PrimeModulus {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn powersums(&self) -> Vec<FieldElement> {
        self.s.iter().map(|&v| self.field.element(v)).collect()
    }
}

/// All solutions of `S_n` by exhaustive enumeration of non-decreasing
/// tuples, in lexicographic order.
pub fn brute_solve_sn(inst: &SnInstance) -> Result<Vec<Multiset>> {
    let field = inst.field;
    let p = field.p();
    let n = inst.n;
    let size = omega_size(p, n as u64);
    if size > BigUint::from(ENUMERATION_LIMIT) {
        let size = u128::try_from(&size).unwrap_or(u128::MAX);
        return Err(Error::EnumerationTooLarge {
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    let m = n - 1;
    // p <= 10^8 here, so indices fit in usize
    let powers: Vec<Vec<u128>> = (0..p)
        .map(|x| {
            let mut row = Vec::with_capacity(m);
            let mut pw = 1u128;
            for _ in 0..m {
                pw = field.mul(pw, x);
                row.push(pw);
            }
            row
        })
        .collect();

    let walker = Walker {
        field,
        n,
        target: &inst.s,
        powers: &powers,
    };
    let solutions: Vec<Vec<Vec<u128>>> = (0..p)
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let mut prefix = vec![first];
            let sums = powers[first as usize].clone();
            walker.extend(&mut prefix, sums, &mut found);
            found
        })
        .collect();
    Ok(solutions
        .into_iter()
        .flatten()
        .map(|v| Multiset::from_raw(field, v))
        .collect())
}

struct Walker<'a> {
    field: PrimeModulus,
    n: usize,
    target: &'a [u128],
    powers: &'a [Vec<u128>],
}

impl Walker<'_> {
    fn extend(&self, prefix: &mut Vec<u128>, sums: Vec<u128>, found: &mut Vec<Vec<u128>>) {
        if prefix.len() == self.n {
            if sums == self.target {
                found.push(prefix.clone());
            }
            return;
        }
        let start = *prefix.last().expect("prefix starts non-empty");
        for x in start..self.field.p() {
            let row = &self.powers[x as usize];
            let next: Vec<u128> = sums
                .iter()
                .zip(row)
                .map(|(&a, &b)| self.field.add(a, b))
                .collect();
            prefix.push(x);
            self.extend(prefix, next, found);
            prefix.pop();
        }
    }
}
