//! Arithmetic in `F_p[x, y] / (f(x) - y, y^d1 - omega)`.
//!
//! An element is an `n x d1` matrix, entry `(i, j)` the coefficient of
//! `x^i y^j`, stored row-major. Products are reduced eagerly: first in `y`
//! with `y^d1 = omega`, then in `x` from the top with
//! `x^n = y - sum_{j<n} b_j x^j`.

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, PrimeModulus};
use crate::unipoly::{kernel, Poly};

/// The quotient ring for one broadcast polynomial and one `omega`.
#[derive(Debug, Clone)]
pub struct BiRing {
    field: PrimeModulus,
    /// `b_0..b_(n-1)` of the monic `f`.
    b: Vec<u128>,
    d1: usize,
    omega: u128,
}

/// An element of a [`BiRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiResidue {
    n: usize,
    d1: usize,
    mat: Vec<u128>,
}

impl BiResidue {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn coeff(&self, i: usize, j: usize) -> u128 {
        self.mat[i * self.d1 + j]
    }

    pub fn row(&self, i: usize) -> &[u128] {
        &self.mat[i * self.d1..(i + 1) * self.d1]
    }

    /// Bits needed to hold the table at `bits` bits per entry.
    pub fn table_bits(&self, bits: u32) -> u128 {
        (self.n * self.d1) as u128 * bits as u128
    }
}

impl BiRing {
    /// `f` monic of degree `n >= 1`, `d1 >= 1`.
    pub fn new(f: &Poly, d1: usize, omega: &FieldElement) -> Result<Self> {
        let field = f.field();
        if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
            return Err(Error::NonMonicModulus);
        }
        if d1 == 0 {
            return Err(Error::InvalidInput("d1 must be at least 1".into()));
        }
        let omega = field.residue_of(omega)?;
        let mut b = f.raw_coeffs().to_vec();
        b.pop();
        Ok(Self { field, b, d1, omega })
    }

    pub fn field(&self) -> PrimeModulus {
        self.field
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn omega(&self) -> FieldElement {
        self.field.element(self.omega)
    }

    pub fn zero(&self) -> BiResidue {
        BiResidue {
            n: self.n(),
            d1: self.d1,
            mat: vec![0; self.n() * self.d1],
        }
    }

    /// The class of `x`.
    pub fn x(&self) -> BiResidue {
        let mut rows = vec![vec![0u128; self.d1]; self.n().max(2)];
        rows[1][0] = 1;
        self.reduce_x(rows)
    }

    pub fn sub(&self, a: &BiResidue, b: &BiResidue) -> BiResidue {
        let mat = a
            .mat
            .iter()
            .zip(&b.mat)
            .map(|(&u, &v)| self.field.sub(u, v))
            .collect();
        BiResidue { mat, ..*a }
    }

    pub fn mul(&self, a: &BiResidue, b: &BiResidue) -> BiResidue {
        let n = self.n();
        let mut rows = vec![vec![0u128; 2 * self.d1 - 1]; 2 * n - 1];
        for i in 0..n {
            let ai = a.row(i);
            if ai.iter().all(|&v| v == 0) {
                continue;
            }
            for j in 0..n {
                self.accumulate(&mut rows[i + j], &kernel::mul(&self.field, ai, b.row(j)));
            }
        }
        self.reduce(rows)
    }

    /// Squaring, computing each cross product once.
    pub fn square(&self, a: &BiResidue) -> BiResidue {
        let n = self.n();
        let mut rows = vec![vec![0u128; 2 * self.d1 - 1]; 2 * n - 1];
        for i in 0..n {
            let ai = a.row(i);
            if ai.iter().all(|&v| v == 0) {
                continue;
            }
            self.accumulate(&mut rows[2 * i], &kernel::mul(&self.field, ai, ai));
            for j in i + 1..n {
                let prod = kernel::mul(&self.field, ai, a.row(j));
                let doubled: Vec<u128> = prod.iter().map(|&v| self.field.add(v, v)).collect();
                self.accumulate(&mut rows[i + j], &doubled);
            }
        }
        self.reduce(rows)
    }

    /// Multiplication by `x`: shift every row up one power of `x`.
    pub fn mul_x(&self, a: &BiResidue) -> BiResidue {
        let n = self.n();
        let mut rows = vec![vec![0u128; self.d1]; n + 1];
        for i in 0..n {
            rows[i + 1].copy_from_slice(a.row(i));
        }
        self.reduce_x(rows)
    }

    /// Number of coefficient multiplications in one [`BiRing::mul`], counted
    /// as schoolbook products (a normalization, not the kernel's actual cost).
    pub fn mul_work(&self) -> u64 {
        let (n, d1) = (self.n() as u64, self.d1 as u64);
        n * n * d1 * d1 + n * n * d1
    }

    fn accumulate(&self, row: &mut [u128], prod: &[u128]) {
        for (r, &v) in row.iter_mut().zip(prod) {
            *r = self.field.add(*r, v);
        }
    }

    /// Fold `y^d1 = omega` in every row, then reduce in `x`.
    fn reduce(&self, rows: Vec<Vec<u128>>) -> BiResidue {
        let d1 = self.d1;
        let folded = rows
            .into_iter()
            .map(|mut row| {
                for j in (d1..row.len()).rev() {
                    let hi = row[j];
                    if hi != 0 {
                        // j - d1 < d1 always, since rows have length < 2 d1
                        row[j - d1] = self.field.add(row[j - d1], self.field.mul(self.omega, hi));
                    }
                }
                row.truncate(d1);
                row
            })
            .collect();
        self.reduce_x(folded)
    }

    /// Rows already have length `d1`; eliminate rows `n..` from the top.
    fn reduce_x(&self, mut rows: Vec<Vec<u128>>) -> BiResidue {
        let n = self.n();
        let d1 = self.d1;
        let f = &self.field;
        for i in (n..rows.len()).rev() {
            let top = std::mem::take(&mut rows[i]);
            if top.iter().all(|&v| v == 0) {
                continue;
            }
            let base = i - n;
            // + y * top
            {
                let target = &mut rows[base];
                let wrap = f.mul(self.omega, top[d1 - 1]);
                for j in (1..d1).rev() {
                    target[j] = f.add(target[j], top[j - 1]);
                }
                target[0] = f.add(target[0], wrap);
            }
            // - sum b_j x^j * top
            for (j, &bj) in self.b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let target = &mut rows[base + j];
                for (t, &v) in target.iter_mut().zip(&top) {
                    *t = f.sub(*t, f.mul(bj, v));
                }
            }
        }
        rows.truncate(n);
        let mat = rows.concat();
        BiResidue { n, d1, mat }
    }
}

/// Result of [`x_pow_p_minus_x`]: the residue and the multiplication count.
pub(crate) struct Frobenius {
    pub residue: BiResidue,
    pub poly_mul: u64,
    pub coeff_work: u64,
}

/// `x^p - x` in the ring by left-to-right square-and-multiply.
pub(crate) fn x_pow_p_minus_x(ring: &BiRing) -> Frobenius {
    let p = ring.field.p();
    let x = ring.x();
    let mut acc = x.clone();
    let mut poly_mul = 0u64;
    let mut coeff_work = 0u64;
    let (n, d1) = (ring.n() as u64, ring.d1 as u64);
    for bit in (0..127 - p.leading_zeros()).rev() {
        acc = ring.square(&acc);
        poly_mul += 1;
        coeff_work += ring.mul_work();
        if (p >> bit) & 1 == 1 {
            acc = ring.mul_x(&acc);
            poly_mul += 1;
            coeff_work += n * n * d1;
        }
    }
    Frobenius {
        residue: ring.sub(&acc, &x),
        poly_mul,
        coeff_work,
    }
}

/// The `n` polynomials `c_(i, omega)(y)` with
/// `x^p - x = sum_i c_(i, omega)(y) x^i` modulo `(f(x) - y, y^d1 - omega)`.
pub fn bi_reduce_powmod(f: &Poly, d1: usize, omega: &FieldElement) -> Result<Vec<Poly>> {
    let ring = BiRing::new(f, d1, omega)?;
    let r = x_pow_p_minus_x(&ring).residue;
    Ok((0..ring.n())
        .map(|i| Poly::from_coeffs(ring.field, r.row(i).to_vec()))
        .collect())
}
