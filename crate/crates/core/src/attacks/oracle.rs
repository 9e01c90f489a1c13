//! An independent route to the `c_(i, omega)`, for testing only: compute
//! `x^p - x mod (f(x) - y0)` at every point `y0`, interpolate each
//! coefficient as a polynomial in `y`, then reduce mod `y^d1 - omega`.

use crate::error::{Error, Result};
use crate::ffield::FieldElement;
use crate::unipoly::{x_pow_mod, Poly};

/// Largest `p` the oracle accepts.
pub const ORACLE_LIMIT: u128 = 1 << 12;

/// The unreduced `c_i(y)`, `i = 0..n`, each of degree `<= p - 1`.
///
/// Interpolation through all of `F_p` uses
/// `L_y0(y) = 1 - (y - y0)^(p-1) = 1 - sum_t y0^(p-1-t) y^t`.
pub fn interpolated_ci(f: &Poly) -> Result<Vec<Poly>> {
    let field = f.field();
    let p = field.p();
    if p > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge { p, limit: ORACLE_LIMIT });
    }
    let n = f.degree().filter(|&d| d > 0).ok_or(Error::NonMonicModulus)?;
    let pu = p as usize;
    // values[i][y0] = coefficient of x^i in x^p - x mod (f - y0)
    let mut values = vec![vec![0u128; pu]; n];
    for y0 in 0..p {
        let g = f.sub_constant(y0);
        let (xp, _) = x_pow_mod(p, &g)?;
        let r = xp.sub(&Poly::x(field).div_rem(&g)?.1);
        for (i, row) in values.iter_mut().enumerate() {
            row[y0 as usize] = r.coeff(i).value();
        }
    }
    // powers[y0][e] = y0^e, with 0^0 = 1
    let powers: Vec<Vec<u128>> = (0..p)
        .map(|y0| {
            let mut row = Vec::with_capacity(pu);
            let mut acc = 1u128;
            for _ in 0..pu {
                row.push(acc);
                acc = field.mul(acc, y0);
            }
            row
        })
        .collect();
    Ok(values
        .iter()
        .map(|vals| {
            let mut coeffs = vec![0u128; pu];
            let total = vals.iter().fold(0u128, |a, &v| field.add(a, v));
            coeffs[0] = total;
            for (t, c) in coeffs.iter_mut().enumerate() {
                let mut s = 0u128;
                for (y0, &v) in vals.iter().enumerate() {
                    if v != 0 {
                        s = field.add(s, field.mul(v, powers[y0][pu - 1 - t]));
                    }
                }
                *c = field.sub(*c, s);
            }
            Poly::from_coeffs(field, coeffs)
        })
        .collect())
}

/// `c_i(y) mod (y^d1 - omega)` for each already interpolated `c_i`.
pub fn reduce_ci(ci: &[Poly], d1: usize, omega: &FieldElement) -> Result<Vec<Poly>> {
    let Some(first) = ci.first() else {
        return Ok(Vec::new());
    };
    let field = first.field();
    let m = Poly::monomial(field, 1, d1).sub_constant(field.residue_of(omega)?);
    ci.iter().map(|c| Ok(c.div_rem(&m)?.1)).collect()
}

/// [`interpolated_ci`] followed by [`reduce_ci`].
pub fn direct_ci_oracle(f: &Poly, d1: usize, omega: &FieldElement) -> Result<Vec<Poly>> {
    reduce_ci(&interpolated_ci(f)?, d1, omega)
}
