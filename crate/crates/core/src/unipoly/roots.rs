use rand::Rng;

use super::{check_modulus, kernel, pow_mod, x_pow_mod, Poly};
use crate::error::{Error, Result};
use crate::ffield::FieldElement;

/// Below this field size roots are found by evaluating at every point.
const EXHAUSTIVE_ROOT_LIMIT: u128 = 10_000;

/// Monic gcd by the Euclidean algorithm; `gcd(a, 0) = monic(a)`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let field = a.field();
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        b = b.monic()?;
        let mut r = a.into_raw();
        kernel::rem_monic(&field, &mut r, &b.coeffs);
        a = b;
        b = Poly::from_raw(field, r);
    }
    a.monic()
}

/// `(x^p - x) mod g` for monic `g` of degree >= 1, with the operation count.
fn frobenius_residue(g: &Poly) -> Result<(Poly, u64)> {
    let field = g.field();
    let (xp, ops) = x_pow_mod(field.p(), g)?;
    Ok((xp.sub(&Poly::x(field).rem_monic(g)), ops))
}

/// Whether `x^p - x = 0 mod (f - k)`, i.e. whether `f - k` is a product of
/// distinct linear factors over `F_p`.
///
/// `f` must be monic with `1 <= deg f < p`.
pub fn splitting_test(f: &Poly, k: &FieldElement) -> Result<bool> {
    splitting_test_counted(f, k).map(|(ok, _)| ok)
}

/// [`splitting_test`] plus the number of modular multiplications it used.
pub fn splitting_test_counted(f: &Poly, k: &FieldElement) -> Result<(bool, u64)> {
    check_modulus(f)?;
    let field = f.field();
    let k = field.residue_of(k)?;
    let deg = f.degree().unwrap_or(0);
    if deg as u128 >= field.p() {
        return Err(Error::DegreeTooLarge {
            degree: deg,
            p: field.p(),
        });
    }
    let g = f.sub_constant(k);
    let (r, ops) = frobenius_residue(&g)?;
    Ok((r.is_zero(), ops))
}

/// Peels `g` into layers: layer `i` is the product of the distinct roots of
/// `g` with multiplicity > `i`. Fails with `NotSplitting` if an irreducible
/// factor of degree >= 2 is left over.
fn root_layers(g: &Poly) -> Result<Vec<Poly>> {
    check_modulus(g)?;
    let mut rest = g.clone();
    let mut layers = Vec::new();
    while rest.degree().is_some_and(|d| d > 0) {
        let (r, _) = frobenius_residue(&rest)?;
        let h = poly_gcd(&rest, &r)?;
        if h.degree() == Some(0) {
            return Err(Error::NotSplitting);
        }
        rest = rest.div_rem(&h)?.0;
        layers.push(h);
    }
    Ok(layers)
}

/// Whether monic `g` (degree >= 1) is a product of linear factors over
/// `F_p`, repeated roots allowed.
pub fn splits_completely(g: &Poly) -> Result<bool> {
    match root_layers(g) {
        Ok(_) => Ok(true),
        Err(Error::NotSplitting) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Roots of a monic `g` that splits completely, with multiplicity, ascending.
pub fn find_roots<R: Rng + ?Sized>(g: &Poly, rng: &mut R) -> Result<Vec<FieldElement>> {
    let mut roots = Vec::new();
    for layer in root_layers(g)? {
        squarefree_split_roots(&layer, rng, &mut roots)?;
    }
    roots.sort_unstable();
    let field = g.field();
    Ok(roots.into_iter().map(|r| field.element(r)).collect())
}

/// The distinct roots in `F_p` of any nonzero `g`, ascending.
pub fn distinct_roots<R: Rng + ?Sized>(g: &Poly, rng: &mut R) -> Result<Vec<FieldElement>> {
    let field = g.field();
    let g = g.monic()?;
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let (r, _) = frobenius_residue(&g)?;
    let h = poly_gcd(&g, &r)?;
    let mut roots = Vec::new();
    squarefree_split_roots(&h, rng, &mut roots)?;
    roots.sort_unstable();
    Ok(roots.into_iter().map(|r| field.element(r)).collect())
}

/// Roots of a monic, squarefree, completely splitting polynomial.
pub(crate) fn squarefree_split_roots<R: Rng + ?Sized>(
    h: &Poly,
    rng: &mut R,
    out: &mut Vec<u128>,
) -> Result<()> {
    let field = h.field();
    let p = field.p();
    match h.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(field.neg(h.coeffs[0]));
            return Ok(());
        }
        _ => {}
    }
    if p <= EXHAUSTIVE_ROOT_LIMIT {
        out.extend((0..p).filter(|&x| h.eval_raw(x) == 0));
        return Ok(());
    }
    // Cantor–Zassenhaus: (x + a)^((p-1)/2) - 1 picks out the roots r for
    // which r + a is a nonzero square.
    let deg = h.degree().unwrap_or(0);
    loop {
        let a = rng.gen_range(0..p);
        let shifted = Poly::from_raw(field, vec![a, 1]);
        let w = pow_mod(&shifted, (p - 1) / 2, h)?.sub_constant(1);
        if w.is_zero() {
            continue;
        }
        let g = poly_gcd(h, &w)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < deg {
            let rest = h.div_rem(&g)?.0;
            squarefree_split_roots(&g, rng, out)?;
            squarefree_split_roots(&rest, rng, out)?;
            return Ok(());
        }
    }
}
