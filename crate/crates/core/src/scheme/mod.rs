//! The secure-filter broadcast.
//!
//! The key authority publishes `f(x) = prod (x - h_c(a_i)) + k`, a monic
//! degree-`n` polynomial, together with the hash selector `c`. Each of the
//! `n` authorized users evaluates `f` at `h_c(a_i)` and obtains `k`.
//!
//! Coefficients are stored lowest degree first: `b[j]` is the coefficient of
//! `x^j` for `j = 0..n`, and the leading 1 is implicit.

mod hash;
mod instance;
mod wire;

pub use hash::{hash_eval, hash_eval_with, FieldHash, HashSelector, Sha256FieldHash};
pub use instance::Instance;
pub use wire::{deserialize, serialize, transmission_cost, TransmissionCost, HEADER_LEN, MAGIC};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, PrimeModulus};
use crate::unipoly::Poly;

/// A user's private key `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UserKey {
    a: FieldElement,
}

impl UserKey {
    pub fn new(a: FieldElement) -> Self {
        Self { a }
    }

    pub fn value(&self) -> FieldElement {
        self.a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Broadcast {
    field: PrimeModulus,
    b: Vec<u128>,
    c: HashSelector,
}

impl Broadcast {
    /// `b` holds the `n` coefficients below the leading one, ascending.
    pub fn new(field: PrimeModulus, b: &[FieldElement], c: HashSelector) -> Result<Self> {
        let b = b
            .iter()
            .map(|e| field.residue_of(e))
            .collect::<Result<Vec<_>>>()?;
        Self::from_raw(field, b, c)
    }

    pub(crate) fn from_raw(field: PrimeModulus, b: Vec<u128>, c: HashSelector) -> Result<Self> {
        check_degree(field, b.len())?;
        if c.field() != field {
            return Err(Error::ModulusMismatch {
                left: field.p(),
                right: c.field().p(),
            });
        }
        if let Some(&bad) = b.iter().find(|&&v| v >= field.p()) {
            return Err(Error::InvalidInput(format!("coefficient {bad} is not reduced mod {}", field.p())));
        }
        Ok(Self { field, b, c })
    }

    pub fn field(&self) -> PrimeModulus {
        self.field
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn selector(&self) -> HashSelector {
        self.c
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.b.iter().map(|&v| self.field.element(v)).collect()
    }

    pub fn raw_coefficients(&self) -> &[u128] {
        &self.b
    }

    /// The monic filter polynomial `f`.
    pub fn polynomial(&self) -> Poly {
        let mut coeffs = self.b.clone();
        coeffs.push(1);
        Poly::from_raw(self.field, coeffs)
    }
}

fn check_degree(field: PrimeModulus, n: usize) -> Result<()> {
    if n == 0 || n as u128 >= field.p() {
        return Err(Error::InvalidInput(format!(
            "a broadcast needs 1 <= n < p, got n = {n}, p = {}",
            field.p()
        )));
    }
    Ok(())
}

/// Builds `f = prod (x - h_c(a_i)) + k` with the default hash.
pub fn build_broadcast(users: &[UserKey], k: &FieldElement, c: &HashSelector) -> Result<Broadcast> {
    build_broadcast_with(&Sha256FieldHash::default(), users, k, c)
}

/// Fails with [`Error::HashCollision`] if two users hash to the same point;
/// the caller should then pick a fresh `c`.
pub fn build_broadcast_with<H: FieldHash + ?Sized>(
    hash: &H,
    users: &[UserKey],
    k: &FieldElement,
    c: &HashSelector,
) -> Result<Broadcast> {
    let field = c.field();
    check_degree(field, users.len())?;
    let k = field.residue_of(k)?;
    let mut points = Vec::with_capacity(users.len());
    for u in users {
        let a = field.residue_of(&u.a)?;
        points.push(c.apply_raw(hash, a));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::HashCollision { first, second });
        }
    }
    let f = Poly::from_roots(field, &points);
    let mut b = f.into_raw();
    b.pop(); // leading 1
    b[0] = field.add(b[0], k);
    Broadcast::from_raw(field, b, *c)
}

/// `f(h_c(a))` by Horner's rule with the default hash. For an authorized user
/// this is the broadcast key; for anyone else it is an unrelated element.
pub fn recover_key(bc: &Broadcast, user: &UserKey) -> Result<FieldElement> {
    recover_key_with(&Sha256FieldHash::default(), bc, user)
}

pub fn recover_key_with<H: FieldHash + ?Sized>(
    hash: &H,
    bc: &Broadcast,
    user: &UserKey,
) -> Result<FieldElement> {
    let field = bc.field;
    let a = field.residue_of(&user.a)?;
    let x = bc.c.apply_raw(hash, a);
    let value = bc
        .b
        .iter()
        .rev()
        .fold(1u128, |acc, &coef| field.add(field.mul(acc, x), coef));
    Ok(field.element(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::splitting_test;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u128) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn single_user_filter() {
        let f = field(101);
        let c = HashSelector::new(f.element(5));
        let user = UserKey::new(f.element(17));
        let k = f.element(40);
        let bc = build_broadcast(&[user], &k, &c).unwrap();
        let h = hash_eval(&c, &user.value());
        assert_eq!(bc.coefficients(), vec![k - h]);
        assert_eq!(recover_key(&bc, &user).unwrap(), k);
        assert_eq!(bc.coefficients()[0] + h, k);
    }

    #[test]
    fn zero_key_constant_term_is_signed_root_product() {
        let f = field(1_000_003);
        let c = HashSelector::new(f.element(99));
        let users: Vec<UserKey> = (1..=5).map(|a| UserKey::new(f.element(a))).collect();
        let bc = build_broadcast(&users, &f.zero(), &c).unwrap();
        let prod = users
            .iter()
            .map(|u| hash_eval(&c, &u.value()))
            .fold(f.one(), |acc, h| acc * h);
        assert_eq!(bc.coefficients()[0], -prod); // (-1)^5
    }

    #[test]
    fn filter_evaluates_to_key_at_every_user() {
        let f = field(101);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let inst = Instance::generate(f, 5, &mut rng).unwrap();
        let bc = inst.broadcast().unwrap();
        let poly = bc.polynomial();
        let k = inst.planted_key().unwrap();
        assert_eq!(poly.degree(), Some(5));
        assert!(poly.is_monic());
        for u in inst.users().unwrap() {
            let h = hash_eval(&bc.selector(), &u.value());
            assert_eq!(poly.eval(&h).unwrap(), k);
        }
        assert!(splitting_test(&poly, &k).unwrap());
    }

    #[test]
    fn thousand_random_recoveries() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000);
        let primes = [101u128, 65537, 1_000_003, (1 << 61) - 1];
        for i in 0..1000 {
            let f = field(primes[i % primes.len()]);
            let n = rng.gen_range(1..20.min(f.p() as usize));
            let inst = Instance::generate(f, n, &mut rng).unwrap();
            let bc = inst.broadcast().unwrap();
            let k = inst.planted_key().unwrap();
            for u in inst.users().unwrap() {
                assert_eq!(recover_key(&bc, &u).unwrap(), k);
            }
        }
    }

    #[test]
    fn collisions_are_rejected() {
        let f = field(101);
        let c = HashSelector::new(f.element(3));
        let users = [7u128, 8, 7].map(|a| UserKey::new(f.element(a)));
        assert_eq!(
            build_broadcast(&users, &f.one(), &c),
            Err(Error::HashCollision { first: 0, second: 2 })
        );
    }

    #[test]
    fn degree_bounds() {
        let f = field(7);
        let c = HashSelector::new(f.zero());
        assert!(build_broadcast(&[], &f.one(), &c).is_err());
        let seven: Vec<UserKey> = (0..7).map(|a| UserKey::new(f.element(a))).collect();
        assert!(build_broadcast(&seven, &f.one(), &c).is_err());
        let other = HashSelector::new(field(11).zero());
        assert!(matches!(
            Broadcast::new(f, &[f.one()], other),
            Err(Error::ModulusMismatch { .. })
        ));
    }
}
