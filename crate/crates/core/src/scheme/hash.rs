//! The hash family `h_c(a) = h(h(a) + c)` with values in `F_p`.

use sha2::{Digest, Sha256};

use crate::ffield::{FieldElement, PrimeModulus};

/// A deterministic map into `F_p`, the base `h` of the family. Inputs are
/// arbitrary `u128` values; the scheme only ever passes residues.
pub trait FieldHash {
    fn hash(&self, field: PrimeModulus, x: u128) -> u128;
}

/// Keyed SHA-256 mapped into `F_p` by rejection sampling.
///
/// Draw `i` is `SHA-256(key || x as 16 LE bytes || i as 4 LE bytes)`; its
/// first 16 bytes, read little-endian and masked to `bits(p)` bits, are
/// accepted when below `p`. Each draw is accepted with probability above
/// 1/2, so there is no modulo bias and the expected number of draws is < 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sha256FieldHash {
    key: Vec<u8>,
}

impl Sha256FieldHash {
    pub const DEFAULT_KEY: &'static [u8] = b"secfilter/h/v1";

    pub fn with_key(key: impl Into<Vec<u8>>) -> Self {
        Self { key: key.into() }
    }
}

impl Default for Sha256FieldHash {
    fn default() -> Self {
        Self::with_key(Self::DEFAULT_KEY)
    }
}

impl FieldHash for Sha256FieldHash {
    fn hash(&self, field: PrimeModulus, x: u128) -> u128 {
        let bits = field.bits();
        let mask = if bits >= 128 { u128::MAX } else { (1u128 << bits) - 1 };
        for counter in 0u32.. {
            let digest = Sha256::new()
                .chain_update(&self.key)
                .chain_update(x.to_le_bytes())
                .chain_update(counter.to_le_bytes())
                .finalize();
            let mut head = [0u8; 16];
            head.copy_from_slice(&digest[..16]);
            let v = u128::from_le_bytes(head) & mask;
            if v < field.p() {
                return v;
            }
        }
        unreachable!("rejection sampling exhausted 2^32 draws")
    }
}

/// Selects `h_c` from the family; transmitted in the clear with a broadcast.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HashSelector {
    c: FieldElement,
}

impl HashSelector {
    pub fn new(c: FieldElement) -> Self {
        Self { c }
    }

    pub fn value(&self) -> FieldElement {
        self.c
    }

    pub fn field(&self) -> PrimeModulus {
        self.c.modulus()
    }

    /// `h_c(a) = h(h(a) + c)` on raw residues.
    pub(crate) fn apply_raw<H: FieldHash + ?Sized>(&self, hash: &H, a: u128) -> u128 {
        let field = self.field();
        let inner = hash.hash(field, a % field.p());
        hash.hash(field, field.add(inner, self.c.value()))
    }
}

/// `h_c(a)` with the default hash.
pub fn hash_eval(c: &HashSelector, a: &FieldElement) -> FieldElement {
    hash_eval_with(&Sha256FieldHash::default(), c, a)
}

/// `h_c(a)` with an explicit base hash. `a` is read as an integer and
/// reduced into `c`'s field.
pub fn hash_eval_with<H: FieldHash + ?Sized>(
    hash: &H,
    c: &HashSelector,
    a: &FieldElement,
) -> FieldElement {
    c.field().element(c.apply_raw(hash, a.value()))
}
