//! Human-readable instance files: a broadcast, optionally with the planted
//! key and the authorized user keys (for fixtures and verification).
//!
//! ```json
//! { "p": 101, "n": 2, "c": 7, "b": [13, 54], "k": 9, "users": [3, 88] }
//! ```

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{build_broadcast, Broadcast, HashSelector, UserKey};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, PrimeModulus};

/// Redraws (of the selector and one colliding user) before giving up.
const GENERATION_ATTEMPTS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub p: u128,
    pub n: usize,
    pub c: u128,
    pub b: Vec<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub users: Option<Vec<u128>>,
}

impl Instance {
    pub fn from_broadcast(bc: &Broadcast) -> Self {
        Self {
            p: bc.field().p(),
            n: bc.n(),
            c: bc.selector().value().value(),
            b: bc.raw_coefficients().to_vec(),
            k: None,
            users: None,
        }
    }

    /// `n` distinct random user keys, a uniform key `k` and a uniform
    /// selector. On a hash collision the selector is redrawn and one of the
    /// two colliding users is replaced.
    pub fn generate<R: Rng + ?Sized>(field: PrimeModulus, n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || n as u128 >= field.p() {
            return Err(Error::InvalidInput(format!(
                "need 1 <= n < p, got n = {n}, p = {}",
                field.p()
            )));
        }
        let p = field.p();
        let mut keys: Vec<u128> = Vec::with_capacity(n);
        let mut seen = std::collections::HashSet::with_capacity(n);
        while keys.len() < n {
            let a = rng.gen_range(0..p);
            if seen.insert(a) {
                keys.push(a);
            }
        }
        let k = field.element(rng.gen_range(0..p));
        for _ in 0..GENERATION_ATTEMPTS {
            let c = HashSelector::new(field.element(rng.gen_range(0..p)));
            let users: Vec<UserKey> = keys.iter().map(|&a| UserKey::new(field.element(a))).collect();
            match build_broadcast(&users, &k, &c) {
                Ok(bc) => {
                    let mut inst = Self::from_broadcast(&bc);
                    inst.k = Some(k.value());
                    inst.users = Some(keys);
                    return Ok(inst);
                }
                // A collision of the inner hash survives every selector, so
                // the second user of the pair gets a fresh key as well.
                Err(Error::HashCollision { second, .. }) => {
                    if seen.len() as u128 >= p {
                        break;
                    }
                    loop {
                        let a = rng.gen_range(0..p);
                        if seen.insert(a) {
                            keys[second] = a;
                            break;
                        }
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::GenerationFailed(format!(
            "no collision-free user set of size {n} over p = {p} in {GENERATION_ATTEMPTS} attempts"
        )))
    }

    pub fn field(&self) -> Result<PrimeModulus> {
        PrimeModulus::new(self.p)
    }

    /// Validates the record and rebuilds the broadcast.
    pub fn broadcast(&self) -> Result<Broadcast> {
        let field = self.field()?;
        if self.b.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "n = {} but {} coefficients given",
                self.n,
                self.b.len()
            )));
        }
        if self.c >= self.p {
            return Err(Error::InvalidInput(format!("selector {} is not reduced mod {}", self.c, self.p)));
        }
        Broadcast::from_raw(field, self.b.clone(), HashSelector::new(field.element(self.c)))
    }

    pub fn planted_key(&self) -> Option<FieldElement> {
        let field = self.field().ok()?;
        self.k.filter(|&k| k < self.p).map(|k| field.element(k))
    }

    pub fn users(&self) -> Option<Vec<UserKey>> {
        let field = self.field().ok()?;
        self.users
            .as_ref()
            .map(|u| u.iter().map(|&a| UserKey::new(field.element(a))).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: byte_offset(text, e.line(), e.column()),
            reason: e.to_string(),
        })
    }
}

/// Byte offset of a 1-based (line, column) position.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::recover_key;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn json_round_trip() {
        let f = PrimeModulus::new((1u128 << 107) - 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let inst = Instance::generate(f, 6, &mut rng).unwrap();
        let text = inst.to_json();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(back, inst);
        let bc = back.broadcast().unwrap();
        for u in back.users().unwrap() {
            assert_eq!(recover_key(&bc, &u).unwrap(), back.planted_key().unwrap());
        }
    }

    #[test]
    fn optional_fields_may_be_absent() {
        let inst = Instance::from_json(r#"{"p": 7, "n": 2, "c": 1, "b": [2, 4]}"#).unwrap();
        assert_eq!(inst.k, None);
        assert!(inst.users().is_none());
        assert_eq!(inst.broadcast().unwrap().n(), 2);
        assert!(!inst.to_json().contains("users"));
    }

    #[test]
    fn generation_is_deterministic() {
        let f = PrimeModulus::new(101).unwrap();
        let a = Instance::generate(f, 5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = Instance::generate(f, 5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let text = "{\"p\": 7,\n \"n\": oops}";
        match Instance::from_json(text) {
            Err(Error::Parse { offset, .. }) => assert_eq!(&text[offset..offset + 1], "o"),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let bad = Instance::from_json(r#"{"p": 7, "n": 3, "c": 1, "b": [2, 4]}"#).unwrap();
        assert!(bad.broadcast().is_err());
    }
}
