//! Binary broadcast format.
//!
//! ```text
//! offset  size   field
//! 0       4      magic "SFB1"
//! 4       16     p, little-endian
//! 20      4      n, little-endian
//! 24      16     c, little-endian
//! 40      16*n   b_0 .. b_(n-1), little-endian, ascending powers
//! ```

use super::{Broadcast, HashSelector};
use crate::error::{Error, Result};
use crate::ffield::PrimeModulus;

pub const MAGIC: &[u8; 4] = b"SFB1";
pub const HEADER_LEN: usize = 4 + 16 + 4 + 16;
const WORD: usize = 16;

pub fn serialize(bc: &Broadcast) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + WORD * bc.n());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&bc.field().p().to_le_bytes());
    out.extend_from_slice(&(bc.n() as u32).to_le_bytes());
    out.extend_from_slice(&bc.selector().value().value().to_le_bytes());
    for &b in bc.raw_coefficients() {
        out.extend_from_slice(&b.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let end = self.pos + len;
        let chunk = self.bytes.get(self.pos..end).ok_or_else(|| Error::Parse {
            offset: self.bytes.len(),
            reason: format!("truncated input: {what} needs bytes {}..{end}", self.pos),
        })?;
        self.pos = end;
        Ok(chunk)
    }

    fn u128(&mut self, what: &str) -> Result<u128> {
        let raw = self.take(WORD, what)?;
        Ok(u128::from_le_bytes(raw.try_into().expect("16-byte chunk")))
    }

    fn fail<T>(&self, offset: usize, reason: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            reason: reason.into(),
        })
    }
}

pub fn deserialize(bytes: &[u8]) -> Result<Broadcast> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4, "magic")? != MAGIC {
        return r.fail(0, "bad magic, expected \"SFB1\"");
    }
    let p = r.u128("p")?;
    let field = PrimeModulus::new(p).or_else(|e| r.fail(4, format!("invalid modulus: {e}")))?;
    let n = u32::from_le_bytes(r.take(4, "n")?.try_into().expect("4-byte chunk")) as usize;
    if n == 0 || n as u128 >= p {
        return r.fail(20, format!("degree n = {n} outside 1..p"));
    }
    let c = r.u128("c")?;
    if c >= p {
        return r.fail(24, format!("selector {c} is not reduced mod {p}"));
    }
    let expected = HEADER_LEN as u128 + (WORD as u128) * n as u128;
    if (bytes.len() as u128) < expected {
        return r.fail(bytes.len(), format!("truncated input: {n} coefficients need {expected} bytes"));
    }
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        let offset = r.pos;
        let v = r.u128("coefficient")?;
        if v >= p {
            return r.fail(offset, format!("coefficient b_{i} = {v} is not reduced mod {p}"));
        }
        b.push(v);
    }
    if r.pos != bytes.len() {
        return r.fail(r.pos, format!("{} trailing bytes", bytes.len() - r.pos));
    }
    Broadcast::from_raw(field, b, HashSelector::new(field.element(c)))
}

/// Size of a broadcast on the wire, next to the tight figure
/// `n * ceil(log2 p / 8)` bytes of coefficients plus the same header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransmissionCost {
    pub header_bytes: usize,
    /// Actual length of [`serialize`]'s output (16 bytes per coefficient).
    pub wire_bytes: usize,
    /// Coefficients packed to `ceil(log2 p / 8)` bytes each.
    pub packed_bytes: u128,
    pub bytes_per_coefficient: u32,
}

/// Cost for `n` coefficients over `p` without building a broadcast.
pub fn transmission_cost(field: PrimeModulus, n: u128) -> TransmissionCost {
    let per = field.bits().div_ceil(8);
    TransmissionCost {
        header_bytes: HEADER_LEN,
        wire_bytes: HEADER_LEN.saturating_add((n as usize).saturating_mul(WORD)),
        packed_bytes: HEADER_LEN as u128 + n * per as u128,
        bytes_per_coefficient: per,
    }
}

impl Broadcast {
    pub fn transmission_cost(&self) -> TransmissionCost {
        transmission_cost(self.field(), self.n() as u128)
    }
}
