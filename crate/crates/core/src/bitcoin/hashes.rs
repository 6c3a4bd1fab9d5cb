//! Block and transaction identifier hashing.

use alloc::string::String;
use alloc::vec::Vec;

use sha2::{Digest as _, Sha256};

/// A 32-byte digest in wire order. Display order (what explorers print)
/// is byte-reversed lowercase hex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest32(pub [u8; 32]);

impl Digest32 {
    pub const ZERO: Digest32 = Digest32([0u8; 32]);

    pub fn is_zero(&self) -> bool {
        self.0 == [0u8; 32]
    }

    /// Byte-reversed lowercase hex, the standard explorer convention.
    pub fn display_hex(&self) -> String {
        let mut reversed = self.0;
        reversed.reverse();
        hex::encode(reversed)
    }

    /// Lowercase hex in wire order.
    pub fn wire_hex(&self) -> String {
        hex::encode(self.0)
    }
}

/// SHA-256 applied twice.
pub fn double_sha256(bytes: &[u8]) -> Digest32 {
    let first = Sha256::digest(bytes);
    let second = Sha256::digest(first);
    Digest32(second.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot compute a merkle root over an empty leaf list")]
pub struct EmptyLeafList;

/// Merkle root over transaction ids: pair adjacent digests, duplicating the
/// last when the level is odd, double-SHA-256 each concatenation, repeat
/// until one digest remains.
pub fn merkle_root(txids: &[Digest32]) -> Result<Digest32, EmptyLeafList> {
    if txids.is_empty() {
        return Err(EmptyLeafList);
    }
    let mut level: Vec<Digest32> = txids.to_vec();
    while level.len() > 1 {
        if level.len() % 2 == 1 {
            level.push(*level.last().expect("non-empty level"));
        }
        level = level
            .chunks(2)
            .map(|pair| {
                let mut buf = [0u8; 64];
                buf[..32].copy_from_slice(&pair[0].0);
                buf[32..].copy_from_slice(&pair[1].0);
                double_sha256(&buf)
            })
            .collect();
    }
    Ok(level[0])
}
