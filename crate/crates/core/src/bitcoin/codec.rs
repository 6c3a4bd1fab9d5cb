//! Wire-format reading and writing for legacy (pre-segwit) serialization.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::hashes::{double_sha256, Digest32};
use super::{Block, BlockHeader, DecodeError, Transaction, TxInput, TxOutput, MAX_MONEY_SATOSHI};

/// Result of decoding one compact-size integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Varint {
    pub value: u64,
    pub consumed: usize,
    /// False when a wider encoding than necessary was used. Non-canonical
    /// encodings are accepted and surfaced as warnings.
    pub canonical: bool,
}

/// Decode a Bitcoin compact-size integer at `offset`.
pub fn decode_varint(bytes: &[u8], offset: usize) -> Result<Varint, DecodeError> {
    let first = *bytes.get(offset).ok_or(DecodeError::Truncated { offset, needed: 1 })?;
    let (width, value) = match first {
        0x00..=0xFC => return Ok(Varint { value: u64::from(first), consumed: 1, canonical: true }),
        0xFD => (2usize, read_le(bytes, offset + 1, 2)?),
        0xFE => (4usize, read_le(bytes, offset + 1, 4)?),
        0xFF => (8usize, read_le(bytes, offset + 1, 8)?),
    };
    let canonical = match width {
        2 => value >= 0xFD,
        4 => value > u64::from(u16::MAX),
        _ => value > u64::from(u32::MAX),
    };
    Ok(Varint { value, consumed: 1 + width, canonical })
}

fn read_le(bytes: &[u8], offset: usize, width: usize) -> Result<u64, DecodeError> {
    let end = offset.checked_add(width).ok_or(DecodeError::Truncated { offset, needed: width })?;
    let slice = bytes.get(offset..end).ok_or(DecodeError::Truncated { offset, needed: width })?;
    let mut value = 0u64;
    for (i, b) in slice.iter().enumerate() {
        value |= u64::from(*b) << (8 * i);
    }
    Ok(value)
}

/// Canonical compact-size encoding.
pub fn encode_varint(value: u64, out: &mut Vec<u8>) {
    match value {
        0..=0xFC => out.push(value as u8),
        0xFD..=0xFFFF => {
            out.push(0xFD);
            out.extend_from_slice(&(value as u16).to_le_bytes());
        }
        0x1_0000..=0xFFFF_FFFF => {
            out.push(0xFE);
            out.extend_from_slice(&(value as u32).to_le_bytes());
        }
        _ => {
            out.push(0xFF);
            out.extend_from_slice(&value.to_le_bytes());
        }
    }
}

pub(super) struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
    pub warnings: Vec<String>,
}

impl<'a> Cursor<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Cursor { buf, pos: 0, warnings: Vec::new() }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        let end = self.pos.checked_add(n).ok_or(DecodeError::Truncated { offset: self.pos, needed: n })?;
        let slice = self.buf.get(self.pos..end).ok_or(DecodeError::Truncated { offset: self.pos, needed: n })?;
        self.pos = end;
        Ok(slice)
    }

    pub fn u32_le(&mut self) -> Result<u32, DecodeError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    pub fn i32_le(&mut self) -> Result<i32, DecodeError> {
        Ok(self.u32_le()? as i32)
    }

    pub fn i64_le(&mut self) -> Result<i64, DecodeError> {
        let b = self.take(8)?;
        Ok(i64::from_le_bytes([b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7]]))
    }

    pub fn digest(&mut self) -> Result<Digest32, DecodeError> {
        let b = self.take(32)?;
        let mut d = [0u8; 32];
        d.copy_from_slice(b);
        Ok(Digest32(d))
    }

    pub fn varint(&mut self) -> Result<u64, DecodeError> {
        let offset = self.pos;
        let v = decode_varint(self.buf, offset)?;
        self.pos += v.consumed;
        if !v.canonical {
            self.warnings.push(format!("non-canonical compact-size encoding of {} at byte {offset}", v.value));
        }
        Ok(v.value)
    }

    pub fn bytes(&mut self, n: u64) -> Result<Vec<u8>, DecodeError> {
        let n = usize::try_from(n).map_err(|_| DecodeError::Truncated { offset: self.pos, needed: usize::MAX })?;
        Ok(self.take(n)?.to_vec())
    }

    pub fn header(&mut self) -> Result<BlockHeader, DecodeError> {
        Ok(BlockHeader {
            version: self.i32_le()?,
            prev_block: self.digest()?,
            merkle_root: self.digest()?,
            time: self.u32_le()?,
            bits: self.u32_le()?,
            nonce: self.u32_le()?,
        })
    }

    /// Decode one transaction; `index` is only used in diagnostics.
    pub fn transaction(&mut self, index: usize) -> Result<Transaction, DecodeError> {
        let start = self.pos;
        let version = self.i32_le()?;
        let input_count = self.varint()?;
        if input_count == 0 {
            return Err(DecodeError::EmptyInputs { tx_index: index });
        }
        let mut inputs = Vec::new();
        for _ in 0..input_count {
            let source_hash = self.digest()?;
            let source_index = self.u32_le()?;
            let script_len = self.varint()?;
            let script_sig = self.bytes(script_len)?;
            let sequence = self.u32_le()?;
            inputs.push(TxInput { source_hash, source_index, script_sig, sequence });
        }
        let output_count = self.varint()?;
        if output_count == 0 {
            return Err(DecodeError::EmptyOutputs { tx_index: index });
        }
        let mut outputs = Vec::new();
        for _ in 0..output_count {
            let value = self.i64_le()?;
            if !(0..=MAX_MONEY_SATOSHI).contains(&value) {
                return Err(DecodeError::ValueOutOfRange { tx_index: index, value });
            }
            let script_len = self.varint()?;
            let script_pubkey = self.bytes(script_len)?;
            outputs.push(TxOutput { value, script_pubkey });
        }
        let lock_time = self.u32_le()?;
        // The txid hashes the exact wire bytes of the transaction.
        let txid = double_sha256(&self.buf[start..self.pos]);
        Ok(Transaction { version, inputs, outputs, lock_time, txid })
    }
}

pub fn encode_header(header: &BlockHeader, out: &mut Vec<u8>) {
    out.extend_from_slice(&header.version.to_le_bytes());
    out.extend_from_slice(&header.prev_block.0);
    out.extend_from_slice(&header.merkle_root.0);
    out.extend_from_slice(&header.time.to_le_bytes());
    out.extend_from_slice(&header.bits.to_le_bytes());
    out.extend_from_slice(&header.nonce.to_le_bytes());
}

pub fn encode_transaction(tx: &Transaction, out: &mut Vec<u8>) {
    out.extend_from_slice(&tx.version.to_le_bytes());
    encode_varint(tx.inputs.len() as u64, out);
    for input in &tx.inputs {
        out.extend_from_slice(&input.source_hash.0);
        out.extend_from_slice(&input.source_index.to_le_bytes());
        encode_varint(input.script_sig.len() as u64, out);
        out.extend_from_slice(&input.script_sig);
        out.extend_from_slice(&input.sequence.to_le_bytes());
    }
    encode_varint(tx.outputs.len() as u64, out);
    for output in &tx.outputs {
        out.extend_from_slice(&output.value.to_le_bytes());
        encode_varint(output.script_pubkey.len() as u64, out);
        out.extend_from_slice(&output.script_pubkey);
    }
    out.extend_from_slice(&tx.lock_time.to_le_bytes());
}

pub fn encode_block(block: &Block, out: &mut Vec<u8>) {
    encode_header(&block.header, out);
    encode_varint(block.transactions.len() as u64, out);
    for tx in &block.transactions {
        encode_transaction(tx, out);
    }
}
