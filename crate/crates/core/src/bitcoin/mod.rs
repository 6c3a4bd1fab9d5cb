//! Decoder for raw Bitcoin blocks and transactions in legacy (pre-segwit)
//! wire format, with identifier hashing and merkle verification.
//!
//! Digests are stored in wire order; `display_hex` gives the byte-reversed
//! form explorers print. Heights are not part of the wire format and must be
//! supplied by the caller.

mod codec;
mod hashes;

pub use codec::{decode_varint, encode_varint, Varint};
pub use hashes::{double_sha256, merkle_root, Digest32, EmptyLeafList};

use alloc::string::String;
use alloc::vec::Vec;

/// 21,000,000 BTC in satoshi, the upper bound for any output value.
pub const MAX_MONEY_SATOSHI: i64 = 21_000_000 * 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("input truncated at byte {offset}: {needed} more byte(s) required")]
    Truncated { offset: usize, needed: usize },
    #[error("{remaining} trailing byte(s) after block end at byte {offset}")]
    TrailingBytes { offset: usize, remaining: usize },
    #[error("block declares no transactions")]
    EmptyTransactionList,
    #[error("transaction {tx_index} has no inputs")]
    EmptyInputs { tx_index: usize },
    #[error("transaction {tx_index} has no outputs")]
    EmptyOutputs { tx_index: usize },
    #[error("transaction {tx_index} output value {value} outside 0..=21000000*10^8 satoshi")]
    ValueOutOfRange { tx_index: usize, value: i64 },
    #[error("merkle root mismatch: header {header}, computed {computed}")]
    MerkleMismatch { header: String, computed: String },
}

/// The fixed 80-byte block header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockHeader {
    pub version: i32,
    pub prev_block: Digest32,
    pub merkle_root: Digest32,
    /// Seconds since the Unix epoch.
    pub time: u32,
    /// The 4-byte field at the compact-target wire position, exposed verbatim.
    pub bits: u32,
    pub nonce: u32,
}

impl BlockHeader {
    pub const SERIALIZED_LEN: usize = 80;

    pub fn to_bytes(&self) -> [u8; Self::SERIALIZED_LEN] {
        let mut out = Vec::with_capacity(Self::SERIALIZED_LEN);
        codec::encode_header(self, &mut out);
        let mut bytes = [0u8; Self::SERIALIZED_LEN];
        bytes.copy_from_slice(&out);
        bytes
    }

    pub fn block_hash(&self) -> Digest32 {
        double_sha256(&self.to_bytes())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TxInput {
    /// Double-SHA-256 of the funding transaction; all zeros for a coinbase.
    pub source_hash: Digest32,
    pub source_index: u32,
    pub script_sig: Vec<u8>,
    pub sequence: u32,
}

impl TxInput {
    pub fn is_coinbase(&self) -> bool {
        self.source_hash.is_zero() && self.source_index == u32::MAX
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TxOutput {
    /// Amount in satoshi (10^-8 BTC).
    pub value: i64,
    pub script_pubkey: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub version: i32,
    pub inputs: Vec<TxInput>,
    pub outputs: Vec<TxOutput>,
    pub lock_time: u32,
    /// Double-SHA-256 over the transaction's wire bytes, wire order.
    pub txid: Digest32,
}

impl Transaction {
    pub fn is_coinbase(&self) -> bool {
        self.inputs.len() == 1 && self.inputs[0].is_coinbase()
    }

    /// Sum of output values in satoshi.
    pub fn total_output_value(&self) -> i64 {
        self.outputs.iter().map(|o| o.value).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub header: BlockHeader,
    pub transactions: Vec<Transaction>,
    /// Double-SHA-256 over the 80 header bytes, wire order.
    pub block_hash: Digest32,
    /// Chain height, supplied by the caller at decode time.
    pub height: u64,
}

/// A decoded block plus any decode warnings (e.g. non-canonical varints).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedBlock {
    pub block: Block,
    pub warnings: Vec<String>,
}

/// A decoded standalone transaction plus decode warnings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedTransaction {
    pub transaction: Transaction,
    pub warnings: Vec<String>,
}

/// Decode a complete serialized block. Verifies the merkle root against the
/// transaction list and rejects trailing bytes.
pub fn decode_block(raw: &[u8], height: u64) -> Result<DecodedBlock, DecodeError> {
    let mut cursor = codec::Cursor::new(raw);
    let header = cursor.header()?;
    let tx_count = cursor.varint()?;
    if tx_count == 0 {
        return Err(DecodeError::EmptyTransactionList);
    }
    let mut transactions = Vec::new();
    for index in 0..tx_count {
        transactions.push(cursor.transaction(index as usize)?);
    }
    if cursor.remaining() != 0 {
        return Err(DecodeError::TrailingBytes { offset: cursor.position(), remaining: cursor.remaining() });
    }
    let txids: Vec<Digest32> = transactions.iter().map(|tx| tx.txid).collect();
    let computed = merkle_root(&txids).expect("non-empty transaction list");
    if computed != header.merkle_root {
        return Err(DecodeError::MerkleMismatch {
            header: header.merkle_root.display_hex(),
            computed: computed.display_hex(),
        });
    }
    let block_hash = header.block_hash();
    Ok(DecodedBlock { block: Block { header, transactions, block_hash, height }, warnings: cursor.warnings })
}

/// Decode one standalone transaction (e.g. from the mempool). Rejects
/// trailing bytes.
pub fn decode_transaction(raw: &[u8]) -> Result<DecodedTransaction, DecodeError> {
    let mut cursor = codec::Cursor::new(raw);
    let transaction = cursor.transaction(0)?;
    if cursor.remaining() != 0 {
        return Err(DecodeError::TrailingBytes { offset: cursor.position(), remaining: cursor.remaining() });
    }
    Ok(DecodedTransaction { transaction, warnings: cursor.warnings })
}

/// Re-serialize a block; inverse of [`decode_block`] for canonical input.
pub fn encode_block(block: &Block) -> Vec<u8> {
    let mut out = Vec::new();
    codec::encode_block(block, &mut out);
    out
}

/// Re-serialize a transaction; inverse of [`decode_transaction`].
pub fn encode_transaction(tx: &Transaction) -> Vec<u8> {
    let mut out = Vec::new();
    codec::encode_transaction(tx, &mut out);
    out
}
