//! Ethereum block/transaction ingestion from RPC-shaped JSON documents.
//!
//! Logical fields follow the standard block layout (camelCase). Quantities
//! accept `0x`-prefixed hex, bare hex, or JSON numbers. A missing or null
//! `to` normalizes to the zero address, which is what classifies a
//! transaction as a contract creation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde_json::Value;

/// The 40-hex-digit zero address marking contract creation.
pub const ZERO_ADDRESS: &str = "0000000000000000000000000000000000000000";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing required field {0}")]
    MissingField(String),
    #[error("field {field}: {reason}")]
    Malformed { field: String, reason: String },
    #[error("gasUsed {gas_used} exceeds gasLimit {gas_limit}")]
    GasExceedsLimit { gas_used: u64, gas_limit: u64 },
    #[error("extraData is {len} bytes, limit is 32")]
    ExtraDataTooLong { len: usize },
    #[error("genesis block (number 0) must have an all-zero parentHash")]
    GenesisParentNotZero,
}

/// Contract creation vs. message call, with the respective payload bytes
/// carried as lowercase hex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransactionKind {
    ContractCreation { init: String },
    MessageCall { data: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EthereumTransaction {
    pub nonce: u64,
    /// Wei per gas unit.
    pub gas_price: u128,
    pub gas_limit: u64,
    /// Recipient address, 40 hex digits; the zero address for creations.
    pub to: String,
    /// Transferred amount in wei.
    pub value: u128,
    pub v: String,
    pub r: String,
    pub s: String,
    pub kind: TransactionKind,
    /// Sender address when the document carries one; signature recovery is
    /// not performed.
    pub from: Option<String>,
    pub hash: Option<String>,
}

impl EthereumTransaction {
    pub fn is_contract_creation(&self) -> bool {
        matches!(self.kind, TransactionKind::ContractCreation { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EthereumBlock {
    pub parent_hash: String,
    pub ommers_hash: String,
    /// 160-bit fee recipient address.
    pub beneficiary: String,
    pub state_root: String,
    pub transactions_root: String,
    pub receipts_root: String,
    /// 256-byte bloom filter, carried opaquely.
    pub logs_bloom: String,
    pub difficulty: u128,
    pub number: u64,
    pub gas_limit: u64,
    pub gas_used: u64,
    pub timestamp: u64,
    /// At most 32 bytes, lowercase hex.
    pub extra_data: String,
    pub mix_hash: String,
    /// 8-byte proof-of-work nonce, lowercase hex.
    pub nonce: String,
    /// Block hash when the document carries one.
    pub hash: Option<String>,
    pub transactions: Vec<EthereumTransaction>,
    /// Ommer header hashes.
    pub ommers: Vec<String>,
}

/// Classify by recipient: the zero address means contract creation and the
/// payload is initialization code; anything else is a message call.
pub fn classify_transaction(to: &str, payload: String) -> TransactionKind {
    if to == ZERO_ADDRESS {
        TransactionKind::ContractCreation { init: payload }
    } else {
        TransactionKind::MessageCall { data: payload }
    }
}

/// Parse a single block object.
pub fn parse_eth_block(json: &str) -> Result<EthereumBlock, IngestError> {
    let value: Value = serde_json::from_str(json).map_err(|e| IngestError::Json(e.to_string()))?;
    block_from_value(&value, "")
}

/// Parse a document holding either one block object or an array of blocks.
pub fn parse_eth_blocks(json: &str) -> Result<Vec<EthereumBlock>, IngestError> {
    let value: Value = serde_json::from_str(json).map_err(|e| IngestError::Json(e.to_string()))?;
    match &value {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, item)| block_from_value(item, &format!("[{i}].")))
            .collect(),
        _ => Ok(alloc::vec![block_from_value(&value, "")?]),
    }
}

fn block_from_value(value: &Value, path: &str) -> Result<EthereumBlock, IngestError> {
    let obj = value
        .as_object()
        .ok_or_else(|| IngestError::Malformed { field: path.trim_end_matches('.').to_string(), reason: "expected a JSON object".to_string() })?;

    let field = |name: &str| -> Result<&Value, IngestError> {
        obj.get(name).ok_or_else(|| IngestError::MissingField(format!("{path}{name}")))
    };
    let aliased = |primary: &str, alias: &str| -> Result<&Value, IngestError> {
        obj.get(primary)
            .or_else(|| obj.get(alias))
            .ok_or_else(|| IngestError::MissingField(format!("{path}{primary}")))
    };

    let number = quantity_u64(field("number")?, &format!("{path}number"))?;
    let parent_hash = hex_fixed(field("parentHash")?, 32, &format!("{path}parentHash"))?;
    let ommers_hash = hex_fixed(aliased("ommersHash", "sha3Uncles")?, 32, &format!("{path}ommersHash"))?;
    let beneficiary = hex_fixed(aliased("beneficiary", "miner")?, 20, &format!("{path}beneficiary"))?;
    let state_root = hex_fixed(field("stateRoot")?, 32, &format!("{path}stateRoot"))?;
    let transactions_root = hex_fixed(field("transactionsRoot")?, 32, &format!("{path}transactionsRoot"))?;
    let receipts_root = hex_fixed(field("receiptsRoot")?, 32, &format!("{path}receiptsRoot"))?;
    let logs_bloom = hex_fixed(field("logsBloom")?, 256, &format!("{path}logsBloom"))?;
    let difficulty = quantity_u128(field("difficulty")?, &format!("{path}difficulty"))?;
    let gas_limit = quantity_u64(field("gasLimit")?, &format!("{path}gasLimit"))?;
    let gas_used = quantity_u64(field("gasUsed")?, &format!("{path}gasUsed"))?;
    let timestamp = quantity_u64(field("timestamp")?, &format!("{path}timestamp"))?;
    let extra_data = hex_bytes(field("extraData")?, &format!("{path}extraData"))?;
    let mix_hash = hex_fixed(field("mixHash")?, 32, &format!("{path}mixHash"))?;
    let nonce = hex_fixed(field("nonce")?, 8, &format!("{path}nonce"))?;
    let hash = match obj.get("hash") {
        Some(Value::Null) | None => None,
        Some(v) => Some(hex_fixed(v, 32, &format!("{path}hash"))?),
    };

    if gas_used > gas_limit {
        return Err(IngestError::GasExceedsLimit { gas_used, gas_limit });
    }
    if extra_data.len() / 2 > 32 {
        return Err(IngestError::ExtraDataTooLong { len: extra_data.len() / 2 });
    }
    if number == 0 && parent_hash != "0".repeat(64) {
        return Err(IngestError::GenesisParentNotZero);
    }

    let mut transactions = Vec::new();
    if let Some(txs) = obj.get("transactions") {
        let items = txs
            .as_array()
            .ok_or_else(|| IngestError::Malformed { field: format!("{path}transactions"), reason: "expected an array".to_string() })?;
        for (i, tx) in items.iter().enumerate() {
            transactions.push(transaction_from_value(tx, &format!("{path}transactions[{i}].") )?);
        }
    }

    let mut ommers = Vec::new();
    if let Some(list) = obj.get("ommers").or_else(|| obj.get("uncles")) {
        let items = list
            .as_array()
            .ok_or_else(|| IngestError::Malformed { field: format!("{path}ommers"), reason: "expected an array".to_string() })?;
        for (i, entry) in items.iter().enumerate() {
            ommers.push(hex_fixed(entry, 32, &format!("{path}ommers[{i}]"))?);
        }
    }

    Ok(EthereumBlock {
        parent_hash,
        ommers_hash,
        beneficiary,
        state_root,
        transactions_root,
        receipts_root,
        logs_bloom,
        difficulty,
        number,
        gas_limit,
        gas_used,
        timestamp,
        extra_data,
        mix_hash,
        nonce,
        hash,
        transactions,
        ommers,
    })
}

fn transaction_from_value(value: &Value, path: &str) -> Result<EthereumTransaction, IngestError> {
    let obj = value
        .as_object()
        .ok_or_else(|| IngestError::Malformed { field: path.trim_end_matches('.').to_string(), reason: "expected a JSON object".to_string() })?;
    let field = |name: &str| -> Result<&Value, IngestError> {
        obj.get(name).ok_or_else(|| IngestError::MissingField(format!("{path}{name}")))
    };

    let nonce = quantity_u64(field("nonce")?, &format!("{path}nonce"))?;
    let gas_price = quantity_u128(field("gasPrice")?, &format!("{path}gasPrice"))?;
    let gas_limit = quantity_u64(aliased_field(obj, "gasLimit", "gas").ok_or_else(|| IngestError::MissingField(format!("{path}gasLimit")))?, &format!("{path}gasLimit"))?;
    let value_wei = quantity_u128(field("value")?, &format!("{path}value"))?;
    // Absent or null `to` is the zero-address marker.
    let to = match obj.get("to") {
        Some(Value::Null) | None => ZERO_ADDRESS.to_string(),
        Some(v) => hex_fixed(v, 20, &format!("{path}to"))?,
    };
    let v = hex_loose(field("v")?, &format!("{path}v"))?;
    let r = hex_loose(field("r")?, &format!("{path}r"))?;
    let s = hex_loose(field("s")?, &format!("{path}s"))?;
    let payload = match obj.get("init").or_else(|| obj.get("data")).or_else(|| obj.get("input")) {
        Some(Value::Null) | None => String::new(),
        Some(pv) => hex_bytes(pv, &format!("{path}data"))?,
    };
    let from = match obj.get("from") {
        Some(Value::Null) | None => None,
        Some(v) => Some(hex_fixed(v, 20, &format!("{path}from"))?),
    };
    let hash = match obj.get("hash") {
        Some(Value::Null) | None => None,
        Some(v) => Some(hex_fixed(v, 32, &format!("{path}hash"))?),
    };

    let kind = classify_transaction(&to, payload);
    Ok(EthereumTransaction { nonce, gas_price, gas_limit, to, value: value_wei, v, r, s, kind, from, hash })
}

fn aliased_field<'v>(obj: &'v serde_json::Map<String, Value>, primary: &str, alias: &str) -> Option<&'v Value> {
    obj.get(primary).or_else(|| obj.get(alias))
}

fn strip_0x(s: &str) -> &str {
    s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s)
}

/// A numeric quantity: `0x` hex, bare hex string, or JSON number.
fn quantity_u128(value: &Value, field: &str) -> Result<u128, IngestError> {
    match value {
        Value::Number(n) => n
            .as_u64()
            .map(u128::from)
            .ok_or_else(|| IngestError::Malformed { field: field.to_string(), reason: "expected a non-negative integer".to_string() }),
        Value::String(s) => {
            let digits = strip_0x(s);
            if digits.is_empty() {
                return Err(IngestError::Malformed { field: field.to_string(), reason: "empty quantity".to_string() });
            }
            u128::from_str_radix(digits, 16)
                .map_err(|_| IngestError::Malformed { field: field.to_string(), reason: format!("invalid hex quantity {s:?}") })
        }
        _ => Err(IngestError::Malformed { field: field.to_string(), reason: "expected a quantity".to_string() }),
    }
}

fn quantity_u64(value: &Value, field: &str) -> Result<u64, IngestError> {
    let wide = quantity_u128(value, field)?;
    u64::try_from(wide).map_err(|_| IngestError::Malformed { field: field.to_string(), reason: "quantity exceeds 64 bits".to_string() })
}

/// Fixed-width hex value (length in bytes), normalized to lowercase without `0x`.
fn hex_fixed(value: &Value, bytes: usize, field: &str) -> Result<String, IngestError> {
    let s = hex_bytes(value, field)?;
    if s.len() != bytes * 2 {
        return Err(IngestError::Malformed {
            field: field.to_string(),
            reason: format!("expected {bytes} bytes ({} hex digits), got {} digits", bytes * 2, s.len()),
        });
    }
    Ok(s)
}

/// Arbitrary-length even-width hex, normalized to lowercase without `0x`.
fn hex_bytes(value: &Value, field: &str) -> Result<String, IngestError> {
    let Value::String(s) = value else {
        return Err(IngestError::Malformed { field: field.to_string(), reason: "expected a hex string".to_string() });
    };
    let digits = strip_0x(s);
    if !digits.len().is_multiple_of(2) || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(IngestError::Malformed { field: field.to_string(), reason: format!("invalid hex value {s:?}") });
    }
    Ok(digits.to_lowercase())
}

/// Hex of any positive width (signature components), lowercase without `0x`.
fn hex_loose(value: &Value, field: &str) -> Result<String, IngestError> {
    let Value::String(s) = value else {
        return Err(IngestError::Malformed { field: field.to_string(), reason: "expected a hex string".to_string() });
    };
    let digits = strip_0x(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(IngestError::Malformed { field: field.to_string(), reason: format!("invalid hex value {s:?}") });
    }
    Ok(digits.to_lowercase())
}
