//! Hyperledger Fabric block/transaction ingestion from JSON documents.
//!
//! The protobuf wire format is out of scope; input is the logical JSON
//! projection produced by SDK explorers. Hashes are carried opaquely and
//! never recomputed.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FabricError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing required field {0}")]
    MissingField(String),
    #[error("field {field}: {reason}")]
    Malformed { field: String, reason: String },
    #[error("field {0} must be non-empty")]
    EmptyField(String),
    #[error("block numbers must increase by exactly 1: found {prev} then {next}")]
    NonConsecutive { prev: u64, next: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FabricTransaction {
    pub tx_type: String,
    pub version: u64,
    /// RFC-3339 creation time, carried verbatim.
    pub timestamp: String,
    pub channel_id: String,
    pub tx_id: String,
    pub epoch: u64,
    pub payload_visibility: String,
    pub chaincode_path: String,
    pub chaincode_name: String,
    pub chaincode_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FabricBlock {
    pub number: u64,
    pub current_block_hash: String,
    pub previous_hash: String,
    pub data_hash: String,
    pub transactions: Vec<FabricTransaction>,
}

/// A chain-link problem found by [`validate_chain_links`]. Diagnostics are
/// data, not errors; they come out sorted by block number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDiagnostic {
    pub block_number: u64,
    pub message: String,
}

/// Parse a single block object.
pub fn parse_fabric_block(json_text: &str) -> Result<FabricBlock, FabricError> {
    let value: Value = serde_json::from_str(json_text).map_err(|e| FabricError::Json(e.to_string()))?;
    block_from_value(&value, "")
}

/// Parse a document holding one block or an ordered chain of blocks. For a
/// chain, block numbers must increase by exactly 1.
pub fn parse_fabric_blocks(json_text: &str) -> Result<Vec<FabricBlock>, FabricError> {
    let value: Value = serde_json::from_str(json_text).map_err(|e| FabricError::Json(e.to_string()))?;
    match &value {
        Value::Array(items) => {
            let blocks: Vec<FabricBlock> = items
                .iter()
                .enumerate()
                .map(|(i, item)| block_from_value(item, &format!("[{i}].")))
                .collect::<Result<_, _>>()?;
            for pair in blocks.windows(2) {
                if pair[1].number != pair[0].number + 1 {
                    return Err(FabricError::NonConsecutive { prev: pair[0].number, next: pair[1].number });
                }
            }
            Ok(blocks)
        }
        _ => Ok(alloc::vec![block_from_value(&value, "")?]),
    }
}

fn block_from_value(value: &Value, path: &str) -> Result<FabricBlock, FabricError> {
    let obj = value
        .as_object()
        .ok_or_else(|| FabricError::Malformed { field: path.trim_end_matches('.').to_string(), reason: "expected a JSON object".to_string() })?;
    let field = |name: &str| -> Result<&Value, FabricError> {
        obj.get(name).ok_or_else(|| FabricError::MissingField(format!("{path}{name}")))
    };

    let number = non_negative(field("number")?, &format!("{path}number"))?;
    let current_block_hash = hash_string(field("currentBlockHash")?, &format!("{path}currentBlockHash"))?;
    let previous_hash = hash_string(field("previousHash")?, &format!("{path}previousHash"))?;
    let data_hash = hash_string(field("dataHash")?, &format!("{path}dataHash"))?;

    let mut transactions = Vec::new();
    if let Some(txs) = obj.get("transactions") {
        let items = txs
            .as_array()
            .ok_or_else(|| FabricError::Malformed { field: format!("{path}transactions"), reason: "expected an array".to_string() })?;
        for (i, tx) in items.iter().enumerate() {
            transactions.push(transaction_from_value(tx, &format!("{path}transactions[{i}].") )?);
        }
    }

    Ok(FabricBlock { number, current_block_hash, previous_hash, data_hash, transactions })
}

fn transaction_from_value(value: &Value, path: &str) -> Result<FabricTransaction, FabricError> {
    let obj = value
        .as_object()
        .ok_or_else(|| FabricError::Malformed { field: path.trim_end_matches('.').to_string(), reason: "expected a JSON object".to_string() })?;
    let field = |name: &str| -> Result<&Value, FabricError> {
        obj.get(name).ok_or_else(|| FabricError::MissingField(format!("{path}{name}")))
    };
    let text = |name: &str| -> Result<String, FabricError> {
        match field(name)? {
            Value::String(s) => Ok(s.clone()),
            _ => Err(FabricError::Malformed { field: format!("{path}{name}"), reason: "expected a string".to_string() }),
        }
    };

    let tx = FabricTransaction {
        tx_type: text("type")?,
        version: non_negative(field("version")?, &format!("{path}version"))?,
        timestamp: text("timestamp")?,
        channel_id: text("channelId")?,
        tx_id: text("txId")?,
        epoch: non_negative(field("epoch")?, &format!("{path}epoch"))?,
        payload_visibility: text("payloadVisibility")?,
        chaincode_path: text("chaincodePath")?,
        chaincode_name: text("chaincodeName")?,
        chaincode_version: text("chaincodeVersion")?,
    };
    if tx.tx_id.is_empty() {
        return Err(FabricError::EmptyField(format!("{path}txId")));
    }
    if tx.channel_id.is_empty() {
        return Err(FabricError::EmptyField(format!("{path}channelId")));
    }
    Ok(tx)
}

fn non_negative(value: &Value, field: &str) -> Result<u64, FabricError> {
    match value {
        Value::Number(n) => n
            .as_u64()
            .ok_or_else(|| FabricError::Malformed { field: field.to_string(), reason: "expected a non-negative integer".to_string() }),
        Value::String(s) => s
            .parse::<u64>()
            .map_err(|_| FabricError::Malformed { field: field.to_string(), reason: format!("invalid integer {s:?}") }),
        _ => Err(FabricError::Malformed { field: field.to_string(), reason: "expected a non-negative integer".to_string() }),
    }
}

fn hash_string(value: &Value, field: &str) -> Result<String, FabricError> {
    let Value::String(s) = value else {
        return Err(FabricError::Malformed { field: field.to_string(), reason: "expected a hex string".to_string() });
    };
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(FabricError::Malformed { field: field.to_string(), reason: format!("invalid hex value {s:?}") });
    }
    Ok(s.to_lowercase())
}

/// Re-emit a transaction as JSON with the ten logical fields verbatim.
pub fn transaction_to_json(tx: &FabricTransaction) -> Value {
    json!({
        "type": tx.tx_type,
        "version": tx.version,
        "timestamp": tx.timestamp,
        "channelId": tx.channel_id,
        "txId": tx.tx_id,
        "epoch": tx.epoch,
        "payloadVisibility": tx.payload_visibility,
        "chaincodePath": tx.chaincode_path,
        "chaincodeName": tx.chaincode_name,
        "chaincodeVersion": tx.chaincode_version,
    })
}

/// Re-emit a block as JSON.
pub fn block_to_json(block: &FabricBlock) -> Value {
    json!({
        "number": block.number,
        "currentBlockHash": block.current_block_hash,
        "previousHash": block.previous_hash,
        "dataHash": block.data_hash,
        "transactions": block.transactions.iter().map(transaction_to_json).collect::<Vec<_>>(),
    })
}

/// Check hash links and numbering over a number-sorted chain. Empty result
/// means every `previousHash` matches its predecessor's `currentBlockHash`
/// and numbers are consecutive.
pub fn validate_chain_links(blocks: &[FabricBlock]) -> Vec<ChainDiagnostic> {
    let mut diagnostics = Vec::new();
    for pair in blocks.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        if next.number != prev.number + 1 {
            diagnostics.push(ChainDiagnostic {
                block_number: next.number,
                message: format!("block {} follows block {}; numbers must increase by exactly 1", next.number, prev.number),
            });
        }
        if next.previous_hash != prev.current_block_hash {
            diagnostics.push(ChainDiagnostic {
                block_number: next.number,
                message: format!(
                    "block {} previousHash {} does not match block {} currentBlockHash {}",
                    next.number, next.previous_hash, prev.number, prev.current_block_hash
                ),
            });
        }
    }
    diagnostics.sort_by(|a, b| a.block_number.cmp(&b.block_number).then_with(|| a.message.cmp(&b.message)));
    diagnostics
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN_JSON: &str = include_str!("../tests/fixtures/fabric_chain.json");

    #[test]
    fn genesis_fixture_is_accepted() {
        let blocks = parse_fabric_blocks(CHAIN_JSON).unwrap();
        assert_eq!(blocks[0].number, 0);
        assert_eq!(blocks[0].previous_hash, "0".repeat(64));
        assert_eq!(blocks[0].transactions.len(), 1);
        assert_eq!(blocks[0].transactions[0].channel_id, "mychannel");
    }

    #[test]
    fn consecutive_chain_passes_link_validation() {
        let blocks = parse_fabric_blocks(CHAIN_JSON).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(validate_chain_links(&blocks).is_empty());
    }

    #[test]
    fn single_genesis_block_yields_no_diagnostics() {
        let blocks = parse_fabric_blocks(CHAIN_JSON).unwrap();
        assert!(validate_chain_links(&blocks[..1]).is_empty());
    }

    #[test]
    fn gapped_numbering_is_a_sequence_error() {
        let blocks: Vec<Value> = serde_json::from_str(CHAIN_JSON).unwrap();
        let gapped = serde_json::to_string(&alloc::vec![blocks[0].clone(), blocks[2].clone()]).unwrap();
        assert_eq!(parse_fabric_blocks(&gapped).unwrap_err(), FabricError::NonConsecutive { prev: 0, next: 2 });
    }

    #[test]
    fn mismatched_previous_hash_names_both_blocks() {
        let mut blocks = parse_fabric_blocks(CHAIN_JSON).unwrap();
        blocks[1].previous_hash = "ab".repeat(32);
        let diagnostics = validate_chain_links(&blocks[..2]);
        assert_eq!(diagnostics.len(), 1);
        assert_eq!(diagnostics[0].block_number, 1);
        assert!(diagnostics[0].message.contains("block 1"));
        assert!(diagnostics[0].message.contains("block 0"));
    }

    #[test]
    fn diagnostics_are_deterministic_and_sorted() {
        let mut blocks = parse_fabric_blocks(CHAIN_JSON).unwrap();
        blocks[1].previous_hash = "ab".repeat(32);
        blocks[2].previous_hash = "cd".repeat(32);
        let a = validate_chain_links(&blocks);
        let b = validate_chain_links(&blocks);
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].block_number <= w[1].block_number));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn empty_tx_id_or_channel_is_rejected() {
        let mut blocks: Vec<Value> = serde_json::from_str(CHAIN_JSON).unwrap();
        blocks[0]["transactions"][0]["txId"] = Value::String(String::new());
        let doc = serde_json::to_string(&blocks[0]).unwrap();
        assert!(matches!(parse_fabric_block(&doc), Err(FabricError::EmptyField(f)) if f.contains("txId")));

        let mut blocks: Vec<Value> = serde_json::from_str(CHAIN_JSON).unwrap();
        blocks[0]["transactions"][0]["channelId"] = Value::String(String::new());
        let doc = serde_json::to_string(&blocks[0]).unwrap();
        assert!(matches!(parse_fabric_block(&doc), Err(FabricError::EmptyField(f)) if f.contains("channelId")));
    }

    #[test]
    fn missing_field_and_negative_number_are_rejected() {
        let blocks: Vec<Value> = serde_json::from_str(CHAIN_JSON).unwrap();
        let mut b = blocks[0].clone();
        b.as_object_mut().unwrap().remove("dataHash");
        assert!(matches!(parse_fabric_block(&serde_json::to_string(&b).unwrap()), Err(FabricError::MissingField(_))));

        let mut b = blocks[0].clone();
        b["number"] = serde_json::json!(-1);
        assert!(matches!(parse_fabric_block(&serde_json::to_string(&b).unwrap()), Err(FabricError::Malformed { .. })));
    }

    #[test]
    fn reemission_preserves_all_ten_transaction_fields() {
        let blocks = parse_fabric_blocks(CHAIN_JSON).unwrap();
        let original: Vec<Value> = serde_json::from_str(CHAIN_JSON).unwrap();
        for (block, raw) in blocks.iter().zip(&original) {
            for (tx, raw_tx) in block.transactions.iter().zip(raw["transactions"].as_array().unwrap()) {
                let emitted = transaction_to_json(tx);
                for key in ["type", "version", "timestamp", "channelId", "txId", "epoch", "payloadVisibility", "chaincodePath", "chaincodeName", "chaincodeVersion"] {
                    assert_eq!(emitted.get(key), raw_tx.get(key), "field {key} altered in re-emission");
                }
            }
            // Block round trip reparses to the same value.
            let reparsed = block_from_value(&block_to_json(block), "").unwrap();
            assert_eq!(&reparsed, block);
        }
    }
}
