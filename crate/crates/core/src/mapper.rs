//! Mapping decoded chain records onto vocabulary-conformant RDF graphs.
//!
//! Every resource gets a minted `urn:blondie:...` IRI (no blank nodes).
//! Values keep their native units: satoshi for Bitcoin, wei for Ethereum.
//! Conversion to BTC exists only as a display helper.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bitcoin;
use crate::ethereum::{self, TransactionKind};
use crate::fabric;
use crate::rdf::{rdf_type, Graph, Iri, Literal, Term, Triple};
use crate::vocab::{names, BASE_NS};

/// Chain tag used in minted instance IRIs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainTag {
    Bitcoin,
    Ethereum,
    Fabric,
}

impl ChainTag {
    fn as_str(self) -> &'static str {
        match self {
            ChainTag::Bitcoin => "btc",
            ChainTag::Ethereum => "eth",
            ChainTag::Fabric => "fab",
        }
    }
}

/// Node kind segment of a minted instance IRI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Block,
    Tx,
    Account,
    Channel,
    Chaincode,
    Input,
    Output,
    Ommer,
}

impl NodeKind {
    fn as_str(self) -> &'static str {
        match self {
            NodeKind::Block => "block",
            NodeKind::Tx => "tx",
            NodeKind::Account => "account",
            NodeKind::Channel => "channel",
            NodeKind::Chaincode => "chaincode",
            NodeKind::Input => "input",
            NodeKind::Output => "output",
            NodeKind::Ommer => "ommer",
        }
    }
}

/// Mint `urn:blondie:<chain>:<kind>:<key>`. Keys are lowercased and
/// percent-encoded so the result is always a valid IRI.
pub fn mint_iri(chain: ChainTag, kind: NodeKind, key: &str) -> Iri {
    let mut encoded = String::new();
    for b in key.to_lowercase().bytes() {
        match b {
            b'a'..=b'z' | b'0'..=b'9' | b'.' | b'_' | b'~' | b'-' | b':' => encoded.push(b as char),
            other => encoded.push_str(&format!("%{other:02X}")),
        }
    }
    Iri::new(format!("urn:blondie:{}:{}:{}", chain.as_str(), kind.as_str(), encoded)).expect("minted IRI is valid")
}

/// Summary of one mapping run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MappingReport {
    pub triples_emitted: usize,
    /// Distinct typed subjects per class IRI.
    pub subjects_by_class: BTreeMap<String, usize>,
    pub warnings: Vec<String>,
}

/// A mapped graph plus its report; `report.triples_emitted == graph.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapped {
    pub graph: Graph,
    pub report: MappingReport,
}

struct Emitter {
    graph: Graph,
    warnings: Vec<String>,
}

fn term(local: &str) -> Iri {
    Iri::new(format!("{BASE_NS}{local}")).expect("vocabulary term IRI")
}

impl Emitter {
    fn new() -> Self {
        Emitter { graph: Graph::new(), warnings: Vec::new() }
    }

    fn type_of(&mut self, subject: &Iri, class_local: &str) {
        self.graph.insert(Triple::new(subject.clone(), rdf_type(), Term::Iri(term(class_local))));
    }

    fn data(&mut self, subject: &Iri, prop_local: &str, literal: Literal) {
        self.graph.insert(Triple::new(subject.clone(), term(prop_local), literal));
    }

    fn link(&mut self, subject: &Iri, prop_local: &str, object: &Iri) {
        self.graph.insert(Triple::new(subject.clone(), term(prop_local), Term::Iri(object.clone())));
    }

    fn finish(self) -> Mapped {
        let mut subjects_by_class: BTreeMap<String, BTreeMap<&Iri, ()>> = BTreeMap::new();
        let type_iri = rdf_type();
        for triple in self.graph.iter() {
            if triple.predicate == type_iri {
                if let Term::Iri(class) = &triple.object {
                    subjects_by_class.entry(class.as_str().to_string()).or_default().insert(&triple.subject, ());
                }
            }
        }
        let report = MappingReport {
            triples_emitted: self.graph.len(),
            subjects_by_class: subjects_by_class.into_iter().map(|(class, subjects)| (class, subjects.len())).collect(),
            warnings: self.warnings,
        };
        Mapped { graph: self.graph, report }
    }
}

fn dec_u<T: Into<u128>>(value: T) -> Literal {
    Literal::decimal_unsigned(value.into())
}

fn dec_i<T: Into<i128>>(value: T) -> Literal {
    Literal::decimal_signed(value.into())
}

/// The account key a standard coinbase output pays to: the 20-byte
/// pubkey hash for pay-to-pubkey-hash scripts, or the raw public key for
/// pay-to-pubkey scripts. Base58/bech32 encoding is out of scope, so the
/// key is plain lowercase hex.
pub fn standard_output_account_key(script_pubkey: &[u8]) -> Option<String> {
    match script_pubkey {
        // OP_DUP OP_HASH160 <20> ... OP_EQUALVERIFY OP_CHECKSIG
        [0x76, 0xa9, 0x14, hash @ .., 0x88, 0xac] if hash.len() == 20 => Some(hex::encode(hash)),
        // <65-byte uncompressed key> OP_CHECKSIG
        [0x41, key @ .., 0xac] if key.len() == 65 => Some(hex::encode(key)),
        // <33-byte compressed key> OP_CHECKSIG
        [0x21, key @ .., 0xac] if key.len() == 33 => Some(hex::encode(key)),
        _ => None,
    }
}

/// Map a decoded Bitcoin block, all its transactions, and the derived
/// block-level totals.
pub fn map_bitcoin_block(block: &bitcoin::Block) -> Mapped {
    let mut e = Emitter::new();
    let subject = mint_iri(ChainTag::Bitcoin, NodeKind::Block, &block.block_hash.display_hex());

    e.type_of(&subject, names::BITCOIN_BLOCK);
    e.data(&subject, names::BITCOIN_BLOCK_VERSION, dec_i(block.header.version));
    e.data(&subject, names::HASH_PREV_BLOCK, Literal::string(block.header.prev_block.display_hex()));
    e.data(&subject, names::HASH_MERKLE_ROOT, Literal::string(block.header.merkle_root.display_hex()));
    e.data(&subject, names::N_TIME, dec_u(block.header.time));
    e.data(&subject, names::N_BITS, dec_u(block.header.bits));
    e.data(&subject, names::N_NONCE, dec_u(block.header.nonce));
    e.data(&subject, names::TRANSACTION_COUNTER, dec_u(block.transactions.len() as u64));
    e.data(&subject, names::BLOCK_HASH, Literal::string(block.block_hash.display_hex()));
    e.data(&subject, names::HEIGHT, dec_u(block.height));
    e.data(&subject, names::TOTAL_TRANSACTIONS, dec_u(block.transactions.len() as u64));
    let total: i128 = block.transactions.iter().map(|tx| i128::from(tx.total_output_value())).sum();
    e.data(&subject, names::TOTAL_VALUE_TRANSFERRED, dec_i(total));

    for tx in &block.transactions {
        let tx_subject = emit_bitcoin_transaction(&mut e, tx, "confirmed");
        e.link(&subject, names::HAS_TRANSACTION, &tx_subject);
    }

    // Miner identity comes from the coinbase output when its script is a
    // standard pay-to-pubkey(-hash) form.
    match block.transactions.first() {
        Some(coinbase) if coinbase.is_coinbase() => {
            match coinbase.outputs.first().and_then(|o| standard_output_account_key(&o.script_pubkey)) {
                Some(key) => {
                    let account = mint_iri(ChainTag::Bitcoin, NodeKind::Account, &key);
                    e.type_of(&account, names::BITCOIN_ACCOUNT);
                    e.link(&subject, names::MINED_BY, &account);
                }
                None => e.warnings.push(format!(
                    "block {}: non-standard coinbase output script; minedBy omitted",
                    block.block_hash.display_hex()
                )),
            }
        }
        _ => e.warnings.push(format!(
            "block {}: first transaction is not a coinbase; minedBy omitted",
            block.block_hash.display_hex()
        )),
    }

    e.finish()
}

/// Map a transaction that is not part of any block: same subgraph as an
/// in-block transaction but `confirmationStatus` is `"unconfirmed"` and no
/// `hasTransaction` in-link exists.
pub fn map_mempool_transaction(tx: &bitcoin::Transaction) -> Mapped {
    let mut e = Emitter::new();
    emit_bitcoin_transaction(&mut e, tx, "unconfirmed");
    e.finish()
}

fn emit_bitcoin_transaction(e: &mut Emitter, tx: &bitcoin::Transaction, status: &str) -> Iri {
    let txid = tx.txid.display_hex();
    let subject = mint_iri(ChainTag::Bitcoin, NodeKind::Tx, &txid);
    e.type_of(&subject, names::BITCOIN_TRANSACTION);
    e.data(&subject, names::BITCOIN_TRANSACTION_VERSION, dec_i(tx.version));
    e.data(&subject, names::INPUT_COUNTER, dec_u(tx.inputs.len() as u64));
    e.data(&subject, names::OUTPUT_COUNTER, dec_u(tx.outputs.len() as u64));
    e.data(&subject, names::N_LOCK_TIME, dec_u(tx.lock_time));
    e.data(&subject, names::TX_ID, Literal::string(txid.clone()));
    e.data(&subject, names::CONFIRMATION_STATUS, Literal::string(status));

    for (index, input) in tx.inputs.iter().enumerate() {
        let node = mint_iri(ChainTag::Bitcoin, NodeKind::Input, &format!("{txid}:{index}"));
        e.type_of(&node, names::TRANSACTION_INPUT);
        e.data(&node, names::SOURCE_TRANSACTION_HASH, Literal::string(input.source_hash.display_hex()));
        e.data(&node, names::SOURCE_OUTPUT_INDEX, dec_u(input.source_index));
        e.data(&node, names::SCRIPT_SIG_LENGTH, dec_u(input.script_sig.len() as u64));
        e.data(&node, names::SCRIPT_SIG, Literal::string(hex::encode(&input.script_sig)));
        e.data(&node, names::N_SEQUENCE, dec_u(input.sequence));
        e.link(&subject, names::HAS_INPUT, &node);
    }
    for (index, output) in tx.outputs.iter().enumerate() {
        let node = mint_iri(ChainTag::Bitcoin, NodeKind::Output, &format!("{txid}:{index}"));
        e.type_of(&node, names::TRANSACTION_OUTPUT);
        e.data(&node, names::N_VALUE, dec_i(output.value));
        e.data(&node, names::SCRIPT_PUBKEY_LENGTH, dec_u(output.script_pubkey.len() as u64));
        e.data(&node, names::SCRIPT_PUBKEY, Literal::string(hex::encode(&output.script_pubkey)));
        e.link(&subject, names::HAS_OUTPUT, &node);
    }
    subject
}

/// Map an ingested Ethereum block with its transactions and ommers.
pub fn map_ethereum_block(block: &ethereum::EthereumBlock) -> Mapped {
    let mut e = Emitter::new();
    let subject = mint_iri(ChainTag::Ethereum, NodeKind::Block, &format!("{}", block.number));

    e.type_of(&subject, names::ETHEREUM_BLOCK);
    e.data(&subject, names::PARENT_HASH, Literal::string(block.parent_hash.clone()));
    e.data(&subject, names::OMMERS_HASH, Literal::string(block.ommers_hash.clone()));
    e.data(&subject, names::BENEFICIARY, Literal::string(block.beneficiary.clone()));
    e.data(&subject, names::STATE_ROOT, Literal::string(block.state_root.clone()));
    e.data(&subject, names::TRANSACTIONS_ROOT, Literal::string(block.transactions_root.clone()));
    e.data(&subject, names::RECEIPTS_ROOT, Literal::string(block.receipts_root.clone()));
    e.data(&subject, names::LOGS_BLOOM, Literal::string(block.logs_bloom.clone()));
    e.data(&subject, names::DIFFICULTY, dec_u(block.difficulty));
    e.data(&subject, names::NUMBER, dec_u(block.number));
    e.data(&subject, names::GAS_LIMIT, dec_u(block.gas_limit));
    e.data(&subject, names::GAS_USED, dec_u(block.gas_used));
    e.data(&subject, names::TIMESTAMP, dec_u(block.timestamp));
    e.data(&subject, names::EXTRA_DATA, Literal::string(block.extra_data.clone()));
    e.data(&subject, names::MIX_HASH, Literal::string(block.mix_hash.clone()));
    e.data(&subject, names::NONCE, Literal::string(block.nonce.clone()));
    e.data(&subject, names::HEIGHT, dec_u(block.number));
    e.data(&subject, names::TOTAL_TRANSACTIONS, dec_u(block.transactions.len() as u64));
    let total: u128 = block.transactions.iter().map(|tx| tx.value).sum();
    e.data(&subject, names::TOTAL_VALUE_TRANSFERRED, dec_u(total));
    if let Some(hash) = &block.hash {
        e.data(&subject, names::BLOCK_HASH, Literal::string(hash.clone()));
    }

    let miner = mint_iri(ChainTag::Ethereum, NodeKind::Account, &block.beneficiary);
    e.type_of(&miner, names::ETHEREUM_ACCOUNT);
    e.link(&subject, names::MINED_BY, &miner);

    for (index, tx) in block.transactions.iter().enumerate() {
        let key = match &tx.hash {
            Some(hash) => hash.clone(),
            None => format!("{}-{}", block.number, index),
        };
        let tx_subject = mint_iri(ChainTag::Ethereum, NodeKind::Tx, &key);
        match &tx.kind {
            TransactionKind::ContractCreation { init } => {
                e.type_of(&tx_subject, names::ETHEREUM_CONTRACT_CREATION);
                e.data(&tx_subject, names::INIT, Literal::string(init.clone()));
            }
            TransactionKind::MessageCall { data } => {
                e.type_of(&tx_subject, names::ETHEREUM_MESSAGE_CALL);
                e.data(&tx_subject, names::INPUT_DATA, Literal::string(data.clone()));
            }
        }
        e.data(&tx_subject, names::TRANSACTION_NONCE, dec_u(tx.nonce));
        e.data(&tx_subject, names::GAS_PRICE, dec_u(tx.gas_price));
        e.data(&tx_subject, names::TRANSACTION_GAS_LIMIT, dec_u(tx.gas_limit));
        e.data(&tx_subject, names::TO_ADDRESS, Literal::string(tx.to.clone()));
        e.data(&tx_subject, names::VALUE, dec_u(tx.value));
        e.data(&tx_subject, names::SIGNATURE_V, Literal::string(tx.v.clone()));
        e.data(&tx_subject, names::SIGNATURE_R, Literal::string(tx.r.clone()));
        e.data(&tx_subject, names::SIGNATURE_S, Literal::string(tx.s.clone()));
        e.data(&tx_subject, names::CONFIRMATION_STATUS, Literal::string("confirmed"));
        if let Some(hash) = &tx.hash {
            e.data(&tx_subject, names::TX_ID, Literal::string(hash.clone()));
        }
        if tx.to != ethereum::ZERO_ADDRESS {
            let account = mint_iri(ChainTag::Ethereum, NodeKind::Account, &tx.to);
            e.type_of(&account, names::ETHEREUM_ACCOUNT);
            e.link(&tx_subject, names::TO_ACCOUNT, &account);
        }
        if let Some(from) = &tx.from {
            let account = mint_iri(ChainTag::Ethereum, NodeKind::Account, from);
            e.type_of(&account, names::ETHEREUM_ACCOUNT);
            e.link(&tx_subject, names::FROM_ACCOUNT, &account);
        }
        e.link(&subject, names::HAS_TRANSACTION, &tx_subject);
    }

    for ommer in &block.ommers {
        let node = mint_iri(ChainTag::Ethereum, NodeKind::Ommer, ommer);
        e.type_of(&node, names::OMMER_HEADER);
        e.link(&subject, names::HAS_OMMER, &node);
    }

    e.finish()
}

/// Map an ingested Fabric block; height copies the block number, and every
/// transaction links to minted channel and chaincode nodes.
pub fn map_fabric_block(block: &fabric::FabricBlock) -> Mapped {
    let mut e = Emitter::new();
    let subject = mint_iri(ChainTag::Fabric, NodeKind::Block, &format!("{}", block.number));

    e.type_of(&subject, names::HYPERLEDGER_BLOCK);
    e.data(&subject, names::BLOCK_NUMBER, dec_u(block.number));
    e.data(&subject, names::CURRENT_BLOCK_HASH, Literal::string(block.current_block_hash.clone()));
    e.data(&subject, names::PREVIOUS_HASH, Literal::string(block.previous_hash.clone()));
    e.data(&subject, names::DATA_HASH, Literal::string(block.data_hash.clone()));
    e.data(&subject, names::HEIGHT, dec_u(block.number));
    e.data(&subject, names::TOTAL_TRANSACTIONS, dec_u(block.transactions.len() as u64));
    // Fabric carries no transferable value; the total is the empty sum.
    e.data(&subject, names::TOTAL_VALUE_TRANSFERRED, dec_u(0u32));

    for tx in &block.transactions {
        let tx_subject = mint_iri(ChainTag::Fabric, NodeKind::Tx, &tx.tx_id);
        e.type_of(&tx_subject, names::HYPERLEDGER_TRANSACTION);
        e.data(&tx_subject, names::TRANSACTION_TYPE, Literal::string(tx.tx_type.clone()));
        e.data(&tx_subject, names::TRANSACTION_VERSION, dec_u(tx.version));
        e.data(&tx_subject, names::TRANSACTION_TIMESTAMP, Literal::string(tx.timestamp.clone()));
        e.data(&tx_subject, names::CHANNEL_ID, Literal::string(tx.channel_id.clone()));
        e.data(&tx_subject, names::TRANSACTION_ID, Literal::string(tx.tx_id.clone()));
        e.data(&tx_subject, names::EPOCH, dec_u(tx.epoch));
        e.data(&tx_subject, names::PAYLOAD_VISIBILITY, Literal::string(tx.payload_visibility.clone()));
        e.data(&tx_subject, names::CONFIRMATION_STATUS, Literal::string("confirmed"));
        e.link(&subject, names::HAS_TRANSACTION, &tx_subject);

        let channel = mint_iri(ChainTag::Fabric, NodeKind::Channel, &tx.channel_id);
        e.type_of(&channel, names::CHANNEL);
        e.link(&tx_subject, names::BELONGS_TO_CHANNEL, &channel);

        let chaincode = mint_iri(ChainTag::Fabric, NodeKind::Chaincode, &format!("{}:{}", tx.chaincode_name, tx.chaincode_version));
        e.type_of(&chaincode, names::CHAINCODE);
        e.data(&chaincode, names::CHAINCODE_NAME, Literal::string(tx.chaincode_name.clone()));
        e.data(&chaincode, names::CHAINCODE_VERSION, Literal::string(tx.chaincode_version.clone()));
        e.data(&chaincode, names::CHAINCODE_PATH, Literal::string(tx.chaincode_path.clone()));
        e.link(&tx_subject, names::INVOKES_CHAINCODE, &chaincode);
    }

    e.finish()
}

/// Display-level satoshi-to-BTC conversion (1 BTC = 10^8 satoshi). Mapped
/// graphs always carry raw satoshi.
pub fn satoshi_to_btc_display(satoshi: i64) -> String {
    let negative = satoshi < 0;
    let abs = satoshi.unsigned_abs();
    let whole = abs / 100_000_000;
    let frac = abs % 100_000_000;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if frac == 0 {
        out.push_str(&format!("{whole}"));
    } else {
        let digits = format!("{frac:08}");
        out.push_str(&format!("{whole}.{}", digits.trim_end_matches('0')));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::{self, Vocabulary};
    use std::vec;

    const GENESIS_HEX: &str = include_str!("../tests/fixtures/genesis.hex");
    const BLOCK1_HEX: &str = include_str!("../tests/fixtures/block1.hex");
    const ETH_GENESIS: &str = include_str!("../tests/fixtures/eth_genesis.json");
    const ETH_BLOCK: &str = include_str!("../tests/fixtures/eth_block_46147.json");
    const FABRIC_CHAIN: &str = include_str!("../tests/fixtures/fabric_chain.json");

    fn btc_block(hex_text: &str, height: u64) -> bitcoin::Block {
        bitcoin::decode_block(&hex::decode(hex_text.trim()).unwrap(), height).unwrap().block
    }

    fn has_data(graph: &Graph, subject: &Iri, prop: &str, literal: Literal) -> bool {
        graph.contains(&Triple::new(subject.clone(), term(prop), literal))
    }

    #[test]
    fn genesis_block_carries_supplied_height() {
        let mapped = map_bitcoin_block(&btc_block(GENESIS_HEX, 0));
        let subject = mint_iri(ChainTag::Bitcoin, NodeKind::Block, "000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f");
        assert!(has_data(&mapped.graph, &subject, names::HEIGHT, Literal::decimal("0").unwrap()));
        assert_eq!(mapped.report.triples_emitted, mapped.graph.len());
    }

    #[test]
    fn block_one_total_transactions_is_one() {
        let block = btc_block(BLOCK1_HEX, 1);
        let mapped = map_bitcoin_block(&block);
        let subject = mint_iri(ChainTag::Bitcoin, NodeKind::Block, &block.block_hash.display_hex());
        assert!(has_data(&mapped.graph, &subject, names::TOTAL_TRANSACTIONS, Literal::decimal("1").unwrap()));
    }

    #[test]
    fn total_value_matches_independent_fold_over_outputs() {
        let block = btc_block(BLOCK1_HEX, 1);
        let mapped = map_bitcoin_block(&block);
        // Brute-force fold over every decoded output.
        let mut expected: i128 = 0;
        for tx in &block.transactions {
            for out in &tx.outputs {
                expected += i128::from(out.value);
            }
        }
        let subject = mint_iri(ChainTag::Bitcoin, NodeKind::Block, &block.block_hash.display_hex());
        assert!(has_data(&mapped.graph, &subject, names::TOTAL_VALUE_TRANSFERRED, Literal::decimal_signed(expected)));
        assert_eq!(expected, 5_000_000_000);
    }

    #[test]
    fn coinbase_pay_to_pubkey_yields_miner_link() {
        let block = btc_block(GENESIS_HEX, 0);
        let mapped = map_bitcoin_block(&block);
        let subject = mint_iri(ChainTag::Bitcoin, NodeKind::Block, &block.block_hash.display_hex());
        let key = standard_output_account_key(&block.transactions[0].outputs[0].script_pubkey).unwrap();
        assert_eq!(key.len(), 130, "uncompressed pubkey hex");
        let account = mint_iri(ChainTag::Bitcoin, NodeKind::Account, &key);
        assert!(mapped.graph.contains(&Triple::new(subject, term(names::MINED_BY), Term::Iri(account.clone()))));
        assert!(mapped.graph.subjects_of_type(&term(names::BITCOIN_ACCOUNT)).any(|s| s == &account));
        assert!(mapped.report.warnings.is_empty());
    }

    #[test]
    fn nonstandard_coinbase_script_warns_and_omits_miner() {
        let mut block = btc_block(GENESIS_HEX, 0);
        block.transactions[0].outputs[0].script_pubkey = vec![0x6a, 0x01, 0x00]; // OP_RETURN
        let mapped = map_bitcoin_block(&block);
        assert_eq!(mapped.report.warnings.len(), 1);
        assert!(!mapped.graph.iter().any(|t| t.predicate == term(names::MINED_BY)));
    }

    #[test]
    fn script_classification_recognizes_standard_forms() {
        let mut p2pkh = vec![0x76, 0xa9, 0x14];
        p2pkh.extend_from_slice(&[0xcd; 20]);
        p2pkh.extend_from_slice(&[0x88, 0xac]);
        assert_eq!(standard_output_account_key(&p2pkh).unwrap(), "cd".repeat(20));

        let mut p2pk_compressed = vec![0x21];
        p2pk_compressed.extend_from_slice(&[0x02; 33]);
        p2pk_compressed.push(0xac);
        assert_eq!(standard_output_account_key(&p2pk_compressed).unwrap(), "02".repeat(33));

        assert_eq!(standard_output_account_key(&[0x51]), None);
        assert_eq!(standard_output_account_key(&[]), None);
    }

    #[test]
    fn mempool_transaction_is_unconfirmed_without_in_link() {
        let block = btc_block(BLOCK1_HEX, 1);
        let tx = &block.transactions[0];
        let mapped = map_mempool_transaction(tx);
        let subject = mint_iri(ChainTag::Bitcoin, NodeKind::Tx, &tx.txid.display_hex());
        assert!(has_data(&mapped.graph, &subject, names::CONFIRMATION_STATUS, Literal::string("unconfirmed")));
        assert!(!mapped.graph.iter().any(|t| t.predicate == term(names::HAS_TRANSACTION)));

        // The same transaction mapped inside a block is confirmed.
        let in_block = map_bitcoin_block(&block);
        assert!(has_data(&in_block.graph, &subject, names::CONFIRMATION_STATUS, Literal::string("confirmed")));
    }

    #[test]
    fn merged_mempool_and_chain_graphs_keep_distinct_statuses() {
        let block1 = btc_block(BLOCK1_HEX, 1);
        let genesis = btc_block(GENESIS_HEX, 0);
        // Mempool holds the genesis coinbase (as an arbitrary distinct tx),
        // the chain graph holds block 1.
        let mut merged = map_mempool_transaction(&genesis.transactions[0]).graph;
        merged.merge(map_bitcoin_block(&block1).graph);
        let status = term(names::CONFIRMATION_STATUS);
        let mut statuses: Vec<(String, String)> = merged
            .iter()
            .filter(|t| t.predicate == status)
            .map(|t| (t.subject.as_str().to_string(), t.object.as_literal().unwrap().lexical().to_string()))
            .collect();
        statuses.sort();
        assert_eq!(statuses.len(), 2);
        assert_eq!(statuses.iter().filter(|(_, s)| s == "confirmed").count(), 1);
        assert_eq!(statuses.iter().filter(|(_, s)| s == "unconfirmed").count(), 1);
    }

    #[test]
    fn ethereum_genesis_number_is_decimal_zero() {
        let block = crate::ethereum::parse_eth_block(ETH_GENESIS).unwrap();
        let mapped = map_ethereum_block(&block);
        let subject = mint_iri(ChainTag::Ethereum, NodeKind::Block, "0");
        assert!(has_data(&mapped.graph, &subject, names::NUMBER, Literal::decimal("0").unwrap()));
        assert!(has_data(&mapped.graph, &subject, names::TOTAL_VALUE_TRANSFERRED, Literal::decimal("0").unwrap()), "empty sum");
        // minedBy points at the beneficiary account.
        let miner = mint_iri(ChainTag::Ethereum, NodeKind::Account, &block.beneficiary);
        assert!(mapped.graph.contains(&Triple::new(subject, term(names::MINED_BY), Term::Iri(miner))));
    }

    #[test]
    fn creation_transactions_carry_init_and_type() {
        let block = crate::ethereum::parse_eth_block(ETH_BLOCK).unwrap();
        let mapped = map_ethereum_block(&block);
        let creation = block.transactions.iter().find(|t| t.is_contract_creation()).unwrap();
        let subject = mint_iri(ChainTag::Ethereum, NodeKind::Tx, creation.hash.as_ref().unwrap());
        assert!(mapped.graph.subjects_of_type(&term(names::ETHEREUM_CONTRACT_CREATION)).any(|s| s == &subject));
        let TransactionKind::ContractCreation { init } = &creation.kind else {
            panic!("expected creation")
        };
        assert!(has_data(&mapped.graph, &subject, names::INIT, Literal::string(init.clone())));
        // Message calls get the other type and an inputData property.
        let call = block.transactions.iter().find(|t| !t.is_contract_creation()).unwrap();
        let call_subject = mint_iri(ChainTag::Ethereum, NodeKind::Tx, call.hash.as_ref().unwrap());
        assert!(mapped.graph.subjects_of_type(&term(names::ETHEREUM_MESSAGE_CALL)).any(|s| s == &call_subject));
    }

    #[test]
    fn ethereum_total_value_matches_fold() {
        let block = crate::ethereum::parse_eth_block(ETH_BLOCK).unwrap();
        let mapped = map_ethereum_block(&block);
        let expected: u128 = block.transactions.iter().map(|t| t.value).sum();
        let subject = mint_iri(ChainTag::Ethereum, NodeKind::Block, &format!("{}", block.number));
        assert!(has_data(&mapped.graph, &subject, names::TOTAL_VALUE_TRANSFERRED, Literal::decimal_unsigned(expected)));
    }

    #[test]
    fn fabric_height_copies_block_number() {
        let blocks = crate::fabric::parse_fabric_blocks(FABRIC_CHAIN).unwrap();
        let mapped = map_fabric_block(&blocks[0]);
        let subject = mint_iri(ChainTag::Fabric, NodeKind::Block, "0");
        assert!(has_data(&mapped.graph, &subject, names::HEIGHT, Literal::decimal("0").unwrap()));
    }

    #[test]
    fn fabric_channel_link_uses_minted_channel_iri() {
        let blocks = crate::fabric::parse_fabric_blocks(FABRIC_CHAIN).unwrap();
        let mapped = map_fabric_block(&blocks[0]);
        let tx = &blocks[0].transactions[0];
        let tx_subject = mint_iri(ChainTag::Fabric, NodeKind::Tx, &tx.tx_id);
        let channel = Iri::new("urn:blondie:fab:channel:mychannel").unwrap();
        assert!(mapped.graph.contains(&Triple::new(tx_subject, term(names::BELONGS_TO_CHANNEL), Term::Iri(channel.clone()))));
        assert!(mapped.graph.subjects_of_type(&term(names::CHANNEL)).any(|s| s == &channel));
    }

    #[test]
    fn fabric_chaincode_node_carries_name_and_version() {
        let blocks = crate::fabric::parse_fabric_blocks(FABRIC_CHAIN).unwrap();
        let mapped = map_fabric_block(&blocks[0]);
        let chaincode = Iri::new("urn:blondie:fab:chaincode:fabcar:v1").unwrap();
        assert!(has_data(&mapped.graph, &chaincode, names::CHAINCODE_NAME, Literal::string("fabcar")));
        assert!(has_data(&mapped.graph, &chaincode, names::CHAINCODE_VERSION, Literal::string("v1")));
        assert!(has_data(&mapped.graph, &chaincode, names::CHAINCODE_PATH, Literal::string("github.com/hyperledger/fabric-samples/chaincode/fabcar/go")));
    }

    #[test]
    fn mapping_is_deterministic() {
        let block = btc_block(BLOCK1_HEX, 1);
        assert_eq!(map_bitcoin_block(&block), map_bitcoin_block(&block));
        let eth = crate::ethereum::parse_eth_block(ETH_BLOCK).unwrap();
        assert_eq!(map_ethereum_block(&eth).graph, map_ethereum_block(&eth).graph);
    }

    fn assert_closed_vocabulary(graph: &Graph, voc: &Vocabulary) {
        let type_iri = rdf_type();
        for triple in graph.iter() {
            if triple.predicate == type_iri {
                let class = triple.object.as_iri().expect("type object is an IRI");
                assert!(voc.class(class).is_some(), "undeclared class {class}");
            } else {
                assert!(
                    voc.object_property(&triple.predicate).is_some() || voc.data_property(&triple.predicate).is_some(),
                    "undeclared predicate {}",
                    triple.predicate
                );
            }
        }
    }

    #[test]
    fn every_emitted_term_is_declared_in_the_builtin_vocabulary() {
        let voc = vocab::builtin_vocabulary();
        assert_closed_vocabulary(&map_bitcoin_block(&btc_block(GENESIS_HEX, 0)).graph, &voc);
        assert_closed_vocabulary(&map_bitcoin_block(&btc_block(BLOCK1_HEX, 1)).graph, &voc);
        let eth = crate::ethereum::parse_eth_block(ETH_BLOCK).unwrap();
        assert_closed_vocabulary(&map_ethereum_block(&eth).graph, &voc);
        for block in crate::fabric::parse_fabric_blocks(FABRIC_CHAIN).unwrap() {
            assert_closed_vocabulary(&map_fabric_block(&block).graph, &voc);
        }
        let genesis = btc_block(GENESIS_HEX, 0);
        assert_closed_vocabulary(&map_mempool_transaction(&genesis.transactions[0]).graph, &voc);
    }

    #[test]
    fn minted_iris_are_lowercase_and_encoded() {
        let iri = mint_iri(ChainTag::Fabric, NodeKind::Channel, "My Channel/7");
        assert_eq!(iri.as_str(), "urn:blondie:fab:channel:my%20channel%2F7");
    }

    #[test]
    fn report_counts_subjects_by_class() {
        let block = btc_block(BLOCK1_HEX, 1);
        let mapped = map_bitcoin_block(&block);
        let classes = &mapped.report.subjects_by_class;
        assert_eq!(classes.get(&format!("{BASE_NS}BitcoinBlock")), Some(&1));
        assert_eq!(classes.get(&format!("{BASE_NS}BitcoinTransaction")), Some(&1));
        assert_eq!(classes.get(&format!("{BASE_NS}TransactionInput")), Some(&1));
        assert_eq!(classes.get(&format!("{BASE_NS}TransactionOutput")), Some(&1));
    }

    #[test]
    fn satoshi_display_conversion() {
        assert_eq!(satoshi_to_btc_display(5_000_000_000), "50");
        assert_eq!(satoshi_to_btc_display(123), "0.00000123");
        assert_eq!(satoshi_to_btc_display(150_000_000), "1.5");
        assert_eq!(satoshi_to_btc_display(0), "0");
        assert_eq!(satoshi_to_btc_display(-25_000_000), "-0.25");
    }
}
