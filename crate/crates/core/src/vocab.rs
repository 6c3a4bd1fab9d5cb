//! The BLONDiE vocabulary: classes, properties and axioms covering the
//! native block/transaction structures of Bitcoin, Ethereum and Hyperledger
//! Fabric, plus the derived properties the shipped queries rely on.
//!
//! The built-in term set is fixed: 23 classes, 11 object properties and
//! 64 data properties. Every native field of the supported record layouts
//! maps to exactly one property; [`field_mappings`] ships that table as data.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rdf::{self, Graph, Iri, Literal, Term, Triple};

/// Base namespace of every vocabulary term.
pub const BASE_NS: &str = "https://w3id.org/blondie#";

/// Prefix label used for the base namespace in Turtle output.
pub const PREFIX_LABEL: &str = "blondie";

/// OWL/RDFS terms used by the ontology export.
pub mod owl {
    pub const ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";
    pub const CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
    pub const RDFS_SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
    pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
}

/// Local names of every built-in term.
pub mod names {
    // Classes.
    pub const BLOCKCHAIN: &str = "Blockchain";
    pub const BLOCK: &str = "Block";
    pub const BITCOIN_BLOCK: &str = "BitcoinBlock";
    pub const ETHEREUM_BLOCK: &str = "EthereumBlock";
    pub const HYPERLEDGER_BLOCK: &str = "HyperledgerBlock";
    pub const TRANSACTION: &str = "Transaction";
    pub const BITCOIN_TRANSACTION: &str = "BitcoinTransaction";
    pub const ETHEREUM_TRANSACTION: &str = "EthereumTransaction";
    pub const HYPERLEDGER_TRANSACTION: &str = "HyperledgerTransaction";
    pub const ETHEREUM_CONTRACT_CREATION: &str = "EthereumContractCreation";
    pub const ETHEREUM_MESSAGE_CALL: &str = "EthereumMessageCall";
    pub const TRANSACTION_INPUT: &str = "TransactionInput";
    pub const TRANSACTION_OUTPUT: &str = "TransactionOutput";
    pub const ACCOUNT: &str = "Account";
    pub const BITCOIN_ACCOUNT: &str = "BitcoinAccount";
    pub const ETHEREUM_ACCOUNT: &str = "EthereumAccount";
    pub const HYPERLEDGER_ACCOUNT: &str = "HyperledgerAccount";
    pub const EXTERNAL_OWNED_ACCOUNT: &str = "ExternalOwnedAccount";
    pub const CONTRACT_ACCOUNT: &str = "ContractAccount";
    pub const MINER: &str = "Miner";
    pub const OMMER_HEADER: &str = "OmmerHeader";
    pub const CHANNEL: &str = "Channel";
    pub const CHAINCODE: &str = "Chaincode";

    // Object properties.
    pub const HAS_TRANSACTION: &str = "hasTransaction";
    pub const HAS_PARENT_BLOCK: &str = "hasParentBlock";
    pub const PART_OF_CHAIN: &str = "partOfChain";
    pub const MINED_BY: &str = "minedBy";
    pub const HAS_INPUT: &str = "hasInput";
    pub const HAS_OUTPUT: &str = "hasOutput";
    pub const FROM_ACCOUNT: &str = "fromAccount";
    pub const TO_ACCOUNT: &str = "toAccount";
    pub const HAS_OMMER: &str = "hasOmmer";
    pub const BELONGS_TO_CHANNEL: &str = "belongsToChannel";
    pub const INVOKES_CHAINCODE: &str = "invokesChaincode";

    // Bitcoin block data properties.
    pub const BITCOIN_BLOCK_VERSION: &str = "bitcoinBlockVersion";
    pub const HASH_PREV_BLOCK: &str = "hashPrevBlock";
    pub const HASH_MERKLE_ROOT: &str = "hashMerkleRoot";
    pub const N_TIME: &str = "nTime";
    pub const N_BITS: &str = "nBits";
    pub const N_NONCE: &str = "nNonce";
    pub const TRANSACTION_COUNTER: &str = "transactionCounter";

    // Bitcoin transaction data properties.
    pub const BITCOIN_TRANSACTION_VERSION: &str = "bitcoinTransactionVersion";
    pub const INPUT_COUNTER: &str = "inputCounter";
    pub const OUTPUT_COUNTER: &str = "outputCounter";
    pub const N_LOCK_TIME: &str = "nLockTime";
    pub const SOURCE_TRANSACTION_HASH: &str = "sourceTransactionHash";
    pub const SOURCE_OUTPUT_INDEX: &str = "sourceOutputIndex";
    pub const SCRIPT_SIG_LENGTH: &str = "scriptSigLength";
    pub const SCRIPT_SIG: &str = "scriptSig";
    pub const N_SEQUENCE: &str = "nSequence";
    pub const N_VALUE: &str = "nValue";
    pub const SCRIPT_PUBKEY_LENGTH: &str = "scriptPubkeyLength";
    pub const SCRIPT_PUBKEY: &str = "scriptPubkey";

    // Ethereum block data properties.
    pub const PARENT_HASH: &str = "parentHash";
    pub const OMMERS_HASH: &str = "ommersHash";
    pub const BENEFICIARY: &str = "beneficiary";
    pub const STATE_ROOT: &str = "stateRoot";
    pub const TRANSACTIONS_ROOT: &str = "transactionsRoot";
    pub const RECEIPTS_ROOT: &str = "receiptsRoot";
    pub const LOGS_BLOOM: &str = "logsBloom";
    pub const DIFFICULTY: &str = "difficulty";
    pub const NUMBER: &str = "number";
    pub const GAS_LIMIT: &str = "gasLimit";
    pub const GAS_USED: &str = "gasUsed";
    pub const TIMESTAMP: &str = "timestamp";
    pub const EXTRA_DATA: &str = "extraData";
    pub const MIX_HASH: &str = "mixHash";
    pub const NONCE: &str = "nonce";

    // Ethereum transaction data properties.
    pub const TRANSACTION_NONCE: &str = "transactionNonce";
    pub const GAS_PRICE: &str = "gasPrice";
    pub const TRANSACTION_GAS_LIMIT: &str = "transactionGasLimit";
    pub const TO_ADDRESS: &str = "toAddress";
    pub const VALUE: &str = "value";
    pub const SIGNATURE_V: &str = "signatureV";
    pub const SIGNATURE_R: &str = "signatureR";
    pub const SIGNATURE_S: &str = "signatureS";
    pub const INIT: &str = "init";
    pub const INPUT_DATA: &str = "inputData";

    // Fabric block data properties.
    pub const BLOCK_NUMBER: &str = "blockNumber";
    pub const CURRENT_BLOCK_HASH: &str = "currentBlockHash";
    pub const PREVIOUS_HASH: &str = "previousHash";
    pub const DATA_HASH: &str = "dataHash";

    // Fabric transaction data properties.
    pub const TRANSACTION_TYPE: &str = "transactionType";
    pub const TRANSACTION_VERSION: &str = "transactionVersion";
    pub const TRANSACTION_TIMESTAMP: &str = "transactionTimestamp";
    pub const CHANNEL_ID: &str = "channelId";
    pub const TRANSACTION_ID: &str = "transactionId";
    pub const EPOCH: &str = "epoch";
    pub const PAYLOAD_VISIBILITY: &str = "payloadVisibility";
    pub const CHAINCODE_PATH: &str = "chaincodePath";
    pub const CHAINCODE_NAME: &str = "chaincodeName";
    pub const CHAINCODE_VERSION: &str = "chaincodeVersion";

    // Derived data properties backing the shipped queries.
    pub const BLOCK_HASH: &str = "blockHash";
    pub const TX_ID: &str = "txId";
    pub const HEIGHT: &str = "height";
    pub const TOTAL_TRANSACTIONS: &str = "totalTransactions";
    pub const TOTAL_VALUE_TRANSFERRED: &str = "totalValueTransferred";
    pub const CONFIRMATION_STATUS: &str = "confirmationStatus";
}

use names as n;

/// The two facet datatypes data properties may declare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Facet {
    String,
    Decimal,
}

impl Facet {
    pub fn xsd_iri(self) -> &'static str {
        match self {
            Facet::String => rdf::ns::XSD_STRING,
            Facet::Decimal => rdf::ns::XSD_DECIMAL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTerm {
    pub iri: Iri,
    pub label: String,
    pub parent: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectPropertyTerm {
    pub iri: Iri,
    pub domain: Iri,
    pub range: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataPropertyTerm {
    pub iri: Iri,
    pub domain: Iri,
    pub datatype: Facet,
}

/// An unordered pair of disjoint classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DisjointnessAxiom {
    left: Iri,
    right: Iri,
}

impl DisjointnessAxiom {
    /// Normalizes the pair so the axiom compares as unordered.
    pub fn new(a: Iri, b: Iri) -> Result<Self, VocabError> {
        if a == b {
            return Err(VocabError::SelfDisjoint(a));
        }
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        Ok(DisjointnessAxiom { left, right })
    }

    pub fn left(&self) -> &Iri {
        &self.left
    }

    pub fn right(&self) -> &Iri {
        &self.right
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VocabError {
    #[error("class <{0}> is not declared in the vocabulary")]
    UnknownClass(Iri),
    #[error("class <{0}> participates in a parent cycle")]
    CyclicHierarchy(Iri),
    #[error("class <{0}> cannot be disjoint with itself")]
    SelfDisjoint(Iri),
}

/// An immutable term set. All lookup methods take `&self`; there is no
/// mutation API, so sharing across threads is unrestricted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    base: Iri,
    classes: BTreeMap<Iri, ClassTerm>,
    object_properties: BTreeMap<Iri, ObjectPropertyTerm>,
    data_properties: BTreeMap<Iri, DataPropertyTerm>,
    disjointness: BTreeSet<DisjointnessAxiom>,
}

impl Vocabulary {
    pub fn new(
        base: Iri,
        classes: Vec<ClassTerm>,
        object_properties: Vec<ObjectPropertyTerm>,
        data_properties: Vec<DataPropertyTerm>,
        disjointness: Vec<DisjointnessAxiom>,
    ) -> Result<Self, VocabError> {
        let class_map: BTreeMap<Iri, ClassTerm> = classes.into_iter().map(|c| (c.iri.clone(), c)).collect();
        // Parents must be declared and acyclic.
        for class in class_map.values() {
            let mut seen = BTreeSet::new();
            let mut cursor = class;
            seen.insert(&cursor.iri);
            while let Some(parent) = &cursor.parent {
                let Some(next) = class_map.get(parent) else {
                    return Err(VocabError::UnknownClass(parent.clone()));
                };
                if !seen.insert(&next.iri) {
                    return Err(VocabError::CyclicHierarchy(class.iri.clone()));
                }
                cursor = next;
            }
        }
        for prop in &object_properties {
            for class in [&prop.domain, &prop.range] {
                if !class_map.contains_key(class) {
                    return Err(VocabError::UnknownClass(class.clone()));
                }
            }
        }
        for prop in &data_properties {
            if !class_map.contains_key(&prop.domain) {
                return Err(VocabError::UnknownClass(prop.domain.clone()));
            }
        }
        for axiom in &disjointness {
            for class in [&axiom.left, &axiom.right] {
                if !class_map.contains_key(class) {
                    return Err(VocabError::UnknownClass(class.clone()));
                }
            }
        }
        Ok(Vocabulary {
            base,
            classes: class_map,
            object_properties: object_properties.into_iter().map(|p| (p.iri.clone(), p)).collect(),
            data_properties: data_properties.into_iter().map(|p| (p.iri.clone(), p)).collect(),
            disjointness: disjointness.into_iter().collect(),
        })
    }

    /// The fixed default vocabulary. Deterministic across calls.
    pub fn builtin() -> Vocabulary {
        let term = |local: &str| Iri::new(alloc::format!("{BASE_NS}{local}")).expect("static term IRI");
        let classes = CLASS_TABLE
            .iter()
            .map(|(local, parent)| ClassTerm {
                iri: term(local),
                label: (*local).to_string(),
                parent: parent.map(term),
            })
            .collect();
        let object_properties = OBJECT_PROPERTY_TABLE
            .iter()
            .map(|(local, domain, range)| ObjectPropertyTerm { iri: term(local), domain: term(domain), range: term(range) })
            .collect();
        let data_properties = DATA_PROPERTY_TABLE
            .iter()
            .map(|(local, domain, facet)| DataPropertyTerm { iri: term(local), domain: term(domain), datatype: *facet })
            .collect();
        let disjointness = DISJOINTNESS_TABLE
            .iter()
            .map(|(a, b)| DisjointnessAxiom::new(term(a), term(b)).expect("static axiom"))
            .collect();
        Vocabulary::new(Iri::new(BASE_NS).expect("static base"), classes, object_properties, data_properties, disjointness)
            .expect("built-in vocabulary is well-formed")
    }

    pub fn base(&self) -> &Iri {
        &self.base
    }

    /// IRI of a term in the base namespace.
    pub fn term(&self, local: &str) -> Iri {
        Iri::new(alloc::format!("{}{}", self.base.as_str(), local)).expect("term IRI")
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn object_property_count(&self) -> usize {
        self.object_properties.len()
    }

    pub fn data_property_count(&self) -> usize {
        self.data_properties.len()
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassTerm> {
        self.classes.values()
    }

    pub fn object_properties(&self) -> impl Iterator<Item = &ObjectPropertyTerm> {
        self.object_properties.values()
    }

    pub fn data_properties(&self) -> impl Iterator<Item = &DataPropertyTerm> {
        self.data_properties.values()
    }

    pub fn disjointness(&self) -> impl Iterator<Item = &DisjointnessAxiom> {
        self.disjointness.iter()
    }

    pub fn class(&self, iri: &Iri) -> Option<&ClassTerm> {
        self.classes.get(iri)
    }

    pub fn object_property(&self, iri: &Iri) -> Option<&ObjectPropertyTerm> {
        self.object_properties.get(iri)
    }

    pub fn data_property(&self, iri: &Iri) -> Option<&DataPropertyTerm> {
        self.data_properties.get(iri)
    }

    fn require_class(&self, iri: &Iri) -> Result<&ClassTerm, VocabError> {
        self.classes.get(iri).ok_or_else(|| VocabError::UnknownClass(iri.clone()))
    }

    /// The superclass chain of `class`, starting at the class itself.
    pub fn superclass_chain<'a>(&'a self, class: &'a Iri) -> Result<Vec<&'a Iri>, VocabError> {
        let mut chain = Vec::new();
        let mut cursor = self.require_class(class)?;
        chain.push(&cursor.iri);
        while let Some(parent) = &cursor.parent {
            cursor = self.require_class(parent)?;
            chain.push(&cursor.iri);
        }
        Ok(chain)
    }

    /// True iff `sup` is reachable from `sub` through zero or more parent
    /// links (reflexive).
    pub fn is_subclass_of(&self, sub: &Iri, sup: &Iri) -> Result<bool, VocabError> {
        self.require_class(sup)?;
        Ok(self.superclass_chain(sub)?.contains(&sup))
    }

    /// True iff an axiom separates the two superclass chains; symmetric, and
    /// false for a class against itself under the built-in axiom set.
    pub fn are_disjoint(&self, a: &Iri, b: &Iri) -> Result<bool, VocabError> {
        let chain_a = self.superclass_chain(a)?;
        let chain_b = self.superclass_chain(b)?;
        for ca in &chain_a {
            for cb in &chain_b {
                if ca == cb {
                    continue;
                }
                let axiom = DisjointnessAxiom::new((*ca).clone(), (*cb).clone()).expect("distinct pair");
                if self.disjointness.contains(&axiom) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// The vocabulary as an RDF graph of OWL declarations.
    pub fn to_graph(&self) -> Graph {
        let iri = |s: &str| Iri::new(s).expect("well-known IRI");
        let rdf_type = rdf::rdf_type();
        let mut graph = Graph::new();
        let ontology_iri = Iri::new(self.base.as_str().trim_end_matches('#')).expect("ontology IRI");
        graph.insert(Triple::new(ontology_iri, rdf_type.clone(), Term::Iri(iri(owl::ONTOLOGY))));
        for class in self.classes.values() {
            graph.insert(Triple::new(class.iri.clone(), rdf_type.clone(), Term::Iri(iri(owl::CLASS))));
            graph.insert(Triple::new(class.iri.clone(), iri(owl::RDFS_LABEL), Literal::string(class.label.clone())));
            if let Some(parent) = &class.parent {
                graph.insert(Triple::new(class.iri.clone(), iri(owl::RDFS_SUB_CLASS_OF), Term::Iri(parent.clone())));
            }
        }
        for prop in self.object_properties.values() {
            graph.insert(Triple::new(prop.iri.clone(), rdf_type.clone(), Term::Iri(iri(owl::OBJECT_PROPERTY))));
            graph.insert(Triple::new(prop.iri.clone(), iri(owl::RDFS_DOMAIN), Term::Iri(prop.domain.clone())));
            graph.insert(Triple::new(prop.iri.clone(), iri(owl::RDFS_RANGE), Term::Iri(prop.range.clone())));
        }
        for prop in self.data_properties.values() {
            graph.insert(Triple::new(prop.iri.clone(), rdf_type.clone(), Term::Iri(iri(owl::DATATYPE_PROPERTY))));
            graph.insert(Triple::new(prop.iri.clone(), iri(owl::RDFS_DOMAIN), Term::Iri(prop.domain.clone())));
            graph.insert(Triple::new(prop.iri.clone(), iri(owl::RDFS_RANGE), Term::Iri(iri(prop.datatype.xsd_iri()))));
        }
        for axiom in &self.disjointness {
            graph.insert(Triple::new(axiom.left.clone(), iri(owl::DISJOINT_WITH), Term::Iri(axiom.right.clone())));
        }
        graph
    }

    /// Serialize the vocabulary as a Turtle ontology document.
    /// Byte-deterministic: terms are emitted sorted by IRI.
    pub fn export_ontology(&self) -> String {
        let mut prefixes = BTreeMap::new();
        prefixes.insert(PREFIX_LABEL.to_string(), self.base.clone());
        prefixes.insert("owl".to_string(), Iri::new("http://www.w3.org/2002/07/owl#").expect("ns"));
        prefixes.insert("rdfs".to_string(), Iri::new("http://www.w3.org/2000/01/rdf-schema#").expect("ns"));
        prefixes.insert("xsd".to_string(), Iri::new("http://www.w3.org/2001/XMLSchema#").expect("ns"));
        rdf::turtle::serialize(&self.to_graph(), &prefixes)
    }
}

/// Returns the fixed default vocabulary.
pub fn builtin_vocabulary() -> Vocabulary {
    Vocabulary::builtin()
}

/// (local name, parent local name)
const CLASS_TABLE: &[(&str, Option<&str>)] = &[
    (n::BLOCKCHAIN, None),
    (n::BLOCK, None),
    (n::BITCOIN_BLOCK, Some(n::BLOCK)),
    (n::ETHEREUM_BLOCK, Some(n::BLOCK)),
    (n::HYPERLEDGER_BLOCK, Some(n::BLOCK)),
    (n::TRANSACTION, None),
    (n::BITCOIN_TRANSACTION, Some(n::TRANSACTION)),
    (n::ETHEREUM_TRANSACTION, Some(n::TRANSACTION)),
    (n::HYPERLEDGER_TRANSACTION, Some(n::TRANSACTION)),
    (n::ETHEREUM_CONTRACT_CREATION, Some(n::ETHEREUM_TRANSACTION)),
    (n::ETHEREUM_MESSAGE_CALL, Some(n::ETHEREUM_TRANSACTION)),
    (n::TRANSACTION_INPUT, None),
    (n::TRANSACTION_OUTPUT, None),
    (n::ACCOUNT, None),
    (n::BITCOIN_ACCOUNT, Some(n::ACCOUNT)),
    (n::ETHEREUM_ACCOUNT, Some(n::ACCOUNT)),
    (n::HYPERLEDGER_ACCOUNT, Some(n::ACCOUNT)),
    (n::EXTERNAL_OWNED_ACCOUNT, Some(n::ETHEREUM_ACCOUNT)),
    (n::CONTRACT_ACCOUNT, Some(n::ETHEREUM_ACCOUNT)),
    (n::MINER, Some(n::ACCOUNT)),
    (n::OMMER_HEADER, None),
    (n::CHANNEL, None),
    (n::CHAINCODE, None),
];

/// (local name, domain, range)
const OBJECT_PROPERTY_TABLE: &[(&str, &str, &str)] = &[
    (n::HAS_TRANSACTION, n::BLOCK, n::TRANSACTION),
    (n::HAS_PARENT_BLOCK, n::BLOCK, n::BLOCK),
    (n::PART_OF_CHAIN, n::BLOCK, n::BLOCKCHAIN),
    (n::MINED_BY, n::BLOCK, n::ACCOUNT),
    (n::HAS_INPUT, n::BITCOIN_TRANSACTION, n::TRANSACTION_INPUT),
    (n::HAS_OUTPUT, n::BITCOIN_TRANSACTION, n::TRANSACTION_OUTPUT),
    (n::FROM_ACCOUNT, n::TRANSACTION, n::ACCOUNT),
    (n::TO_ACCOUNT, n::TRANSACTION, n::ACCOUNT),
    (n::HAS_OMMER, n::ETHEREUM_BLOCK, n::OMMER_HEADER),
    (n::BELONGS_TO_CHANNEL, n::HYPERLEDGER_TRANSACTION, n::CHANNEL),
    (n::INVOKES_CHAINCODE, n::HYPERLEDGER_TRANSACTION, n::CHAINCODE),
];

/// (local name, domain, facet)
const DATA_PROPERTY_TABLE: &[(&str, &str, Facet)] = &[
    // Bitcoin block fields.
    (n::BITCOIN_BLOCK_VERSION, n::BITCOIN_BLOCK, Facet::Decimal),
    (n::HASH_PREV_BLOCK, n::BITCOIN_BLOCK, Facet::String),
    (n::HASH_MERKLE_ROOT, n::BITCOIN_BLOCK, Facet::String),
    (n::N_TIME, n::BITCOIN_BLOCK, Facet::Decimal),
    (n::N_BITS, n::BITCOIN_BLOCK, Facet::Decimal),
    (n::N_NONCE, n::BITCOIN_BLOCK, Facet::Decimal),
    (n::TRANSACTION_COUNTER, n::BITCOIN_BLOCK, Facet::Decimal),
    // Bitcoin transaction fields.
    (n::BITCOIN_TRANSACTION_VERSION, n::BITCOIN_TRANSACTION, Facet::Decimal),
    (n::INPUT_COUNTER, n::BITCOIN_TRANSACTION, Facet::Decimal),
    (n::OUTPUT_COUNTER, n::BITCOIN_TRANSACTION, Facet::Decimal),
    (n::N_LOCK_TIME, n::BITCOIN_TRANSACTION, Facet::Decimal),
    (n::SOURCE_TRANSACTION_HASH, n::TRANSACTION_INPUT, Facet::String),
    (n::SOURCE_OUTPUT_INDEX, n::TRANSACTION_INPUT, Facet::Decimal),
    (n::SCRIPT_SIG_LENGTH, n::TRANSACTION_INPUT, Facet::Decimal),
    (n::SCRIPT_SIG, n::TRANSACTION_INPUT, Facet::String),
    (n::N_SEQUENCE, n::TRANSACTION_INPUT, Facet::Decimal),
    (n::N_VALUE, n::TRANSACTION_OUTPUT, Facet::Decimal),
    (n::SCRIPT_PUBKEY_LENGTH, n::TRANSACTION_OUTPUT, Facet::Decimal),
    (n::SCRIPT_PUBKEY, n::TRANSACTION_OUTPUT, Facet::String),
    // Ethereum block fields.
    (n::PARENT_HASH, n::ETHEREUM_BLOCK, Facet::String),
    (n::OMMERS_HASH, n::ETHEREUM_BLOCK, Facet::String),
    (n::BENEFICIARY, n::ETHEREUM_BLOCK, Facet::String),
    (n::STATE_ROOT, n::ETHEREUM_BLOCK, Facet::String),
    (n::TRANSACTIONS_ROOT, n::ETHEREUM_BLOCK, Facet::String),
    (n::RECEIPTS_ROOT, n::ETHEREUM_BLOCK, Facet::String),
    (n::LOGS_BLOOM, n::ETHEREUM_BLOCK, Facet::String),
    (n::DIFFICULTY, n::ETHEREUM_BLOCK, Facet::Decimal),
    (n::NUMBER, n::ETHEREUM_BLOCK, Facet::Decimal),
    (n::GAS_LIMIT, n::ETHEREUM_BLOCK, Facet::Decimal),
    (n::GAS_USED, n::ETHEREUM_BLOCK, Facet::Decimal),
    (n::TIMESTAMP, n::ETHEREUM_BLOCK, Facet::Decimal),
    (n::EXTRA_DATA, n::ETHEREUM_BLOCK, Facet::String),
    (n::MIX_HASH, n::ETHEREUM_BLOCK, Facet::String),
    (n::NONCE, n::ETHEREUM_BLOCK, Facet::String),
    // Ethereum transaction fields.
    (n::TRANSACTION_NONCE, n::ETHEREUM_TRANSACTION, Facet::Decimal),
    (n::GAS_PRICE, n::ETHEREUM_TRANSACTION, Facet::Decimal),
    (n::TRANSACTION_GAS_LIMIT, n::ETHEREUM_TRANSACTION, Facet::Decimal),
    (n::TO_ADDRESS, n::ETHEREUM_TRANSACTION, Facet::String),
    (n::VALUE, n::ETHEREUM_TRANSACTION, Facet::Decimal),
    (n::SIGNATURE_V, n::ETHEREUM_TRANSACTION, Facet::String),
    (n::SIGNATURE_R, n::ETHEREUM_TRANSACTION, Facet::String),
    (n::SIGNATURE_S, n::ETHEREUM_TRANSACTION, Facet::String),
    (n::INIT, n::ETHEREUM_CONTRACT_CREATION, Facet::String),
    (n::INPUT_DATA, n::ETHEREUM_MESSAGE_CALL, Facet::String),
    // Fabric block fields.
    (n::BLOCK_NUMBER, n::HYPERLEDGER_BLOCK, Facet::Decimal),
    (n::CURRENT_BLOCK_HASH, n::HYPERLEDGER_BLOCK, Facet::String),
    (n::PREVIOUS_HASH, n::HYPERLEDGER_BLOCK, Facet::String),
    (n::DATA_HASH, n::HYPERLEDGER_BLOCK, Facet::String),
    // Fabric transaction fields.
    (n::TRANSACTION_TYPE, n::HYPERLEDGER_TRANSACTION, Facet::String),
    (n::TRANSACTION_VERSION, n::HYPERLEDGER_TRANSACTION, Facet::Decimal),
    (n::TRANSACTION_TIMESTAMP, n::HYPERLEDGER_TRANSACTION, Facet::String),
    (n::CHANNEL_ID, n::HYPERLEDGER_TRANSACTION, Facet::String),
    (n::TRANSACTION_ID, n::HYPERLEDGER_TRANSACTION, Facet::String),
    (n::EPOCH, n::HYPERLEDGER_TRANSACTION, Facet::Decimal),
    (n::PAYLOAD_VISIBILITY, n::HYPERLEDGER_TRANSACTION, Facet::String),
    (n::CHAINCODE_PATH, n::CHAINCODE, Facet::String),
    (n::CHAINCODE_NAME, n::CHAINCODE, Facet::String),
    (n::CHAINCODE_VERSION, n::CHAINCODE, Facet::String),
    // Derived properties.
    (n::BLOCK_HASH, n::BLOCK, Facet::String),
    (n::TX_ID, n::TRANSACTION, Facet::String),
    (n::HEIGHT, n::BLOCK, Facet::Decimal),
    (n::TOTAL_TRANSACTIONS, n::BLOCK, Facet::Decimal),
    (n::TOTAL_VALUE_TRANSFERRED, n::BLOCK, Facet::Decimal),
    (n::CONFIRMATION_STATUS, n::TRANSACTION, Facet::String),
];

const DISJOINTNESS_TABLE: &[(&str, &str)] = &[
    (n::BITCOIN_BLOCK, n::ETHEREUM_BLOCK),
    (n::BITCOIN_BLOCK, n::HYPERLEDGER_BLOCK),
    (n::ETHEREUM_BLOCK, n::HYPERLEDGER_BLOCK),
    (n::BITCOIN_TRANSACTION, n::ETHEREUM_TRANSACTION),
    (n::BITCOIN_TRANSACTION, n::HYPERLEDGER_TRANSACTION),
    (n::ETHEREUM_TRANSACTION, n::HYPERLEDGER_TRANSACTION),
    (n::BITCOIN_ACCOUNT, n::ETHEREUM_ACCOUNT),
    (n::BITCOIN_ACCOUNT, n::HYPERLEDGER_ACCOUNT),
    (n::ETHEREUM_ACCOUNT, n::HYPERLEDGER_ACCOUNT),
    (n::ETHEREUM_CONTRACT_CREATION, n::ETHEREUM_MESSAGE_CALL),
    (n::EXTERNAL_OWNED_ACCOUNT, n::CONTRACT_ACCOUNT),
];

/// Where a property value comes from in the source record layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldMapping {
    /// Record kind, e.g. `bitcoin-block`.
    pub record: &'static str,
    /// Field name in the native structure.
    pub field: &'static str,
    /// Local name of the property the field maps to.
    pub property: &'static str,
}

/// The native-field-to-property table. Scalar fields map to data properties;
/// embedded lists map to object properties.
pub fn field_mappings() -> &'static [FieldMapping] {
    FIELD_MAPPING_TABLE
}

macro_rules! mapping {
    ($record:literal, $field:literal, $property:expr) => {
        FieldMapping { record: $record, field: $field, property: $property }
    };
}

const FIELD_MAPPING_TABLE: &[FieldMapping] = &[
    mapping!("bitcoin-block", "nVersion", n::BITCOIN_BLOCK_VERSION),
    mapping!("bitcoin-block", "HashPrevBlock", n::HASH_PREV_BLOCK),
    mapping!("bitcoin-block", "HashMerkleRoot", n::HASH_MERKLE_ROOT),
    mapping!("bitcoin-block", "nTime", n::N_TIME),
    mapping!("bitcoin-block", "nBits", n::N_BITS),
    mapping!("bitcoin-block", "nNonce", n::N_NONCE),
    mapping!("bitcoin-block", "#vtx", n::TRANSACTION_COUNTER),
    mapping!("bitcoin-block", "vtx[]", n::HAS_TRANSACTION),
    mapping!("bitcoin-transaction", "nVersion", n::BITCOIN_TRANSACTION_VERSION),
    mapping!("bitcoin-transaction", "#vin", n::INPUT_COUNTER),
    mapping!("bitcoin-transaction", "vin[].hash", n::SOURCE_TRANSACTION_HASH),
    mapping!("bitcoin-transaction", "vin[].n", n::SOURCE_OUTPUT_INDEX),
    mapping!("bitcoin-transaction", "vin[].scriptSigLen", n::SCRIPT_SIG_LENGTH),
    mapping!("bitcoin-transaction", "vin[].scriptSig", n::SCRIPT_SIG),
    mapping!("bitcoin-transaction", "vin[].nSequence", n::N_SEQUENCE),
    mapping!("bitcoin-transaction", "#vout", n::OUTPUT_COUNTER),
    mapping!("bitcoin-transaction", "vout[].nvalue", n::N_VALUE),
    mapping!("bitcoin-transaction", "vout[].scriptPubkeyLen", n::SCRIPT_PUBKEY_LENGTH),
    mapping!("bitcoin-transaction", "vout[].scriptPubkey", n::SCRIPT_PUBKEY),
    mapping!("bitcoin-transaction", "nLockTime", n::N_LOCK_TIME),
    mapping!("ethereum-block", "parentHash", n::PARENT_HASH),
    mapping!("ethereum-block", "ommersHash", n::OMMERS_HASH),
    mapping!("ethereum-block", "beneficiary", n::BENEFICIARY),
    mapping!("ethereum-block", "stateRoot", n::STATE_ROOT),
    mapping!("ethereum-block", "transactionsRoot", n::TRANSACTIONS_ROOT),
    mapping!("ethereum-block", "receiptsRoot", n::RECEIPTS_ROOT),
    mapping!("ethereum-block", "logsBloom", n::LOGS_BLOOM),
    mapping!("ethereum-block", "difficulty", n::DIFFICULTY),
    mapping!("ethereum-block", "number", n::NUMBER),
    mapping!("ethereum-block", "gasLimit", n::GAS_LIMIT),
    mapping!("ethereum-block", "gasUsed", n::GAS_USED),
    mapping!("ethereum-block", "timestamp", n::TIMESTAMP),
    mapping!("ethereum-block", "extraData", n::EXTRA_DATA),
    mapping!("ethereum-block", "mixHash", n::MIX_HASH),
    mapping!("ethereum-block", "nonce", n::NONCE),
    mapping!("ethereum-block", "transactions[]", n::HAS_TRANSACTION),
    mapping!("ethereum-block", "ommersblockheaders[]", n::HAS_OMMER),
    mapping!("ethereum-transaction", "nonce", n::TRANSACTION_NONCE),
    mapping!("ethereum-transaction", "gasPrice", n::GAS_PRICE),
    mapping!("ethereum-transaction", "gasLimit", n::TRANSACTION_GAS_LIMIT),
    mapping!("ethereum-transaction", "to", n::TO_ADDRESS),
    mapping!("ethereum-transaction", "value", n::VALUE),
    mapping!("ethereum-transaction", "v", n::SIGNATURE_V),
    mapping!("ethereum-transaction", "r", n::SIGNATURE_R),
    mapping!("ethereum-transaction", "s", n::SIGNATURE_S),
    mapping!("ethereum-contract-creation", "init", n::INIT),
    mapping!("ethereum-message-call", "data", n::INPUT_DATA),
    mapping!("fabric-block", "number", n::BLOCK_NUMBER),
    mapping!("fabric-block", "currentBlockHash", n::CURRENT_BLOCK_HASH),
    mapping!("fabric-block", "previousHash", n::PREVIOUS_HASH),
    mapping!("fabric-block", "dataHash", n::DATA_HASH),
    mapping!("fabric-transaction", "type", n::TRANSACTION_TYPE),
    mapping!("fabric-transaction", "version", n::TRANSACTION_VERSION),
    mapping!("fabric-transaction", "timestamp", n::TRANSACTION_TIMESTAMP),
    mapping!("fabric-transaction", "channelId", n::CHANNEL_ID),
    mapping!("fabric-transaction", "txId", n::TRANSACTION_ID),
    mapping!("fabric-transaction", "epoch", n::EPOCH),
    mapping!("fabric-transaction", "payloadVisibility", n::PAYLOAD_VISIBILITY),
    mapping!("fabric-transaction", "chaincodePath", n::CHAINCODE_PATH),
    mapping!("fabric-transaction", "chaincodeName", n::CHAINCODE_NAME),
    mapping!("fabric-transaction", "chaincodeVersion", n::CHAINCODE_VERSION),
];
