//! Chain-agnostic blockchain-to-RDF toolkit.
//!
//! The crate decodes native Bitcoin blocks, ingests Ethereum and Hyperledger
//! Fabric records from JSON, maps everything onto the BLONDiE vocabulary as
//! RDF instance graphs, and answers queries over those graphs with an
//! embedded SPARQL-subset engine. It is `no_std` (alloc required); file and
//! network I/O live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bitcoin;
pub mod ethereum;
pub mod fabric;
pub mod mapper;
mod num;
pub mod rdf;
pub mod sparql;
pub mod store;
pub mod validate;
pub mod vocab;

pub use rdf::{Graph, Iri, Literal, Term, Triple};
pub use store::TripleStore;
pub use vocab::Vocabulary;
