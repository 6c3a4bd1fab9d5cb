//! Instance-graph checking against the vocabulary: disjointness, property
//! domains/ranges, facet datatypes, undeclared terms.
//!
//! Closed-world by intent: subjects must carry explicit types; nothing is
//! inferred from property usage.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rdf::{rdf_type, Datatype, Graph, Iri, Term};
use crate::vocab::{Facet, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Disjointness,
    Domain,
    Range,
    Datatype,
    UndeclaredTerm,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::Disjointness => "disjointness",
            ViolationKind::Domain => "domain",
            ViolationKind::Range => "range",
            ViolationKind::Datatype => "datatype",
            ViolationKind::UndeclaredTerm => "undeclared-term",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub subject: Iri,
    pub kind: ViolationKind,
    pub detail: String,
}

/// Check a graph against a vocabulary. Empty result means conformant.
/// Output is sorted by (subject, kind, detail) and deterministic.
pub fn validate(graph: &Graph, voc: &Vocabulary) -> Vec<Violation> {
    let type_iri = rdf_type();
    let mut violations = Vec::new();

    // Asserted, declared types per subject.
    let mut types: BTreeMap<&Iri, BTreeSet<&Iri>> = BTreeMap::new();
    for triple in graph.iter() {
        if triple.predicate != type_iri {
            continue;
        }
        match &triple.object {
            Term::Iri(class) => {
                if voc.class(class).is_some() {
                    types.entry(&triple.subject).or_default().insert(class);
                } else {
                    violations.push(Violation {
                        subject: triple.subject.clone(),
                        kind: ViolationKind::UndeclaredTerm,
                        detail: format!("<{}> is typed as <{class}>, which is not a declared class", triple.subject),
                    });
                }
            }
            Term::Literal(lit) => violations.push(Violation {
                subject: triple.subject.clone(),
                kind: ViolationKind::Range,
                detail: format!("<{}> has a literal {:?} in type position", triple.subject, lit.lexical()),
            }),
        }
    }

    // Pairwise disjointness over each subject's asserted types.
    for (subject, subject_types) in &types {
        let list: Vec<&&Iri> = subject_types.iter().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if voc.are_disjoint(a, b).expect("asserted types are declared") {
                    violations.push(Violation {
                        subject: (*subject).clone(),
                        kind: ViolationKind::Disjointness,
                        detail: format!("<{subject}> is typed both <{a}> and <{b}>, which are disjoint"),
                    });
                }
            }
        }
    }

    let typed_as_subclass_of = |node: &Iri, class: &Iri| -> bool {
        types
            .get(node)
            .is_some_and(|ts| ts.iter().any(|t| voc.is_subclass_of(t, class).expect("declared classes")))
    };

    for triple in graph.iter() {
        if triple.predicate == type_iri {
            continue;
        }
        if let Some(prop) = voc.object_property(&triple.predicate) {
            if !typed_as_subclass_of(&triple.subject, &prop.domain) {
                violations.push(Violation {
                    subject: triple.subject.clone(),
                    kind: ViolationKind::Domain,
                    detail: format!(
                        "<{}> uses <{}> but is not typed as (a subclass of) its domain <{}>",
                        triple.subject, prop.iri, prop.domain
                    ),
                });
            }
            match &triple.object {
                Term::Iri(object) => {
                    if !typed_as_subclass_of(object, &prop.range) {
                        violations.push(Violation {
                            subject: triple.subject.clone(),
                            kind: ViolationKind::Range,
                            detail: format!(
                                "object <{object}> of <{}> is not typed as (a subclass of) its range <{}>",
                                prop.iri, prop.range
                            ),
                        });
                    }
                }
                Term::Literal(lit) => violations.push(Violation {
                    subject: triple.subject.clone(),
                    kind: ViolationKind::Range,
                    detail: format!("object property <{}> carries a literal {:?}", prop.iri, lit.lexical()),
                }),
            }
        } else if let Some(prop) = voc.data_property(&triple.predicate) {
            if !typed_as_subclass_of(&triple.subject, &prop.domain) {
                violations.push(Violation {
                    subject: triple.subject.clone(),
                    kind: ViolationKind::Domain,
                    detail: format!(
                        "<{}> uses <{}> but is not typed as (a subclass of) its domain <{}>",
                        triple.subject, prop.iri, prop.domain
                    ),
                });
            }
            match &triple.object {
                Term::Literal(lit) => {
                    let conformant = match prop.datatype {
                        Facet::String => lit.datatype() == Datatype::String,
                        // Integers are decimals.
                        Facet::Decimal => matches!(lit.datatype(), Datatype::Decimal | Datatype::Integer),
                    };
                    if !conformant {
                        violations.push(Violation {
                            subject: triple.subject.clone(),
                            kind: ViolationKind::Datatype,
                            detail: format!(
                                "<{}> expects a {} literal but carries {:?} typed {}",
                                prop.iri,
                                match prop.datatype {
                                    Facet::String => "string",
                                    Facet::Decimal => "decimal",
                                },
                                lit.lexical(),
                                match lit.datatype() {
                                    Datatype::String => "string",
                                    Datatype::Integer => "integer",
                                    Datatype::Decimal => "decimal",
                                },
                            ),
                        });
                    }
                }
                Term::Iri(object) => violations.push(Violation {
                    subject: triple.subject.clone(),
                    kind: ViolationKind::Range,
                    detail: format!("data property <{}> carries IRI <{object}> instead of a literal", prop.iri),
                }),
            }
        } else {
            violations.push(Violation {
                subject: triple.subject.clone(),
                kind: ViolationKind::UndeclaredTerm,
                detail: format!("predicate <{}> is not declared in the vocabulary", triple.predicate),
            });
        }
    }

    violations.sort();
    violations.dedup();
    violations
}

/// Tab-separated report: `subject<TAB>kind<TAB>detail`, one row per violation.
pub fn to_tsv(violations: &[Violation]) -> String {
    let mut out = String::from("subject\tkind\tdetail\n");
    for v in violations {
        out.push_str(&format!("{}\t{}\t{}\n", v.subject, v.kind.label(), v.detail));
    }
    out
}

/// Human-readable report.
pub fn to_text(violations: &[Violation]) -> String {
    if violations.is_empty() {
        return "0 violations\n".to_string();
    }
    let mut out = format!("{} violation(s)\n", violations.len());
    for v in violations {
        out.push_str(&format!("[{}] {}\n", v.kind.label(), v.detail));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitcoin;
    use crate::mapper;
    use crate::rdf::{Literal, Triple};
    use crate::vocab::{self, names};

    fn voc() -> Vocabulary {
        vocab::builtin_vocabulary()
    }

    fn term(local: &str) -> Iri {
        voc().term(local)
    }

    fn subject() -> Iri {
        Iri::new("urn:blondie:btc:block:test").unwrap()
    }

    fn typed(graph: &mut Graph, node: &Iri, class: &str) {
        graph.insert(Triple::new(node.clone(), rdf_type(), Term::Iri(term(class))));
    }

    fn mapped_genesis() -> Graph {
        let raw = hex::decode(include_str!("../tests/fixtures/genesis.hex").trim()).unwrap();
        mapper::map_bitcoin_block(&bitcoin::decode_block(&raw, 0).unwrap().block).graph
    }

    #[test]
    fn clean_mapped_graphs_have_zero_violations() {
        assert_eq!(validate(&mapped_genesis(), &voc()), Vec::new());

        let eth = crate::ethereum::parse_eth_block(include_str!("../tests/fixtures/eth_block_46147.json")).unwrap();
        assert_eq!(validate(&mapper::map_ethereum_block(&eth).graph, &voc()), Vec::new());

        for block in crate::fabric::parse_fabric_blocks(include_str!("../tests/fixtures/fabric_chain.json")).unwrap() {
            assert_eq!(validate(&mapper::map_fabric_block(&block).graph, &voc()), Vec::new());
        }
    }

    #[test]
    fn dual_chain_typing_is_exactly_one_disjointness_violation() {
        let mut graph = Graph::new();
        let s = subject();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        typed(&mut graph, &s, names::ETHEREUM_BLOCK);
        let violations = validate(&graph, &voc());
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::Disjointness);
        assert!(violations[0].detail.contains("BitcoinBlock") && violations[0].detail.contains("EthereumBlock"));
    }

    #[test]
    fn compatible_dual_typing_is_fine() {
        let mut graph = Graph::new();
        let s = subject();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        typed(&mut graph, &s, names::BLOCK);
        assert!(validate(&graph, &voc()).is_empty());
    }

    #[test]
    fn typo_predicate_is_one_undeclared_term_violation() {
        // Mutate a clean graph: swap one height triple for a misspelled
        // predicate, then revalidate.
        let clean = mapped_genesis();
        let height = term(names::HEIGHT);
        let mut graph = Graph::new();
        for t in clean.iter() {
            if t.predicate == height {
                graph.insert(Triple::new(t.subject.clone(), Iri::new("https://w3id.org/blondie#heighth").unwrap(), t.object.clone()));
            } else {
                graph.insert(t.clone());
            }
        }
        let violations = validate(&graph, &voc());
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::UndeclaredTerm);
        assert!(violations[0].detail.contains("heighth"));
    }

    #[test]
    fn untyped_subject_is_a_domain_violation() {
        let mut graph = Graph::new();
        graph.insert(Triple::new(subject(), term(names::HEIGHT), Literal::decimal("1").unwrap()));
        let violations = validate(&graph, &voc());
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::Domain);
    }

    #[test]
    fn wrong_domain_type_is_a_domain_violation() {
        let mut graph = Graph::new();
        let s = subject();
        typed(&mut graph, &s, names::CHANNEL);
        graph.insert(Triple::new(s, term(names::HEIGHT), Literal::decimal("1").unwrap()));
        let violations = validate(&graph, &voc());
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::Domain);
    }

    #[test]
    fn object_property_range_violations() {
        let voc = voc();
        // Literal object.
        let mut graph = Graph::new();
        let s = subject();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        graph.insert(Triple::new(s.clone(), term(names::HAS_TRANSACTION), Literal::string("not-a-node")));
        let violations = validate(&graph, &voc);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::Range);

        // IRI object typed outside the range.
        let mut graph = Graph::new();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        let ch = Iri::new("urn:blondie:fab:channel:c").unwrap();
        typed(&mut graph, &ch, names::CHANNEL);
        graph.insert(Triple::new(s.clone(), term(names::HAS_TRANSACTION), Term::Iri(ch)));
        let violations = validate(&graph, &voc);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::Range);

        // Subclass-typed object satisfies the range.
        let mut graph = Graph::new();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        let tx = Iri::new("urn:blondie:btc:tx:t").unwrap();
        typed(&mut graph, &tx, names::BITCOIN_TRANSACTION);
        graph.insert(Triple::new(s, term(names::HAS_TRANSACTION), Term::Iri(tx.clone())));
        graph.insert(Triple::new(tx.clone(), term(names::CONFIRMATION_STATUS), Literal::string("confirmed")));
        graph.insert(Triple::new(tx.clone(), term(names::TX_ID), Literal::string("t")));
        graph.insert(Triple::new(tx.clone(), term(names::BITCOIN_TRANSACTION_VERSION), Literal::decimal("1").unwrap()));
        graph.insert(Triple::new(tx.clone(), term(names::INPUT_COUNTER), Literal::decimal("1").unwrap()));
        graph.insert(Triple::new(tx.clone(), term(names::OUTPUT_COUNTER), Literal::decimal("1").unwrap()));
        graph.insert(Triple::new(tx, term(names::N_LOCK_TIME), Literal::decimal("0").unwrap()));
        assert!(validate(&graph, &voc).iter().all(|v| v.kind != ViolationKind::Range));
    }

    #[test]
    fn datatype_violations_and_integer_for_decimal_acceptance() {
        let voc = voc();
        let s = subject();
        // String where decimal declared.
        let mut graph = Graph::new();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        graph.insert(Triple::new(s.clone(), term(names::HEIGHT), Literal::string("zero")));
        let violations = validate(&graph, &voc);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::Datatype);

        // Decimal where string declared.
        let mut graph = Graph::new();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        graph.insert(Triple::new(s.clone(), term(names::BLOCK_HASH), Literal::decimal("1").unwrap()));
        assert_eq!(validate(&graph, &voc)[0].kind, ViolationKind::Datatype);

        // Integer lexical where decimal declared is accepted.
        let mut graph = Graph::new();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        graph.insert(Triple::new(s.clone(), term(names::HEIGHT), Literal::integer(5)));
        assert!(validate(&graph, &voc).is_empty());

        // IRI where a literal is expected.
        let mut graph = Graph::new();
        typed(&mut graph, &s, names::BITCOIN_BLOCK);
        graph.insert(Triple::new(s, term(names::HEIGHT), Term::Iri(Iri::new("urn:x:o").unwrap())));
        assert_eq!(validate(&graph, &voc)[0].kind, ViolationKind::Range);
    }

    #[test]
    fn undeclared_class_in_type_position() {
        let mut graph = Graph::new();
        graph.insert(Triple::new(subject(), rdf_type(), Term::Iri(Iri::new("https://w3id.org/blondie#Widget").unwrap())));
        let violations = validate(&graph, &voc());
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].kind, ViolationKind::UndeclaredTerm);
    }

    #[test]
    fn reports_are_sorted_and_byte_deterministic() {
        let mut graph = Graph::new();
        let a = Iri::new("urn:x:a").unwrap();
        let b = Iri::new("urn:x:b").unwrap();
        typed(&mut graph, &b, names::BITCOIN_BLOCK);
        typed(&mut graph, &b, names::HYPERLEDGER_BLOCK);
        graph.insert(Triple::new(a.clone(), term(names::HEIGHT), Literal::decimal("1").unwrap()));
        graph.insert(Triple::new(a, Iri::new("urn:x:bogus").unwrap(), Literal::string("x")));
        let first = validate(&graph, &voc());
        let second = validate(&graph, &voc());
        assert_eq!(to_tsv(&first), to_tsv(&second));
        let sorted = {
            let mut copy = first.clone();
            copy.sort();
            copy
        };
        assert_eq!(first, sorted);
        assert_eq!(first.len(), 3);
    }

    #[test]
    fn monotonic_under_disjoint_subject_union() {
        // Adding triples about new subjects keeps the old subjects'
        // violations intact.
        let mut g1 = Graph::new();
        let s = subject();
        typed(&mut g1, &s, names::BITCOIN_BLOCK);
        typed(&mut g1, &s, names::ETHEREUM_BLOCK);
        let before = validate(&g1, &voc());

        let mut union = g1.clone();
        let other = Iri::new("urn:blondie:eth:block:9").unwrap();
        typed(&mut union, &other, names::ETHEREUM_BLOCK);
        union.insert(Triple::new(other, term(names::NUMBER), Literal::decimal("9").unwrap()));
        let after = validate(&union, &voc());
        for v in &before {
            assert!(after.contains(v), "violation lost after union: {v:?}");
        }
    }

    #[test]
    fn tsv_and_text_rendering() {
        let violations = alloc::vec![Violation {
            subject: subject(),
            kind: ViolationKind::Domain,
            detail: "example".into(),
        }];
        let tsv = to_tsv(&violations);
        assert!(tsv.starts_with("subject\tkind\tdetail\n"));
        assert!(tsv.contains("\tdomain\t"));
        assert_eq!(to_text(&[]), "0 violations\n");
        assert!(to_text(&violations).contains("[domain]"));
    }
}
