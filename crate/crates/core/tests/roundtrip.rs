//! Serialization round-trip properties for both text formats.

use std::collections::BTreeMap;

use blondie_core::rdf::{ntriples, turtle, Graph, Iri, Literal, Term, Triple};
use proptest::prelude::*;
use proptest::test_runner::Config as ProptestConfig;

fn arb_iri() -> impl Strategy<Value = Iri> {
    prop_oneof![
        "[a-z0-9]{1,12}".prop_map(|local| Iri::new(format!("urn:test:{local}")).unwrap()),
        "[A-Za-z][A-Za-z0-9]{0,10}".prop_map(|local| Iri::new(format!("https://w3id.org/blondie#{local}")).unwrap()),
        "[a-z]{1,8}".prop_map(|local| Iri::new(format!("http://example.org/path/{local}")).unwrap()),
    ]
}

fn arb_decimal_lexical() -> impl Strategy<Value = String> {
    (any::<bool>(), "[0-9]{1,18}", proptest::option::of("[0-9]{1,12}")).prop_map(|(neg, int, frac)| {
        let sign = if neg { "-" } else { "" };
        match frac {
            Some(frac) => format!("{sign}{int}.{frac}"),
            None => format!("{sign}{int}"),
        }
    })
}

fn arb_literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        // Arbitrary unicode, including quotes, newlines, tabs, emoji.
        any::<String>().prop_map(Literal::string),
        any::<i128>().prop_map(Literal::integer),
        arb_decimal_lexical().prop_map(|lex| Literal::decimal(lex).unwrap()),
    ]
}

fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![arb_iri().prop_map(Term::Iri), arb_literal().prop_map(Term::Literal)]
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    proptest::collection::vec((arb_iri(), arb_iri(), arb_term()), 0..40)
        .prop_map(|triples| triples.into_iter().map(|(s, p, o)| Triple::new(s, p, o)).collect())
}

fn prefixes() -> BTreeMap<String, Iri> {
    let mut m = BTreeMap::new();
    m.insert("blondie".to_string(), Iri::new("https://w3id.org/blondie#").unwrap());
    m.insert("ex".to_string(), Iri::new("http://example.org/path/").unwrap());
    m.insert("xsd".to_string(), Iri::new("http://www.w3.org/2001/XMLSchema#").unwrap());
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ntriples_round_trip(graph in arb_graph()) {
        let text = ntriples::serialize(&graph);
        let parsed = ntriples::parse(&text).expect("own output parses");
        prop_assert_eq!(parsed, graph);
    }

    #[test]
    fn turtle_round_trip(graph in arb_graph()) {
        let text = turtle::serialize(&graph, &prefixes());
        let parsed = turtle::parse(&text).expect("own output parses");
        prop_assert_eq!(parsed, graph);
    }

    #[test]
    fn turtle_round_trip_without_prefixes(graph in arb_graph()) {
        let text = turtle::serialize(&graph, &BTreeMap::new());
        let parsed = turtle::parse(&text).expect("own output parses");
        prop_assert_eq!(parsed, graph);
    }

    #[test]
    fn serialization_is_a_pure_function_of_the_triple_set(mut triples in proptest::collection::vec((arb_iri(), arb_iri(), arb_term()), 1..20), seed in any::<u64>()) {
        let forward: Graph = triples.iter().cloned().map(|(s, p, o)| Triple::new(s, p, o)).collect();
        // Deterministic pseudo-shuffle of insertion order.
        let len = triples.len();
        for i in 0..len {
            let j = (seed as usize).wrapping_mul(31).wrapping_add(i * 17) % len;
            triples.swap(i, j);
        }
        let shuffled: Graph = triples.into_iter().map(|(s, p, o)| Triple::new(s, p, o)).collect();
        prop_assert_eq!(ntriples::serialize(&forward), ntriples::serialize(&shuffled));
        prop_assert_eq!(turtle::serialize(&forward, &prefixes()), turtle::serialize(&shuffled, &prefixes()));
    }
}

#[test]
fn turtle_parses_ntriples_documents() {
    // N-Triples is a syntactic subset of the Turtle grammar here, which is
    // what makes concatenating .nt files a valid merge strategy.
    let mut graph = Graph::new();
    graph.insert(Triple::new(
        Iri::new("urn:test:s").unwrap(),
        Iri::new("urn:test:p").unwrap(),
        Literal::decimal("1.5").unwrap(),
    ));
    let text = ntriples::serialize(&graph);
    assert_eq!(turtle::parse(&text).unwrap(), graph);
}
