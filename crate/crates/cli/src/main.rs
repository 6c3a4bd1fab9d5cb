//! `blondie`: ingest chain data, emit RDF graphs, validate them against the
//! vocabulary, and query them.
//!
//! Exit codes: 0 success, 1 validation violations, 2 decode/ingest error,
//! 3 query error.

mod source;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use blondie_core::mapper::{self, MappingReport};
use blondie_core::rdf::{ntriples, turtle, Datatype, Graph, Term};
use blondie_core::sparql::{evaluate, named_competency_query, parse_query, Query, QuerySolution};
use blondie_core::{validate, vocab, Iri, TripleStore};

use source::{Chain, ChainRecords, EndpointConfig};

#[derive(Parser)]
#[command(name = "blondie", version, about = "Blockchain data as RDF: ingest, validate, query")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChainArg {
    Bitcoin,
    Ethereum,
    Fabric,
}

impl From<ChainArg> for Chain {
    fn from(arg: ChainArg) -> Chain {
        match arg {
            ChainArg::Bitcoin => Chain::Bitcoin,
            ChainArg::Ethereum => Chain::Ethereum,
            ChainArg::Fabric => Chain::Fabric,
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    #[default]
    Turtle,
    Ntriples,
}

#[derive(Subcommand)]
enum Command {
    /// Decode chain data and write it as an RDF instance graph
    #[command(group(ArgGroup::new("src").required(true).args(["input", "fetch"])))]
    Ingest {
        /// Source chain of the input data
        #[arg(long, value_enum)]
        chain: ChainArg,
        /// Fixture file: raw/hex block (bitcoin) or JSON (ethereum, fabric)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Block reference (hash or number) to fetch instead of reading a file
        #[arg(long, requires = "endpoint")]
        fetch: Option<String>,
        /// Explorer endpoint base URL for --fetch
        #[arg(long)]
        endpoint: Option<String>,
        /// Block height (required for bitcoin; not in the wire format)
        #[arg(long)]
        height: Option<u64>,
        /// Output graph file
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Evaluate a query over a graph file and print the bindings
    #[command(group(ArgGroup::new("q").required(true).args(["sparql", "cq"])))]
    Query {
        /// Graph file (.nt or Turtle)
        #[arg(long)]
        graph: PathBuf,
        /// Query file in the supported SPARQL subset
        #[arg(long)]
        sparql: Option<PathBuf>,
        /// Shipped competency question id (CQ1..CQ5)
        #[arg(long)]
        cq: Option<String>,
        /// Emit JSON rows instead of TSV
        #[arg(long)]
        json: bool,
    },
    /// Check a graph against the vocabulary constraints
    Validate {
        #[arg(long)]
        graph: PathBuf,
        /// Emit the report as TSV instead of text
        #[arg(long)]
        tsv: bool,
    },
    /// Inspect or export the built-in vocabulary
    #[command(group(ArgGroup::new("action").required(true).multiple(true).args(["stats", "export"])))]
    Vocab {
        /// Print term counts
        #[arg(long)]
        stats: bool,
        /// Write the ontology as Turtle to this path
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Ingest { chain, input, fetch, endpoint, height, out, format } => {
            cmd_ingest(chain.into(), input, fetch, endpoint, height, &out, format)
        }
        Command::Query { graph, sparql, cq, json } => cmd_query(&graph, sparql, cq, json),
        Command::Validate { graph, tsv } => cmd_validate(&graph, tsv),
        Command::Vocab { stats, export } => cmd_vocab(stats, export),
    };
    std::process::exit(code);
}

fn fail(code: i32, err: &anyhow::Error) -> i32 {
    eprintln!("error: {err:#}");
    code
}

fn cmd_ingest(
    chain: Chain,
    input: Option<PathBuf>,
    fetch: Option<String>,
    endpoint: Option<String>,
    height: Option<u64>,
    out: &Path,
    format: OutputFormat,
) -> i32 {
    let loaded = match &input {
        Some(path) => source::load_fixture(path, chain, height),
        None => {
            let block_ref = fetch.expect("clap group guarantees --fetch");
            let endpoint = endpoint.expect("clap requires --endpoint with --fetch");
            source::fetch_block(&endpoint, chain, &block_ref, &EndpointConfig::default()).and_then(|payload| {
                let origin = format!("{endpoint} ({block_ref})");
                source::decode_payload(&payload, chain, height)
                    .with_context(|| format!("{origin}: cannot decode as {chain}"))
                    .map(|(records, warnings)| source::LoadedSource { records, origin, warnings })
            })
        }
    };
    let loaded = match loaded {
        Ok(loaded) => loaded,
        Err(err) => return fail(2, &err),
    };

    let mut graph = Graph::new();
    let mut warnings = loaded.warnings.clone();
    let mut satoshi_total: Option<i64> = None;
    match &loaded.records {
        ChainRecords::Bitcoin(blocks) => {
            let mut total = 0i64;
            for block in blocks {
                let mapped = mapper::map_bitcoin_block(block);
                warnings.extend(mapped.report.warnings);
                graph.merge(mapped.graph);
                total += block.transactions.iter().map(|tx| tx.total_output_value()).sum::<i64>();
            }
            satoshi_total = Some(total);
        }
        ChainRecords::Ethereum(blocks) => {
            for block in blocks {
                let mapped = mapper::map_ethereum_block(block);
                warnings.extend(mapped.report.warnings);
                graph.merge(mapped.graph);
            }
        }
        ChainRecords::Fabric(blocks) => {
            for block in blocks {
                let mapped = mapper::map_fabric_block(block);
                warnings.extend(mapped.report.warnings);
                graph.merge(mapped.graph);
            }
        }
    }

    let report = report_for(&graph, warnings);
    let text = match format {
        OutputFormat::Turtle => turtle::serialize(&graph, &output_prefixes()),
        OutputFormat::Ntriples => ntriples::serialize(&graph),
    };
    if let Err(err) = fs::write(out, text).with_context(|| format!("cannot write {}", out.display())) {
        return fail(2, &err);
    }

    println!("source: {} ({}, {} record(s))", loaded.origin, chain, loaded.records.len());
    println!("triples: {}", report.triples_emitted);
    println!("subjects by class:");
    for (class, count) in &report.subjects_by_class {
        let local = class.strip_prefix(vocab::BASE_NS).unwrap_or(class);
        println!("  {local}: {count}");
    }
    if let Some(satoshi) = satoshi_total {
        println!("total value transferred: {satoshi} satoshi ({} BTC)", mapper::satoshi_to_btc_display(satoshi));
    }
    if report.warnings.is_empty() {
        println!("warnings: none");
    } else {
        println!("warnings ({}):", report.warnings.len());
        for warning in &report.warnings {
            println!("  - {warning}");
        }
    }
    println!("wrote: {}", out.display());
    0
}

/// Rebuild a mapping report over a (possibly merged) graph.
fn report_for(graph: &Graph, warnings: Vec<String>) -> MappingReport {
    let type_iri = blondie_core::rdf::rdf_type();
    let mut subjects_by_class: BTreeMap<String, std::collections::BTreeSet<&Iri>> = BTreeMap::new();
    for triple in graph.iter() {
        if triple.predicate == type_iri {
            if let Term::Iri(class) = &triple.object {
                subjects_by_class.entry(class.as_str().to_string()).or_default().insert(&triple.subject);
            }
        }
    }
    MappingReport {
        triples_emitted: graph.len(),
        subjects_by_class: subjects_by_class.into_iter().map(|(class, subjects)| (class, subjects.len())).collect(),
        warnings,
    }
}

fn output_prefixes() -> BTreeMap<String, Iri> {
    let mut prefixes = BTreeMap::new();
    prefixes.insert(vocab::PREFIX_LABEL.to_string(), Iri::new(vocab::BASE_NS).expect("base namespace"));
    prefixes.insert("xsd".to_string(), Iri::new("http://www.w3.org/2001/XMLSchema#").expect("xsd namespace"));
    prefixes
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let graph = if path.extension().is_some_and(|ext| ext == "nt") {
        ntriples::parse(&text).with_context(|| format!("{}: N-Triples parse failed", path.display()))?
    } else {
        turtle::parse(&text).with_context(|| format!("{}: Turtle parse failed", path.display()))?
    };
    Ok(graph)
}

fn cmd_query(graph_path: &Path, sparql: Option<PathBuf>, cq: Option<String>, json: bool) -> i32 {
    let graph = match load_graph(graph_path) {
        Ok(graph) => graph,
        Err(err) => return fail(2, &err),
    };
    let query: Query = match (&sparql, &cq) {
        (Some(path), _) => {
            let text = match fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())) {
                Ok(text) => text,
                Err(err) => return fail(3, &err),
            };
            match parse_query(&text) {
                Ok(query) => query,
                Err(err) => return fail(3, &anyhow::Error::new(err).context(format!("{}: query rejected", path.display()))),
            }
        }
        (None, Some(id)) => match named_competency_query(id) {
            Ok(query) => query,
            Err(err) => return fail(3, &anyhow::Error::new(err)),
        },
        (None, None) => unreachable!("clap group enforces one query source"),
    };

    let store = TripleStore::from_graph(&graph);
    let solution = match evaluate(&store, &query) {
        Ok(solution) => solution,
        Err(err) => return fail(3, &anyhow::Error::new(err)),
    };
    if json {
        println!("{}", solution_json(&solution));
    } else {
        print!("{}", solution_tsv(&solution));
    }
    0
}

fn tsv_cell(term: &Term) -> String {
    match term {
        Term::Iri(iri) => format!("<{iri}>"),
        Term::Literal(lit) if lit.is_numeric() => lit.lexical().to_string(),
        Term::Literal(lit) => format!("{}", Term::Literal(lit.clone())),
    }
}

fn solution_tsv(solution: &QuerySolution) -> String {
    let mut out = String::new();
    let header: Vec<String> = solution.variables.iter().map(|v| format!("?{v}")).collect();
    out.push_str(&header.join("\t"));
    out.push('\n');
    for row in &solution.rows {
        let cells: Vec<String> = row.iter().map(tsv_cell).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

fn solution_json(solution: &QuerySolution) -> String {
    let rows: Vec<Vec<serde_json::Value>> = solution
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|term| match term {
                    Term::Iri(iri) => serde_json::json!({"type": "iri", "value": iri.as_str()}),
                    Term::Literal(lit) => serde_json::json!({
                        "type": "literal",
                        "value": lit.lexical(),
                        "datatype": match lit.datatype() {
                            Datatype::String => "string",
                            Datatype::Integer => "integer",
                            Datatype::Decimal => "decimal",
                        },
                    }),
                })
                .collect()
        })
        .collect();
    serde_json::json!({"vars": solution.variables, "rows": rows}).to_string()
}

fn cmd_validate(graph_path: &Path, tsv: bool) -> i32 {
    let graph = match load_graph(graph_path) {
        Ok(graph) => graph,
        Err(err) => return fail(2, &err),
    };
    let vocabulary = vocab::builtin_vocabulary();
    let violations = validate::validate(&graph, &vocabulary);
    if tsv {
        print!("{}", validate::to_tsv(&violations));
    } else {
        print!("{}", validate::to_text(&violations));
    }
    if violations.is_empty() {
        0
    } else {
        1
    }
}

fn cmd_vocab(stats: bool, export: Option<PathBuf>) -> i32 {
    let vocabulary = vocab::builtin_vocabulary();
    if stats {
        println!(
            "classes: {}, object-properties: {}, data-properties: {}",
            vocabulary.class_count(),
            vocabulary.object_property_count(),
            vocabulary.data_property_count()
        );
    }
    if let Some(path) = export {
        if let Err(err) = fs::write(&path, vocabulary.export_ontology()).with_context(|| format!("cannot write {}", path.display())) {
            return fail(2, &err);
        }
        println!("wrote: {}", path.display());
    }
    0
}
