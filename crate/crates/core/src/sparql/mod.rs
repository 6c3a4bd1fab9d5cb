//! SPARQL-subset query model and evaluation.
//!
//! Supported: basic graph patterns (with `;`/`,` abbreviations), FILTER
//! comparisons between a variable and a constant, GROUP BY with COUNT/SUM,
//! ORDER BY, LIMIT/OFFSET. Everything else (OPTIONAL, UNION, subqueries,
//! property paths, DISTINCT, ...) is rejected with a named
//! unsupported-feature error.

mod eval;
mod parse;
#[cfg(feature = "oracle")]
pub mod reference;

pub use eval::{evaluate, EvalError};
pub use parse::parse_query;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rdf::{Iri, Literal, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarOrIri {
    Var(String),
    Iri(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternTerm {
    Var(String),
    Iri(Iri),
    Literal(Literal),
}

/// One triple pattern of a basic graph pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: VarOrIri,
    pub predicate: VarOrIri,
    pub object: PatternTerm,
}

impl TriplePattern {
    fn variables(&self) -> impl Iterator<Item = &str> {
        let s = match &self.subject {
            VarOrIri::Var(v) => Some(v.as_str()),
            VarOrIri::Iri(_) => None,
        };
        let p = match &self.predicate {
            VarOrIri::Var(v) => Some(v.as_str()),
            VarOrIri::Iri(_) => None,
        };
        let o = match &self.object {
            PatternTerm::Var(v) => Some(v.as_str()),
            _ => None,
        };
        s.into_iter().chain(p).chain(o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CompareOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Gt => ">",
            CompareOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterValue {
    Iri(Iri),
    Literal(Literal),
}

/// `FILTER(?var op constant)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    pub var: String,
    pub op: CompareOp,
    pub value: FilterValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggregateFunction {
    Count,
    Sum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectItem {
    Var(String),
    Aggregate { function: AggregateFunction, var: String, alias: String },
}

/// A parsed, validated query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub prefixes: BTreeMap<String, Iri>,
    pub select: Vec<SelectItem>,
    pub patterns: Vec<TriplePattern>,
    pub filters: Vec<Filter>,
    pub group_by: Option<String>,
    pub order_by_var: Option<String>,
    pub order_ascending: bool,
    pub limit: Option<usize>,
    pub offset: Option<usize>,
}

impl Query {
    /// Enforce the structural invariants: referenced variables must occur in
    /// a pattern, and grouped queries may only project the group key and
    /// aggregates.
    pub fn validate(&self) -> Result<(), QueryParseError> {
        let mut pattern_vars: Vec<&str> = Vec::new();
        for pattern in &self.patterns {
            pattern_vars.extend(pattern.variables());
        }
        let known = |v: &str| pattern_vars.contains(&v);
        let mut aliases: Vec<&str> = Vec::new();
        let has_aggregates = self.select.iter().any(|s| matches!(s, SelectItem::Aggregate { .. }));
        for item in &self.select {
            match item {
                SelectItem::Var(v) => {
                    if !known(v) {
                        return Err(QueryParseError::unbound(v));
                    }
                    if (has_aggregates || self.group_by.is_some())
                        && self.group_by.as_deref() != Some(v.as_str()) {
                            return Err(QueryParseError::Validation {
                                message: alloc::format!("?{v} is projected alongside aggregates but is not the GROUP BY variable"),
                            });
                        }
                }
                SelectItem::Aggregate { var, alias, .. } => {
                    if !known(var) {
                        return Err(QueryParseError::unbound(var));
                    }
                    if known(alias) {
                        return Err(QueryParseError::Validation {
                            message: alloc::format!("aggregate alias ?{alias} collides with a pattern variable"),
                        });
                    }
                    aliases.push(alias);
                }
            }
        }
        for filter in &self.filters {
            if !known(&filter.var) {
                return Err(QueryParseError::unbound(&filter.var));
            }
        }
        if let Some(group) = &self.group_by {
            if !known(group) {
                return Err(QueryParseError::unbound(group));
            }
        }
        if let Some(order) = &self.order_by_var {
            if !known(order) && !aliases.iter().any(|a| a == order) {
                return Err(QueryParseError::unbound(order));
            }
            if (has_aggregates || self.group_by.is_some())
                && self.group_by.as_deref() != Some(order.as_str())
                && !aliases.iter().any(|a| a == order)
            {
                return Err(QueryParseError::Validation {
                    message: alloc::format!("ORDER BY ?{order} must name the GROUP BY variable or an aggregate alias"),
                });
            }
        }
        Ok(())
    }
}

/// A result table: selected variable names and one term per variable per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySolution {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unsupported feature: {feature}")]
    Unsupported { feature: String, line: usize, column: usize },
    #[error("invalid query: {message}")]
    Validation { message: String },
}

impl QueryParseError {
    fn unbound(var: &str) -> Self {
        QueryParseError::Validation { message: alloc::format!("?{var} does not appear in any triple pattern") }
    }
}

/// The five shipped competency-question queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompetencyQuestion {
    /// CQ1: who mined each block.
    Miner,
    /// CQ2: the height of each block.
    Height,
    /// CQ3: how many transactions each block includes.
    TransactionCount,
    /// CQ4: whether each transaction is confirmed or unconfirmed.
    ConfirmationStatus,
    /// CQ5: how much value each block transferred in total.
    TotalValueTransferred,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown competency question id {0:?} (expected CQ1..CQ5)")]
pub struct UnknownCompetencyQuestion(pub String);

impl CompetencyQuestion {
    pub const ALL: [CompetencyQuestion; 5] = [
        CompetencyQuestion::Miner,
        CompetencyQuestion::Height,
        CompetencyQuestion::TransactionCount,
        CompetencyQuestion::ConfirmationStatus,
        CompetencyQuestion::TotalValueTransferred,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CompetencyQuestion::Miner => "CQ1",
            CompetencyQuestion::Height => "CQ2",
            CompetencyQuestion::TransactionCount => "CQ3",
            CompetencyQuestion::ConfirmationStatus => "CQ4",
            CompetencyQuestion::TotalValueTransferred => "CQ5",
        }
    }

    pub fn from_id(id: &str) -> Result<Self, UnknownCompetencyQuestion> {
        match id.to_uppercase().as_str() {
            "CQ1" => Ok(CompetencyQuestion::Miner),
            "CQ2" => Ok(CompetencyQuestion::Height),
            "CQ3" => Ok(CompetencyQuestion::TransactionCount),
            "CQ4" => Ok(CompetencyQuestion::ConfirmationStatus),
            "CQ5" => Ok(CompetencyQuestion::TotalValueTransferred),
            _ => Err(UnknownCompetencyQuestion(id.to_string())),
        }
    }

    /// Query source text.
    pub fn text(self) -> &'static str {
        match self {
            CompetencyQuestion::Miner => {
                "PREFIX blondie: <https://w3id.org/blondie#>\nSELECT ?block ?miner\nWHERE { ?block blondie:minedBy ?miner }\n"
            }
            CompetencyQuestion::Height => {
                "PREFIX blondie: <https://w3id.org/blondie#>\nSELECT ?block ?height\nWHERE { ?block blondie:height ?height }\n"
            }
            CompetencyQuestion::TransactionCount => {
                "PREFIX blondie: <https://w3id.org/blondie#>\nSELECT ?block (COUNT(?tx) AS ?transactions)\nWHERE { ?block blondie:hasTransaction ?tx }\nGROUP BY ?block\n"
            }
            CompetencyQuestion::ConfirmationStatus => {
                "PREFIX blondie: <https://w3id.org/blondie#>\nSELECT ?transaction ?status\nWHERE { ?transaction blondie:confirmationStatus ?status }\n"
            }
            CompetencyQuestion::TotalValueTransferred => {
                "PREFIX blondie: <https://w3id.org/blondie#>\nSELECT ?block (SUM(?value) AS ?total)\nWHERE { ?block blondie:totalValueTransferred ?value }\nGROUP BY ?block\n"
            }
        }
    }

    /// The parsed query.
    pub fn query(self) -> Query {
        parse_query(self.text()).expect("shipped competency query parses")
    }
}

/// Look up a shipped query by its `CQ1`..`CQ5` id.
pub fn named_competency_query(id: &str) -> Result<Query, UnknownCompetencyQuestion> {
    Ok(CompetencyQuestion::from_id(id)?.query())
}
