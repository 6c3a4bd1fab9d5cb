//! Basic-graph-pattern evaluation over the indexed store.
//!
//! Patterns are joined in ascending order of index-estimated cardinality;
//! correctness is plan-independent. Filters run over the completed join so
//! that whether a comparison type-errors does not depend on the plan. Row
//! order is deterministic: ORDER BY when present (numeric-aware), otherwise
//! the projected binding tuple.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::num;
use crate::rdf::{Literal, Term};
use crate::store::TripleStore;

use super::{
    AggregateFunction, CompareOp, Filter, FilterValue, PatternTerm, Query, QuerySolution, SelectItem,
    VarOrIri,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("SUM over ?{var}: non-numeric value {lexical:?}")]
    SumTypeError { var: String, lexical: String },
    #[error("type error comparing {left} {op} {right}")]
    CompareTypeError { left: String, op: &'static str, right: String },
    #[error("numeric overflow while aggregating ?{var}")]
    Overflow { var: String },
}

/// Evaluate a validated query against a store snapshot.
pub fn evaluate(store: &TripleStore, query: &Query) -> Result<QuerySolution, EvalError> {
    // Variable slots in first-appearance order.
    let mut var_slots: Vec<String> = Vec::new();
    let slot_of = |name: &str, slots: &mut Vec<String>| -> usize {
        match slots.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                slots.push(name.to_string());
                slots.len() - 1
            }
        }
    };
    for pattern in &query.patterns {
        for var in pattern.variables() {
            slot_of(var, &mut var_slots);
        }
    }
    let slot = |name: &str| var_slots.iter().position(|s| s == name);

    // Resolve pattern constants to ids up front; a constant the store has
    // never seen means the pattern can't match.
    enum Slot {
        Var(usize),
        Bound(u32),
        NoMatch,
    }
    let resolve_var_or_iri = |term: &VarOrIri| -> Slot {
        match term {
            VarOrIri::Var(v) => Slot::Var(slot(v).expect("validated variable")),
            VarOrIri::Iri(iri) => match store.term_id(&Term::Iri(iri.clone())) {
                Some(id) => Slot::Bound(id),
                None => Slot::NoMatch,
            },
        }
    };
    let resolve_object = |term: &PatternTerm| -> Slot {
        let as_term = match term {
            PatternTerm::Var(v) => return Slot::Var(slot(v).expect("validated variable")),
            PatternTerm::Iri(iri) => Term::Iri(iri.clone()),
            PatternTerm::Literal(lit) => Term::Literal(lit.clone()),
        };
        match store.term_id(&as_term) {
            Some(id) => Slot::Bound(id),
            None => Slot::NoMatch,
        }
    };

    struct Resolved {
        s: Slot,
        p: Slot,
        o: Slot,
        cardinality: usize,
    }
    let resolved: Vec<Resolved> = query
        .patterns
        .iter()
        .map(|pattern| {
            let s = resolve_var_or_iri(&pattern.subject);
            let p = resolve_var_or_iri(&pattern.predicate);
            let o = resolve_object(&pattern.object);
            let cardinality = if matches!(s, Slot::NoMatch) || matches!(p, Slot::NoMatch) || matches!(o, Slot::NoMatch) {
                0
            } else {
                let bound = |slot: &Slot| match slot {
                    Slot::Bound(id) => Some(*id),
                    _ => None,
                };
                store.cardinality(bound(&s), bound(&p), bound(&o))
            };
            Resolved { s, p, o, cardinality }
        })
        .collect();

    // Greedy join order: cheapest estimated pattern first, stable on ties.
    let mut order: Vec<usize> = (0..resolved.len()).collect();
    order.sort_by_key(|&i| (resolved[i].cardinality, i));

    let mut rows: Vec<Vec<Option<u32>>> = alloc::vec![alloc::vec![None; var_slots.len()]];

    for &pattern_index in &order {
        let pattern = &resolved[pattern_index];
        let mut next_rows = Vec::new();
        for row in &rows {
            let lookup = |slot: &Slot| -> Result<Option<u32>, ()> {
                match slot {
                    Slot::Bound(id) => Ok(Some(*id)),
                    Slot::Var(v) => Ok(row[*v]),
                    Slot::NoMatch => Err(()),
                }
            };
            let (Ok(s), Ok(p), Ok(o)) = (lookup(&pattern.s), lookup(&pattern.p), lookup(&pattern.o)) else {
                continue;
            };
            'matches: for (ms, mp, mo) in store.scan(s, p, o) {
                let mut extended = row.clone();
                // A variable repeated within one pattern must bind one term.
                for (slot_kind, id) in [(&pattern.s, ms), (&pattern.p, mp), (&pattern.o, mo)] {
                    if let Slot::Var(v) = slot_kind {
                        if let Some(existing) = extended[*v] {
                            if existing != id {
                                continue 'matches;
                            }
                        }
                        extended[*v] = Some(id);
                    }
                }
                next_rows.push(extended);
            }
        }
        rows = next_rows;
    }

    // Filters run over the completed join, in written order; a row must
    // survive earlier filters before a later one can observe (or trip
    // over) it.
    for filter in &query.filters {
        let slot_index = slot(&filter.var).expect("validated variable");
        let mut kept = Vec::new();
        for row in rows {
            let id = row[slot_index].expect("validated variables are bound by the join");
            if filter_passes(store.term(id), filter)? {
                kept.push(row);
            }
        }
        rows = kept;
    }

    let variables: Vec<String> = query
        .select
        .iter()
        .map(|item| match item {
            SelectItem::Var(v) => v.clone(),
            SelectItem::Aggregate { alias, .. } => alias.clone(),
        })
        .collect();

    let has_aggregates = query.select.iter().any(|s| matches!(s, SelectItem::Aggregate { .. }));
    let grouped = has_aggregates || query.group_by.is_some();

    // When ORDER BY names a pattern variable that is not projected, carry it
    // as a hidden trailing column through the sort. Grouped queries always
    // order by a projected column (enforced at validation).
    let mut hidden_order = false;
    let order_column = query.order_by_var.as_ref().map(|v| match variables.iter().position(|name| name == v) {
        Some(col) => col,
        None => {
            hidden_order = true;
            variables.len()
        }
    });

    let mut projected: Vec<Vec<Term>> = if grouped {
        aggregate_rows(store, query, &rows, &var_slots)?
    } else {
        let mut select_slots: Vec<usize> = query
            .select
            .iter()
            .map(|item| match item {
                SelectItem::Var(v) => slot(v).expect("validated variable"),
                SelectItem::Aggregate { .. } => unreachable!("no aggregates on this path"),
            })
            .collect();
        if hidden_order {
            let v = query.order_by_var.as_ref().expect("hidden order implies ORDER BY");
            select_slots.push(slot(v).expect("validated variable"));
        }
        rows.iter()
            .map(|row| select_slots.iter().map(|&s| store.term(row[s].expect("bound")).clone()).collect())
            .collect()
    };

    // Deterministic ordering: ORDER BY column first (numeric-aware), then
    // the whole projected tuple as a tiebreak; without ORDER BY, the tuple.
    projected.sort_by(|a, b| {
        let primary = match order_column {
            Some(col) => {
                let ord = compare_terms_for_order(&a[col], &b[col]);
                if query.order_ascending {
                    ord
                } else {
                    ord.reverse()
                }
            }
            None => Ordering::Equal,
        };
        primary.then_with(|| a.cmp(b))
    });
    if hidden_order {
        for row in &mut projected {
            row.pop();
        }
    }

    let offset = query.offset.unwrap_or(0);
    let mut final_rows: Vec<Vec<Term>> = projected.into_iter().skip(offset).collect();
    if let Some(limit) = query.limit {
        final_rows.truncate(limit);
    }

    Ok(QuerySolution { variables, rows: final_rows })
}

/// ORDER BY comparison: numeric literals compare by value, everything else
/// by plain term order.
fn compare_terms_for_order(a: &Term, b: &Term) -> Ordering {
    if let (Term::Literal(la), Term::Literal(lb)) = (a, b) {
        if la.is_numeric() && lb.is_numeric() {
            if let Some(ord) = num::compare(la.lexical(), lb.lexical()) {
                return ord;
            }
        }
    }
    a.cmp(b)
}

fn filter_passes(term: &Term, filter: &Filter) -> Result<bool, EvalError> {
    let type_error = |left: &Term, right_render: String| EvalError::CompareTypeError {
        left: left.to_string(),
        op: filter.op.symbol(),
        right: right_render,
    };
    match (&term, &filter.value) {
        (Term::Iri(left), FilterValue::Iri(right)) => match filter.op {
            CompareOp::Eq => Ok(left == right),
            CompareOp::Ne => Ok(left != right),
            _ => Err(type_error(term, alloc::format!("<{right}>"))),
        },
        (Term::Literal(left), FilterValue::Literal(right)) => compare_literals(left, right, filter.op).map_err(|_| {
            type_error(term, alloc::format!("{}", Term::Literal(right.clone())))
        }),
        // Terms of different kinds are unequal; ordering them is an error.
        (_, FilterValue::Literal(right)) => match filter.op {
            CompareOp::Eq => Ok(false),
            CompareOp::Ne => Ok(true),
            _ => Err(type_error(term, alloc::format!("{}", Term::Literal(right.clone())))),
        },
        (_, FilterValue::Iri(right)) => match filter.op {
            CompareOp::Eq => Ok(false),
            CompareOp::Ne => Ok(true),
            _ => Err(type_error(term, alloc::format!("<{right}>"))),
        },
    }
}

struct LiteralTypeMismatch;

fn compare_literals(left: &Literal, right: &Literal, op: CompareOp) -> Result<bool, LiteralTypeMismatch> {
    let ordering = match (left.is_numeric(), right.is_numeric()) {
        (true, true) => num::compare(left.lexical(), right.lexical()).ok_or(LiteralTypeMismatch)?,
        (false, false) => left.lexical().cmp(right.lexical()),
        // String against number is a type error, never a silent false.
        _ => return Err(LiteralTypeMismatch),
    };
    Ok(match op {
        CompareOp::Eq => ordering == Ordering::Equal,
        CompareOp::Ne => ordering != Ordering::Equal,
        CompareOp::Lt => ordering == Ordering::Less,
        CompareOp::Le => ordering != Ordering::Greater,
        CompareOp::Gt => ordering == Ordering::Greater,
        CompareOp::Ge => ordering != Ordering::Less,
    })
}

fn aggregate_rows(
    store: &TripleStore,
    query: &Query,
    rows: &[Vec<Option<u32>>],
    var_slots: &[String],
) -> Result<Vec<Vec<Term>>, EvalError> {
    let slot = |name: &str| var_slots.iter().position(|s| s == name).expect("validated variable");
    let group_slot = query.group_by.as_ref().map(|g| slot(g));

    // Group rows by key id (or a single unit group when GROUP BY is absent).
    let mut groups: BTreeMap<Option<u32>, Vec<&Vec<Option<u32>>>> = BTreeMap::new();
    for row in rows {
        let key = group_slot.map(|g| row[g].expect("bound"));
        groups.entry(key).or_default().push(row);
    }

    let mut out = Vec::new();
    for (key, members) in &groups {
        let mut projected = Vec::new();
        for item in &query.select {
            match item {
                SelectItem::Var(_) => {
                    let id = key.expect("validated: plain var is the GROUP BY key");
                    projected.push(store.term(id).clone());
                }
                SelectItem::Aggregate { function: AggregateFunction::Count, .. } => {
                    projected.push(Term::Literal(Literal::integer(members.len() as i128)));
                }
                SelectItem::Aggregate { function: AggregateFunction::Sum, var, .. } => {
                    let value_slot = slot(var);
                    let mut sum = num::DecimalSum::default();
                    let mut all_integers = true;
                    for row in members {
                        let term = store.term(row[value_slot].expect("bound"));
                        let Term::Literal(lit) = term else {
                            return Err(EvalError::SumTypeError { var: var.clone(), lexical: term.to_string() });
                        };
                        if !lit.is_numeric() {
                            return Err(EvalError::SumTypeError { var: var.clone(), lexical: lit.lexical().to_string() });
                        }
                        all_integers &= lit.datatype() == crate::rdf::Datatype::Integer;
                        sum.add(lit.lexical()).map_err(|e| match e {
                            num::SumError::NonNumeric(lexical) => EvalError::SumTypeError { var: var.clone(), lexical },
                            num::SumError::Overflow => EvalError::Overflow { var: var.clone() },
                        })?;
                    }
                    let lexical = sum.lexical();
                    let literal = if all_integers {
                        Literal::integer_lexical(lexical).expect("integer sum lexical")
                    } else {
                        Literal::decimal(lexical).expect("decimal sum lexical")
                    };
                    projected.push(Term::Literal(literal));
                }
            }
        }
        out.push(projected);
    }
    Ok(out)
}
