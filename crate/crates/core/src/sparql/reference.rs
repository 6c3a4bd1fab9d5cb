//! Test-support reference evaluator: a naive nested-loop interpreter plus a
//! random store/query generator, used to cross-check the indexed engine.
//!
//! Deliberately shares nothing with the engine: patterns run in written
//! order over a plain triple list, and numbers go through a separate
//! mantissa/scale representation. Enabled by the `oracle` feature; not part
//! of the shipped API surface.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::rdf::{Datatype, Iri, Literal, Term, Triple};
use crate::store::TripleStore;

use super::{
    evaluate, AggregateFunction, CompareOp, Filter, FilterValue, PatternTerm, Query, SelectItem, TriplePattern,
    VarOrIri,
};

// ---------------------------------------------------------------------------
// Reference evaluator
// ---------------------------------------------------------------------------

type Binding = BTreeMap<String, Term>;

/// Exact rational value for comparison and summation: mantissa / 10^scale.
#[derive(Clone, Copy, Debug)]
struct Exact {
    mantissa: i128,
    scale: u32,
}

fn exact(lexical: &str) -> Option<Exact> {
    let (neg, body) = match lexical.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, lexical.strip_prefix('+').unwrap_or(lexical)),
    };
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let mut mantissa: i128 = 0;
    for b in int.bytes().chain(frac.bytes()) {
        if !b.is_ascii_digit() {
            return None;
        }
        mantissa = mantissa.checked_mul(10)?.checked_add(i128::from(b - b'0'))?;
    }
    if neg {
        mantissa = -mantissa;
    }
    Some(Exact { mantissa, scale: frac.len() as u32 })
}

fn exact_cmp(a: Exact, b: Exact) -> Option<Ordering> {
    // Rescale both to the larger scale.
    let (mut am, mut bm) = (a.mantissa, b.mantissa);
    if a.scale < b.scale {
        for _ in 0..(b.scale - a.scale) {
            am = am.checked_mul(10)?;
        }
    } else {
        for _ in 0..(a.scale - b.scale) {
            bm = bm.checked_mul(10)?;
        }
    }
    Some(am.cmp(&bm))
}

fn subject_or_predicate_ok(pattern: &VarOrIri, binding: &Binding, actual: &Iri) -> bool {
    match pattern {
        VarOrIri::Iri(iri) => iri == actual,
        VarOrIri::Var(v) => match binding.get(v) {
            Some(Term::Iri(bound)) => bound == actual,
            Some(Term::Literal(_)) => false,
            None => true,
        },
    }
}

fn object_ok(pattern: &PatternTerm, binding: &Binding, actual: &Term) -> bool {
    match pattern {
        PatternTerm::Iri(iri) => matches!(actual, Term::Iri(a) if a == iri),
        PatternTerm::Literal(lit) => matches!(actual, Term::Literal(a) if a == lit),
        PatternTerm::Var(v) => binding.get(v).is_none_or(|bound| bound == actual),
    }
}

fn try_match(binding: &Binding, pattern: &TriplePattern, triple: &Triple) -> Option<Binding> {
    // All positions (constants and already-bound variables) are checked by
    // reference before anything is cloned.
    if !subject_or_predicate_ok(&pattern.subject, binding, &triple.subject)
        || !subject_or_predicate_ok(&pattern.predicate, binding, &triple.predicate)
        || !object_ok(&pattern.object, binding, &triple.object)
    {
        return None;
    }
    let mut extended = binding.clone();
    if let VarOrIri::Var(v) = &pattern.subject {
        let value = Term::Iri(triple.subject.clone());
        if let Some(existing) = extended.insert(v.clone(), value.clone()) {
            if existing != value {
                return None;
            }
        }
    }
    if let VarOrIri::Var(v) = &pattern.predicate {
        let value = Term::Iri(triple.predicate.clone());
        if let Some(existing) = extended.insert(v.clone(), value.clone()) {
            if existing != value {
                return None;
            }
        }
    }
    if let PatternTerm::Var(v) = &pattern.object {
        if let Some(existing) = extended.insert(v.clone(), triple.object.clone()) {
            if existing != triple.object {
                return None;
            }
        }
    }
    Some(extended)
}

fn naive_filter(binding: &Binding, filter: &Filter) -> Result<bool, ()> {
    let term = binding.get(&filter.var).expect("bound by patterns");
    match (term, &filter.value) {
        (Term::Iri(l), FilterValue::Iri(r)) => match filter.op {
            CompareOp::Eq => Ok(l == r),
            CompareOp::Ne => Ok(l != r),
            _ => Err(()),
        },
        (Term::Literal(l), FilterValue::Literal(r)) => {
            let l_num = l.is_numeric();
            let r_num = r.is_numeric();
            let ord = if l_num && r_num {
                exact_cmp(exact(l.lexical()).ok_or(())?, exact(r.lexical()).ok_or(())?).ok_or(())?
            } else if !l_num && !r_num {
                l.lexical().cmp(r.lexical())
            } else {
                return Err(());
            };
            Ok(match filter.op {
                CompareOp::Eq => ord == Ordering::Equal,
                CompareOp::Ne => ord != Ordering::Equal,
                CompareOp::Lt => ord == Ordering::Less,
                CompareOp::Le => ord != Ordering::Greater,
                CompareOp::Gt => ord == Ordering::Greater,
                CompareOp::Ge => ord != Ordering::Less,
            })
        }
        _ => match filter.op {
            CompareOp::Eq => Ok(false),
            CompareOp::Ne => Ok(true),
            _ => Err(()),
        },
    }
}

// The unit error is deliberate: the engine's rich errors must not leak into
// the reference path, only *whether* evaluation errors.
#[allow(clippy::result_unit_err)]
pub fn naive_evaluate(triples: &[Triple], query: &Query) -> Result<Vec<Vec<Term>>, ()> {
    let mut bindings: Vec<Binding> = alloc::vec![Binding::new()];
    for pattern in &query.patterns {
        let mut next = Vec::new();
        for binding in &bindings {
            for triple in triples {
                if let Some(extended) = try_match(binding, pattern, triple) {
                    next.push(extended);
                }
            }
        }
        bindings = next;
    }
    for filter in &query.filters {
        let mut kept = Vec::new();
        for binding in bindings {
            if naive_filter(&binding, filter)? {
                kept.push(binding);
            }
        }
        bindings = kept;
    }

    let has_aggregates = query.select.iter().any(|s| matches!(s, SelectItem::Aggregate { .. }));
    let mut rows: Vec<Vec<Term>> = if has_aggregates || query.group_by.is_some() {
        let mut groups: BTreeMap<Option<Term>, Vec<&Binding>> = BTreeMap::new();
        for binding in &bindings {
            let key = query.group_by.as_ref().map(|g| binding.get(g).expect("bound").clone());
            groups.entry(key).or_default().push(binding);
        }
        let mut out = Vec::new();
        for (key, members) in &groups {
            let mut row = Vec::new();
            for item in &query.select {
                match item {
                    SelectItem::Var(_) => row.push(key.clone().expect("group key")),
                    SelectItem::Aggregate { function: AggregateFunction::Count, .. } => {
                        row.push(Term::Literal(Literal::integer(members.len() as i128)));
                    }
                    SelectItem::Aggregate { function: AggregateFunction::Sum, var, .. } => {
                        let mut total = Exact { mantissa: 0, scale: 0 };
                        let mut all_integers = true;
                        for member in members {
                            let Term::Literal(lit) = member.get(var).expect("bound") else {
                                return Err(());
                            };
                            if !lit.is_numeric() {
                                return Err(());
                            }
                            all_integers &= lit.datatype() == Datatype::Integer;
                            let value = exact(lit.lexical()).ok_or(())?;
                            // Common-scale addition.
                            while total.scale < value.scale {
                                total.mantissa = total.mantissa.checked_mul(10).ok_or(())?;
                                total.scale += 1;
                            }
                            let mut add = value.mantissa;
                            for _ in 0..(total.scale - value.scale) {
                                add = add.checked_mul(10).ok_or(())?;
                            }
                            total.mantissa = total.mantissa.checked_add(add).ok_or(())?;
                        }
                        row.push(Term::Literal(render_sum(total, all_integers)));
                    }
                }
            }
            out.push(row);
        }
        out
    } else {
        bindings
            .iter()
            .map(|binding| {
                query
                    .select
                    .iter()
                    .map(|item| match item {
                        SelectItem::Var(v) => binding.get(v).expect("bound").clone(),
                        SelectItem::Aggregate { .. } => unreachable!(),
                    })
                    .collect()
            })
            .collect()
    };

    // Deterministic ordering mirrored from the engine contract. An ORDER BY
    // variable outside the projection rides along as a hidden last column.
    let variables: Vec<String> = query
        .select
        .iter()
        .map(|item| match item {
            SelectItem::Var(v) => v.clone(),
            SelectItem::Aggregate { alias, .. } => alias.clone(),
        })
        .collect();
    let mut hidden_order = false;
    let order_col = query.order_by_var.as_ref().map(|v| match variables.iter().position(|n| n == v) {
        Some(col) => col,
        None => {
            hidden_order = true;
            let order_var = v.clone();
            for (row, binding) in rows.iter_mut().zip(&bindings) {
                row.push(binding.get(&order_var).expect("validated ORDER BY variable").clone());
            }
            variables.len()
        }
    });
    rows.sort_by(|a, b| {
        let primary = match order_col {
            Some(col) => {
                let ord = order_cmp(&a[col], &b[col]);
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
        for row in &mut rows {
            row.pop();
        }
    }
    let offset = query.offset.unwrap_or(0);
    let mut rows: Vec<Vec<Term>> = rows.into_iter().skip(offset).collect();
    if let Some(limit) = query.limit {
        rows.truncate(limit);
    }
    Ok(rows)
}

fn render_sum(total: Exact, all_integers: bool) -> Literal {
    let neg = total.mantissa < 0;
    let digits = format!("{}", total.mantissa.unsigned_abs());
    let scale = total.scale as usize;
    let (int, frac) = if digits.len() > scale {
        (digits[..digits.len() - scale].to_string(), digits[digits.len() - scale..].to_string())
    } else {
        ("0".to_string(), format!("{}{digits}", "0".repeat(scale - digits.len())))
    };
    let frac = frac.trim_end_matches('0');
    let mut lex = String::new();
    if neg && !(int == "0" && frac.is_empty()) {
        lex.push('-');
    }
    lex.push_str(&int);
    if !frac.is_empty() {
        lex.push('.');
        lex.push_str(frac);
    }
    if all_integers {
        Literal::integer_lexical(lex).unwrap()
    } else {
        Literal::decimal(lex).unwrap()
    }
}

fn order_cmp(a: &Term, b: &Term) -> Ordering {
    if let (Term::Literal(la), Term::Literal(lb)) = (a, b) {
        if la.is_numeric() && lb.is_numeric() {
            if let (Some(ea), Some(eb)) = (exact(la.lexical()), exact(lb.lexical())) {
                if let Some(ord) = exact_cmp(ea, eb) {
                    return ord;
                }
            }
        }
    }
    a.cmp(b)
}

// ---------------------------------------------------------------------------
// Random store and query generation
// ---------------------------------------------------------------------------

fn random_term(rng: &mut ChaCha8Rng) -> Term {
    match rng.gen_range(0..10) {
        0..=3 => Term::Iri(Iri::new(format!("urn:t:o{}", rng.gen_range(0..20))).unwrap()),
        4..=5 => Term::Literal(Literal::string(format!("w{}", rng.gen_range(0..10)))),
        6..=7 => Term::Literal(Literal::integer(rng.gen_range(-5..15))),
        _ => {
            let choices = ["2.5", "2.50", "0.1", "10.25", "-3.75", "7", "0.0"];
            Term::Literal(Literal::decimal(choices[rng.gen_range(0..choices.len())]).unwrap())
        }
    }
}

pub fn random_store(rng: &mut ChaCha8Rng) -> Vec<Triple> {
    let n = rng.gen_range(0..=500);
    // RDF graphs are sets; dedupe so the list-walking reference sees the
    // same multiplicities as the store.
    let set: BTreeSet<Triple> = (0..n)
        .map(|_| {
            Triple::new(
                Iri::new(format!("urn:t:s{}", rng.gen_range(0..30))).unwrap(),
                Iri::new(format!("urn:t:p{}", rng.gen_range(0..8))).unwrap(),
                random_term(rng),
            )
        })
        .collect();
    set.into_iter().collect()
}

pub fn random_query(rng: &mut ChaCha8Rng) -> Query {
    let pattern_count = rng.gen_range(1..=3);
    let mut patterns = Vec::new();
    let mut vars: Vec<String> = Vec::new();
    for i in 0..pattern_count {
        let subject = if i > 0 && rng.gen_bool(0.8) && !vars.is_empty() {
            VarOrIri::Var(vars[rng.gen_range(0..vars.len())].clone())
        } else if i > 0 && rng.gen_bool(0.15) {
            VarOrIri::Iri(Iri::new(format!("urn:t:s{}", rng.gen_range(0..30))).unwrap())
        } else {
            VarOrIri::Var(format!("v{i}s"))
        };
        // Later patterns lean harder on constant predicates so the join
        // product stays within a naive evaluator's reach.
        let constant_predicate = if i < 2 { 0.75 } else { 0.9 };
        let predicate = if rng.gen_bool(constant_predicate) {
            VarOrIri::Iri(Iri::new(format!("urn:t:p{}", rng.gen_range(0..8))).unwrap())
        } else {
            VarOrIri::Var(format!("v{i}p"))
        };
        let object = if rng.gen_bool(0.3) {
            match random_term(rng) {
                Term::Iri(iri) => PatternTerm::Iri(iri),
                Term::Literal(lit) => PatternTerm::Literal(lit),
            }
        } else if rng.gen_bool(0.3) && !vars.is_empty() {
            PatternTerm::Var(vars[rng.gen_range(0..vars.len())].clone())
        } else {
            PatternTerm::Var(format!("v{i}o"))
        };
        for var in [&subject].into_iter().filter_map(|s| match s {
            VarOrIri::Var(v) => Some(v.clone()),
            VarOrIri::Iri(_) => None,
        }) {
            if !vars.contains(&var) {
                vars.push(var);
            }
        }
        if let VarOrIri::Var(v) = &predicate {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        if let PatternTerm::Var(v) = &object {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        patterns.push(TriplePattern { subject, predicate, object });
    }

    let mut filters = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        if vars.is_empty() {
            break;
        }
        let var = vars[rng.gen_range(0..vars.len())].clone();
        let op = [CompareOp::Eq, CompareOp::Ne, CompareOp::Lt, CompareOp::Le, CompareOp::Gt, CompareOp::Ge]
            [rng.gen_range(0..6)];
        let value = match rng.gen_range(0..10) {
            0..=6 => FilterValue::Literal(Literal::integer(rng.gen_range(-5..15))),
            7 => FilterValue::Literal(Literal::decimal("2.5").unwrap()),
            8 => FilterValue::Literal(Literal::string(format!("w{}", rng.gen_range(0..10)))),
            _ => FilterValue::Iri(Iri::new(format!("urn:t:o{}", rng.gen_range(0..20))).unwrap()),
        };
        filters.push(Filter { var, op, value });
    }

    let grouped = rng.gen_bool(0.35) && vars.len() >= 2;
    let (select, group_by) = if grouped {
        let group = vars[0].clone();
        let agg_var = vars[rng.gen_range(1..vars.len())].clone();
        let function = if rng.gen_bool(0.5) { AggregateFunction::Count } else { AggregateFunction::Sum };
        (
            alloc::vec![
                SelectItem::Var(group.clone()),
                SelectItem::Aggregate { function, var: agg_var, alias: "agg".to_string() },
            ],
            Some(group),
        )
    } else {
        let count = rng.gen_range(1..=vars.len());
        (vars.iter().take(count).map(|v| SelectItem::Var(v.clone())).collect(), None)
    };

    let order_by_var = if rng.gen_bool(0.4) {
        if grouped {
            if rng.gen_bool(0.5) {
                group_by.clone()
            } else {
                Some("agg".to_string())
            }
        } else if rng.gen_bool(0.3) {
            // Any pattern variable, projected or not.
            Some(vars[rng.gen_range(0..vars.len())].clone())
        } else {
            match &select[rng.gen_range(0..select.len())] {
                SelectItem::Var(v) => Some(v.clone()),
                SelectItem::Aggregate { .. } => None,
            }
        }
    } else {
        None
    };

    // The flag is meaningless without ORDER BY; keep it canonical then.
    let order_ascending = order_by_var.is_none() || rng.gen_bool(0.7);
    Query {
        prefixes: BTreeMap::new(),
        select,
        patterns,
        filters,
        group_by,
        order_by_var,
        order_ascending,
        limit: if rng.gen_bool(0.3) { Some(rng.gen_range(0..12)) } else { None },
        offset: if rng.gen_bool(0.25) { Some(rng.gen_range(0..6)) } else { None },
    }
}

/// Outcome counts from an equivalence run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceStats {
    pub evaluated: usize,
    pub errored: usize,
}

/// Run `cases` randomized engine-vs-reference comparisons; panics with the
/// case number on any divergence.
pub fn run_equivalence_cases(seed: u64, cases: usize) -> EquivalenceStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = EquivalenceStats { evaluated: 0, errored: 0 };
    for case in 0..cases {
        let triples = random_store(&mut rng);
        let query = random_query(&mut rng);
        query.validate().unwrap_or_else(|e| panic!("case {case}: generated query invalid: {e}"));
        let store: TripleStore = triples.iter().cloned().collect();
        let engine = evaluate(&store, &query);
        let reference = naive_evaluate(&triples, &query);
        match (engine, reference) {
            (Ok(solution), Ok(rows)) => {
                assert_eq!(
                    solution.rows, rows,
                    "case {case}: row mismatch\nquery: {query:?}\nstore size {}",
                    triples.len()
                );
                stats.evaluated += 1;
            }
            (Err(_), Err(())) => {
                stats.errored += 1;
            }
            (engine, reference) => panic!(
                "case {case}: error disagreement (engine {:?}, reference {:?})\nquery: {query:?}",
                engine.map(|s| s.rows.len()),
                reference.map(|r| r.len())
            ),
        }
    }
    stats
}
