//! In-memory triple store with subject-first, predicate-first and
//! object-first permutation indexes.
//!
//! Terms are interned to ids; each index is a sorted set of id triples, so a
//! pattern with any combination of bound positions resolves to a range scan.
//! Readers only need `&self`; writes go through batch insertion.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::rdf::{Graph, Term, Triple};

type Id = u32;

#[derive(Debug, Default, Clone)]
pub struct TripleStore {
    terms: Vec<Term>,
    ids: BTreeMap<Term, Id>,
    spo: BTreeSet<(Id, Id, Id)>,
    pos: BTreeSet<(Id, Id, Id)>,
    osp: BTreeSet<(Id, Id, Id)>,
}

impl TripleStore {
    pub fn new() -> Self {
        TripleStore::default()
    }

    pub fn from_graph(graph: &Graph) -> Self {
        let mut store = TripleStore::new();
        store.insert(graph.iter().cloned());
        store
    }

    /// Batch insertion with set-union semantics.
    pub fn insert(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for triple in triples {
            let s = self.intern(Term::Iri(triple.subject));
            let p = self.intern(Term::Iri(triple.predicate));
            let o = self.intern(triple.object);
            self.spo.insert((s, p, o));
            self.pos.insert((p, o, s));
            self.osp.insert((o, s, p));
        }
    }

    fn intern(&mut self, term: Term) -> Id {
        if let Some(id) = self.ids.get(&term) {
            return *id;
        }
        let id = Id::try_from(self.terms.len()).expect("term id space exhausted");
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    /// Number of distinct triples.
    pub fn size(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn term_id(&self, term: &Term) -> Option<Id> {
        self.ids.get(term).copied()
    }

    pub fn term(&self, id: Id) -> &Term {
        &self.terms[id as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&(s, p, o)| self.materialize(s, p, o))
    }

    fn materialize(&self, s: Id, p: Id, o: Id) -> Triple {
        let subject = match self.term(s) {
            Term::Iri(iri) => iri.clone(),
            Term::Literal(_) => unreachable!("literal in subject position"),
        };
        let predicate = match self.term(p) {
            Term::Iri(iri) => iri.clone(),
            Term::Literal(_) => unreachable!("literal in predicate position"),
        };
        Triple::new(subject, predicate, self.term(o).clone())
    }

    /// All id-triples matching a pattern of bound positions, via the index
    /// that covers the bound prefix best.
    pub fn scan(&self, s: Option<Id>, p: Option<Id>, o: Option<Id>) -> Vec<(Id, Id, Id)> {
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                if self.spo.contains(&(s, p, o)) {
                    alloc::vec![(s, p, o)]
                } else {
                    Vec::new()
                }
            }
            (Some(s), Some(p), None) => self.range(&self.spo, s, Some(p)).collect(),
            (Some(s), None, None) => self.range(&self.spo, s, None).collect(),
            (Some(s), None, Some(o)) => self.range(&self.osp, o, Some(s)).map(|(o, s, p)| (s, p, o)).collect(),
            (None, Some(p), Some(o)) => self.range(&self.pos, p, Some(o)).map(|(p, o, s)| (s, p, o)).collect(),
            (None, Some(p), None) => self.range(&self.pos, p, None).map(|(p, o, s)| (s, p, o)).collect(),
            (None, None, Some(o)) => self.range(&self.osp, o, None).map(|(o, s, p)| (s, p, o)).collect(),
            (None, None, None) => self.spo.iter().copied().collect(),
        }
    }

    /// Matching triple count for a pattern; what the evaluator uses to order
    /// joins. Exact, not an estimate, but capped work is fine at this scale.
    pub fn cardinality(&self, s: Option<Id>, p: Option<Id>, o: Option<Id>) -> usize {
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => usize::from(self.spo.contains(&(s, p, o))),
            (Some(s), Some(p), None) => self.range(&self.spo, s, Some(p)).count(),
            (Some(s), None, None) => self.range(&self.spo, s, None).count(),
            (Some(s), None, Some(o)) => self.range(&self.osp, o, Some(s)).count(),
            (None, Some(p), Some(o)) => self.range(&self.pos, p, Some(o)).count(),
            (None, Some(p), None) => self.range(&self.pos, p, None).count(),
            (None, None, Some(o)) => self.range(&self.osp, o, None).count(),
            (None, None, None) => self.spo.len(),
        }
    }

    fn range<'a>(
        &'a self,
        index: &'a BTreeSet<(Id, Id, Id)>,
        first: Id,
        second: Option<Id>,
    ) -> impl Iterator<Item = (Id, Id, Id)> + 'a {
        let (low, high) = match second {
            Some(second) => ((first, second, Id::MIN), (first, second, Id::MAX)),
            None => ((first, Id::MIN, Id::MIN), (first, Id::MAX, Id::MAX)),
        };
        index.range(low..=high).copied()
    }
}

impl FromIterator<Triple> for TripleStore {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut store = TripleStore::new();
        store.insert(iter);
        store
    }
}
