//! Dependency models seen through a conditional-independence oracle.

mod axioms;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub use axioms::{check_axioms, Axiom, AxiomReport, AxiomResult, Witness, DEFAULT_AXIOM_CAP};

/// The statement `I(x, y | z)`. Stored in canonical form: every set sorted
/// and deduplicated, and `x` ordered before `y`, so a query and its mirror
/// image compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndependenceQuery {
    x: Vec<NodeId>,
    y: Vec<NodeId>,
    z: Vec<NodeId>,
}

fn canonical(set: impl IntoIterator<Item = NodeId>) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = set.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl IndependenceQuery {
    pub fn new(
        x: impl IntoIterator<Item = NodeId>,
        y: impl IntoIterator<Item = NodeId>,
        z: impl IntoIterator<Item = NodeId>,
    ) -> Result<Self> {
        let (mut x, mut y, z) = (canonical(x), canonical(y), canonical(z));
        if x.is_empty() || y.is_empty() {
            return Err(Error::arg("independence query needs non-empty x and y"));
        }
        let overlap = |a: &[NodeId], b: &[NodeId]| a.iter().any(|v| b.binary_search(v).is_ok());
        if overlap(&x, &y) || overlap(&x, &z) || overlap(&y, &z) {
            return Err(Error::arg(
                "independence query sets must be pairwise disjoint",
            ));
        }
        if y < x {
            std::mem::swap(&mut x, &mut y);
        }
        Ok(IndependenceQuery { x, y, z })
    }

    /// `I(x, y | z)` for two single variables.
    pub fn pair(x: NodeId, y: NodeId, z: &[NodeId]) -> Result<Self> {
        Self::new([x], [y], z.iter().copied())
    }

    pub fn x(&self) -> &[NodeId] {
        &self.x
    }

    pub fn y(&self) -> &[NodeId] {
        &self.y
    }

    pub fn z(&self) -> &[NodeId] {
        &self.z
    }

    /// Size of the conditioning set.
    pub fn order(&self) -> usize {
        self.z.len()
    }

    pub fn max_node(&self) -> Option<NodeId> {
        self.x.iter().chain(&self.y).chain(&self.z).copied().max()
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, s: &[NodeId]) -> fmt::Result {
    f.write_str("{")?;
    for (i, v) in s.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("}")
}

impl fmt::Display for IndependenceQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("I(")?;
        fmt_set(f, &self.x)?;
        f.write_str("|")?;
        fmt_set(f, &self.y)?;
        f.write_str("|")?;
        fmt_set(f, &self.z)?;
        f.write_str(")")
    }
}

impl std::str::FromStr for IndependenceQuery {
    type Err = Error;

    /// Parses the `I({x}|{y}|{z})` form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::arg(format!("malformed query `{s}`"));
        let inner = s
            .trim()
            .strip_prefix("I(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut sets = Vec::with_capacity(3);
        for part in inner.split('|') {
            let body = part
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(bad)?;
            let ids = body
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<NodeId>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            sets.push(ids);
        }
        let [x, y, z]: [Vec<NodeId>; 3] = sets.try_into().map_err(|_| bad())?;
        IndependenceQuery::new(x, y, z)
    }
}

/// A dependency model over the universe `0..universe()`.
///
/// Answers must be deterministic. Symmetry in `x` and `y` holds
/// automatically because queries are canonicalized.
pub trait Oracle {
    fn universe(&self) -> usize;

    fn independent(&self, q: &IndependenceQuery) -> bool;

    fn check(&self, q: &IndependenceQuery) -> Result<bool> {
        match q.max_node() {
            Some(m) if m >= self.universe() => Err(Error::arg(format!(
                "query {q} mentions node {m} outside universe of size {}",
                self.universe()
            ))),
            _ => Ok(self.independent(q)),
        }
    }
}

impl<O: Oracle + ?Sized> Oracle for &O {
    fn universe(&self) -> usize {
        (**self).universe()
    }

    fn independent(&self, q: &IndependenceQuery) -> bool {
        (**self).independent(q)
    }
}

/// Independence as separation in a hidden undirected graph.
#[derive(Clone, Debug)]
pub struct SeparationOracle {
    hidden: Graph,
}

impl SeparationOracle {
    pub fn new(hidden: Graph) -> Self {
        SeparationOracle {
            hidden: hidden.unmarked(),
        }
    }

    pub fn hidden(&self) -> &Graph {
        &self.hidden
    }
}

impl Oracle for SeparationOracle {
    fn universe(&self) -> usize {
        self.hidden.node_count()
    }

    fn independent(&self, q: &IndependenceQuery) -> bool {
        self.hidden
            .separates_sets(q.x(), q.y(), q.z())
            .expect("canonical queries are disjoint")
    }
}

/// Per-order query counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    pub total: u64,
    pub by_order: BTreeMap<usize, u64>,
}

impl QueryCounts {
    fn record(&mut self, order: usize) {
        self.total += 1;
        *self.by_order.entry(order).or_default() += 1;
    }
}

/// Instrumentation wrapper: counts every query by conditioning-set size and
/// optionally keeps an ordered transcript. Never changes answers.
pub struct CountingOracle<O> {
    inner: O,
    counts: RefCell<QueryCounts>,
    transcript: Option<RefCell<Vec<(IndependenceQuery, bool)>>>,
}

impl<O: Oracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle {
            inner,
            counts: RefCell::new(QueryCounts::default()),
            transcript: None,
        }
    }

    pub fn with_transcript(inner: O) -> Self {
        CountingOracle {
            transcript: Some(RefCell::new(Vec::new())),
            ..Self::new(inner)
        }
    }

    pub fn counts(&self) -> QueryCounts {
        self.counts.borrow().clone()
    }

    pub fn transcript(&self) -> Option<Vec<(IndependenceQuery, bool)>> {
        self.transcript.as_ref().map(|t| t.borrow().clone())
    }

    /// One `I({x}|{y}|{z}) -> bool` line per logged query.
    pub fn transcript_text(&self) -> Option<String> {
        self.transcript.as_ref().map(|t| {
            t.borrow()
                .iter()
                .map(|(q, a)| format!("{q} -> {a}\n"))
                .collect()
        })
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: Oracle> Oracle for CountingOracle<O> {
    fn universe(&self) -> usize {
        self.inner.universe()
    }

    fn independent(&self, q: &IndependenceQuery) -> bool {
        let answer = self.inner.independent(q);
        self.counts.borrow_mut().record(q.order());
        if let Some(t) = &self.transcript {
            t.borrow_mut().push((q.clone(), answer));
        }
        answer
    }
}

/// Memoizing wrapper for verification workloads (axiom checking, replay).
/// Learners are never given one, so their query counts stay raw.
pub struct CachedOracle<O> {
    inner: O,
    cache: RefCell<HashMap<IndependenceQuery, bool>>,
}

impl<O: Oracle> CachedOracle<O> {
    pub fn new(inner: O) -> Self {
        CachedOracle {
            inner,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn cached_len(&self) -> usize {
        self.cache.borrow().len()
    }
}

impl<O: Oracle> Oracle for CachedOracle<O> {
    fn universe(&self) -> usize {
        self.inner.universe()
    }

    fn independent(&self, q: &IndependenceQuery) -> bool {
        if let Some(&a) = self.cache.borrow().get(q) {
            return a;
        }
        let a = self.inner.independent(q);
        self.cache.borrow_mut().insert(q.clone(), a);
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{cycle4, path3};

    fn q(x: NodeId, y: NodeId, z: &[NodeId]) -> IndependenceQuery {
        IndependenceQuery::pair(x, y, z).unwrap()
    }

    #[test]
    fn separation_oracle_examples() {
        assert!(SeparationOracle::new(path3()).independent(&q(0, 2, &[1])));
        assert!(!SeparationOracle::new(cycle4()).independent(&q(0, 2, &[1])));
        let two_parts = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(SeparationOracle::new(two_parts).independent(&q(1, 2, &[])));
    }

    #[test]
    fn malformed_queries_rejected() {
        assert!(IndependenceQuery::new([], [1], []).is_err());
        assert!(IndependenceQuery::new([0], [0], []).is_err());
        assert!(IndependenceQuery::new([0], [1], [1]).is_err());
        assert!(IndependenceQuery::new([0, 2], [1], [2]).is_err());
        let o = SeparationOracle::new(path3());
        assert!(o.check(&q(0, 9, &[])).is_err());
        assert!(o.check(&q(0, 2, &[1])).unwrap());
    }

    #[test]
    fn canonical_form_and_text() {
        let a = IndependenceQuery::new([3, 1], [0], [5, 2, 5]).unwrap();
        let b = IndependenceQuery::new([0], [1, 3], [2, 5]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "I({0}|{1,3}|{2,5})");
        assert_eq!(
            "I({0}|{1,3}|{2,5})".parse::<IndependenceQuery>().unwrap(),
            a
        );
        assert_eq!(
            "I({4}|{1}|{})".parse::<IndependenceQuery>().unwrap(),
            q(1, 4, &[])
        );
        assert!("I({0}|{1})".parse::<IndependenceQuery>().is_err());
    }

    #[test]
    fn counting_oracle_tallies_orders() {
        let o = CountingOracle::with_transcript(SeparationOracle::new(cycle4()));
        assert!(!o.independent(&q(0, 2, &[1])));
        assert!(o.independent(&q(0, 2, &[1, 3])));
        assert!(!o.independent(&q(0, 1, &[])));
        let c = o.counts();
        assert_eq!(c.total, 3);
        assert_eq!(c.by_order, BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(
            o.transcript_text().unwrap(),
            "I({0}|{2}|{1}) -> false\nI({0}|{2}|{1,3}) -> true\nI({0}|{1}|{}) -> false\n"
        );
    }

    #[test]
    fn cached_oracle_memoizes() {
        let counting = CountingOracle::new(SeparationOracle::new(cycle4()));
        let cached = CachedOracle::new(&counting);
        for _ in 0..3 {
            assert!(cached.independent(&q(1, 3, &[0, 2])));
        }
        assert_eq!(counting.counts().total, 1);
        assert_eq!(cached.cached_len(), 1);
    }
}
