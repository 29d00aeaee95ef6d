//! Directed reference networks ("wordnets").
//!
//! A node is an opaque [`WordId`]; an edge `source -> target` means that
//! `source` refers to `target`. Nodes are kept in ascending id order, so a
//! node's index doubles as its rank in lexicographic id order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or loading a wordnet.
#[derive(Debug, Error)]
pub enum WordNetError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty node id")]
    EmptyId,
    #[error("self reference on node `{0}`")]
    SelfReference(String),
    #[error("duplicate edge `{from}` -> `{to}`")]
    DuplicateEdge { from: String, to: String },
    #[error("weight {weight} on edge `{from}` -> `{to}` is outside [0, 1]")]
    WeightOutOfRange { from: String, to: String, weight: f64 },
    #[error("duplicate node `{0}` in node list")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Opaque, non-empty node identifier. No normalization is applied.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct WordId(String);

impl WordId {
    pub fn new(id: impl Into<String>) -> Result<Self, WordNetError> {
        let id = id.into();
        if id.is_empty() {
            return Err(WordNetError::EmptyId);
        }
        Ok(WordId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for WordId {
    type Error = WordNetError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        WordId::new(value)
    }
}

impl From<WordId> for String {
    fn from(value: WordId) -> Self {
        value.0
    }
}

impl fmt::Display for WordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for WordId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A reference between two nodes, by node index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// How the builder treats a repeated `(source, target)` pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DuplicatePolicy {
    #[default]
    Reject,
    /// Keep a single edge carrying the maximum weight seen.
    MergeMax,
}

/// Accumulates nodes and references, validating as it goes.
#[derive(Debug, Default)]
pub struct WordNetBuilder {
    policy: DuplicatePolicy,
    labels: BTreeMap<WordId, Option<String>>,
    edges: BTreeMap<(WordId, WordId), f64>,
}

impl WordNetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn duplicate_policy(mut self, policy: DuplicatePolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Declares a node, optionally with a display label. Declaring the same
    /// node twice is an error; a node first seen as an edge endpoint may
    /// still receive its label here.
    pub fn add_node(&mut self, id: &str, label: Option<String>) -> Result<(), WordNetError> {
        let id = WordId::new(id)?;
        match self.labels.get_mut(&id) {
            Some(Some(_)) => Err(WordNetError::DuplicateNode(id.0)),
            Some(slot) => {
                *slot = label;
                Ok(())
            }
            None => {
                self.labels.insert(id, label);
                Ok(())
            }
        }
    }

    pub fn add_edge(&mut self, source: &str, target: &str, weight: f64) -> Result<(), WordNetError> {
        let source = WordId::new(source)?;
        let target = WordId::new(target)?;
        if source == target {
            return Err(WordNetError::SelfReference(source.0));
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(WordNetError::WeightOutOfRange {
                from: source.0,
                to: target.0,
                weight,
            });
        }
        self.labels.entry(source.clone()).or_insert(None);
        self.labels.entry(target.clone()).or_insert(None);
        match self.edges.entry((source, target)) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(weight);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => match self.policy {
                DuplicatePolicy::Reject => {
                    let (s, t) = slot.key().clone();
                    return Err(WordNetError::DuplicateEdge { from: s.0, to: t.0 });
                }
                DuplicatePolicy::MergeMax => {
                    let w = slot.get_mut();
                    *w = w.max(weight);
                }
            },
        }
        Ok(())
    }

    pub fn build(self) -> WordNet {
        let ids: Vec<WordId> = self.labels.keys().cloned().collect();
        let labels: Vec<Option<String>> = self.labels.into_values().collect();
        let index: BTreeMap<WordId, usize> =
            ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();
        let edges = self
            .edges
            .into_iter()
            .map(|((s, t), weight)| Reference {
                source: index[&s],
                target: index[&t],
                weight,
            })
            .collect();
        WordNet::from_parts(ids, labels, index, edges)
    }
}

/// Immutable directed weighted reference network.
#[derive(Debug, Clone)]
pub struct WordNet {
    ids: Vec<WordId>,
    labels: Vec<Option<String>>,
    index: BTreeMap<WordId, usize>,
    /// Sorted by `(source, target)`.
    edges: Vec<Reference>,
    /// Per node: `(target, weight)` sorted by target.
    outgoing: Vec<Vec<(usize, f64)>>,
    /// Per node: `(source, weight)` sorted by source.
    incoming: Vec<Vec<(usize, f64)>>,
}

impl WordNet {
    fn from_parts(
        ids: Vec<WordId>,
        labels: Vec<Option<String>>,
        index: BTreeMap<WordId, usize>,
        mut edges: Vec<Reference>,
    ) -> Self {
        edges.sort_by_key(|a| (a.source, a.target));
        let n = ids.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for e in &edges {
            outgoing[e.source].push((e.target, e.weight));
            incoming[e.target].push((e.source, e.weight));
        }
        for list in &mut incoming {
            list.sort_by_key(|&(s, _)| s);
        }
        WordNet {
            ids,
            labels,
            index,
            edges,
            outgoing,
            incoming,
        }
    }

    pub fn empty() -> Self {
        WordNetBuilder::new().build()
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Node ids in ascending order; position is the node index.
    pub fn ids(&self) -> &[WordId] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> &WordId {
        &self.ids[index]
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels[index].as_deref()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn edges(&self) -> &[Reference] {
        &self.edges
    }

    /// Nodes referred to by `index`, with edge weights.
    pub fn references(&self, index: usize) -> &[(usize, f64)] {
        &self.outgoing[index]
    }

    /// Nodes that refer to `index`, with edge weights.
    pub fn referrers(&self, index: usize) -> &[(usize, f64)] {
        &self.incoming[index]
    }

    pub fn in_degree(&self, index: usize) -> usize {
        self.incoming[index].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.incoming.iter().map(Vec::len).collect()
    }

    /// Maximum in-degree over all nodes, 0 for an edgeless net.
    pub fn max_ref(&self) -> usize {
        self.incoming.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let in_degree = self
            .ids
            .iter()
            .cloned()
            .zip(self.incoming.iter().map(Vec::len))
            .collect();
        DegreeSummary {
            in_degree,
            max_ref: self.max_ref(),
        }
    }

    /// Same nodes with every reference reversed, so edges run in the
    /// direction influence propagates (referenced -> referrer).
    pub fn influence_view(&self) -> WordNet {
        let edges = self
            .edges
            .iter()
            .map(|e| Reference {
                source: e.target,
                target: e.source,
                weight: e.weight,
            })
            .collect();
        WordNet::from_parts(self.ids.clone(), self.labels.clone(), self.index.clone(), edges)
    }

    /// Induced subgraph on the nodes for which `keep` returns true.
    pub fn induced_subgraph(&self, mut keep: impl FnMut(usize) -> bool) -> WordNet {
        let kept: Vec<bool> = (0..self.node_count()).map(&mut keep).collect();
        let mut remap = vec![usize::MAX; self.node_count()];
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        for (i, _) in kept.iter().enumerate().filter(|(_, &k)| k) {
            remap[i] = ids.len();
            ids.push(self.ids[i].clone());
            labels.push(self.labels[i].clone());
        }
        let index = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| kept[e.source] && kept[e.target])
            .map(|e| Reference {
                source: remap[e.source],
                target: remap[e.target],
                weight: e.weight,
            })
            .collect();
        WordNet::from_parts(ids, labels, index, edges)
    }

    /// Edges as `(source id, target id, weight)` triples in canonical order.
    pub fn edge_triples(&self) -> impl Iterator<Item = (&WordId, &WordId, f64)> + '_ {
        self.edges
            .iter()
            .map(move |e| (&self.ids[e.source], &self.ids[e.target], e.weight))
    }
}

/// In-degree of every node and the maximum among them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub in_degree: BTreeMap<WordId, usize>,
    pub max_ref: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::four_node;

    #[test]
    fn four_node_degrees() {
        let net = four_node();
        assert_eq!(net.node_count(), 4);
        assert_eq!(net.edge_count(), 4);
        let summary = net.degree_summary();
        let got: Vec<(String, usize)> = summary
            .in_degree
            .iter()
            .map(|(k, &v)| (k.to_string(), v))
            .collect();
        assert_eq!(
            got,
            vec![("A".into(), 3), ("B".into(), 1), ("C".into(), 0), ("D".into(), 0)]
        );
        assert_eq!(summary.max_ref, 3);
    }

    #[test]
    fn empty_net_summary() {
        let summary = WordNet::empty().degree_summary();
        assert!(summary.in_degree.is_empty());
        assert_eq!(summary.max_ref, 0);
    }

    #[test]
    fn star_hub_degree() {
        let mut b = WordNetBuilder::new();
        for i in 0..7 {
            b.add_edge(&format!("leaf{i}"), "hub", 1.0).unwrap();
        }
        let net = b.build();
        let hub = net.index_of("hub").unwrap();
        assert_eq!(net.in_degree(hub), 7);
        assert_eq!(net.max_ref(), 7);
    }

    #[test]
    fn rejects_self_reference() {
        let mut b = WordNetBuilder::new();
        assert!(matches!(
            b.add_edge("A", "A", 1.0),
            Err(WordNetError::SelfReference(id)) if id == "A"
        ));
    }

    #[test]
    fn rejects_duplicates_unless_merging() {
        let mut b = WordNetBuilder::new();
        b.add_edge("B", "A", 0.2).unwrap();
        assert!(matches!(
            b.add_edge("B", "A", 0.3),
            Err(WordNetError::DuplicateEdge { .. })
        ));

        let mut b = WordNetBuilder::new().duplicate_policy(DuplicatePolicy::MergeMax);
        b.add_edge("B", "A", 0.2).unwrap();
        b.add_edge("B", "A", 0.7).unwrap();
        b.add_edge("B", "A", 0.4).unwrap();
        let net = b.build();
        assert_eq!(net.edge_count(), 1);
        assert_eq!(net.edges()[0].weight, 0.7);
    }

    #[test]
    fn rejects_bad_weights_and_ids() {
        let mut b = WordNetBuilder::new();
        assert!(matches!(
            b.add_edge("B", "A", 1.5),
            Err(WordNetError::WeightOutOfRange { .. })
        ));
        assert!(matches!(
            b.add_edge("B", "A", f64::NAN),
            Err(WordNetError::WeightOutOfRange { .. })
        ));
        assert!(matches!(b.add_edge("", "A", 1.0), Err(WordNetError::EmptyId)));
    }

    #[test]
    fn influence_view_reverses() {
        let mut b = WordNetBuilder::new();
        b.add_edge("B", "A", 0.5).unwrap();
        let view = b.build().influence_view();
        let triples: Vec<_> = view
            .edge_triples()
            .map(|(s, t, w)| (s.to_string(), t.to_string(), w))
            .collect();
        assert_eq!(triples, vec![("A".to_string(), "B".to_string(), 0.5)]);
        assert_eq!(WordNet::empty().influence_view().node_count(), 0);
    }

    #[test]
    fn isolated_nodes_and_labels() {
        let mut b = WordNetBuilder::new();
        b.add_edge("B", "A", 1.0).unwrap();
        b.add_node("A", Some("alpha".into())).unwrap();
        b.add_node("Z", None).unwrap();
        let net = b.build();
        assert_eq!(net.node_count(), 3);
        assert_eq!(net.label(net.index_of("A").unwrap()), Some("alpha"));
        assert_eq!(net.in_degree(net.index_of("Z").unwrap()), 0);
    }

    #[test]
    fn induced_subgraph_filters_edges() {
        let mut b = WordNetBuilder::new();
        b.add_edge("C", "B", 1.0).unwrap();
        b.add_edge("B", "A", 1.0).unwrap();
        let net = b.build();
        let sub = net.induced_subgraph(|i| net.id(i).as_str() != "C");
        assert_eq!(sub.node_count(), 2);
        let triples: Vec<_> = sub
            .edge_triples()
            .map(|(s, t, _)| (s.to_string(), t.to_string()))
            .collect();
        assert_eq!(triples, vec![("B".to_string(), "A".to_string())]);
    }
}
