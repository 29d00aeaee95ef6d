//! Influence paths between wizwords, influence reach and wiznet coverage.
//!
//! All traversal happens in the influence view: a reference `b -> a` is
//! walked as `a -> b`. Successors in that view are a node's referrers, which
//! the net keeps sorted by id, so "smallest id first" falls out of iteration
//! order.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{ClassLabel, Classification};
use crate::wizscore::ScoreTable;
use crate::wordnet::{WordId, WordNet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node `{0}` is not a wizword")]
    NotAWizword(String),
    #[error("no score for node `{0}`")]
    MissingScore(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WizPath {
    pub nodes: Vec<WordId>,
    pub length: usize,
    pub bottleneck: f64,
}

const UNREACHED: usize = usize::MAX;

/// Influence-view distance from every node to `to`, walking only `allowed` nodes.
fn distances_to(net: &WordNet, allowed: &[bool], to: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; net.node_count()];
    dist[to] = 0;
    let mut queue = VecDeque::from([to]);
    while let Some(w) = queue.pop_front() {
        // influence predecessors of w are the nodes w references
        for &(u, _) in net.references(w) {
            if allowed[u] && dist[u] == UNREACHED {
                dist[u] = dist[w] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Fewest-edge influence path `from -> to` (at least one edge) through
/// `allowed` nodes; among those, the lexicographically smallest id sequence.
fn lexmin_shortest(net: &WordNet, allowed: &[bool], from: usize, to: usize) -> Option<Vec<usize>> {
    if !allowed[from] || !allowed[to] {
        return None;
    }
    let dist = distances_to(net, allowed, to);
    let first_hop = net
        .referrers(from)
        .iter()
        .filter(|&&(v, _)| allowed[v] && dist[v] != UNREACHED)
        .map(|&(v, _)| dist[v])
        .min()?;
    let mut remaining = first_hop + 1;
    let mut path = vec![from];
    let mut current = from;
    while remaining > 0 {
        let next = net
            .referrers(current)
            .iter()
            .map(|&(v, _)| v)
            .find(|&v| allowed[v] && dist[v] == remaining - 1)
            .expect("distance labels guarantee a successor");
        path.push(next);
        current = next;
        remaining -= 1;
    }
    Some(path)
}

fn wizword_endpoint(
    net: &WordNet,
    classification: &Classification,
    id: &str,
) -> Result<usize, PathError> {
    let index = net
        .index_of(id)
        .ok_or_else(|| PathError::UnknownNode(id.to_string()))?;
    match classification.label(id) {
        Some(ClassLabel::Wizword) => Ok(index),
        _ => Err(PathError::NotAWizword(id.to_string())),
    }
}

fn to_wizpath(net: &WordNet, path: Vec<usize>, score_of: impl Fn(usize) -> f64) -> WizPath {
    let bottleneck = path.iter().map(|&i| score_of(i)).fold(f64::INFINITY, f64::min);
    WizPath {
        length: path.len() - 1,
        nodes: path.into_iter().map(|i| net.id(i).clone()).collect(),
        bottleneck,
    }
}

/// Fewest-edge wizpath; the bottleneck uses the scores stored in the
/// classification. `from == to` asks for the shortest cycle through the node.
pub fn shortest_wizpath(
    net: &WordNet,
    classification: &Classification,
    from: &str,
    to: &str,
) -> Result<Option<WizPath>, PathError> {
    let from_i = wizword_endpoint(net, classification, from)?;
    let to_i = wizword_endpoint(net, classification, to)?;
    let allowed = vec![true; net.node_count()];
    Ok(lexmin_shortest(net, &allowed, from_i, to_i).map(|path| {
        to_wizpath(net, path, |i| {
            classification.get(net.id(i).as_str()).map_or(0.0, |e| e.score)
        })
    }))
}

/// Wizpath maximizing the minimum node score along it; ties go to fewer
/// edges, then to the lexicographically smallest id sequence.
pub fn widest_wizpath(
    net: &WordNet,
    scores: &ScoreTable,
    classification: &Classification,
    from: &str,
    to: &str,
) -> Result<Option<WizPath>, PathError> {
    let from_i = wizword_endpoint(net, classification, from)?;
    let to_i = wizword_endpoint(net, classification, to)?;
    let values = net
        .ids()
        .iter()
        .map(|id| {
            scores
                .get(id.as_str())
                .ok_or_else(|| PathError::MissingScore(id.to_string()))
        })
        .collect::<Result<Vec<f64>, _>>()?;

    // The best bottleneck is one of the node scores not above either endpoint.
    let cap = values[from_i].min(values[to_i]);
    let mut levels: Vec<f64> = values.iter().copied().filter(|&v| v <= cap).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let passes = |level: f64| {
        let allowed: Vec<bool> = values.iter().map(|&v| v >= level).collect();
        lexmin_shortest(net, &allowed, from_i, to_i)
    };
    // Feasibility is monotone in the level: find the highest feasible one.
    let (mut lo, mut hi) = (0usize, levels.len());
    let mut best = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match passes(levels[mid]) {
            Some(path) => {
                best = Some(path);
                lo = mid + 1;
            }
            None => hi = mid,
        }
    }
    Ok(best.map(|path| to_wizpath(net, path, |i| values[i])))
}

fn reachable_from(net: &WordNet, sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; net.node_count()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &(v, _) in net.referrers(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Number of distinct nodes reachable from `x` in the influence view, excluding `x`.
pub fn influence_reach(net: &WordNet, x: &str) -> Result<usize, PathError> {
    let xi = net
        .index_of(x)
        .ok_or_else(|| PathError::UnknownNode(x.to_string()))?;
    Ok(reach_count(net, xi))
}

pub(crate) fn reach_count(net: &WordNet, x: usize) -> usize {
    let mut seen = vec![false; net.node_count()];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    let mut count = 0;
    while let Some(u) = queue.pop_front() {
        for &(v, _) in net.referrers(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count
}

/// Fraction of non-wizwords reachable in the influence view from some
/// wizword. Zero when either class is empty.
pub fn wiznet_coverage(net: &WordNet, classification: &Classification) -> f64 {
    let wiz = classification.mask(net, ClassLabel::Wizword);
    let others = wiz.iter().filter(|&&w| !w).count();
    if others == 0 || others == net.node_count() {
        return 0.0;
    }
    let seen = reachable_from(net, (0..net.node_count()).filter(|&i| wiz[i]));
    let covered = (0..net.node_count()).filter(|&i| !wiz[i] && seen[i]).count();
    covered as f64 / others as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{ClassEntry, ClassificationConfig};
    use crate::testutil::{arb_net, four_node, net_from};
    use crate::wizscore::ScoreMethod;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn labelled(net: &WordNet, wiz: &[&str], scores: &[(&str, f64)]) -> (Classification, ScoreTable) {
        let score_of = |id: &str| scores.iter().find(|(k, _)| *k == id).map_or(0.5, |&(_, v)| v);
        let entries = net
            .ids()
            .iter()
            .map(|id| {
                let label = if wiz.contains(&id.as_str()) { ClassLabel::Wizword } else { ClassLabel::Plain };
                (id.clone(), ClassEntry { label, score: score_of(id.as_str()) })
            })
            .collect();
        let table: BTreeMap<WordId, f64> =
            net.ids().iter().map(|id| (id.clone(), score_of(id.as_str()))).collect();
        (
            Classification::new(entries, ClassificationConfig::default()),
            ScoreTable::from_map(ScoreMethod::Basic, table).unwrap(),
        )
    }

    fn ids(path: &WizPath) -> Vec<&str> {
        path.nodes.iter().map(WordId::as_str).collect()
    }

    #[test]
    fn shortest_follows_influence_direction() {
        let net = net_from(&[("B", "A"), ("C", "B")]);
        let (c, _) = labelled(&net, &["A", "C"], &[]);
        let path = shortest_wizpath(&net, &c, "A", "C").unwrap().unwrap();
        assert_eq!(ids(&path), vec!["A", "B", "C"]);
        assert_eq!(path.length, 2);
        assert_eq!(shortest_wizpath(&net, &c, "C", "A").unwrap(), None);
    }

    #[test]
    fn shortest_same_endpoint_needs_cycle() {
        let net = net_from(&[("B", "A"), ("C", "B")]);
        let (c, _) = labelled(&net, &["A", "C"], &[]);
        assert_eq!(shortest_wizpath(&net, &c, "A", "A").unwrap(), None);

        let net = net_from(&[("B", "A"), ("A", "B")]);
        let (c, _) = labelled(&net, &["A"], &[]);
        let cycle = shortest_wizpath(&net, &c, "A", "A").unwrap().unwrap();
        assert_eq!(ids(&cycle), vec!["A", "B", "A"]);
    }

    #[test]
    fn shortest_errors_and_disconnected() {
        let net = net_from(&[("B", "A"), ("D", "C")]);
        let (c, _) = labelled(&net, &["A", "C"], &[]);
        assert_eq!(shortest_wizpath(&net, &c, "A", "C").unwrap(), None);
        assert_eq!(
            shortest_wizpath(&net, &c, "A", "B"),
            Err(PathError::NotAWizword("B".into()))
        );
        assert_eq!(
            shortest_wizpath(&net, &c, "Q", "A"),
            Err(PathError::UnknownNode("Q".into()))
        );
    }

    #[test]
    fn shortest_lexicographic_tie_break() {
        // influence view: A->C->D and A->B->D
        let net = net_from(&[("C", "A"), ("B", "A"), ("D", "C"), ("D", "B")]);
        let (c, _) = labelled(&net, &["A", "D"], &[]);
        let path = shortest_wizpath(&net, &c, "A", "D").unwrap().unwrap();
        assert_eq!(ids(&path), vec!["A", "B", "D"]);
    }

    #[test]
    fn widest_prefers_high_bottleneck() {
        // influence view diamond: A->B->D, A->C->D
        let net = net_from(&[("B", "A"), ("C", "A"), ("D", "B"), ("D", "C")]);
        let (c, s) = labelled(&net, &["A", "D"], &[("A", 0.9), ("B", 0.2), ("C", 0.8), ("D", 0.9)]);
        let path = widest_wizpath(&net, &s, &c, "A", "D").unwrap().unwrap();
        assert_eq!(ids(&path), vec!["A", "C", "D"]);
        assert_eq!(path.bottleneck, 0.8);
    }

    #[test]
    fn widest_unique_and_missing() {
        let net = net_from(&[("B", "A"), ("C", "B")]);
        let (c, s) = labelled(&net, &["A", "C"], &[("A", 0.9), ("B", 0.1), ("C", 0.7)]);
        let path = widest_wizpath(&net, &s, &c, "A", "C").unwrap().unwrap();
        assert_eq!(ids(&path), vec!["A", "B", "C"]);
        assert_eq!(path.bottleneck, 0.1);
        assert_eq!(widest_wizpath(&net, &s, &c, "C", "A").unwrap(), None);
    }

    #[test]
    fn widest_prefers_shorter_on_equal_bottleneck() {
        // A->C directly and A->B->C, all scores equal
        let net = net_from(&[("C", "A"), ("B", "A"), ("C", "B")]);
        let (c, s) = labelled(&net, &["A", "C"], &[]);
        let path = widest_wizpath(&net, &s, &c, "A", "C").unwrap().unwrap();
        assert_eq!(ids(&path), vec!["A", "C"]);
    }

    #[test]
    fn reach_values() {
        let net = four_node();
        assert_eq!(influence_reach(&net, "A"), Ok(3));
        assert_eq!(influence_reach(&net, "C"), Ok(0));
        assert_eq!(influence_reach(&net, "B"), Ok(1));
        let chain = net_from(&[("n1", "n0"), ("n2", "n1"), ("n3", "n2"), ("n4", "n3")]);
        assert_eq!(influence_reach(&chain, "n0"), Ok(4));
        assert_eq!(influence_reach(&net, "Z"), Err(PathError::UnknownNode("Z".into())));
    }

    #[test]
    fn coverage_values() {
        let net = net_from(&[("B", "A"), ("C", "B")]);
        let (c, _) = labelled(&net, &["A"], &[]);
        assert_eq!(wiznet_coverage(&net, &c), 1.0);
        let (c, _) = labelled(&net, &["A", "B", "C"], &[]);
        assert_eq!(wiznet_coverage(&net, &c), 0.0);
        let (c, _) = labelled(&net, &[], &[]);
        assert_eq!(wiznet_coverage(&net, &c), 0.0);
        let (c, _) = labelled(&net, &["C"], &[]);
        assert_eq!(wiznet_coverage(&net, &c), 0.0);
        let (c, _) = labelled(&net, &["B"], &[]);
        assert_eq!(wiznet_coverage(&net, &c), 0.5);
    }

    /// Every simple influence path (or simple cycle when from == to).
    fn all_paths(net: &WordNet, from: usize, to: usize) -> Vec<Vec<usize>> {
        fn walk(net: &WordNet, path: &mut Vec<usize>, to: usize, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().unwrap();
            for &(v, _) in net.referrers(last) {
                if v == to {
                    let mut done = path.clone();
                    done.push(v);
                    out.push(done);
                } else if !path.contains(&v) {
                    path.push(v);
                    walk(net, path, to, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(net, &mut vec![from], to, &mut out);
        out
    }

    proptest! {
        #[test]
        fn paths_match_enumeration(
            net in arb_net(7, false),
            wiz_bits in proptest::collection::vec(any::<bool>(), 7),
            pick in (0usize..7, 0usize..7),
        ) {
            let n = net.node_count();
            let (from, to) = (pick.0 % n, pick.1 % n);
            let mut entries = BTreeMap::new();
            let mut table = BTreeMap::new();
            for (i, id) in net.ids().iter().enumerate() {
                let wiz = wiz_bits[i] || i == from || i == to;
                let score = (i as f64 * 0.37).fract();
                let label = if wiz { ClassLabel::Wizword } else { ClassLabel::Plain };
                entries.insert(id.clone(), ClassEntry { label, score });
                table.insert(id.clone(), score);
            }
            let c = Classification::new(entries, ClassificationConfig::default());
            let s = ScoreTable::from_map(ScoreMethod::Basic, table).unwrap();
            let (f, t) = (net.id(from).as_str(), net.id(to).as_str());
            let paths = all_paths(&net, from, to);
            let shortest = shortest_wizpath(&net, &c, f, t).unwrap();
            let widest = widest_wizpath(&net, &s, &c, f, t).unwrap();
            let score = |i: usize| (i as f64 * 0.37).fract();
            match paths.iter().map(|p| p.len() - 1).min() {
                None => {
                    prop_assert!(shortest.is_none());
                    prop_assert!(widest.is_none());
                }
                Some(len) => {
                    let shortest = shortest.unwrap();
                    prop_assert_eq!(shortest.length, len);
                    let best_seq = paths.iter().filter(|p| p.len() - 1 == len)
                        .map(|p| p.iter().map(|&i| net.id(i).clone()).collect::<Vec<_>>())
                        .min().unwrap();
                    prop_assert_eq!(&shortest.nodes, &best_seq);
                    let best = paths.iter()
                        .map(|p| p.iter().map(|&i| score(i)).fold(f64::INFINITY, f64::min))
                        .fold(f64::NEG_INFINITY, f64::max);
                    prop_assert_eq!(widest.unwrap().bottleneck, best);
                }
            }
        }

        #[test]
        fn coverage_bounded_and_monotone(
            net in arb_net(10, true),
            wiz_bits in proptest::collection::vec(any::<bool>(), 10),
            extra in 0usize..10,
        ) {
            let build = |bits: &[bool]| {
                let entries = net.ids().iter().enumerate().map(|(i, id)| {
                    let label = if bits[i] { ClassLabel::Wizword } else { ClassLabel::Plain };
                    (id.clone(), ClassEntry { label, score: 0.0 })
                }).collect();
                Classification::new(entries, ClassificationConfig::default())
            };
            let n = net.node_count();
            let before = wiznet_coverage(&net, &build(&wiz_bits[..n]));
            prop_assert!((0.0..=1.0).contains(&before));
            let reached = reachable_from(&net, (0..n).filter(|&i| wiz_bits[i]));
            let mut more = wiz_bits[..n].to_vec();
            more[extra % n] = true;
            let others = more.iter().filter(|&&b| !b).count();
            // promoting a node the wizwords did not already reach never lowers coverage
            if others > 0 && !reached[extra % n] {
                prop_assert!(wiznet_coverage(&net, &build(&more)) >= before);
            }
        }
    }
}
