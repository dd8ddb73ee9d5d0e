use std::collections::{BTreeSet, HashMap};

use super::AnalysisError;

/// Largest node count accepted by [`query_isomorphism_check`].
pub const MAX_GRAPH_NODES: usize = 10;

/// Directed dependency graph over labelled nodes. An edge `u -> v` means the
/// output of `u` feeds the input of `v`.
///
/// Query graphs label each node with the single function it requests;
/// candidate graphs label each node with the functions its subsystem offers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionGraph {
    nodes: Vec<String>,
    labels: Vec<BTreeSet<String>>,
    adjacency: Vec<Vec<bool>>,
}

impl FunctionGraph {
    pub fn new(
        nodes: Vec<(String, BTreeSet<String>)>,
        edges: &[(String, String)],
    ) -> Result<Self, AnalysisError> {
        let mut index = HashMap::new();
        for (i, (id, _)) in nodes.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(AnalysisError::DuplicateNode(id.clone()));
            }
        }
        let n = nodes.len();
        let mut adjacency = vec![vec![false; n]; n];
        for (from, to) in edges {
            let u = *index
                .get(from)
                .ok_or_else(|| AnalysisError::UnknownNode(from.clone()))?;
            let v = *index
                .get(to)
                .ok_or_else(|| AnalysisError::UnknownNode(to.clone()))?;
            if u == v {
                return Err(AnalysisError::SelfLoop(from.clone()));
            }
            adjacency[u][v] = true;
        }
        let (nodes, labels) = nodes.into_iter().unzip();
        Ok(FunctionGraph {
            nodes,
            labels,
            adjacency,
        })
    }

    /// A request graph: one node per function, labelled with itself.
    pub fn query<I, S>(functions: I, edges: &[(String, String)]) -> Result<Self, AnalysisError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let nodes = functions
            .into_iter()
            .map(|f| {
                let f = f.as_ref().to_string();
                (f.clone(), BTreeSet::from([f]))
            })
            .collect();
        FunctionGraph::new(nodes, edges)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn label(&self, node: usize) -> &BTreeSet<String> {
        &self.labels[node]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adjacency[from][to]
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (u, row) in self.adjacency.iter().enumerate() {
            for (v, &e) in row.iter().enumerate() {
                if e {
                    out.push((self.nodes[u].clone(), self.nodes[v].clone()));
                }
            }
        }
        out
    }

    fn out_degree(&self, u: usize) -> usize {
        self.adjacency[u].iter().filter(|&&e| e).count()
    }

    fn in_degree(&self, v: usize) -> usize {
        self.adjacency.iter().filter(|row| row[v]).count()
    }
}

/// Looks for a bijection from query nodes to candidate nodes that preserves
/// edges in both directions and maps every query node onto a candidate node
/// whose label set contains the query node's labels.
///
/// Returns the witness as `(query node, candidate node)` pairs in query node
/// order, or `None` when the graphs are not isomorphic.
pub fn query_isomorphism_check(
    candidate: &FunctionGraph,
    query: &FunctionGraph,
) -> Result<Option<Vec<(String, String)>>, AnalysisError> {
    let size = candidate.len().max(query.len());
    if size > MAX_GRAPH_NODES {
        return Err(AnalysisError::Capacity {
            what: "isomorphism check node count",
            size,
            limit: MAX_GRAPH_NODES,
        });
    }
    if candidate.len() != query.len() {
        return Ok(None);
    }

    let n = query.len();
    // allowed[q][c]: labels and degrees are compatible
    let allowed: Vec<Vec<bool>> = (0..n)
        .map(|q| {
            (0..n)
                .map(|c| {
                    query.label(q).is_subset(candidate.label(c))
                        && query.out_degree(q) == candidate.out_degree(c)
                        && query.in_degree(q) == candidate.in_degree(c)
                })
                .collect()
        })
        .collect();

    fn extend(
        q: usize,
        candidate: &FunctionGraph,
        query: &FunctionGraph,
        allowed: &[Vec<bool>],
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if q == query.len() {
            return true;
        }
        for c in 0..candidate.len() {
            if used[c] || !allowed[q][c] {
                continue;
            }
            let consistent = mapping.iter().enumerate().all(|(pq, &pc)| {
                query.has_edge(q, pq) == candidate.has_edge(c, pc)
                    && query.has_edge(pq, q) == candidate.has_edge(pc, c)
            });
            if !consistent {
                continue;
            }
            mapping.push(c);
            used[c] = true;
            if extend(q + 1, candidate, query, allowed, mapping, used) {
                return true;
            }
            mapping.pop();
            used[c] = false;
        }
        false
    }

    let mut mapping = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(0, candidate, query, &allowed, &mut mapping, &mut used) {
        Ok(Some(
            mapping
                .iter()
                .enumerate()
                .map(|(q, &c)| (query.nodes[q].clone(), candidate.nodes[c].clone()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn labelled(nodes: &[(&str, &[&str])], e: &[(&str, &str)]) -> FunctionGraph {
        FunctionGraph::new(
            nodes
                .iter()
                .map(|(id, ls)| (id.to_string(), ls.iter().map(|s| s.to_string()).collect()))
                .collect(),
            &edges(e),
        )
        .unwrap()
    }

    #[test]
    fn single_node() {
        let q = FunctionGraph::query(["F2"], &[]).unwrap();
        let c = labelled(&[("SSF1", &["F1", "F2"])], &[]);
        let w = query_isomorphism_check(&c, &q).unwrap().unwrap();
        assert_eq!(w, vec![("F2".to_string(), "SSF1".to_string())]);
    }

    #[test]
    fn reversed_chain_is_rejected() {
        let q = FunctionGraph::query(["F1", "F2"], &edges(&[("F1", "F2")])).unwrap();
        let c = labelled(&[("a", &["F1"]), ("b", &["F2"])], &[("b", "a")]);
        assert_eq!(query_isomorphism_check(&c, &q).unwrap(), None);
        let c = labelled(&[("a", &["F1"]), ("b", &["F2"])], &[("a", "b")]);
        assert!(query_isomorphism_check(&c, &q).unwrap().is_some());
    }

    #[test]
    fn three_chain_inside_one_subsystem() {
        let q = FunctionGraph::query(["F1", "F2", "F3"], &edges(&[("F1", "F2"), ("F2", "F3")]))
            .unwrap();
        let c = labelled(
            &[
                ("SSF7.f3", &["F3"]),
                ("SSF7.f1", &["F1"]),
                ("SSF7.f2", &["F2"]),
            ],
            &[("SSF7.f1", "SSF7.f2"), ("SSF7.f2", "SSF7.f3")],
        );
        let w = query_isomorphism_check(&c, &q).unwrap().unwrap();
        assert_eq!(w[0], ("F1".into(), "SSF7.f1".into()));
        assert_eq!(w[2], ("F3".into(), "SSF7.f3".into()));
    }

    #[test]
    fn labels_must_be_offered() {
        let q = FunctionGraph::query(["F1"], &[]).unwrap();
        let c = labelled(&[("a", &["F2"])], &[]);
        assert_eq!(query_isomorphism_check(&c, &q).unwrap(), None);
    }

    #[test]
    fn size_mismatch_and_guard() {
        let q = FunctionGraph::query(["F1", "F2"], &[]).unwrap();
        let c = labelled(&[("a", &["F1", "F2"])], &[]);
        assert_eq!(query_isomorphism_check(&c, &q).unwrap(), None);
        let big: Vec<String> = (0..11).map(|i| format!("F{i}")).collect();
        let q = FunctionGraph::query(&big, &[]).unwrap();
        assert!(matches!(
            query_isomorphism_check(&q, &q),
            Err(AnalysisError::Capacity { limit: 10, .. })
        ));
    }

    #[test]
    fn malformed_graphs() {
        assert_eq!(
            FunctionGraph::query(["a", "a"], &[]).unwrap_err(),
            AnalysisError::DuplicateNode("a".into())
        );
        assert_eq!(
            FunctionGraph::query(["a"], &edges(&[("a", "b")])).unwrap_err(),
            AnalysisError::UnknownNode("b".into())
        );
        assert_eq!(
            FunctionGraph::query(["a"], &edges(&[("a", "a")])).unwrap_err(),
            AnalysisError::SelfLoop("a".into())
        );
    }
}
