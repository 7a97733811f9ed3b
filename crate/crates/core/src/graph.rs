//! Simple undirected graphs over dense vertex ids with bitset adjacency.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::vertex_set::VertexSet;

/// A finite simple graph on vertices `0..n`.
///
/// Adjacency rows are symmetric bit vectors with no self-loops. The closed
/// neighborhood rows `N[v]` are cached since every solver works with them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    closed: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs collapse to one edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Self::build(n, edges)
    }

    fn build<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![VertexSet::empty(n); n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        order: n,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        Ok(Self::from_rows(adjacency))
    }

    fn from_rows(adjacency: Vec<VertexSet>) -> Self {
        let closed = adjacency
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut c = row.clone();
                c.insert(v);
                c
            })
            .collect();
        Self { adjacency, closed }
    }

    /// Edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Self::new(n, std::iter::empty())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> &VertexSet {
        &self.closed[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order() && self.adjacency[a].contains(b)
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        let mut out = VertexSet::empty(self.order());
        for v in 0..self.order() {
            if self.adjacency[v].is_empty() {
                out.insert(v);
            }
        }
        out
    }

    pub fn vertex_set<I>(&self, members: I) -> Result<VertexSet, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let order = self.order();
        VertexSet::try_from_iter(order, members)
            .map_err(|vertex| GraphError::VertexOutOfRange { vertex, order })
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    fn check(&self, set: &VertexSet) -> Result<(), GraphError> {
        if set.universe() != self.order() {
            return Err(GraphError::UniverseMismatch {
                expected: self.order(),
                found: set.universe(),
            });
        }
        Ok(())
    }

    /// `N(S)`, the union of the open neighborhoods of members of `S`.
    pub fn open_neighborhood_of_set(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check(set)?;
        let mut out = VertexSet::empty(self.order());
        for v in set {
            out.union_with(&self.adjacency[v]);
        }
        Ok(out)
    }

    /// `N[S] = N(S) ∪ S`.
    pub fn closed_neighborhood_of_set(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check(set)?;
        let mut out = VertexSet::empty(self.order());
        for v in set {
            out.union_with(&self.closed[v]);
        }
        Ok(out)
    }

    pub fn is_dominating(&self, set: &VertexSet) -> Result<bool, GraphError> {
        Ok(self.closed_neighborhood_of_set(set)?.is_full())
    }

    /// The subgraph induced by `set`, relabeled to `0..|set|` in ascending order.
    ///
    /// The returned map sends old ids to new ids. An empty `set` is an error.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        self.check(set)?;
        if set.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        Ok(self.induce(set))
    }

    /// Same as [`Graph::induced_subgraph`] but returns the order-0 graph for an empty set.
    pub fn induced_subgraph_allow_empty(
        &self,
        set: &VertexSet,
    ) -> Result<InducedSubgraph, GraphError> {
        self.check(set)?;
        Ok(self.induce(set))
    }

    fn induce(&self, set: &VertexSet) -> InducedSubgraph {
        let old_ids = set.to_vec();
        let mut relabel = vec![None; self.order()];
        for (new, &old) in old_ids.iter().enumerate() {
            relabel[old] = Some(new);
        }
        let k = old_ids.len();
        let rows = old_ids
            .iter()
            .map(|&old| {
                let mut row = VertexSet::empty(k);
                for nb in self.adjacency[old].intersection(set).iter() {
                    row.insert(relabel[nb].expect("neighbor inside set"));
                }
                row
            })
            .collect();
        InducedSubgraph {
            graph: Graph::from_rows(rows),
            relabel,
            old_ids,
        }
    }

    /// Parses the `n m` header + one `u v` edge per line format.
    ///
    /// Blank lines and lines starting with `#` are skipped.
    pub fn from_adjacency_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::AdjacencyList {
            line: 0,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, content) in lines {
            let (a, b) = parse_pair(line, content)?;
            if a >= n || b >= n {
                return Err(GraphError::AdjacencyList {
                    line,
                    message: format!("endpoint out of range for n = {n}"),
                });
            }
            edges.push((a, b));
        }
        if edges.len() != m {
            return Err(GraphError::AdjacencyList {
                line: hline,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    pub fn to_adjacency_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.order(), edges.len());
        for (a, b) in edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize), GraphError> {
    let err = |message: String| GraphError::AdjacencyList { line, message };
    let mut it = content.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it
            .next()
            .ok_or_else(|| err("expected two integers".into()))?;
        tok.parse().map_err(|_| err(format!("bad integer `{tok}`")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(err("expected exactly two integers".into()));
    }
    Ok((a, b))
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges())
            .finish()
    }
}

/// Result of [`Graph::induced_subgraph`].
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `relabel[old] = Some(new)` for members of the inducing set.
    pub relabel: Vec<Option<usize>>,
    /// `old_ids[new] = old`.
    pub old_ids: Vec<usize>,
}

impl InducedSubgraph {
    /// Maps a set over the parent graph into the subgraph, dropping outside members.
    pub fn project(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.graph.order());
        for v in set {
            if let Some(new) = self.relabel.get(v).copied().flatten() {
                out.insert(new);
            }
        }
        out
    }
}
