//! Loop-free digraphs on at most 64 vertices.

use std::fmt;

use crate::vertex_set::{VertexSet, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DigraphError {
    #[error("a digraph needs at least one vertex")]
    EmptyOrder,
    #[error("order {n} exceeds the maximum of {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("loop arc at vertex {}", .vertex + 1)]
    LoopArc { vertex: usize },
    #[error("vertex {} out of range for order {n}", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate arc {} -> {}", .from + 1, .to + 1)]
    DuplicateArc { from: usize, to: usize },
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("vertex subset {} is not contained in the vertex set of order {n}", .subset.one_indexed())]
    SubsetOutOfRange { subset: VertexSet, n: usize },
    #[error("order {n} exceeds the canonical-form bound of {max}")]
    OrderTooLargeForCanon { n: usize, max: usize },
    #[error("adjacency matrix is not symmetric at ({}, {})", .row + 1, .col + 1)]
    NotSymmetric { row: usize, col: usize },
}

/// A loop-free digraph stored as out-neighborhood bitmasks.
///
/// Values are immutable once built; every constructor checks the loop and
/// range invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<VertexSet>,
}

fn check_order(n: usize) -> Result<(), DigraphError> {
    if n == 0 {
        Err(DigraphError::EmptyOrder)
    } else if n > MAX_ORDER {
        Err(DigraphError::OrderTooLarge { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

impl Digraph {
    /// Builds a digraph from an explicit arc list.
    pub fn build(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        check_order(n)?;
        let mut out = vec![VertexSet::EMPTY; n];
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(DigraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(DigraphError::LoopArc { vertex: u });
            }
            if out[u].contains(v) {
                return Err(DigraphError::DuplicateArc { from: u, to: v });
            }
            out[u].insert(v);
        }
        Ok(Digraph { out })
    }

    /// Builds a digraph from its out-neighborhood rows.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Self, DigraphError> {
        let n = rows.len();
        check_order(n)?;
        let full = VertexSet::full(n);
        for (v, row) in rows.iter().enumerate() {
            if row.contains(v) {
                return Err(DigraphError::LoopArc { vertex: v });
            }
            if let Some(bad) = row.difference(full).first() {
                return Err(DigraphError::VertexOutOfRange { vertex: bad, n });
            }
        }
        Ok(Digraph { out: rows })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<VertexSet>) -> Self {
        debug_assert!(Digraph::from_rows(rows.clone()).is_ok());
        Digraph { out: rows }
    }

    /// The complete digraph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self, DigraphError> {
        check_order(n)?;
        let full = VertexSet::full(n);
        Ok(Digraph {
            out: (0..n).map(|v| full.without(v)).collect(),
        })
    }

    /// Doubles every edge of a simple undirected graph into a 2-cycle.
    ///
    /// `adjacency` must be symmetric with an empty diagonal.
    pub fn double_graph(adjacency: &[VertexSet]) -> Result<Self, DigraphError> {
        let d = Digraph::from_rows(adjacency.to_vec())?;
        for u in 0..d.order() {
            for v in d.out[u] {
                if !d.out[v].contains(u) {
                    return Err(DigraphError::NotSymmetric { row: u, col: v });
                }
            }
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.out.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.len()).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        (0..self.order())
            .filter(|&u| self.out[u].contains(v))
            .collect()
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.out
    }

    pub fn in_rows(&self) -> Vec<VertexSet> {
        let mut cols = vec![VertexSet::EMPTY; self.order()];
        for (u, row) in self.out.iter().enumerate() {
            for v in *row {
                cols[v].insert(u);
            }
        }
        cols
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.out.iter().filter(|r| r.contains(v)).count()
    }

    /// Out-degrees and in-degrees in vertex order.
    pub fn degree_sequences(&self) -> (Vec<usize>, Vec<usize>) {
        let outs = self.out.iter().map(|r| r.len()).collect();
        let ins = self.in_rows().iter().map(|c| c.len()).collect();
        (outs, ins)
    }

    /// `Some(k)` if every vertex has out-degree and in-degree `k`.
    pub fn diregular_degree(&self) -> Option<usize> {
        let (outs, ins) = self.degree_sequences();
        let k = outs[0];
        (outs.iter().chain(&ins).all(|&d| d == k)).then_some(k)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.out
            .iter()
            .enumerate()
            .all(|(v, r)| *r == VertexSet::full(n).without(v))
    }

    /// The arc-reversed digraph.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            out: self.in_rows(),
        }
    }

    fn check_subset(&self, s: VertexSet) -> Result<(), DigraphError> {
        if s.is_empty() {
            return Err(DigraphError::EmptySubset);
        }
        if !s.is_subset(self.vertices()) {
            return Err(DigraphError::SubsetOutOfRange {
                subset: s,
                n: self.order(),
            });
        }
        Ok(())
    }

    /// Intersection of the out-neighborhoods of all members of `s`.
    pub fn common_out_neighbors(&self, s: VertexSet) -> Result<VertexSet, DigraphError> {
        self.check_subset(s)?;
        Ok(self.common_out_unchecked(s))
    }

    pub(crate) fn common_out_unchecked(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(self.vertices(), |acc, u| acc.intersection(self.out[u]))
    }

    /// Intersection of the in-neighborhoods of all members of `s`.
    pub fn common_in_neighbors(&self, s: VertexSet) -> Result<VertexSet, DigraphError> {
        self.check_subset(s)?;
        let ins = self.in_rows();
        Ok(s.iter()
            .fold(self.vertices(), |acc, u| acc.intersection(ins[u])))
    }

    /// Subdigraph induced by `s`, relabeled by ascending original index.
    pub fn induced_subdigraph(&self, s: VertexSet) -> Result<Digraph, DigraphError> {
        self.check_subset(s)?;
        let keep: Vec<usize> = s.iter().collect();
        let rows = keep
            .iter()
            .map(|&u| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.out[u].contains(v))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Ok(Digraph::from_rows_unchecked(rows))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.order());
        let mut rows = vec![VertexSet::EMPTY; self.order()];
        for (u, row) in self.out.iter().enumerate() {
            rows[perm[u]] = row.iter().map(|v| perm[v]).collect();
        }
        Digraph { out: rows }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, rows=[", self.order())?;
        for (i, r) in self.out.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}", r)?;
        }
        f.write_str("])")
    }
}
