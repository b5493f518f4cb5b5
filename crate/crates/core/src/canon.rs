//! Canonical labeling for small digraphs.
//!
//! The search starts from the vertex classes of equal `(d+, d-)`, refines them
//! to an equitable ordered partition, then individualizes one vertex of the
//! first non-singleton cell at a time. Every leaf is a discrete partition,
//! i.e. a relabeling; the key is the lexicographically smallest
//! row-concatenated adjacency bitstring among the leaves. Branches whose
//! individualized vertex is a twin of an already explored one are skipped,
//! since swapping twins is an automorphism that maps one subtree onto the
//! other.

use std::cmp::Ordering;
use std::fmt;

use crate::digraph::{Digraph, DigraphError};
use crate::io::row_concatenated_bits;
use crate::vertex_set::VertexSet;

/// Orders above this bound are rejected by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 12;

/// Labeling-invariant key: `<n>:<row-concatenated bits>` of the canonical
/// representative. Equal keys iff isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    /// Parses a catalog line back into a key, validating its shape.
    pub fn parse(line: &str) -> Option<CanonicalKey> {
        let (n, bits) = line.trim().split_once(':')?;
        let n: usize = n.parse().ok()?;
        (n >= 1 && bits.len() == n * n && bits.bytes().all(|b| b == b'0' || b == b'1'))
            .then(|| CanonicalKey(line.trim().to_string()))
    }

    /// The representative digraph this key spells out.
    pub fn to_digraph(&self) -> Result<Digraph, DigraphError> {
        let (n, bits) = self.0.split_once(':').expect("validated key");
        let n: usize = n.parse().expect("validated key");
        let rows = bits
            .as_bytes()
            .chunks(n)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b == b'1')
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Digraph::from_rows(rows)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.0)
    }
}

pub fn canonical_form(d: &Digraph) -> Result<CanonicalKey, DigraphError> {
    Ok(key_of(&canonical_digraph(d)?))
}

/// The canonical representative of the isomorphism class of `d`.
pub fn canonical_digraph(d: &Digraph) -> Result<Digraph, DigraphError> {
    canonical_digraph_bounded(d, CANON_MAX_ORDER)
}

/// [`canonical_form`] with an explicit order bound, for callers (the
/// enumerator) whose inputs are known to refine well.
pub fn canonical_form_bounded(d: &Digraph, max: usize) -> Result<CanonicalKey, DigraphError> {
    let rep = canonical_digraph_bounded(d, max)?;
    Ok(key_of(&rep))
}

fn key_of(rep: &Digraph) -> CanonicalKey {
    CanonicalKey(format!("{}:{}", rep.order(), row_concatenated_bits(rep)))
}

fn canonical_digraph_bounded(d: &Digraph, max: usize) -> Result<Digraph, DigraphError> {
    let n = d.order();
    if n > max {
        return Err(DigraphError::OrderTooLargeForCanon { n, max });
    }
    let mut search = Search {
        out: d.rows().iter().map(|r| r.mask()).collect(),
        inc: d.in_rows().iter().map(|r| r.mask()).collect(),
        best: None,
    };
    let cells = search.refine(search.degree_cells());
    search.descend(cells);
    let (_, perm) = search.best.expect("at least one leaf");
    Ok(d.permuted(&perm))
}

pub fn is_isomorphic(a: &Digraph, b: &Digraph) -> Result<bool, DigraphError> {
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

type Cells = Vec<Vec<usize>>;

struct Search {
    out: Vec<u64>,
    inc: Vec<u64>,
    /// Best leaf so far: bit-reversed relabeled rows, and the relabeling.
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search {
    fn degree_cells(&self) -> Cells {
        let mut verts: Vec<usize> = (0..self.out.len()).collect();
        verts.sort_by_key(|&v| (self.out[v].count_ones(), self.inc[v].count_ones(), v));
        let mut cells: Cells = Vec::new();
        let mut last = None;
        for v in verts {
            let key = (self.out[v].count_ones(), self.inc[v].count_ones());
            if last == Some(key) {
                cells.last_mut().unwrap().push(v);
            } else {
                cells.push(vec![v]);
                last = Some(key);
            }
        }
        cells
    }

    /// Splits cells by neighbor counts into every cell until stable.
    fn refine(&self, mut cells: Cells) -> Cells {
        loop {
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            let signature = |v: usize| -> Vec<(u32, u32)> {
                masks
                    .iter()
                    .map(|&m| {
                        (
                            (self.out[v] & m).count_ones(),
                            (self.inc[v] & m).count_ones(),
                        )
                    })
                    .collect()
            };
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(u32, u32)>, usize)> =
                    cell.iter().map(|&v| (signature(v), v)).collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn twins(&self, u: usize, w: usize) -> bool {
        let bu = 1u64 << u;
        let bw = 1u64 << w;
        let strip = !(bu | bw);
        (self.out[u] & bw != 0) == (self.out[w] & bu != 0)
            && self.out[u] & strip == self.out[w] & strip
            && self.inc[u] & strip == self.inc[w] & strip
    }

    fn descend(&mut self, cells: Cells) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            let child = self.refine(child);
            self.descend(child);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let n = self.out.len();
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let mut perm = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        // Bit-reversal turns "column 0 first" string order into integer order.
        let mut rows = Vec::with_capacity(n);
        let mut verdict = Ordering::Equal;
        for (pos, &v) in order.iter().enumerate() {
            let mut row = 0u64;
            for u in VertexSet::from_mask(self.out[v]) {
                row |= 1 << perm[u];
            }
            let row = row.reverse_bits();
            if verdict == Ordering::Equal {
                if let Some((best, _)) = &self.best {
                    verdict = row.cmp(&best[pos]);
                    if verdict == Ordering::Greater {
                        return;
                    }
                } else {
                    verdict = Ordering::Less;
                }
            }
            rows.push(row);
        }
        if verdict == Ordering::Less {
            self.best = Some((rows, perm));
        }
    }
}
