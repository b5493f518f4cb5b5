//! The five equivalent characterizations of the complete digraph among
//! liking digraphs, and the reduced liking digraphs on common
//! out-neighborhoods.

use super::{check_liking, AnalysisError};
use crate::canon::{canonical_form, CANON_MAX_ORDER};
use crate::digraph::Digraph;
use crate::vertex_set::VertexSet;

/// Truth values of conditions (a)-(e) for a `(t, λ)`-liking digraph.
///
/// - (a) isomorphic to the complete digraph on `t + λ` vertices
/// - (b) also `(t-1, λ+1)`-liking
/// - (c) every out-degree equals `t + λ - 1`
/// - (d) some vertex dominates all others
/// - (e) diregular
///
/// (a), (b), (c) are always equivalent; (d) joins them unless
/// `(t, λ) = (2, 1)` and (e) joins them when `t >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionVector {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
    pub d_applicable: bool,
    pub e_applicable: bool,
}

impl ConditionVector {
    /// The applicable conditions all agree.
    pub fn coherent(&self) -> bool {
        self.a == self.b
            && self.a == self.c
            && (!self.d_applicable || self.a == self.d)
            && (!self.e_applicable || self.a == self.e)
    }

    /// Every applicable condition is false.
    pub fn all_applicable_false(&self) -> bool {
        !self.a
            && !self.b
            && !self.c
            && !(self.d_applicable && self.d)
            && !(self.e_applicable && self.e)
    }
}

pub fn theorem2_conditions(
    d: &Digraph,
    t: usize,
    lambda: usize,
) -> Result<ConditionVector, AnalysisError> {
    let n = d.order();
    if t < 2 || t > n || lambda == 0 {
        return Err(AnalysisError::BadParameters {
            t,
            lambda,
            n,
            reason: "conditions need 2 <= t <= n and lambda >= 1",
        });
    }
    let target = t + lambda;
    let a = n == target
        && if n <= CANON_MAX_ORDER {
            canonical_form(d)? == canonical_form(&Digraph::complete(target)?)?
        } else {
            d.is_complete()
        };
    let b = check_liking(d, t - 1, lambda + 1)?.holds;
    let (outs, _) = d.degree_sequences();
    let c = outs.iter().all(|&k| k + 1 == target);
    let dominating = (0..n).any(|v| outs[v] + 1 == n);
    let e = d.diregular_degree().is_some_and(|k| k > 0);
    Ok(ConditionVector {
        a,
        b,
        c,
        d: dominating,
        e,
        d_applicable: (t, lambda) != (2, 1),
        e_applicable: t >= 3,
    })
}

/// A reduced liking digraph and whether it passed its own liking check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedLiking {
    pub digraph: Digraph,
    pub t: usize,
    pub lambda: usize,
    pub holds: bool,
}

/// The subdigraph induced by `CN+(s)`, expected to be `(t - |s|, λ)`-liking.
pub fn derived_liking_digraph(
    d: &Digraph,
    t: usize,
    lambda: usize,
    s: VertexSet,
) -> Result<DerivedLiking, AnalysisError> {
    if s.is_empty() || s.len() >= t {
        return Err(AnalysisError::BadSubsetSize { size: s.len(), t });
    }
    let common = d.common_out_neighbors(s)?;
    let reduced_t = t - s.len();
    let digraph = d.induced_subdigraph(common)?;
    let holds = reduced_t <= digraph.order() && check_liking(&digraph, reduced_t, lambda)?.holds;
    Ok(DerivedLiking {
        digraph,
        t: reduced_t,
        lambda,
        holds,
    })
}
