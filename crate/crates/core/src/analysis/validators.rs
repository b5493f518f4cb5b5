//! Necessary conditions every `(t, λ)`-liking digraph satisfies.
//!
//! Each validator takes the liking property as a precondition (see
//! [`Precondition`]) and reports whether its inequality or identity holds, plus
//! enough detail to point at the offending vertex or subset. A failing
//! validator on a genuine liking digraph means a bug, not a new theorem.

use super::{AnalysisError, Precondition};
use crate::binomial::binomial;
use crate::digraph::Digraph;
use crate::vertex_set::{subsets_of_size, VertexSet};

/// `n >= t + λ` and minimum out-degree `>= t + λ - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDegreeReport {
    pub n: usize,
    pub min_out_degree: usize,
    pub holds: bool,
    /// First vertex whose out-degree is below `t + λ - 1`.
    pub offending_vertex: Option<usize>,
}

pub fn check_order_and_mindegree(
    d: &Digraph,
    t: usize,
    lambda: usize,
    pre: Precondition,
) -> Result<OrderDegreeReport, AnalysisError> {
    pre.enforce(d, t, lambda)?;
    let n = d.order();
    let (outs, _) = d.degree_sequences();
    let min_out_degree = *outs.iter().min().expect("nonempty digraph");
    let offending_vertex = outs.iter().position(|&k| k + 1 < t + lambda);
    Ok(OrderDegreeReport {
        n,
        min_out_degree,
        holds: n >= t + lambda && offending_vertex.is_none(),
        offending_vertex,
    })
}

/// Both sides of `Σ_v C(d-(v), t) = λ C(n, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
}

pub fn check_counting_identity(
    d: &Digraph,
    t: usize,
    lambda: usize,
    pre: Precondition,
) -> Result<CountingReport, AnalysisError> {
    pre.enforce(d, t, lambda)?;
    let (_, ins) = d.degree_sequences();
    let mut lhs: u128 = 0;
    for &k in &ins {
        // at most 64 terms below 2^64 each, so the sum cannot overflow u128
        lhs += u128::from(binomial(k as u64, t as u64)?);
    }
    let rhs = lambda as u128 * u128::from(binomial(d.order() as u64, t as u64)?);
    Ok(CountingReport {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Per-vertex `C(d-(v), t-1) <= C(d+(v), λ)`, tracking the tightest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialInequalityReport {
    pub holds: bool,
    /// Vertex minimizing `rhs - lhs` (first one on ties).
    pub worst_vertex: usize,
    pub worst_lhs: u64,
    pub worst_rhs: u64,
}

pub fn check_degree_binomial_inequality(
    d: &Digraph,
    t: usize,
    lambda: usize,
    pre: Precondition,
) -> Result<BinomialInequalityReport, AnalysisError> {
    pre.enforce(d, t, lambda)?;
    let (outs, ins) = d.degree_sequences();
    let mut worst: Option<(i128, usize, u64, u64)> = None;
    for v in 0..d.order() {
        let lhs = binomial(ins[v] as u64, t.saturating_sub(1) as u64)?;
        let rhs = binomial(outs[v] as u64, lambda as u64)?;
        let slack = i128::from(rhs) - i128::from(lhs);
        if worst.is_none_or(|(s, ..)| slack < s) {
            worst = Some((slack, v, lhs, rhs));
        }
    }
    let (slack, worst_vertex, worst_lhs, worst_rhs) = worst.expect("nonempty digraph");
    Ok(BinomialInequalityReport {
        holds: slack >= 0,
        worst_vertex,
        worst_lhs,
        worst_rhs,
    })
}

/// `0 <= (d+(v) - t - λ + 1)(λ - t + 1)` wherever `d+(v) <= d-(v)`, strict
/// wherever `d+(v) < d-(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToolReport {
    pub holds: bool,
    /// Vertices with `d+ <= d-`, i.e. where the inequality is asserted.
    pub checked_vertices: usize,
    pub violating_vertex: Option<usize>,
}

pub fn check_tool_inequality(
    d: &Digraph,
    t: usize,
    lambda: usize,
    pre: Precondition,
) -> Result<ToolReport, AnalysisError> {
    pre.enforce(d, t, lambda)?;
    let (outs, ins) = d.degree_sequences();
    let (t_, l_) = (t as i64, lambda as i64);
    let mut checked_vertices = 0;
    let mut violating_vertex = None;
    for v in 0..d.order() {
        let (out, inn) = (outs[v] as i64, ins[v] as i64);
        if out > inn {
            continue;
        }
        checked_vertices += 1;
        let product = (out - t_ - l_ + 1) * (l_ - t_ + 1);
        let ok = if out < inn { product > 0 } else { product >= 0 };
        if !ok && violating_vertex.is_none() {
            violating_vertex = Some(v);
        }
    }
    Ok(ToolReport {
        holds: violating_vertex.is_none(),
        checked_vertices,
        violating_vertex,
    })
}

/// `d+(v) = d-(v)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub holds: bool,
    pub offending_vertex: Option<usize>,
}

/// Requires `t >= λ + 1` or every out-degree equal to `t + λ - 1`; otherwise
/// returns [`AnalysisError::HypothesisNotMet`], which callers treat as a skip.
pub fn check_degree_balance(
    d: &Digraph,
    t: usize,
    lambda: usize,
    pre: Precondition,
) -> Result<BalanceReport, AnalysisError> {
    pre.enforce(d, t, lambda)?;
    let (outs, ins) = d.degree_sequences();
    let minimal_degrees = outs.iter().all(|&k| k + 1 == t + lambda);
    if !(t > lambda || minimal_degrees) {
        return Err(AnalysisError::HypothesisNotMet);
    }
    let offending_vertex = (0..d.order()).find(|&v| outs[v] != ins[v]);
    Ok(BalanceReport {
        holds: offending_vertex.is_none(),
        offending_vertex,
    })
}

/// Every `t - i` vertices have at least `λ + i` common out-neighbors,
/// `1 <= i < t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub holds: bool,
    /// Subset with the least slack `|CN+(S)| - (λ + i)`, its common
    /// out-neighbor count and the required bound. `None` when `t = 1`.
    pub worst: Option<(VertexSet, usize, usize)>,
}

pub fn check_subset_expansion(
    d: &Digraph,
    t: usize,
    lambda: usize,
    pre: Precondition,
) -> Result<ExpansionReport, AnalysisError> {
    pre.enforce(d, t, lambda)?;
    let mut worst: Option<(i64, VertexSet, usize, usize)> = None;
    for size in 1..t {
        let required = lambda + (t - size);
        for s in subsets_of_size(d.order(), size) {
            let count = d.common_out_unchecked(s).len();
            let slack = count as i64 - required as i64;
            if worst.is_none_or(|(w, ..)| slack < w) {
                worst = Some((slack, s, count, required));
            }
        }
    }
    Ok(ExpansionReport {
        holds: worst.is_none_or(|(slack, ..)| slack >= 0),
        worst: worst.map(|(_, s, c, r)| (s, c, r)),
    })
}

/// Every validator above, run on one digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatorSuite {
    pub order_degree: OrderDegreeReport,
    pub counting: CountingReport,
    pub binomial: BinomialInequalityReport,
    pub tool: ToolReport,
    /// `None` when the balance lemma's hypotheses do not hold.
    pub balance: Option<BalanceReport>,
    pub expansion: ExpansionReport,
}

impl ValidatorSuite {
    pub fn all_pass(&self) -> bool {
        self.order_degree.holds
            && self.counting.holds
            && self.binomial.holds
            && self.tool.holds
            && self.balance.as_ref().is_none_or(|b| b.holds)
            && self.expansion.holds
    }

    /// Names of the validators that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.order_degree.holds {
            out.push("order/min-degree");
        }
        if !self.counting.holds {
            out.push("counting identity");
        }
        if !self.binomial.holds {
            out.push("degree-binomial inequality");
        }
        if !self.tool.holds {
            out.push("tool inequality");
        }
        if self.balance.as_ref().is_some_and(|b| !b.holds) {
            out.push("degree balance");
        }
        if !self.expansion.holds {
            out.push("subset expansion");
        }
        out
    }
}

pub fn validate_all(
    d: &Digraph,
    t: usize,
    lambda: usize,
    pre: Precondition,
) -> Result<ValidatorSuite, AnalysisError> {
    pre.enforce(d, t, lambda)?;
    let assume = Precondition::Assume;
    let balance = match check_degree_balance(d, t, lambda, assume) {
        Ok(r) => Some(r),
        Err(AnalysisError::HypothesisNotMet) => None,
        Err(e) => return Err(e),
    };
    Ok(ValidatorSuite {
        order_degree: check_order_and_mindegree(d, t, lambda, assume)?,
        counting: check_counting_identity(d, t, lambda, assume)?,
        binomial: check_degree_binomial_inequality(d, t, lambda, assume)?,
        tool: check_tool_inequality(d, t, lambda, assume)?,
        balance,
        expansion: check_subset_expansion(d, t, lambda, assume)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::figure1;

    const A: Precondition = Precondition::Assume;

    fn k(n: usize) -> Digraph {
        Digraph::complete(n).unwrap()
    }

    #[test]
    fn order_and_mindegree() {
        let r = check_order_and_mindegree(&k(4), 2, 2, A).unwrap();
        assert!(r.holds);
        assert_eq!((r.n, r.min_out_degree), (4, 3));

        let r = check_order_and_mindegree(&figure1(), 2, 2, A).unwrap();
        assert!(r.holds);
        assert_eq!((r.n, r.min_out_degree), (7, 3));

        let r = check_order_and_mindegree(&k(3), 2, 1, A).unwrap();
        assert!(r.holds);
        assert_eq!((r.n, r.min_out_degree), (3, 2));

        // Forced on a non-liking digraph the bound fails and names vertex 0.
        let r = check_order_and_mindegree(&k(3), 2, 2, A).unwrap();
        assert!(!r.holds);
        assert_eq!(r.offending_vertex, Some(0));
        assert_eq!(
            check_order_and_mindegree(&k(3), 2, 2, Precondition::Verify),
            Err(AnalysisError::NotALikingDigraph { t: 2, lambda: 2 })
        );
    }

    #[test]
    fn counting_identity() {
        let r = check_counting_identity(&k(4), 2, 2, A).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (12, 12, true));
        let r = check_counting_identity(&figure1(), 2, 2, A).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (42, 42, true));
        let r = check_counting_identity(&k(5), 3, 2, A).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (20, 20, true));
    }

    #[test]
    fn degree_binomial() {
        let r = check_degree_binomial_inequality(&k(4), 2, 2, A).unwrap();
        assert!(r.holds);
        assert_eq!((r.worst_lhs, r.worst_rhs), (3, 3));

        let r = check_degree_binomial_inequality(&figure1(), 2, 2, A).unwrap();
        assert!(r.holds);
        // v1 gives C(5,1) = 5 <= C(4,2) = 6; v5 is tight at C(3,1) = C(3,2) = 3
        assert_eq!(r.worst_vertex, 4);
        assert_eq!((r.worst_lhs, r.worst_rhs), (3, 3));

        let r = check_degree_binomial_inequality(&k(6), 4, 2, A).unwrap();
        assert!(r.holds);
        assert_eq!((r.worst_lhs, r.worst_rhs), (10, 10));
    }

    #[test]
    fn tool_inequality() {
        let r = check_tool_inequality(&k(5), 2, 3, A).unwrap();
        assert!(r.holds);
        assert_eq!(r.checked_vertices, 5);

        // v2,v3,v4 have d+ = 4 > d- = 3 and are skipped.
        let r = check_tool_inequality(&figure1(), 2, 2, A).unwrap();
        assert!(r.holds);
        assert_eq!(r.checked_vertices, 4);

        assert!(check_tool_inequality(&k(4), 3, 1, A).unwrap().holds);
    }

    #[test]
    fn degree_balance() {
        assert!(check_degree_balance(&k(4), 3, 1, A).unwrap().holds);
        assert!(check_degree_balance(&k(4), 2, 2, A).unwrap().holds);
        assert_eq!(
            check_degree_balance(&figure1(), 2, 2, A),
            Err(AnalysisError::HypothesisNotMet)
        );
    }

    #[test]
    fn subset_expansion() {
        let r = check_subset_expansion(&k(5), 3, 2, A).unwrap();
        assert!(r.holds);
        // pairs: |CN+| = 3 = λ + 1; singletons: 4 = λ + 2
        let (_, count, required) = r.worst.unwrap();
        assert_eq!(count, required);

        let r = check_subset_expansion(&figure1(), 2, 2, A).unwrap();
        assert!(r.holds);
        assert_eq!(r.worst, Some((VertexSet::singleton(4), 3, 3)));

        let r = check_subset_expansion(&k(4), 3, 1, A).unwrap();
        assert!(r.holds);

        assert_eq!(
            check_subset_expansion(&k(3), 1, 2, A).unwrap(),
            ExpansionReport {
                holds: true,
                worst: None
            }
        );
    }

    #[test]
    fn suite_on_fixtures() {
        let s = validate_all(&figure1(), 2, 2, Precondition::Verify).unwrap();
        assert!(s.all_pass(), "{:?}", s.failures());
        assert!(s.balance.is_none());
        let s = validate_all(&k(6), 4, 2, Precondition::Verify).unwrap();
        assert!(s.all_pass());
        assert!(s.balance.is_some());
    }
}
