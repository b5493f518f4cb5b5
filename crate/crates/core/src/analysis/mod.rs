//! Exact liking checks and the lemma validators built on them.
//!
//! A digraph is `(t, λ)`-liking when every `t` distinct vertices have exactly
//! `λ` common out-neighbors. All arithmetic here is exact integer arithmetic.

mod conditions;
mod validators;

use std::collections::BTreeMap;

pub use conditions::{derived_liking_digraph, theorem2_conditions, ConditionVector, DerivedLiking};
pub use validators::{
    check_counting_identity, check_degree_balance, check_degree_binomial_inequality,
    check_order_and_mindegree, check_subset_expansion, check_tool_inequality, validate_all,
    BalanceReport, BinomialInequalityReport, CountingReport, ExpansionReport, OrderDegreeReport,
    ToolReport, ValidatorSuite,
};

use crate::binomial::ArithmeticOverflow;
use crate::digraph::{Digraph, DigraphError};
use crate::vertex_set::{subsets_of_size, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("bad parameters t={t}, lambda={lambda} for order {n}: {reason}")]
    BadParameters {
        t: usize,
        lambda: usize,
        n: usize,
        reason: &'static str,
    },
    #[error("digraph is not ({t},{lambda})-liking")]
    NotALikingDigraph { t: usize, lambda: usize },
    #[error("lemma hypotheses do not hold; check skipped")]
    HypothesisNotMet,
    #[error("subset size {size} must satisfy 1 <= size < t = {t}")]
    BadSubsetSize { size: usize, t: usize },
    #[error(transparent)]
    ArithmeticOverflow(#[from] ArithmeticOverflow),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// How a validator treats its "the digraph is liking" precondition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precondition {
    /// The caller already checked it.
    #[default]
    Assume,
    /// Re-run [`check_liking`] first and fail with `NotALikingDigraph`.
    Verify,
}

impl Precondition {
    pub(crate) fn enforce(self, d: &Digraph, t: usize, lambda: usize) -> Result<(), AnalysisError> {
        if self == Precondition::Verify && !check_liking(d, t, lambda)?.holds {
            return Err(AnalysisError::NotALikingDigraph { t, lambda });
        }
        Ok(())
    }
}

/// A `t`-subset whose common out-neighborhood has the wrong size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub subset: VertexSet,
    pub common_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LikingReport {
    pub t: usize,
    pub lambda: usize,
    pub holds: bool,
    /// First violating subset in colex order; `None` iff `holds`.
    pub witness: Option<Witness>,
}

fn check_t(d: &Digraph, t: usize, lambda: usize) -> Result<(), AnalysisError> {
    let n = d.order();
    let reason = if t == 0 {
        "t must be at least 1"
    } else if t > n {
        "t exceeds the number of vertices"
    } else {
        return Ok(());
    };
    Err(AnalysisError::BadParameters {
        t,
        lambda,
        n,
        reason,
    })
}

pub fn check_liking(d: &Digraph, t: usize, lambda: usize) -> Result<LikingReport, AnalysisError> {
    check_t(d, t, lambda)?;
    if lambda == 0 {
        return Err(AnalysisError::BadParameters {
            t,
            lambda,
            n: d.order(),
            reason: "lambda must be at least 1",
        });
    }
    let witness = subsets_of_size(d.order(), t).find_map(|s| {
        let common_out = d.common_out_unchecked(s).len();
        (common_out != lambda).then_some(Witness {
            subset: s,
            common_out,
        })
    });
    Ok(LikingReport {
        t,
        lambda,
        holds: witness.is_none(),
        witness,
    })
}

/// Distribution of `|CN+(S)|` over all `t`-subsets `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LikingProfile {
    pub t: usize,
    pub min_cn: usize,
    pub max_cn: usize,
    pub histogram: BTreeMap<usize, u64>,
}

impl LikingProfile {
    pub fn subsets(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn is_point_mass_at(&self, lambda: usize) -> bool {
        self.min_cn == lambda && self.max_cn == lambda
    }
}

pub fn liking_profile(d: &Digraph, t: usize) -> Result<LikingProfile, AnalysisError> {
    check_t(d, t, 0)?;
    let mut histogram = BTreeMap::new();
    for s in subsets_of_size(d.order(), t) {
        *histogram
            .entry(d.common_out_unchecked(s).len())
            .or_insert(0) += 1;
    }
    Ok(LikingProfile {
        t,
        min_cn: *histogram.keys().next().expect("t <= n gives a subset"),
        max_cn: *histogram.keys().next_back().expect("t <= n gives a subset"),
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::figure1;

    #[test]
    fn complete_digraphs() {
        let k4 = Digraph::complete(4).unwrap();
        assert!(check_liking(&k4, 2, 2).unwrap().holds);
        let r = check_liking(&k4, 2, 1).unwrap();
        assert!(!r.holds);
        assert_eq!(
            r.witness,
            Some(Witness {
                subset: VertexSet::from_iter([0, 1]),
                common_out: 2
            })
        );
        assert!(
            check_liking(&Digraph::complete(4).unwrap(), 3, 1)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn figure1_is_two_two_liking() {
        let r = check_liking(&figure1(), 2, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn witness_is_colex_first() {
        // Without v3 -> v1, {v1,v3} still has 2 common out-neighbors but
        // {v2,v3} drops to {v4}.
        let d = figure1();
        let arcs: Vec<_> = d.arcs().filter(|&a| a != (2, 0)).collect();
        let broken = Digraph::build(7, &arcs).unwrap();
        let w = check_liking(&broken, 2, 2).unwrap().witness.unwrap();
        assert_eq!(w.subset, VertexSet::from_iter([1, 2]));
        assert_eq!(w.common_out, 1);
    }

    #[test]
    fn parameter_errors() {
        let k3 = Digraph::complete(3).unwrap();
        assert!(matches!(
            check_liking(&k3, 4, 1),
            Err(AnalysisError::BadParameters { .. })
        ));
        assert!(matches!(
            check_liking(&k3, 2, 0),
            Err(AnalysisError::BadParameters { .. })
        ));
        assert!(matches!(
            check_liking(&k3, 0, 1),
            Err(AnalysisError::BadParameters { .. })
        ));
        // t = 1 is allowed: (1, lambda)-liking means every out-degree is lambda.
        assert!(check_liking(&k3, 1, 2).unwrap().holds);
    }

    #[test]
    fn profiles() {
        let p = liking_profile(&Digraph::complete(5).unwrap(), 2).unwrap();
        assert_eq!(p.histogram, BTreeMap::from([(3, 10)]));
        assert!(p.is_point_mass_at(3));

        let p = liking_profile(&figure1(), 2).unwrap();
        assert_eq!(p.histogram, BTreeMap::from([(2, 21)]));

        let empty = Digraph::build(3, &[]).unwrap();
        let p = liking_profile(&empty, 2).unwrap();
        assert_eq!(p.histogram, BTreeMap::from([(0, 3)]));
        assert_eq!(p.subsets(), 3);

        let p = liking_profile(&figure1(), 1).unwrap();
        assert_eq!(p.histogram, BTreeMap::from([(3, 1), (4, 6)]));
    }
}
