//! Symmetric t-designs from diregular liking digraphs.
//!
//! Taking the vertices of a `k`-diregular `(t, λ)`-liking digraph as
//! varieties and its in-neighborhoods as blocks gives a `t-(n, k, λ)` design
//! with one block per vertex, hence symmetric.

use crate::analysis::{check_liking, AnalysisError};
use crate::binomial::{binomial, ArithmeticOverflow};
use crate::digraph::Digraph;
use crate::vertex_set::{subsets_of_size, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("digraph is not diregular at vertex {}", .vertex + 1)]
    NotDiregular { vertex: usize },
    #[error("digraph is not ({t},{lambda})-liking")]
    NotALikingDigraph { t: usize, lambda: usize },
    #[error("bad design parameters: {0}")]
    BadParameters(String),
    #[error("{what} = {numerator}/{denominator} is not an integer")]
    NonIntegerCount {
        what: &'static str,
        numerator: u128,
        denominator: u128,
    },
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("design file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    ArithmeticOverflow(#[from] ArithmeticOverflow),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// A `t-(v, k, λ)` design candidate. Blocks form a multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub blocks: Vec<VertexSet>,
}

impl Design {
    fn check_parameters(&self) -> Result<(), DesignError> {
        let Design {
            t, v, k, lambda, ..
        } = *self;
        if !(v > k && k >= t && t >= 1 && lambda >= 1) || v > 64 {
            return Err(DesignError::BadParameters(format!(
                "need v > k >= t >= 1, lambda >= 1 and v <= 64; got t={t} v={v} k={k} lambda={lambda}"
            )));
        }
        Ok(())
    }
}

/// Varieties are the vertices, blocks the in-neighborhoods `N-(0), .., N-(n-1)`.
pub fn extract_design(d: &Digraph, t: usize, lambda: usize) -> Result<Design, DesignError> {
    if !check_liking(d, t, lambda)?.holds {
        return Err(DesignError::NotALikingDigraph { t, lambda });
    }
    let (outs, ins) = d.degree_sequences();
    let k = outs[0];
    if let Some(vertex) = (0..d.order()).find(|&v| outs[v] != k || ins[v] != k) {
        return Err(DesignError::NotDiregular { vertex });
    }
    Ok(Design {
        t,
        v: d.order(),
        k,
        lambda,
        blocks: d.in_rows(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignViolation {
    /// Block `block` contains a variety outside `0..v`.
    VarietyOutOfRange {
        block: usize,
    },
    BlockSize {
        block: usize,
        size: usize,
    },
    /// A `t`-subset lies in `count != λ` blocks.
    SubsetCount {
        subset: VertexSet,
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignVerdict {
    pub holds: bool,
    /// First violation found; `None` iff `holds`.
    pub violation: Option<DesignViolation>,
}

/// Checks the block-size and `t`-subset axioms exhaustively.
pub fn verify_design(design: &Design) -> Result<DesignVerdict, DesignError> {
    design.check_parameters()?;
    let varieties = VertexSet::full(design.v);
    let violation = design
        .blocks
        .iter()
        .enumerate()
        .find_map(|(i, b)| {
            if !b.is_subset(varieties) {
                Some(DesignViolation::VarietyOutOfRange { block: i })
            } else if b.len() != design.k {
                Some(DesignViolation::BlockSize {
                    block: i,
                    size: b.len(),
                })
            } else {
                None
            }
        })
        .or_else(|| {
            subsets_of_size(design.v, design.t).find_map(|s| {
                let count = design.blocks.iter().filter(|b| s.is_subset(**b)).count();
                (count != design.lambda)
                    .then_some(DesignViolation::SubsetCount { subset: s, count })
            })
        });
    Ok(DesignVerdict {
        holds: violation.is_none(),
        violation,
    })
}

/// Block count and replication number from the parameters, checked against
/// the actual block list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignCounts {
    /// `λ C(v,t) / C(k,t)`.
    pub b: u128,
    /// `λ C(v-1,t-1) / C(k-1,t-1)`.
    pub r: u128,
    pub is_symmetric: bool,
    pub actual_blocks: usize,
    /// Number of blocks containing each variety.
    pub replication: Vec<usize>,
    /// Actual block count is `b`, every variety is in `r` blocks, and in
    /// `k` blocks when symmetric.
    pub consistent: bool,
}

fn exact_ratio(
    what: &'static str,
    numerator: u128,
    denominator: u128,
) -> Result<u128, DesignError> {
    if denominator == 0 || !numerator.is_multiple_of(denominator) {
        return Err(DesignError::NonIntegerCount {
            what,
            numerator,
            denominator,
        });
    }
    Ok(numerator / denominator)
}

fn block_count(design: &Design) -> Result<u128, DesignError> {
    let (t, v, k) = (design.t as u64, design.v as u64, design.k as u64);
    exact_ratio(
        "b",
        design.lambda as u128 * u128::from(binomial(v, t)?),
        u128::from(binomial(k, t)?),
    )
}

pub fn design_counts(design: &Design) -> Result<DesignCounts, DesignError> {
    design.check_parameters()?;
    let (t, v, k) = (design.t as u64, design.v as u64, design.k as u64);
    let b = block_count(design)?;
    let r = exact_ratio(
        "r",
        design.lambda as u128 * u128::from(binomial(v - 1, t - 1)?),
        u128::from(binomial(k - 1, t - 1)?),
    )?;
    let is_symmetric = b == v as u128;
    let replication: Vec<usize> = (0..design.v)
        .map(|x| design.blocks.iter().filter(|bl| bl.contains(x)).count())
        .collect();
    let consistent = design.blocks.len() as u128 == b
        && replication.iter().all(|&c| c as u128 == r)
        && (!is_symmetric || replication.iter().all(|&c| c == design.k));
    Ok(DesignCounts {
        b,
        r,
        is_symmetric,
        actual_blocks: design.blocks.len(),
        replication,
        consistent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HughesReport {
    pub is_symmetric: bool,
    /// `k >= v - 1`, or vacuously true for a non-symmetric design.
    pub holds: bool,
    /// `k == v - 1`.
    pub tight: bool,
}

/// A symmetric `t`-design with `t >= 3` has `k >= v - 1`.
pub fn check_hughes_bound(design: &Design) -> Result<HughesReport, DesignError> {
    design.check_parameters()?;
    if design.t < 3 {
        return Err(DesignError::NotApplicable("the bound needs t >= 3"));
    }
    let is_symmetric = matches!(block_count(design), Ok(b) if b == design.v as u128);
    Ok(HughesReport {
        is_symmetric,
        holds: !is_symmetric || design.k + 1 >= design.v,
        tight: design.k + 1 == design.v,
    })
}

/// Line 1 `t v k lambda`, then one sorted, space-separated, 1-indexed block
/// per line.
pub fn write_design(design: &Design) -> String {
    let mut s = format!("{} {} {} {}\n", design.t, design.v, design.k, design.lambda);
    for b in &design.blocks {
        let items: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
        s.push_str(&items.join(" "));
        s.push('\n');
    }
    s
}

pub fn read_design(text: &str) -> Result<Design, DesignError> {
    let perr = |line: usize, message: String| DesignError::Parse { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| perr(1, format!("bad number {x:?}"))))
        .collect::<Result<_, _>>()?;
    let [t, v, k, lambda] = nums[..] else {
        return Err(perr(1, "expected `t v k lambda`".into()));
    };
    let mut blocks = Vec::new();
    for (line, l) in lines {
        if l.is_empty() {
            continue;
        }
        let mut block = VertexSet::EMPTY;
        for x in l.split_whitespace() {
            let x: usize = x
                .parse()
                .map_err(|_| perr(line, format!("bad variety {x:?}")))?;
            if x == 0 || x > v || x > 64 {
                return Err(perr(line, format!("variety {x} out of range 1..={v}")));
            }
            block.insert(x - 1);
        }
        blocks.push(block);
    }
    Ok(Design {
        t,
        v,
        k,
        lambda,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::figure1;

    fn k(n: usize) -> Digraph {
        Digraph::complete(n).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn complete_four() {
        let d = extract_design(&k(4), 2, 2).unwrap();
        assert_eq!((d.t, d.v, d.k, d.lambda), (2, 4, 3, 2));
        assert_eq!(
            d.blocks,
            vec![
                set(&[1, 2, 3]),
                set(&[0, 2, 3]),
                set(&[0, 1, 3]),
                set(&[0, 1, 2])
            ]
        );
        assert!(verify_design(&d).unwrap().holds);
        let c = design_counts(&d).unwrap();
        assert_eq!((c.b, c.r, c.is_symmetric, c.consistent), (4, 3, true, true));
        assert!(matches!(
            check_hughes_bound(&d),
            Err(DesignError::NotApplicable(_))
        ));
    }

    #[test]
    fn complete_three() {
        let d = extract_design(&k(3), 2, 1).unwrap();
        assert_eq!(d.blocks, vec![set(&[1, 2]), set(&[0, 2]), set(&[0, 1])]);
        let c = design_counts(&d).unwrap();
        assert_eq!((c.b, c.r, c.is_symmetric), (3, 2, true));
    }

    #[test]
    fn figure1_not_diregular() {
        assert_eq!(
            extract_design(&figure1(), 2, 2),
            Err(DesignError::NotDiregular { vertex: 0 })
        );
        assert_eq!(
            extract_design(&k(4), 2, 1),
            Err(DesignError::NotALikingDigraph { t: 2, lambda: 1 })
        );
    }

    #[test]
    fn complete_five_and_six() {
        let d = extract_design(&k(5), 2, 3).unwrap();
        assert!(verify_design(&d).unwrap().holds);

        let d = extract_design(&k(6), 3, 3).unwrap();
        assert!(verify_design(&d).unwrap().holds);
        let c = design_counts(&d).unwrap();
        assert_eq!((c.b, c.r, c.is_symmetric, c.consistent), (6, 5, true, true));
        let h = check_hughes_bound(&d).unwrap();
        assert!(h.is_symmetric && h.holds && h.tight);
    }

    #[test]
    fn mislabeled_index_is_caught() {
        // The K6 in-neighborhoods with t = 3 have index 3, not 2.
        let mut d = extract_design(&k(6), 3, 3).unwrap();
        d.lambda = 2;
        let v = verify_design(&d).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.violation,
            Some(DesignViolation::SubsetCount {
                subset: set(&[0, 1, 2]),
                count: 3
            })
        );
        // b = 2*20/10 = 4 is an integer, but r = 2*10/6 is not.
        assert!(matches!(
            design_counts(&d),
            Err(DesignError::NonIntegerCount { what: "r", .. })
        ));
    }

    #[test]
    fn block_size_violation() {
        let mut d = extract_design(&k(4), 2, 2).unwrap();
        d.blocks[0] = set(&[1, 2]);
        assert_eq!(
            verify_design(&d).unwrap().violation,
            Some(DesignViolation::BlockSize { block: 0, size: 2 })
        );
    }

    #[test]
    fn all_pairs_design() {
        let d = Design {
            t: 2,
            v: 4,
            k: 2,
            lambda: 1,
            blocks: subsets_of_size(4, 2).collect(),
        };
        assert!(verify_design(&d).unwrap().holds);
        let c = design_counts(&d).unwrap();
        assert_eq!(
            (c.b, c.r, c.is_symmetric, c.consistent),
            (6, 3, false, true)
        );
    }

    #[test]
    fn steiner_quadruple_system_eight() {
        // Planes of AG(3,2): 4-subsets of F_2^3 whose XOR is zero.
        let blocks: Vec<VertexSet> = subsets_of_size(8, 4)
            .filter(|b| b.iter().fold(0, |acc, x| acc ^ x) == 0)
            .collect();
        let d = Design {
            t: 3,
            v: 8,
            k: 4,
            lambda: 1,
            blocks,
        };
        assert!(verify_design(&d).unwrap().holds);
        let c = design_counts(&d).unwrap();
        assert_eq!((c.b, c.is_symmetric, c.consistent), (14, false, true));
        let h = check_hughes_bound(&d).unwrap();
        assert!(!h.is_symmetric && h.holds && !h.tight);
    }

    #[test]
    fn bad_parameters() {
        let d = Design {
            t: 3,
            v: 4,
            k: 4,
            lambda: 1,
            blocks: vec![],
        };
        assert!(matches!(
            verify_design(&d),
            Err(DesignError::BadParameters(_))
        ));
    }

    #[test]
    fn file_roundtrip() {
        let d = extract_design(&k(4), 2, 2).unwrap();
        let text = write_design(&d);
        assert_eq!(text, "2 4 3 2\n2 3 4\n1 3 4\n1 2 4\n1 2 3\n");
        assert_eq!(read_design(&text).unwrap(), d);
        assert!(read_design("2 4 3\n").is_err());
        assert!(read_design("2 4 3 2\n1 2 9\n").is_err());
    }
}
