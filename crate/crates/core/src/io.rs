//! The `.dg` adjacency-matrix text format.
//!
//! ```text
//! 3
//! 011
//! 101
//! 110
//! ```
//!
//! Line 1 holds the order `n`; the next `n` lines hold exactly `n` characters
//! from `{0,1}`, character `j` of row `i` being `1` iff `i -> j`. The diagonal
//! must be zero. Surrounding whitespace on a line and a final newline are
//! ignored.

use crate::digraph::{Digraph, DigraphError};
use crate::vertex_set::{VertexSet, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: nonzero diagonal entry for vertex {}", .vertex + 1)]
    NonZeroDiagonal { line: usize, vertex: usize },
    #[error("line {line}: expected {expected} entries, found {found}")]
    RaggedMatrix {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} matrix rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {line}: unexpected content after the matrix")]
    TrailingContent { line: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// Parses a square 0/1 matrix with empty diagonal into rows.
pub fn read_matrix(text: &str) -> Result<Vec<VertexSet>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (first_no, first) = lines.next().ok_or(ParseError::Syntax {
        line: 1,
        column: 1,
        message: "empty input".into(),
    })?;
    let header = first.trim();
    let n: usize = header.parse().map_err(|_| ParseError::Syntax {
        line: first_no,
        column: first.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1,
        message: format!("expected the vertex count, found {header:?}"),
    })?;
    if n == 0 {
        return Err(DigraphError::EmptyOrder.into());
    }
    if n > MAX_ORDER {
        return Err(DigraphError::OrderTooLarge { n, max: MAX_ORDER }.into());
    }

    let mut rows = Vec::with_capacity(n);
    for (line_no, raw) in lines.by_ref() {
        let offset = raw.len() - raw.trim_start().len();
        let row_text = raw.trim();
        let i = rows.len();
        let mut row = VertexSet::EMPTY;
        let mut found = 0;
        for (j, c) in row_text.chars().enumerate() {
            match c {
                '0' => {}
                '1' if j == i => {
                    return Err(ParseError::NonZeroDiagonal {
                        line: line_no,
                        vertex: i,
                    })
                }
                '1' if j < n => row.insert(j),
                '1' => {}
                other => {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        column: offset + j + 1,
                        message: format!("expected '0' or '1', found {other:?}"),
                    })
                }
            }
            found += 1;
        }
        if found != n {
            return Err(ParseError::RaggedMatrix {
                line: line_no,
                expected: n,
                found,
            });
        }
        rows.push(row);
        if rows.len() == n {
            break;
        }
    }
    if rows.len() < n {
        return Err(ParseError::MissingRows {
            expected: n,
            found: rows.len(),
        });
    }
    if let Some((line, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError::TrailingContent { line });
    }
    Ok(rows)
}

pub fn read_digraph(text: &str) -> Result<Digraph, ParseError> {
    Ok(Digraph::from_rows(read_matrix(text)?)?)
}

pub fn write_digraph(d: &Digraph) -> String {
    let n = d.order();
    let mut s = format!("{n}\n");
    for row in d.rows() {
        s.push_str(&row_bits(*row, n));
        s.push('\n');
    }
    s
}

/// Row `row` as `n` characters, column 0 first.
pub fn row_bits(row: VertexSet, n: usize) -> String {
    (0..n)
        .map(|j| if row.contains(j) { '1' } else { '0' })
        .collect()
}

/// All rows concatenated, as used by catalog lines.
pub fn row_concatenated_bits(d: &Digraph) -> String {
    d.rows().iter().map(|r| row_bits(*r, d.order())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1, FIGURE1_DG};

    #[test]
    fn reads_complete_two() {
        assert_eq!(
            read_digraph("2\n01\n10\n").unwrap(),
            Digraph::complete(2).unwrap()
        );
        assert_eq!(
            read_digraph("2\n01\n10").unwrap(),
            Digraph::complete(2).unwrap()
        );
        assert_eq!(
            read_digraph(" 2 \r\n01\r\n10\r\n\n").unwrap(),
            Digraph::complete(2).unwrap()
        );
    }

    #[test]
    fn rejects_diagonal() {
        assert_eq!(
            read_digraph("2\n11\n10\n"),
            Err(ParseError::NonZeroDiagonal { line: 2, vertex: 0 })
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            read_digraph("2\n01\n1\n"),
            Err(ParseError::RaggedMatrix {
                line: 3,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            read_digraph("2\n0x\n10\n"),
            Err(ParseError::Syntax {
                line: 2,
                column: 2,
                ..
            })
        ));
        assert!(matches!(
            read_digraph("two\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            read_digraph("3\n011\n101\n"),
            Err(ParseError::MissingRows {
                expected: 3,
                found: 2
            })
        ));
        assert!(matches!(
            read_digraph("1\n0\n0\n"),
            Err(ParseError::TrailingContent { line: 3 })
        ));
        assert!(matches!(read_digraph(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            read_digraph("0\n"),
            Err(ParseError::Digraph(DigraphError::EmptyOrder))
        ));
        assert!(matches!(
            read_digraph("65\n"),
            Err(ParseError::Digraph(DigraphError::OrderTooLarge { .. }))
        ));
    }

    #[test]
    fn writes_figure1() {
        let text = write_digraph(&figure1());
        assert_eq!(text.lines().count(), 8);
        assert!(text.starts_with("7\n"));
        assert_eq!(text, FIGURE1_DG);
    }
}
