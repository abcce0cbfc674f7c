//! Newline-delimited graph6 corpora and the built-in labelled generator.

use std::io::{self, BufRead};

use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::{Graph6Error, Graph6Record};

/// Largest order the labelled generator accepts (`2^21` graphs at 7).
pub const MAX_GENERATED_ORDER: usize = 7;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {error}")]
    Parse { line: usize, error: Graph6Error },
    #[error("labelled generation supports 1 ≤ n ≤ {MAX_GENERATED_ORDER}, got {0}")]
    OrderTooLarge(usize),
}

/// A parsed record and its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub record: Graph6Record,
}

/// Iterator over a graph6 corpus. Blank lines and an optional `>>graph6<<`
/// header are skipped. In strict mode the first malformed line ends the
/// stream with an error; otherwise malformed lines are yielded as errors
/// and reading continues.
pub struct CorpusReader<R> {
    lines: io::Lines<R>,
    line: usize,
    strict: bool,
    done: bool,
}

pub fn ingest_corpus<R: BufRead>(reader: R, strict: bool) -> CorpusReader<R> {
    CorpusReader {
        lines: reader.lines(),
        line: 0,
        strict,
        done: false,
    }
}

impl<R: BufRead> Iterator for CorpusReader<R> {
    type Item = Result<CorpusEntry, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            let raw = match self.lines.next()? {
                Ok(raw) => raw,
                Err(e) => {
                    self.done = true;
                    return Some(Err(e.into()));
                }
            };
            self.line += 1;
            let mut text = raw.trim_end();
            if let Some(rest) = text.strip_prefix(">>graph6<<") {
                text = rest;
            }
            if text.is_empty() {
                continue;
            }
            return Some(match Graph6Record::parse(text) {
                Ok(record) => Ok(CorpusEntry {
                    line: self.line,
                    record,
                }),
                Err(error) => {
                    self.done = self.strict;
                    Err(CorpusError::Parse {
                        line: self.line,
                        error,
                    })
                }
            });
        }
    }
}

/// All labelled graphs on `n` vertices, optionally only the connected ones.
/// Bit `k` of the counter is the `k`-th vertex pair in graph6 order, so the
/// stream is ordered like the graph6 edge strings read as binary numbers.
pub fn generate_all_graphs(
    n: usize,
    connected_only: bool,
) -> Result<impl Iterator<Item = Graph>, CorpusError> {
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(CorpusError::OrderTooLarge(n));
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        let mut adj = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if (mask >> k) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let g = Graph::from_rows_unchecked(adj);
        (!connected_only || g.is_connected()).then_some(g)
    }))
}

/// All labelled graphs with `1..=max_n` vertices, as graph6 records.
pub fn generate_records_up_to(
    max_n: usize,
    connected_only: bool,
) -> Result<impl Iterator<Item = Graph6Record>, CorpusError> {
    if max_n == 0 || max_n > MAX_GENERATED_ORDER {
        return Err(CorpusError::OrderTooLarge(max_n));
    }
    let mut streams = Vec::new();
    for n in 1..=max_n {
        streams.push(generate_all_graphs(n, connected_only)?);
    }
    Ok(streams
        .into_iter()
        .flatten()
        .map(|g| Graph6Record::from_graph(g).expect("order ≤ 7")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn reads_records_in_order() {
        let input = Cursor::new("@\nA_\n");
        let entries: Vec<_> = ingest_corpus(input, true).map(Result::unwrap).collect();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].record.graph.order(), 1);
        assert_eq!(entries[1].record.graph.edge_count(), 1);
        assert_eq!(entries[1].line, 2);
    }

    #[test]
    fn empty_input() {
        assert_eq!(ingest_corpus(Cursor::new(""), true).count(), 0);
        assert_eq!(ingest_corpus(Cursor::new("\n\n"), true).count(), 0);
    }

    #[test]
    fn strictness() {
        let strict: Vec<_> = ingest_corpus(Cursor::new("A\n@\n"), true).collect();
        assert_eq!(strict.len(), 1);
        assert!(matches!(
            strict[0],
            Err(CorpusError::Parse {
                line: 1,
                error: Graph6Error::LengthMismatch { .. }
            })
        ));

        let lenient: Vec<_> = ingest_corpus(Cursor::new("A\n@\n"), false).collect();
        assert_eq!(lenient.len(), 2);
        assert!(lenient[0].is_err());
        assert_eq!(lenient[1].as_ref().unwrap().line, 2);
    }

    #[test]
    fn header_and_crlf() {
        let entries: Vec<_> = ingest_corpus(Cursor::new(">>graph6<<A_\r\n@\r\n"), true)
            .map(Result::unwrap)
            .collect();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].record.text, "A_");
    }

    #[test]
    fn generator_counts() {
        assert_eq!(generate_all_graphs(2, false).unwrap().count(), 2);
        assert_eq!(generate_all_graphs(2, true).unwrap().count(), 1);
        assert_eq!(generate_all_graphs(3, true).unwrap().count(), 4);
        assert_eq!(generate_all_graphs(4, false).unwrap().count(), 64);
        // labelled connected graphs on 4 and 5 vertices (OEIS A001187)
        assert_eq!(generate_all_graphs(4, true).unwrap().count(), 38);
        assert_eq!(generate_all_graphs(5, true).unwrap().count(), 728);
        assert!(matches!(
            generate_all_graphs(8, false),
            Err(CorpusError::OrderTooLarge(8))
        ));
        assert!(matches!(
            generate_all_graphs(0, false),
            Err(CorpusError::OrderTooLarge(0))
        ));
    }
}
