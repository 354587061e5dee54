//! Short-form graph6 encoding (orders 0 through 62).
//!
//! A record is one size byte `n + 63` followed by the upper triangle of the adjacency
//! matrix in column order (`a[0][1]`, `a[0][2]`, `a[1][2]`, `a[0][3]`, ...), packed six
//! bits per byte, most significant first, zero padded, each byte offset by 63.

use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_G6_ORDER: usize = 62;

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.as_bytes();
    let Some((&first, payload)) = bytes.split_first() else {
        return Err(Error::MalformedGraph6("empty record".into()));
    };
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::MalformedGraph6(format!(
            "byte {} at offset {pos} outside 63..=126",
            bytes[pos]
        )));
    }
    if first == 126 {
        return Err(Error::UnsupportedSize {
            what: "graph6 order",
            got: MAX_G6_ORDER + 1,
            max: MAX_G6_ORDER,
        });
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if payload.len() != nbytes {
        return Err(Error::MalformedGraph6(format!(
            "order {n} needs {nbytes} payload bytes, found {}",
            payload.len()
        )));
    }

    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let last = payload[nbytes - 1] - 63;
        let pad_mask = (1u8 << (6 - nbits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Error::MalformedGraph6("non-zero padding bits".into()));
        }
    }
    Graph::from_rows(rows)
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_G6_ORDER {
        return Err(Error::UnsupportedSize {
            what: "graph6 order",
            got: n,
            max: MAX_G6_ORDER,
        });
    }
    let mut out = Vec::with_capacity(1 + (n * n / 12) + 1);
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses every non-blank line of a graph6 stream. Errors carry the 1-based line number.
pub fn read_graph6<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let rec = line.trim_end_matches(['\r', '\n']);
        if rec.is_empty() {
            continue;
        }
        let g = parse_graph6(rec).map_err(|e| Error::Line {
            line: i + 1,
            source: Box::new(e),
        })?;
        out.push(g);
    }
    Ok(out)
}

pub fn read_graph6_file(path: impl AsRef<Path>) -> Result<Vec<Graph>> {
    let file = std::fs::File::open(path)?;
    read_graph6(std::io::BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_complete_graphs() {
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(write_graph6(&Graph::complete(2).unwrap()).unwrap(), "A_");
        assert_eq!(write_graph6(&Graph::complete(3).unwrap()).unwrap(), "Bw");
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()).unwrap(), "?");
    }

    #[test]
    fn bit_order_is_column_major() {
        // n=3, only edge {1,2}: bit stream 001 -> 001000 -> 8 + 63
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(write_graph6(&g).unwrap(), "BG");
        assert_eq!(parse_graph6("BG").unwrap(), g);
    }

    #[test]
    fn malformed_records() {
        assert!(matches!(parse_graph6(""), Err(Error::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("B"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("Bww"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(parse_graph6("B "), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("B\x7f"),
            Err(Error::MalformedGraph6(_))
        ));
        // padding bits set: n=2 has one data bit, '~' sets all six
        assert!(matches!(parse_graph6("A~"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("~?@?"),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn oversized_write() {
        let g = Graph::empty(63).unwrap();
        assert!(matches!(
            write_graph6(&g),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn line_numbers_in_errors() {
        let text = "@\nA_\n\nB!\n";
        match read_graph6(text.as_bytes()) {
            Err(Error::Line { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=62).prop_flat_map(|n| {
            let m = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn roundtrip(g in arb_graph()) {
            let s = write_graph6(&g).unwrap();
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
