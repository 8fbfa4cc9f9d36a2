//! graph6 and DIMACS edge-list I/O.
//!
//! graph6 packs the upper triangle column by column — x(0,1), x(0,2), x(1,2),
//! x(0,3), ... — into 6-bit groups offset by 63. Orders up to 62 use a single
//! size byte; 63..=4096 use the `~`-prefixed 18-bit form. DIMACS files carry
//! `p edge n m` followed by 1-indexed `e u v` lines; `c` comments are skipped
//! and duplicate edges are tolerated.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decode a single graph6 line. A `>>graph6<<` header prefix is allowed.
pub fn parse_graph6(input: &str) -> Result<Graph> {
    let mut line = input.trim();
    let mut base = input.len() - input.trim_start().len();
    if let Some(rest) = line.strip_prefix(GRAPH6_HEADER) {
        line = rest;
        base += GRAPH6_HEADER.len();
    }
    if line.is_empty() {
        return Err(Error::parse(base, "empty graph6 input"));
    }
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                base + i,
                format!("byte 0x{b:02x} outside the graph6 alphabet"),
            ));
        }
    }

    let (n, mut pos) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return Err(Error::SizeLimit(
                "graph6 orders above 258047 are not supported".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(Error::parse(base, "truncated graph6 size field"));
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n == 0 {
        return Err(Error::parse(base, "graph6 order 0"));
    }
    if n > MAX_ORDER {
        return Err(Error::SizeLimit(format!(
            "graph6 order {n} exceeds the supported maximum {MAX_ORDER}"
        )));
    }

    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(Error::parse(
            base + pos,
            format!(
                "expected {need} payload bytes for order {n}, found {}",
                bytes.len() - pos
            ),
        ));
    }

    let mut g = Graph::new(n)?;
    let mut bit = 0usize;
    let mut acc = 0u8;
    let mut left = 0u8;
    for v in 1..n {
        for u in 0..v {
            if left == 0 {
                acc = bytes[pos] - 63;
                pos += 1;
                left = 6;
            }
            if acc >> 5 & 1 == 1 {
                g.add_edge(u, v)?;
            }
            acc = acc << 1 & 0x3f;
            left -= 1;
            bit += 1;
        }
    }
    debug_assert_eq!(bit, nbits);
    // Trailing pad bits must be zero.
    if left > 0 && acc != 0 {
        return Err(Error::parse(base + pos - 1, "nonzero graph6 padding bits"));
    }
    Ok(g)
}

/// Encode in graph6. Inverse of [`parse_graph6`] up to labels.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut used = 0u8;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 alphabet is ASCII")
}

/// Parse a DIMACS edge-format file.
pub fn parse_dimacs(input: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut offset = 0usize;
    for line in input.split_inclusive('\n') {
        let at = offset;
        offset += line.len();
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if g.is_some() {
                    return Err(Error::parse(at, "duplicate problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(Error::parse(at, "expected `p edge <n> <m>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(at, format!("bad vertex count {:?}", fields[2])))?;
                if n > MAX_ORDER {
                    return Err(Error::SizeLimit(format!(
                        "DIMACS order {n} exceeds the supported maximum {MAX_ORDER}"
                    )));
                }
                g = Some(Graph::new(n)?);
            }
            "e" => {
                let g = g
                    .as_mut()
                    .ok_or_else(|| Error::parse(at, "edge before problem line"))?;
                if fields.len() != 3 {
                    return Err(Error::parse(at, "expected `e <u> <v>`"));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(at, format!("bad endpoint {:?}", fields[1])))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(at, format!("bad endpoint {:?}", fields[2])))?;
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return Err(Error::parse(
                        at,
                        format!("edge ({u},{v}) outside 1..={}", g.n()),
                    ));
                }
                if u == v {
                    return Err(Error::parse(at, format!("self-loop at vertex {u}")));
                }
                g.add_edge(u - 1, v - 1)?;
            }
            other => {
                return Err(Error::parse(at, format!("unknown line type {other:?}")));
            }
        }
    }
    g.ok_or_else(|| Error::parse(input.len(), "missing problem line"))
}

/// Write DIMACS edge format, 1-indexed, canonical edge order.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Best-effort format sniffing: DIMACS if any non-blank line starts with a
/// `p`/`e`/`c` keyword field, otherwise graph6.
pub fn parse_auto(input: &str) -> Result<Graph> {
    let looks_dimacs = input.lines().any(|l| {
        let l = l.trim_start();
        l.starts_with("p ") || l.starts_with("e ") || l.starts_with("c ") || l == "c"
    });
    if looks_dimacs {
        parse_dimacs(input)
    } else {
        parse_graph6(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_empty, make_kneser};

    #[test]
    fn graph6_frozen_decodes() {
        // 'A_' = K2.
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));
        assert!(k2.has_edge(0, 1));

        // 'D?{' = star with center 4 over 5 vertices.
        let star = parse_graph6("D?{").unwrap();
        assert_eq!((star.n(), star.m()), (5, 4));
        for u in 0..4 {
            assert!(star.has_edge(u, 4));
            for v in (u + 1)..4 {
                assert!(!star.has_edge(u, v));
            }
        }
    }

    #[test]
    fn graph6_header_and_errors() {
        assert!(parse_graph6(">>graph6<<A_").is_ok());
        assert!(matches!(parse_graph6(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("A_extra"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("D?"), Err(Error::Parse { .. })));
        // 0x20 (space embedded) is outside the alphabet
        assert!(matches!(parse_graph6("D? {"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("~~?????"), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn graph6_round_trip() {
        for g in [
            make_cycle(5).unwrap(),
            make_cycle(17).unwrap(),
            make_kneser(5, 2).unwrap(),
            make_empty(1).unwrap(),
            make_empty(62).unwrap(),
            make_cycle(63).unwrap(), // crosses into the long size form
            make_cycle(100).unwrap(),
        ] {
            let enc = to_graph6(&g);
            let back = parse_graph6(&enc).unwrap();
            assert_eq!(back, g, "round trip failed for {:?}", g.label());
        }
    }

    #[test]
    fn dimacs_round_trip_and_tolerance() {
        let p = make_kneser(5, 2).unwrap();
        let text = to_dimacs(&p);
        assert!(text.starts_with("p edge 10 15\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), p);

        let messy = "c a comment\n\np edge 3 2\ne 1 2\nc mid comment\ne 2 3\ne 2 3\n";
        let g = parse_dimacs(messy).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_dimacs("c only\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 4\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 2 2\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_dimacs("p clq 3 1\ne 1 2\n"),
            Err(Error::Parse { .. })
        ));
        let err = parse_dimacs("p edge 3 1\nq 1 2\n").unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert_eq!(offset, 11),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn auto_detect() {
        assert_eq!(parse_auto("A_").unwrap().m(), 1);
        assert_eq!(parse_auto("p edge 2 1\ne 1 2\n").unwrap().m(), 1);
        assert_eq!(parse_auto("c hi\np edge 2 1\ne 1 2\n").unwrap().m(), 1);
    }
}
