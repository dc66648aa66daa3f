//! FCT facet-list files.
//!
//! One facet per line as space-separated decimal vertex labels. Lines whose
//! first non-blank character is `#` are comments; blank lines are ignored.
//! Readers canonicalize, writers emit facets in lexicographic order with no
//! trailing whitespace.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use itertools::Itertools;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<SimplicialComplex> {
    let mut faces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let labels = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Vertex>()
                    .map_err(|e| Error::Parse { line: line_no, message: format!("bad vertex label `{tok}`: {e}") })
            })
            .collect::<Result<Vec<_>>>()?;
        let face = Face::new(labels).map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        faces.push(face);
    }
    if faces.is_empty() {
        return Err(Error::Parse { line: 0, message: "no facets in input".into() });
    }
    SimplicialComplex::from_facets(faces)
}

pub fn write(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for facet in complex.facets() {
        out.push_str(&facet.vertices().iter().join(" "));
        out.push('\n');
    }
    out
}

/// Reads a complex from a path, or from standard input when the path is `-`.
pub fn read_path(path: &Path) -> Result<SimplicialComplex> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_skips_comments_and_canonicalizes() {
        let text = "# torus\n\n2 1 0\n 1 2 3\n#tail\n0 1\n";
        let x = parse(text).unwrap();
        assert_eq!(write(&x), "0 1 2\n1 2 3\n");
    }

    #[test]
    fn parse_reports_line_numbers() {
        match parse("0 1 2\n0 x 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse("0 1\n3 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn writer_is_order_insensitive() {
        let a = parse("3 4 5\n0 1 2\n").unwrap();
        let b = parse("0 2 1\n5 3 4\n").unwrap();
        assert_eq!(write(&a), write(&b));
    }
}
