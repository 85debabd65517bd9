//! Line-oriented matroid text format.
//!
//! ```text
//! # a rank-2 uniform matroid on three elements
//! matroid uniform
//! n 3
//! r 2
//! ```
//!
//! Other kinds: `graphic` (`vertices <k>` then `edge <u> <v>` per element),
//! `gf2` (`rows <k>` then `col <bits>` per element, row 0 first) and
//! `explicit` (`n <k>` then `basis <ids..>` per basis). `#` starts a comment.

use std::fmt::Write as _;
use std::sync::Arc;

use super::gf2::parse_bitstring;
use super::{Explicit, Gf2, Graphic, MatroidRef, Uniform};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// A matroid as described by a file, before a backend is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidFile {
    Uniform { n: usize, r: usize },
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Gf2 { rows: usize, columns: Vec<u64> },
    Explicit { n: usize, bases: Vec<ElementSet> },
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    /// (1-based line number, keyword, remaining tokens)
    type Item = (usize, &'a str, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = body.split_whitespace();
            if let Some(key) = tokens.next() {
                return Some((i + 1, key, tokens.collect()));
            }
        }
        None
    }
}

fn number(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {token:?}")))
}

fn single_number(line: usize, key: &str, args: &[&str]) -> Result<usize> {
    match args {
        [x] => number(line, x),
        _ => Err(Error::parse(line, format!("`{key}` takes exactly one integer"))),
    }
}

fn expect_header<'a>(
    lines: &mut Lines<'a>,
    key: &str,
) -> Result<(usize, Vec<&'a str>)> {
    match lines.next() {
        Some((line, k, args)) if k == key => Ok((line, args)),
        Some((line, k, _)) => Err(Error::parse(line, format!("expected `{key}`, found `{k}`"))),
        None => Err(Error::parse(lines.last + 1, format!("missing `{key}` line"))),
    }
}

impl MatroidFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (line, args) = expect_header(&mut lines, "matroid")?;
        let kind = match args.as_slice() {
            [kind] => *kind,
            _ => return Err(Error::parse(line, "expected `matroid <kind>`")),
        };
        let file = match kind {
            "uniform" => {
                let (l, args) = expect_header(&mut lines, "n")?;
                let n = single_number(l, "n", &args)?;
                let (l, args) = expect_header(&mut lines, "r")?;
                let r = single_number(l, "r", &args)?;
                Uniform::new(n, r).map_err(|e| Error::parse(l, e.to_string()))?;
                if let Some((l, k, _)) = lines.next() {
                    return Err(Error::parse(l, format!("unexpected `{k}` after uniform matroid")));
                }
                MatroidFile::Uniform { n, r }
            }
            "graphic" => {
                let (l, args) = expect_header(&mut lines, "vertices")?;
                let vertices = single_number(l, "vertices", &args)?;
                let mut edges = Vec::new();
                for (l, k, args) in lines.by_ref() {
                    if k != "edge" || args.len() != 2 {
                        return Err(Error::parse(l, "expected `edge <u> <v>`"));
                    }
                    let (u, v) = (number(l, args[0])?, number(l, args[1])?);
                    if u >= vertices || v >= vertices {
                        return Err(Error::parse(l, format!("vertex out of range 0..{vertices}")));
                    }
                    edges.push((u, v));
                }
                Graphic::new(vertices, edges.clone())
                    .map_err(|e| Error::parse(lines.last, e.to_string()))?;
                MatroidFile::Graphic { vertices, edges }
            }
            "gf2" => {
                let (l, args) = expect_header(&mut lines, "rows")?;
                let rows = single_number(l, "rows", &args)?;
                if rows > 64 {
                    return Err(Error::parse(l, "at most 64 rows are supported"));
                }
                let mut columns = Vec::new();
                for (l, k, args) in lines.by_ref() {
                    match (k, args.as_slice()) {
                        ("col", [bits]) => columns
                            .push(parse_bitstring(bits, rows).map_err(|e| Error::parse(l, e.to_string()))?),
                        _ => return Err(Error::parse(l, "expected `col <bitstring>`")),
                    }
                }
                Gf2::new(rows, columns.clone())
                    .map_err(|e| Error::parse(lines.last, e.to_string()))?;
                MatroidFile::Gf2 { rows, columns }
            }
            "explicit" => {
                let (l, args) = expect_header(&mut lines, "n")?;
                let n = single_number(l, "n", &args)?;
                let mut bases = Vec::new();
                let mut last = l;
                for (l, k, args) in lines.by_ref() {
                    if k != "basis" {
                        return Err(Error::parse(l, "expected `basis <ids..>`"));
                    }
                    let mut set = ElementSet::empty();
                    for a in args {
                        let e = number(l, a)?;
                        if e >= n {
                            return Err(Error::parse(l, format!("element {e} out of range 0..{n}")));
                        }
                        set.insert(e);
                    }
                    bases.push(set);
                    last = l;
                }
                let m = Explicit::new(n, bases.clone()).map_err(|e| Error::parse(last, e.to_string()))?;
                m.check_exchange().map_err(|e| Error::parse(last, e.to_string()))?;
                MatroidFile::Explicit { n, bases: m.bases_list().to_vec() }
            }
            other => return Err(Error::parse(line, format!("unknown matroid kind `{other}`"))),
        };
        Ok(file)
    }

    pub fn build(&self) -> Result<MatroidRef> {
        Ok(match self {
            MatroidFile::Uniform { n, r } => Arc::new(Uniform::new(*n, *r)?),
            MatroidFile::Graphic { vertices, edges } => {
                Arc::new(Graphic::new(*vertices, edges.clone())?)
            }
            MatroidFile::Gf2 { rows, columns } => Arc::new(Gf2::new(*rows, columns.clone())?),
            MatroidFile::Explicit { n, bases } => Arc::new(Explicit::new(*n, bases.clone())?),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            MatroidFile::Uniform { n, r } => {
                let _ = write!(out, "matroid uniform\nn {n}\nr {r}\n");
            }
            MatroidFile::Graphic { vertices, edges } => {
                let _ = writeln!(out, "matroid graphic\nvertices {vertices}");
                for (u, v) in edges {
                    let _ = writeln!(out, "edge {u} {v}");
                }
            }
            MatroidFile::Gf2 { rows, columns } => {
                let _ = writeln!(out, "matroid gf2\nrows {rows}");
                for c in columns {
                    let bits: String = (0..*rows)
                        .map(|row| if c >> row & 1 == 1 { '1' } else { '0' })
                        .collect();
                    let _ = writeln!(out, "col {bits}");
                }
            }
            MatroidFile::Explicit { n, bases } => {
                let _ = writeln!(out, "matroid explicit\nn {n}");
                for b in bases {
                    let ids: Vec<String> = b.iter().map(|e| e.to_string()).collect();
                    let _ = writeln!(out, "basis {}", ids.join(" "));
                }
            }
        }
        out.lines().map(|l| l.trim_end()).collect::<Vec<_>>().join("\n") + "\n"
    }
}
