use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::matroid::{BinaryMatroid, ElementSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Matrix,
    /// Edges with 0-based endpoints; vertices are `0..vertices`.
    Graph {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub kind: InstanceKind,
    pub matroid: BinaryMatroid,
    pub named_sets: BTreeMap<String, ElementSet>,
}

impl InstanceFile {
    /// Looks up a named set.
    pub fn named(&self, name: &str) -> Result<&ElementSet> {
        self.named_sets
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no set named {name:?}")))
    }

    /// The file text; `parse_instance(render())` gives back `self`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.kind {
            InstanceKind::Matrix => {
                let rep = self.matroid.rep();
                writeln!(out, "matrix {} {}", rep.rows(), rep.cols()).unwrap();
                for r in 0..rep.rows() {
                    let row: String = (0..rep.cols())
                        .map(|c| if rep.get(r, c) { '1' } else { '0' })
                        .collect();
                    writeln!(out, "{row}").unwrap();
                }
            }
            InstanceKind::Graph { edges, .. } => {
                writeln!(out, "graph {}", edges.len()).unwrap();
                for (u, v) in edges {
                    writeln!(out, "{} {}", u + 1, v + 1).unwrap();
                }
            }
        }
        for (name, set) in &self.named_sets {
            write!(out, "set {name}").unwrap();
            for e in set.iter() {
                write!(out, " {}", e + 1).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, col, format!("expected {what}, found {tok:?}")))
}

/// Parses the `matrix` or `graph` text format with optional `set` lines.
pub fn parse_instance(text: &[u8]) -> Result<InstanceFile> {
    let text = std::str::from_utf8(text).map_err(|e| perr(1, 1, format!("not UTF-8: {e}")))?;
    enum Header {
        Matrix { rows: usize, cols: usize },
        Graph { edges: usize },
    }
    let mut header: Option<Header> = None;
    let mut bits: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut sets: BTreeMap<String, ElementSet> = BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let Some(h) = &header else {
            let want = |i: usize, what: &str| {
                toks.get(i)
                    .copied()
                    .ok_or_else(|| perr(ln, line.len() + 1, format!("header is missing {what}")))
            };
            header = Some(match toks[0].1 {
                "matrix" => {
                    let rows = number(ln, want(1, "a row count")?, "a row count")?;
                    let cols = number(ln, want(2, "a column count")?, "a column count")?;
                    if let Some(&(c, _)) = toks.get(3) {
                        return Err(perr(ln, c, "unexpected token after matrix header"));
                    }
                    Header::Matrix { rows, cols }
                }
                "graph" => {
                    let m = number(ln, want(1, "an edge count")?, "an edge count")?;
                    if let Some(&(c, _)) = toks.get(2) {
                        return Err(perr(ln, c, "unexpected token after graph header"));
                    }
                    Header::Graph { edges: m }
                }
                other => {
                    return Err(perr(
                        ln,
                        toks[0].0,
                        format!("expected header \"matrix r n\" or \"graph m\", found {other:?}"),
                    ))
                }
            });
            continue;
        };
        let ground = match h {
            Header::Matrix { cols, .. } => *cols,
            Header::Graph { edges } => *edges,
        };
        if toks[0].1 == "set" {
            let Some(&(ncol, name)) = toks.get(1) else {
                return Err(perr(ln, line.len() + 1, "set line is missing a name"));
            };
            if sets.contains_key(name) {
                return Err(perr(ln, ncol, format!("set {name:?} is defined twice")));
            }
            let mut s = ElementSet::empty(ground);
            for &(col, tok) in &toks[2..] {
                let i = number(ln, (col, tok), "an element index")?;
                if i == 0 || i > ground {
                    return Err(perr(
                        ln,
                        col,
                        format!("element index {i} is outside 1..={ground}"),
                    ));
                }
                if s.contains(i - 1) {
                    return Err(perr(ln, col, format!("element index {i} repeats")));
                }
                s.insert(i - 1);
            }
            sets.insert(name.to_string(), s);
            continue;
        }
        match h {
            Header::Matrix { rows, cols } => {
                if bits.len() == *rows {
                    return Err(perr(ln, toks[0].0, "more rows than the header declares"));
                }
                let (col, row) = toks[0];
                if toks.len() > 1 || row.chars().count() != *cols {
                    return Err(perr(
                        ln,
                        col,
                        format!(
                            "row length mismatch: expected {cols} characters, found {}",
                            line.trim().chars().count()
                        ),
                    ));
                }
                if let Some((i, ch)) = row.char_indices().find(|&(_, ch)| ch != '0' && ch != '1') {
                    return Err(perr(ln, col + i, format!("bad character {ch:?}")));
                }
                bits.push(row.to_string());
            }
            Header::Graph { edges: m } => {
                if edges.len() == *m {
                    return Err(perr(ln, toks[0].0, "more edges than the header declares"));
                }
                if toks.len() != 2 {
                    return Err(perr(
                        ln,
                        toks[0].0,
                        "an edge line needs exactly two vertex ids",
                    ));
                }
                let mut end = [0; 2];
                for (slot, &tok) in end.iter_mut().zip(&toks) {
                    let v = number(ln, tok, "a vertex id")?;
                    if v == 0 {
                        return Err(perr(ln, tok.0, "vertex ids are 1-based"));
                    }
                    *slot = v - 1;
                }
                edges.push((end[0], end[1]));
            }
        }
    }

    let eof = last_line + 1;
    let (kind, matroid) = match header {
        None => return Err(perr(eof, 1, "missing header")),
        Some(Header::Matrix { rows, cols }) => {
            if bits.len() != rows {
                return Err(perr(
                    eof,
                    1,
                    format!("expected {rows} rows, found {}", bits.len()),
                ));
            }
            let rep = if rows == 0 {
                GF2Matrix::zeros(0, cols)
            } else {
                let refs: Vec<&str> = bits.iter().map(String::as_str).collect();
                GF2Matrix::from_strs(&refs)?
            };
            (InstanceKind::Matrix, BinaryMatroid::new(rep))
        }
        Some(Header::Graph { edges: m }) => {
            if edges.len() != m {
                return Err(perr(
                    eof,
                    1,
                    format!("expected {m} edges, found {}", edges.len()),
                ));
            }
            let vertices = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
            let matroid = BinaryMatroid::from_graph(vertices, &edges)?;
            (InstanceKind::Graph { vertices, edges }, matroid)
        }
    };
    Ok(InstanceFile {
        kind,
        matroid,
        named_sets: sets,
    })
}

/// Parameters of a generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenSpec {
    CircularLadder { m: usize },
    Random { rows: usize, cols: usize, seed: u64 },
    DisjointCycles { a: usize, b: usize },
}

impl GenSpec {
    /// Reads `circular_ladder M`, `random R N SEED` (or `seed=SEED`), or
    /// `disjoint_cycles A B`.
    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let w: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
        let int = |s: &str| -> Result<u64> {
            s.trim_start_matches("seed=")
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("expected an integer, found {s:?}")))
        };
        match w.as_slice() {
            ["circular_ladder", m] => Ok(GenSpec::CircularLadder { m: int(m)? as usize }),
            ["random", r, n, seed] => Ok(GenSpec::Random {
                rows: int(r)? as usize,
                cols: int(n)? as usize,
                seed: int(seed)?,
            }),
            ["disjoint_cycles", a, b] => Ok(GenSpec::DisjointCycles {
                a: int(a)? as usize,
                b: int(b)? as usize,
            }),
            _ => Err(Error::InvalidArgument(format!(
                "unknown generator {:?}; expected circular_ladder M, random R N SEED or disjoint_cycles A B",
                w.join(" ")
            ))),
        }
    }
}

/// Edges of `CL_m`: outer cycle, inner cycle, then rungs `(i, m + i)`.
///
/// Each cycle is listed as `(o, o+1), (o, o+m-1), (o+1, o+2), …`.
pub fn circular_ladder_edges(m: usize) -> Vec<(usize, usize)> {
    let cycle = |o: usize| {
        let mut e = vec![(o, o + 1), (o, o + m - 1)];
        e.extend((1..m - 1).map(|i| (o + i, o + i + 1)));
        e
    };
    let mut edges = cycle(0);
    edges.extend(cycle(m));
    edges.extend((0..m).map(|i| (i, m + i)));
    edges
}

fn graph_instance(
    vertices: usize,
    edges: Vec<(usize, usize)>,
    c1: &[usize],
    c2: &[usize],
) -> Result<InstanceFile> {
    let matroid = BinaryMatroid::from_graph(vertices, &edges)?;
    let named_sets = BTreeMap::from([
        ("C1".to_string(), matroid.set(c1)?),
        ("C2".to_string(), matroid.set(c2)?),
    ]);
    Ok(InstanceFile {
        kind: InstanceKind::Graph { vertices, edges },
        matroid,
        named_sets,
    })
}

/// Builds a test instance; deterministic in its parameters.
pub fn generate_instance(spec: GenSpec) -> Result<InstanceFile> {
    match spec {
        GenSpec::CircularLadder { m } => {
            if m < 3 {
                return Err(Error::InvalidArgument(format!(
                    "circular_ladder needs m >= 3, got {m}"
                )));
            }
            let c1: Vec<usize> = (0..m).collect();
            let c2: Vec<usize> = (m..2 * m).collect();
            graph_instance(2 * m, circular_ladder_edges(m), &c1, &c2)
        }
        GenSpec::Random { rows, cols, seed } => {
            if rows == 0 || cols == 0 {
                return Err(Error::InvalidArgument(
                    "random needs positive dimensions".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rep = GF2Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    rep.set(r, c, rng.gen_bool(0.5));
                }
            }
            Ok(InstanceFile {
                kind: InstanceKind::Matrix,
                matroid: BinaryMatroid::new(rep),
                named_sets: BTreeMap::new(),
            })
        }
        GenSpec::DisjointCycles { a, b } => {
            if a == 0 || b == 0 {
                return Err(Error::InvalidArgument(
                    "disjoint_cycles needs positive lengths".into(),
                ));
            }
            // a 1-cycle is a loop, a 2-cycle a parallel pair
            let ring = |o: usize, len: usize| -> Vec<(usize, usize)> {
                (0..len).map(|i| (o + i, o + (i + 1) % len)).collect()
            };
            let mut edges = ring(0, a);
            edges.extend(ring(a, b));
            let c1: Vec<usize> = (0..a).collect();
            let c2: Vec<usize> = (a..a + b).collect();
            graph_instance(a + b, edges, &c1, &c2)
        }
    }
}
