//! The edge-list and matrix text formats.
//!
//! Edge lists: one `SRC DST LABEL` triple per line, whitespace separated.
//! `SRC`/`DST` are identifier tokens, `LABEL` a nonnegative rational written
//! `p`, `p/q` or as a decimal literal (converted exactly). Lines starting
//! with `#` and blank lines are ignored; `vertex V` declares an isolated
//! vertex. Matrices: a first line with the dimension `n`, then `n` rows of
//! `n` rationals. Serialization emits rationals in lowest terms, so
//! parse -> serialize -> parse is the identity.

use std::fmt;

use contentmax_core::{Label, LabeledDigraph, LabeledMatrix, Pattern};

/// A parse failure pointing at the offending line (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_graph(text: &str) -> Result<LabeledDigraph, FormatError> {
    let mut g = LabeledDigraph::new();
    for (line, body) in significant_lines(text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", name] => {
                g.add_vertex(name);
            }
            [src, dst, label] => {
                let label: Label = label.parse().map_err(|e| err(line, format!("{e}")))?;
                g.add_edge(src, dst, label)
                    .map_err(|e| err(line, format!("{e}")))?;
            }
            _ => {
                return Err(err(
                    line,
                    format!(
                        "expected `SRC DST LABEL` or `vertex NAME`, found {} token(s)",
                        tokens.len()
                    ),
                ))
            }
        }
    }
    Ok(g)
}

/// Serializes a graph so that parsing reproduces it exactly: every vertex is
/// declared first (preserving insertion order), then the edges in insertion
/// order with labels in lowest terms.
pub fn write_graph(g: &LabeledDigraph) -> String {
    let mut out = String::new();
    for name in g.vertex_names() {
        out.push_str("vertex ");
        out.push_str(name);
        out.push('\n');
    }
    for e in g.edges() {
        out.push_str(&format!(
            "{} {} {}\n",
            g.vertex_name(e.src),
            g.vertex_name(e.dst),
            e.label
        ));
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<LabeledMatrix, FormatError> {
    let mut lines = significant_lines(text);
    let (line, head) = lines.next().ok_or_else(|| err(1, "empty matrix file"))?;
    let dim: usize = head
        .parse()
        .map_err(|_| err(line, format!("expected the dimension, found `{head}`")))?;
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let (line, body) = lines
            .next()
            .ok_or_else(|| err(line, format!("expected {dim} rows, found {i}")))?;
        let mut row = Vec::with_capacity(dim);
        for token in body.split_whitespace() {
            let entry: Label = token.parse().map_err(|e| err(line, format!("{e}")))?;
            row.push(entry);
        }
        if row.len() != dim {
            return Err(err(
                line,
                format!("expected {dim} entries in the row, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "unexpected content after the last row"));
    }
    LabeledMatrix::from_rows(rows).map_err(|e| err(1, format!("{e}")))
}

pub fn write_matrix(m: &LabeledMatrix) -> String {
    let mut out = format!("{}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a pattern edge-list file: like [`parse_graph`], but the label
/// column may be left out entirely (`SRC DST`), since pattern edges carry
/// no weight.
pub fn parse_pattern_graph(text: &str) -> Result<LabeledDigraph, FormatError> {
    let mut g = LabeledDigraph::new();
    for (line, body) in significant_lines(text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", name] => {
                g.add_vertex(name);
            }
            [src, dst] => {
                g.add_edge(src, dst, Label::one())
                    .map_err(|e| err(line, format!("{e}")))?;
            }
            [src, dst, label] => {
                // The value is irrelevant, but it must still be a valid
                // nonnegative rational (and zero still means "no edge").
                let label: Label = label.parse().map_err(|e| err(line, format!("{e}")))?;
                let label = if label.is_zero() { label } else { Label::one() };
                g.add_edge(src, dst, label)
                    .map_err(|e| err(line, format!("{e}")))?;
            }
            _ => {
                return Err(err(
                    line,
                    format!(
                        "expected `SRC DST [LABEL]` or `vertex NAME`, found {} token(s)",
                        tokens.len()
                    ),
                ))
            }
        }
    }
    Ok(g)
}

/// A pattern selector: `path:K`, `star:A`, `equistar:A:L`, or `file:PATH`
/// (an edge-list file whose labels are ignored and may be absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternSpec {
    Path(u32),
    Star(u32),
    Equistar(u32, u32),
    File(String),
}

pub fn parse_pattern_spec(spec: &str) -> Result<PatternSpec, String> {
    let bad = || {
        format!("invalid pattern spec `{spec}`; expected path:K, star:A, equistar:A:L or file:PATH")
    };
    let positive = |s: &str| s.parse::<u32>().ok().filter(|&x| x >= 1).ok_or_else(bad);
    match spec.split_once(':') {
        Some(("path", k)) => Ok(PatternSpec::Path(positive(k)?)),
        Some(("star", a)) => Ok(PatternSpec::Star(positive(a)?)),
        Some(("equistar", rest)) => {
            let (a, l) = rest.split_once(':').ok_or_else(bad)?;
            Ok(PatternSpec::Equistar(positive(a)?, positive(l)?))
        }
        Some(("file", path)) if !path.is_empty() => Ok(PatternSpec::File(path.to_string())),
        _ => Err(bad()),
    }
}

/// Turns a parsed edge-list graph into a pattern: the support becomes the
/// edge set, labels are ignored. Isolated vertices are rejected because a
/// copy is identified by its edge set alone.
pub fn pattern_from_graph(g: &LabeledDigraph) -> Result<Pattern, String> {
    for v in 0..g.vertex_count() {
        if g.is_isolated(v) {
            return Err(format!(
                "pattern declares isolated vertex `{}`; patterns must not have isolated vertices",
                g.vertex_name(v)
            ));
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.src, e.dst)).collect();
    Pattern::from_edges(&edges).map_err(|e| format!("{e}"))
}
