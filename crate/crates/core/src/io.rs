//! Edge-list files, JSON result documents, DOT export and CSV reports.
//!
//! An edge-list file starts with a header `n <count>` and lists one edge per
//! line as two 0-based vertex ids. Blank lines and lines starting with `#`
//! are ignored. Writing sorts the edges, so write, read, write is
//! byte-identical.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{BoundError, BoundId, BoundReport};
use crate::fast::Ecc3Result;
use crate::graph::Graph;
use crate::oracle::EccReport;
use crate::rational::Rational;
use crate::transform::TransformTrace;
use crate::tree::{GraphError, Tree, Vertex};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Edge { line: usize, source: GraphError },
    #[error(transparent)]
    Structure(GraphError),
}

struct RawEdgeList {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    lines: Vec<usize>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_raw(input: &str) -> Result<RawEdgeList, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    let mut last_line = 0;
    for (idx, line) in input.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(line);
        let Some(count) = n else {
            match toks.as_slice() {
                [(_, "n"), (col, value)] => {
                    let v: usize = value.parse().map_err(|_| {
                        syntax(
                            lineno,
                            *col,
                            format!("vertex count '{value}' is not a non-negative integer"),
                        )
                    })?;
                    if v == 0 {
                        return Err(syntax(lineno, *col, "vertex count must be positive"));
                    }
                    n = Some(v);
                }
                _ => return Err(syntax(lineno, toks[0].0, "expected header 'n <count>'")),
            }
            continue;
        };
        if toks.len() != 2 {
            let col = toks.get(2).map_or(line.len() + 1, |t| t.0);
            return Err(syntax(
                lineno,
                col,
                format!("expected two vertex ids, found {} tokens", toks.len()),
            ));
        }
        let mut ends = [0; 2];
        for (slot, &(col, tok)) in ends.iter_mut().zip(&toks) {
            let v: Vertex = tok.parse().map_err(|_| {
                syntax(
                    lineno,
                    col,
                    format!("'{tok}' is not a non-negative integer"),
                )
            })?;
            if v >= count {
                return Err(syntax(
                    lineno,
                    col,
                    format!("vertex {v} out of range (n = {count})"),
                ));
            }
            *slot = v;
        }
        edges.push((ends[0], ends[1]));
        lines.push(lineno);
    }
    let n = n.ok_or_else(|| syntax(last_line + 1, 1, "missing header 'n <count>'"))?;
    Ok(RawEdgeList { n, edges, lines })
}

/// Attributes a structural error to the first line with the offending edge.
fn locate(raw: &RawEdgeList, err: GraphError) -> ParseError {
    let edge = match err {
        GraphError::SelfLoop(v) => Some((v, v)),
        GraphError::DuplicateEdge(a, b) | GraphError::Cycle(a, b) => Some((a, b)),
        _ => None,
    };
    let line = edge.and_then(|(a, b)| {
        let hits: Vec<usize> = raw
            .edges
            .iter()
            .zip(&raw.lines)
            .filter(|&(&(x, y), _)| (x, y) == (a, b) || (y, x) == (a, b))
            .map(|(_, &l)| l)
            .collect();
        // For a duplicate the second occurrence is the culprit.
        match err {
            GraphError::DuplicateEdge(..) => hits.get(1).or(hits.first()).copied(),
            _ => hits.last().copied(),
        }
    });
    match line {
        Some(line) => ParseError::Edge { line, source: err },
        None => ParseError::Structure(err),
    }
}

pub fn parse_edge_list(input: &str) -> Result<Tree, ParseError> {
    let raw = parse_raw(input)?;
    Tree::from_edge_list(raw.n, &raw.edges).map_err(|e| locate(&raw, e))
}

/// Parses a simple connected graph, which need not be a tree.
pub fn parse_graph_edge_list(input: &str) -> Result<Graph, ParseError> {
    let raw = parse_raw(input)?;
    Graph::from_edge_list(raw.n, &raw.edges).map_err(|e| locate(&raw, e))
}

fn write_edges(n: usize, edges: &[(Vertex, Vertex)]) -> String {
    let mut out = format!("n {n}\n");
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_edge_list(t: &Tree) -> String {
    write_edges(t.n(), &t.edges())
}

pub fn write_graph_edge_list(g: &Graph) -> String {
    write_edges(g.n(), &g.edges())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Fast,
    Oracle,
}

/// Per-vertex Steiner eccentricities and their exact average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub per_vertex: Vec<usize>,
    pub sum: u64,
    pub average: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<[Vertex; 3]>>,
    pub algorithm: Algorithm,
    pub elapsed_ms: f64,
    /// Steiner Wiener index, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steiner_wiener: Option<u64>,
    /// Floating-point rendering of `average`; informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub average_decimal: Option<f64>,
}

impl ResultDocument {
    pub fn from_fast(r: &Ecc3Result, elapsed_ms: f64) -> Self {
        ResultDocument {
            schema: SCHEMA_VERSION,
            n: r.per_vertex.len(),
            k: 3,
            per_vertex: r.per_vertex.clone(),
            sum: r.sum,
            average: r.average,
            witnesses: Some(r.witnesses.clone()),
            algorithm: Algorithm::Fast,
            elapsed_ms,
            steiner_wiener: None,
            average_decimal: None,
        }
    }

    pub fn from_oracle(r: &EccReport, elapsed_ms: f64) -> Self {
        ResultDocument {
            schema: SCHEMA_VERSION,
            n: r.per_vertex.len(),
            k: r.k,
            per_vertex: r.per_vertex.clone(),
            sum: r.sum,
            average: r.average,
            witnesses: None,
            algorithm: Algorithm::Oracle,
            elapsed_ms,
            steiner_wiener: None,
            average_decimal: None,
        }
    }

    pub fn with_decimal(mut self) -> Self {
        self.average_decimal = Some(self.average.to_f64());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents always serialize")
    }
}

fn dot_body(out: &mut String, t: &Tree, prefix: &str, indent: &str) {
    for v in 0..t.n() {
        writeln!(out, "{indent}{prefix}{v} [label=\"{v}\"];").unwrap();
    }
    for (u, v) in t.edges() {
        writeln!(out, "{indent}{prefix}{u} -- {prefix}{v};").unwrap();
    }
}

/// Graphviz rendering of a tree.
pub fn tree_to_dot(t: &Tree, name: &str) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    dot_body(&mut out, t, "v", "  ");
    out.push_str("}\n");
    out
}

/// Graphviz rendering of a trace: one cluster per snapshot, labelled with
/// its average.
pub fn trace_to_dot(trace: &TransformTrace) -> String {
    let mut out = String::from("graph trace {\n");
    for (i, snap) in trace.snapshots.iter().enumerate() {
        let label = match (i, trace.steps.get(i.wrapping_sub(1))) {
            (0, _) => match trace.steps.first() {
                Some(s) => format!("start: {}", s.before),
                None => "start".to_string(),
            },
            (_, Some(s)) => format!("step {} ({:?}): {}", s.index, s.kind, s.after),
            _ => String::new(),
        };
        writeln!(out, "  subgraph cluster_{i} {{\n    label=\"{label}\";").unwrap();
        dot_body(&mut out, snap, &format!("s{i}_"), "    ");
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct TraceDocument<'a> {
    schema: u32,
    n: usize,
    initial_edges: Vec<(Vertex, Vertex)>,
    final_edges: Vec<(Vertex, Vertex)>,
    #[serde(flatten)]
    trace: &'a TransformTrace,
}

pub fn trace_to_json(trace: &TransformTrace) -> String {
    let doc = TraceDocument {
        schema: SCHEMA_VERSION,
        n: trace.last().n(),
        initial_edges: trace.snapshots[0].edges(),
        final_edges: trace.last().edges(),
        trace,
    };
    serde_json::to_string_pretty(&doc).expect("traces always serialize")
}

/// One row of a bound verification table.
pub struct BoundRow<'a> {
    /// Which tree of the corpus the row is about.
    pub tree: usize,
    pub n: usize,
    pub bound: BoundId,
    pub outcome: &'a Result<BoundReport, BoundError>,
}

pub const BOUND_CSV_HEADER: [&str; 12] = [
    "tree",
    "n",
    "bound_id",
    "parameter",
    "lhs",
    "rhs",
    "holds",
    "equality",
    "source",
    "family",
    "candidates_holding",
    "note",
];

/// CSV table of bound reports. Out-of-range bounds get an empty verdict and
/// the reason in `note`.
pub fn bound_reports_csv(rows: &[BoundRow<'_>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BOUND_CSV_HEADER).unwrap();
    for row in rows {
        let record: Vec<String> = match row.outcome {
            Ok(r) => {
                let parameter = r
                    .parameter
                    .as_ref()
                    .map_or(String::new(), |(k, v)| format!("{k}={v}"));
                let family = r.family.as_ref().map_or(String::new(), ToString::to_string);
                let holding = r.candidates.iter().filter(|c| c.holds).count();
                vec![
                    row.tree.to_string(),
                    row.n.to_string(),
                    row.bound.to_string(),
                    parameter,
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.holds.to_string(),
                    r.equality.to_string(),
                    serde_json::to_value(r.extremal_family_value_source)
                        .unwrap()
                        .as_str()
                        .unwrap()
                        .to_string(),
                    family,
                    format!("{holding}/{}", r.candidates.len()),
                    r.skipped.join("; "),
                ]
            }
            Err(e) => {
                let mut rec = vec![
                    row.tree.to_string(),
                    row.n.to_string(),
                    row.bound.to_string(),
                ];
                rec.extend(std::iter::repeat(String::new()).take(8));
                rec.push(e.to_string());
                rec
            }
        };
        w.write_record(&record).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fast::aecc3_fast;
    use crate::prufer::random_tree;
    use crate::transform::{reduce, Strategy};
    use crate::tree::tests::t5;

    #[test]
    fn parses_examples() {
        let t = parse_edge_list("n 2\n0 1\n").unwrap();
        assert_eq!(t.edges(), vec![(0, 1)]);
        assert_eq!(parse_edge_list("n 5\n0 1\n1 2\n1 3\n3 4\n").unwrap(), t5());
        assert!(matches!(
            parse_edge_list("n 3\n0 1\n"),
            Err(ParseError::Structure(GraphError::Disconnected {
                components: 2
            }))
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a tree\n\nn 3\n# edges\n0 1\n  1 2\n";
        assert_eq!(parse_edge_list(text).unwrap().edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_edge_list("n 3\n0 1\n1 x\n").unwrap_err(),
            ParseError::Syntax {
                line: 3,
                column: 3,
                message: "'x' is not a non-negative integer".into()
            }
        );
        assert!(matches!(
            parse_edge_list("m 3\n"),
            Err(ParseError::Syntax {
                line: 1,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_edge_list("n -3\n"),
            Err(ParseError::Syntax {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_edge_list("n 3\n0 5\n"),
            Err(ParseError::Syntax {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_edge_list("n 3\n0 1 2\n"),
            Err(ParseError::Syntax {
                line: 2,
                column: 5,
                ..
            })
        ));
        assert!(matches!(
            parse_edge_list("# nothing\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("n 3\n0 1\n1 0\n"),
            Err(ParseError::Edge {
                line: 3,
                source: GraphError::DuplicateEdge(0, 1)
            })
        ));
        assert!(matches!(
            parse_edge_list("n 3\n0 1\n1 2\n2 0\n"),
            Err(ParseError::Edge { line: 4, .. })
        ));
    }

    #[test]
    fn graphs_accept_cycles() {
        let g = parse_graph_edge_list("n 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(write_graph_edge_list(&g), "n 3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn byte_stable_round_trip() {
        for seed in 0..50 {
            let t = random_tree(1 + seed as usize, seed);
            let text = write_edge_list(&t);
            let back = parse_edge_list(&text).unwrap();
            assert_eq!(back, t);
            assert_eq!(write_edge_list(&back), text);
        }
    }

    #[test]
    fn result_document_json() {
        let doc = ResultDocument::from_fast(&aecc3_fast(&t5()).unwrap(), 0.5);
        let json: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["average"]["num"], 18);
        assert_eq!(json["average"]["den"], 5);
        assert_eq!(json["algorithm"], "fast");
        assert!(json.get("average_decimal").is_none());
        let back: ResultDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(doc.with_decimal().average_decimal, Some(3.6));
    }

    #[test]
    fn dot_and_trace_output() {
        let dot = tree_to_dot(&t5(), "t5");
        assert!(dot.starts_with("graph \"t5\" {") && dot.contains("v1 -- v3;"));
        let (_, trace) = reduce(&t5(), Strategy::ToStar).unwrap();
        let dot = trace_to_dot(&trace);
        assert_eq!(dot.matches("subgraph").count(), trace.snapshots.len());
        let json: serde_json::Value = serde_json::from_str(&trace_to_json(&trace)).unwrap();
        assert_eq!(json["steps"].as_array().unwrap().len(), trace.steps.len());
        assert_eq!(json["steps"][0]["kind"], "pi");
        assert!(json["steps"][0]["before"]["den"].is_number());
    }

    #[test]
    fn bound_csv_quotes_family_names() {
        let t = t5();
        let outcomes = crate::families::verify_all(&t).unwrap();
        let rows: Vec<BoundRow> = outcomes
            .iter()
            .map(|(b, r)| BoundRow {
                tree: 0,
                n: t.n(),
                bound: *b,
                outcome: r,
            })
            .collect();
        let text = bound_reports_csv(&rows);
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let records: Vec<_> = reader.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), 8);
        assert!(records.iter().all(|r| r.len() == BOUND_CSV_HEADER.len()));
        assert_eq!(&records[2][9], "B(5,3)");
    }
}
