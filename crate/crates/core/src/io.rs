//! Line-oriented graph input and result output.
//!
//! * graph6: order prefix (one byte for `n <= 62`, `~` plus three bytes up to
//!   `2^18 - 1`, `~~` plus six bytes beyond), then the upper triangle in column
//!   order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, six bits per byte, offset 63,
//!   zero-padded to a byte boundary.
//! * edge list: a header line `n m` followed by `m` lines `u v` with 0-based
//!   labels. Streams may hold several such blocks; blank lines and lines
//!   starting with `#` are skipped.
//! * records: one flat row per graph and `k`, emitted as JSON lines or CSV
//!   with the same field names and values.

use std::collections::HashSet;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::criticality::CriticalityReport;
use crate::error::{malformed, Error, Location, Result};
use crate::graph::Graph;
use crate::invariants::{format_rational, BoundReport, DegreeSequence, Rational};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// A decoded graph6 line: order plus access to the adjacency bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph6Record<'a> {
    pub raw: &'a [u8],
    pub order: usize,
    payload: &'a [u8],
}

impl<'a> Graph6Record<'a> {
    /// Validates alphabet, order prefix, payload length and padding.
    pub fn parse(line: &'a str) -> Result<Self> {
        let body = line.trim_end_matches(['\n', '\r']);
        let (skip, body) = match body.strip_prefix(GRAPH6_HEADER) {
            Some(rest) => (GRAPH6_HEADER.len(), rest),
            None => (0, body),
        };
        let raw = body.as_bytes();
        if let Some(pos) = raw.iter().position(|b| !(63..=126).contains(b)) {
            return Err(malformed(
                Location::Byte(skip + pos),
                format!("byte {} outside the graph6 alphabet", raw[pos]),
            ));
        }
        let (order, head) = decode_order(raw, skip)?;
        let payload = &raw[head..];
        let bits = order * order.saturating_sub(1) / 2;
        let want = bits.div_ceil(6);
        if payload.len() != want {
            let at = skip + head + payload.len().min(want);
            return Err(malformed(
                Location::Byte(at),
                format!("payload has {} bytes, order {order} needs {want}", payload.len()),
            ));
        }
        if bits % 6 != 0 {
            let last = payload[want - 1] - 63;
            let unused = 6 - bits % 6;
            if last & ((1 << unused) - 1) != 0 {
                return Err(malformed(
                    Location::Byte(skip + head + want - 1),
                    "nonzero padding bits",
                ));
            }
        }
        Ok(Graph6Record { raw, order, payload })
    }

    /// Bit `idx` of the upper triangle in column order.
    #[inline]
    pub fn bit(&self, idx: usize) -> bool {
        (self.payload[idx / 6] - 63) >> (5 - idx % 6) & 1 == 1
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_upper_triangle(self.order, |idx| self.bit(idx))
    }

    /// Degrees straight from the bit stream, without building adjacency.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.order];
        let mut idx = 0;
        for j in 1..self.order {
            for i in 0..j {
                if self.bit(idx) {
                    deg[i] += 1;
                    deg[j] += 1;
                }
                idx += 1;
            }
        }
        deg
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_degrees(&self.degrees()).expect("graph6 degrees are below n")
    }
}

fn decode_order(raw: &[u8], skip: usize) -> Result<(usize, usize)> {
    let value = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    match raw {
        [] => Err(malformed(Location::Byte(skip), "empty graph6 line")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(malformed(Location::Byte(skip + 2 + rest.len()), "truncated order"));
            }
            let n = value(&rest[..6]);
            if n < 258_048 {
                return Err(malformed(Location::Byte(skip), format!("non-canonical order prefix for {n}")));
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(malformed(Location::Byte(skip + 1 + rest.len()), "truncated order"));
            }
            let n = value(&rest[..3]);
            if n < 63 {
                return Err(malformed(Location::Byte(skip), format!("non-canonical order prefix for {n}")));
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((*b - 63) as usize, 1)),
    }
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    Ok(Graph6Record::parse(line)?.to_graph())
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    let push6 = |out: &mut Vec<u8>, value: usize, groups: u32| {
        for shift in (0..groups).rev() {
            out.push(((value >> (6 * shift)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        push6(&mut out, n, 3);
    } else {
        out.extend([126, 126]);
        push6(&mut out, n, 6);
    }
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                (acc, filled) = (0, 0);
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// An edge list as read, before committing to a bit-matrix graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::from_edge_list(self.n, &self.edges)
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut num = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| malformed(Location::Line(lineno), format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| malformed(Location::Line(lineno), format!("bad {what} {tok:?}")))
    };
    let a = num("first field")?;
    let b = num("second field")?;
    if it.next().is_some() {
        return Err(malformed(Location::Line(lineno), "expected exactly two fields"));
    }
    Ok((a, b))
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// Streams edge-list blocks out of a reader, tracking line numbers.
pub struct EdgeListReader<R> {
    lines: std::io::Lines<R>,
    lineno: usize,
}

impl<R: BufRead> EdgeListReader<R> {
    pub fn new(reader: R) -> Self {
        EdgeListReader {
            lines: reader.lines(),
            lineno: 0,
        }
    }

    fn next_line(&mut self) -> Option<std::io::Result<String>> {
        loop {
            let line = self.lines.next()?;
            self.lineno += 1;
            match line {
                Ok(l) if is_skippable(&l) => continue,
                other => return Some(other),
            }
        }
    }

    fn read_block(&mut self, header: String) -> Result<EdgeList> {
        let header_line = self.lineno;
        let (n, m) = parse_pair(&header, header_line)?;
        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::with_capacity(m);
        for _ in 0..m {
            let line = match self.next_line() {
                Some(Ok(l)) => l,
                Some(Err(e)) => return Err(malformed(Location::Line(self.lineno), e.to_string())),
                None => {
                    return Err(malformed(
                        Location::Line(header_line),
                        format!("header announces {m} edges, found {}", edges.len()),
                    ))
                }
            };
            let (u, v) = parse_pair(&line, self.lineno)?;
            if u >= n || v >= n {
                return Err(malformed(
                    Location::Line(self.lineno),
                    format!("label out of range for order {n}"),
                ));
            }
            if u == v {
                return Err(malformed(Location::Line(self.lineno), format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(malformed(Location::Line(self.lineno), format!("duplicate edge {u} {v}")));
            }
            edges.push((u, v));
        }
        Ok(EdgeList { n, edges })
    }
}

impl<R: BufRead> Iterator for EdgeListReader<R> {
    /// The 1-based header line of the block, and the block itself.
    type Item = (usize, Result<EdgeList>);

    fn next(&mut self) -> Option<Self::Item> {
        match self.next_line()? {
            Ok(header) => {
                let at = self.lineno;
                Some((at, self.read_block(header)))
            }
            Err(e) => Some((self.lineno, Err(malformed(Location::Line(self.lineno), e.to_string())))),
        }
    }
}

/// Parses exactly one edge-list block; trailing content is an error.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut reader = EdgeListReader::new(text.as_bytes());
    let (_, block) = reader
        .next()
        .ok_or_else(|| malformed(Location::Line(1), "empty edge list"))?;
    let list = block?;
    if reader.next_line().is_some() {
        return Err(malformed(
            Location::Line(reader.lineno),
            format!("more lines than the {} announced edges", list.edges.len()),
        ));
    }
    list.to_graph()
}

/// Output serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Jsonl,
    Csv,
}

/// One output row. Field names double as CSV column names.
///
/// Columns, in order: `id, n, m, k, sub_k, fink_jacobson, stratified,
/// stratified_t, stratified_by_t, caro_roditty, fink_jacobson_tight, stratified_tight,
/// k_exceeds_max_degree, gamma_k, witness, equality, ed_critical, ea_critical,
/// vd_critical, ed_vacuous, ea_vacuous, tail_independent, ed_floor_gap,
/// low_degree_clique, ea_gap, tail_attachment, counterexample, violation,
/// error`. Absent values are empty CSV cells and JSON `null`. Rationals are
/// written as `p/q`; witnesses as space-separated labels; `stratified_by_t`
/// as space-separated `t:p/q` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: u64,
    pub n: Option<usize>,
    pub m: Option<u64>,
    pub k: u64,
    pub sub_k: Option<u64>,
    pub fink_jacobson: Option<u64>,
    pub stratified: Option<String>,
    pub stratified_t: Option<usize>,
    pub stratified_by_t: Option<String>,
    pub caro_roditty: Option<u64>,
    pub fink_jacobson_tight: Option<bool>,
    pub stratified_tight: Option<bool>,
    pub k_exceeds_max_degree: Option<bool>,
    pub gamma_k: Option<u64>,
    pub witness: Option<String>,
    pub equality: Option<bool>,
    pub ed_critical: Option<bool>,
    pub ea_critical: Option<bool>,
    pub vd_critical: Option<bool>,
    pub ed_vacuous: Option<bool>,
    pub ea_vacuous: Option<bool>,
    pub tail_independent: Option<String>,
    pub ed_floor_gap: Option<String>,
    pub low_degree_clique: Option<String>,
    pub ea_gap: Option<String>,
    pub tail_attachment: Option<String>,
    pub counterexample: Option<String>,
    /// A theorem-level inequality failed for this row.
    pub violation: bool,
    pub error: Option<String>,
}

impl Record {
    pub fn from_bounds(id: u64, report: &BoundReport) -> Self {
        Record {
            id,
            n: Some(report.n),
            m: Some(report.m),
            k: report.k,
            sub_k: Some(report.sub_k as u64),
            fink_jacobson: Some(report.fink_jacobson),
            stratified: report.best_stratified.map(|(_, b)| format_rational(&b)),
            stratified_t: report.best_stratified.map(|(t, _)| t),
            caro_roditty: report.caro_roditty,
            fink_jacobson_tight: Some(report.fink_jacobson_tight),
            stratified_tight: Some(report.stratified_tight),
            k_exceeds_max_degree: Some(report.k_exceeds_max_degree),
            violation: !report.chain_holds(),
            ..Default::default()
        }
    }

    pub fn error(id: u64, k: u64, err: &Error) -> Self {
        Record {
            id,
            k,
            error: Some(err.to_string()),
            ..Default::default()
        }
    }

    /// Adds the stratified bound for every admissible `t`.
    pub fn with_stratified_by_t(mut self, bounds: &[(usize, Rational)]) -> Self {
        let cells: Vec<String> = bounds.iter().map(|(t, b)| format!("{t}:{}", format_rational(b))).collect();
        self.stratified_by_t = Some(cells.join(" "));
        self
    }

    /// Adds the oracle value; `sub_k > gamma_k` marks a violation.
    pub fn with_gamma(mut self, gamma_k: u64, witness: &[usize]) -> Self {
        self.gamma_k = Some(gamma_k);
        self.witness = Some(witness.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
        if let Some(sub) = self.sub_k {
            self.equality = Some(sub == gamma_k);
            self.violation |= sub > gamma_k;
        }
        self
    }

    /// Adds criticality flags; any failed structural check marks a violation.
    pub fn with_criticality(mut self, rep: &CriticalityReport) -> Self {
        let c = rep.prop_checks;
        self.sub_k.get_or_insert(rep.sub_k);
        self.ed_critical = Some(rep.ed_critical);
        self.ea_critical = Some(rep.ea_critical);
        self.vd_critical = Some(rep.vd_critical);
        self.ed_vacuous = Some(rep.ed_vacuous);
        self.ea_vacuous = Some(rep.ea_vacuous);
        self.tail_independent = Some(c.tail_independent.as_str().into());
        self.ed_floor_gap = Some(c.ed_floor_gap.as_str().into());
        self.low_degree_clique = Some(c.low_degree_clique.as_str().into());
        self.ea_gap = Some(c.ea_gap.as_str().into());
        self.tail_attachment = Some(c.tail_attachment.as_str().into());
        self.counterexample = rep.counterexample.map(|m| m.to_string());
        self.violation |= c.failures() > 0;
        self
    }
}

pub const CSV_COLUMNS: &[&str] = &[
    "id",
    "n",
    "m",
    "k",
    "sub_k",
    "fink_jacobson",
    "stratified",
    "stratified_t",
    "stratified_by_t",
    "caro_roditty",
    "fink_jacobson_tight",
    "stratified_tight",
    "k_exceeds_max_degree",
    "gamma_k",
    "witness",
    "equality",
    "ed_critical",
    "ea_critical",
    "vd_critical",
    "ed_vacuous",
    "ea_vacuous",
    "tail_independent",
    "ed_floor_gap",
    "low_degree_clique",
    "ea_gap",
    "tail_attachment",
    "counterexample",
    "violation",
    "error",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

/// One record as a single line without the trailing newline.
pub fn emit_record(record: &Record, format: RecordFormat) -> String {
    match format {
        RecordFormat::Jsonl => serde_json::to_string(record).expect("record serializes"),
        RecordFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.serialize(record).expect("record serializes");
            let bytes = w.into_inner().expect("in-memory writer");
            String::from_utf8(bytes)
                .expect("csv output is UTF-8")
                .trim_end_matches(['\n', '\r'])
                .to_string()
        }
    }
}
