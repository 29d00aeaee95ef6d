//! Reading and writing wordnets: edge CSV, node CSV and the JSON graph format.

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::wordnet::{DuplicatePolicy, WordNet, WordNetBuilder, WordNetError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Csv,
    Json,
}

impl GraphFormat {
    /// `.json` means JSON, anything else is treated as edge CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => GraphFormat::Json,
            _ => GraphFormat::Csv,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeRecord {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRecord {
    source: String,
    target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct GraphDocument {
    #[serde(default)]
    nodes: Vec<NodeRecord>,
    #[serde(default)]
    edges: Vec<EdgeRecord>,
}

/// Loads and validates a wordnet from `path`.
///
/// For CSV input an optional node file (`id,label`) declares isolated nodes
/// and labels.
pub fn load_wordnet(
    path: &Path,
    format: GraphFormat,
    node_file: Option<&Path>,
    duplicates: DuplicatePolicy,
) -> Result<WordNet, WordNetError> {
    let mut builder = WordNetBuilder::new().duplicate_policy(duplicates);
    let file = BufReader::new(File::open(path)?);
    match format {
        GraphFormat::Csv => read_edge_csv(file, &mut builder)?,
        GraphFormat::Json => read_json_graph(file, &mut builder)?,
    }
    if let Some(nodes) = node_file {
        read_node_csv(BufReader::new(File::open(nodes)?), &mut builder)?;
    }
    Ok(builder.build())
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim() == name)
}

pub fn read_edge_csv<R: Read>(reader: R, builder: &mut WordNetBuilder) -> Result<(), WordNetError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| WordNetError::Parse(e.to_string()))?
        .clone();
    let (src, tgt) = match (column(&headers, "source"), column(&headers, "target")) {
        (Some(s), Some(t)) => (s, t),
        _ => {
            return Err(WordNetError::Parse(
                "edge CSV header must contain `source` and `target`".into(),
            ))
        }
    };
    let wcol = column(&headers, "weight");
    for (row, record) in rdr.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| WordNetError::Parse(format!("line {line}: {e}")))?;
        let field = |i: usize| {
            record
                .get(i)
                .ok_or_else(|| WordNetError::Parse(format!("line {line}: missing column {i}")))
        };
        let source = field(src)?;
        let target = field(tgt)?;
        let weight = match wcol.and_then(|i| record.get(i)).map(str::trim) {
            None | Some("") => 1.0,
            Some(w) => w
                .parse::<f64>()
                .map_err(|_| WordNetError::Parse(format!("line {line}: bad weight `{w}`")))?,
        };
        builder.add_edge(source, target, weight)?;
    }
    Ok(())
}

pub fn read_node_csv<R: Read>(reader: R, builder: &mut WordNetBuilder) -> Result<(), WordNetError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| WordNetError::Parse(e.to_string()))?
        .clone();
    let id_col = column(&headers, "id")
        .ok_or_else(|| WordNetError::Parse("node CSV header must contain `id`".into()))?;
    let label_col = column(&headers, "label");
    for (row, record) in rdr.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| WordNetError::Parse(format!("line {line}: {e}")))?;
        let id = record
            .get(id_col)
            .ok_or_else(|| WordNetError::Parse(format!("line {line}: missing id")))?;
        let label = label_col
            .and_then(|i| record.get(i))
            .filter(|l| !l.is_empty())
            .map(str::to_owned);
        builder.add_node(id, label)?;
    }
    Ok(())
}

pub fn read_json_graph<R: Read>(reader: R, builder: &mut WordNetBuilder) -> Result<(), WordNetError> {
    let doc: GraphDocument =
        serde_json::from_reader(reader).map_err(|e| WordNetError::Parse(e.to_string()))?;
    for node in doc.nodes {
        builder.add_node(&node.id, node.label)?;
    }
    for edge in doc.edges {
        builder.add_edge(&edge.source, &edge.target, edge.weight.unwrap_or(1.0))?;
    }
    Ok(())
}

/// Writes `source,target,weight` rows in canonical edge order.
pub fn write_edge_csv<W: Write>(net: &WordNet, writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["source", "target", "weight"])?;
    for (s, t, weight) in net.edge_triples() {
        w.write_record([s.as_str(), t.as_str(), &weight.to_string()])?;
    }
    w.flush()
}

/// Writes the `id,label` node file; only needed to carry isolated nodes or labels.
pub fn write_node_csv<W: Write>(net: &WordNet, writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["id", "label"])?;
    for (i, id) in net.ids().iter().enumerate() {
        w.write_record([id.as_str(), net.label(i).unwrap_or("")])?;
    }
    w.flush()
}

/// Serializes the net in the JSON graph format (pretty printed, canonical order).
pub fn to_json_graph(net: &WordNet) -> serde_json::Value {
    let doc = GraphDocument {
        nodes: net
            .ids()
            .iter()
            .enumerate()
            .map(|(i, id)| NodeRecord {
                id: id.to_string(),
                label: net.label(i).map(str::to_owned),
            })
            .collect(),
        edges: net
            .edge_triples()
            .map(|(s, t, w)| EdgeRecord {
                source: s.to_string(),
                target: t.to_string(),
                weight: Some(w),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("graph document serializes")
}

pub fn write_json_graph<W: Write>(net: &WordNet, mut writer: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut writer, &to_json_graph(net))?;
    writeln!(writer)
}

/// Formats `value` with `digits` significant digits in the style of C's `%g`:
/// fixed notation for moderate exponents, scientific otherwise, trailing
/// zeros removed.
pub fn format_significant(value: f64, digits: usize) -> String {
    assert!(digits > 0);
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    // The `e` formatter rounds correctly, so take the exponent from it.
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{value:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
