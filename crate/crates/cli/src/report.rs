use kacpoly::dimension::DimensionVector;
use kacpoly::quiver::Quiver;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::Format;

/// Pairing ⟨λ,μ⟩ = Σ_{i,j} min(λ_i, μ_j).
pub const PAIRING_CONVENTION: &str = "sum-of-minima";
/// Bosonic (1 - X)^{-c} for even v-degree, fermionic (1 + X)^c for odd.
pub const SYM_CONVENTION: &str = "supercommutative-v-negation";

pub struct Report {
    pub passed: bool,
    pub json: Value,
    pub text: String,
    pub tsv: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Tsv => self.tsv.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

pub fn quiver_hash(quiver: &Quiver) -> String {
    let digest = Sha256::digest(quiver.serialize().as_bytes());
    format!("{digest:x}")
}

/// Fields shared by every JSON report. `serde_json` maps are ordered, so
/// keys come out sorted.
pub fn header(command: &str, quiver: &Quiver, gamma: &DimensionVector) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("quiver_hash".into(), json!(quiver_hash(quiver)));
    m.insert("vertices".into(), json!(quiver.vertex_count()));
    m.insert("arrows".into(), json!(quiver.arrows().len()));
    m.insert("box".into(), json!(gamma.to_string()));
    m.insert(
        "conventions".into(),
        json!({ "pairing": PAIRING_CONVENTION, "sym": SYM_CONVENTION, "variable": "v = q^(1/2)" }),
    );
    m
}

pub fn integer<N: ToPrimitive + std::fmt::Display>(n: &N) -> Value {
    n.to_i64().map_or_else(|| json!(n.to_string()), |k| json!(k))
}

pub fn text_header(quiver: &Quiver) -> String {
    let (v, a) = (quiver.vertex_count(), quiver.arrows().len());
    let vertices = if v == 1 { "1 vertex".to_string() } else { format!("{v} vertices") };
    let arrows = if a == 1 { "1 arrow".to_string() } else { format!("{a} arrows") };
    format!(
        "quiver {} ({vertices}, {arrows})\nconventions: pairing={PAIRING_CONVENTION} sym={SYM_CONVENTION}\n",
        &quiver_hash(quiver)[..12],
    )
}

/// Left-aligned columns separated by two spaces.
pub fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j + 1 == row.len() {
                    c.clone()
                } else {
                    format!("{c:<w$}", w = widths[j])
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn tsv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join("\t") + "\n").collect()
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
