//! Report documents and their text and JSON renderings.

use std::fmt::Write as _;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use tdual_core::abelian::{FgGroup, Hom};

use crate::error::{CliError, Result};
use crate::job::{JobSpec, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A group as `{rank, torsion}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupJson {
    pub fn from_group(g: &FgGroup) -> Result<Self> {
        let torsion = g
            .torsion()
            .iter()
            .map(|d| d.to_u64().ok_or_else(|| overflow(d)))
            .collect::<Result<_>>()?;
        Ok(GroupJson {
            rank: g.free_rank(),
            torsion,
        })
    }

    pub fn to_group(&self) -> Result<FgGroup> {
        let torsion = self.torsion.iter().map(|&d| BigInt::from(d)).collect();
        Ok(FgGroup::new(self.rank, torsion)?)
    }
}

/// A homomorphism as its matrix on canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub domain: String,
    pub codomain: String,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixJson {
    pub fn from_hom(h: &Hom) -> Result<Self> {
        let m = h.matrix();
        let rows = (0..m.rows())
            .map(|r| m.row(r).iter().map(small).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(MatrixJson {
            domain: h.domain().to_string(),
            codomain: h.codomain().to_string(),
            rows,
        })
    }
}

fn overflow(x: &BigInt) -> CliError {
    CliError::Validation(format!("value {x} does not fit the report format"))
}

pub fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| overflow(x))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    /// Degree label (`H0`, `pi2`, ...) to group.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub groups: IndexMap<String, GroupJson>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub generators: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub maps: IndexMap<String, MatrixJson>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub values: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub lists: IndexMap<String, Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section {
            title: title.into(),
            ..Section::default()
        }
    }

    pub fn group(&mut self, key: impl Into<String>, g: &FgGroup) -> Result<&mut Self> {
        self.groups.insert(key.into(), GroupJson::from_group(g)?);
        Ok(self)
    }

    pub fn map(&mut self, key: impl Into<String>, h: &Hom) -> Result<&mut Self> {
        self.maps.insert(key.into(), MatrixJson::from_hom(h)?);
        Ok(self)
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl ToString) -> &mut Self {
        self.values.insert(key.into(), v.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub input: JobSpec,
    pub sections: Vec<Section>,
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportDocument {
    pub fn new(input: JobSpec) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            input,
            sections: Vec::new(),
            flags: Vec::new(),
            error: None,
        }
    }

    /// Adds a flag once, keeping first-raised order.
    pub fn flag(&mut self, flag: impl ToString) {
        let f = flag.to_string();
        if !self.flags.contains(&f) {
            self.flags.push(f);
        }
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn section(&self, title: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.title == title)
    }
}

pub fn emit_json(docs: &[ReportDocument]) -> String {
    let mut s = match docs {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("reports serialize");
    s.push('\n');
    s
}

/// Parses the output of [`emit_json`].
pub fn parse_reports(text: &str) -> Result<Vec<ReportDocument>> {
    let err = |e: serde_json::Error| CliError::Parse {
        context: "report".into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    if text.trim_start().starts_with('[') {
        serde_json::from_str(text).map_err(err)
    } else {
        serde_json::from_str(text).map(|d| vec![d]).map_err(err)
    }
}

fn group_text(g: &GroupJson) -> String {
    let mut parts = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn emit_text(docs: &[ReportDocument]) -> String {
    let mut out = String::new();
    for (i, doc) in docs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let subject = doc
            .input
            .base
            .as_deref()
            .or(doc.input.space.as_deref())
            .unwrap_or("-");
        let _ = writeln!(out, "== {} {} ==", doc.input.mode.as_str(), subject);
        for s in &doc.sections {
            let _ = writeln!(out, "[{}]", s.title);
            for (k, g) in &s.groups {
                match s.generators.get(k) {
                    Some(gens) if !gens.is_empty() => {
                        let _ = writeln!(out, "  {k} = {}  <{}>", group_text(g), gens.join(", "));
                    }
                    _ => {
                        let _ = writeln!(out, "  {k} = {}", group_text(g));
                    }
                }
            }
            for (k, m) in &s.maps {
                let rows: Vec<String> = m
                    .rows
                    .iter()
                    .map(|r| {
                        format!(
                            "[{}]",
                            r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
                        )
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "  {k}: {} -> {}  [{}]",
                    m.domain,
                    m.codomain,
                    rows.join(", ")
                );
            }
            for (k, v) in &s.values {
                let _ = writeln!(out, "  {k}: {v}");
            }
            for (k, l) in &s.lists {
                let items = if l.is_empty() {
                    "none".to_string()
                } else {
                    l.join(", ")
                };
                let _ = writeln!(out, "  {k}: {items}");
            }
        }
        if let Some(e) = &doc.error {
            let _ = writeln!(out, "error: {e}");
        }
        let flags = if doc.flags.is_empty() {
            "none".to_string()
        } else {
            doc.flags.join(", ")
        };
        let _ = writeln!(out, "flags: {flags}");
    }
    out
}

pub fn emit(docs: &[ReportDocument], format: Format) -> String {
    match format {
        Format::Text => emit_text(docs),
        Format::Json => emit_json(docs),
    }
}
