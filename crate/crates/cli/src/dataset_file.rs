//! TOML dataset files. Key names carry their units; matrices are flat
//! row-major arrays (9 numbers for inertias, 36 for compliances).
//!
//! ```toml
//! name = "ifw"
//! assembly = "below"
//! drive_stiffness_n_per_m = 1e9
//!
//! [geometry]
//! a_m = 0.92
//! l1_m = 0.85
//! l2_m = 0.775
//! l_tool_m = 0.155
//!
//! [mass]
//! leg1_kg = 69.705
//! ...
//!
//! [[correction]]
//! matrix = "foot"
//! row = 6
//! col = 6
//! value = 3.16e-7
//! note = "..."
//! ```

use std::path::Path;

use biglide::dataset::{Correction, LinkMatrix, MechanismDataset, ValidationReport};
use biglide::mechanism::{AssemblySign, Geometry};
use biglide::numerics::Matrix;
use serde::Deserialize;
use toml::Spanned;

use crate::IoError;

/// Name accepted in place of a path for the built-in reference dataset.
pub const BUILT_IN: &str = "ifw";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDataset {
    name: String,
    assembly: String,
    drive_stiffness_n_per_m: f64,
    geometry: FileGeometry,
    mass: FileMass,
    center_of_mass: FileCenters,
    inertia_kg_m2: FileInertias,
    compliance: FileCompliances,
    #[serde(default, rename = "correction")]
    corrections: Vec<FileCorrection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileGeometry {
    a_m: f64,
    l1_m: f64,
    l2_m: f64,
    l_tool_m: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileMass {
    leg1_kg: f64,
    leg2_kg: f64,
    tool_kg: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCenters {
    l_g1_m: f64,
    l_g2_m: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileInertias {
    foot: Spanned<Vec<f64>>,
    leg1: Spanned<Vec<f64>>,
    leg2: Spanned<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCompliances {
    foot: Spanned<Vec<f64>>,
    leg1: Spanned<Vec<f64>>,
    leg2: Spanned<Vec<f64>>,
    tool: Spanned<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCorrection {
    matrix: Spanned<String>,
    row: usize,
    col: usize,
    value: f64,
    #[serde(default)]
    note: String,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

struct Ctx<'a> {
    path: &'a str,
    text: &'a str,
}

impl Ctx<'_> {
    fn error(&self, offset: usize, field: &str, message: impl Into<String>) -> IoError {
        IoError::Parse {
            path: self.path.to_string(),
            line: line_of(self.text, offset),
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn matrix(&self, v: &Spanned<Vec<f64>>, n: usize, field: &str) -> Result<Matrix, IoError> {
        if v.get_ref().len() != n * n {
            return Err(self.error(
                v.span().start,
                field,
                format!("expected {} numbers, found {}", n * n, v.get_ref().len()),
            ));
        }
        Ok(Matrix::from_row_slice(n, n, v.get_ref()))
    }
}

/// Parses dataset text. `path` only labels errors. The result is not yet
/// validated.
pub fn parse_dataset(text: &str, path: &str) -> Result<MechanismDataset, IoError> {
    let file: FileDataset = toml::from_str(text).map_err(|e| {
        let offset = e.span().map(|s| s.start).unwrap_or(0);
        let message = e.message().to_string();
        let field = message
            .split('`')
            .nth(1)
            .filter(|_| message.contains('`'))
            .unwrap_or("document")
            .to_string();
        IoError::Parse {
            path: path.to_string(),
            line: line_of(text, offset),
            field,
            message,
        }
    })?;
    let ctx = Ctx { path, text };
    let assembly = match file.assembly.as_str() {
        "below" => AssemblySign::Below,
        "above" => AssemblySign::Above,
        other => {
            let offset = text.find("assembly").unwrap_or(0);
            return Err(ctx.error(
                offset,
                "assembly",
                format!("expected \"below\" or \"above\", found {other:?}"),
            ));
        }
    };
    let mut corrections = Vec::with_capacity(file.corrections.len());
    for c in &file.corrections {
        let matrix = LinkMatrix::from_name(c.matrix.get_ref()).ok_or_else(|| {
            ctx.error(
                c.matrix.span().start,
                "correction.matrix",
                format!("unknown matrix {:?}", c.matrix.get_ref()),
            )
        })?;
        corrections.push(Correction {
            matrix,
            row: c.row,
            col: c.col,
            value: c.value,
            note: c.note.clone(),
        });
    }
    Ok(MechanismDataset {
        name: file.name,
        geometry: Geometry {
            a: file.geometry.a_m,
            l1: file.geometry.l1_m,
            l2: file.geometry.l2_m,
            l_tool: file.geometry.l_tool_m,
            assembly,
        },
        m_leg1: file.mass.leg1_kg,
        m_leg2: file.mass.leg2_kg,
        m_tool: file.mass.tool_kg,
        l_g1: file.center_of_mass.l_g1_m,
        l_g2: file.center_of_mass.l_g2_m,
        j_foot: ctx.matrix(&file.inertia_kg_m2.foot, 3, "inertia_kg_m2.foot")?,
        j_leg1: ctx.matrix(&file.inertia_kg_m2.leg1, 3, "inertia_kg_m2.leg1")?,
        j_leg2: ctx.matrix(&file.inertia_kg_m2.leg2, 3, "inertia_kg_m2.leg2")?,
        k_foot: ctx.matrix(&file.compliance.foot, 6, "compliance.foot")?,
        k_leg1: ctx.matrix(&file.compliance.leg1, 6, "compliance.leg1")?,
        k_leg2: ctx.matrix(&file.compliance.leg2, 6, "compliance.leg2")?,
        k_tool: ctx.matrix(&file.compliance.tool, 6, "compliance.tool")?,
        drive_stiffness: file.drive_stiffness_n_per_m,
        corrections,
    })
}

fn number(v: f64) -> String {
    // Both forms are the shortest text that parses back to the same bits.
    let a = v.abs();
    if v == 0.0 || (1e-3..1e7).contains(&a) {
        let s = format!("{v}");
        if s.contains('.') {
            s
        } else {
            s + ".0"
        }
    } else {
        format!("{v:e}")
    }
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn matrix_line(out: &mut String, key: &str, m: &Matrix) {
    out.push_str(key);
    out.push_str(" = [\n");
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|v| number(*v)).collect();
        out.push_str("    ");
        out.push_str(&row.join(", "));
        out.push_str(",\n");
    }
    out.push_str("]\n");
}

/// Serializes a dataset; [`parse_dataset`] restores it field for field.
pub fn dataset_to_string(ds: &MechanismDataset) -> String {
    let g = &ds.geometry;
    let assembly = match g.assembly {
        AssemblySign::Below => "below",
        AssemblySign::Above => "above",
    };
    let mut out = String::new();
    let kv = |out: &mut String, k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    kv(&mut out, "name", quoted(&ds.name));
    kv(&mut out, "assembly", quoted(assembly));
    kv(&mut out, "drive_stiffness_n_per_m", number(ds.drive_stiffness));
    out.push_str("\n[geometry]\n");
    kv(&mut out, "a_m", number(g.a));
    kv(&mut out, "l1_m", number(g.l1));
    kv(&mut out, "l2_m", number(g.l2));
    kv(&mut out, "l_tool_m", number(g.l_tool));
    out.push_str("\n[mass]\n");
    kv(&mut out, "leg1_kg", number(ds.m_leg1));
    kv(&mut out, "leg2_kg", number(ds.m_leg2));
    kv(&mut out, "tool_kg", number(ds.m_tool));
    out.push_str("\n[center_of_mass]\n");
    kv(&mut out, "l_g1_m", number(ds.l_g1));
    kv(&mut out, "l_g2_m", number(ds.l_g2));
    out.push_str("\n[inertia_kg_m2]\n");
    matrix_line(&mut out, "foot", &ds.j_foot);
    matrix_line(&mut out, "leg1", &ds.j_leg1);
    matrix_line(&mut out, "leg2", &ds.j_leg2);
    out.push_str("\n[compliance]\n");
    matrix_line(&mut out, "foot", &ds.k_foot);
    matrix_line(&mut out, "leg1", &ds.k_leg1);
    matrix_line(&mut out, "leg2", &ds.k_leg2);
    matrix_line(&mut out, "tool", &ds.k_tool);
    for c in &ds.corrections {
        out.push_str("\n[[correction]]\n");
        kv(&mut out, "matrix", quoted(c.matrix.name()));
        kv(&mut out, "row", c.row.to_string());
        kv(&mut out, "col", c.col.to_string());
        kv(&mut out, "value", number(c.value));
        kv(&mut out, "note", quoted(&c.note));
    }
    out
}

pub fn save_dataset(ds: &MechanismDataset, path: &Path) -> Result<(), IoError> {
    std::fs::write(path, dataset_to_string(ds)).map_err(|e| IoError::io(path, e))
}

/// Loads and validates a dataset from `source`: a file path or `"ifw"`.
pub fn load_dataset(source: &str) -> Result<(MechanismDataset, ValidationReport), IoError> {
    let ds = read_dataset(source)?;
    let report = ds.validate().map_err(|e| IoError::Validation(e.to_string()))?;
    Ok((ds, report))
}

/// Like [`load_dataset`] without validation.
pub fn read_dataset(source: &str) -> Result<MechanismDataset, IoError> {
    if source == BUILT_IN {
        return Ok(MechanismDataset::ifw());
    }
    let text = std::fs::read_to_string(source).map_err(|e| IoError::io(source, e))?;
    parse_dataset(&text, source)
}
