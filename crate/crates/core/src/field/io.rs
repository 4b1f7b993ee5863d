//! Grid-field and residual-report file formats.
//!
//! CSV: header `t,x,y,z,<16 blade names>` (the scalar column is named `s`),
//! one node per row in storage order. Binary: one line of JSON describing the
//! grid, then `16 × nodes` little-endian f64 coefficients.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Grid4, GridField, StencilOrder};
use crate::algebra::blades::{BLADE_COUNT, BLADE_NAMES};
use crate::algebra::Multivector;
use crate::error::{Error, Result};

const COORDS: [&str; 4] = ["t", "x", "y", "z"];
const BINARY_FORMAT: &str = "stalab-grid-f64le";

fn column_names() -> Vec<String> {
    COORDS
        .iter()
        .map(|c| c.to_string())
        .chain(BLADE_NAMES.iter().map(|b| if b.is_empty() { "s".to_string() } else { b.to_string() }))
        .collect()
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_grid_csv<W: Write>(field: &GridField, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(column_names()).map_err(csv_err)?;
    let grid = field.grid();
    for (i, v) in field.values().iter().enumerate() {
        let x = grid.node(grid.multi_index(i));
        let row: Vec<String> = x.iter().chain(v.coeffs().iter()).map(|c| format!("{c:?}")).collect();
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a CSV grid; node order and uniform spacing are checked, not assumed.
pub fn read_grid_csv<R: Read>(input: R, order: StencilOrder) -> Result<GridField> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
    if header != column_names() {
        return Err(Error::Parse(format!("unexpected grid CSV header: {}", header.join(","))));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let vals = rec
            .iter()
            .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != 4 + BLADE_COUNT {
            return Err(Error::Parse(format!("row has {} columns", vals.len())));
        }
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err(Error::Parse("grid CSV has no rows".into()));
    }
    let mut origin = [0.0; 4];
    let mut spacing = [1.0; 4];
    let mut counts = [1; 4];
    for mu in 0..4 {
        let mut axis: Vec<f64> = rows.iter().map(|r| r[mu]).collect();
        axis.sort_by(f64::total_cmp);
        axis.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        origin[mu] = axis[0];
        counts[mu] = axis.len();
        if axis.len() > 1 {
            spacing[mu] = (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64;
        }
    }
    let grid = Grid4::new(origin, spacing, counts)?;
    if grid.len() != rows.len() {
        return Err(Error::Parse(format!("{} rows do not fill a {:?} grid", rows.len(), counts)));
    }
    let mut values = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let x = [row[0], row[1], row[2], row[3]];
        if grid.locate(&x) != Some(grid.multi_index(i)) {
            return Err(Error::Parse(format!("row {i} at {x:?} is not node {:?}", grid.multi_index(i))));
        }
        values.push(Multivector::from_coeffs(std::array::from_fn(|k| row[4 + k])));
    }
    GridField::new(grid, values, order)
}

#[derive(Serialize, Deserialize)]
struct BinaryHeader {
    format: String,
    origin: [f64; 4],
    spacing: [f64; 4],
    counts: [usize; 4],
    blades: Vec<String>,
}

pub fn write_grid_binary<W: Write>(field: &GridField, mut out: W) -> Result<()> {
    let g = field.grid();
    let header = BinaryHeader {
        format: BINARY_FORMAT.into(),
        origin: g.origin,
        spacing: g.spacing,
        counts: g.counts,
        blades: column_names()[4..].to_vec(),
    };
    let line = serde_json::to_string(&header).map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(line.as_bytes())?;
    out.write_all(b"\n")?;
    for v in field.values() {
        for c in v.coeffs() {
            out.write_all(&c.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_grid_binary<R: Read>(input: R, order: StencilOrder) -> Result<GridField> {
    let mut r = BufReader::new(input);
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header: BinaryHeader = serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))?;
    if header.format != BINARY_FORMAT || header.blades != column_names()[4..] {
        return Err(Error::Parse("unrecognised binary grid header".into()));
    }
    let grid = Grid4::new(header.origin, header.spacing, header.counts)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut buf = [0u8; 8];
    for _ in 0..grid.len() {
        let mut c = [0.0; BLADE_COUNT];
        for slot in c.iter_mut() {
            r.read_exact(&mut buf)?;
            *slot = f64::from_le_bytes(buf);
        }
        values.push(Multivector::from_coeffs(c));
    }
    if r.read(&mut buf)? != 0 {
        return Err(Error::Parse("trailing bytes after coefficient block".into()));
    }
    GridField::new(grid, values, order)
}

pub fn save_grid_csv(field: &GridField, path: &Path) -> Result<()> {
    write_grid_csv(field, BufWriter::new(File::create(path)?))
}

pub fn load_grid_csv(path: &Path, order: StencilOrder) -> Result<GridField> {
    read_grid_csv(BufReader::new(File::open(path)?), order)
}

pub fn save_grid_binary(field: &GridField, path: &Path) -> Result<()> {
    write_grid_binary(field, BufWriter::new(File::create(path)?))
}

pub fn load_grid_binary(path: &Path, order: StencilOrder) -> Result<GridField> {
    read_grid_binary(File::open(path)?, order)
}

/// Residual table: `node` index column followed by the named value columns.
pub fn write_residual_csv<W: Write>(out: W, columns: &[&str], rows: &[(usize, Vec<f64>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(std::iter::once("node").chain(columns.iter().copied())).map_err(csv_err)?;
    for (node, vals) in rows {
        if vals.len() != columns.len() {
            return Err(Error::InvalidArgument(format!("row {node} has {} values", vals.len())));
        }
        let rec = std::iter::once(node.to_string()).chain(vals.iter().map(|v| format!("{v:?}")));
        w.write_record(rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
