//! JSONL, CSV and aligned-table renderings of flat records.

use std::io::Write;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Table,
}

/// Writes rows as they come, except tables, which need every row to size
/// their columns.
pub struct Emitter<W: Write> {
    format: Format,
    out: W,
    header: Option<Vec<String>>,
    pending: Vec<Vec<String>>,
}

fn cell(v: &Value, sep: &str) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(|x| cell(x, sep)).collect::<Vec<_>>().join(sep),
        other => other.to_string(),
    }
}

fn csv_line(fields: &[String]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(fields)?;
    w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))
}

impl<W: Write> Emitter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Emitter {
            format,
            out,
            header: None,
            pending: Vec::new(),
        }
    }

    pub fn emit<T: Serialize>(&mut self, row: &T) -> Result<()> {
        let value = serde_json::to_value(row)?;
        let Value::Object(map) = &value else {
            bail!("only objects can be emitted");
        };
        if self.format == Format::Jsonl {
            writeln!(self.out, "{}", serde_json::to_string(&value)?)?;
            return Ok(());
        }
        let keys: Vec<String> = map.keys().cloned().collect();
        let sep = if self.format == Format::Csv { ";" } else { "," };
        let cells: Vec<String> = map.values().map(|v| cell(v, sep)).collect();
        if self.header.is_none() {
            if self.format == Format::Csv {
                self.out.write_all(&csv_line(&keys)?)?;
            }
            self.header = Some(keys);
        }
        match self.format {
            Format::Csv => self.out.write_all(&csv_line(&cells)?)?,
            _ => self.pending.push(cells),
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        if self.format == Format::Table {
            if let Some(header) = &self.header {
                let mut widths: Vec<usize> = header.iter().map(String::len).collect();
                for row in &self.pending {
                    for (w, c) in widths.iter_mut().zip(row) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(self.out, "{}", line(header))?;
                for row in &self.pending {
                    writeln!(self.out, "{}", line(row))?;
                }
            }
        }
        self.out.flush()?;
        Ok(self.out)
    }
}
