//! CSV interchange and the plain-text config format.
//!
//! CSV is the only interchange format: UTF-8, RFC-4180-style quoting, and a
//! mandatory header row. Floating-point numbers are printed with 17
//! significant digits so any reader can reproduce the exact f64 bits.

pub mod conf;

use crate::cloud::PointCloud;
use crate::graph::NeighborhoodGraph;
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Cloud(#[from] crate::cloud::CloudError),
}

/// Formats an f64 with 17 significant digits, enough to round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn quote_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Splits one CSV record, honoring quoted fields with doubled-quote escapes.
fn split_record(line: &str, lineno: usize) -> Result<Vec<String>, IoError> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut chars = line.chars().peekable();
    let mut in_quotes = false;
    while let Some(c) = chars.next() {
        if in_quotes {
            match c {
                '"' => {
                    if chars.peek() == Some(&'"') {
                        chars.next();
                        cur.push('"');
                    } else {
                        in_quotes = false;
                    }
                }
                _ => cur.push(c),
            }
        } else {
            match c {
                '"' if cur.is_empty() => in_quotes = true,
                ',' => {
                    fields.push(std::mem::take(&mut cur));
                }
                '"' => {
                    return Err(IoError::Malformed {
                        line: lineno,
                        msg: "stray quote inside unquoted field".into(),
                    })
                }
                _ => cur.push(c),
            }
        }
    }
    if in_quotes {
        return Err(IoError::Malformed {
            line: lineno,
            msg: "unterminated quoted field".into(),
        });
    }
    fields.push(cur);
    Ok(fields)
}

/// Writes a cloud as `x1,...,xD[,label][,ambiguous]`.
pub fn write_cloud_csv<W: Write>(
    w: &mut W,
    cloud: &PointCloud,
    labels: Option<&[usize]>,
    ambiguous: Option<&[bool]>,
) -> Result<(), IoError> {
    let d = cloud.dim();
    let mut header: Vec<String> = (1..=d).map(|k| format!("x{k}")).collect();
    if labels.is_some() {
        header.push("label".into());
    }
    if ambiguous.is_some() {
        header.push("ambiguous".into());
    }
    writeln!(w, "{}", header.join(","))?;
    for i in 0..cloud.len() {
        let mut row: Vec<String> = cloud.point(i).iter().map(|&v| fmt_f64(v)).collect();
        if let Some(l) = labels {
            row.push(l[i].to_string());
        }
        if let Some(a) = ambiguous {
            row.push(if a[i] { "1" } else { "0" }.into());
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// A parsed point CSV: coordinates plus the optional label and ambiguous
/// columns, recognized by header name.
#[derive(Debug)]
pub struct CloudCsv {
    pub cloud: PointCloud,
    pub labels: Option<Vec<usize>>,
    pub ambiguous: Option<Vec<bool>>,
}

pub fn read_cloud_csv<R: BufRead>(r: R) -> Result<CloudCsv, IoError> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines.next().ok_or(IoError::Malformed {
        line: 1,
        msg: "empty input; a header row is required".into(),
    })?;
    let header = header?;
    let names = split_record(header.trim_end_matches('\r'), 1)?;
    let mut coord_cols = Vec::new();
    let mut label_col = None;
    let mut amb_col = None;
    for (k, name) in names.iter().enumerate() {
        match name.trim() {
            "label" => label_col = Some(k),
            "ambiguous" => amb_col = Some(k),
            _ => coord_cols.push(k),
        }
    }
    if coord_cols.is_empty() {
        return Err(IoError::Malformed {
            line: 1,
            msg: "no coordinate columns in header".into(),
        });
    }
    let mut data = Vec::new();
    let mut labels = label_col.map(|_| Vec::new());
    let mut ambiguous = amb_col.map(|_| Vec::new());
    let mut n = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields = split_record(line, lineno)?;
        if fields.len() != names.len() {
            return Err(IoError::Malformed {
                line: lineno,
                msg: format!("expected {} fields, found {}", names.len(), fields.len()),
            });
        }
        for &c in &coord_cols {
            let v: f64 = fields[c].trim().parse().map_err(|_| IoError::Malformed {
                line: lineno,
                msg: format!("bad number {:?} in column {}", fields[c], c + 1),
            })?;
            if !v.is_finite() {
                return Err(IoError::Malformed {
                    line: lineno,
                    msg: format!("non-finite coordinate in column {}", c + 1),
                });
            }
            data.push(v);
        }
        if let (Some(c), Some(out)) = (label_col, labels.as_mut()) {
            let v: usize = fields[c].trim().parse().map_err(|_| IoError::Malformed {
                line: lineno,
                msg: format!("bad label {:?}", fields[c]),
            })?;
            out.push(v);
        }
        if let (Some(c), Some(out)) = (amb_col, ambiguous.as_mut()) {
            let v = match fields[c].trim() {
                "0" => false,
                "1" => true,
                other => {
                    return Err(IoError::Malformed {
                        line: lineno,
                        msg: format!("ambiguous flag must be 0 or 1, got {other:?}"),
                    })
                }
            };
            out.push(v);
        }
        n += 1;
    }
    if n == 0 {
        return Err(IoError::Malformed {
            line: 1,
            msg: "no data rows".into(),
        });
    }
    let cloud = PointCloud::new(data, coord_cols.len())?;
    Ok(CloudCsv {
        cloud,
        labels,
        ambiguous,
    })
}

/// Writes cluster assignments as `point_index,label`.
pub fn write_labels_csv<W: Write>(w: &mut W, labels: &[usize]) -> Result<(), IoError> {
    writeln!(w, "point_index,label")?;
    for (i, l) in labels.iter().enumerate() {
        writeln!(w, "{i},{l}")?;
    }
    Ok(())
}

pub fn read_labels_csv<R: BufRead>(r: R) -> Result<Vec<usize>, IoError> {
    let mut rows: Vec<(usize, usize)> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if lineno == 1 {
            if line != "point_index,label" {
                return Err(IoError::Malformed {
                    line: 1,
                    msg: format!("expected header \"point_index,label\", got {line:?}"),
                });
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |s: Option<&str>| -> Option<usize> { s?.trim().parse().ok() };
        match (parse(parts.next()), parse(parts.next()), parts.next()) {
            (Some(i), Some(l), None) => rows.push((i, l)),
            _ => {
                return Err(IoError::Malformed {
                    line: lineno,
                    msg: "expected two integer fields".into(),
                })
            }
        }
    }
    rows.sort_unstable();
    for (pos, &(i, _)) in rows.iter().enumerate() {
        if i != pos {
            return Err(IoError::Malformed {
                line: i + 2,
                msg: format!("point indices must cover 0..n exactly; problem near {i}"),
            });
        }
    }
    Ok(rows.into_iter().map(|(_, l)| l).collect())
}

/// Writes the undirected edge list as `i,j,weight` with i < j.
pub fn write_edges_csv<W: Write>(w: &mut W, graph: &NeighborhoodGraph) -> Result<(), IoError> {
    writeln!(w, "i,j,weight")?;
    for (i, j, wt) in graph.edge_list() {
        writeln!(w, "{i},{j},{}", fmt_f64(wt))?;
    }
    Ok(())
}

/// Quotes a string for CSV output if it needs it.
pub fn csv_escape(s: &str) -> String {
    quote_field(s)
}
