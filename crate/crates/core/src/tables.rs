//! Rendering of the numerics, deformation, GV and helix tables as text,
//! JSON or CSV. Output is byte-deterministic.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::defalg::{all_profiles, gv_bounds};
use crate::error::{Error, Result};
use crate::helix::SimplesHelix;
use crate::numerics::for_length;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Numerics,
    Defalg,
    Gv,
    Helix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numerics" => Ok(Which::Numerics),
            "defalg" => Ok(Which::Defalg),
            "gv" => Ok(Which::Gv),
            "helix" => Ok(Which::Helix),
            _ => Err(Error::Parse(format!("unknown table `{s}`"))),
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

/// Renders a table. `ell` restricts to one length; all six otherwise.
pub fn render(which: Which, format: Format, ell: Option<i64>) -> Result<String> {
    let ells: Vec<i64> = match ell {
        Some(l) => vec![i64::from(crate::numerics::check_length(l)?)],
        None => (1..=6).collect(),
    };
    let rows: Vec<Vec<(String, Cell)>> = match which {
        Which::Numerics => ells
            .iter()
            .map(|&l| {
                let h = for_length(l)?;
                Ok(vec![
                    ("ell".into(), Cell::Int(l)),
                    ("N".into(), Cell::Int(h.period as i64)),
                    ("ranks".into(), Cell::List(h.ranks)),
                    ("ns".into(), Cell::List(h.ns)),
                ])
            })
            .collect::<Result<_>>()?,
        Which::Defalg => {
            let mut out = Vec::new();
            for &l in &ells {
                for p in all_profiles(l)? {
                    out.push(vec![
                        ("ell".into(), Cell::Int(l)),
                        ("i".into(), Cell::Int(p.i as i64)),
                        ("loops".into(), Cell::Int(i64::from(p.loops))),
                        ("dim".into(), Cell::Int(p.dim_sliced)),
                        ("dim_ab".into(), Cell::Int(p.dim_ab_sliced)),
                        ("commutative".into(), Cell::Bool(p.commutative)),
                    ]);
                }
            }
            out
        }
        Which::Gv => ells
            .iter()
            .map(|&l| {
                let g = gv_bounds(l)?;
                let mut r = vec![("ell".into(), Cell::Int(l))];
                for k in 1..=6 {
                    r.push((format!("n{k}"), g.bounds.get(k - 1).map_or(Cell::Blank, |&b| Cell::Int(b))));
                }
                r.push(("acon".into(), Cell::Int(g.acon_bound)));
                Ok(r)
            })
            .collect::<Result<_>>()?,
        Which::Helix => {
            let mut out = Vec::new();
            for &l in &ells {
                let h = SimplesHelix::new(l)?;
                for i in 0..h.period() as i64 {
                    let s = h.simple_at(i);
                    out.push(vec![
                        ("ell".into(), Cell::Int(l)),
                        ("i".into(), Cell::Int(i)),
                        ("simple".into(), Cell::Text(s.to_string())),
                        ("sheaf".into(), Cell::Json(serde_json::to_value(s).expect("serializable"))),
                    ]);
                }
            }
            out
        }
    };
    Ok(match format {
        Format::Json => {
            let arr: Vec<serde_json::Map<String, serde_json::Value>> =
                rows.iter().map(|r| r.iter().map(|(k, c)| (k.clone(), c.json())).collect()).collect();
            let mut s = serde_json::to_string_pretty(&arr).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let visible = |r: &Vec<(String, Cell)>| -> Vec<String> {
                r.iter().filter(|(_, c)| !matches!(c, Cell::Json(_))).map(|(k, _)| k.clone()).collect()
            };
            if let Some(first) = rows.first() {
                w.write_record(visible(first)).map_err(csv_err)?;
            }
            for r in &rows {
                w.write_record(r.iter().filter(|(_, c)| !matches!(c, Cell::Json(_))).map(|(_, c)| c.text()))
                    .map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?).expect("utf8")
        }
        Format::Text => text_table(&rows),
    })
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Debug, Clone, Serialize)]
enum Cell {
    Int(i64),
    Bool(bool),
    List(Vec<i64>),
    Text(String),
    Json(serde_json::Value),
    Blank,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => (if *b { "yes" } else { "no" }).to_string(),
            Cell::List(v) => v.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
            Cell::Text(s) => s.clone(),
            Cell::Json(v) => v.to_string(),
            Cell::Blank => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => (*v).into(),
            Cell::Bool(b) => (*b).into(),
            Cell::List(v) => v.clone().into(),
            Cell::Text(s) => s.clone().into(),
            Cell::Json(v) => v.clone(),
            Cell::Blank => serde_json::Value::Null,
        }
    }
}

fn text_table(rows: &[Vec<(String, Cell)>]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let keep: Vec<usize> = (0..first.len()).filter(|&j| !matches!(first[j].1, Cell::Json(_))).collect();
    let header: Vec<String> = keep.iter().map(|&j| first[j].0.clone()).collect();
    let body: Vec<Vec<String>> = rows.iter().map(|r| keep.iter().map(|&j| r[j].1.text()).collect()).collect();
    let widths: Vec<usize> = (0..keep.len())
        .map(|j| body.iter().map(|r| r[j].chars().count()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in std::iter::once(&header).chain(body.iter()) {
        let cells: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gv_csv_has_blanks() {
        let s = render(Which::Gv, Format::Csv, None).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "ell,n1,n2,n3,n4,n5,n6,acon");
        assert_eq!(lines[1], "1,1,,,,,,1");
        assert_eq!(lines[6], "6,6,6,4,3,2,1,200");
    }

    #[test]
    fn selectors_parse() {
        assert!("numerics".parse::<Which>().is_ok());
        assert!("bogus".parse::<Which>().is_err());
        assert!("yaml".parse::<Format>().is_err());
    }
}
