//! Cell tables in markdown, JSON and CSV.
//!
//! Each two-sided cell is a grid whose rows are right cells and whose columns
//! are left cells; a box holds `L ∩ R` in ShortLex order. Longest elements of
//! standard parabolic subgroups are flagged (bold in markdown).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CellDecomposition;
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::hecke::CONVENTION_VERSION;

#[derive(Debug, Copy, Clone, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Markdown,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::UnsupportedFormat(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub spec: String,
    pub convention_version: String,
    pub cells: Vec<CellJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub a: u32,
    pub left_cells: Vec<Vec<String>>,
    pub right_cells: Vec<Vec<String>>,
    /// `grid[row][column]`: rows are right cells, columns left cells.
    pub grid: Vec<Vec<Vec<String>>>,
    pub parabolic_longest: Vec<String>,
    pub order_successors: Vec<usize>,
}

impl ReportJson {
    pub fn new(sys: &CoxeterSystem, dec: &CellDecomposition) -> Self {
        let labels = |xs: &[crate::coxeter::Element]| -> Vec<String> {
            xs.iter().map(|&x| sys.label(x)).collect()
        };
        let j_part = dec.two_sided_cells();
        let cells = (0..j_part.len())
            .map(|j| {
                let lefts = dec.left_cells_in(j);
                let rights = dec.right_cells_in(j);
                let grid = rights
                    .iter()
                    .map(|&r| lefts.iter().map(|&l| labels(&dec.intersection(l, r))).collect())
                    .collect();
                let parabolic: Vec<_> = j_part
                    .block(j)
                    .iter()
                    .copied()
                    .filter(|&x| dec.is_parabolic_longest(x))
                    .collect();
                CellJson {
                    a: dec.a_value(j),
                    left_cells: lefts.iter().map(|&l| labels(dec.left_cells().block(l))).collect(),
                    right_cells: rights.iter().map(|&r| labels(dec.right_cells().block(r))).collect(),
                    grid,
                    parabolic_longest: labels(&parabolic),
                    order_successors: j_part.successors(j),
                }
            })
            .collect();
        ReportJson {
            spec: sys.spec().to_string(),
            convention_version: CONVENTION_VERSION.into(),
            cells,
        }
    }
}

/// Renders the cell tables of `dec`.
pub fn cell_report(sys: &CoxeterSystem, dec: &CellDecomposition, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&ReportJson::new(sys, dec))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Markdown => Ok(markdown(sys, dec)),
        ReportFormat::Csv => csv_rows(sys, dec),
    }
}

fn markdown(sys: &CoxeterSystem, dec: &CellDecomposition) -> String {
    let mut out = String::new();
    let j_part = dec.two_sided_cells();
    let _ = writeln!(out, "# Cells of {}\n", sys.spec());
    let _ = writeln!(
        out,
        "{} elements, {} two-sided cells, {} left cells. Rows are right cells and \
         columns are left cells; bold entries are longest elements of standard \
         parabolic subgroups.\n",
        sys.order(),
        j_part.len(),
        dec.left_cells().len()
    );
    for j in 0..j_part.len() {
        let lefts = dec.left_cells_in(j);
        let rights = dec.right_cells_in(j);
        let _ = writeln!(out, "## a = {}\n", dec.a_value(j));
        let succ = j_part.successors(j);
        let succ = if succ.is_empty() {
            "none".to_string()
        } else {
            succ.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        };
        let _ = writeln!(
            out,
            "Two-sided cell {j}: size {}, left cells: {}, right cells: {}. Covered by: {succ}.\n",
            j_part.block(j).len(),
            lefts.len(),
            rights.len()
        );
        out.push_str("| |");
        for l in &lefts {
            let _ = write!(out, " L{l} |");
        }
        out.push_str("\n|---|");
        for _ in &lefts {
            out.push_str("---|");
        }
        out.push('\n');
        for &r in &rights {
            let _ = write!(out, "| R{r} |");
            for &l in &lefts {
                let cell: Vec<String> = dec
                    .intersection(l, r)
                    .into_iter()
                    .map(|x| {
                        if dec.is_parabolic_longest(x) {
                            format!("**{}**", sys.label(x))
                        } else {
                            sys.label(x)
                        }
                    })
                    .collect();
                let _ = write!(out, " {} |", cell.join(", "));
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

fn csv_rows(sys: &CoxeterSystem, dec: &CellDecomposition) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "length", "L-id", "R-id", "J-id", "a"])?;
    for x in sys.elements() {
        let (l, r, j) = dec.cell_of(x);
        w.write_record([
            sys.label(x),
            sys.length(x).to_string(),
            l.to_string(),
            r.to_string(),
            j.to_string(),
            dec.a_value(j).to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
