//! CSV and Markdown rendering of census reports.

use std::fmt;
use std::str::FromStr;

use super::{CensusReport, ReportRow};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => Err(Error::Format(format!("unknown table format {other:?}"))),
        }
    }
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Markdown => "md",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// T, T-ISO, S, NS, NSE.
    Counts,
    /// T-ISO, PU and their ratio.
    Unique,
    /// PNF, PF and the separability split of PF.
    Factorisable,
    /// 2-NB, 2-TNB, 1-P, 1-TP.
    Nonbasic,
}

impl Table {
    pub const ALL: [Table; 4] = [
        Table::Counts,
        Table::Unique,
        Table::Factorisable,
        Table::Nonbasic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Table::Counts => "counts",
            Table::Unique => "unique",
            Table::Factorisable => "factorisable",
            Table::Nonbasic => "nonbasic",
        }
    }

    fn title(self) -> &'static str {
        match self {
            Table::Counts => "Rooted digraphs by separability",
            Table::Unique => "Unique greedoid polynomials",
            Table::Factorisable => "GM-factorisability of unique polynomials",
            Table::Nonbasic => "Digraphs with nonbasic and primary factors",
        }
    }

    fn header(self) -> &'static [&'static str] {
        match self {
            Table::Counts => &["n", "T", "T-ISO", "S", "NS", "NSE"],
            Table::Unique => &["n", "T-ISO", "PU", "PU/T-ISO"],
            Table::Factorisable => &["n", "PNF", "PF", "PFS", "PFNS", "COMM", "PFSU", "PFNSU"],
            Table::Nonbasic => &["n", "2-NB", "2-TNB", "1-P", "1-TP"],
        }
    }

    fn cells(self, r: &ReportRow) -> Vec<String> {
        let ints = |xs: &[usize]| xs.iter().map(usize::to_string).collect();
        match self {
            Table::Counts => ints(&[r.n, r.t, r.t_iso, r.s, r.ns, r.nse]),
            Table::Unique => {
                let mut c: Vec<String> = ints(&[r.n, r.t_iso, r.pu]);
                c.push(format!("{:.4}", r.pu as f64 / r.t_iso as f64));
                c
            }
            Table::Factorisable => {
                ints(&[r.n, r.pnf, r.pf, r.pfs, r.pfns, r.comm, r.pfsu, r.pfnsu])
            }
            Table::Nonbasic => ints(&[r.n, r.nb2, r.tnb2, r.p1, r.tp1]),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn emit_table(report: &CensusReport, table: Table, format: TableFormat) -> String {
    let header = table.header();
    let rows: Vec<Vec<String>> = report.rows.iter().map(|r| table.cells(r)).collect();
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        TableFormat::Markdown => {
            let line = |cells: &[&str]| format!("| {} |\n", cells.join(" | "));
            out.push_str(&line(header));
            out.push_str(&line(&vec!["---"; header.len()]));
            for row in &rows {
                let cells: Vec<&str> = row.iter().map(String::as_str).collect();
                out.push_str(&line(&cells));
            }
        }
    }
    out
}

/// Every table, each preceded by a title line.
pub fn emit_tables(report: &CensusReport, format: TableFormat) -> String {
    Table::ALL
        .iter()
        .map(|&t| {
            let title = match format {
                TableFormat::Csv => format!("# {}\n", t.title()),
                TableFormat::Markdown => format!("### {}\n\n", t.title()),
            };
            title + &emit_table(report, t, format)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_headers_only() {
        let empty = CensusReport::default();
        assert_eq!(
            emit_table(&empty, Table::Factorisable, TableFormat::Csv),
            "n,PNF,PF,PFS,PFNS,COMM,PFSU,PFNSU\n"
        );
        let md = emit_table(&empty, Table::Counts, TableFormat::Markdown);
        assert_eq!(
            md,
            "| n | T | T-ISO | S | NS | NSE |\n| --- | --- | --- | --- | --- | --- |\n"
        );
    }

    #[test]
    fn rows_render() {
        let report = CensusReport {
            rows: vec![ReportRow {
                n: 3,
                t: 48,
                t_iso: 36,
                s: 6,
                ns: 30,
                nse: 7,
                pu: 22,
                ..ReportRow::default()
            }],
        };
        assert!(emit_table(&report, Table::Counts, TableFormat::Markdown)
            .ends_with("| 3 | 48 | 36 | 6 | 30 | 7 |\n"));
        assert_eq!(
            emit_table(&report, Table::Unique, TableFormat::Csv),
            "n,T-ISO,PU,PU/T-ISO\n3,36,22,0.6111\n"
        );
        assert_eq!(
            emit_tables(&report, TableFormat::Csv).matches("# ").count(),
            4
        );
        assert_eq!("md".parse::<TableFormat>().unwrap(), TableFormat::Markdown);
        assert!("xml".parse::<TableFormat>().is_err());
    }
}
