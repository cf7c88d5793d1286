//! Line-oriented database files.
//!
//! One record per line, tab separated: order, class index, McKay line, root,
//! `S` or `NS`, polynomial, factorisation.

use std::fs;
use std::path::Path;

use super::{PolyDatabase, Record};
use crate::bipoly::BiPoly;
use crate::digraph::parse_mckay;
use crate::error::{Error, Result};
use crate::factor::Factorisation;

pub fn render(db: &PolyDatabase) -> String {
    let mut out = String::new();
    for r in db.records() {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.order,
            r.class_index,
            r.digraph.to_mckay(),
            r.root,
            if r.separable { "S" } else { "NS" },
            r.poly,
            r.factorisation
        ));
    }
    out
}

pub fn persist(db: &PolyDatabase, path: &Path) -> Result<()> {
    fs::write(path, render(db)).map_err(|e| Error::io(path, e))
}

pub fn load(path: &Path) -> Result<PolyDatabase> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<PolyDatabase> {
    let records = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_record(l).map_err(|e| Error::FormatAt {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyDatabase::new(records))
}

fn parse_record(line: &str) -> Result<Record> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [order, class_index, mckay, root, sep, poly, fact] = fields.as_slice() else {
        return Err(Error::Format(format!(
            "expected 7 fields, found {}",
            fields.len()
        )));
    };
    let int = |s: &str, what: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Format(format!("bad {what}: {s:?}")))
    };
    let order = int(order, "order")?;
    let class_index = int(class_index, "class index")?;
    let root = int(root, "root")?;
    let digraph = parse_mckay(mckay)?;
    if digraph.order() != order {
        return Err(Error::Format(format!(
            "digraph order {} differs from recorded order {order}",
            digraph.order()
        )));
    }
    let rooted = digraph
        .rooted(root)
        .map_err(|e| Error::Format(e.to_string()))?;
    let separable = match *sep {
        "S" => true,
        "NS" => false,
        other => return Err(Error::Format(format!("expected S or NS, found {other:?}"))),
    };
    if separable != rooted.is_separable() {
        return Err(Error::Format(
            "separability flag disagrees with the digraph".into(),
        ));
    }
    let poly: BiPoly = poly.parse()?;
    let factorisation: Factorisation = fact.parse()?;
    if factorisation.product() != poly {
        return Err(Error::Format(
            "factorisation does not multiply to the polynomial".into(),
        ));
    }
    Ok(Record {
        order,
        class_index,
        digraph,
        root,
        separable,
        poly,
        factorisation,
    })
}
