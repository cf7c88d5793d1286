//! Census of all rooted digraphs up to a given order: polynomial database,
//! summary counts, persistence and table output.

pub mod io;
mod tables;

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::bipoly::BiPoly;
use crate::digraph::{Digraph, RootedDigraph};
use crate::enumerate::{check_order, rooted_classes};
use crate::error::Result;
use crate::factor::{
    classify_factors, factorise, is_basic, is_gm_factorisable, FactorClass, Factorisation,
};
use crate::greedoid::{poly_dc, MemoCache};

pub use io::{load, persist};
pub use tables::{emit_table, emit_tables, Table, TableFormat};

/// One rooted isomorphism class with its polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub order: usize,
    /// Index of the unlabelled representative within its order.
    pub class_index: usize,
    pub digraph: Digraph,
    pub root: usize,
    pub separable: bool,
    pub poly: BiPoly,
    pub factorisation: Factorisation,
}

impl Record {
    pub fn rooted(&self) -> RootedDigraph {
        self.digraph
            .rooted(self.root)
            .expect("stored root is valid")
    }
}

/// Records for orders `1..=max_order`, sorted by order, class index and
/// root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDatabase {
    max_order: usize,
    records: Vec<Record>,
}

impl PolyDatabase {
    pub fn new(mut records: Vec<Record>) -> Self {
        records.sort_by_key(|r| (r.order, r.class_index, r.root));
        let max_order = records.iter().map(|r| r.order).max().unwrap_or(0);
        PolyDatabase { max_order, records }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn at_order(&self, n: usize) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(move |r| r.order == n)
    }

    /// Distinct polynomials at order `n`.
    pub fn unique_polys(&self, n: usize) -> HashSet<BiPoly> {
        self.at_order(n).map(|r| r.poly.clone()).collect()
    }

    /// Distinct polynomials of all orders up to `n`.
    pub fn combined_up_to(&self, n: usize) -> HashSet<BiPoly> {
        self.records
            .iter()
            .filter(|r| r.order <= n)
            .map(|r| r.poly.clone())
            .collect()
    }

    /// Distinct polynomials of separable digraphs of order up to `n`.
    pub fn separable_up_to(&self, n: usize) -> HashSet<BiPoly> {
        self.records
            .iter()
            .filter(|r| r.order <= n && r.separable)
            .map(|r| r.poly.clone())
            .collect()
    }

    /// Irreducible factors occurring at orders up to `n`.
    pub fn factors_up_to(&self, n: usize) -> HashSet<BiPoly> {
        self.records
            .iter()
            .filter(|r| r.order <= n)
            .flat_map(|r| r.factorisation.factors().iter().map(|(f, _)| f.clone()))
            .collect()
    }
}

/// Builds the database for orders `1..=max_order`. Orders above the default
/// enumeration limit need `allow_heavy`. Runs on the current rayon pool.
pub fn build_database(
    max_order: usize,
    allow_heavy: bool,
    cache: &MemoCache,
) -> Result<PolyDatabase> {
    check_order(max_order, allow_heavy)?;
    let mut records = Vec::new();
    for n in 1..=max_order {
        let list = rooted_classes(n, allow_heavy)?;
        let polys: Vec<BiPoly> = list
            .rooted_classes()
            .par_iter()
            .map(|&(rep, root)| {
                let d = list.representatives()[rep]
                    .rooted(root)
                    .expect("valid root");
                poly_dc(&d, cache)
            })
            .collect();
        let mut unique: Vec<&BiPoly> = polys.iter().collect::<HashSet<_>>().into_iter().collect();
        unique.sort();
        let factored: HashMap<&BiPoly, Factorisation> = unique
            .par_iter()
            .map(|&p| factorise(p).map(|f| (p, f)))
            .collect::<Result<_>>()?;
        for (i, (&(rep, root), poly)) in list.rooted_classes().iter().zip(&polys).enumerate() {
            let digraph = list.representatives()[rep].clone();
            let separable = list.rooted_digraph(i).is_separable();
            records.push(Record {
                order: n,
                class_index: rep,
                digraph,
                root,
                separable,
                poly: poly.clone(),
                factorisation: factored[poly].clone(),
            });
        }
    }
    Ok(PolyDatabase::new(records))
}

/// All counts for one order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportRow {
    pub n: usize,
    /// Unlabelled classes times `n`.
    pub t: usize,
    pub t_iso: usize,
    pub s: usize,
    pub ns: usize,
    /// Non-separable digraphs with the polynomial of a separable digraph of
    /// order at most `n`.
    pub nse: usize,
    pub pu: usize,
    pub pnf: usize,
    pub pf: usize,
    pub pfs: usize,
    pub pfns: usize,
    pub comm: usize,
    pub pfsu: usize,
    pub pfnsu: usize,
    /// Digraphs with at least two nonbasic factors, with multiplicity.
    pub nb2: usize,
    pub tnb2: usize,
    pub p1: usize,
    pub tp1: usize,
    pub nb2_distinct_polys: usize,
    pub nb2_with_basic: usize,
    /// Those among the 2-NB digraphs with no basic factor that are separable.
    pub nb2_basic_free_separable: usize,
}

impl ReportRow {
    /// Arithmetic identities that must hold between the counts.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                out.push(format!("order {}: {what}", self.n));
            }
        };
        check(self.s + self.ns == self.t_iso, "S + NS != T-ISO");
        check(self.pnf + self.pf == self.pu, "PNF + PF != PU");
        check(
            self.pfs + self.pfns == self.pf + self.comm,
            "PFS + PFNS - COMM != PF",
        );
        check(self.pfsu + self.comm == self.pfs, "PFSU != PFS - COMM");
        check(self.pfnsu + self.comm == self.pfns, "PFNSU != PFNS - COMM");
        check(
            self.tnb2 <= self.nb2 && self.tp1 <= self.p1,
            "totally counts exceed totals",
        );
        check(self.t_iso <= self.t, "T-ISO exceeds T");
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusReport {
    pub rows: Vec<ReportRow>,
}

impl CensusReport {
    pub fn row(&self, n: usize) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn violations(&self) -> Vec<String> {
        self.rows.iter().flat_map(ReportRow::violations).collect()
    }
}

pub fn summarize(db: &PolyDatabase) -> CensusReport {
    let rows = (1..=db.max_order())
        .map(|n| summarize_order(db, n))
        .collect();
    CensusReport { rows }
}

fn summarize_order(db: &PolyDatabase, n: usize) -> ReportRow {
    let records: Vec<&Record> = db.at_order(n).collect();
    let classes: HashSet<usize> = records.iter().map(|r| r.class_index).collect();
    let combined = db.combined_up_to(n);
    let separable_polys = db.separable_up_to(n);
    let prior_factors = db.factors_up_to(n - 1);

    // (realised by separable, realised by non-separable) per polynomial
    let mut realised: BTreeMap<&BiPoly, (bool, bool, &Factorisation)> = BTreeMap::new();
    for r in &records {
        let slot = realised
            .entry(&r.poly)
            .or_insert((false, false, &r.factorisation));
        if r.separable {
            slot.0 = true;
        } else {
            slot.1 = true;
        }
    }
    let factorisable: Vec<(bool, bool)> = realised
        .values()
        .filter(|(_, _, f)| is_gm_factorisable(f, &combined))
        .map(|&(s, ns, _)| (s, ns))
        .collect();

    let mut row = ReportRow {
        n,
        t: classes.len() * n,
        t_iso: records.len(),
        s: records.iter().filter(|r| r.separable).count(),
        nse: records
            .iter()
            .filter(|r| !r.separable && separable_polys.contains(&r.poly))
            .count(),
        pu: realised.len(),
        pf: factorisable.len(),
        pfs: factorisable.iter().filter(|f| f.0).count(),
        pfns: factorisable.iter().filter(|f| f.1).count(),
        comm: factorisable.iter().filter(|f| f.0 && f.1).count(),
        ..ReportRow::default()
    };
    row.ns = row.t_iso - row.s;
    row.pnf = row.pu - row.pf;
    row.pfsu = row.pfs - row.comm;
    row.pfnsu = row.pfns - row.comm;

    // Per record: multiplicity of basic and of nonbasic factors.
    let tallies: Vec<(usize, usize)> = records
        .iter()
        .map(|r| {
            let classes = classify_factors(&r.factorisation, &prior_factors);
            let mut basic = 0;
            let mut nonbasic = 0;
            for (class, (_, m)) in classes.iter().zip(r.factorisation.factors()) {
                if *class == FactorClass::Basic {
                    basic += *m as usize;
                } else {
                    nonbasic += *m as usize;
                }
            }
            (basic, nonbasic)
        })
        .collect();
    // Primary factors are new nonbasic factors of polynomials that split
    // into at least two nonbasic GM-factors.
    let primary: HashSet<&BiPoly> = records
        .iter()
        .zip(&tallies)
        .filter(|(_, &(_, nonbasic))| nonbasic >= 2)
        .flat_map(|(r, _)| r.factorisation.factors().iter().map(|(f, _)| f))
        .filter(|f| !is_basic(f) && !prior_factors.contains(*f))
        .collect();

    let mut nb2_polys = HashSet::new();
    for (r, &(basic, nonbasic)) in records.iter().zip(&tallies) {
        let totally = !r.separable && basic == 0;
        if nonbasic >= 2 {
            row.nb2 += 1;
            nb2_polys.insert(&r.poly);
            row.tnb2 += usize::from(totally);
            row.nb2_with_basic += usize::from(basic > 0);
            row.nb2_basic_free_separable += usize::from(r.separable && basic == 0);
        }
        if r.factorisation
            .factors()
            .iter()
            .any(|(f, _)| primary.contains(f))
        {
            row.p1 += 1;
            row.tp1 += usize::from(totally);
        }
    }
    row.nb2_distinct_polys = nb2_polys.len();
    row
}

/// GM-factorisable polynomials of order `n` realised only by non-separable
/// digraphs, each with its factorisation and the number of such digraphs,
/// sorted by edge count then text.
pub fn nonseparable_only_factorisable(
    db: &PolyDatabase,
    n: usize,
) -> Vec<(BiPoly, Factorisation, usize)> {
    let combined = db.combined_up_to(n);
    let mut groups: BTreeMap<&BiPoly, (bool, usize, &Factorisation)> = BTreeMap::new();
    for r in db.at_order(n) {
        let slot = groups
            .entry(&r.poly)
            .or_insert((false, 0, &r.factorisation));
        slot.0 |= r.separable;
        slot.1 += 1;
    }
    let mut out: Vec<(BiPoly, Factorisation, usize)> = groups
        .into_iter()
        .filter(|(_, (sep, _, f))| !sep && is_gm_factorisable(f, &combined))
        .map(|(p, (_, count, f))| (p.clone(), f.clone(), count))
        .collect();
    out.sort_by_cached_key(|(p, f, _)| (p.eval_i64(1, 1), f.to_string()));
    out
}
