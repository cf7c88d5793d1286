//! Exhaustive generation of unlabelled digraphs and rooted isomorphism
//! classes.
//!
//! Every labelled digraph on `n` vertices is a bitmask of its off-diagonal
//! adjacency matrix (see [`crate::digraph::canon`]). A mask is kept when it
//! is the minimum of its orbit under vertex relabelling, which yields one
//! representative per class, already in canonical order.

use rayon::prelude::*;

use crate::digraph::canon::{self, PermTables};
use crate::digraph::{Digraph, RootedDigraph};
use crate::error::{Error, Result};

/// Largest order enumerated by default.
pub const MAX_ORDER: usize = 5;
/// Largest order accepted when heavy runs are explicitly allowed.
pub const MAX_HEAVY_ORDER: usize = 6;

/// Unlabelled digraphs of one order and their rooted classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphClassList {
    order: usize,
    representatives: Vec<Digraph>,
    rooted: Vec<(usize, usize)>,
}

impl DigraphClassList {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn representatives(&self) -> &[Digraph] {
        &self.representatives
    }

    /// `(representative index, root)` pairs, one per rooted class.
    pub fn rooted_classes(&self) -> &[(usize, usize)] {
        &self.rooted
    }

    pub fn rooted_digraph(&self, i: usize) -> RootedDigraph {
        let (rep, root) = self.rooted[i];
        self.representatives[rep]
            .rooted(root)
            .expect("root within range")
    }

    /// Number of digraphs counted with every choice of root label.
    pub fn labelled_rooted_count(&self) -> usize {
        self.representatives.len() * self.order
    }

    pub fn to_mckay_lines(&self) -> String {
        self.representatives
            .iter()
            .map(|g| g.to_mckay() + "\n")
            .collect()
    }
}

pub(crate) fn check_order(n: usize, allow_heavy: bool) -> Result<()> {
    let limit = if allow_heavy {
        MAX_HEAVY_ORDER
    } else {
        MAX_ORDER
    };
    if n == 0 {
        return Err(Error::InvalidDigraph("order must be positive".into()));
    }
    if n > limit {
        return Err(Error::TooLarge {
            what: "order for exhaustive enumeration",
            limit,
        });
    }
    Ok(())
}

/// Codes of canonical representatives in increasing order.
fn canonical_codes(n: usize) -> Vec<u64> {
    let bits = n * (n - 1);
    let tables: Vec<PermTables> = canon::permutations(n)
        .iter()
        .skip(1)
        .map(|p| PermTables::new(n, p))
        .collect();
    let total = 1u64 << bits;
    let chunk = 1u64 << bits.saturating_sub(6).min(16);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    starts
        .par_iter()
        .map(|&start| {
            (start..(start + chunk).min(total))
                .filter(|&code| tables.iter().all(|t| t.apply(code) >= code))
                .collect::<Vec<u64>>()
        })
        .collect::<Vec<_>>()
        .concat()
}

/// One digraph per isomorphism class of loopless simple digraphs on `n`
/// vertices (2-cycles allowed), in canonical order. Orders above
/// [`MAX_ORDER`] need `allow_heavy`.
pub fn all_unlabelled_digraphs(n: usize, allow_heavy: bool) -> Result<Vec<Digraph>> {
    check_order(n, allow_heavy)?;
    canonical_codes(n)
        .into_iter()
        .map(|code| Digraph::new(n, canon::decode(n, code)))
        .collect()
}

/// Representatives together with one root per rooted isomorphism class:
/// for each representative, roots are kept when no smaller root has the
/// same root-fixed canonical form.
pub fn rooted_classes(n: usize, allow_heavy: bool) -> Result<DigraphClassList> {
    let representatives = all_unlabelled_digraphs(n, allow_heavy)?;
    let roots: Vec<Vec<usize>> = representatives
        .par_iter()
        .map(|g| {
            let mut seen = Vec::with_capacity(n);
            let mut keep = Vec::new();
            for r in 0..n {
                let code = canon::canonical_code(n, g.edges(), Some(r));
                if !seen.contains(&code) {
                    seen.push(code);
                    keep.push(r);
                }
            }
            keep
        })
        .collect();
    let rooted = roots
        .iter()
        .enumerate()
        .flat_map(|(i, rs)| rs.iter().map(move |&r| (i, r)))
        .collect();
    Ok(DigraphClassList {
        order: n,
        representatives,
        rooted,
    })
}
