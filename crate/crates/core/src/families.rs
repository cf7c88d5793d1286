//! Infinite families of rooted digraphs whose polynomials factor in a
//! controlled way, with their closed forms and checks.
//!
//! Vertex numbering for `theorem4(k, ℓ)`: `v0 = 0`, then `a0..ak`, then
//! `v1..vℓ`, then `b0..bk`. Edges are listed as `v0→a0`, `v0→v1`, the
//! a-path, the v-path, `vℓ→ak`, `vℓ→b0`, the b-path. `lemma3(k)` is
//! `theorem4(k, 1)`.

use std::fmt;

use crate::bipoly::BiPoly;
use crate::digraph::{Digraph, Edge, RootedDigraph};
use crate::error::{Error, Result};
use crate::greedoid::{cycle_poly, path_poly, poly_dc, MemoCache};

/// A rooted digraph with a directed path `a0 → … → ak` starting at its root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guest {
    digraph: RootedDigraph,
    path: Vec<usize>,
}

impl Guest {
    pub fn new(digraph: RootedDigraph, path: Vec<usize>) -> Result<Self> {
        if path.len() < 3 {
            return Err(Error::InvalidFamily("guest path needs k >= 2".into()));
        }
        if path[0] != digraph.root() {
            return Err(Error::InvalidFamily(
                "guest path must start at the root".into(),
            ));
        }
        let mut seen = vec![false; digraph.order()];
        for &v in &path {
            if v >= digraph.order() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidFamily(format!(
                    "guest path vertex {v} invalid or repeated"
                )));
            }
        }
        for w in path.windows(2) {
            if !digraph.edges().contains(&(w[0], w[1])) {
                return Err(Error::InvalidFamily(format!(
                    "no edge {}->{} in guest",
                    w[0], w[1]
                )));
            }
        }
        Ok(Guest { digraph, path })
    }

    /// The directed path with `m ≥ 2` edges and `K` running along it.
    pub fn directed_path(m: usize) -> Result<Self> {
        let d = path_digraph(m);
        Guest::new(d, (0..=m).collect())
    }

    /// `r → x → y → w` with the chord `x → w`, rooted at `r`.
    pub fn chorded_path() -> Self {
        let d = RootedDigraph::new(4, vec![(0, 1), (1, 2), (1, 3), (2, 3)], 0).unwrap();
        Guest::new(d, vec![0, 1, 2, 3]).unwrap()
    }

    pub fn digraph(&self) -> &RootedDigraph {
        &self.digraph
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Path {
        m: usize,
    },
    Cycle {
        m: usize,
    },
    Lemma3 {
        k: usize,
    },
    Theorem4 {
        k: usize,
        l: usize,
    },
    Theorem5 {
        guest: Guest,
        l: usize,
    },
    /// The doubled construction with its closing edge `a'0 → ak` replaced by an attachment
    /// digraph whose vertex 0 is `a'0` and vertex 1 is `ak`.
    Corollary1 {
        guest: Guest,
        l: usize,
        attachment: Digraph,
    },
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Lemma3 { .. } => "lemma3",
            FamilySpec::Theorem4 { .. } => "theorem4",
            FamilySpec::Theorem5 { .. } => "theorem5",
            FamilySpec::Corollary1 { .. } => "corollary1",
        }
    }
}

fn path_digraph(m: usize) -> RootedDigraph {
    RootedDigraph::new(m + 1, (0..m).map(|i| (i, i + 1)).collect(), 0).unwrap()
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidFamily(msg.into()))
    }
}

pub fn build(spec: &FamilySpec) -> Result<RootedDigraph> {
    match spec {
        FamilySpec::Path { m } => Ok(path_digraph(*m)),
        FamilySpec::Cycle { m } => {
            require(*m >= 2, "a cycle digraph needs m >= 2 (m = 1 is a loop)")?;
            let mut edges: Vec<Edge> = (0..m - 1).map(|i| (i, i + 1)).collect();
            edges.push((m - 1, 0));
            RootedDigraph::new(*m, edges, 0)
        }
        FamilySpec::Lemma3 { k } => build(&FamilySpec::Theorem4 { k: *k, l: 1 }),
        FamilySpec::Theorem4 { k, l } => {
            let (k, l) = (*k, *l);
            require(k >= 1, "k must be at least 1")?;
            require(l >= 1, "l must be at least 1")?;
            let a = |i: usize| 1 + i;
            let v = |j: usize| if j == 0 { 0 } else { k + 1 + j };
            let b = |i: usize| k + 2 + l + i;
            let mut edges = vec![(v(0), a(0)), (v(0), v(1))];
            edges.extend((0..k).map(|i| (a(i), a(i + 1))));
            edges.extend((1..l).map(|j| (v(j), v(j + 1))));
            edges.push((v(l), a(k)));
            edges.push((v(l), b(0)));
            edges.extend((0..k).map(|i| (b(i), b(i + 1))));
            RootedDigraph::new(2 * k + 3 + l, edges, 0)
        }
        FamilySpec::Theorem5 { guest, l } => build_doubled(guest, *l, None),
        FamilySpec::Corollary1 {
            guest,
            l,
            attachment,
        } => build_doubled(guest, *l, Some(attachment)),
    }
}

/// Guest `G`, its copy `G'`, a path of length `l` from `a0` to `a'0`, and
/// either the edge `a'0 → ak` or an attachment digraph in its place.
fn build_doubled(guest: &Guest, l: usize, attachment: Option<&Digraph>) -> Result<RootedDigraph> {
    require(l >= 1, "l must be at least 1")?;
    let g = guest.digraph();
    let n = g.order();
    let a0 = guest.path[0];
    let ak = *guest.path.last().unwrap();
    let copy = |v: usize| v + n;
    let inner = |j: usize| 2 * n + j - 1;
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.extend(g.edges().iter().map(|&(u, v)| (copy(u), copy(v))));
    let hop = |j: usize| match j {
        0 => a0,
        j if j == l => copy(a0),
        j => inner(j),
    };
    edges.extend((0..l).map(|j| (hop(j), hop(j + 1))));
    let mut order = 2 * n + l - 1;
    match attachment {
        None => edges.push((copy(a0), ak)),
        Some(r) => {
            require(r.order() >= 2, "attachment needs at least two vertices")?;
            require(
                r.edges().iter().all(|&(u, _)| u != 1),
                "attachment edges at its vertex 1 must all be incoming",
            )?;
            let place = |x: usize| match x {
                0 => copy(a0),
                1 => ak,
                x => order + x - 2,
            };
            edges.extend(r.edges().iter().map(|&(u, v)| (place(u), place(v))));
            order += r.order() - 2;
        }
    }
    RootedDigraph::new(order, edges, a0)
}

/// `f(P_{k+1}) · (f(C_{k+1}) + f(P_{k+1}) + t^{k+2} (1+z)^{k+2} Σ_{i<ℓ} (t(1+z))^i)`.
pub fn theorem4_formula(k: usize, l: usize) -> Result<BiPoly> {
    require(k >= 1 && l >= 1, "k and l must be at least 1")?;
    let k = k as u32;
    let p = path_poly(k + 1);
    let c = cycle_poly(k + 1)?;
    let step = &BiPoly::t() * &BiPoly::one_plus_z();
    let geometric = (0..l as u32).fold(BiPoly::zero(), |acc, i| acc + step.pow(i));
    let tail = &(&BiPoly::one_plus_z().pow(k + 2) * &geometric).shift(k + 2, 0) + &(&c + &p);
    Ok(&p * &tail)
}

/// Closed form of `build(spec)` when one is known.
pub fn closed_form(spec: &FamilySpec) -> Result<Option<BiPoly>> {
    Ok(match spec {
        FamilySpec::Path { m } => Some(path_poly(*m as u32)),
        FamilySpec::Cycle { m } => Some(cycle_poly(*m as u32)?),
        FamilySpec::Lemma3 { k } => Some(theorem4_formula(*k, 1)?),
        FamilySpec::Theorem4 { k, l } => Some(theorem4_formula(*k, *l)?),
        FamilySpec::Theorem5 { .. } | FamilySpec::Corollary1 { .. } => None,
    })
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub digraph: RootedDigraph,
    pub polynomial: BiPoly,
    pub closed_form: Option<BiPoly>,
    /// Polynomial of the guest rooted at `a0`, for the doubled families.
    pub guest_factor: Option<BiPoly>,
    pub cofactor: Option<BiPoly>,
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "digraph: {}", self.digraph.to_mckay())?;
        writeln!(f, "root: {}", self.digraph.root())?;
        writeln!(f, "polynomial: {}", self.polynomial)?;
        if let Some(c) = &self.closed_form {
            writeln!(f, "closed form: {c}")?;
        }
        if let (Some(g), Some(h)) = (&self.guest_factor, &self.cofactor) {
            writeln!(f, "guest factor: {g}")?;
            writeln!(f, "cofactor: {h}")?;
        }
        Ok(())
    }
}

/// Builds the digraph and checks it against its closed form or divisibility
/// property; fails with [`Error::Verification`] on any mismatch.
pub fn verify_family(spec: &FamilySpec, cache: &MemoCache) -> Result<FamilyReport> {
    let digraph = build(spec)?;
    if digraph.is_separable() {
        return Err(Error::Verification(format!(
            "{} digraph {} is separable",
            spec.kind(),
            digraph.to_mckay()
        )));
    }
    let polynomial = poly_dc(&digraph, cache);
    let closed = closed_form(spec)?;
    if let Some(c) = &closed {
        if *c != polynomial {
            return Err(Error::Verification(format!(
                "{} polynomial {polynomial} differs from closed form {c}",
                spec.kind()
            )));
        }
    }
    let (mut guest_factor, mut cofactor) = (None, None);
    if let FamilySpec::Theorem5 { guest, .. } | FamilySpec::Corollary1 { guest, .. } = spec {
        let g = poly_dc(guest.digraph(), cache);
        if g.is_one() || g == BiPoly::one_plus_t() || g == BiPoly::one_plus_z() {
            return Err(Error::Verification(format!(
                "guest polynomial {g} is basic or 1"
            )));
        }
        let h = polynomial.exact_div(&g).map_err(|_| {
            Error::Verification(format!("guest polynomial {g} does not divide {polynomial}"))
        })?;
        guest_factor = Some(g);
        cofactor = Some(h);
    }
    Ok(FamilyReport {
        digraph,
        polynomial,
        closed_form: closed,
        guest_factor,
        cofactor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factorise;
    use crate::greedoid::poly_subsets;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn smallest_member_matches_known_digraph() {
        let d = build(&FamilySpec::Lemma3 { k: 1 }).unwrap();
        assert_eq!(d.to_mckay(), "6 6 0 1 0 3 1 2 3 2 3 4 4 5");
        assert_eq!(d.root(), 0);
        assert_eq!(d, build(&FamilySpec::Theorem4 { k: 1, l: 1 }).unwrap());
        let f = &p("1 + t + t^2 + t^2*z")
            * &p("2 + 2*t + t^2 + t^3 + z + t*z + t^2*z + 3*t^3*z + 3*t^3*z^2 + t^3*z^3");
        assert_eq!(theorem4_formula(1, 1).unwrap(), f);
        let lemma = &path_poly(2)
            * &(&(&cycle_poly(2).unwrap() + &path_poly(2))
                + &BiPoly::one_plus_z().pow(3).shift(3, 0));
        assert_eq!(theorem4_formula(1, 1).unwrap(), lemma);
    }

    #[test]
    fn lemma3_shape() {
        for k in 1..=6 {
            let d = build(&FamilySpec::Lemma3 { k }).unwrap();
            assert_eq!(d.order(), 2 * k + 4);
            assert_eq!(d.size(), 2 * k + 4);
            assert_eq!(d.full_rank(), 2 * k + 3);
            assert_eq!(
                theorem4_formula(k, 1).unwrap(),
                closed_form(&FamilySpec::Lemma3 { k }).unwrap().unwrap()
            );
        }
    }

    #[test]
    fn theorem4_against_oracles() {
        let cache = MemoCache::new();
        for k in 1..=3 {
            for l in 1..=3 {
                let spec = FamilySpec::Theorem4 { k, l };
                let report = verify_family(&spec, &cache).unwrap();
                if report.digraph.size() <= 16 {
                    assert_eq!(poly_subsets(&report.digraph).unwrap(), report.polynomial);
                }
            }
        }
    }

    #[test]
    fn displayed_factors_are_nonbasic() {
        for k in 1..=4u32 {
            let pk = path_poly(k + 1);
            assert!(factorise(&pk).unwrap().is_irreducible());
            assert!(pk != BiPoly::one_plus_t() && pk != BiPoly::one_plus_z());
            let f = theorem4_formula(k as usize, 2).unwrap();
            let other = f.exact_div(&pk).unwrap();
            assert!(other != BiPoly::one_plus_t() && other != BiPoly::one_plus_z());
        }
    }

    #[test]
    fn doubled_construction() {
        let cache = MemoCache::new();
        let guests = [
            Guest::directed_path(2).unwrap(),
            Guest::directed_path(3).unwrap(),
            Guest::chorded_path(),
        ];
        for guest in guests {
            for l in 1..=2 {
                let spec = FamilySpec::Theorem5 {
                    guest: guest.clone(),
                    l,
                };
                let d = build(&spec).unwrap();
                assert_eq!(d.order(), 2 * guest.digraph().order() + l - 1);
                assert_eq!(d.root(), guest.path()[0]);
                verify_family(&spec, &cache).unwrap();
            }
        }
        let p2 = Guest::directed_path(2).unwrap();
        assert_eq!(
            build(&FamilySpec::Theorem5 { guest: p2, l: 1 })
                .unwrap()
                .order(),
            6
        );
    }

    #[test]
    fn attachment_variant() {
        let cache = MemoCache::new();
        // a'0 → x → ak, and a'0 → ak directly
        let r = Digraph::new(3, vec![(0, 2), (2, 1), (0, 1)]).unwrap();
        for guest in [Guest::directed_path(2).unwrap(), Guest::chorded_path()] {
            let spec = FamilySpec::Corollary1 {
                guest,
                l: 1,
                attachment: r.clone(),
            };
            verify_family(&spec, &cache).unwrap();
        }
        let bad = Digraph::new(2, vec![(1, 0)]).unwrap();
        let spec = FamilySpec::Corollary1 {
            guest: Guest::directed_path(2).unwrap(),
            l: 1,
            attachment: bad,
        };
        assert!(matches!(build(&spec), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn invalid_parameters() {
        assert!(build(&FamilySpec::Theorem4 { k: 0, l: 1 }).is_err());
        assert!(build(&FamilySpec::Theorem4 { k: 1, l: 0 }).is_err());
        assert!(build(&FamilySpec::Cycle { m: 1 }).is_err());
        assert!(Guest::directed_path(1).is_err());
        let d = RootedDigraph::new(3, vec![(0, 1), (1, 2)], 0).unwrap();
        assert!(Guest::new(d.clone(), vec![0, 2, 1]).is_err());
        assert!(Guest::new(d, vec![1, 2, 0]).is_err());
    }

    #[test]
    fn paths_and_cycles_verify() {
        let cache = MemoCache::new();
        for m in 1..=8 {
            verify_family(&FamilySpec::Path { m }, &cache).unwrap();
            if m >= 2 {
                verify_family(&FamilySpec::Cycle { m }, &cache).unwrap();
            }
        }
    }
}
