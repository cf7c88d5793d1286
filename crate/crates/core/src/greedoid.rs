//! The two-variable greedoid polynomial
//! `f(D; t, z) = Σ_{A ⊆ E} t^{r(E) − r(A)} z^{|A| − r(A)}`.
//!
//! [`poly_subsets`] evaluates the sum directly and is only practical for
//! small edge sets. [`poly_dc`] uses deletion–contraction on a root out-edge,
//! `f(D) = f(D/e) + t^{r(D) − r(D∖e)} f(D∖e)`, with memoization of
//! isomorphic minors.
//!
//! Contracting a root out-edge can create parallel edges and self-loops. The
//! recursion therefore works on rooted multidigraphs: parallel edges are kept
//! with their multiplicity and every greedoid loop (self-loop, edge into the
//! root, edge with no root path to its tail avoiding its head) is stripped
//! off as a factor `1 + z`, since such an edge has rank zero in every subset.

use dashmap::DashMap;
use num_bigint::BigInt;

use crate::bipoly::BiPoly;
use crate::digraph::{canon, closure, EdgeSubset, RootedDigraph};
use crate::error::{Error, Result};

pub const MAX_SUBSET_EDGES: usize = 22;

/// Concurrent memo of polynomials of minors, keyed by a rooted canonical
/// encoding of the multidigraph. Values are idempotent, so racing writers
/// are harmless.
#[derive(Default)]
pub struct MemoCache {
    map: DashMap<Vec<u8>, Dense>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn clear(&self) {
        self.map.clear();
    }

    /// Cached polynomial of the minor with the given key, if any.
    pub fn get(&self, key: &[u8]) -> Option<BiPoly> {
        self.map.get(key).map(|d| d.to_bipoly())
    }

    /// Key under which the polynomial of `d` is cached.
    pub fn key_of(d: &RootedDigraph) -> Vec<u8> {
        Minor::from_digraph(d).strip().0.key()
    }
}

impl std::fmt::Debug for MemoCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MemoCache")
            .field("len", &self.len())
            .finish()
    }
}

pub fn poly_subsets(d: &RootedDigraph) -> Result<BiPoly> {
    let m = d.size();
    if m > MAX_SUBSET_EDGES {
        return Err(Error::TooLarge {
            what: "edge count for subset expansion",
            limit: MAX_SUBSET_EDGES,
        });
    }
    let n = d.order();
    let edges = d.edges();
    let full_rank = d.full_rank();
    let mut counts = vec![vec![0u64; m + 1]; n];
    let mut out = vec![0u64; n];
    for mask in 0..1u64 << m {
        out.iter_mut().for_each(|o| *o = 0);
        for i in EdgeSubset(mask).iter() {
            let (u, v) = edges[i];
            out[u] |= 1 << v;
        }
        let r = closure(&out, 1 << d.root()).count_ones() as usize - 1;
        counts[full_rank - r][mask.count_ones() as usize - r] += 1;
    }
    let mut p = BiPoly::zero();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                p.add_term((i as u32, j as u32), BigInt::from(c));
            }
        }
    }
    Ok(p)
}

/// Polynomial by memoized deletion–contraction.
pub fn poly_dc(d: &RootedDigraph, cache: &MemoCache) -> BiPoly {
    eval_minor(Minor::from_digraph(d), cache).to_bipoly()
}

/// Product of the polynomials of the direct summands at the root.
pub fn poly_direct_sum(d: &RootedDigraph, cache: &MemoCache) -> BiPoly {
    d.split_at_root()
        .iter()
        .fold(BiPoly::one(), |acc, part| &acc * &poly_dc(part, cache))
}

/// `f(P_m) = 1 + Σ_{i=1..m} t^i (1+z)^{i−1}` for the directed path with `m`
/// edges rooted at its source.
pub fn path_poly(m: u32) -> BiPoly {
    let mut p = BiPoly::one();
    let mut power = BiPoly::one();
    for i in 1..=m {
        p += &power.shift(i, 0);
        power = &power * &BiPoly::one_plus_z();
    }
    p
}

/// `f(C_m) = (1+z) f(P_{m−1})`; `C_1` is a loop at the root.
pub fn cycle_poly(m: u32) -> Result<BiPoly> {
    if m == 0 {
        return Err(Error::InvalidFamily("cycle length must be positive".into()));
    }
    Ok(&BiPoly::one_plus_z() * &path_poly(m - 1))
}

/// Dense polynomial with non-negative coefficients; `rows[i][j]` is the
/// coefficient of `t^i z^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense {
    rows: Vec<Vec<u128>>,
}

impl Dense {
    fn one_plus_z_pow(k: usize) -> Self {
        let mut row = vec![1u128; k + 1];
        let mut c = 1u128;
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            c = c * (k + 1 - j) as u128 / j as u128;
            *slot = c;
        }
        Dense { rows: vec![row] }
    }

    fn mul_one_plus_z_pow(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        let b = Self::one_plus_z_pow(k).rows.pop().unwrap();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![0u128; row.len() + k];
                for (i, &a) in row.iter().enumerate() {
                    if a != 0 {
                        for (j, &c) in b.iter().enumerate() {
                            out[i + j] += a * c;
                        }
                    }
                }
                out
            })
            .collect();
        Dense { rows }
    }

    /// `self + t^s * other`.
    fn add_shifted(mut self, other: &Dense, s: usize) -> Self {
        if self.rows.len() < other.rows.len() + s {
            self.rows.resize(other.rows.len() + s, Vec::new());
        }
        for (i, row) in other.rows.iter().enumerate() {
            let dst = &mut self.rows[i + s];
            if dst.len() < row.len() {
                dst.resize(row.len(), 0);
            }
            for (a, &b) in dst.iter_mut().zip(row) {
                *a += b;
            }
        }
        self
    }

    fn to_bipoly(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    p.add_term((i as u32, j as u32), BigInt::from(c));
                }
            }
        }
        p
    }
}

/// Rooted multidigraph; `mult[u * n + v]` counts parallel edges `u → v`.
/// Self-loops are never stored.
#[derive(Clone, Debug)]
struct Minor {
    n: usize,
    root: usize,
    mult: Vec<u8>,
}

impl Minor {
    fn from_digraph(d: &RootedDigraph) -> Self {
        let n = d.order();
        let mut mult = vec![0u8; n * n];
        for &(u, v) in d.edges() {
            mult[u * n + v] += 1;
        }
        Minor {
            n,
            root: d.root(),
            mult,
        }
    }

    fn out_masks(&self, skip: Option<usize>) -> Vec<u64> {
        let n = self.n;
        (0..n)
            .map(|u| {
                if Some(u) == skip {
                    return 0;
                }
                (0..n)
                    .filter(|&v| self.mult[u * n + v] > 0 && Some(v) != skip)
                    .fold(0u64, |m, v| m | 1 << v)
            })
            .collect()
    }

    /// Removes every greedoid loop and every vertex unreachable from the
    /// root. Returns the reduced minor and the number of removed edges.
    fn strip(mut self) -> (Minor, usize) {
        let n = self.n;
        let reach = closure(&self.out_masks(None), 1 << self.root);
        let mut removed = 0usize;
        for v in 0..n {
            let col_has_edges = (0..n).any(|u| self.mult[u * n + v] > 0);
            if !col_has_edges {
                continue;
            }
            let avoiding = if v == self.root || reach >> v & 1 == 0 {
                0
            } else {
                closure(&self.out_masks(Some(v)), 1 << self.root)
            };
            for u in 0..n {
                let k = &mut self.mult[u * n + v];
                if *k > 0 && avoiding >> u & 1 == 0 {
                    removed += *k as usize;
                    *k = 0;
                }
            }
        }
        if reach.count_ones() as usize == n {
            return (self, removed);
        }
        let keep: Vec<usize> = (0..n).filter(|&v| reach >> v & 1 == 1).collect();
        let m = keep.len();
        let mut mult = vec![0u8; m * m];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                mult[i * m + j] = self.mult[u * n + v];
            }
        }
        let root = keep.iter().position(|&v| v == self.root).unwrap();
        (Minor { n: m, root, mult }, removed)
    }

    fn edge_count(&self) -> usize {
        self.mult.iter().map(|&k| k as usize).sum()
    }

    /// Encoding shared by all rooted-isomorphic minors. Non-root vertices are
    /// ordered by an isomorphism-invariant signature and the multiplicity
    /// matrix is minimised over relabellings within each signature class.
    /// When the classes admit too many relabellings the signature order is
    /// used as is, which is still a valid (if less shared) key.
    fn key(&self) -> Vec<u8> {
        let n = self.n;
        let sig = |v: usize| {
            let out: u32 = (0..n).map(|w| self.mult[v * n + w] as u32).sum();
            let inn: u32 = (0..n).map(|w| self.mult[w * n + v] as u32).sum();
            let out_nb = (0..n).filter(|&w| self.mult[v * n + w] > 0).count() as u32;
            let in_nb = (0..n).filter(|&w| self.mult[w * n + v] > 0).count() as u32;
            let from_root = self.mult[self.root * n + v] as u32;
            let to_root = self.mult[v * n + self.root] as u32;
            (from_root, to_root, out, inn, out_nb, in_nb)
        };
        let mut order: Vec<usize> = (0..n).filter(|&v| v != self.root).collect();
        let sigs: Vec<_> = (0..n).map(sig).collect();
        order.sort_by_key(|&v| sigs[v]);
        let mut cells: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=order.len() {
            if i == order.len() || sigs[order[i]] != sigs[order[start]] {
                cells.push((start, i));
                start = i;
            }
        }
        let budget: usize = cells
            .iter()
            .map(|&(a, b)| factorial(b - a))
            .try_fold(1usize, |acc, f| acc.checked_mul(f).filter(|&x| x <= 5040))
            .unwrap_or(usize::MAX);

        let encode = |ord: &[usize]| {
            let mut full = Vec::with_capacity(n);
            full.push(self.root);
            full.extend_from_slice(ord);
            let mut out = Vec::with_capacity(n * n + 1);
            out.push(n as u8);
            for &u in &full {
                for &v in &full {
                    out.push(self.mult[u * n + v]);
                }
            }
            out
        };
        if budget == usize::MAX || budget == 1 {
            return encode(&order);
        }
        let mut best = encode(&order);
        let mut current = order.clone();
        permute_cells(&order, &cells, 0, &mut current, &mut |ord| {
            let code = encode(ord);
            if code < best {
                best = code;
            }
        });
        best
    }

    /// Deletes one copy of the root out-edge `root → v`.
    fn delete_root_edge(&self, v: usize) -> Minor {
        let mut m = self.clone();
        m.mult[self.root * self.n + v] -= 1;
        m
    }

    /// Contracts one copy of `root → v`: `v` merges into the root, other
    /// edges between them become self-loops and are counted.
    fn contract_root_edge(&self, v: usize) -> (Minor, usize) {
        let n = self.n;
        let r = self.root;
        let loops = self.mult[r * n + v] as usize - 1 + self.mult[v * n + r] as usize;
        let relabel = |x: usize| {
            let x = if x == v { r } else { x };
            if x > v {
                x - 1
            } else {
                x
            }
        };
        let m = n - 1;
        let mut mult = vec![0u8; m * m];
        for a in 0..n {
            for b in 0..n {
                let k = self.mult[a * n + b];
                if k == 0 {
                    continue;
                }
                let (x, y) = (relabel(a), relabel(b));
                if x != y {
                    mult[x * m + y] += k;
                }
            }
        }
        (
            Minor {
                n: m,
                root: relabel(r),
                mult,
            },
            loops,
        )
    }

    fn lowest_root_out_edge(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.mult[self.root * self.n + v] > 0)
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn permute_cells(
    base: &[usize],
    cells: &[(usize, usize)],
    idx: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let Some(&(a, b)) = cells.get(idx) else {
        visit(current);
        return;
    };
    let k = b - a;
    for perm in canon::permutations(k) {
        for (i, &p) in perm.iter().enumerate() {
            current[a + i] = base[a + p as usize];
        }
        permute_cells(base, cells, idx + 1, current, visit);
    }
}

fn eval_minor(minor: Minor, cache: &MemoCache) -> Dense {
    let (m, loops) = minor.strip();
    eval_stripped(m, cache).mul_one_plus_z_pow(loops)
}

/// Polynomial of a minor with no greedoid loops and every vertex reachable.
fn eval_stripped(m: Minor, cache: &MemoCache) -> Dense {
    if m.edge_count() == 0 {
        return Dense {
            rows: vec![vec![1]],
        };
    }
    let key = m.key();
    if let Some(hit) = cache.map.get(&key) {
        return hit.clone();
    }
    let v = m
        .lowest_root_out_edge()
        .expect("a loopless minor with edges has a root out-edge");
    let result = dc_step(&m, v, &mut |x| eval_minor(x, cache));
    cache.map.insert(key, result.clone());
    result
}

/// One deletion–contraction step on the root out-edge `root → v` of a
/// loopless minor whose vertices are all reachable.
fn dc_step(m: &Minor, v: usize, eval: &mut dyn FnMut(Minor) -> Dense) -> Dense {
    let (contracted, loops) = m.contract_root_edge(v);
    let deleted = m.delete_root_edge(v);
    let rank_drop = m.n - closure(&deleted.out_masks(None), 1 << m.root).count_ones() as usize;
    let fc = eval(contracted).mul_one_plus_z_pow(loops);
    let fd = eval(deleted);
    fc.add_shifted(&fd, rank_drop)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rd(line: &str, root: usize) -> RootedDigraph {
        RootedDigraph::from_mckay(line, root).unwrap()
    }

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    /// Deletion–contraction without memoization, choosing a random root
    /// out-edge at every step.
    fn dc_random(minor: Minor, rng: &mut ChaCha8Rng) -> Dense {
        let (m, loops) = minor.strip();
        let inner = if m.edge_count() == 0 {
            Dense {
                rows: vec![vec![1]],
            }
        } else {
            let outs: Vec<usize> = (0..m.n).filter(|&v| m.mult[m.root * m.n + v] > 0).collect();
            let v = outs[rng.gen_range(0..outs.len())];
            let mut rng2 = ChaCha8Rng::seed_from_u64(rng.gen());
            dc_step(&m, v, &mut |x| dc_random(x, &mut rng2))
        };
        inner.mul_one_plus_z_pow(loops)
    }

    #[test]
    fn subset_examples() {
        assert_eq!(poly_subsets(&rd("1 0", 0)).unwrap(), BiPoly::one());
        assert_eq!(
            poly_subsets(&rd("2 2 0 1 1 0", 0)).unwrap(),
            p("1 + t + z + t*z")
        );
        let h = rd("4 4 0 1 1 2 1 3 2 3", 0);
        assert_eq!(
            poly_subsets(&h).unwrap(),
            p("2 + 2*t + t^2 + t^3 + z + t*z + t^2*z + 3*t^3*z + 3*t^3*z^2 + t^3*z^3")
        );
        let big = RootedDigraph::new(
            6,
            (0..5)
                .flat_map(|u| (0..6).filter(move |&v| v != u).map(move |v| (u, v)))
                .take(23)
                .collect(),
            0,
        )
        .unwrap();
        assert!(matches!(poly_subsets(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn dc_examples() {
        let cache = MemoCache::new();
        assert_eq!(poly_dc(&rd("2 1 0 1", 0), &cache), p("1 + t"));
        let d1 = rd("6 6 0 1 0 3 1 2 3 2 3 4 4 5", 0);
        let f1 = &p("1 + t + t^2 + t^2*z")
            * &p("2 + 2*t + t^2 + t^3 + z + t*z + t^2*z + 3*t^3*z + 3*t^3*z^2 + t^3*z^3");
        assert_eq!(poly_dc(&d1, &cache), f1);
        let d2 = rd("6 7 0 1 0 3 3 1 1 2 3 2 3 4 4 5", 0);
        let f2 = &p("1 + t + t^2 + t^2*z")
            * &p("4 + 3*t + t^2 + t^3 + 4*z + 2*t*z + t^2*z + 4*t^3*z + z^2 + 6*t^3*z^2 + 4*t^3*z^3 + t^3*z^4");
        assert_eq!(poly_dc(&d2, &cache), f2);
        assert_eq!(poly_subsets(&d2).unwrap(), f2);
        assert_eq!(poly_dc(&rd("3 2 2 0 2 1", 2), &cache), p("1 + 2*t + t^2"));
    }

    #[test]
    fn direct_sum_examples() {
        let cache = MemoCache::new();
        let edge_into_root = rd("3 2 0 2 2 1", 2);
        assert_eq!(
            poly_direct_sum(&edge_into_root, &cache),
            p("1 + t + z + t*z")
        );
        let unreachable_source = rd("3 2 0 1 2 1", 2);
        assert_eq!(
            poly_direct_sum(&unreachable_source, &cache),
            poly_dc(&unreachable_source, &cache)
        );
        let two_paths = rd("5 4 2 0 0 1 2 3 3 4", 2);
        assert_eq!(poly_direct_sum(&two_paths, &cache), path_poly(2).pow(2));
        assert_eq!(poly_subsets(&two_paths).unwrap(), path_poly(2).pow(2));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(path_poly(0), BiPoly::one());
        assert_eq!(path_poly(1), p("1 + t"));
        assert_eq!(path_poly(2), p("1 + t + t^2 + t^2*z"));
        assert_eq!(cycle_poly(1).unwrap(), p("1 + z"));
        assert_eq!(cycle_poly(2).unwrap(), p("1 + t + z + t*z"));
        assert_eq!(cycle_poly(3).unwrap(), &p("1 + z") * &path_poly(2));
        assert!(cycle_poly(0).is_err());
        let cache = MemoCache::new();
        for m in 1..=8usize {
            let path = RootedDigraph::new(m + 1, (0..m).map(|i| (i, i + 1)).collect(), 0).unwrap();
            assert_eq!(poly_dc(&path, &cache), path_poly(m as u32));
            let mut edges: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
            if m >= 2 {
                edges.push((m - 1, 0));
                let cycle = RootedDigraph::new(m, edges, 0).unwrap();
                assert_eq!(poly_dc(&cycle, &cache), cycle_poly(m as u32).unwrap());
            }
        }
    }

    #[test]
    fn parallel_and_loop_handling() {
        // contraction of r->a where a->r and a parallel path exist
        let d = rd("3 5 0 1 1 0 0 2 2 1 1 2", 0);
        let cache = MemoCache::new();
        assert_eq!(poly_dc(&d, &cache), poly_subsets(&d).unwrap());
    }

    #[test]
    fn cache_is_reused_across_isomorphic_inputs() {
        let cache = MemoCache::new();
        let a = rd("4 4 0 1 1 2 1 3 2 3", 0);
        poly_dc(&a, &cache);
        let before = cache.len();
        let b = a.permute(&[0, 2, 3, 1]);
        assert_eq!(poly_dc(&b, &cache), poly_dc(&a, &cache));
        assert_eq!(cache.len(), before);
        assert!(cache.get(&MemoCache::key_of(&a)).is_some());
    }

    fn arb_digraph(min_n: usize, max_n: usize) -> impl Strategy<Value = RootedDigraph> {
        (min_n..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, mask, seed)| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect();
            let mut edges: Vec<_> = pairs
                .into_iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e)
                .collect();
            if edges.len() > 1 {
                let k = seed as usize % edges.len();
                edges.rotate_left(k);
            }
            RootedDigraph::new(n, edges, (seed >> 32) as usize % n).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn dc_matches_subsets(d in arb_digraph(1, 5)) {
            let cache = MemoCache::new();
            prop_assert_eq!(poly_dc(&d, &cache), poly_subsets(&d).unwrap());
        }

        #[test]
        fn pivot_choice_is_irrelevant(d in arb_digraph(2, 5), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = dc_random(Minor::from_digraph(&d), &mut rng).to_bipoly();
            prop_assert_eq!(f, poly_subsets(&d).unwrap());
        }

        #[test]
        fn evaluation_identities(d in arb_digraph(1, 5)) {
            let cache = MemoCache::new();
            let f = poly_dc(&d, &cache);
            prop_assert_eq!(f.eval_i64(1, 1), BigInt::from(1u64 << d.size()));
            prop_assert_eq!(f.coeff(d.full_rank() as u32, 0), BigInt::from(1));
            prop_assert_eq!(
                f.eval_i64(0, 0),
                BigInt::from(d.count_spanning_arborescences().unwrap())
            );
        }

        #[test]
        fn direct_sum_is_multiplicative(d in arb_digraph(1, 5)) {
            let cache = MemoCache::new();
            prop_assert_eq!(poly_direct_sum(&d, &cache), poly_dc(&d, &cache));
        }

        #[test]
        fn relabelling_invariance(d in arb_digraph(1, 6), seed in any::<u64>()) {
            let n = d.order();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let cache = MemoCache::new();
            let f = poly_dc(&d, &cache);
            prop_assert_eq!(poly_dc(&d.permute(&perm), &MemoCache::new()), f.clone());
            prop_assert_eq!(poly_dc(&d.permute(&perm), &cache), f);
        }
    }
}
