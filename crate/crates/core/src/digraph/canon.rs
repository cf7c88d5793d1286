//! Brute-force canonical forms for small simple digraphs.
//!
//! A labelled digraph on `n <= 8` vertices is encoded as the `n(n-1)`-bit
//! string of its off-diagonal adjacency matrix in row-major order. The string
//! is stored in a `u64` with the first matrix position as the most
//! significant bit, so numeric order is lexicographic order of the bit
//! string. The canonical code is the minimum over vertex permutations.

use std::sync::OnceLock;

pub const MAX_CANON_VERTICES: usize = 8;

/// Bit position of the ordered pair `(i, j)`, counted from the most
/// significant end.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i != j);
    i * (n - 1) + if j < i { j } else { j - 1 }
}

#[inline]
pub fn pair_bit(n: usize, i: usize, j: usize) -> u64 {
    1u64 << (n * (n - 1) - 1 - pair_index(n, i, j))
}

pub fn encode(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> u64 {
    edges
        .into_iter()
        .fold(0, |code, (u, v)| code | pair_bit(n, u, v))
}

/// Edges of the digraph with the given code, in bit-string order.
pub fn decode(n: usize, code: u64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && code & pair_bit(n, i, j) != 0 {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// All permutations of `0..k` in lexicographic order, cached per `k`.
pub fn permutations(k: usize) -> &'static [Vec<u8>] {
    static CACHE: [OnceLock<Vec<Vec<u8>>>; MAX_CANON_VERTICES + 1] =
        [const { OnceLock::new() }; MAX_CANON_VERTICES + 1];
    assert!(
        k <= MAX_CANON_VERTICES,
        "permutation cache limited to {MAX_CANON_VERTICES}"
    );
    CACHE[k].get_or_init(|| {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..k as u8).collect();
        loop {
            out.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    })
}

/// Minimum code over all relabellings; with `root` given, only relabellings
/// that send the root to vertex 0 are considered.
pub fn canonical_code(n: usize, edges: &[(usize, usize)], root: Option<usize>) -> u64 {
    let mut best = u64::MAX;
    match root {
        None => {
            for perm in permutations(n) {
                let code = encode(
                    n,
                    edges
                        .iter()
                        .map(|&(u, v)| (perm[u] as usize, perm[v] as usize)),
                );
                best = best.min(code);
            }
        }
        Some(r) => {
            // perm over the non-root vertices, which become 1..n
            let others: Vec<usize> = (0..n).filter(|&v| v != r).collect();
            let mut label = vec![0usize; n];
            for perm in permutations(n - 1) {
                label[r] = 0;
                for (k, &v) in others.iter().enumerate() {
                    label[v] = perm[k] as usize + 1;
                }
                let code = encode(n, edges.iter().map(|&(u, v)| (label[u], label[v])));
                best = best.min(code);
            }
        }
    }
    best
}

/// Byte-lookup tables that apply one fixed permutation to a code.
pub struct PermTables {
    chunks: usize,
    tables: Vec<[u64; 256]>,
}

impl PermTables {
    pub fn new(n: usize, perm: &[u8]) -> Self {
        let bits = n * (n - 1);
        let chunks = bits.div_ceil(8);
        let mut tables = vec![[0u64; 256]; chunks];
        // source bit b (from the least significant end) maps to the bit of
        // the permuted pair
        let mut image = vec![0u64; bits];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let src = bits - 1 - pair_index(n, i, j);
                    image[src] = pair_bit(n, perm[i] as usize, perm[j] as usize);
                }
            }
        }
        for (c, table) in tables.iter_mut().enumerate() {
            for (byte, slot) in table.iter_mut().enumerate() {
                let mut out = 0;
                for b in 0..8 {
                    let src = c * 8 + b;
                    if byte >> b & 1 == 1 && src < bits {
                        out |= image[src];
                    }
                }
                *slot = out;
            }
        }
        Self { chunks, tables }
    }

    #[inline]
    pub fn apply(&self, code: u64) -> u64 {
        let mut out = 0;
        for c in 0..self.chunks {
            out |= self.tables[c][(code >> (8 * c)) as usize & 0xff];
        }
        out
    }
}
