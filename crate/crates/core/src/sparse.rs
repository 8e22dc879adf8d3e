//! Exact sparse matrices over GF(p) and rank computation.
//!
//! Two rank engines share one entry point: structured elimination with a
//! fewest-nonzeros (Markowitz-style) pivot policy for matrices that stay
//! sparse, and a seeded black-box Wiedemann rank for matrices whose
//! elimination fill would be prohibitive. The policy switch and the seed are
//! part of [`RankConfig`] so every rank is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Sorted by (row, col); no duplicates, no stored zeros.
    entries: Vec<(u32, u32, u64)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(field: &PrimeField, n: usize) -> Self {
        let _ = field;
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n as u32).map(|i| (i, i, 1)).collect(),
        }
    }

    /// Builds a matrix from triplets, summing duplicates mod p and dropping
    /// zeros, so the stored invariants hold by construction.
    pub fn from_triplets(
        field: &PrimeField,
        rows: usize,
        cols: usize,
        mut triplets: Vec<(u32, u32, u64)>,
    ) -> Result<Self> {
        for &(r, c, _) in &triplets {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::EntryOutOfBounds(r, c, rows, cols));
            }
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(u32, u32, u64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            let v = field.reduce(v);
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => {
                    last.2 = field.add(last.2, v);
                }
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|&(_, _, v)| v != 0);
        Ok(SparseMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, u32, u64)] {
        &self.entries
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<(u32, u32, u64)> =
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Applies a row and a column permutation (both given as images).
    pub fn permute(&self, row_perm: &[u32], col_perm: &[u32]) -> SparseMatrix {
        let mut entries: Vec<(u32, u32, u64)> = self
            .entries
            .iter()
            .map(|&(r, c, v)| (row_perm[r as usize], col_perm[c as usize], v))
            .collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Sparse product self * other.
    pub fn multiply(&self, field: &PrimeField, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::ConsistencyCheck(format!(
                "product shape mismatch: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let right_rows = other.row_major();
        let mut triplets = Vec::new();
        let mut acc: Vec<u64> = vec![0; other.cols];
        let mut touched: Vec<u32> = Vec::new();
        let left_rows = self.row_major();
        for (r, row) in left_rows.iter().enumerate() {
            for &(k, v) in row {
                for &(c, w) in &right_rows[k as usize] {
                    if acc[c as usize] == 0 && field.mul(v, w) != 0 {
                        touched.push(c);
                    }
                    acc[c as usize] = field.add(acc[c as usize], field.mul(v, w));
                }
            }
            for &c in &touched {
                if acc[c as usize] != 0 {
                    triplets.push((r as u32, c, acc[c as usize]));
                }
                acc[c as usize] = 0;
            }
            touched.clear();
        }
        SparseMatrix::from_triplets(field, self.rows, other.cols, triplets)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn row_major(&self) -> Vec<Vec<(u32, u64)>> {
        let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            rows[r as usize].push((c, v));
        }
        rows
    }

    /// Exact rank over GF(p).
    pub fn rank(&self, field: &PrimeField, cfg: &RankConfig) -> RankResult {
        let min_dim = self.rows.min(self.cols);
        if min_dim == 0 || self.entries.is_empty() {
            return RankResult {
                rank: 0,
                method: RankMethod::Elimination,
                seed: cfg.seed,
            };
        }
        let use_blackbox = self.nnz() > cfg.blackbox_nnz_threshold
            || min_dim > cfg.blackbox_dim_threshold;
        if !use_blackbox {
            match eliminate_rank(field, self, cfg.fill_abort_factor) {
                Some(rank) => {
                    return RankResult {
                        rank,
                        method: RankMethod::Elimination,
                        seed: cfg.seed,
                    }
                }
                None => {} // fill blew past the budget, fall through
            }
        }
        let rank = wiedemann_rank(field, self, cfg.seed, cfg.blackbox_repetitions);
        RankResult {
            rank,
            method: RankMethod::Wiedemann,
            seed: cfg.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMethod {
    Elimination,
    Wiedemann,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RankConfig {
    /// Seed for every randomized step; recorded in run metadata.
    pub seed: u64,
    /// Above this entry count the black-box path is used directly.
    pub blackbox_nnz_threshold: usize,
    /// Above this min(rows, cols) the black-box path is used directly.
    pub blackbox_dim_threshold: usize,
    /// Elimination aborts to the black-box path once the live entry count
    /// exceeds this multiple of the input entry count.
    pub fill_abort_factor: usize,
    /// Independent Wiedemann repetitions; the maximum is reported.
    pub blackbox_repetitions: usize,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            seed: 0,
            blackbox_nnz_threshold: 400_000,
            blackbox_dim_threshold: 3_000,
            fill_abort_factor: 40,
            blackbox_repetitions: 2,
        }
    }
}

/// Gaussian elimination on row lists with a Markowitz-flavored pivot rule:
/// pick the sparsest active column, then the sparsest row inside it. Returns
/// None when fill exceeds the budget.
fn eliminate_rank(field: &PrimeField, m: &SparseMatrix, fill_abort: usize) -> Option<usize> {
    let mut rows: Vec<Option<Vec<(u32, u64)>>> = m.row_major().into_iter().map(Some).collect();
    let mut col_count: Vec<u32> = vec![0; m.cols];
    // Row ids per column; entries can go stale after row updates and are
    // re-validated on use.
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row.as_ref().unwrap() {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(r as u32);
        }
    }
    let nnz_budget = m.nnz().saturating_mul(fill_abort).max(1 << 16);
    let mut live_nnz = m.nnz();
    let mut rank = 0usize;

    loop {
        // Sparsest active column.
        let mut best_col = usize::MAX;
        let mut best_count = u32::MAX;
        for (c, &cnt) in col_count.iter().enumerate() {
            if cnt > 0 && cnt < best_count {
                best_count = cnt;
                best_col = c;
                if cnt == 1 {
                    break;
                }
            }
        }
        if best_col == usize::MAX {
            return Some(rank);
        }
        let j = best_col as u32;

        // Live rows hitting column j; pick the shortest as pivot.
        let mut hitters: Vec<u32> = Vec::new();
        let ids = std::mem::take(&mut col_rows[best_col]);
        for r in ids {
            if let Some(row) = rows[r as usize].as_ref() {
                if row.binary_search_by_key(&j, |&(c, _)| c).is_ok() {
                    hitters.push(r);
                }
            }
        }
        hitters.sort_unstable();
        hitters.dedup();
        debug_assert_eq!(hitters.len() as u32, col_count[best_col]);
        let &pivot_row_id = hitters
            .iter()
            .min_by_key(|&&r| rows[r as usize].as_ref().unwrap().len())
            .unwrap();

        let pivot_row = rows[pivot_row_id as usize].take().unwrap();
        live_nnz -= pivot_row.len();
        for &(c, _) in &pivot_row {
            col_count[c as usize] -= 1;
        }
        rank += 1;
        let pivot_val = pivot_row[pivot_row.binary_search_by_key(&j, |&(c, _)| c).unwrap()].1;
        let pivot_inv = field.inv(pivot_val).expect("pivot is nonzero");

        for &r in &hitters {
            if r == pivot_row_id {
                continue;
            }
            let row = rows[r as usize].take().unwrap();
            live_nnz -= row.len();
            for &(c, _) in &row {
                col_count[c as usize] -= 1;
            }
            let idx = row.binary_search_by_key(&j, |&(c, _)| c).unwrap();
            let factor = field.mul(row[idx].1, pivot_inv);
            // row := row - factor * pivot_row, merged over sorted column lists
            let mut merged: Vec<(u32, u64)> = Vec::with_capacity(row.len() + pivot_row.len());
            let (mut a, mut b) = (0usize, 0usize);
            while a < row.len() || b < pivot_row.len() {
                let take_a = b >= pivot_row.len()
                    || (a < row.len() && row[a].0 <= pivot_row[b].0);
                let take_b =
                    a >= row.len() || (b < pivot_row.len() && pivot_row[b].0 <= row[a].0);
                if take_a && take_b {
                    let v = field.sub(row[a].1, field.mul(factor, pivot_row[b].1));
                    if v != 0 {
                        merged.push((row[a].0, v));
                    }
                    a += 1;
                    b += 1;
                } else if take_a {
                    merged.push(row[a]);
                    a += 1;
                } else {
                    let v = field.neg(field.mul(factor, pivot_row[b].1));
                    if v != 0 {
                        merged.push((pivot_row[b].0, v));
                    }
                    b += 1;
                }
            }
            live_nnz += merged.len();
            for &(c, _) in &merged {
                col_count[c as usize] += 1;
                col_rows[c as usize].push(r);
            }
            if !merged.is_empty() {
                rows[r as usize] = Some(merged);
            }
            if live_nnz > nnz_budget {
                return None;
            }
        }
    }
}

/// Compressed sparse rows for fast repeated matrix-vector products.
struct Csr {
    n_rows: usize,
    row_ptr: Vec<u32>,
    col_idx: Vec<u32>,
    vals: Vec<u64>,
}

impl Csr {
    fn new(m: &SparseMatrix) -> Csr {
        let mut row_ptr = vec![0u32; m.rows + 1];
        for &(r, _, _) in &m.entries {
            row_ptr[r as usize + 1] += 1;
        }
        for i in 0..m.rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        let col_idx = m.entries.iter().map(|&(_, c, _)| c).collect();
        let vals = m.entries.iter().map(|&(_, _, v)| v).collect();
        Csr {
            n_rows: m.rows,
            row_ptr,
            col_idx,
            vals,
        }
    }

    fn apply(&self, field: &PrimeField, x: &[u64], out: &mut [u64]) {
        let p = field.modulus();
        for r in 0..self.n_rows {
            let lo = self.row_ptr[r] as usize;
            let hi = self.row_ptr[r + 1] as usize;
            let mut acc: u128 = 0;
            for k in lo..hi {
                // both factors < 2^32, product fits in u64
                acc += (self.vals[k] * x[self.col_idx[k] as usize]) as u128;
            }
            out[r] = (acc % p as u128) as u64;
        }
    }
}

/// Black-box rank: with random diagonal preconditioners D1, D2 the minimal
/// polynomial of (D1 A D2)^T (D1 A D2) has degree rank+1 when it is divisible
/// by x and degree rank otherwise, with high probability over a 31-bit field.
/// Each repetition is a fresh Monte Carlo run; the maximum is reported.
fn wiedemann_rank(field: &PrimeField, m: &SparseMatrix, seed: u64, reps: usize) -> usize {
    // Work with the Gram matrix on the smaller side.
    let (a, at) = if m.cols <= m.rows {
        (Csr::new(m), Csr::new(&m.transpose()))
    } else {
        (Csr::new(&m.transpose()), Csr::new(m))
    };
    let n = at.n_rows; // Gram side
    let big = a.n_rows; // other side
    let mut best = 0usize;
    for rep in 0..reps.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(rep as u64 + 1)));
        let d_small: Vec<u64> = (0..n).map(|_| rng.gen_range(1..field.modulus())).collect();
        let d_big: Vec<u64> = (0..big).map(|_| rng.gen_range(1..field.modulus())).collect();
        let u: Vec<u64> = (0..n).map(|_| rng.gen_range(0..field.modulus())).collect();
        let mut x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..field.modulus())).collect();
        let mut tmp_big = vec![0u64; big];
        let mut tmp_small = vec![0u64; n];
        let len = 2 * n + 2;
        let mut seq = Vec::with_capacity(len);
        for _ in 0..len {
            let mut dot: u128 = 0;
            for i in 0..n {
                dot += (u[i] * x[i]) as u128;
            }
            seq.push((dot % field.modulus() as u128) as u64);
            // x := D2 A^T D1^2 A D2 x
            for i in 0..n {
                tmp_small[i] = field.mul(d_small[i], x[i]);
            }
            a.apply(field, &tmp_small, &mut tmp_big);
            for i in 0..big {
                let s = field.mul(d_big[i], d_big[i]);
                tmp_big[i] = field.mul(s, tmp_big[i]);
            }
            at.apply(field, &tmp_big, &mut x);
            for i in 0..n {
                x[i] = field.mul(d_small[i], x[i]);
            }
        }
        let minpoly = berlekamp_massey(field, &seq);
        let deg = minpoly.len() - 1;
        let rank = if deg == 0 {
            0
        } else if minpoly[0] == 0 {
            deg - 1
        } else {
            deg
        };
        best = best.max(rank);
    }
    best
}

/// Minimal polynomial of a linearly recurrent sequence. Returned coefficients
/// are low-to-high and the leading coefficient is 1.
fn berlekamp_massey(field: &PrimeField, seq: &[u64]) -> Vec<u64> {
    let mut c = vec![1u64]; // connection polynomial, low-to-high
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bb = 1u64;
    for i in 0..seq.len() {
        let mut delta = seq[i];
        for j in 1..=l {
            if j < c.len() {
                delta = field.add(delta, field.mul(c[j], seq[i - j]));
            }
        }
        if delta == 0 {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            let coef = field.mul(delta, field.inv(bb).expect("nonzero"));
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for j in 0..b.len() {
                c[j + m] = field.sub(c[j + m], field.mul(coef, b[j]));
            }
            l = i + 1 - l;
            b = t;
            bb = delta;
            m = 1;
        } else {
            let coef = field.mul(delta, field.inv(bb).expect("nonzero"));
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for j in 0..b.len() {
                c[j + m] = field.sub(c[j + m], field.mul(coef, b[j]));
            }
            m += 1;
        }
    }
    // minimal polynomial = x^L * C(1/x)
    let mut mp = vec![0u64; l + 1];
    mp[l] = 1;
    for j in 1..=l {
        if j < c.len() {
            mp[l - j] = c[j];
        }
    }
    mp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(2147483647).unwrap()
    }

    #[test]
    fn identity_rank() {
        let f = field();
        let m = SparseMatrix::identity(&f, 3);
        assert_eq!(m.rank(&f, &RankConfig::default()).rank, 3);
    }

    #[test]
    fn zero_rank() {
        let f = field();
        let m = SparseMatrix::zero(4, 5);
        assert_eq!(m.rank(&f, &RankConfig::default()).rank, 0);
    }

    #[test]
    fn rejects_out_of_bounds() {
        let f = field();
        assert!(SparseMatrix::from_triplets(&f, 2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn duplicate_triplets_are_summed() {
        let f = field();
        let m =
            SparseMatrix::from_triplets(&f, 1, 1, vec![(0, 0, 5), (0, 0, f.modulus() - 5)])
                .unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn wiedemann_matches_elimination_on_random_matrices() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..12 {
            let rows = 8 + (trial % 5) * 7;
            let cols = 6 + (trial % 4) * 9;
            let mut triplets = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_ratio(1, 3) {
                        triplets.push((r as u32, c as u32, rng.gen_range(0..f.modulus())));
                    }
                }
            }
            let m = SparseMatrix::from_triplets(&f, rows, cols, triplets).unwrap();
            let by_elim = eliminate_rank(&f, &m, 1000).unwrap();
            let by_bb = wiedemann_rank(&f, &m, 42 + trial as u64, 2);
            assert_eq!(by_elim, by_bb, "trial {trial}");
        }
    }

    #[test]
    fn rank_invariant_under_permutation() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rows = 20;
        let cols = 17;
        let mut triplets = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_ratio(1, 4) {
                    triplets.push((r as u32, c as u32, rng.gen_range(1..f.modulus())));
                }
            }
        }
        let m = SparseMatrix::from_triplets(&f, rows, cols, triplets).unwrap();
        let base = m.rank(&f, &RankConfig::default()).rank;
        for s in 0..5u64 {
            let mut rp: Vec<u32> = (0..rows as u32).collect();
            let mut cp: Vec<u32> = (0..cols as u32).collect();
            let mut r2 = ChaCha8Rng::seed_from_u64(s);
            for i in (1..rp.len()).rev() {
                rp.swap(i, r2.gen_range(0..=i));
            }
            for i in (1..cp.len()).rev() {
                cp.swap(i, r2.gen_range(0..=i));
            }
            let pm = m.permute(&rp, &cp);
            assert_eq!(pm.rank(&f, &RankConfig::default()).rank, base);
        }
    }

    #[test]
    fn product_rank_bound() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..6 {
            let (m, k, n) = (12, 9, 14);
            let mk: Vec<_> = (0..m * k)
                .filter(|_| rng.gen_ratio(1, 2))
                .collect::<Vec<usize>>();
            let mut t1 = Vec::new();
            for idx in mk {
                t1.push(((idx / k) as u32, (idx % k) as u32, rng.gen_range(1..f.modulus())));
            }
            let mut t2 = Vec::new();
            for idx in 0..k * n {
                if rng.gen_ratio(1, 2) {
                    t2.push(((idx / n) as u32, (idx % n) as u32, rng.gen_range(1..f.modulus())));
                }
            }
            let a = SparseMatrix::from_triplets(&f, m, k, t1).unwrap();
            let b = SparseMatrix::from_triplets(&f, k, n, t2).unwrap();
            let ab = a.multiply(&f, &b).unwrap();
            let cfg = RankConfig::default();
            let ra = a.rank(&f, &cfg).rank;
            let rb = b.rank(&f, &cfg).rank;
            let rab = ab.rank(&f, &cfg).rank;
            assert!(rab <= ra.min(rb));
        }
    }

    #[test]
    fn berlekamp_massey_fibonacci() {
        let f = field();
        // x^2 - x - 1
        let mut seq = vec![1u64, 1];
        for i in 2..16 {
            let v = f.add(seq[i - 1], seq[i - 2]);
            seq.push(v);
        }
        let mp = berlekamp_massey(&f, &seq);
        assert_eq!(mp.len(), 3);
        assert_eq!(mp[2], 1);
        assert_eq!(mp[1], f.modulus() - 1);
        assert_eq!(mp[0], f.modulus() - 1);
    }
}
