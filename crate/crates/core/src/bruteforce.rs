//! Exhaustive searches over `GL(n, F_p)` for tiny `n` and `p`.
//!
//! Matrices are enumerated row by row: a row is a vector index in
//! `0..p^n` (first coordinate most significant) and each row runs over the
//! vectors outside the span of the rows above it, in increasing order. This
//! is the odometer order on entries with singular matrices skipped.
//!
//! Congruence searches look for `S` with `S^T M S = N`. Row `i` of the
//! enumerated matrix is column `i` of `S`, so `(S^T M S)_ij = q_i^T M q_j`
//! and a partial choice of rows already fixes the leading block.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::tuples::{
    apply_star_congruence, apply_substitution, CongruenceWitness, MatTuple, PairClassWitness, SubstitutionMatrix,
};

pub const DEFAULT_BUDGET: u64 = 35_000_000;

/// `|GL(n, F_p)| = prod_k (p^n - p^k)`, saturating.
pub fn gl_order(n: usize, p: u64) -> u64 {
    let pn = (p as u128).checked_pow(n as u32);
    let Some(pn) = pn else { return u64::MAX };
    let mut acc: u128 = 1;
    let mut pk: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(pn - pk);
        pk *= p as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

fn check_budget(n: usize, field: Field, budget: u64) -> Result<u64> {
    if field.deg() != 1 {
        return Err(Error::NeedsPrimeField);
    }
    let size = gl_order(n, field.p());
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(size)
}

/// Vectors of `F_p^n` by index.
struct VectorSpace {
    p: u32,
    n: usize,
    size: usize,
    digits: Vec<u32>,
}

impl VectorSpace {
    fn new(p: u64, n: usize) -> VectorSpace {
        let size = (p as usize).pow(n as u32);
        let mut digits = vec![0u32; size * n];
        for v in 0..size {
            let mut x = v;
            for l in (0..n).rev() {
                digits[v * n + l] = (x % p as usize) as u32;
                x /= p as usize;
            }
        }
        VectorSpace { p: p as u32, n, size, digits }
    }

    fn vector(&self, v: usize) -> &[u32] {
        &self.digits[v * self.n..(v + 1) * self.n]
    }

    /// Index of `u + c v`.
    fn axpy(&self, u: usize, c: u32, v: usize) -> usize {
        let p = self.p as u64;
        let (a, b) = (self.vector(u), self.vector(v));
        a.iter().zip(b).fold(0usize, |acc, (&x, &y)| acc * self.p as usize + ((x as u64 + c as u64 * y as u64) % p) as usize)
    }

    fn extend_span(&self, span: &[usize], v: usize, out: &mut Vec<usize>, mask: &mut [bool]) {
        out.clear();
        mask.iter_mut().for_each(|m| *m = false);
        for &s in span {
            for c in 0..self.p {
                let w = self.axpy(s, c, v);
                out.push(w);
                mask[w] = true;
            }
        }
    }

    fn matrix(&self, field: Field, rows: &[usize]) -> Mat {
        Mat::from_fn(field, rows.len(), self.n, |i, j| field.from_i64(self.vector(rows[i])[j] as i64))
    }
}

/// Iterator over `GL(n, F_p)` in enumeration order.
pub struct GlIter {
    space: VectorSpace,
    field: Field,
    rows: Vec<usize>,
    spans: Vec<Vec<usize>>,
    masks: Vec<Vec<bool>>,
    started: bool,
    done: bool,
}

impl GlIter {
    fn update_span(&mut self, k: usize) {
        // span of rows[0..=k] into slot k + 1
        let (lo, hi) = self.spans.split_at_mut(k + 1);
        self.space.extend_span(&lo[k], self.rows[k], &mut hi[0], &mut self.masks[k + 1]);
    }

    fn next_candidate(&self, k: usize, from: usize) -> Option<usize> {
        (from..self.space.size).find(|&v| !self.masks[k][v])
    }

    fn fill(&mut self, from: usize) {
        for k in from..self.space.n {
            self.rows[k] = self.next_candidate(k, 0).expect("independent vector exists");
            if k + 1 < self.space.n {
                self.update_span(k);
            }
        }
    }

    fn advance(&mut self) -> bool {
        let mut k = self.space.n;
        while k > 0 {
            k -= 1;
            if let Some(v) = self.next_candidate(k, self.rows[k] + 1) {
                self.rows[k] = v;
                if k + 1 < self.space.n {
                    self.update_span(k);
                    self.fill(k + 1);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for GlIter {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill(0);
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.space.matrix(self.field, &self.rows))
    }
}

/// Every nonsingular `n x n` matrix over a prime field, once each.
pub fn enumerate_gl(n: usize, field: Field, budget: u64) -> Result<GlIter> {
    check_budget(n, field, budget)?;
    let space = VectorSpace::new(field.p(), n);
    let mut masks = vec![vec![false; space.size]; n + 1];
    masks[0][0] = true;
    let mut spans = vec![Vec::new(); n + 1];
    spans[0].push(0);
    Ok(GlIter { rows: vec![0; n], spans, masks, space, field, started: false, done: n == 0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    /// Visit every element of the group.
    Full,
    /// Cut a branch as soon as the fixed leading block disagrees.
    Pruned,
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub budget: u64,
    pub mode: ScanMode,
    /// Skip the scan when an invariant already separates the inputs.
    pub fast_reject: bool,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: DEFAULT_BUDGET, mode: ScanMode::Pruned, fast_reject: true, threads: 0 }
    }
}

/// Outcome of an exhaustive search. `states_examined` counts complete
/// group elements that were checked.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport<W> {
    #[serde(skip)]
    pub found: Option<W>,
    pub states_examined: u64,
    pub search_space_size: u64,
    pub nodes_visited: u64,
    pub mode: ScanMode,
    pub fast_reject: Option<String>,
    pub scanned: bool,
    pub caveat: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl<W> SearchReport<W> {
    pub fn is_found(&self) -> bool {
        self.found.is_some()
    }
}

/// Search state for `S^T M_m S = N_m` over all `m`.
struct Scanner<'a> {
    space: &'a VectorSpace,
    /// `images[m][v * n + l] = (M_m q_v)_l`
    images: Vec<Vec<u32>>,
    targets: Vec<Vec<u32>>,
    mode: ScanMode,
}

#[derive(Default)]
struct BlockResult {
    leaves: u64,
    nodes: u64,
    found: Option<Vec<usize>>,
}

struct Walk {
    rows: Vec<usize>,
    spans: Vec<Vec<usize>>,
    masks: Vec<Vec<bool>>,
    result: BlockResult,
}

impl<'a> Scanner<'a> {
    fn new(space: &'a VectorSpace, source: &MatTuple, target: &MatTuple, mode: ScanMode) -> Scanner<'a> {
        let n = space.n;
        let p = space.p as u64;
        let images = source
            .mats()
            .iter()
            .map(|m| {
                let mut out = vec![0u32; space.size * n];
                for v in 0..space.size {
                    let q = space.vector(v);
                    for l in 0..n {
                        let s = (0..n).fold(0u64, |acc, k| (acc + m.get(l, k).c0 * q[k] as u64) % p);
                        out[v * n + l] = s as u32;
                    }
                }
                out
            })
            .collect();
        let targets = target.mats().iter().map(|m| m.data().iter().map(|e| e.c0 as u32).collect()).collect();
        Scanner { space, images, targets, mode }
    }

    fn entry(&self, m: usize, qi: usize, qj: usize) -> u32 {
        let n = self.space.n;
        let p = self.space.p as u64;
        let a = self.space.vector(qi);
        let b = &self.images[m][qj * n..(qj + 1) * n];
        (a.iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p)) as u32
    }

    /// Whether row `v` at depth `k` matches the targets on the new border.
    fn border_matches(&self, rows: &[usize], k: usize, v: usize) -> bool {
        let n = self.space.n;
        (0..self.images.len()).all(|m| {
            let t = &self.targets[m];
            self.entry(m, v, v) == t[k * n + k]
                && (0..k).all(|j| self.entry(m, rows[j], v) == t[j * n + k] && self.entry(m, v, rows[j]) == t[k * n + j])
        })
    }

    fn scan_block(&self, first: usize, block: usize, best: &AtomicUsize) -> BlockResult {
        let n = self.space.n;
        let size = self.space.size;
        let mut walk = Walk {
            rows: vec![0; n],
            spans: vec![Vec::new(); n + 1],
            masks: vec![vec![false; size]; n + 1],
            result: BlockResult::default(),
        };
        walk.spans[0].push(0);
        walk.masks[0][0] = true;
        walk.result.nodes = 1;
        let ok = self.border_matches(&walk.rows, 0, first);
        walk.rows[0] = first;
        if n == 1 {
            walk.result.leaves = 1;
            if ok {
                walk.result.found = Some(walk.rows.clone());
            }
            return walk.result;
        }
        if !ok && self.mode == ScanMode::Pruned {
            return walk.result;
        }
        {
            let (lo, hi) = walk.spans.split_at_mut(1);
            self.space.extend_span(&lo[0], first, &mut hi[0], &mut walk.masks[1]);
        }
        self.dfs(&mut walk, 1, ok, block, best);
        walk.result
    }

    fn dfs(&self, w: &mut Walk, k: usize, ok: bool, block: usize, best: &AtomicUsize) -> bool {
        let n = self.space.n;
        for v in 0..self.space.size {
            if w.masks[k][v] {
                continue;
            }
            w.result.nodes += 1;
            let here = ok && self.border_matches(&w.rows, k, v);
            w.rows[k] = v;
            if k + 1 == n {
                w.result.leaves += 1;
                if here {
                    w.result.found = Some(w.rows.clone());
                    return true;
                }
                continue;
            }
            if !here && self.mode == ScanMode::Pruned {
                continue;
            }
            if k == 1 && best.load(Ordering::Relaxed) < block {
                return false;
            }
            {
                let (lo, hi) = w.spans.split_at_mut(k + 1);
                self.space.extend_span(&lo[k], v, &mut hi[0], &mut w.masks[k + 1]);
            }
            if self.dfs(w, k + 1, here, block, best) {
                return true;
            }
        }
        false
    }

    /// First hit in enumeration order, leaves and nodes up to it.
    fn run(&self) -> (Option<Vec<usize>>, u64, u64) {
        let best = AtomicUsize::new(usize::MAX);
        let firsts: Vec<usize> = (1..self.space.size).collect();
        let results: Vec<BlockResult> = firsts
            .par_iter()
            .enumerate()
            .map(|(block, &first)| {
                if best.load(Ordering::Relaxed) < block {
                    return BlockResult::default();
                }
                let r = self.scan_block(first, block, &best);
                if r.found.is_some() {
                    best.fetch_min(block, Ordering::Relaxed);
                }
                r
            })
            .collect();
        let mut leaves = 0;
        let mut nodes = 0;
        for r in results {
            leaves += r.leaves;
            nodes += r.nodes;
            if r.found.is_some() {
                return (r.found, leaves, nodes);
            }
        }
        (None, leaves, nodes)
    }
}

fn with_threads<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// `|GL(n, F_p)|` by walking the enumeration tree.
pub fn count_gl(n: usize, field: Field, budget: u64, threads: usize) -> Result<u64> {
    check_budget(n, field, budget)?;
    if n == 0 {
        return Ok(1);
    }
    let space = VectorSpace::new(field.p(), n);
    with_threads(threads, || (1..space.size).into_par_iter().map(|first| count_block(&space, first)).sum())
}

fn count_block(space: &VectorSpace, first: usize) -> u64 {
    fn walk(space: &VectorSpace, spans: &mut [Vec<usize>], masks: &mut [Vec<bool>], k: usize) -> u64 {
        let n = space.n;
        let mut total = 0;
        for v in 0..space.size {
            if masks[k][v] {
                continue;
            }
            if k + 1 == n {
                total += 1;
                continue;
            }
            let (lo, hi) = spans.split_at_mut(k + 1);
            space.extend_span(&lo[k], v, &mut hi[0], &mut masks[k + 1]);
            total += walk(space, spans, masks, k + 1);
        }
        total
    }
    let n = space.n;
    if n == 1 {
        return 1;
    }
    let mut spans = vec![Vec::new(); n + 1];
    let mut masks = vec![vec![false; space.size]; n + 1];
    spans[0].push(0);
    let (lo, hi) = spans.split_at_mut(1);
    space.extend_span(&lo[0], first, &mut hi[0], &mut masks[1]);
    walk(space, &mut spans, &mut masks, 1)
}

fn check_pairs(t: &MatTuple, u: &MatTuple) -> Result<()> {
    if t.len() != 2 {
        return Err(Error::NotPair(t.len()));
    }
    if u.len() != 2 {
        return Err(Error::NotPair(u.len()));
    }
    if t.field() != u.field() {
        return Err(Error::FieldMismatch);
    }
    if !t.is_square() || t.shape() != u.shape() {
        return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", t.shape(), u.shape())));
    }
    Ok(())
}

/// A congruence invariant separating `t` from `u`, if one applies: the
/// component ranks, and the characteristic polynomial of `M1^-1 M2` when
/// `M1` is nonsingular.
pub fn congruence_invariant_separates(t: &MatTuple, u: &MatTuple) -> Result<Option<String>> {
    for i in 0..t.len() {
        let (rt, ru) = (t.get(i).rank(), u.get(i).rank());
        if rt != ru {
            return Ok(Some(format!("rank of component {i}: {rt} vs {ru}")));
        }
    }
    if t.len() >= 2 && t.get(0).is_invertible() {
        let ct = Poly::charpoly(&t.get(0).inverse()?.mul(t.get(1))?)?;
        let cu = Poly::charpoly(&u.get(0).inverse()?.mul(u.get(1))?)?;
        if ct != cu {
            return Ok(Some("characteristic polynomial of M1^-1 M2".into()));
        }
    }
    Ok(None)
}

/// Ranks of `a M1 + b M2` over all nonzero `(a, b)`, sorted. Invariant
/// under congruence combined with substitution.
pub fn pencil_rank_multiset(t: &MatTuple) -> Vec<usize> {
    let f = t.field();
    let mut ranks = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let m = t.get(0).scale(a).add(&t.get(1).scale(b)).expect("same shape");
            ranks.push(m.rank());
        }
    }
    ranks.sort_unstable();
    ranks
}

/// Scans `GL(n, F_p)` for `S` with `S^T T_i S = U_i`; the first hit in
/// enumeration order wins.
pub fn decide_congruence_exhaustive(
    t: &MatTuple,
    u: &MatTuple,
    opts: &OracleOptions,
) -> Result<SearchReport<CongruenceWitness>> {
    check_pairs(t, u)?;
    let start = Instant::now();
    let n = t.rows();
    let size = check_budget(n, t.field(), opts.budget)?;
    let fast_reject = congruence_invariant_separates(t, u)?;
    let mut report = SearchReport {
        found: None,
        states_examined: 0,
        search_space_size: size,
        nodes_visited: 0,
        mode: opts.mode,
        fast_reject,
        scanned: false,
        caveat: None,
        elapsed: Duration::ZERO,
    };
    if !(opts.fast_reject && report.fast_reject.is_some()) {
        let space = VectorSpace::new(t.field().p(), n);
        let (hit, leaves, nodes) = with_threads(opts.threads, || congruence_scan(&space, t, u, opts.mode))?;
        report.scanned = true;
        report.states_examined = leaves;
        report.nodes_visited = nodes;
        report.found = hit.map(|rows| finish_congruence(&space, t, u, &rows)).transpose()?;
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn congruence_scan(space: &VectorSpace, t: &MatTuple, u: &MatTuple, mode: ScanMode) -> (Option<Vec<usize>>, u64, u64) {
    if space.n == 0 {
        return (Some(Vec::new()), 1, 1);
    }
    Scanner::new(space, t, u, mode).run()
}

fn finish_congruence(space: &VectorSpace, t: &MatTuple, u: &MatTuple, rows: &[usize]) -> Result<CongruenceWitness> {
    let w = CongruenceWitness::new(space.matrix(t.field(), rows).transpose())?;
    if apply_star_congruence(&w, t)? != *u {
        return Err(Error::WitnessInvalid("exhaustive hit failed replay".into()));
    }
    Ok(w)
}

/// Substitution matrices in enumeration order.
fn substitutions(field: Field) -> Result<Vec<SubstitutionMatrix>> {
    enumerate_gl(2, field, u64::MAX)?.map(SubstitutionMatrix::from_mat).collect()
}

/// Scans `r` over `GL(2, F_p)` and, for each, `S` over `GL(n, F_p)` for
/// `S^T (r . T)_i S = U_i`.
pub fn decide_pair_class_exhaustive(
    t: &MatTuple,
    u: &MatTuple,
    opts: &OracleOptions,
) -> Result<SearchReport<PairClassWitness>> {
    check_pairs(t, u)?;
    let start = Instant::now();
    let f = t.field();
    let n = t.rows();
    let inner = check_budget(n, f, opts.budget)?;
    let outer = gl_order(2, f.p());
    let mut report = SearchReport {
        found: None,
        states_examined: 0,
        search_space_size: inner.saturating_mul(outer),
        nodes_visited: 0,
        mode: opts.mode,
        fast_reject: None,
        scanned: false,
        caveat: None,
        elapsed: Duration::ZERO,
    };
    if pencil_rank_multiset(t) != pencil_rank_multiset(u) {
        report.fast_reject = Some("multiset of pencil ranks".into());
    }
    if !(opts.fast_reject && report.fast_reject.is_some()) {
        report.scanned = true;
        let space = VectorSpace::new(f.p(), n);
        for r in substitutions(f)? {
            let moved = apply_substitution(&r, t)?;
            if opts.fast_reject && congruence_invariant_separates(&moved, u)?.is_some() {
                continue;
            }
            let (hit, leaves, nodes) = with_threads(opts.threads, || congruence_scan(&space, &moved, u, opts.mode))?;
            report.states_examined += leaves;
            report.nodes_visited += nodes;
            if let Some(rows) = hit {
                let congruence = finish_congruence(&space, &moved, u, &rows)?;
                report.found = Some(PairClassWitness { congruence, substitution: r });
                break;
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Scalar entries of a prime-field matrix as plain residues.
pub fn residues(m: &Mat) -> Vec<u64> {
    m.data().iter().map(|e: &Elem| e.c0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(1, 3), 2);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(4, 3), 24_261_120);
        assert_eq!(enumerate_gl(1, f3(), DEFAULT_BUDGET).unwrap().count(), 2);
        assert_eq!(enumerate_gl(2, f3(), DEFAULT_BUDGET).unwrap().count(), 48);
        assert_eq!(count_gl(3, f3(), DEFAULT_BUDGET, 0).unwrap(), gl_order(3, 3));
    }

    #[test]
    fn enumeration_is_sorted_nonsingular_and_distinct() {
        let all: Vec<Mat> = enumerate_gl(2, Field::prime(5).unwrap(), DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(all.len() as u64, gl_order(2, 5));
        assert!(all.iter().all(|m| m.is_invertible()));
        let keys: Vec<Vec<u64>> = all.iter().map(residues).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_gl(4, Field::prime(5).unwrap(), DEFAULT_BUDGET).err().unwrap();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(enumerate_gl(2, f9, DEFAULT_BUDGET).err().unwrap(), Error::NeedsPrimeField);
    }

    #[test]
    fn planted_congruence_found_in_both_modes() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = MatTuple::pair(Mat::random(f, 3, 3, &mut rng), Mat::random(f, 3, 3, &mut rng)).unwrap();
        let s = CongruenceWitness::new(Mat::random_invertible(f, 3, &mut rng)).unwrap();
        let u = apply_star_congruence(&s, &t).unwrap();
        for mode in [ScanMode::Full, ScanMode::Pruned] {
            let r = decide_congruence_exhaustive(&t, &u, &OracleOptions { mode, ..Default::default() }).unwrap();
            assert_eq!(apply_star_congruence(r.found.as_ref().unwrap(), &t).unwrap(), u);
            assert!(r.states_examined <= r.search_space_size);
        }
    }

    #[test]
    fn modes_agree_on_first_hit() {
        let f = f3();
        let t = MatTuple::pair(Mat::identity(f, 2), Mat::from_i64(f, &[&[0, 1], &[2, 0]])).unwrap();
        let full = decide_congruence_exhaustive(&t, &t, &OracleOptions { mode: ScanMode::Full, ..Default::default() }).unwrap();
        let pruned = decide_congruence_exhaustive(&t, &t, &OracleOptions::default()).unwrap();
        assert_eq!(full.found, pruned.found);
    }

    #[test]
    fn rank_invariant_rejects() {
        let f = f3();
        let t = MatTuple::pair(Mat::identity(f, 1), Mat::identity(f, 1)).unwrap();
        let u = MatTuple::pair(Mat::identity(f, 1), Mat::zeros(f, 1, 1)).unwrap();
        let quick = decide_congruence_exhaustive(&t, &u, &OracleOptions::default()).unwrap();
        assert!(!quick.scanned && quick.fast_reject.is_some() && quick.found.is_none());
        let slow = decide_congruence_exhaustive(&t, &u, &OracleOptions { fast_reject: false, ..Default::default() }).unwrap();
        assert!(slow.scanned && slow.found.is_none());
        assert_eq!(slow.states_examined, 2);
    }

    #[test]
    fn pair_class_examples() {
        let f = f3();
        let d = Mat::diag(f, &[Elem::ONE, f.from_i64(2)]);
        let t = MatTuple::pair(Mat::identity(f, 2), d.clone()).unwrap();
        let u = MatTuple::pair(d, Mat::identity(f, 2)).unwrap();
        let r = decide_pair_class_exhaustive(&t, &u, &OracleOptions::default()).unwrap();
        let w = r.found.unwrap();
        assert_eq!(crate::tuples::apply_pair_class(&w, &t).unwrap(), u);

        let t = MatTuple::pair(Mat::identity(f, 2), Mat::from_i64(f, &[&[0, 1], &[0, 0]])).unwrap();
        let u = MatTuple::pair(Mat::identity(f, 2), Mat::zeros(f, 2, 2)).unwrap();
        let quick = decide_pair_class_exhaustive(&t, &u, &OracleOptions::default()).unwrap();
        assert!(quick.fast_reject.is_some());
        let full = decide_pair_class_exhaustive(&t, &u, &OracleOptions { fast_reject: false, mode: ScanMode::Full, ..Default::default() }).unwrap();
        assert!(full.found.is_none());
        assert_eq!(full.states_examined, full.search_space_size);
    }
}
