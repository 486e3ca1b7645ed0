use std::collections::HashMap;
use std::hash::Hash;

use super::{Algorithm, SolveReport, SolverLimits};
use crate::error::{resource, Error, Result};
use crate::f2::{BitMat, BitVec};
use crate::reductions::VectorSumInstance;
use crate::{binomial, binomial_sum, for_each_combination};

/// A syndrome value usable as a hash/sort key.
pub(crate) trait Syndrome: Clone + Ord + Hash {
    fn from_bits(v: &BitVec) -> Self;
    fn xor(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Syndrome for u64 {
    fn from_bits(v: &BitVec) -> Self {
        v.words().first().copied().unwrap_or(0)
    }
    fn xor(&self, other: &Self) -> Self {
        self ^ other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Syndrome for u128 {
    fn from_bits(v: &BitVec) -> Self {
        let w = v.words();
        u128::from(w.first().copied().unwrap_or(0)) | u128::from(w.get(1).copied().unwrap_or(0)) << 64
    }
    fn xor(&self, other: &Self) -> Self {
        self ^ other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Syndrome for Vec<u64> {
    fn from_bits(v: &BitVec) -> Self {
        v.words().to_vec()
    }
    fn xor(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a ^ b).collect()
    }
    fn is_zero(&self) -> bool {
        self.iter().all(|&w| w == 0)
    }
}

/// Runs `$body` with `$S` bound to the narrowest syndrome type for `$rows` rows.
macro_rules! with_syndrome {
    ($rows:expr, $S:ident => $body:expr) => {{
        let rows: usize = $rows;
        if rows <= 64 {
            type $S = u64;
            $body
        } else if rows <= 128 {
            type $S = u128;
            $body
        } else {
            type $S = Vec<u64>;
            $body
        }
    }};
}
pub(crate) use with_syndrome;

pub(crate) fn column_syndromes<S: Syndrome>(m: &BitMat) -> Vec<S> {
    m.columns().iter().map(S::from_bits).collect()
}

fn finish(inst: &VectorSumInstance, alg: Algorithm, support: Option<Vec<usize>>, work: u64) -> Result<SolveReport> {
    match support {
        None => Ok(SolveReport::infeasible(alg, work)),
        Some(s) => {
            let x = BitVec::from_indices(inst.m.ncols(), s);
            inst.verify(&x)
                .map_err(|e| Error::Witness(format!("{alg} produced a bad witness: {e}")))?;
            Ok(SolveReport::found(alg, x, work))
        }
    }
}

/// Enumerates supports by increasing weight in `wmin..=wmax`; returns the first
/// (lexicographically least) one whose columns sum to `target`.
pub(crate) fn exhaustive_search<S: Syndrome>(
    cols: &[S],
    target: &S,
    zero: &S,
    wmin: usize,
    wmax: usize,
    work: &mut u64,
) -> Option<Vec<usize>> {
    let mut index: HashMap<&S, Vec<usize>> = HashMap::new();
    for (j, c) in cols.iter().enumerate() {
        index.entry(c).or_default().push(j);
    }
    for w in wmin..=wmax.min(cols.len()) {
        if w == 0 {
            if target.is_zero() {
                return Some(Vec::new());
            }
            continue;
        }
        let mut prefix = Vec::with_capacity(w);
        if let Some(s) = dfs(cols, &index, target, w - 1, 0, &mut prefix, zero.clone(), work) {
            return Some(s);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn dfs<S: Syndrome>(
    cols: &[S],
    index: &HashMap<&S, Vec<usize>>,
    target: &S,
    remaining: usize,
    from: usize,
    prefix: &mut Vec<usize>,
    acc: S,
    work: &mut u64,
) -> Option<Vec<usize>> {
    if remaining == 0 {
        *work += 1;
        let need = acc.xor(target);
        let list = index.get(&need)?;
        let lo = prefix.last().map_or(0, |&l| l + 1);
        let pos = list.partition_point(|&j| j < lo);
        let &j = list.get(pos)?;
        let mut s = prefix.clone();
        s.push(j);
        return Some(s);
    }
    for j in from..cols.len().saturating_sub(remaining) {
        prefix.push(j);
        let hit = dfs(cols, index, target, remaining - 1, j + 1, prefix, acc.xor(&cols[j]), work);
        prefix.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Tries every support of weight 0, 1, …, k in lexicographic order.
pub fn solve_exhaustive(inst: &VectorSumInstance, limits: &SolverLimits) -> Result<SolveReport> {
    let n = inst.m.ncols();
    let k = inst.k.min(n);
    let total = binomial_sum(n, k);
    if total > limits.enumeration_cap {
        return Err(resource(format!(
            "C({n}, ≤{k}) = {total} exceeds the enumeration cap {}",
            limits.enumeration_cap
        )));
    }
    let mut work = 0;
    let support = with_syndrome!(inst.m.nrows(), S => {
        let cols: Vec<S> = column_syndromes(&inst.m);
        let target = S::from_bits(&inst.b);
        let zero = S::from_bits(&BitVec::zeros(inst.m.nrows()));
        exhaustive_search(&cols, &target, &zero, 0, k, &mut work)
    });
    finish(inst, Algorithm::Exhaustive, support, work)
}

/// Sorted table of (syndrome, combo id) for all `a`-subsets.
struct HalfTable<S> {
    a: usize,
    entries: Vec<(S, u32)>,
    combos: Vec<u32>,
}

impl<S: Syndrome> HalfTable<S> {
    fn build(cols: &[S], zero: &S, a: usize) -> Self {
        let mut entries = Vec::new();
        let mut combos = Vec::new();
        let mut id = 0u32;
        for_each_combination(cols.len(), a, |c| {
            let syn = c.iter().fold(zero.clone(), |acc, &j| acc.xor(&cols[j]));
            entries.push((syn, id));
            combos.extend(c.iter().map(|&j| j as u32));
            id += 1;
            true
        });
        entries.sort_unstable();
        Self { a, entries, combos }
    }

    fn matches<'a>(&'a self, key: &S) -> impl Iterator<Item = &'a [u32]> + 'a {
        let lo = self.entries.partition_point(|(s, _)| s < key);
        let hi = self.entries.partition_point(|(s, _)| s <= key);
        self.entries[lo..hi]
            .iter()
            .map(move |&(_, id)| &self.combos[id as usize * self.a..(id as usize + 1) * self.a])
    }
}

fn mitm_plain<S: Syndrome>(
    cols: &[S],
    target: &S,
    zero: &S,
    k: usize,
    limits: &SolverLimits,
    work: &mut u64,
) -> Result<Option<Vec<usize>>> {
    if target.is_zero() {
        return Ok(Some(Vec::new()));
    }
    let n = cols.len();
    let half = k.div_ceil(2);
    let entries = binomial_sum(n, half);
    if entries > limits.memory_cap {
        return Err(resource(format!(
            "meet-in-the-middle tables need {entries} entries, above the memory cap {}",
            limits.memory_cap
        )));
    }
    let mut tables: Vec<Option<HalfTable<S>>> = (0..=half).map(|_| None).collect();
    for w in 1..=k.min(n) {
        let a = w.div_ceil(2);
        let b = w - a;
        if tables[a].is_none() {
            *work += binomial(n, a);
            tables[a] = Some(HalfTable::build(cols, zero, a));
        }
        let table = tables[a].as_ref().expect("built above");
        let mut best: Option<Vec<usize>> = None;
        for_each_combination(n, b, |right| {
            *work += 1;
            let key = right.iter().fold(target.clone(), |acc, &j| acc.xor(&cols[j]));
            let min_right = right.first().copied().unwrap_or(n);
            for left in table.matches(&key) {
                if (*left.last().expect("a ≥ 1") as usize) < min_right {
                    let cand: Vec<usize> = left.iter().map(|&j| j as usize).chain(right.iter().copied()).collect();
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            true
        });
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

/// Rows with b_r = 1 whose column supports are pairwise disjoint, smallest first.
///
/// Any solution picks an odd number of columns from each such support, so its
/// weight is at least the number of rows returned.
fn disjoint_odd_groups(m: &BitMat, b: &BitVec) -> Vec<Vec<usize>> {
    let mut odd: Vec<(usize, usize)> = b.iter_ones().map(|r| (m.row(r).weight(), r)).collect();
    odd.sort_unstable();
    let mut used = BitVec::zeros(m.ncols());
    let mut groups = Vec::new();
    for (_, r) in odd {
        let row = m.row(r);
        if row.and(&used).is_zero() {
            used.xor_assign(row);
            groups.push(row.support());
        }
    }
    groups
}

fn for_each_choice<S: Syndrome>(
    groups: &[&Vec<usize>],
    cols: &[S],
    acc: S,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&S, &[usize]),
) {
    match groups.split_first() {
        None => f(&acc, chosen),
        Some((g, rest)) => {
            for &j in g.iter() {
                chosen.push(j);
                for_each_choice(rest, cols, acc.xor(&cols[j]), chosen, f);
                chosen.pop();
            }
        }
    }
}

/// Meet-in-the-middle over "one column per group" choices; exact when the
/// number of disjoint odd groups equals k.
fn mitm_grouped<S: Syndrome>(
    groups: &[Vec<usize>],
    cols: &[S],
    target: &S,
    zero: &S,
    limits: &SolverLimits,
    work: &mut u64,
) -> Result<Option<Vec<usize>>> {
    // Greedy balance of the two product sizes.
    let mut order: Vec<&Vec<usize>> = groups.iter().collect();
    order.sort_by_key(|g| std::cmp::Reverse(g.len()));
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let (mut pl, mut pr) = (1u64, 1u64);
    for g in order {
        if pl <= pr {
            pl = pl.saturating_mul(g.len() as u64);
            left.push(g);
        } else {
            pr = pr.saturating_mul(g.len() as u64);
            right.push(g);
        }
    }
    if pl > pr {
        std::mem::swap(&mut left, &mut right);
        std::mem::swap(&mut pl, &mut pr);
    }
    if pl > limits.memory_cap {
        return Err(resource(format!(
            "meet-in-the-middle table needs {pl} entries, above the memory cap {}",
            limits.memory_cap
        )));
    }
    if pr > limits.enumeration_cap {
        return Err(resource(format!(
            "{pr} probes exceed the enumeration cap {}",
            limits.enumeration_cap
        )));
    }
    let width = left.len();
    let mut table: Vec<(S, u64)> = Vec::with_capacity(pl as usize);
    let mut chosen_cols: Vec<u32> = Vec::with_capacity(pl as usize * width);
    let mut id = 0u64;
    for_each_choice(&left, cols, zero.clone(), &mut Vec::new(), &mut |s, c| {
        table.push((s.clone(), id));
        chosen_cols.extend(c.iter().map(|&j| j as u32));
        id += 1;
    });
    table.sort_unstable();
    *work += pl;
    let mut best: Option<Vec<usize>> = None;
    for_each_choice(&right, cols, target.clone(), &mut Vec::new(), &mut |key, c| {
        *work += 1;
        let lo = table.partition_point(|(s, _)| s < key);
        for (s, id) in &table[lo..] {
            if s != key {
                break;
            }
            let start = *id as usize * width;
            let mut cand: Vec<usize> = chosen_cols[start..start + width]
                .iter()
                .map(|&j| j as usize)
                .chain(c.iter().copied())
                .collect();
            cand.sort_unstable();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    });
    Ok(best)
}

/// Meet-in-the-middle: tables of ⌈w/2⌉-column syndromes probed with the target plus
/// ⌊w/2⌋-column sums, for w = 1..=k.
///
/// When the target has k odd rows with pairwise disjoint column supports, every
/// solution of weight ≤ k takes exactly one column from each of those supports,
/// and the search runs over those choices instead.
pub fn solve_mitm(inst: &VectorSumInstance, limits: &SolverLimits) -> Result<SolveReport> {
    let mut work = 0;
    let k = inst.k;
    let support = with_syndrome!(inst.m.nrows(), S => {
        let cols: Vec<S> = column_syndromes(&inst.m);
        let target = S::from_bits(&inst.b);
        let zero = S::from_bits(&BitVec::zeros(inst.m.nrows()));
        if target.is_zero() {
            Some(Vec::new())
        } else {
            let groups = disjoint_odd_groups(&inst.m, &inst.b);
            if groups.iter().any(Vec::is_empty) || groups.len() > k {
                None
            } else if groups.len() == k {
                mitm_grouped(&groups, &cols, &target, &zero, limits, &mut work)?
            } else {
                mitm_plain(&cols, &target, &zero, k, limits, &mut work)?
            }
        }
    });
    finish(inst, Algorithm::Mitm, support, work)
}

/// Breadth-first search over the syndrome space F2^m from 0 towards b, then a
/// greedy walk back choosing the smallest column that stays on a shortest path.
pub fn solve_bfs(inst: &VectorSumInstance, limits: &SolverLimits) -> Result<SolveReport> {
    let rows = inst.m.nrows();
    if rows > 62 || (1u64 << rows) > limits.bfs_state_cap {
        return Err(resource(format!(
            "2^{rows} syndrome states exceed the BFS cap {}",
            limits.bfs_state_cap
        )));
    }
    let target = <u64 as Syndrome>::from_bits(&inst.b);
    if target == 0 {
        return finish(inst, Algorithm::Bfs, Some(Vec::new()), 0);
    }
    let cols: Vec<u64> = column_syndromes(&inst.m);
    const UNSEEN: u8 = u8::MAX;
    let max_depth = inst.k.min(usize::from(UNSEEN) - 1);
    let mut dist = vec![UNSEEN; 1usize << rows];
    dist[0] = 0;
    let mut frontier = vec![0u64];
    let mut work = 0u64;
    let mut depth = 0;
    while depth < max_depth && !frontier.is_empty() && dist[target as usize] == UNSEEN {
        let mut next = Vec::new();
        for &s in &frontier {
            for &c in &cols {
                let t = (s ^ c) as usize;
                if dist[t] == UNSEEN {
                    dist[t] = depth as u8 + 1;
                    next.push(t as u64);
                }
            }
        }
        work += (frontier.len() * cols.len()) as u64;
        frontier = next;
        depth += 1;
    }
    if dist[target as usize] == UNSEEN {
        return finish(inst, Algorithm::Bfs, None, work);
    }
    let mut parity = vec![false; cols.len()];
    let mut cur = target;
    let mut d = dist[cur as usize];
    while d > 0 {
        let j = (0..cols.len())
            .find(|&j| dist[(cur ^ cols[j]) as usize] == d - 1)
            .expect("a BFS predecessor exists");
        parity[j] ^= true;
        cur ^= cols[j];
        d -= 1;
    }
    let support = parity.iter().enumerate().filter(|(_, &p)| p).map(|(j, _)| j).collect();
    finish(inst, Algorithm::Bfs, Some(support), work)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(rows: &[&str], b: &str, k: usize) -> VectorSumInstance {
        let m = BitMat::from_rows(rows[0].len(), rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap();
        VectorSumInstance::new(m, b.parse().unwrap(), k).unwrap()
    }

    fn all(i: &VectorSumInstance) -> Vec<SolveReport> {
        let l = SolverLimits::default();
        vec![solve_exhaustive(i, &l).unwrap(), solve_mitm(i, &l).unwrap(), solve_bfs(i, &l).unwrap()]
    }

    #[test]
    fn identity_examples() {
        for r in all(&inst(&["10", "01"], "11", 2)) {
            assert!(r.feasible, "{r:?}");
            assert_eq!(r.witness.unwrap().to_string(), "11");
            assert_eq!(r.weight, Some(2));
        }
        for r in all(&inst(&["10", "01"], "11", 1)) {
            assert!(!r.feasible, "{r:?}");
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn zero_target_gives_zero_witness() {
        for r in all(&inst(&["100", "010"], "00", 2)) {
            assert!(r.feasible);
            assert_eq!(r.weight, Some(0));
        }
    }

    #[test]
    fn lexicographic_tie_break() {
        // Columns 0,1,2 are all e0+e1; columns 3,4 are e0 and e1.
        let i = inst(&["11110", "11101"], "11", 2);
        for r in all(&i) {
            assert_eq!(r.witness.unwrap().support(), vec![0], "{:?}", r.algorithm);
        }
        let i = inst(&["10011", "01011"], "11", 2);
        for r in all(&i) {
            assert_eq!(r.witness.unwrap().support(), vec![3], "{:?}", r.algorithm);
        }
    }

    #[test]
    fn grouped_path_matches_exhaustive() {
        // Rows 0 and 1 are disjoint odd groups; k = 2 triggers the grouped search.
        let i = inst(&["110000", "001100", "101010"], "110", 2);
        let r = all(&i);
        for x in &r {
            assert_eq!(x.witness.as_ref().unwrap().support(), vec![0, 2], "{:?}", x.algorithm);
        }
        // Three disjoint odd groups cannot be hit with two columns.
        let i = inst(&["110000", "001100", "000011"], "111", 2);
        for r in all(&i) {
            assert!(!r.feasible);
        }
    }

    #[test]
    fn wide_syndromes() {
        // 70 rows forces the u128 key path, 140 rows the vector path.
        for rows in [70usize, 140] {
            let m = BitMat::from_fn(rows, 6, |i, j| (i * 7 + j * 3) % 5 == 0);
            let x = BitVec::from_indices(6, [1, 4]);
            let b = m.mul_vec(&x).unwrap();
            let i = VectorSumInstance::new(m, b, 3).unwrap();
            let l = SolverLimits::default();
            let e = solve_exhaustive(&i, &l).unwrap();
            let mi = solve_mitm(&i, &l).unwrap();
            assert!(e.feasible);
            assert_eq!(e.witness, mi.witness);
            assert!(solve_bfs(&i, &l).is_err());
        }
    }

    #[test]
    fn caps_enforced() {
        let m = BitMat::identity(40);
        let i = VectorSumInstance::new(m, BitVec::ones(40), 20).unwrap();
        let tight = SolverLimits { enumeration_cap: 1000, memory_cap: 1000, bfs_state_cap: 1024, kernel_dim_cap: 24 };
        assert!(matches!(solve_exhaustive(&i, &tight), Err(Error::Resource(_))));
        assert!(matches!(solve_bfs(&i, &tight), Err(Error::Resource(_))));
    }
}
