use rand::Rng as _;

use super::Graph;
use crate::error::{rejected, resource, Result};

/// Number of t-vertex walks in a D-regular graph on n vertices: n·D^(t−1), saturating.
#[must_use]
pub fn count_walks(n: usize, degree: usize, t: usize) -> u64 {
    if t == 0 {
        return 0;
    }
    (1..t).fold(n as u64, |acc, _| acc.saturating_mul(degree as u64))
}

/// All walks `[i_1, …, i_t]` (t vertices, t−1 steps) in lexicographic order.
pub fn enumerate_walks(g: &Graph, t: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| rejected("walk enumeration needs a regular graph"))?;
    if t == 0 {
        return Err(rejected("walk length must be at least 1"));
    }
    let count = count_walks(g.n(), degree, t);
    if count > cap {
        return Err(resource(format!(
            "{count} walks of length {t} exceed the enumeration cap {cap}; use sampling mode"
        )));
    }
    let nbrs: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v)).collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut walk = Vec::with_capacity(t);
    for start in 0..g.n() {
        walk.push(start);
        extend(&nbrs, t, &mut walk, &mut out);
        walk.pop();
    }
    Ok(out)
}

fn extend(nbrs: &[Vec<usize>], t: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if walk.len() == t {
        out.push(walk.clone());
        return;
    }
    let last = *walk.last().expect("walk is nonempty");
    for &v in &nbrs[last] {
        walk.push(v);
        extend(nbrs, t, walk, out);
        walk.pop();
    }
}

/// One uniformly random t-vertex walk from a uniformly random start.
pub fn sample_walk(nbrs: &[Vec<usize>], t: usize, rng: &mut crate::Rng) -> Vec<usize> {
    let mut v = rng.gen_range(0..nbrs.len());
    let mut walk = Vec::with_capacity(t);
    walk.push(v);
    for _ in 1..t {
        let ns = &nbrs[v];
        v = ns[rng.gen_range(0..ns.len())];
        walk.push(v);
    }
    walk
}

/// Fraction of `samples` random t-vertex walks that never visit a marked vertex.
pub fn walk_avoidance_fraction(
    g: &Graph,
    marked: &[bool],
    t: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if marked.len() != g.n() {
        return Err(rejected("marked set must have one flag per vertex"));
    }
    if g.n() == 0 || t == 0 || samples == 0 {
        return Err(rejected("need a nonempty graph, t ≥ 1 and at least one sample"));
    }
    let nbrs: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v)).collect();
    if nbrs.iter().any(Vec::is_empty) {
        return Err(rejected("walk sampling needs every vertex to have a neighbour"));
    }
    let mut rng = crate::rng(seed);
    let avoiding = (0..samples)
        .filter(|_| sample_walk(&nbrs, t, &mut rng).iter().all(|&v| !marked[v]))
        .count();
    Ok(avoiding as f64 / samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(enumerate_walks(&k4, 1, 1000).unwrap().len(), 4);
        assert_eq!(enumerate_walks(&k4, 2, 1000).unwrap().len(), 12);
        let c4 = Graph::cycle(4).unwrap();
        let walks = enumerate_walks(&c4, 3, 1000).unwrap();
        assert_eq!(walks.len(), 16);
        for w in &walks {
            assert!(w.windows(2).all(|p| c4.has_edge(p[0], p[1])));
        }
        assert!(matches!(enumerate_walks(&k4, 3, 10), Err(crate::Error::Resource(_))));
        assert!(enumerate_walks(&Graph::path(3), 2, 100).is_err());
    }

    #[test]
    fn avoidance_extremes() {
        let g = Graph::cycle(6).unwrap();
        assert_eq!(walk_avoidance_fraction(&g, &[false; 6], 4, 100, 1).unwrap(), 1.0);
        assert_eq!(walk_avoidance_fraction(&g, &[true; 6], 4, 100, 1).unwrap(), 0.0);
    }
}
