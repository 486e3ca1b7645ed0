//! Simple undirected graphs, the brute-force clique oracle, random regular
//! graphs with a measured spectral certificate, and walk enumeration.

mod spectral;
mod walks;

use rand::seq::index::sample;
use rand::Rng as _;

use crate::error::{rejected, Error, Result};
use crate::f2::BitVec;
use crate::for_each_combination;

pub use spectral::{spectral_certificate, SpectralCert, SPECTRAL_TOLERANCE};
pub use walks::{count_walks, enumerate_walks, sample_walk, walk_avoidance_fraction};

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<BitVec>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(rejected(format!("edge ({u},{v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(rejected(format!("self-loop at vertex {u}")));
            }
            if g.adj[u].get(v) {
                return Err(rejected(format!("duplicate edge ({u},{v})")));
            }
            g.adj[u].set(v, true);
            g.adj[v].set(u, true);
        }
        g.rebuild_edges();
        Ok(g)
    }

    #[must_use]
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![BitVec::zeros(n); n],
            edges: Vec::new(),
        }
    }

    #[must_use]
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.adj[u].set(v, true);
                }
            }
        }
        g.rebuild_edges();
        g
    }

    /// Cycle 0–1–…–(n−1)–0; needs `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(rejected("a cycle needs at least 3 vertices"));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[must_use]
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
    }

    fn rebuild_edges(&mut self) {
        self.edges = (0..self.n)
            .flat_map(|u| self.adj[u].iter_ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect();
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[must_use]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    #[must_use]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[must_use]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].get(v)
    }

    #[must_use]
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.adj[v].support()
    }

    #[must_use]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].weight()
    }

    /// The common degree if the graph is regular.
    #[must_use]
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// True when the vertices are distinct and pairwise adjacent.
    #[must_use]
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            u < self.n && vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v))
        })
    }

    #[must_use]
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.adj[u].get(v) {
                    g.adj[u].set(v, true);
                }
            }
        }
        g.rebuild_edges();
        g
    }
}

/// Lexicographically first k-clique, by exhaustive search over all k-subsets.
pub fn find_clique(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    if k == 0 || k > g.n() {
        return Err(rejected(format!("clique size {k} outside 1..={}", g.n())));
    }
    let mut found = None;
    for_each_combination(g.n(), k, |s| {
        if g.is_clique(s) {
            found = Some(s.to_vec());
            false
        } else {
            true
        }
    });
    Ok(found)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(rejected(format!("edge probability {p} outside [0,1]")))
    }
}

/// Erdős–Rényi G(n, p).
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = crate::rng(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.adj[u].set(v, true);
                g.adj[v].set(u, true);
            }
        }
    }
    g.rebuild_edges();
    Ok(g)
}

/// G(n, p) with a random k-set forced to be a clique. Returns the sorted witness.
pub fn planted_clique(n: usize, k: usize, p: f64, seed: u64) -> Result<(Graph, Vec<usize>)> {
    if k > n {
        return Err(rejected(format!("cannot plant a {k}-clique in {n} vertices")));
    }
    let mut g = random_graph(n, p, seed)?;
    let mut rng = crate::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut witness = sample(&mut rng, n, k).into_vec();
    witness.sort_unstable();
    for (i, &u) in witness.iter().enumerate() {
        for &v in &witness[i + 1..] {
            g.adj[u].set(v, true);
            g.adj[v].set(u, true);
        }
    }
    g.rebuild_edges();
    Ok((g, witness))
}

const PAIRING_RESTARTS: usize = 1000;

/// Uniform-ish random simple D-regular graph (incremental pairing with restarts)
/// together with its spectral certificate.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<(Graph, SpectralCert)> {
    if degree >= n {
        return Err(rejected(format!("degree {degree} must be below n = {n}")));
    }
    if (n * degree) % 2 == 1 {
        return Err(rejected(format!("n·D = {} is odd; no {degree}-regular graph on {n} vertices", n * degree)));
    }
    let g = if 2 * degree > n - 1 {
        pairing(n, n - 1 - degree, seed)?.complement()
    } else {
        pairing(n, degree, seed)?
    };
    let cert = spectral_certificate(&g, seed)?;
    Ok((g, cert))
}

fn pairing(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    let mut rng = crate::rng(seed);
    'restart: for _ in 0..PAIRING_RESTARTS {
        let mut g = Graph::empty(n);
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
        while !points.is_empty() {
            let mut placed = false;
            for _ in 0..(50 * points.len()).max(100) {
                let i = rng.gen_range(0..points.len());
                let j = rng.gen_range(0..points.len());
                let (u, v) = (points[i], points[j]);
                if u != v && !g.adj[u].get(v) {
                    g.adj[u].set(v, true);
                    g.adj[v].set(u, true);
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    points.swap_remove(hi);
                    points.swap_remove(lo);
                    placed = true;
                    break;
                }
            }
            if !placed {
                let stuck = points.iter().enumerate().all(|(i, &u)| {
                    points[i + 1..].iter().all(|&v| u == v || g.adj[u].get(v))
                });
                if stuck {
                    continue 'restart;
                }
            }
        }
        g.rebuild_edges();
        return Ok(g);
    }
    Err(Error::Generation(format!(
        "pairing model for a {degree}-regular graph on {n} vertices failed {PAIRING_RESTARTS} times"
    )))
}

/// Resamples [`random_regular`] until `lambda + tolerance ≤ lambda_max`.
pub fn random_expander(
    n: usize,
    degree: usize,
    lambda_max: f64,
    seed: u64,
    max_tries: usize,
) -> Result<(Graph, SpectralCert)> {
    for attempt in 0..max_tries as u64 {
        let (g, cert) = random_regular(n, degree, seed.wrapping_add(attempt.wrapping_mul(0x5851_f42d_4c95_7f2d)))?;
        if cert.lambda + cert.tolerance <= lambda_max {
            return Ok((g, cert));
        }
    }
    Err(Error::Generation(format!(
        "no {degree}-regular graph on {n} vertices with lambda ≤ {lambda_max} in {max_tries} tries"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_examples() {
        assert_eq!(find_clique(&Graph::complete(3), 3).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(find_clique(&Graph::path(3), 3).unwrap(), None);
        assert!(find_clique(&Graph::path(3), 4).is_err());
        assert!(find_clique(&Graph::path(3), 0).is_err());
    }

    #[test]
    fn planted_witness_is_clique() {
        let (g, w) = planted_clique(8, 4, 0.2, 7).unwrap();
        assert_eq!(w.len(), 4);
        assert!(g.is_clique(&w));
        let c = find_clique(&g, 4).unwrap().unwrap();
        assert!(g.is_clique(&c));
    }

    #[test]
    fn extreme_probabilities() {
        assert_eq!(random_graph(5, 0.0, 1).unwrap().m(), 0);
        assert_eq!(random_graph(5, 1.0, 1).unwrap(), Graph::complete(5));
        assert!(random_graph(5, 1.5, 1).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert_eq!(Graph::new(3, [(2, 1), (0, 1)]).unwrap().edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn regular_generation() {
        let (g, cert) = random_regular(100, 8, 3).unwrap();
        assert_eq!(g.regular_degree(), Some(8));
        assert_eq!(cert.degree, 8);
        assert!(cert.lambda < 8.0);
        let (g2, cert2) = random_regular(100, 8, 3).unwrap();
        assert_eq!(g, g2);
        assert_eq!(cert, cert2);
        assert!(random_regular(5, 3, 0).is_err());
        assert!(random_regular(5, 5, 0).is_err());
    }

    #[test]
    fn dense_regular_via_complement() {
        let (g, cert) = random_regular(6, 5, 1).unwrap();
        assert_eq!(g, Graph::complete(6));
        assert!((cert.lambda - 1.0).abs() <= 1e-6);
        let (g, _) = random_regular(10, 7, 1).unwrap();
        assert_eq!(g.regular_degree(), Some(7));
    }
}
