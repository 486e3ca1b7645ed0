use std::collections::HashSet;

use super::VectorSumInstance;
use crate::error::{rejected, Error, Result};
use crate::f2::{BitMat, BitVec};
use crate::graphs::Graph;
use crate::{binomial, bits_for};

/// Coordinate and column bookkeeping of the clique gadget.
///
/// Coordinates: the incidence block (slot j, subslot l, pattern bit) in
/// slot-major order, then one indicator per slot pair (j1, j2) in lexicographic
/// order, then one indicator per slot. Columns: the vertex columns η(v, j) at
/// `v·k + j`, then the edge columns η(e, j1, j2) at `n·k + e·C(k,2) + pair(j1, j2)`.
/// All indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueGadgetLayout {
    pub k: usize,
    pub n: usize,
    /// Edges (u, v), u < v, in lexicographic order; edge e is `edges[e]`.
    pub edges: Vec<(usize, usize)>,
    /// N = ⌈log2(n+1)⌉, the pattern width.
    pub pattern_bits: usize,
    /// q_v: the N-bit binary encoding of v + 1.
    pub patterns: Vec<BitVec>,
}

/// What a column of the gadget matrix represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetColumn {
    Vertex { v: usize, slot: usize },
    Edge { e: usize, j1: usize, j2: usize },
}

impl CliqueGadgetLayout {
    fn new(g: &Graph, k: usize) -> Self {
        let n = g.n();
        let pattern_bits = bits_for(n);
        Self {
            k,
            n,
            edges: g.edges().to_vec(),
            pattern_bits,
            patterns: (0..n).map(|v| BitVec::from_u64(pattern_bits, v as u64 + 1)).collect(),
        }
    }

    #[must_use]
    pub fn pairs(&self) -> usize {
        binomial(self.k, 2) as usize
    }

    fn incidence_len(&self) -> usize {
        self.k * (self.k - 1) * self.pattern_bits
    }

    /// d = k(k−1)N + C(k,2) + k.
    #[must_use]
    pub fn rows(&self) -> usize {
        self.incidence_len() + self.pairs() + self.k
    }

    /// n·k + m·C(k,2).
    #[must_use]
    pub fn cols(&self) -> usize {
        self.n * self.k + self.edges.len() * self.pairs()
    }

    /// Target sparsity k + C(k,2).
    #[must_use]
    pub fn sparsity(&self) -> usize {
        self.k + self.pairs()
    }

    /// Index of the slot pair (j1, j2), j1 < j2, in lexicographic order.
    #[must_use]
    pub fn pair_index(&self, j1: usize, j2: usize) -> usize {
        debug_assert!(j1 < j2 && j2 < self.k);
        (0..j1).map(|a| self.k - 1 - a).sum::<usize>() + (j2 - j1 - 1)
    }

    /// Subslot of slot `j` reserved for the partner slot `partner`.
    #[must_use]
    pub fn subslot(&self, j: usize, partner: usize) -> usize {
        debug_assert!(j != partner);
        if partner < j {
            partner
        } else {
            partner - 1
        }
    }

    /// First coordinate of subslot S^j_l.
    #[must_use]
    pub fn subslot_coord(&self, j: usize, l: usize) -> usize {
        (j * (self.k - 1) + l) * self.pattern_bits
    }

    /// Coordinate δ_{j1,j2}.
    #[must_use]
    pub fn edge_indicator(&self, j1: usize, j2: usize) -> usize {
        self.incidence_len() + self.pair_index(j1, j2)
    }

    /// Coordinate δ_j.
    #[must_use]
    pub fn vertex_indicator(&self, j: usize) -> usize {
        self.incidence_len() + self.pairs() + j
    }

    #[must_use]
    pub fn vertex_col(&self, v: usize, slot: usize) -> usize {
        v * self.k + slot
    }

    #[must_use]
    pub fn edge_col(&self, e: usize, j1: usize, j2: usize) -> usize {
        self.n * self.k + e * self.pairs() + self.pair_index(j1, j2)
    }

    /// Slot pairs in lexicographic order.
    #[must_use]
    pub fn slot_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.k)
            .flat_map(|a| (a + 1..self.k).map(move |b| (a, b)))
            .collect()
    }

    #[must_use]
    pub fn decode_col(&self, c: usize) -> GadgetColumn {
        if c < self.n * self.k {
            GadgetColumn::Vertex {
                v: c / self.k,
                slot: c % self.k,
            }
        } else {
            let r = c - self.n * self.k;
            let (j1, j2) = self.slot_pairs()[r % self.pairs()];
            GadgetColumn::Edge {
                e: r / self.pairs(),
                j1,
                j2,
            }
        }
    }

    fn write_pattern(&self, col: &mut BitVec, v: usize, j: usize, l: usize) {
        let base = self.subslot_coord(j, l);
        for b in self.patterns[v].iter_ones() {
            col.flip(base + b);
        }
    }

    /// η(v, j): q_v in every subslot of slot j plus δ_j.
    #[must_use]
    pub fn vertex_vector(&self, v: usize, j: usize) -> BitVec {
        let mut col = BitVec::zeros(self.rows());
        for l in 0..self.k - 1 {
            self.write_pattern(&mut col, v, j, l);
        }
        col.set(self.vertex_indicator(j), true);
        col
    }

    /// η(e, j1, j2) for e = (u, v), u < v: q_u in S^{j1} at the subslot for j2,
    /// q_v in S^{j2} at the subslot for j1, plus δ_{j1,j2}.
    #[must_use]
    pub fn edge_vector(&self, e: usize, j1: usize, j2: usize) -> BitVec {
        let (u, v) = self.edges[e];
        let mut col = BitVec::zeros(self.rows());
        self.write_pattern(&mut col, u, j1, self.subslot(j1, j2));
        self.write_pattern(&mut col, v, j2, self.subslot(j2, j1));
        col.set(self.edge_indicator(j1, j2), true);
        col
    }

    /// The target b: ones on every indicator coordinate.
    #[must_use]
    pub fn target(&self) -> BitVec {
        BitVec::from_indices(self.rows(), self.incidence_len()..self.rows())
    }
}

/// Reduces k-Clique on `g` to k-VectorSum with sparsity k + C(k,2).
pub fn clique_to_vectorsum(g: &Graph, k: usize) -> Result<(VectorSumInstance, CliqueGadgetLayout)> {
    if k < 2 {
        return Err(rejected(format!("clique gadget needs k ≥ 2, got {k}")));
    }
    if k > g.n() {
        return Err(rejected(format!("k = {k} exceeds n = {}", g.n())));
    }
    let layout = CliqueGadgetLayout::new(g, k);
    let mut columns = Vec::with_capacity(layout.cols());
    for v in 0..layout.n {
        for j in 0..k {
            columns.push(layout.vertex_vector(v, j));
        }
    }
    for e in 0..layout.edges.len() {
        for (j1, j2) in layout.slot_pairs() {
            columns.push(layout.edge_vector(e, j1, j2));
        }
    }
    let m = BitMat::from_columns(layout.rows(), &columns)?;
    let mut inst = VectorSumInstance::new(m, layout.target(), layout.sparsity())?;
    inst.provenance.push(format!(
        "clique2vs n={} m={} k={} N={}",
        layout.n,
        layout.edges.len(),
        k,
        layout.pattern_bits
    ));
    Ok((inst, layout))
}

/// The YES-case solution for a k-clique: the clique's vertices in increasing order
/// fill slots 0..k, plus the edge column for every slot pair.
pub fn assemble_clique_solution(layout: &CliqueGadgetLayout, clique: &[usize]) -> Result<BitVec> {
    let mut vs = clique.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != layout.k || vs.iter().any(|&v| v >= layout.n) {
        return Err(Error::Witness(format!(
            "expected {} distinct vertices below {}",
            layout.k, layout.n
        )));
    }
    let mut x = BitVec::zeros(layout.cols());
    for (j, &v) in vs.iter().enumerate() {
        x.set(layout.vertex_col(v, j), true);
    }
    for (j1, j2) in layout.slot_pairs() {
        let e = layout
            .edges
            .binary_search(&(vs[j1], vs[j2]))
            .map_err(|_| Error::Witness(format!("{} and {} are not adjacent", vs[j1], vs[j2])))?;
        x.set(layout.edge_col(e, j1, j2), true);
    }
    Ok(x)
}

/// Reads the clique off a solution: exactly one vertex column per slot.
pub fn extract_clique(layout: &CliqueGadgetLayout, inst: &VectorSumInstance, x: &BitVec) -> Result<Vec<usize>> {
    inst.verify(x)?;
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); layout.k];
    for c in x.iter_ones() {
        if let GadgetColumn::Vertex { v, slot } = layout.decode_col(c) {
            slots[slot].push(v);
        }
    }
    if let Some((j, s)) = slots.iter().enumerate().find(|(_, s)| s.len() != 1) {
        return Err(Error::Witness(format!(
            "slot {j} holds {} vertex columns instead of one",
            s.len()
        )));
    }
    let mut vs: Vec<usize> = slots.into_iter().map(|s| s[0]).collect();
    vs.sort_unstable();
    let edges: HashSet<(usize, usize)> = layout.edges.iter().copied().collect();
    let is_clique = vs.windows(2).all(|w| w[0] != w[1])
        && vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| edges.contains(&(u, v))));
    if !is_clique {
        return Err(Error::Witness(format!("vertices {vs:?} do not form a clique")));
    }
    Ok(vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{solve_exhaustive, SolverLimits};

    #[test]
    fn triangle_dimensions() {
        let (inst, layout) = clique_to_vectorsum(&Graph::complete(3), 3).unwrap();
        assert_eq!(layout.pattern_bits, 2);
        assert_eq!((inst.m.nrows(), inst.m.ncols()), (18, 18));
        assert_eq!(inst.k, 6);
        let r = solve_exhaustive(&inst, &SolverLimits::default()).unwrap();
        assert_eq!(r.weight, Some(6));
        let x = assemble_clique_solution(&layout, &[0, 1, 2]).unwrap();
        inst.verify(&x).unwrap();
        assert_eq!(extract_clique(&layout, &inst, &x).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn path_has_no_solution() {
        let (inst, layout) = clique_to_vectorsum(&Graph::path(3), 3).unwrap();
        assert_eq!(layout.cols(), 9 + 2 * 3);
        let r = solve_exhaustive(&inst, &SolverLimits::default()).unwrap();
        assert!(!r.feasible);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let (inst, layout) = clique_to_vectorsum(&g, 2).unwrap();
        assert_eq!(inst.m.nrows(), 7);
        let x = assemble_clique_solution(&layout, &[1, 0]).unwrap();
        assert_eq!(x.weight(), 3);
        inst.verify(&x).unwrap();
        let r = solve_exhaustive(&inst, &SolverLimits::default()).unwrap();
        assert_eq!(r.witness, Some(x));
    }

    #[test]
    fn malformed_solutions_rejected() {
        let (inst, layout) = clique_to_vectorsum(&Graph::complete(4), 3).unwrap();
        let mut x = assemble_clique_solution(&layout, &[0, 1, 3]).unwrap();
        x.set(layout.vertex_col(2, 0), true);
        assert!(matches!(extract_clique(&layout, &inst, &x), Err(Error::Witness(_))));
        assert!(assemble_clique_solution(&layout, &[0, 1]).is_err());
        let (_, path_layout) = clique_to_vectorsum(&Graph::path(3), 3).unwrap();
        assert!(assemble_clique_solution(&path_layout, &[0, 1, 2]).is_err());
    }

    #[test]
    fn column_maps_roundtrip() {
        let (_, layout) = clique_to_vectorsum(&Graph::complete(5), 4).unwrap();
        for c in 0..layout.cols() {
            let back = match layout.decode_col(c) {
                GadgetColumn::Vertex { v, slot } => layout.vertex_col(v, slot),
                GadgetColumn::Edge { e, j1, j2 } => layout.edge_col(e, j1, j2),
            };
            assert_eq!(back, c);
        }
        assert!(clique_to_vectorsum(&Graph::complete(3), 4).is_err());
        assert!(clique_to_vectorsum(&Graph::complete(3), 1).is_err());
    }
}
