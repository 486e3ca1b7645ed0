use nalgebra::DMatrix;
use proptest::prelude::*;
use sparsef2::graphs::{count_walks, enumerate_walks, find_clique, random_graph, random_regular, spectral_certificate, Graph};
use sparsef2::reductions::{PointValueSet, VectorSumInstance};
use sparsef2::solvers::{
    best_junta_agreement, best_parity_agreement, evenset_min_weight, poly_agreement_bound, solve_bfs,
    solve_exhaustive, solve_mitm, SolverLimits,
};
use sparsef2::{reductions::EvenSetInstance, BitMat, BitVec};

fn eigen_oracle(g: &Graph) -> (f64, f64) {
    let n = g.n();
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    // Drop the trivial eigenvalue D (connected graphs only in these tests).
    let rest = &ev[1..];
    let lambda = rest.iter().map(|x| x.abs()).fold(0.0, f64::max);
    (lambda, rest[0])
}

#[test]
fn spectral_certificate_matches_dense_eigensolver() {
    for (n, d, seed) in [(30, 4, 1), (40, 6, 2), (24, 3, 3), (50, 8, 4)] {
        let (g, cert) = random_regular(n, d, seed).unwrap();
        let (lambda, second) = eigen_oracle(&g);
        assert!((cert.lambda - lambda).abs() < 1e-4, "n={n}: {} vs {lambda}", cert.lambda);
        assert!((cert.second_eigenvalue - second).abs() < 1e-4, "n={n}: {} vs {second}", cert.second_eigenvalue);
        let again = spectral_certificate(&g, 99).unwrap();
        assert!((again.lambda - lambda).abs() < 1e-4);
    }
}

#[test]
fn walk_enumeration_counts() {
    let (g, _) = random_regular(12, 3, 5).unwrap();
    for t in 1..5 {
        let walks = enumerate_walks(&g, t, 1 << 20).unwrap();
        assert_eq!(walks.len() as u64, count_walks(12, 3, t));
        assert!(walks.windows(2).all(|w| w[0] < w[1]));
        assert!(walks.iter().all(|w| w.windows(2).all(|p| g.has_edge(p[0], p[1]))));
    }
}

fn brute_min(inst: &VectorSumInstance) -> Option<BitVec> {
    let n = inst.m.ncols();
    (0u64..1 << n)
        .map(|v| BitVec::from_u64(n, v))
        .filter(|x| x.weight() <= inst.k && inst.m.mul_vec(x).unwrap() == inst.b)
        .min_by(|a, b| a.witness_cmp(b))
}

fn instance() -> impl Strategy<Value = VectorSumInstance> {
    (1usize..8, 1usize..11, 1usize..5, any::<u64>(), any::<bool>()).prop_map(|(m, n, k, seed, plant)| {
        let mut rng = sparsef2::rng(seed);
        let mat = BitMat::from_fn(m, n, |_, _| rand::Rng::gen(&mut rng));
        let b = if plant {
            let x = BitVec::from_indices(n, (0..k.min(n)).map(|_| rand::Rng::gen_range(&mut rng, 0..n)));
            mat.mul_vec(&x).unwrap()
        } else {
            BitVec::from_bools(&(0..m).map(|_| rand::Rng::gen(&mut rng)).collect::<Vec<_>>())
        };
        VectorSumInstance::new(mat, b, k).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solvers_agree_with_brute_force(inst in instance()) {
        let lim = SolverLimits::default();
        let expect = brute_min(&inst);
        for report in [
            solve_exhaustive(&inst, &lim).unwrap(),
            solve_mitm(&inst, &lim).unwrap(),
            solve_bfs(&inst, &lim).unwrap(),
        ] {
            prop_assert_eq!(report.feasible, expect.is_some(), "{}", report.algorithm);
            prop_assert_eq!(report.witness.as_ref(), expect.as_ref(), "{}", report.algorithm);
            if let Some(w) = &report.witness {
                prop_assert_eq!(report.weight, Some(w.weight()));
            }
        }
    }

    #[test]
    fn evenset_min_matches_brute_force(
        (m, n, seed) in (1usize..7, 2usize..11, any::<u64>())
    ) {
        let mut rng = sparsef2::rng(seed);
        let mat = BitMat::from_fn(m, n, |_, _| rand::Rng::gen(&mut rng));
        let brute = (1u64..1 << n)
            .map(|v| BitVec::from_u64(n, v))
            .filter(|x| mat.mul_vec(x).unwrap().is_zero())
            .min_by(|a, b| a.witness_cmp(b));
        let e = EvenSetInstance::new(mat, 3).unwrap();
        let r = evenset_min_weight(&e, &SolverLimits::default()).unwrap();
        prop_assert_eq!(r.witness.clone(), brute.clone());
        prop_assert_eq!(r.feasible, brute.is_some_and(|w| w.weight() <= 3));
    }

    #[test]
    fn clique_finder_matches_brute_force((n, k, seed) in (3usize..9, 2usize..5, any::<u64>())) {
        prop_assume!(k <= n);
        let g = random_graph(n, 0.5, seed).unwrap();
        let brute = (0u64..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.iter().all(|&u| s.iter().all(|&v| u == v || g.has_edge(u, v))))
            .min();
        prop_assert_eq!(find_clique(&g, k).unwrap(), brute);
    }
}

fn random_pv(n: usize, m: usize, seed: u64) -> PointValueSet {
    let mut rng = sparsef2::rng(seed);
    let points = (0..m)
        .map(|_| BitVec::from_u64(n, rand::Rng::gen_range(&mut rng, 0..1u64 << n)))
        .collect();
    let values = BitVec::from_bools(&(0..m).map(|_| rand::Rng::gen(&mut rng)).collect::<Vec<_>>());
    PointValueSet::new(n, points, values, 2).unwrap()
}

#[test]
fn junta_agreement_matches_truth_table_enumeration() {
    for seed in 0..10 {
        let pv = random_pv(5, 30, seed);
        let best = best_junta_agreement(&pv, 2, u64::MAX).unwrap();
        // Every Boolean function of every pair of variables.
        let mut brute = 0usize;
        for i in 0..5 {
            for j in i + 1..5 {
                for f in 0u8..16 {
                    let hits = (0..pv.len())
                        .filter(|&p| {
                            let pat = usize::from(pv.points[p].get(i)) | usize::from(pv.points[p].get(j)) << 1;
                            (f >> pat & 1 == 1) == pv.values.get(p)
                        })
                        .count();
                    brute = brute.max(hits);
                }
            }
        }
        assert_eq!(best.fraction, brute as f64 / 30.0);
        let (_, parity) = best_parity_agreement(&pv, 2, false, u64::MAX).unwrap();
        assert!(best.fraction >= parity);
    }
}

#[test]
fn poly_advantage_matches_direct_evaluation() {
    for seed in 0..4 {
        let pv = random_pv(4, 25, 50 + seed);
        let adv = poly_agreement_bound(&pv.points, 3, 2, u64::MAX).unwrap();
        // Recompute the reported polynomial's advantage from scratch.
        let zeros = pv.points.iter().filter(|z| !adv.poly.eval(z)).count() as f64 / 25.0;
        let uniform = (0u64..16).filter(|&v| !adv.poly.eval(&BitVec::from_u64(4, v))).count() as f64 / 16.0;
        assert!((zeros - uniform - adv.advantage).abs() < 1e-12);
        assert!(adv.poly.degree() <= 2);
        // No polynomial of degree ≤ 2 on ≤ 3 variables does better.
        let monos: Vec<Vec<usize>> = {
            let mut v = vec![vec![]];
            for a in 0..3 {
                v.push(vec![a]);
                for b in a + 1..3 {
                    v.push(vec![a, b]);
                }
            }
            v
        };
        for sup in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            for mask in 1u32..1 << monos.len() {
                let poly = sparsef2::solvers::Polynomial {
                    monomials: (0..monos.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| monos[i].iter().map(|&l| sup[l]).collect())
                        .collect(),
                };
                let z = pv.points.iter().filter(|p| !poly.eval(p)).count() as f64 / 25.0;
                let u = (0u64..16).filter(|&v| !poly.eval(&BitVec::from_u64(4, v))).count() as f64 / 16.0;
                assert!(z - u <= adv.advantage + 1e-12);
            }
        }
    }
}
