use proptest::prelude::*;
use rand::Rng;
use sparsef2::codes::{balanced_code, distribution_bias, BalancedConfig, LinearCode, BIAS_ENUM_CAP};
use sparsef2::graphs::{find_clique, planted_clique, random_graph};
use sparsef2::reductions::{
    amplify_pointvalues, assemble_clique_solution, assemble_evenset_witness, clique_to_vectorsum, extract_clique,
    mdc_tensor, mdc_to_learning, vectorsum_to_evenset, vectorsum_to_pointvalues, viola_shift, EvenSetConfig,
    ShiftMode, VectorSumInstance,
};
use sparsef2::solvers::{parity_agreements, poly_agreement_bound, solve_exhaustive, solve_mitm, SolverLimits};
use sparsef2::{BitMat, BitVec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn clique_equivalence((n, k, p, seed) in (4usize..8, 2usize..4, prop::sample::select(vec![0.3, 0.5, 0.8]), any::<u64>())) {
        let g = random_graph(n, p, seed).unwrap();
        let (inst, layout) = clique_to_vectorsum(&g, k).unwrap();
        prop_assert_eq!(inst.k, k + k * (k - 1) / 2);
        let clique = find_clique(&g, k).unwrap();
        let report = solve_mitm(&inst, &SolverLimits::default()).unwrap();
        prop_assert_eq!(report.feasible, clique.is_some());
        if let Some(x) = report.witness {
            let c = extract_clique(&layout, &inst, &x).unwrap();
            prop_assert!(g.is_clique(&c));
            prop_assert_eq!(c.len(), k);
        }
        if let Some(c) = clique {
            let x = assemble_clique_solution(&layout, &c).unwrap();
            prop_assert_eq!(x.weight(), inst.k);
            inst.verify(&x).unwrap();
        }
    }
}

#[test]
fn planted_cliques_round_trip() {
    for seed in 0..10 {
        let (g, planted) = planted_clique(9, 3, 0.3, seed).unwrap();
        let (inst, layout) = clique_to_vectorsum(&g, 3).unwrap();
        let x = assemble_clique_solution(&layout, &planted).unwrap();
        assert_eq!(extract_clique(&layout, &inst, &x).unwrap(), planted);
        let r = solve_exhaustive(&inst, &SolverLimits::default()).unwrap();
        assert_eq!(r.weight, Some(6));
    }
}

fn desk_cfg(seed: u64) -> EvenSetConfig {
    EvenSetConfig {
        eps: 0.2,
        sketch_rows: Some(4),
        big_k: Some(6),
        r: Some(3),
        seed,
        ..EvenSetConfig::default()
    }
}

#[test]
fn evenset_completeness_on_random_yes_sources() {
    let mut rng = sparsef2::rng(17);
    for trial in 0..20 {
        let (rows, n) = (3, 3);
        let m = BitMat::from_fn(rows, n, |_, _| rng.gen());
        let x = BitVec::unit(n, rng.gen_range(0..n));
        let b = m.mul_vec(&x).unwrap();
        let src = VectorSumInstance::new(m, b, 1).unwrap();
        let (es, layout) = vectorsum_to_evenset(&src, &desk_cfg(trial)).unwrap();
        let w = assemble_evenset_witness(&es, &x).unwrap();
        assert!(es.m.mul_vec(&w).unwrap().is_zero());
        assert_eq!(w.weight(), layout.target_weight());
        assert_eq!(layout.z_weight(&w), 36);
        assert_eq!(layout.x_part(&w), x);
    }
}

#[test]
fn evenset_a0_forces_a_z_entry_per_cell() {
    let m = BitMat::from_rows(3, vec!["110".parse().unwrap(), "011".parse().unwrap()]).unwrap();
    let src = VectorSumInstance::new(m, "01".parse().unwrap(), 1).unwrap();
    let (es, layout) = vectorsum_to_evenset(&src, &desk_cfg(3)).unwrap();
    let basis = es.m.nullspace_basis();
    let mut rng = sparsef2::rng(5);
    let mut seen_a0 = 0;
    for _ in 0..5000 {
        let mut v = BitVec::zeros(es.m.ncols());
        for b in &basis {
            if rng.gen() {
                v.xor_assign(b);
            }
        }
        if v.get(layout.var_a0()) {
            seen_a0 += 1;
            assert!(layout.z_weight(&v) >= 36);
        }
    }
    assert!(seen_a0 > 0);
}

fn planted_pv(seed: u64) -> (sparsef2::reductions::PointValueSet, BitVec) {
    let mut rng = sparsef2::rng(seed);
    let m = BitMat::from_fn(10, 8, |_, _| rng.gen());
    let form = BitVec::from_indices(8, [rng.gen_range(0..4), 4 + rng.gen_range(0..4)]);
    let b = m.mul_vec(&form).unwrap();
    let inst = VectorSumInstance::new(m, b, 2).unwrap();
    (vectorsum_to_pointvalues(&inst).unwrap(), form)
}

#[test]
fn amplification_preserves_and_balances() {
    for seed in 0..5 {
        let (pv, form) = planted_pv(seed);
        let out = amplify_pointvalues(&pv, 0.1, seed, &BalancedConfig::default()).unwrap();
        assert_eq!(out.agreement(&form).unwrap(), 1.0);
        for (f, a) in parity_agreements(&out, 2, true, u64::MAX).unwrap() {
            let v = BitVec::from_indices(8, f.support.iter().copied());
            if pv.agreement(&v).unwrap() < 1.0 {
                assert!((0.4..=0.6).contains(&a), "{f}: {a}");
            } else {
                assert_eq!(a, 1.0);
            }
        }
    }
}

#[test]
fn viola_shift_bias_contract() {
    let code = balanced_code(5, 0.05, 2, &BalancedConfig::default()).unwrap();
    let points: Vec<BitVec> = code.generator().rows().to_vec();
    let eps = distribution_bias(&points, 3, BIAS_ENUM_CAP).unwrap().bias;
    assert!(eps <= 0.1);
    let shifted = viola_shift(&points, 2, ShiftMode::All { cap: 1 << 24 }).unwrap();
    assert_eq!(shifted.len(), points.len() * points.len());
    let adv = poly_agreement_bound(&shifted, 3, 2, u64::MAX).unwrap();
    assert!(adv.advantage <= 16.0 * eps.sqrt());
}

#[test]
fn tensor_min_weight_multiplies() {
    let mut rng = sparsef2::rng(8);
    for _ in 0..4 {
        let g = loop {
            let g = BitMat::from_fn(5, 2, |_, _| rng.gen());
            if LinearCode::from_generator(g.clone()).is_ok() {
                break g;
            }
        };
        let weights = |m: &BitMat| -> Vec<usize> {
            (1u64..1 << m.ncols())
                .map(|v| m.mul_vec(&BitVec::from_u64(m.ncols(), v)).unwrap().weight())
                .collect()
        };
        let t = mdc_tensor(&g, 2, 1 << 10).unwrap();
        let (wa, wt) = (weights(&g), weights(&t));
        let min_a = *wa.iter().min().unwrap();
        assert_eq!(*wt.iter().min().unwrap(), min_a * min_a);
        // Rank-one messages u⊗v give weight wt(Gu)·wt(Gv), so the top weight squares too.
        let max_a = *wa.iter().max().unwrap();
        assert!(*wt.iter().max().unwrap() >= max_a * max_a);
    }
}

#[test]
fn mdc_learning_yes_case_fraction() {
    // z = (1, z'), and B·z is zero except on a few rows.
    let mut rng = sparsef2::rng(21);
    let n = 7;
    let z = BitVec::from_indices(n, [0, 2, 5]);
    let mut rows = Vec::new();
    while rows.len() < 12 {
        let r = BitVec::from_u64(n, rng.gen_range(0..1u64 << n));
        if !r.dot(&z) {
            rows.push(r);
        }
    }
    rows.push(BitVec::unit(n, 0));
    let b = BitMat::from_rows(n, rows).unwrap();
    let failing = 1.0 / 13.0;
    let d = 2;
    let pv = mdc_to_learning(&b, d, 1 << 20).unwrap();
    let form = z.slice(1, n - 1);
    assert!(pv.agreement(&form).unwrap() >= 1.0 - d as f64 * failing);
}
