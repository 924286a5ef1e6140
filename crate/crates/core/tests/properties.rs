use bellbound::bell::{Assemblage, BellFunctional, OutcomeSet, Povm};
use bellbound::linalg::{gaussian_hermitian, hermitian_eigen, max_abs};
use bellbound::qstate::PureState;
use bellbound::{
    bell_value, build_source_1xs, build_source_sx1, corollary1_bound, lhv_extrema, quantum_band,
    quantum_probabilities, reduced_state, schmidt_decompose, schmidt_sum_squared, theorem3_bound,
    trace_norm, verify_dilation, Site,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_povm(d: usize, outcomes: usize, rng: &mut ChaCha8Rng) -> Povm<f64> {
    // rank-one projectors of a random eigenbasis, grouped into `outcomes` bins
    let (_, basis) = hermitian_eigen(&gaussian_hermitian::<f64, _>(d, rng));
    let mut elems = vec![bellbound::CMatrix::zeros(d, d); outcomes];
    for k in 0..d {
        let v = basis.column(k).into_owned();
        elems[rng.random_range(0..outcomes)] += &v * v.adjoint();
    }
    Povm::new(elems).unwrap()
}

fn random_assemblage(
    d1: usize,
    d2: usize,
    f: &BellFunctional<f64>,
    rng: &mut ChaCha8Rng,
) -> Assemblage<f64> {
    let s1 = (0..f.s1()).map(|_| random_povm(d1, f.m1(), rng)).collect();
    let s2 = (0..f.s2()).map(|_| random_povm(d2, f.m2(), rng)).collect();
    Assemblage::new(s1, s2).unwrap()
}

fn random_functional(
    s1: usize,
    s2: usize,
    m1: usize,
    m2: usize,
    rng: &mut ChaCha8Rng,
) -> BellFunctional<f64> {
    let o1 = OutcomeSet::new((0..m1).map(|v| v as f64).collect()).unwrap();
    let o2 = OutcomeSet::new((0..m2).map(|v| v as f64).collect()).unwrap();
    let phi = (0..s1 * s2 * m1 * m2)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    BellFunctional::new(s1, s2, o1, o2, phi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn schmidt_reconstructs_state(seed in any::<u64>(), d1 in 1usize..6, d2 in 1usize..6) {
        let st = PureState::<f64>::random(d1, d2, &mut ChaCha8Rng::seed_from_u64(seed));
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        prop_assert!(max_abs(&(sd.reconstruct() - st.amplitudes())) < 1e-10);
        let s2 = schmidt_sum_squared(&sd);
        prop_assert!(s2 >= 1.0 - 1e-12 && s2 <= sd.rank() as f64 + 1e-12);
        prop_assert!(sd.coefficients().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn reduced_spectra_match_schmidt_weights(seed in any::<u64>(), d1 in 1usize..5, d2 in 1usize..5) {
        let st = PureState::<f64>::random(d1, d2, &mut ChaCha8Rng::seed_from_u64(seed));
        let lambdas = schmidt_decompose(&st, 1e-12).unwrap().lambdas();
        for site in [Site::First, Site::Second] {
            let ev = reduced_state(&st, site).unwrap().eigenvalues();
            for (k, e) in ev.iter().enumerate() {
                let want = lambdas.get(k).copied().unwrap_or(0.0);
                prop_assert!((e - want).abs() < 1e-10, "site {:?}: {} vs {}", site, e, want);
            }
        }
    }

    #[test]
    fn source_trace_norm_below_schmidt_bound(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..4, s in 1usize..4, first in any::<bool>()) {
        let st = PureState::<f64>::random(d1, d2, &mut ChaCha8Rng::seed_from_u64(seed));
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        let op = if first { build_source_1xs(&sd, s) } else { build_source_sx1(&sd, s) }.unwrap();
        let tn = trace_norm(op.matrix()).unwrap();
        prop_assert!(tn <= corollary1_bound(&sd) + 1e-9, "{} > {}", tn, corollary1_bound(&sd));
        prop_assert!(tn >= 1.0 - 1e-9);
    }

    #[test]
    fn source_operator_dilates_state(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..4, s in 1usize..4) {
        let st = PureState::<f64>::random(d1, d2, &mut ChaCha8Rng::seed_from_u64(seed));
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        for op in [build_source_1xs(&sd, s).unwrap(), build_source_sx1(&sd, s).unwrap()] {
            let r = verify_dilation(&op, &st, 5, seed ^ 0x5eed).unwrap();
            prop_assert!(r < 1e-9, "residual {}", r);
        }
    }

    #[test]
    fn probabilities_are_no_signalling(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..4, m in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = PureState::<f64>::random(d1, d2, &mut rng);
        let f = random_functional(2, 2, m, m, &mut rng);
        let asm = random_assemblage(d1, d2, &f, &mut rng);
        let tables: Vec<Vec<_>> = (0..2)
            .map(|x| (0..2).map(|y| quantum_probabilities(&st, &asm, x, y).unwrap()).collect())
            .collect();
        for row in &tables {
            for p in row {
                prop_assert!(p.iter().all(|&v| v >= -1e-12));
                prop_assert!((p.sum() - 1.0).abs() < 1e-9);
            }
        }
        for row in &tables {
            let (a, b) = (&row[0], &row[1]);
            for i in 0..m {
                prop_assert!((a.row(i).sum() - b.row(i).sum()).abs() < 1e-9);
            }
        }
        for (a, b) in tables[0].iter().zip(&tables[1]) {
            for j in 0..m {
                prop_assert!((a.column(j).sum() - b.column(j).sum()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn bell_values_stay_in_band(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..4, s1 in 1usize..4, s2 in 1usize..4, m1 in 2usize..4, m2 in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = PureState::<f64>::random(d1, d2, &mut rng);
        let f = random_functional(s1, s2, m1, m2, &mut rng);
        let asm = random_assemblage(d1, d2, &f, &mut rng);
        let lhv = lhv_extrema(&f).unwrap();
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        let band = quantum_band(lhv.b_sup, lhv.b_inf, theorem3_bound(&sd, s1, s2)).unwrap();
        let v = bell_value(&f, &st, &asm).unwrap();
        prop_assert!(band.contains(v, 1e-9), "{} outside [{}, {}]", v, band.lower, band.upper);
    }
}

#[test]
fn single_precision_pipeline() {
    let st = PureState::<f32>::random(3, 2, &mut ChaCha8Rng::seed_from_u64(8));
    let sd = schmidt_decompose(&st, 1e-6).unwrap();
    assert!(max_abs(&(sd.reconstruct() - st.amplitudes())) < 1e-5);
    let op = build_source_1xs(&sd, 2).unwrap();
    assert!(trace_norm(op.matrix()).unwrap() <= corollary1_bound(&sd) + 1e-4);
    assert!(verify_dilation(&op, &st, 5, 1).unwrap() < 1e-4);
}
