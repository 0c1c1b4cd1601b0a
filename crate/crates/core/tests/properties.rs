use decoherence::cats::{cat_dephase, fringe_visibility, CatSector};
use decoherence::damping::gaussian_damping;
use decoherence::localization::{decoherence_factor, localization_rate, LocalizationRate, ScatteringEnvironment};
use decoherence::quantum::{
    coherence_norm, dephase_blocks, entanglement_entropy, min_eigenvalue, numeric_labels, partial_trace, random,
    schmidt_decompose, BipartiteState, DensityMatrix, StateVector, Subsystem,
};
use decoherence::zeno::{
    apply_measurement, local_density_matrix, zeno_survival, MeasurementInteraction, Operator, OverlapMatrix,
};
use decoherence::C64;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schmidt_reconstructs_the_state(seed in any::<u64>(), da in 1usize..=8, db in 1usize..=8) {
        let psi = random::bipartite_state(&mut rng(seed), da, db);
        let sd = schmidt_decompose(&psi).unwrap();
        prop_assert!((sd.reconstruct() - psi.coefficients()).camax() < 1e-10);
        prop_assert!((sd.weights.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(sd.weights.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn entropy_is_symmetric_under_swap(seed in any::<u64>(), da in 1usize..=6, db in 1usize..=6) {
        let psi = random::bipartite_state(&mut rng(seed), da, db);
        let a = entanglement_entropy(&schmidt_decompose(&psi).unwrap());
        let b = entanglement_entropy(&schmidt_decompose(&psi.swapped()).unwrap());
        prop_assert!((a - b).abs() < 1e-10);
        prop_assert!(a >= -1e-12 && a <= (da.min(db) as f64).ln() + 1e-10);
    }

    #[test]
    fn product_states_trace_back_to_their_factors(seed in any::<u64>(), da in 1usize..=5, db in 1usize..=5) {
        let mut r = rng(seed);
        let a = random::state(&mut r, da);
        let b = random::state(&mut r, db);
        let rho = BipartiteState::product(&a, &b).density_matrix();
        let ra = partial_trace(&rho, Subsystem::A, (da, db)).unwrap();
        prop_assert!((ra.entries() - DensityMatrix::from_pure(&a).entries()).camax() < 1e-12);
        let sd = schmidt_decompose(&BipartiteState::product(&a, &b)).unwrap();
        prop_assert_eq!(sd.rank(), 1);
    }

    #[test]
    fn dephasing_never_increases_coherence(seed in any::<u64>(), dim in 2usize..=6, cut in 1usize..6, f in 0.0f64..=1.0) {
        let cut = cut.min(dim - 1);
        let rho = DensityMatrix::from_pure(&random::state(&mut rng(seed), dim));
        let labels = numeric_labels(dim);
        let partition = vec![labels[..cut].to_vec(), labels[cut..].to_vec()];
        let before = coherence_norm(&rho, &partition).unwrap();
        let after = dephase_blocks(&rho, &partition, f).unwrap();
        prop_assert!(coherence_norm(&after, &partition).unwrap() <= before + 1e-15);
        prop_assert!(min_eigenvalue(after.entries()) > -1e-12);
    }

    #[test]
    fn overlap_weighted_reduced_state_is_positive(seed in any::<u64>(), dim in 1usize..=5, pdim in 1usize..=5) {
        let mut r = rng(seed);
        let coeffs: Vec<C64> = random::state(&mut r, dim).amplitudes().iter().copied().collect();
        let pointers: Vec<StateVector> = (0..dim).map(|_| random::state(&mut r, pdim)).collect();
        let overlaps = OverlapMatrix::from_states(&pointers).unwrap();
        let rho = local_density_matrix(&coeffs, &overlaps).unwrap();
        prop_assert!(min_eigenvalue(rho.entries()) > -1e-10);
        let ready = random::state(&mut r, pdim);
        let mi = MeasurementInteraction::new(numeric_labels(dim), pointers, ready).unwrap();
        let joint = apply_measurement(&coeffs, &mi).unwrap();
        let reduced = joint.reduced(Subsystem::A);
        prop_assert!((reduced.entries() - rho.entries()).camax() < 1e-10);
    }

    #[test]
    fn damping_is_monotone_and_symmetric(rate in 0.0f64..1e3, t in 0.0f64..10.0, dx in -5.0f64..5.0, s in 1.0f64..3.0) {
        let d = gaussian_damping(rate, t, dx);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d.to_bits(), gaussian_damping(rate, t, -dx).to_bits());
        prop_assert!(gaussian_damping(rate, t, s * dx) <= d);
        prop_assert!(gaussian_damping(rate, s * t, dx) <= d);
        prop_assert!(gaussian_damping(s * rate, t, dx) <= d);
    }

    #[test]
    fn localization_rate_scales_with_its_inputs(k in 1e-2f64..1e6, flux in 1e-3f64..1e20, sigma in 1e-20f64..1.0, s in 1.5f64..10.0) {
        let lam = |k, flux, sigma| localization_rate(&ScatteringEnvironment::new("p", k, flux, sigma, "").unwrap()).unwrap().value();
        let base = lam(k, flux, sigma);
        prop_assert!((lam(s * k, flux, sigma) / base / (s * s) - 1.0).abs() < 1e-12);
        prop_assert!((lam(k, s * flux, sigma) / base / s - 1.0).abs() < 1e-12);
        prop_assert!((lam(k, flux, s * sigma) / base / s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decoherence_factor_is_one_without_separation(l in 0.0f64..1e30, t in 0.0f64..1e3) {
        let f = decoherence_factor(0.0, LocalizationRate::new(l).unwrap(), t).unwrap();
        prop_assert_eq!(f, 1.0);
    }

    #[test]
    fn more_measurements_survive_better(v in 0.1f64..2.0, e in -2.0f64..2.0, n in 1u64..200) {
        let h = Operator::two_level(v, e);
        let u = StateVector::basis(2, 0).unwrap();
        let t = 1.0;
        let a = zeno_survival(&h, &u, t, n).unwrap().exact;
        let b = zeno_survival(&h, &u, t, 2 * n).unwrap().exact;
        prop_assert!(b >= a - 1e-12);
    }

    #[test]
    fn cat_damping_preserves_trace_and_reduces_visibility(re in -3.0f64..3.0, im in -3.0f64..3.0, t1 in 0.0f64..2.0, dt in 0.0f64..2.0) {
        let alpha = C64::new(re, im);
        let cat = CatSector::pure_cat(alpha);
        let a = cat_dephase(&cat, 1.0, t1).unwrap();
        let b = cat_dephase(&cat, 1.0, t1 + dt).unwrap();
        prop_assert!((a.trace() - 1.0).abs() < 1e-10);
        prop_assert!((b.trace() - 1.0).abs() < 1e-10);
        prop_assert!(fringe_visibility(&b) <= fringe_visibility(&a) + 1e-15);
    }
}
