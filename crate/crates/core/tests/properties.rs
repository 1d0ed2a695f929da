use gsic_core::criteria::{detect_bipartite, j_bipartite, j_multipartite, Verdict};
use gsic_core::gsic::{conjugate_gsic, construct_gsic, max_feasible_t, purity_parameter, validate_gsic};
use gsic_core::oracle::{brute_force_j, ppt_test};
use gsic_core::states::{partial_transpose, random_density, random_separable};
use gsic_core::{build_gell_mann_basis, GsicSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gsic_at(d: usize, frac: f64) -> GsicSet {
    let b = build_gell_mann_basis(d).unwrap();
    construct_gsic(&b, max_feasible_t(&b).unwrap() * frac).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn separable_states_never_flagged(d in 2usize..=3, terms in 1usize..12, seed in any::<u64>(), frac in 0.05f64..=1.0, conj in any::<bool>()) {
        let p = gsic_at(d, frac);
        let q = if conj { conjugate_gsic(&p) } else { p.clone() };
        let rho = random_separable(d, 2, terms, seed).unwrap();
        prop_assert_eq!(detect_bipartite(&rho, &p, &q).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn detection_implies_npt(d in 2usize..=3, seed in any::<u64>(), frac in 0.2f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, d, 2).unwrap();
        let p = gsic_at(d, frac);
        let r = detect_bipartite(&rho, &p, &conjugate_gsic(&p)).unwrap();
        if r.detected() {
            prop_assert!(ppt_test(&rho).unwrap().npt);
        }
    }

    #[test]
    fn main_path_matches_brute_force(d in 2usize..=3, parties in 2usize..=3, seed in any::<u64>(), frac in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, d, parties).unwrap();
        let p = gsic_at(d, frac);
        let sets: Vec<GsicSet> = (0..parties).map(|i| if i == 1 { conjugate_gsic(&p) } else { p.clone() }).collect();
        let lists: Vec<&[gsic_core::ComplexMatrix]> = sets.iter().map(GsicSet::operators).collect();
        let oracle = brute_force_j(&rho, &lists).unwrap();
        let main = j_multipartite(&rho, &sets).unwrap();
        prop_assert!((oracle - main).abs() < 1e-12);
        if parties == 2 {
            prop_assert!((j_bipartite(&rho, &sets[0], &sets[1]).unwrap() - main).abs() < 1e-12);
        }
    }

    #[test]
    fn gsic_json_round_trip(d in 2usize..=4, frac in 0.0f64..=1.0) {
        let g = gsic_at(d, frac);
        let back = GsicSet::from_json(&g.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.a(), g.a());
        prop_assert_eq!(back.operators(), g.operators());
        prop_assert!(validate_gsic(&back, 1e-10).pass);
    }

    #[test]
    fn purity_parameter_monotone(d in 2usize..=8, t1 in 0.0f64..0.1, dt in 1e-6f64..0.1) {
        prop_assert!(purity_parameter(d, t1) < purity_parameter(d, t1 + dt));
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity(d in 2usize..=3, seed in any::<u64>(), party in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, d, 2).unwrap();
        let pt = partial_transpose(&rho, party).unwrap();
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(pt.hermiticity_deviation() < 1e-15);
    }
}
