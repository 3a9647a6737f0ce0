mod common;

use common::*;
use koszul_core::arith::RingExt;
use koszul_core::cube::Strategy;
use koszul_core::groebner::IdealBasis;
use koszul_core::koszul::{
    be_acyclicity, det_is_a_sequence, determinant, factor_sequence_check, is_a_sequence, is_koszul_cube,
    is_reduced_koszul, koszul_degenerate_directions, random_koszul, typical_cube,
};
use koszul_core::modcalc::{self, FPModule};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn koszul_cubes_are_admissible_and_spherical(seed in 0u64..100_000) {
        let r = qxyz();
        let s = koszul_sample(&r, seed);
        prop_assert!(is_koszul_cube(&s.cube, &s.sequence).unwrap().is_koszul);
        for st in Strategy::ALL {
            prop_assert!(s.cube.admissibility(st).admissible, "{:?}", st);
        }
        prop_assert!(s.cube.is_nondegenerate());
        prop_assert!(tot(&s.cube).zero_spherical());
    }

    #[test]
    fn random_koszul_is_deterministic(seed in 0u64..100_000) {
        let r = qxyz();
        let (which, params) = koszul_params(seed);
        let fs = polys(&r, A_SEQUENCES[which]);
        let a = random_koszul(&r, &fs, params, seed).unwrap();
        let b = random_koszul(&r, &fs, params, seed).unwrap();
        prop_assert_eq!(a.labels(), b.labels());
        prop_assert!(a.boundaries() == b.boundaries());
    }

    #[test]
    fn determinant_lemma_on_koszul_boundaries(seed in 0u64..100_000) {
        // g in the radical of (det d), and det d a nonzerodivisor
        let r = qxyz();
        let s = koszul_sample(&r, seed);
        for (&(_, k), d) in s.cube.boundaries() {
            let det = d.determinant().unwrap();
            prop_assert!(!det.is_zero());
            let principal = IdealBasis::new(r.clone(), vec![det.clone()]).unwrap();
            prop_assert!(principal.radical_contains(&s.sequence[k]));
            prop_assert!(IdealBasis::zero(r.clone()).quotient(&det).is_zero());
        }
    }

    #[test]
    fn be_agrees_with_homology(seed in 0u64..100_000, which in 0usize..4) {
        let r = qxyz();
        let s = small_koszul_sample(&r, seed);
        let c = tot(&s.cube);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(1..=c.length());
        let c = match which {
            0 => c,
            1 => corrupted(&c, i, None),
            2 => corrupted(&c, i, Some(&small_poly(&r, &mut rng))),
            _ => tot(&random_typical(&r, s.cube.dim(), &mut rng)),
        };
        prop_assert_eq!(be_acyclicity(&c).unwrap().acyclic, c.zero_spherical());
    }

    #[test]
    fn factor_lemma_has_no_counterexample(seed in 0u64..100_000) {
        let r = qxyz();
        let (fs, gs) = factor_pair(&r, seed);
        let rep = factor_sequence_check(&r, &fs, &gs, 6).unwrap();
        prop_assert!(!(rep.hypothesis && !rep.conclusion));
        prop_assert!(!rep.counterexample);
        prop_assert!(rep.solutions_verify(&fs));
    }
}

#[test]
fn determinants_are_coherent_and_form_a_sequences() {
    let r = qxyz();
    for seed in 0..40 {
        let s = koszul_sample(&r, seed);
        let det = determinant(&s.cube, &s.sequence).unwrap();
        assert_eq!(koszul_degenerate_directions(&s.cube, &s.sequence).unwrap(), 0);
        let rep = det_is_a_sequence(&s.cube, &s.sequence, 6).unwrap();
        assert_eq!(rep.a_sequence, Some(true), "seed {seed}: {det:?}");
    }
}

#[test]
fn padded_koszul_cubes_are_degenerate_along_the_padding() {
    let r = qxyz();
    for seed in 0..20 {
        let s = koszul_sample(&r, seed);
        if s.cube.dim() == 3 {
            continue;
        }
        let padded = s.cube.pad_identity("pad").unwrap();
        let mut fs = s.sequence.clone();
        fs.push(r.parse("x*y*z + 1").unwrap());
        assert!(is_koszul_cube(&padded, &fs).unwrap().is_koszul);
        let deg = koszul_degenerate_directions(&padded, &fs).unwrap();
        assert_eq!(deg, 1 << s.cube.dim());
        assert!(det_is_a_sequence(&padded, &fs, 6).is_err());
        assert!(padded.is_admissible());
    }
}

#[test]
fn typical_cubes_are_reduced() {
    let r = qxyz();
    for s in A_SEQUENCES {
        let fs = polys(&r, s);
        let c = typical_cube(&r, &fs);
        assert!(is_reduced_koszul(&c, &fs).unwrap());
        let squared: Vec<_> = fs.iter().map(|f| f.pow(2)).collect();
        let c2 = typical_cube(&r, &squared);
        assert!(is_koszul_cube(&c2, &fs).unwrap().is_koszul);
        assert!(!is_reduced_koszul(&c2, &fs).unwrap());
    }
}

#[test]
fn support_test_matches_annihilator() {
    // f in sqrt(Fitt_0) iff f in sqrt(ann) for cokernels of boundaries
    let r = qxyz();
    for seed in 0..20 {
        let s = koszul_sample(&r, seed);
        for (&(_, k), d) in s.cube.boundaries() {
            let ann = FPModule::cokernel(d).annihilator();
            let fitt = modcalc::fitting_ideal(d, d.rows()).unwrap();
            for f in [&s.sequence[k], &r.parse("x + y + z + 1").unwrap()] {
                assert_eq!(ann.radical_contains(f), fitt.radical_contains(f));
            }
        }
    }
}

#[test]
fn sequences_rejected_by_the_permutation_check() {
    let r = qxyz();
    let fs = polys(&r, &["x", "y*(1-x)", "z*(1-x)"]);
    let rep = is_a_sequence(&r, &fs, 6).unwrap();
    assert!(rep.regular);
    assert_eq!(rep.a_sequence, Some(false));
    assert!(rep.witness_verifies(&r));
    assert!(random_koszul(&r, &fs, Default::default(), 0).is_err());
}
