mod common;

use common::*;
use koszul_core::arith::{Field, FieldKind, MonomialOrder, Rational};
use koszul_core::cube::{members, subsets, Cube, Mask, Strategy};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Vertex-wise equal presentations and identical boundary matrices.
fn same_cube<F: Field>(a: &Cube<F>, b: &Cube<F>) -> bool {
    a.labels() == b.labels()
        && subsets(a.dim()).all(|t| a.rank(t) == b.rank(t) && a.vertex(t).same_denominator(b.vertex(t)).unwrap())
        && a.boundaries() == b.boundaries()
}

/// Drops bit `k` and closes the gap.
fn remove_bit(t: Mask, k: usize) -> Mask {
    (t & ((1 << k) - 1)) | ((t >> (k + 1)) << k)
}

/// A mixed suite: Koszul cubes, typical cubes of random polynomials and perturbed Koszul cubes.
fn mixed(seed: u64) -> Cube<Rational> {
    let r = qxyz();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 3 {
        0 => koszul_sample(&r, seed).cube,
        1 => random_typical(&r, rng.gen_range(1..4), &mut rng),
        _ => perturbed(&koszul_sample(&r, seed).cube, &mut rng),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn restriction_commutes_with_directional_homology(seed in 0u64..10_000, pick in any::<u64>()) {
        let x = mixed(seed);
        let n = x.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(pick);
        // disjoint U, V with a chosen u in U
        let u_dir = rng.gen_range(0..n);
        let mut u: Mask = 1 << u_dir;
        let mut v: Mask = 0;
        for k in (0..n).filter(|&k| k != u_dir) {
            match rng.gen_range(0..3) {
                0 => u |= 1 << k,
                1 => v |= 1 << k,
                _ => {}
            }
        }
        let pos = members(u).position(|k| k == u_dir).unwrap();
        let restricted = x.restrict(u, v).unwrap();
        let (u2, v2) = (remove_bit(u, u_dir), remove_bit(v, u_dir));
        let lhs0 = restricted.directional_h0(pos).unwrap();
        let rhs0 = x.directional_h0(u_dir).unwrap().restrict(u2, v2).unwrap();
        prop_assert!(same_cube(&lhs0, &rhs0));
        let lhs1 = restricted.directional_h1(pos).unwrap();
        let rhs1 = x.directional_h1(u_dir).unwrap().restrict(u2, v2).unwrap();
        prop_assert!(same_cube(&lhs1, &rhs1));
    }

    #[test]
    fn faces_of_admissible_cubes_are_admissible(seed in 0u64..10_000) {
        let x = mixed(seed);
        prop_assume!(x.is_admissible());
        let n = x.dim();
        for u in subsets(n) {
            for v in subsets(n).filter(|v| v & u == 0) {
                prop_assert!(x.restrict(u, v).unwrap().is_admissible(), "U = {}, V = {}", u, v);
            }
        }
    }

    #[test]
    fn identity_padding_keeps_admissibility(seed in 0u64..10_000) {
        let x = mixed(seed);
        prop_assume!(x.dim() < 3);
        let padded = x.pad_identity("pad").unwrap();
        prop_assert!(padded.validate().valid);
        let verdicts: Vec<bool> = Strategy::ALL.iter().map(|&s| padded.admissibility(s).admissible).collect();
        prop_assert!(verdicts.iter().all(|&b| b == verdicts[0]));
        prop_assert_eq!(verdicts[0], x.is_admissible());
        prop_assert_eq!(padded.degenerate_directions() & (1 << x.dim()), 1 << x.dim());
    }

    #[test]
    fn tot_homology_independent_of_ordering(seed in 0u64..10_000) {
        let x = mixed(seed);
        let base = x.total_complex(&x.default_ordering()).unwrap();
        let h0 = base.h0_denominator();
        let spherical = base.zero_spherical();
        let mut alpha = x.default_ordering();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let (i, j) = (rng.gen_range(0..alpha.len()), rng.gen_range(0..alpha.len()));
            alpha.swap(i, j);
            let c = x.total_complex(&alpha).unwrap();
            prop_assert_eq!(c.zero_spherical(), spherical);
            prop_assert!(c.h0_denominator().equals(&h0).unwrap());
        }
    }

    #[test]
    fn strategies_agree(seed in 0u64..10_000) {
        let x = mixed(seed);
        let verdicts: Vec<bool> = Strategy::ALL.iter().map(|&s| x.admissibility(s).admissible).collect();
        prop_assert!(verdicts.iter().all(|&b| b == verdicts[0]), "{:?}", verdicts);
    }

    #[test]
    fn homology_independent_of_monomial_order(seed in 0u64..10_000) {
        let x = mixed(seed);
        let c = tot(&x);
        let h0 = c.h0_denominator();
        for order in [MonomialOrder::Lex, MonomialOrder::GrLex] {
            let other = common::ring::<Rational>(FieldKind::Rationals, &["x", "y", "z"], order);
            let moved = c.to_ring(&other).unwrap();
            prop_assert_eq!(moved.zero_spherical(), c.zero_spherical());
            let back = moved.h0_denominator().to_ring(c.ring()).unwrap();
            prop_assert!(back.equals(&h0).unwrap());
        }
    }
}

#[test]
fn admissible_cubes_have_matching_h0() {
    let r = qxyz();
    for seed in 0..30 {
        let x = koszul_sample(&r, seed).cube;
        assert!(x.is_admissible());
        let (h, agree) = x.iterated_h0_checked(x.full(), 6).unwrap();
        assert!(agree, "seed {seed}");
        let tot = x.tot_h0_denominator(&x.default_ordering()).unwrap();
        assert!(h.vertex(0).relations().equals(&tot).unwrap(), "seed {seed}");
    }
}

#[test]
fn both_x_square() {
    let r = qxyz();
    let x = common::both_x_square(&r);
    for s in Strategy::ALL {
        assert!(!x.admissibility(s).admissible, "{s:?}");
    }
    assert!(!tot(&x).zero_spherical());
    assert!(!x.tot_homology_vanishes(1).unwrap());
    assert!(x.tot_homology_vanishes(2).unwrap());
}
