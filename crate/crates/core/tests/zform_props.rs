use efc_core::zform::{
    complete_symplectic, is_symplectic_basis, orbit_count_bruteforce, sublattice_nondegenerate, transport, ActingGroup,
    SymplecticLattice,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params() -> impl Strategy<Value = (usize, u64, u32)> {
    (1usize..=3, prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..=3)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(0x2f0), ..ProptestConfig::default() })]

    #[test]
    fn transport_scales_the_form_by_its_multiplier((g, l, k) in params(), seed in any::<u64>()) {
        let lat = SymplecticLattice::new(g, l, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b1 = lat.random_basis(&mut rng);
        let b2 = lat.random_basis(&mut rng);
        prop_assert!(is_symplectic_basis(&b1, &lat) && is_symplectic_basis(&b2, &lat));
        let (t, lambda) = transport(&b1, &b2, &lat).unwrap();
        let q = lat.modulus();
        prop_assert_eq!(lat.gsp_multiplier(&t), Some(lambda));
        let m1 = lat.multiplier(&b1).unwrap();
        let m2 = lat.multiplier(&b2).unwrap();
        prop_assert_eq!(m2, lambda * m1 % q);
        for (u, v) in b1.vectors.iter().zip(&b2.vectors) {
            prop_assert_eq!(&lat.apply(&t, u), v);
        }
    }

    #[test]
    fn completion_extends_a_random_half((g, l, k) in params(), seed in any::<u64>(), keep in 1usize..=3) {
        let lat = SymplecticLattice::new(g, l, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = lat.random_basis(&mut rng);
        let keep = keep.min(g);
        let partial = b.vectors[..keep].to_vec();
        let full = complete_symplectic(&partial, &lat).unwrap();
        prop_assert!(is_symplectic_basis(&full, &lat));
        prop_assert_eq!(&full.vectors[..keep], &partial[..]);
    }

    #[test]
    fn bases_span_nondegenerate_sublattices((g, l, k) in params(), seed in any::<u64>()) {
        let lat = SymplecticLattice::new(g, l, k).unwrap();
        let b = lat.random_basis(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(sublattice_nondegenerate(&b.vectors, &lat).unwrap());
        let mut bad = b.vectors.clone();
        bad[0] = bad[1].clone();
        prop_assert!(!sublattice_nondegenerate(&bad, &lat).unwrap());
    }
}

/// |Sp_2(F_l)| = l(l² − 1) and |GSp_2| = (l − 1)·|Sp_2|.
#[test]
fn rank_two_basis_counts_match_group_orders() {
    for l in [2u64, 3, 5] {
        let lat = SymplecticLattice::new(1, l, 1).unwrap();
        let c = orbit_count_bruteforce(&lat, ActingGroup::Full).unwrap();
        assert_eq!(c.bases, (l - 1) * l * (l * l - 1));
        assert_eq!(c.orbits, 1);
        let trivial = orbit_count_bruteforce(&lat, ActingGroup::Trivial).unwrap();
        assert_eq!(trivial.orbits, c.bases);
    }
}

#[test]
fn prime_power_level_counts() {
    // |SL_2(Z/4)| = 48 and there are two units mod 4.
    let lat = SymplecticLattice::new(1, 2, 2).unwrap();
    let c = orbit_count_bruteforce(&lat, ActingGroup::Full).unwrap();
    assert_eq!(c.bases, 96);
    assert_eq!(c.orbits, 1);
}
