use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use posetop::complex::{barycentric_complex, barycentric_poset, face_poset, order_complex};
use posetop::cylinder::{build_cylinder, mapping_cylinder};
use posetop::homology::{betti_by_rational_rank, compare, homology};
use posetop::io;
use posetop::map::Relation;
use posetop::mapper::PointCloud;
use posetop::random::Generator;
use posetop::reduction::{core, find_beat_points};
use posetop::{Budget, TrivialityOracle};

proptest! {
    #![proptest_config(ProptestConfig {
        rng_seed: RngSeed::Fixed(0x5eed),
        ..ProptestConfig::with_cases(48)
    })]

    #[test]
    fn poset_text_round_trips(seed in any::<u64>()) {
        let p = Generator::new(seed).poset_up_to("e", 1, 10);
        let back = io::parse_poset(&io::poset_to_text(&p)).unwrap();
        prop_assert!(back == p);
    }

    #[test]
    fn complex_text_round_trips(seed in any::<u64>()) {
        let k = Generator::new(seed).complex(6, 4, 3);
        let back = io::parse_complex(&io::complex_to_text(&k)).unwrap();
        prop_assert_eq!(back.canonical_form(), k.canonical_form());
    }

    #[test]
    fn opposite_is_an_involution(seed in any::<u64>()) {
        let p = Generator::new(seed).poset_up_to("e", 1, 10);
        prop_assert!(p.opposite().opposite() == p);
        prop_assert_eq!(
            order_complex(&p).canonical_form(),
            order_complex(&p.opposite()).canonical_form()
        );
    }

    #[test]
    fn core_has_no_beat_points_and_keeps_homology(seed in any::<u64>()) {
        let p = Generator::new(seed).poset_up_to("e", 1, 10);
        let (c, cert) = core(&p);
        prop_assert!(find_beat_points(&c).is_empty());
        prop_assert!(cert.steps.iter().all(|s| s.is_beat()));
        let end = cert.replay(&p, &p.full_set()).unwrap();
        prop_assert_eq!(end.len(), c.len());
        prop_assert!(compare(&p, &c).equal);
    }

    #[test]
    fn subdivision_keeps_homology(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        // homology of X' runs on the second subdivision, so keep X small
        let p = g.poset_up_to("e", 1, 6);
        prop_assert!(compare(&p, &barycentric_poset(&p)).equal);
        let k = g.complex(5, 3, 2);
        prop_assert!(compare(&k, &barycentric_complex(&k)).equal);
        prop_assert!(compare(&k, &face_poset(&k)).equal);
    }

    #[test]
    fn smith_form_agrees_with_rational_ranks(seed in any::<u64>()) {
        let k = Generator::new(seed).complex(7, 6, 3);
        prop_assert_eq!(homology(&k, false).betti_numbers(), betti_by_rational_rank(&k));
        prop_assert_eq!(homology(&k, false).euler_from_betti(), k.euler_characteristic());
    }

    #[test]
    fn mapping_cylinder_retracts_to_target(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let x = g.poset_up_to("x", 1, 7);
        let y = g.poset_up_to("y", 1, 7);
        let f = g.monotone_map(&x, &y);
        let (c, cert) = mapping_cylinder(&f).unwrap();
        prop_assert!(cert.replay(c.poset(), &c.poset().full_set()).unwrap() == c.target_set());
    }

    #[test]
    fn cylinder_of_transposed_relation_is_opposite(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let x = g.poset_up_to("x", 1, 6);
        let y = g.poset_up_to("y", 1, 6);
        let f = g.monotone_map(&x, &y);
        let r = Relation::from_map(&f);
        let c = build_cylinder(&r);
        let t = build_cylinder(&r.transpose_opposite());
        prop_assert_eq!(c.poset().len(), t.poset().len());
        prop_assert_eq!(c.poset().hasse_edge_count(), t.poset().hasse_edge_count());
    }

    #[test]
    fn points_csv_round_trips(n in 1usize..40, seed in any::<u64>()) {
        let pc = PointCloud::noisy_circle(n, seed);
        let back = io::parse_points_csv(&io::points_to_csv(&pc)).unwrap();
        prop_assert_eq!(back.ids(), pc.ids());
        for (a, b) in back.points().iter().zip(pc.points()) {
            for (u, v) in a.iter().zip(b) {
                prop_assert!((u - v).abs() <= 1e-12 * v.abs().max(1.0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        rng_seed: RngSeed::Fixed(0x5eed),
        ..ProptestConfig::with_cases(16)
    })]

    #[test]
    fn certified_relations_have_equal_homology(seed in any::<u64>()) {
        let oracle = TrivialityOracle::new(Budget::DEFAULT);
        let r = Generator::new(seed).certified_relation(6, &oracle);
        prop_assert!(compare(r.source(), r.target()).equal);
    }
}
