use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cogpoly::model::random::{random_cog, random_signed_rotation_system};
use cogpoly::model::{cog_to_gec, gec_to_cog};
use cogpoly::saturation::{saturation_cog, saturation_recursive, saturation_statesum};
use cogpoly::surface::{boundary_count, euler_genus, is_orientable, trace_boundaries};
use cogpoly::transition::{transition_recursive, transition_statesum};
use cogpoly::yamada::{draw, yamada_r_at_unit};
use cogpoly::{Cog, GeneralisedGec, LaurentPoly, MultiPoly, PointedGec, Sign, Var};

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..2, -4i64..5), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(x, y, t, c)| MultiPoly::monomial(&[(Var::X, x), (Var::Y, y), (Var::T, t)], c))
            .sum()
    })
}

fn small_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i32..4, -4i64..5), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(e, c)| LaurentPoly::monomial(e, c))
            .fold(LaurentPoly::zero(), |a, b| a + b)
    })
}

fn cog_from_seed(seed: u64, max_edges: usize) -> Cog {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = rng.gen_range(0..=max_edges);
    let vertices = rng.gen_range(1..=edges + 1);
    random_cog(&mut rng, edges, vertices)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, MultiPoly::zero());
        let at: BTreeMap<Var, BigRational> = Var::ALL
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, BigRational::new(BigInt::from(i as i64 - 2), BigInt::from(3))))
            .collect();
        let lhs = (&a * &b).evaluate(&at).unwrap();
        prop_assert_eq!(lhs, a.evaluate(&at).unwrap() * b.evaluate(&at).unwrap());
    }

    #[test]
    fn laurent_evaluation_is_multiplicative(a in small_laurent(), b in small_laurent(), x in 1i64..5) {
        let v = |p: &LaurentPoly| p.evaluate_at(x).unwrap();
        prop_assert_eq!(v(&(&a * &b)), v(&a) * v(&b));
        prop_assert_eq!(v(&a.shift(2)), v(&a) * BigRational::from_integer(BigInt::from(x * x)));
    }

    #[test]
    fn display_then_parse_cog(seed in any::<u64>()) {
        let c = cog_from_seed(seed, 6);
        let back = Cog::parse(&c.to_string()).unwrap();
        prop_assert!(back.is_isomorphic(&c));
        prop_assert_eq!(back.canonical_form(), c.canonical_form());
    }

    #[test]
    fn gec_round_trip(seed in any::<u64>()) {
        let c = cog_from_seed(seed, 6);
        let g = cog_to_gec(&c);
        prop_assert_eq!(g.num_e_edges(), c.num_edges());
        prop_assert_eq!(gec_to_cog(&g).canonical_form(), c.canonical_form());
    }

    #[test]
    fn saturation_methods_agree(seed in any::<u64>()) {
        let c = cog_from_seed(seed, 4);
        let g = GeneralisedGec::from(cog_to_gec(&c));
        let m = saturation_cog(&c);
        prop_assert_eq!(&saturation_statesum(&g), &m);
        prop_assert_eq!(&saturation_recursive(&g, None).unwrap(), &m);
        // every edge subset contributes one term
        let total: BigInt = m.terms().into_iter().map(|(_, c)| c).sum();
        prop_assert_eq!(total, BigInt::from(1u64 << c.num_edges()));
    }

    #[test]
    fn transition_recursion_matches_state_sum(seed in any::<u64>()) {
        let c = cog_from_seed(seed, 3);
        let g = PointedGec::from(cog_to_gec(&c));
        let q = transition_recursive(&g, None).unwrap();
        prop_assert_eq!(&q, &transition_statesum(&g));
        let ones: BTreeMap<Var, BigRational> =
            Var::ALL.iter().map(|&v| (v, BigRational::from_integer(BigInt::from(1)))).collect();
        // splicing branches twice, so each e-edge offers four resolutions
        let states = BigInt::from(4u64.pow(c.num_edges() as u32));
        prop_assert_eq!(q.evaluate(&ones).unwrap(), BigRational::from_integer(states));
    }

    #[test]
    fn faces_and_genus(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_signed_rotation_system(&mut rng, 6);
        let trace = trace_boundaries(&s);
        prop_assert_eq!(trace.count(), boundary_count(&s));
        let k = s.underlying_cog().underlying_graph().num_components();
        let chi = s.num_vertices() as i64 - s.num_edges() as i64 + trace.count() as i64;
        prop_assert_eq!(2 * k as i64 - chi, euler_genus(&s) as i64);
        if is_orientable(&s) {
            prop_assert_eq!(euler_genus(&s) % 2, 0);
        }
        let v = rng.gen_range(0..s.num_vertices());
        let f = s.vertex_flip(v).unwrap();
        prop_assert_eq!(boundary_count(&f), boundary_count(&s));
        prop_assert_eq!(is_orientable(&f), is_orientable(&s));
        prop_assert_eq!(f.vertex_flip(v).unwrap(), s.clone());
    }

    #[test]
    fn all_plus_is_orientable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_signed_rotation_system(&mut rng, 6);
        let plus = cogpoly::SignedRotationSystem::all_plus(s.rotation().clone());
        prop_assert!(is_orientable(&plus));
        let minus: Vec<usize> = (0..s.num_edges()).filter(|&e| s.sign(e) == Sign::Minus).collect();
        prop_assert_eq!(plus.partial_petrial(&minus).unwrap(), s);
    }

    #[test]
    fn drawings_are_faithful(seed in any::<u64>()) {
        let c = cog_from_seed(seed, 4);
        let d = draw(&c, seed);
        prop_assert!(d.is_consistent());
        prop_assert_eq!(d.source_cog(), c);
    }

    #[test]
    fn crossing_changes_keep_unit_values(seed in any::<u64>()) {
        let c = cog_from_seed(seed, 3);
        let d = draw(&c, seed);
        prop_assume!(d.num_crossings() > 0);
        let i = (seed % d.num_crossings() as u64) as usize;
        let f = d.with_crossing_flipped(i);
        prop_assert_eq!(yamada_r_at_unit(&f, -1), yamada_r_at_unit(&d, -1));
        let abs = |x: BigInt| if x < BigInt::from(0) { -x } else { x };
        prop_assert_eq!(abs(yamada_r_at_unit(&f, 1)), abs(yamada_r_at_unit(&d, 1)));
    }
}
