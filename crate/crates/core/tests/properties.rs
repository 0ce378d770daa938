use conical::cox::{grading_from_rays, roundtrip_fan, roundtrip_ring};
use conical::fans::{build_system, is_separated, sigma_f};
use conical::maps::{classify, induced_fan_map, rational_witness, validate_fan_map, validate_rational_map, RationalConeMap};
use conical::quotient::{invariant_semigroup, oracle_matches, quotient_system, select_face};
use conical::random::{random_conical, random_morphism, random_ring, rng, GradingParams};
use conical::{ints, BigInt, Cone, ConicalRing, IntegerMatrix, RayMatrix, Sublattice};
use proptest::prelude::*;

fn small() -> GradingParams {
    GradingParams { max_n: 6, max_rank: 3, torsion: true, entry_bound: 2 }
}

fn cone_strategy(dim: usize) -> impl Strategy<Value = Cone> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, dim), 0..=4)
        .prop_map(move |gs| Cone::new(dim, gs.iter().map(|g| ints(g)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_dual_is_identity(c in cone_strategy(3)) {
        prop_assert!(c.dual().dual().set_eq(&c));
    }

    #[test]
    fn intersection_lies_in_both(a in cone_strategy(3), b in cone_strategy(3)) {
        let i = a.intersect(&b).unwrap();
        prop_assert!(a.contains_cone(&i) && b.contains_cone(&i));
        for g in a.generators() {
            if b.contains(g) {
                prop_assert!(i.contains(g));
            }
        }
    }

    #[test]
    fn faces_of_simplicial_cones(c in cone_strategy(3)) {
        prop_assume!(c.is_simplicial());
        for f in c.faces().unwrap() {
            prop_assert!(f.is_face_of(&c));
        }
    }

    #[test]
    fn sigma_cones_are_simplicial_and_full(seed in any::<u64>()) {
        let s = random_ring(&mut rng(seed), small());
        let k = s.grading_kernel();
        for f in s.generators_irrelevant() {
            prop_assert_eq!(f.support().len(), s.rank());
            let c = sigma_f(&s, &k, &f).unwrap();
            prop_assert!(c.is_simplicial());
            prop_assert_eq!(c.dim(), s.n() - s.rank());
        }
    }

    #[test]
    fn basis_change_transforms_the_system(seed in any::<u64>(), a in -2i64..=2, swap in any::<bool>()) {
        let c = random_conical(&mut rng(seed), small());
        let k = c.ring().grading_kernel();
        let d = k.rank();
        prop_assume!(d >= 2);
        let mut u = IntegerMatrix::identity(d);
        u.set(0, 1, BigInt::from(a));
        if swap {
            u = IntegerMatrix::from_rows(d, &{
                let mut rows = u.to_rows();
                rows.swap(0, 1);
                rows
            });
        }
        let moved = Sublattice::with_basis(k.ambient_rank(), &u.mul(k.basis()).unwrap().to_rows()).unwrap();
        let s1 = build_system(&c, Some(&k)).unwrap();
        let s2 = build_system(&c, Some(&moved)).unwrap();
        for (x, y) in s1.cones.iter().zip(&s2.cones) {
            prop_assert_eq!(x.cone.image(&u).unwrap(), y.cone.clone());
        }
    }

    #[test]
    fn separated_iff_cones_meet_in_shared_faces(seed in any::<u64>()) {
        let c = random_conical(&mut rng(seed), small());
        let sys = build_system(&c, None).unwrap();
        let mut shared = true;
        let mut faces = true;
        for (i, a) in sys.cones.iter().enumerate() {
            for b in &sys.cones[i + 1..] {
                let m = a.cone.intersect(&b.cone).unwrap();
                faces &= m.is_face_of(&a.cone) && m.is_face_of(&b.cone);
                let common: Vec<Vec<BigInt>> = a.rays.iter().filter(|r| b.rays.contains(r)).map(|&r| sys.rays[r].clone()).collect();
                shared &= m.set_eq(&Cone::new(sys.ambient_rank, common));
            }
        }
        let sep = is_separated(&c).unwrap();
        prop_assert_eq!(sep, shared);
        prop_assert!(!sep || faces);
    }

    #[test]
    fn roundtrips(seed in any::<u64>()) {
        let c = random_conical(&mut rng(seed), GradingParams { max_n: 6, max_rank: 2, torsion: true, entry_bound: 2 });
        prop_assert!(roundtrip_ring(&c, None).unwrap().ok);
        prop_assert!(roundtrip_fan(&build_system(&c, None).unwrap()).unwrap().ok);
    }

    #[test]
    fn class_group_ignores_ray_order(seed in any::<u64>(), shift in 0usize..6) {
        let s = random_ring(&mut rng(seed), small());
        let rows = s.grading_kernel().basis().transpose().to_rows();
        let mut rotated = rows.clone();
        let n = rotated.len();
        rotated.rotate_left(shift % n);
        let k = rows[0].len();
        let (g1, _) = grading_from_rays(&RayMatrix::from_rows(k, &rows)).unwrap();
        let (g2, _) = grading_from_rays(&RayMatrix::from_rows(k, &rotated)).unwrap();
        prop_assert_eq!(g1, g2);
    }

    #[test]
    fn surjective_alpha_keeps_relevance(seed in any::<u64>()) {
        let phi = random_morphism(&mut rng(seed), GradingParams { max_n: 5, ..small() }).unwrap();
        let c = classify(&phi, &ConicalRing::full(phi.source().clone()), &ConicalRing::full(phi.target().clone())).unwrap();
        if c.alpha_surjective {
            prop_assert!(c.maps_relevant_to_relevant);
        }
        if c.is_relevant {
            prop_assert!(c.alpha_surjective);
        }
    }

    #[test]
    fn witnesses_give_valid_rational_maps(seed in any::<u64>()) {
        let phi = random_morphism(&mut rng(seed), GradingParams { max_n: 5, max_rank: 2, torsion: false, entry_bound: 2 }).unwrap();
        let src = ConicalRing::full(phi.source().clone());
        let tgt = ConicalRing::full(phi.target().clone());
        let c = classify(&phi, &src, &tgt).unwrap();
        prop_assume!(c.is_rational);
        let choices = src.relevant_in_b().into_iter().map(|g| {
            let f = rational_witness(&tgt, &phi.apply(&g)).unwrap();
            (g, f)
        }).collect();
        let rmap = RationalConeMap { source: src, target: tgt, morphism: phi, choices };
        prop_assert!(validate_rational_map(&rmap).is_ok());
        let (fm, a, b) = induced_fan_map(&rmap).unwrap();
        prop_assert!(validate_fan_map(&fm, &a, &b).is_ok());
    }

    #[test]
    fn selected_faces_are_maximal(c in cone_strategy(3), l in proptest::collection::vec(-2i64..=2, 3)) {
        prop_assume!(c.is_simplicial());
        let l = conical::lattice::saturate(&Sublattice::from_generators(3, &[ints(&l)]).unwrap());
        let f = select_face(&c, &l).unwrap();
        prop_assert!(f.is_face_of(&c));
        prop_assert!(f.relint_meets_subspace(&l).unwrap());
        for g in c.faces().unwrap() {
            if g.contains_cone(&f) && !g.set_eq(&f) {
                prop_assert!(!g.relint_meets_subspace(&l).unwrap());
            }
        }
    }

    #[test]
    fn quotient_extremes(seed in any::<u64>()) {
        let c = random_conical(&mut rng(seed), GradingParams { max_n: 5, max_rank: 2, torsion: true, entry_bound: 2 });
        let k = c.ring().grading_kernel().rank();
        let zero = quotient_system(&c, None, &Sublattice::zero(k)).unwrap();
        prop_assert!(zero.pieces.iter().all(|p| p.image_cone == p.sigma && p.quotient_rank == k));
        let full = quotient_system(&c, None, &Sublattice::full(k)).unwrap();
        prop_assert!(full.pieces.iter().all(|p| p.image_cone.is_zero() && p.quotient_rank == 0));
    }

    #[test]
    fn quotient_oracle(seed in any::<u64>(), l in proptest::collection::vec(-1i64..=1, 3)) {
        let c = random_conical(&mut rng(seed), GradingParams { max_n: 5, max_rank: 2, torsion: false, entry_bound: 1 });
        let k = c.ring().grading_kernel().rank();
        prop_assume!(k <= 3 && l[..k].iter().any(|x| *x != 0));
        let l = conical::lattice::saturate(&Sublattice::from_generators(k, &[ints(&l[..k])]).unwrap());
        let q = quotient_system(&c, None, &l).unwrap();
        for piece in &q.pieces {
            prop_assert!(piece.image_cone.is_strictly_convex());
            if let Ok(sg) = invariant_semigroup(&c, None, &piece.monomial, &l, 6) {
                prop_assert!(oracle_matches(piece, &sg).unwrap());
            }
        }
    }
}
