mod common;

use brane_core::complex::{cone, embed_map, shift, validate_complex, BoundedComplex, ComplexMap};
use brane_core::gauge::{derived_hom_vanishes, DeclaredComplex, Summand};
use brane_core::module::{graded_piece_dim, image, kernel, GradedMap, GradedModule};
use brane_core::projective::ProjectiveSpace;
use brane_core::saturation::{saturate_truncated, DEFAULT_SATURATION_CAP};
use common::{free_dim, random_form, random_matrix, span_dim};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn free_map(seed: u64, nv: usize, src: Vec<i64>, tgt: Vec<i64>) -> GradedMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_matrix(&mut rng, nv, tgt.clone(), src.clone());
    GradedMap::new(GradedModule::free(nv, src), GradedModule::free(nv, tgt), m).unwrap()
}

fn twists() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=2, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kernel_and_image_dims_add_up(seed in any::<u64>(), nv in 2usize..=3, tgt in twists(), extra in twists()) {
        let src: Vec<i64> = extra.iter().map(|e| e + 1).collect();
        let phi = free_map(seed, nv, src.clone(), tgt);
        let k = kernel(&phi).unwrap();
        let im = image(&phi).unwrap();
        for d in -5..=5 {
            let im_dim = span_dim(phi.matrix(), d);
            prop_assert_eq!(graded_piece_dim(&im, d), im_dim);
            prop_assert_eq!(graded_piece_dim(&k, d) + im_dim, free_dim(nv, &src, d));
        }
    }

    #[test]
    fn truncated_saturation_is_idempotent(seed in any::<u64>(), forms in 1usize..=2, deg in 1u32..=2) {
        let nv = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal: Vec<_> = (0..forms).map(|_| random_form(&mut rng, nv, deg)).collect();
        let m = GradedModule::cyclic(nv, &ideal, 0).unwrap();
        let once = saturate_truncated(&m, 0, DEFAULT_SATURATION_CAP).unwrap();
        let twice = saturate_truncated(&once, 0, DEFAULT_SATURATION_CAP).unwrap();
        for d in 0..=6 {
            prop_assert_eq!(graded_piece_dim(&once, d), graded_piece_dim(&twice, d));
        }
    }

    #[test]
    fn constructors_keep_square_zero(seed in any::<u64>(), k in -2i64..=2) {
        let nv = 3;
        let f = free_map(seed, nv, vec![2, 2], vec![1]);
        let g = free_map(seed.wrapping_add(1), nv, vec![1], vec![0]);
        let c = BoundedComplex::checked(nv, -1, vec![f.source().clone(), f.target().clone()], vec![f.clone()]).unwrap();
        prop_assert!(validate_complex(&shift(&c, k)));
        let h = embed_map(&g).unwrap();
        let con = cone(&h).unwrap();
        prop_assert!(validate_complex(&con.complex));
        let idc = cone(&ComplexMap::identity(&c)).unwrap();
        prop_assert!(validate_complex(&shift(&idc.complex, k)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn hom_vanishing_is_shift_invariant(lists in prop::collection::vec(prop::collection::vec(1usize..=2, 0..=2), 1..=2), k in -2i64..=2) {
        let p = ProjectiveSpace::new(2).unwrap();
        let summands: Vec<Vec<Summand>> = lists.iter().map(|l| l.iter().map(|&g| Summand::Generator(g)).collect()).collect();
        let terms: Vec<GradedModule> = summands
            .iter()
            .map(|l| {
                let mut acc = GradedModule::zero(p.nvars());
                for s in l {
                    acc = brane_core::module::direct_sum(&acc, &s.module(&p).unwrap()).unwrap();
                }
                acc
            })
            .collect();
        let diffs: Vec<GradedMap> = terms.windows(2).map(|w| GradedMap::zero(&w[0], &w[1])).collect();
        let f = DeclaredComplex::from_summands(p, 0, summands, diffs).unwrap();
        let base = derived_hom_vanishes(&f, DEFAULT_SATURATION_CAP).unwrap();
        prop_assert_eq!(derived_hom_vanishes(&f.shift(k), DEFAULT_SATURATION_CAP).unwrap(), base);
    }
}
