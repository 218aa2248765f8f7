mod common;

use common::*;
use hullforge::random::{random_code, random_standard_form_code};
use hullforge::{LinearCode, MonomialTransform};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];
const BUDGET: u128 = 1_000_000;

fn code_strategy() -> impl Strategy<Value = LinearCode> {
    (0..QS.len(), 1usize..=8, 1usize..=4, any::<u64>()).prop_map(|(qi, n, k, seed)| {
        let f = gf(QS[qi]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_code(&f, n, k.min(n), &mut rng)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_formula_matches_oracle(c in code_strategy()) {
        let report = c.hull();
        prop_assert_eq!(report.h, c.hull_oracle(BUDGET).unwrap());
        prop_assert_eq!(report.h, c.k() - report.rank_gram);
        prop_assert_eq!(report.hull_basis.rows(), report.h);
        if c.k() < c.n() {
            prop_assert_eq!(report.h, c.n() - c.k() - report.rank_dual_gram);
        }
        for row in report.hull_basis.row_vecs() {
            prop_assert!(c.contains(&row));
            for g in c.generator().row_vecs() {
                prop_assert_eq!(c.field().dot(&row, &g), 0);
            }
        }
    }

    #[test]
    fn hull_is_shared_with_the_dual(c in code_strategy()) {
        prop_assume!(c.k() < c.n());
        let d = c.dual().unwrap();
        prop_assert_eq!(d.k(), c.n() - c.k());
        for (x, y) in c.generator().row_vecs().iter().zip(d.generator().row_vecs()) {
            prop_assert_eq!(c.field().dot(x, &y), 0);
        }
        let (a, b) = (c.hull(), d.hull());
        prop_assert_eq!(a.h, b.h);
        prop_assert!(a.hull_basis.row_vecs().iter().all(|v| b.hull_basis.row_space_contains(v)));
        prop_assert!(b.hull_basis.row_vecs().iter().all(|v| a.hull_basis.row_space_contains(v)));
        prop_assert_eq!(d.dual().unwrap(), c);
    }

    #[test]
    fn permutations_preserve_the_hull(c in code_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_permutation(c.n(), &mut rng);
        let out = c.apply(&MonomialTransform::permutation(sigma).unwrap()).unwrap();
        prop_assert_eq!(out.hull_dimension(), c.hull_dimension());
    }

    #[test]
    fn scaling_acts_through_squares(c in code_strategy(), seed in any::<u64>()) {
        let f = c.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_scaling(&f, c.n(), &mut rng);
        let t = MonomialTransform::scaling(a.clone()).unwrap();
        let u = t.squared_scale(&f);
        let h = c.apply(&t).unwrap().hull_dimension();
        prop_assert_eq!(h, c.k() - c.generator().gram_scaled(&u).unwrap().rank());
        prop_assert_eq!(h, c.hull_dimension_for_squares(&u).unwrap());
        // a and -a agree coordinatewise on squares
        let b: Vec<u32> = a.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { f.neg(x) } else { x }).collect();
        prop_assert_eq!(c.apply(&MonomialTransform::scaling(b).unwrap()).unwrap().hull_dimension(), h);
    }

    #[test]
    fn single_coordinate_scaling_moves_hull_by_at_most_one(c in code_strategy(), seed in any::<u64>()) {
        let (std, _) = c.standard_form();
        prop_assert_eq!(std.hull_dimension(), c.hull_dimension());
        let f = c.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = vec![1; c.n()];
        a[rng.random_range(0..c.n())] = random_nonzero(&f, &mut rng);
        let out = std.apply(&MonomialTransform::scaling(a).unwrap()).unwrap();
        prop_assert!(out.hull_dimension().abs_diff(std.hull_dimension()) <= 1);
    }

    #[test]
    fn monomial_transforms_preserve_parameters(c in code_strategy(), seed in any::<u64>()) {
        let f = c.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = MonomialTransform::new(random_permutation(c.n(), &mut rng), random_scaling(&f, c.n(), &mut rng)).unwrap();
        let out = c.apply(&t).unwrap();
        prop_assert_eq!((out.n(), out.k()), (c.n(), c.k()));
        prop_assert_eq!(out.min_distance(BUDGET).unwrap(), c.min_distance(BUDGET).unwrap());
        for g in c.generator().row_vecs() {
            prop_assert!(out.contains(&t.apply_word(&g, &f)));
        }
    }

    #[test]
    fn composition_replays(c in code_strategy(), seed in any::<u64>()) {
        let f = c.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || MonomialTransform::new(random_permutation(c.n(), &mut rng), random_scaling(&f, c.n(), &mut rng)).unwrap();
        let (s, t) = (draw(), draw());
        let stepwise = c.apply(&s).unwrap().apply(&t).unwrap();
        prop_assert_eq!(c.apply(&s.then(&t, &f).unwrap()).unwrap(), stepwise);
    }

    #[test]
    fn standard_form_is_equivalent(c in code_strategy()) {
        let (std, t) = c.standard_form();
        prop_assert_eq!(c.apply(&t).unwrap(), std.clone());
        let g = std.generator();
        for i in 0..std.k() {
            for j in 0..std.k() {
                prop_assert_eq!(g.get(i, j), (i == j) as u32);
            }
        }
    }
}

#[test]
fn standard_form_preserves_hull_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100 {
        let f = gf(QS[i % QS.len()]);
        let n = rng.random_range(2..=8);
        let k = rng.random_range(1..=n.min(4));
        let c = random_code(&f, n, k, &mut rng);
        let (std, _) = c.standard_form();
        assert_eq!(std.hull_dimension(), c.hull_dimension());
        assert_eq!(
            std.hull_oracle(BUDGET).unwrap(),
            c.hull_oracle(BUDGET).unwrap()
        );
    }
}

#[test]
fn standard_form_codes_have_identity_prefix() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = gf(7);
    for _ in 0..20 {
        let c = random_standard_form_code(&f, 7, 3, &mut rng);
        assert_eq!(c.information_set(), vec![0, 1, 2]);
    }
}
