mod common;

use common::*;
use dihedral_free::linalg::{hnf, left_nullspace, subgroup_membership, IntMatrix, RatMatrix};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #[test]
    fn hnf_invariants(rows in small_matrix()) {
        let a = int_matrix(&rows);
        let d = hnf(&a);
        prop_assert_eq!(d.u.mul(&a), d.h.clone());
        prop_assert!(is_unit(permutation_det(&d.u)));
        prop_assert!(is_canonical_hnf(&d.h, d.rank));
        // every row of A is an integer combination of rows of H
        for row in a.row_vecs() {
            prop_assert!(d.contains(&row));
        }
        let ra = RatMatrix::from_int(&a);
        prop_assert_eq!(d.rank, rational_rank(&rat_rows(&ra)));
    }

    #[test]
    fn hnf_is_deterministic(rows in small_matrix()) {
        let a = int_matrix(&rows);
        prop_assert_eq!(hnf(&a), hnf(&a));
    }

    #[test]
    fn hnf_is_invariant_under_row_operations(rows in small_matrix(), k in -3i64..=3) {
        // the canonical form only depends on the row lattice
        let a = int_matrix(&rows);
        let mut shuffled = rows.clone();
        shuffled.reverse();
        if shuffled.len() > 1 {
            let first = shuffled[0].clone();
            for (x, y) in shuffled[1].iter_mut().zip(&first) {
                *x += k * y;
            }
        }
        prop_assert_eq!(hnf(&a).h, hnf(&int_matrix(&shuffled)).h);
    }

    #[test]
    fn nullspace_annihilates(rows in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(rational(), c), r))) {
        let c = RatMatrix::from_rows(&rows);
        let n = left_nullspace(&c);
        prop_assert!(n.mul(&c).entries().iter().all(Zero::is_zero));
        let rank_c = rational_rank(&rows);
        let rank_n = rational_rank(&rat_rows(&n));
        prop_assert_eq!(n.rows(), rank_n);
        prop_assert_eq!(rank_n + rank_c, c.rows());
    }

    #[test]
    fn membership_matches_enumeration(
        k in 1usize..=3,
        seed in prop::collection::vec(rational(), 12),
        picks in prop::collection::vec(-3i64..=3, 2),
        perturb in any::<bool>(),
    ) {
        let extras: Vec<Vec<BigRational>> = vec![seed[0..k].to_vec(), seed[3..3 + k].to_vec()];
        let mut gens: Vec<Vec<BigRational>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { q(1, 1) } else { q(0, 1) }).collect())
            .collect();
        gens.extend(extras.iter().cloned());
        let mut v: Vec<BigRational> = (0..k)
            .map(|j| q(picks[0], 1) * &extras[0][j] + q(picks[1], 1) * &extras[1][j] + &seed[6 + j] - seed[6 + j].floor())
            .collect();
        if perturb {
            v[0] += &seed[9];
        }
        let expected = membership_over_standard(&v, &extras, 6);
        prop_assert_eq!(subgroup_membership(&v, &gens), expected);
    }

    #[test]
    fn membership_accepts_combinations(
        k in 1usize..=4,
        gens in prop::collection::vec(prop::collection::vec(rational(), 4), 1..=3),
        coeffs in prop::collection::vec(-4i64..=4, 3),
    ) {
        let gens: Vec<Vec<BigRational>> = gens.into_iter().map(|g| g[..k].to_vec()).collect();
        let v: Vec<BigRational> = (0..k)
            .map(|j| gens.iter().zip(&coeffs).fold(BigRational::zero(), |acc, (g, &c)| acc + q(c, 1) * &g[j]))
            .collect();
        prop_assert!(subgroup_membership(&v, &gens));
    }
}

#[test]
fn membership_rejects_out_of_span() {
    // (1,1) spans a rank-one lattice; (1,0) is not even in its real span
    let gens = vec![vec![q(1, 1), q(1, 1)]];
    assert!(!subgroup_membership(&[q(1, 1), q(0, 1)], &gens));
    assert!(!subgroup_membership(&[q(1, 2), q(1, 2)], &gens));
    assert!(bounded_combination(&[q(3, 1), q(3, 1)], &gens, 4));
    assert!(subgroup_membership(&[q(3, 1), q(3, 1)], &gens));
}

#[test]
fn nullspace_of_reflection_minus_identity() {
    // n = 1 reflection s: blocks (1,2) -> -I, (2,1) -> -I, (3,3) -> -I
    let c = dihedral_free::construction::Construction::new(
        dihedral_free::construction::ConstructionParams::new(1).unwrap(),
        dihedral_free::construction::Mutation::None,
    );
    let m = c.s.linear().sub(&RatMatrix::identity(6));
    let n = left_nullspace(&m);
    assert!(n.mul(&m).entries().iter().all(Zero::is_zero));
    assert_eq!(rational_rank(&rat_rows(&n)) + rational_rank(&rat_rows(&m)), 6);
    assert_eq!(n.rows(), 2);
}

#[test]
fn hnf_handles_tall_and_wide_inputs() {
    let tall = int_matrix(&[vec![4], vec![6], vec![-10]]);
    let d = hnf(&tall);
    assert_eq!(d.h, int_matrix(&[vec![2], vec![0], vec![0]]));
    let wide = int_matrix(&[vec![0, 0, 3, 6]]);
    let d = hnf(&wide);
    assert_eq!(d.rank, 1);
    assert_eq!(d.h, wide);
    let empty = IntMatrix::from_rows_with_cols(&[], 3);
    assert_eq!(hnf(&empty).rank, 0);
}
