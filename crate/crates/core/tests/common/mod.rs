//! Test-only oracles, written independently of the library's elimination code.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use dihedral_free::linalg::{IntMatrix, RatMatrix};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let r: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    IntMatrix::from_rows(&r)
}

/// Determinant by permutation expansion; fine up to 7x7.
pub fn permutation_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, &a, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, a: &[Vec<BigInt>], total: &mut BigInt) {
    let n = p.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let prod = (0..n).fold(BigInt::one(), |acc, i| acc * &a[i][p[i]]);
        if inversions % 2 == 0 {
            *total += prod;
        } else {
            *total -= prod;
        }
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, a, total);
        p.swap(k, i);
    }
}

/// Checks echelon shape, positive pivots, reduction above pivots and zero rows
/// below the rank.
pub fn is_canonical_hnf(h: &IntMatrix, rank: usize) -> bool {
    let mut last_pivot: Option<usize> = None;
    for i in 0..h.rows() {
        let lead = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
        match lead {
            None => {
                if i < rank {
                    return false;
                }
            }
            Some(c) => {
                if i >= rank || !h[(i, c)].is_positive() {
                    return false;
                }
                if last_pivot.is_some_and(|p| c <= p) {
                    return false;
                }
                for r in 0..i {
                    let e = &h[(r, c)];
                    if e.is_negative() || e >= &h[(i, c)] {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

/// Rank over the rationals by straightforward elimination on a copy.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rat_rows(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    m.row_vecs()
}

/// Whether `v - sum c_i extra_i` is integral for some `c_i` in `[-bound, bound]`.
/// With `Z^k` among the generators and every denominator dividing 12 this is
/// exhaustive once `bound >= 6`.
pub fn membership_over_standard(v: &[BigRational], extras: &[Vec<BigRational>], bound: i64) -> bool {
    fn rec(v: &[BigRational], extras: &[Vec<BigRational>], bound: i64, acc: Vec<BigRational>) -> bool {
        match extras.split_first() {
            None => v.iter().zip(&acc).all(|(a, b)| (a - b).is_integer()),
            Some((g, rest)) => (-bound..=bound).any(|c| {
                let cq = BigRational::from_integer(c.into());
                let next: Vec<BigRational> = acc.iter().zip(g).map(|(a, x)| a + &cq * x).collect();
                rec(v, rest, bound, next)
            }),
        }
    }
    rec(v, extras, bound, vec![BigRational::zero(); v.len()])
}

/// Whether `v = sum c_i gens_i` for integer `c_i` in `[-bound, bound]`.
pub fn bounded_combination(v: &[BigRational], gens: &[Vec<BigRational>], bound: i64) -> bool {
    fn rec(v: &[BigRational], gens: &[Vec<BigRational>], bound: i64, acc: Vec<BigRational>) -> bool {
        match gens.split_first() {
            None => v == acc.as_slice(),
            Some((g, rest)) => (-bound..=bound).any(|c| {
                let cq = BigRational::from_integer(c.into());
                let next: Vec<BigRational> = acc.iter().zip(g).map(|(a, x)| a + &cq * x).collect();
                rec(v, rest, bound, next)
            }),
        }
    }
    rec(v, gens, bound, vec![BigRational::zero(); v.len()])
}

pub fn is_unit(x: BigInt) -> bool {
    x.abs().is_one()
}

pub fn one() -> BigRational {
    BigRational::one()
}
