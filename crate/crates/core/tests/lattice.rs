use conical::lattice::{cokernel_presentation, hnf, image_membership, kernel_basis, saturate, snf};
use conical::{ints, BigInt, IntegerMatrix, Sublattice};
use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Determinantal divisors: gcd of all k×k minors.
fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g: i128 = 0;
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| i128::from(m[i][j])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        out.push(g);
    }
    out
}

/// Invariant factors from the determinantal divisors `D_k = d_1 ⋯ d_k`.
fn oracle_invariant_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let dd = determinantal_divisors(m);
    let mut prev = 1i128;
    let mut out = Vec::new();
    for d in dd {
        if d == 0 || prev == 0 {
            out.push(BigInt::zero());
            prev = 0;
        } else {
            out.push(BigInt::from(d / prev));
            prev = d;
        }
    }
    out
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r))
}

#[test]
fn smith_form_examples() {
    let ray_matrix = IntegerMatrix::from_i64(&[vec![1, 0, -1, 0], vec![0, 1, 0, -1], vec![1, 1, 1, 1]]);
    assert_eq!(snf(&ray_matrix).diag, ints(&[1, 1, 2]));
    assert_eq!(snf(&IntegerMatrix::identity(3)).diag, ints(&[1, 1, 1]));
    assert_eq!(snf(&IntegerMatrix::from_i64(&[vec![6, 0], vec![0, 4]])).diag, ints(&[2, 12]));
    assert_eq!(oracle_invariant_factors(&[vec![6, 0], vec![0, 4]]), ints(&[2, 12]));
}

#[test]
fn kernel_examples() {
    let k = kernel_basis(&IntegerMatrix::from_i64(&[vec![1, 1, 1]]));
    assert_eq!(k.rank(), 2);
    assert!(k.lattice_eq(&Sublattice::from_generators(3, &[ints(&[1, -1, 0]), ints(&[0, 1, -1])]).unwrap()));
    assert_eq!(kernel_basis(&IntegerMatrix::from_i64(&[vec![1]])).rank(), 0);
    let doubled = Sublattice::from_generators(2, &[ints(&[2, 0])]).unwrap();
    assert!(saturate(&doubled).lattice_eq(&Sublattice::from_generators(2, &[ints(&[1, 0])]).unwrap()));
    assert_eq!(doubled.index_in_saturation(), BigInt::from(2));
}

#[test]
fn cokernel_of_z_mod_two() {
    let pres = cokernel_presentation(&IntegerMatrix::from_i64(&[vec![2]]));
    assert_eq!(pres.group.free_rank(), 0);
    assert_eq!(pres.group.torsion(), &ints(&[2])[..]);
}

proptest! {
    #[test]
    fn smith_form_is_correct(rows in matrix_strategy()) {
        let m = IntegerMatrix::from_i64(&rows);
        let s = snf(&m);
        prop_assert!(s.left.is_unimodular());
        prop_assert!(s.right.is_unimodular());
        let d = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i == j {
                    prop_assert_eq!(d.get(i, j), &s.diag[i]);
                } else {
                    prop_assert!(d.get(i, j).is_zero());
                }
            }
        }
        for w in s.diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(s.diag, oracle_invariant_factors(&rows));
    }

    #[test]
    fn hermite_form_is_a_left_multiple(rows in matrix_strategy()) {
        let m = IntegerMatrix::from_i64(&rows);
        let (h, u) = hnf(&m);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!(h.rank(), m.rank());
    }

    #[test]
    fn kernels_are_saturated_and_annihilated(rows in matrix_strategy()) {
        let m = IntegerMatrix::from_i64(&rows);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.rank(), m.cols() - m.rank());
        prop_assert!(k.is_saturated());
        for v in k.basis_rows() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn cokernel_kills_columns(rows in matrix_strategy()) {
        let m = IntegerMatrix::from_i64(&rows);
        let pres = cokernel_presentation(&m);
        prop_assert_eq!(pres.group.free_rank(), m.rows() - m.rank());
        for c in m.to_columns() {
            prop_assert!(pres.project(&c).unwrap().is_zero());
        }
        for (k, c) in pres.lift.to_columns().iter().enumerate() {
            prop_assert_eq!(pres.project(c).unwrap(), pres.group.generator(k));
        }
    }

    #[test]
    fn image_membership_solves(rows in matrix_strategy(), coeffs in proptest::collection::vec(-3i64..=3, 4)) {
        let m = IntegerMatrix::from_i64(&rows);
        let x: Vec<BigInt> = coeffs[..m.cols()].iter().map(|&c| BigInt::from(c)).collect();
        let v = m.mul_vec(&x).unwrap();
        let sol = image_membership(&m, &v).unwrap();
        prop_assert!(sol.is_some());
        prop_assert_eq!(m.mul_vec(&sol.unwrap()).unwrap(), v);
    }

    #[test]
    fn sublattice_membership(rows in matrix_strategy(), coeffs in proptest::collection::vec(-3i64..=3, 4)) {
        let gens: Vec<Vec<BigInt>> = rows.iter().map(|r| ints(r)).collect();
        let l = Sublattice::from_generators(rows[0].len(), &gens).unwrap();
        let mut v = vec![BigInt::zero(); rows[0].len()];
        for (g, c) in gens.iter().zip(&coeffs) {
            for (a, b) in v.iter_mut().zip(g) {
                *a += b * c;
            }
        }
        prop_assert!(l.contains(&v));
        let c = l.coordinates(&v).unwrap();
        prop_assert_eq!(l.basis().transpose().mul_vec(&c).unwrap(), v.clone());
        prop_assert!(saturate(&l).contains(&v));
    }
}
