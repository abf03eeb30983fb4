mod common;

use ccc_core::lattice::{
    content, gram_determinant, smith_normal_form, solve_mod, sublattice_index, Lattice, Mat,
    SublatticeIndex,
};
use ccc_core::Int;
use common::{brute_solve_mod, int_mat, int_mat_from_vecs, int_vec, Rng};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

#[test]
fn snf_worked_example() {
    // For [[2, 4], [6, 8]]: the first elementary divisor is the gcd of
    // the entries (2) and the product of both is |det| = 8, so the
    // frozen normal form is diag(2, 4).
    let m = int_mat(&[&[2, 4], &[6, 8]]);
    let snf = smith_normal_form(&m);
    assert_eq!(snf.diagonal(), int_vec(&[2, 4]));
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
    assert_eq!(snf.u.det().abs(), Int::from(1));
    assert_eq!(snf.v.det().abs(), Int::from(1));
}

fn check_snf_properties(m: &Mat<Int>) {
    let snf = smith_normal_form(m);
    assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s, "u m v = s");
    assert_eq!(snf.u.det().abs(), Int::from(1), "u unimodular");
    assert_eq!(snf.v.det().abs(), Int::from(1), "v unimodular");
    let diag = snf.diagonal();
    for d in &diag {
        assert!(*d >= Int::from(0), "diagonal nonnegative");
    }
    for w in diag.windows(2) {
        if w[1] != Int::from(0) || w[0] != Int::from(0) {
            // Divisibility holds with the convention 0 is divisible by
            // everything and divides only 0; zeros trail.
            if w[0] == Int::from(0) {
                assert_eq!(w[1], Int::from(0), "zeros trail");
            } else {
                assert!((w[1].clone() % w[0].clone()).is_zero(), "divisor chain");
            }
        }
    }
    // Off-diagonal entries of s vanish.
    for i in 0..snf.s.rows() {
        for j in 0..snf.s.cols() {
            if i != j {
                assert_eq!(snf.s[(i, j)], Int::from(0));
            }
        }
    }
}

proptest! {
    #[test]
    fn snf_properties_hold(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let m = Mat::from_fn(rows, cols, |_, _| Int::from(rng.int_in(-50, 50)));
        check_snf_properties(&m);
    }

    #[test]
    fn content_is_absolutely_homogeneous(v in prop::collection::vec(-100i64..100, 0..6), k in -20i64..20) {
        let scaled: Vec<Int> = v.iter().map(|&x| Int::from(x * k)).collect();
        let base = content(&int_vec(&v));
        prop_assert_eq!(content(&scaled), Int::from(k.abs()) * base);
    }

    #[test]
    fn solve_mod_matches_brute_force(
        rows in 1usize..4,
        cols in 1usize..4,
        n in 1i64..5,
        seed in any::<u64>(),
    ) {
        let mut rng = Rng::new(seed);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.int_in(-6, 6)).collect())
            .collect();
        let b: Vec<i64> = (0..rows).map(|_| rng.int_in(-6, 6)).collect();
        let expected = brute_solve_mod(&a, &b, n);
        let got = solve_mod(&int_mat_from_vecs(&a), &int_vec(&b), &Int::from(n)).unwrap();
        prop_assert_eq!(got, expected.map(|x| int_vec(&x)));
    }
}

#[test]
fn snf_merges_coprime_diagonal_blocks() {
    // diag(2, 3) is not in normal form; the divisor chain forces
    // diag(1, 6).
    let snf = smith_normal_form(&int_mat(&[&[2, 0], &[0, 3]]));
    assert_eq!(snf.diagonal(), int_vec(&[1, 6]));
    check_snf_properties(&int_mat(&[&[2, 0], &[0, 3]]));

    let snf = smith_normal_form(&int_mat(&[&[4, 0], &[0, 6]]));
    assert_eq!(snf.diagonal(), int_vec(&[2, 12]));

    let snf = smith_normal_form(&int_mat(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]));
    assert_eq!(snf.diagonal(), int_vec(&[1, 30, 30]));
}

#[test]
fn snf_covers_degenerate_shapes() {
    for m in [
        int_mat(&[&[0, 0, 0], &[0, 0, 0]]),
        int_mat(&[&[7]]),
        int_mat(&[&[0]]),
        int_mat(&[&[3, 6, 9]]),
        int_mat(&[&[2], &[4], &[6]]),
    ] {
        check_snf_properties(&m);
    }
}

#[test]
fn solve_mod_returns_lexicographically_smallest() {
    // x0 + x1 = 0 (mod 4) has solutions (0,0), (1,3), ...; lex smallest
    // is (0, 0). With rhs 3 the lex smallest is (0, 3).
    let a = int_mat(&[&[1, 1]]);
    assert_eq!(
        solve_mod(&a, &int_vec(&[0]), &Int::from(4)).unwrap(),
        Some(int_vec(&[0, 0]))
    );
    assert_eq!(
        solve_mod(&a, &int_vec(&[3]), &Int::from(4)).unwrap(),
        Some(int_vec(&[0, 3]))
    );
}

#[test]
fn index_multiplicative_on_nested_chains() {
    let mut rng = Rng::new(0xA5A5_0001);
    let mut done = 0;
    while done < 25 {
        let dim = rng.int_in(1, 4) as usize;
        let random_mat = |rng: &mut Rng| {
            Mat::from_fn(dim, dim, |_, _| Int::from(rng.int_in(-4, 4)))
        };
        let b = random_mat(&mut rng);
        let c1 = random_mat(&mut rng);
        let c2 = random_mat(&mut rng);
        if b.det().is_zero() || c1.det().is_zero() || c2.det().is_zero() {
            continue;
        }
        let l0 = Lattice::new(b.clone(), None).unwrap();
        let l1 = Lattice::new(c1.mul(&b), None).unwrap();
        let l2 = Lattice::new(c2.mul(&c1).mul(&b), None).unwrap();
        let idx = |a: &Lattice<Int>, b: &Lattice<Int>| match sublattice_index(a, b).unwrap() {
            SublatticeIndex::Finite(v) => v,
            SublatticeIndex::Infinite => panic!("expected finite index"),
        };
        assert_eq!(idx(&l0, &l1) * idx(&l1, &l2), idx(&l0, &l2));
        done += 1;
    }
}

#[test]
fn gram_determinant_scales_with_index_squared() {
    let mut rng = Rng::new(0xBEEF_0002);
    let mut done = 0;
    while done < 25 {
        let dim = rng.int_in(1, 4) as usize;
        let b = Mat::from_fn(dim, dim, |_, _| Int::from(rng.int_in(-4, 4)));
        let c = Mat::from_fn(dim, dim, |_, _| Int::from(rng.int_in(-3, 3)));
        if b.det().is_zero() || c.det().is_zero() {
            continue;
        }
        // Symmetric gram for the big lattice.
        let h = Mat::from_fn(dim, dim, |_, _| Int::from(rng.int_in(-3, 3)));
        let gram = h.mul(&h.transpose());
        let l = Lattice::new(b.clone(), Some(gram.clone())).unwrap();
        let sub_gram = c.mul(&gram).mul(&c.transpose());
        let sub = Lattice::new(c.mul(&b), Some(sub_gram)).unwrap();
        let SublatticeIndex::Finite(index) = sublattice_index(&l, &sub).unwrap() else {
            panic!("same rank");
        };
        assert_eq!(
            gram_determinant(&sub).unwrap().abs(),
            gram_determinant(&l).unwrap().abs() * index.clone() * index
        );
        done += 1;
    }
}

#[test]
fn coords_are_exact_on_scaled_standard_lattices() {
    let l = Lattice::new(int_mat(&[&[2, 0, 0], &[0, 3, 0]]), None).unwrap();
    assert_eq!(l.coords_of(&int_vec(&[4, -3, 0])), Some(int_vec(&[2, -1])));
    assert_eq!(l.coords_of(&int_vec(&[1, 0, 0])), None);
    assert_eq!(l.coords_of(&int_vec(&[0, 0, 5])), None);
}
