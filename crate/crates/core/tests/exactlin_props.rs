//! Algebraic invariants of the linear-algebra kernel over `ℚ` (including
//! entries of size `10^30`), `𝔽_2` and `𝔽_3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use specseq::exactlin::{avoid_two_subspaces, Field, Matrix, PrimeField, QuotientMap, Rationals, Subspace};

fn big(a: i64, b: i64, scale: u32, den: i64) -> BigRational {
    let n = BigInt::from(a) * BigInt::from(10).pow(scale) + BigInt::from(b);
    BigRational::new(n, BigInt::from(den))
}

prop_compose! {
    fn rational_matrix(max: usize)(rows in 1..=max, cols in 1..=max)
        (entries in prop::collection::vec((-3i64..=3, -5i64..=5, prop_oneof![Just(0u32), Just(30u32)], 1i64..=4), rows * cols),
         cols in Just(cols)) -> Matrix<Rationals> {
        let rows_vec = entries
            .chunks(cols)
            .map(|c| c.iter().map(|&(a, b, s, d)| big(a, b, s, d)).collect())
            .collect();
        Matrix::from_rows(Rationals, cols, rows_vec).unwrap()
    }
}

fn prime_matrix(p: u64, max: usize) -> impl Strategy<Value = Matrix<PrimeField>> {
    (1..=max, 1..=max).prop_flat_map(move |(rows, cols)| {
        prop::collection::vec(0..p as i64, rows * cols).prop_map(move |e| {
            Matrix::from_i64(PrimeField::new(p).unwrap(), rows, cols, &e)
        })
    })
}

fn check_matrix<F: Field>(m: &Matrix<F>) {
    let rank = m.rank();
    let kernel = m.kernel();
    assert_eq!(rank + kernel.dim(), m.cols(), "rank-nullity");
    assert_eq!(m.transpose().rank(), rank, "row rank = column rank");
    for v in kernel.basis() {
        assert!(m.apply(v).iter().all(|x| m.field().is_zero(x)));
    }
    let rref = m.rref();
    assert_eq!(rref.reduced.rref().reduced, rref.reduced, "rref is idempotent");
    assert_eq!(rref.rank, rank);
    assert_eq!(m.image().dim(), rank);
    if m.rows() == m.cols() {
        match m.inverse() {
            Some(inv) => assert_eq!(m.mul(&inv), Matrix::identity(m.field().clone(), m.rows())),
            None => assert!(rank < m.rows()),
        }
    }
}

fn check_pair<F: Field>(a: &Matrix<F>, b: &Matrix<F>) {
    // Column spaces of two matrices with the same number of rows.
    let (u, v) = (a.image(), b.image());
    let sum = u.sum(&v);
    let meet = u.intersect(&v);
    assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim(), "modularity");
    assert!(sum.contains(&u) && sum.contains(&v));
    assert!(u.contains(&meet) && v.contains(&meet));
    assert_eq!(u.sum(&meet), u);
    // Canonical form: spanning the same space in another order changes nothing.
    let reversed: Vec<_> = a.columns().into_iter().rev().collect();
    assert_eq!(Subspace::span(a.field().clone(), a.rows(), reversed), u);
    // Quotient dimensions.
    let q = QuotientMap::new(&sum, &u).unwrap();
    assert_eq!(q.dim(), sum.dim() - u.dim());
    for rep in q.representatives() {
        assert!(!u.member(rep));
    }
    // Preimage of v under a.
    let pre = Subspace::preimage(a, &v);
    for x in pre.basis() {
        assert!(v.member(&a.apply(x)));
    }
    assert!(pre.contains(&a.kernel()));
    assert_eq!(pre.dim(), a.kernel().dim() + u.intersect(&v).dim());
}

fn check_avoidance<F: Field>(s_gen: &Matrix<F>, w1_gen: &Matrix<F>, w2_gen: &Matrix<F>) {
    let s = s_gen.image();
    let w1 = w1_gen.image().intersect(&s);
    let w2 = w2_gen.image().intersect(&s);
    match avoid_two_subspaces(&s, &w1, &w2) {
        Some(x) => {
            assert!(s.member(&x) && !w1.member(&x) && !w2.member(&x));
        }
        None => assert!(w1 == s || w2 == s, "proper subspaces must be avoidable"),
    }
}

fn same_rows<F: Field>(m: &Matrix<F>, rows: usize) -> Matrix<F> {
    let mut out = Matrix::zeros(m.field().clone(), rows, m.cols());
    for i in 0..rows.min(m.rows()) {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_matrices(m in rational_matrix(5)) {
        check_matrix(&m);
    }

    #[test]
    fn f2_matrices(m in prime_matrix(2, 6)) {
        check_matrix(&m);
    }

    #[test]
    fn f3_matrices(m in prime_matrix(3, 6)) {
        check_matrix(&m);
    }

    #[test]
    fn rational_subspace_pairs(a in rational_matrix(4), b in rational_matrix(4)) {
        let rows = a.rows().max(b.rows());
        check_pair(&same_rows(&a, rows), &same_rows(&b, rows));
    }

    #[test]
    fn f2_subspace_pairs(a in prime_matrix(2, 5), b in prime_matrix(2, 5)) {
        let rows = a.rows().max(b.rows());
        check_pair(&same_rows(&a, rows), &same_rows(&b, rows));
    }

    #[test]
    fn f3_subspace_pairs(a in prime_matrix(3, 5), b in prime_matrix(3, 5)) {
        let rows = a.rows().max(b.rows());
        check_pair(&same_rows(&a, rows), &same_rows(&b, rows));
    }

    #[test]
    fn avoidance_over_q(s in rational_matrix(4), w1 in rational_matrix(4), w2 in rational_matrix(4)) {
        let rows = s.rows().max(w1.rows()).max(w2.rows());
        check_avoidance(&same_rows(&s, rows), &same_rows(&w1, rows), &same_rows(&w2, rows));
    }

    #[test]
    fn avoidance_over_f2(s in prime_matrix(2, 4), w1 in prime_matrix(2, 4), w2 in prime_matrix(2, 4)) {
        let rows = s.rows().max(w1.rows()).max(w2.rows());
        check_avoidance(&same_rows(&s, rows), &same_rows(&w1, rows), &same_rows(&w2, rows));
    }

    #[test]
    fn avoidance_over_f3(s in prime_matrix(3, 4), w1 in prime_matrix(3, 4), w2 in prime_matrix(3, 4)) {
        let rows = s.rows().max(w1.rows()).max(w2.rows());
        check_avoidance(&same_rows(&s, rows), &same_rows(&w1, rows), &same_rows(&w2, rows));
    }
}

#[test]
fn huge_rational_entries_reduce_exactly() {
    let x = big(1, 0, 30, 1);
    let y = big(1, 1, 30, 3);
    let m = Matrix::from_rows(Rationals, 2, vec![vec![x.clone(), y.clone()], vec![x * BigInt::from(2), y * BigInt::from(2)]]).unwrap();
    assert_eq!(m.rank(), 1);
    let k = m.kernel();
    assert_eq!(k.dim(), 1);
    assert!(m.apply(&k.basis()[0]).iter().all(|v| *v == BigRational::from_integer(0.into())));
}
