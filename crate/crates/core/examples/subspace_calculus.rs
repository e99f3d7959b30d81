//! Exact subspace arithmetic: row reduction, kernels, sums and
//! intersections, quotients with coset representatives, the
//! injectivity/surjectivity test for natural maps between quotients, and
//! picking a vector outside two proper subspaces over `𝔽_2`.
//!
//! ```text
//! cargo run --example subspace_calculus
//! ```

use specseq::exactlin::{avoid_two_subspaces, natural_map, Field, Matrix, PrimeField, QuotientMap, Rationals, Subspace};

fn show<F: Field>(field: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| field.format(x)).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    let q = Rationals;
    let m = Matrix::from_rows(
        q,
        3,
        vec![
            vec![q.parse("1").unwrap(), q.parse("2").unwrap(), q.parse("3").unwrap()],
            vec![q.parse("2").unwrap(), q.parse("4").unwrap(), q.parse("7/2").unwrap()],
        ],
    )
    .unwrap();
    let rref = m.rref();
    println!("M = {m}\nrref(M) = {} with pivots {:?}", rref.reduced, rref.pivots);
    println!("rank {} + nullity {} = {}", m.rank(), m.kernel().dim(), m.cols());

    let e = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
    let plane_xy = Subspace::span(q, 3, [e(&[1, 0, 0]), e(&[0, 1, 0])]);
    let plane_yz = Subspace::span(q, 3, [e(&[0, 1, 0]), e(&[0, 0, 1])]);
    let meet = plane_xy.intersect(&plane_yz);
    let join = plane_xy.sum(&plane_yz);
    println!("dim(U ∩ V) = {}, dim(U + V) = {}", meet.dim(), join.dim());
    println!("U ∩ V is spanned by {}", show(&q, &meet.basis()[0]));

    let line = Subspace::span(q, 3, [e(&[1, 1, 0])]);
    let quotient = QuotientMap::new(&plane_xy, &line).unwrap();
    println!("dim(U / line) = {}", quotient.dim());
    let class = quotient.reduce(&e(&[3, 5, 0]));
    println!("(3,5,0) has coordinates {} in U / line", show(&q, &class));

    // G/H → G'/H' for G = U, H = line, G' = Q^3 and H' = line + z-axis.
    let full = Subspace::full(q, 3);
    let wider = line.sum(&Subspace::span(q, 3, [e(&[0, 0, 1])]));
    let map = natural_map(&plane_xy, &line, &full, &wider).unwrap();
    println!("U/line → Q^3/(line + z): injective {}, surjective {}", map.injective, map.surjective);
    let map = natural_map(&line, &line, &full, &wider).unwrap();
    println!("line/line → Q^3/(line + z): injective {}, surjective {}", map.injective, map.surjective);

    // Over F_2 the two coordinate lines of the plane are proper subspaces,
    // and the only vector avoiding both is their sum.
    let f2 = PrimeField::new(2).unwrap();
    let e2 = |v: &[i64]| v.iter().map(|&x| f2.from_i64(x)).collect::<Vec<_>>();
    let plane = Subspace::full(f2.clone(), 2);
    let w1 = Subspace::span(f2.clone(), 2, [e2(&[1, 0])]);
    let w2 = Subspace::span(f2.clone(), 2, [e2(&[0, 1])]);
    let x = avoid_two_subspaces(&plane, &w1, &w2).expect("both lines are proper");
    println!("over F2, {} avoids both coordinate lines", show(&f2, &x));
}
