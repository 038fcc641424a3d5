//! Property tests for the algebraic invariants: subspace calculus laws,
//! Salamon round trips, bracket bilinearity, the ±-projections, and the
//! ideal-in-center lemma on randomized 2-step tables.

use std::collections::BTreeMap;

use proptest::prelude::*;

use nilherm::complex::ComplexStructure;
use nilherm::hermitian::{minus_part, plus_part};
use nilherm::lie::{parse_salamon, print_salamon, LieAlgebra};
use nilherm::linalg::{rank_and_kernel, RMatrix, Subspace};
use nilherm::rational::{rat, Rational};

fn small_vec(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(-3i64..=3, dim).prop_map(|v| v.into_iter().map(rat).collect())
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RMatrix> {
    proptest::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| RMatrix::from_fn(rows, cols, |i, j| rat(v[i * cols + j])))
}

fn subspace(dim: usize) -> impl Strategy<Value = Subspace> {
    proptest::collection::vec(small_vec(dim), 0..=dim)
        .prop_map(move |vs| Subspace::from_spanning(dim, &vs))
}

/// Random SPD gram: M^t M + 2I.
fn gram(dim: usize) -> impl Strategy<Value = RMatrix> {
    small_matrix(dim, dim)
        .prop_map(move |m| &(&m.transpose() * &m) + &RMatrix::identity(dim).scale(&rat(2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grassmann_identity(a in subspace(5), b in subspace(5)) {
        let sum = a.sum(&b);
        let int = a.intersection(&b);
        prop_assert_eq!(sum.dim() + int.dim(), a.dim() + b.dim());
        prop_assert!(sum.contains(&a) && sum.contains(&b));
        prop_assert!(a.contains(&int) && b.contains(&int));
    }

    #[test]
    fn double_orthogonal_complement(v in subspace(4), g in gram(4)) {
        let perp = v.orthogonal_complement(Some(&g)).unwrap();
        let back = perp.orthogonal_complement(Some(&g)).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn normal_form_ignores_spanning_presentation(
        vs in proptest::collection::vec(small_vec(4), 1..=4),
        scale in 1i64..=3,
    ) {
        // Scaling and summing spanning vectors leaves the subspace, hence the
        // canonical basis, unchanged.
        let s1 = Subspace::from_spanning(4, &vs);
        let mut vs2: Vec<Vec<Rational>> = vs
            .iter()
            .map(|v| v.iter().map(|x| x * rat(scale)).collect())
            .collect();
        if vs.len() > 1 {
            let summed: Vec<Rational> = vs[0]
                .iter()
                .zip(&vs[1])
                .map(|(a, b)| a + b)
                .collect();
            vs2.push(summed);
        }
        let s2 = Subspace::from_spanning(4, &vs2);
        prop_assert_eq!(s1.basis(), s2.basis());
    }

    #[test]
    fn rank_nullity_and_exact_kernel(m in small_matrix(4, 6)) {
        let (rank, ker) = rank_and_kernel(&m);
        prop_assert_eq!(rank + ker.dim(), 6);
        prop_assert!((&m * ker.basis()).is_zero());
    }

    #[test]
    fn bracket_is_bilinear_and_alternating(
        x in small_vec(6),
        y in small_vec(6),
        c in -3i64..=3,
    ) {
        let l = nilherm::construct::free_two_step(3).unwrap();
        let xy = l.bracket(&x, &y).unwrap();
        let yx = l.bracket(&y, &x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| *a == -b));
        let xx = l.bracket(&x, &x).unwrap();
        prop_assert!(xx.iter().all(|t| t == &Rational::from_integer(0.into())));
        // Scaling the first argument scales the bracket.
        let cx: Vec<Rational> = x.iter().map(|t| t * rat(c)).collect();
        let cxy = l.bracket(&cx, &y).unwrap();
        prop_assert!(cxy.iter().zip(&xy).all(|(a, b)| *a == b * rat(c)));
    }

    #[test]
    fn salamon_round_trip_on_random_two_step_tables(
        coeffs in proptest::collection::vec((-2i64..=2, -2i64..=2), 6),
    ) {
        // Brackets from pairs of e1..e4 into e5,e6 are always 2-step tables
        // with single-digit indices, so they parse and print.
        let pairs = [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut table = BTreeMap::new();
        for ((c5, c6), (i, j)) in coeffs.iter().zip(pairs.iter()) {
            if *c5 == 0 && *c6 == 0 {
                continue;
            }
            let mut v = vec![Rational::from_integer(0.into()); 6];
            v[4] = rat(*c5);
            v[5] = rat(*c6);
            table.insert((*i, *j), v);
        }
        let l = LieAlgebra::new(6, table, None).unwrap();
        let printed = print_salamon(&l).unwrap();
        let back = parse_salamon(&printed, 6).unwrap();
        prop_assert_eq!(l.brackets(), back.brackets());
        // n' ⊆ z ⟺ step ≤ 2 on these tables.
        let nprime = l.commutator_ideal();
        let center = l.center();
        let step = l.nilpotency_step().unwrap();
        prop_assert_eq!(center.contains(&nprime), step <= 2);
    }

    #[test]
    fn plus_minus_projection_laws(t in small_matrix(4, 4)) {
        let j = ComplexStructure::standard(4).matrix().clone();
        let p = plus_part(&t, &j).unwrap();
        let m = minus_part(&t, &j).unwrap();
        prop_assert_eq!(&p + &m, t.clone());
        prop_assert!(p.commutator(&j).is_zero());
        prop_assert!((&(&m * &j) + &(&j * &m)).is_zero());
        // Skewness is preserved by both projections.
        let skew = &t - &t.transpose();
        let sp = plus_part(&skew, &j).unwrap();
        let sm = minus_part(&skew, &j).unwrap();
        prop_assert_eq!(sp.transpose(), -&sp);
        prop_assert_eq!(sm.transpose(), -&sm);
        // (J T)± = J (T±).
        let jt = &j * &t;
        prop_assert_eq!(plus_part(&jt, &j).unwrap(), &j * &p);
        prop_assert_eq!(minus_part(&jt, &j).unwrap(), &j * &m);
    }

    #[test]
    fn ideals_missing_the_commutator_are_central(
        vs in proptest::collection::vec(small_vec(6), 1..=3),
    ) {
        // In a 2-step algebra, an ideal meeting n' trivially lies in the
        // center. Random spans rarely form ideals; the implication is what
        // matters.
        let l = parse_salamon("(0,0,0,0,12,34)", 6).unwrap();
        let a = Subspace::from_spanning(6, &vs);
        let nprime = l.commutator_ideal();
        if nilherm::complex::is_ideal(&l, &a) && a.intersection(&nprime).is_zero() {
            prop_assert!(l.center().contains(&a));
        }
    }
}

#[test]
fn ideal_lemma_exercised_on_central_spans() {
    // Construct ideals with a ∩ n' = 0 explicitly: central spans transverse
    // to n' are always ideals, so the lemma's hypothesis is satisfiable.
    let l = parse_salamon("(0,0,0,0,12,34)", 6).unwrap();
    let center = l.center(); // span(e5, e6) = n' here, so use R + h3 instead.
    assert_eq!(center.dim(), 2);

    let l2 = LieAlgebra::abelian(2).direct_sum(&nilherm::construct::heisenberg(1).unwrap());
    let a = Subspace::from_spanning(5, &[vec![rat(1), rat(2), rat(0), rat(0), rat(0)]]);
    assert!(nilherm::complex::is_ideal(&l2, &a));
    assert!(a.intersection(&l2.commutator_ideal()).is_zero());
    assert!(l2.center().contains(&a));
}
