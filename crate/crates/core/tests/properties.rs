mod common;

use std::collections::BTreeSet;

use common::{ctx, q, random_poly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vvjack::combinatorics::{
    compositions, enumerate_rsyt, floor_filling, inv_composition, jack_count_series, root_sink, Filling,
};
use vvjack::hermitian::{expand_in_nsjp, form, norm, reconstruct, recursive_norm};
use vvjack::operators::{cherednik, cherednik_alt, elementary};
use vvjack::symmetric_jack::{column_strict_labels, component, jack, jack_norm, jack_norm_direct};
use vvjack::yang_baxter::edge_target;
use vvjack::{Basis, Edge, JackEngine, Partition, Permutation, Poly, Representation};
use vvjack::yang_baxter::Strategy as Descent;

fn kappa_of(k: usize) -> BigRational {
    [q(1, 10), q(-1, 7), q(2, 17)][k % 3].clone()
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).map(|i| i + 1).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn point_action_is_right_exponent_action_is_left(a in perm_strategy(5), b in perm_strategy(5)) {
        let x: Vec<i64> = (10..15).collect();
        prop_assert_eq!(a.act_on_point(&x).to_vec(), a.act_on_point(&x));
        prop_assert_eq!((&a * &b).act_on_point(&x), b.act_on_point(&a.act_on_point(&x)));
        prop_assert_eq!((&a * &b).act_on_exponents(&x), a.act_on_exponents(&b.act_on_exponents(&x)));
        prop_assert_eq!(Permutation::from_one_line(&a.one_line()).unwrap(), a.clone());
        prop_assert_eq!(a.reduced_word().len(), a.length());
    }

    #[test]
    fn representation_is_a_homomorphism(a in perm_strategy(5), b in perm_strategy(5), s in 0usize..3) {
        let shape = Partition::new([vec![3, 2], vec![3, 1, 1], vec![2, 2, 1]][s].clone()).unwrap();
        let exact = Representation::<BigRational>::for_shape(&shape, Basis::Unnormalized).unwrap();
        prop_assert_eq!(&*exact.word(&(&a * &b)).unwrap(), &(&*exact.word(&a).unwrap() * &*exact.word(&b).unwrap()));
        let ortho = Representation::<f64>::for_shape(&shape, Basis::Orthonormal).unwrap();
        let m = ortho.word(&a).unwrap();
        let mtm = &m.transpose() * &*m;
        prop_assert!(mtm.max_abs_diff(&vvjack::SquareMatrix::identity(m.dim())) < 1e-12);
    }

    #[test]
    fn group_action_distributes(seed in any::<u64>(), a in perm_strategy(4), b in perm_strategy(4)) {
        let c = ctx(&[2, 1, 1], q(1, 10));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&c, &mut rng, 4, 3);
        let g = random_poly(&c, &mut rng, 4, 3);
        prop_assert_eq!((&f + &g).act(&a).unwrap(), &f.act(&a).unwrap() + &g.act(&a).unwrap());
        prop_assert_eq!(f.act(&(&a * &b)).unwrap(), f.act(&b).unwrap().act(&a).unwrap());
        prop_assert_eq!(f.scale(&q(3, 2)).act(&a).unwrap(), f.act(&a).unwrap().scale(&q(3, 2)));
        prop_assert!(f.terms().all(|(_, _, c)| !c.is_zero()));
    }

    #[test]
    fn e_n_shift_degree(seed in any::<u64>(), d in 0i64..4, m in 0i64..3) {
        let c = ctx(&[2, 2], q(1, 10));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Poly::zero(&c);
        for beta in compositions(4, d).into_iter().take(3) {
            p = &p + &Poly::monomial(&c, &beta, rng.gen_range(0..2));
        }
        let shifted = p.e_n_shift(m);
        prop_assert_eq!(shifted.degree(), vvjack::Degree::Homogeneous(d + 4 * m));
        prop_assert_eq!(shifted.e_n_shift(-m), p);
    }

    #[test]
    fn cherednik_relations(seed in any::<u64>(), s in 0usize..4, k in 0usize..3) {
        let parts = [&[2, 1][..], &[2, 2], &[3, 1], &[2, 1, 1]][s];
        let c = ctx(parts, kappa_of(k));
        let kap = c.kappa().clone();
        let n = c.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&c, &mut rng, 3, 3);
        for i in 1..n {
            let si = |f: &Poly| f.act_simple(i).unwrap();
            let lhs = si(&cherednik(&si(&p), i).unwrap());
            let rhs = &cherednik(&p, i + 1).unwrap() + &si(&p).scale(&kap);
            prop_assert_eq!(lhs, rhs);
            let lhs = cherednik(&si(&p), i).unwrap();
            let rhs = &si(&cherednik(&p, i + 1).unwrap()) + &p.scale(&kap);
            prop_assert_eq!(lhs, rhs);
        }
        for i in 1..=n {
            for j in 1..n {
                if j + 1 != i && j != i {
                    prop_assert_eq!(cherednik(&p.act_simple(j).unwrap(), i).unwrap(), cherednik(&p, i).unwrap().act_simple(j).unwrap());
                }
            }
            prop_assert_eq!(cherednik(&p, i).unwrap(), cherednik_alt(&p, i).unwrap());
        }
        let u1 = cherednik(&cherednik(&p, 1).unwrap(), 2).unwrap();
        let u2 = cherednik(&cherednik(&p, 2).unwrap(), 1).unwrap();
        prop_assert_eq!(u1, u2);
    }

    #[test]
    fn euler_operator_sum(seed in any::<u64>(), k in 0usize..3) {
        let c = ctx(&[3, 1], kappa_of(k));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&c, &mut rng, 4, 3);
        let mut lhs = Poly::zero(&c);
        let mut rhs = p.scale(&(q(4, 1) + c.kappa().clone() * q(c.shape().content_sum(), 1)));
        for i in 1..=4 {
            lhs = &lhs + &cherednik(&p, i).unwrap();
            rhs = &rhs + &p.partial_derivative(i).mul_var(i);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn elementary_symmetric_commute_with_simple(seed in any::<u64>(), kk in 1usize..4) {
        let c = ctx(&[2, 1, 1], q(2, 17));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&c, &mut rng, 2, 2);
        for i in 1..4 {
            prop_assert_eq!(elementary(&p.act_simple(i).unwrap(), kk).unwrap(), elementary(&p, kk).unwrap().act_simple(i).unwrap());
        }
    }

    #[test]
    fn form_invariance_and_round_trip(seed in any::<u64>(), w in perm_strategy(3)) {
        let c = ctx(&[2, 1], q(1, 10));
        let e = JackEngine::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&c, &mut rng, 3, 2);
        let g = random_poly(&c, &mut rng, 3, 2);
        prop_assert_eq!(form(&e, &f.act(&w).unwrap(), &g.act(&w).unwrap()).unwrap(), form(&e, &f, &g).unwrap());
        prop_assert_eq!(reconstruct(&e, &expand_in_nsjp(&e, &f).unwrap()).unwrap(), f.clone());
        if !f.is_zero() {
            prop_assert!(form(&e, &f, &f).unwrap() > q(0, 1));
        }
    }
}

/// Column-strict fillings of `shape` with total `n`, by recursion over cells.
fn brute_force_fillings(shape: &Partition, n: i64) -> usize {
    let cells: Vec<(usize, usize)> = shape.cells().collect();
    fn rec(shape: &Partition, cells: &[(usize, usize)], k: usize, rows: &mut Vec<Vec<i64>>, left: i64, out: &mut usize) {
        if k == cells.len() {
            if left == 0 {
                let f = Filling::from_rows(rows.clone()).unwrap();
                if f.is_column_strict() {
                    *out += 1;
                }
            }
            return;
        }
        let (i, _) = cells[k];
        if rows.len() < i {
            rows.push(Vec::new());
        }
        for v in 0..=left {
            rows[i - 1].push(v);
            rec(shape, cells, k + 1, rows, left - v, out);
            rows[i - 1].pop();
        }
        if rows[i - 1].is_empty() {
            rows.pop();
        }
    }
    let mut out = 0;
    rec(shape, &cells, 0, &mut Vec::new(), n, &mut out);
    out
}

#[test]
fn jack_count_matches_brute_force() {
    for size in 2..=6 {
        for shape in Partition::all_of(size) {
            let series = jack_count_series(&shape, 8, false);
            let top = if size == 6 { 6 } else { 8 };
            for n in 0..=top {
                assert_eq!(series[n] as usize, brute_force_fillings(&shape, n as i64), "{shape:?} n={n}");
            }
        }
    }
}

#[test]
fn rsyt_counts_contents_and_norms() {
    for size in 1..=8 {
        for shape in Partition::all_of(size) {
            let ts = enumerate_rsyt(&shape);
            assert_eq!(ts.len() as u64, shape.hooks_and_dim().dim);
            let contents: BTreeSet<Vec<i64>> = ts.iter().map(|t| t.content_vector().to_vec()).collect();
            assert_eq!(contents.len(), ts.len());
            for t in &ts {
                assert_eq!(t.content_vector().iter().sum::<i64>(), shape.content_sum());
                let n0: BigRational = t.norm0();
                assert_eq!(n0, t.c_eps::<BigRational>(1) * t.c_eps::<BigRational>(-1));
            }
        }
    }
}

#[test]
fn root_sink_extremal_inv() {
    for size in 2..=6 {
        for shape in Partition::all_of(size) {
            if shape.is_one_dimensional() {
                continue;
            }
            let c = ctx(shape.parts(), q(1, 100));
            let basis = c.basis().clone();
            for n in 0..=5 {
                for (lambda, sink) in column_strict_labels(&c, n, false) {
                    let comp = component(&c, &lambda, sink).unwrap();
                    let f = floor_filling(&lambda, basis.tableau(sink)).unwrap();
                    let (tr, ts) = root_sink(&f).unwrap();
                    assert_eq!(floor_filling(&lambda, &tr).unwrap(), f);
                    let score = |b: &[i64], t: usize| inv_composition(b) + basis.tableau(t).inv();
                    let all: Vec<usize> = comp.labels.iter().map(|(b, t)| score(b, *t)).collect();
                    let lminus = vvjack::combinatorics::sorted_asc(&lambda);
                    assert_eq!(score(&lminus, basis.index_of(&tr).unwrap()), *all.iter().max().unwrap());
                    assert_eq!(score(&lambda, basis.index_of(&ts).unwrap()), *all.iter().min().unwrap());
                    let tinv: Vec<usize> = comp.tableaux.iter().map(|&t| basis.tableau(t).inv()).collect();
                    assert_eq!(tr.inv(), *tinv.iter().max().unwrap());
                    assert_eq!(ts.inv(), *tinv.iter().min().unwrap());
                }
            }
        }
    }
}

#[test]
fn norms_positive_at_window_edges() {
    for parts in common::SHAPES {
        let shape = Partition::new(parts.to_vec()).unwrap();
        let h = shape.max_hook() as i64;
        for k in [q(1, h + 1), q(-1, h + 1), q(1, 2 * h), q(-1, 2 * h)] {
            let c = ctx(parts, k);
            let e = JackEngine::new(&c);
            for d in 0..=3 {
                for a in compositions(c.n(), d) {
                    for t in 0..c.dim() {
                        let v = norm(&c, &a, t).unwrap();
                        assert!(v > q(0, 1), "{parts:?} {a:?} T{t}");
                        if c.n() <= 4 {
                            assert_eq!(v, recursive_norm(&e, &a, t).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn step_reverse_relation_and_strategies() {
    let c = ctx(&[2, 1, 1], q(2, 17));
    let first = JackEngine::with_strategy(&c, Descent::FirstDescent);
    let last = JackEngine::with_strategy(&c, Descent::LastDescent);
    for d in 0..=3 {
        for a in compositions(4, d) {
            for t in 0..c.dim() {
                let z = first.nsjp(&a, t).unwrap();
                assert_eq!(*z, *last.nsjp(&a, t).unwrap());
                for i in 1..4 {
                    if a[i - 1] < a[i] {
                        let (b, t2, coef) = edge_target(&c, &a, t, Edge::Step(i)).unwrap();
                        let coef = coef.unwrap();
                        let lhs = z.act_simple(i).unwrap();
                        let rhs = &*first.nsjp(&b, t2).unwrap() + &z.scale(&coef);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn jack_norm_three_ways_up_to_five_variables() {
    for size in 3..=5 {
        for shape in Partition::all_of(size) {
            if shape.is_one_dimensional() {
                continue;
            }
            let c = ctx(shape.parts(), q(1, 10));
            let e = JackEngine::new(&c);
            for n in 0..=5 {
                for (lambda, sink) in column_strict_labels(&c, n, false) {
                    let comp = component(&c, &lambda, sink).unwrap();
                    assert_eq!(jack_norm(&e, &lambda, sink).unwrap(), jack_norm_direct(&c, &comp).unwrap(), "{shape:?} {lambda:?}");
                }
            }
        }
    }
}

#[test]
fn distinct_jacks_per_degree() {
    let c = ctx(&[2, 1], q(1, 10));
    let e = JackEngine::new(&c);
    let series = jack_count_series(c.shape(), 5, false);
    for n in 0..=5 {
        let labels = column_strict_labels(&c, n, false);
        let mut polys: Vec<Poly> = Vec::new();
        for (lambda, sink) in &labels {
            let j = jack(&e, lambda, *sink).unwrap();
            assert!(j.poly.coefficient_of(lambda, *sink).is_one());
            assert!(polys.iter().all(|p| *p != j.poly));
            polys.push(j.poly);
        }
        assert_eq!(polys.len() as u128, series[n as usize]);
    }
}

#[test]
fn homogeneity_of_operators() {
    let c = ctx(&[2, 2], q(1, 10));
    let p = Poly::from_terms(&c, [(vec![2, 1, 0, 0], 0, q(1, 1)), (vec![0, 1, 1, 1], 1, q(-2, 3))]);
    for i in 1..=4 {
        assert_eq!(vvjack::operators::dunkl(&p, i).unwrap().degree(), vvjack::Degree::Homogeneous(2));
        assert_eq!(cherednik(&p, i).unwrap().degree(), vvjack::Degree::Homogeneous(3));
    }
}
