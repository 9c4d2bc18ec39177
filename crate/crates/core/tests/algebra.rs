mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use pauli_ops::oracle::{from_dense, string_matrix, to_dense};
use pauli_ops::{Operator, PauliTerm, TrimPolicy};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{max_diff, random_operator};

fn term(n: usize) -> impl Strategy<Value = PauliTerm> {
    let full = 1u64 << n;
    (0..full, 0..full).prop_map(|(v, w)| PauliTerm::new(v, w))
}

fn operator(n: usize, max_terms: usize) -> impl Strategy<Value = Operator> {
    prop::collection::vec((term(n), -1.0..1.0f64, -1.0..1.0f64), 1..=max_terms).prop_map(move |ts| {
        let mut op = Operator::new(n);
        for (t, re, im) in ts {
            op.insert(t, Complex64::new(re, im));
        }
        op
    })
}

#[test]
fn string_products_match_dense_exhaustively() {
    for n in 1..=3usize {
        let full = 1u64 << n;
        for v1 in 0..full {
            for w1 in 0..full {
                let a = PauliTerm::new(v1, w1);
                let ma = string_matrix(&a, n);
                for v2 in 0..full {
                    for w2 in 0..full {
                        let b = PauliTerm::new(v2, w2);
                        let (p, phase) = a.product(&b);
                        let want = &ma * string_matrix(&b, n);
                        let got = string_matrix(&p, n) * Complex64::new(phase.as_f64(), 0.0);
                        assert_eq!(got, want, "{a:?} * {b:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn string_products_match_dense_n4() {
    // 65536 pairs at N = 4
    let n = 4;
    let mats: Vec<_> = (0..256u64)
        .map(|k| {
            let t = PauliTerm::new(k >> 4, k & 15);
            (t, string_matrix(&t, n))
        })
        .collect();
    for (a, ma) in &mats {
        for (b, mb) in &mats {
            let (p, phase) = a.product(b);
            let got = string_matrix(&p, n) * Complex64::new(phase.as_f64(), 0.0);
            assert_eq!(got, ma * mb);
        }
    }
}

#[test]
fn pauli_letters_compose_like_matrices() {
    let op = |l: &str| Operator::<u64>::from_letters(1, &[(l, 1)]).unwrap();
    let i = Complex64::new(0.0, 1.0);
    // XY = iZ, YZ = iX, ZX = iY
    for (a, b, c) in [("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")] {
        let prod = op(a).product(&op(b)).unwrap();
        assert!(prod.max_abs_diff(&op(c).scale(i)) < 1e-15, "{a}{b}");
    }
}

#[test]
fn random_pairs_match_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=4 {
        for _ in 0..300 {
            let a = random_operator(&mut rng, n, 32);
            let b = random_operator(&mut rng, n, 32);
            let (da, db) = (to_dense(&a).unwrap(), to_dense(&b).unwrap());
            assert!(
                max_diff(
                    &to_dense(&a.product(&b).unwrap()).unwrap().matrix,
                    &da.product(&db).matrix
                ) < 1e-12
            );
            assert!((a.trace_normalized() - da.trace_normalized()).norm() < 1e-12);
        }
    }
}

#[test]
fn from_dense_inverts_to_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let a = random_operator(&mut rng, 3, 40);
        let back: Operator = from_dense(&to_dense(&a).unwrap()).unwrap();
        assert!(back.max_abs_diff(&a) < 1e-14);
    }
}

#[test]
fn u128_strings_beyond_64_sites() {
    let n = 100;
    let a = Operator::<u128>::from_letters(n, &[("X", 1), ("Z", 100)]).unwrap();
    let b = Operator::<u128>::from_letters(n, &[("Z", 1), ("X", 100)]).unwrap();
    let c = a.commutator(&b).unwrap();
    // XZ and ZX anticommute on both sites, so the strings commute
    assert!(c.is_empty());
    let p = a.product(&b).unwrap();
    assert_eq!(p.len(), 1);
    let (t, _) = p.iter().next().unwrap();
    assert_eq!(t.to_label(n).chars().next(), Some('Y'));
    assert_eq!(t.to_label(n).chars().last(), Some('Y'));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn term_product_is_associative(a in term(8), b in term(8), c in term(8)) {
        let (ab, p1) = a.product(&b);
        let (ab_c, p2) = ab.product(&c);
        let (bc, q1) = b.product(&c);
        let (a_bc, q2) = a.product(&bc);
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(p1.value() * p2.value(), q1.value() * q2.value());
    }

    #[test]
    fn commutator_phase_vanishes_iff_parities_agree(a in term(8), b in term(8)) {
        let p = (a.w & b.v).count_ones() % 2;
        let q = (a.v & b.w).count_ones() % 2;
        prop_assert_eq!(a.commutator(&b).1.is_zero(), p == q);
    }

    #[test]
    fn product_weight_is_subadditive(a in term(12), b in term(12)) {
        prop_assert!(a.product(&b).0.weight() <= a.weight() + b.weight());
    }

    #[test]
    fn translations_compose(a in term(9), j in 0usize..20, k in 0usize..20) {
        prop_assert_eq!(a.translate(j, 9).translate(k, 9), a.translate((j + k) % 9, 9));
        let s = a.shift_left(9);
        prop_assert_eq!(s.shift_left(9), s);
        prop_assert_eq!(a.translate(k, 9).shift_left(9), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decode_is_a_star_homomorphism(a in operator(3, 20), b in operator(3, 20)) {
        let (da, db) = (to_dense(&a).unwrap(), to_dense(&b).unwrap());
        let prod = to_dense(&a.product(&b).unwrap()).unwrap();
        prop_assert!(max_diff(&prod.matrix, &da.product(&db).matrix) < 1e-12);
        prop_assert!(max_diff(&to_dense(&a.dagger()).unwrap().matrix, &da.adjoint().matrix) < 1e-12);
        prop_assert!((a.norm_lanczos() - da.norm_lanczos()).abs() < 1e-12);
        prop_assert!((a.inner(&b).unwrap() - da.adjoint().product(&db).trace_normalized()).norm() < 1e-12);
    }

    #[test]
    fn trace_of_product(a in operator(4, 32), b in operator(4, 32)) {
        let direct = a.trace_product_normalized(&b).unwrap();
        let via = a.product(&b).unwrap().trace_normalized();
        prop_assert!((direct - via).norm() < 1e-12);
    }

    #[test]
    fn commutator_is_product_difference(a in operator(4, 32), b in operator(4, 32)) {
        let c = a.commutator(&b).unwrap();
        let d = &a.product(&b).unwrap() - &b.product(&a).unwrap();
        prop_assert!(c.max_abs_diff(&d) < 1e-12);
    }

    #[test]
    fn product_term_count_bound(a in operator(6, 30), b in operator(6, 30)) {
        prop_assert!(a.product(&b).unwrap().len() <= a.len() * b.len());
    }

    #[test]
    fn trim_never_grows_norm(a in operator(6, 60), m in 1usize..80) {
        let t = a.trim(&TrimPolicy::max_strings(m));
        prop_assert!(t.norm_lanczos() <= a.norm_lanczos() + 1e-15);
        prop_assert!(t.len() <= m);
        if a.len() <= m {
            prop_assert_eq!(t, a.clone());
        }
    }

    #[test]
    fn trim_keeps_largest(a in operator(6, 60), m in 1usize..40) {
        let t = a.trim(&TrimPolicy::max_strings(m));
        let smallest_kept = t.iter().map(|(_, c)| c.norm()).fold(f64::INFINITY, f64::min);
        for (s, c) in a.iter() {
            if t.get(s) == Complex64::default() {
                prop_assert!(c.norm() <= smallest_kept);
            }
        }
    }

    #[test]
    fn trim_honors_keep_list(a in operator(5, 60), m in 4usize..20) {
        let keep: Vec<PauliTerm> = a.strings().take(3).copied().collect();
        let t = a.trim(&TrimPolicy::max_strings(m).with_keep(keep.clone()));
        for k in &keep {
            prop_assert_eq!(t.get(k), a.get(k));
        }
    }

    #[test]
    fn noise_semigroup(a in operator(6, 40), g1 in 0.0..2.0f64, g2 in 0.0..2.0f64) {
        let lhs = a.add_noise(g1 + g2);
        let rhs = a.add_noise(g1).add_noise(g2);
        for (t, c) in a.iter() {
            prop_assert!((lhs.get(t) - rhs.get(t)).norm() <= 4.0 * f64::EPSILON * c.norm());
        }
    }

    #[test]
    fn noise_matches_dense_channel(a in operator(3, 20), g in 0.0..1.5f64) {
        let dense = to_dense(&a).unwrap().depolarize(g);
        prop_assert!(max_diff(&to_dense(&a.add_noise(g)).unwrap().matrix, &dense.matrix) < 1e-12);
    }
}

#[test]
fn tau_matrices() {
    let c = |re: f64| Complex64::new(re, 0.0);
    let iy = string_matrix(&PauliTerm::<u64>::new(1, 1), 1);
    assert_eq!(iy, DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(0.0)]));
}
