mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use pauli_ops::models::{
    graph_model, initial_operator, quantum_ising, xx_chain, xxz_2d, xxz_nnn, xzzx_2d, BondTerm, Boundary,
    ModelDescriptor,
};
use pauli_ops::oracle::to_dense;
use pauli_ops::{Operator, Pauli};

use common::max_diff;

fn pauli(l: char) -> DMatrix<Complex64> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let e = match l {
        'X' => [c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
        'Y' => [c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
        'Z' => [c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
        _ => [c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)],
    };
    DMatrix::from_row_slice(2, 2, &e)
}

/// Site 1 is the leftmost Kronecker factor.
fn embed(n: usize, letters: &[(char, usize)]) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for site in 1..=n {
        let l = letters.iter().find(|(_, s)| *s == site).map_or('I', |(l, _)| *l);
        m = m.kronecker(&pauli(l));
    }
    m
}

fn bonds(n: usize, range: usize, periodic: bool) -> Vec<(usize, usize)> {
    let last = if periodic { n } else { n - range };
    (1..=last).map(|i| (i, (i - 1 + range) % n + 1)).collect()
}

fn check(h: &Operator, want: &DMatrix<Complex64>) {
    assert!(max_diff(&to_dense(h).unwrap().matrix, want) < 1e-13);
}

#[test]
fn xx_and_ising_match_hand_built() {
    for n in 2..=4 {
        for periodic in [false, true] {
            let bc = if periodic { Boundary::Periodic } else { Boundary::Open };
            let dim = 1 << n;
            let mut xx = DMatrix::zeros(dim, dim);
            let mut ising = DMatrix::zeros(dim, dim);
            for (i, j) in bonds(n, 1, periodic) {
                xx += embed(n, &[('X', i), ('X', j)]) + embed(n, &[('Y', i), ('Y', j)]);
                ising += embed(n, &[('X', i), ('X', j)]);
            }
            for i in 1..=n {
                ising += embed(n, &[('Z', i)]) * Complex64::from(-1.05) + embed(n, &[('X', i)]) * Complex64::from(0.5);
            }
            check(&xx_chain(n, bc).unwrap(), &xx);
            check(&quantum_ising(n, 0.5, bc).unwrap(), &ising);
        }
    }
}

#[test]
fn xxz_nnn_matches_hand_built() {
    let (n, delta, gamma) = (4, 2.0, 0.5);
    let dim = 1 << n;
    let mut h = DMatrix::zeros(dim, dim);
    for (range, scale) in [(1, 1.0), (2, gamma)] {
        for (i, j) in bonds(n, range, true) {
            let s = Complex64::from(scale);
            h += (embed(n, &[('X', i), ('X', j)]) + embed(n, &[('Y', i), ('Y', j)])) * s;
            h += embed(n, &[('Z', i), ('Z', j)]) * (s * delta);
        }
    }
    check(&xxz_nnn(n, delta, gamma, Boundary::Periodic).unwrap(), &h);
}

#[test]
fn grid_models_match_hand_built() {
    // 2x2 open grid: sites 1 2 / 3 4
    let n = 4;
    let xzzx = embed(n, &[('X', 1), ('Z', 2)])
        + embed(n, &[('X', 3), ('Z', 4)])
        + embed(n, &[('Z', 1), ('X', 3)])
        + embed(n, &[('Z', 2), ('X', 4)]);
    check(&xzzx_2d(2, 2, Boundary::Open).unwrap(), &xzzx);
    let mut xxz = DMatrix::zeros(16, 16);
    for (i, j) in [(1, 2), (3, 4), (1, 3), (2, 4)] {
        xxz += embed(n, &[('X', i), ('X', j)]) + embed(n, &[('Y', i), ('Y', j)]);
        xxz += embed(n, &[('Z', i), ('Z', j)]) * Complex64::from(0.5);
    }
    check(&xxz_2d(2, 2, 0.5, Boundary::Open).unwrap(), &xxz);
}

#[test]
fn model_term_counts() {
    for n in [5, 8, 12] {
        assert_eq!(xxz_nnn::<u64>(n, 2.0, 0.5, Boundary::Periodic).unwrap().len(), 6 * n);
    }
    assert_eq!(xzzx_2d::<u64>(2, 2, Boundary::Open).unwrap().len(), 4);
    assert_eq!(xxz_2d::<u64>(2, 2, 0.5, Boundary::Open).unwrap().len(), 12);
    assert_eq!(xzzx_2d::<u64>(3, 3, Boundary::Periodic).unwrap().len(), 18);
}

#[test]
fn graph_ring_equals_periodic_chain() {
    let n = 7;
    let edges = bonds(n, 1, true);
    let terms = [
        BondTerm {
            letters: [Pauli::X, Pauli::X],
            coeff: 1.0,
        },
        BondTerm {
            letters: [Pauli::Y, Pauli::Y],
            coeff: 1.0,
        },
    ];
    let g: Operator = graph_model(n, &edges, &terms, &[]).unwrap();
    assert_eq!(g, xx_chain(n, Boundary::Periodic).unwrap());
}

#[test]
fn descriptor_defaults() {
    let d = ModelDescriptor::chain("xxz_nnn", 6);
    assert_eq!(d.effective_boundary(), Boundary::Periodic);
    let h: Operator = d.build().unwrap();
    assert_eq!(h, xxz_nnn(6, 2.0, 0.5, Boundary::Periodic).unwrap());

    let g = ModelDescriptor::grid("xxz_2d", 2, 3);
    assert_eq!(g.effective_boundary(), Boundary::Open);
    let h: Operator = g.build().unwrap();
    assert_eq!(h, xxz_2d(2, 3, 0.5, Boundary::Open).unwrap());

    assert_eq!(ModelDescriptor::chain("xx", 4).effective_boundary(), Boundary::Open);
    assert!(ModelDescriptor::grid("xzzx_2d", 2, 2).build::<u64>().is_ok());
    assert!(ModelDescriptor::chain("xzzx_2d", 4).build::<u64>().is_err());
    assert!(ModelDescriptor::chain("nope", 4).build::<u64>().is_err());
}

#[test]
fn descriptor_json_round_trip() {
    let text = r#"{"model": "quantum_ising", "N": 5, "boundary": "periodic", "params": {"h_x": 0.25},
        "defects": [{"letter": "X", "site": 3}]}"#;
    let d: ModelDescriptor = serde_json::from_str(text).unwrap();
    let back: ModelDescriptor = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(d, back);
    let h: Operator = d.build().unwrap();
    let mut want: Operator = quantum_ising(5, 0.25, Boundary::Periodic).unwrap();
    want.add_term(1.0, &[("X", 3)]).unwrap();
    assert!(h.max_abs_diff(&want) < 1e-15);
}

#[test]
fn initial_operators_match_hand_built() {
    let n = 4;
    let mut current = DMatrix::zeros(16, 16);
    for (i, j) in bonds(n, 1, false) {
        current += embed(n, &[('X', i), ('Y', j)]) - embed(n, &[('Y', i), ('X', j)]);
    }
    check(
        &initial_operator("energy_current_xxx", n, Boundary::Open).unwrap(),
        &current,
    );
    let mut sum_x = DMatrix::zeros(16, 16);
    for i in 1..=n {
        sum_x += embed(n, &[('X', i)]);
    }
    check(&initial_operator("sumX", n, Boundary::Open).unwrap(), &sum_x);
    check(
        &initial_operator("Y3", n, Boundary::Open).unwrap(),
        &embed(n, &[('Y', 3)]),
    );
}
