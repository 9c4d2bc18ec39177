#![allow(dead_code)]

use num_complex::Complex64;
use pauli_ops::{Operator, PauliTerm};
use rand::Rng;

pub fn random_operator<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> Operator {
    let mut op = Operator::new(n);
    let k = rng.random_range(1..=max_terms);
    let full = 1u64 << n;
    for _ in 0..k {
        let t = PauliTerm::new(rng.random_range(0..full), rng.random_range(0..full));
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        op.insert(t, c);
    }
    op
}

/// `Σ_k T_k(op)`, which is translation invariant by construction.
pub fn symmetrize(op: &Operator) -> Operator {
    let n = op.n();
    let mut out = Operator::new(n);
    for (t, c) in op.iter() {
        for k in 0..n {
            out.insert(t.translate(k, n), *c);
        }
    }
    out.compress()
}

pub fn max_diff(a: &nalgebra::DMatrix<Complex64>, b: &nalgebra::DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Least-squares line `y = a + b x`; returns `(a, b, r2)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (my - slope * mx, slope, r2)
}
