//! Cross-check the sparse Pauli algebra against dense matrices on a small chain.

use pauli_ops::dynamics::{evolve_autocorrelation, EvolveConfig};
use pauli_ops::krylov::lanczos;
use pauli_ops::models::{initial_operator, quantum_ising, Boundary};
use pauli_ops::oracle::{dense_heisenberg, dense_lanczos, to_dense};
use pauli_ops::{Operator, TrimPolicy};

fn main() -> pauli_ops::Result<()> {
    let n = 6;
    let h: Operator = quantum_ising(n, 0.5, Boundary::Open)?;
    let o = initial_operator("ising_energy", n, Boundary::Open)?;

    let sparse = lanczos(&h, &o, 8, &TrimPolicy::none())?.b;
    let dense = dense_lanczos(&h, &o, 8)?;
    let err = sparse
        .iter()
        .zip(&dense)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("lanczos: max |b_sparse - b_dense| = {err:.2e}");

    let p = h.product(&o)?;
    let err = to_dense(&p)?.max_abs_diff(&to_dense(&h)?.product(&to_dense(&o)?));
    println!("product: max entry error = {err:.2e}");

    let z = initial_operator("Z3", n, Boundary::Open)?;
    let trace = evolve_autocorrelation(&h, &z, &EvolveConfig::new(0.01, 1.0))?;
    let last = trace.samples.last().unwrap();
    let exact = dense_heisenberg(&h, &z, last.t)?
        .product(&to_dense(&z)?)
        .trace_normalized();
    println!(
        "S(t = {}) rk4 = {:.10}, exact = {:.10}",
        last.t, last.autocorrelation.re, exact.re
    );
    Ok(())
}
