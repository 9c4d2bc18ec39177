//! Lanczos coefficients for an integrable and a chaotic chain.
//!
//! The XX chain with `O_0 = Σ X_i` gives a bounded sequence, the quantum
//! Ising chain gives `b_n` that keep growing.

use std::time::Instant;

use pauli_ops::krylov::lanczos;
use pauli_ops::models::{initial_operator, quantum_ising, xx_chain, Boundary};
use pauli_ops::{Operator, TrimPolicy};

fn report(name: &str, h: &Operator, o: &Operator, steps: usize) -> pauli_ops::Result<()> {
    let start = Instant::now();
    let run = lanczos(h, o, steps, &TrimPolicy::none())?;
    println!("{name} ({:.2?})", start.elapsed());
    for (i, b) in run.b.iter().enumerate() {
        println!("  n={:<2} b_n={:<12.8} strings={}", i + 1, b, run.terms[i + 1]);
    }
    Ok(())
}

fn main() -> pauli_ops::Result<()> {
    let n = 12;
    let steps = 10;

    let h = xx_chain(n, Boundary::Open)?;
    let o = initial_operator("sumX", n, Boundary::Open)?;
    report("XX, O = sum X", &h, &o, steps)?;

    let h = quantum_ising(n, 0.5, Boundary::Open)?;
    let o = initial_operator("ising_energy", n, Boundary::Open)?;
    report("quantum Ising, h_X = 0.5", &h, &o, steps)?;
    Ok(())
}
