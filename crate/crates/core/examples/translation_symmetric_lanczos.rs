//! Lanczos on a periodic chain, storing one representative per translation orbit.

use std::time::Instant;

use pauli_ops::krylov::lanczos;
use pauli_ops::models::{initial_operator, xxz_nnn, Boundary};
use pauli_ops::{Operator, SymOperator1D, TrimPolicy};

fn main() -> pauli_ops::Result<()> {
    let n = 16;
    let h: Operator = xxz_nnn(n, 2.0, 0.5, Boundary::Periodic)?;
    let o = initial_operator("sumX", n, Boundary::Periodic)?;
    let policy = TrimPolicy::max_strings(1 << 14);

    let start = Instant::now();
    let sym = lanczos(
        &SymOperator1D::from_operator(&h)?,
        &SymOperator1D::from_operator(&o)?,
        20,
        &policy,
    )?;
    println!("N = {n}, M = 2^14 representatives ({:.2?})", start.elapsed());
    for (i, b) in sym.b.iter().enumerate() {
        println!("  n={:<2} b_n={:<12.8} representatives={}", i + 1, b, sym.terms[i + 1]);
    }
    Ok(())
}
