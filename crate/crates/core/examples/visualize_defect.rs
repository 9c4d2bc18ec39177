//! Operator growth in the XX chain with a single X defect.
//!
//! Starting from `X` on site 1, each Lanczos step maps one string to one
//! string until the front reaches the defect on site 4; from there the count
//! grows.

use pauli_ops::krylov::lanczos_verbose;
use pauli_ops::models::{xx_chain, Boundary};
use pauli_ops::Operator;

fn main() -> pauli_ops::Result<()> {
    let n = 10;
    let mut h: Operator = xx_chain(n, Boundary::Open)?;
    h.add_term(1.0, &[("X", 4)])?;
    let o = Operator::from_letters(n, &[("X", 1)])?;

    let (run, dump) = lanczos_verbose(&h, &o, 7)?;
    print!("{dump}");
    println!("strings per step: {:?}", run.terms);
    println!("b_n: {:?}", run.b);
    Ok(())
}
