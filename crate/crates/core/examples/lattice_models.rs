//! Hamiltonians beyond the chain: square grids, arbitrary graphs and JSON descriptors.

use pauli_ops::krylov::lanczos;
use pauli_ops::models::{
    graph_model, initial_operator, xxz_2d, xzzx_2d, BondTerm, Boundary, FieldTerm, ModelDescriptor,
};
use pauli_ops::{Operator, Pauli, TrimPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let xzzx: Operator = xzzx_2d(3, 3, Boundary::Periodic)?;
    let xxz: Operator = xxz_2d(3, 3, 0.5, Boundary::Open)?;
    println!("xzzx 3x3 periodic: {} strings", xzzx.len());
    println!("xxz 3x3 open: {} strings", xxz.len());

    // triangle with XX bonds and a Z field
    let tri: Operator = graph_model(
        3,
        &[(1, 2), (2, 3), (3, 1)],
        &[BondTerm {
            letters: [Pauli::X, Pauli::X],
            coeff: 1.0,
        }],
        &[FieldTerm {
            letter: Pauli::Z,
            coeff: 0.3,
        }],
    )?;
    println!("triangle: {tri}");

    let d: ModelDescriptor = serde_json::from_str(r#"{"model": "xxz_2d", "Lx": 4, "Ly": 3, "boundary": "periodic"}"#)?;
    let h: Operator = d.build()?;
    let o = initial_operator("Z1", d.sites()?, Boundary::Open)?;
    let run = lanczos(&h, &o, 8, &TrimPolicy::max_strings(1 << 12))?;
    println!("xxz_2d 4x3, O = Z1: b_n = {:.4?}", run.b);
    Ok(())
}
