//! Infinite-temperature autocorrelation of `Z_1` under the next-nearest XXZ chain,
//! with truncation and depolarizing noise.

use pauli_ops::dynamics::{evolve_autocorrelation, EvolveConfig};
use pauli_ops::models::{initial_operator, xxz_nnn, Boundary};
use pauli_ops::Operator;

fn main() -> pauli_ops::Result<()> {
    let n = 14;
    let h: Operator = xxz_nnn(n, 2.0, 0.5, Boundary::Periodic)?;
    let o = initial_operator("Z1", n, Boundary::Periodic)?;
    let cfg = EvolveConfig::new(0.05, 6.0).with_trim(1 << 12).with_noise(0.05);
    let trace = evolve_autocorrelation(&h, &o, &cfg)?;

    println!("{:>6} {:>12} {:>8} {:>12}", "t", "S(t)", "strings", "discarded");
    for s in trace.samples.iter().step_by(10) {
        println!(
            "{:>6.2} {:>12.6} {:>8} {:>12.3e}",
            s.t, s.autocorrelation.re, s.terms, s.discarded_norm
        );
    }
    Ok(())
}
