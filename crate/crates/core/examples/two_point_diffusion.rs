//! Spreading of a `Z` excitation: `S(i, t) = tr(Z_i(t) Z_src) / 2^N` on every site,
//! its variance in the separation, and the sum rule `Σ_i S(i, t)`.

use pauli_ops::dynamics::{evolve_two_point, EvolveConfig};
use pauli_ops::models::{xxz_nnn, Boundary};
use pauli_ops::Operator;

fn main() -> pauli_ops::Result<()> {
    let n = 12;
    let source = n / 2;
    let h: Operator = xxz_nnn(n, 2.0, 0.5, Boundary::Periodic)?;
    let sites: Vec<usize> = (1..=n).collect();
    let cfg = EvolveConfig::new(0.05, 4.0).with_trim(1 << 12).with_noise(0.05);
    let trace = evolve_two_point(&h, source, &sites, &cfg)?;

    println!("{:>6} {:>10} {:>10} {:>10}", "t", "S(src,t)", "variance", "sum");
    for s in trace.samples.iter().step_by(10) {
        let total: f64 = s.two_point.iter().map(|c| c.re).sum();
        let var: f64 = trace
            .separations
            .iter()
            .zip(&s.two_point)
            .map(|(d, c)| (*d as f64).powi(2) * c.re)
            .sum::<f64>()
            / s.particle_norm;
        let own = s.two_point[source - 1].re;
        println!("{:>6.2} {:>10.5} {:>10.4} {:>10.5}", s.t, own, var, total);
    }
    Ok(())
}
