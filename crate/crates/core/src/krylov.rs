//! Lanczos recursion on the Liouvillian `L = [H, ·]`.
//!
//! Starting from `O_0 = O / ‖O‖`:
//!
//! ```text
//! b_1 = ‖L O_0‖,               O_1 = L O_0 / b_1
//! A_n = L O_{n-1} - b_{n-1} O_{n-2},  b_n = ‖A_n‖,  O_n = A_n / b_n
//! ```
//!
//! with `‖A‖² = tr(A† A) / 2^N`. No re-orthogonalization is performed. The
//! recursion stops early (natural termination) when `b_n < 1e-12`.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{PauliError, Result};
use crate::operator::{format_coefficient, Operator, TrimPolicy};
use crate::string::{mul_i_pow, Bits};
use crate::symmetric::SymOperator1D;

/// `b_n` below this ends the recursion.
pub const TERMINATION_THRESHOLD: f64 = 1e-12;

/// Operator representation the recursion can run on.
pub trait KrylovOperator: Clone {
    type Bits: Bits;

    fn sites(&self) -> usize;
    /// Number of stored strings.
    fn string_count(&self) -> usize;
    /// `[h, self]`.
    fn liouvillian(&self, h: &Self) -> Result<Self>;
    fn lanczos_norm(&self) -> f64;
    /// `tr(self† other) / 2^N`.
    fn inner_product(&self, other: &Self) -> Result<Complex64>;
    fn scaled(&self, c: f64) -> Self;
    fn add_scaled(&mut self, c: f64, other: &Self) -> Result<()>;
    fn apply_policy(&mut self, policy: &TrimPolicy<Self::Bits>);
}

impl<B: Bits> KrylovOperator for Operator<B> {
    type Bits = B;

    fn sites(&self) -> usize {
        self.n()
    }
    fn string_count(&self) -> usize {
        self.len()
    }
    fn liouvillian(&self, h: &Self) -> Result<Self> {
        h.commutator(self)
    }
    fn lanczos_norm(&self) -> f64 {
        self.norm_lanczos()
    }
    fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.inner(other)
    }
    fn scaled(&self, c: f64) -> Self {
        self.scale(c)
    }
    fn add_scaled(&mut self, c: f64, other: &Self) -> Result<()> {
        self.axpy(c, other)?;
        self.compress_in_place();
        Ok(())
    }
    fn apply_policy(&mut self, policy: &TrimPolicy<B>) {
        self.trim_in_place(policy);
    }
}

impl<B: Bits> KrylovOperator for SymOperator1D<B> {
    type Bits = B;

    fn sites(&self) -> usize {
        self.n()
    }
    fn string_count(&self) -> usize {
        self.len()
    }
    fn liouvillian(&self, h: &Self) -> Result<Self> {
        h.commutator(self)
    }
    fn lanczos_norm(&self) -> f64 {
        self.norm_lanczos()
    }
    fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.inner(other)
    }
    fn scaled(&self, c: f64) -> Self {
        self.scale(c)
    }
    fn add_scaled(&mut self, c: f64, other: &Self) -> Result<()> {
        self.axpy(c, other)
    }
    fn apply_policy(&mut self, policy: &TrimPolicy<B>) {
        *self = self.trim(policy);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// All requested steps were computed.
    Completed,
    /// `b_{step} < 1e-12`; the Krylov space is exhausted.
    Natural { step: usize },
    /// Stopped because an operator exceeded the term limit.
    Aborted { step: usize, terms: usize },
}

#[derive(Clone, Debug)]
pub struct LanczosOptions<B: Bits = u64> {
    pub steps: usize,
    pub policy: TrimPolicy<B>,
    /// Keep every `O_n` in [`LanczosRun::basis`].
    pub keep_basis: bool,
    pub term_limit: Option<usize>,
}

impl<B: Bits> LanczosOptions<B> {
    pub fn new(steps: usize) -> Self {
        Self {
            steps,
            policy: TrimPolicy::none(),
            keep_basis: false,
            term_limit: None,
        }
    }

    pub fn with_policy(mut self, policy: TrimPolicy<B>) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_basis(mut self) -> Self {
        self.keep_basis = true;
        self
    }
}

#[derive(Clone, Debug)]
pub struct LanczosRun<K> {
    /// `b_1, b_2, ...`
    pub b: Vec<f64>,
    /// String count of `O_0, O_1, ...` (one longer than `b`).
    pub terms: Vec<usize>,
    /// `O_0, O_1, ...` when requested.
    pub basis: Vec<K>,
    pub termination: Termination,
}

impl<K> LanczosRun<K> {
    /// CSV with columns `n,b_n,terms_n`, where `terms_n` counts the strings of `O_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,b_n,terms_n\n");
        for (i, b) in self.b.iter().enumerate() {
            let _ = writeln!(out, "{},{:.17e},{}", i + 1, b, self.terms[i + 1]);
        }
        out
    }
}

/// Lanczos coefficients of `o0` under `h`.
pub fn lanczos<K: KrylovOperator>(h: &K, o0: &K, steps: usize, policy: &TrimPolicy<K::Bits>) -> Result<LanczosRun<K>> {
    lanczos_with(h, o0, &LanczosOptions::new(steps).with_policy(policy.clone()))
}

pub fn lanczos_with<K: KrylovOperator>(h: &K, o0: &K, opts: &LanczosOptions<K::Bits>) -> Result<LanczosRun<K>> {
    if h.sites() != o0.sites() {
        return Err(PauliError::SiteMismatch {
            left: h.sites(),
            right: o0.sites(),
        });
    }
    let norm = o0.lanczos_norm();
    if !(norm > 0.0) {
        return Err(PauliError::ZeroOperator);
    }
    let mut run = LanczosRun {
        b: Vec::with_capacity(opts.steps),
        terms: Vec::with_capacity(opts.steps + 1),
        basis: Vec::new(),
        termination: Termination::Completed,
    };
    let mut current = o0.scaled(1.0 / norm);
    let mut previous: Option<K> = None;
    run.terms.push(current.string_count());
    if opts.keep_basis {
        run.basis.push(current.clone());
    }
    for n in 1..=opts.steps {
        let mut a = current.liouvillian(h)?;
        if let (Some(prev), Some(&b_prev)) = (&previous, run.b.last()) {
            a.add_scaled(-b_prev, prev)?;
        }
        let b_n = a.lanczos_norm();
        if b_n < TERMINATION_THRESHOLD {
            run.termination = Termination::Natural { step: n };
            break;
        }
        let mut next = a.scaled(1.0 / b_n);
        next.apply_policy(&opts.policy);
        run.b.push(b_n);
        run.terms.push(next.string_count());
        if opts.keep_basis {
            run.basis.push(next.clone());
        }
        let count = next.string_count();
        previous = Some(std::mem::replace(&mut current, next));
        if opts.term_limit.is_some_and(|lim| count > lim) {
            run.termination = Termination::Aborted { step: n, terms: count };
            break;
        }
    }
    Ok(run)
}

/// Run `steps - 1` Lanczos iterations with a `1e-10` cutoff and render every
/// basis operator: a `step k` header followed by `(re + im) LABEL` lines in
/// descending magnitude. Step 1 is the normalized `o0`.
pub fn lanczos_verbose<B: Bits>(
    h: &Operator<B>,
    o0: &Operator<B>,
    steps: usize,
) -> Result<(LanczosRun<Operator<B>>, String)> {
    let opts = LanczosOptions::new(steps.saturating_sub(1))
        .with_policy(TrimPolicy::none().with_cutoff(1e-10))
        .with_basis();
    let run = lanczos_with(h, o0, &opts)?;
    let mut out = String::new();
    for (k, op) in run.basis.iter().enumerate() {
        let _ = writeln!(out, "step {}", k + 1);
        for (t, c) in op.sorted_terms() {
            let p = mul_i_pow(c, t.y_count());
            let _ = writeln!(out, "{} {}", format_coefficient(p), t.to_label(op.n()));
        }
        out.push('\n');
    }
    Ok((run, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_terminates() {
        let h = Operator::<u64>::from_letters(1, &[("Z", 1)]).unwrap();
        let o = Operator::<u64>::from_letters(1, &[("X", 1)]).unwrap();
        let run = lanczos(&h, &o, 5, &TrimPolicy::none()).unwrap();
        assert_eq!(run.b.len(), 1);
        assert!((run.b[0] - 2.0).abs() < 1e-14);
        assert_eq!(run.termination, Termination::Natural { step: 2 });
    }

    #[test]
    fn zero_initial_operator() {
        let h = Operator::<u64>::from_letters(2, &[("Z", 1)]).unwrap();
        let o = Operator::<u64>::new(2);
        assert_eq!(
            lanczos(&h, &o, 3, &TrimPolicy::none()).unwrap_err(),
            PauliError::ZeroOperator
        );
    }

    #[test]
    fn site_mismatch() {
        let h = Operator::<u64>::from_letters(2, &[("Z", 1)]).unwrap();
        let o = Operator::<u64>::from_letters(3, &[("X", 1)]).unwrap();
        assert!(matches!(
            lanczos(&h, &o, 3, &TrimPolicy::none()),
            Err(PauliError::SiteMismatch { .. })
        ));
    }

    #[test]
    fn csv_layout() {
        let h = Operator::<u64>::from_letters(1, &[("Z", 1)]).unwrap();
        let o = Operator::<u64>::from_letters(1, &[("X", 1)]).unwrap();
        let run = lanczos(&h, &o, 5, &TrimPolicy::none()).unwrap();
        assert_eq!(run.to_csv(), "n,b_n,terms_n\n1,2.00000000000000000e0,1\n");
    }
}
