//! Heisenberg-picture time evolution `dO/dt = i[H, O]` with RK4, truncation
//! and a depolarizing channel.
//!
//! Each time step runs one RK4 step (every stage commutator is trimmed), then
//! damps every string of weight `w` by `e^{-ε w dt}`, then trims the operator
//! back to `M` strings. Strings of the initial operator are protected from
//! trimming unless [`EvolveConfig::keep_initial`] is off.

use num_complex::Complex64;

use crate::error::{PauliError, Result};
use crate::operator::{Operator, TrimPolicy};
use crate::string::{Bits, Pauli, PauliTerm};

#[derive(Clone, Debug, PartialEq)]
pub struct EvolveConfig {
    pub dt: f64,
    /// Number of time steps; samples are taken at `k · dt` for `k = 0..=steps`.
    pub steps: usize,
    /// Maximum number of strings kept after each step (`None` = no trim).
    pub max_strings: Option<usize>,
    /// Noise amplitude ε per unit time.
    pub noise: f64,
    pub keep_initial: bool,
    /// Abort once the operator holds more strings than this.
    pub term_limit: Option<usize>,
}

impl EvolveConfig {
    pub fn new(dt: f64, t_max: f64) -> Self {
        Self {
            dt,
            steps: (t_max / dt).round() as usize,
            max_strings: None,
            noise: 0.0,
            keep_initial: true,
            term_limit: None,
        }
    }

    pub fn with_trim(mut self, max_strings: usize) -> Self {
        self.max_strings = Some(max_strings);
        self
    }

    pub fn with_noise(mut self, noise: f64) -> Self {
        self.noise = noise;
        self
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| k as f64 * self.dt).collect()
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(PauliError::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.noise >= 0.0) {
            return Err(PauliError::InvalidConfig(format!(
                "noise must be non-negative, got {}",
                self.noise
            )));
        }
        if self.max_strings == Some(0) {
            return Err(PauliError::InvalidConfig("trim size must be at least 1".into()));
        }
        Ok(())
    }

    fn policy<B: Bits>(&self, o0: &Operator<B>) -> TrimPolicy<B> {
        let mut p = TrimPolicy::none();
        p.max_strings = self.max_strings;
        if self.keep_initial {
            p.keep.extend(o0.strings().copied());
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionSample {
    pub t: f64,
    /// `tr(O(t) O(0)†) / tr(O(0) O(0))`.
    pub autocorrelation: Complex64,
    /// `n(t) = e^{-ε t}`.
    pub particle_norm: f64,
    pub terms: usize,
    /// Fraction of the squared norm removed by the trim that produced this sample.
    pub discarded_norm: f64,
    /// `tr(O(t) P_i) / 2^N` for each probe.
    pub two_point: Vec<Complex64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvolutionTrace {
    pub samples: Vec<EvolutionSample>,
    /// `i - j` for every two-point probe column.
    pub separations: Vec<isize>,
    pub peak_terms: usize,
    /// Set when the run stopped early on the term limit.
    pub aborted: bool,
}

impl EvolutionTrace {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn autocorrelation(&self) -> Vec<Complex64> {
        self.samples.iter().map(|s| s.autocorrelation).collect()
    }

    /// Two-point profile divided by `n(t)`.
    pub fn normalized_profile(&self, index: usize) -> Vec<f64> {
        let s = &self.samples[index];
        s.two_point.iter().map(|c| c.re / s.particle_norm).collect()
    }

    /// CSV with columns `t,S_re,S_im,n,terms,discarded_norm` plus one
    /// `sep_<d>` column per two-point separation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,S_re,S_im,n,terms,discarded_norm");
        for d in &self.separations {
            out.push_str(&format!(",sep_{d}"));
        }
        out.push('\n');
        for s in &self.samples {
            out.push_str(&format!(
                "{},{:e},{:e},{:e},{},{:e}",
                s.t, s.autocorrelation.re, s.autocorrelation.im, s.particle_norm, s.terms, s.discarded_norm
            ));
            for c in &s.two_point {
                out.push_str(&format!(",{:e}", c.re));
            }
            out.push('\n');
        }
        out
    }
}

/// `i [H, X]` truncated by `policy`.
fn generator<B: Bits>(h: &Operator<B>, x: &Operator<B>, policy: &TrimPolicy<B>) -> Result<Operator<B>> {
    let mut k = h.commutator(x)?.scale(Complex64::i());
    if !policy.is_noop() {
        k.trim_in_place(policy);
    }
    Ok(k)
}

/// One classical RK4 step of `dO/dt = i[H, O]`.
pub fn rk4_step<B: Bits>(h: &Operator<B>, o: &Operator<B>, dt: f64, policy: &TrimPolicy<B>) -> Result<Operator<B>> {
    policy.check()?;
    let k1 = generator(h, o, policy)?;
    let mut stage = o.clone();
    stage.axpy(dt / 2.0, &k1)?;
    let k2 = generator(h, &stage, policy)?;
    let mut stage = o.clone();
    stage.axpy(dt / 2.0, &k2)?;
    let k3 = generator(h, &stage, policy)?;
    let mut stage = o.clone();
    stage.axpy(dt, &k3)?;
    let k4 = generator(h, &stage, policy)?;

    let mut out = o.clone();
    out.axpy(dt / 6.0, &k1)?;
    out.axpy(dt / 3.0, &k2)?;
    out.axpy(dt / 3.0, &k3)?;
    out.axpy(dt / 6.0, &k4)?;
    out.compress_in_place();
    Ok(out)
}

/// Evolve `o0` and record observables at every grid point. `probes` are
/// Pauli-letter strings `P_i` whose traces `tr(O(t) P_i)/2^N` are recorded.
pub fn evolve<B: Bits>(
    h: &Operator<B>,
    o0: &Operator<B>,
    cfg: &EvolveConfig,
    probes: &[PauliTerm<B>],
) -> Result<EvolutionTrace> {
    cfg.validate()?;
    if h.n() != o0.n() {
        return Err(PauliError::SiteMismatch {
            left: h.n(),
            right: o0.n(),
        });
    }
    let policy = cfg.policy(o0);
    policy.check()?;
    let o0_dag = o0.dagger();
    let norm0 = o0.trace_product_normalized(o0)?;
    if norm0.norm() == 0.0 {
        return Err(PauliError::ZeroOperator);
    }

    let mut trace = EvolutionTrace::default();
    let mut o = o0.clone();
    let mut discarded = 0.0;
    for step in 0..=cfg.steps {
        let t = step as f64 * cfg.dt;
        let s = o.trace_product_normalized(&o0_dag)? / norm0;
        let two_point = probes.iter().map(|p| o.trace_with_pauli(p)).collect();
        trace.peak_terms = trace.peak_terms.max(o.len());
        trace.samples.push(EvolutionSample {
            t,
            autocorrelation: s,
            particle_norm: (-cfg.noise * t).exp(),
            terms: o.len(),
            discarded_norm: discarded,
            two_point,
        });
        if step == cfg.steps {
            break;
        }
        o = rk4_step(h, &o, cfg.dt, &policy)?;
        o.add_noise_in_place(cfg.noise * cfg.dt);
        let before = o.norm_lanczos().powi(2);
        o.trim_in_place(&policy);
        let after = o.norm_lanczos().powi(2);
        discarded = if before > 0.0 { 1.0 - after / before } else { 0.0 };
        if cfg.term_limit.is_some_and(|lim| o.len() > lim) {
            trace.peak_terms = trace.peak_terms.max(o.len());
            trace.aborted = true;
            break;
        }
    }
    Ok(trace)
}

/// Infinite-temperature autocorrelation `S(t)` of `o0`.
pub fn evolve_autocorrelation<B: Bits>(
    h: &Operator<B>,
    o0: &Operator<B>,
    cfg: &EvolveConfig,
) -> Result<EvolutionTrace> {
    evolve(h, o0, cfg, &[])
}

/// Evolve `Z_source` once and record `tr[Z_source(t) Z_i]/2^N` for every
/// site `i` in `sites` (1-based).
pub fn evolve_two_point<B: Bits>(
    h: &Operator<B>,
    source: usize,
    sites: &[usize],
    cfg: &EvolveConfig,
) -> Result<EvolutionTrace> {
    let n = h.n();
    let mut o0 = Operator::try_new(n)?;
    o0.add_term(1.0, &[("Z", source)])?;
    let mut probes = Vec::with_capacity(sites.len());
    for &i in sites {
        if i == 0 || i > n {
            return Err(PauliError::SiteOutOfRange { site: i, n });
        }
        probes.push(PauliTerm::single(Pauli::Z, i));
    }
    let mut trace = evolve(h, &o0, cfg, &probes)?;
    trace.separations = sites.iter().map(|&i| i as isize - source as isize).collect();
    Ok(trace)
}
