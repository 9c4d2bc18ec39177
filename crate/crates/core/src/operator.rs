//! Sums of weighted Pauli strings and their algebra.
//!
//! Coefficients are kept in `τ` space: an operator is `Σ h_a τ_a` with
//! `τ_a = ⊗ Z^v X^w`. Hermitian operators built from real Pauli couplings
//! therefore carry a factor `(-i)^{#Y}` on every string that contains `Y`.
//! Conversion to Pauli-letter coefficients happens only when displaying or
//! serializing (see [`Operator::pauli_coefficient`]).

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{PauliError, Result};
use crate::string::{mul_i_pow, parse_term, Bits, PauliTerm};

/// Coefficients below this magnitude are dropped by [`Operator::compress`].
pub const ZERO_THRESHOLD: f64 = 1e-20;

/// Truncation rule applied after each step of an iterative algorithm.
///
/// `keep` strings are never discarded and do not count against
/// `max_strings`.
#[derive(Clone, Debug, Default)]
pub struct TrimPolicy<B: Bits = u64> {
    pub max_strings: Option<usize>,
    pub keep: FxHashSet<PauliTerm<B>>,
    pub max_weight: Option<u32>,
    pub cutoff: Option<f64>,
}

impl<B: Bits> TrimPolicy<B> {
    /// No truncation at all.
    pub fn none() -> Self {
        Self {
            max_strings: None,
            keep: FxHashSet::default(),
            max_weight: None,
            cutoff: None,
        }
    }

    /// Keep at most `m` strings.
    pub fn max_strings(m: usize) -> Self {
        assert!(m >= 1, "trim size must be at least 1");
        Self {
            max_strings: Some(m),
            ..Self::none()
        }
    }

    /// `trim = log₂ M`, the way sweeps are usually indexed.
    pub fn from_log2(trim: u32) -> Self {
        Self::max_strings(1usize << trim)
    }

    pub fn with_keep(mut self, keep: impl IntoIterator<Item = PauliTerm<B>>) -> Self {
        self.keep.extend(keep);
        self
    }

    pub fn with_cutoff(mut self, eps: f64) -> Self {
        self.cutoff = Some(eps);
        self
    }

    pub fn with_max_weight(mut self, lmax: u32) -> Self {
        self.max_weight = Some(lmax);
        self
    }

    pub fn is_noop(&self) -> bool {
        self.max_strings.is_none() && self.max_weight.is_none() && self.cutoff.is_none()
    }

    pub(crate) fn check(&self) -> Result<()> {
        if let Some(m) = self.max_strings {
            if m == 0 || self.keep.len() > m {
                return Err(PauliError::KeepExceedsTrim {
                    keep: self.keep.len(),
                    max_strings: m,
                });
            }
        }
        Ok(())
    }
}

/// Operator on `n` sites stored as a map from strings to `τ` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<B: Bits = u64> {
    n: usize,
    terms: FxHashMap<PauliTerm<B>, Complex64>,
}

impl<B: Bits> Operator<B> {
    /// Empty (zero) operator on `n` sites.
    ///
    /// Panics if `n` exceeds the bit width of `B`; use [`try_new`](Self::try_new)
    /// to get an error instead.
    pub fn new(n: usize) -> Self {
        Self::try_new(n).expect("site count exceeds bitmask width")
    }

    pub fn try_new(n: usize) -> Result<Self> {
        if n > B::WIDTH || n == 0 {
            return Err(PauliError::TooManySites { n, width: B::WIDTH });
        }
        Ok(Self {
            n,
            terms: FxHashMap::default(),
        })
    }

    pub fn with_capacity(n: usize, cap: usize) -> Self {
        let mut op = Self::new(n);
        op.terms.reserve(cap);
        op
    }

    /// `c · 1`.
    pub fn identity(n: usize, c: f64) -> Self {
        let mut op = Self::new(n);
        op.insert(PauliTerm::identity(), Complex64::new(c, 0.0));
        op
    }

    /// Single Pauli-letter string with coefficient 1.
    pub fn from_letters(n: usize, letters: &[(&str, usize)]) -> Result<Self> {
        let mut op = Self::try_new(n)?;
        op.add_term(1.0, letters)?;
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliTerm<B>, &Complex64)> {
        self.terms.iter()
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliTerm<B>> {
        self.terms.keys()
    }

    /// `τ` coefficient of a string (zero when absent).
    pub fn get(&self, term: &PauliTerm<B>) -> Complex64 {
        self.terms.get(term).copied().unwrap_or_default()
    }

    /// Coefficient of the Pauli-letter string (`Y` rather than `iY`).
    pub fn pauli_coefficient(&self, term: &PauliTerm<B>) -> Complex64 {
        mul_i_pow(self.get(term), term.y_count())
    }

    /// `tr(A P) / 2^N` for a Pauli-letter string `P`, which is the Pauli
    /// coefficient of `P` in `A` since `P² = 1`.
    pub fn trace_with_pauli(&self, term: &PauliTerm<B>) -> Complex64 {
        self.pauli_coefficient(term)
    }

    /// Overwrite the coefficient of a string.
    pub(crate) fn set(&mut self, term: PauliTerm<B>, c: Complex64) {
        self.terms.insert(term, c);
    }

    /// Accumulate `c τ_term`.
    #[inline]
    pub fn insert(&mut self, term: PauliTerm<B>, c: Complex64) {
        debug_assert!(term.fits(self.n));
        *self.terms.entry(term).or_default() += c;
    }

    /// Accumulate `c · P` where `P` is the Pauli-letter string `term`.
    pub fn insert_pauli(&mut self, term: PauliTerm<B>, c: Complex64) {
        self.insert(term, mul_i_pow(c, 3 * term.y_count()));
    }

    /// `H += c, "X", i, "Y", j, ...` style construction with 1-based sites.
    pub fn add_term(&mut self, c: impl Into<Complex64>, letters: &[(&str, usize)]) -> Result<()> {
        let (term, factor) = parse_term::<B>(letters, self.n)?;
        self.insert(term, c.into() * factor);
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(PauliError::SiteMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `self · other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::with_capacity(self.n, self.len().max(other.len()));
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let (t, alpha) = a.product(b);
                out.insert(t, ca * cb * alpha.as_f64());
            }
        }
        out.compress_in_place();
        Ok(out)
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::with_capacity(self.n, self.len().max(other.len()));
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let (t, alpha) = a.commutator(b);
                if !alpha.is_zero() {
                    out.insert(t, ca * cb * alpha.as_f64());
                }
            }
        }
        out.compress_in_place();
        Ok(out)
    }

    /// `tr(A) / 2^N`.
    pub fn trace_normalized(&self) -> Complex64 {
        self.get(&PauliTerm::identity())
    }

    /// `tr(A B) / 2^N` without forming the product.
    pub fn trace_product_normalized(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Complex64::default();
        for (t, &c) in &small.terms {
            if let Some(&d) = large.terms.get(t) {
                acc += c * d * t.self_adjoint_sign();
            }
        }
        Ok(acc)
    }

    /// `tr(A† B) / 2^N`, the inner product used by the Lanczos recursion.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        let mut acc = Complex64::default();
        for (t, &c) in &self.terms {
            if let Some(&d) = other.terms.get(t) {
                acc += c.conj() * d;
            }
        }
        Ok(acc)
    }

    /// Hermitian conjugate. `iY` is anti-Hermitian, so strings with an odd
    /// number of `Y` pick up a sign.
    pub fn dagger(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (*t, c.conj() * t.self_adjoint_sign()))
            .collect();
        Self { n: self.n, terms }
    }

    /// `sqrt(tr(A† A) / 2^N)`.
    pub fn norm_lanczos(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|(t, c)| (c - c.conj() * t.self_adjoint_sign()).norm() <= tol)
    }

    /// Apply a truncation policy.
    pub fn trim(&self, policy: &TrimPolicy<B>) -> Self {
        let mut out = self.clone();
        out.trim_in_place(policy);
        out
    }

    pub fn trim_in_place(&mut self, policy: &TrimPolicy<B>) {
        if let Some(eps) = policy.cutoff {
            self.terms.retain(|t, c| c.norm() >= eps || policy.keep.contains(t));
        }
        if let Some(lmax) = policy.max_weight {
            self.terms.retain(|t, _| t.weight() <= lmax || policy.keep.contains(t));
        }
        let Some(m) = policy.max_strings else { return };
        let protected = policy.keep.iter().filter(|t| self.terms.contains_key(t)).count();
        if self.terms.len() - protected <= m {
            return;
        }
        let mut free: Vec<(PauliTerm<B>, Complex64, f64)> = self
            .terms
            .iter()
            .filter(|(t, _)| !policy.keep.contains(t))
            .map(|(t, c)| (*t, *c, c.norm_sqr()))
            .collect();
        let by_rank = |a: &(PauliTerm<B>, Complex64, f64), b: &(PauliTerm<B>, Complex64, f64)| {
            b.2.partial_cmp(&a.2)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.cmp(&b.0))
        };
        free.select_nth_unstable_by(m - 1, by_rank);
        free.truncate(m);
        let mut terms = FxHashMap::default();
        terms.reserve(m + protected);
        for t in &policy.keep {
            if let Some(c) = self.terms.get(t) {
                terms.insert(*t, *c);
            }
        }
        for (t, c, _) in free {
            terms.insert(t, c);
        }
        self.terms = terms;
    }

    /// Drop strings with `|h| < eps`.
    pub fn cutoff(&self, eps: f64) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, c| c.norm() >= eps);
        out
    }

    /// Depolarizing channel: each string of weight `w` is damped by `e^{-g w}`.
    pub fn add_noise(&self, g: f64) -> Self {
        let mut out = self.clone();
        out.add_noise_in_place(g);
        out
    }

    pub fn add_noise_in_place(&mut self, g: f64) {
        if g == 0.0 {
            return;
        }
        // one exp per weight class
        let factors: Vec<f64> = (0..=self.n).map(|w| (-g * w as f64).exp()).collect();
        for (t, c) in self.terms.iter_mut() {
            *c *= factors[t.weight() as usize];
        }
    }

    /// Remove all strings longer than `lmax`.
    pub fn truncate_weight(&self, lmax: u32) -> Self {
        let mut out = self.clone();
        out.terms.retain(|t, _| t.weight() <= lmax);
        out
    }

    /// Remove coefficients that are zero up to [`ZERO_THRESHOLD`].
    pub fn compress(&self) -> Self {
        let mut out = self.clone();
        out.compress_in_place();
        out
    }

    pub fn compress_in_place(&mut self) {
        self.terms.retain(|_, c| c.norm() >= ZERO_THRESHOLD);
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = self.clone();
        out.terms.values_mut().for_each(|h| *h *= c);
        out
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: impl Into<Complex64>, other: &Self) -> Result<()> {
        self.check_same(other)?;
        let c = c.into();
        for (t, h) in &other.terms {
            self.insert(*t, c * h);
        }
        Ok(())
    }

    /// Strings sorted by descending coefficient magnitude, ties by label.
    pub fn sorted_terms(&self) -> Vec<(PauliTerm<B>, Complex64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(t, c)| (*t, *c)).collect();
        v.sort_by(|a, b| {
            b.1.norm()
                .partial_cmp(&a.1.norm())
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.to_label(self.n).cmp(&b.0.to_label(self.n)))
        });
        v
    }

    /// Largest coefficient difference against another operator.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for (t, c) in &self.terms {
            d = d.max((c - other.get(t)).norm());
        }
        for (t, c) in &other.terms {
            if !self.terms.contains_key(t) {
                d = d.max(c.norm());
            }
        }
        d
    }
}

impl<B: Bits> std::fmt::Display for Operator<B> {
    /// One `(re + im·im) LABEL` line per string, largest first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (t, c) in self.sorted_terms() {
            let p = mul_i_pow(c, t.y_count());
            writeln!(f, "{} {}", format_coefficient(p), t.to_label(self.n))?;
        }
        Ok(())
    }
}

/// `(1.0 + 0.0im)` style rendering with ten significant decimals.
pub fn format_coefficient(c: Complex64) -> String {
    let re = round10(c.re);
    let im = round10(c.im);
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("({:?} {} {:?}im)", re, sign, im.abs())
}

fn round10(x: f64) -> f64 {
    // `+ 0.0` folds -0.0 into 0.0
    (x * 1e10).round() / 1e10 + 0.0
}

impl<B: Bits> AddAssign<&Operator<B>> for Operator<B> {
    /// Panics on a site-count mismatch.
    fn add_assign(&mut self, rhs: &Operator<B>) {
        self.axpy(1.0, rhs).expect("site count mismatch");
    }
}

impl<B: Bits> SubAssign<&Operator<B>> for Operator<B> {
    fn sub_assign(&mut self, rhs: &Operator<B>) {
        self.axpy(-1.0, rhs).expect("site count mismatch");
    }
}

impl<B: Bits> Add<&Operator<B>> for &Operator<B> {
    type Output = Operator<B>;
    fn add(self, rhs: &Operator<B>) -> Operator<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Bits> Sub<&Operator<B>> for &Operator<B> {
    type Output = Operator<B>;
    fn sub(self, rhs: &Operator<B>) -> Operator<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Bits> Mul<Complex64> for &Operator<B> {
    type Output = Operator<B>;
    fn mul(self, rhs: Complex64) -> Operator<B> {
        self.scale(rhs)
    }
}

impl<B: Bits> Mul<f64> for &Operator<B> {
    type Output = Operator<B>;
    fn mul(self, rhs: f64) -> Operator<B> {
        self.scale(rhs)
    }
}

impl<B: Bits> Neg for &Operator<B> {
    type Output = Operator<B>;
    fn neg(self) -> Operator<B> {
        self.scale(-1.0)
    }
}
