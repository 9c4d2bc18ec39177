//! Translation-invariant operators on a ring, stored by one representative
//! per translation orbit.
//!
//! A [`SymOperator1D`] with representative `R` stands for `Σ_{k<N} T_k(R)`.
//! Every key of `R` is in the canonical form returned by
//! [`PauliTerm::shift_left`]. A string whose orbit has `p` elements appears
//! `N / p` times in the translate sum, so its stored coefficient is the full
//! coefficient scaled by `p / N`. The identity (`p = 1`) is stored as `c / N`.

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::error::{PauliError, Result};
use crate::operator::{Operator, TrimPolicy};
use crate::string::{Bits, PauliTerm};

#[derive(Clone, Debug, PartialEq)]
pub struct SymOperator1D<B: Bits = u64> {
    rep: Operator<B>,
}

impl<B: Bits> SymOperator1D<B> {
    pub fn new(n: usize) -> Self {
        Self { rep: Operator::new(n) }
    }

    /// Build from a representative; keys are canonicalized and merged.
    pub fn from_representative(rep: &Operator<B>) -> Self {
        let n = rep.n();
        let mut out = Operator::with_capacity(n, rep.len());
        for (t, c) in rep.iter() {
            out.insert(t.shift_left(n), *c);
        }
        out.compress_in_place();
        Self { rep: out }
    }

    /// Wrap a representative whose keys are already canonical, keeping
    /// coefficients bit for bit.
    pub(crate) fn from_canonical(rep: Operator<B>) -> Self {
        debug_assert!(rep.strings().all(|t| t.shift_left(rep.n()) == *t));
        Self { rep }
    }

    /// Compress a translation-invariant operator. Fails on the first string
    /// whose translates do not all carry the same coefficient.
    pub fn from_operator(op: &Operator<B>) -> Result<Self> {
        const TOL: f64 = 1e-12;
        let n = op.n();
        let mut rep = Operator::with_capacity(n, op.len() / n + 1);
        let mut sorted: Vec<_> = op.iter().map(|(t, c)| (*t, *c)).collect();
        sorted.sort_by_key(|a| a.0);
        for (t, c) in sorted {
            let canon = t.shift_left(n);
            for k in 1..n {
                let moved = t.translate(k, n);
                if (op.get(&moved) - c).norm() > TOL * c.norm().max(1.0) {
                    return Err(PauliError::NotTranslationInvariant {
                        label: moved.to_label(n),
                    });
                }
            }
            if canon == t {
                let p = t.period(n);
                rep.insert(canon, c * (p as f64 / n as f64));
            }
        }
        Ok(Self { rep })
    }

    /// Expand to the full operator `Σ_k T_k(rep)`.
    pub fn to_operator(&self) -> Operator<B> {
        let n = self.n();
        let mut out = Operator::with_capacity(n, self.rep.len() * n);
        for (t, c) in self.rep.iter() {
            for k in 0..n {
                out.insert(t.translate(k, n), *c);
            }
        }
        out.compress_in_place();
        out
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    /// Number of stored representatives.
    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn representative(&self) -> &Operator<B> {
        &self.rep
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(PauliError::SiteMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    fn accumulate(
        &self,
        other: &Self,
        phase: impl Fn(&PauliTerm<B>, &PauliTerm<B>) -> (PauliTerm<B>, f64),
    ) -> Result<Self> {
        self.check_same(other)?;
        let n = self.n();
        let mut acc: FxHashMap<PauliTerm<B>, Complex64> = FxHashMap::default();
        for (a, &ca) in self.rep.iter() {
            for (b, &cb) in other.rep.iter() {
                let cab = ca * cb;
                for k in 0..n {
                    let shifted = b.translate(k, n);
                    let (t, alpha) = phase(a, &shifted);
                    if alpha != 0.0 {
                        *acc.entry(t.shift_left(n)).or_default() += cab * alpha;
                    }
                }
            }
        }
        let mut rep = Operator::with_capacity(n, acc.len());
        for (t, c) in acc {
            rep.insert(t, c);
        }
        rep.compress_in_place();
        Ok(Self { rep })
    }

    /// Product of two translation-invariant operators.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.accumulate(other, |a, b| {
            let (t, p) = a.product(b);
            (t, p.as_f64())
        })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.accumulate(other, |a, b| {
            let (t, p) = a.commutator(b);
            (t, p.as_f64())
        })
    }

    /// `tr(A) / 2^N` of the expanded operator.
    pub fn trace_normalized(&self) -> Complex64 {
        self.rep.trace_normalized() * self.n() as f64
    }

    /// `tr(A B) / 2^N` of the expanded operators.
    pub fn trace_product_normalized(&self, other: &Self) -> Result<Complex64> {
        self.pair_sum(other, |t, a, b| a * b * t.self_adjoint_sign())
    }

    /// `tr(A† B) / 2^N` of the expanded operators.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.pair_sum(other, |_, a, b| a.conj() * b)
    }

    // Shared orbit a = T_k(b) contributes N / p translations per anchor and
    // the outer translate sum another factor N.
    fn pair_sum(
        &self,
        other: &Self,
        f: impl Fn(&PauliTerm<B>, Complex64, Complex64) -> Complex64,
    ) -> Result<Complex64> {
        self.check_same(other)?;
        let n = self.n();
        let mut acc = Complex64::default();
        for (t, &a) in self.rep.iter() {
            let b = other.rep.get(t);
            if b != Complex64::default() {
                let multiplicity = (n / t.period(n)) as f64;
                acc += f(t, a, b) * multiplicity;
            }
        }
        Ok(acc * n as f64)
    }

    pub fn dagger(&self) -> Self {
        Self { rep: self.rep.dagger() }
    }

    /// Norm of the expanded operator.
    pub fn norm_lanczos(&self) -> f64 {
        self.inner(self).map(|c| c.re.max(0.0).sqrt()).unwrap_or(0.0)
    }

    /// Truncation acting on the representative coefficients.
    pub fn trim(&self, policy: &TrimPolicy<B>) -> Self {
        Self {
            rep: self.rep.trim(policy),
        }
    }

    pub fn cutoff(&self, eps: f64) -> Self {
        Self {
            rep: self.rep.cutoff(eps),
        }
    }

    pub fn add_noise(&self, g: f64) -> Self {
        Self {
            rep: self.rep.add_noise(g),
        }
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        Self { rep: self.rep.scale(c) }
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: impl Into<Complex64>, other: &Self) -> Result<()> {
        self.rep.axpy(c, &other.rep)
    }
}
