//! Dense `2^N × 2^N` reference implementations.
//!
//! Strings are decoded through explicit Kronecker products of the 2×2
//! matrices `1, X, Z, iY`, independently of the popcount phase rule. Site 1
//! is the leftmost factor (most significant bit of the basis index).

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{PauliError, Result};
use crate::krylov::TERMINATION_THRESHOLD;
use crate::operator::Operator;
use crate::string::{Bits, PauliTerm};

/// Largest site count accepted by [`to_dense`].
pub const MAX_DENSE_SITES: usize = 12;
/// Largest site count for eigendecomposition-based evolution.
pub const MAX_EVOLUTION_SITES: usize = 10;
/// Largest site count for the dense Lanczos path.
pub const MAX_LANCZOS_SITES: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    pub n: usize,
    pub matrix: DMatrix<Complex64>,
}

fn check_sites(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(PauliError::DenseTooLarge { n, max })
    } else {
        Ok(())
    }
}

/// 2×2 matrix selected by the bit pair `(v, w)`.
pub fn tau(v: bool, w: bool) -> [[Complex64; 2]; 2] {
    match (v, w) {
        (false, false) => [[ONE, ZERO], [ZERO, ONE]],
        (false, true) => [[ZERO, ONE], [ONE, ZERO]],
        (true, false) => [[ONE, ZERO], [ZERO, -ONE]],
        // iY
        (true, true) => [[ZERO, ONE], [-ONE, ZERO]],
    }
}

impl DenseOperator {
    pub fn zeros(n: usize) -> Self {
        let d = 1 << n;
        Self {
            n,
            matrix: DMatrix::zeros(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `tr(A) / 2^N`.
    pub fn trace_normalized(&self) -> Complex64 {
        self.matrix.trace() / self.dim() as f64
    }

    /// `sqrt(tr(A† A) / 2^N)`.
    pub fn norm_lanczos(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() / (self.dim() as f64).sqrt()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n: self.n,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Single-site depolarizing channel on every site with damping `e^{-g}`
    /// of the traceless part: `D_s(O) = e^{-g} O + (1 - e^{-g}) tr_s(O) ⊗ 1/2`.
    pub fn depolarize(&self, g: f64) -> Self {
        let keep = (-g).exp();
        let mut m = self.matrix.clone();
        let d = self.dim();
        for s in 0..self.n {
            let mask = 1usize << (self.n - 1 - s);
            let mut next = m.clone();
            for r in 0..d {
                for c in 0..d {
                    let mut v = m[(r, c)] * keep;
                    if (r & mask) == (c & mask) {
                        let avg = (m[(r & !mask, c & !mask)] + m[(r | mask, c | mask)]) * 0.5;
                        v += avg * (1.0 - keep);
                    }
                    next[(r, c)] = v;
                }
            }
            m = next;
        }
        Self { n: self.n, matrix: m }
    }
}

/// Kronecker product of the per-site `τ` matrices of a string.
pub fn string_matrix<B: Bits>(term: &PauliTerm<B>, n: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, ONE);
    for site in 0..n {
        let t = tau(term.v.bit(site), term.w.bit(site));
        let f = DMatrix::from_row_slice(2, 2, &[t[0][0], t[0][1], t[1][0], t[1][1]]);
        m = m.kronecker(&f);
    }
    m
}

/// Decode an operator into its dense matrix.
pub fn to_dense<B: Bits>(op: &Operator<B>) -> Result<DenseOperator> {
    let n = op.n();
    check_sites(n, MAX_DENSE_SITES)?;
    let d = 1usize << n;
    let mut out = DenseOperator::zeros(n);
    // Each τ string is monomial: column `col` has a single nonzero. Walk the
    // Kronecker factors site by site instead of materializing the product.
    let factors: Vec<_> = op
        .iter()
        .map(|(t, c)| {
            let per_site: Vec<_> = (0..n).map(|s| tau(t.v.bit(s), t.w.bit(s))).collect();
            (per_site, *c)
        })
        .collect();
    for (per_site, c) in &factors {
        for col in 0..d {
            let mut row = 0usize;
            let mut val = *c;
            for (s, m) in per_site.iter().enumerate() {
                let cb = (col >> (n - 1 - s)) & 1;
                let rb = if m[0][cb] != ZERO { 0 } else { 1 };
                val *= m[rb][cb];
                row |= rb << (n - 1 - s);
            }
            out.matrix[(row, col)] += val;
        }
    }
    Ok(out)
}

/// Expand a dense matrix in the `τ` basis: `h_a = tr(τ_a† M) / 2^N`.
pub fn from_dense<B: Bits>(m: &DenseOperator) -> Result<Operator<B>> {
    let n = m.n;
    check_sites(n, MAX_LANCZOS_SITES)?;
    let mut op = Operator::try_new(n)?;
    let full = 1usize << n;
    for v in 0..full {
        for w in 0..full {
            let mut t = PauliTerm::<B>::identity();
            for s in 0..n {
                if (v >> s) & 1 == 1 {
                    t.v = t.v.with_bit(s);
                }
                if (w >> s) & 1 == 1 {
                    t.w = t.w.with_bit(s);
                }
            }
            let basis = string_matrix(&t, n);
            let h = basis.adjoint().component_mul(&m.matrix.transpose()).sum() / full as f64;
            if h.norm() > 1e-15 {
                op.insert(t, h);
            }
        }
    }
    Ok(op)
}

/// Exact Heisenberg evolution `O(t) = e^{iHt} O e^{-iHt}` from one
/// eigendecomposition of `H`.
pub struct DenseEvolver {
    n: usize,
    vectors: DMatrix<Complex64>,
    energies: DVector<f64>,
}

impl DenseEvolver {
    pub fn new<B: Bits>(h: &Operator<B>) -> Result<Self> {
        check_sites(h.n(), MAX_EVOLUTION_SITES)?;
        let dense = to_dense(h)?;
        let eig = SymmetricEigen::new(dense.matrix);
        Ok(Self {
            n: h.n(),
            vectors: eig.eigenvectors,
            energies: eig.eigenvalues,
        })
    }

    /// `e^{iHt}`.
    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let phases = DVector::from_iterator(
            self.energies.len(),
            self.energies.iter().map(|e| Complex64::from_polar(1.0, e * t)),
        );
        let scaled = DMatrix::from_fn(self.vectors.nrows(), self.vectors.ncols(), |r, c| {
            self.vectors[(r, c)] * phases[c]
        });
        scaled * self.vectors.adjoint()
    }

    pub fn evolve(&self, o: &DenseOperator, t: f64) -> DenseOperator {
        let u = self.propagator(t);
        DenseOperator {
            n: self.n,
            matrix: &u * &o.matrix * u.adjoint(),
        }
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }
}

/// `e^{iHt} O e^{-iHt}`.
pub fn dense_heisenberg<B: Bits>(h: &Operator<B>, o: &Operator<B>, t: f64) -> Result<DenseOperator> {
    let ev = DenseEvolver::new(h)?;
    Ok(ev.evolve(&to_dense(o)?, t))
}

/// Noisy evolution sampled every `dt`: each step applies the exact unitary
/// step followed by [`DenseOperator::depolarize`] with `g = noise · dt`.
pub fn dense_noisy_trajectory<B: Bits>(
    h: &Operator<B>,
    o: &Operator<B>,
    dt: f64,
    steps: usize,
    noise: f64,
) -> Result<Vec<DenseOperator>> {
    check_sites(h.n(), MAX_LANCZOS_SITES)?;
    let ev = DenseEvolver::new(h)?;
    let u = ev.propagator(dt);
    let ud = u.adjoint();
    let mut cur = to_dense(o)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(cur.clone());
    for _ in 0..steps {
        let m = &u * &cur.matrix * &ud;
        cur = DenseOperator { n: cur.n, matrix: m }.depolarize(noise * dt);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Same as [`dense_noisy_trajectory`] but each unitary step is replaced by
/// one classical RK4 step of `dO/dt = i[H, O]` on the dense matrix.
pub fn dense_rk4_trajectory<B: Bits>(
    h: &Operator<B>,
    o: &Operator<B>,
    dt: f64,
    steps: usize,
    noise: f64,
) -> Result<Vec<DenseOperator>> {
    check_sites(h.n(), MAX_LANCZOS_SITES)?;
    let hd = to_dense(h)?.matrix;
    let n = h.n();
    let gen = |m: &DMatrix<Complex64>| (&hd * m - m * &hd) * Complex64::new(0.0, 1.0);
    let mut cur = to_dense(o)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(cur.clone());
    for _ in 0..steps {
        let m = &cur.matrix;
        let k1 = gen(m);
        let k2 = gen(&(m + &k1 * Complex64::from(dt / 2.0)));
        let k3 = gen(&(m + &k2 * Complex64::from(dt / 2.0)));
        let k4 = gen(&(m + &k3 * Complex64::from(dt)));
        let next = m + (k1 + k2 * Complex64::from(2.0) + k3 * Complex64::from(2.0) + k4) * Complex64::from(dt / 6.0);
        cur = DenseOperator { n, matrix: next }.depolarize(noise * dt);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Lanczos coefficients with dense commutators and the `2^{-N}` Frobenius norm.
pub fn dense_lanczos<B: Bits>(h: &Operator<B>, o0: &Operator<B>, steps: usize) -> Result<Vec<f64>> {
    check_sites(h.n(), MAX_LANCZOS_SITES)?;
    let hd = to_dense(h)?;
    let od = to_dense(o0)?;
    let norm = od.norm_lanczos();
    if !(norm > 0.0) {
        return Err(PauliError::ZeroOperator);
    }
    let mut cur = od.matrix / Complex64::new(norm, 0.0);
    let mut prev: Option<DMatrix<Complex64>> = None;
    let dim = hd.dim() as f64;
    let mut b = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut a = &hd.matrix * &cur - &cur * &hd.matrix;
        if let (Some(p), Some(&bp)) = (&prev, b.last()) {
            a -= p * Complex64::new(bp, 0.0);
        }
        let bn = (a.iter().map(|c: &Complex64| c.norm_sqr()).sum::<f64>() / dim).sqrt();
        if bn < TERMINATION_THRESHOLD {
            break;
        }
        b.push(bn);
        prev = Some(cur);
        cur = a / Complex64::new(bn, 0.0);
    }
    Ok(b)
}
