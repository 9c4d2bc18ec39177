//! Single Pauli strings in the binary `(v, w)` encoding.
//!
//! A string over `N` sites is stored as two bitmasks. Bit `i` (0-based)
//! describes site `i + 1`; the pair of bits `(v_i, w_i)` selects the real
//! matrix `Z^v X^w` on that site:
//!
//! | (v, w) | matrix        |
//! |--------|---------------|
//! | (0, 0) | `1`           |
//! | (0, 1) | `X`           |
//! | (1, 0) | `Z`           |
//! | (1, 1) | `ZX = iY`     |
//!
//! With this choice every product of two strings is another string times a
//! real sign, and the sign is a popcount parity.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{BitAnd, BitOr, BitXor, Not, Shl, Shr};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PauliError, Result};

/// Machine word backing a bitmask. Implemented for `u64` and `u128`.
pub trait Bits:
    Copy
    + Eq
    + Ord
    + Hash
    + Default
    + Debug
    + Send
    + Sync
    + BitXor<Output = Self>
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + Not<Output = Self>
    + Shl<u32, Output = Self>
    + Shr<u32, Output = Self>
    + 'static
{
    const WIDTH: usize;
    const ZERO: Self;
    const ONE: Self;

    fn count_ones(self) -> u32;
    fn trailing_zeros(self) -> u32;

    /// Mask with the low `n` bits set.
    fn low_mask(n: usize) -> Self;

    #[inline]
    fn bit(self, i: usize) -> bool {
        (self >> i as u32) & Self::ONE == Self::ONE
    }

    #[inline]
    fn with_bit(self, i: usize) -> Self {
        self | (Self::ONE << i as u32)
    }

    /// Cyclic left rotation by `k` inside the low `n` bits.
    #[inline]
    fn rotate_within(self, k: usize, n: usize) -> Self {
        let k = k % n;
        if k == 0 {
            return self;
        }
        ((self << k as u32) | (self >> (n - k) as u32)) & Self::low_mask(n)
    }
}

macro_rules! impl_bits {
    ($t:ty) => {
        impl Bits for $t {
            const WIDTH: usize = <$t>::BITS as usize;
            const ZERO: Self = 0;
            const ONE: Self = 1;

            #[inline]
            fn count_ones(self) -> u32 {
                <$t>::count_ones(self)
            }

            #[inline]
            fn trailing_zeros(self) -> u32 {
                <$t>::trailing_zeros(self)
            }

            #[inline]
            fn low_mask(n: usize) -> Self {
                if n >= Self::WIDTH {
                    <$t>::MAX
                } else {
                    (1 << n) - 1
                }
            }
        }
    };
}

impl_bits!(u64);
impl_bits!(u128);

/// Single-site Pauli letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_symbol(s: &str) -> Result<Self> {
        match s {
            "1" | "I" => Ok(Pauli::I),
            "X" => Ok(Pauli::X),
            "Y" => Ok(Pauli::Y),
            "Z" => Ok(Pauli::Z),
            other => Err(PauliError::BadSymbol(other.to_string())),
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '1' | 'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(PauliError::BadSymbol(other.to_string())),
        }
    }

    /// `(v, w)` bits of this letter.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (false, true),
            Pauli::Z => (true, false),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_bits(v: bool, w: bool) -> Self {
        match (v, w) {
            (false, false) => Pauli::I,
            (false, true) => Pauli::X,
            (true, false) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => '1',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Multiplier produced by a string product (`±1`) or commutator (`0, ±2`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Phase(i8);

impl Phase {
    pub const ZERO: Phase = Phase(0);

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Multiply by `i^k` without going through complex multiplication, so that
/// the result is bit-exact (including signed zeros of the untouched parts).
#[inline]
pub fn mul_i_pow(c: Complex64, k: u32) -> Complex64 {
    match k % 4 {
        0 => c,
        1 => Complex64::new(-c.im, c.re),
        2 => Complex64::new(-c.re, -c.im),
        _ => Complex64::new(c.im, -c.re),
    }
}

/// One Pauli string as the bit pair `(v, w)`.
///
/// Ordering is lexicographic on `(v, w)`, which is the tie-break used by
/// truncation and by the translation canonical form.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliTerm<B: Bits = u64> {
    pub v: B,
    pub w: B,
}

impl<B: Bits> PauliTerm<B> {
    pub fn new(v: B, w: B) -> Self {
        Self { v, w }
    }

    pub fn identity() -> Self {
        Self::new(B::ZERO, B::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        self.v == B::ZERO && self.w == B::ZERO
    }

    /// Single-letter string on a 1-based `site`.
    pub fn single(letter: Pauli, site: usize) -> Self {
        let (v, w) = letter.bits();
        let mut t = Self::identity();
        if v {
            t.v = t.v.with_bit(site - 1);
        }
        if w {
            t.w = t.w.with_bit(site - 1);
        }
        t
    }

    /// Number of non-identity sites.
    #[inline]
    pub fn weight(&self) -> u32 {
        (self.v | self.w).count_ones()
    }

    /// Number of `iY` sites.
    #[inline]
    pub fn y_count(&self) -> u32 {
        (self.v & self.w).count_ones()
    }

    /// Sign `s` with `τ† = s τ` (and also `τ² = s`).
    #[inline]
    pub fn self_adjoint_sign(&self) -> f64 {
        if self.y_count() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Letter on a 1-based site.
    pub fn letter(&self, site: usize) -> Pauli {
        Pauli::from_bits(self.v.bit(site - 1), self.w.bit(site - 1))
    }

    /// True if every set bit lies below `n`.
    pub fn fits(&self, n: usize) -> bool {
        let mask = !B::low_mask(n);
        (self.v & mask) == B::ZERO && (self.w & mask) == B::ZERO
    }

    /// `τ_self · τ_other = α τ_result` with `α = (-1)^{pop(w_self ∧ v_other)}`.
    #[inline]
    pub fn product(&self, other: &Self) -> (Self, Phase) {
        let out = Self::new(self.v ^ other.v, self.w ^ other.w);
        let sign = if (self.w & other.v).count_ones() & 1 == 0 {
            1
        } else {
            -1
        };
        (out, Phase(sign))
    }

    /// `[τ_self, τ_other] = α τ_result`; `α = 0` when the strings commute.
    #[inline]
    pub fn commutator(&self, other: &Self) -> (Self, Phase) {
        let out = Self::new(self.v ^ other.v, self.w ^ other.w);
        let p = (self.w & other.v).count_ones() & 1;
        let q = (self.v & other.w).count_ones() & 1;
        let alpha = match (p, q) {
            (0, 1) => 2,
            (1, 0) => -2,
            _ => 0,
        };
        (out, Phase(alpha))
    }

    #[inline]
    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.w & other.v).count_ones() + (self.v & other.w).count_ones()) & 1 == 0
    }

    /// Cyclic translation by `k` sites on a ring of `n` (site `i` → `i + k`).
    #[inline]
    pub fn translate(&self, k: usize, n: usize) -> Self {
        Self::new(self.v.rotate_within(k, n), self.w.rotate_within(k, n))
    }

    /// Canonical cyclic translate that starts on site 1.
    ///
    /// Among all translates whose first site is occupied, the smallest
    /// `(v, w)` pair is returned, so every member of a translation orbit maps
    /// to the same representative. The identity maps to itself.
    pub fn shift_left(&self, n: usize) -> Self {
        let mut support = self.v | self.w;
        if support == B::ZERO {
            return *self;
        }
        let mut best: Option<Self> = None;
        while support != B::ZERO {
            let pos = support.trailing_zeros() as usize;
            support = support ^ (B::ONE << pos as u32);
            let cand = self.translate(n - pos, n);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
        best.unwrap()
    }

    /// Smallest `p ≥ 1` with `translate(p) == self`.
    pub fn period(&self, n: usize) -> usize {
        (1..=n)
            .find(|&p| n.is_multiple_of(p) && self.translate(p, n) == *self)
            .unwrap_or(n)
    }

    /// Label with site 1 leftmost, alphabet `{1, X, Y, Z}`.
    pub fn to_label(&self, n: usize) -> String {
        (1..=n).map(|s| self.letter(s).label()).collect()
    }

    /// Inverse of [`to_label`](Self::to_label). The site count is the label length.
    pub fn from_label(label: &str) -> Result<(Self, usize)> {
        let n = label.chars().count();
        if n > B::WIDTH {
            return Err(PauliError::TooManySites { n, width: B::WIDTH });
        }
        let mut t = Self::identity();
        for (i, c) in label.chars().enumerate() {
            let (v, w) = Pauli::from_char(c)?.bits();
            if v {
                t.v = t.v.with_bit(i);
            }
            if w {
                t.w = t.w.with_bit(i);
            }
        }
        Ok((t, n))
    }
}

/// Build a string from `(letter, site)` pairs with 1-based sites.
///
/// Returns the string and the factor that converts a coefficient of the
/// Pauli-letter product into a coefficient of the stored `τ` string: each `Y`
/// equals `-i τ₁₁`, so the factor is `(-i)^{#Y}`.
pub fn parse_term<B: Bits>(letters: &[(&str, usize)], n: usize) -> Result<(PauliTerm<B>, Complex64)> {
    if n > B::WIDTH {
        return Err(PauliError::TooManySites { n, width: B::WIDTH });
    }
    let mut term = PauliTerm::<B>::identity();
    let mut seen = B::ZERO;
    let mut ys = 0u32;
    for &(sym, site) in letters {
        let letter = Pauli::from_symbol(sym)?;
        if site == 0 || site > n {
            return Err(PauliError::SiteOutOfRange { site, n });
        }
        if seen.bit(site - 1) {
            return Err(PauliError::DuplicateSite(site));
        }
        seen = seen.with_bit(site - 1);
        if letter == Pauli::Y {
            ys += 1;
        }
        let single = PauliTerm::<B>::single(letter, site);
        term = PauliTerm::new(term.v ^ single.v, term.w ^ single.w);
    }
    Ok((term, mul_i_pow(Complex64::new(1.0, 0.0), 3 * ys)))
}

#[cfg(test)]
mod tests {
    use super::*;

    type T = PauliTerm<u64>;

    fn lbl(s: &str) -> T {
        T::from_label(s).unwrap().0
    }

    #[test]
    fn xx_is_identity() {
        let x = lbl("X");
        let (t, a) = x.product(&x);
        assert!(t.is_identity());
        assert_eq!(a.value(), 1);
    }

    #[test]
    fn zx_decodes_to_iy() {
        // ZX = iY = τ₁₁ with coefficient +1
        let (t, a) = lbl("Z").product(&lbl("X"));
        assert_eq!((t.v, t.w), (1, 1));
        assert_eq!(a.value(), 1);
        // XZ = -iY
        let (_, a) = lbl("X").product(&lbl("Z"));
        assert_eq!(a.value(), -1);
    }

    #[test]
    fn commutator_phases() {
        assert_eq!(lbl("X").commutator(&lbl("X")).1.value(), 0);
        let (t, a) = lbl("Z").commutator(&lbl("X"));
        assert_eq!(t, lbl("Y"));
        assert_eq!(a.value(), 2);
        assert_eq!(lbl("ZZ").commutator(&lbl("XX")).1.value(), 0);
    }

    #[test]
    fn weights() {
        assert_eq!(T::identity().weight(), 0);
        assert_eq!(lbl("Z1Y1").weight(), 2);
        assert_eq!(lbl("YYYYYYYYYY").weight(), 10);
    }

    #[test]
    fn translations() {
        assert_eq!(lbl("X111").translate(1, 4), lbl("1X11"));
        assert_eq!(lbl("111Z").translate(1, 4), lbl("Z111"));
        let a = lbl("XY1Z");
        assert_eq!(a.translate(0, 4), a);
        assert_eq!(a.translate(4, 4), a);
    }

    #[test]
    fn shift_left_cases() {
        assert_eq!(lbl("11X11").shift_left(5), lbl("X1111"));
        assert_eq!(lbl("1ZZ1").shift_left(4), lbl("ZZ11"));
        assert_eq!(T::identity().shift_left(4), T::identity());
        // ties: Z1Z1 at N=4 has two anchors that coincide
        assert_eq!(lbl("1Z1Z").shift_left(4), lbl("Z1Z1"));
        // wraps across the boundary
        assert_eq!(lbl("Z11X").shift_left(4), lbl("XZ11").min(lbl("Z11X")));
    }

    #[test]
    fn periods() {
        assert_eq!(lbl("Z1Z1").period(4), 2);
        assert_eq!(lbl("ZZZZ").period(4), 1);
        assert_eq!(lbl("ZZ11").period(4), 4);
        assert_eq!(T::identity().period(6), 1);
    }

    #[test]
    fn labels() {
        let x1 = PauliTerm::<u64>::single(Pauli::X, 1);
        assert_eq!(x1.to_label(10), "X111111111");
        assert_eq!(T::identity().to_label(4), "1111");
        let y4 = T::new(0b1111, 0b1111);
        assert_eq!(y4.to_label(10), "YYYY111111");
    }

    #[test]
    fn parse_examples() {
        let (t, f) = parse_term::<u64>(&[("X", 1)], 3).unwrap();
        assert_eq!((t.v, t.w), (0, 0b001));
        assert_eq!(f, Complex64::new(1.0, 0.0));
        let (t, f) = parse_term::<u64>(&[("Y", 2)], 3).unwrap();
        assert_eq!((t.v, t.w), (0b010, 0b010));
        assert_eq!(f, Complex64::new(0.0, -1.0));
        let (t, f) = parse_term::<u64>(&[("Z", 1), ("Z", 2)], 3).unwrap();
        assert_eq!((t.v, t.w), (0b011, 0));
        assert_eq!(f, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_term::<u64>(&[("Q", 1)], 3).unwrap_err(),
            PauliError::BadSymbol("Q".into())
        );
        assert_eq!(
            parse_term::<u64>(&[("X", 4)], 3).unwrap_err(),
            PauliError::SiteOutOfRange { site: 4, n: 3 }
        );
        assert_eq!(
            parse_term::<u64>(&[("X", 0)], 3).unwrap_err(),
            PauliError::SiteOutOfRange { site: 0, n: 3 }
        );
        assert_eq!(
            parse_term::<u64>(&[("X", 2), ("Z", 2)], 3).unwrap_err(),
            PauliError::DuplicateSite(2)
        );
        assert!(matches!(
            parse_term::<u64>(&[("X", 1)], 65),
            Err(PauliError::TooManySites { .. })
        ));
        assert!(parse_term::<u128>(&[("X", 100)], 100).is_ok());
    }

    #[test]
    fn wide_rotation() {
        let t = PauliTerm::<u128>::single(Pauli::Z, 100);
        assert_eq!(t.translate(1, 100), PauliTerm::single(Pauli::Z, 1));
        assert_eq!(t.shift_left(100), PauliTerm::single(Pauli::Z, 1));
        let t = PauliTerm::<u64>::single(Pauli::X, 64);
        assert_eq!(t.translate(1, 64), PauliTerm::single(Pauli::X, 1));
    }

    #[test]
    fn mul_i_pow_is_exact() {
        let c = Complex64::new(0.25, -3.5);
        assert_eq!(mul_i_pow(c, 1), c * Complex64::i());
        assert_eq!(mul_i_pow(mul_i_pow(c, 1), 3), c);
        assert_eq!(mul_i_pow(c, 2), -c);
    }
}
