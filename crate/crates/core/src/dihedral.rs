//! The infinite dihedral group in two exact models.
//!
//! * [`SemidirectElement`]: pairs `(k, α)` in `Z ⋊ Z₂`, multiplied by
//!   `(k, α)(n, β) = (k + φ^α(n), α + β)` where `φ⁰ = id` and `φ¹ = −id`.
//! * [`AffineMap`]: isometries `i ↦ εi + n` of the integers, composed as
//!   functions.
//!
//! [`psi`] and [`psi_inverse`] translate between them. Words over the
//! generators `x = (−1, 1)` and `a = (1, 0)` reduce to `aᵏ` or `aᵏx` with
//! [`xa_normal_form`].

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The cyclic group of order two, written additively.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Z2 {
    #[default]
    Zero,
    One,
}

impl Z2 {
    pub const ALL: [Z2; 2] = [Z2::Zero, Z2::One];

    pub fn value(self) -> u8 {
        match self {
            Z2::Zero => 0,
            Z2::One => 1,
        }
    }
}

impl Add for Z2 {
    type Output = Z2;

    fn add(self, rhs: Z2) -> Z2 {
        if self == rhs {
            Z2::Zero
        } else {
            Z2::One
        }
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The action of `Z₂` on `Z`: `φ⁰(n) = n`, `φ¹(n) = −n`.
pub fn phi(alpha: Z2, n: &BigInt) -> BigInt {
    match alpha {
        Z2::Zero => n.clone(),
        Z2::One => -n,
    }
}

/// An element `(k, α)` of `Z ⋊ Z₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemidirectElement {
    pub k: BigInt,
    pub alpha: Z2,
}

impl SemidirectElement {
    pub fn new(k: impl Into<BigInt>, alpha: Z2) -> Self {
        SemidirectElement { k: k.into(), alpha }
    }

    /// `e = (0, 0)`.
    pub fn identity() -> Self {
        Self::new(0, Z2::Zero)
    }

    /// The reflection generator `x = (−1, 1)`.
    pub fn x() -> Self {
        Self::new(-1, Z2::One)
    }

    /// The translation generator `a = (1, 0)`.
    pub fn a() -> Self {
        Self::new(1, Z2::Zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        sd_mul(self, other)
    }

    pub fn inv(&self) -> Self {
        sd_inv(self)
    }

    pub fn pow(&self, m: impl Into<BigInt>) -> Self {
        sd_pow(self, &m.into())
    }
}

impl Mul for &SemidirectElement {
    type Output = SemidirectElement;

    fn mul(self, rhs: &SemidirectElement) -> SemidirectElement {
        sd_mul(self, rhs)
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.alpha)
    }
}

/// `(k, α)(n, β) = (k + φ^α(n), α + β)`.
pub fn sd_mul(u: &SemidirectElement, v: &SemidirectElement) -> SemidirectElement {
    SemidirectElement { k: &u.k + phi(u.alpha, &v.k), alpha: u.alpha + v.alpha }
}

/// `(k, 0)⁻¹ = (−k, 0)`; reflections `(k, 1)` are their own inverses.
pub fn sd_inv(u: &SemidirectElement) -> SemidirectElement {
    match u.alpha {
        Z2::Zero => SemidirectElement { k: -&u.k, alpha: Z2::Zero },
        Z2::One => u.clone(),
    }
}

/// `uᵐ` for any integer `m`; negative exponents go through [`sd_inv`].
pub fn sd_pow(u: &SemidirectElement, m: &BigInt) -> SemidirectElement {
    let base = if m.is_negative() { sd_inv(u) } else { u.clone() };
    let m = m.abs();
    match base.alpha {
        // Translations add up.
        Z2::Zero => SemidirectElement { k: &base.k * &m, alpha: Z2::Zero },
        // Reflections are involutions.
        Z2::One if (&m % 2u8).is_zero() => SemidirectElement::identity(),
        Z2::One => base,
    }
}

/// Sign of the linear part of an [`AffineMap`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Sign {
    fn apply(self, i: &BigInt) -> BigInt {
        match self {
            Sign::Plus => i.clone(),
            Sign::Minus => i.neg(),
        }
    }
}

/// The isometry `i ↦ εi + n` of the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub sign: Sign,
    pub shift: BigInt,
}

impl AffineMap {
    pub fn new(sign: Sign, shift: impl Into<BigInt>) -> Self {
        AffineMap { sign, shift: shift.into() }
    }

    pub fn identity() -> Self {
        Self::new(Sign::Plus, 0)
    }

    pub fn translation(n: impl Into<BigInt>) -> Self {
        Self::new(Sign::Plus, n)
    }

    pub fn reflection(n: impl Into<BigInt>) -> Self {
        Self::new(Sign::Minus, n)
    }

    pub fn apply(&self, i: &BigInt) -> BigInt {
        affine_apply(self, i)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.sign {
            Sign::Plus => "i",
            Sign::Minus => "-i",
        };
        if self.shift.is_zero() {
            write!(f, "i -> {var}")
        } else if self.shift.is_negative() {
            write!(f, "i -> {var}{}", self.shift)
        } else {
            write!(f, "i -> {var}+{}", self.shift)
        }
    }
}

pub fn affine_apply(s: &AffineMap, i: &BigInt) -> BigInt {
    s.sign.apply(i) + &s.shift
}

/// `t = s ∘ σ`, i.e. `t(i) = s(σ(i))`.
pub fn affine_compose(s: &AffineMap, sigma: &AffineMap) -> AffineMap {
    AffineMap { sign: s.sign * sigma.sign, shift: s.sign.apply(&sigma.shift) + &s.shift }
}

pub fn affine_inverse(s: &AffineMap) -> AffineMap {
    match s.sign {
        Sign::Plus => AffineMap { sign: Sign::Plus, shift: -&s.shift },
        Sign::Minus => s.clone(),
    }
}

/// True iff `|s(i) − s(j)| = |i − j|` on every sampled pair.
pub fn isometry_check<'a>(s: &AffineMap, sample: impl IntoIterator<Item = &'a (BigInt, BigInt)>) -> bool {
    isometry_check_fn(|i| affine_apply(s, i), sample)
}

/// [`isometry_check`] for an arbitrary map of the integers.
pub fn isometry_check_fn<'a>(
    f: impl Fn(&BigInt) -> BigInt,
    sample: impl IntoIterator<Item = &'a (BigInt, BigInt)>,
) -> bool {
    sample.into_iter().all(|(i, j)| (f(i) - f(j)).abs() == (i - j).abs())
}

/// `(k, 0) ↦ i ↦ i + k` and `(k, 1) ↦ i ↦ −i + k`.
pub fn psi(u: &SemidirectElement) -> AffineMap {
    let sign = match u.alpha {
        Z2::Zero => Sign::Plus,
        Z2::One => Sign::Minus,
    };
    AffineMap { sign, shift: u.k.clone() }
}

pub fn psi_inverse(s: &AffineMap) -> SemidirectElement {
    let alpha = match s.sign {
        Sign::Plus => Z2::Zero,
        Sign::Minus => Z2::One,
    };
    SemidirectElement { k: s.shift.clone(), alpha }
}

/// Letters of words over `x` and `a`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum XaLetter {
    X,
    A,
    AInv,
}

impl XaLetter {
    pub fn element(self) -> SemidirectElement {
        match self {
            XaLetter::X => SemidirectElement::x(),
            XaLetter::A => SemidirectElement::a(),
            XaLetter::AInv => SemidirectElement::new(-1, Z2::Zero),
        }
    }
}

/// A raw word over `{x, a, a⁻¹}`.
pub type XaWord = Vec<XaLetter>;

/// Parses `x a a' x` (or `a^-1` for the inverse).
pub fn parse_xa_word(text: &str) -> Option<XaWord> {
    text.split_whitespace()
        .map(|t| match t {
            "x" => Some(XaLetter::X),
            "a" => Some(XaLetter::A),
            "a'" | "a^-1" => Some(XaLetter::AInv),
            _ => None,
        })
        .collect()
}

/// Reduced form `aᵏ xᵇ` of an `{x, a}`-word, as `(k, b)`.
///
/// Uses `x² = e` and `x aⁿ x = a⁻ⁿ`, so a letter `a` appended after an
/// `x` moves left past it as `a⁻¹`.
pub fn xa_reduce(word: &[XaLetter]) -> (BigInt, bool) {
    let mut k = BigInt::zero();
    let mut has_x = false;
    for &letter in word {
        match (letter, has_x) {
            (XaLetter::X, _) => has_x = !has_x,
            (XaLetter::A, false) | (XaLetter::AInv, true) => k += BigInt::one(),
            (XaLetter::A, true) | (XaLetter::AInv, false) => k -= BigInt::one(),
        }
    }
    (k, has_x)
}

/// Coordinates of an `{x, a}`-word: `aᵏ ↦ (k, 0)`, `aᵏx ↦ (k − 1, 1)`.
pub fn xa_normal_form(word: &[XaLetter]) -> SemidirectElement {
    match xa_reduce(word) {
        (k, false) => SemidirectElement { k, alpha: Z2::Zero },
        (k, true) => SemidirectElement { k: k - 1, alpha: Z2::One },
    }
}

/// Checks, on the window `k ∈ [−bound, bound]`, that `N = {(n, 0)}` is a
/// normal subgroup, `H = {(0,0), (0,1)}` a subgroup, `N ∩ H = {e}`, and
/// that every `(k, α)` factors as `(k, 0)·(0, α)`.
pub fn internal_decomposition_check(bound: i64) -> bool {
    let window = || (-bound..=bound).flat_map(|k| Z2::ALL.map(|a| SemidirectElement::new(k, a)));
    let in_n = |u: &SemidirectElement| u.alpha == Z2::Zero;
    let in_h = |u: &SemidirectElement| u.k.is_zero();
    let h = [SemidirectElement::identity(), SemidirectElement::new(0, Z2::One)];

    let h_subgroup = h.iter().all(|u| h.iter().all(|v| in_h(&sd_mul(u, v)))) && h.iter().all(|u| in_h(&sd_inv(u)));
    let n_closed = (-bound..=bound).all(|k| {
        let u = SemidirectElement::new(k, Z2::Zero);
        in_n(&sd_inv(&u)) && in_n(&sd_mul(&u, &SemidirectElement::a()))
    });
    let normal = window().all(|g| {
        (-bound..=bound).all(|n| {
            let m = SemidirectElement::new(n, Z2::Zero);
            in_n(&sd_mul(&sd_mul(&g, &m), &sd_inv(&g)))
        })
    });
    let trivial_meet = window().filter(|u| in_n(u) && in_h(u)).eq([SemidirectElement::identity()]);
    let factors = window().all(|u| {
        let n = SemidirectElement::new(u.k.clone(), Z2::Zero);
        let h = SemidirectElement::new(0, u.alpha);
        sd_mul(&n, &h) == u
    });
    h_subgroup && n_closed && normal && trivial_meet && factors
}
