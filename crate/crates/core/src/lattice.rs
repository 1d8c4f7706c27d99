//! Exact arithmetic on the Eisenstein lattice `Z[ω]`, `ω = e^{iπ/3}`.
//!
//! A point `a + bω` is stored as the pair `(a, b)`. Multiplication reduces
//! with `ω² = ω − 1`, so multiplying by `ω` is a rotation by π/3.
//!
//! The honeycomb used everywhere else in the crate lives on this lattice:
//! hexagon centers are the points of color class 0, and the hexagon corners
//! split into class 1 (the curve vertex set `W`) and class 2.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("integer overflow in Eisenstein arithmetic")]
    Overflow,
    #[error("{0} is not divisible by {1}")]
    NotDivisible(EisensteinInt, EisensteinInt),
    #[error("invalid chirality {0:?}")]
    BadChirality(char),
}

/// A point `a + bω` of the triangular lattice.
///
/// Ordering is lexicographic on `(a, b)`; it is the tie-break used by every
/// deterministic traversal in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl From<[i64; 2]> for EisensteinInt {
    fn from(v: [i64; 2]) -> Self {
        EisensteinInt::new(v[0], v[1])
    }
}

impl From<EisensteinInt> for [i64; 2] {
    fn from(z: EisensteinInt) -> Self {
        [z.a, z.b]
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

impl EisensteinInt {
    pub const ZERO: EisensteinInt = EisensteinInt { a: 0, b: 0 };
    pub const ONE: EisensteinInt = EisensteinInt { a: 1, b: 0 };
    pub const OMEGA: EisensteinInt = EisensteinInt { a: 0, b: 1 };
    /// `1 + ω`: the offset between adjacent hexagon centers.
    pub const HEX_STEP: EisensteinInt = EisensteinInt { a: 1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        EisensteinInt { a, b }
    }

    /// `ω^k` for any integer `k` (taken mod 6).
    pub fn omega_pow(k: i64) -> Self {
        const UNITS: [EisensteinInt; 6] = [
            EisensteinInt::new(1, 0),
            EisensteinInt::new(0, 1),
            EisensteinInt::new(-1, 1),
            EisensteinInt::new(-1, 0),
            EisensteinInt::new(0, -1),
            EisensteinInt::new(1, -1),
        ];
        UNITS[k.rem_euclid(6) as usize]
    }

    pub fn checked_add(self, o: Self) -> Result<Self, LatticeError> {
        Ok(EisensteinInt::new(
            self.a.checked_add(o.a).ok_or(LatticeError::Overflow)?,
            self.b.checked_add(o.b).ok_or(LatticeError::Overflow)?,
        ))
    }

    pub fn checked_sub(self, o: Self) -> Result<Self, LatticeError> {
        Ok(EisensteinInt::new(
            self.a.checked_sub(o.a).ok_or(LatticeError::Overflow)?,
            self.b.checked_sub(o.b).ok_or(LatticeError::Overflow)?,
        ))
    }

    pub fn checked_neg(self) -> Result<Self, LatticeError> {
        Ok(EisensteinInt::new(
            self.a.checked_neg().ok_or(LatticeError::Overflow)?,
            self.b.checked_neg().ok_or(LatticeError::Overflow)?,
        ))
    }

    /// `(a + bω)(c + dω) = (ac − bd) + (ad + bc + bd)ω`.
    pub fn checked_mul(self, o: Self) -> Result<Self, LatticeError> {
        let m = |x: i64, y: i64| x.checked_mul(y).ok_or(LatticeError::Overflow);
        let ac = m(self.a, o.a)?;
        let bd = m(self.b, o.b)?;
        let ad = m(self.a, o.b)?;
        let bc = m(self.b, o.a)?;
        let re = ac.checked_sub(bd).ok_or(LatticeError::Overflow)?;
        let im = ad
            .checked_add(bc)
            .and_then(|s| s.checked_add(bd))
            .ok_or(LatticeError::Overflow)?;
        Ok(EisensteinInt::new(re, im))
    }

    /// `a² + ab + b²`.
    pub fn checked_norm(self) -> Result<i64, LatticeError> {
        let m = |x: i64, y: i64| x.checked_mul(y).ok_or(LatticeError::Overflow);
        m(self.a, self.a)?
            .checked_add(m(self.a, self.b)?)
            .and_then(|s| s.checked_add(self.b.checked_mul(self.b)?))
            .ok_or(LatticeError::Overflow)
    }

    pub fn norm(self) -> i64 {
        self.checked_norm().expect("Eisenstein norm overflow")
    }

    /// Complex conjugate: `conj(a + bω) = (a + b) − bω`.
    pub fn conj(self) -> Self {
        EisensteinInt::new(self.a + self.b, -self.b)
    }

    /// Multiplication by `ω^k`, i.e. rotation by `kπ/3` about the origin.
    pub fn rotate(self, k: i64) -> Self {
        let mut z = self;
        for _ in 0..k.rem_euclid(6) {
            z = EisensteinInt::new(-z.b, z.a + z.b);
        }
        z
    }

    /// Rotation by `kπ/3` about `center`.
    pub fn rotate_about(self, center: Self, k: i64) -> Self {
        (self - center).rotate(k) + center
    }

    /// 0 for hexagon centers, 1 for the vertex class `W`, 2 for the other corners.
    pub fn color_class(self) -> u8 {
        (self.a - self.b).rem_euclid(3) as u8
    }

    /// Exact quotient `self / d`, failing when `d` does not divide `self`.
    pub fn checked_div_exact(self, d: Self) -> Result<Self, LatticeError> {
        let n = d.checked_norm()?;
        if n == 0 {
            return Err(LatticeError::NotDivisible(self, d));
        }
        let t = self.checked_mul(d.conj())?;
        if t.a % n != 0 || t.b % n != 0 {
            return Err(LatticeError::NotDivisible(self, d));
        }
        Ok(EisensteinInt::new(t.a / n, t.b / n))
    }

    pub fn divides(self, z: Self) -> bool {
        z.checked_div_exact(self).is_ok()
    }

    /// Euclidean coordinates of the real embedding `ω ↦ (1/2, √3/2)`.
    pub fn to_xy(self) -> (f64, f64) {
        let a = self.a as f64;
        let b = self.b as f64;
        (a + 0.5 * b, b * (3f64.sqrt() / 2.0))
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("Eisenstein addition overflow")
    }
}

impl AddAssign for EisensteinInt {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("Eisenstein subtraction overflow")
    }
}

impl SubAssign for EisensteinInt {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("Eisenstein negation overflow")
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("Eisenstein multiplication overflow")
    }
}

/// Checked product, the fallible form of `*`.
pub fn eis_mul(z: EisensteinInt, w: EisensteinInt) -> Result<EisensteinInt, LatticeError> {
    z.checked_mul(w)
}

/// Returns `(norm(z), conj(z))`.
pub fn eis_norm_conj(z: EisensteinInt) -> Result<(i64, EisensteinInt), LatticeError> {
    Ok((z.checked_norm()?, z.conj()))
}

/// One of the two mirror substitutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    /// The norm-7 multiplier placing the six outer children: `2 + ω` for `+`,
    /// its conjugate `3 − ω` for `−`.
    pub fn gamma(self) -> EisensteinInt {
        match self {
            Chirality::Plus => EisensteinInt::new(2, 1),
            Chirality::Minus => EisensteinInt::new(3, -1),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Chirality::Plus => 1,
            Chirality::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Chirality::Plus => '+',
            Chirality::Minus => '-',
        }
    }

    /// Accepts `+`, `-` and the Unicode minus sign.
    pub fn from_char(c: char) -> Result<Self, LatticeError> {
        match c {
            '+' => Ok(Chirality::Plus),
            '-' | '\u{2212}' => Ok(Chirality::Minus),
            other => Err(LatticeError::BadChirality(other)),
        }
    }

    // ω ≡ RESIDUE_OF_OMEGA (mod γ), so a + bω ≡ a + r·b in Z/7.
    fn residue_of_omega(self) -> i64 {
        match self {
            Chirality::Plus => 5,
            Chirality::Minus => 3,
        }
    }
}

/// A finite chirality word `λ₁λ₂…λₙ`; `λ₁` governs the finest level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Chirality>);

impl Word {
    pub fn new(letters: Vec<Chirality>) -> Self {
        Word(letters)
    }

    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        s.trim().chars().map(Chirality::from_char).collect::<Result<Vec<_>, _>>().map(Word)
    }

    pub fn constant(lambda: Chirality, n: usize) -> Self {
        Word(vec![lambda; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Chirality] {
        &self.0
    }

    /// The word with every letter flipped.
    pub fn flipped(&self) -> Self {
        Word(self.0.iter().map(|c| c.flip()).collect())
    }

    /// The word without its first letter.
    pub fn tail(&self) -> Self {
        Word(self.0.get(1..).unwrap_or_default().to_vec())
    }

    pub fn prefix(&self, n: usize) -> Self {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    /// All `2^n` words of length `n`, in `+ < −` lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        (0..1u32 << n)
            .map(|bits| {
                Word((0..n)
                    .map(|i| if bits >> (n - 1 - i) & 1 == 0 { Chirality::Plus } else { Chirality::Minus })
                    .collect())
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

/// One of the seven digits `{0, ω⁰, …, ω⁵}`: index 0 is zero, index `k + 1` is `ω^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitIndex(u8);

impl DigitIndex {
    pub const ZERO: DigitIndex = DigitIndex(0);

    pub fn all() -> impl Iterator<Item = DigitIndex> {
        (0..7).map(DigitIndex)
    }

    pub fn from_index(i: u8) -> Option<Self> {
        (i < 7).then_some(DigitIndex(i))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn value(self) -> EisensteinInt {
        if self.0 == 0 {
            EisensteinInt::ZERO
        } else {
            EisensteinInt::omega_pow(i64::from(self.0) - 1)
        }
    }
}

// digit index indexed by residue class mod 7
fn digit_by_residue(lambda: Chirality) -> [u8; 7] {
    match lambda {
        Chirality::Plus => [0, 1, 5, 6, 3, 2, 4],
        Chirality::Minus => [0, 1, 3, 2, 5, 6, 4],
    }
}

fn residue_mod7(z: EisensteinInt, lambda: Chirality) -> usize {
    let r = (z.a % 7) + lambda.residue_of_omega() * (z.b % 7);
    r.rem_euclid(7) as usize
}

/// Euclidean-style division by `γ(λ)` onto the digit set: `z = γ(λ)·q + d`.
///
/// The digit is read off the ring map `Z[ω] → Z/7` sending `ω` to its
/// residue modulo `γ(λ)`, so no search is involved.
pub fn gamma_div_rem(
    z: EisensteinInt,
    lambda: Chirality,
) -> Result<(EisensteinInt, DigitIndex), LatticeError> {
    let d = DigitIndex(digit_by_residue(lambda)[residue_mod7(z, lambda)]);
    let q = z.checked_sub(d.value())?.checked_div_exact(lambda.gamma())?;
    Ok((q, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(eis_mul(e(1, 1), e(1, 1)).unwrap(), e(0, 3));
        assert_eq!(eis_mul(e(2, 1), e(3, -1)).unwrap(), e(7, 0));
        let mut z = e(5, -2);
        for _ in 0..6 {
            z = z * EisensteinInt::OMEGA;
        }
        assert_eq!(z, e(5, -2));
    }

    #[test]
    fn norm_conj_examples() {
        assert_eq!(eis_norm_conj(e(2, 1)).unwrap(), (7, e(3, -1)));
        assert_eq!(eis_norm_conj(e(1, 1)).unwrap(), (3, e(2, -1)));
        assert_eq!(eis_norm_conj(e(0, 0)).unwrap(), (0, e(0, 0)));
        let z = e(-4, 9);
        assert_eq!(z * z.conj(), e(z.norm(), 0));
    }

    #[test]
    fn overflow_is_reported() {
        let big = e(i64::MAX / 2, i64::MAX / 2);
        assert_eq!(eis_mul(big, big), Err(LatticeError::Overflow));
        assert_eq!(e(i64::MAX, 0).checked_add(e(1, 0)), Err(LatticeError::Overflow));
        assert_eq!(e(i64::MAX, 0).checked_norm(), Err(LatticeError::Overflow));
    }

    #[test]
    fn color_examples() {
        assert_eq!(e(1, 1).color_class(), 0);
        assert_eq!(e(1, 0).color_class(), 1);
        assert_eq!(e(0, 1).color_class(), 2);
        assert_eq!(Chirality::Plus.gamma().color_class(), 1);
        assert_eq!(Chirality::Minus.gamma().color_class(), 1);
    }

    #[test]
    fn rotate_matches_mul() {
        let z = e(3, -7);
        for k in 0..12 {
            assert_eq!(z.rotate(k), z * EisensteinInt::omega_pow(k));
        }
    }

    #[test]
    fn div_rem_examples() {
        let (q, d) = gamma_div_rem(e(0, 8), Chirality::Plus).unwrap();
        assert_eq!((q, d.value()), (e(1, 2), e(0, 1)));
        // brute-force cross-check over the seven digits
        let hits: Vec<_> = DigitIndex::all()
            .filter(|d| Chirality::Plus.gamma().divides(e(0, 8) - d.value()))
            .collect();
        assert_eq!(hits, vec![d]);
        for l in [Chirality::Plus, Chirality::Minus] {
            assert_eq!(gamma_div_rem(e(0, 0), l).unwrap(), (e(0, 0), DigitIndex::ZERO));
        }
        let (q, d) = gamma_div_rem(e(1, 0), Chirality::Plus).unwrap();
        assert_eq!((q, d.value()), (e(0, 0), e(1, 0)));
    }

    #[test]
    fn residue_table_matches_digits() {
        for l in [Chirality::Plus, Chirality::Minus] {
            for d in DigitIndex::all() {
                assert_eq!(digit_by_residue(l)[residue_mod7(d.value(), l)], d.index());
            }
        }
    }

    #[test]
    fn digits_are_a_complete_residue_system() {
        for l in [Chirality::Plus, Chirality::Minus] {
            for x in DigitIndex::all() {
                for y in DigitIndex::all() {
                    if x != y {
                        assert!(!l.gamma().divides(x.value() - y.value()));
                    }
                }
            }
        }
    }

    #[test]
    fn div_rem_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let z = e(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(-1_000_000..=1_000_000));
            for l in [Chirality::Plus, Chirality::Minus] {
                let (q, d) = gamma_div_rem(z, l).unwrap();
                assert_eq!(l.gamma() * q + d.value(), z);
            }
        }
    }

    #[test]
    fn repeated_division_terminates() {
        for l in [Chirality::Plus, Chirality::Minus] {
            let mut z = e(123_456, -98_765);
            let mut steps = 0;
            while z != EisensteinInt::ZERO {
                z = gamma_div_rem(z, l).unwrap().0;
                steps += 1;
                assert!(steps < 64);
            }
        }
    }

    #[test]
    fn multiplicativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let z = e(rng.gen_range(-10_000..=10_000), rng.gen_range(-10_000..=10_000));
            let w = e(rng.gen_range(-10_000..=10_000), rng.gen_range(-10_000..=10_000));
            assert_eq!((z * w).norm(), z.norm() * w.norm());
            assert_eq!(
                (z * w).color_class(),
                (z.color_class() * w.color_class()) % 3
            );
        }
    }

    #[test]
    fn chirality_chars() {
        assert_eq!(Chirality::from_char('+').unwrap(), Chirality::Plus);
        assert_eq!(Chirality::from_char('\u{2212}').unwrap(), Chirality::Minus);
        assert!(Chirality::from_char('x').is_err());
    }
}
