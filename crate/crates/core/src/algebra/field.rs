//! Arithmetic in prime fields `F_p` with `p < 2^15`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::AlgebraError;

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 15;

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(p: u32) -> Result<(), AlgebraError> {
    if p >= MAX_MODULUS || !is_prime(p) {
        return Err(AlgebraError::InvalidModulus(p));
    }
    Ok(())
}

/// A residue class modulo a prime, always stored fully reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn new(value: i64, modulus: u32) -> Result<Self, AlgebraError> {
        check_modulus(modulus)?;
        Ok(Self {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Result<Self, AlgebraError> {
        field_inverse(self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        Self {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            value: self.value * rhs.value % self.modulus,
            modulus: self.modulus,
        }
    }
}

/// Multiplicative inverse via the extended Euclidean algorithm.
pub fn field_inverse(a: FieldElement) -> Result<FieldElement, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroInverse);
    }
    let (mut old_r, mut r) = (a.value as i64, a.modulus as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    FieldElement::new(old_s, a.modulus)
}

/// Arithmetic context used by the reduction engine. Columns store bare
/// residues; this type carries the modulus and a table of inverses.
#[derive(Clone, Debug)]
pub struct PrimeField {
    modulus: u32,
    inverses: Vec<u32>,
}

impl PrimeField {
    pub fn new(modulus: u32) -> Result<Self, AlgebraError> {
        check_modulus(modulus)?;
        let mut inverses = vec![0; modulus as usize];
        for a in 1..modulus {
            inverses[a as usize] = field_inverse(FieldElement { value: a, modulus })?.value;
        }
        Ok(Self { modulus, inverses })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn element(&self, value: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(value),
            modulus: self.modulus,
        }
    }

    #[inline]
    pub fn reduce(&self, value: i64) -> u32 {
        value.rem_euclid(self.modulus as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.modulus
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.modulus
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.modulus - a) % self.modulus
    }

    /// Inverse of a nonzero residue. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inverses[a as usize]
    }

    /// `+1` or `-1` as a residue.
    #[inline]
    pub fn sign(&self, negative: bool) -> u32 {
        if negative {
            self.modulus - 1
        } else {
            1 % self.modulus
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_inverses() {
        let one = FieldElement::new(1, 2).unwrap();
        assert_eq!(field_inverse(one).unwrap().value(), 1);
        let two = FieldElement::new(2, 5).unwrap();
        assert_eq!(field_inverse(two).unwrap().value(), 3);
    }

    #[test]
    fn exhaustive_inverse_products() {
        for p in [2u32, 3, 5, 7] {
            for a in 1..p {
                let x = FieldElement::new(a as i64, p).unwrap();
                let y = field_inverse(x).unwrap();
                // brute force: the unique b with a*b = 1 mod p
                let expected = (1..p).find(|b| a * b % p == 1).unwrap();
                assert_eq!(y.value(), expected);
                assert_eq!((x * y).value(), 1);
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let z = FieldElement::new(0, 7).unwrap();
        assert!(matches!(field_inverse(z), Err(AlgebraError::ZeroInverse)));
    }

    #[test]
    fn values_are_reduced() {
        let x = FieldElement::new(-3, 5).unwrap();
        assert_eq!(x.value(), 2);
        assert_eq!((x + x).value(), 4);
        assert_eq!((x - FieldElement::new(4, 5).unwrap()).value(), 3);
        assert_eq!((-x).value(), 3);
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0u32, 1, 4, 9, 32768, 32771] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        assert!(PrimeField::new(32749).is_ok());
    }

    #[test]
    fn table_matches_euclid() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.sign(true), 100);
        assert_eq!(PrimeField::new(2).unwrap().sign(true), 1);
    }
}
