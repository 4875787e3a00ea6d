//! Exact nonnegative counters.
//!
//! Solution counts grow exponentially with instance size, so a fixed-width
//! integer overflows quickly; heap-allocated big integers everywhere would
//! slow the solver's hot path down. [`Count`] keeps values in a `u64` until
//! they genuinely no longer fit, then promotes to a [`BigUint`].

use std::fmt;

use num_bigint::BigUint;

/// An exact nonnegative count with a machine-word fast path.
///
/// The representation is canonical: values up to `u64::MAX` are always stored
/// inline, so equality and zero checks never need a big-integer compare.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Count(Repr);

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    Small(u64),
    /// Invariant: the value exceeds `u64::MAX`.
    Big(Box<BigUint>),
}

impl Count {
    pub fn zero() -> Self {
        Count(Repr::Small(0))
    }

    pub fn one() -> Self {
        Count(Repr::Small(1))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    /// The value as a `u64` if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Small(n) => Some(*n),
            Repr::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(n) => BigUint::from(*n),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn add_assign(&mut self, other: &Count) {
        match (&mut self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_add(*b) {
                Some(sum) => *a = sum,
                None => {
                    let big = BigUint::from(*a) + BigUint::from(*b);
                    self.0 = Repr::Big(Box::new(big));
                }
            },
            (Repr::Small(a), Repr::Big(b)) => {
                let big = BigUint::from(*a) + &**b;
                self.0 = Repr::Big(Box::new(big));
            }
            (Repr::Big(a), Repr::Small(b)) => **a += *b,
            (Repr::Big(a), Repr::Big(b)) => **a += &**b,
        }
    }

    pub fn mul(&self, other: &Count) -> Count {
        if self.is_zero() || other.is_zero() {
            return Count::zero();
        }
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_mul(*b) {
                Some(p) => Count(Repr::Small(p)),
                None => Count(Repr::Big(Box::new(BigUint::from(*a) * BigUint::from(*b)))),
            },
            (Repr::Small(a), Repr::Big(b)) => Count(Repr::Big(Box::new(BigUint::from(*a) * &**b))),
            (Repr::Big(a), Repr::Small(b)) => Count(Repr::Big(Box::new(&**a * BigUint::from(*b)))),
            (Repr::Big(a), Repr::Big(b)) => Count(Repr::Big(Box::new(&**a * &**b))),
        }
    }
}

impl From<u64> for Count {
    fn from(n: u64) -> Self {
        Count(Repr::Small(n))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n) => n.fmt(f),
            Repr::Big(b) => b.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_stays_inline() {
        let mut c = Count::from(3);
        c.add_assign(&Count::from(4));
        assert_eq!(c, Count::from(7));
        assert_eq!(c.to_u64(), Some(7));
        assert_eq!(c.mul(&Count::from(6)), Count::from(42));
        assert_eq!(c.to_string(), "7");
    }

    #[test]
    fn add_promotes_on_overflow() {
        let mut c = Count::from(u64::MAX);
        c.add_assign(&Count::one());
        assert_eq!(c.to_u64(), None);
        assert_eq!(c.to_string(), "18446744073709551616");
        // and keeps accumulating exactly
        c.add_assign(&Count::from(2));
        assert_eq!(c.to_string(), "18446744073709551618");
    }

    #[test]
    fn mul_promotes_on_overflow() {
        let big = Count::from(1 << 40).mul(&Count::from(1 << 40));
        assert_eq!(big.to_u64(), None);
        assert_eq!(big.to_biguint(), BigUint::from(1u8) << 80);
    }

    #[test]
    fn zero_absorbs_products() {
        let big = Count::from(u64::MAX).mul(&Count::from(u64::MAX));
        assert!(big.mul(&Count::zero()).is_zero());
        assert!(Count::zero().mul(&big).is_zero());
    }

    #[test]
    fn mixed_width_arithmetic_is_exact() {
        let big = Count::from(u64::MAX).mul(&Count::from(2)); // 2^65 - 2
        let mut acc = Count::from(5);
        acc.add_assign(&big);
        let expected = BigUint::from(u64::MAX) * 2u8 + 5u8;
        assert_eq!(acc.to_biguint(), expected);
        assert_eq!(big.mul(&Count::from(3)).to_biguint(), BigUint::from(u64::MAX) * 6u8);
    }
}
