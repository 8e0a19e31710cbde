//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Everything downstream is generic over [`Scalar`]. The two implementations
//! are [`num_rational::BigRational`] (re-exported as [`crate::Rat`]) and the
//! runtime-modulus prime field [`Fp`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// An exact field scalar.
///
/// `Zero::zero()` and `One::one()` must be usable without further context;
/// for [`Fp`] they produce modulus-free constants that pick up the modulus
/// from the first value they are combined with.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse; `None` exactly on zero.
    fn inv(&self) -> Option<Self>;

    /// Embed a small integer, taking the modulus (if any) from `like`.
    fn embed_int(n: i64, like: &Self) -> Self;

    /// Number of elements of the field, `None` when infinite.
    fn field_order(like: &Self) -> Option<u64>;

    /// Canonical JSON rendering: `"p/q"` strings over the rationals
    /// (`"/1"` omitted), plain integers in `[0, p)` over a prime field.
    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for num_rational::BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn embed_int(n: i64, _like: &Self) -> Self {
        num_rational::BigRational::from_integer(n.into())
    }

    fn field_order(_like: &Self) -> Option<u64> {
        None
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

/// Element of the prime field `F_p` with the modulus carried at runtime.
///
/// A modulus of `0` marks a context-free constant (produced by `zero()` and
/// `one()` in generic code); binary operations unify moduli and panic on a
/// genuine mismatch, which would indicate mixed-field inputs.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    v: i64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        assert!(p > 0, "prime modulus required");
        assert!(p < (1 << 31), "modulus too large");
        Fp {
            v: v.rem_euclid(p as i64),
            p,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> i64 {
        self.v
    }

    fn unified(a: &Fp, b: &Fp) -> u64 {
        match (a.p, b.p) {
            (0, p) | (p, 0) => p,
            (p, q) => {
                assert_eq!(p, q, "mixed prime moduli {} and {}", p, q);
                p
            }
        }
    }

    fn reduced(v: i128, p: u64) -> Fp {
        if p == 0 {
            Fp {
                v: i64::try_from(v).expect("context-free F_p constant overflow"),
                p: 0,
            }
        } else {
            Fp {
                v: v.rem_euclid(p as i128) as i64,
                p,
            }
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let p = Fp::unified(self, other);
        if p == 0 {
            self.v == other.v
        } else {
            self.v.rem_euclid(p as i64) == other.v.rem_euclid(p as i64)
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = Fp::unified(&self, &rhs);
        Fp::reduced(self.v as i128 + rhs.v as i128, p)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = Fp::unified(&self, &rhs);
        Fp::reduced(self.v as i128 - rhs.v as i128, p)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = Fp::unified(&self, &rhs);
        Fp::reduced(self.v as i128 * rhs.v as i128, p)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::reduced(-(self.v as i128), self.p)
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        if self.p == 0 {
            self.v == 0
        } else {
            self.v.rem_euclid(self.p as i64) == 0
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
}

/// Extended Euclid on `i128`; returns (g, x) with `a x ≡ g (mod m)`.
fn ext_gcd(a: i128, m: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, m);
    let (mut x0, mut x1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
    }
    (r0, x0)
}

impl Scalar for Fp {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.p == 0 {
            // Only the context-free units are invertible without a modulus.
            assert!(
                self.v == 1 || self.v == -1,
                "cannot invert context-free F_p constant {}",
                self.v
            );
            return Some(*self);
        }
        let (g, x) = ext_gcd(self.v as i128, self.p as i128);
        assert!(g == 1 || g == -1, "modulus {} is not prime", self.p);
        let x = if g == 1 { x } else { -x };
        Some(Fp::reduced(x, self.p))
    }

    fn embed_int(n: i64, like: &Self) -> Self {
        Fp::reduced(n as i128, like.p)
    }

    fn field_order(like: &Self) -> Option<u64> {
        if like.p == 0 {
            None
        } else {
            Some(like.p)
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Number(self.v.into())
    }
}

/// Deterministic primality test by trial division (moduli are < 2^31).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn fp_arithmetic_and_inverse() {
        let a = Fp::new(3, 7);
        let b = Fp::new(5, 7);
        assert_eq!(a + b, Fp::new(1, 7));
        assert_eq!(a * b, Fp::new(1, 7));
        assert_eq!(a.inv().unwrap(), Fp::new(5, 7));
        assert_eq!(-a, Fp::new(4, 7));
        assert!(Fp::new(0, 7).inv().is_none());
    }

    #[test]
    fn fp_context_free_constants_unify() {
        let one = <Fp as One>::one();
        let x = Fp::new(4, 5);
        assert_eq!(one + x, Fp::new(0, 5));
        assert_eq!((one + one) * x, Fp::new(3, 5));
        assert_eq!(<Fp as Zero>::zero(), Fp::new(0, 11));
    }

    #[test]
    fn rational_json_is_reduced_string() {
        let x = Rat::new(4.into(), (-6).into());
        assert_eq!(x.to_json(), serde_json::json!("-2/3"));
        let y = Rat::new(8.into(), 4.into());
        assert_eq!(y.to_json(), serde_json::json!("2"));
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(5) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(91));
    }
}
