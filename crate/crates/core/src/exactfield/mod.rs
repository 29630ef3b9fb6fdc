//! Exact scalars and dense linear algebra.
//!
//! Everything structural runs over the rationals with arbitrary-precision
//! numerators and denominators. Small prime fields are only used by the
//! module enumeration in [`crate::funcat`].

mod mat;

pub use mat::{quotient_dim, Mat};

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The default scalar type.
pub type Q = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// All field elements in increasing order.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Fp)
    }

    /// Reduces a rational modulo `P`; fails when `P` divides the denominator.
    pub fn from_rational(q: &Q) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_i64()?;
        let den = q.denom().mod_floor(&p).to_i64()?;
        Fp::<P>::new(den).inv().map(|d| Fp::<P>::new(num).mul(&d))
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + other.0 as u64) % P as u64) as u32)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - other.0 as u64) % P as u64) as u32)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2)
        let mut base = self.0 as u64;
        let mut exp = P as u64 - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            exp >>= 1;
        }
        Some(Fp(acc as u32))
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
}

/// Shorthand for a rational from an integer.
pub fn q(v: i64) -> Q {
    Q::from_i64(v)
}

/// Renders a rational compactly (`3`, `-1/2`).
pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses the output of [`fmt_q`].
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[doc(hidden)]
pub fn is_negative(v: &Q) -> bool {
    v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_q() -> impl Strategy<Value = Q> {
        (-20i64..20, 1i64..12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(Field::is_zero(&a.add(&a.neg())));
            if let Some(ai) = a.inv() {
                prop_assert!(Field::is_one(&a.mul(&ai)));
            }
        }

        #[test]
        fn prime_field_axioms(a in 0i64..7, b in 0i64..7, c in 0i64..7) {
            let (a, b, c) = (Fp::<7>::new(a), Fp::<7>::new(b), Fp::<7>::new(c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if let Some(ai) = a.inv() {
                prop_assert!(a.mul(&ai).is_one());
            }
        }
    }

    #[test]
    fn reduce_mod_p() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Fp::<3>::from_rational(&half), Some(Fp::<3>::new(2)));
        assert_eq!(Fp::<2>::from_rational(&half), None);
        assert_eq!(Fp::<5>::from_rational(&q(-1)), Some(Fp::<5>::new(4)));
    }

    #[test]
    fn q_text_roundtrip() {
        for v in [q(0), q(-3), BigRational::new((-7).into(), 4.into())] {
            assert_eq!(parse_q(&fmt_q(&v)), Some(v));
        }
    }
}
