//! Exact rationals with an inline `i64` fast path.
//!
//! Values that fit in a normalized `i64/i64` pair stay inline; anything
//! larger is promoted to a `BigRational`. The representation is canonical:
//! a value is stored `Big` only when it does not fit inline, so derived
//! equality and hashing on the normalized parts are sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    /// numerator, denominator; denominator > 0, gcd = 1.
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Q(Repr);

/// `a·b mod p`.
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub fn zero() -> Q {
        Q(Repr::Small(0, 1))
    }

    pub fn one() -> Q {
        Q(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Q {
        Q(Repr::Small(n, 1))
    }

    /// `n / d`; panics on `d == 0`.
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Q {
        let neg = (n < 0) != (d < 0);
        let (un, ud) = (n.unsigned_abs(), d.unsigned_abs());
        let g = gcd_u128(un, ud).max(1);
        let (un, ud) = (un / g, ud / g);
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = un as i64;
            return Q(Repr::Small(if neg { -n } else { n }, ud as i64));
        }
        let mut num = BigInt::from(un);
        if neg {
            num = -num;
        }
        Q(Repr::Big(BigRational::new_raw(num, BigInt::from(ud))))
    }

    pub fn from_big(r: BigRational) -> Q {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Q(Repr::Small(n, d));
        }
        Q(Repr::Big(r))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// The image in `ℤ/p`, if the denominator is invertible there.
    pub fn residue(&self, p: u64) -> Option<u64> {
        let red = |x: &BigInt| -> u64 {
            let m = BigInt::from(p);
            let r = ((x % &m) + &m) % &m;
            r.to_u64().expect("reduced below p")
        };
        let (n, d) = match &self.0 {
            Repr::Small(n, d) => ((*n as i128).rem_euclid(p as i128) as u64, (*d as i128).rem_euclid(p as i128) as u64),
            Repr::Big(r) => (red(r.numer()), red(r.denom())),
        };
        (d != 0).then(|| mul_mod(n, inv_mod(d, p), p))
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn recip(&self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Q::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(r) => Q::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(-1)^k` for a parity-like integer.
    pub fn sign(odd: bool) -> Q {
        if odd {
            Q::from_int(-1)
        } else {
            Q::one()
        }
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::zero()
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_int(n)
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Q {
        Q::from_int(n as i64)
    }
}

impl From<usize> for Q {
    fn from(n: usize) -> Q {
        Q::from_i128(n as i128, 1)
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Q(Repr::Small(s, 1));
                    }
                }
                let n = (*a as i128) * (*d as i128) + (*c as i128) * (*b as i128);
                let den = (*b as i128) * (*d as i128);
                Q::from_i128(n, den)
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_sub(*c) {
                        return Q(Repr::Small(s, 1));
                    }
                }
                let n = (*a as i128) * (*d as i128) - (*c as i128) * (*b as i128);
                let den = (*b as i128) * (*d as i128);
                Q::from_i128(n, den)
            }
            _ => Q::from_big(self.to_big() - o.to_big()),
        }
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Q(Repr::Small(s, 1));
                    }
                }
                Q::from_i128((*a as i128) * (*c as i128), (*b as i128) * (*d as i128))
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division by zero");
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Q::from_i128((*a as i128) * (*d as i128), (*b as i128) * (*c as i128))
            }
            _ => Q::from_big(self.to_big() / o.to_big()),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Q(Repr::Small(m, *d)),
                None => Q::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(r) => Q::from_big(-r.clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Q> for &'a Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        *self = &*self + o;
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, o: Q) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        *self = &*self - o;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, o: &Q) {
        *self = &*self * o;
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::zero()
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

impl One for Q {
    fn one() -> Q {
        Q::one()
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error for malformed rational literals.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;
    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let s = s.trim();
        let bad = || ParseQError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Ok(Q::from_big(BigRational::new_raw(n, d)))
    }
}

impl serde::Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(Q::new(2, 4), Q::new(1, 2));
        assert_eq!(Q::new(3, -6), Q::new(-1, 2));
        assert_eq!(Q::new(0, -5), Q::zero());
    }

    #[test]
    fn promotes_and_demotes() {
        let big = Q::from_int(i64::MAX);
        let s = &big + &big;
        assert_eq!(s.to_string(), "18446744073709551614");
        let back = &s - &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("3/2".parse::<Q>().unwrap(), Q::new(3, 2));
        assert_eq!("-4/6".parse::<Q>().unwrap().to_string(), "-2/3");
        assert!("1/0".parse::<Q>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(Q::new(1, 3) < Q::new(1, 2));
        assert!(Q::new(-1, 2) < Q::zero());
    }
}
