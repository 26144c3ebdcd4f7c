//! Exact scalars and 2x2 matrices.
//!
//! [`Rational`] is a canonical signed fraction over arbitrary-precision
//! integers: the denominator is always positive and coprime to the
//! numerator, and zero is `0/1`. Its text form is `p/q`, collapsing to `p`
//! when `q = 1`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt as Int;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in canonical form.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        rat_pow(self, e)
    }

    /// Power with a non-negative exponent, which never fails.
    pub fn pow_u(&self, e: u64) -> Self {
        let mut acc = BigRational::one();
        let mut base = self.0.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Rational(acc)
    }

    /// `(-1)^e` for any integer `e`.
    pub fn sign_pow(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }
}

/// `q^e` for any integer `e`.
pub fn rat_pow(q: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        Ok(q.pow_u(e as u64))
    } else {
        if q.is_zero() {
            return Err(Error::Domain(format!("zero raised to negative power {e}")));
        }
        Ok(q.pow_u(e.unsigned_abs()).recip().expect("nonzero"))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional leading minus on either part; the
    /// result is canonicalized, so `"2/4"` parses to `1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::parse(format!("{s:?}"), why.to_string());
        let parse_int = |t: &str| -> Result<Int> {
            let t = t.trim();
            if t.is_empty() {
                return Err(bad("empty integer"));
            }
            t.parse::<Int>().map_err(|_| bad("not an integer"))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((p, q)) => {
                let num = parse_int(p)?;
                let den = parse_int(q)?;
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Rational(BigRational::new(num, den)))
            }
        }
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(n)
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

// Panics on a zero divisor, like the integer types; use `checked_div` where
// the divisor is not known to be nonzero.
binop!(Div, div, /);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Row-major 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(
        a: impl Into<Rational>,
        b: impl Into<Rational>,
        c: impl Into<Rational>,
        d: impl Into<Rational>,
    ) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// `[[c1, c2], [1, 0]]`, which maps `(X_{n+1}, X_n)` to `(X_{n+2}, X_{n+1})`.
    pub fn companion(c1: &Rational, c2: &Rational) -> Self {
        Mat2::new(c1.clone(), c2.clone(), 1, 0)
    }

    pub fn det(&self) -> Rational {
        mat2_det(self)
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Domain("singular matrix has no inverse".into()));
        }
        let inv = det.recip()?;
        Ok(Mat2 {
            a: &self.d * &inv,
            b: -(&self.b * &inv),
            c: -(&self.c * &inv),
            d: &self.a * &inv,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Mat2> {
        mat2_pow(self, e)
    }
}

pub fn mat2_det(m: &Mat2) -> Rational {
    &m.a * &m.d - &m.b * &m.c
}

/// Binary exponentiation on `|e|`; negative exponents invert the result once.
pub fn mat2_pow(m: &Mat2, e: i64) -> Result<Mat2> {
    if e < 0 && m.det().is_zero() {
        return Err(Error::Domain(format!(
            "singular matrix raised to negative power {e}"
        )));
    }
    let mut acc = Mat2::identity();
    let mut base = m.clone();
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.mul(&base);
        }
    }
    if e < 0 {
        acc.inverse()
    } else {
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn assert_canonical(r: &Rational) {
        assert!(r.denom() > &BigInt::zero(), "{r:?}");
        assert!(r.numer().gcd(r.denom()).is_one(), "{r:?}");
        if r.is_zero() {
            assert!(r.denom().is_one());
        }
    }

    #[test]
    fn pow_examples() {
        assert_eq!(rat_pow(&q("-3/4"), 2).unwrap(), q("9/16"));
        assert_eq!(rat_pow(&q("-2"), 3).unwrap(), q("-8"));
        assert_eq!(rat_pow(&q("7/5"), 0).unwrap(), Rational::one());
        assert_eq!(rat_pow(&q("2/3"), -2).unwrap(), q("9/4"));
        assert_eq!(rat_pow(&Rational::zero(), 0).unwrap(), Rational::one());
        assert!(matches!(
            rat_pow(&Rational::zero(), -1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn text_form() {
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("6/3").to_string(), "2");
        assert_eq!(q("3/-6").to_string(), "-1/2");
        assert_eq!(q("-0/5").to_string(), "0");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1/".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn companion_fifth_power() {
        let c = Mat2::companion(&q("1"), &q("1"));
        assert_eq!(mat2_pow(&c, 5).unwrap(), Mat2::new(8, 5, 5, 3));
        assert_eq!(mat2_pow(&c, 0).unwrap(), Mat2::identity());
        let inv = mat2_pow(&c, -1).unwrap();
        assert_eq!(inv.mul(&c), Mat2::identity());
        assert_eq!(c.mul(&inv), Mat2::identity());
    }

    #[test]
    fn determinants() {
        let c1 = q("5/2");
        let c2 = q("-3");
        assert_eq!(mat2_det(&Mat2::companion(&c1, &c2)), -c2);
        assert_eq!(mat2_det(&Mat2::identity()), Rational::one());
        assert_eq!(mat2_det(&Mat2::new(2, 1, 1, 3)), q("5"));
    }

    #[test]
    fn singular_negative_power_fails() {
        let m = Mat2::new(1, 2, 2, 4);
        assert!(matches!(mat2_pow(&m, -2), Err(Error::Domain(_))));
        assert!(mat2_pow(&m, 3).is_ok());
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let c = Mat2::companion(&q("1"), &q("1"));
        let m = mat2_pow(&c, 585).unwrap();
        // F_585 has 122 digits
        assert_eq!(m.b.to_string().len(), 122);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        small_rational().prop_filter("nonzero", |r| !r.is_zero())
    }

    #[test]
    fn canonical_closure_over_random_ops() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut acc = Rational::one();
        for step in 0..10_000 {
            let x = Rational::new(rng.random_range(-40i64..=40), rng.random_range(1i64..=40))
                .unwrap();
            acc = match step % 4 {
                0 => &acc + &x,
                1 => &acc - &x,
                2 => &acc * &x,
                _ => {
                    if x.is_zero() {
                        acc
                    } else {
                        &acc / &x
                    }
                }
            };
            assert_canonical(&acc);
            // keep magnitudes from exploding
            if acc.numer().bits() > 256 || acc.denom().bits() > 256 {
                acc = x;
            }
        }
    }

    proptest! {
        #[test]
        fn pow_adds_exponents(q in nonzero_rational(), a in -10i64..=10, b in -10i64..=10) {
            let lhs = rat_pow(&q, a + b).unwrap();
            let rhs = rat_pow(&q, a).unwrap() * rat_pow(&q, b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn det_is_multiplicative_under_powers(
            a in small_rational(), b in small_rational(),
            c in small_rational(), d in small_rational(),
            k in -8i64..=8,
        ) {
            let m = Mat2 { a, b, c, d };
            prop_assume!(!m.det().is_zero());
            let mk = mat2_pow(&m, k).unwrap();
            prop_assert_eq!(mat2_det(&mk), rat_pow(&m.det(), k).unwrap());
            prop_assert_eq!(mat2_pow(&m, -k).unwrap(), mk.inverse().unwrap());
        }

        #[test]
        fn text_round_trip(r in small_rational()) {
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
