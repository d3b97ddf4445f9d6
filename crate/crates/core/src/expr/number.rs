//! Exact Gaussian rationals: `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Number {
    re: BigRational,
    im: BigRational,
}

impl Number {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Number { re, im }
    }

    pub fn zero() -> Self {
        Number::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Number::int(1)
    }

    pub fn i() -> Self {
        Number::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Number::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Number::new(BigRational::new(BigInt::from(n), BigInt::from(d)), BigRational::zero())
    }

    pub fn real(r: BigRational) -> Self {
        Number::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real integer value, if this is one and it fits in an `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    pub fn add(&self, o: &Number) -> Number {
        Number::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Number) -> Number {
        Number::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Number {
        Number::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Number) -> Number {
        if self.im.is_zero() && o.im.is_zero() {
            return Number::real(&self.re * &o.re);
        }
        Number::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn recip(&self) -> Option<Number> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Number::real(self.re.recip()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Number::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn div(&self, o: &Number) -> Option<Number> {
        o.recip().map(|r| self.mul(&r))
    }

    pub fn conj(&self) -> Number {
        Number::new(self.re.clone(), -&self.im)
    }

    pub fn pow_i64(&self, n: i64) -> Option<Number> {
        if n < 0 {
            return self.recip()?.pow_i64(-n);
        }
        let mut base = self.clone();
        let mut acc = Number::one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }

    /// Rational square root of a non-negative real rational, when it exists.
    pub fn exact_sqrt(&self) -> Option<Number> {
        if !self.is_real() || self.re.is_negative() {
            return None;
        }
        let n = self.re.numer();
        let d = self.re.denom();
        let sn = n.sqrt();
        let sd = d.sqrt();
        if &(&sn * &sn) == n && &(&sd * &sd) == d {
            Some(Number::real(BigRational::new(sn, sd)))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Parses a plain decimal literal such as `12`, `0.25` or `3.`.
    pub fn parse_decimal(s: &str) -> Option<Number> {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        Some(Number::real(BigRational::new(n, d)))
    }

    /// Greatest common divisor of two positive rationals (`gcd(a/b, c/d)`).
    pub fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
        let a = a.abs();
        let b = b.abs();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
        BigRational::new(num, a.denom() * b.denom())
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
        } else if self.im.is_negative() {
            write!(f, "-")?;
        }
        let m = self.im.abs();
        if !m.is_one() {
            fmt_rational(&m, f)?;
            write!(f, "*")?;
        }
        write!(f, "I")
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let a = Number::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let b = a.recip().unwrap();
        assert!(a.mul(&b).is_one());
        assert_eq!(Number::i().pow_i64(2).unwrap(), Number::int(-1));
        assert_eq!(Number::i().pow_i64(-1).unwrap(), Number::i().neg());
    }

    #[test]
    fn decimals_and_roots() {
        assert_eq!(Number::parse_decimal("0.25").unwrap(), Number::ratio(1, 4));
        assert_eq!(Number::parse_decimal("12").unwrap(), Number::int(12));
        assert_eq!(Number::ratio(9, 4).exact_sqrt().unwrap(), Number::ratio(3, 2));
        assert!(Number::int(2).exact_sqrt().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(Number::ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(Number::i().neg().to_string(), "-I");
        let z = Number::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into()));
        assert_eq!(z.to_string(), "1/2 + 3*I");
    }

    #[test]
    fn rational_gcd() {
        let g = Number::rational_gcd(
            &BigRational::new(1.into(), 2.into()),
            &BigRational::new(3.into(), 4.into()),
        );
        assert_eq!(g, BigRational::new(1.into(), 4.into()));
    }
}
