//! Gaussian rationals: exact values of the form `re + im * sqrt(-1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact Gaussian rational `re + im*i`. `BigRational` keeps both parts in
/// lowest terms with positive denominator, so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussRat {
            re: BigRational::from_integer(n),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit sqrt(-1).
    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
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

    /// True when both parts have integral values.
    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        assert!(!n.is_zero(), "division by zero GaussRat");
        GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            if (-&self.im).is_one() {
                return write!(f, "-i");
            }
            return write!(f, "{}*i", fmt_rat(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let mag = self.im.abs();
        if mag.is_one() {
            write!(f, "({} {} i)", fmt_rat(&self.re), sign)
        } else {
            write!(f, "({} {} {}*i)", fmt_rat(&self.re), sign, fmt_rat(&mag))
        }
    }
}

impl GaussRat {
    /// Rational parts as "p/q" strings for JSON output.
    pub fn to_strings(&self) -> (String, String) {
        (
            format!("{}/{}", self.re.numer(), self.re.denom()),
            format!("{}/{}", self.im.numer(), self.im.denom()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussRat::new(
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(5)),
        );
        assert!((&z * &z.inv()).is_one());
    }
}
