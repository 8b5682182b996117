use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact number of the form numerator / 2^exponent.
///
/// Canonical form: the numerator is odd or zero, and a zero numerator forces
/// exponent 0. Every integral, norm, and Fourier coefficient of a cylinder
/// function is one of these, so equality and ordering are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicRational {
    num: BigInt,
    exp: u32,
}

impl DyadicRational {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut value = DyadicRational { num, exp };
        value.canonicalize();
        value
    }

    pub fn from_int(n: i64) -> Self {
        DyadicRational::new(BigInt::from(n), 0)
    }

    /// num / 2^exp without constructing a BigInt at the call site.
    pub fn from_ratio(num: i64, exp: u32) -> Self {
        DyadicRational::new(BigInt::from(num), exp)
    }

    pub fn zero() -> Self {
        DyadicRational {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        DyadicRational {
            num: BigInt::from(1),
            exp: 0,
        }
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let trailing = self.num.trailing_zeros().unwrap_or(0);
        let shift = trailing.min(u64::from(self.exp)) as u32;
        if shift > 0 {
            self.num >>= shift;
            self.exp -= shift;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn abs(&self) -> Self {
        DyadicRational {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Exact value divided by 2^k.
    pub fn div_pow2(&self, k: u32) -> Self {
        DyadicRational::new(self.num.clone(), self.exp + k)
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64().unwrap_or(f64::NAN) * 2.0f64.powi(-(self.exp as i32))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let exp = self.exp.max(rhs.exp);
        let left = &self.num << (exp - self.exp);
        let right = &rhs.num << (exp - rhs.exp);
        DyadicRational::new(left + right, exp)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;

    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        let exp = self.exp.max(rhs.exp);
        let left = &self.num << (exp - self.exp);
        let right = &rhs.num << (exp - rhs.exp);
        DyadicRational::new(left - right, exp)
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;

    fn mul(self, rhs: &DyadicRational) -> DyadicRational {
        DyadicRational::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &DyadicRational {
    type Output = DyadicRational;

    fn neg(self) -> DyadicRational {
        DyadicRational {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: DyadicRational) -> DyadicRational {
        &self - &rhs
    }
}

impl Mul for DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: DyadicRational) -> DyadicRational {
        &self * &rhs
    }
}

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        -&self
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        let left = &self.num << (exp - self.exp);
        let right = &other.num << (exp - other.exp);
        left.cmp(&right)
    }
}
