//! Exact rationals that stay on machine words until they overflow.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// An exact rational number.
///
/// Values that fit in `i64 / i64` are always stored in the `Small` variant,
/// so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Self {
        Scalar::Small(Ratio::from_integer(1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Small(Ratio::from_integer(n))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        if num == i64::MIN || den == i64::MIN {
            return Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
        Scalar::Small(Ratio::new(num, den))
    }

    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Scalar::Small(Ratio::new_raw(n, d));
            }
        }
        Scalar::Big(r)
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Scalar::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small(r) => r.is_zero(),
            Scalar::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small(r) => r.is_one(),
            Scalar::Big(_) => false,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(r) => r.is_negative(),
            Scalar::Big(r) => r.is_negative(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Small(r) if *r.numer() != i64::MIN => Scalar::Small(r.recip()),
            _ => Self::from_big(self.to_big().recip()),
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Scalar::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Integer value, if the denominator is one and it fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Small(r) if r.is_integer() => Some(*r.numer()),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(r) => write!(f, "{r}"),
            Scalar::Big(r) => write!(f, "{r}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Small(a), Scalar::Small(b)) => {
                let l = (*a.numer() as i128) * (*b.denom() as i128);
                let r = (*b.numer() as i128) * (*a.denom() as i128);
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

macro_rules! small_or_big {
    ($a:expr, $b:expr, $checked:ident, $op:tt) => {
        match ($a, $b) {
            (Scalar::Small(x), Scalar::Small(y)) => match x.$checked(y) {
                Some(z) if *z.numer() != i64::MIN && *z.denom() != i64::MIN => Scalar::Small(z),
                _ => Scalar::from_big($a.to_big() $op $b.to_big()),
            },
            _ => Scalar::from_big($a.to_big() $op $b.to_big()),
        }
    };
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Small(x), Scalar::Small(y)) = (self, rhs) {
            if x.is_integer() && y.is_integer() {
                if let Some(z) = i64::checked_add(*x.numer(), *y.numer()) {
                    if z != i64::MIN {
                        return Scalar::Small(Ratio::from_integer(z));
                    }
                }
            }
        }
        small_or_big!(self, rhs, checked_add, +)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        small_or_big!(self, rhs, checked_sub, -)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Small(x), Scalar::Small(y)) = (self, rhs) {
            if x.is_integer() && y.is_integer() {
                if let Some(z) = i64::checked_mul(*x.numer(), *y.numer()) {
                    if z != i64::MIN {
                        return Scalar::Small(Ratio::from_integer(z));
                    }
                }
            }
        }
        small_or_big!(self, rhs, checked_mul, *)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(r) => Scalar::Small(-*r),
            Scalar::Big(r) => Scalar::from_big(-r.clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
