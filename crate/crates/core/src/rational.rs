//! Fractions over the group algebra.
//!
//! The denominator is kept as a sorted list of factors. Each factor is
//! normalized by moving its lexicographically first term, when that term is
//! a unit monomial, into the numerator; two factors that differ by a unit
//! monomial therefore coincide and cancel syntactically. Equality is decided
//! by cross-multiplication after that cancellation.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::algebra::AlgebraElement;
use crate::coeff::CoeffElement;
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, WeylElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalElement {
    num: AlgebraElement,
    den: Vec<AlgebraElement>,
}

/// Moves the unit part of `f` into `num`; returns the normalized factor, or
/// `None` if `f` was a unit monomial.
fn normalize_factor(f: AlgebraElement, num: &mut AlgebraElement) -> Result<Option<AlgebraElement>> {
    let (x, c) = match f.terms().first() {
        None => return Err(Error::ZeroDenominator),
        Some((x, c)) => (*x, c.clone()),
    };
    let Some(ci) = c.inverse_unit() else {
        return Ok(Some(f));
    };
    let neg = -x;
    *num = num.mul_monomial(&neg, &ci);
    if f.len() == 1 {
        return Ok(None);
    }
    Ok(Some(f.mul_monomial(&neg, &ci)))
}

fn product(fs: &[AlgebraElement], rank: usize, n: u32) -> AlgebraElement {
    let mut acc = AlgebraElement::one(rank, n);
    for f in fs {
        acc = &acc * f;
    }
    acc
}

/// Splits two sorted multisets into (a only, common, b only).
fn split(a: &[AlgebraElement], b: &[AlgebraElement]) -> (Vec<AlgebraElement>, Vec<AlgebraElement>, Vec<AlgebraElement>) {
    let (mut i, mut j) = (0, 0);
    let (mut ao, mut common, mut bo) = (Vec::new(), Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                common.push(x.clone());
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                ao.push(x.clone());
                i += 1;
            }
            (Some(x), None) => {
                ao.push(x.clone());
                i += 1;
            }
            (_, Some(y)) => {
                bo.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (ao, common, bo)
}

impl RationalElement {
    pub fn from_poly(num: AlgebraElement) -> Self {
        RationalElement { num, den: Vec::new() }
    }

    /// `num / ∏ factors`.
    pub fn new(num: AlgebraElement, factors: Vec<AlgebraElement>) -> Result<Self> {
        let mut num = num;
        let mut den = Vec::with_capacity(factors.len());
        for f in factors {
            if let Some(g) = normalize_factor(f, &mut num)? {
                den.push(g);
            }
        }
        den.sort();
        Ok(RationalElement { num, den })
    }

    pub fn zero() -> Self {
        Self::from_poly(AlgebraElement::zero())
    }

    pub fn numerator(&self) -> &AlgebraElement {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[AlgebraElement] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Any coefficient appearing in the element, used to recover `n`.
    fn n_hint(&self) -> Option<u32> {
        self.num.terms().first().or_else(|| self.den.first().and_then(|d| d.terms().first())).map(|(_, c)| c.n())
    }

    fn rank_hint(&self) -> Option<usize> {
        self.num.terms().first().or_else(|| self.den.first().and_then(|d| d.terms().first())).map(|(x, _)| x.rank())
    }

    /// The denominator expanded as one polynomial.
    pub fn denominator(&self) -> AlgebraElement {
        match (self.rank_hint(), self.n_hint()) {
            (Some(r), Some(n)) => product(&self.den, r, n),
            _ => AlgebraElement::zero(),
        }
    }

    pub fn mul_poly(&self, p: &AlgebraElement) -> Self {
        RationalElement { num: &self.num * p, den: self.den.clone() }
    }

    /// Division by a polynomial factor.
    pub fn div_poly(&self, p: &AlgebraElement) -> Result<Self> {
        let mut factors = self.den.clone();
        factors.push(p.clone());
        RationalElement::new(self.num.clone(), factors)
    }

    /// Ordinary Weyl action on numerator and denominator.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        let factors = self.den.iter().map(|d| d.weyl_act(w)).collect();
        RationalElement::new(self.num.weyl_act(w), factors).expect("nonzero factors stay nonzero")
    }

    pub fn reflect(&self, rs: &RootSystem, i: usize) -> Self {
        let factors = self.den.iter().map(|d| d.reflect(rs, i)).collect();
        RationalElement::new(self.num.reflect(rs, i), factors).expect("nonzero factors stay nonzero")
    }

    /// Divides out every denominator factor that divides the numerator
    /// exactly as a binomial `1 + c·e^s`.
    pub fn simplify(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for f in &self.den {
            let reduced = match f.terms() {
                [(z, one), (s, c)] if z.is_zero() && one.is_one() => num.div_binomial(c, s),
                _ => None,
            };
            match reduced {
                Some(q) => num = q,
                None => den.push(f.clone()),
            }
        }
        RationalElement { num, den }
    }

    /// The polynomial this fraction equals, if every factor divides out.
    pub fn to_polynomial(&self) -> Result<AlgebraElement> {
        let s = self.simplify();
        if s.den.is_empty() {
            Ok(s.num)
        } else {
            Err(Error::Internal(format!("fraction {self} is not a polynomial")))
        }
    }

    /// Exact equality via cross-multiplication.
    pub fn rat_equal(&self, other: &Self) -> bool {
        let (a, _, b) = split(&self.den, &other.den);
        let (Some(r), Some(n)) = (self.rank_hint().or(other.rank_hint()), self.n_hint().or(other.n_hint())) else {
            return true;
        };
        &self.num * &product(&b, r, n) == &other.num * &product(&a, r, n)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let (a, common, b) = split(&self.den, &other.den);
        let (Some(r), Some(n)) = (self.rank_hint().or(other.rank_hint()), self.n_hint().or(other.n_hint())) else {
            return Self::zero();
        };
        let left = &self.num * &product(&b, r, n);
        let right = &other.num * &product(&a, r, n);
        let num = if negate { &left - &right } else { &left + &right };
        let mut den = common;
        den.extend(a);
        den.extend(b);
        den.sort();
        RationalElement { num, den }
    }

    pub fn scale(&self, c: &CoeffElement) -> Self {
        RationalElement { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl From<AlgebraElement> for RationalElement {
    fn from(p: AlgebraElement) -> Self {
        RationalElement::from_poly(p)
    }
}

impl Add for &RationalElement {
    type Output = RationalElement;
    fn add(self, rhs: &RationalElement) -> RationalElement {
        if self.den == rhs.den {
            return RationalElement { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        self.combine(rhs, false)
    }
}

impl Sub for &RationalElement {
    type Output = RationalElement;
    fn sub(self, rhs: &RationalElement) -> RationalElement {
        if self.den == rhs.den {
            return RationalElement { num: &self.num - &rhs.num, den: self.den.clone() };
        }
        self.combine(rhs, true)
    }
}

impl Mul for &RationalElement {
    type Output = RationalElement;
    fn mul(self, rhs: &RationalElement) -> RationalElement {
        let mut den = self.den.clone();
        den.extend(rhs.den.iter().cloned());
        den.sort();
        RationalElement { num: &self.num * &rhs.num, den }
    }
}

impl Neg for &RationalElement {
    type Output = RationalElement;
    fn neg(self) -> RationalElement {
        RationalElement { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalElement {
    type Output = RationalElement;
    fn add(self, rhs: RationalElement) -> RationalElement {
        &self + &rhs
    }
}

impl Sub for RationalElement {
    type Output = RationalElement;
    fn sub(self, rhs: RationalElement) -> RationalElement {
        &self - &rhs
    }
}

impl Mul for RationalElement {
    type Output = RationalElement;
    fn mul(self, rhs: RationalElement) -> RationalElement {
        &self * &rhs
    }
}

impl fmt::Display for RationalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        for d in &self.den {
            write!(f, " / ({d})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Coweight;
    use proptest::prelude::*;

    fn cw(c: &[i32]) -> Coweight {
        Coweight::new(c)
    }

    fn e(c: &[i32], n: u32) -> AlgebraElement {
        AlgebraElement::exp(cw(c), n)
    }

    #[test]
    fn factorization_example() {
        let n = 1;
        let one = AlgebraElement::one(1, n);
        let lhs = RationalElement::new(&one - &e(&[2], n), alloc::vec![&one - &e(&[1], n)]).unwrap();
        let rhs = RationalElement::from_poly(&one + &e(&[1], n));
        assert!(lhs.rat_equal(&rhs));
        assert_eq!(lhs.to_polynomial().unwrap(), &one + &e(&[1], n));
        assert!(!RationalElement::from_poly(e(&[1, 0], n)).rat_equal(&RationalElement::from_poly(e(&[0, 1], n))));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalElement::new(e(&[1], 1), alloc::vec![AlgebraElement::zero()]), Err(Error::ZeroDenominator));
    }

    #[test]
    fn unit_associates_cancel() {
        // (1 - e^{a}) and (1 - e^{-a}) differ by the unit -e^{a}.
        let n = 2;
        let one = AlgebraElement::one(1, n);
        let f = RationalElement::new(one.clone(), alloc::vec![&one - &e(&[1], n)]).unwrap();
        let g = RationalElement::new(-&e(&[-1], n), alloc::vec![&one - &e(&[-1], n)]).unwrap();
        assert_eq!(f.denominator_factors(), g.denominator_factors());
        assert!(f.rat_equal(&g));
    }

    fn arb_frac() -> impl Strategy<Value = RationalElement> {
        let n = 2u32;
        let poly = proptest::collection::vec((-2i32..=2, -1i32..=1, -2i64..=2), 1..4).prop_map(move |ts| {
            AlgebraElement::from_terms(
                ts.into_iter().map(|(x, j, c)| (cw(&[x]), &CoeffElement::v_pow(n, j) * &CoeffElement::from_int(n, c))),
            )
        });
        let factor = (1i32..=2, 0i32..=1, proptest::bool::ANY).prop_map(move |(k, j, neg)| {
            let s = if neg { -k } else { k };
            &AlgebraElement::one(1, n) - &AlgebraElement::monomial(cw(&[s]), CoeffElement::v_pow(n, j))
        });
        (poly, proptest::collection::vec(factor, 0..3)).prop_map(|(p, fs)| RationalElement::new(p, fs).unwrap())
    }

    proptest! {
        #[test]
        fn equality_is_an_equivalence(x in arb_frac(), y in arb_frac(), z in arb_frac()) {
            prop_assert!(x.rat_equal(&x));
            prop_assert_eq!(x.rat_equal(&y), y.rat_equal(&x));
            let sum = &(&x + &y) - &y;
            prop_assert!(sum.rat_equal(&x));
            let xz = &x * &z;
            let xz2 = &(&(&x + &y) - &y) * &z;
            prop_assert!(xz.rat_equal(&xz2));
            if x.rat_equal(&y) && y.rat_equal(&z) {
                prop_assert!(x.rat_equal(&z));
            }
        }
    }
}
