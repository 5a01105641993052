//! The coefficient ring: rational combinations of `v^j · ∏ g_i^{e_i}` modulo
//! `g_0 = -1`, `g_i g_{n-i} = v^{-1}` (indices mod `n`).
//!
//! A monomial is stored with one signed exponent per pair `{i, n-i}` with
//! `0 < i < n/2` (positive means a power of `g_i`, negative a power of
//! `g_{n-i}`) plus, for even `n`, a single bit for `g_{n/2}`. That form is
//! canonical, so equality of elements is equality of term lists.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest supported cover degree.
pub const MAX_COVER: u32 = 16;
const MAX_PAIRS: usize = (MAX_COVER as usize - 1) / 2;

/// A reduced monomial `v^{v_exp} · ∏ g_i^{e_i}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GaussMonomial {
    v_exp: i32,
    pairs: [i16; MAX_PAIRS],
    half: bool,
}

impl GaussMonomial {
    pub const ONE: GaussMonomial = GaussMonomial { v_exp: 0, pairs: [0; MAX_PAIRS], half: false };

    pub fn v_pow(j: i32) -> Self {
        GaussMonomial { v_exp: j, ..Self::ONE }
    }

    pub fn v_exp(&self) -> i32 {
        self.v_exp
    }

    pub fn is_pure_v(&self) -> bool {
        !self.half && self.pairs.iter().all(|&e| e == 0)
    }

    /// Exponent vector indexed `1..n-1` (entry `i-1` is the power of `g_i`).
    pub fn g_exponents(&self, n: u32) -> Vec<u32> {
        let n = n as usize;
        let mut out = alloc::vec![0u32; n.saturating_sub(1)];
        for i in 1..n.div_ceil(2) {
            let e = self.pairs[i - 1];
            if e > 0 {
                out[i - 1] = e as u32;
            } else if e < 0 {
                out[n - i - 1] = (-e) as u32;
            }
        }
        if n.is_multiple_of(2) && n > 0 && self.half {
            out[n / 2 - 1] = 1;
        }
        out
    }

    /// Product; the result is `v^shift · m` with `m` reduced, folded into `m`.
    fn mul(&self, other: &Self, n: u32) -> Self {
        let mut out = *self;
        out.v_exp += other.v_exp;
        let pairs = (n as usize - 1) / 2;
        for i in 0..pairs {
            let (a, b) = (self.pairs[i], other.pairs[i]);
            if (a > 0 && b < 0) || (a < 0 && b > 0) {
                out.v_exp -= a.abs().min(b.abs()) as i32;
            }
            out.pairs[i] = a + b;
        }
        if self.half && other.half {
            out.half = false;
            out.v_exp -= 1;
        } else {
            out.half = self.half || other.half;
        }
        out
    }

    fn inverse(&self, n: u32) -> Self {
        let pairs = (n as usize - 1) / 2;
        let mut out = *self;
        let mut shift = 0i32;
        for i in 0..pairs {
            shift += self.pairs[i].unsigned_abs() as i32;
            out.pairs[i] = -self.pairs[i];
        }
        if self.half {
            shift += 1;
        }
        out.v_exp = -self.v_exp + shift;
        out
    }
}

/// An exact element of the coefficient ring for a fixed cover degree `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CoeffElement {
    n: u32,
    terms: Vec<(GaussMonomial, Scalar)>,
}

impl CoeffElement {
    fn check_n(n: u32) {
        assert!((1..=MAX_COVER).contains(&n), "cover degree {n} out of range");
    }

    pub fn zero(n: u32) -> Self {
        Self::check_n(n);
        CoeffElement { n, terms: Vec::new() }
    }

    pub fn constant(n: u32, c: Scalar) -> Self {
        Self::monomial(n, GaussMonomial::ONE, c)
    }

    pub fn one(n: u32) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn from_int(n: u32, c: i64) -> Self {
        Self::constant(n, Scalar::from_int(c))
    }

    pub fn monomial(n: u32, m: GaussMonomial, c: Scalar) -> Self {
        Self::check_n(n);
        if c.is_zero() {
            return Self::zero(n);
        }
        CoeffElement { n, terms: alloc::vec![(m, c)] }
    }

    /// `v^j`.
    pub fn v_pow(n: u32, j: i32) -> Self {
        Self::monomial(n, GaussMonomial::v_pow(j), Scalar::one())
    }

    /// The Gauss symbol `g_k`, index reduced mod `n`.
    pub fn g(n: u32, k: i64) -> Self {
        Self::check_n(n);
        let k = k.rem_euclid(n as i64) as u32;
        if k == 0 {
            return Self::from_int(n, -1);
        }
        let mut m = GaussMonomial::ONE;
        if 2 * k == n {
            m.half = true;
        } else if 2 * k < n {
            m.pairs[k as usize - 1] = 1;
        } else {
            m.pairs[(n - k) as usize - 1] = -1;
        }
        Self::monomial(n, m, Scalar::one())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &[(GaussMonomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == GaussMonomial::ONE && self.terms[0].1.is_one()
    }

    /// Single term `c·m`, i.e. a unit of the ring.
    pub fn as_unit(&self) -> Option<(GaussMonomial, &Scalar)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, c)),
            _ => None,
        }
    }

    pub fn inverse_unit(&self) -> Option<Self> {
        let (m, c) = self.as_unit()?;
        Some(Self::monomial(self.n, m.inverse(self.n), c.recip()?))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        CoeffElement { n: self.n, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::CoverMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn from_map(n: u32, map: BTreeMap<GaussMonomial, Scalar>) -> Self {
        CoeffElement { n, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => core::cmp::Ordering::Less,
                _ => core::cmp::Ordering::Greater,
            };
            match ord {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        CoeffElement { n: self.n, terms: out }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.n));
        }
        if let [(m, c)] = other.terms.as_slice() {
            return Ok(self.mul_monomial(m, c));
        }
        if let [(m, c)] = self.terms.as_slice() {
            return Ok(other.mul_monomial(m, c));
        }
        let mut map = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2, self.n);
                let c = c1 * c2;
                map.entry(m).and_modify(|x: &mut Scalar| *x = &*x + &c).or_insert(c);
            }
        }
        Ok(Self::from_map(self.n, map))
    }

    fn mul_monomial(&self, m: &GaussMonomial, c: &Scalar) -> Self {
        // Multiplication by a monomial is injective on reduced monomials, so
        // the result only needs re-sorting.
        let mut terms: Vec<_> = self.terms.iter().map(|(x, y)| (x.mul(m, self.n), y * c)).collect();
        terms.sort_by_key(|a| a.0);
        CoeffElement { n: self.n, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ring homomorphism `v ↦ 1/q`, `g_k ↦ 𝐠_k`.
    ///
    /// The table is only consulted when a Gauss symbol actually occurs.
    pub fn specialize(&self, q: f64, gauss: Option<&[Complex64]>) -> Result<Complex64> {
        let needs_table = self.terms.iter().any(|(m, _)| !m.is_pure_v());
        let table = match gauss {
            Some(t) => {
                if t.len() != self.n as usize {
                    return Err(Error::CoverMismatch { left: self.n, right: t.len() as u32 });
                }
                Some(t)
            }
            None if needs_table => return Err(Error::MissingGaussTable(self.n)),
            None => None,
        };
        let n = self.n as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut val = Complex64::new(c.to_f64(), 0.0) * libm::pow(q, -(m.v_exp as f64));
            if let Some(t) = table {
                for i in 1..n.div_ceil(2) {
                    let e = m.pairs[i - 1];
                    if e > 0 {
                        val *= t[i].powi(e as i32);
                    } else if e < 0 {
                        val *= t[n - i].powi(-e as i32);
                    }
                }
                if m.half {
                    val *= t[n / 2];
                }
            }
            acc += val;
        }
        Ok(acc)
    }
}

impl Add for &CoeffElement {
    type Output = CoeffElement;
    fn add(self, rhs: &CoeffElement) -> CoeffElement {
        self.checked_add(rhs).expect("coefficient rings differ")
    }
}

impl Sub for &CoeffElement {
    type Output = CoeffElement;
    fn sub(self, rhs: &CoeffElement) -> CoeffElement {
        self.checked_sub(rhs).expect("coefficient rings differ")
    }
}

impl Mul for &CoeffElement {
    type Output = CoeffElement;
    fn mul(self, rhs: &CoeffElement) -> CoeffElement {
        self.checked_mul(rhs).expect("coefficient rings differ")
    }
}

impl Neg for &CoeffElement {
    type Output = CoeffElement;
    fn neg(self) -> CoeffElement {
        CoeffElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Add for CoeffElement {
    type Output = CoeffElement;
    fn add(self, rhs: CoeffElement) -> CoeffElement {
        &self + &rhs
    }
}

impl Sub for CoeffElement {
    type Output = CoeffElement;
    fn sub(self, rhs: CoeffElement) -> CoeffElement {
        &self - &rhs
    }
}

impl Mul for CoeffElement {
    type Output = CoeffElement;
    fn mul(self, rhs: CoeffElement) -> CoeffElement {
        &self * &rhs
    }
}

impl Neg for CoeffElement {
    type Output = CoeffElement;
    fn neg(self) -> CoeffElement {
        -&self
    }
}

impl fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if m.v_exp != 0 {
                factors.push(format!("v^{}", m.v_exp));
            }
            for (i, e) in m.g_exponents(self.n).iter().enumerate() {
                if *e > 0 {
                    factors.push(format!("g{}^{}", i + 1, e));
                }
            }
            let c = c.to_string();
            match (c.as_str(), factors.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                ("1", false) => write!(f, "{}", factors.join("·"))?,
                ("-1", false) => write!(f, "-{}", factors.join("·"))?,
                (_, false) => write!(f, "{c}·{}", factors.join("·"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(n: u32, j: i32) -> CoeffElement {
        CoeffElement::v_pow(n, j)
    }

    #[test]
    fn relations() {
        for n in 1..=8u32 {
            assert_eq!(CoeffElement::g(n, 0), CoeffElement::from_int(n, -1));
            assert_eq!(CoeffElement::g(n, n as i64), CoeffElement::from_int(n, -1));
            for i in 1..n as i64 {
                let p = &CoeffElement::g(n, i) * &CoeffElement::g(n, n as i64 - i);
                assert_eq!(p, v(n, -1), "n={n} i={i}");
                assert_eq!(CoeffElement::g(n, i), CoeffElement::g(n, i - 3 * n as i64));
            }
        }
        let g1 = CoeffElement::g(3, 1);
        let sq = &g1 * &g1;
        assert_eq!(sq.terms().len(), 1);
        assert_eq!(sq.terms()[0].0.g_exponents(3), alloc::vec![2, 0]);
        assert!((&(&g1 * &CoeffElement::g(3, 2)) - &v(3, -1)).is_zero());
        assert!(!(&g1 - &CoeffElement::g(3, 2)).is_zero());
    }

    #[test]
    fn unit_inverse() {
        let n = 6;
        let x = &(&CoeffElement::g(n, 1) * &CoeffElement::g(n, 3)) * &CoeffElement::g(n, 4);
        let x = x.scale(&Scalar::new(-3, 5));
        let y = x.inverse_unit().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn mismatched_rings_rejected() {
        let e = CoeffElement::one(2).checked_mul(&CoeffElement::one(3));
        assert_eq!(e, Err(Error::CoverMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn specialize_needs_table_only_for_gauss_symbols() {
        let x = &v(3, 1) + &CoeffElement::from_int(3, 2);
        let z = x.specialize(7.0, None).unwrap();
        assert!((z.re - (2.0 + 1.0 / 7.0)).abs() < 1e-12);
        assert_eq!(CoeffElement::g(3, 1).specialize(7.0, None), Err(Error::MissingGaussTable(3)));
        let g0 = CoeffElement::g(3, 0).specialize(7.0, None).unwrap();
        assert_eq!(g0, Complex64::new(-1.0, 0.0));
    }

    fn arb_monomial(n: u32) -> impl Strategy<Value = CoeffElement> {
        (-3i32..4, proptest::collection::vec(0i64..(n as i64), 0..3), -5i64..6)
            .prop_filter("nonzero", |(_, _, c)| *c != 0)
            .prop_map(move |(j, gs, c)| {
                let mut x = &v(n, j) * &CoeffElement::from_int(n, c);
                for k in gs {
                    x = &x * &CoeffElement::g(n, k);
                }
                x
            })
    }

    fn arb_element() -> impl Strategy<Value = CoeffElement> {
        (1u32..=7).prop_flat_map(|n| {
            proptest::collection::vec(arb_monomial(n), 1..4)
                .prop_map(move |ts| ts.iter().fold(CoeffElement::zero(n), |a, t| &a + t))
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CoeffElement, CoeffElement, CoeffElement)> {
        (1u32..=7).prop_flat_map(|n| {
            let one = move || {
                proptest::collection::vec(arb_monomial(n), 1..4)
                    .prop_map(move |ts| ts.iter().fold(CoeffElement::zero(n), |a, t| &a + t))
            };
            (one(), one(), one())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((x, y, z) in arb_triple()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn domain((x, y, _) in arb_triple()) {
            if !x.is_zero() && !y.is_zero() {
                prop_assert!(!(&x * &y).is_zero());
            }
        }

        #[test]
        fn reduction_order_irrelevant(n in 2u32..=8, idx in proptest::collection::vec(0i64..16, 1..6)) {
            let gs: Vec<_> = idx.iter().map(|&k| CoeffElement::g(n, k)).collect();
            let fwd = gs.iter().fold(CoeffElement::one(n), |a, g| &a * g);
            let bwd = gs.iter().rev().fold(CoeffElement::one(n), |a, g| &a * g);
            prop_assert_eq!(fwd, bwd);
        }

        #[test]
        fn self_minus_self_is_zero(x in arb_element()) {
            prop_assert!((&x - &x).is_zero());
        }
    }
}
