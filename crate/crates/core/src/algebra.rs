//! Sparse elements of the group algebra of the coweight lattice over the
//! coefficient ring.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::coeff::CoeffElement;
use crate::error::Result;
use crate::rootsys::{Coweight, RootSystem, WeylElement};
use crate::scalar::Scalar;

/// `Σ c_λ e^λ`, terms sorted lexicographically by coweight, no zero terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AlgebraElement {
    terms: Vec<(Coweight, CoeffElement)>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: Vec::new() }
    }

    pub fn monomial(x: Coweight, c: CoeffElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: alloc::vec![(x, c)] }
    }

    /// `e^x` with coefficient one.
    pub fn exp(x: Coweight, n: u32) -> Self {
        Self::monomial(x, CoeffElement::one(n))
    }

    pub fn constant(rank: usize, c: CoeffElement) -> Self {
        Self::monomial(Coweight::zero(rank), c)
    }

    pub fn one(rank: usize, n: u32) -> Self {
        Self::constant(rank, CoeffElement::one(n))
    }

    /// Builds an element from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Coweight, CoeffElement)>>(it: I) -> Self {
        let mut map: BTreeMap<Coweight, CoeffElement> = BTreeMap::new();
        for (x, c) in it {
            match map.get_mut(&x) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    map.insert(x, c);
                }
            }
        }
        AlgebraElement { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Coweight, CoeffElement)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(x, c)] if x.is_zero() && c.is_one())
    }

    pub fn support(&self) -> impl Iterator<Item = &Coweight> {
        self.terms.iter().map(|(x, _)| x)
    }

    pub fn coeff(&self, x: &Coweight) -> Option<&CoeffElement> {
        self.terms.binary_search_by(|(y, _)| y.cmp(x)).ok().map(|i| &self.terms[i].1)
    }

    /// Unit monomial `c·e^x`, if this element is one.
    pub fn as_unit_monomial(&self) -> Option<(Coweight, &CoeffElement)> {
        match self.terms.as_slice() {
            [(x, c)] if c.as_unit().is_some() => Some((*x, c)),
            _ => None,
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        AlgebraElement { terms: out }
    }

    /// `c·e^x · self`.
    pub fn mul_monomial(&self, x: &Coweight, c: &CoeffElement) -> Self {
        // Translation preserves the lexicographic order.
        AlgebraElement {
            terms: self.terms.iter().map(|(y, d)| (*y + *x, d * c)).filter(|(_, d)| !d.is_zero()).collect(),
        }
    }

    pub fn shift(&self, x: &Coweight) -> Self {
        AlgebraElement { terms: self.terms.iter().map(|(y, d)| (*y + *x, d.clone())).collect() }
    }

    pub fn scale(&self, c: &CoeffElement) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(y, d)| (*y, d * c)).filter(|(_, d)| !d.is_zero()).collect(),
        }
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(y, d)| (*y, d.scale(c))).collect() }
    }

    /// Ordinary action `w(e^λ) = e^{wλ}`.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(y, d)| (w.apply(y), d.clone())).collect();
        terms.sort_by_key(|a| a.0);
        AlgebraElement { terms }
    }

    pub fn reflect(&self, rs: &RootSystem, i: usize) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(y, d)| (rs.reflect(i, y), d.clone())).collect();
        terms.sort_by_key(|a| a.0);
        AlgebraElement { terms }
    }

    pub fn pow(&self, e: u32, rank: usize, n: u32) -> Self {
        let mut acc = Self::one(rank, n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn specialize(&self, q: f64, gauss: Option<&[Complex64]>) -> Result<Vec<(Coweight, Complex64)>> {
        self.terms.iter().map(|(x, c)| Ok((*x, c.specialize(q, gauss)?))).collect()
    }

    /// Exact quotient by `1 + c·e^s`, or `None` if the division leaves a
    /// remainder.
    pub fn div_binomial(&self, c: &CoeffElement, s: &Coweight) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let axis = (0..s.rank()).find(|&i| s.get(i) != 0)?;
        let step = s.get(axis);
        // Lines are cosets of Z·s; each is indexed by its representative with
        // axis coordinate in [0, |step|).
        let mut lines: BTreeMap<Coweight, BTreeMap<i32, &CoeffElement>> = BTreeMap::new();
        for (x, d) in &self.terms {
            let k = x.get(axis).div_euclid(step);
            let base = *x - s.scale(k);
            lines.entry(base).or_default().insert(k, d);
        }
        let mut out = Vec::new();
        for (base, line) in lines {
            let kmin = *line.keys().next().unwrap();
            let kmax = *line.keys().next_back().unwrap();
            let mut prev: Option<CoeffElement> = None;
            for k in kmin..kmax {
                let f = line.get(&k).map(|d| (*d).clone());
                let qk = match (f, &prev) {
                    (Some(f), Some(p)) => &f - &(c * p),
                    (Some(f), None) => f,
                    (None, Some(p)) => -&(c * p),
                    (None, None) => CoeffElement::zero(c.n()),
                };
                let qk = if qk.is_zero() { None } else { Some(qk) };
                if let Some(q) = &qk {
                    out.push((base + s.scale(k), q.clone()));
                }
                prev = qk;
            }
            let top = line[&kmax];
            let carry = match &prev {
                Some(p) => c * p,
                None => CoeffElement::zero(c.n()),
            };
            if *top != carry {
                return None;
            }
        }
        Some(Self::from_terms(out))
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.merge(rhs, false)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.merge(rhs, true)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        if self.is_zero() || rhs.is_zero() {
            return AlgebraElement::zero();
        }
        if let [(x, c)] = rhs.terms.as_slice() {
            return self.mul_monomial(x, c);
        }
        if let [(x, c)] = self.terms.as_slice() {
            return rhs.mul_monomial(x, c);
        }
        let mut map: BTreeMap<Coweight, CoeffElement> = BTreeMap::new();
        for (x, c) in &self.terms {
            for (y, d) in &rhs.terms {
                let p = c * d;
                match map.get_mut(&(*x + *y)) {
                    Some(acc) => *acc = &*acc + &p,
                    None => {
                        map.insert(*x + *y, p);
                    }
                }
            }
        }
        AlgebraElement { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|(x, c)| (*x, -c)).collect() }
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (x, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]e^{x}")?;
        }
        Ok(())
    }
}
