//! Products of `T`-letters in the twisted algebra over `⟨s,t | s² = t² = 1⟩`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::AlgebraElement;
use crate::cg;
use crate::coeff::CoeffElement;
use crate::dl;
use crate::error::{Error, Result};
use crate::metaplectic::MetaplecticData;
use crate::rational::RationalElement;
use crate::rootsys::Coweight;

/// A reduced word in the infinite dihedral group: `len` alternating letters
/// starting at `first` (0 = s, 1 = t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarWord {
    len: u8,
    first: u8,
}

impl StarWord {
    pub const IDENTITY: StarWord = StarWord { len: 0, first: 0 };

    pub fn letter(i: u8) -> Self {
        StarWord { len: 1, first: i }
    }

    pub fn alternating(first: u8, len: u8) -> Self {
        if len == 0 {
            Self::IDENTITY
        } else {
            StarWord { len, first }
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letters(&self) -> Vec<u8> {
        (0..self.len).map(|k| self.first ^ (k & 1)).collect()
    }

    fn last(&self) -> u8 {
        self.first ^ ((self.len - 1) & 1)
    }

    /// The group product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.len == 0 {
            return *other;
        }
        if other.len == 0 {
            return *self;
        }
        if self.last() != other.first {
            return StarWord { len: self.len + other.len, first: self.first };
        }
        match self.len.cmp(&other.len) {
            core::cmp::Ordering::Greater => StarWord { len: self.len - other.len, first: self.first },
            core::cmp::Ordering::Less => {
                StarWord { len: other.len - self.len, first: other.first ^ (self.len & 1) }
            }
            core::cmp::Ordering::Equal => Self::IDENTITY,
        }
    }
}

impl fmt::Display for StarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "1");
        }
        for l in self.letters() {
            write!(f, "{}", if l == 0 { 's' } else { 't' })?;
        }
        Ok(())
    }
}

/// `Σ_y f_y [y]` with `f [w] · g [w'] = f g^{φ(w)} [w w']`.
#[derive(Clone, Debug, Default)]
pub struct TwistedExpansion {
    pub coeffs: BTreeMap<StarWord, RationalElement>,
}

impl TwistedExpansion {
    pub fn coefficient(&self, y: &StarWord) -> RationalElement {
        self.coeffs.get(y).cloned().unwrap_or_else(RationalElement::zero)
    }

    fn mul(&self, other: &Self, md: &MetaplecticData) -> Result<Self> {
        let rs = md.root_system();
        let mut out: BTreeMap<StarWord, RationalElement> = BTreeMap::new();
        for (w, f) in &self.coeffs {
            let phi = rs.from_word(&w.letters())?;
            for (w2, g) in &other.coeffs {
                let term = f * &g.weyl_act(phi);
                let key = w.mul(w2);
                let entry = out.entry(key).or_insert_with(RationalElement::zero);
                *entry = (&*entry + &term).simplify();
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(TwistedExpansion { coeffs: out })
    }
}

/// `c` and `b` of the coroot `γ∨`. The non-metaplectic pair is
/// `((1 - v e^{-γ∨})/(1 - e^{γ∨}), (1 - v)/(1 - e^{γ∨}))`.
pub fn cb_pair(md: &MetaplecticData, gamma: &Coweight, metaplectic: bool) -> (RationalElement, RationalElement) {
    if metaplectic {
        return (dl::c_fn(md, gamma), dl::b_fn(md, gamma));
    }
    let n = md.n();
    let one = AlgebraElement::one(md.rank(), n);
    let den = &one - &AlgebraElement::exp(*gamma, n);
    let v = CoeffElement::v_pow(n, 1);
    let c = RationalElement::new(&one - &AlgebraElement::monomial(-*gamma, v.clone()), alloc::vec![den.clone()]);
    let b = RationalElement::new(AlgebraElement::constant(md.rank(), &CoeffElement::one(n) - &v), alloc::vec![den]);
    (c.expect("nonzero denominator"), b.expect("nonzero denominator"))
}

fn letter(md: &MetaplecticData, i: u8, metaplectic: bool) -> TwistedExpansion {
    let (c, b) = cb_pair(md, &md.root_system().simple_coroot(i as usize), metaplectic);
    let mut coeffs = BTreeMap::new();
    coeffs.insert(StarWord::letter(i), c);
    coeffs.insert(StarWord::IDENTITY, b);
    TwistedExpansion { coeffs }
}

fn require_rank2(md: &MetaplecticData) -> Result<()> {
    if md.rank() != 2 {
        return Err(Error::InvalidParameter("rank-two system required".into()));
    }
    Ok(())
}

/// Expands `T_{b_1} ⋯ T_{b_r}` in the twisted algebra.
pub fn twisted_expand(md: &MetaplecticData, word: &[u8], metaplectic: bool) -> Result<TwistedExpansion> {
    require_rank2(md)?;
    if let Some(&i) = word.iter().find(|&&i| i > 1) {
        return Err(Error::InvalidParameter(format!("letter {i} outside {{0, 1}}")));
    }
    let mut acc = TwistedExpansion { coeffs: BTreeMap::from([(StarWord::IDENTITY, RationalElement::from_poly(AlgebraElement::one(2, md.n())))]) };
    for &i in word {
        acc = acc.mul(&letter(md, i, metaplectic), md)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct FgReport {
    pub m: usize,
    pub metaplectic: bool,
    /// Star-words compared outside the two top words.
    pub compared: usize,
    pub mismatches: Vec<StarWord>,
    /// `f_{w_L} = g_{w_R} = ∏_{γ∨>0} c(γ∨)`.
    pub top_ok: bool,
}

impl FgReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.top_ok
    }
}

/// Compares the expansions of the two alternating `m`-letter products.
pub fn verify_fg(md: &MetaplecticData, metaplectic: bool) -> Result<FgReport> {
    require_rank2(md)?;
    let m = cg::braid_order(md, 0, 1);
    let left = twisted_expand(md, &cg::alternating_word(0, 1, m), metaplectic)?;
    let right = twisted_expand(md, &cg::alternating_word(1, 0, m), metaplectic)?;
    let (wl, wr) = (StarWord::alternating(0, m as u8), StarWord::alternating(1, m as u8));
    let mut keys: Vec<StarWord> = left.coeffs.keys().chain(right.coeffs.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.retain(|y| *y != wl && *y != wr);
    let mismatches: Vec<StarWord> =
        keys.iter().filter(|y| !left.coefficient(y).rat_equal(&right.coefficient(y))).copied().collect();
    let top = md
        .root_system()
        .positive_coroots()
        .iter()
        .fold(RationalElement::from_poly(AlgebraElement::one(2, md.n())), |acc, g| &acc * &cb_pair(md, g, metaplectic).0);
    let top_ok = left.coefficient(&wl).rat_equal(&top) && right.coefficient(&wr).rat_equal(&top);
    Ok(FgReport { m, metaplectic, compared: keys.len(), mismatches, top_ok })
}
