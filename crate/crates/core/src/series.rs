//! Expansion of fractions in positive powers of `e^{n(γ∨)γ∨}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::coeff::CoeffElement;
use crate::error::{Error, Result};
use crate::metaplectic::MetaplecticData;
use crate::rational::RationalElement;
use crate::rootsys::Coweight;

/// Splits `x` as `base + k·step` with a canonical `base` per coset of `Z·step`.
pub fn line_of(x: &Coweight, step: &Coweight) -> (Coweight, i32) {
    let axis = (0..step.rank()).find(|&i| step.get(i) != 0).expect("nonzero step");
    let k = x.get(axis).div_euclid(step.get(axis));
    (*x - step.scale(k), k)
}

/// `p` with `s = p·step`, if it exists.
fn multiple_of(s: &Coweight, step: &Coweight) -> Option<i32> {
    let (base, k) = line_of(s, step);
    base.is_zero().then_some(k)
}

/// A truncated one-direction expansion.
#[derive(Clone, Debug)]
pub struct SeriesSlice {
    pub direction: Coweight,
    pub step: Coweight,
    pub cutoff: u32,
    /// Nonzero coefficients inside the exact window, sorted by coweight.
    pub coeffs: Vec<(Coweight, CoeffElement)>,
    /// Exact index window `[lo, hi]` along each line that carries terms.
    windows: BTreeMap<Coweight, (i32, i32)>,
    n: u32,
}

impl SeriesSlice {
    /// The exact coefficient at `x`, or an error if `x` lies past the window.
    pub fn coefficient_at(&self, x: &Coweight) -> Result<CoeffElement> {
        let (base, k) = line_of(x, &self.step);
        match self.windows.get(&base) {
            None => Ok(CoeffElement::zero(self.n)),
            Some(&(lo, _)) if k < lo => Ok(CoeffElement::zero(self.n)),
            Some(&(_, hi)) if k > hi => Err(Error::BeyondCutoff(format!("{x}"))),
            Some(_) => Ok(self
                .coeffs
                .binary_search_by(|(y, _)| y.cmp(x))
                .map(|i| self.coeffs[i].1.clone())
                .unwrap_or_else(|_| CoeffElement::zero(self.n))),
        }
    }

    pub fn specialize(&self, q: f64, gauss: Option<&[Complex64]>) -> Result<Vec<(Coweight, Complex64)>> {
        self.coeffs.iter().map(|(x, c)| Ok((*x, c.specialize(q, gauss)?))).collect()
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Expands `x` along the coroot `gamma` keeping `cutoff` steps past the
/// lowest term on every line.
pub fn series_expand(md: &MetaplecticData, x: &RationalElement, gamma: &Coweight, cutoff: u32) -> Result<SeriesSlice> {
    let rs = md.root_system();
    rs.check_rank(gamma)?;
    if !rs.is_coroot(gamma) {
        return Err(Error::NotACoroot(format!("{gamma}")));
    }
    let n = md.n();
    let step = gamma.scale(md.n_of(gamma) as i32);
    let x = x.simplify();

    // Each factor 1 + c·e^{p·step} becomes a series in t = e^{step}, listed
    // as (offset, coefficients from the offset upward).
    let mut series: Vec<(i32, Vec<CoeffElement>)> = Vec::new();
    for f in x.denominator_factors() {
        let bad = || Error::Inexpansible(format!("{f}"));
        let (s, c) = match f.terms() {
            [(z, one), (s, c)] if z.is_zero() && one.is_one() => (*s, c.clone()),
            _ => return Err(bad()),
        };
        let p = multiple_of(&s, &step).ok_or_else(bad)?;
        if p > 0 {
            series.push((0, geometric(&-&c, p, cutoff, n)));
        } else {
            // 1/(1 + c t^p) = c^{-1} t^{-p} / (1 + c^{-1} t^{-p}).
            let ci = c.inverse_unit().ok_or_else(bad)?;
            let g = geometric(&-&ci, -p, cutoff, n);
            series.push((-p, g.iter().map(|t| t * &ci).collect()));
        }
    }
    let offset: i32 = series.iter().map(|(o, _)| *o).sum();
    let len = cutoff as usize + 1;
    let mut total = alloc::vec![CoeffElement::zero(n); len];
    total[0] = CoeffElement::one(n);
    for (_, s) in &series {
        let mut next = alloc::vec![CoeffElement::zero(n); len];
        for (i, a) in total.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in s.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
        }
        total = next;
    }
    let mut expansion = Vec::new();
    for (i, c) in total.into_iter().enumerate() {
        if !c.is_zero() {
            expansion.push((step.scale(i as i32 + offset), c));
        }
    }
    let expansion = AlgebraElement::from_terms(expansion);

    let mut windows: BTreeMap<Coweight, (i32, i32)> = BTreeMap::new();
    for y in x.numerator().support() {
        let (base, k) = line_of(y, &step);
        let lo = k + offset;
        windows.entry(base).and_modify(|w| w.0 = w.0.min(lo)).or_insert((lo, lo));
    }
    for w in windows.values_mut() {
        w.1 = w.0 + cutoff as i32;
    }
    let product = x.numerator() * &expansion;
    let coeffs = product
        .terms()
        .iter()
        .filter(|(y, _)| {
            let (base, k) = line_of(y, &step);
            windows.get(&base).is_some_and(|&(lo, hi)| lo <= k && k <= hi)
        })
        .cloned()
        .collect();
    Ok(SeriesSlice { direction: *gamma, step, cutoff, coeffs, windows, n })
}

/// `Σ_k r^k t^{k·p}` for `k·p ≤ cutoff`, as a dense list in powers of `t`.
fn geometric(r: &CoeffElement, p: i32, cutoff: u32, n: u32) -> Vec<CoeffElement> {
    let mut out = alloc::vec![CoeffElement::zero(n); cutoff as usize + 1];
    let mut term = CoeffElement::one(n);
    let mut i = 0usize;
    while i <= cutoff as usize {
        out[i] = term.clone();
        term = &term * r;
        i += p as usize;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn md(l: &str, n: u32) -> MetaplecticData {
        MetaplecticData::new(RootSystem::from_label(l).unwrap(), n, 1).unwrap()
    }

    #[test]
    fn geometric_b() {
        let m = md("A1", 3);
        let a = Coweight::new(&[1]);
        let one = AlgebraElement::one(1, 3);
        let b = RationalElement::new(
            AlgebraElement::constant(1, &CoeffElement::v_pow(3, 1) - &CoeffElement::one(3)),
            alloc::vec![&one - &AlgebraElement::exp(a.scale(3), 3)],
        )
        .unwrap();
        let s = series_expand(&m, &b, &a, 5).unwrap();
        assert_eq!(s.coeffs.len(), 6);
        for (j, (x, c)) in s.coeffs.iter().enumerate() {
            assert_eq!(*x, a.scale(3 * j as i32));
            assert_eq!(*c, &CoeffElement::v_pow(3, 1) - &CoeffElement::one(3));
        }
        assert!(s.coefficient_at(&a.scale(15)).is_ok());
        assert!(s.coefficient_at(&a.scale(18)).is_err());
        assert!(s.coefficient_at(&a.scale(-3)).unwrap().is_zero());
    }

    #[test]
    fn polynomials_expand_to_themselves() {
        let m = md("A2", 2);
        let f = AlgebraElement::from_terms([
            (Coweight::new(&[1, 0]), CoeffElement::g(2, 1)),
            (Coweight::new(&[-1, 2]), CoeffElement::v_pow(2, 2)),
        ]);
        for g in m.root_system().positive_coroots() {
            let s = series_expand(&m, &RationalElement::from_poly(f.clone()), g, 4).unwrap();
            assert_eq!(AlgebraElement::from_terms(s.coeffs.clone()), f);
        }
        let one = RationalElement::from_poly(AlgebraElement::one(2, 2));
        let s = series_expand(&m, &one, &Coweight::new(&[1, 1]), 0).unwrap();
        assert_eq!(s.coeffs, alloc::vec![(Coweight::zero(2), CoeffElement::one(2))]);
    }

    #[test]
    fn negative_direction_factor() {
        // 1/(1 - v e^{-2a}) = -v^{-1} e^{2a} / (1 - v^{-1} e^{2a}).
        let m = md("A1", 2);
        let a = Coweight::new(&[1]);
        let one = AlgebraElement::one(1, 2);
        let f = &one - &AlgebraElement::monomial(a.scale(-2), CoeffElement::v_pow(2, 1));
        let x = RationalElement::new(one.clone(), alloc::vec![f.clone()]).unwrap();
        let s = series_expand(&m, &x, &a, 3).unwrap();
        let back = &AlgebraElement::from_terms(s.coeffs.clone()) * &f;
        // Only the lowest term survives inside the window.
        assert_eq!(back.coeff(&Coweight::zero(1)), Some(&CoeffElement::one(2)));
        assert!(series_expand(&m, &x, &Coweight::new(&[2]), 3).is_err());
        let bad = RationalElement::new(one.clone(), alloc::vec![&one - &AlgebraElement::exp(a, 2)]).unwrap();
        assert!(matches!(series_expand(&m, &bad, &a, 3), Err(Error::Inexpansible(_))));
    }
}
