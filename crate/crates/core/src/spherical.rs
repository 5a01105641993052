//! Spherical Demazure-Lusztig operators and the spherical function.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::AlgebraElement;
use crate::coeff::CoeffElement;
use crate::error::{Error, Result};
use crate::metaplectic::MetaplecticData;
use crate::rational::RationalElement;
use crate::rootsys::Coweight;

/// `(1 - v e^{n(γ)γ})/(1 - e^{n(γ)γ})`.
pub fn sph_c(md: &MetaplecticData, gamma: &Coweight) -> RationalElement {
    let n = md.n();
    let ng = gamma.scale(md.n_of(gamma) as i32);
    let one = AlgebraElement::one(md.rank(), n);
    RationalElement::new(
        &one - &AlgebraElement::monomial(ng, CoeffElement::v_pow(n, 1)),
        alloc::vec![&one - &AlgebraElement::exp(ng, n)],
    )
    .expect("nonzero denominator")
}

/// `(v - 1)/(1 - e^{n(γ)γ})`.
pub fn sph_b(md: &MetaplecticData, gamma: &Coweight) -> RationalElement {
    crate::dl::b_fn(md, gamma)
}

/// `𝕔(a)·w_a(f) + 𝕓(a)·f` with the ordinary Weyl action.
pub fn sph_simple(md: &MetaplecticData, i: usize, f: &RationalElement) -> Result<RationalElement> {
    if i >= md.rank() {
        return Err(Error::InvalidParameter(format!("simple root index {i} out of range")));
    }
    let a = md.root_system().simple_coroot(i);
    let rs = md.root_system();
    Ok((&(&sph_c(md, &a) * &f.reflect(rs, i)) + &(&sph_b(md, &a) * f)).simplify())
}

/// Spherical operators with a per-instance cache of monomial images.
///
/// Images are polynomial exactly when `n(a)` divides the pairing with `a`;
/// otherwise they stay fractions.
pub struct SphOperators<'a> {
    md: &'a MetaplecticData,
    cache: BTreeMap<(usize, Coweight), RationalElement>,
}

impl<'a> SphOperators<'a> {
    pub fn new(md: &'a MetaplecticData) -> Self {
        SphOperators { md, cache: BTreeMap::new() }
    }

    pub fn simple_monomial(&mut self, i: usize, lambda: &Coweight) -> Result<RationalElement> {
        if let Some(v) = self.cache.get(&(i, *lambda)) {
            return Ok(v.clone());
        }
        let e = RationalElement::from_poly(AlgebraElement::exp(*lambda, self.md.n()));
        let r = sph_simple(self.md, i, &e)?;
        self.cache.insert((i, *lambda), r.clone());
        Ok(r)
    }

    pub fn simple(&mut self, i: usize, f: &RationalElement) -> Result<RationalElement> {
        if !f.is_polynomial() {
            return sph_simple(self.md, i, f);
        }
        let mut acc = RationalElement::zero();
        for (x, c) in f.numerator().terms() {
            acc = &acc + &self.simple_monomial(i, x)?.scale(c);
        }
        Ok(acc.simplify())
    }

    pub fn word(&mut self, word: &[u8], f: &RationalElement) -> Result<RationalElement> {
        let mut acc = f.clone();
        for &i in word.iter().rev() {
            acc = self.simple(i as usize, &acc)?;
        }
        Ok(acc)
    }
}

/// `Γ = ∏_{γ>0} (1 - v e^{-n(γ)γ})/(1 - e^{-n(γ)γ})`.
pub fn gamma_fn(md: &MetaplecticData) -> RationalElement {
    let num = crate::dl::delta_v(md);
    RationalElement::new(num, crate::dl::delta_factors(md)).expect("nonzero denominator")
}

#[derive(Clone, Debug)]
pub struct Spherical {
    pub lambda: Coweight,
    pub rho_pairing: i64,
    /// `v^{⟨ρ,λ⟩} Σ_{w∈W^λ} T̃_w(e^λ)`, simplified.
    pub value: RationalElement,
    /// `value` as a polynomial, when it is one.
    pub polynomial: Option<AlgebraElement>,
    /// `(v^{⟨ρ,λ⟩}/W_λ(v)) Σ_w Γ^w e^{wλ}`, simplified.
    pub gamma_route: RationalElement,
    pub equal: bool,
}

impl Spherical {
    /// The value at `v = q^{-1}`.
    pub fn specialize(&self, q: f64) -> Result<Vec<(Coweight, num_complex::Complex64)>> {
        match &self.polynomial {
            Some(p) => p.specialize(q, None),
            None => Err(Error::Inexpansible(format!("S(π^{}) is not a polynomial", self.lambda))),
        }
    }
}

pub fn spherical_function(md: &MetaplecticData, lambda: &Coweight) -> Result<Spherical> {
    let rs = md.root_system();
    let (stab, reps) = rs.stabilizer_and_cosets(lambda)?;
    let n = md.n();
    let rho = lambda.rho_pairing();
    let vr = CoeffElement::v_pow(n, rho as i32);
    let mut ops = SphOperators::new(md);
    let e = RationalElement::from_poly(AlgebraElement::exp(*lambda, n));
    let mut sum = RationalElement::zero();
    for &w in &reps {
        sum = &sum + &ops.word(&rs.element(w).reduced_word, &e)?;
    }
    let value = sum.scale(&vr).simplify();
    let polynomial = value.to_polynomial().ok();

    let gamma = gamma_fn(md);
    let mut acc = RationalElement::zero();
    for w in rs.weyl() {
        acc = &acc + &gamma.weyl_act(w).mul_poly(&AlgebraElement::exp(w.apply(lambda), n));
    }
    let wl = AlgebraElement::constant(md.rank(), rs.poincare_polynomial(&stab).to_coeff(n, 1));
    let gamma_route = acc.div_poly(&wl)?.scale(&vr).simplify();
    let equal = value.rat_equal(&gamma_route);
    Ok(Spherical { lambda: *lambda, rho_pairing: rho, value, polynomial, gamma_route, equal })
}

/// Whether `(T̃_a + 1)(T̃_a - v)(e^λ) = 0`.
pub fn hecke_at(md: &MetaplecticData, i: usize, lambda: &Coweight) -> Result<bool> {
    let n = md.n();
    let mut ops = SphOperators::new(md);
    let f = RationalElement::from_poly(AlgebraElement::exp(*lambda, n));
    let g = (&ops.simple(i, &f)? - &f.scale(&CoeffElement::v_pow(n, 1))).simplify();
    Ok((&ops.simple(i, &g)? + &g).simplify().is_zero())
}

/// Whether `T̃_w(e^λ) = v^{ℓ(w)} e^λ` for every `w` fixing the dominant `λ`.
pub fn stabilizer_at(md: &MetaplecticData, lambda: &Coweight) -> Result<bool> {
    let rs = md.root_system();
    let (stab, _) = rs.stabilizer_and_cosets(lambda)?;
    let mut ops = SphOperators::new(md);
    let e = RationalElement::from_poly(AlgebraElement::exp(*lambda, md.n()));
    for &w in &stab {
        let w = rs.element(w);
        if !ops.word(&w.reduced_word, &e)?.rat_equal(&e.scale(&CoeffElement::v_pow(md.n(), w.length as i32))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `Σ_{w∈W} T̃_w(e^λ) = W_λ(v) Σ_{w∈W^λ} T̃_w(e^λ)`.
pub fn coset_collapse_at(md: &MetaplecticData, lambda: &Coweight) -> Result<bool> {
    let rs = md.root_system();
    let (stab, reps) = rs.stabilizer_and_cosets(lambda)?;
    let mut ops = SphOperators::new(md);
    let e = RationalElement::from_poly(AlgebraElement::exp(*lambda, md.n()));
    let mut all = RationalElement::zero();
    let mut part = RationalElement::zero();
    for w in rs.weyl() {
        let t = ops.word(&w.reduced_word, &e)?;
        if reps.contains(&w.id) {
            part = &part + &t;
        }
        all = &all + &t;
    }
    Ok(all.rat_equal(&part.scale(&rs.poincare_polynomial(&stab).to_coeff(md.n(), 1))))
}

#[derive(Clone, Debug)]
pub struct MacdonaldReport {
    /// `Σ_w Γ^w = W(v)`.
    pub sum_ok: bool,
    /// `Σ_w T̃_w = Σ_w Γ^w [w]` coefficientwise in the twisted group algebra.
    pub symmetrizer_ok: bool,
}

impl MacdonaldReport {
    pub fn ok(&self) -> bool {
        self.sum_ok && self.symmetrizer_ok
    }
}

pub fn verify_macdonald(md: &MetaplecticData) -> Result<MacdonaldReport> {
    let rs = md.root_system();
    let n = md.n();
    let gamma = gamma_fn(md);
    let conj: Vec<RationalElement> = rs.weyl().iter().map(|w| gamma.weyl_act(w)).collect();
    let sum = conj.iter().fold(RationalElement::zero(), |a, g| &a + g);
    let poincare = AlgebraElement::constant(md.rank(), rs.poincare_polynomial(&rs.ids()).to_coeff(n, 1));
    let sum_ok = crate::dl::poly_equals(&poincare, &sum);

    // T̃_w = T̃_b T̃_{s_b w} as elements Σ_u f_u [u] of the twisted group algebra.
    let order = rs.order();
    let letters: Vec<(RationalElement, RationalElement)> = (0..md.rank())
        .map(|i| {
            let a = rs.simple_coroot(i);
            (sph_c(md, &a), sph_b(md, &a))
        })
        .collect();
    let mut expansions: Vec<BTreeMap<usize, RationalElement>> = Vec::with_capacity(order);
    for w in rs.weyl() {
        if w.length == 0 {
            expansions.push(BTreeMap::from([(w.id, RationalElement::from_poly(AlgebraElement::one(md.rank(), n)))]));
            continue;
        }
        let b = w.reduced_word[0] as usize;
        let rest = &expansions[rs.left_mul(b, w).id];
        let (c, bb) = &letters[b];
        let mut out: BTreeMap<usize, RationalElement> = BTreeMap::new();
        for (&u, f) in rest {
            let su = rs.left_mul(b, rs.element(u)).id;
            let e = out.entry(su).or_insert_with(RationalElement::zero);
            *e = (&*e + &(c * &f.reflect(rs, b))).simplify();
            let e = out.entry(u).or_insert_with(RationalElement::zero);
            *e = (&*e + &(bb * f)).simplify();
        }
        expansions.push(out);
    }
    let mut theta: BTreeMap<usize, RationalElement> = BTreeMap::new();
    for ex in &expansions {
        for (&u, f) in ex {
            let e = theta.entry(u).or_insert_with(RationalElement::zero);
            *e = (&*e + f).simplify();
        }
    }
    let symmetrizer_ok = rs.weyl().iter().all(|w| {
        theta.get(&w.id).is_some_and(|f| f.rat_equal(&conj[w.id]))
    });
    Ok(MacdonaldReport { sum_ok, symmetrizer_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn md(l: &str, n: u32) -> MetaplecticData {
        MetaplecticData::new(RootSystem::from_label(l).unwrap(), n, 1).unwrap()
    }

    #[test]
    fn macdonald_a1_a2() {
        for l in ["A1", "A2"] {
            for n in 1..=3 {
                assert!(verify_macdonald(&md(l, n)).unwrap().ok(), "{l} n={n}");
            }
        }
    }

    #[test]
    fn zero_weight_is_one() {
        for l in ["A1", "A2", "B2"] {
            let s = spherical_function(&md(l, 2), &Coweight::zero(if l == "A1" { 1 } else { 2 })).unwrap();
            assert!(s.equal);
            assert!(s.polynomial.unwrap().is_one());
        }
    }

    #[test]
    fn a1_simple_coroot() {
        // v(e^{a} + 1 + e^{-a} - v)
        let m = md("A1", 1);
        let s = spherical_function(&m, &Coweight::new(&[1])).unwrap();
        assert!(s.equal);
        let v = CoeffElement::v_pow(1, 1);
        let expect = AlgebraElement::from_terms([
            (Coweight::new(&[1]), v.clone()),
            (Coweight::new(&[0]), &v - &CoeffElement::v_pow(1, 2)),
            (Coweight::new(&[-1]), v),
        ]);
        assert_eq!(s.polynomial.unwrap(), expect);
        assert!(matches!(spherical_function(&m, &Coweight::new(&[-1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn fractional_images() {
        // ⟨λ,a⟩ = 1 is not divisible by n(a) = 2.
        let m = md("A2", 2);
        let x = Coweight::new(&[1, 1]);
        let mut ops = SphOperators::new(&m);
        assert!(!ops.simple_monomial(0, &x).unwrap().is_polynomial());
        assert!(hecke_at(&m, 0, &x).unwrap());
        let s = spherical_function(&m, &x).unwrap();
        assert!(s.equal);
        let y = Coweight::new(&[2, 2]);
        assert!(ops.simple_monomial(0, &y).unwrap().is_polynomial());
        assert!(spherical_function(&m, &y).unwrap().polynomial.is_some());
    }

    #[test]
    fn hecke_and_stabilizer() {
        let m = md("B2", 2);
        for x in crate::cg::lambda_box(2, 2) {
            for i in 0..2 {
                assert!(hecke_at(&m, i, &x).unwrap());
            }
        }
        let dominant: Vec<Coweight> =
            crate::cg::lambda_box(2, 3).into_iter().filter(|x| m.root_system().is_dominant(x)).collect();
        assert!(dominant.len() > 2);
        for x in dominant {
            assert!(stabilizer_at(&m, &x).unwrap());
            assert!(coset_collapse_at(&m, &x).unwrap());
        }
    }
}
