//! Metaplectic Demazure-Lusztig operators, the symmetrizer and the
//! Casselman-Shalika side of the Whittaker formula.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::AlgebraElement;
use crate::cg;
use crate::coeff::CoeffElement;
use crate::error::{Error, Result};
use crate::metaplectic::MetaplecticData;
use crate::rational::RationalElement;
use crate::rootsys::Coweight;

/// `b(γ∨) = (v-1)/(1 - e^{n(γ∨)γ∨})`.
pub fn b_fn(md: &MetaplecticData, gamma: &Coweight) -> RationalElement {
    let n = md.n();
    let ng = gamma.scale(md.n_of(gamma) as i32);
    let one = AlgebraElement::one(md.rank(), n);
    RationalElement::new(
        AlgebraElement::constant(md.rank(), &CoeffElement::v_pow(n, 1) - &CoeffElement::one(n)),
        alloc::vec![&one - &AlgebraElement::exp(ng, n)],
    )
    .expect("nonzero denominator")
}

/// `c(γ∨) = (1 - v e^{-n(γ∨)γ∨})/(1 - e^{n(γ∨)γ∨})`.
pub fn c_fn(md: &MetaplecticData, gamma: &Coweight) -> RationalElement {
    let n = md.n();
    let ng = gamma.scale(md.n_of(gamma) as i32);
    let one = AlgebraElement::one(md.rank(), n);
    RationalElement::new(
        &one - &AlgebraElement::monomial(-ng, CoeffElement::v_pow(n, 1)),
        alloc::vec![&one - &AlgebraElement::exp(ng, n)],
    )
    .expect("nonzero denominator")
}

/// The closed form of `T_a(e^λ)` for `⟨λ,a⟩ ≥ 0`:
/// `Σ_{k>0, k n(a) ≤ ⟨λ,a⟩} (1-v) e^{λ - k n(a) a} + v g_{Q+B} e^{w_aλ - a}`.
///
/// At `⟨λ,a⟩ = 0` the sum is empty and the value is `v g_Q e^{λ-a}`.
pub fn ta_closed_form(md: &MetaplecticData, i: usize, lambda: &Coweight) -> Option<AlgebraElement> {
    let rs = md.root_system();
    let n = md.n();
    let p = rs.pairing(lambda, i);
    if p < 0 {
        return None;
    }
    let na = md.n_simple(i) as i64;
    let a = rs.simple_coroot(i);
    let one_minus_v = &CoeffElement::one(n) - &CoeffElement::v_pow(n, 1);
    let mut terms: Vec<(Coweight, CoeffElement)> = (1..)
        .take_while(|k| k * na <= p)
        .map(|k| (*lambda - a.scale((k * na) as i32), one_minus_v.clone()))
        .collect();
    let g = &CoeffElement::v_pow(n, 1) * &CoeffElement::g(n, md.q_simple(i) * (1 + p));
    terms.push((rs.reflect(i, lambda) - a, g));
    Some(AlgebraElement::from_terms(terms))
}

/// Demazure-Lusztig operators with a per-instance cache of `T_a(e^λ)`.
pub struct DlOperators<'a> {
    md: &'a MetaplecticData,
    b: Vec<RationalElement>,
    c: Vec<RationalElement>,
    cache: BTreeMap<(usize, Coweight), AlgebraElement>,
}

impl<'a> DlOperators<'a> {
    pub fn new(md: &'a MetaplecticData) -> Self {
        let rs = md.root_system();
        let b = (0..md.rank()).map(|i| b_fn(md, &rs.simple_coroot(i))).collect();
        let c = (0..md.rank()).map(|i| c_fn(md, &rs.simple_coroot(i))).collect();
        DlOperators { md, b, c, cache: BTreeMap::new() }
    }

    pub fn data(&self) -> &MetaplecticData {
        self.md
    }

    /// `T_a(e^λ) = c(a)·(w_a ⋆ e^λ) + b(a)·e^λ`, divided out exactly.
    pub fn simple_monomial(&mut self, i: usize, lambda: &Coweight) -> Result<AlgebraElement> {
        if i >= self.md.rank() {
            return Err(Error::InvalidParameter(format!("simple root index {i} out of range")));
        }
        if let Some(v) = self.cache.get(&(i, *lambda)) {
            return Ok(v.clone());
        }
        let e = RationalElement::from_poly(AlgebraElement::exp(*lambda, self.md.n()));
        let star = cg::cg_simple(self.md, i, &e)?;
        let val = &(&self.c[i] * &star) + &(&self.b[i] * &e);
        let poly = val
            .to_polynomial()
            .map_err(|_| Error::Internal(format!("T_{i}(e^{lambda}) did not divide exactly")))?;
        if let Some(closed) = ta_closed_form(self.md, i, lambda) {
            if closed != poly {
                return Err(Error::Internal(format!("T_{i}(e^{lambda}) disagrees with its closed form")));
            }
        }
        self.cache.insert((i, *lambda), poly.clone());
        Ok(poly)
    }

    pub fn simple(&mut self, i: usize, f: &AlgebraElement) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero();
        for (x, c) in f.terms() {
            acc = &acc + &self.simple_monomial(i, x)?.scale(c);
        }
        Ok(acc)
    }

    /// `T_{b_1} ⋯ T_{b_r}(f)`.
    pub fn word(&mut self, word: &[u8], f: &AlgebraElement) -> Result<AlgebraElement> {
        let mut acc = f.clone();
        for &i in word.iter().rev() {
            acc = self.simple(i as usize, &acc)?;
        }
        Ok(acc)
    }

    /// `T_w(e^λ)` for every `w`, indexed by element id, via canonical words.
    pub fn all_t_w(&mut self, lambda: &Coweight) -> Result<Vec<AlgebraElement>> {
        let rs = self.md.root_system();
        let mut out: Vec<AlgebraElement> = Vec::with_capacity(rs.order());
        for w in rs.weyl() {
            if w.length == 0 {
                out.push(AlgebraElement::exp(*lambda, self.md.n()));
                continue;
            }
            let b = w.reduced_word[0] as usize;
            let rest = rs.left_mul(b, w).id;
            let prev = out[rest].clone();
            out.push(self.simple(b, &prev)?);
        }
        Ok(out)
    }
}

/// `T_a(f)` for a polynomial `f`.
pub fn dl_simple(md: &MetaplecticData, i: usize, f: &RationalElement) -> Result<AlgebraElement> {
    let p = f.to_polynomial()?;
    DlOperators::new(md).simple(i, &p)
}

pub fn dl_word(md: &MetaplecticData, word: &[u8], f: &AlgebraElement) -> Result<AlgebraElement> {
    DlOperators::new(md).word(word, f)
}

fn require_dominant(md: &MetaplecticData, lambda: &Coweight) -> Result<()> {
    let rs = md.root_system();
    rs.check_rank(lambda)?;
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant(format!("{lambda}")));
    }
    Ok(())
}

/// `P(e^λ) = Σ_w T_w(e^λ)`.
pub fn symmetrizer(md: &MetaplecticData, lambda: &Coweight) -> Result<AlgebraElement> {
    require_dominant(md, lambda)?;
    let all = DlOperators::new(md).all_t_w(lambda)?;
    Ok(all.iter().fold(AlgebraElement::zero(), |a, t| &a + t))
}

/// `Δ_v = ∏_{γ>0} (1 - v e^{-n(γ)γ})`.
pub fn delta_v(md: &MetaplecticData) -> AlgebraElement {
    let n = md.n();
    let one = AlgebraElement::one(md.rank(), n);
    md.root_system().positive_coroots().iter().fold(one.clone(), |acc, g| {
        let ng = g.scale(md.n_of(g) as i32);
        &acc * &(&one - &AlgebraElement::monomial(-ng, CoeffElement::v_pow(n, 1)))
    })
}

/// The factors `1 - e^{-n(γ)γ}` of `Δ`.
pub fn delta_factors(md: &MetaplecticData) -> Vec<AlgebraElement> {
    let n = md.n();
    let one = AlgebraElement::one(md.rank(), n);
    md.root_system()
        .positive_coroots()
        .iter()
        .map(|g| &one - &AlgebraElement::exp(-g.scale(md.n_of(g) as i32), n))
        .collect()
}

/// `w ⋆ e^λ` for every `w`, indexed by element id.
pub fn cg_orbit(md: &MetaplecticData, lambda: &Coweight) -> Result<Vec<RationalElement>> {
    let rs = md.root_system();
    let mut out: Vec<RationalElement> = Vec::with_capacity(rs.order());
    for w in rs.weyl() {
        if w.length == 0 {
            out.push(RationalElement::from_poly(AlgebraElement::exp(*lambda, md.n())));
            continue;
        }
        let b = w.reduced_word[0] as usize;
        let rest = rs.left_mul(b, w).id;
        let next = cg::cg_simple(md, b, &out[rest])?;
        out.push(next);
    }
    Ok(out)
}

/// `Σ_w (-1)^{ℓ(w)} (∏_{b∈R∨(w⁻¹)} e^{-n(b)b}) · (w ⋆ e^λ)`.
pub fn alternating_sum(md: &MetaplecticData, lambda: &Coweight) -> Result<RationalElement> {
    let rs = md.root_system();
    let orbit = cg_orbit(md, lambda)?;
    let n = md.n();
    let mut acc = RationalElement::zero();
    for w in rs.weyl() {
        let shift = rs
            .inversions(rs.inverse(w))
            .iter()
            .fold(Coweight::zero(md.rank()), |s, b| s - b.scale(md.n_of(b) as i32));
        let sign = if w.length % 2 == 0 { 1 } else { -1 };
        let mono = AlgebraElement::monomial(shift, CoeffElement::from_int(n, sign));
        acc = &acc + &orbit[w.id].mul_poly(&mono);
    }
    Ok(acc)
}

/// `(Δ_v/Δ) · Σ_w (-1)^{ℓ(w)} (∏_{b∈R∨(w⁻¹)} e^{-n(b)b}) · (w ⋆ e^λ)`.
pub fn cs_rhs(md: &MetaplecticData, lambda: &Coweight) -> Result<RationalElement> {
    require_dominant(md, lambda)?;
    let sum = alternating_sum(md, lambda)?.mul_poly(&delta_v(md));
    let mut factors = sum.denominator_factors().to_vec();
    factors.extend(delta_factors(md));
    RationalElement::new(sum.numerator().clone(), factors)
}

/// Exact comparison of a polynomial with a fraction.
pub fn poly_equals(p: &AlgebraElement, x: &RationalElement) -> bool {
    let s = x.simplify();
    if s.is_polynomial() {
        return s.numerator() == p;
    }
    RationalElement::from_poly(p.clone()).rat_equal(&s)
}

/// The full Whittaker function `q^{-⟨ρ,λ⟩} Σ_w T_w(e^λ)` with `q^{-1} = v`.
#[derive(Clone, Debug)]
pub struct Whittaker {
    pub lambda: Coweight,
    pub dominant: bool,
    /// `⟨ρ,λ⟩`; the value is `v^{⟨ρ,λ⟩}` times the T-sum.
    pub rho_pairing: i64,
    /// `Σ_w T_w(e^λ)`.
    pub t_sum: AlgebraElement,
    /// `v^{⟨ρ,λ⟩} Σ_w T_w(e^λ)`.
    pub value: AlgebraElement,
    /// `v^{⟨ρ,λ⟩}` times [`cs_rhs`], simplified.
    pub closed_form: RationalElement,
    /// Whether the T-sum equals the alternating `⋆`-sum closed form.
    pub equal: bool,
    pub per_w: Vec<(usize, AlgebraElement)>,
}

pub fn whittaker_full(md: &MetaplecticData, lambda: &Coweight, per_w: bool) -> Result<Whittaker> {
    let rs = md.root_system();
    rs.check_rank(lambda)?;
    let rho = lambda.rho_pairing();
    if !rs.is_dominant(lambda) {
        return Ok(Whittaker {
            lambda: *lambda,
            dominant: false,
            rho_pairing: rho,
            t_sum: AlgebraElement::zero(),
            value: AlgebraElement::zero(),
            closed_form: RationalElement::zero(),
            equal: true,
            per_w: Vec::new(),
        });
    }
    let all = DlOperators::new(md).all_t_w(lambda)?;
    let t_sum = all.iter().fold(AlgebraElement::zero(), |a, t| &a + t);
    let closed = cs_rhs(md, lambda)?;
    let equal = poly_equals(&t_sum, &closed);
    let vr = CoeffElement::v_pow(md.n(), rho as i32);
    let value = t_sum.scale(&vr);
    let closed_form = closed.scale(&vr).simplify();
    let per_w = if per_w { all.into_iter().enumerate().collect() } else { Vec::new() };
    Ok(Whittaker { lambda: *lambda, dominant: true, rho_pairing: rho, t_sum, value, closed_form, equal, per_w })
}

/// `(T_1 + T_a)(e^λ)` for the simple root `a`.
pub fn rank_one_sum(md: &MetaplecticData, i: usize, lambda: &Coweight) -> Result<AlgebraElement> {
    let t = DlOperators::new(md).simple_monomial(i, lambda)?;
    Ok(&AlgebraElement::exp(*lambda, md.n()) + &t)
}

/// Braid relation for the operators `T` on every `λ` in `{-r..r}²`.
pub fn verify_dl_braid(md: &MetaplecticData, r: i32) -> Result<cg::BraidReport> {
    if md.rank() != 2 {
        return Err(Error::InvalidParameter("rank-two system required".into()));
    }
    let m = cg::braid_order(md, 0, 1);
    let (l, rw) = (cg::alternating_word(0, 1, m), cg::alternating_word(1, 0, m));
    let mut ops = DlOperators::new(md);
    let pts = cg::lambda_box(2, r);
    let mut failures = Vec::new();
    for x in &pts {
        let f = AlgebraElement::exp(*x, md.n());
        if ops.word(&l, &f)? != ops.word(&rw, &f)? {
            failures.push(*x);
        }
    }
    Ok(cg::BraidReport { cases: pts.len(), failures })
}

/// The braid relation for the operators `T` on `e^λ`.
pub fn dl_braid_at(md: &MetaplecticData, lambda: &Coweight) -> Result<bool> {
    if md.rank() != 2 {
        return Err(Error::InvalidParameter("rank-two system required".into()));
    }
    let m = cg::braid_order(md, 0, 1);
    let mut ops = DlOperators::new(md);
    let f = AlgebraElement::exp(*lambda, md.n());
    Ok(ops.word(&cg::alternating_word(0, 1, m), &f)? == ops.word(&cg::alternating_word(1, 0, m), &f)?)
}

/// Whether every reduced word of every `w` gives the same `T_w(e^λ)`.
pub fn reduced_words_agree(md: &MetaplecticData, lambda: &Coweight) -> Result<bool> {
    let rs = md.root_system();
    let mut ops = DlOperators::new(md);
    let f = AlgebraElement::exp(*lambda, md.n());
    for w in rs.weyl() {
        let words = rs.reduced_words(w);
        let first = ops.word(&words[0], &f)?;
        for word in &words[1..] {
            if ops.word(word, &f)? != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `(T_a + 1)(T_a - v)(e^λ) = 0`.
pub fn quadratic_relation_at(md: &MetaplecticData, i: usize, lambda: &Coweight) -> Result<bool> {
    let n = md.n();
    let mut ops = DlOperators::new(md);
    let f = AlgebraElement::exp(*lambda, n);
    let t = ops.simple(i, &f)?;
    let g = &t - &f.scale(&CoeffElement::v_pow(n, 1));
    let h = &ops.simple(i, &g)? + &g;
    Ok(h.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn md(l: &str, n: u32, k: i64) -> MetaplecticData {
        MetaplecticData::new(RootSystem::from_label(l).unwrap(), n, k).unwrap()
    }

    fn cw(c: &[i32]) -> Coweight {
        Coweight::new(c)
    }

    #[test]
    fn b_plus_c() {
        let m = md("A2", 2, 1);
        let a = cw(&[1, 0]);
        let n = 2;
        let one = AlgebraElement::one(2, n);
        let na = a.scale(2);
        let rhs = RationalElement::new(
            (&one - &AlgebraElement::exp(-na, n)).scale(&CoeffElement::v_pow(n, 1)),
            alloc::vec![&one - &AlgebraElement::exp(na, n)],
        )
        .unwrap();
        assert!((&b_fn(&m, &a) + &c_fn(&m, &a)).rat_equal(&rhs));
    }

    #[test]
    fn rank_one_example() {
        // A1, n=2: T_a(e^{2a}) = (1-v)(1 + e^{-2a}) + v g_1 e^{-3a}.
        let m = md("A1", 2, 1);
        let t = dl_word(&m, &[0], &AlgebraElement::exp(cw(&[2]), 2)).unwrap();
        let omv = &CoeffElement::one(2) - &CoeffElement::v_pow(2, 1);
        let expect = AlgebraElement::from_terms([
            (cw(&[0]), omv.clone()),
            (cw(&[-2]), omv),
            (cw(&[-3]), &CoeffElement::v_pow(2, 1) * &CoeffElement::g(2, 1)),
        ]);
        assert_eq!(t, expect);
    }

    #[test]
    fn zero_pairing_sign() {
        for n in 1..=4 {
            let m = md("A1", n, 1);
            let t = dl_word(&m, &[0], &AlgebraElement::one(1, n)).unwrap();
            let g = &CoeffElement::v_pow(n, 1) * &CoeffElement::g(n, 1);
            assert_eq!(t, AlgebraElement::monomial(cw(&[-1]), g));
        }
        let m = md("A1", 1, 1);
        let p = symmetrizer(&m, &cw(&[0])).unwrap();
        let expect = &AlgebraElement::one(1, 1) - &AlgebraElement::monomial(cw(&[-1]), CoeffElement::v_pow(1, 1));
        assert_eq!(p, expect);
    }

    #[test]
    fn polynomial_on_negative_pairings() {
        for (l, n) in [("A2", 3), ("B2", 2), ("G2", 2)] {
            let m = md(l, n, 1);
            let mut ops = DlOperators::new(&m);
            for x in cg::lambda_box(2, 2) {
                for i in 0..2 {
                    ops.simple_monomial(i, &x).unwrap();
                }
            }
        }
    }

    #[test]
    fn symmetrizer_matches_cs_small() {
        for (l, n) in [("A1", 3), ("A2", 2), ("B2", 2)] {
            let m = md(l, n, 1);
            for x in cg::lambda_box(m.rank(), 1) {
                if m.root_system().is_dominant(&x) {
                    let p = symmetrizer(&m, &x).unwrap();
                    assert!(poly_equals(&p, &cs_rhs(&m, &x).unwrap()), "{l} {n} {x}");
                }
            }
        }
        assert!(matches!(symmetrizer(&md("A2", 1, 1), &cw(&[1, 0])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn whittaker_flags() {
        let m = md("A1", 3, 1);
        let w = whittaker_full(&m, &cw(&[1]), true).unwrap();
        assert!(w.dominant && w.equal);
        assert_eq!(w.per_w.len(), 2);
        // e^{a} - v e^{-2a}, times v^{⟨ρ,λ⟩}.
        let expect = &AlgebraElement::exp(cw(&[1]), 3) - &AlgebraElement::monomial(cw(&[-2]), CoeffElement::v_pow(3, 1));
        assert_eq!(w.t_sum, expect);
        assert_eq!(w.value, expect.scale(&CoeffElement::v_pow(3, 1)));
        let neg = whittaker_full(&m, &cw(&[-1]), false).unwrap();
        assert!(!neg.dominant && neg.value.is_zero());
    }

    #[test]
    fn braid_and_words() {
        assert!(verify_dl_braid(&md("A2", 2, 1), 1).unwrap().ok());
        assert!(verify_dl_braid(&md("B2", 3, 1), 1).unwrap().ok());
        assert!(reduced_words_agree(&md("B2", 2, 1), &cw(&[1, 1])).unwrap());
    }

    #[test]
    fn quadratic_relation() {
        for n in 1..=4 {
            let m = md("A2", n, 1);
            for x in cg::lambda_box(2, 2) {
                assert!(quadratic_relation_at(&m, 0, &x).unwrap(), "n={n} {x}");
            }
        }
    }
}
