//! The Chinta-Gunnells action of simple reflections and of words.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::AlgebraElement;
use crate::coeff::CoeffElement;
use crate::error::{Error, Result};
use crate::metaplectic::MetaplecticData;
use crate::rational::RationalElement;
use crate::rootsys::Coweight;

fn check_simple(md: &MetaplecticData, i: usize) -> Result<()> {
    if i >= md.rank() {
        return Err(Error::InvalidParameter(format!("simple root index {i} out of range")));
    }
    Ok(())
}

/// `1 - v e^{-n(a)a}`, the denominator produced by `w_a ⋆`.
pub fn cg_denominator(md: &MetaplecticData, i: usize) -> AlgebraElement {
    let n = md.n();
    let rank = md.rank();
    let na = md.scaled_simple(i);
    &AlgebraElement::one(rank, n) - &AlgebraElement::monomial(-na, CoeffElement::v_pow(n, 1))
}

/// Numerator of `w_a ⋆ e^λ` over [`cg_denominator`]:
/// `e^{w_aλ}[(1-v)e^{res⟨λ,a⟩ a} - v g_{Q+B} e^{(n-1)a} + v g_{Q+B} e^{-a}]`.
pub fn cg_numerator(md: &MetaplecticData, i: usize, lambda: &Coweight) -> AlgebraElement {
    let rs = md.root_system();
    let n = md.n();
    let a = rs.simple_coroot(i);
    let na = md.n_simple(i) as i32;
    let pairing = rs.pairing(lambda, i);
    let res = pairing.rem_euclid(na as i64) as i32;
    let wl = rs.reflect(i, lambda);
    let g = &CoeffElement::g(n, md.q_simple(i) + pairing * md.q_simple(i)) * &CoeffElement::v_pow(n, 1);
    AlgebraElement::from_terms([
        (wl + a.scale(res), &CoeffElement::one(n) - &CoeffElement::v_pow(n, 1)),
        (wl + a.scale(na - 1), -&g),
        (wl - a, g),
    ])
}

/// `w_a ⋆ f`, extended to fractions by `w_a ⋆ (f/h) = (w_a ⋆ f)/h^{w_a}`.
pub fn cg_simple(md: &MetaplecticData, i: usize, f: &RationalElement) -> Result<RationalElement> {
    check_simple(md, i)?;
    let rs = md.root_system();
    let mut num = AlgebraElement::zero();
    for (x, c) in f.numerator().terms() {
        num = &num + &cg_numerator(md, i, x).scale(c);
    }
    let mut factors: Vec<AlgebraElement> = f.denominator_factors().iter().map(|d| d.reflect(rs, i)).collect();
    factors.push(cg_denominator(md, i));
    RationalElement::new(num, factors)
}

/// `w_{b_1} ⋆ ⋯ ⋆ w_{b_r} ⋆ f`, applied right to left.
pub fn cg_word(md: &MetaplecticData, word: &[u8], f: &RationalElement) -> Result<RationalElement> {
    let mut acc = f.clone();
    for &i in word.iter().rev() {
        acc = cg_simple(md, i as usize, &acc)?;
    }
    Ok(acc)
}

/// Checks `w_a ⋆ (h f) = h^{w_a} (w_a ⋆ f)` for `h` supported on `Λ₀`.
pub fn verify_h_linearity(md: &MetaplecticData, i: usize, h: &AlgebraElement, f: &RationalElement) -> Result<bool> {
    check_simple(md, i)?;
    if let Some(x) = h.support().find(|x| !md.in_lambda0(x)) {
        return Err(Error::OutsideLambda0(format!("{x}")));
    }
    let rs = md.root_system();
    let lhs = cg_simple(md, i, &f.mul_poly(h))?;
    let rhs = cg_simple(md, i, f)?.mul_poly(&h.reflect(rs, i));
    Ok(lhs.rat_equal(&rhs))
}

/// Coxeter exponent `m` of the pair of simple roots `i`, `j`.
pub fn braid_order(md: &MetaplecticData, i: usize, j: usize) -> usize {
    let rs = md.root_system();
    match rs.cartan(i, j) * rs.cartan(j, i) {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

/// The alternating word `i j i …` of length `m`.
pub fn alternating_word(i: usize, j: usize, m: usize) -> Vec<u8> {
    (0..m).map(|k| if k % 2 == 0 { i as u8 } else { j as u8 }).collect()
}

/// All coweights in `{-r..r}^rank`.
pub fn lambda_box(rank: usize, r: i32) -> Vec<Coweight> {
    let mut out = alloc::vec![Coweight::zero(rank)];
    for axis in 0..rank {
        let mut next = Vec::with_capacity(out.len() * (2 * r as usize + 1));
        for x in &out {
            for k in -r..=r {
                let mut c: Vec<i32> = x.coords().to_vec();
                c[axis] = k;
                next.push(Coweight::new(&c));
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidReport {
    pub cases: usize,
    pub failures: Vec<Coweight>,
}

impl BraidReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the two alternating `m`-fold `⋆`-products on `e^λ` for one `λ`.
pub fn braid_cg_at(md: &MetaplecticData, lambda: &Coweight) -> Result<bool> {
    if md.rank() != 2 {
        return Err(Error::InvalidParameter("rank-two system required".into()));
    }
    let m = braid_order(md, 0, 1);
    let f = RationalElement::from_poly(AlgebraElement::exp(*lambda, md.n()));
    let l = cg_word(md, &alternating_word(0, 1, m), &f)?;
    let r = cg_word(md, &alternating_word(1, 0, m), &f)?;
    Ok(l.rat_equal(&r))
}

/// Braid relation for `⋆` on every `λ` in `{-r..r}²`.
pub fn verify_braid_cg(md: &MetaplecticData, r: i32) -> Result<BraidReport> {
    let mut failures = Vec::new();
    let pts = lambda_box(md.rank(), r);
    for x in &pts {
        if !braid_cg_at(md, x)? {
            failures.push(*x);
        }
    }
    Ok(BraidReport { cases: pts.len(), failures })
}
