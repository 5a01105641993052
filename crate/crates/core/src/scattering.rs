//! Intertwiner coefficients, `τ`-coefficients and the scattering relation.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::cg;
use crate::coeff::CoeffElement;
use crate::dl;
use crate::error::{Error, Result};
use crate::metaplectic::MetaplecticData;
use crate::rational::RationalElement;
use crate::rootsys::Coweight;
use crate::series::{self, SeriesSlice};

/// Absolute tolerance for numeric coefficient comparisons.
pub const TOLERANCE: f64 = 1e-9;

fn check_simple(md: &MetaplecticData, i: usize) -> Result<()> {
    if i >= md.rank() {
        return Err(Error::InvalidParameter(format!("simple root index {i} out of range")));
    }
    Ok(())
}

fn gauss(table: &[Complex64], k: i64) -> Complex64 {
    table[k.rem_euclid(table.len() as i64) as usize]
}

/// The coefficients of `I_a` applied to the function supported at `ξ∨`,
/// each carrying the weight `q^{⟨ρ,μ⟩}` of its point `μ`.
#[derive(Clone, Debug)]
pub struct GammaSeries {
    pub base: Coweight,
    pub exceptional: (Coweight, Complex64),
    /// `(m, coefficient at w_aξ∨ + m a∨)` for admissible `m`.
    pub regular: Vec<(i64, Complex64)>,
    /// Whether `⟨ρ, w_aξ∨+ma∨⟩ - m + ⟨ξ∨,a⟩ = ⟨ρ,ξ∨⟩` for every admissible `m`.
    pub regular_constant: bool,
}

pub fn gamma_series(
    md: &MetaplecticData,
    i: usize,
    xi: &Coweight,
    cutoff: u32,
    q: f64,
    table: &[Complex64],
) -> Result<GammaSeries> {
    check_simple(md, i)?;
    let rs = md.root_system();
    rs.check_rank(xi)?;
    let a = rs.simple_coroot(i);
    let p = rs.pairing(xi, i);
    let na = md.n_simple(i) as i64;
    let qa = md.q_simple(i);
    let wx = rs.reflect(i, xi);
    let ex_pt = wx - a;
    let ex = gauss(table, (p + 1) * qa) * libm::pow(q, (ex_pt.rho_pairing() + p) as f64);
    let mut regular = Vec::new();
    let mut regular_constant = true;
    for m in 0..=(cutoff as i64 * na) {
        if (m - p).rem_euclid(na) != 0 {
            continue;
        }
        let pt = wx + a.scale(m as i32);
        let e = pt.rho_pairing() - m + p;
        regular_constant &= e == xi.rho_pairing();
        regular.push((m, Complex64::new((1.0 - 1.0 / q) * libm::pow(q, e as f64), 0.0)));
    }
    Ok(GammaSeries { base: *xi, exceptional: (ex_pt, ex), regular, regular_constant })
}

impl GammaSeries {
    /// The coefficient at `w_aξ∨ + m a∨`.
    fn at(&self, m: i64) -> Complex64 {
        if m == -1 {
            return self.exceptional.1;
        }
        self.regular.iter().find(|(k, _)| *k == m).map_or(Complex64::new(0.0, 0.0), |(_, c)| *c)
    }
}

#[derive(Clone, Debug)]
pub struct PointResidual {
    pub point: Coweight,
    pub expected: Complex64,
    pub actual: Complex64,
}

impl PointResidual {
    pub fn residual(&self) -> f64 {
        (self.expected - self.actual).norm()
    }
}

#[derive(Clone, Debug)]
pub struct NumericReport {
    pub points: Vec<PointResidual>,
    /// Nonzero coefficients found off the expected support.
    pub stray: Vec<Coweight>,
}

impl NumericReport {
    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(PointResidual::residual).fold(0.0, f64::max)
    }

    pub fn ok(&self) -> bool {
        self.stray.is_empty() && self.max_residual() <= TOLERANCE
    }
}

/// `c(a∨)·(w_a ⋆ f)`, expanded along `a∨`.
fn intertwined(md: &MetaplecticData, i: usize, f: &AlgebraElement, cutoff: u32) -> Result<SeriesSlice> {
    let a = md.root_system().simple_coroot(i);
    let star = cg::cg_simple(md, i, &RationalElement::from_poly(f.clone()))?;
    series::series_expand(md, &(&dl::c_fn(md, &a) * &star), &a, cutoff)
}

/// Compares `q^{⟨ρ,ξ∨⟩}·c(a∨)·(w_a ⋆ e^{ξ∨})` at `v = q^{-1}` with [`gamma_series`]
/// on the line `w_aξ∨ + Z a∨`.
pub fn verify_intertwiner(
    md: &MetaplecticData,
    i: usize,
    xi: &Coweight,
    cutoff: u32,
    q: f64,
    table: &[Complex64],
) -> Result<NumericReport> {
    let gs = gamma_series(md, i, xi, cutoff, q, table)?;
    let rs = md.root_system();
    let a = rs.simple_coroot(i);
    let na = md.n_simple(i) as i64;
    let slice = intertwined(md, i, &AlgebraElement::exp(*xi, md.n()), cutoff + 2)?;
    let weight = libm::pow(q, xi.rho_pairing() as f64);
    let wx = rs.reflect(i, xi);
    let top = cutoff as i64 * na;
    let mut points = Vec::new();
    for m in -1..=top {
        let pt = wx + a.scale(m as i32);
        let actual = slice.coefficient_at(&pt)?.specialize(q, Some(table))? * weight;
        points.push(PointResidual { point: pt, expected: gs.at(m), actual });
    }
    let mut stray = Vec::new();
    for (pt, c) in &slice.coeffs {
        let (base, k) = series::line_of(&(*pt - wx), &a);
        if (!base.is_zero() || k < -1) && c.specialize(q, Some(table))?.norm() > TOLERANCE {
            stray.push(*pt);
        }
    }
    if !gs.regular_constant {
        return Err(Error::Internal(format!("regular weights not constant at {xi}")));
    }
    Ok(NumericReport { points, stray })
}

/// `τ^{w_a}(μ∨,μ∨)` and `τ^{w_a}(μ∨, w_aμ∨ - a∨)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPair {
    pub tau_diag: RationalElement,
    pub tau_off: CoeffElement,
}

/// `τ_diag = (1-v) e^{(-k+res(k))a∨}/(1 - e^{-s n(a∨)a∨})` and
/// `τ_off = v g_{-Q(a∨)-B}` with `k = B/Q(a∨)`.
fn tau_template(md: &MetaplecticData, i: usize, b: i64, dir: i32) -> TauPair {
    let n = md.n();
    let a = md.root_system().simple_coroot(i);
    let qa = md.q_simple(i);
    let k = b / qa;
    let res = md.residue(k, &a);
    let one = AlgebraElement::one(md.rank(), n);
    let v = CoeffElement::v_pow(n, 1);
    let num = AlgebraElement::monomial(a.scale((res - k) as i32), &CoeffElement::one(n) - &v);
    let den = &one - &AlgebraElement::exp(md.scaled_simple(i).scale(-dir), n);
    TauPair {
        tau_diag: RationalElement::new(num, alloc::vec![den]).expect("nonzero denominator"),
        tau_off: &v * &CoeffElement::g(n, -qa - b),
    }
}

pub fn tau_coeffs(md: &MetaplecticData, i: usize, mu: &Coweight) -> Result<TauPair> {
    check_simple(md, i)?;
    md.root_system().check_rank(mu)?;
    let b = md.b_form(mu, &md.root_system().simple_coroot(i));
    Ok(tau_template(md, i, b, 1))
}

/// `k + res_n(-k) = ⌈k/n⌉·n` for `k ∈ [-range, range]`.
pub fn ceiling_identity(n: u32, range: i64) -> bool {
    let n = n as i64;
    (-range..=range).all(|k| k + (-k).rem_euclid(n) == num_integer::Integer::div_ceil(&k, &n) * n)
}

/// `τ^{(1)} = (1-v) e^{⌈k/n(a∨)⌉ n(a∨) a∨}/(1 - e^{n(a∨)a∨})` and `τ^{(2)} = v g_{-Q+B}`.
pub fn mcnamara_pair(md: &MetaplecticData, i: usize, mu: &Coweight) -> Result<TauPair> {
    check_simple(md, i)?;
    let n = md.n();
    let rs = md.root_system();
    let a = rs.simple_coroot(i);
    let na = md.n_simple(i) as i64;
    let qa = md.q_simple(i);
    let b = md.b_form(mu, &a);
    let k = rs.pairing(mu, i);
    let e = num_integer::Integer::div_ceil(&k, &na) * na;
    let one = AlgebraElement::one(md.rank(), n);
    let v = CoeffElement::v_pow(n, 1);
    let num = AlgebraElement::monomial(a.scale(e as i32), &CoeffElement::one(n) - &v);
    let den = &one - &AlgebraElement::exp(md.scaled_simple(i), n);
    Ok(TauPair {
        tau_diag: RationalElement::new(num, alloc::vec![den]).expect("nonzero denominator"),
        tau_off: &v * &CoeffElement::g(n, -qa + b),
    })
}

/// Whether reversing the sign of `B` and of the series direction in
/// [`tau_coeffs`] gives [`mcnamara_pair`] exactly, together with the
/// ceiling identity for `n(a∨)`.
pub fn verify_mcnamara_match(md: &MetaplecticData, i: usize, mu: &Coweight) -> Result<bool> {
    let direct = mcnamara_pair(md, i, mu)?;
    let b = md.b_form(mu, &md.root_system().simple_coroot(i));
    let sub = tau_template(md, i, -b, -1);
    Ok(sub.tau_diag.rat_equal(&direct.tau_diag)
        && sub.tau_off == direct.tau_off
        && ceiling_identity(md.n_simple(i), 20))
}

/// `(1-v) Σ_{j≥0} a_{μ + (res(k)-k)a∨ + j n(a∨) a∨}` with `k = ⟨μ∨,a⟩`, the
/// diagonal contribution to the coefficient of `e^μ` in `c(a∨)·(w_a ⋆ F)`.
pub fn apply_diag(md: &MetaplecticData, i: usize, f: &AlgebraElement, mu: &Coweight) -> CoeffElement {
    let n = md.n();
    let rs = md.root_system();
    let a = rs.simple_coroot(i);
    let k = rs.pairing(mu, i);
    let start = *mu + a.scale((md.residue(k, &a) - k) as i32);
    let step = md.scaled_simple(i);
    let mut acc = CoeffElement::zero(n);
    for (x, c) in f.terms() {
        let (base, j) = series::line_of(&(*x - start), &step);
        if base.is_zero() && j >= 0 {
            acc = &acc + c;
        }
    }
    &acc * &(&CoeffElement::one(n) - &CoeffElement::v_pow(n, 1))
}

/// Checks the coefficient of `e^μ` in `c(a∨)·(w_a ⋆ F)` against
/// `apply_diag + τ_off·a_{w_aμ∨-a∨}` for every `μ` in `window`.
pub fn verify_scattering_relation(
    md: &MetaplecticData,
    i: usize,
    f: &AlgebraElement,
    window: &[Coweight],
    cutoff: u32,
    q: f64,
    table: &[Complex64],
) -> Result<NumericReport> {
    check_simple(md, i)?;
    let rs = md.root_system();
    let a = rs.simple_coroot(i);
    let n = md.n();
    let slice = intertwined(md, i, f, cutoff)?;
    let mut points = Vec::with_capacity(window.len());
    for mu in window {
        let actual = slice.coefficient_at(mu)?.specialize(q, Some(table))?;
        let tau = tau_coeffs(md, i, mu)?;
        let off = f.coeff(&(rs.reflect(i, mu) - a)).cloned().unwrap_or_else(|| CoeffElement::zero(n));
        let expected = (&apply_diag(md, i, f, mu) + &(&tau.tau_off * &off)).specialize(q, Some(table))?;
        points.push(PointResidual { point: *mu, expected, actual });
    }
    Ok(NumericReport { points, stray: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn md(l: &str, n: u32) -> MetaplecticData {
        MetaplecticData::new(RootSystem::from_label(l).unwrap(), n, 1).unwrap()
    }

    /// Gauss sums for `n = 3`, `p = 7`, with the character `χ(3^j) = ζ_3^j`.
    fn table(n: u32, p: u64) -> Vec<Complex64> {
        let g = (2..p).find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1)).unwrap();
        let mut log = alloc::vec![0u64; p as usize];
        let mut x = 1;
        for j in 0..p - 1 {
            log[x as usize] = j;
            x = x * g % p;
        }
        (0..n)
            .map(|k| {
                (1..p)
                    .map(|u| {
                        let ang = -2.0 * core::f64::consts::PI
                            * ((k as f64 * log[u as usize] as f64) / n as f64 + u as f64 / p as f64);
                        Complex64::from_polar(1.0, ang)
                    })
                    .sum()
            })
            .collect()
    }

    fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
        (0..e).fold(1, |acc, _| acc * b % m)
    }

    #[test]
    fn ceiling() {
        for n in 1..=6 {
            assert!(ceiling_identity(n, 20));
        }
        assert_eq!(5 + (-5i64).rem_euclid(3), 6);
        assert_eq!(-4 + 4i64.rem_euclid(2), -4);
    }

    #[test]
    fn gamma_regular_constant() {
        let m = md("A2", 2);
        let t = table(2, 13);
        let gs = gamma_series(&m, 0, &Coweight::new(&[0, 1]), 4, 13.0, &t).unwrap();
        assert!(gs.regular_constant);
        let w = (1.0 - 1.0 / 13.0) * 13.0;
        for (_, c) in &gs.regular {
            assert!((c.re - w).abs() < 1e-9);
        }
    }

    #[test]
    fn intertwiner_examples() {
        let m = md("A1", 3);
        let r = verify_intertwiner(&m, 0, &Coweight::new(&[1]), 8, 7.0, &table(3, 7)).unwrap();
        assert!(r.ok(), "{:?}", r.max_residual());
        let m = md("A2", 2);
        let r = verify_intertwiner(&m, 0, &Coweight::new(&[0, 1]), 6, 13.0, &table(2, 13)).unwrap();
        assert!(r.ok());
    }

    #[test]
    fn tau_examples() {
        let m2 = md("A2", 2);
        let t = tau_coeffs(&m2, 0, &Coweight::new(&[0, 1])).unwrap();
        assert_eq!(t.tau_off, -&CoeffElement::v_pow(2, 1));
        let m = md("A1", 2);
        for k in -4..=4 {
            assert!(verify_mcnamara_match(&m, 0, &Coweight::new(&[k])).unwrap());
        }
    }

    #[test]
    fn scattering_two_terms() {
        let m = md("A1", 2);
        let f = AlgebraElement::from_terms([
            (Coweight::new(&[1]), CoeffElement::from_int(2, 3)),
            (Coweight::new(&[-2]), CoeffElement::g(2, 1)),
        ]);
        let window: Vec<Coweight> = (-4..=4).map(|k| Coweight::new(&[k])).collect();
        let r = verify_scattering_relation(&m, 0, &f, &window, 20, 13.0, &table(2, 13)).unwrap();
        assert!(r.ok(), "{}", r.max_residual());
    }
}
