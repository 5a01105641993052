//! Numeric Gauss sums and brute-force rank-one Whittaker integrals over
//! residue rings of `Z_p`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest supported depth `m` of the residue ring `(Z/p^m)^*`.
pub const MAX_DEPTH: u32 = 4;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub p: u64,
    pub n: u32,
    pub kappa: i64,
    pub primitive_root: u64,
    /// Discrete logarithm to the base `primitive_root`, indexed by residue.
    dlog: Vec<u32>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl OracleConfig {
    pub fn new(p: u64, n: u32, kappa: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::OracleConfig(format!("{p} is not prime")));
        }
        if n == 0 || !(p - 1).is_multiple_of(2 * n as u64) {
            return Err(Error::OracleConfig(format!("need p ≡ 1 mod 2n, got p={p}, n={n}")));
        }
        if p.pow(MAX_DEPTH) > u32::MAX as u64 {
            return Err(Error::OracleConfig(format!("p={p} too large")));
        }
        let order = p - 1;
        let primes: Vec<u64> = (2..=order).filter(|&d| order.is_multiple_of(d) && is_prime(d)).collect();
        let g = (2..p)
            .find(|&g| primes.iter().all(|&d| pow_mod(g, order / d, p) != 1))
            .unwrap_or(1);
        let mut dlog = alloc::vec![0u32; p as usize];
        let mut x = 1u64;
        for j in 0..order {
            dlog[x as usize] = j as u32;
            x = x * g % p;
        }
        Ok(OracleConfig { p, n, kappa, primitive_root: g, dlog })
    }

    /// `j` with `χ(r) = exp(2πi j/n)`, for `r` prime to `p`.
    fn chi_index(&self, r: u64) -> u64 {
        self.dlog[(r % self.p) as usize] as u64 % self.n as u64
    }
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    let (mut b, mut e, mut acc) = (b % m, e, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `exp(2πi num/den)` with `num` reduced modulo `den` first.
fn root_of_unity(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(den);
    Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI * r as f64 / den as f64)
}

#[derive(Clone, Debug)]
pub struct NumericGaussTable {
    /// `𝐠_k` for `k = 0..n`.
    pub values: Vec<Complex64>,
}

impl NumericGaussTable {
    pub fn get(&self, k: i64) -> Complex64 {
        self.values[k.rem_euclid(self.values.len() as i64) as usize]
    }
}

/// `𝐠_k = Σ_{u ∈ F_p^*} χ(u)^{-k} exp(-2πi u/p)`.
pub fn gauss_numeric(cfg: &OracleConfig) -> NumericGaussTable {
    let (p, n) = (cfg.p as i128, cfg.n as i128);
    let values = (0..n)
        .map(|k| {
            (1..p)
                .map(|u| {
                    let j = cfg.chi_index(u as u64) as i128;
                    root_of_unity(-(k * j % n) * p - u * n, n * p)
                })
                .sum()
        })
        .collect();
    NumericGaussTable { values }
}

/// Exponent signs `s` on the character and `t` on the additive argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub s: i8,
    pub t: i8,
}

impl Orientation {
    pub const CANDIDATES: [Orientation; 4] = [
        Orientation { s: 1, t: 1 },
        Orientation { s: 1, t: -1 },
        Orientation { s: -1, t: 1 },
        Orientation { s: -1, t: -1 },
    ];
}

/// Tolerance for the calibration match and the oracle comparisons.
pub const TOLERANCE: f64 = 1e-8;

/// The first orientation for which the boundary term `k = ⟨λ,a⟩ + 1` at
/// `p = 13, n = 3, κ = 1, ⟨λ,a⟩ = 0` equals `p^{-1} 𝐠_κ`.
pub fn calibrate() -> Result<Orientation> {
    let cfg = OracleConfig::new(13, 3, 1)?;
    let target = gauss_numeric(&cfg).get(1) / 13.0;
    for o in Orientation::CANDIDATES {
        if (rank1_integral(&cfg, o, 0, 1)? - target).norm() < TOLERANCE {
            return Ok(o);
        }
    }
    Err(Error::OracleConfig("no orientation reproduces the boundary term".into()))
}

/// `I_a(k) = p^{-m} Σ_{r ∈ (Z/p^m)^*} χ(r)^{kκs} ψ(p^{L-k} r^t)` with
/// `m = max(1, k - L)` and `L = ⟨λ,a⟩`.
pub fn rank1_integral(cfg: &OracleConfig, o: Orientation, pairing: i64, k: i64) -> Result<Complex64> {
    if k < 1 || pairing < 0 {
        return Err(Error::InvalidParameter("need k ≥ 1 and ⟨λ,a⟩ ≥ 0".into()));
    }
    let depth = (k - pairing).max(1);
    if depth > MAX_DEPTH as i64 {
        return Err(Error::OracleConfig(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }
    let p = cfg.p as i128;
    let n = cfg.n as i128;
    let modulus = p.pow(depth as u32);
    // ψ is trivial unless k > L; then its conductor is p^{k-L} = p^depth.
    let pden = if k > pairing { modulus } else { 1 };
    let e = (k as i128 * cfg.kappa as i128 * o.s as i128).rem_euclid(n);
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 1..modulus {
        if r % p == 0 {
            continue;
        }
        let j = cfg.chi_index(r as u64) as i128;
        let x = if o.t == 1 {
            r
        } else {
            let g = r.extended_gcd(&modulus);
            g.x.rem_euclid(modulus)
        };
        acc += root_of_unity((e * j % n) * pden + (x % pden) * n, n * pden);
    }
    Ok(acc / modulus as f64)
}

/// The expected value of `I_a(k)`: `1 - p^{-1}` for `k ≤ L` with `n | kκ`,
/// `p^{-1} 𝐠_{κ(L+1)}` for `k = L + 1`, and zero otherwise.
pub fn expected_integral(cfg: &OracleConfig, table: &NumericGaussTable, pairing: i64, k: i64) -> Complex64 {
    let p = cfg.p as f64;
    if k <= pairing {
        if (k * cfg.kappa).rem_euclid(cfg.n as i64) == 0 {
            Complex64::new(1.0 - 1.0 / p, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    } else if k == pairing + 1 {
        table.get(cfg.kappa * (pairing + 1)) / p
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Coefficients `(k, c_k)` of `e^{λ - k a∨}` in `e^λ + Σ_{k>0} I_a(k) e^{λ-ka∨}`,
/// for every `k` up to the depth bound.
pub fn rank1_whittaker_oracle(cfg: &OracleConfig, o: Orientation, pairing: i64) -> Result<Vec<(i64, Complex64)>> {
    if !(0..=MAX_DEPTH as i64).contains(&pairing) {
        return Err(Error::InvalidParameter(format!("⟨λ,a⟩ = {pairing} outside 0..={MAX_DEPTH}")));
    }
    let mut out = alloc::vec![(0, Complex64::new(1.0, 0.0))];
    for k in 1..=pairing + MAX_DEPTH as i64 {
        out.push((k, rank1_integral(cfg, o, pairing, k)?));
    }
    Ok(out)
}
