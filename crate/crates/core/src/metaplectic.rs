//! The quadratic form `Q`, the bilinear form `B`, the integers `n(γ∨)`, the
//! sublattice `Λ₀` and the rank-two structure theory.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hermite;
use crate::rootsys::{Coweight, RootSystem};

/// Cover data on top of a root system.
#[derive(Clone, Debug)]
pub struct MetaplecticData {
    rs: RootSystem,
    n: u32,
    kappa: i64,
    q_simple: Vec<i64>,
    q_values: Vec<i64>,
    n_table: Vec<u32>,
    lambda0: Vec<Coweight>,
}

impl MetaplecticData {
    pub fn new(rs: RootSystem, n: u32, kappa: i64) -> Result<Self> {
        if n == 0 || n > crate::coeff::MAX_COVER {
            return Err(Error::UnsupportedCover(n));
        }
        if kappa == 0 {
            return Err(Error::InvalidParameter("kappa must be nonzero".into()));
        }
        let r = rs.rank();
        let q_simple: Vec<i64> = (0..r).map(|i| kappa * rs.coroot_length(i)).collect();
        let mut md = MetaplecticData {
            rs,
            n,
            kappa,
            q_simple,
            q_values: Vec::new(),
            n_table: Vec::new(),
            lambda0: Vec::new(),
        };
        md.q_values = md.rs.positive_coroots().iter().map(|g| md.q(g)).collect();
        md.n_table = md.q_values.iter().map(|&q| md.n_from_q(q)).collect();

        // Λ₀ = {λ : λ·M ≡ 0 mod n} with M[j][i] = B(a_j∨, a_i∨): kernel of [M; nI].
        let mut a: Vec<Vec<i64>> =
            (0..r).map(|j| (0..r).map(|i| md.rs.cartan(j, i) as i64 * md.q_simple[i]).collect()).collect();
        for i in 0..r {
            a.push((0..r).map(|c| if c == i { n as i64 } else { 0 }).collect());
        }
        let kernel = hermite::left_kernel(&a);
        let proj: Vec<Vec<i64>> = kernel.iter().map(|k| k[..r].to_vec()).collect();
        let basis = hermite::lattice_basis(&proj);
        if basis.len() != r {
            return Err(Error::Internal(format!("sublattice has rank {} not {r}", basis.len())));
        }
        md.lambda0 = basis.iter().map(|b| Coweight::new(&b.iter().map(|&x| x as i32).collect::<Vec<_>>())).collect();
        Ok(md)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `Q(x) = ½ B(x, x)`.
    pub fn q(&self, x: &Coweight) -> i64 {
        self.b_form(x, x) / 2
    }

    /// `B(x, y)`, with `B(a_i∨, a_j∨) = ⟨a_i∨, a_j⟩ Q(a_j∨)`.
    pub fn b_form(&self, x: &Coweight, y: &Coweight) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += x.get(i) as i64 * y.get(j) as i64 * self.rs.cartan(i, j) as i64 * self.q_simple[j];
            }
        }
        s
    }

    /// `B(λ, γ∨) = ⟨λ, γ⟩ Q(γ∨)` for a coroot `γ∨`.
    pub fn bilinear_b(&self, lambda: &Coweight, gamma: &Coweight) -> Result<i64> {
        self.rs.check_rank(lambda)?;
        if !self.rs.is_coroot(gamma) {
            return Err(Error::NotACoroot(format!("{gamma}")));
        }
        Ok(self.b_form(lambda, gamma))
    }

    /// `Q(a_i∨)`.
    pub fn q_simple(&self, i: usize) -> i64 {
        self.q_simple[i]
    }

    fn n_from_q(&self, q: i64) -> u32 {
        self.n / (self.n as i64).gcd(&q) as u32
    }

    /// `n(γ∨) = n / gcd(n, Q(γ∨))` for any coweight (normally a coroot).
    pub fn n_of(&self, gamma: &Coweight) -> u32 {
        self.n_from_q(self.q(gamma))
    }

    pub fn n_simple(&self, i: usize) -> u32 {
        self.n_from_q(self.q_simple[i])
    }

    pub fn n_of_coroot(&self, gamma: &Coweight) -> Result<u32> {
        if !self.rs.is_coroot(gamma) {
            return Err(Error::NotACoroot(format!("{gamma}")));
        }
        Ok(self.n_of(gamma))
    }

    /// `k mod n(γ∨)`, least nonnegative.
    pub fn residue(&self, k: i64, gamma: &Coweight) -> i64 {
        k.rem_euclid(self.n_of(gamma) as i64)
    }

    pub fn q_values(&self) -> &[i64] {
        &self.q_values
    }

    pub fn n_table(&self) -> &[u32] {
        &self.n_table
    }

    pub fn lambda0_basis(&self) -> &[Coweight] {
        &self.lambda0
    }

    pub fn in_lambda0(&self, x: &Coweight) -> bool {
        (0..self.rank()).all(|i| self.b_form(x, &self.rs.simple_coroot(i)).rem_euclid(self.n as i64) == 0)
    }

    /// The rescaled simple coroot `n(a_i∨) a_i∨`.
    pub fn scaled_simple(&self, i: usize) -> Coweight {
        self.rs.simple_coroot(i).scale(self.n_simple(i) as i32)
    }

    fn require_rank2(&self) -> Result<()> {
        if self.rank() != 2 {
            return Err(Error::InvalidParameter(format!("rank-two system required, got rank {}", self.rank())));
        }
        Ok(())
    }

    /// Decides which of the three rank-two cases holds.
    pub fn rank2_classify(&self) -> Result<Rank2Class> {
        self.require_rank2()?;
        let a = self.rs.simple_coroot(0);
        let b = self.rs.simple_coroot(1);
        let bab = self.b_form(&a, &b);
        if bab == 0 {
            return Ok(Rank2Class::Orthogonal);
        }
        let (qa, qb) = (self.q(&a), self.q(&b));
        let (short, long, qs, ql) = if qa.abs() <= qb.abs() { (0, 1, qa, qb) } else { (1, 0, qb, qa) };
        if ql % qs != 0 {
            return Err(Error::Internal(format!("length ratio {ql}/{qs} is not integral")));
        }
        let ratio = ql / qs;
        if !(1..=3).contains(&ratio) || bab != -ratio * qs {
            return Err(Error::Internal(format!("B(a,b) = {bab} with ratio {ratio}")));
        }
        Ok(Rank2Class::Irreducible { ratio, short, long, b_value: bab })
    }

    /// The identification of `Λ̃ = ⟨n(a∨)a∨, n(b∨)b∨⟩` with `Λ`.
    pub fn rank2_iso(&self) -> Result<Rank2Iso> {
        if self.rank2_classify()? == Rank2Class::Orthogonal {
            return Err(Error::InvalidParameter("orthogonal rank-two system".into()));
        }
        let src = [self.scaled_simple(0), self.scaled_simple(1)];
        let swapped = self.n_simple(0) != self.n_simple(1);
        let img = if swapped {
            [self.rs.simple_coroot(1), self.rs.simple_coroot(0)]
        } else {
            [self.rs.simple_coroot(0), self.rs.simple_coroot(1)]
        };
        let ratio_ok = self.q(&img[0]) * self.q(&src[1]) == self.q(&img[1]) * self.q(&src[0]);
        let gs: [[i64; 2]; 2] = core::array::from_fn(|i| core::array::from_fn(|j| self.b_form(&src[i], &src[j])));
        let gi: [[i64; 2]; 2] = core::array::from_fn(|i| core::array::from_fn(|j| self.b_form(&img[i], &img[j])));
        let mut gram_ok = true;
        for (i, j, k, l) in [(0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 1, 1)] {
            gram_ok &= gs[i][j] * gi[k][l] == gs[k][l] * gi[i][j];
        }
        Ok(Rank2Iso { swapped, source: src, image: img, certified: ratio_ok && gram_ok })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Class {
    Orthogonal,
    /// `ratio = Q(long)/Q(short)` and `B(a∨, b∨) = -ratio · Q(short)`.
    Irreducible { ratio: i64, short: usize, long: usize, b_value: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Iso {
    pub swapped: bool,
    pub source: [Coweight; 2],
    pub image: [Coweight; 2],
    pub certified: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(l: &str, n: u32, k: i64) -> MetaplecticData {
        MetaplecticData::new(RootSystem::from_label(l).unwrap(), n, k).unwrap()
    }

    fn cw(c: &[i32]) -> Coweight {
        Coweight::new(c)
    }

    #[test]
    fn bilinear_values() {
        let a1 = md("A1", 1, 1);
        assert_eq!(a1.bilinear_b(&cw(&[1]), &cw(&[1])), Ok(2));
        assert_eq!(a1.bilinear_b(&cw(&[0]), &cw(&[1])), Ok(0));
        let a2 = md("A2", 1, 1);
        assert_eq!(a2.bilinear_b(&cw(&[1, 0]), &cw(&[0, 1])), Ok(-1));
        assert!(matches!(a2.bilinear_b(&cw(&[1, 0]), &cw(&[2, 0])), Err(Error::NotACoroot(_))));
    }

    #[test]
    fn n_values() {
        let a2 = md("A2", 3, 1);
        assert!(a2.n_table().iter().all(|&x| x == 3));
        let b2 = md("B2", 2, 1);
        assert_eq!((b2.n_simple(0), b2.n_simple(1)), (2, 1));
        let b2 = md("B2", 4, 2);
        assert_eq!(b2.n_simple(0), 2);
    }

    #[test]
    fn lambda0_examples() {
        assert_eq!(md("A1", 2, 1).lambda0_basis(), &[cw(&[1])]);
        assert_eq!(md("A1", 3, 1).lambda0_basis(), &[cw(&[3])]);
        assert_eq!(md("A2", 1, 1).lambda0_basis(), &[cw(&[1, 0]), cw(&[0, 1])]);
        let a2 = md("A2", 3, 1);
        for b in a2.lambda0_basis() {
            assert!(a2.in_lambda0(b));
        }
        assert!(a2.in_lambda0(&cw(&[1, 2])));
        assert!(!a2.in_lambda0(&cw(&[1, 0])));
    }

    #[test]
    fn residues() {
        let a1 = md("A1", 3, 1);
        let a = cw(&[1]);
        assert_eq!(a1.residue(5, &a), 2);
        assert_eq!(a1.residue(-5, &a), 1);
        assert_eq!(a1.residue(0, &a), 0);
    }

    #[test]
    fn structural_invariants() {
        for l in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
            for n in 1..=6 {
                for k in [1, 2, -1, 3] {
                    let m = md(l, n, k);
                    let rs = m.root_system();
                    let r = rs.rank();
                    for i in 0..r {
                        for j in 0..r {
                            let x = rs.cartan(i, j) as i64 * m.q_simple(j);
                            let y = rs.cartan(j, i) as i64 * m.q_simple(i);
                            assert_eq!(x, y);
                        }
                    }
                    let basis_rank = m.lambda0_basis().len();
                    assert_eq!(basis_rank, r);
                    for g in rs.positive_coroots() {
                        assert!(m.in_lambda0(&g.scale(m.n_of(g) as i32)), "{l} n={n} {g}");
                        for w in rs.weyl() {
                            assert_eq!(m.n_of(g), m.n_of(&w.apply(g)));
                            assert_eq!(m.q(g), m.q(&w.apply(g)));
                        }
                        for kk in -20..=20i64 {
                            let lhs = (kk * m.q(g)).rem_euclid(n as i64) == 0;
                            let rhs = kk.rem_euclid(m.n_of(g) as i64) == 0;
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank2_cases() {
        let expect = |l: &str, ratio: i64, bv: i64| {
            match md(l, 1, 1).rank2_classify().unwrap() {
                Rank2Class::Irreducible { ratio: r, b_value, .. } => assert_eq!((r, b_value), (ratio, bv)),
                Rank2Class::Orthogonal => panic!(),
            }
        };
        expect("A2", 1, -1);
        expect("B2", 2, -2);
        expect("G2", 3, -3);
        let a1a1 = MetaplecticData::new(
            RootSystem::new(crate::rootsys::CartanSpec::custom(alloc::vec![alloc::vec![2, 0], alloc::vec![0, 2]]))
                .unwrap(),
            2,
            1,
        )
        .unwrap();
        assert_eq!(a1a1.rank2_classify(), Ok(Rank2Class::Orthogonal));
    }

    #[test]
    fn rank2_isomorphisms() {
        for n in 1..=6 {
            let iso = md("A2", n, 1).rank2_iso().unwrap();
            assert!(!iso.swapped && iso.certified);
        }
        let b2 = md("B2", 2, 1).rank2_iso().unwrap();
        assert!(b2.swapped && b2.certified);
        let g2 = md("G2", 3, 1).rank2_iso().unwrap();
        assert!(g2.swapped && g2.certified);
        for l in ["B2", "G2"] {
            for n in 1..=6 {
                assert!(md(l, n, 1).rank2_iso().unwrap().certified, "{l} {n}");
            }
        }
    }
}
