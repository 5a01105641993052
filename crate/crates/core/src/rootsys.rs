//! Finite root systems in simple-coroot coordinates and their Weyl groups.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 4;
const MAX_WEYL_ORDER: usize = 2000;
const ALL_WORDS_LIMIT: usize = 48;

/// A coweight written in the simple-coroot basis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight {
    coords: [i32; MAX_RANK],
    rank: u8,
}

impl Coweight {
    pub fn new(coords: &[i32]) -> Self {
        assert!(coords.len() <= MAX_RANK, "rank {} exceeds {}", coords.len(), MAX_RANK);
        let mut c = [0; MAX_RANK];
        c[..coords.len()].copy_from_slice(coords);
        Coweight { coords: c, rank: coords.len() as u8 }
    }

    pub fn zero(rank: usize) -> Self {
        Coweight { coords: [0; MAX_RANK], rank: rank as u8 }
    }

    /// The `i`-th simple coroot.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut z = Self::zero(rank);
        z.coords[i] = 1;
        z
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.rank as usize]
    }

    pub fn get(&self, i: usize) -> i32 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i32) -> Self {
        let mut out = *self;
        for c in out.coords.iter_mut() {
            *c *= k;
        }
        out
    }

    /// Sum of coordinates, i.e. the pairing with `ρ`.
    pub fn rho_pairing(&self) -> i64 {
        self.coords.iter().map(|&c| c as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

impl Add for Coweight {
    type Output = Coweight;
    fn add(mut self, rhs: Coweight) -> Coweight {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..MAX_RANK {
            self.coords[i] += rhs.coords[i];
        }
        self
    }
}

impl Sub for Coweight {
    type Output = Coweight;
    fn sub(mut self, rhs: Coweight) -> Coweight {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..MAX_RANK {
            self.coords[i] -= rhs.coords[i];
        }
        self
    }
}

impl Neg for Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        self.scale(-1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    F,
    G,
}

/// Cartan data with `matrix[i][j] = ⟨a_i∨, a_j⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSpec {
    pub label: String,
    pub matrix: Vec<Vec<i32>>,
}

impl CartanSpec {
    pub fn of_type(t: CartanType, rank: usize) -> Result<Self> {
        let bad = || Error::UnknownCartanType(format!("{t:?}{rank}"));
        let mut m = vec![vec![0i32; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = |m: &mut Vec<Vec<i32>>| {
            for i in 0..rank.saturating_sub(1) {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        };
        match (t, rank) {
            (CartanType::A, 1..=MAX_RANK) => chain(&mut m),
            (CartanType::B, 2..=MAX_RANK) => {
                chain(&mut m);
                m[rank - 1][rank - 2] = -2;
            }
            (CartanType::C, 2..=MAX_RANK) => {
                chain(&mut m);
                m[rank - 2][rank - 1] = -2;
            }
            (CartanType::D, 4) => {
                m[0][1] = -1;
                m[1][0] = -1;
                m[1][2] = -1;
                m[2][1] = -1;
                m[1][3] = -1;
                m[3][1] = -1;
            }
            (CartanType::F, 4) => {
                chain(&mut m);
                m[2][1] = -2;
            }
            (CartanType::G, 2) => {
                m[0][1] = -1;
                m[1][0] = -3;
            }
            _ => return Err(bad()),
        }
        Ok(CartanSpec { label: format!("{t:?}{rank}"), matrix: m })
    }

    /// Parses labels such as `A2`, `B3`, `G2`.
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let t = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('F') => CartanType::F,
            Some('G') => CartanType::G,
            _ => return Err(Error::UnknownCartanType(label.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnknownCartanType(label.to_string()))?;
        Self::of_type(t, rank).map_err(|_| Error::UnknownCartanType(label.to_string()))
    }

    pub fn custom(matrix: Vec<Vec<i32>>) -> Self {
        CartanSpec { label: String::from("custom"), matrix }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }
}

/// An element of the enumerated Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub id: usize,
    pub matrix: [[i32; MAX_RANK]; MAX_RANK],
    pub reduced_word: Vec<u8>,
    pub length: usize,
}

impl WeylElement {
    pub fn apply(&self, x: &Coweight) -> Coweight {
        let r = x.rank();
        let mut out = Coweight::zero(r);
        for i in 0..r {
            let mut s = 0;
            for j in 0..r {
                s += self.matrix[i][j] * x.coords[j];
            }
            out.coords[i] = s;
        }
        out
    }
}

type Matrix = [[i32; MAX_RANK]; MAX_RANK];

fn mat_mul(a: &Matrix, b: &Matrix, r: usize) -> Matrix {
    let mut out = [[0; MAX_RANK]; MAX_RANK];
    for i in 0..r {
        for j in 0..r {
            out[i][j] = (0..r).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn identity(r: usize) -> Matrix {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for (i, row) in m.iter_mut().enumerate().take(r) {
        row[i] = 1;
    }
    m
}

/// A root system together with its fully enumerated Weyl group.
#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: CartanSpec,
    rank: usize,
    /// Squared length of each simple coroot relative to the shortest one in
    /// its component.
    coroot_lengths: Vec<i64>,
    positive: Vec<Coweight>,
    weyl: Vec<WeylElement>,
    index: BTreeMap<Matrix, usize>,
    /// `left[i][w]` is the id of `s_i w`.
    left: Vec<Vec<usize>>,
    /// `right[i][w]` is the id of `w s_i`.
    right: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    longest: usize,
    all_words: Option<Vec<Vec<Vec<u8>>>>,
}

impl RootSystem {
    pub fn new(spec: CartanSpec) -> Result<Self> {
        let rank = spec.rank();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidCartan(format!("rank {rank} not in 1..={MAX_RANK}")));
        }
        let c = &spec.matrix;
        for (i, row) in c.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan(String::from("matrix is not square")));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is {}", row[i])));
            }
            for j in 0..rank {
                if i != j && (row[j] > 0 || (row[j] == 0) != (c[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!("bad off-diagonal entry ({i},{j})")));
                }
            }
        }
        let coroot_lengths = symmetrizer(c)?;

        let simple: Vec<Matrix> = (0..rank)
            .map(|i| {
                // s_i(λ) = λ − ⟨λ,a_i⟩ a_i∨ with ⟨λ,a_i⟩ = Σ_j λ_j C[j][i].
                let mut m = identity(rank);
                for j in 0..rank {
                    m[i][j] -= c[j][i];
                }
                m
            })
            .collect();

        let mut mats: Vec<Matrix> = vec![identity(rank)];
        let mut lengths = vec![0usize];
        let mut index = BTreeMap::new();
        index.insert(mats[0], 0usize);
        let mut head = 0;
        while head < mats.len() {
            for s in &simple {
                let m = mat_mul(&mats[head], s, rank);
                if let alloc::collections::btree_map::Entry::Vacant(e) = index.entry(m) {
                    if mats.len() >= MAX_WEYL_ORDER {
                        return Err(Error::InvalidCartan(String::from(
                            "Weyl group is infinite or too large; the matrix is not of finite type",
                        )));
                    }
                    e.insert(mats.len());
                    mats.push(m);
                    lengths.push(lengths[head] + 1);
                }
            }
            head += 1;
        }
        let order = mats.len();
        let lookup = |m: &Matrix| index[m];
        let left: Vec<Vec<usize>> =
            simple.iter().map(|s| mats.iter().map(|m| lookup(&mat_mul(s, m, rank))).collect()).collect();
        let right: Vec<Vec<usize>> =
            simple.iter().map(|s| mats.iter().map(|m| lookup(&mat_mul(m, s, rank))).collect()).collect();

        // Elements are in BFS order, so shorter elements come first.
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); order];
        for w in 1..order {
            let i = (0..rank).find(|&i| lengths[left[i][w]] < lengths[w]).expect("nonidentity has a descent");
            let mut word = vec![i as u8];
            word.extend_from_slice(&words[left[i][w]]);
            words[w] = word;
        }
        let id = identity(rank);
        let inverse: Vec<usize> = (0..order)
            .map(|w| (0..order).find(|&u| mat_mul(&mats[w], &mats[u], rank) == id).expect("group"))
            .collect();
        let longest = (0..order).max_by_key(|&w| lengths[w]).unwrap_or(0);

        let weyl: Vec<WeylElement> = (0..order)
            .map(|w| WeylElement { id: w, matrix: mats[w], reduced_word: words[w].clone(), length: lengths[w] })
            .collect();

        let mut roots: BTreeSet<Coweight> = BTreeSet::new();
        for w in &weyl {
            for i in 0..rank {
                roots.insert(w.apply(&Coweight::basis(rank, i)));
            }
        }
        let positive: Vec<Coweight> = roots.into_iter().filter(|r| r.is_nonnegative()).collect();

        let all_words = (order <= ALL_WORDS_LIMIT).then(|| {
            let mut all: Vec<Vec<Vec<u8>>> = vec![Vec::new(); order];
            all[0].push(Vec::new());
            for w in 1..order {
                let mut set = Vec::new();
                for (i, row) in left.iter().enumerate() {
                    let u = row[w];
                    if lengths[u] < lengths[w] {
                        for tail in &all[u] {
                            let mut word = vec![i as u8];
                            word.extend_from_slice(tail);
                            set.push(word);
                        }
                    }
                }
                set.sort();
                all[w] = set;
            }
            all
        });

        Ok(RootSystem { spec, rank, coroot_lengths, positive, weyl, index, left, right, inverse, longest, all_words })
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Self::new(CartanSpec::parse(label)?)
    }

    pub fn spec(&self) -> &CartanSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.spec.matrix[i][j]
    }

    /// Squared length of the simple coroot `i`, normalized so the shortest
    /// coroot of each component has length one.
    pub fn coroot_length(&self, i: usize) -> i64 {
        self.coroot_lengths[i]
    }

    pub fn check_rank(&self, x: &Coweight) -> Result<()> {
        if x.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: x.rank() });
        }
        Ok(())
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight::basis(self.rank, i)
    }

    /// `⟨x, a_i⟩`.
    pub fn pairing(&self, x: &Coweight, i: usize) -> i64 {
        (0..self.rank).map(|j| x.coords[j] as i64 * self.spec.matrix[j][i] as i64).sum()
    }

    /// `⟨x, γ⟩` for the root `γ` dual to the coroot `gamma`.
    pub fn pairing_with_root(&self, x: &Coweight, gamma: &Coweight) -> Result<i64> {
        if !self.is_coroot(gamma) {
            return Err(Error::NotACoroot(format!("{gamma}")));
        }
        Ok(2 * self.form(x, gamma) / self.form(gamma, gamma))
    }

    /// Invariant form on coroots with `(a_i∨, a_i∨) = 2 · length_i`.
    pub fn form(&self, x: &Coweight, y: &Coweight) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += x.coords[i] as i64 * y.coords[j] as i64 * self.spec.matrix[i][j] as i64 * self.coroot_lengths[j];
            }
        }
        s
    }

    pub fn is_dominant(&self, x: &Coweight) -> bool {
        (0..self.rank).all(|i| self.pairing(x, i) >= 0)
    }

    pub fn reflect(&self, i: usize, x: &Coweight) -> Coweight {
        let p = self.pairing(x, i) as i32;
        let mut out = *x;
        out.coords[i] -= p;
        out
    }

    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.positive
    }

    pub fn is_coroot(&self, x: &Coweight) -> bool {
        self.positive.contains(x) || self.positive.contains(&-*x)
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn order(&self) -> usize {
        self.weyl.len()
    }

    pub fn element(&self, id: usize) -> &WeylElement {
        &self.weyl[id]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.weyl[0]
    }

    pub fn longest(&self) -> &WeylElement {
        &self.weyl[self.longest]
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.weyl[self.right[i][0]]
    }

    pub fn inverse(&self, w: &WeylElement) -> &WeylElement {
        &self.weyl[self.inverse[w.id]]
    }

    pub fn compose(&self, w: &WeylElement, u: &WeylElement) -> &WeylElement {
        &self.weyl[self.index[&mat_mul(&w.matrix, &u.matrix, self.rank)]]
    }

    /// `s_i w`.
    pub fn left_mul(&self, i: usize, w: &WeylElement) -> &WeylElement {
        &self.weyl[self.left[i][w.id]]
    }

    /// The element represented by an arbitrary word.
    pub fn from_word(&self, word: &[u8]) -> Result<&WeylElement> {
        let mut id = 0;
        for &i in word {
            if i as usize >= self.rank {
                return Err(Error::InvalidParameter(format!("letter {i} out of range")));
            }
            id = self.right[i as usize][id];
        }
        Ok(&self.weyl[id])
    }

    pub fn apply(&self, w: &WeylElement, x: &Coweight) -> Coweight {
        w.apply(x)
    }

    /// `R∨(w) = {γ > 0 : wγ < 0}`.
    pub fn inversions(&self, w: &WeylElement) -> Vec<Coweight> {
        self.positive.iter().filter(|g| !w.apply(g).is_nonnegative()).copied().collect()
    }

    /// Every reduced word of `w`, when the group is small enough to list them.
    pub fn all_reduced_words(&self, w: &WeylElement) -> Option<&[Vec<u8>]> {
        self.all_words.as_ref().map(|a| a[w.id].as_slice())
    }

    /// Reduced words of `w`, enumerated on demand regardless of group size.
    pub fn reduced_words(&self, w: &WeylElement) -> Vec<Vec<u8>> {
        if let Some(ws) = self.all_reduced_words(w) {
            return ws.to_vec();
        }
        if w.length == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.rank {
            let u = self.left_mul(i, w);
            if u.length < w.length {
                for tail in self.reduced_words(u) {
                    let mut word = vec![i as u8];
                    word.extend(tail);
                    out.push(word);
                }
            }
        }
        out.sort();
        out
    }

    /// `W_λ` and the minimal-length representatives `W^λ` of `W / W_λ`.
    pub fn stabilizer_and_cosets(&self, x: &Coweight) -> Result<(Vec<usize>, Vec<usize>)> {
        self.check_rank(x)?;
        if !self.is_dominant(x) {
            return Err(Error::NotDominant(format!("{x}")));
        }
        let stab: Vec<usize> = self.weyl.iter().filter(|w| w.apply(x) == *x).map(|w| w.id).collect();
        let mut best: BTreeMap<Coweight, usize> = BTreeMap::new();
        for w in &self.weyl {
            let y = w.apply(x);
            match best.get(&y) {
                Some(&u) if self.weyl[u].length <= w.length => {}
                _ => {
                    best.insert(y, w.id);
                }
            }
        }
        let mut reps: Vec<usize> = best.into_values().collect();
        reps.sort();
        Ok((stab, reps))
    }

    /// Length census of a set of elements.
    pub fn poincare_polynomial(&self, ids: &[usize]) -> PoincarePolynomial {
        let mut counts = vec![0u64; self.weyl[self.longest].length + 1];
        for &w in ids {
            counts[self.weyl[w].length] += 1;
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        PoincarePolynomial { counts }
    }

    pub fn ids(&self) -> Vec<usize> {
        (0..self.weyl.len()).collect()
    }
}

/// `Σ_w t^{ℓ(w)}`, stored as coefficient counts by length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincarePolynomial {
    pub counts: Vec<u64>,
}

impl PoincarePolynomial {
    /// `Σ_w v^{sign·ℓ(w)}` in the coefficient ring for cover degree `n`.
    pub fn to_coeff(&self, n: u32, sign: i32) -> crate::coeff::CoeffElement {
        use crate::coeff::CoeffElement;
        let mut acc = CoeffElement::zero(n);
        for (l, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                acc = &acc + &CoeffElement::v_pow(n, sign * l as i32).scale(&crate::Scalar::from_int(c as i64));
            }
        }
        acc
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.counts.iter().enumerate().map(|(l, &c)| c as f64 * libm::pow(t, l as f64)).sum()
    }
}

fn symmetrizer(c: &[Vec<i32>]) -> Result<Vec<i64>> {
    use num_rational::Ratio;
    let r = c.len();
    let mut len: Vec<Option<Ratio<i64>>> = vec![None; r];
    for start in 0..r {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some(Ratio::from_integer(1));
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if i != j && c[i][j] != 0 {
                    // C[i][j] L_j = C[j][i] L_i.
                    let lj = len[i].unwrap() * Ratio::new(c[j][i] as i64, c[i][j] as i64);
                    match len[j] {
                        None => {
                            len[j] = Some(lj);
                            component.push(j);
                            stack.push(j);
                        }
                        Some(x) if x != lj => {
                            return Err(Error::InvalidCartan(String::from("matrix is not symmetrizable")))
                        }
                        _ => {}
                    }
                }
            }
        }
        let min = component.iter().map(|&i| len[i].unwrap()).min().unwrap();
        for &i in &component {
            let l = len[i].unwrap() / min;
            if !l.is_integer() {
                return Err(Error::InvalidCartan(String::from("non-integral length ratio")));
            }
            len[i] = Some(l);
        }
    }
    Ok(len.into_iter().map(|l| l.unwrap().to_integer()).collect())
}
