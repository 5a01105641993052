//! Small dense integer linear algebra: echelon forms and left kernels.

use alloc::vec;
use alloc::vec::Vec;

type Mat = Vec<Vec<i64>>;

fn row_op(m: &mut Mat, dst: usize, src: usize, k: i64) {
    for c in 0..m[dst].len() {
        m[dst][c] -= k * m[src][c];
    }
}

/// Row echelon form `H = U·A` with `U` unimodular.
pub fn echelon(a: &[Vec<i64>]) -> (Mat, Mat) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h: Mat = a.to_vec();
    let mut u: Mat = (0..rows).map(|i| (0..rows).map(|j| i64::from(i == j)).collect()).collect();
    let mut p = 0;
    for c in 0..cols {
        if p == rows {
            break;
        }
        for r in p + 1..rows {
            while h[r][c] != 0 {
                let k = h[p][c].div_euclid(h[r][c]);
                row_op(&mut h, p, r, k);
                row_op(&mut u, p, r, k);
                h.swap(p, r);
                u.swap(p, r);
            }
        }
        if h[p][c] != 0 {
            if h[p][c] < 0 {
                for x in h[p].iter_mut() {
                    *x = -*x;
                }
                for x in u[p].iter_mut() {
                    *x = -*x;
                }
            }
            for r in 0..p {
                let k = h[r][c].div_euclid(h[p][c]);
                row_op(&mut h, r, p, k);
                row_op(&mut u, r, p, k);
            }
            p += 1;
        }
    }
    (h, u)
}

/// A basis of the lattice spanned by `vectors`, in Hermite normal form.
pub fn lattice_basis(vectors: &[Vec<i64>]) -> Mat {
    let (h, _) = echelon(vectors);
    h.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect()
}

/// Basis of `{x : x·A = 0}` over the integers.
pub fn left_kernel(a: &[Vec<i64>]) -> Mat {
    let (h, u) = echelon(a);
    let mut out = vec![];
    for (hr, ur) in h.iter().zip(u) {
        if hr.iter().all(|&x| x == 0) {
            out.push(ur);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(x: &[i64], a: &[Vec<i64>]) -> Vec<i64> {
        (0..a[0].len()).map(|c| x.iter().zip(a).map(|(xi, row)| xi * row[c]).sum()).collect()
    }

    #[test]
    fn kernel_is_kernel() {
        let a = vec![vec![2, 4], vec![3, 6], vec![1, 1], vec![5, 7]];
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mul(v, &a).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn basis_of_redundant_generators() {
        let b = lattice_basis(&[vec![2, 0], vec![0, 3], vec![4, 6], vec![2, 3]]);
        assert_eq!(b, vec![vec![2, 0], vec![0, 3]]);
    }
}
