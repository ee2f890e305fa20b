use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Presentation;

/// Signature of the surgery part of the linking matrix: the signature of
/// the four-manifold obtained by attaching 2-handles to B⁴.
pub fn signature(p: &Presentation) -> i64 {
    symmetric_signature(&p.surgery_matrix())
}

/// Exact signature of a symmetric integer matrix by symmetric Gaussian
/// elimination over Q. A zero diagonal with a nonzero off-diagonal entry is
/// eliminated as a hyperbolic 2×2 block, contributing +1 and −1.
pub(crate) fn symmetric_signature(m: &[Vec<i64>]) -> i64 {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    loop {
        let n = a.len();
        if n == 0 {
            break;
        }
        if let Some(i) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let pivot = a[i][i].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            let rest: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            a = rest
                .iter()
                .map(|&r| rest.iter().map(|&c| &a[r][c] - &a[r][i] * &a[i][c] / &pivot).collect())
                .collect();
            continue;
        }
        let Some((i, j)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        // block [[0, x], [x, 0]] has inverse [[0, 1/x], [1/x, 0]]
        let x = a[i][j].clone();
        let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        a = rest
            .iter()
            .map(|&r| {
                rest.iter()
                    .map(|&c| &a[r][c] - (&a[r][i] * &a[j][c] + &a[r][j] * &a[i][c]) / &x)
                    .collect()
            })
            .collect();
    }
    sig
}

/// Elementary divisors of H₁ of the boundary three-manifold: the Smith form
/// of the surgery linking matrix with unit divisors dropped. A 0 stands for
/// a free Z summand; zeros are listed last.
pub fn first_homology(p: &Presentation) -> Vec<u64> {
    smith_divisors(&p.surgery_matrix())
}

pub(crate) fn smith_divisors(m: &[Vec<i64>]) -> Vec<u64> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut diag: Vec<BigInt> = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by_key(|&(r, c)| a[r][c].abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = &q * &a[t][c];
                    a[r][c] -= v;
                }
                if !a[r][t].is_zero() {
                    a.swap(t, r);
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for r in t..rows {
                    let v = &q * &a[r][t];
                    a[r][c] -= v;
                }
                if !a[t][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&a[r][c] % &a[t][t]).is_zero());
            match bad {
                Some((r, _)) => {
                    for c in t..cols {
                        let v = a[r][c].clone();
                        a[t][c] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    let rank = diag.len();
    let mut out: Vec<u64> = diag
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| u64::try_from(d).expect("torsion coefficient exceeds u64"))
        .collect();
    out.extend(std::iter::repeat_n(0, rows - rank));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_small() {
        assert_eq!(symmetric_signature(&[]), 0);
        assert_eq!(symmetric_signature(&[vec![1]]), 1);
        assert_eq!(symmetric_signature(&[vec![2, 1], vec![1, 2]]), 2);
        assert_eq!(symmetric_signature(&[vec![0, 1], vec![1, 0]]), 0);
        assert_eq!(symmetric_signature(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(symmetric_signature(&[vec![1, 2], vec![2, 1]]), 0);
        // E8-style negative definite block: -A2
        assert_eq!(symmetric_signature(&[vec![-2, 1], vec![1, -2]]), -2);
    }

    #[test]
    fn homology_small() {
        assert_eq!(smith_divisors(&[vec![0]]), vec![0]);
        assert_eq!(smith_divisors(&[vec![1]]), Vec::<u64>::new());
        assert_eq!(smith_divisors(&[vec![2, 1], vec![1, 2]]), vec![3]);
        assert_eq!(smith_divisors(&[vec![2, 0], vec![0, 2]]), vec![2, 2]);
        assert_eq!(smith_divisors(&[vec![2, 0], vec![0, 3]]), vec![6]);
        assert_eq!(smith_divisors(&[vec![4, 6], vec![6, 4]]), vec![2, 10]);
        assert_eq!(smith_divisors(&[vec![0, 0], vec![0, 5]]), vec![5, 0]);
    }
}
