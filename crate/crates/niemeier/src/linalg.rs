//! Exact integer/rational dense linear algebra: Bareiss determinants,
//! Hermite normalization, Gram-based LLL reduction and LDL decomposition.
//!
//! Everything here is allocation-heavy and dimension-24 scale; no attempt
//! is made at asymptotic cleverness beyond what enumeration needs.

use num::{BigInt, One, Signed, Zero};

use crate::exactmath::Rational;

pub type IntMat = Vec<Vec<BigInt>>;
pub type RatMat = Vec<Vec<Rational>>;

pub fn int_identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn int_mat_from_i64(rows: &[Vec<i64>]) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn matmul_int(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn transpose_int(a: &IntMat) -> IntMat {
    let n = a.len();
    let m = a[0].len();
    let mut out = vec![vec![BigInt::zero(); n]; m];
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_int(m: &IntMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMat = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if sign < 0 {
        -a[n - 1][n - 1].clone()
    } else {
        a[n - 1][n - 1].clone()
    }
}

/// All leading principal minors positive.
pub fn is_positive_definite(m: &IntMat) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let sub: IntMat = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        det_int(&sub).is_positive()
    })
}

/// Row-style Hermite normal form. Returns the nonzero rows (a basis of the
/// row lattice), with positive pivots and reduced entries above each pivot.
pub fn hnf_rows(mut a: IntMat) -> IntMat {
    if a.is_empty() {
        return a;
    }
    let cols = a[0].len();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= a.len() {
            break;
        }
        loop {
            // Find the row (>= pivot_row) with smallest nonzero |entry| in col.
            let mut best: Option<usize> = None;
            for i in pivot_row..a.len() {
                if !a[i][col].is_zero()
                    && best.is_none_or(|b| a[i][col].abs() < a[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut any_left = false;
            for i in pivot_row + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][col], &a[pivot_row][col]);
                for j in 0..cols {
                    let t = &a[i][j] - &q * &a[pivot_row][j];
                    a[i][j] = t;
                }
                if !a[i][col].is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                break;
            }
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            for j in 0..cols {
                a[pivot_row][j] = -a[pivot_row][j].clone();
            }
        }
        // Reduce entries above the pivot.
        for i in 0..pivot_row {
            let q = num::Integer::div_floor(&a[i][col], &a[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            for j in 0..cols {
                let t = &a[i][j] - &q * &a[pivot_row][j];
                a[i][j] = t;
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    a
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // Round a/b to nearest (ties toward zero); keeps HNF remainders small.
    let two = BigInt::from(2);
    let (q, r) = num::Integer::div_rem(a, b);
    if &r.abs() * &two > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Inverse of a square rational matrix by Gauss-Jordan.
pub fn inverse_rat(m: &RatMat) -> Option<RatMat> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: RatMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let piv = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &piv;
            inv[col][j] /= &piv;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let t = a[i][j].clone() - &f * &a[col][j];
                a[i][j] = t;
                let t = inv[i][j].clone() - &f * &inv[col][j];
                inv[i][j] = t;
            }
        }
    }
    Some(inv)
}

pub fn int_to_rat(m: &IntMat) -> RatMat {
    m.iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

/// Solve A x = b for each column b of rhs; A square nonsingular.
pub fn solve_rat(a: &RatMat, rhs: &RatMat) -> Option<RatMat> {
    let inv = inverse_rat(a)?;
    let n = inv.len();
    let m = rhs[0].len();
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = Rational::zero();
            for k in 0..n {
                acc += &inv[i][k] * &rhs[k][j];
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

/// LDL decomposition of a positive definite rational matrix:
/// Q(x) = sum_j d[j] * (x_j + sum_{k>j} l[j][k] x_k)^2.
pub fn ldl(gram: &RatMat) -> Option<(Vec<Rational>, RatMat)> {
    let n = gram.len();
    let mut a = gram.to_vec();
    let mut d = vec![Rational::zero(); n];
    let mut l = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        if !a[i][i].is_positive() {
            return None;
        }
        d[i] = a[i][i].clone();
        for k in i + 1..n {
            l[i][k] = &a[i][k] / &d[i];
        }
        for r in i + 1..n {
            for c in r..n {
                let t = a[r][c].clone() - &l[i][r] * &a[i][c];
                a[r][c] = t;
            }
        }
    }
    Some((d, l))
}

/// LLL reduction driven entirely by the Gram matrix.
///
/// Returns (U, W) with W = U * gram * U^T LLL-reduced (delta = 3/4) and
/// U unimodular.
pub fn lll_gram(gram: &IntMat) -> (IntMat, IntMat) {
    let n = gram.len();
    let mut u = int_identity(n);
    let mut w = gram.clone();
    if n <= 1 {
        return (u, w);
    }

    let mut mu: RatMat = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    // Rows of mu/b below `valid` must be recomputed from W before use.
    let mut valid = 0usize;

    let recompute_row = |mu: &mut RatMat, b: &mut Vec<Rational>, w: &IntMat, i: usize| {
        for j in 0..i {
            let mut acc = Rational::from_integer(w[i][j].clone());
            for k in 0..j {
                acc -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = acc / &b[j];
        }
        let mut acc = Rational::from_integer(w[i][i].clone());
        for k in 0..i {
            acc -= mu[i][k].clone() * &mu[i][k] * &b[k];
        }
        b[i] = acc;
    };

    let row_op = |u: &mut IntMat, w: &mut IntMat, i: usize, j: usize, q: &BigInt| {
        // row_i -= q * row_j, applied to U and symmetrically to W.
        for c in 0..n {
            let t = &u[i][c] - q * &u[j][c];
            u[i][c] = t;
        }
        for c in 0..n {
            let t = &w[i][c] - q * &w[j][c];
            w[i][c] = t;
        }
        for r in 0..n {
            let t = &w[r][i] - q * &w[r][j];
            w[r][i] = t;
        }
    };

    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let half = Rational::new(BigInt::from(1), BigInt::from(2));

    let mut k = 1usize;
    while k < n {
        while valid <= k {
            recompute_row(&mut mu, &mut b, &w, valid);
            valid += 1;
        }
        // Size-reduce row k.
        for j in (0..k).rev() {
            if mu[k][j].clone().abs() > half {
                let q = round_rat(&mu[k][j]);
                row_op(&mut u, &mut w, k, j, &q);
                valid = valid.min(k);
                while valid <= k {
                    recompute_row(&mut mu, &mut b, &w, valid);
                    valid += 1;
                }
            }
        }
        // Lovasz condition.
        let lhs = b[k].clone();
        let rhs = (&delta - mu[k][k - 1].clone() * &mu[k][k - 1]) * &b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            u.swap(k - 1, k);
            w.swap(k - 1, k);
            for r in 0..n {
                let t = w[r][k - 1].clone();
                w[r][k - 1] = w[r][k].clone();
                w[r][k] = t;
            }
            valid = valid.min(k - 1);
            k = k.max(2) - 1;
        }
    }
    (u, w)
}

fn round_rat(r: &Rational) -> BigInt {
    r.round().to_integer()
}
