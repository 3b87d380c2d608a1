//! Exact determinants over the coefficient ring and ranks over prime fields.

use crate::coeff::{CoeffError, ConcreteSpec, Fp, LaurentPoly};

/// A dense square matrix of ring elements, row-major.
pub type Matrix = Vec<Vec<LaurentPoly>>;

/// Fraction-free (Bareiss) determinant. Denominators `w^k` are cleared first
/// and divided back out at the end.
pub fn det(m: &Matrix) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let k = m
        .iter()
        .flat_map(|r| r.iter().map(|x| x.omega_denominator()))
        .max()
        .unwrap_or(0);
    let mut a: Vec<Vec<LaurentPoly>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.times_omega_pow(k)).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = LaurentPoly::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return LaurentPoly::zero();
        };
        if piv != c {
            a.swap(piv, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = &(&a[c][c] * &a[i][j]) - &(&a[i][c] * &a[c][j]);
                a[i][j] = num
                    .poly_exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
            a[i][c] = LaurentPoly::zero();
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].scale_int(sign);
    d.div_omega_pow(k * n as u32)
}

/// Specialize every entry at `(q0, r0)`.
pub fn specialize(m: &Matrix, spec: &ConcreteSpec) -> Result<Vec<Vec<Fp>>, CoeffError> {
    m.iter()
        .map(|r| r.iter().map(|x| x.specialize(spec.q0, spec.r0)).collect())
        .collect()
}

/// Rank over `GF(p)` by Gaussian elimination.
pub fn rank_fp(m: &[Vec<Fp>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let p = m[0].first().map(|x| x.modulus()).unwrap_or(2);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.value()).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = Fp::new(a[rank][c], p).inverse().unwrap().value();
        for j in c..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..rows {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..cols {
                    a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant over `GF(p)`.
pub fn det_fp(m: &[Vec<Fp>], p: u64) -> Fp {
    let n = m.len();
    let mut a: Vec<Vec<Fp>> = m.to_vec();
    let mut d = Fp::new(1, p);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Fp::new(0, p);
        };
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        d = d * a[c][c];
        let inv = a[c][c].inverse().unwrap();
        for i in c + 1..n {
            let f = a[i][c] * inv;
            for j in c..n {
                let t = f * a[c][j];
                a[i][j] = a[i][j] - t;
            }
        }
    }
    d
}

pub fn is_symmetric(m: &Matrix) -> bool {
    (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}
