//! Exact linear algebra: fraction-free determinants of polynomial matrices,
//! Sylvester resultants, rank-drop loci from minors, and Gaussian elimination
//! over the coefficient field.

use super::field::FieldElement;
use super::gcd::gcd;
use super::poly::MultiPoly;

/// Determinant of a square polynomial matrix by Bareiss fraction-free
/// elimination; every division along the way is exact.
pub fn det_poly(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(n > 0, "determinant of empty matrix");
    let vars = m[0][0].vars().clone();
    for row in m {
        assert_eq!(row.len(), n, "matrix is not square");
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.divide_exact(&prev);
            }
        }
        for row in a.iter_mut().skip(k + 1) {
            row[k] = MultiPoly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Determinant over the coefficient field.
pub fn det_field(m: &[Vec<FieldElement>]) -> FieldElement {
    let n = m.len();
    assert!(n > 0);
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let mut det = FieldElement::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return FieldElement::zero(),
        };
        if pivot != k {
            a.swap(k, pivot);
            det = -&det;
        }
        let pv = a[k][k].clone();
        det = &det * &pv;
        let inv = pv.inv().unwrap();
        for i in k + 1..n {
            let factor = &a[i][k] * &inv;
            for j in k..n {
                let t = &factor * &a[k][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    det
}

/// Resultant of `f` and `g` with respect to variable `var`, as the Sylvester
/// determinant. Both must have positive degree in `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let vars = f.vars().clone();
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let m = fc.len().checked_sub(1).expect("resultant of zero polynomial");
    let n = gc.len().checked_sub(1).expect("resultant of zero polynomial");
    assert!(m >= 1 && n >= 1, "resultant needs positive degree in the variable");
    let size = m + n;
    let zero = MultiPoly::zero(&vars);
    let mut syl = vec![vec![zero.clone(); size]; size];
    // n rows of f-coefficients (descending), then m rows of g-coefficients.
    for r in 0..n {
        for (k, c) in fc.iter().rev().enumerate() {
            syl[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in gc.iter().rev().enumerate() {
            syl[n + r][r + k] = c.clone();
        }
    }
    det_poly(&syl)
}

/// Monic gcd of `modulus` with every (r+1) x (r+1) minor of `m`: the locus,
/// inside the divisor of `modulus`, where the matrix has rank <= r. If the
/// matrix has no minors of that size the modulus itself (monic) is returned.
pub fn minor_gcd_locus(m: &[Vec<MultiPoly>], modulus: &MultiPoly, r: usize) -> MultiPoly {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let k = r + 1;
    if k > rows || k > cols {
        return modulus.monic();
    }
    let mut g = modulus.monic();
    for ri in subsets(rows, k) {
        for ci in subsets(cols, k) {
            if g.is_constant() && !g.is_zero() {
                return g;
            }
            let sub: Vec<Vec<MultiPoly>> = ri
                .iter()
                .map(|&i| ci.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            let minor = det_poly(&sub);
            g = gcd(&g, &minor);
        }
    }
    g
}

/// All k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Apply an invertible linear change of coordinates `x_i -> sum_j m[i][j] x_j`.
/// Panics if the matrix is singular.
pub fn linear_substitution(f: &MultiPoly, m: &[Vec<FieldElement>]) -> MultiPoly {
    let n = f.num_vars();
    assert_eq!(m.len(), n);
    assert!(
        !det_field(m).is_zero(),
        "linear substitution requires an invertible matrix"
    );
    let vars = f.vars();
    let images: Vec<MultiPoly> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n);
            let mut img = MultiPoly::zero(vars);
            for (j, c) in row.iter().enumerate() {
                img = img.add(&MultiPoly::var(vars, j).scale(c));
            }
            img
        })
        .collect();
    f.substitute(&images)
}

/// Inverse of a square matrix over the field. `None` if singular.
pub fn invert_field(m: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let mut inv: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        FieldElement::one()
                    } else {
                        FieldElement::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot);
        inv.swap(k, pivot);
        let pinv = a[k][k].inv().unwrap();
        for j in 0..n {
            a[k][j] = &a[k][j] * &pinv;
            inv[k][j] = &inv[k][j] * &pinv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..n {
                let t = &factor * &a[k][j];
                a[i][j] = &a[i][j] - &t;
                let t = &factor * &inv[k][j];
                inv[i][j] = &inv[i][j] - &t;
            }
        }
    }
    Some(inv)
}

/// Basis of the null space of an `rows x cols` matrix over the field.
pub fn null_space(m: &[Vec<FieldElement>], cols: usize) -> Vec<Vec<FieldElement>> {
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let rows = a.len();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        a.swap(row, pivot);
        let pinv = a[row][col].inv().unwrap();
        for j in 0..cols {
            a[row][j] = &a[row][j] * &pinv;
        }
        for i in 0..rows {
            if i == row || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..cols {
                let t = &factor * &a[row][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: std::collections::BTreeSet<usize> =
        pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![FieldElement::zero(); cols];
        v[free] = FieldElement::one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        basis.push(v);
    }
    basis
}
