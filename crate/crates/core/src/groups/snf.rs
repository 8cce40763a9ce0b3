//! Smith normal form of integer matrices, with exact big-integer arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let add = q * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let add = q * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl core::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal satisfying the
/// divisibility chain `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    /// The nonzero diagonal entries, all positive, in divisibility order.
    pub invariants: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// Computes the Smith normal form by alternating row/column reduction,
/// pivoting on a least-absolute-value entry, then fixing the divisibility
/// chain. All transforms are elementary, so `u` and `v` are unimodular by
/// construction.
pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let bound = m.rows.min(m.cols);

    for k in 0..bound {
        // find a pivot: least nonzero absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..d.rows {
            for j in k..d.cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d[(i, j)].abs() < d[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        // clear row and column k, restarting whenever a remainder shrinks the pivot
        loop {
            let mut dirty = false;
            for i in k + 1..d.rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, k)] / &d[(k, k)]);
                d.add_row(i, k, &q);
                u.add_row(i, k, &q);
                if !d[(i, k)].is_zero() {
                    // remainder strictly smaller: make it the pivot
                    d.swap_rows(k, i);
                    u.swap_rows(k, i);
                    dirty = true;
                }
            }
            for j in k + 1..d.cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(k, j)] / &d[(k, k)]);
                d.add_col(j, k, &q);
                v.add_col(j, k, &q);
                if !d[(k, j)].is_zero() {
                    d.swap_cols(k, j);
                    v.swap_cols(k, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }

        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }

    // Enforce the divisibility chain d[k] | d[k+1]. Zeros already sit at the
    // end (pivots are always nonzero), so only adjacent nonzero pairs need
    // fixing; each fix replaces (a, b) with (gcd, lcm), touching nothing
    // outside rows/columns k, k+1.
    loop {
        let mut fixed = true;
        for k in 0..bound.saturating_sub(1) {
            let a = d[(k, k)].clone();
            let b = d[(k + 1, k + 1)].clone();
            if a.is_zero() || b.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            fixed = false;
            let g = a.gcd(&b);
            let l = (&a * &b) / &g;
            // col k += col k+1, making the 2x2 block [[a, 0], [b, b]]
            d.add_col(k, k + 1, &BigInt::one());
            v.add_col(k, k + 1, &BigInt::one());
            // gcd dance on rows k, k+1 until (k+1, k) clears: always reduce
            // the larger entry modulo the smaller
            while !d[(k + 1, k)].is_zero() {
                let x = d[(k, k)].clone();
                let y = d[(k + 1, k)].clone();
                if x.is_zero() || x.abs() > y.abs() {
                    d.swap_rows(k, k + 1);
                    u.swap_rows(k, k + 1);
                } else {
                    let q = -(&y / &x);
                    d.add_row(k + 1, k, &q);
                    u.add_row(k + 1, k, &q);
                }
            }
            if d[(k, k)].is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }
            // g divides every entry of the block, so this clears exactly
            let q = -(&d[(k, k + 1)] / &d[(k, k)]);
            d.add_col(k + 1, k, &q);
            v.add_col(k + 1, k, &q);
            debug_assert!(d[(k, k + 1)].is_zero());
            if d[(k + 1, k + 1)].is_negative() {
                d.negate_row(k + 1);
                u.negate_row(k + 1);
            }
            debug_assert_eq!(g, d[(k, k)]);
            debug_assert_eq!(l, d[(k + 1, k + 1)]);
        }
        if fixed {
            break;
        }
    }

    let mut invariants = Vec::new();
    for k in 0..bound {
        if !d[(k, k)].is_zero() {
            invariants.push(d[(k, k)].clone());
        }
    }
    SmithDecomposition { d, u, v, invariants }
}

/// Solves `m x = b` over the integers; returns any solution if one exists.
pub fn solve(m: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows);
    let s = smith_normal_form(m);
    // m = u^-1 d v^-1, so m x = b  <=>  d (v^-1 x) = u b; set y = v^-1 x.
    let mut ub = vec![BigInt::zero(); m.rows];
    for i in 0..m.rows {
        for j in 0..m.rows {
            let add = &s.u[(i, j)] * &b[j];
            ub[i] += add;
        }
    }
    let mut y = vec![BigInt::zero(); m.cols];
    for i in 0..m.rows {
        let di = if i < m.cols { s.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    // x = v y
    let mut x = vec![BigInt::zero(); m.cols];
    for i in 0..m.cols {
        for j in 0..m.cols {
            let add = &s.v[(i, j)] * &y[j];
            x[i] += add;
        }
    }
    Some(x)
}

/// True if every column of `sub` lies in the column lattice of `lat`.
pub fn lattice_contains(lat: &IntMat, sub: &IntMat) -> bool {
    assert_eq!(lat.rows, sub.rows);
    for j in 0..sub.cols {
        let b: Vec<BigInt> = (0..sub.rows).map(|i| sub[(i, j)].clone()).collect();
        if solve(lat, &b).is_none() {
            return false;
        }
    }
    true
}

/// A basis (as columns) for `{ x : m x = 0 }`.
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let s = smith_normal_form(m);
    let r = s.rank();
    // columns r.. of v span the kernel
    let mut out = IntMat::zero(m.cols, m.cols - r);
    for j in r..m.cols {
        for i in 0..m.cols {
            out[(i, j - r)] = s.v[(i, j)].clone();
        }
    }
    out
}

/// Horizontal concatenation `[a | b]`.
pub fn hcat(a: &IntMat, b: &IntMat) -> IntMat {
    assert_eq!(a.rows, b.rows);
    let mut out = IntMat::zero(a.rows, a.cols + b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            out[(i, j)] = a[(i, j)].clone();
        }
        for j in 0..b.cols {
            out[(i, a.cols + j)] = b[(i, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(m: &IntMat) {
        let s = smith_normal_form(m);
        // u m v = d
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "u*m*v != d");
        // d diagonal with chain
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in s.invariants.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", s.invariants);
        }
        // unimodularity
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn diag_2_3_gives_1_6() {
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        check_decomposition(&m);
        assert_eq!(s.invariants, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_and_zero() {
        let m = IntMat::identity(4);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariants, vec![BigInt::one(); 4]);
        let z = IntMat::zero(3, 2);
        assert!(smith_normal_form(&z).invariants.is_empty());
    }

    #[test]
    fn triangle_relator_matrix_is_trivial() {
        // rows (2,0,0),(0,3,0),(0,0,5),(1,1,1): invariants all 1
        let m = IntMat::from_rows(&[
            vec![2, 0, 0],
            vec![0, 3, 0],
            vec![0, 0, 5],
            vec![1, 1, 1],
        ]);
        check_decomposition(&m);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariants, vec![BigInt::one(); 3]);
    }

    #[test]
    fn product_of_invariants_matches_minor_gcd() {
        // 2x2: product of invariants = |det|
        let m = IntMat::from_rows(&[vec![4, 6], vec![2, 8]]);
        check_decomposition(&m);
        let s = smith_normal_form(&m);
        let prod: BigInt = s.invariants.iter().product();
        assert_eq!(prod, m.determinant().abs());
    }

    #[test]
    fn solve_and_kernel() {
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve(&m, &[BigInt::from(1), BigInt::from(0)]).is_none());

        let m2 = IntMat::from_rows(&[vec![1, 2, 3]]);
        let k = kernel_basis(&m2);
        assert_eq!(k.cols, 2);
        for j in 0..k.cols {
            let s: BigInt =
                (0..3).map(|i| &k[(i, j)] * BigInt::from([1, 2, 3][i])).sum();
            assert!(s.is_zero());
        }
    }
}
