//! Dense linear algebra over the local ring `Z/p^k`.
//!
//! `Z/p^k` is a principal ideal ring in which an element of minimal valuation
//! divides every other element, so Smith reduction never needs gcd steps:
//! pick a pivot of minimal valuation, clear its row and column, repeat.

use alloc::vec;
use alloc::vec::Vec;

use crate::residue::PrimePowerRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(ring: &PrimePowerRing, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = ring.reduce(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn scalar(n: usize, c: u64) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Reinterpret every entry modulo a smaller power of the same prime.
    pub fn reduce(&self, ring: &PrimePowerRing) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| ring.reduce(x)).collect(),
        }
    }

    pub fn mul(&self, ring: &PrimePowerRing, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = ring.mul(a, other[(k, j)]);
                    out[(i, j)] = ring.add(out[(i, j)], prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ring: &PrimePowerRing, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, ring: &PrimePowerRing, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows).reduce(ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    pub fn sub_identity(&self, ring: &PrimePowerRing) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = ring.sub(out[(i, i)], 1);
        }
        out
    }

    pub fn kronecker(&self, ring: &PrimePowerRing, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = ring.mul(a, other[(k, l)]);
                    }
                }
            }
        }
        out
    }

    /// Inverse over `Z/p^k`, or `None` when the determinant is not a unit.
    pub fn inverse(&self, ring: &PrimePowerRing) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n).reduce(ring);
        for col in 0..n {
            let pivot = (col..n).find(|&r| ring.is_unit(a[(r, col)]))?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let s = ring.inv(a[(col, col)])?;
            a.scale_row(ring, col, s);
            inv.scale_row(ring, col, s);
            for r in 0..n {
                if r != col && a[(r, col)] != 0 {
                    let factor = a[(r, col)];
                    a.add_row_multiple(ring, r, col, ring.neg(factor));
                    inv.add_row_multiple(ring, r, col, ring.neg(factor));
                }
            }
        }
        Some(inv)
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

    fn scale_row(&mut self, ring: &PrimePowerRing, r: usize, s: u64) {
        for j in 0..self.cols {
            self[(r, j)] = ring.mul(self[(r, j)], s);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, ring: &PrimePowerRing, dst: usize, src: usize, factor: u64) {
        for j in 0..self.cols {
            let v = ring.mul(factor, self[(src, j)]);
            self[(dst, j)] = ring.add(self[(dst, j)], v);
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, ring: &PrimePowerRing, dst: usize, src: usize, factor: u64) {
        for i in 0..self.rows {
            let v = ring.mul(factor, self[(i, src)]);
            self[(i, dst)] = ring.add(self[(i, dst)], v);
        }
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Diagonal valuations of the Smith form, with the accumulated column
/// transform `Q` such that `P·A·Q = diag(p^{v_i})` for some invertible `P`.
struct SmithReduction {
    valuations: Vec<u32>,
    column_transform: Matrix,
}

fn smith_reduce(ring: &PrimePowerRing, a: &Matrix, track_columns: bool) -> SmithReduction {
    let mut a = a.reduce(ring);
    let mut q = if track_columns {
        Matrix::identity(a.cols).reduce(ring)
    } else {
        Matrix::zeros(0, 0)
    };
    let n = a.rows.min(a.cols);
    let k = ring.exponent();
    let mut valuations = Vec::with_capacity(n);
    for t in 0..n {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in t..a.rows {
            for j in t..a.cols {
                let x = a[(i, j)];
                if x == 0 {
                    continue;
                }
                let v = ring.valuation(x);
                if best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            valuations.resize(n, k);
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if track_columns {
            q.swap_cols(t, pj);
        }
        let pv = ring.p().pow(v);
        let unit = a[(t, t)] / pv;
        let unit_inv = ring.inv(unit).expect("unit part of pivot");
        a.scale_row(ring, t, unit_inv);
        for i in t + 1..a.rows {
            let x = a[(i, t)];
            if x != 0 {
                a.add_row_multiple(ring, i, t, ring.neg(x / pv));
            }
        }
        for j in t + 1..a.cols {
            let x = a[(t, j)];
            if x != 0 {
                let factor = ring.neg(x / pv);
                a.add_col_multiple(ring, j, t, factor);
                if track_columns {
                    q.add_col_multiple(ring, j, t, factor);
                }
            }
        }
        valuations.push(v);
    }
    SmithReduction { valuations, column_transform: q }
}

/// Valuations of the `min(rows, cols)` Smith diagonal entries; an exact zero
/// is reported as `k`.
pub fn smith_valuations(ring: &PrimePowerRing, a: &Matrix) -> Vec<u32> {
    smith_reduce(ring, a, false).valuations
}

/// Cyclic decomposition of the cokernel `(Z/p^k)^rows / (column span of a)`,
/// as the list of nonzero exponents `e` of its factors `Z/p^e`.
pub fn cokernel_exponents(ring: &PrimePowerRing, a: &Matrix) -> Vec<u32> {
    let k = ring.exponent();
    let mut out: Vec<u32> = smith_valuations(ring, a).into_iter().filter(|&v| v > 0).collect();
    let extra = a.rows.saturating_sub(a.cols);
    out.extend(core::iter::repeat_n(k, extra));
    out.sort_unstable();
    out
}

/// Generators of `{ y : a·y = 0 }` inside `(Z/p^k)^cols`.
pub fn kernel_generators(ring: &PrimePowerRing, a: &Matrix) -> Vec<Vec<u64>> {
    let k = ring.exponent();
    let red = smith_reduce(ring, a, true);
    let q = red.column_transform;
    let mut gens = Vec::new();
    for j in 0..a.cols {
        let v = red.valuations.get(j).copied().unwrap_or(k);
        if v == 0 {
            continue;
        }
        let scale = ring.p_power(k - v.min(k));
        let col: Vec<u64> = q.column(j).into_iter().map(|x| ring.mul(x, scale)).collect();
        if col.iter().any(|&x| x != 0) {
            gens.push(col);
        }
    }
    gens
}

/// Howell normal form of the row span of `rows` in `(Z/p^k)^width`.
///
/// The returned rows are in echelon form with pivots `p^v` (strictly
/// increasing columns), entries above each pivot reduced into `[0, p^v)`, and
/// the Howell property holds, so two generating sets span the same submodule
/// exactly when their Howell forms coincide.
pub fn howell_form(ring: &PrimePowerRing, width: usize, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let k = ring.exponent();
    let mut work: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), width);
            r.iter().map(|&x| ring.reduce(x)).collect::<Vec<_>>()
        })
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut echelon: Vec<(usize, u32, Vec<u64>)> = Vec::new();
    for col in 0..width {
        let best = work
            .iter()
            .enumerate()
            .filter(|(_, r)| r[col] != 0)
            .min_by_key(|(_, r)| ring.valuation(r[col]))
            .map(|(i, _)| i);
        let Some(bi) = best else { continue };
        let mut pivot = work.swap_remove(bi);
        let v = ring.valuation(pivot[col]);
        let pv = ring.p().pow(v);
        let unit_inv = ring.inv(pivot[col] / pv).expect("unit part");
        for x in pivot.iter_mut() {
            *x = ring.mul(*x, unit_inv);
        }
        for r in work.iter_mut() {
            if r[col] != 0 {
                let factor = ring.neg(r[col] / pv);
                for (x, &y) in r.iter_mut().zip(&pivot) {
                    *x = ring.add(*x, ring.mul(factor, y));
                }
            }
        }
        work.retain(|r| r.iter().any(|&x| x != 0));
        if v > 0 {
            let scale = ring.p_power(k - v);
            let shifted: Vec<u64> = pivot.iter().map(|&x| ring.mul(x, scale)).collect();
            if shifted.iter().any(|&x| x != 0) {
                work.push(shifted);
            }
        }
        echelon.push((col, v, pivot));
    }
    for i in 0..echelon.len() {
        for j in i + 1..echelon.len() {
            let (col, v, ref pivot_row) = echelon[j];
            let pv = ring.p().pow(v);
            let x = echelon[i].2[col];
            let q = x / pv;
            if q != 0 {
                let pivot_row = pivot_row.clone();
                let factor = ring.neg(q % ring.modulus());
                for (a, &b) in echelon[i].2.iter_mut().zip(&pivot_row) {
                    *a = ring.add(*a, ring.mul(factor, b));
                }
            }
        }
    }
    echelon.into_iter().map(|(_, _, r)| r).collect()
}

/// Exponent `e` with `|span| = p^e` for rows already in Howell form.
pub fn howell_size_exponent(ring: &PrimePowerRing, basis: &[Vec<u64>]) -> u32 {
    basis
        .iter()
        .map(|r| {
            let lead = r.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            ring.exponent() - ring.valuation(lead)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn ring(p: u64, k: u32) -> PrimePowerRing {
        PrimePowerRing::new(p, k).unwrap()
    }

    fn span_brute(r: &PrimePowerRing, width: usize, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; width]);
        loop {
            let mut added = false;
            let current: Vec<_> = set.iter().cloned().collect();
            for x in &current {
                for g in gens {
                    let y: Vec<u64> = x.iter().zip(g).map(|(&a, &b)| r.add(a, b)).collect();
                    added |= set.insert(y);
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn smith_of_diagonal() {
        let r = ring(3, 3);
        let a = Matrix::from_rows(&r, &[vec![9, 0], vec![0, 2]]);
        let mut v = smith_valuations(&r, &a);
        v.sort();
        assert_eq!(v, vec![0, 2]);
        assert_eq!(cokernel_exponents(&r, &a), vec![2]);
    }

    #[test]
    fn cokernel_counts_missing_columns() {
        let r = ring(3, 2);
        let a = Matrix::from_rows(&r, &[vec![3], vec![0], vec![1]]);
        // column (3,0,1) spans a copy of Z/9; quotient of (Z/9)^3 has size 9^2
        assert_eq!(cokernel_exponents(&r, &a).iter().sum::<u32>(), 4);
    }

    #[test]
    fn howell_matches_brute_span() {
        let r = ring(3, 2);
        let cases: Vec<Vec<Vec<u64>>> = vec![
            vec![vec![3, 0]],
            vec![vec![3, 1], vec![0, 3]],
            vec![vec![1, 2], vec![2, 4]],
            vec![vec![6, 3], vec![3, 6]],
        ];
        for gens in cases {
            let h = howell_form(&r, 2, &gens);
            assert_eq!(span_brute(&r, 2, &h), span_brute(&r, 2, &gens), "{gens:?}");
            let size = span_brute(&r, 2, &gens).len() as u64;
            assert_eq!(3u64.pow(howell_size_exponent(&r, &h)), size);
        }
    }

    #[test]
    fn howell_is_canonical() {
        let r = ring(3, 2);
        let a = howell_form(&r, 2, &[vec![3, 0], vec![0, 1]]);
        let b = howell_form(&r, 2, &[vec![3, 4], vec![6, 2], vec![0, 5]]);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_of_scalar() {
        let r = ring(3, 2);
        let a = Matrix::from_rows(&r, &[vec![3, 0], vec![0, 1]]);
        let ker = kernel_generators(&r, &a);
        let h = howell_form(&r, 2, &ker);
        assert_eq!(h, vec![vec![3, 0]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let r = ring(5, 2);
        let a = Matrix::from_rows(&r, &[vec![1, 5], vec![3, 2]]);
        let inv = a.inverse(&r).unwrap();
        assert_eq!(a.mul(&r, &inv), Matrix::identity(2));
        let singular = Matrix::from_rows(&r, &[vec![5, 0], vec![0, 1]]);
        assert!(singular.inverse(&r).is_none());
    }
}
