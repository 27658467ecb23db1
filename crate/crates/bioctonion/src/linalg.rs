// SPDX-License-Identifier: Apache-2.0
//! Dense exact linear algebra over any `Field`.

use crate::fields::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }
    pub fn from_rows(rows: &[Vec<E>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Mat { rows: rows.len(), cols, data }
    }
    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<E>], rows: usize) -> Self {
        Mat::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    Mat { rows, cols, data: vec![f.zero(); rows * cols] }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    Mat::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn scalar_mat<F: Field>(f: &F, n: usize, c: &F::Elem) -> Mat<F::Elem> {
    Mat::from_fn(n, n, |i, j| if i == j { c.clone() } else { f.zero() })
}

pub fn mat_mul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    f.mat_mul(a, b)
}

pub fn mat_mul_generic<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if f.is_zero(bkj) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = f.add(&out.data[idx], &f.mul(aik, bkj));
            }
        }
    }
    out
}

pub fn mat_add<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect() }
}

pub fn mat_sub<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect() }
}

pub fn mat_scale<F: Field>(f: &F, c: &F::Elem, a: &Mat<F::Elem>) -> Mat<F::Elem> {
    Mat { rows: a.rows, cols: a.cols, data: a.data.iter().map(|x| f.mul(c, x)).collect() }
}

pub fn mat_vec<F: Field>(f: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut s = f.zero();
            for (x, y) in a.row(i).iter().zip(v) {
                if !f.is_zero(x) && !f.is_zero(y) {
                    s = f.add(&s, &f.mul(x, y));
                }
            }
            s
        })
        .collect()
}

pub fn is_zero_mat<F: Field>(f: &F, a: &Mat<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

pub fn vec_add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vec_scale<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

pub fn vec_neg<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn is_zero_vec<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut s = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            s = f.add(&s, &f.mul(x, y));
        }
    }
    s
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot must be invertible");
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..m.cols {
                if f.is_zero(m.get(r, j)) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of {x : m x = 0}.
pub fn nullspace<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a.get(r, fc));
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(f: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(Mat::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
}

/// One solution of m x = b, if any.
pub fn solve<F: Field>(f: &F, m: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut aug = Mat::from_fn(m.rows, m.cols + 1, |i, j| if j < m.cols { m.get(i, j).clone() } else { b[i].clone() });
    let piv = rref(f, &mut aug);
    if piv.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (r, &pc) in piv.iter().enumerate() {
        x[pc] = aug.get(r, m.cols).clone();
    }
    Some(x)
}

pub fn det<F: Field>(f: &F, m: &Mat<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else { return f.zero() };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            d = f.neg(&d);
        }
        let piv = a.get(c, c).clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            if f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.mul(a.get(i, c), &inv);
            for j in c..n {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    d
}

/// Incrementally maintained reduced echelon basis of a span.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub len: usize,
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the basis; returns the remainder.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&w[p]) {
                continue;
            }
            let c = w[p].clone();
            for (j, x) in row.iter().enumerate() {
                if !f.is_zero(x) {
                    w[j] = f.sub(&w[j], &f.mul(&c, x));
                }
            }
        }
        w
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        is_zero_vec(f, &self.reduce(f, v))
    }

    /// Inserts v; returns true when it enlarged the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let mut w = self.reduce(f, v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else { return false };
        let inv = f.inv(&w[p]).expect("nonzero pivot");
        for x in w.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (j, x) in w.iter().enumerate() {
                if !f.is_zero(x) {
                    row[j] = f.sub(&row[j], &f.mul(&c, x));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

impl<E: Clone + PartialEq> Echelon<E> {
    /// Basis of the common kernel of the stored rows.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let free: Vec<usize> = (0..self.len).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.len];
                v[fc] = f.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !f.is_zero(&row[fc]) {
                        v[p] = f.neg(&row[fc]);
                    }
                }
                v
            })
            .collect()
    }
}

/// Kernel of a large system given as row groups. Starts from a sample of groups and adds
/// every group that some candidate kernel vector violates, so the result is exact.
pub fn grouped_kernel<F: Field>(
    f: &F,
    ncols: usize,
    ngroups: usize,
    rows_of: impl Fn(usize) -> Vec<Vec<F::Elem>>,
    violated: impl Fn(usize, &[F::Elem]) -> bool,
) -> Vec<Vec<F::Elem>> {
    grouped_kernel_batch(f, ncols, ngroups, rows_of, |ker, used| {
        (0..ngroups).filter(|&g| !used[g] && ker.iter().any(|v| violated(g, v))).take(8).collect()
    })
}

/// As `grouped_kernel`, but the caller scans all candidates at once and returns
/// violated groups (at least one whenever any unused group is violated).
pub fn grouped_kernel_batch<F: Field>(
    f: &F,
    ncols: usize,
    ngroups: usize,
    rows_of: impl Fn(usize) -> Vec<Vec<F::Elem>>,
    find_violated: impl Fn(&[Vec<F::Elem>], &[bool]) -> Vec<usize>,
) -> Vec<Vec<F::Elem>> {
    let mut ech = Echelon::new(ncols);
    let mut used = vec![false; ngroups];
    let seed = ngroups.min(12);
    for t in 0..seed {
        let g = t * ngroups / seed;
        used[g] = true;
        for r in rows_of(g) {
            ech.insert(f, &r);
        }
    }
    loop {
        let ker = ech.kernel(f);
        if ker.is_empty() {
            return ker;
        }
        let bad: Vec<usize> = find_violated(&ker, &used).into_iter().filter(|&g| !used[g]).collect();
        if bad.is_empty() {
            return ker;
        }
        for g in bad {
            used[g] = true;
            for r in rows_of(g) {
                ech.insert(f, &r);
            }
        }
    }
}

/// A subspace with a fast coordinate map for vectors known to lie in it.
#[derive(Clone, Debug)]
pub struct Subspace<E> {
    pub len: usize,
    pub basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
    /// coords = (x[pivots]) · transform
    transform: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    /// `basis` must be linearly independent.
    pub fn new<F: Field<Elem = E>>(f: &F, len: usize, basis: Vec<Vec<E>>) -> Option<Self> {
        let k = basis.len();
        let n = len;
        let mut aug = Mat::from_fn(k, n + k, |i, j| {
            if j < n {
                basis[i][j].clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let piv = rref(f, &mut aug);
        if piv.iter().filter(|&&p| p < n).count() != k {
            return None;
        }
        let transform = (0..k).map(|r| aug.row(r)[n..].to_vec()).collect();
        Some(Subspace { len, basis, pivots: piv, transform })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of x, assuming x lies in the span.
    pub fn coords<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> Vec<E> {
        let k = self.basis.len();
        let mut c = vec![f.zero(); k];
        for (r, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&x[p]) {
                continue;
            }
            for j in 0..k {
                if !f.is_zero(&self.transform[r][j]) {
                    c[j] = f.add(&c[j], &f.mul(&x[p], &self.transform[r][j]));
                }
            }
        }
        c
    }

    /// Coordinates if x lies in the span.
    pub fn try_coords<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> Option<Vec<E>> {
        let c = self.coords(f, x);
        let back = self.combine(f, &c);
        if back.as_slice() == x {
            Some(c)
        } else {
            None
        }
    }

    pub fn combine<F: Field<Elem = E>>(&self, f: &F, c: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.len];
        for (ci, b) in c.iter().zip(&self.basis) {
            if f.is_zero(ci) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !f.is_zero(x) {
                    *o = f.add(o, &f.mul(ci, x));
                }
            }
        }
        out
    }
}

/// Coordinates of v in the given (independent) basis, if v lies in the span.
pub fn coords_in_basis<F: Field>(f: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let m = Mat::from_cols(basis, v.len());
    let x = solve(f, &m, v)?;
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_and_nullspace() {
        let f = Rationals;
        let m = Mat::from_rows(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]], 3);
        assert_eq!(rank(&f, &m), 2);
        let ns = nullspace(&f, &m);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&f, &mat_vec(&f, &m, &ns[0])));
    }

    #[test]
    fn inverse_det() {
        let f = PrimeField::new(7).unwrap();
        let m = Mat::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(&f, 2));
        assert_eq!(det(&f, &m), f.from_i64(-2));
    }

    #[test]
    fn echelon_span() {
        let f = Rationals;
        let mut e = Echelon::new(3);
        assert!(e.insert(&f, &[q(1), q(1), q(0)]));
        assert!(e.insert(&f, &[q(0), q(1), q(1)]));
        assert!(!e.insert(&f, &[q(1), q(2), q(1)]));
        assert!(e.contains(&f, &[q(2), q(0), q(-2)]));
        assert_eq!(e.rank(), 2);
    }
}
