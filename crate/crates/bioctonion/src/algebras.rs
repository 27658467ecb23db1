// SPDX-License-Identifier: Apache-2.0
//! Composition algebras, tensor products with involution, corestrictions,
//! structural subspaces and the decomposition of bi-octonion algebras.

use crate::error::{Error, Result};
use crate::fields::{Field, FieldDesc, Quad, Scalar};
use crate::linalg::{self, Mat, Subspace};
use crate::qforms::QuadraticForm;
use rand::Rng;
use std::cmp::Ordering;

/// How an algebra was built; needed for the Albert data.
#[derive(Clone, Debug)]
pub enum Provenance<F: Field> {
    Composition { mu: Vec<F::Elem> },
    Decomposable { mu1: Vec<F::Elem>, mu2: Vec<F::Elem> },
    /// d and the Cayley–Dickson parameters of C over E = k(√d).
    Corestriction { d: F::Elem, mu: Vec<(F::Elem, F::Elem)> },
    Unknown,
}

/// Finite-dimensional unital algebra with involution, given by sparse structure constants.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    pub field: F,
    pub dim: usize,
    /// table[i * dim + j] lists (k, c) with e_i e_j = Σ c e_k.
    pub table: Vec<Vec<(usize, F::Elem)>>,
    pub unit: Vec<F::Elem>,
    /// Column j is the image of e_j.
    pub invol: Mat<F::Elem>,
    pub provenance: Provenance<F>,
}

/// Product descriptor over a runtime field.
#[derive(Clone, Debug, PartialEq)]
pub enum ProductDesc {
    Decomposable { field: FieldDesc, mu1: Vec<Scalar>, mu2: Vec<Scalar> },
    /// mu are scalars over k(√d).
    Corestriction { field: FieldDesc, d: Scalar, mu: Vec<Scalar> },
}

impl ProductDesc {
    pub fn field(&self) -> &FieldDesc {
        match self {
            ProductDesc::Decomposable { field, .. } | ProductDesc::Corestriction { field, .. } => field,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            ProductDesc::Decomposable { mu1, mu2, .. } => (1 << mu1.len(), 1 << mu2.len()),
            ProductDesc::Corestriction { mu, .. } => (1 << mu.len(), 1 << mu.len()),
        }
    }

    pub fn quad_field(&self) -> Result<FieldDesc> {
        match self {
            ProductDesc::Corestriction { field, d, .. } => FieldDesc::quad(field.clone(), d.clone()),
            _ => Err(Error::Invalid("not a corestriction".into())),
        }
    }
}

fn check_params(n: usize) -> Result<()> {
    if n > 3 {
        return Err(Error::Invalid("at most three Cayley-Dickson parameters".into()));
    }
    Ok(())
}

/// Splits a runtime descriptor into field-typed parameters.
pub fn typed_params<F: Field>(f: &F, desc: &ProductDesc) -> Result<Provenance<F>> {
    let conv = |v: &[Scalar]| v.iter().map(|s| f.from_scalar(s)).collect::<Result<Vec<_>>>();
    match desc {
        ProductDesc::Decomposable { field, mu1, mu2 } => {
            if *field != f.descriptor() {
                return Err(Error::MixedFields);
            }
            Ok(Provenance::Decomposable { mu1: conv(mu1)?, mu2: conv(mu2)? })
        }
        ProductDesc::Corestriction { field, d: _, mu } => {
            if *field != f.descriptor() {
                return Err(Error::MixedFields);
            }
            // μ are read over the canonical layer k(√d₀), d₀ the square-class representative
            let FieldDesc::Quad(_, d0) = desc.quad_field()? else { unreachable!() };
            let d = f.from_scalar(&d0)?;
            let e = Quad::new(f.clone(), d.clone());
            let mu = mu.iter().map(|s| e.from_scalar(s)).collect::<Result<Vec<_>>>()?;
            Ok(Provenance::Corestriction { d, mu })
        }
    }
}

pub fn build_product<F: Field>(f: &F, desc: &ProductDesc) -> Result<Algebra<F>> {
    if !f.descriptor().is_arith_complete() {
        return Err(Error::UnsupportedField("algebras need an arithmetic-complete field".into()));
    }
    match typed_params(f, desc)? {
        Provenance::Decomposable { mu1, mu2 } => decomposable(f, &mu1, &mu2),
        Provenance::Corestriction { d, mu } => corestriction(f, &d, &mu),
        _ => unreachable!(),
    }
}

/// Cayley–Dickson doubling: (a,b)(c,d) = (ac + μ·conj(d)b, da + b·conj(c)).
pub fn cayley_dickson<F: Field>(f: &F, mus: &[F::Elem]) -> Result<Algebra<F>> {
    check_params(mus.len())?;
    let mut a = Algebra {
        field: f.clone(),
        dim: 1,
        table: vec![vec![(0, f.one())]],
        unit: vec![f.one()],
        invol: linalg::identity(f, 1),
        provenance: Provenance::Composition { mu: Vec::new() },
    };
    for mu in mus {
        if f.is_zero(mu) {
            return Err(Error::ZeroParameter);
        }
        let h = a.dim;
        let n = 2 * h;
        let split = |v: &[F::Elem]| (v[..h].to_vec(), v[h..].to_vec());
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = unit_vec(f, n, i);
                let y = unit_vec(f, n, j);
                let (xa, xb) = split(&x);
                let (yc, yd) = split(&y);
                let first = linalg::vec_add(f, &a.mul(&xa, &yc), &linalg::vec_scale(f, mu, &a.mul(&a.conj(&yd), &xb)));
                let second = linalg::vec_add(f, &a.mul(&yd, &xa), &a.mul(&xb, &a.conj(&yc)));
                let mut prod = first;
                prod.extend(second);
                table.push(sparse(f, &prod));
            }
        }
        let invol = Mat::from_fn(n, n, |r, c| {
            if r != c {
                f.zero()
            } else if r < h {
                a.invol.get(r, r).clone()
            } else {
                f.neg(&f.one())
            }
        });
        let mut unit = vec![f.zero(); n];
        unit[0] = f.one();
        let mut prev = match &a.provenance {
            Provenance::Composition { mu } => mu.clone(),
            _ => Vec::new(),
        };
        prev.push(mu.clone());
        a = Algebra { field: f.clone(), dim: n, table, unit, invol, provenance: Provenance::Composition { mu: prev } };
    }
    Ok(a)
}

/// Diagonal norm ⟨Π_{bit i}(−μ_i)⟩ of the Cayley–Dickson basis.
pub fn cd_norm_diag<F: Field>(f: &F, mus: &[F::Elem]) -> Vec<F::Elem> {
    let n = 1usize << mus.len();
    (0..n)
        .map(|i| {
            let mut v = f.one();
            for (b, mu) in mus.iter().enumerate() {
                if i >> b & 1 == 1 {
                    v = f.mul(&v, &f.neg(mu));
                }
            }
            v
        })
        .collect()
}

fn unit_vec<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

fn sparse<F: Field>(f: &F, v: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(i, x)| (i, x.clone())).collect()
}

/// C1 ⊗ C2 with involution γ1 ⊗ γ2, basis e_i ⊗ f_j at index i·dim2 + j.
pub fn tensor<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Algebra<F> {
    let f = &a.field;
    let (n, m) = (a.dim, b.dim);
    let mut table = Vec::with_capacity(n * m * n * m);
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for l in 0..m {
                    let mut out = Vec::new();
                    for (p, c) in &a.table[i * n + k] {
                        for (q, d) in &b.table[j * m + l] {
                            out.push((p * m + q, f.mul(c, d)));
                        }
                    }
                    table.push(out);
                }
            }
        }
    }
    let mut unit = vec![f.zero(); n * m];
    for i in 0..n {
        for j in 0..m {
            unit[i * m + j] = f.mul(&a.unit[i], &b.unit[j]);
        }
    }
    let invol = Mat::from_fn(n * m, n * m, |r, c| f.mul(a.invol.get(r / m, c / m), b.invol.get(r % m, c % m)));
    Algebra { field: f.clone(), dim: n * m, table, unit, invol, provenance: Provenance::Unknown }
}

pub fn decomposable<F: Field>(f: &F, mu1: &[F::Elem], mu2: &[F::Elem]) -> Result<Algebra<F>> {
    let (m1, m2) = (1usize << mu1.len(), 1usize << mu2.len());
    if (m1, m2) == (2, 2) {
        return Err(Error::InvalidDims((2, 2)));
    }
    let c1 = cayley_dickson(f, mu1)?;
    let c2 = cayley_dickson(f, mu2)?;
    let mut a = tensor(&c1, &c2);
    a.provenance = Provenance::Decomposable { mu1: mu1.to_vec(), mu2: mu2.to_vec() };
    Ok(a)
}

/// Index pairs of the symmetrized corestriction basis: sym (i ≤ j) then anti (i < j).
pub fn cor_basis_pairs(n: usize) -> Vec<(usize, usize, bool)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push((i, j, false));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j, true));
        }
    }
    out
}

type QElem<F> = (<F as Field>::Elem, <F as Field>::Elem);

/// Coordinates on the fixed basis → coefficient matrix λ over E (row-major n×n).
pub fn cor_to_lambda<F: Field>(e: &Quad<F>, n: usize, x: &[F::Elem]) -> Vec<QElem<F>> {
    let k = &e.base;
    let mut lam = vec![e.zero(); n * n];
    for (c, &(i, j, anti)) in x.iter().zip(cor_basis_pairs(n).iter()) {
        if k.is_zero(c) {
            continue;
        }
        if anti {
            let v = (k.zero(), c.clone());
            lam[i * n + j] = e.add(&lam[i * n + j], &v);
            lam[j * n + i] = e.sub(&lam[j * n + i], &v);
        } else if i == j {
            lam[i * n + i] = e.add(&lam[i * n + i], &e.embed(c));
        } else {
            lam[i * n + j] = e.add(&lam[i * n + j], &e.embed(c));
            lam[j * n + i] = e.add(&lam[j * n + i], &e.embed(c));
        }
    }
    lam
}

/// Inverse of `cor_to_lambda` on switch-fixed λ.
pub fn lambda_to_cor<F: Field>(e: &Quad<F>, n: usize, lam: &[QElem<F>]) -> Result<Vec<F::Elem>> {
    let mut out = Vec::with_capacity(n * n);
    for (i, j, anti) in cor_basis_pairs(n) {
        let l = &lam[i * n + j];
        if e.conj(l) != lam[j * n + i] {
            return Err(Error::Internal("element is not switch-fixed".into()));
        }
        out.push(if anti { l.1.clone() } else { l.0.clone() });
    }
    Ok(out)
}

/// Switch-fixed points of ιC ⊗_E C for the octonion (or smaller) algebra C over E = k(√d).
pub fn corestriction<F: Field>(f: &F, d: &F::Elem, mu: &[QElem<F>]) -> Result<Algebra<F>> {
    if f.sqrt(d).is_some() {
        return Err(Error::NotANonsquare);
    }
    let mut a = corestriction_raw(f, d, mu)?;
    a.provenance = Provenance::Corestriction { d: d.clone(), mu: mu.to_vec() };
    Ok(a)
}

/// Corestriction over the split algebra k × k of the pair (C1, C2).
pub fn corestriction_split<F: Field>(f: &F, mu1: &[F::Elem], mu2: &[F::Elem]) -> Result<Algebra<F>> {
    if mu1.len() != mu2.len() {
        return Err(Error::Invalid("split corestriction needs equal dimensions".into()));
    }
    let half = f.inv(&f.from_i64(2)).ok_or(Error::DivisionByZero)?;
    let mu: Vec<QElem<F>> = mu1
        .iter()
        .zip(mu2)
        .map(|(x, y)| (f.mul(&f.add(x, y), &half), f.mul(&f.sub(x, y), &half)))
        .collect();
    let mut a = corestriction_raw(f, &f.one(), &mu)?;
    a.provenance = Provenance::Corestriction { d: f.one(), mu };
    Ok(a)
}

fn corestriction_raw<F: Field>(f: &F, d: &F::Elem, mu: &[QElem<F>]) -> Result<Algebra<F>> {
    let e = Quad::new(f.clone(), d.clone());
    for m in mu {
        if e.inv(m).is_none() {
            return Err(Error::ZeroParameter);
        }
    }
    let c = cayley_dickson(&e, mu)?;
    let n = c.dim;
    if n == 2 {
        return Err(Error::InvalidDims((2, 2)));
    }
    let nn = n * n;
    let lams: Vec<Vec<QElem<F>>> = (0..nn).map(|b| cor_to_lambda(&e, n, &unit_vec(f, nn, b))).collect();
    let mut table = Vec::with_capacity(nn * nn);
    for x in &lams {
        for y in &lams {
            let prod = cor_lambda_mul(&e, &c, x, y);
            table.push(sparse(f, &lambda_to_cor(&e, n, &prod)?));
        }
    }
    let mut unit = vec![f.zero(); nn];
    unit[0] = f.one();
    // γ ⊗ γ: coefficient at (p,q) is Σ λ_ij ι(g_pi) g_qj
    let mut invol = Mat::from_fn(nn, nn, |_, _| f.zero());
    for (b, lam) in lams.iter().enumerate() {
        let mut out = vec![e.zero(); nn];
        for i in 0..n {
            for j in 0..n {
                let l = &lam[i * n + j];
                if e.is_zero(l) {
                    continue;
                }
                for p in 0..n {
                    let gp = c.invol.get(p, i);
                    if e.is_zero(gp) {
                        continue;
                    }
                    for q in 0..n {
                        let gq = c.invol.get(q, j);
                        if e.is_zero(gq) {
                            continue;
                        }
                        let t = e.mul(l, &e.mul(&e.conj(gp), gq));
                        out[p * n + q] = e.add(&out[p * n + q], &t);
                    }
                }
            }
        }
        for (r, v) in lambda_to_cor(&e, n, &out)?.into_iter().enumerate() {
            invol.set(r, b, v);
        }
    }
    Ok(Algebra { field: f.clone(), dim: nn, table, unit, invol, provenance: Provenance::Unknown })
}

/// (λ ιe_i⊗e_j)(μ ιe_k⊗e_l) = λμ Σ ι(c_ik^p) c_jl^q ιe_p⊗e_q
pub fn cor_lambda_mul<F: Field>(e: &Quad<F>, c: &Algebra<Quad<F>>, x: &[QElem<F>], y: &[QElem<F>]) -> Vec<QElem<F>> {
    let n = c.dim;
    let mut out = vec![e.zero(); n * n];
    let nzx: Vec<(usize, usize, &QElem<F>)> =
        (0..n * n).filter(|t| !e.is_zero(&x[*t])).map(|t| (t / n, t % n, &x[t])).collect();
    let nzy: Vec<(usize, usize, &QElem<F>)> =
        (0..n * n).filter(|t| !e.is_zero(&y[*t])).map(|t| (t / n, t % n, &y[t])).collect();
    for &(i, j, l) in &nzx {
        for &(k, m, u) in &nzy {
            let lu = e.mul(l, u);
            for (p, cp) in &c.table[i * n + k] {
                let icp = e.mul(&lu, &e.conj(cp));
                for (q, cq) in &c.table[j * n + m] {
                    out[p * n + q] = e.add(&out[p * n + q], &e.mul(&icp, cq));
                }
            }
        }
    }
    out
}

impl<F: Field> Algebra<F> {
    pub fn basis(&self, i: usize) -> Vec<F::Elem> {
        unit_vec(&self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![f.zero(); n];
        let ny: Vec<usize> = (0..n).filter(|&j| !f.is_zero(&y[j])).collect();
        for i in 0..n {
            if f.is_zero(&x[i]) {
                continue;
            }
            for &j in &ny {
                let xy = f.mul(&x[i], &y[j]);
                for (k, c) in &self.table[i * n + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn conj(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        linalg::mat_vec(&self.field, &self.invol, x)
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        linalg::vec_add(&self.field, x, y)
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        linalg::vec_sub(&self.field, x, y)
    }

    pub fn scale(&self, c: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
        linalg::vec_scale(&self.field, c, x)
    }

    pub fn assoc(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vec<F::Elem> {
        self.sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    pub fn comm(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn is_zero(&self, x: &[F::Elem]) -> bool {
        linalg::is_zero_vec(&self.field, x)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Vec<F::Elem> {
        (0..self.dim).map(|_| self.field.random(rng, height)).collect()
    }

    /// Matrix of L_x (column j is x·e_j).
    pub fn left_mul(&self, x: &[F::Elem]) -> Mat<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Mat::from_cols(&cols, self.dim)
    }

    pub fn right_mul(&self, x: &[F::Elem]) -> Mat<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        Mat::from_cols(&cols, self.dim)
    }

    /// Unit and involution axioms on all basis pairs.
    pub fn check_axioms(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Internal(format!("unit fails on e_{i}")));
            }
            if self.conj(&self.conj(&e)) != e {
                return Err(Error::Internal("involution is not of order 2".into()));
            }
        }
        let sigma = &self.invol;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ei = self.basis(i);
                let ej = self.basis(j);
                let lhs = self.conj(&self.mul(&ei, &ej));
                let rhs = self.mul(&sigma.col(j), &sigma.col(i));
                if lhs != rhs {
                    return Err(Error::Internal(format!("involution not anti-multiplicative on (e_{i}, e_{j})")));
                }
            }
        }
        Ok(())
    }

    fn eigen(&self, sign: i64) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let m = linalg::mat_sub(f, &self.invol, &linalg::scalar_mat(f, self.dim, &f.from_i64(sign)));
        linalg::nullspace(f, &m)
    }

    pub fn skew_basis(&self) -> Vec<Vec<F::Elem>> {
        self.eigen(-1)
    }

    pub fn hermitian_basis(&self) -> Vec<Vec<F::Elem>> {
        self.eigen(1)
    }

    pub fn skew_space(&self) -> Subspace<F::Elem> {
        Subspace::new(&self.field, self.dim, self.skew_basis()).expect("nullspace basis is independent")
    }

    fn pair_count(&self) -> usize {
        self.dim * self.dim
    }

    /// Elements x with [x,a,b] = [a,x,b] = [a,b,x] = 0.
    pub fn nucleus(&self) -> Vec<Vec<F::Elem>> {
        self.kernel_by_pairs(false)
    }

    /// Nucleus elements that also commute with everything.
    pub fn center(&self) -> Vec<Vec<F::Elem>> {
        self.kernel_by_pairs(true)
    }

    fn residual(&self, x: &[F::Elem], g: usize, with_comm: bool) -> Vec<F::Elem> {
        let n = self.dim;
        let a = self.basis(g / n);
        let b = self.basis(g % n);
        let mut r = self.assoc(x, &a, &b);
        r.extend(self.assoc(&a, x, &b));
        r.extend(self.assoc(&a, &b, x));
        if with_comm {
            r.extend(self.comm(x, &a));
        }
        r
    }

    fn kernel_by_pairs(&self, with_comm: bool) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let n = self.dim;
        let rows_of = |g: usize| {
            let cols: Vec<Vec<F::Elem>> = (0..n).map(|u| self.residual(&self.basis(u), g, with_comm)).collect();
            let m = cols[0].len();
            (0..m).map(|r| (0..n).map(|u| cols[u][r].clone()).collect()).collect()
        };
        let violated = |g: usize, v: &[F::Elem]| !linalg::is_zero_vec(f, &self.residual(v, g, with_comm));
        linalg::grouped_kernel(f, n, self.pair_count(), rows_of, violated)
    }

    /// [x,x,y] = [y,x,x] = 0
    pub fn alternative_on(&self, x: &[F::Elem], y: &[F::Elem]) -> bool {
        self.is_zero(&self.assoc(x, x, y)) && self.is_zero(&self.assoc(y, x, x))
    }

    /// Subalgebra spanned by `basis` (first vector should be the unit), with restricted involution.
    pub fn subalgebra(&self, basis: Vec<Vec<F::Elem>>) -> Result<Algebra<F>> {
        let f = &self.field;
        let k = basis.len();
        let sub = Subspace::new(f, self.dim, basis.clone()).ok_or_else(|| Error::Internal("dependent basis".into()))?;
        let mut table = Vec::with_capacity(k * k);
        for x in &basis {
            for y in &basis {
                let c = sub.try_coords(f, &self.mul(x, y)).ok_or_else(|| Error::Internal("span is not a subalgebra".into()))?;
                table.push(sparse(f, &c));
            }
        }
        let unit = sub.try_coords(f, &self.unit).ok_or_else(|| Error::Internal("unit outside the subalgebra".into()))?;
        let mut cols = Vec::with_capacity(k);
        for x in &basis {
            cols.push(sub.try_coords(f, &self.conj(x)).ok_or_else(|| Error::Internal("span not stable under involution".into()))?);
        }
        Ok(Algebra { field: f.clone(), dim: k, table, unit, invol: Mat::from_cols(&cols, k), provenance: Provenance::Unknown })
    }

    /// Scalar c with x = c·1, if any.
    pub fn as_scalar(&self, x: &[F::Elem]) -> Option<F::Elem> {
        let f = &self.field;
        let i = self.unit.iter().position(|u| !f.is_zero(u))?;
        let c = f.div(&x[i], &self.unit[i])?;
        if linalg::vec_scale(f, &c, &self.unit).as_slice() == x {
            Some(c)
        } else {
            None
        }
    }

    /// Norm n(x) = x·x̄ for a composition algebra with its standard involution.
    pub fn norm(&self, x: &[F::Elem]) -> Result<F::Elem> {
        self.as_scalar(&self.mul(x, &self.conj(x))).ok_or_else(|| Error::Internal("x·conj(x) is not a scalar".into()))
    }

    /// Norm form as a diagonalized quadratic form over the ground field.
    pub fn norm_form(&self) -> Result<QuadraticForm> {
        let f = &self.field;
        let half = f.inv(&f.from_i64(2)).ok_or(Error::DivisionByZero)?;
        let n = self.dim;
        let mut g = Mat::from_fn(n, n, |_, _| Scalar::q(0));
        for i in 0..n {
            for j in 0..n {
                let ei = self.basis(i);
                let ej = self.basis(j);
                let s = self.add(&self.mul(&ei, &self.conj(&ej)), &self.mul(&ej, &self.conj(&ei)));
                let c = self.as_scalar(&s).ok_or_else(|| Error::Internal("polar form not scalar".into()))?;
                g.set(i, j, f.to_scalar(&f.mul(&c, &half)));
            }
        }
        QuadraticForm::gram(&f.descriptor(), &g)
    }

    /// The same algebra with scalars extended to k(√d).
    pub fn extend(&self, d: &F::Elem) -> Algebra<Quad<F>> {
        let e = Quad::new(self.field.clone(), d.clone());
        Algebra {
            field: e.clone(),
            dim: self.dim,
            table: self.table.iter().map(|t| t.iter().map(|(k, c)| (*k, e.embed(c))).collect()).collect(),
            unit: self.unit.iter().map(|c| e.embed(c)).collect(),
            invol: Mat::from_fn(self.dim, self.dim, |r, c| e.embed(self.invol.get(r, c))),
            provenance: Provenance::Unknown,
        }
    }

    /// Factor dimensions (m1, m2) when the provenance records them.
    pub fn factor_dims(&self) -> Option<(usize, usize)> {
        match &self.provenance {
            Provenance::Decomposable { mu1, mu2 } => Some((1 << mu1.len(), 1 << mu2.len())),
            Provenance::Corestriction { mu, .. } => Some((1 << mu.len(), 1 << mu.len())),
            Provenance::Composition { mu } => Some((1 << mu.len(), 1)),
            Provenance::Unknown => None,
        }
    }
}

/// Centroid of the Malcev algebra Skew(A)⁻, generated by id and φ with φ² = αφ + β.
#[derive(Clone, Debug)]
pub struct MalcevCentroid<F: Field> {
    pub skew: Subspace<F::Elem>,
    pub phi: Mat<F::Elem>,
    pub alpha: F::Elem,
    pub beta: F::Elem,
    pub kind: CentroidKind<F>,
}

#[derive(Clone, Debug)]
pub enum CentroidKind<F: Field> {
    SplitEtale { e1: Mat<F::Elem>, e2: Mat<F::Elem> },
    /// k(√d) with d the canonical square-class representative.
    FieldEtale { d: F::Elem },
}

fn flat_cmp<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Ordering {
    for (x, y) in a.data.iter().zip(&b.data) {
        let o = f.cmp_elem(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Canonical square-class representative through the runtime field description.
pub fn square_class_rep<F: Field>(f: &F, x: &F::Elem) -> Result<F::Elem> {
    let desc = f.descriptor();
    f.from_scalar(&desc.square_class(&f.to_scalar(x))?)
}

pub fn malcev_centroid<F: Field>(a: &Algebra<F>) -> Result<MalcevCentroid<F>> {
    let f = &a.field;
    let skew = a.skew_space();
    let s = skew.dim();
    // structure constants of S⁻: b[i][j] = coords of [b_i, b_j]
    let mut bc = vec![vec![Vec::new(); s]; s];
    for i in 0..s {
        for j in 0..s {
            bc[i][j] = skew.coords(f, &a.comm(&skew.basis[i], &skew.basis[j]));
        }
    }
    // unknown φ_{rk} at index r*s + k; equation (i,j,r): Σ_k b_ij^k φ_rk − Σ_m b_mj^r φ_mi = 0
    let rows_of = |g: usize| {
        let (i, j) = (g / s, g % s);
        (0..s)
            .map(|r| {
                let mut row = vec![f.zero(); s * s];
                for k in 0..s {
                    row[r * s + k] = f.add(&row[r * s + k], &bc[i][j][k]);
                }
                for m in 0..s {
                    row[m * s + i] = f.sub(&row[m * s + i], &bc[m][j][r]);
                }
                row
            })
            .collect::<Vec<_>>()
    };
    let violated = |g: usize, v: &[F::Elem]| rows_of(g).iter().any(|row| !f.is_zero(&linalg::dot(f, row, v)));
    let ker = linalg::grouped_kernel(f, s * s, s * s, rows_of, violated);
    if ker.len() != 2 {
        return Err(Error::UnexpectedCentroidDim(ker.len()));
    }
    let id = linalg::identity(f, s);
    let as_mat = |v: &[F::Elem]| Mat::from_fn(s, s, |r, c| v[r * s + c].clone());
    let m0 = as_mat(&ker[0]);
    let m1 = as_mat(&ker[1]);
    // φ: a kernel element not proportional to id
    let is_scalar = |m: &Mat<F::Elem>| {
        let c = m.get(0, 0).clone();
        linalg::mat_scale(f, &c, &id) == *m
    };
    let phi = if is_scalar(&m0) { m1 } else { m0 };
    let phi2 = linalg::mat_mul(f, &phi, &phi);
    // φ² = αφ + βI
    let basis = vec![phi.data.clone(), id.data.clone()];
    let sol = linalg::coords_in_basis(f, &basis, &phi2.data).ok_or_else(|| Error::Internal("centroid not closed".into()))?;
    let (alpha, beta) = (sol[0].clone(), sol[1].clone());
    let disc = f.add(&f.mul(&alpha, &alpha), &f.mul(&f.from_i64(4), &beta));
    if f.is_zero(&disc) {
        return Err(Error::Internal("centroid is not étale".into()));
    }
    let kind = match f.sqrt(&disc) {
        Some(r) => {
            let two = f.from_i64(2);
            let inv2 = f.inv(&two).ok_or(Error::DivisionByZero)?;
            let r1 = f.mul(&f.add(&alpha, &r), &inv2);
            let r2 = f.mul(&f.sub(&alpha, &r), &inv2);
            let den = f.inv(&f.sub(&r1, &r2)).ok_or(Error::DivisionByZero)?;
            // e1 = (φ − r2)/(r1 − r2), e2 = 1 − e1
            let e1 = linalg::mat_scale(f, &den, &linalg::mat_sub(f, &phi, &linalg::mat_scale(f, &r2, &id)));
            let e2 = linalg::mat_sub(f, &id, &e1);
            if flat_cmp(f, &e1, &e2) == Ordering::Greater {
                CentroidKind::SplitEtale { e1: e2, e2: e1 }
            } else {
                CentroidKind::SplitEtale { e1, e2 }
            }
        }
        None => CentroidKind::FieldEtale { d: square_class_rep(f, &disc)? },
    };
    Ok(MalcevCentroid { skew, phi, alpha, beta, kind })
}

#[derive(Clone, Debug)]
pub enum Decomposition<F: Field> {
    Factors(Algebra<F>, Algebra<F>),
    CorestrictionData { d: F::Elem, octonion: Algebra<Quad<F>> },
}

fn image_basis<F: Field>(f: &F, skew: &Subspace<F::Elem>, e: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut cols: Vec<Vec<F::Elem>> = (0..e.cols).map(|c| e.col(c)).collect();
    let mut ech = linalg::Echelon::new(e.rows);
    cols.retain(|c| ech.insert(f, c));
    cols.iter().map(|c| skew.combine(f, c)).collect()
}

pub fn decompose<F: Field>(a: &Algebra<F>) -> Result<Decomposition<F>> {
    let f = &a.field;
    let cen = malcev_centroid(a)?;
    match &cen.kind {
        CentroidKind::SplitEtale { e1, e2 } => {
            let mut factors = Vec::new();
            for e in [e1, e2] {
                let mut basis = vec![a.unit.clone()];
                basis.extend(image_basis(f, &cen.skew, e));
                factors.push(a.subalgebra(basis)?);
            }
            let c2 = factors.pop().unwrap();
            let c1 = factors.pop().unwrap();
            Ok(Decomposition::Factors(c1, c2))
        }
        CentroidKind::FieldEtale { d } => {
            let disc = f.add(&f.mul(&cen.alpha, &cen.alpha), &f.mul(&f.from_i64(4), &cen.beta));
            let r = f.sqrt(&f.div(&disc, d).ok_or(Error::DivisionByZero)?).ok_or_else(|| Error::Internal("class mismatch".into()))?;
            let ae = a.extend(d);
            let e = ae.field.clone();
            let s = cen.skew.dim();
            let id = linalg::identity(&e, s);
            let phi = Mat::from_fn(s, s, |i, j| e.embed(cen.phi.get(i, j)));
            // j = 2φ − α, j² = disc; e+ = (1 + j/(r√d))/2
            let j = linalg::mat_sub(&e, &linalg::mat_scale(&e, &e.from_i64(2), &phi), &linalg::mat_scale(&e, &e.embed(&cen.alpha), &id));
            let rs = (f.zero(), r);
            let c = e.inv(&rs).ok_or(Error::DivisionByZero)?;
            let half = e.inv(&e.from_i64(2)).ok_or(Error::DivisionByZero)?;
            let ep = linalg::mat_scale(&e, &half, &linalg::mat_add(&e, &id, &linalg::mat_scale(&e, &c, &j)));
            let skew_e = Subspace::new(&e, a.dim, cen.skew.basis.iter().map(|v| v.iter().map(|x| e.embed(x)).collect()).collect())
                .ok_or_else(|| Error::Internal("skew basis".into()))?;
            let mut basis = vec![ae.unit.clone()];
            basis.extend(image_basis(&e, &skew_e, &ep));
            let oct = ae.subalgebra(basis)?;
            Ok(Decomposition::CorestrictionData { d: d.clone(), octonion: oct })
        }
    }
}

/// Isomorphism from a split corestriction onto C1 ⊗ C2 (ε1-projection), as a matrix.
pub fn split_cor_iso<F: Field>(f: &F, nparams: usize) -> Mat<F::Elem> {
    let n = 1usize << nparams;
    let nn = n * n;
    let e = Quad::new(f.clone(), f.one());
    let mut m = Mat::from_fn(nn, nn, |_, _| f.zero());
    for b in 0..nn {
        let lam = cor_to_lambda(&e, n, &unit_vec(f, nn, b));
        for p in 0..n {
            for q in 0..n {
                // ιe_p ⊗ e_q at ε1 is e_p(C2) ⊗ e_q(C1) ↦ e_q ⊗ e_p in C1 ⊗ C2
                let l = &lam[p * n + q];
                let v = f.add(&l.0, &l.1);
                if !f.is_zero(&v) {
                    m.set(q * n + p, b, v);
                }
            }
        }
    }
    m
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
    fn hamilton_and_split_octonions() {
        let f = Rationals;
        let h = cayley_dickson(&f, &[q(-1), q(-1)]).unwrap();
        h.check_axioms().unwrap();
        assert!(h.norm_form().unwrap().isometric(&QuadraticForm::ints(&FieldDesc::Q, &[1, 1, 1, 1])).unwrap());
        let o = cayley_dickson(&f, &[q(1), q(1), q(1)]).unwrap();
        assert!(o.norm_form().unwrap().is_hyperbolic().unwrap());
    }

    #[test]
    fn products_satisfy_axioms() {
        let f = PrimeField::new(5).unwrap();
        let a = decomposable(&f, &[1, 1, 1], &[1, 1]).unwrap();
        a.check_axioms().unwrap();
        assert_eq!(a.skew_basis().len(), 10);
        assert_eq!(a.nucleus().len(), 4);
        let b = decomposable(&f, &[1, 1, 1], &[2]).unwrap();
        assert_eq!(b.center().len(), 2);
        assert_eq!(decomposable(&f, &[1], &[2]).unwrap_err(), Error::InvalidDims((2, 2)));
    }

    #[test]
    fn corestriction_basics() {
        let f = Rationals;
        let one = (q(1), q(0));
        let c = corestriction(&f, &q(-1), &[one.clone(), one.clone(), one]).unwrap();
        c.check_axioms().unwrap();
        assert_eq!(c.hermitian_basis().len(), 50);
        assert_eq!(c.skew_basis().len(), 14);
        assert!(matches!(corestriction(&f, &q(4), &[]), Err(Error::NotANonsquare)));
    }

    #[test]
    fn split_corestriction_is_tensor() {
        let f = PrimeField::new(7).unwrap();
        let mu1 = [3, 5];
        let mu2 = [1, 6];
        let cor = corestriction_split(&f, &mu1, &mu2).unwrap();
        let ten = decomposable(&f, &mu1, &mu2).unwrap();
        let phi = split_cor_iso(&f, mu1.len());
        assert!(linalg::inverse(&f, &phi).is_some());
        for i in 0..16 {
            for j in 0..16 {
                let x = cor.basis(i);
                let y = cor.basis(j);
                let lhs = linalg::mat_vec(&f, &phi, &cor.mul(&x, &y));
                let rhs = ten.mul(&linalg::mat_vec(&f, &phi, &x), &linalg::mat_vec(&f, &phi, &y));
                assert_eq!(lhs, rhs);
            }
            let x = cor.basis(i);
            assert_eq!(linalg::mat_vec(&f, &phi, &cor.conj(&x)), ten.conj(&linalg::mat_vec(&f, &phi, &x)));
        }
    }

    #[test]
    fn centroid_and_decompose() {
        let f = PrimeField::new(5).unwrap();
        let a = decomposable(&f, &[1, 1, 1], &[2, 1, 1]).unwrap();
        let cen = malcev_centroid(&a).unwrap();
        assert!(matches!(cen.kind, CentroidKind::SplitEtale { .. }));
        let Decomposition::Factors(c1, c2) = decompose(&a).unwrap() else { panic!() };
        assert_eq!((c1.dim, c2.dim), (8, 8));
        let x = c1.random(&mut rand::thread_rng(), 5);
        let y = c1.random(&mut rand::thread_rng(), 5);
        assert_eq!(c1.norm(&c1.mul(&x, &y)).unwrap(), f.mul(&c1.norm(&x).unwrap(), &c1.norm(&y).unwrap()));
        let one = (1u64, 0u64);
        let c = corestriction(&f, &2, &[one, one, one]).unwrap();
        let cen = malcev_centroid(&c).unwrap();
        assert!(matches!(cen.kind, CentroidKind::FieldEtale { d: 2 }));
        let Decomposition::CorestrictionData { d, octonion } = decompose(&c).unwrap() else { panic!() };
        assert_eq!(d, 2);
        assert_eq!(octonion.dim, 8);
    }
}
