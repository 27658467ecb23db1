// SPDX-License-Identifier: Apache-2.0
//! Operator calculus of a structurable algebra: V, L, R, T, U, D, ψ,
//! conjugate inverses, the Albert form with its ♮-map, the trace form,
//! the octic norm and the matrix factorization.

use crate::algebras::{cd_norm_diag, cor_basis_pairs, Algebra, Provenance};
use crate::error::{Error, Result};
use crate::fields::{Field, Quad, Scalar};
use crate::linalg::{self, Mat, Subspace};
use crate::qforms::QuadraticForm;

type Elem<F> = Vec<<F as Field>::Elem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    V,
    L,
    R,
    T,
    U,
    D,
}

impl OperatorKind {
    pub fn arity(self) -> usize {
        match self {
            OperatorKind::L | OperatorKind::R | OperatorKind::T => 1,
            _ => 2,
        }
    }

    pub fn parse(s: &str) -> Option<OperatorKind> {
        Some(match s {
            "V" => OperatorKind::V,
            "L" => OperatorKind::L,
            "R" => OperatorKind::R,
            "T" => OperatorKind::T,
            "U" => OperatorKind::U,
            "D" => OperatorKind::D,
            _ => return None,
        })
    }
}

fn check_len<F: Field>(a: &Algebra<F>, xs: &[&[F::Elem]]) -> Result<()> {
    if xs.iter().all(|x| x.len() == a.dim) {
        Ok(())
    } else {
        Err(Error::MixedAlgebras)
    }
}

/// {x,y,z} = (xȳ)z + (zȳ)x − (zx̄)y
pub fn triple<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Elem<F> {
    let yb = a.conj(y);
    let xb = a.conj(x);
    let t1 = a.mul(&a.mul(x, &yb), z);
    let t2 = a.mul(&a.mul(z, &yb), x);
    let t3 = a.mul(&a.mul(z, &xb), y);
    a.sub(&a.add(&t1, &t2), &t3)
}

pub fn psi<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Elem<F> {
    a.sub(&a.mul(x, &a.conj(y)), &a.mul(y, &a.conj(x)))
}

pub fn op_l<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Mat<F::Elem> {
    a.left_mul(x)
}

pub fn op_r<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Mat<F::Elem> {
    a.right_mul(x)
}

/// V_{x,y} = L_{xȳ} + R_x R_ȳ − R_y R_x̄
pub fn op_v<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Mat<F::Elem> {
    let f = &a.field;
    let xb = a.conj(x);
    let yb = a.conj(y);
    let l = a.left_mul(&a.mul(x, &yb));
    let p = linalg::mat_mul(f, &a.right_mul(x), &a.right_mul(&yb));
    let q = linalg::mat_mul(f, &a.right_mul(y), &a.right_mul(&xb));
    linalg::mat_sub(f, &linalg::mat_add(f, &l, &p), &q)
}

pub fn op_t<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Mat<F::Elem> {
    op_v(a, x, &a.unit)
}

/// U_{x,y}z = V_{x,z}y, i.e. R_y L_x σ + R_x L_y σ − L_{yx̄}
pub fn op_u2<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Mat<F::Elem> {
    let f = &a.field;
    let p = linalg::mat_mul(f, &linalg::mat_mul(f, &a.right_mul(y), &a.left_mul(x)), &a.invol);
    let q = linalg::mat_mul(f, &linalg::mat_mul(f, &a.right_mul(x), &a.left_mul(y)), &a.invol);
    let r = a.left_mul(&a.mul(y, &a.conj(x)));
    linalg::mat_sub(f, &linalg::mat_add(f, &p, &q), &r)
}

/// U_x = U_{x,x}: u ↦ V_{x,u}x
pub fn op_u<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Mat<F::Elem> {
    let f = &a.field;
    let p = linalg::mat_mul(f, &linalg::mat_mul(f, &a.right_mul(x), &a.left_mul(x)), &a.invol);
    let r = a.left_mul(&a.mul(x, &a.conj(x)));
    linalg::mat_sub(f, &linalg::mat_scale(f, &f.from_i64(2), &p), &r)
}

/// U_x(v) = 2(xv̄)x − (xx̄)v, without forming the matrix.
pub fn apply_u<F: Field>(a: &Algebra<F>, x: &[F::Elem], v: &[F::Elem]) -> Elem<F> {
    let f = &a.field;
    let t = a.mul(&a.mul(x, &a.conj(v)), x);
    let n = a.mul(&a.mul(x, &a.conj(x)), v);
    a.sub(&a.scale(&f.from_i64(2), &t), &n)
}

/// D_{x,y}(z) = ⅓[[x,y]+[x̄,ȳ],z] + [z,y,x] − [z,x̄,ȳ]
pub fn op_d<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Result<Mat<F::Elem>> {
    let f = &a.field;
    let third = f.inv(&f.from_i64(3)).ok_or(Error::DivisionByZero)?;
    let xb = a.conj(x);
    let yb = a.conj(y);
    let c = a.scale(&third, &a.add(&a.comm(x, y), &a.comm(&xb, &yb)));
    let ad = linalg::mat_sub(f, &a.left_mul(&c), &a.right_mul(&c));
    // [z,y,x] = (zy)x − z(yx)
    let a1 = linalg::mat_sub(f, &linalg::mat_mul(f, &a.right_mul(x), &a.right_mul(y)), &a.right_mul(&a.mul(y, x)));
    let a2 = linalg::mat_sub(f, &linalg::mat_mul(f, &a.right_mul(&yb), &a.right_mul(&xb)), &a.right_mul(&a.mul(&xb, &yb)));
    Ok(linalg::mat_sub(f, &linalg::mat_add(f, &ad, &a1), &a2))
}

pub fn operator<F: Field>(a: &Algebra<F>, kind: OperatorKind, args: &[Elem<F>]) -> Result<Mat<F::Elem>> {
    if args.len() != kind.arity() {
        return Err(Error::Invalid(format!("{kind:?} takes {} arguments", kind.arity())));
    }
    let refs: Vec<&[F::Elem]> = args.iter().map(|v| v.as_slice()).collect();
    check_len(a, &refs)?;
    Ok(match kind {
        OperatorKind::V => op_v(a, refs[0], refs[1]),
        OperatorKind::L => op_l(a, refs[0]),
        OperatorKind::R => op_r(a, refs[0]),
        OperatorKind::T => op_t(a, refs[0]),
        OperatorKind::U => op_u2(a, refs[0], refs[1]),
        OperatorKind::D => op_d(a, refs[0], refs[1])?,
    })
}

/// [V_{x,y},V_{z,w}] − V_{{x,y,z},w} + V_{z,{y,x,w}}
pub fn structurable_residual<F: Field>(
    a: &Algebra<F>,
    x: &[F::Elem],
    y: &[F::Elem],
    z: &[F::Elem],
    w: &[F::Elem],
) -> Mat<F::Elem> {
    let f = &a.field;
    let vxy = op_v(a, x, y);
    let vzw = op_v(a, z, w);
    let br = linalg::mat_sub(f, &linalg::mat_mul(f, &vxy, &vzw), &linalg::mat_mul(f, &vzw, &vxy));
    let t1 = op_v(a, &triple(a, x, y, z), w);
    let t2 = op_v(a, z, &triple(a, y, x, w));
    linalg::mat_add(f, &linalg::mat_sub(f, &br, &t1), &t2)
}

/// x̂ with V_{x,x̂} = id, or `None` when U_x is singular.
pub fn conjugate_inverse<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Result<Option<Elem<F>>> {
    check_len(a, &[x])?;
    let f = &a.field;
    let Some(ui) = linalg::inverse(f, &op_u(a, x)) else {
        return Ok(None);
    };
    let xh = linalg::mat_vec(f, &ui, x);
    if op_v(a, x, &xh) != linalg::identity(f, a.dim) {
        return Err(Error::Internal("V(x, x^) is not the identity".into()));
    }
    Ok(Some(xh))
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlbertKind<E> {
    Decomposable,
    Corestriction { d: E },
}

/// Albert form Q and ♮ on the skew space, in coordinates of `skew`.
#[derive(Clone, Debug)]
pub struct AlbertData<F: Field> {
    pub field: F,
    pub skew: Subspace<F::Elem>,
    /// Q(s) = cᵀ·gram·c for skew coordinates c.
    pub gram: Mat<F::Elem>,
    pub natural: Mat<F::Elem>,
    pub kind: AlbertKind<F::Elem>,
}

impl<F: Field> AlbertData<F> {
    pub fn dim(&self) -> usize {
        self.skew.dim()
    }

    pub fn q_coords(&self, c: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        linalg::dot(f, c, &linalg::mat_vec(f, &self.gram, c))
    }

    pub fn coords(&self, s: &[F::Elem]) -> Result<Elem<F>> {
        self.skew.try_coords(&self.field, s).ok_or_else(|| Error::Invalid("element is not skew".into()))
    }

    /// Q of a skew element of A.
    pub fn q(&self, s: &[F::Elem]) -> Result<F::Elem> {
        Ok(self.q_coords(&self.coords(s)?))
    }

    pub fn natural_of(&self, s: &[F::Elem]) -> Result<Elem<F>> {
        let c = linalg::mat_vec(&self.field, &self.natural, &self.coords(s)?);
        Ok(self.skew.combine(&self.field, &c))
    }

    /// 1 for decomposable algebras, d for corestrictions: ♮² = multiplier·id.
    pub fn multiplier(&self) -> F::Elem {
        match &self.kind {
            AlbertKind::Decomposable => self.field.one(),
            AlbertKind::Corestriction { d } => d.clone(),
        }
    }

    pub fn form(&self) -> Result<QuadraticForm> {
        let f = &self.field;
        let g = Mat::from_fn(self.gram.rows, self.gram.cols, |i, j| f.to_scalar(self.gram.get(i, j)));
        QuadraticForm::gram(&f.descriptor(), &g)
    }

    /// First skew basis vector with Q ≠ 0.
    pub fn basepoint(&self) -> Option<Elem<F>> {
        let f = &self.field;
        (0..self.dim()).map(|i| self.skew.basis[i].clone()).find(|b| !f.is_zero(&self.q(b).unwrap()))
    }

    pub fn random_skew<R: rand::Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Elem<F> {
        let c: Vec<F::Elem> = (0..self.dim()).map(|_| self.field.random(rng, height)).collect();
        self.skew.combine(&self.field, &c)
    }
}

fn unit<F: Field>(f: &F, n: usize, i: usize) -> Elem<F> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

pub fn albert_data<F: Field>(a: &Algebra<F>) -> Result<AlbertData<F>> {
    let f = &a.field;
    match &a.provenance {
        Provenance::Decomposable { mu1, mu2 } => {
            let (m1, m2) = (1usize << mu1.len(), 1usize << mu2.len());
            let nd1 = cd_norm_diag(f, mu1);
            let nd2 = cd_norm_diag(f, mu2);
            let mut basis = Vec::new();
            let mut diag = Vec::new();
            let mut sign = Vec::new();
            for (i, c) in nd1.iter().enumerate().skip(1) {
                basis.push(unit(f, a.dim, i * m2));
                diag.push(c.clone());
                sign.push(f.one());
            }
            for (j, c) in nd2.iter().enumerate().skip(1) {
                basis.push(unit(f, a.dim, j));
                diag.push(f.neg(c));
                sign.push(f.from_i64(-1));
            }
            debug_assert_eq!(basis.len(), m1 + m2 - 2);
            let n = basis.len();
            let skew = Subspace::new(f, a.dim, basis).ok_or_else(|| Error::Internal("skew basis".into()))?;
            Ok(AlbertData {
                field: f.clone(),
                skew,
                gram: Mat::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { f.zero() }),
                natural: Mat::from_fn(n, n, |i, j| if i == j { sign[i].clone() } else { f.zero() }),
                kind: AlbertKind::Decomposable,
            })
        }
        Provenance::Corestriction { d, mu } => {
            let e = Quad::new(f.clone(), d.clone());
            let n = 1usize << mu.len();
            let pairs = cor_basis_pairs(n);
            let idx = |j: usize, anti: bool| pairs.iter().position(|&p| p == (0, j, anti)).unwrap();
            let mut basis: Vec<Elem<F>> = (1..n).map(|j| unit(f, a.dim, idx(j, false))).collect();
            basis.extend((1..n).map(|j| unit(f, a.dim, idx(j, true))));
            let h = n - 1;
            let nd = cd_norm_diag(&e, mu);
            // s_j = x_j + y_j√d: Q = −2d·Im Σ nd_j s_j²
            let m2d = f.mul(&f.from_i64(-2), d);
            let mut gram = Mat::from_fn(2 * h, 2 * h, |_, _| f.zero());
            for j in 0..h {
                let (p, q) = &nd[j + 1];
                gram.set(j, j, f.mul(&m2d, q));
                gram.set(h + j, h + j, f.mul(&f.mul(&m2d, q), d));
                gram.set(j, h + j, f.mul(&m2d, p));
                gram.set(h + j, j, f.mul(&m2d, p));
            }
            // s ↦ −√d·s
            let mut natural = Mat::from_fn(2 * h, 2 * h, |_, _| f.zero());
            for j in 0..h {
                natural.set(j, h + j, f.neg(d));
                natural.set(h + j, j, f.from_i64(-1));
            }
            let skew = Subspace::new(f, a.dim, basis).ok_or_else(|| Error::Internal("skew basis".into()))?;
            Ok(AlbertData { field: f.clone(), skew, gram, natural, kind: AlbertKind::Corestriction { d: d.clone() } })
        }
        _ => Err(Error::UnknownProvenance),
    }
}

/// L_s L_{s♮} = −Q(s)·id
pub fn check_ls_identity<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, s: &[F::Elem]) -> Result<bool> {
    let f = &a.field;
    let lhs = linalg::mat_mul(f, &a.left_mul(s), &a.left_mul(&ad.natural_of(s)?));
    Ok(lhs == linalg::scalar_mat(f, a.dim, &f.neg(&ad.q(s)?)))
}

/// s(ts); skew-alternativity makes the bracketing irrelevant.
pub fn sts<F: Field>(a: &Algebra<F>, s: &[F::Elem], t: &[F::Elem]) -> Elem<F> {
    a.mul(s, &a.mul(t, s))
}

/// Q(sts)·m = Q(s)²Q(t) and L_{sts} = L_s L_t L_s, with m the ♮ multiplier (1 when decomposable).
pub fn check_composition<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, s: &[F::Elem], t: &[F::Elem]) -> Result<bool> {
    let f = &a.field;
    let u = sts(a, s, t);
    if u != a.mul(&a.mul(s, t), s) {
        return Ok(false);
    }
    let qs = ad.q(s)?;
    if f.mul(&ad.q(&u)?, &ad.multiplier()) != f.mul(&f.mul(&qs, &qs), &ad.q(t)?) {
        return Ok(false);
    }
    let ls = a.left_mul(s);
    let rhs = linalg::mat_mul(f, &linalg::mat_mul(f, &ls, &a.left_mul(t)), &ls);
    Ok(a.left_mul(&u) == rhs)
}

/// θ(st) = −L_s L_{t♮}: −L_sL_{s♮} = Q(s)id and (−L_rL_{s♮})(−L_sL_{t♮}) = −Q(s)L_rL_{t♮}.
pub fn check_theta<F: Field>(
    a: &Algebra<F>,
    ad: &AlbertData<F>,
    r: &[F::Elem],
    s: &[F::Elem],
    t: &[F::Elem],
) -> Result<bool> {
    let f = &a.field;
    let theta = |x: &[F::Elem], y: &[F::Elem]| -> Result<Mat<F::Elem>> {
        let m = linalg::mat_mul(f, &a.left_mul(x), &a.left_mul(&ad.natural_of(y)?));
        Ok(linalg::mat_scale(f, &f.from_i64(-1), &m))
    };
    let qs = ad.q(s)?;
    if theta(s, s)? != linalg::scalar_mat(f, a.dim, &qs) {
        return Ok(false);
    }
    let lhs = linalg::mat_mul(f, &theta(r, s)?, &theta(s, t)?);
    let rhs = linalg::mat_scale(f, &qs, &theta(r, t)?);
    Ok(lhs == rhs)
}

/// t(e_k) = tr L_{e_k}
fn left_traces<F: Field>(a: &Algebra<F>) -> Elem<F> {
    let f = &a.field;
    let n = a.dim;
    (0..n)
        .map(|k| {
            let mut t = f.zero();
            for j in 0..n {
                for (p, c) in &a.table[k * n + j] {
                    if *p == j {
                        t = f.add(&t, c);
                    }
                }
            }
            t
        })
        .collect()
}

/// T_A(x,y) = tr(L_{xȳ + yx̄})
pub fn trace_bilinear<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    let c = a.add(&a.mul(x, &a.conj(y)), &a.mul(y, &a.conj(x)));
    linalg::dot(&a.field, &left_traces(a), &c)
}

pub fn trace_gram<F: Field>(a: &Algebra<F>) -> Mat<F::Elem> {
    let f = &a.field;
    let t = left_traces(a);
    let n = a.dim;
    let mut g = Mat::from_fn(n, n, |_, _| f.zero());
    for i in 0..n {
        for j in i..n {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let c = a.add(&a.mul(&ei, &a.conj(&ej)), &a.mul(&ej, &a.conj(&ei)));
            let v = linalg::dot(f, &t, &c);
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    g
}

/// The trace form x ↦ T_A(x,x), diagonalized.
pub fn trace_form<F: Field>(a: &Algebra<F>) -> Result<QuadraticForm> {
    let f = &a.field;
    let g = trace_gram(a);
    let gs = Mat::from_fn(g.rows, g.cols, |i, j| f.to_scalar(g.get(i, j)));
    QuadraticForm::gram(&f.descriptor(), &gs)
}

/// N_A(x) = Q(ψ(x, U_x(s₀x))) / (36·Q(s₀))
pub fn octic_norm<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, x: &[F::Elem], s0: &[F::Elem]) -> Result<F::Elem> {
    check_len(a, &[x, s0])?;
    let f = &a.field;
    let q0 = ad.q(s0)?;
    if f.is_zero(&q0) {
        return Err(Error::BadBasepoint);
    }
    let u = apply_u(a, x, &a.mul(s0, x));
    let num = ad.q(&psi(a, x, &u))?;
    f.div(&num, &f.mul(&f.from_i64(36), &q0)).ok_or(Error::DivisionByZero)
}

/// Octic norm at the default basepoint.
pub fn norm<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, x: &[F::Elem]) -> Result<F::Elem> {
    let s0 = ad.basepoint().ok_or(Error::BadBasepoint)?;
    octic_norm(a, ad, x, &s0)
}

fn skew_matrix<F: Field>(ad: &AlbertData<F>, image: impl Fn(&[F::Elem]) -> Result<Elem<F>>) -> Result<Mat<F::Elem>> {
    let mut cols = Vec::with_capacity(ad.dim());
    for b in &ad.skew.basis {
        cols.push(ad.coords(&image(b)?)?);
    }
    Ok(Mat::from_cols(&cols, ad.dim()))
}

/// M_x(s) = ⅙ψ(x, U_x(s♮x)) on skew coordinates.
pub fn matrix_factorization<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, x: &[F::Elem]) -> Result<Mat<F::Elem>> {
    check_len(a, &[x])?;
    let f = &a.field;
    let sixth = f.inv(&f.from_i64(6)).ok_or(Error::DivisionByZero)?;
    skew_matrix(ad, |s| {
        let u = apply_u(a, x, &a.mul(&ad.natural_of(s)?, x));
        Ok(a.scale(&sixth, &psi(a, x, &u)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PMode {
    Full,
    SkewPart,
}

/// P_x(a) = ⅓U_x(5a − 2V_{a,x}x̂)
pub fn p_full<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Result<Mat<F::Elem>> {
    let f = &a.field;
    let xh = conjugate_inverse(a, x)?.ok_or(Error::NotInvertible)?;
    let third = f.inv(&f.from_i64(3)).ok_or(Error::DivisionByZero)?;
    let cols: Vec<Elem<F>> = (0..a.dim)
        .map(|j| {
            let e = a.basis(j);
            let w = a.sub(&a.scale(&f.from_i64(5), &e), &a.scale(&f.from_i64(2), &triple(a, &e, x, &xh)));
            a.scale(&third, &apply_u(a, x, &w))
        })
        .collect();
    Ok(Mat::from_cols(&cols, a.dim))
}

/// (P_x)_S(s) = ⅙ψ(x, U_x(sx)), defined for every x.
pub fn p_skew<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, x: &[F::Elem]) -> Result<Mat<F::Elem>> {
    check_len(a, &[x])?;
    let f = &a.field;
    let sixth = f.inv(&f.from_i64(6)).ok_or(Error::DivisionByZero)?;
    skew_matrix(ad, |s| Ok(a.scale(&sixth, &psi(a, x, &apply_u(a, x, &a.mul(s, x))))))
}

pub fn p_operator<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, x: &[F::Elem], mode: PMode) -> Result<Mat<F::Elem>> {
    match mode {
        PMode::Full => p_full(a, x),
        PMode::SkewPart => p_skew(a, ad, x),
    }
}

/// α_S(s) = ½ψ(α(s), α(1)) for an operator α on A.
pub fn skew_restriction<F: Field>(a: &Algebra<F>, ad: &AlbertData<F>, alpha: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    let f = &a.field;
    let half = f.inv(&f.from_i64(2)).ok_or(Error::DivisionByZero)?;
    let a1 = linalg::mat_vec(f, alpha, &a.unit);
    skew_matrix(ad, |s| Ok(a.scale(&half, &psi(a, &linalg::mat_vec(f, alpha, s), &a1))))
}

/// μ with Q(m·c) = μ·Q(c) for all c, if m is a similitude.
pub fn similitude_multiplier<F: Field>(ad: &AlbertData<F>, m: &Mat<F::Elem>) -> Option<F::Elem> {
    let f = &ad.field;
    let g2 = linalg::mat_mul(f, &linalg::mat_mul(f, &m.transpose(), &ad.gram), m);
    let i = (0..ad.dim()).find(|&i| !f.is_zero(ad.gram.get(i, i)))?;
    let mu = f.div(g2.get(i, i), ad.gram.get(i, i))?;
    // compare symmetric parts, which determine the quadratic form
    let sym = |g: &Mat<F::Elem>| Mat::from_fn(g.rows, g.cols, |r, c| f.add(g.get(r, c), g.get(c, r)));
    if sym(&g2) == sym(&linalg::mat_scale(f, &mu, &ad.gram)) {
        Some(mu)
    } else {
        None
    }
}

pub fn elem_to_scalars<F: Field>(f: &F, x: &[F::Elem]) -> Vec<Scalar> {
    x.iter().map(|c| f.to_scalar(c)).collect()
}

pub fn elem_from_scalars<F: Field>(f: &F, x: &[Scalar]) -> Result<Elem<F>> {
    x.iter().map(|s| f.from_scalar(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{corestriction, decomposable};
    use crate::fields::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn algebras() -> Vec<Algebra<PrimeField>> {
        let f = fp();
        vec![
            decomposable(&f, &[1, 1, 1], &[2, 3, 1]).unwrap(),
            corestriction(&f, &2, &[(1, 1), (3, 0), (2, 4)]).unwrap(),
        ]
    }

    #[test]
    fn basic_operators() {
        let f = fp();
        let a = decomposable(&f, &[1, 2], &[3]).unwrap();
        assert_eq!(op_v(&a, &a.unit, &a.unit), linalg::identity(&f, a.dim));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = a.random(&mut rng, 5);
        assert_eq!(op_t(&a, &x), operator(&a, OperatorKind::V, &[x.clone(), a.unit.clone()]).unwrap());
        assert!(a.is_zero(&psi(&a, &x, &x)));
        let y = a.random(&mut rng, 5);
        let z = a.random(&mut rng, 5);
        assert_eq!(linalg::mat_vec(&f, &op_u2(&a, &x, &y), &z), triple(&a, &x, &z, &y));
        assert_eq!(linalg::mat_vec(&f, &op_u(&a, &x), &z), apply_u(&a, &x, &z));
        assert_eq!(operator(&a, OperatorKind::L, &[vec![0; 3]]).unwrap_err(), Error::MixedAlgebras);
        // D is a derivation commuting with the involution
        let d = op_d(&a, &x, &y).unwrap();
        let dz = linalg::mat_vec(&f, &d, &a.mul(&z, &x));
        let rhs = a.add(&a.mul(&linalg::mat_vec(&f, &d, &z), &x), &a.mul(&z, &linalg::mat_vec(&f, &d, &x)));
        assert_eq!(dz, rhs);
        assert_eq!(linalg::mat_mul(&f, &d, &a.invol), linalg::mat_mul(&f, &a.invol, &d));
    }

    #[test]
    fn structurable_identity_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for a in algebras() {
            let f = a.field.clone();
            for _ in 0..3 {
                let v: Vec<_> = (0..4).map(|_| a.random(&mut rng, 5)).collect();
                assert!(linalg::is_zero_mat(&f, &structurable_residual(&a, &v[0], &v[1], &v[2], &v[3])));
            }
        }
    }

    #[test]
    fn albert_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for a in algebras() {
            let f = a.field.clone();
            let ad = albert_data(&a).unwrap();
            assert_eq!(ad.dim(), 14);
            let nn = linalg::mat_mul(&f, &ad.natural, &ad.natural);
            assert_eq!(nn, linalg::scalar_mat(&f, 14, &ad.multiplier()));
            assert_eq!(similitude_multiplier(&ad, &ad.natural), Some(ad.multiplier()));
            for _ in 0..4 {
                let s = ad.random_skew(&mut rng, 3);
                let t = ad.random_skew(&mut rng, 3);
                let r = ad.random_skew(&mut rng, 3);
                assert!(check_ls_identity(&a, &ad, &s).unwrap());
                assert!(check_composition(&a, &ad, &s, &t).unwrap());
                assert!(check_theta(&a, &ad, &r, &s, &t).unwrap());
                let q = ad.q(&s).unwrap();
                let sh = conjugate_inverse(&a, &s).unwrap();
                if f.is_zero(&q) {
                    assert!(sh.is_none());
                } else {
                    let expect = a.scale(&f.inv(&q).unwrap(), &ad.natural_of(&s).unwrap());
                    assert_eq!(sh.unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn norm_and_factorization() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for a in algebras() {
            let f = a.field.clone();
            let ad = albert_data(&a).unwrap();
            assert_eq!(norm(&a, &ad, &a.unit).unwrap(), 1);
            let m1 = matrix_factorization(&a, &ad, &a.unit).unwrap();
            assert_eq!(m1, ad.natural);
            let s1 = ad.basepoint().unwrap();
            let s2 = (0..14).map(|i| ad.skew.basis[13 - i].clone()).find(|b| ad.q(b).unwrap() != 0).unwrap();
            assert_ne!(s1, s2);
            for _ in 0..4 {
                let x = a.random(&mut rng, 5);
                let n = octic_norm(&a, &ad, &x, &s1).unwrap();
                assert_eq!(n, octic_norm(&a, &ad, &x, &s2).unwrap());
                let m = matrix_factorization(&a, &ad, &x).unwrap();
                let scale = f.mul(&n, &ad.multiplier());
                assert_eq!(linalg::mat_mul(&f, &m, &m), linalg::scalar_mat(&f, 14, &scale));
                assert_eq!(conjugate_inverse(&a, &x).unwrap().is_some(), n != 0);
                let ps = p_skew(&a, &ad, &x).unwrap();
                if n != 0 {
                    assert_eq!(similitude_multiplier(&ad, &ps), Some(n));
                    let pf = p_full(&a, &x).unwrap();
                    assert_eq!(skew_restriction(&a, &ad, &pf).unwrap(), ps);
                }
            }
            assert_eq!(octic_norm(&a, &ad, &a.unit, &a.zero()).unwrap_err(), Error::BadBasepoint);
        }
    }

    #[test]
    fn p_at_one_and_l_isotopy() {
        let f = fp();
        let a = decomposable(&f, &[1, 1, 1], &[1, 1, 1]).unwrap();
        let ad = albert_data(&a).unwrap();
        assert_eq!(p_full(&a, &a.unit).unwrap(), linalg::identity(&f, 64));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = ad.random_skew(&mut rng, 3);
        let t = ad.random_skew(&mut rng, 3);
        let ls = skew_restriction(&a, &ad, &a.left_mul(&s)).unwrap();
        let img = ad.skew.combine(&f, &linalg::mat_vec(&f, &ls, &ad.coords(&t).unwrap()));
        assert_eq!(img, a.scale(&f.from_i64(-1), &sts(&a, &s, &t)));
        let q = ad.q(&s).unwrap();
        if q != 0 {
            assert_eq!(similitude_multiplier(&ad, &ls), Some(f.mul(&q, &q)));
        }
    }

    #[test]
    fn trace_form_values() {
        let f = Rationals;
        let q = |n: i64| f.from_i64(n);
        let a = decomposable(&f, &[q(1), q(1), q(1)], &[q(-1), q(-1), q(-1)]).unwrap();
        assert_eq!(trace_bilinear(&a, &a.unit, &a.unit), q(128));
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (x, y, z) = (a.random(&mut rng, 3), a.random(&mut rng, 3), a.random(&mut rng, 3));
        assert_eq!(trace_bilinear(&a, &a.mul(&z, &x), &y), trace_bilinear(&a, &x, &a.mul(&a.conj(&z), &y)));
        let ad = albert_data(&a).unwrap();
        // split ⊗ division: n₁′ has signature −1, ⟨−1⟩n₂′ has −7
        assert_eq!(ad.form().unwrap().signature().unwrap(), -8);
    }
}
