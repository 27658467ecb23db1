// SPDX-License-Identifier: Apache-2.0
//! Graded dimensions of the TKK Lie algebra K(A,−): derivations,
//! the operator space V_{A,A} and the type table.

use crate::algebras::Algebra;
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Echelon, Mat, Subspace};
use crate::structurable::{op_d, op_v, triple};
use rand::Rng;

type Elem<F> = Vec<<F as Field>::Elem>;

/// Greedy generating set taken from the standard basis.
pub fn generators<F: Field>(a: &Algebra<F>) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = closure(a, &[]);
    for k in 0..a.dim {
        if !span.contains(&a.field, &a.basis(k)) {
            gens.push(k);
            span = closure(a, &gens);
        }
    }
    gens
}

fn closure<F: Field>(a: &Algebra<F>, gens: &[usize]) -> Echelon<F::Elem> {
    let f = &a.field;
    let mut ech = Echelon::new(a.dim);
    let mut elems = vec![a.unit.clone()];
    ech.insert(f, &a.unit);
    let mut t = 0;
    while t < elems.len() {
        for &g in gens {
            let p = a.mul(&elems[t], &a.basis(g));
            if ech.insert(f, &p) {
                elems.push(p);
            }
        }
        t += 1;
    }
    ech
}

/// Φ with d(e_k) = Φ[k·n..(k+1)·n]·u, u the stacked values of d on the generators.
fn leibniz_frame<F: Field>(a: &Algebra<F>, gens: &[usize]) -> Result<Mat<F::Elem>> {
    let f = &a.field;
    let n = a.dim;
    let nunk = gens.len() * n;
    let zero_frame = || Mat::from_fn(n, nunk, |_, _| f.zero());
    let mut elems: Vec<Elem<F>> = vec![a.unit.clone()];
    let mut frames: Vec<Mat<F::Elem>> = vec![zero_frame()];
    let mut ech = Echelon::new(n);
    ech.insert(f, &a.unit);
    for (i, &g) in gens.iter().enumerate() {
        let e = a.basis(g);
        if ech.insert(f, &e) {
            let mut fr = zero_frame();
            for r in 0..n {
                fr.set(r, i * n + r, f.one());
            }
            elems.push(e);
            frames.push(fr);
        }
    }
    let gen_pos: Vec<usize> = gens.iter().map(|&g| elems.iter().position(|w| *w == a.basis(g)).unwrap()).collect();
    let mut t = 0;
    while t < elems.len() && elems.len() < n {
        for (i, &g) in gens.iter().enumerate() {
            let p = a.mul(&elems[t], &a.basis(g));
            if !ech.insert(f, &p) {
                continue;
            }
            // d(wg) = d(w)g + w·d(g)
            let mut fr = linalg::mat_mul(f, &a.right_mul(&a.basis(g)), &frames[t]);
            let lw = a.left_mul(&elems[t]);
            let dg = &frames[gen_pos[i]];
            let lwd = linalg::mat_mul(f, &lw, dg);
            fr = linalg::mat_add(f, &fr, &lwd);
            elems.push(p);
            frames.push(fr);
        }
        t += 1;
    }
    if elems.len() != n {
        return Err(Error::Internal("generators do not generate the algebra".into()));
    }
    let sub = Subspace::new(f, n, elems).ok_or_else(|| Error::Internal("dependent words".into()))?;
    let mut all = Mat::from_fn(n * n, nunk, |_, _| f.zero());
    for k in 0..n {
        let c = sub.coords(f, &a.basis(k));
        for (t, ct) in c.iter().enumerate() {
            if f.is_zero(ct) {
                continue;
            }
            for r in 0..n {
                for col in 0..nunk {
                    let v = frames[t].get(r, col);
                    if !f.is_zero(v) {
                        let idx = (k * n + r) * nunk + col;
                        all.data[idx] = f.add(&all.data[idx], &f.mul(ct, v));
                    }
                }
            }
        }
    }
    Ok(all)
}

/// Leibniz residual of the pair (i,j) as rows in the unknowns.
fn pair_rows<F: Field>(a: &Algebra<F>, phi: &Mat<F::Elem>, i: usize, j: usize) -> Vec<Elem<F>> {
    let f = &a.field;
    let n = a.dim;
    let nunk = phi.cols;
    let mut out = vec![vec![f.zero(); nunk]; n];
    let row = |k: usize, r: usize| &phi.data[(k * n + r) * nunk..(k * n + r + 1) * nunk];
    let mut axpy = |dst: usize, c: &F::Elem, src: &[F::Elem]| {
        for (d, s) in out[dst].iter_mut().zip(src) {
            if !f.is_zero(s) {
                *d = f.add(d, &f.mul(c, s));
            }
        }
    };
    for (p, c) in &a.table[i * n + j] {
        for r in 0..n {
            axpy(r, c, row(*p, r));
        }
    }
    // −d(e_i)e_j: Σ_k d(e_i)_k e_k e_j
    for k in 0..n {
        for (p, c) in &a.table[k * n + j] {
            axpy(*p, &f.neg(c), row(i, k));
        }
    }
    for k in 0..n {
        for (p, c) in &a.table[i * n + k] {
            axpy(*p, &f.neg(c), row(j, k));
        }
    }
    out
}

fn sigma_rows<F: Field>(a: &Algebra<F>, phi: &Mat<F::Elem>, k: usize) -> Vec<Elem<F>> {
    let f = &a.field;
    let n = a.dim;
    let nunk = phi.cols;
    let mut out = vec![vec![f.zero(); nunk]; n];
    let row = |k: usize, r: usize| &phi.data[(k * n + r) * nunk..(k * n + r + 1) * nunk];
    for l in 0..n {
        let s = a.invol.get(l, k);
        if f.is_zero(s) {
            continue;
        }
        for r in 0..n {
            for (d, v) in out[r].iter_mut().zip(row(l, r)) {
                *d = f.add(d, &f.mul(s, v));
            }
        }
    }
    for r in 0..n {
        for m in 0..n {
            let s = a.invol.get(r, m);
            if f.is_zero(s) {
                continue;
            }
            for (d, v) in out[r].iter_mut().zip(row(k, m)) {
                *d = f.sub(d, &f.mul(s, v));
            }
        }
    }
    out
}

/// Derivation (column k = d(e_k)) violating the pair (i,j) Leibniz rule?
fn pair_fails<F: Field>(a: &Algebra<F>, d: &Mat<F::Elem>, i: usize, j: usize) -> bool {
    let f = &a.field;
    let n = a.dim;
    let mut r = vec![f.zero(); n];
    for (p, c) in &a.table[i * n + j] {
        for (t, x) in r.iter_mut().enumerate() {
            *x = f.add(x, &f.mul(c, d.get(t, *p)));
        }
    }
    for k in 0..n {
        let dik = d.get(k, i);
        if !f.is_zero(dik) {
            for (p, c) in &a.table[k * n + j] {
                r[*p] = f.sub(&r[*p], &f.mul(dik, c));
            }
        }
        let djk = d.get(k, j);
        if !f.is_zero(djk) {
            for (p, c) in &a.table[i * n + k] {
                r[*p] = f.sub(&r[*p], &f.mul(djk, c));
            }
        }
    }
    !linalg::is_zero_vec(f, &r)
}

pub fn is_derivation<F: Field>(a: &Algebra<F>, d: &Mat<F::Elem>) -> bool {
    let f = &a.field;
    let n = a.dim;
    if linalg::mat_mul(f, d, &a.invol) != linalg::mat_mul(f, &a.invol, d) {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| !pair_fails(a, d, i, j)))
}

/// Basis of Der(A,−): derivations commuting with the involution, as exact matrices.
pub fn derivations<F: Field>(a: &Algebra<F>) -> Result<Vec<Mat<F::Elem>>> {
    let f = &a.field;
    let n = a.dim;
    let gens = generators(a);
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let phi = leibniz_frame(a, &gens)?;
    let nunk = phi.cols;
    let ngroups = n * n + n;
    let rows_of = |g: usize| if g < n * n { pair_rows(a, &phi, g / n, g % n) } else { sigma_rows(a, &phi, g - n * n) };
    let to_mat = |u: &[F::Elem]| {
        let col = linalg::mat_vec(f, &phi, u);
        Mat::from_fn(n, n, |r, k| col[k * n + r].clone())
    };
    let find = |ker: &[Elem<F>], used: &[bool]| {
        let ds: Vec<Mat<F::Elem>> = ker.iter().map(|u| to_mat(u)).collect();
        let mut bad = Vec::new();
        for g in 0..ngroups {
            if used[g] {
                continue;
            }
            let fails = if g < n * n {
                ds.iter().any(|d| pair_fails(a, d, g / n, g % n))
            } else {
                let k = g - n * n;
                let sk = a.invol.col(k);
                ds.iter().any(|d| linalg::mat_vec(f, d, &sk) != a.conj(&d.col(k)))
            };
            if fails {
                bad.push(g);
                if bad.len() >= 16 {
                    break;
                }
            }
        }
        bad
    };
    let ker = linalg::grouped_kernel_batch(f, nunk, ngroups, rows_of, find);
    Ok(ker.iter().map(|u| to_mat(u)).collect())
}

fn flat<E: Clone>(m: &Mat<E>) -> Vec<E> {
    m.data.clone()
}

/// Dimension of the span of D_{x,y} over random pairs, stopping after `patience` idle draws.
pub fn inner_derivation_dim<F: Field, R: Rng + ?Sized>(a: &Algebra<F>, rng: &mut R, patience: usize) -> Result<usize> {
    let f = &a.field;
    let mut ech = Echelon::new(a.dim * a.dim);
    let mut idle = 0;
    while idle < patience {
        let x = a.random(rng, 3);
        let y = a.random(rng, 3);
        if ech.insert(f, &flat(&op_d(a, &x, &y)?)) {
            idle = 0;
        } else {
            idle += 1;
        }
    }
    Ok(ech.rank())
}

/// V_{x,y} assembled from triple products, column k = {x,y,e_k}.
fn v_by_columns<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Mat<F::Elem> {
    let cols: Vec<Elem<F>> = (0..a.dim).map(|k| triple(a, x, y, &a.basis(k))).collect();
    Mat::from_cols(&cols, a.dim)
}

/// Span of V_{e_i,e_j} over basis pairs, stopping once `target` is reached.
pub fn vaa_span<F: Field>(a: &Algebra<F>, target: Option<usize>) -> Echelon<F::Elem> {
    let f = &a.field;
    let n = a.dim;
    let mut ech = Echelon::new(n * n);
    'outer: for i in 0..n {
        for j in 0..n {
            ech.insert(f, &flat(&v_by_columns(a, &a.basis(i), &a.basis(j))));
            if Some(ech.rank()) == target {
                break 'outer;
            }
        }
    }
    ech
}

/// [V_{x,y}, V_{z,w}] lies in the span.
pub fn lie_closed<F: Field>(a: &Algebra<F>, span: &Echelon<F::Elem>, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem], w: &[F::Elem]) -> bool {
    let f = &a.field;
    let p = op_v(a, x, y);
    let q = op_v(a, z, w);
    let br = linalg::mat_sub(f, &linalg::mat_mul(f, &p, &q), &linalg::mat_mul(f, &q, &p));
    span.contains(f, &flat(&br))
}

/// Commutators of derivations are derivations in the span.
pub fn der_closed<F: Field>(a: &Algebra<F>, der: &[Mat<F::Elem>], i: usize, j: usize) -> bool {
    let f = &a.field;
    let mut ech = Echelon::new(a.dim * a.dim);
    for d in der {
        ech.insert(f, &flat(d));
    }
    let br = linalg::mat_sub(f, &linalg::mat_mul(f, &der[i], &der[j]), &linalg::mat_mul(f, &der[j], &der[i]));
    ech.contains(f, &flat(&br))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedProfile {
    pub dims: [usize; 5],
    pub total: usize,
    pub type_label: String,
    pub note: Option<String>,
}

pub fn composition_der_dim(m: usize) -> Option<usize> {
    match m {
        1 | 2 => Some(0),
        4 => Some(3),
        8 => Some(14),
        _ => None,
    }
}

/// Type of K(A,−) for an (m₁,m₂)-product algebra; the order of m₁, m₂ is irrelevant.
pub fn type_label(m1: usize, m2: usize) -> (String, Option<String>) {
    let key = (m1.max(m2), m1.min(m2));
    let label = match key {
        (1, 1) => "A1",
        (2, 1) => "A2",
        (4, 1) => "C3",
        (8, 1) => "F4",
        (4, 2) => "A5",
        (8, 2) => "E6",
        (4, 4) => "D6",
        (8, 4) => "E7",
        (8, 8) => "E8",
        _ => "Unknown",
    };
    let note = (key == (4, 4)).then(|| "table-entry ambiguous".to_string());
    (label.to_string(), note)
}

pub fn graded_profile<F: Field>(a: &Algebra<F>) -> Result<GradedProfile> {
    let (m1, m2) = a.factor_dims().ok_or(Error::UnknownProvenance)?;
    let ds = a.skew_basis().len();
    let da = a.dim;
    let der = derivations(a)?.len();
    let expected = match (composition_der_dim(m1), composition_der_dim(m2)) {
        (Some(x), Some(y)) => x + y,
        _ => return Err(Error::InvalidDims((m1, m2))),
    };
    if der != expected {
        return Err(Error::Internal(format!("Der has dimension {der}, expected {expected}")));
    }
    let dv = vaa_span(a, Some(da + der)).rank();
    if dv != da + der {
        return Err(Error::Internal(format!("V_AA has dimension {dv}, expected {}", da + der)));
    }
    let dims = [ds, da, dv, da, ds];
    let total: usize = dims.iter().sum();
    debug_assert_eq!(total, 2 * ds + 3 * da + der);
    let (type_label, note) = type_label(m1, m2);
    Ok(GradedProfile { dims, total, type_label, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::decomposable;
    use crate::fields::PrimeField;
    use rand::SeedableRng;

    #[test]
    fn small_profiles() {
        let f = PrimeField::new(5).unwrap();
        let a = decomposable(&f, &[1, 1], &[]).unwrap();
        let p = graded_profile(&a).unwrap();
        assert_eq!((p.dims, p.total, p.type_label.as_str()), ([3, 4, 7, 4, 3], 21, "C3"));
        let a = decomposable(&f, &[1, 1], &[1]).unwrap();
        let p = graded_profile(&a).unwrap();
        assert_eq!(p.total, 35);
        let der = derivations(&a).unwrap();
        assert!(der.iter().all(|d| is_derivation(&a, d)));
        assert!(der_closed(&a, &der, 0, 1));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert_eq!(inner_derivation_dim(&a, &mut rng, 6).unwrap(), 3);
        let span = vaa_span(&a, None);
        assert_eq!(span.rank(), 11);
        let v: Vec<_> = (0..4).map(|_| a.random(&mut rng, 5)).collect();
        assert!(lie_closed(&a, &span, &v[0], &v[1], &v[2], &v[3]));
    }
}
