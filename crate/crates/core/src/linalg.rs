//! Dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::{cx, lit, re, CMatrix, CVector, Cx, Real};

/// Largest entrywise modulus of `m - m†`.
pub fn hermitian_defect<T: Real>(m: &CMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm_sqr().sqrt();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter()
        .map(|z| z.norm_sqr().sqrt())
        .fold(T::zero(), |a, b| if b > a { b } else { a })
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> Cx<T> {
    m.diagonal()
        .iter()
        .fold(Cx::new(T::zero(), T::zero()), |a, &b| a + b)
}

/// Real trace of the product `a * b`, computed without forming the product.
pub fn trace_of_product<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Cx<T> {
    let mut acc = Cx::new(T::zero(), T::zero());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix.
/// Only the lower triangle is read.
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

pub fn hermitian_eigenvalues<T: Real>(m: &CMatrix<T>) -> Vec<T> {
    let mut v: Vec<T> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    v
}

/// `|u⟩⟨v|`
pub fn outer<T: Real>(u: &CVector<T>, v: &CVector<T>) -> CMatrix<T> {
    u * v.adjoint()
}

/// `m ⊗ m ⊗ … ⊗ m` with `s` factors.
pub fn kron_power<T: Real>(m: &CMatrix<T>, s: usize) -> CMatrix<T> {
    assert!(s >= 1, "tensor power needs at least one factor");
    let mut acc = m.clone();
    for _ in 1..s {
        acc = acc.kronecker(m);
    }
    acc
}

pub fn identity<T: Real>(d: usize) -> CMatrix<T> {
    CMatrix::identity(d, d)
}

/// `I^{⊗before} ⊗ x ⊗ I^{⊗after}` where every identity factor has the
/// dimension of `x`.
pub fn embed_in_slot<T: Real>(x: &CMatrix<T>, slot: usize, copies: usize) -> CMatrix<T> {
    let d = x.nrows();
    let before = identity::<T>(d.pow(slot as u32));
    let after = identity::<T>(d.pow((copies - 1 - slot) as u32));
    before.kronecker(x).kronecker(&after)
}

/// Projector onto the span of eigenvectors with nonnegative eigenvalue.
pub fn nonnegative_projector<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    let (values, vectors) = hermitian_eigen(m);
    let d = m.nrows();
    let mut p = CMatrix::zeros(d, d);
    for (k, &lam) in values.iter().enumerate() {
        if lam >= T::zero() {
            let v = vectors.column(k).into_owned();
            p += outer(&v, &v);
        }
    }
    p
}

/// Dimension product `base^exp` with overflow reported as `None`.
pub fn checked_power(base: usize, exp: usize) -> Option<usize> {
    let e = u32::try_from(exp).ok()?;
    base.checked_pow(e)
}

pub fn check_capacity(dim: Option<usize>, limit: usize, what: &str) -> Result<usize> {
    match dim {
        Some(d) if d <= limit => Ok(d),
        Some(d) => Err(Error::Capacity(format!(
            "{what}: tensor dimension {d} exceeds the limit {limit}"
        ))),
        None => Err(Error::Capacity(format!(
            "{what}: tensor dimension overflows"
        ))),
    }
}

pub fn inner<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Cx<T> {
    u.dotc(v)
}

pub fn vector_norm<T: Real>(v: &CVector<T>) -> T {
    v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt()
}

pub fn frobenius_sq<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |a, z| a + z.norm_sqr())
}

pub fn basis_vector<T: Real>(d: usize, k: usize) -> CVector<T> {
    let mut v = CVector::zeros(d);
    v[k] = re(T::one());
    v
}

pub fn complex_from_parts<T: Real>(real: &DMatrix<T>, imag: &DMatrix<T>) -> CMatrix<T> {
    CMatrix::from_fn(real.nrows(), real.ncols(), |i, j| {
        cx(real[(i, j)], imag[(i, j)])
    })
}

pub fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    lit(rng.sample::<f64, _>(StandardNormal))
}

/// Gaussian Hermitian matrix (GUE-style): `(G + G†)/2` with i.i.d. complex normal `G`.
pub fn gaussian_hermitian<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix<T> {
    let g = CMatrix::<T>::from_fn(d, d, |_, _| cx(gaussian(rng), gaussian(rng)));
    (&g + g.adjoint()).map(|z| z.scale(lit::<T>(0.5)))
}

/// Gaussian Hermitian matrix scaled to unit operator norm.
pub fn unit_norm_hermitian<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix<T> {
    loop {
        let h = gaussian_hermitian::<T, _>(d, rng);
        let norm = hermitian_eigenvalues(&h)
            .into_iter()
            .map(|x| x.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a });
        if norm > T::zero() {
            return h.map(|z| z.unscale(norm));
        }
    }
}

pub fn gaussian_vector<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> CVector<T> {
    DVector::from_fn(d, |_, _| cx(gaussian(rng), gaussian(rng)))
}
