//! Source operators of a pure bipartite state.
//!
//! For `|ψ⟩ = Σ_k √λ_k e_k ⊗ f_k` the `1×S` source operator is
//!
//! ```text
//! T = Σ_{k,k'} √(λ_k λ_k') |e_k⟩⟨e_k'| ⊗ W_{kk'}
//! ```
//!
//! on `H1 ⊗ H2^{⊗S}`, where `W_kk = (|f_k⟩⟨f_k|)^{⊗S}` and for `k ≠ k'`
//! `W_kk'` is the polarization-type combination of the `S`-fold tensor
//! powers of the projectors onto `f_k ± f_k'` and `f_k ± i f_k'`, weighted
//! `(1, −1, i, −i) / 2^{S+1}`. Every single-slot marginal of `W_kk'` is
//! `|f_k⟩⟨f_k'|`, which makes `T` reproduce all bipartite expectations of
//! `|ψ⟩⟨ψ|` in every slot. The `S×1` operator mirrors this with the sites
//! exchanged.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    self, check_capacity, checked_power, embed_in_slot, hermitian_defect, hermitian_eigenvalues,
    kron_power, outer, trace_of_product,
};
use crate::qstate::{PureState, SchmidtData};
use crate::scalar::{cx, lit, to_f64, tol, CMatrix, CVector, Cx, Real};

/// Largest joint tensor dimension built densely unless overridden.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "BELLBOUND_MAX_DIM";

/// Current size guard: `BELLBOUND_MAX_DIM` if set to a positive integer,
/// otherwise [`DEFAULT_MAX_DIM`].
pub fn size_guard() -> usize {
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// A Hermitian dilation of a bipartite state to `H1^{⊗s1} ⊗ H2^{⊗s2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceOperator<T: Real> {
    s1: usize,
    s2: usize,
    d1: usize,
    d2: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> SourceOperator<T> {
    /// Wraps a matrix after checking only its shape. Use
    /// [`SourceOperator::check_invariants`] to validate the content.
    pub fn from_matrix(
        s1: usize,
        s2: usize,
        d1: usize,
        d2: usize,
        matrix: CMatrix<T>,
    ) -> Result<Self> {
        if s1 == 0 || s2 == 0 || d1 == 0 || d2 == 0 {
            return Err(Error::Argument(
                "settings counts and dimensions must be positive".into(),
            ));
        }
        let dim = checked_power(d1, s1)
            .zip(checked_power(d2, s2))
            .and_then(|(a, b)| a.checked_mul(b))
            .ok_or_else(|| Error::Capacity("source operator dimension overflows".into()))?;
        if matrix.shape() != (dim, dim) {
            return Err(Error::Argument(format!(
                "matrix shape {:?} does not match {d1}^{s1}·{d2}^{s2} = {dim}",
                matrix.shape()
            )));
        }
        Ok(Self {
            s1,
            s2,
            d1,
            d2,
            matrix,
        })
    }

    pub fn s1(&self) -> usize {
        self.s1
    }

    pub fn s2(&self) -> usize {
        self.s2
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    /// Hermitian and unit trace within `1e-10`, trace norm at least `1 − 1e-10`.
    pub fn check_invariants(&self) -> Result<()> {
        let defect = hermitian_defect(&self.matrix);
        if defect > tol::<T>(1e-10) {
            return Err(Error::Validation(format!(
                "source operator is not Hermitian (defect {:e})",
                to_f64(defect)
            )));
        }
        let tr = linalg::trace(&self.matrix);
        if (tr.re - T::one()).abs() > tol::<T>(1e-10) || tr.im.abs() > tol::<T>(1e-10) {
            return Err(Error::Validation(format!(
                "source operator trace is {}{:+}i, expected 1",
                to_f64(tr.re),
                to_f64(tr.im)
            )));
        }
        let norm = self.trace_norm()?;
        if norm < T::one() - tol::<T>(1e-10) {
            return Err(Error::Validation(format!(
                "source operator trace norm {} is below 1",
                to_f64(norm)
            )));
        }
        Ok(())
    }

    pub fn trace_norm(&self) -> Result<T> {
        trace_norm(&self.matrix)
    }
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm<T: Real>(matrix: &CMatrix<T>) -> Result<T> {
    if !matrix.is_square() {
        return Err(Error::Validation("trace norm needs a square matrix".into()));
    }
    let defect = hermitian_defect(matrix);
    if defect > tol::<T>(1e-8) {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian (defect {:e})",
            to_f64(defect)
        )));
    }
    Ok(hermitian_eigenvalues(matrix)
        .into_iter()
        .fold(T::zero(), |a, x| a + x.abs()))
}

fn w_block_unchecked<T: Real>(a: &CVector<T>, b: &CVector<T>, s: usize, same: bool) -> CMatrix<T> {
    if same {
        return kron_power(&outer(a, a), s);
    }
    let i = cx(T::zero(), T::one());
    let plus = a + b;
    let minus = a - b;
    let plus_i = a + b.map(|z| z * i);
    let minus_i = a - b.map(|z| z * i);
    let weight = T::one() / lit::<T>(2.0).powi(s as i32 + 1);
    let mut w = kron_power(&outer(&plus, &plus), s) - kron_power(&outer(&minus, &minus), s);
    w += kron_power(&outer(&plus_i, &plus_i), s).map(|z| z * i);
    w -= kron_power(&outer(&minus_i, &minus_i), s).map(|z| z * i);
    w.map(|z| z.scale(weight))
}

/// The block `W_{kk'}` on `H^{⊗s}` for orthonormal (or identical) `e_k`, `e_k'`.
///
/// For `s = 1` the off-diagonal block is exactly `|e_k⟩⟨e_k'|`.
pub fn build_w_block<T: Real>(e_k: &CVector<T>, e_k1: &CVector<T>, s: usize) -> Result<CMatrix<T>> {
    if s == 0 {
        return Err(Error::Argument(
            "number of copies must be at least 1".into(),
        ));
    }
    if e_k.len() != e_k1.len() || e_k.is_empty() {
        return Err(Error::Argument(
            "basis vectors must share a nonzero dimension".into(),
        ));
    }
    check_capacity(checked_power(e_k.len(), s), size_guard(), "W block")?;
    let unit = tol::<T>(1e-10);
    for v in [e_k, e_k1] {
        if (linalg::vector_norm(v) - T::one()).abs() > unit {
            return Err(Error::Argument("basis vectors must be normalized".into()));
        }
    }
    let same = linalg::vector_norm(&(e_k - e_k1)) <= unit;
    if !same && linalg::inner(e_k, e_k1).norm_sqr().sqrt() > unit {
        return Err(Error::Argument(
            "basis vectors must be orthogonal or identical".into(),
        ));
    }
    Ok(w_block_unchecked(e_k, e_k1, s, same))
}

/// Which site is copied in a source operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Copied {
    Second,
    First,
}

fn build_source<T: Real>(
    schmidt: &SchmidtData<T>,
    copies: usize,
    copied: Copied,
) -> Result<SourceOperator<T>> {
    if copies == 0 {
        return Err(Error::Argument("settings count must be at least 1".into()));
    }
    let (d1, d2) = (schmidt.d1(), schmidt.d2());
    let (single_dim, copied_dim) = match copied {
        Copied::Second => (d1, d2),
        Copied::First => (d2, d1),
    };
    let dim = checked_power(copied_dim, copies).and_then(|p| p.checked_mul(single_dim));
    let total = check_capacity(dim, size_guard(), "source operator")?;

    let (single_basis, copied_basis) = match copied {
        Copied::Second => (schmidt.left_basis(), schmidt.right_basis()),
        Copied::First => (schmidt.right_basis(), schmidt.left_basis()),
    };
    let c = schmidt.coefficients();
    let mut t = CMatrix::<T>::zeros(total, total);
    for k in 0..c.len() {
        for k1 in 0..c.len() {
            let weight = c[k] * c[k1];
            let local = outer(&single_basis[k], &single_basis[k1]);
            let w = w_block_unchecked(&copied_basis[k], &copied_basis[k1], copies, k == k1);
            let term = match copied {
                Copied::Second => local.kronecker(&w),
                Copied::First => w.kronecker(&local),
            };
            t += term.map(|z| z.scale(weight));
        }
    }
    let (s1, s2) = match copied {
        Copied::Second => (1, copies),
        Copied::First => (copies, 1),
    };
    let op = SourceOperator::from_matrix(s1, s2, d1, d2, t)?;
    op.check_invariants()?;
    Ok(op)
}

/// `1×s2` source operator on `H1 ⊗ H2^{⊗s2}`.
pub fn build_source_1xs<T: Real>(schmidt: &SchmidtData<T>, s2: usize) -> Result<SourceOperator<T>> {
    build_source(schmidt, s2, Copied::Second)
}

/// `s1×1` source operator on `H1^{⊗s1} ⊗ H2`.
pub fn build_source_sx1<T: Real>(schmidt: &SchmidtData<T>, s1: usize) -> Result<SourceOperator<T>> {
    build_source(schmidt, s1, Copied::First)
}

/// Largest deviation `|tr[T·(X1 in slot k1 ⊗ X2 in slot k2)] − tr[ρ(X1⊗X2)]|`
/// over `n_samples` random unit-norm Hermitian pairs and all slot positions.
pub fn verify_dilation<T: Real>(
    op: &SourceOperator<T>,
    state: &PureState<T>,
    n_samples: usize,
    seed: u64,
) -> Result<T> {
    if op.d1() != state.d1() || op.d2() != state.d2() {
        return Err(Error::Argument(format!(
            "source operator is built for {}x{} but the state is {}x{}",
            op.d1(),
            op.d2(),
            state.d1(),
            state.d2()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = state.amplitudes();
    let mut worst = T::zero();
    for _ in 0..n_samples {
        let x1 = linalg::unit_norm_hermitian::<T, _>(op.d1(), &mut rng);
        let x2 = linalg::unit_norm_hermitian::<T, _>(op.d2(), &mut rng);
        // ⟨ψ|X1⊗X2|ψ⟩ = tr[A† X1 A X2ᵀ]
        let reference: Cx<T> = linalg::trace(&(a.adjoint() * &x1 * a * x2.transpose()));
        for k1 in 0..op.s1() {
            let left = embed_in_slot(&x1, k1, op.s1());
            for k2 in 0..op.s2() {
                let embedded = left.kronecker(&embed_in_slot(&x2, k2, op.s2()));
                let value = trace_of_product(op.matrix(), &embedded);
                let r = (value - reference).norm_sqr().sqrt();
                if r > worst {
                    worst = r;
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{maximally_entangled, schmidt_decompose};
    use crate::scalar::re;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;

    fn e(d: usize, k: usize) -> CVector<f64> {
        linalg::basis_vector(d, k)
    }

    #[test]
    fn diagonal_block_is_projector_power() {
        let w = build_w_block(&e(2, 0), &e(2, 0), 2).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        want[(0, 0)] = re(1.0);
        assert!(linalg::max_abs(&(w - want)) < 1e-15);
    }

    #[test]
    fn single_copy_block_is_rank_one_operator() {
        // Hand expansion of the four projectors: (|0⟩⟨1| + |1⟩⟨0|)/2 from the real
        // pair and (|0⟩⟨1| − |1⟩⟨0|)/2 from the imaginary pair.
        let w = build_w_block(&e(2, 0), &e(2, 1), 1).unwrap();
        let mut want = CMatrix::zeros(2, 2);
        want[(0, 1)] = re(1.0);
        assert!(linalg::max_abs(&(w - want)) < 1e-15);
    }

    #[test]
    fn swapped_blocks_are_adjoint() {
        let a = build_w_block(&e(2, 0), &e(2, 1), 2).unwrap();
        let b = build_w_block(&e(2, 1), &e(2, 0), 2).unwrap();
        assert!(linalg::max_abs(&(b - a.adjoint())) < 1e-15);
    }

    #[test]
    fn block_marginal_reproduces_rank_one_operator() {
        // Partial trace of the second copy of W_{01} on C^3 ⊗ C^3.
        let w = build_w_block(&e(3, 0), &e(3, 2), 2).unwrap();
        let mut marginal = CMatrix::<f64>::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                for r in 0..3 {
                    marginal[(i, j)] += w[(i * 3 + r, j * 3 + r)];
                }
            }
        }
        let want = outer(&e(3, 0), &e(3, 2));
        assert!(linalg::max_abs(&(marginal - want)) < 1e-15);
    }

    #[test]
    fn w_block_rejects_non_orthogonal_pairs() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = CVector::from_vec(vec![re(h), re(h)]);
        assert!(matches!(
            build_w_block(&e(2, 0), &plus, 2),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            build_w_block(&e(2, 0), &e(2, 1), 0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn w_block_respects_size_guard() {
        assert!(matches!(
            build_w_block(&e(2, 0), &e(2, 1), 13),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn one_copy_source_is_the_state_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let st = PureState::<f64>::random(3, 2, &mut rng);
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        for op in [
            build_source_1xs(&sd, 1).unwrap(),
            build_source_sx1(&sd, 1).unwrap(),
        ] {
            assert!(linalg::max_abs(&(op.matrix() - st.projector())) < 1e-12);
        }
    }

    #[test]
    fn bell_state_two_copy_source() {
        let st = maximally_entangled::<f64>(2);
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        let t12 = build_source_1xs(&sd, 2).unwrap();
        let t21 = build_source_sx1(&sd, 2).unwrap();
        assert_eq!(t12.matrix().shape(), (8, 8));
        let n12 = t12.trace_norm().unwrap();
        let n21 = t21.trace_norm().unwrap();
        assert!((1.0..=3.0).contains(&n12), "{n12}");
        assert_abs_diff_eq!(n12, n21, epsilon = 1e-12);
    }

    #[test]
    fn product_state_source_is_positive_with_unit_norm() {
        let st = PureState::product(&e(3, 1), &e(2, 0)).unwrap();
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        for s in 1..=3 {
            let op = build_source_1xs(&sd, s).unwrap();
            assert!(hermitian_eigenvalues(op.matrix())[0] > -1e-14);
            assert_abs_diff_eq!(op.trace_norm().unwrap(), 1.0, epsilon = 1e-12);
            let op = build_source_sx1(&sd, s).unwrap();
            assert_abs_diff_eq!(op.trace_norm().unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn dilation_residuals() {
        let st = maximally_entangled::<f64>(2);
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        let t11 = build_source_1xs(&sd, 1).unwrap();
        assert!(verify_dilation(&t11, &st, 10, 0).unwrap() <= 1e-12);
        let t12 = build_source_1xs(&sd, 2).unwrap();
        assert!(verify_dilation(&t12, &st, 20, 0).unwrap() <= 1e-9);

        let mut m = t12.into_matrix();
        m[(0, 0)] += re(1e-3);
        let corrupted = SourceOperator::from_matrix(1, 2, 2, 2, m).unwrap();
        assert!(corrupted.check_invariants().is_err());
        assert!(verify_dilation(&corrupted, &st, 20, 0).unwrap() > 1e-4);
    }

    #[test]
    fn dilation_rejects_mismatched_state() {
        let sd = schmidt_decompose(&maximally_entangled::<f64>(2), 1e-12).unwrap();
        let op = build_source_1xs(&sd, 2).unwrap();
        assert!(matches!(
            verify_dilation(&op, &maximally_entangled::<f64>(3), 1, 0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn trace_norm_examples() {
        assert_abs_diff_eq!(trace_norm(&CMatrix::<f64>::identity(4, 4)).unwrap(), 4.0);
        let mut d = CMatrix::<f64>::zeros(2, 2);
        d[(0, 0)] = re(0.5);
        d[(1, 1)] = re(-0.5);
        assert_abs_diff_eq!(trace_norm(&d).unwrap(), 1.0, epsilon = 1e-15);
        let mut n = CMatrix::<f64>::zeros(2, 2);
        n[(0, 1)] = re(1.0);
        assert!(matches!(trace_norm(&n), Err(Error::Validation(_))));
    }
}
