//! Pure bipartite states, Schmidt analysis and reduced states.
//!
//! A [`PureState`] stores the amplitude matrix `A` of
//! `|ψ⟩ = Σ_ij A_ij |i⟩⊗|j⟩`. The Schmidt decomposition is the singular value
//! decomposition `A = U Σ V†`: left Schmidt vectors are the columns of `U`,
//! right Schmidt vectors the rows of `V†` read as column vectors.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, frobenius_sq, hermitian_defect, hermitian_eigenvalues, inner};
use crate::scalar::{lit, re, to_f64, tol, CMatrix, CVector, Cx, Real};

/// Singular values at or below this are dropped from the Schmidt rank.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-12;

const NORM_TOL: f64 = 1e-12;
const SCHMIDT_TOL: f64 = 1e-10;
const GRAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: CMatrix<T>,
}

impl<T: Real> PureState<T> {
    /// Wraps an amplitude matrix, rejecting it unless its squared Frobenius
    /// norm is 1 within `1e-12`.
    pub fn new(amplitudes: CMatrix<T>) -> Result<Self> {
        if amplitudes.nrows() == 0 || amplitudes.ncols() == 0 {
            return Err(Error::Validation(
                "state dimensions must be at least 1".into(),
            ));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Validation("amplitudes must be finite".into()));
        }
        let deficit = frobenius_sq(&amplitudes) - T::one();
        if deficit.abs() > tol::<T>(NORM_TOL) {
            return Err(Error::Validation(format!(
                "state is not normalized: squared norm differs from 1 by {:e}",
                to_f64(deficit)
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: CMatrix<T>) -> Result<Self> {
        let n = frobenius_sq(&amplitudes).sqrt();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::Validation(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        Self::new(amplitudes.map(|z| z.unscale(n)))
    }

    /// Builds a state from its vector in the product basis, index `i * d2 + j`.
    pub fn from_vector(d1: usize, d2: usize, vector: &[Cx<T>]) -> Result<Self> {
        if vector.len() != d1 * d2 {
            return Err(Error::Argument(format!(
                "vector of length {} does not match dimensions {d1}x{d2}",
                vector.len()
            )));
        }
        Self::new(CMatrix::from_row_slice(d1, d2, vector))
    }

    /// `|u⟩⊗|v⟩`
    pub fn product(u: &CVector<T>, v: &CVector<T>) -> Result<Self> {
        Self::new(u * v.transpose())
    }

    /// Haar-random pure state on `C^d1 ⊗ C^d2`.
    pub fn random<R: Rng + ?Sized>(d1: usize, d2: usize, rng: &mut R) -> Self {
        loop {
            let g = CMatrix::from_fn(d1, d2, |_, _| {
                Cx::new(linalg::gaussian(rng), linalg::gaussian(rng))
            });
            if let Ok(s) = Self::normalized(g) {
                return s;
            }
        }
    }

    pub fn d1(&self) -> usize {
        self.amplitudes.nrows()
    }

    pub fn d2(&self) -> usize {
        self.amplitudes.ncols()
    }

    pub fn amplitudes(&self) -> &CMatrix<T> {
        &self.amplitudes
    }

    pub fn to_vector(&self) -> CVector<T> {
        let (d1, d2) = (self.d1(), self.d2());
        CVector::from_fn(d1 * d2, |k, _| self.amplitudes[(k / d2, k % d2)])
    }

    /// `|ψ⟩⟨ψ|` on the joint space.
    pub fn projector(&self) -> CMatrix<T> {
        let v = self.to_vector();
        linalg::outer(&v, &v)
    }

    /// `|⟨self|other⟩|²`; states of different shape have fidelity 0.
    pub fn fidelity(&self, other: &Self) -> T {
        if self.amplitudes.shape() != other.amplitudes.shape() {
            return T::zero();
        }
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .fold(Cx::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
            .norm_sqr()
    }
}

/// Schmidt coefficients `√λ_k` (descending) with their local bases.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtData<T: Real> {
    coefficients: Vec<T>,
    left_basis: Vec<CVector<T>>,
    right_basis: Vec<CVector<T>>,
    truncation_tol: T,
    d1: usize,
    d2: usize,
}

impl<T: Real> SchmidtData<T> {
    /// Schmidt data in the computational bases, as if for
    /// `Σ_k c_k |k⟩⊗|k⟩`. Coefficients are sorted; zeros are dropped.
    pub fn from_coefficients(coefficients: &[T]) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Validation(
                "at least one Schmidt coefficient is required".into(),
            ));
        }
        if coefficients
            .iter()
            .any(|c| !c.is_finite() || *c < T::zero())
        {
            return Err(Error::Validation(
                "Schmidt coefficients must be finite and nonnegative".into(),
            ));
        }
        let total = coefficients.iter().fold(T::zero(), |a, &c| a + c * c);
        if (total - T::one()).abs() > tol::<T>(SCHMIDT_TOL) {
            return Err(Error::Validation(format!(
                "squared Schmidt coefficients sum to {} instead of 1",
                to_f64(total)
            )));
        }
        let d = coefficients.len();
        let mut sorted: Vec<T> = coefficients
            .iter()
            .copied()
            .filter(|c| *c > T::zero())
            .collect();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        let basis: Vec<CVector<T>> = (0..sorted.len())
            .map(|k| linalg::basis_vector(d, k))
            .collect();
        Ok(Self {
            coefficients: sorted,
            left_basis: basis.clone(),
            right_basis: basis,
            truncation_tol: T::zero(),
            d1: d,
            d2: d,
        })
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// Reduced-state eigenvalues `λ_k`.
    pub fn lambdas(&self) -> Vec<T> {
        self.coefficients.iter().map(|&c| c * c).collect()
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn left_basis(&self) -> &[CVector<T>] {
        &self.left_basis
    }

    pub fn right_basis(&self) -> &[CVector<T>] {
        &self.right_basis
    }

    pub fn truncation_tol(&self) -> T {
        self.truncation_tol
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    /// `Σ_k √λ_k e_k ⊗ e'_k` as an amplitude matrix.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let mut a = CMatrix::zeros(self.d1, self.d2);
        for ((c, u), v) in self
            .coefficients
            .iter()
            .zip(&self.left_basis)
            .zip(&self.right_basis)
        {
            a += (u * v.transpose()).map(|z| z.scale(*c));
        }
        a
    }

    pub fn to_state(&self) -> Result<PureState<T>> {
        PureState::new(self.reconstruct())
    }
}

/// Schmidt decomposition by SVD of the amplitude matrix.
///
/// Coefficients `≤ truncation_tol` are discarded; the rest are reported
/// without renormalization. Each left basis vector has its first nonzero
/// entry made real and nonnegative, with the compensating phase moved to
/// the right vector.
pub fn schmidt_decompose<T: Real>(
    state: &PureState<T>,
    truncation_tol: T,
) -> Result<SchmidtData<T>> {
    let deficit = frobenius_sq(state.amplitudes()) - T::one();
    if deficit.abs() > tol::<T>(NORM_TOL) {
        return Err(Error::Validation(format!(
            "state is not normalized: squared norm differs from 1 by {:e}",
            to_f64(deficit)
        )));
    }
    if !(truncation_tol >= T::zero() && truncation_tol < T::one()) {
        return Err(Error::Argument(
            "truncation tolerance must lie in [0, 1)".into(),
        ));
    }
    let (d1, d2) = (state.d1(), state.d2());
    let svd = state.amplitudes().clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let phase_floor = tol::<T>(1e-12);
    let mut coefficients = Vec::new();
    let mut left_basis = Vec::new();
    let mut right_basis = Vec::new();
    for k in order {
        let sigma = svd.singular_values[k];
        if sigma <= truncation_tol {
            continue;
        }
        let mut left: CVector<T> = u.column(k).into_owned();
        let mut right: CVector<T> = v_t.row(k).transpose();
        if let Some(&z) = left.iter().find(|z| z.norm_sqr().sqrt() > phase_floor) {
            let phase = z.unscale(z.norm_sqr().sqrt());
            left = left.map(|w| w * phase.conj());
            right = right.map(|w| w * phase);
        }
        coefficients.push(sigma);
        left_basis.push(left);
        right_basis.push(right);
    }
    if coefficients.is_empty() {
        return Err(Error::Argument(format!(
            "truncation tolerance {:e} discards every Schmidt coefficient",
            to_f64(truncation_tol)
        )));
    }
    Ok(SchmidtData {
        coefficients,
        left_basis,
        right_basis,
        truncation_tol,
        d1,
        d2,
    })
}

/// `(Σ_k √λ_k)²`
pub fn schmidt_sum_squared<T: Real>(schmidt: &SchmidtData<T>) -> T {
    let s = schmidt.coefficients.iter().fold(T::zero(), |a, &c| a + c);
    s * s
}

/// Which tensor factor a reduced state lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    First,
    Second,
}

impl TryFrom<u8> for Site {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Site::First),
            2 => Ok(Site::Second),
            other => Err(Error::Argument(format!("site must be 1 or 2, got {other}"))),
        }
    }
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T: Real> {
    matrix: CMatrix<T>,
}

impl<T: Real> DensityOperator<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::Validation(
                "density matrix must be square and nonempty".into(),
            ));
        }
        let defect = hermitian_defect(&matrix);
        if defect > tol::<T>(1e-12) {
            return Err(Error::Validation(format!(
                "density matrix is not Hermitian (defect {:e})",
                to_f64(defect)
            )));
        }
        let tr = linalg::trace(&matrix).re;
        if (tr - T::one()).abs() > tol::<T>(1e-10) {
            return Err(Error::Validation(format!(
                "density matrix has trace {}",
                to_f64(tr)
            )));
        }
        let min = hermitian_eigenvalues(&matrix)[0];
        if min < -tol::<T>(1e-10) {
            return Err(Error::Validation(format!(
                "density matrix has negative eigenvalue {:e}",
                to_f64(min)
            )));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let mut v = hermitian_eigenvalues(&self.matrix);
        v.reverse();
        v
    }
}

/// Partial trace over the other site.
pub fn reduced_state<T: Real>(state: &PureState<T>, site: Site) -> Result<DensityOperator<T>> {
    let a = state.amplitudes();
    let m = match site {
        Site::First => a * a.adjoint(),
        Site::Second => (a.adjoint() * a).transpose(),
    };
    // Round-off can leave a ~1e-17 anti-Hermitian residue.
    let m = (&m + m.adjoint()).map(|z| z.scale(lit::<T>(0.5)));
    DensityOperator::new(m)
}

/// Which Bell-like combination of two vectors to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellLikeForm {
    /// `ψ1⊗ψ1 ± ψ2⊗ψ2`
    Diagonal,
    /// `ψ1⊗ψ2 ± ψ2⊗ψ1`
    Crossed,
}

/// `|Ψ_jk⟩`: `j` picks the relative sign (0 → `+`, 1 → `−`) and `k` the
/// pairing (0 → diagonal, 1 → crossed).
///
/// The result is normalized by its exact norm, which for real overlaps is
/// `√(2(1 ± |⟨ψ1|ψ2⟩|²))`.
pub fn bell_like_state<T: Real>(
    v1: &CVector<T>,
    v2: &CVector<T>,
    j: u8,
    k: u8,
) -> Result<PureState<T>> {
    let minus = match j {
        0 => false,
        1 => true,
        other => {
            return Err(Error::Argument(format!(
                "sign index j must be 0 or 1, got {other}"
            )))
        }
    };
    let form = match k {
        0 => BellLikeForm::Diagonal,
        1 => BellLikeForm::Crossed,
        other => {
            return Err(Error::Argument(format!(
                "form index k must be 0 or 1, got {other}"
            )))
        }
    };
    if v1.len() != v2.len() || v1.is_empty() {
        return Err(Error::Argument(
            "vectors must share a nonzero dimension".into(),
        ));
    }
    for (name, v) in [("v1", v1), ("v2", v2)] {
        let n = linalg::vector_norm(v);
        if (n - T::one()).abs() > tol::<T>(1e-10) {
            return Err(Error::Validation(format!(
                "{name} is not normalized (norm {})",
                to_f64(n)
            )));
        }
    }
    let overlap = inner(v1, v2);
    let gram = T::one() - overlap.norm_sqr();
    if gram <= tol::<T>(GRAM_TOL) {
        return Err(Error::Degeneracy(format!(
            "vectors are linearly dependent (Gram determinant {:e})",
            to_f64(gram)
        )));
    }
    let (a, b) = match form {
        BellLikeForm::Diagonal => (v1 * v1.transpose(), v2 * v2.transpose()),
        BellLikeForm::Crossed => (v1 * v2.transpose(), v2 * v1.transpose()),
    };
    let sum = if minus { a - b } else { a + b };
    PureState::normalized(sum)
}

/// Maximally entangled `Σ_k |k⟩⊗|k⟩ / √d`.
pub fn maximally_entangled<T: Real>(d: usize) -> PureState<T> {
    let c = re(T::one() / lit::<T>(d as f64).sqrt());
    PureState::new(CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            c
        } else {
            re(T::zero())
        }
    }))
    .expect("maximally entangled state is normalized")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn real_state(d1: usize, d2: usize, rows: &[f64]) -> PureState<f64> {
        PureState::new(CMatrix::from_row_slice(
            d1,
            d2,
            &rows.iter().map(|&x| re(x)).collect::<Vec<_>>(),
        ))
        .unwrap()
    }

    #[test]
    fn bell_state_has_two_equal_coefficients() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = schmidt_decompose(&real_state(2, 2, &[h, 0.0, 0.0, h]), 1e-12).unwrap();
        assert_eq!(s.rank(), 2);
        assert_abs_diff_eq!(s.coefficients()[0], h, epsilon = 1e-14);
        assert_abs_diff_eq!(s.coefficients()[1], h, epsilon = 1e-14);
    }

    #[test]
    fn product_state_has_rank_one() {
        let s = schmidt_decompose(&real_state(2, 2, &[1.0, 0.0, 0.0, 0.0]), 1e-12).unwrap();
        assert_eq!(s.rank(), 1);
        assert_abs_diff_eq!(s.coefficients()[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn unnormalized_state_reports_norm_deficit() {
        let m = CMatrix::from_row_slice(1, 2, &[re(1.0), re(0.5)]);
        let err = PureState::<f64>::new(m).unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("2.5e-1"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn truncation_that_removes_everything_is_rejected() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let st = real_state(2, 2, &[h, 0.0, 0.0, h]);
        assert!(matches!(
            schmidt_decompose(&st, 0.9),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            schmidt_decompose(&st, 1.0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn left_basis_phase_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let st = PureState::<f64>::random(3, 4, &mut rng);
        let s = schmidt_decompose(&st, 1e-12).unwrap();
        for u in s.left_basis() {
            let first = u.iter().find(|z| z.norm() > 1e-12).unwrap();
            assert!(first.im.abs() < 1e-14 && first.re > 0.0);
        }
        assert!(linalg::max_abs(&(s.reconstruct() - st.amplitudes())) < 1e-12);
    }

    #[test]
    fn reduced_states_of_simple_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = real_state(2, 2, &[h, 0.0, 0.0, h]);
        let r = reduced_state(&bell, Site::First).unwrap();
        assert!(linalg::max_abs(&(r.matrix() - CMatrix::identity(2, 2).map(|z| z * 0.5))) < 1e-15);

        let prod = real_state(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let r = reduced_state(&prod, Site::Second).unwrap();
        assert_abs_diff_eq!(r.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.eigenvalues()[1], 0.0, epsilon = 1e-15);
        assert!(Site::try_from(3).is_err());
    }

    #[test]
    fn schmidt_sum_squared_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let one = SchmidtData::from_coefficients(&[1.0]).unwrap();
        let max = SchmidtData::from_coefficients(&[h, h]).unwrap();
        let mid = SchmidtData::from_coefficients(&[0.6, 0.8]).unwrap();
        assert_abs_diff_eq!(schmidt_sum_squared(&one), 1.0);
        assert_abs_diff_eq!(schmidt_sum_squared(&max), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(schmidt_sum_squared(&mid), 1.96, epsilon = 1e-15);
        assert_eq!(mid.coefficients(), &[0.8, 0.6]);
    }

    #[test]
    fn bell_like_from_orthogonal_vectors_is_bell_state() {
        let e0 = linalg::basis_vector::<f64>(2, 0);
        let e1 = linalg::basis_vector::<f64>(2, 1);
        let st = bell_like_state(&e0, &e1, 0, 0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = real_state(2, 2, &[h, 0.0, 0.0, h]);
        assert!(linalg::max_abs(&(st.amplitudes() - want.amplitudes())) < 1e-15);
    }

    #[test]
    fn antisymmetric_combination_is_maximally_entangled() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e0 = linalg::basis_vector::<f64>(2, 0);
        let plus = CVector::from_vec(vec![re(h), re(h)]);
        let st = bell_like_state(&e0, &plus, 1, 1).unwrap();
        let s = schmidt_decompose(&st, 1e-12).unwrap();
        assert_eq!(s.rank(), 2);
        assert_abs_diff_eq!(s.coefficients()[0], h, epsilon = 1e-12);
        assert_abs_diff_eq!(s.coefficients()[1], h, epsilon = 1e-12);
    }

    #[test]
    fn bell_like_rejects_dependent_inputs() {
        let e0 = linalg::basis_vector::<f64>(2, 0);
        let phased = e0.map(|z| z * cx(0.0, 1.0));
        assert!(matches!(
            bell_like_state(&e0, &phased, 0, 1),
            Err(Error::Degeneracy(_))
        ));
        assert!(matches!(
            bell_like_state(&e0, &e0, 2, 0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn single_precision_schmidt() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let st = PureState::<f32>::random(3, 3, &mut rng);
        let s = schmidt_decompose(&st, 1e-6).unwrap();
        let total: f32 = s.lambdas().iter().sum();
        assert!((total - 1.0).abs() < 1e-5);
    }
}
