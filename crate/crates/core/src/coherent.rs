//! Entangled states built from the binary coherent states `|α⟩`, `|−α⟩`.
//!
//! ```text
//! Φ1 ∝ |α,α⟩ + |−α,−α⟩      Φ2 ∝ |α,−α⟩ + |−α,α⟩
//! Φ3 ∝ |α,α⟩ − |−α,−α⟩      Φ4 ∝ |α,−α⟩ − |−α,α⟩
//! ```
//!
//! With `x = ⟨α|−α⟩ = e^{−2α²}` each family lives on the two-dimensional span
//! of `u1 = |α⟩` and `u2 = (|−α⟩ − x|α⟩)/√(1−x²)`, where the amplitudes and
//! reduced spectra have closed forms. The Fock-space representation is kept
//! alongside so both routes can be compared.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg;
use crate::qstate::PureState;
use crate::scalar::{lit, re, to_f64, CMatrix, CVector, Real};

/// Default bound on the Poisson mass dropped by a Fock cutoff.
pub const DEFAULT_TAIL_TOL: f64 = 1e-14;

/// Smallest cutoff chosen by [`FockTruncation::auto`].
pub const MIN_AUTO_CUTOFF: usize = 16;

/// Largest cutoff [`FockTruncation::auto`] will select.
pub const MAX_AUTO_CUTOFF: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    One,
    Two,
    Three,
    Four,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::One, Family::Two, Family::Three, Family::Four];

    pub fn index(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
            Family::Three => 3,
            Family::Four => 4,
        }
    }

    /// Families 3 and 4 are the antisymmetric-sign combinations.
    fn is_odd(self) -> bool {
        matches!(self, Family::Three | Family::Four)
    }
}

impl TryFrom<u8> for Family {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Family::One),
            2 => Ok(Family::Two),
            3 => Ok(Family::Three),
            4 => Ok(Family::Four),
            other => Err(Error::Argument(format!(
                "coherent family must be 1..=4, got {other}"
            ))),
        }
    }
}

/// One of the four families at a fixed `α > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentFamily<T: Real> {
    family: Family,
    alpha: T,
}

impl<T: Real> CoherentFamily<T> {
    pub fn new(family: Family, alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::Argument(format!(
                "alpha must be finite and positive, got {}",
                to_f64(alpha)
            )));
        }
        Ok(Self { family, alpha })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `x = e^{−2α²}`
    pub fn overlap(&self) -> T {
        overlap(self.alpha)
    }
}

fn overlap<T: Real>(alpha: T) -> T {
    (-lit::<T>(2.0) * alpha * alpha).exp()
}

/// `1 − e^{−4α²}` without cancellation at small `α`.
fn one_minus_overlap_sq<T: Real>(alpha: T) -> T {
    -(-lit::<T>(4.0) * alpha * alpha).exp_m1()
}

/// `e^{−α²} Σ_{m>N} α^{2m}/m!`, the probability mass above the cutoff.
pub fn poisson_tail<T: Real>(alpha: T, cutoff: usize) -> T {
    let mean = alpha * alpha;
    let mut term = (-mean).exp();
    let mut tail = T::zero();
    let mut m = 0usize;
    loop {
        if m > cutoff {
            tail += term;
            if term <= tail * lit::<T>(1e-18) && lit::<T>(m as f64) > mean {
                break;
            }
        }
        m += 1;
        if m > cutoff + 100_000 {
            break;
        }
        term = term * mean / lit::<T>(m as f64);
        if term == T::zero() && m > cutoff {
            break;
        }
    }
    tail
}

/// A Fock-space cutoff `N` (basis `|0⟩..|N⟩`) and the tail mass it drops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockTruncation<T: Real> {
    cutoff: usize,
    tail_bound: T,
    tolerance: T,
}

impl<T: Real> FockTruncation<T> {
    /// Smallest `N ≥ 16` whose tail for `alpha` is below `tolerance`.
    pub fn auto(alpha: T, tolerance: T) -> Result<Self> {
        let mut n = MIN_AUTO_CUTOFF;
        loop {
            let tail = poisson_tail(alpha, n);
            if tail < tolerance {
                return Ok(Self {
                    cutoff: n,
                    tail_bound: tail,
                    tolerance,
                });
            }
            n += 1;
            if n > MAX_AUTO_CUTOFF {
                return Err(Error::Capacity(format!(
                    "no Fock cutoff up to {MAX_AUTO_CUTOFF} reaches tail tolerance {:e} at alpha {}",
                    to_f64(tolerance),
                    to_f64(alpha)
                )));
            }
        }
    }

    /// A fixed cutoff, refused if its tail for `alpha` exceeds `tolerance`.
    pub fn fixed(alpha: T, cutoff: usize, tolerance: T) -> Result<Self> {
        let tail = poisson_tail(alpha, cutoff);
        if tail > tolerance {
            return Err(Error::Capacity(format!(
                "Fock cutoff {cutoff} leaves tail mass {:e} above tolerance {:e}",
                to_f64(tail),
                to_f64(tolerance)
            )));
        }
        Ok(Self {
            cutoff,
            tail_bound: tail,
            tolerance,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Number of Fock levels kept, `N + 1`.
    pub fn levels(&self) -> usize {
        self.cutoff + 1
    }

    pub fn tail_bound(&self) -> T {
        self.tail_bound
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Truncated, renormalized coherent state with its pre-renormalization norm.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T: Real> {
    pub amplitudes: CVector<T>,
    pub raw_norm: T,
}

/// `|±α⟩` in the Fock basis up to the cutoff, renormalized to unit norm.
pub fn coherent_fock_vector<T: Real>(
    sign: Sign,
    alpha: T,
    trunc: &FockTruncation<T>,
) -> Result<FockVector<T>> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::Argument("alpha must be finite and positive".into()));
    }
    let tail = poisson_tail(alpha, trunc.cutoff);
    if tail > trunc.tolerance {
        return Err(Error::Capacity(format!(
            "Fock cutoff {} leaves tail mass {:e} at alpha {} above tolerance {:e}",
            trunc.cutoff,
            to_f64(tail),
            to_f64(alpha),
            to_f64(trunc.tolerance)
        )));
    }
    let step = match sign {
        Sign::Plus => alpha,
        Sign::Minus => -alpha,
    };
    let mut entries = Vec::with_capacity(trunc.levels());
    let mut c = (-alpha * alpha / lit::<T>(2.0)).exp();
    entries.push(c);
    for m in 1..=trunc.cutoff {
        c = c * step / lit::<T>(m as f64).sqrt();
        entries.push(c);
    }
    let raw_norm = entries.iter().fold(T::zero(), |a, &e| a + e * e).sqrt();
    let amplitudes =
        DVector::from_iterator(entries.len(), entries.into_iter().map(|e| re(e / raw_norm)));
    Ok(FockVector {
        amplitudes,
        raw_norm,
    })
}

/// Orthonormal basis `(u1, u2)` of `span{|α⟩, |−α⟩}` by Gram–Schmidt.
pub fn gram_schmidt_basis<T: Real>(
    alpha: T,
    trunc: &FockTruncation<T>,
) -> Result<(CVector<T>, CVector<T>)> {
    if !(alpha > T::zero()) {
        return Err(Error::Argument("alpha must be positive".into()));
    }
    let gap = one_minus_overlap_sq(alpha);
    if gap < lit::<T>(1e-14) {
        return Err(Error::Degeneracy(format!(
            "alpha {} is too small: 1 - exp(-4 alpha^2) = {:e}",
            to_f64(alpha),
            to_f64(gap)
        )));
    }
    let u1 = coherent_fock_vector(Sign::Plus, alpha, trunc)?.amplitudes;
    let minus = coherent_fock_vector(Sign::Minus, alpha, trunc)?.amplitudes;
    let proj = linalg::inner(&u1, &minus);
    let residual = &minus - u1.map(|z| z * proj);
    let n = linalg::vector_norm(&residual);
    Ok((u1, residual.map(|z| z.unscale(n))))
}

/// Exact amplitudes of a family in the `{u1, u2} ⊗ {u1, u2}` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeAmplitudes<T: Real> {
    pub matrix: CMatrix<T>,
    pub overlap_x: T,
}

pub fn two_mode_amplitudes<T: Real>(fam: &CoherentFamily<T>) -> TwoModeAmplitudes<T> {
    let x = fam.overlap();
    let gap = one_minus_overlap_sq(fam.alpha);
    let s = gap.sqrt();
    let two = lit::<T>(2.0);
    let (entries, norm) = match fam.family {
        Family::One => (
            [T::one() + x * x, x * s, x * s, gap],
            (two * (T::one() + x * x)).sqrt(),
        ),
        Family::Two => (
            [two * x, s, s, T::zero()],
            (two * (T::one() + x * x)).sqrt(),
        ),
        Family::Three => ([gap, -x * s, -x * s, -gap], (two * gap).sqrt()),
        Family::Four => ([T::zero(), T::one(), -T::one(), T::zero()], two.sqrt()),
    };
    let matrix = CMatrix::from_row_slice(2, 2, &entries.map(|e| re(e / norm)));
    TwoModeAmplitudes {
        matrix,
        overlap_x: x,
    }
}

/// Nonzero reduced-state eigenvalues `(λ+, λ−)`.
pub fn reduced_eigenvalues<T: Real>(fam: &CoherentFamily<T>) -> (T, T) {
    if fam.family.is_odd() {
        let h = lit::<T>(0.5);
        return (h, h);
    }
    let x = fam.overlap();
    // 1 − x computed as −expm1(−2α²) keeps λ− accurate for small α
    let one_minus_x = -(-lit::<T>(2.0) * fam.alpha * fam.alpha).exp_m1();
    let denom = lit::<T>(2.0) * (T::one() + x * x);
    let plus = (T::one() + x) * (T::one() + x) / denom;
    let minus = one_minus_x * one_minus_x / denom;
    (plus, minus)
}

/// `(3 − e^{−4α²})/(1 + e^{−4α²})` for families 1, 2 and `3` for families 3, 4.
pub fn proposition1_bound<T: Real>(fam: &CoherentFamily<T>) -> T {
    if fam.family.is_odd() {
        return lit(3.0);
    }
    let y = fam.overlap() * fam.overlap();
    (lit::<T>(3.0) - y) / (T::one() + y)
}

/// The family's state in the truncated Fock basis `{|0⟩..|N⟩}^{⊗2}`.
pub fn fock_state<T: Real>(
    fam: &CoherentFamily<T>,
    trunc: &FockTruncation<T>,
) -> Result<PureState<T>> {
    let a = coherent_fock_vector(Sign::Plus, fam.alpha, trunc)?.amplitudes;
    let b = coherent_fock_vector(Sign::Minus, fam.alpha, trunc)?.amplitudes;
    let (first, second) = match fam.family {
        Family::One | Family::Three => (&a * a.transpose(), &b * b.transpose()),
        Family::Two | Family::Four => (&a * b.transpose(), &b * a.transpose()),
    };
    let x = fam.overlap();
    let two = lit::<T>(2.0);
    let (sum, norm) = if fam.family.is_odd() {
        (
            first - second,
            (two * one_minus_overlap_sq(fam.alpha)).sqrt(),
        )
    } else {
        (first + second, (two * (T::one() + x * x)).sqrt())
    };
    // The closed-form normalization is exact up to the dropped tail mass.
    PureState::normalized(sum.map(|z| z.unscale(norm)))
}

/// `|⟨β|Φ⟩|²` against the embedded Bell state `(|1,0⟩ ± |0,1⟩)/√2` that
/// families 3 (`+`) and 4 (`−`) approach as `α → 0`.
pub fn bell_limit_fidelity<T: Real>(
    family: Family,
    alpha: T,
    trunc: &FockTruncation<T>,
) -> Result<T> {
    let sign = match family {
        Family::Three => T::one(),
        Family::Four => -T::one(),
        other => {
            return Err(Error::Argument(format!(
                "Bell-state limit exists only for families 3 and 4, got {}",
                other.index()
            )))
        }
    };
    let fam = CoherentFamily::new(family, alpha)?;
    let phi = fock_state(&fam, trunc)?;
    let n = trunc.levels();
    let h = T::one() / lit::<T>(2.0).sqrt();
    let mut bell = CMatrix::zeros(n, n);
    bell[(1, 0)] = re(h);
    bell[(0, 1)] = re(sign * h);
    let bell = PureState::new(bell)?;
    Ok(phi.fidelity(&bell))
}

/// Uniform `α` grid on `[alpha_min, alpha_max]` paired with the family's bound.
pub fn bound_curve<T: Real>(
    family: Family,
    alpha_min: T,
    alpha_max: T,
    steps: usize,
) -> Result<Vec<(T, T)>> {
    if !(alpha_min > T::zero() && alpha_min < alpha_max && alpha_max.is_finite()) {
        return Err(Error::Argument("need 0 < alpha_min < alpha_max".into()));
    }
    if steps < 2 {
        return Err(Error::Argument("need at least 2 grid points".into()));
    }
    let span = alpha_max - alpha_min;
    let last = lit::<T>((steps - 1) as f64);
    (0..steps)
        .map(|i| {
            let alpha = if i + 1 == steps {
                alpha_max
            } else {
                alpha_min + span * lit::<T>(i as f64) / last
            };
            let fam = CoherentFamily::new(family, alpha)?;
            Ok((alpha, proposition1_bound(&fam)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{schmidt_decompose, schmidt_sum_squared, Site};
    use approx::assert_abs_diff_eq;

    fn trunc(alpha: f64) -> FockTruncation<f64> {
        FockTruncation::auto(alpha, DEFAULT_TAIL_TOL).unwrap()
    }

    fn fam(f: Family, alpha: f64) -> CoherentFamily<f64> {
        CoherentFamily::new(f, alpha).unwrap()
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(CoherentFamily::new(Family::One, 0.0).is_err());
        assert!(CoherentFamily::new(Family::One, -1.0).is_err());
        assert!(Family::try_from(5).is_err());
    }

    #[test]
    fn auto_cutoff_respects_minimum_and_tolerance() {
        let t = trunc(0.1);
        assert_eq!(t.cutoff(), MIN_AUTO_CUTOFF);
        let t = trunc(3.0);
        assert!(t.cutoff() > MIN_AUTO_CUTOFF);
        assert!(t.tail_bound() < 1e-14);
        assert!(poisson_tail(3.0, t.cutoff() - 1) >= 1e-14);
    }

    #[test]
    fn small_cutoff_is_a_capacity_error() {
        assert!(matches!(
            FockTruncation::fixed(2.0, 5, 1e-14),
            Err(Error::Capacity(_))
        ));
        let t = FockTruncation::fixed(0.5, 20, 1e-14).unwrap();
        assert!(matches!(
            coherent_fock_vector(Sign::Plus, 3.0, &t),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn small_alpha_vector_approaches_vacuum() {
        let v = coherent_fock_vector(Sign::Plus, 1e-4, &trunc(1e-4)).unwrap();
        assert_abs_diff_eq!(v.amplitudes[0].re, 1.0, epsilon = 1e-8);
        assert!(v.amplitudes[1].re.abs() < 1e-3);
    }

    #[test]
    fn truncated_overlap_matches_closed_form() {
        let t = trunc(1.0);
        let p = coherent_fock_vector(Sign::Plus, 1.0, &t)
            .unwrap()
            .amplitudes;
        let m = coherent_fock_vector(Sign::Minus, 1.0, &t)
            .unwrap()
            .amplitudes;
        assert_abs_diff_eq!(linalg::inner(&p, &m).re, (-2.0f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn raw_norm_at_alpha_two() {
        let t = FockTruncation::fixed(2.0, 40, 1e-14).unwrap();
        let v = coherent_fock_vector(Sign::Minus, 2.0, &t).unwrap();
        assert_abs_diff_eq!(v.raw_norm, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn gram_schmidt_properties() {
        for alpha in [0.2, 0.5, 1.0, 2.0] {
            let (u1, u2) = gram_schmidt_basis(alpha, &trunc(alpha)).unwrap();
            assert!(linalg::inner(&u1, &u2).norm() < 1e-10);
            assert_abs_diff_eq!(linalg::vector_norm(&u2), 1.0, epsilon = 1e-12);
        }
        let t = trunc(0.5);
        let (_, u2) = gram_schmidt_basis(0.5, &t).unwrap();
        let minus = coherent_fock_vector(Sign::Minus, 0.5, &t)
            .unwrap()
            .amplitudes;
        assert_abs_diff_eq!(
            linalg::inner(&u2, &minus).re,
            (1.0 - (-1.0f64).exp()).sqrt(),
            epsilon = 1e-12
        );

        let t = trunc(1.0);
        let (u1, u2) = gram_schmidt_basis(1.0, &t).unwrap();
        let minus = coherent_fock_vector(Sign::Minus, 1.0, &t)
            .unwrap()
            .amplitudes;
        let x = (-2.0f64).exp();
        let rebuilt = u1.map(|z| z * x) + u2.map(|z| z * (1.0 - x * x).sqrt());
        assert!((rebuilt - minus).camax() < 1e-10);

        assert!(matches!(
            gram_schmidt_basis(1e-8, &trunc(1e-8)),
            Err(Error::Degeneracy(_))
        ));
    }

    #[test]
    fn two_mode_family_four_is_singlet_like() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = two_mode_amplitudes(&fam(Family::Four, 0.7)).matrix;
        assert_abs_diff_eq!(m[(0, 1)].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 0)].re, -h, epsilon = 1e-15);
        assert_eq!(m[(0, 0)].re, 0.0);
    }

    #[test]
    fn two_mode_family_one_at_half() {
        let x = (-0.5f64).exp();
        let s = (1.0 - x * x).sqrt();
        let n = (2.0 * (1.0 + x * x)).sqrt();
        let m = two_mode_amplitudes(&fam(Family::One, 0.5)).matrix;
        let want = [1.0 + x * x, x * s, x * s, 1.0 - x * x];
        for (k, w) in want.iter().enumerate() {
            assert_abs_diff_eq!(m[(k / 2, k % 2)].re, w / n, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(linalg::frobenius_sq(&m), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn two_mode_family_two_large_alpha() {
        let m = two_mode_amplitudes(&fam(Family::Two, 5.0)).matrix;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(m[(0, 1)].re, h, epsilon = 1e-12);
        assert!(m[(0, 0)].re < 1e-12);
    }

    #[test]
    fn two_mode_singular_values_match_eigenvalues() {
        for f in Family::ALL {
            for alpha in [0.05, 0.3, 1.0, 2.5] {
                let c = fam(f, alpha);
                let sv = two_mode_amplitudes(&c).matrix.singular_values();
                let (lp, lm) = reduced_eigenvalues(&c);
                let (a, b) = if sv[0] >= sv[1] {
                    (sv[0], sv[1])
                } else {
                    (sv[1], sv[0])
                };
                assert_abs_diff_eq!(a * a, lp, epsilon = 1e-12);
                assert_abs_diff_eq!(b * b, lm, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let (p, m) = reduced_eigenvalues(&fam(Family::One, 0.5));
        assert_abs_diff_eq!(p, 0.943410, epsilon = 1e-6);
        assert_abs_diff_eq!(m, 0.056590, epsilon = 1e-6);
        assert_eq!(reduced_eigenvalues(&fam(Family::Three, 0.9)), (0.5, 0.5));
        let (p, m) = reduced_eigenvalues(&fam(Family::One, 10.0));
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn bound_examples_and_two_routes() {
        assert_abs_diff_eq!(
            proposition1_bound(&fam(Family::One, 1e-6)),
            1.0,
            epsilon = 1e-10
        );
        assert_eq!(proposition1_bound(&fam(Family::Three, 0.2)), 3.0);
        let c = fam(Family::One, 0.5);
        let e = (-1.0f64).exp();
        assert_abs_diff_eq!(
            proposition1_bound(&c),
            (3.0 - e) / (1.0 + e),
            epsilon = 1e-15
        );
        let (p, m) = reduced_eigenvalues(&c);
        assert_abs_diff_eq!(
            proposition1_bound(&c),
            1.0 + 4.0 * (p * m).sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn fock_state_schmidt_matches_closed_form() {
        let c = fam(Family::One, 0.5);
        let st = fock_state(&c, &trunc(0.5)).unwrap();
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        let (p, m) = reduced_eigenvalues(&c);
        assert_eq!(sd.rank(), 2);
        assert_abs_diff_eq!(sd.coefficients()[0], p.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(sd.coefficients()[1], m.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(
            2.0 * schmidt_sum_squared(&sd) - 1.0,
            proposition1_bound(&c),
            epsilon = 1e-8
        );
    }

    #[test]
    fn family_four_fock_state_is_maximally_entangled() {
        let st = fock_state(&fam(Family::Four, 1.0), &trunc(1.0)).unwrap();
        let sd = schmidt_decompose(&st, 1e-12).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(sd.rank(), 2);
        assert_abs_diff_eq!(sd.coefficients()[0], h, epsilon = 1e-10);
        assert_abs_diff_eq!(sd.coefficients()[1], h, epsilon = 1e-10);
        let r = crate::qstate::reduced_state(&st, Site::First)
            .unwrap()
            .eigenvalues();
        assert_abs_diff_eq!(r[0], 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(r[1], 0.5, epsilon = 1e-10);
    }

    #[test]
    fn family_one_approaches_vacuum_product() {
        let alpha = 1e-3;
        let t = trunc(alpha);
        let st = fock_state(&fam(Family::One, alpha), &t).unwrap();
        let mut vac = CMatrix::zeros(t.levels(), t.levels());
        vac[(0, 0)] = re(1.0);
        let vac = PureState::new(vac).unwrap();
        assert!(st.fidelity(&vac) > 1.0 - 1e-5);
    }

    #[test]
    fn bell_limit_fidelity_examples() {
        let oracle = |a: f64| {
            let o = 2.0 * a * (-a * a).exp() / (1.0 - (-4.0 * a * a).exp()).sqrt();
            o * o
        };
        for (f, a) in [
            (Family::Three, 0.1),
            (Family::Four, 0.1),
            (Family::Three, 2.0),
        ] {
            let v = bell_limit_fidelity(f, a, &trunc(a)).unwrap();
            assert_abs_diff_eq!(v, oracle(a), epsilon = 1e-12);
        }
        assert!(bell_limit_fidelity(Family::Three, 0.1, &trunc(0.1)).unwrap() >= 0.999);
        assert!(bell_limit_fidelity(Family::Three, 2.0, &trunc(2.0)).unwrap() < 0.9);
        assert!(bell_limit_fidelity(Family::One, 0.1, &trunc(0.1)).is_err());
    }

    #[test]
    fn curve_shapes() {
        let c = bound_curve::<f64>(Family::One, 0.01, 3.0, 300).unwrap();
        assert_eq!(c.len(), 300);
        assert!(c.windows(2).all(|w| w[1].1 >= w[0].1));
        assert!((c[0].1 - 1.0).abs() < 1e-3);
        assert!((c[299].1 - 3.0).abs() < 1e-6);
        assert_eq!(c[299].0, 3.0);
        assert!(bound_curve(Family::Three, 0.01, 3.0, 10)
            .unwrap()
            .iter()
            .all(|p| p.1 == 3.0));
        assert!(bound_curve::<f64>(Family::One, 0.0, 3.0, 10).is_err());
        assert!(bound_curve::<f64>(Family::One, 1.0, 3.0, 1).is_err());
    }
}
