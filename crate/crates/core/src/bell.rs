//! Finite-outcome Bell scenarios.
//!
//! A [`BellFunctional`] assigns a real weight `φ(x, y, a, b)` to every pair of
//! settings `(x, y)` and outcome indices `(a, b)`. Its classical range is
//! found by enumerating deterministic strategies; its quantum value for a
//! state and an [`Assemblage`] of local POVMs follows from the Born rule.
//! [`seesaw_maximize`] searches for large quantum values of two-outcome
//! functionals and [`certify`] compares the resulting violation ratio with
//! the Schmidt-coefficient bound.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{general_state_bound, quantum_band, theorem3_bound, Band, Dim};
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_defect, hermitian_eigenvalues, nonnegative_projector};
use crate::qstate::{schmidt_decompose, PureState};
use crate::scalar::{lit, re, to_f64, tol, CMatrix, Real};

/// Deterministic strategies enumerated before giving up.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

/// `|b_lhv|` below this makes the violation ratio undefined.
pub const DEGENERATE_LHV: f64 = 1e-12;

/// Slack allowed between a ratio and the bound it is certified against.
pub const CERTIFY_SLACK: f64 = 1e-6;

const POVM_TOL: f64 = 1e-10;

/// Ordered, distinct outcome labels of one site.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeSet<T: Real> {
    labels: Vec<T>,
}

impl<T: Real> OutcomeSet<T> {
    pub fn new(labels: Vec<T>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::Validation(
                "an outcome set needs at least two labels".into(),
            ));
        }
        if labels.iter().any(|l| !l.is_finite()) {
            return Err(Error::Validation("outcome labels must be finite".into()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Validation(format!(
                    "duplicate outcome label {}",
                    to_f64(*a)
                )));
            }
        }
        Ok(Self { labels })
    }

    /// `{+1, −1}`
    pub fn binary() -> Self {
        Self {
            labels: vec![T::one(), -T::one()],
        }
    }

    pub fn labels(&self) -> &[T] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Coefficients `φ(x, y, a, b)` of a linear Bell functional.
#[derive(Debug, Clone, PartialEq)]
pub struct BellFunctional<T: Real> {
    s1: usize,
    s2: usize,
    outcomes1: OutcomeSet<T>,
    outcomes2: OutcomeSet<T>,
    phi: Vec<T>,
}

impl<T: Real> BellFunctional<T> {
    /// `phi` is flattened in `(x, y, a, b)` row-major order.
    pub fn new(
        s1: usize,
        s2: usize,
        outcomes1: OutcomeSet<T>,
        outcomes2: OutcomeSet<T>,
        phi: Vec<T>,
    ) -> Result<Self> {
        if s1 == 0 || s2 == 0 {
            return Err(Error::Validation("settings counts must be positive".into()));
        }
        let want = s1 * s2 * outcomes1.len() * outcomes2.len();
        if phi.len() != want {
            return Err(Error::Validation(format!(
                "coefficient tensor has {} entries, expected {s1}x{s2}x{}x{} = {want}",
                phi.len(),
                outcomes1.len(),
                outcomes2.len()
            )));
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("coefficients must be finite".into()));
        }
        Ok(Self {
            s1,
            s2,
            outcomes1,
            outcomes2,
            phi,
        })
    }

    /// From a tensor nested setting1 → setting2 → outcome1 → outcome2.
    pub fn from_nested(
        phi: &[Vec<Vec<Vec<T>>>],
        outcomes1: OutcomeSet<T>,
        outcomes2: OutcomeSet<T>,
    ) -> Result<Self> {
        let s1 = phi.len();
        let s2 = phi.first().map_or(0, |row| row.len());
        let (m1, m2) = (outcomes1.len(), outcomes2.len());
        let mut flat = Vec::with_capacity(s1 * s2 * m1 * m2);
        for (x, row) in phi.iter().enumerate() {
            if row.len() != s2 {
                return Err(Error::Validation(format!(
                    "setting {x} has {} entries, expected {s2}",
                    row.len()
                )));
            }
            for (y, block) in row.iter().enumerate() {
                if block.len() != m1 || block.iter().any(|r| r.len() != m2) {
                    return Err(Error::Validation(format!(
                        "settings ({x}, {y}) do not hold a {m1}x{m2} outcome table"
                    )));
                }
                flat.extend(block.iter().flatten().copied());
            }
        }
        Self::new(s1, s2, outcomes1, outcomes2, flat)
    }

    /// `φ(x, y, a, b) = c[x][y] · λa · λb` with `±1` outcomes at both sites.
    pub fn correlation(coefficients: &DMatrix<T>) -> Result<Self> {
        let (s1, s2) = coefficients.shape();
        let o = OutcomeSet::binary();
        let mut phi = Vec::with_capacity(s1 * s2 * 4);
        for x in 0..s1 {
            for y in 0..s2 {
                for &la in o.labels() {
                    for &lb in o.labels() {
                        phi.push(coefficients[(x, y)] * la * lb);
                    }
                }
            }
        }
        Self::new(s1, s2, o.clone(), o, phi)
    }

    /// CHSH: correlation coefficients `[[1, 1], [1, −1]]`.
    pub fn chsh() -> Self {
        let c = DMatrix::from_row_slice(2, 2, &[T::one(), T::one(), T::one(), -T::one()]);
        Self::correlation(&c).expect("CHSH functional is well formed")
    }

    #[inline]
    pub fn phi(&self, x: usize, y: usize, a: usize, b: usize) -> T {
        let (m1, m2) = (self.m1(), self.m2());
        self.phi[((x * self.s2 + y) * m1 + a) * m2 + b]
    }

    pub fn coefficients(&self) -> &[T] {
        &self.phi
    }

    pub fn s1(&self) -> usize {
        self.s1
    }

    pub fn s2(&self) -> usize {
        self.s2
    }

    pub fn m1(&self) -> usize {
        self.outcomes1.len()
    }

    pub fn m2(&self) -> usize {
        self.outcomes2.len()
    }

    pub fn outcomes1(&self) -> &OutcomeSet<T> {
        &self.outcomes1
    }

    pub fn outcomes2(&self) -> &OutcomeSet<T> {
        &self.outcomes2
    }

    /// Value of a deterministic strategy, summed in `(x, y)` order.
    pub fn strategy_value(&self, strategy: &Strategy) -> T {
        let mut v = T::zero();
        for x in 0..self.s1 {
            for y in 0..self.s2 {
                v += self.phi(x, y, strategy.site1[x], strategy.site2[y]);
            }
        }
        v
    }
}

/// Outcome index chosen for every setting at each site.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Strategy {
    pub site1: Vec<usize>,
    pub site2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LhvExtrema<T> {
    pub b_sup: T,
    pub b_inf: T,
    pub b_lhv: T,
    pub argmax_strategy: Strategy,
    pub argmin_strategy: Strategy,
}

fn strategy_count(base: usize, exp: usize) -> Option<u128> {
    (base as u128).checked_pow(u32::try_from(exp).ok()?)
}

/// Advances `digits` as a base-`base` odometer; false once it wraps.
fn next_assignment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Exact classical extrema over deterministic local strategies.
///
/// Site-1 strategies are enumerated; for each, site 2 responds optimally
/// setting by setting, which is exact because the objective separates over
/// site-2 settings once site 1 is fixed.
pub fn lhv_extrema<T: Real>(f: &BellFunctional<T>) -> Result<LhvExtrema<T>> {
    let total = strategy_count(f.m1(), f.s1)
        .zip(strategy_count(f.m2(), f.s2))
        .and_then(|(a, b)| a.checked_mul(b));
    match total {
        Some(n) if n <= ENUMERATION_GUARD => {}
        _ => {
            return Err(Error::Capacity(format!(
                "{}^{} x {}^{} deterministic strategies exceed the enumeration limit {ENUMERATION_GUARD}; use fewer settings or outcomes",
                f.m1(),
                f.s1,
                f.m2(),
                f.s2
            )))
        }
    }

    let (s1, s2, m2) = (f.s1, f.s2, f.m2());
    let mut a = vec![0usize; s1];
    let mut best: Option<(T, Strategy)> = None;
    let mut worst: Option<(T, Strategy)> = None;
    let mut column = vec![T::zero(); m2];
    loop {
        let mut hi_b = vec![0usize; s2];
        let mut lo_b = vec![0usize; s2];
        let mut hi = T::zero();
        let mut lo = T::zero();
        for y in 0..s2 {
            for (b, c) in column.iter_mut().enumerate() {
                *c = (0..s1).fold(T::zero(), |acc, x| acc + f.phi(x, y, a[x], b));
            }
            let (mut ib, mut iw) = (0, 0);
            for b in 1..m2 {
                if column[b] > column[ib] {
                    ib = b;
                }
                if column[b] < column[iw] {
                    iw = b;
                }
            }
            hi_b[y] = ib;
            lo_b[y] = iw;
            hi += column[ib];
            lo += column[iw];
        }
        if best.as_ref().is_none_or(|(v, _)| hi > *v) {
            best = Some((
                hi,
                Strategy {
                    site1: a.clone(),
                    site2: hi_b,
                },
            ));
        }
        if worst.as_ref().is_none_or(|(v, _)| lo < *v) {
            worst = Some((
                lo,
                Strategy {
                    site1: a.clone(),
                    site2: lo_b,
                },
            ));
        }
        if !next_assignment(&mut a, f.m1()) {
            break;
        }
    }
    let (_, argmax) = best.expect("at least one strategy");
    let (_, argmin) = worst.expect("at least one strategy");
    let b_sup = f.strategy_value(&argmax);
    let b_inf = f.strategy_value(&argmin);
    let b_lhv = if b_sup.abs() > b_inf.abs() {
        b_sup.abs()
    } else {
        b_inf.abs()
    };
    Ok(LhvExtrema {
        b_sup,
        b_inf,
        b_lhv,
        argmax_strategy: argmax,
        argmin_strategy: argmin,
    })
}

/// A positive operator-valued measure: PSD elements summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm<T: Real> {
    elements: Vec<CMatrix<T>>,
}

impl<T: Real> Povm<T> {
    pub fn new(elements: Vec<CMatrix<T>>) -> Result<Self> {
        let d = match elements.first() {
            Some(e) => e.nrows(),
            None => return Err(Error::Validation("POVM has no elements".into())),
        };
        let t = tol::<T>(POVM_TOL);
        let mut sum = CMatrix::<T>::zeros(d, d);
        for (k, e) in elements.iter().enumerate() {
            if e.shape() != (d, d) {
                return Err(Error::Validation(format!(
                    "POVM element {k} is not {d}x{d}"
                )));
            }
            let defect = hermitian_defect(e);
            if defect > t {
                return Err(Error::Validation(format!(
                    "POVM element {k} is not Hermitian (defect {:e})",
                    to_f64(defect)
                )));
            }
            let min = hermitian_eigenvalues(e)[0];
            if min < -t {
                return Err(Error::Validation(format!(
                    "POVM element {k} is not positive semidefinite (eigenvalue {:e})",
                    to_f64(min)
                )));
            }
            sum += e;
        }
        let gap = linalg::max_abs(&(sum - CMatrix::identity(d, d)));
        if gap > t {
            return Err(Error::Validation(format!(
                "POVM elements do not sum to the identity (deviation {:e})",
                to_f64(gap)
            )));
        }
        Ok(Self { elements })
    }

    /// Two-outcome projective measurement `{P, I − P}`.
    pub fn from_projector(p: CMatrix<T>) -> Result<Self> {
        let d = p.nrows();
        let rest = CMatrix::identity(d, d) - &p;
        Self::new(vec![p, rest])
    }

    /// `{(I + A)/2, (I − A)/2}` for a `±1`-valued observable `A`.
    pub fn from_observable(a: &CMatrix<T>) -> Result<Self> {
        let d = a.nrows();
        let half = lit::<T>(0.5);
        let p = (CMatrix::identity(d, d) + a).map(|z| z.scale(half));
        Self::from_projector(p)
    }

    /// Rank-one projectors onto the columns of a unitary.
    pub fn from_basis(unitary: &CMatrix<T>) -> Result<Self> {
        let elements = (0..unitary.ncols())
            .map(|k| {
                let v = unitary.column(k).into_owned();
                linalg::outer(&v, &v)
            })
            .collect();
        Self::new(elements)
    }

    pub fn elements(&self) -> &[CMatrix<T>] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Local POVMs for every setting at both sites.
#[derive(Debug, Clone, PartialEq)]
pub struct Assemblage<T: Real> {
    site1: Vec<Povm<T>>,
    site2: Vec<Povm<T>>,
}

impl<T: Real> Assemblage<T> {
    pub fn new(site1: Vec<Povm<T>>, site2: Vec<Povm<T>>) -> Result<Self> {
        for (name, site) in [("site 1", &site1), ("site 2", &site2)] {
            let first = site
                .first()
                .ok_or_else(|| Error::Validation(format!("{name} has no measurements")))?;
            if site.iter().any(|p| p.dim() != first.dim()) {
                return Err(Error::Validation(format!(
                    "{name} measurements act on different dimensions"
                )));
            }
        }
        Ok(Self { site1, site2 })
    }

    pub fn site1(&self) -> &[Povm<T>] {
        &self.site1
    }

    pub fn site2(&self) -> &[Povm<T>] {
        &self.site2
    }

    fn check_state(&self, state: &PureState<T>) -> Result<()> {
        if self.site1[0].dim() != state.d1() || self.site2[0].dim() != state.d2() {
            return Err(Error::Argument(format!(
                "measurements act on {}x{} but the state is {}x{}",
                self.site1[0].dim(),
                self.site2[0].dim(),
                state.d1(),
                state.d2()
            )));
        }
        Ok(())
    }
}

/// `p(a, b) = ⟨ψ|M_x(a) ⊗ N_y(b)|ψ⟩` for one pair of settings.
pub fn quantum_probabilities<T: Real>(
    state: &PureState<T>,
    asm: &Assemblage<T>,
    x: usize,
    y: usize,
) -> Result<DMatrix<T>> {
    asm.check_state(state)?;
    let m = asm
        .site1
        .get(x)
        .ok_or_else(|| Error::Argument(format!("no site-1 setting {x}")))?;
    let n = asm
        .site2
        .get(y)
        .ok_or_else(|| Error::Argument(format!("no site-2 setting {y}")))?;
    let amp = state.amplitudes();
    let mut table = DMatrix::zeros(m.len(), n.len());
    for (a, ma) in m.elements().iter().enumerate() {
        // ⟨ψ|M⊗N|ψ⟩ = Σ_jk (A† M A)_jk N_jk
        let reduced = amp.adjoint() * ma * amp;
        for (b, nb) in n.elements().iter().enumerate() {
            let p = reduced
                .iter()
                .zip(nb.iter())
                .fold(T::zero(), |acc, (r, q)| acc + (r * q).re);
            table[(a, b)] = p;
        }
    }
    Ok(table)
}

/// `Σ_{x,y,a,b} φ(x,y,a,b) p(a,b|x,y)`
pub fn bell_value<T: Real>(
    f: &BellFunctional<T>,
    state: &PureState<T>,
    asm: &Assemblage<T>,
) -> Result<T> {
    if asm.site1.len() != f.s1 || asm.site2.len() != f.s2 {
        return Err(Error::Argument(format!(
            "assemblage has {}x{} settings, functional has {}x{}",
            asm.site1.len(),
            asm.site2.len(),
            f.s1,
            f.s2
        )));
    }
    if asm.site1.iter().any(|p| p.len() != f.m1()) || asm.site2.iter().any(|p| p.len() != f.m2()) {
        return Err(Error::Argument(
            "POVM outcome counts do not match the functional".into(),
        ));
    }
    let mut total = T::zero();
    for x in 0..f.s1 {
        for y in 0..f.s2 {
            let p = quantum_probabilities(state, asm, x, y)?;
            for a in 0..f.m1() {
                for b in 0..f.m2() {
                    total += f.phi(x, y, a, b) * p[(a, b)];
                }
            }
        }
    }
    Ok(total)
}

/// Best see-saw result over all restarts.
#[derive(Debug, Clone, PartialEq)]
pub struct SeesawResult<T: Real> {
    /// `bell_value` of `assemblage`, re-evaluated after the search.
    pub value: T,
    pub assemblage: Assemblage<T>,
    /// Objective after each full iteration of the winning restart.
    pub history: Vec<T>,
    pub restart: usize,
}

fn hermitize<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()).map(|z| z.scale(lit::<T>(0.5)))
}

/// Optimal two-outcome projectors at one site given the other site's
/// measurements, expressed through `partial[k][o]`: the operator whose trace
/// against the element for outcome `o` of setting `k` gives its contribution.
fn best_response<T: Real>(partial: &[[CMatrix<T>; 2]]) -> Result<Vec<Povm<T>>> {
    partial
        .iter()
        .map(|[k0, k1]| Povm::from_projector(nonnegative_projector(&hermitize(&(k0 - k1)))))
        .collect()
}

fn site1_response<T: Real>(
    f: &BellFunctional<T>,
    state: &PureState<T>,
    site2: &[Povm<T>],
) -> Result<Vec<Povm<T>>> {
    let amp = state.amplitudes();
    let d1 = state.d1();
    // tr_2[|ψ⟩⟨ψ| (I ⊗ N)] = A Nᵀ A†
    let marg: Vec<Vec<CMatrix<T>>> = site2
        .iter()
        .map(|p| {
            p.elements()
                .iter()
                .map(|n| amp * n.transpose() * amp.adjoint())
                .collect()
        })
        .collect();
    let partial: Vec<[CMatrix<T>; 2]> = (0..f.s1)
        .map(|x| {
            let mut k = [CMatrix::zeros(d1, d1), CMatrix::zeros(d1, d1)];
            for (a, ka) in k.iter_mut().enumerate() {
                for (y, row) in marg.iter().enumerate() {
                    for (b, r) in row.iter().enumerate() {
                        *ka += r.map(|z| z.scale(f.phi(x, y, a, b)));
                    }
                }
            }
            k
        })
        .collect();
    best_response(&partial)
}

fn site2_response<T: Real>(
    f: &BellFunctional<T>,
    state: &PureState<T>,
    site1: &[Povm<T>],
) -> Result<Vec<Povm<T>>> {
    let amp = state.amplitudes();
    let d2 = state.d2();
    // ⟨ψ|M⊗N|ψ⟩ = tr[N (A† M A)ᵀ]
    let marg: Vec<Vec<CMatrix<T>>> = site1
        .iter()
        .map(|p| {
            p.elements()
                .iter()
                .map(|m| (amp.adjoint() * m * amp).transpose())
                .collect()
        })
        .collect();
    let partial: Vec<[CMatrix<T>; 2]> = (0..f.s2)
        .map(|y| {
            let mut k = [CMatrix::zeros(d2, d2), CMatrix::zeros(d2, d2)];
            for (b, kb) in k.iter_mut().enumerate() {
                for (x, row) in marg.iter().enumerate() {
                    for (a, l) in row.iter().enumerate() {
                        *kb += l.map(|z| z.scale(f.phi(x, y, a, b)));
                    }
                }
            }
            k
        })
        .collect();
    best_response(&partial)
}

/// Alternating best-response maximization of a two-outcome functional.
///
/// Each restart draws site-2 projective measurements from seeded Gaussian
/// Hermitian matrices (split at eigenvalue zero), then alternates exact
/// best responses: for fixed measurements at one site the optimal
/// two-outcome measurement at the other is the projector onto the
/// nonnegative eigenspace of its partial Bell operator. Restart `r` uses
/// stream `r` of a ChaCha generator keyed by `seed`.
pub fn seesaw_maximize<T: Real>(
    f: &BellFunctional<T>,
    state: &PureState<T>,
    restarts: usize,
    max_iters: usize,
    tol: T,
    seed: u64,
) -> Result<SeesawResult<T>> {
    if f.m1() != 2 || f.m2() != 2 {
        return Err(Error::Unsupported(format!(
            "see-saw needs two outcomes per site, functional has {} and {}",
            f.m1(),
            f.m2()
        )));
    }
    if restarts == 0 || max_iters == 0 {
        return Err(Error::Argument(
            "restarts and iterations must be positive".into(),
        ));
    }
    let mut best: Option<SeesawResult<T>> = None;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let mut site2: Vec<Povm<T>> = (0..f.s2)
            .map(|_| {
                let h = linalg::gaussian_hermitian::<T, _>(state.d2(), &mut rng);
                Povm::from_projector(nonnegative_projector(&h))
            })
            .collect::<Result<_>>()?;
        let mut site1 = site1_response(f, state, &site2)?;
        let mut history = Vec::new();
        let mut prev: Option<T> = None;
        for _ in 0..max_iters {
            site2 = site2_response(f, state, &site1)?;
            site1 = site1_response(f, state, &site2)?;
            let asm = Assemblage::new(site1.clone(), site2.clone())?;
            let v = bell_value(f, state, &asm)?;
            history.push(v);
            if let Some(p) = prev {
                if (v - p).abs() < tol {
                    break;
                }
            }
            prev = Some(v);
        }
        let assemblage = Assemblage::new(site1, site2)?;
        let value = bell_value(f, state, &assemblage)?;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(SeesawResult {
                value,
                assemblage,
                history,
                restart: r,
            });
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Violation ratio of a quantum value checked against the pure-state bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport<T> {
    pub quantum_value: T,
    pub b_sup: T,
    pub b_inf: T,
    pub b_lhv: T,
    pub ratio: T,
    pub bound_theorem3: T,
    pub bound_general: T,
    pub certified: bool,
    pub band: Band<T>,
    pub in_band: bool,
}

/// `ratio = |value| / b_lhv`, certified when it does not exceed the
/// smaller of the Schmidt-coefficient and dimension/settings bounds by
/// more than `1e-6`.
pub fn certify<T: Real>(
    f: &BellFunctional<T>,
    state: &PureState<T>,
    value: T,
) -> Result<ViolationReport<T>> {
    let lhv = lhv_extrema(f)?;
    if lhv.b_lhv < lit::<T>(DEGENERATE_LHV) {
        return Err(Error::Degeneracy(
            "functional has zero classical bound; the violation ratio is undefined".into(),
        ));
    }
    let schmidt = schmidt_decompose(state, lit(crate::qstate::DEFAULT_TRUNCATION_TOL))?;
    let bound_theorem3 = theorem3_bound(&schmidt, f.s1, f.s2);
    let bound_general = general_state_bound(
        Dim::Finite(state.d1()),
        Dim::Finite(state.d2()),
        Dim::Finite(f.s1),
        Dim::Finite(f.s2),
    )?;
    let ratio = value.abs() / lhv.b_lhv;
    let limit = if bound_theorem3 < bound_general {
        bound_theorem3
    } else {
        bound_general
    };
    let slack = lit::<T>(CERTIFY_SLACK);
    let band = quantum_band(lhv.b_sup, lhv.b_inf, bound_theorem3)?;
    Ok(ViolationReport {
        quantum_value: value,
        b_sup: lhv.b_sup,
        b_inf: lhv.b_inf,
        b_lhv: lhv.b_lhv,
        ratio,
        bound_theorem3,
        bound_general,
        certified: ratio <= limit + slack,
        in_band: band.contains(value, slack),
        band,
    })
}

/// The textbook optimal CHSH measurements on `(|00⟩ + |11⟩)/√2`:
/// `Z, X` at site 1 and `(Z ± X)/√2` at site 2.
pub fn chsh_optimal_assemblage<T: Real>() -> Assemblage<T> {
    let z = CMatrix::from_row_slice(
        2,
        2,
        &[re(T::one()), re(T::zero()), re(T::zero()), re(-T::one())],
    );
    let x = CMatrix::from_row_slice(
        2,
        2,
        &[re(T::zero()), re(T::one()), re(T::one()), re(T::zero())],
    );
    let h = T::one() / lit::<T>(2.0).sqrt();
    let b0 = (&z + &x).map(|c| c.scale(h));
    let b1 = (&z - &x).map(|c| c.scale(h));
    let obs =
        |a: &CMatrix<T>| Povm::from_observable(a).expect("Pauli combination is a ±1 observable");
    Assemblage::new(vec![obs(&z), obs(&x)], vec![obs(&b0), obs(&b1)])
        .expect("consistent dimensions")
}
