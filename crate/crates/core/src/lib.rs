//! Bounds on Bell-inequality violation by pure bipartite states.
//!
//! The crate decomposes states into Schmidt form, builds explicit source
//! operators whose trace norm caps the violation ratio, evaluates the
//! resulting closed-form bounds, and checks them against classical extrema
//! and see-saw optimized quantum values. Entangled coherent states are
//! handled in a truncated Fock basis.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.
//!
//! ```
//! use bellbound::{maximally_entangled, schmidt_decompose, theorem3_bound};
//!
//! let bell = maximally_entangled::<f64>(2);
//! let sd = schmidt_decompose(&bell, 1e-12).unwrap();
//! assert!((theorem3_bound(&sd, 2, 2) - 3.0).abs() < 1e-12);
//! ```

// `!(x > 0)` style checks are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bell;
pub mod bounds;
pub mod coherent;
pub mod error;
pub mod linalg;
pub mod qstate;
pub mod scalar;
pub mod schema;
pub mod source_op;

pub use bell::{
    bell_value, certify, chsh_optimal_assemblage, lhv_extrema, quantum_probabilities,
    seesaw_maximize, Strategy,
};
pub use bounds::{
    bound_report, corollary1_bound, general_state_bound, projective_bound, quantum_band,
    theorem3_bound, Band, Dim,
};
pub use coherent::{
    bell_limit_fidelity, bound_curve, proposition1_bound, reduced_eigenvalues, Family,
};
pub use error::{Error, Result};
pub use qstate::{
    bell_like_state, maximally_entangled, reduced_state, schmidt_decompose, schmidt_sum_squared,
    Site,
};
pub use scalar::Real;
pub use source_op::{
    build_source_1xs, build_source_sx1, build_w_block, trace_norm, verify_dilation,
};

pub type PureState = qstate::PureState<f64>;
pub type SchmidtData = qstate::SchmidtData<f64>;
pub type DensityOperator = qstate::DensityOperator<f64>;
pub type SourceOperator = source_op::SourceOperator<f64>;
pub type BoundReport = bounds::BoundReport<f64>;
pub type CoherentFamily = coherent::CoherentFamily<f64>;
pub type FockTruncation = coherent::FockTruncation<f64>;
pub type OutcomeSet = bell::OutcomeSet<f64>;
pub type BellFunctional = bell::BellFunctional<f64>;
pub type Povm = bell::Povm<f64>;
pub type Assemblage = bell::Assemblage<f64>;
pub type LhvExtrema = bell::LhvExtrema<f64>;
pub type SeesawResult = bell::SeesawResult<f64>;
pub type ViolationReport = bell::ViolationReport<f64>;
pub type CMatrix = scalar::CMatrix<f64>;
pub type CVector = scalar::CVector<f64>;

pub type PureStateF32 = qstate::PureState<f32>;
pub type SchmidtDataF32 = qstate::SchmidtData<f32>;
