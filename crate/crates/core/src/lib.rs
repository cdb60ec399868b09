#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod chain;
pub mod classify;
pub mod dist;
pub mod drift;
pub mod error;
pub mod montecarlo;
pub mod quad;
pub mod real;
pub mod rng;
pub mod roots;
pub mod specialfn;

pub use error::{Error, Result};
pub use real::Real;

pub use chain::{Drift, Passage, PassageResult, SkeletonVariant};
pub use classify::{classify, Classification, Regime};
pub use dist::{InnovationLaw, Side, Support, TailProfile};

pub type Model = chain::ModelSpec<f64>;
pub type Innovation = dist::InnovationSpec<f64>;
pub type Lyapunov = drift::LyapunovSpec<f64>;
pub type Root = specialfn::CriticalRoot<f64>;
pub type Report = drift::DriftReport<f64>;

pub type Model32 = chain::ModelSpec<f32>;
pub type Innovation32 = dist::InnovationSpec<f32>;
pub type Lyapunov32 = drift::LyapunovSpec<f32>;
pub type Root32 = specialfn::CriticalRoot<f32>;
pub type Report32 = drift::DriftReport<f32>;
