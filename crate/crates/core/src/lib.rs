//! Exact multivector calculus on coordinate space with rational-function
//! coefficients.
//!
//! The coefficient field is `Frac(Q[x1..xn])` ([`RationalFunc`]). On top of
//! it sit multivectors and differential forms ([`exterior`]), the curl
//! operator and Schouten bracket ([`curl`]), Poisson structures
//! ([`poisson`]), exact linear solves over finite ansatz spaces
//! ([`ansatz`]) and truncated exact Poisson cohomology ([`cohomology`]).

pub mod ansatz;
pub mod closure;
pub mod cohomology;
pub mod constructions;
pub mod curl;
pub mod error;
pub mod exec;
pub mod exterior;
mod gcd;
pub mod identities;
pub mod poisson;
pub mod poly;
pub mod random;
pub mod rational;

pub use ansatz::{AnsatzSpace, ExactMatrix};
pub use cohomology::TruncatedComplexReport;
pub use error::{Error, Result};
pub use exec::Execution;
pub use exterior::{Chart, DifferentialForm, IndexSet, Multivector, VolumeForm};
pub use poisson::{PoissonBivector, StructureConstants};
pub use poly::{Monomial, Polynomial};
pub use rational::RationalFunc;
