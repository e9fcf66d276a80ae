//! Real-eigenvalue densities of the elliptic real Ginibre ensemble.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod montecarlo;
pub mod planrot;
pub mod specfun;
pub mod verify;

pub use asymptotics::{DensityExpansion, ErrorOrder};
pub use error::{Error, Result};
pub use exact::{Anchor, EdgeRegime, EnsembleParams, Rn2Form, Scaling, WeakRegimeParams};
pub use montecarlo::{Histogram, SampleConfig};
pub use planrot::{PhaseData, ScaledApprox};
pub use specfun::ExtendedReal;
