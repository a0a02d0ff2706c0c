//! Exact digit expansions, their cylinders and entropies, and Lochs-type
//! comparisons between two expansions of the same number.

pub mod cylinders;
pub mod entropy;
pub mod error;
pub mod exact;
pub mod expansions;
pub mod lochs;
pub mod stats;

pub use cylinders::{build_cylinder, cylinder_of_point, Cylinder};
pub use entropy::{
    entropy_closed_form, entropy_quadrature, entropy_smb, renyi_condition_check, EntropyMethod, EntropyResult,
    RenyiCheck,
};
pub use error::{Error, Result};
pub use exact::{ExactInterval, ExactNumber, MobiusMap, Rational};
pub use expansions::{DigitBlock, ExpansionFamily, FamilyKind};
pub use lochs::{lochs_estimate, m_of_n, predicted_ratio, LochsEstimate};
