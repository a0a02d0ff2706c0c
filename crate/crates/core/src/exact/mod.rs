//! Exact arithmetic: ℚ, ℚ(√d), Möbius maps and intervals.

mod approx;
mod frac;
mod interval;
mod mobius;
mod quadint;
mod quadratic;

pub use approx::Scaled;
pub use frac::Frac;
pub use interval::{ExactInterval, FracInterval};
pub use mobius::MobiusMap;
pub use quadint::{squarefree_split, QuadInt};
pub use quadratic::{floor_exact, ExactNumber, QuadraticNumber, Rational};
