//! Shared fixtures for the benchmarks under `benches/`.

use lochs_core::entropy::DEFAULT_TOL;
use lochs_core::exact::Frac;
use lochs_core::lochs::{default_bits, draw_admissible};
use lochs_core::{entropy_quadrature, ExpansionFamily};

/// One family of each kind.
pub fn families() -> Vec<ExpansionFamily> {
    ["decimal", "gauss", "chan(2)", "theta(3)", "ncf(3)", "renyi(3)"].iter().map(|s| s.parse().unwrap()).collect()
}

/// A seeded sample point whose first `n` digits are well defined under
/// `family`, with enough bits to carry them.
pub fn point_for(family: &ExpansionFamily, n: usize) -> Frac {
    let h = entropy_quadrature(family, DEFAULT_TOL).unwrap().value;
    draw_admissible(7, 0, default_bits(n, &[h]), &[family], n).unwrap().x
}
