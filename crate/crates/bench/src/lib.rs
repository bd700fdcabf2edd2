//! Shared inputs for the criterion benchmarks.

use gcart_core::gram::{graded_cartan, GramMatrix};
use gcart_core::linalg::PolyMatrix;

/// `(ℓ, d)` pairs with graded Cartan matrices of dimension 10, 36, 51 and 105.
pub const GRAM_SIZES: [(u32, u32); 4] = [(3, 3), (3, 5), (4, 4), (5, 4)];

/// Field SNF is run on the smaller sizes only.
pub const FIELD_SIZES: [(u32, u32); 3] = [(3, 3), (3, 5), (4, 4)];

pub fn cartan(ell: u32, d: u32) -> GramMatrix {
    graded_cartan(ell, d).expect("valid parameters")
}

pub fn entries(ell: u32, d: u32) -> PolyMatrix {
    cartan(ell, d).entries
}
