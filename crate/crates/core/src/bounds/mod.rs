//! Exact evaluation of effective bounds: the Matsusaka very-ampleness bound,
//! the extension constant `8 pi e sqrt(2 + 1/e)`, the Skoda exponents, and a
//! generation-degree checker for graded monomial rings.

mod generation;
mod matsusaka;
mod ot;
mod skoda;

pub use generation::{
    generation_bound, generation_bound_check, generation_degree, Factorization, GenerationCertificate,
    GradedMonomialRing,
};
pub use matsusaka::{c_n, k_tilde_l_coefficient, matsusaka_bound, FoldOrder, MatsusakaBound, MatsusakaInput};
pub use ot::{ot_constant, to_decimal, Enclosure};
pub use skoda::{skoda_exponents, SkodaExponents};
