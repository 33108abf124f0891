//! Finite fields `F_q` and polynomials over them.

mod field;
mod parse;
mod poly;

pub use field::{Embedding, FieldElement, FieldSpec, MAX_FIELD_SIZE};
pub use parse::{parse_factors, parse_poly};
pub use poly::{
    count_monic_irreducibles, enumerate_monic_irreducibles, is_square_in_residue_field, poly_arith, residue_is_square, Poly,
    PolyArith, PolyOp, SquareTest,
};

/// Builds `F_{p^k}`; see [`FieldSpec::new`].
pub fn field_make(p: u64, k: u32) -> crate::Result<FieldSpec> {
    FieldSpec::new(p, k)
}

/// Irreducibility test; errors on constant input.
pub fn poly_is_irreducible(f: &Poly) -> crate::Result<bool> {
    f.is_irreducible()
}
