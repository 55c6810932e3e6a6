//! Arithmetic in F_q, F_q[T] and truncated F_q((T^-1)).

pub mod enumerate;
pub mod factor;
pub mod field;
pub mod laurent;
pub mod norm;
mod parse;
pub mod poly;

pub use enumerate::{enumerate_polys, monic_up_to, polys_below};
pub use factor::{count_irreducibles, factor, is_irreducible, Factorization, IrreducibleTable};
pub use field::{check_q, FieldElt};
pub use laurent::{Laurent, EXACT};
pub use norm::Norm;
pub use poly::Poly;

impl Poly {
    pub fn norm(&self) -> Norm {
        match self.degree() {
            None => Norm::Zero,
            Some(d) => Norm::QPow(d as i64),
        }
    }
}
