//! Exact arithmetic over F_q[T] and the level-aspect Eisenstein series on the
//! Bruhat-Tits tree of PGL2 over F_q((T^-1)).

pub mod error;
pub mod ff;

pub use error::{Error, Result};
pub mod arith;
pub mod character;
pub mod cyclotomic;
pub mod dirichlet;
pub mod eisenstein;
pub mod que;
pub mod residue;
pub mod tree;
