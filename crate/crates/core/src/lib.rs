//! Explicit pseudorandom generators for low-degree polynomials over
//! polynomial-size finite fields, with brute-force verification oracles.

pub mod algebra;
pub mod tower;
pub mod hitting;
pub mod prg;
pub mod oracles;
