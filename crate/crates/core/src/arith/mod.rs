//! Exact integer, rational and polynomial arithmetic.

pub mod integer;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use integer::{factorize, is_prime, prime_divisors};
pub use poly::{discriminant, is_irreducible_deg_le_4, rational_roots, resultant, Poly, SturmSequence};
pub use rational::{square_class, valuation, Rational, SquareClass, Valuation};
