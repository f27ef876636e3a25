//! Exact arithmetic substrate.

pub mod quadratic;
pub mod rational;
pub mod roots;

pub use quadratic::{quad_sign, QuadraticValue, RadicalSum};
pub use rational::{int, parse_rational, rat, rat_cmp, Rational, Sign};
pub use roots::{isolate_roots, Poly2, RootDescriptor, RootIndex};
