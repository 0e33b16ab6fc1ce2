//! Scalar functions on the disc: rational functions, Blaschke products,
//! outer functions and their pointwise combinations.

mod evaluable;
mod inner_outer;
pub mod poly;
mod rational;

pub use evaluable::{boundary_profile, EvaluableFunction};
pub use inner_outer::{inner_outer_factorize, outer_sqrt, InnerFactor, OuterFunction, QuadratureConfig};
pub use rational::RationalFunction;
