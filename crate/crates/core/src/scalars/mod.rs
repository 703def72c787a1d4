//! Exact scalars: rationals, cyclotomic numbers, and linear algebra over them.

pub mod cyclo;
pub mod linalg;
pub mod rational;

pub use cyclo::{lcm, CycloNumber};
pub use rational::Q;
