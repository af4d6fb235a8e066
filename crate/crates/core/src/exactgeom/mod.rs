//! Exact arithmetic and projective geometry in ℙ².

pub mod curves;
pub mod cyclotomic;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod proj;
pub mod rational;

pub use curves::{conic_through_five, curve_system, Conic, ConicThroughFive, LinearSystem, SystemBuilder};
pub use cyclotomic::Cyclotomic;
pub use poly::cyclotomic_polynomial;
pub use proj::{collinear, join, meet, ProjLine, ProjPoint};
pub use rational::Rational;
