//! Exact-arithmetic abelian slice obstructions from Seifert matrices:
//! Alexander polynomials, rational Alexander modules with Blanchfield
//! pairings and metaboliser enumeration, cyclic branched-cover homology
//! with linking forms, and the K_m family reports.

pub mod alexmod;
pub mod cover;
pub mod error;
pub mod factor;
pub mod family;
pub mod group;
pub mod laurent;
pub mod linkform;
pub mod matrix;
pub mod ratfun;
pub mod render;
pub mod seifert;
pub mod snf;

pub use error::Error;
