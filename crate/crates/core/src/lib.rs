pub mod complex;
pub mod bf;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod homology;
pub mod intlinalg;
pub mod reciprocity;
pub mod tv;

#[cfg(test)]
mod properties;
