//! Exact incomplete-poset combinatorics and Wick-product identities.

pub mod exact;
pub mod families;
pub mod poset;
pub mod gamma;
pub mod meixner;
pub mod wick;
pub mod enumerate;
pub mod cli;
