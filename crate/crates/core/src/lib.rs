//! Rough approximations of Γ-semigroups under set-valued anti-homomorphisms.

pub mod algebra;
pub mod antihom;
pub mod error;
pub mod ideal;
pub mod io;
pub mod mask;
pub mod quotient;
pub mod rough;
pub mod fixtures;
pub mod lab;
