//! Translative and lattice packings of convex polytopes in two and three dimensions.

pub mod geom;
pub mod catalog;
pub mod exec;
pub mod lattice;
pub mod optimize;
pub mod verify;
pub mod construct;
pub mod formulas;
pub mod io;
