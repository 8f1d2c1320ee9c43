//! Cocycle deformations of operator algebras with finite quantum group
//! symmetry, computed and checked at matrix level.

pub mod checks;
pub mod cli;
pub mod cocycles;
pub mod deform;
pub mod fqg;
pub mod kahlerian;
pub mod tensorkit;
pub mod twisted;
