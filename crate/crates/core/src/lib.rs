//! Crossed modules of finite groups, their nonabelian cohomology and
//! obstruction classes, Duskin nerves, and trace-determinant tools for
//! unitary matrices.

#![allow(clippy::needless_range_loop)]

pub mod budget;
pub mod duskin;
pub mod error;
pub mod grpcore;
pub mod obstr;
pub mod unitary;
pub mod xmod;

pub use budget::Budget;
pub use error::{Error, Result};

pub type Unitary64 = unitary::Unitary<f64>;
pub type SelfAdjoint64 = unitary::SelfAdjoint<f64>;
pub type UnitaryPath64 = unitary::UnitaryPath<f64>;
