//! Finite groups, coefficient modules, cochains and group cohomology.

pub mod cochain;
pub mod coeff;
pub mod cohomology;
pub mod group;
pub mod smith;
pub mod zmod;

pub use cochain::{bar_differential, Cochain};
pub use coeff::{AbelianCoefficients, CoefficientKind, ModuleView};
pub use cohomology::{cohomology, CohomologyGroup};
pub use group::{
    validate_group, AbelianStructure, FiniteGroup, GroupHom, GroupViolation, HomViolation,
};
pub use smith::{invariant_factors, smith_normal_form, IntMatrix, SmithForm, SmithScalar};
