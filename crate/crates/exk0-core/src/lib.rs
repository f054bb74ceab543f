//! Computational core for Grothendieck groups of finitely presented
//! n-exangulated categories.
//!
//! The crate is split into four layers:
//!
//! - [`abgroup`]: exact integer linear algebra (Smith and Hermite normal
//!   forms, cokernels, canonical subgroup lattices and enumeration of
//!   intermediate subgroups).
//! - [`catmodel`]: the finite presentation data model for the
//!   object-and-conflation shadow of an n-exangulated category.
//! - [`grothendieck`]: Euler vectors, K0 as a finitely generated abelian
//!   group, classes of objects, the generator subgroup and the
//!   `[A] - [G]` normal form.
//! - [`classify`]: the subgroup / dense-complete-subcategory bijection,
//!   roundtrip verification and the bounded equivalence-witness search.
//!
//! All arithmetic is exact; there is no floating point anywhere. The crate
//! is `no_std` (it requires `alloc`), so the whole engine can be embedded;
//! IO, file formats and the CLI live in the companion `exk0` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod abgroup;
pub mod catmodel;
pub mod classify;
pub mod grothendieck;

pub use abgroup::{
    cokernel, hnf_columns, smith_normal_form, AbGroupError, FinGenAbGroup, IntMatrix,
    SmithDecomposition, Subgroup, DEFAULT_SUBGROUP_CAP,
};
pub use catmodel::{
    direct_sum, sum_conflations, CatModelError, CategoryPresentation, Conflation, Diagnostic,
    GeneratorMode, IndecId, ObjectExpr, Severity,
};
pub use classify::{ClassifyError, GsWitness, SubcategoryHandle};
pub use grothendieck::{GrothendieckError, GrothendieckGroup, K0Element};
