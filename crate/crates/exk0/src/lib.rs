//! IO companion to `exk0-core`: the presentation file format, canonical
//! JSON emission, and the command-line driver logic.

pub mod dsl;
pub mod json;

pub use dsl::{parse, parse_object, print, print_object, IoDiagnostic, SourceDocument};
