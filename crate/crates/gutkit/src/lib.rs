//! IO, file formats, and presentation for the gutkit toolkit. The
//! algorithms live in `gutkit-core`; this crate adds the JSON/CSV
//! formats and the pieces the command-line interface is built from.

pub mod io;

pub use gutkit_core::{flavor, liealg, model, rg, scan};
