//! Standard-library companion to `stiefel-core`: JSON formats, seeded
//! generators, SVG drawings and the `stiefel` command-line tool.

pub mod cli;
pub mod format;
pub mod gen;
pub mod render;
