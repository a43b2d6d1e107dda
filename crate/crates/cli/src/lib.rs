//! IO, file formats, report rendering, and the parallel pipeline driver
//! behind the `emovar` command-line tool.
//!
//! The algorithmic layers live in [`emovar_core`]; this crate adds
//! everything that touches the filesystem or a terminal: corpus ingestion
//! (CSV/JSONL), the emotionalized-corpus wire format, quantification file
//! loading, renderers for text/markdown/csv/json reports, run manifests,
//! and a rayon-backed pipeline runner whose results are identical for any
//! thread count.

pub use emovar_core as core;

pub mod commands;
pub mod ingest;
pub mod manifest;
pub mod parallel;
pub mod report;
pub mod wire;
