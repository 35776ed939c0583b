//! File formats, result documents, instance generation, and benchmarking.

pub mod bench;
pub mod format;
pub mod generate;
pub mod report;

pub use bench::{run_benchmark, to_csv, BenchRow, SuiteConfig, CSV_HEADER};
pub use format::{emit_graph, parse_graph, parse_graph_str, ParseError};
pub use generate::{generate_graph, generate_graph_file, GenerateError};
pub use report::ResultDocument;
