//! Workloads, scripts, and benchmarks for the `uf-explain` engine.
//!
//! - [`workload`]: the `wide` and `balanced` union sequences plus seeded
//!   uniform explain queries.
//! - [`script`]: a line-oriented command format (`init`, `union`, `explain`)
//!   executed against one [`uf_explain::Engine`], with every emitted
//!   certificate checked.
//! - [`bench`]: times the union and explain phases of a workload and emits
//!   one CSV row.

pub mod bench;
pub mod script;
pub mod workload;

pub use bench::{run_bench, write_csv, BenchRecord};
pub use script::{parse_script, run_script, Command, Report, ScriptError};
pub use workload::{Shape, Workload, WorkloadError};
