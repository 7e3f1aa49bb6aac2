use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use uf_explain::{proof_stats, Engine, UfError};

use crate::workload::{Shape, Workload, WorkloadError};

/// One CSV row.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BenchRecord {
    pub shape: Shape,
    pub n_exp: u32,
    pub elements: usize,
    #[serde(serialize_with = "six_places")]
    pub union_seconds: f64,
    #[serde(serialize_with = "six_places")]
    pub explain_seconds: f64,
    pub queries: usize,
    pub mean_assm_count: f64,
}

fn six_places<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{v:.6}"))
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Workload(#[from] WorkloadError),
    #[error(transparent)]
    Engine(#[from] UfError),
    #[error("union {index} of the workload was redundant")]
    Redundant { index: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn micros(d: Duration) -> f64 {
    d.as_micros() as f64 / 1e6
}

/// Builds the workload's engine, timing the unions, then answers every query,
/// timing only the explain calls.
pub fn run_bench(shape: Shape, n_exp: u32, queries: usize, seed: u64) -> Result<BenchRecord, BenchError> {
    let w = Workload::generate(shape, n_exp, queries, seed)?;

    let start = Instant::now();
    let mut engine = Engine::new(w.elements())?;
    for (index, &(a, b)) in w.unions.iter().enumerate() {
        if !engine.add_union(a, b)? {
            return Err(BenchError::Redundant { index });
        }
    }
    let union_time = start.elapsed();

    let mut explain_time = Duration::ZERO;
    let mut assm_total = 0u64;
    for &(x, y) in &w.queries {
        let start = Instant::now();
        let proof = engine.explain(x, y);
        explain_time += start.elapsed();
        let proof = proof.expect("every workload ends in a single class");
        assm_total += proof_stats(&proof).assm_count as u64;
    }

    Ok(BenchRecord {
        shape,
        n_exp,
        elements: w.elements(),
        union_seconds: micros(union_time),
        explain_seconds: micros(explain_time),
        queries,
        mean_assm_count: if queries == 0 { 0.0 } else { assm_total as f64 / queries as f64 },
    })
}

/// Writes `records` as CSV with a header row.
pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<(), BenchError> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

/// Appends `records` to the file at `path`, writing the header only if the
/// file is new or empty.
pub fn append_csv(path: &Path, records: &[BenchRecord]) -> Result<(), BenchError> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    let mut writer = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench() {
        let r = run_bench(Shape::Wide, 4, 50, 3).unwrap();
        assert_eq!(r.elements, 16);
        assert_eq!(r.queries, 50);
        assert!(r.mean_assm_count > 0.0);
        assert!(run_bench(Shape::Balanced, 0, 1, 0).is_err());
    }

    #[test]
    fn csv_header_and_row() {
        let r = BenchRecord {
            shape: Shape::Balanced,
            n_exp: 3,
            elements: 8,
            union_seconds: 0.000012,
            explain_seconds: 0.5,
            queries: 10,
            mean_assm_count: 2.5,
        };
        let mut out = Vec::new();
        write_csv(&mut out, &[r]).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "shape,n_exp,elements,union_seconds,explain_seconds,queries,mean_assm_count\n\
             balanced,3,8,0.000012,0.500000,10,2.5\n"
        );
    }
}
