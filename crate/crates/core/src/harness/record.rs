use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

pub const CSV_HEADER: [&str; 12] = [
    "tester",
    "H",
    "N",
    "eps",
    "c",
    "params_fp",
    "seed",
    "trial",
    "verdict",
    "evidence",
    "distinct_queries",
    "wall_ms",
];

/// One tester run. `wall_ms` is zero unless timing was requested, so that
/// reruns produce identical files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub tester: String,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub eps: f64,
    pub c: f64,
    pub params_fp: String,
    pub seed: u64,
    pub trial: usize,
    pub verdict: String,
    pub evidence: String,
    pub distinct_queries: usize,
    pub wall_ms: f64,
}

impl ExperimentRecord {
    pub fn is_accept(&self) -> bool {
        self.verdict == "accept"
    }
}

pub fn write_csv<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Reads records, rejecting any header other than [`CSV_HEADER`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Format {
            line: 1,
            msg: format!("unexpected CSV header `{}`", header.iter().collect::<Vec<_>>().join(",")),
        });
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}
