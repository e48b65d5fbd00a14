use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::AggregateRow;
use crate::islands::RunRecord;
use crate::Result;

/// Streams [`RunRecord`]s as CSV, flushing after every row so a crash leaves
/// a valid prefix behind.
pub struct RecordWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W) -> Self {
        Self {
            inner: csv::Writer::from_writer(out),
        }
    }

    pub fn write(&mut self, record: &RunRecord) -> Result<()> {
        self.inner.serialize(record)?;
        self.inner.flush()?;
        Ok(())
    }
}

fn write_all<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn read_all<R: Read, T: DeserializeOwned>(input: R) -> Result<Vec<T>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Into::into))
        .collect()
}

pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    write_all(out, records)
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    read_all(input)
}

pub fn write_aggregates<W: Write>(out: W, rows: &[AggregateRow]) -> Result<()> {
    write_all(out, rows)
}

pub fn read_aggregates<R: Read>(input: R) -> Result<Vec<AggregateRow>> {
    read_all(input)
}
