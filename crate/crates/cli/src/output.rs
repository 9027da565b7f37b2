use std::io::Write;

use markoff_core::{BigInt, Complex64, Point3};
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::error::CliError;
use crate::parse::format_complex;
use crate::Format;

/// Process exit status for a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Ok = 0,
    CapsHit = 2,
}

/// Integers that fit in `i64` are JSON numbers; larger ones are strings.
pub fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(n) => Value::from(n),
        None => Value::from(v.to_string()),
    }
}

pub fn point(p: &Point3<BigInt>) -> Value {
    Value::Array(p.coords().iter().map(|c| big(c)).collect())
}

pub fn complex(c: &Complex64) -> Value {
    Value::from(format_complex(c))
}

pub fn complex_point(p: &Point3<Complex64>) -> Value {
    Value::Array(p.coords().iter().map(|c| complex(c)).collect())
}

/// Writes `json` (pretty, one document) or the CSV table.
pub fn emit(format: Format, json: &Value, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, json)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for row in rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// CSV cell for a JSON value: strings unquoted, everything else compact JSON.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
