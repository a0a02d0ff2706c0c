use std::io::Write;

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

/// Rounds to 10 significant digits. Serializers print the shortest form
/// that reads back to the same double, so the rounded value is what lands
/// in the file and parsing it back loses nothing.
pub fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

pub fn write_rows<T: Serialize, W: Write>(rows: &[T], format: Format, mut w: W) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(w);
            for r in rows {
                wr.serialize(r)?;
            }
            wr.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}
