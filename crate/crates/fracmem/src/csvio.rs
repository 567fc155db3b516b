//! The `t,x,y` CSV format shared by ingestion and export.
//!
//! UTF-8, header `t,x,y` (case-insensitive), then one row per grid node with
//! three decimal literals. LF or CRLF line endings. Times must start at 0 and
//! be uniformly spaced.

use std::fmt::Write as _;
use std::path::Path;

use fracmem_core::caputo::Signal;
use fracmem_core::indicators::IndicatorPair;
use fracmem_core::series::SampledSeries;

use crate::error::AppError;

/// Reads and validates a pair file.
pub fn ingest_csv(path: impl AsRef<Path>) -> Result<IndicatorPair, AppError> {
    let text = std::fs::read_to_string(path)?;
    parse_pair(&text)
}

/// Parses pair CSV text. Line numbers in errors are 1-based and count the
/// header.
pub fn parse_pair(text: &str) -> Result<IndicatorPair, AppError> {
    let mut lines = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines.next().unwrap_or_default();
    if !header.trim_start_matches('\u{feff}').eq_ignore_ascii_case("t,x,y") {
        return Err(AppError::Parse { line: 1, msg: format!("expected header `t,x,y`, found `{header}`") });
    }
    let (mut ts, mut xs, mut ys) = (Vec::new(), Vec::new(), Vec::new());
    let rows: Vec<&str> = lines.collect();
    let last = rows.len().saturating_sub(1);
    for (i, row) in rows.iter().enumerate() {
        let line = i + 2;
        if row.is_empty() && i == last {
            break;
        }
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 3 {
            return Err(AppError::Parse { line, msg: format!("expected 3 cells, found {}", cells.len()) });
        }
        let mut parsed = [0.0; 3];
        for (slot, cell) in parsed.iter_mut().zip(&cells) {
            *slot = parse_cell(cell).ok_or_else(|| AppError::Parse {
                line,
                msg: format!("`{cell}` is not a finite decimal number"),
            })?;
        }
        ts.push(parsed[0]);
        xs.push(parsed[1]);
        ys.push(parsed[2]);
    }
    let x = SampledSeries::from_timed(&ts, xs)?;
    let y = SampledSeries::from_timed(&ts, ys)?;
    Ok(IndicatorPair::new(Signal::Sampled(x), Signal::Sampled(y))?)
}

fn parse_cell(cell: &str) -> Option<f64> {
    let ok = !cell.is_empty()
        && cell.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'));
    if !ok {
        return None;
    }
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Serializes two series on one grid. Values use the shortest round-trip
/// representation so re-ingestion is bit-exact.
pub fn write_pair(x: &SampledSeries, y: &SampledSeries) -> Result<String, AppError> {
    if !x.same_grid(y) {
        return Err(fracmem_core::Error::GridMismatch.into());
    }
    let mut out = String::from("t,x,y\n");
    for (k, (xv, yv)) in x.values().iter().zip(y.values()).enumerate() {
        writeln!(out, "{},{},{}", x.time(k), xv, yv).expect("writing to a String");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fracmem_core::Error;

    fn sampled(s: &Signal) -> &SampledSeries {
        match s {
            Signal::Sampled(s) => s,
            Signal::Poly(_) => panic!("expected samples"),
        }
    }

    #[test]
    fn parses_three_rows() {
        let pair = parse_pair("t,x,y\n0,1,2\n1,2,4\n2,3,6").unwrap();
        let x = sampled(pair.factor());
        assert_eq!(x.step(), 1.0);
        assert_eq!(x.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(sampled(pair.indicator()).values(), &[2.0, 4.0, 6.0]);
    }

    #[test]
    fn accepts_crlf_and_header_case() {
        let pair = parse_pair("T,X,Y\r\n0,1,2\r\n0.5,2,4\r\n1,3,6\r\n").unwrap();
        assert_eq!(sampled(pair.factor()).step(), 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_pair("t,x,y\n0,1,2\n1,1,2\n2,1,2\n3.5,1,2"),
            Err(AppError::Core(Error::NonUniformGrid { index: 3 }))
        ));
        assert!(matches!(parse_pair("t,x,y\n0,1,2\n1,abc,2\n2,1,2"), Err(AppError::Parse { line: 3, .. })));
        assert!(matches!(parse_pair("t,x,y\n0,1,2\n1,1\n2,1,2"), Err(AppError::Parse { line: 3, .. })));
        assert!(matches!(parse_pair("t,x,y\n0,1,2\n1,1,2\n2,1,NaN"), Err(AppError::Parse { line: 4, .. })));
        assert!(matches!(parse_pair("t,y,x\n0,1,2"), Err(AppError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_pair("t,x,y\n0,1,2\n1,1,2\n"),
            Err(AppError::Core(Error::InsufficientData { .. }))
        ));
        assert!(matches!(parse_pair("t,x,y\n0,1,2\n\n2,1,2\n3,1,1"), Err(AppError::Parse { line: 3, .. })));
    }
}
