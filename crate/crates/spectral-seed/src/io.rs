//! File formats: point CSV ingestion/emission and raster exports.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::grid::{Point, PointSet};
use crate::spectral::SmoothedField;

/// Reads two comma-separated numeric columns; a single header line is
/// detected by failing to parse the first record.
pub fn read_points_csv<R: BufRead>(reader: R) -> Result<PointSet> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut points = Vec::new();
    for (i, record) in csv_reader.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| Error::CsvParse {
            line,
            message: e.to_string(),
        })?;
        if record.len() < 2 {
            return Err(Error::CsvParse {
                line,
                message: format!("expected 2 columns, found {}", record.len()),
            });
        }
        let parsed = record[0]
            .parse::<f64>()
            .and_then(|x| record[1].parse::<f64>().map(|y| (x, y)));
        match parsed {
            Ok((x, y)) => points.push(Point::new(x, y)),
            Err(e) if i == 0 => {
                // header line
                let _ = e;
                continue;
            }
            Err(e) => {
                return Err(Error::CsvParse {
                    line,
                    message: e.to_string(),
                })
            }
        }
    }
    PointSet::new(points)
}

pub fn read_points_csv_path(path: &std::path::Path) -> Result<PointSet> {
    let file = std::fs::File::open(path)?;
    read_points_csv(std::io::BufReader::new(file))
}

/// Writes `x,y` rows with a header line, shortest round-trip float formatting.
pub fn write_points_csv<W: Write>(mut writer: W, points: &PointSet) -> Result<()> {
    writeln!(writer, "x,y")?;
    for p in points.points() {
        writeln!(writer, "{},{}", p.x, p.y)?;
    }
    Ok(())
}

/// Appends the cluster index to each point row.
pub fn write_assignments_csv<W: Write>(
    mut writer: W,
    points: &PointSet,
    assignments: &[usize],
) -> Result<()> {
    writeln!(writer, "x,y,cluster")?;
    for (p, &c) in points.points().iter().zip(assignments) {
        writeln!(writer, "{},{},{}", p.x, p.y, c)?;
    }
    Ok(())
}

/// Binary 8-bit PGM of a normalized field, values scaled to 0..=255.
/// Row 0 of the image is the maximum-y line of the grid.
pub fn write_pgm<W: Write>(mut writer: W, field: &SmoothedField) -> Result<()> {
    let (n_x, n_y) = (field.grid.n_x, field.grid.n_y);
    write!(writer, "P5\n{} {}\n255\n", n_x, n_y)?;
    let mut row = Vec::with_capacity(n_x);
    for iy in (0..n_y).rev() {
        row.clear();
        for ix in 0..n_x {
            let v = (field.value(ix, iy) * 255.0).round().clamp(0.0, 255.0);
            row.push(v as u8);
        }
        writer.write_all(&row)?;
    }
    Ok(())
}

/// Plain-text raster: one CSV row per y-line, ascending y.
pub fn write_raster_csv<W: Write>(mut writer: W, field: &SmoothedField) -> Result<()> {
    let (n_x, n_y) = (field.grid.n_x, field.grid.n_y);
    for iy in 0..n_y {
        for ix in 0..n_x {
            if ix > 0 {
                write!(writer, ",")?;
            }
            write!(writer, "{}", field.value(ix, iy))?;
        }
        writeln!(writer)?;
    }
    Ok(())
}
