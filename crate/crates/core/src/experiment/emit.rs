//! Point-set writers and readers.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn file_name(self) -> &'static str {
        match self {
            Format::Csv => "points.csv",
            Format::Jsonl => "points.jsonl",
        }
    }
}

pub const CSV_HEADER: &str = "sample_id,re,im,multiplicity,at_infinity";

/// `0` for zero, otherwise 17 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// One row per point; the point at infinity is written with `inf` coordinates.
pub fn write_csv<W: Write>(sets: &[PointSet], mut w: W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for (i, ps) in sets.iter().enumerate() {
        for p in &ps.points {
            writeln!(w, "{i},{},{},{},false", format_float(p.z.re), format_float(p.z.im), p.multiplicity)?;
        }
        if ps.at_infinity > 0 {
            writeln!(w, "{i},inf,inf,{},true", ps.at_infinity)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One JSON object per line, including domain, window and metadata.
pub fn write_jsonl<W: Write>(sets: &[PointSet], mut w: W) -> Result<()> {
    for ps in sets {
        let line = serde_json::to_string(ps).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_points(sets: &[PointSet], path: &Path, format: Format) -> Result<()> {
    let w = BufWriter::new(File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?);
    match format {
        Format::Csv => write_csv(sets, w),
        Format::Jsonl => write_jsonl(sets, w),
    }
}

pub fn read_jsonl(path: &Path) -> Result<Vec<PointSet>> {
    let f = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Io(format!("{}:{}: {e}", path.display(), k + 1)))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::DomainTag;
    use crate::Complex64;

    #[test]
    fn origin_row() {
        let ps = PointSet::from_simple(DomainTag::Plane, None, &[Complex64::new(0.0, 0.0)]).unwrap();
        let mut buf = Vec::new();
        write_csv(&[ps], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n0,0,0,1,false\n"));
    }

    #[test]
    fn float_format_round_trips() {
        for x in [1.0, -0.1, std::f64::consts::PI, 1e-300, 123456.789e10, f64::MIN_POSITIVE] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn infinity_row() {
        let mut ps = PointSet::new(DomainTag::Sphere, None);
        ps.push_infinity(2).unwrap();
        let mut buf = Vec::new();
        write_csv(&[ps], &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().ends_with("0,inf,inf,2,true\n"));
    }
}
