//! Sample CSV files with JSON sidecars, and byte-stable JSON output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::explorer::AlphaSectionScan;
use crate::geometry::{Point, Sample, ShapeKind};

/// Pretty JSON whose floats always carry 17 significant digits.
struct FixedFloats<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(io::BufReader::new(File::open(path)?))?)
}

/// Metadata stored next to a sample CSV (`s.csv` -> `s.json`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleMeta {
    pub epsilon: f64,
    pub noisy: bool,
    pub seed: Option<u64>,
    pub shape: Option<ShapeKind>,
    /// generating shape point of every sample point
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associated: Option<Vec<Point>>,
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn write_sample(csv: &Path, sample: &Sample) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(csv)?));
    w.write_record((0..sample.dim()).map(|k| format!("x{k}")))?;
    for p in &sample.points {
        w.write_record(p.coords().iter().map(|c| format!("{c:.17e}")))?;
    }
    w.flush()?;
    let meta = SampleMeta {
        epsilon: sample.epsilon,
        noisy: sample.noisy,
        seed: sample.seed,
        shape: sample.shape.clone(),
        associated: sample.associated.clone(),
    };
    write_json(&sidecar_path(csv), &meta)
}

pub fn read_points(csv: &Path) -> Result<Vec<Point>> {
    let mut r = csv::Reader::from_path(csv)?;
    let dim = r.headers()?.len();
    r.records()
        .map(|rec| {
            let rec = rec?;
            if rec.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: rec.len() });
            }
            let coords = rec
                .iter()
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|e| Error::InvalidArgument(format!("bad coordinate {f:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Point::new(coords)
        })
        .collect()
}

/// Reads a sample and its sidecar. Without a sidecar, `epsilon` must be given.
pub fn read_sample(csv: &Path, epsilon: Option<f64>) -> Result<Sample> {
    let points = read_points(csv)?;
    let side = sidecar_path(csv);
    let meta: Option<SampleMeta> = if side.exists() { Some(read_json(&side)?) } else { None };
    let eps = epsilon
        .or(meta.as_ref().map(|m| m.epsilon))
        .ok_or_else(|| Error::InvalidArgument(format!("no epsilon given and no sidecar at {}", side.display())))?;
    let mut sample = Sample::new(points, eps, meta.as_ref().is_some_and(|m| m.noisy))?;
    if let Some(m) = meta {
        if m.associated.as_ref().is_some_and(|a| a.len() != sample.len()) {
            return Err(Error::RowMismatch(sample.len(), m.associated.map_or(0, |a| a.len())));
        }
        sample.seed = m.seed;
        sample.shape = m.shape;
        sample.associated = m.associated;
    }
    Ok(sample)
}

/// `R,r,member` rows for every evaluated cell.
pub fn write_scan_csv(path: &Path, scan: &AlphaSectionScan) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(["R", "r", "member"])?;
    for (i, row) in scan.membership.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if let Some(m) = cell {
                w.write_record([format!("{:.17e}", scan.axis[i]), format!("{:.17e}", scan.axis[j]), m.to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
