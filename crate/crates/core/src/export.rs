//! Number formatting and file formats for command-line output.
//!
//! JSON numbers carry 17 significant digits so that every `f64` round-trips;
//! CSV uses 12 for readability.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::families::TracedCurve;

/// Compact JSON with floats written as `d.dddddddddddddddde±x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Json17;

impl Formatter for Json17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Json17);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// 12 significant digits; non-finite values as `nan`/`inf`.
pub fn csv_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        format!("{x}").to_lowercase()
    }
}

pub fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|&x| csv_number(x))
        .collect::<Vec<_>>()
        .join(",")
}

impl TracedCurve {
    /// Header `u,v,x,y,z` and one row per point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,x,y,z\n");
        for p in &self.points {
            out.push_str(&csv_row(&[p.u, p.v, p.x, p.y, p.z]));
            out.push('\n');
        }
        out
    }

    /// Vertices followed by one polyline record.
    pub fn to_obj(&self) -> String {
        let mut out = format!("# {} trace, {} points\n", self.family, self.points.len());
        for p in &self.points {
            out.push_str(&format!("v {:.16e} {:.16e} {:.16e}\n", p.x, p.y, p.z));
        }
        if self.points.len() > 1 {
            let idx: Vec<String> = (1..=self.points.len()).map(|i| i.to_string()).collect();
            out.push_str(&format!("l {}\n", idx.join(" ")));
        }
        out
    }
}
