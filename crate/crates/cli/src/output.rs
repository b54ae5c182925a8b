//! Canonical JSON: compact, sorted object keys, floats as `{:.16e}`.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

/// Compact formatter writing every float with 17 significant digits.
pub struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        // -0.0 and 0.0 print identically
        let v = if value == 0.0 { 0.0 } else { value };
        write!(writer, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize through `Value` (whose maps are key-sorted) with [`CanonicalFormatter`].
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("output types serialize");
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, CanonicalFormatter);
    v.serialize(&mut ser).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.6}")
}

/// Render a complex number as `a+bi`.
pub fn fmt_c64(z: rcft::C64) -> String {
    if z.im >= 0.0 {
        format!("{:.6}+{:.6}i", z.re, z.im)
    } else {
        format!("{:.6}-{:.6}i", z.re, -z.im)
    }
}

pub fn matrix_rows(z: &[Vec<u32>]) -> String {
    z.iter()
        .map(|r| {
            r.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
