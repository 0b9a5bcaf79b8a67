//! Deterministic JSON emission: floats printed in scientific notation with
//! 17 significant digits so that identical inputs produce byte-identical
//! reports across platforms.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io;

struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.7e}")
    }
}

/// Serialize to a JSON string with pinned float formatting and a trailing
/// newline.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

/// The same 17-significant-digit form used for CSV cells.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}
