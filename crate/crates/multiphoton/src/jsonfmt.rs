//! JSON serialization with 17-significant-digit floats, so that parsing the
//! emitted text reproduces every `f64` bit-for-bit.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

pub(crate) struct SeventeenDigitFormatter;

impl Formatter for SeventeenDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            // {:.16e} prints one leading digit plus 16 decimals: 17
            // significant digits, enough to round-trip any f64 exactly.
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

pub(crate) fn to_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SeventeenDigitFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        let values = [
            0.0,
            0.5,
            1.0 / 3.0,
            -2.0f64.sqrt(),
            6.02214076e23,
            f64::MIN_POSITIVE,
        ];
        for &v in &values {
            let text = to_string(&v).unwrap();
            let back: f64 = serde_json::from_str(&text).unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "round trip of {v} via {text}");
        }
    }

    #[test]
    fn integers_stay_integers() {
        assert_eq!(to_string(&vec![1u32, 2, 0]).unwrap(), "[1,2,0]");
    }
}
